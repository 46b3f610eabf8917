"""Check results and seeded sampling helpers shared by every checker."""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field
from typing import Any, Callable

MAX_WITNESSES = 10


class DegenerateSampling(RuntimeError):
    """Rejection sampling hit its retry cap."""


@dataclass
class CheckResult:
    name: str
    target: str
    ring: str
    samples: int
    seed: int
    passed: int = 0
    failed: int = 0
    witnesses: list = field(default_factory=list)
    details: dict = field(default_factory=dict)
    elapsed_ms: float = 0.0

    def record(self, ok: bool, witness: Callable[[], dict] | dict | None = None) -> bool:
        if ok:
            self.passed += 1
            return True
        self.failed += 1
        if len(self.witnesses) < MAX_WITNESSES:
            w = witness() if callable(witness) else witness
            self.witnesses.append(w if w is not None else {})
        return False

    @property
    def ok(self) -> bool:
        return self.failed == 0 and self.passed > 0

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "target": self.target,
            "ring": self.ring,
            "samples": self.samples,
            "seed": self.seed,
            "passed": self.passed,
            "failed": self.failed,
            "witnesses": self.witnesses,
            "details": self.details,
            "elapsed_ms": round(self.elapsed_ms, 3),
        }


def split_seed(seed: int, index: int | str) -> int:
    """Derive an independent 64-bit seed for a batch or sub-task."""
    h = hashlib.blake2b(f"{seed}:{index}".encode(), digest_size=8).digest()
    return int.from_bytes(h, "big") ^ (seed & 0xFFFFFFFFFFFFFFFF)


def make_rng(seed: int, label: str = "") -> random.Random:
    return random.Random(split_seed(seed, label) if label else seed)


def rejection(draw: Callable[[], Any], cap: int = 1000):
    """Call ``draw`` until it returns something other than None."""
    for _ in range(cap):
        out = draw()
        if out is not None:
            return out
    raise DegenerateSampling(f"no generic sample after {cap} tries")
