"""Law reports and deterministic sampling shared by the axiom checkers.

A LawReport accumulates, per named law, the number of evaluated instances and
the failing witnesses (capped, with a total failure count).  Report lines are
stable: fixed registration order, no timestamps, no addresses.
"""

from __future__ import annotations

import random
from typing import Any, Dict, List, Optional, Sequence

WITNESS_CAP = 3


class LawReport:
    def __init__(self, title: str = ""):
        self.title = title
        self._order: List[str] = []
        self._counts: Dict[str, int] = {}
        self._failcounts: Dict[str, int] = {}
        self._witnesses: Dict[str, List[str]] = {}

    def law(self, law_id: str) -> None:
        if law_id not in self._counts:
            self._order.append(law_id)
            self._counts[law_id] = 0
            self._failcounts[law_id] = 0
            self._witnesses[law_id] = []

    def tick(self, law_id: str, n: int = 1) -> None:
        self.law(law_id)
        self._counts[law_id] += n

    def fail(self, law_id: str, witness: str) -> None:
        self.law(law_id)
        self._failcounts[law_id] += 1
        if len(self._witnesses[law_id]) < WITNESS_CAP:
            self._witnesses[law_id].append(witness)

    def check(self, law_id: str, holds: bool, witness: str) -> None:
        self.tick(law_id)
        if not holds:
            self.fail(law_id, witness)

    @property
    def ok(self) -> bool:
        return all(c == 0 for c in self._failcounts.values())

    def laws(self) -> List[str]:
        return list(self._order)

    def failures(self) -> Dict[str, List[str]]:
        return {k: list(v) for k, v in self._witnesses.items() if self._failcounts[k]}

    def merge(self, other: "LawReport") -> None:
        for law_id in other._order:
            self.law(law_id)
            self._counts[law_id] += other._counts[law_id]
            self._failcounts[law_id] += other._failcounts[law_id]
            for w in other._witnesses[law_id]:
                if len(self._witnesses[law_id]) < WITNESS_CAP:
                    self._witnesses[law_id].append(w)

    def lines(self) -> List[str]:
        out = []
        for law_id in self._order:
            n = self._counts[law_id]
            k = self._failcounts[law_id]
            if k == 0:
                out.append(f"PASS {law_id} ({n} instances)")
            else:
                first = self._witnesses[law_id][0] if self._witnesses[law_id] else ""
                out.append(f"FAIL {law_id} ({k}/{n} failed) e.g. {first}")
        return out

    def to_tree(self) -> Any:
        return {
            "title": self.title,
            "ok": self.ok,
            "laws": [
                {
                    "law": law_id,
                    "instances": self._counts[law_id],
                    "failures": self._failcounts[law_id],
                    "witnesses": list(self._witnesses[law_id]),
                }
                for law_id in self._order
            ],
        }


def stable_rng(seed: Any, unit: str) -> random.Random:
    """A Random keyed by (seed, unit) via string seeding, stable across runs."""
    return random.Random(f"{seed}:{unit}")


def sample(seq: Sequence, k: int, rng: Optional[random.Random]) -> List:
    """The whole sequence when small, else a deterministic k-subset."""
    items = list(seq)
    if len(items) <= k or rng is None:
        return items
    return rng.sample(items, k)
