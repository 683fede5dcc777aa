"""Scan a partial-quotient stream for the two pattern shapes that signal
near-extremal integral bases: [n1, 1, 1, n2] and [n1, 2, n2] with both
outer quotients large."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from typing import Iterable, Iterator

from .cfrac import read_quotients


class PatternKind(enum.Enum):
    ONE_ONE = "11"  # [n1, 1, 1, n2]
    TWO = "2"  # [n1, 2, n2]


@dataclass(frozen=True)
class PatternHit:
    start_index: int  # 0-based position of n1
    kind: PatternKind
    n1: int
    n2: int

    @property
    def length(self) -> int:
        return 4 if self.kind is PatternKind.ONE_ONE else 3

    @property
    def positions(self) -> list[int]:
        """1-based positions of the pattern cells (calibrated convention)."""
        return [self.start_index + 1 + i for i in range(self.length)]

    def min_n(self) -> int:
        return min(self.n1, self.n2)

    def to_json_obj(self) -> dict:
        return {
            "start_index": self.start_index,
            "kind": self.kind.value,
            "n1": str(self.n1),
            "n2": str(self.n2),
        }

    @staticmethod
    def from_json_obj(obj: dict) -> "PatternHit":
        return PatternHit(
            start_index=int(obj["start_index"]),
            kind=PatternKind(obj["kind"]),
            n1=int(obj["n1"]),
            n2=int(obj["n2"]),
        )


def find_patterns(source, min_n: int) -> list[PatternHit]:
    """All hits with min(n1, n2) >= min_n, both kinds, by start index.

    `source` is a quotient file path or an iterable of quotients; a single
    streaming pass with a 4-term window.  Overlapping hits are all reported.
    """
    if min_n < 1:
        raise ValueError("min_n must be >= 1")
    if isinstance(source, (str, bytes)) or hasattr(source, "__fspath__"):
        source = read_quotients(source)
    hits: list[PatternHit] = []
    window: list[int] = []
    idx = -1  # index of window[0]
    for a in source:
        window.append(a)
        if len(window) > 4:
            window.pop(0)
        idx += 1
        if len(window) == 4:
            i = idx - 3
            n1, m1, m2, n2 = window
            if m1 == 1 and m2 == 1 and n1 >= min_n and n2 >= min_n:
                hits.append(PatternHit(i, PatternKind.ONE_ONE, n1, n2))
        if len(window) >= 3:
            i = idx - 2
            n1, m1, n2 = window[-3:]
            if m1 == 2 and n1 >= min_n and n2 >= min_n:
                hits.append(PatternHit(i, PatternKind.TWO, n1, n2))
    hits.sort(key=lambda h: (h.start_index, h.kind.value))
    return hits


def rank_hits(hits: Iterable[PatternHit]) -> list[PatternHit]:
    """Stable sort: decreasing min(n1, n2), ties by increasing start index."""
    return sorted(hits, key=lambda h: (-h.min_n(), h.start_index))


def write_hits_jsonl(hits: Iterable[PatternHit], fh) -> None:
    for h in hits:
        fh.write(json.dumps(h.to_json_obj(), sort_keys=True) + "\n")


def read_hits_jsonl(fh) -> Iterator[PatternHit]:
    for line in fh:
        line = line.strip()
        if line:
            yield PatternHit.from_json_obj(json.loads(line))
