"""Detection-coverage analytics over a matrix.

Per-signature contribution ranking, the generic/specific two-set split,
and the four-way overlap between the unions of two signature sets.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import UnknownId
from .matcher import DetectionMatrix


@dataclass(frozen=True)
class ContributionEntry:
    signature_id: str
    count: int
    share_pct: float  # percentage of corpus vectors, one-decimal precision


@dataclass(frozen=True)
class ContributionProfile:
    entries: tuple[ContributionEntry, ...]  # ranked: count desc, ties by id
    total_vectors: int

    def top(self) -> ContributionEntry:
        return self.entries[0]

    def by_id(self, signature_id: str) -> ContributionEntry:
        for entry in self.entries:
            if entry.signature_id == signature_id:
                return entry
        raise UnknownId(signature_id)

    def to_dict(self) -> dict:
        return {
            "total_vectors": self.total_vectors,
            "ranking": [
                {
                    "signature": e.signature_id,
                    "count": e.count,
                    "share_pct": e.share_pct,
                }
                for e in self.entries
            ],
        }


@dataclass(frozen=True)
class OverlapStats:
    only_a: int
    only_b: int
    both: int
    neither: int

    @property
    def total(self) -> int:
        return self.only_a + self.only_b + self.both + self.neither

    def to_dict(self) -> dict:
        return {
            "only_a": self.only_a,
            "only_b": self.only_b,
            "both": self.both,
            "neither": self.neither,
        }


def contribution(matrix: DetectionMatrix) -> ContributionProfile:
    """Row sums with a deterministic ranking (count desc, ties by id)."""
    total = len(matrix.vector_ids)
    entries = []
    for sid, row in zip(matrix.signature_ids, matrix.rows):
        count = row.bit_count()
        share = round(100.0 * count / total, 1) if total else 0.0
        entries.append(ContributionEntry(sid, count, share))
    entries.sort(key=lambda e: (-e.count, e.signature_id))
    return ContributionProfile(entries=tuple(entries), total_vectors=total)


def partition(
    matrix: DetectionMatrix,
    threshold: int | None = None,
    ids: list[str] | None = None,
) -> tuple[frozenset[str], frozenset[str]]:
    """Split signatures into sets A and B.

    With an explicit id list, A is the list and B the rest. With a
    threshold, A holds the signatures detecting at least that many
    vectors.
    """
    all_ids = set(matrix.signature_ids)
    if ids is not None:
        for sid in ids:
            if sid not in all_ids:
                raise UnknownId(sid)
        a = frozenset(ids)
        return a, frozenset(all_ids - a)
    if threshold is None or threshold < 1:
        raise ValueError("need a positive threshold or an explicit id list")
    counts = matrix.row_counts()
    a = frozenset(sid for sid in matrix.signature_ids if counts[sid] >= threshold)
    return a, frozenset(all_ids - a)


def overlap(matrix: DetectionMatrix, set_a, set_b) -> OverlapStats:
    """Four-way vector counts against the unions of two signature sets.

    The sets may overlap or leave signatures out; membership is decided
    per vector against each union independently.
    """
    bits_a = matrix.union_bits(set_a)
    bits_b = matrix.union_bits(set_b)
    only_a = only_b = both = neither = 0
    for i in range(len(matrix.vector_ids)):
        in_a = bool(bits_a >> i & 1)
        in_b = bool(bits_b >> i & 1)
        if in_a and in_b:
            both += 1
        elif in_a:
            only_a += 1
        elif in_b:
            only_b += 1
        else:
            neither += 1
    return OverlapStats(only_a=only_a, only_b=only_b, both=both, neither=neither)
