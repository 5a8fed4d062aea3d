"""Segments and multisegments, their relations, elementary operations and order.

A segment is an arithmetic progression of cuspidal points on one line:
``{nu^(start + j*step) rho : 0 <= j < length}``.  The split side always has
step 1; an inner-form side uses step s(rho') per line.  A multisegment is a
multiset of segments kept in a canonical sorted order so that multiset
equality and hashing are O(1) dictionary operations.

Two segments on the same line and step with starts congruent mod step live
on the same *effective line*; only such segments can ever be linked, and all
order computations decompose along effective lines (rigid parts).
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, NamedTuple, Optional

from .core import CuspidalPoint, ExponentLike, LineRegistry, frac


class LimitExceeded(ValueError):
    """A bounded search was asked to exceed its configured limit."""


@dataclass(frozen=True)
class Segment:
    line: str
    start: Fraction
    length: int
    step: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "start", frac(self.start))
        if self.length < 1:
            raise ValueError(f"segment length must be >= 1, got {self.length}")
        if self.step < 1:
            raise ValueError(f"segment step must be >= 1, got {self.step}")

    @property
    def end(self) -> Fraction:
        return self.start + (self.length - 1) * self.step

    @property
    def center(self) -> Fraction:
        return self.start + Fraction(self.length - 1, 2) * self.step

    @property
    def offset_class(self) -> Fraction:
        """start mod step: labels the effective line within (line, step)."""
        return self.start % self.step

    def points(self) -> Iterator[CuspidalPoint]:
        for j in range(self.length):
            yield CuspidalPoint(self.line, self.start + j * self.step)

    @property
    def ending(self) -> CuspidalPoint:
        return CuspidalPoint(self.line, self.end)

    def shifted(self, delta: ExponentLike) -> "Segment":
        return Segment(self.line, self.start + frac(delta), self.length, self.step)

    def sort_key(self):
        return (self.line, self.step, self.offset_class, self.start, self.length)

    def effective_line(self):
        return (self.line, self.step, self.offset_class)

    def __repr__(self) -> str:
        prime = "'" if self.step > 1 else ""
        return f"{self.line}{prime}:[{self.start},{self.end}]"


def unitary_esi(line: str, length: int, step: int = 1) -> Segment:
    """The length-``length`` segment on ``line`` centered at exponent 0."""
    return Segment(line, -Fraction(length - 1, 2) * step, length, step)


class SegmentRelation(enum.Enum):
    EQUAL = "equal"
    UNLINKED = "unlinked"
    LINKED_ADJACENT = "linked_adjacent"
    LINKED_OVERLAPPING = "linked_overlapping"


def segment_relation(s1: Segment, s2: Segment) -> SegmentRelation:
    """Classify a pair: linked iff the union is a segment distinct from both."""
    if s1 == s2:
        return SegmentRelation.EQUAL
    if s1.line != s2.line or s1.step != s2.step:
        return SegmentRelation.UNLINKED
    if (s1.start - s2.start) % s1.step != 0:
        return SegmentRelation.UNLINKED
    step = s1.step
    # integer positions along the common lattice
    a1, b1 = 0, s1.length - 1
    off = int((s2.start - s1.start) / step)
    a2, b2 = off, off + s2.length - 1
    if a1 <= a2 and b2 <= b1:
        return SegmentRelation.UNLINKED  # contained: union equals s1
    if a2 <= a1 and b1 <= b2:
        return SegmentRelation.UNLINKED
    if a2 > b1 + 1 or a1 > b2 + 1:
        return SegmentRelation.UNLINKED  # gap: union is not a segment
    if a2 > b1 or a1 > b2:
        return SegmentRelation.LINKED_ADJACENT
    return SegmentRelation.LINKED_OVERLAPPING


def _union_intersection(s1: Segment, s2: Segment) -> tuple[Segment, Optional[Segment]]:
    """Union and intersection of two linked segments (intersection may be None)."""
    step = s1.step
    lo = min(s1.start, s2.start)
    hi = max(s1.end, s2.end)
    union = Segment(s1.line, lo, int((hi - lo) / step) + 1, step)
    ilo = max(s1.start, s2.start)
    ihi = min(s1.end, s2.end)
    if ilo > ihi:
        return union, None
    return union, Segment(s1.line, ilo, int((ihi - ilo) / step) + 1, step)


class Multisegment:
    """A multiset of segments in canonical order (hashable, immutable)."""

    __slots__ = ("segments",)

    def __init__(self, segments: Iterable[Segment] = ()):
        segs = tuple(sorted(segments, key=Segment.sort_key))
        object.__setattr__(self, "segments", segs)

    def __setattr__(self, *_):  # pragma: no cover
        raise AttributeError("Multisegment is immutable")

    @classmethod
    def empty(cls) -> "Multisegment":
        return cls(())

    def __iter__(self) -> Iterator[Segment]:
        return iter(self.segments)

    def __len__(self) -> int:
        return len(self.segments)

    def __bool__(self) -> bool:
        return bool(self.segments)

    def __eq__(self, other) -> bool:
        return isinstance(other, Multisegment) and self.segments == other.segments

    def __hash__(self) -> int:
        return hash(self.segments)

    def __lt__(self, other: "Multisegment") -> bool:
        return self.sort_key() < other.sort_key()

    def sort_key(self):
        return tuple(s.sort_key() for s in self.segments)

    def __or__(self, other: "Multisegment") -> "Multisegment":
        return Multisegment(self.segments + other.segments)

    def shifted(self, delta: ExponentLike) -> "Multisegment":
        d = frac(delta)
        return Multisegment(s.shifted(d) for s in self.segments)

    def support(self) -> Counter:
        out: Counter = Counter()
        for s in self.segments:
            out.update(s.points())
        return out

    def endings(self) -> Counter:
        return Counter(s.ending for s in self.segments)

    def ell(self) -> int:
        """Maximum segment length (0 for the empty multisegment)."""
        return max((s.length for s in self.segments), default=0)

    def __repr__(self) -> str:
        return "{" + ", ".join(repr(s) for s in self.segments) + "}"


class MultisegmentStats(NamedTuple):
    endings: Counter
    ell: int
    support: Counter


def stats(m: Multisegment) -> MultisegmentStats:
    """E(M), l(M) and the cuspidal support, all at once."""
    return MultisegmentStats(m.endings(), m.ell(), m.support())


def elementary_successors(m: Multisegment) -> set[Multisegment]:
    """All multisegments obtained from ``m`` by one elementary operation.

    For every unordered pair of linked segments, replace the pair by union
    plus intersection (overlapping case) or by the union alone (adjacent
    case).  The results are canonicalized and de-duplicated.
    """
    out: set[Multisegment] = set()
    segs = m.segments
    for i in range(len(segs)):
        for j in range(i + 1, len(segs)):
            rel = segment_relation(segs[i], segs[j])
            if rel not in (SegmentRelation.LINKED_ADJACENT, SegmentRelation.LINKED_OVERLAPPING):
                continue
            union, inter = _union_intersection(segs[i], segs[j])
            rest = segs[:i] + segs[i + 1 : j] + segs[j + 1 :]
            new = (union,) if inter is None else (union, inter)
            out.add(Multisegment(rest + new))
    return out


def rigid_decomposition(m: Multisegment) -> list[Multisegment]:
    """Partition into rigid parts, one per effective line, in canonical order."""
    groups: dict[tuple, list[Segment]] = {}
    for s in m.segments:
        groups.setdefault(s.effective_line(), []).append(s)
    return [Multisegment(groups[k]) for k in sorted(groups)]


def is_lower(ma: Multisegment, mb: Multisegment) -> bool:
    """True iff ``ma`` is reachable from ``mb`` by >= 0 elementary operations.

    Elementary operations preserve the cuspidal support and never mix
    effective lines, so the search decomposes over the rigid parts and runs
    a memoized BFS inside each part.
    """
    if ma == mb:
        return True
    if ma.support() != mb.support():
        return False
    parts_a = {p.segments[0].effective_line(): p for p in rigid_decomposition(ma)}
    parts_b = {p.segments[0].effective_line(): p for p in rigid_decomposition(mb)}
    if parts_a.keys() != parts_b.keys():
        return False
    for key, target in parts_a.items():
        if not _reachable(parts_b[key], target):
            return False
    return True


def _reachable(source: Multisegment, target: Multisegment) -> bool:
    if source == target:
        return True
    seen = {source}
    frontier = [source]
    while frontier:
        nxt: list[Multisegment] = []
        for m in frontier:
            for m2 in elementary_successors(m):
                if m2 == target:
                    return True
                if m2 not in seen:
                    seen.add(m2)
                    nxt.append(m2)
        frontier = nxt
    return False


def descendants(m: Multisegment) -> set[Multisegment]:
    """All multisegments strictly or trivially below ``m`` (BFS closure)."""
    seen = {m}
    frontier = [m]
    while frontier:
        nxt = []
        for x in frontier:
            for y in elementary_successors(x):
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def hermitian_dual(m: Multisegment, registry: LineRegistry) -> Multisegment:
    """[line: a..b] -> [dual(line): -b..-a], same step."""
    out = []
    for s in m.segments:
        dual = registry[s.line].dual
        out.append(Segment(dual, -s.end, s.length, s.step))
    return Multisegment(out)


def is_hermitian(m: Multisegment, registry: LineRegistry) -> bool:
    return hermitian_dual(m, registry) == m


def enumerate_multisegments(
    support: Iterable[CuspidalPoint] | Counter,
    step: int = 1,
    limit: int = 10,
) -> set[Multisegment]:
    """All partitions of a support multiset into step-``step`` segments.

    The support splits into effective lines (line plus offset class mod
    step); partitions are enumerated independently per class and combined.
    Raises LimitExceeded when the support has more than ``limit`` points.
    """
    cnt: Counter = Counter()
    if isinstance(support, Counter):
        cnt.update(support)
    else:
        for pt in support:
            cnt[pt] += 1
    total = sum(cnt.values())
    if total > limit:
        raise LimitExceeded(f"support size {total} exceeds limit {limit}")
    if total == 0:
        return {Multisegment.empty()}

    classes: dict[tuple[str, Fraction], Counter] = {}
    for (line, exp), mult in cnt.items():
        classes.setdefault((line, frac(exp) % step), Counter())[frac(exp)] = mult

    per_class: list[list[tuple[Segment, ...]]] = []
    for (line, _), exps in sorted(classes.items()):
        base = min(exps)
        positions = Counter({int((e - base) / step): mult for e, mult in exps.items()})
        parts = _integer_partitions(positions)
        per_class.append(
            [
                tuple(Segment(line, base + p * step, ln, step) for p, ln in part)
                for part in parts
            ]
        )

    results: set[Multisegment] = set()

    def combine(idx: int, acc: tuple[Segment, ...]) -> None:
        if idx == len(per_class):
            results.add(Multisegment(acc))
            return
        for choice in per_class[idx]:
            combine(idx + 1, acc + choice)

    combine(0, ())
    return results


def _integer_partitions(positions: Counter) -> set[tuple[tuple[int, int], ...]]:
    """Partitions of an integer multiset into runs, as ((start, length), ...)."""
    memo: dict[tuple, set] = {}

    def rec(cnt: tuple[tuple[int, int], ...]) -> set[tuple[tuple[int, int], ...]]:
        if not cnt:
            return {()}
        if cnt in memo:
            return memo[cnt]
        d = dict(cnt)
        p = min(d)
        out: set[tuple[tuple[int, int], ...]] = set()
        length = 0
        while d.get(p + length, 0) > 0:
            length += 1
            d2 = dict(d)
            for q in range(p, p + length):
                d2[q] -= 1
                if d2[q] == 0:
                    del d2[q]
            key = tuple(sorted(d2.items()))
            for rest in rec(key):
                out.add(tuple(sorted(rest + ((p, length),))))
        memo[cnt] = out
        return out

    return rec(tuple(sorted(positions.items())))
