"""Global discrete-series bookkeeping at the level of labels.

A global algebra is just the finite list of ramified places with their local
indices d_v; a global cuspidal datum is a base line together with, for each
ramified place, the generic unitary local data (a list of centered esi
segments with small twists).  Discrete-series labels (rho, k) transfer by
dividing k by the global compatibility invariant, and their local components
are computed with the local unit calculus.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .core import LineRegistry, frac
from .multiseg import Multisegment, Segment
from .transfer import SignedUnitaryProduct, lg_generic_label, lj_generic, s_gamma_d


class IncompatibleLabel(ValueError):
    """Raised when a label is transferred without the required divisibility."""


@dataclass(frozen=True)
class GlobalAlgebra:
    """Map ramified-place name -> d_v (>= 2); split places are omitted."""

    places: tuple[tuple[str, int], ...]

    @classmethod
    def of(cls, mapping: dict[str, int]) -> "GlobalAlgebra":
        for v, dv in mapping.items():
            if dv < 2:
                raise ValueError(f"ramified place {v!r} needs d_v >= 2, got {dv}")
        return cls(tuple(sorted(mapping.items())))

    @property
    def d(self) -> int:
        """Least common multiple of the local indices."""
        return math.lcm(*(dv for _, dv in self.places)) if self.places else 1

    def d_at(self, place: str) -> int:
        for v, dv in self.places:
            if v == place:
                return dv
        return 1  # split place

    def ramified_places(self) -> list[str]:
        return [v for v, _ in self.places]

    @classmethod
    def from_json(cls, data: dict) -> "GlobalAlgebra":
        return cls.of({p["name"]: int(p["d_v"]) for p in data["places"]})

    def to_json(self) -> dict:
        return {"places": [{"name": v, "d_v": dv} for v, dv in self.places]}


LocalDatum = tuple[Segment, Fraction]


@dataclass(frozen=True)
class GlobalCuspidalData:
    """Base line plus per-ramified-place generic local data."""

    line: str
    locals: tuple[tuple[str, tuple[LocalDatum, ...]], ...]

    @classmethod
    def of(cls, line: str, mapping: dict[str, list[tuple[Segment, Fraction]]]) -> "GlobalCuspidalData":
        packed = tuple(
            (v, tuple((seg, frac(e)) for seg, e in data)) for v, data in sorted(mapping.items())
        )
        return cls(line, packed)

    def local_data(self, place: str) -> list[LocalDatum]:
        for v, data in self.locals:
            if v == place:
                return list(data)
        raise KeyError(f"no local data recorded for place {place!r}")

    @classmethod
    def from_json(cls, data: dict, registry: LineRegistry) -> "GlobalCuspidalData":
        registry[data["line"]]
        mapping = {}
        for place, entries in data["locals"].items():
            gamma = []
            for e in entries:
                line = e.get("line", data["line"])
                registry[line]
                length = int(e["len"])
                seg = Segment(line, -Fraction(length - 1, 2), length, 1)
                gamma.append((seg, frac(e.get("e", 0))))
            mapping[place] = gamma
        return cls.of(data["line"], mapping)


@dataclass(frozen=True)
class DiscreteSeriesLabel:
    """MW(rho, k) on the split side or MW'(rho', k) on the inner side."""

    side: str  # "split" | "inner"
    rho: str  # name of the underlying cuspidal datum
    k: int

    def __post_init__(self) -> None:
        if self.side not in ("split", "inner"):
            raise ValueError("side must be 'split' or 'inner'")
        if self.k < 1:
            raise ValueError("k must be >= 1")

    @property
    def cuspidal(self) -> bool:
        return self.k == 1


def s_rho_d(registry: LineRegistry, data: GlobalCuspidalData, alg: GlobalAlgebra) -> int:
    """lcm over ramified places of the local generic compatibility invariants."""
    out = 1
    for v in alg.ramified_places():
        out = math.lcm(out, s_gamma_d(registry, data.local_data(v), alg.d_at(v)))
    return out


def d_compatible_mw(
    registry: LineRegistry, data: GlobalCuspidalData, k: int, alg: GlobalAlgebra
) -> bool:
    return k % s_rho_d(registry, data, alg) == 0


def g_inverse(
    registry: LineRegistry,
    label: DiscreteSeriesLabel,
    data: GlobalCuspidalData,
    alg: GlobalAlgebra,
) -> DiscreteSeriesLabel:
    """MW(rho, k) -> MW'(rho', k / s_{rho,D}); cuspidal iff k = s_{rho,D}."""
    if label.side != "split":
        raise ValueError("g_inverse starts from a split-side label")
    s = s_rho_d(registry, data, alg)
    if label.k % s:
        raise IncompatibleLabel(f"k = {label.k} is not a multiple of s = {s}")
    return DiscreteSeriesLabel("inner", label.rho, label.k // s)


def g_map(
    registry: LineRegistry,
    label: DiscreteSeriesLabel,
    data: GlobalCuspidalData,
    alg: GlobalAlgebra,
) -> DiscreteSeriesLabel:
    """MW'(rho', k) -> MW(rho, k * s_{rho,D})."""
    if label.side != "inner":
        raise ValueError("g_map starts from an inner-form label")
    s = s_rho_d(registry, data, alg)
    return DiscreteSeriesLabel("split", label.rho, label.k * s)


def local_component(
    registry: LineRegistry,
    data: GlobalCuspidalData,
    k: int,
    place: str,
    alg: GlobalAlgebra,
) -> Union[Multisegment, SignedUnitaryProduct]:
    """Local component of MW(rho, k): a split label, or its transfer at v in V."""
    dv = alg.d_at(place)
    gamma = data.local_data(place)
    if dv == 1:
        return lg_generic_label(gamma, k)
    return lj_generic(registry, gamma, k, dv)


# -- support matching ---------------------------------------------------------


def interval_decomposition(a) -> Optional[list[Fraction]]:
    """Decompose a multiset into sets {-e, -e+1, ..., e}; None if impossible.

    Returns the sorted (descending) list of endpoints e, each repeated with
    its multiplicity: the count of {-e..e} is f(e) - f(e+1) where f is the
    multiplicity function.  Works for an all-integer or an all-half-integer
    multiset; the decomposition, when it exists, is unique.
    """
    cnt = Counter(frac(x) for x in a)
    if not cnt:
        return []
    parities = {x % 1 for x in cnt}
    if len(parities) != 1:
        return None
    offset = parities.pop()
    if offset not in (Fraction(0), Fraction(1, 2)):
        return None
    for x, n in cnt.items():
        if cnt.get(-x, 0) != n:
            return None
    top = max(cnt)
    if top < 0:
        return None
    out: list[Fraction] = []
    total = 0
    e = top
    while e >= offset:
        mult = cnt.get(e, 0) - cnt.get(e + 1, 0)
        if mult < 0:
            return None
        out.extend([e] * mult)
        total += mult * (int(2 * e) + 1)
        e -= 1
    if total != sum(cnt.values()):
        return None
    return sorted(out, reverse=True)


def mw_exponents(k: int) -> list[Fraction]:
    """Exponent multiset of a (rho, k) label: {(k-1)/2 - i : 0 <= i < k}."""
    return [Fraction(k - 1, 2) - i for i in range(k)]


def match_discrete_products(
    x: list[DiscreteSeriesLabel], y: list[DiscreteSeriesLabel]
) -> bool:
    """True iff two products of discrete-series labels agree as multisets.

    Mirrors the support argument: separate the exponent multisets by base
    cuspidal and by parity class (plain or shifted line), decompose each
    class into symmetric intervals, and compare the recovered (rho, k)
    multisets.
    """

    def classes(labels: list[DiscreteSeriesLabel]) -> dict[tuple, list[Fraction]]:
        out: dict[tuple, list[Fraction]] = {}
        for lab in labels:
            key = (lab.side, lab.rho, lab.k % 2)
            out.setdefault(key, []).extend(mw_exponents(lab.k))
        return out

    cx, cy = classes(x), classes(y)
    if cx.keys() != cy.keys():
        return False
    for key in cx:
        dx = interval_decomposition(cx[key])
        dy = interval_decomposition(cy[key])
        if dx is None or dy is None or dx != dy:
            return False
    return True


def levi_conjugate_count(n: int, l: int) -> int:
    """Number of conjugates of the l-blocks-of-equal-size Levi: n! / (l! (m!)^l)."""
    if n < 1 or l < 1 or n % l:
        raise ValueError("l must divide n")
    m = n // l
    num = math.factorial(n)
    den = math.factorial(l) * math.factorial(m) ** l
    assert num % den == 0
    return num // den
