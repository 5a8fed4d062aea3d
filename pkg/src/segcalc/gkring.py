"""Virtual representations over standard labels and the unit calculus.

``VirtualRep`` is an integer-coefficient formal sum over multisegment labels,
one Grothendieck-group element per basis tag, with a side tag ``d`` (1 for
the split side).  Induction products are bilinear multiset unions.

Speh units are stored centered with an explicit twist: the label of
``u(sigma, k)`` is a parallelogram of k parallel copies of sigma whose
centers form an arithmetic progression of difference step(sigma) symmetric
around the twist.  The expansion formulas below write these units on the
standard basis as alternating sums over restricted permutation sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Optional

from .core import ExponentLike, frac
from .multiseg import LimitExceeded, Multisegment, Segment, unitary_esi


class SideMismatch(ValueError):
    """Raised when combining virtual representations of different sides."""


class VirtualRep:
    """Finite map {multisegment label -> nonzero integer} with a side tag."""

    __slots__ = ("d", "terms")

    def __init__(self, d: int = 1, terms: Optional[dict[Multisegment, int]] = None):
        self.d = d
        self.terms = {m: c for m, c in (terms or {}).items() if c != 0}

    @classmethod
    def zero(cls, d: int = 1) -> "VirtualRep":
        return cls(d, {})

    @classmethod
    def of(cls, label: Multisegment, coeff: int = 1, d: int = 1) -> "VirtualRep":
        return cls(d, {label: coeff})

    @classmethod
    def one(cls, d: int = 1) -> "VirtualRep":
        """The empty label: unit of the induction product."""
        return cls.of(Multisegment.empty(), 1, d)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, VirtualRep)
            and self.d == other.d
            and self.terms == other.terms
        )

    def _check(self, other: "VirtualRep") -> None:
        if self.d != other.d:
            raise SideMismatch(f"side mismatch: d={self.d} vs d={other.d}")

    def __add__(self, other: "VirtualRep") -> "VirtualRep":
        self._check(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, 0) + c
        return VirtualRep(self.d, terms)

    def __neg__(self) -> "VirtualRep":
        return VirtualRep(self.d, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "VirtualRep") -> "VirtualRep":
        return self + (-other)

    def __rmul__(self, scalar: int) -> "VirtualRep":
        return VirtualRep(self.d, {m: scalar * c for m, c in self.terms.items()})

    def __mul__(self, other: "VirtualRep") -> "VirtualRep":
        """Induction product: bilinear, multiset union on basis labels."""
        self._check(other)
        terms: dict[Multisegment, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1 | m2
                terms[m] = terms.get(m, 0) + c1 * c2
        return VirtualRep(self.d, terms)

    def shifted(self, delta: ExponentLike) -> "VirtualRep":
        d = frac(delta)
        return VirtualRep(self.d, {m.shifted(d): c for m, c in self.terms.items()})

    def items(self) -> list[tuple[Multisegment, int]]:
        return sorted(self.terms.items(), key=lambda t: t[0].sort_key())

    def map_terms(self, f: Callable[[Multisegment], Optional[Multisegment]], d: Optional[int] = None) -> "VirtualRep":
        """Linear extension of a partial map on labels (None drops the term)."""
        terms: dict[Multisegment, int] = {}
        for m, c in self.terms.items():
            fm = f(m)
            if fm is None:
                continue
            terms[fm] = terms.get(fm, 0) + c
        return VirtualRep(self.d if d is None else d, terms)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{m!r}" for m, c in self.items())


def product(a: VirtualRep, b: VirtualRep) -> VirtualRep:
    return a * b


# -- Speh units ----------------------------------------------------------


@dataclass(frozen=True)
class SpehUnit:
    """u(sigma, k) placed by a twist; ``alpha`` marks a pi(u, alpha) pair.

    ``base`` is the unitary essentially-square-integrable label (a segment
    centered at 0); the unit's copies step by ``base.step`` in exponent
    units.  When ``alpha`` is set the unit denotes nu^alpha u x nu^-alpha u
    with alpha in (0, 1/2) measured in nu_sigma-units.
    """

    base: Segment
    count: int
    twist: Fraction = Fraction(0)
    alpha: Optional[Fraction] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "twist", frac(self.twist))
        if self.count < 1:
            raise ValueError("unit multiplicity must be >= 1")
        if self.base.center != 0:
            raise ValueError("unit base must be centered at exponent 0")
        if self.alpha is not None:
            a = frac(self.alpha)
            if not (0 < a < Fraction(1, 2)):
                raise ValueError(f"alpha must lie in (0, 1/2), got {a}")
            object.__setattr__(self, "alpha", a)

    @property
    def step(self) -> int:
        return self.base.step

    def twisted(self, delta: ExponentLike) -> "SpehUnit":
        return SpehUnit(self.base, self.count, self.twist + frac(delta), self.alpha)

    def _centers(self) -> list[Fraction]:
        k, s = self.count, self.step
        plain = [self.twist + s * (Fraction(k - 1, 2) - i) for i in range(k)]
        if self.alpha is None:
            return plain
        shift = self.alpha * s
        return [c + shift for c in plain] + [c - shift for c in plain]

    def multisegment(self) -> Multisegment:
        return Multisegment(
            self.base.shifted(c) for c in self._centers()
        )

    def sort_key(self):
        return (self.base.sort_key(), self.count, self.twist, self.alpha or Fraction(0))

    def __repr__(self) -> str:
        inner = f"u({self.base!r}, {self.count})"
        if self.alpha is not None:
            inner = f"pi({inner}, {self.alpha})"
        if self.twist:
            inner = f"nu^({self.twist}) {inner}"
        return inner


class UnitaryProduct:
    """A multiset of Speh units; its label is the union of the factors'."""

    __slots__ = ("units",)

    def __init__(self, units: Iterable[SpehUnit] = ()):
        object.__setattr__(self, "units", tuple(sorted(units, key=SpehUnit.sort_key)))

    def __setattr__(self, *_):  # pragma: no cover
        raise AttributeError("UnitaryProduct is immutable")

    @classmethod
    def empty(cls) -> "UnitaryProduct":
        return cls(())

    def __iter__(self) -> Iterator[SpehUnit]:
        return iter(self.units)

    def __len__(self) -> int:
        return len(self.units)

    def __eq__(self, other) -> bool:
        return isinstance(other, UnitaryProduct) and self.units == other.units

    def __hash__(self) -> int:
        return hash(self.units)

    def multisegment(self) -> Multisegment:
        out = Multisegment.empty()
        for u in self.units:
            out = out | u.multisegment()
        return out

    def twisted(self, delta: ExponentLike) -> "UnitaryProduct":
        return UnitaryProduct(u.twisted(delta) for u in self.units)

    def __repr__(self) -> str:
        return " x ".join(repr(u) for u in self.units) if self.units else "1"


# -- unit constructors ----------------------------------------------------


def speh_u(sigma_len: int, line: str, k: int, twist: ExponentLike = 0) -> Multisegment:
    """Label of u(sigma, k), sigma the length-``sigma_len`` split esi on ``line``."""
    return SpehUnit(unitary_esi(line, sigma_len, 1), k, frac(twist)).multisegment()


def speh_u_prime(sigma: Segment, k: int, twist: ExponentLike = 0) -> Multisegment:
    """Label of u'(sigma', k): copies step by nu_sigma' = nu^step."""
    return SpehUnit(sigma, k, frac(twist)).multisegment()


def speh_ubar(sigma: Segment, k: int, twist: ExponentLike = 0) -> Multisegment:
    """Label of ubar(sigma', k): copies step by plain nu (one exponent unit)."""
    t = frac(twist)
    return Multisegment(sigma.shifted(t + Fraction(k - 1, 2) - i) for i in range(k))


def pi_u_alpha(u: SpehUnit, alpha: ExponentLike) -> Multisegment:
    """Label of pi(u, alpha) = nu^alpha u x nu^-alpha u, 0 < alpha < 1/2."""
    a = frac(alpha)
    if not (0 < a < Fraction(1, 2)):
        raise ValueError(f"alpha must lie in (0, 1/2), got {a}")
    return SpehUnit(u.base, u.count, u.twist, a).multisegment()


def ubar_factor(sigma: Segment, k: int) -> UnitaryProduct:
    """Factor ubar(sigma', k) into twisted u'(sigma', .) units.

    With k = a*s + b, 0 <= b < s: b factors nu^(i-(b+1)/2) u'(sigma', a+1)
    and s-b factors nu^(j-(s-b+1)/2) u'(sigma', a), the second block omitted
    when a = 0.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    s = sigma.step
    a, b = divmod(k, s)
    units = []
    if b:
        for i in range(1, b + 1):
            units.append(SpehUnit(sigma, a + 1, Fraction(2 * i - b - 1, 2)))
    if a:
        nb = s - b
        for j in range(1, nb + 1):
            units.append(SpehUnit(sigma, a, Fraction(2 * j - nb - 1, 2)))
    return UnitaryProduct(units)


# -- expansion formulas ----------------------------------------------------


def admissible_permutations(k: int, l: int) -> Iterator[tuple[tuple[int, ...], int]]:
    """Yield (w, sign) over permutations w of {1..k} with w(i) + l >= i.

    Generated by backtracking so that large k with a tight bound stays
    cheap; 1-indexed w is returned as a tuple with w[i-1] = w(i).
    """
    used = [False] * (k + 1)
    perm: list[int] = []

    def rec() -> Iterator[tuple[tuple[int, ...], int]]:
        i = len(perm) + 1
        if i > k:
            inv = 0
            for x in range(k):
                for y in range(x + 1, k):
                    if perm[x] > perm[y]:
                        inv += 1
            yield tuple(perm), (-1) ** inv
            return
        lo = max(1, i - l)
        for v in range(lo, k + 1):
            if not used[v]:
                used[v] = True
                perm.append(v)
                yield from rec()
                perm.pop()
                used[v] = False

    yield from rec()


def count_admissible(k: int, l: int) -> int:
    return sum(1 for _ in admissible_permutations(k, l))


def _tadic_sum(
    line: str, l: int, k: int, step: int, twist: Fraction, d: int
) -> VirtualRep:
    """sum over W_k^l of sign(w) * prod_i Seg(i, w(i)+l-i), centered.

    Interior factors start at position i (in step units); the overall twist
    nu^(-(k+l)/2 * step) recenters the leading term at 0.  Zero-length
    factors (w(i) + l - i = 0) denote the unit and are dropped.
    """
    shift = twist - Fraction(k + l, 2) * step
    terms: dict[Multisegment, int] = {}
    for w, sign in admissible_permutations(k, l):
        segs = []
        for i in range(1, k + 1):
            m = w[i - 1] + l - i
            if m == 0:
                continue
            segs.append(Segment(line, i * step + shift, m, step))
        label = Multisegment(segs)
        terms[label] = terms.get(label, 0) + sign
    return VirtualRep(d, terms)


def expand_u(l: int, line: str, k: int, twist: ExponentLike = 0) -> VirtualRep:
    """u(Z(rho, l), k) on the split standard basis (alternating sum over W_k^l)."""
    return _tadic_sum(line, l, k, 1, frac(twist), 1)


def expand_u_prime(sigma: Segment, k: int, d: int, twist: ExponentLike = 0) -> VirtualRep:
    """u'(sigma', k) on the inner-form standard basis, steps of nu_sigma'."""
    return _tadic_sum(sigma.line, sigma.length, k, sigma.step, frac(twist), d)


def expand_unit(unit: SpehUnit, d: int) -> VirtualRep:
    """Standard-basis expansion of one unit (with its twist and alpha pair)."""
    base = expand_u_prime(unit.base, unit.count, d, unit.twist)
    if unit.alpha is None:
        return base
    shift = unit.alpha * unit.step
    return base.shifted(shift) * base.shifted(-shift)


def expand_unit_product(up: UnitaryProduct, d: int) -> VirtualRep:
    out = VirtualRep.one(d)
    for u in up.units:
        out = out * expand_unit(u, d)
    return out


def expand_ubar(sigma: Segment, k: int, d: int) -> VirtualRep:
    """ubar(sigma', k) on the standard basis, via its u'-factorization."""
    return expand_unit_product(ubar_factor(sigma, k), d)


# -- recognition -----------------------------------------------------------


def recognize_unitary(m: Multisegment, limit: int = 10_000) -> Optional[UnitaryProduct]:
    """Factor a label into twist-0 units and pi(u, alpha) pairs, if possible.

    Within each (effective line, segment length) group the centers must
    split into arithmetic progressions of difference step that are either
    symmetric around 0 (a unit u(sigma, k)) or mirror pairs at +-alpha*step
    with alpha in (0, 1/2) (a pi(u, alpha)).  The shape of the progression
    containing the maximal center is forced, so extraction is greedy.
    """
    if sum(s.length for s in m.segments) > limit:
        raise LimitExceeded(f"label exceeds recognition limit {limit}")
    # group by (line, step, length) but NOT by offset class: the two halves of
    # a pi(u, alpha) pair land on mirrored offset classes and must pair up
    groups: dict[tuple, list[Segment]] = {}
    for s in m.segments:
        groups.setdefault((s.line, s.step, s.length), []).append(s)

    units: list[SpehUnit] = []
    for _, segs in sorted(groups.items()):
        proto = segs[0]
        s = proto.step
        centers: dict[Fraction, int] = {}
        for seg in segs:
            centers[seg.center] = centers.get(seg.center, 0) + 1
        base = unitary_esi(proto.line, proto.length, s)
        while centers:
            c = max(centers)
            two_c = 2 * c / s
            if two_c.denominator == 1 and two_c >= 0:
                k = int(two_c) + 1
                need = [c - s * i for i in range(k)]
                if not _consume(centers, need):
                    return None
                units.append(SpehUnit(base, k))
            else:
                # unique k with beta = c - s(k-1)/2 in (0, s/2)
                k = None
                for cand in range(1, int(2 * c / s) + 2):
                    beta = c - Fraction(s * (cand - 1), 2)
                    if 0 < beta < Fraction(s, 2):
                        k = cand
                        break
                if k is None:
                    return None
                beta = c - Fraction(s * (k - 1), 2)
                need = [beta + s * (Fraction(k - 1, 2) - i) for i in range(k)]
                need += [-beta + s * (Fraction(k - 1, 2) - i) for i in range(k)]
                if not _consume(centers, need):
                    return None
                units.append(SpehUnit(base, k, Fraction(0), beta / s))
    return UnitaryProduct(units)


def _consume(centers: dict[Fraction, int], need: list[Fraction]) -> bool:
    taken: dict[Fraction, int] = {}
    for c in need:
        if centers.get(c, 0) - taken.get(c, 0) <= 0:
            return False
        taken[c] = taken.get(c, 0) + 1
    for c, n in taken.items():
        centers[c] -= n
        if centers[c] == 0:
            del centers[c]
    return True
