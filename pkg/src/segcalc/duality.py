"""Duality on irreducible labels and a raw dual on the standard lattice.

``mw_dual`` runs the chain-extraction algorithm on a rigid multisegment:
repeatedly peel one cuspidal point off a maximal chain of segments whose
endings decrease by one step and whose begins strictly decrease, always
preferring the shortest eligible segment.  The peeled endings form one
segment of the dual; the involution extends to arbitrary labels one rigid
part at a time because it commutes with induction products.

``raw_dual_std`` is the signed cut-expansion dual on the standard basis: on
one segment of length n it is the alternating sum over the 2^(n-1) ways to
cut the segment into consecutive pieces, with sign (-1)^(n - #pieces), and
it extends multiplicatively and linearly.  It carries no extra global sign
normalization; identities against the signed involution hold up to one sign
per homogeneous component (see the transfer tests).
"""

from __future__ import annotations

import itertools
from .gkring import VirtualRep
from .multiseg import Multisegment, Segment, rigid_decomposition


def mw_dual(m: Multisegment) -> Multisegment:
    """Dual of a rigid multisegment (single effective line)."""
    if not m:
        return m
    lines = {s.effective_line() for s in m.segments}
    if len(lines) != 1:
        raise ValueError("mw_dual requires a rigid multisegment (one effective line)")
    line = m.segments[0].line
    step = m.segments[0].step
    base = min(s.start for s in m.segments)
    # integer (begin, end) position pairs on the common lattice
    work = [
        (int((s.start - base) / step), int((s.end - base) / step))
        for s in m.segments
    ]
    out: list[Segment] = []
    while work:
        e = max(end for _, end in work)
        chain: list[tuple[int, int]] = []
        prev_begin = None
        ending = e
        while True:
            candidates = [
                seg
                for seg in work
                if seg[1] == ending and (prev_begin is None or seg[0] < prev_begin)
            ]
            if not candidates:
                break
            chosen = min(candidates, key=lambda seg: (seg[1] - seg[0], seg[0]))
            work.remove(chosen)
            chain.append(chosen)
            prev_begin = chosen[0]
            ending -= 1
        r = len(chain)
        out.append(Segment(line, base + (e - r + 1) * step, r, step))
        for begin, end in chain:
            if end > begin:
                work.append((begin, end - 1))
    return Multisegment(out)


def dual_irr(m: Multisegment) -> Multisegment:
    """Dual of any label: mw_dual on each rigid part, recombined."""
    out = Multisegment.empty()
    for part in rigid_decomposition(m):
        out = out | mw_dual(part)
    return out


def segment_cut_expansion(seg: Segment) -> list[tuple[int, tuple[Segment, ...]]]:
    """(sign, pieces) over all cuts of ``seg`` into consecutive subsegments."""
    n = seg.length
    out = []
    for cuts in itertools.chain.from_iterable(
        itertools.combinations(range(1, n), r) for r in range(n)
    ):
        bounds = (0,) + cuts + (n,)
        pieces = tuple(
            Segment(seg.line, seg.start + bounds[i] * seg.step, bounds[i + 1] - bounds[i], seg.step)
            for i in range(len(bounds) - 1)
        )
        out.append(((-1) ** (n - len(pieces)), pieces))
    return out


def raw_dual_std(x: VirtualRep) -> VirtualRep:
    """Linear cut-expansion dual on the standard lattice (no sign normalization)."""
    total = VirtualRep.zero(x.d)
    for label, coeff in x.terms.items():
        term = VirtualRep.of(Multisegment.empty(), coeff, x.d)
        for seg in label.segments:
            expansion = VirtualRep(
                x.d,
                _accumulate(segment_cut_expansion(seg)),
            )
            term = term * expansion
        total = total + term
    return total


def _accumulate(cuts: list[tuple[int, tuple[Segment, ...]]]) -> dict[Multisegment, int]:
    terms: dict[Multisegment, int] = {}
    for sign, pieces in cuts:
        label = Multisegment(pieces)
        terms[label] = terms.get(label, 0) + sign
    return terms
