"""Distance spectra of non-catastrophic convolutional encoders.

F(w) counts admissible paths of physical weight w with logical weight
greater than zero; F1(w) counts those with logical weight exactly one.
Paths start on a zero-physical-weight cycle vertex over an admissible
first edge, end as soon as they reach a zero-weight cycle vertex again,
and never visit one in between. Their physical weight is the sum of the
edge labels' weights including the final landing edge.

The counting is a dynamic program over (vertex, logical weight class,
accumulated physical weight) with the logical class saturated at 2, which
is all F versus F1 needs. Each round extends every pending path by one
edge; pending mass lives only on non-cycle vertices, and zero-weight edges
between those cannot form a cycle (any such cycle would be a zero-weight
cycle), so the weight cap bounds the number of rounds.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .conv_code import SeedTransformation
from .errors import CatastrophicSeedError, ValidationError
from .state_graph import (
    DEFAULT_MEMORY_BUDGET,
    StateDiagram,
    build_state_diagram,
    zero_weight_cycles,
)

_COUNT_LIMIT = 1 << 62
_ROUND_LIMIT = 200_000


@dataclass(frozen=True)
class DistanceSpectrum:
    """Counts F(w) and F1(w) for w = 0..w_max, as exact integers."""

    w_max: int
    F: tuple
    F1: tuple

    def __post_init__(self):
        if not (len(self.F) == len(self.F1) == self.w_max + 1):
            raise ValidationError("spectrum arrays must cover 0..w_max")

    @property
    def d_free(self):
        """Smallest w with F(w) > 0, or None if F vanishes up to w_max."""
        for w, c in enumerate(self.F):
            if c:
                return w
        return None

    @property
    def d1(self):
        """Smallest w with F1(w) > 0, or None if F1 vanishes up to w_max."""
        for w, c in enumerate(self.F1):
            if c:
                return w
        return None


def compute_spectrum(
    seed: SeedTransformation,
    w_max: int,
    diagram: StateDiagram = None,
    max_memory_qubits: int = DEFAULT_MEMORY_BUDGET,
) -> DistanceSpectrum:
    """Count the weight-w error events of a non-catastrophic seed.

    Raises CatastrophicSeedError (with the offending cycle attached) for
    catastrophic seeds, whose counts diverge, and OverflowError if any
    count would no longer fit comfortably in 64 bits.
    """
    if w_max < 0:
        raise ValidationError("w_max must be non-negative")
    d = diagram if diagram is not None else build_state_diagram(
        seed, max_memory_qubits
    )
    cycles = zero_weight_cycles(d)
    for c in cycles:
        if c.logical_weight:
            raise CatastrophicSeedError(
                "catastrophic seed: zero-physical-weight cycle at "
                f"{c.vertices} has logical weight {c.logical_weight}",
                cycle=c,
            )
    cyc_verts = sorted(v for c in cycles for v in c.vertices)
    cyc_vset = set(cyc_verts)
    cyc_edges = {e for c in cycles for e in c.edges}

    cnt = np.zeros((d.n_vertices, 3, w_max + 1), dtype=np.int64)
    F = np.zeros(w_max + 1, dtype=np.int64)
    F1 = np.zeros(w_max + 1, dtype=np.int64)

    # first edges: out of a cycle vertex, not part of any zero-weight cycle
    for v0 in cyc_verts:
        for e in d.out_edges(v0):
            if e in cyc_edges:
                continue
            pw = int(d.pweight[e])
            if pw > w_max:
                continue
            cnt[int(d.dst[e]), min(int(d.lweight[e]), 2), pw] += 1

    # interior edges: anything not leaving a cycle vertex
    keep = [
        e
        for e in range(d.n_edges)
        if int(d.src[e]) not in cyc_vset and int(d.pweight[e]) <= w_max
    ]
    esrc = [int(d.src[e]) for e in keep]
    edst = [int(d.dst[e]) for e in keep]
    epw = [int(d.pweight[e]) for e in keep]
    elw = [min(int(d.lweight[e]), 2) for e in keep]

    for _ in range(_ROUND_LIMIT):
        # paths sitting on a cycle vertex are complete: count and consume
        block = cnt[cyc_verts]  # copy by fancy indexing
        F += block[:, 1, :].sum(axis=0) + block[:, 2, :].sum(axis=0)
        F1 += block[:, 1, :].sum(axis=0)
        cnt[cyc_verts] = 0
        if not cnt.any():
            break
        if int(cnt.max()) >= _COUNT_LIMIT or int(F.max()) >= _COUNT_LIMIT:
            raise OverflowError(
                "spectrum counts exceed the 64-bit budget; lower w_max"
            )
        nxt = np.zeros_like(cnt)
        for s, t, pw, lw in zip(esrc, edst, epw, elw):
            src = cnt[s]
            if not src.any():
                continue
            for c in range(3):
                row = src[c]
                if not row.any():
                    continue
                if pw:
                    nxt[t, min(c + lw, 2), pw:] += row[: w_max + 1 - pw]
                else:
                    nxt[t, min(c + lw, 2)] += row
        cnt = nxt
    else:
        raise RuntimeError("spectrum propagation failed to drain")

    if int(F.max()) >= _COUNT_LIMIT:
        raise OverflowError(
            "spectrum counts exceed the 64-bit budget; lower w_max"
        )
    return DistanceSpectrum(w_max, tuple(F.tolist()), tuple(F1.tolist()))


def turbo_dmin_bound(outer: DistanceSpectrum, inner: DistanceSpectrum) -> int:
    """Upper bound on the minimum distance of a serial concatenation:
    the outer free distance times the inner logical-weight-one distance.
    """
    if outer.d_free is None:
        raise ValidationError(
            "outer spectrum has no nonzero F entry up to its w_max; "
            "the bound is indeterminate"
        )
    if inner.d1 is None:
        raise ValidationError(
            "inner spectrum has no nonzero F1 entry up to its w_max; "
            "the bound is indeterminate"
        )
    return outer.d_free * inner.d1
