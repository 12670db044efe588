"""Distance spectrum DP against published counts and brute-force search."""

import numpy as np
import pytest

from qturbo.conv_code import SeedTransformation
from qturbo.errors import CatastrophicSeedError, ValidationError
from qturbo.gf2_symplectic import SymplecticMatrix, random_symplectic
from qturbo.seeds import shipped_seed
from qturbo.spectrum import DistanceSpectrum, compute_spectrum, turbo_dmin_bound
from qturbo.state_graph import build_state_diagram, zero_weight_cycles

DEMO_ROWS = (21, 2, 20, 10, 16, 40)

# published logical-weight-one counts for the (3,1,3) seed, w = 0..20
F1_313 = (
    0, 0, 0, 0, 0, 0, 2, 4, 8, 16, 35, 70, 143, 295, 634, 1362, 2802,
    5714, 11526, 23674, 48817,
)
# published total counts for the same seed, w = 4..12
F_313 = (1, 11, 47, 265, 1275, 6397, 31785, 160311, 801232)


def test_table_values_for_u313():
    spec = compute_spectrum(shipped_seed("u313"), 20)
    assert spec.F1 == F1_313
    assert spec.F[:4] == (0, 0, 0, 0)
    assert spec.F[4:13] == F_313
    assert spec.d_free == 4
    assert spec.d1 == 6


def test_monotone_in_w_max():
    s = shipped_seed("u313")
    a = compute_spectrum(s, 8)
    b = compute_spectrum(s, 12)
    assert b.F[:9] == a.F
    assert b.F1[:9] == a.F1


def test_f_dominates_f1():
    spec = compute_spectrum(shipped_seed("u214"), 12)
    assert all(f >= f1 >= 0 for f, f1 in zip(spec.F, spec.F1))
    assert spec.d_free == 5
    assert spec.d1 == 8


def test_catastrophic_seed_refused_with_cycle():
    seed = SeedTransformation(2, 1, 1, SymplecticMatrix(3, DEMO_ROWS))
    with pytest.raises(CatastrophicSeedError) as exc:
        compute_spectrum(seed, 6)
    assert exc.value.cycle is not None
    assert exc.value.cycle.logical_weight > 0


def brute_spectrum(d, w_max):
    """Direct path enumeration mirroring the counting definition."""
    cycles = zero_weight_cycles(d)
    cyc_vs = {v for c in cycles for v in c.vertices}
    cyc_es = {e for c in cycles for e in c.edges}
    F = [0] * (w_max + 1)
    F1 = [0] * (w_max + 1)

    def step(e, w, lw):
        w += int(d.pweight[e])
        if w > w_max:
            return
        lw += int(d.lweight[e])
        v = int(d.dst[e])
        if v in cyc_vs:
            if lw >= 1:
                F[w] += 1
            if lw == 1:
                F1[w] += 1
            return
        for e2 in d.out_edges(v):
            step(e2, w, lw)

    for v0 in sorted(cyc_vs):
        for e in d.out_edges(v0):
            if e not in cyc_es:
                step(e, 0, 0)
    return tuple(F), tuple(F1)


def test_dp_matches_brute_force_on_toy_seeds():
    rng = np.random.default_rng(31)
    compared = 0
    for n, k, m in [(2, 1, 1), (2, 1, 2)]:
        for _ in range(8):
            seed = SeedTransformation(n, k, m, random_symplectic(n + m, rng))
            d = build_state_diagram(seed)
            try:
                spec = compute_spectrum(seed, 6, diagram=d)
            except CatastrophicSeedError:
                continue
            bf, bf1 = brute_spectrum(d, 6)
            assert spec.F == bf
            assert spec.F1 == bf1
            compared += 1
    assert compared >= 5


def test_dmin_bound():
    s313 = compute_spectrum(shipped_seed("u313"), 8)
    assert turbo_dmin_bound(s313, s313) == 4 * 6
    tiny = DistanceSpectrum(1, (0, 1), (0, 1))
    assert turbo_dmin_bound(tiny, tiny) == 1
    empty = DistanceSpectrum(2, (0, 0, 0), (0, 0, 0))
    with pytest.raises(ValidationError):
        turbo_dmin_bound(empty, s313)
    with pytest.raises(ValidationError):
        turbo_dmin_bound(s313, empty)


def test_spectrum_shape_validation():
    with pytest.raises(ValidationError):
        DistanceSpectrum(2, (0, 0), (0, 0, 0))
