"""Pauli group and symplectic algebra tests."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qturbo.errors import ValidationError
from qturbo.gf2_symplectic import (
    PauliString,
    Subspace,
    SymplecticMatrix,
    apply,
    invert,
    matmul,
    nullspace,
    orthogonal_complement,
    pair_swap,
    random_symplectic,
    star,
    star_bits,
    weight,
    x_part_bits,
    xz_split,
)


def P(symbols):
    return PauliString.from_symbols(symbols)


def test_star_examples():
    assert star(P("X"), P("Z")) == 1
    assert star(P("X"), P("Y")) == 1
    assert star(P("X"), P("X")) == 0
    assert star(P("XZ"), P("ZX")) == 0
    assert star(P("XI"), P("ZI")) == 1


def test_star_self_zero_and_symmetric():
    rng = np.random.default_rng(7)
    for _ in range(200):
        n = int(rng.integers(1, 6))
        a = PauliString(n, int(rng.integers(0, 4**n)))
        b = PauliString(n, int(rng.integers(0, 4**n)))
        assert star(a, a) == 0
        assert star(a, b) == star(b, a)


@given(st.integers(1, 6), st.data())
@settings(max_examples=100, deadline=None)
def test_star_bilinear(n, data):
    lim = 4**n
    a = data.draw(st.integers(0, lim - 1))
    b = data.draw(st.integers(0, lim - 1))
    c = data.draw(st.integers(0, lim - 1))
    assert star_bits(a ^ b, c, n) == star_bits(a, c, n) ^ star_bits(b, c, n)


def test_star_length_mismatch():
    with pytest.raises(ValidationError):
        star(P("X"), P("XX"))


def test_weight_examples():
    assert weight(PauliString.identity(5)) == 0
    assert weight(P("XZ")) == 2
    assert weight(P("IYI")) == 1
    assert weight(P("XIZY")) == 3


def test_xz_split_examples():
    px, pz = xz_split(P("Y"))
    assert str(px) == "X" and str(pz) == "Z"
    px, pz = xz_split(PauliString.identity(3))
    assert px.bits == 0 and pz.bits == 0
    px, pz = xz_split(P("XZY"))
    assert str(px) == "XIX" and str(pz) == "IZZ"


@given(st.integers(1, 8), st.data())
@settings(max_examples=100, deadline=None)
def test_xz_split_roundtrip(n, data):
    p = PauliString(n, data.draw(st.integers(0, 4**n - 1)))
    px, pz = xz_split(p)
    assert px.bits ^ pz.bits == p.bits
    assert xz_split(px)[0] == px and xz_split(px)[1].bits == 0
    assert xz_split(pz)[1] == pz and xz_split(pz)[0].bits == 0


def test_pair_swap_involution():
    rng = np.random.default_rng(3)
    for _ in range(100):
        n = int(rng.integers(1, 8))
        v = int(rng.integers(0, 4**n))
        assert pair_swap(pair_swap(v, n), n) == v


def test_x_part_bits():
    # XZY: x parts are 1, 0, 1
    assert x_part_bits(P("XZY").bits, 3) == 0b101


def test_symbols_roundtrip():
    s = "IXZYXI"
    assert str(P(s)) == s


def test_identity_matrix_fixes_everything():
    u = SymplecticMatrix.identity(3)
    for bits in range(64):
        p = PauliString(3, bits)
        assert apply(p, u) == p


def test_non_symplectic_rejected():
    rows = list(SymplecticMatrix.identity(2).rows)
    rows[0] = rows[1]
    with pytest.raises(ValidationError):
        SymplecticMatrix(2, tuple(rows))


def test_apply_is_homomorphism():
    rng = np.random.default_rng(11)
    u = random_symplectic(3, rng)
    for _ in range(100):
        a = PauliString(3, int(rng.integers(0, 4**3)))
        b = PauliString(3, int(rng.integers(0, 4**3)))
        assert apply(a + b, u) == apply(a, u) + apply(b, u)


def test_invert_identities_and_star_preservation():
    rng = np.random.default_rng(5)
    for _ in range(50):
        n = int(rng.integers(1, 6))
        u = random_symplectic(n, rng)
        w = invert(u)
        assert matmul(u, w) == SymplecticMatrix.identity(n)
        assert matmul(w, u) == SymplecticMatrix.identity(n)
        for _ in range(10):
            a = PauliString(n, int(rng.integers(0, 4**n)))
            b = PauliString(n, int(rng.integers(0, 4**n)))
            assert star(apply(a, u), apply(b, u)) == star(a, b)


def test_invert_identity():
    assert invert(SymplecticMatrix.identity(4)) == SymplecticMatrix.identity(4)


def test_subspace_canonical_equality():
    # same span presented two ways
    a = Subspace.from_vectors([0b110, 0b011], 3)
    b = Subspace.from_vectors([0b101, 0b011, 0b110], 3)
    assert a == b
    assert a.dim == 2


def test_subspace_membership_matches_enumeration():
    rng = np.random.default_rng(13)
    for _ in range(50):
        width = int(rng.integers(2, 12))
        vecs = [int(rng.integers(0, 1 << width)) for _ in range(4)]
        s = Subspace.from_vectors(vecs, width)
        members = set(s.enumerate())
        assert len(members) == 1 << s.dim
        for v in members:
            assert s.contains(v)
        for _ in range(20):
            v = int(rng.integers(0, 1 << width))
            assert s.contains(v) == (v in members)


def test_orthogonal_complement_dims_and_involution():
    full = orthogonal_complement(Subspace.from_vectors([], 4))
    assert full.dim == 4

    # span{X on qubit 0} inside 2 qubits: complement has dimension 3
    v = Subspace.from_vectors([P("XI").bits], 4)
    c = orthogonal_complement(v)
    assert c.dim == 3
    for w in c.enumerate():
        assert star_bits(w, P("XI").bits, 2) == 0

    rng = np.random.default_rng(17)
    for _ in range(50):
        m = int(rng.integers(1, 4))
        vecs = [int(rng.integers(0, 4**m)) for _ in range(3)]
        s = Subspace.from_vectors(vecs, 2 * m)
        c = orthogonal_complement(s)
        assert s.dim + c.dim == 2 * m
        assert orthogonal_complement(c) == s


def test_nullspace_solves_constraints():
    rng = np.random.default_rng(19)
    for _ in range(50):
        width = int(rng.integers(2, 10))
        rows = [int(rng.integers(0, 1 << width)) for _ in range(3)]
        ns = nullspace(rows, width)
        for v in ns.enumerate():
            for r in rows:
                assert (v & r).bit_count() % 2 == 0
        rank = Subspace.from_vectors(rows, width).dim
        assert ns.dim == width - rank


def test_random_symplectic_is_validated_and_varied():
    rng = np.random.default_rng(23)
    seen = {random_symplectic(2, rng).rows for _ in range(20)}
    assert len(seen) > 10  # produces distinct elements
