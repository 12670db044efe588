"""Effective Pauli group arithmetic and binary symplectic linear algebra.

Everything else in the package is built on the conventions fixed here.

Bit layout
    An n-qubit Pauli operator, with phases ignored, is a 2n-bit integer.
    Qubit j owns bit 2j (its x part) and bit 2j+1 (its z part), so qubit 0
    sits in the two least significant bits and the per-qubit two-bit codes
    are I=0, X=1, Z=2, Y=3. Group multiplication without phases is bitwise
    XOR, and the identity is 0.

Inner product
    star(P, Q) is the symplectic form P Lambda Q^T over GF(2), where Lambda
    swaps the (x, z) bits of every qubit. It is 0 exactly when the operators
    commute, and 1 when they anticommute.

Symplectic matrices
    A symplectic matrix on n qubits is 2n row integers of width 2n. Row 2i
    is the image of X on qubit i, row 2i+1 the image of Z on qubit i. The
    action on a row vector P is the XOR of the rows selected by the bits of
    P. Symplectic means the form is preserved: images of the X/Z pair of a
    qubit anticommute with each other and commute with every other row.

Distribution order
    Probability 4-vectors elsewhere in the package are indexed in the order
    (I, X, Y, Z). BIT_FROM_IXYZ maps that index to the bit code above and is
    its own inverse, so the same table converts in both directions.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ValidationError

# (I, X, Y, Z) index <-> bit code; the permutation is an involution.
BIT_FROM_IXYZ = (0, 1, 3, 2)
IXYZ_FROM_BIT = BIT_FROM_IXYZ
SYMBOL_FROM_BIT = "IXZY"
BIT_FROM_SYMBOL = {"I": 0, "X": 1, "Z": 2, "Y": 3}


@lru_cache(maxsize=None)
def _x_mask(n):
    """Mask with the x bit of every one of n qubits set (0b...0101)."""
    m = 0
    for j in range(n):
        m |= 1 << (2 * j)
    return m


def pair_swap(bits, n):
    """Swap the x and z bit of every qubit: multiplication by Lambda."""
    xm = _x_mask(n)
    return ((bits & xm) << 1) | ((bits >> 1) & xm)


def star_bits(a, b, n):
    """Symplectic form of two raw 2n-bit values."""
    return (a & pair_swap(b, n)).bit_count() & 1


def weight_bits(bits, n):
    """Number of qubits on which a raw 2n-bit value is not the identity."""
    return ((bits | (bits >> 1)) & _x_mask(n)).bit_count()


def image_bits(rows, bits):
    """XOR of the rows selected by the set bits: right action of a matrix."""
    out = 0
    while bits:
        low = bits & -bits
        out ^= rows[low.bit_length() - 1]
        bits ^= low
    return out


@dataclass(frozen=True)
class PauliString:
    """An element of the effective Pauli group on n qubits.

    bits holds the 2n-bit encoding described in the module docstring.
    """

    n: int
    bits: int

    def __post_init__(self):
        if self.n < 0 or not 0 <= self.bits < 1 << (2 * self.n):
            raise ValidationError(
                f"Pauli bits {self.bits:#x} out of range for n={self.n}"
            )

    @classmethod
    def identity(cls, n):
        return cls(n, 0)

    @classmethod
    def from_symbols(cls, symbols):
        """Build from a string like "XIZY" (qubit 0 is the first character)."""
        bits = 0
        for j, c in enumerate(symbols):
            try:
                bits |= BIT_FROM_SYMBOL[c] << (2 * j)
            except KeyError:
                raise ValidationError(f"unknown Pauli symbol {c!r}") from None
        return cls(len(symbols), bits)

    def symbol(self, j):
        """Two-bit code of qubit j (I=0, X=1, Z=2, Y=3)."""
        return (self.bits >> (2 * j)) & 3

    def __str__(self):
        return "".join(SYMBOL_FROM_BIT[self.symbol(j)] for j in range(self.n))

    def __add__(self, other):
        """Group product (phases dropped), which is XOR."""
        if self.n != other.n:
            raise ValidationError("length mismatch in Pauli product")
        return PauliString(self.n, self.bits ^ other.bits)


def star(p: PauliString, q: PauliString) -> int:
    """Symplectic inner product; 0 iff p and q commute."""
    if p.n != q.n:
        raise ValidationError("length mismatch in star product")
    return star_bits(p.bits, q.bits, p.n)


def weight(p: PauliString) -> int:
    """Number of qubits where p differs from the identity."""
    return weight_bits(p.bits, p.n)


def xz_split(p: PauliString):
    """Unique decomposition p = px + pz with px in {I,X}^n, pz in {I,Z}^n."""
    xm = _x_mask(p.n)
    return PauliString(p.n, p.bits & xm), PauliString(p.n, p.bits & (xm << 1))


def x_part_bits(bits, nq):
    """Per-qubit x bits of a raw value, packed into an nq-bit integer."""
    out = 0
    for j in range(nq):
        out |= ((bits >> (2 * j)) & 1) << j
    return out


@dataclass(frozen=True)
class SymplecticMatrix:
    """A symplectic 2n x 2n binary matrix stored as row integers.

    Row 2i is the image of X on qubit i, row 2i+1 the image of Z on qubit i.
    The constructor validates the symplectic condition and rejects anything
    else, so instances can be trusted downstream.
    """

    n: int
    rows: tuple

    def __post_init__(self):
        w = 2 * self.n
        if len(self.rows) != w:
            raise ValidationError(
                f"expected {w} rows for n={self.n}, got {len(self.rows)}"
            )
        for r in self.rows:
            if not 0 <= r < 1 << w:
                raise ValidationError("row wider than 2n bits")
        for i in range(w):
            for j in range(i, w):
                want = 1 if j == i ^ 1 else 0
                if star_bits(self.rows[i], self.rows[j], self.n) != want:
                    raise ValidationError(
                        f"not symplectic: rows {i}, {j} have the wrong form value"
                    )

    @classmethod
    def identity(cls, n):
        return cls(n, tuple(1 << r for r in range(2 * n)))

    def image(self, bits):
        """Right action on a raw 2n-bit row vector."""
        return image_bits(self.rows, bits)


def apply(p: PauliString, u: SymplecticMatrix) -> PauliString:
    """Image of p under u; a group homomorphism."""
    if p.n != u.n:
        raise ValidationError("dimension mismatch in apply")
    return PauliString(p.n, u.image(p.bits))


def invert(u: SymplecticMatrix) -> SymplecticMatrix:
    """Inverse of a symplectic matrix, via Lambda U^T Lambda.

    Entry (i, j) of the inverse is entry (j^1, i^1) of u, because
    conjugating the transpose by the pair swap exchanges both indices
    within their qubit pair.
    """
    w = 2 * u.n
    rows = []
    for i in range(w):
        v = 0
        for j in range(w):
            v |= ((u.rows[j ^ 1] >> (i ^ 1)) & 1) << j
        rows.append(v)
    return SymplecticMatrix(u.n, tuple(rows))


def matmul(a: SymplecticMatrix, b: SymplecticMatrix) -> SymplecticMatrix:
    """Product a.b acting on row vectors as x (a.b) = (x a) b."""
    if a.n != b.n:
        raise ValidationError("dimension mismatch in matmul")
    return SymplecticMatrix(a.n, tuple(b.image(r) for r in a.rows))


# ---------------------------------------------------------------------------
# GF(2) subspaces over bit-packed row vectors


def _rref(vectors, width):
    """Reduced row echelon basis, pivots at the most significant bits.

    Fully reduced: every row is zero at every other row's pivot. Returns a
    tuple sorted by descending pivot; equal spans always produce identical
    tuples, so subspace equality is plain tuple comparison.
    """
    basis = {}  # pivot bit -> row
    for v in vectors:
        if not 0 <= v < 1 << width:
            raise ValidationError("vector wider than the ambient space")
        for p in sorted(basis, reverse=True):
            if (v >> p) & 1:
                v ^= basis[p]
        if v == 0:
            continue
        p = v.bit_length() - 1
        # v is clear at all existing pivots, so this keeps full reduction
        for q in basis:
            if (basis[q] >> p) & 1:
                basis[q] ^= v
        basis[p] = v
    return tuple(basis[p] for p in sorted(basis, reverse=True))


@dataclass(frozen=True)
class Subspace:
    """A GF(2) subspace of bit vectors of a fixed width, in canonical form.

    width is the ambient dimension (2m for Pauli spaces on m qubits). The
    basis is reduced row echelon with descending pivots, so two Subspace
    instances are equal iff they span the same set.
    """

    width: int
    basis: tuple

    @classmethod
    def from_vectors(cls, vectors, width):
        return cls(width, _rref(vectors, width))

    @property
    def dim(self):
        return len(self.basis)

    def reduce(self, v):
        for b in self.basis:
            if (v >> (b.bit_length() - 1)) & 1:
                v ^= b
        return v

    def contains(self, v):
        return self.reduce(v) == 0

    def enumerate(self):
        """All 2^dim member vectors (intended for small subspaces)."""
        members = [0]
        for b in self.basis:
            members += [v ^ b for v in members]
        return members

    def union(self, other):
        if self.width != other.width:
            raise ValidationError("ambient width mismatch in union")
        return Subspace.from_vectors(self.basis + other.basis, self.width)


def nullspace(rows, width):
    """Basis of {v : parity(v & r) = 0 for every row r}, as a Subspace."""
    mat = _rref(rows, width)
    pivots = {b.bit_length() - 1 for b in mat}
    basis = []
    for free in range(width):
        if free in pivots:
            continue
        v = 1 << free
        # back-substitute: each pivot row fixes the pivot bit of v
        for b in mat:
            p = b.bit_length() - 1
            if (b & v).bit_count() & 1:
                v ^= 1 << p
        basis.append(v)
    return Subspace.from_vectors(basis, width)


def left_nullspace(rows, width):
    """Basis of {v : XOR of rows selected by v's bits is zero}.

    The rows are indexed by bit position of v; width is len(rows).
    """
    work = [(rows[r], 1 << r) for r in range(len(rows))]
    # eliminate on the row values, carrying combination tags
    basis = []
    piv = {}  # pivot bit -> (value, tag)
    for val, tag in work:
        while val:
            p = val.bit_length() - 1
            if p in piv:
                pv, pt = piv[p]
                val ^= pv
                tag ^= pt
            else:
                piv[p] = (val, tag)
                break
        if val == 0:
            basis.append(tag)
    return Subspace.from_vectors(basis, width)


def orthogonal_complement(v: Subspace) -> Subspace:
    """All vectors with zero star product against every member of v.

    The star constraint against a basis vector b is an ordinary parity
    constraint against pair_swap(b), so this is a nullspace computation.
    dim(v) + dim(result) equals the ambient width.
    """
    if v.width % 2:
        raise ValidationError("Pauli spaces have even width")
    nq = v.width // 2
    return nullspace([pair_swap(b, nq) for b in v.basis], v.width)


# ---------------------------------------------------------------------------
# Random symplectic matrices


def _swap_qubits_bits(bits, a, b):
    """Exchange the (x, z) bit pairs of qubits a and b in a raw value."""
    pa = (bits >> (2 * a)) & 3
    pb = (bits >> (2 * b)) & 3
    bits &= ~((3 << (2 * a)) | (3 << (2 * b)))
    return bits | (pa << (2 * b)) | (pb << (2 * a))


def random_symplectic(n, rng, num_ops=None) -> SymplecticMatrix:
    """Random symplectic matrix as a product of elementary operations.

    Each step right-multiplies by either a transvection x -> x + (x*v)v for
    a uniform nonzero v, or a uniform qubit pair swap (when n > 1). The
    default of 20 n^2 steps mixes far past the diameter of the generating
    set at the sizes used here. The result is validated on construction.
    """
    if num_ops is None:
        num_ops = 20 * n * n
    rows = [1 << r for r in range(2 * n)]
    for _ in range(num_ops):
        if n > 1 and rng.integers(2) == 0:
            a, b = rng.choice(n, size=2, replace=False)
            rows = [_swap_qubits_bits(r, int(a), int(b)) for r in rows]
        else:
            v = 0
            while v == 0:
                bits = rng.integers(0, 2, size=2 * n)
                v = int(sum(int(x) << i for i, x in enumerate(bits)))
            rows = [r ^ (star_bits(r, v, n) * v) for r in rows]
    return SymplecticMatrix(n, tuple(rows))


def pauli_array_to_bits(symbols):
    """Pack an array of per-qubit bit codes (I=0,X=1,Z=2,Y=3) into an int."""
    bits = 0
    for j, s in enumerate(np.asarray(symbols).tolist()):
        bits |= int(s) << (2 * j)
    return bits


def bits_to_pauli_array(bits, nq):
    """Unpack a raw value into an int8 array of per-qubit bit codes."""
    out = np.empty(nq, dtype=np.int8)
    for j in range(nq):
        out[j] = (bits >> (2 * j)) & 3
    return out
