"""Quantum convolutional encoders built from a seed transformation.

Seed transformation
    A symplectic matrix U on n+m qubits. In memory its input qubits are
    ordered (M : L : S): m memory qubits first, then k logical, then n-k
    stabilizer. Its output qubits are ordered (P : M'): n physical first,
    then m next-memory. The encoder applies U once per time slice with the
    memory threading from slice to slice.

Stream layout
    A duration-N encoder with termination length t (default t = m) maps an
    input of n(N+t) + m qubits to a physical output of the same length.
    Input qubit order: the m initial-memory qubits S0, then per body slice
    i = 1..N its k logical qubits L_i followed by its n-k stabilizer qubits
    S_i, then per terminal slice i = N+1..N+t its n stabilizer qubits S_i.
    Output order: P_1 .. P_{N+t} (n qubits each), then the final memory,
    which is physical as well.

Syndrome
    The syndrome is the x part of every stabilizer input slot, recovered by
    running the inverse recursion: m bits from S0, n-k bits per body slice,
    n bits per terminal slice, flattened in time order. Codeword cosets
    share the syndrome, so it is a function of the physical error only.

Seed files
    A seed file is JSON with fields n, k, m, rows. Every integer in rows is
    one matrix row. The file convention differs from the in-memory one and
    is frozen by the distance-table oracle (see README): rows are listed
    logical block first, then stabilizer, then memory, X image before Z
    image inside each qubit; each integer is read MSB first over width
    2(n+m); the columns inside a row are memory output first, then
    physical, (x, z) inside each qubit.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .gf2_symplectic import (
    PauliString,
    SymplecticMatrix,
    x_part_bits,
)


@dataclass(frozen=True)
class SeedTransformation:
    """A seed: parameters (n, k, m) plus the symplectic matrix u on n+m qubits.

    Row blocks of u, in the in-memory convention: rows [0, 2m) act on the
    memory, rows [2m, 2m+2k) on the logical qubits, rows [2m+2k, 2(n+m))
    on the stabilizer qubits. Within each block, X image before Z image.
    Column blocks: bits [0, 2n) are the physical output, bits [2n, 2(n+m))
    the next memory.
    """

    n: int
    k: int
    m: int
    u: SymplecticMatrix

    def __post_init__(self):
        if not (1 <= self.k <= self.n) or self.m < 1:
            raise ValidationError(
                f"bad seed parameters n={self.n} k={self.k} m={self.m}"
            )
        if self.u.n != self.n + self.m:
            raise ValidationError(
                f"seed matrix acts on {self.u.n} qubits, expected {self.n + self.m}"
            )

    # row blocks
    @property
    def memory_rows(self):
        return self.u.rows[: 2 * self.m]

    @property
    def logical_rows(self):
        return self.u.rows[2 * self.m : 2 * (self.m + self.k)]

    @property
    def stabilizer_rows(self):
        return self.u.rows[2 * (self.m + self.k) :]

    @property
    def sigma_rows(self):
        """Z-action rows of the stabilizer block (n-k rows)."""
        return self.stabilizer_rows[1::2]

    def effective(self):
        """The effective seed: stabilizer X-action rows removed."""
        return EffectiveSeed(
            self.n,
            self.k,
            self.m,
            self.memory_rows + self.logical_rows + self.sigma_rows,
        )

    # memory/physical parts of row blocks, as tuples of ints
    def _split(self, rows):
        pmask = (1 << (2 * self.n)) - 1
        return (
            tuple(r & pmask for r in rows),
            tuple(r >> (2 * self.n) for r in rows),
        )

    @property
    def mu(self):
        """Memory-block rows split into (physical part, memory part)."""
        return self._split(self.memory_rows)

    @property
    def lam(self):
        """Logical-block rows split into (physical part, memory part)."""
        return self._split(self.logical_rows)

    @property
    def sigma(self):
        """Sigma rows split into (physical part, memory part)."""
        return self._split(self.sigma_rows)


@dataclass(frozen=True)
class EffectiveSeed:
    """Seed rows with the stabilizer X-action rows deleted: 2m + 2k + (n-k)
    rows. Captures exactly the transformations reachable when stabilizer
    inputs are restricted to {I, Z}."""

    n: int
    k: int
    m: int
    rows: tuple


# ---------------------------------------------------------------------------
# Seed file format


def _listing_maps(n, k, m):
    """Index maps between the file listing and the in-memory convention.

    Returns (row_of, colbit_of): row_of[r] is the listing row holding
    in-memory row r; colbit_of[c] is the listing bit position (from the
    MSB end) holding in-memory column c.
    """
    w = 2 * (n + m)
    row_of = []
    for q in range(n + m):  # in-memory input qubit
        listed_q = n + q if q < m else q - m  # memory listed last
        for s in (0, 1):  # X row then Z row on both sides
            row_of.append(2 * listed_q + s)
    colbit_of = []
    for c in range(w):
        p, y = divmod(c, 2)  # in-memory output qubit and x/z selector
        listed_p = p - n if p >= n else m + p  # memory output listed first
        lc = 2 * listed_p + y
        colbit_of.append(w - 1 - lc)  # integers are MSB first
    return row_of, colbit_of


def rows_from_listing(ints, n, k, m):
    """Convert listed row integers to in-memory convention rows."""
    w = 2 * (n + m)
    if len(ints) != w:
        raise ValidationError(f"expected {w} rows, got {len(ints)}")
    for r in ints:
        if not 0 <= r < 1 << w:
            raise ValidationError(f"row {r} wider than {w} bits")
    row_of, colbit_of = _listing_maps(n, k, m)
    rows = []
    for r in range(w):
        src = ints[row_of[r]]
        v = 0
        for c in range(w):
            v |= ((src >> colbit_of[c]) & 1) << c
        rows.append(v)
    return rows


def rows_to_listing(rows, n, k, m):
    """Inverse of rows_from_listing."""
    w = 2 * (n + m)
    row_of, colbit_of = _listing_maps(n, k, m)
    ints = [0] * w
    for r in range(w):
        v = rows[r]
        out = 0
        for c in range(w):
            out |= ((v >> c) & 1) << colbit_of[c]
        ints[row_of[r]] = out
    return ints


def load_seed(text: str) -> SeedTransformation:
    """Parse a JSON seed file; validates the symplectic property."""
    try:
        doc = json.loads(text)
        n, k, m = int(doc["n"]), int(doc["k"]), int(doc["m"])
        ints = [int(r) for r in doc["rows"]]
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed seed file: {exc}") from exc
    rows = rows_from_listing(ints, n, k, m)
    return SeedTransformation(n, k, m, SymplecticMatrix(n + m, tuple(rows)))


def store_seed(seed: SeedTransformation) -> str:
    """Serialize a seed to the JSON file format."""
    ints = rows_to_listing(seed.u.rows, seed.n, seed.k, seed.m)
    return json.dumps(
        {"n": seed.n, "k": seed.k, "m": seed.m, "rows": ints}, indent=1
    )


# ---------------------------------------------------------------------------
# Encoder


@dataclass(frozen=True)
class ConvEncoder:
    """Convolutional encoder: a seed applied over N body slices plus t
    terminal (memory flushing) slices. t defaults to m."""

    seed: SeedTransformation
    N: int
    t: int = None  # type: ignore[assignment]

    def __post_init__(self):
        if self.t is None:
            object.__setattr__(self, "t", self.seed.m)
        if self.N < 1 or self.t < 0:
            raise ValidationError(f"bad encoder shape N={self.N} t={self.t}")

    @property
    def n_physical(self):
        s = self.seed
        return s.n * (self.N + self.t) + s.m

    @property
    def n_logical(self):
        return self.seed.k * self.N

    @property
    def syndrome_bit_count(self):
        s = self.seed
        return s.m + self.N * (s.n - s.k) + self.t * s.n

    @property
    def rate(self):
        return self.n_logical / self.n_physical

    def logical_positions(self):
        """Input qubit indices that carry logical content, in time order."""
        s = self.seed
        out = []
        for i in range(self.N):
            base = s.m + i * s.n
            out.extend(range(base, base + s.k))
        return out

    def syndrome_positions(self):
        """Input qubit indices whose x parts form the syndrome, in order."""
        s = self.seed
        out = list(range(s.m))
        for i in range(self.N):
            base = s.m + i * s.n
            out.extend(range(base + s.k, base + s.n))
        for i in range(self.t):
            base = s.m + (self.N + i) * s.n
            out.extend(range(base, base + s.n))
        return out

    # --- slicing helpers on raw 2q-bit values ---

    def _input_slices(self, bits):
        """Split input bits into (s0, [(l_i, s_i)], [s_term])."""
        s = self.seed
        mm = (1 << (2 * s.m)) - 1
        km = (1 << (2 * s.k)) - 1
        sm = (1 << (2 * (s.n - s.k))) - 1
        nm = (1 << (2 * s.n)) - 1
        s0 = bits & mm
        pos = 2 * s.m
        body = []
        for _ in range(self.N):
            l = (bits >> pos) & km
            pos += 2 * s.k
            sz = (bits >> pos) & sm
            pos += 2 * (s.n - s.k)
            body.append((l, sz))
        term = []
        for _ in range(self.t):
            term.append((bits >> pos) & nm)
            pos += 2 * s.n
        return s0, body, term

    def encode(self, p: PauliString) -> PauliString:
        """Run the seed forward over the input stream (S0 : L_i : S_i ...)."""
        s = self.seed
        if p.n != self.n_physical:
            raise ValidationError(
                f"input has {p.n} qubits, encoder expects {self.n_physical}"
            )
        s0, body, term = self._input_slices(p.bits)
        pmask = (1 << (2 * s.n)) - 1
        mem = s0
        out = 0
        pos = 0
        for l, sz in body:
            full = mem | (l << (2 * s.m)) | (sz << (2 * (s.m + s.k)))
            img = self.seed.u.image(full)
            out |= (img & pmask) << pos
            mem = img >> (2 * s.n)
            pos += 2 * s.n
        for sigma in term:
            full = mem | (sigma << (2 * s.m))
            img = self.seed.u.image(full)
            out |= (img & pmask) << pos
            mem = img >> (2 * s.n)
            pos += 2 * s.n
        out |= mem << pos
        return PauliString(self.n_physical, out)


@dataclass(frozen=True)
class InverseResult:
    """Output of inverse_encode: the input stream of the unique preimage.

    logical[i] and stab_body[i] are the slice i+1 values as raw bit ints
    over k and n-k qubits; stab_term[j] covers terminal slice N+1+j over n
    qubits; memory[i] is M_i for i = 0..N+t (memory[0] equals s0).
    """

    s0: int
    logical: tuple
    stab_body: tuple
    stab_term: tuple
    memory: tuple


def inverse_encode(enc: ConvEncoder, p: PauliString) -> InverseResult:
    """Invert the encoder by running the seed inverse slice by slice.

    Never materializes the full encoding matrix; cost is one seed
    application per slice.
    """
    s = enc.seed
    if p.n != enc.n_physical:
        raise ValidationError(
            f"input has {p.n} qubits, encoder expects {enc.n_physical}"
        )
    uinv = _seed_inverse(s)
    pmask = (1 << (2 * s.n)) - 1
    km = (1 << (2 * s.k)) - 1
    sm = (1 << (2 * (s.n - s.k))) - 1
    nm = (1 << (2 * s.n)) - 1

    slices = [(p.bits >> (2 * s.n * i)) & pmask for i in range(enc.N + enc.t)]
    mem_after = p.bits >> (2 * s.n * (enc.N + enc.t))

    memory = [0] * (enc.N + enc.t + 1)
    memory[enc.N + enc.t] = mem_after
    logical = [0] * enc.N
    stab_body = [0] * enc.N
    stab_term = [0] * enc.t
    mem = mem_after
    for i in range(enc.N + enc.t, 0, -1):
        full = slices[i - 1] | (mem << (2 * s.n))
        pre = uinv.image(full)
        mem = pre & ((1 << (2 * s.m)) - 1)
        memory[i - 1] = mem
        rest = pre >> (2 * s.m)
        if i <= enc.N:
            logical[i - 1] = rest & km
            stab_body[i - 1] = (rest >> (2 * s.k)) & sm
        else:
            stab_term[i - enc.N - 1] = rest & nm
    return InverseResult(
        s0=memory[0],
        logical=tuple(logical),
        stab_body=tuple(stab_body),
        stab_term=tuple(stab_term),
        memory=tuple(memory),
    )


def encode(enc: ConvEncoder, p: PauliString) -> PauliString:
    return enc.encode(p)


_INVERSE_CACHE = {}


def _seed_inverse(seed: SeedTransformation) -> SymplecticMatrix:
    key = seed.u.rows
    if key not in _INVERSE_CACHE:
        from .gf2_symplectic import invert

        _INVERSE_CACHE[key] = invert(seed.u)
    return _INVERSE_CACHE[key]


def syndrome(enc: ConvEncoder, p: PauliString) -> np.ndarray:
    """X parts of all stabilizer slots of the preimage, in time order."""
    return syndrome_from_inverse(enc, inverse_encode(enc, p))


def syndrome_from_inverse(enc: ConvEncoder, inv: InverseResult) -> np.ndarray:
    """Syndrome bits of an already-computed decomposition."""
    s = enc.seed
    bits = []
    v = x_part_bits(inv.s0, s.m)
    bits.extend((v >> j) & 1 for j in range(s.m))
    for sb in inv.stab_body:
        v = x_part_bits(sb, s.n - s.k)
        bits.extend((v >> j) & 1 for j in range(s.n - s.k))
    for st_ in inv.stab_term:
        v = x_part_bits(st_, s.n)
        bits.extend((v >> j) & 1 for j in range(s.n))
    return np.array(bits, dtype=np.uint8)


def syndrome_ints(enc: ConvEncoder, p: PauliString):
    """Syndrome split per slice: (s0x, body x-parts list, terminal list)."""
    s = enc.seed
    inv = inverse_encode(enc, p)
    s0x = x_part_bits(inv.s0, s.m)
    body = [x_part_bits(v, s.n - s.k) for v in inv.stab_body]
    term = [x_part_bits(v, s.n) for v in inv.stab_term]
    return s0x, body, term


def split_syndrome_bits(enc: ConvEncoder, bits):
    """Pack a flat syndrome bit stream into per-slice integers.

    Accepts any sequence of 0/1 of length syndrome_bit_count; returns
    (s0x, body list of n-k-bit ints, terminal list of n-bit ints).
    """
    s = enc.seed
    bits = list(int(b) for b in bits)
    if len(bits) != enc.syndrome_bit_count:
        raise ValidationError(
            f"syndrome has {len(bits)} bits, expected {enc.syndrome_bit_count}"
        )
    pos = 0

    def take(nbits):
        nonlocal pos
        v = 0
        for j in range(nbits):
            v |= bits[pos + j] << j
        pos += nbits
        return v

    s0x = take(s.m)
    body = [take(s.n - s.k) for _ in range(enc.N)]
    term = [take(s.n) for _ in range(enc.t)]
    return s0x, body, term
