"""Serial concatenation of two convolutional codes with a quantum interleaver.

The interleaver maps stream position i to position pi(i) and twists each
qubit by one of the six invertible single-qubit symplectic matrices:
output slot i carries input slot pi(i) transformed by K_i. The outer
encoder's full physical stream (termination and flushed memory included)
feeds the inner encoder's logical slots, so the inner logical count must
equal the outer physical count.

Decoding alternates exact SISO passes: the inner stage sees the channel
priors and (from the second round on) logical priors fed back from the
outer stage through the interleaver; the outer stage sees the inner
logical posteriors transported to its physical positions. Per-qubit
argmax of the outer logical posterior gives the running estimate; the
loop stops when the estimate repeats or the round budget is exhausted.
The stages exchange full posteriors by default; pass extrinsic=True to
divide out the fed-in priors first.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .conv_code import ConvEncoder, InverseResult, inverse_encode, syndrome
from .errors import SisoFailure, ValidationError
from .gf2_symplectic import BIT_FROM_IXYZ, PauliString
from .siso import SisoInput, siso_decode, uniform_logical_priors

# the six invertible single-qubit maps as (image of X, image of Z) bit
# codes, lexicographic; index 0 is the identity
K_IMAGES = ((1, 2), (1, 3), (2, 1), (2, 3), (3, 1), (3, 2))

_MAPBIT = tuple(
    tuple((ix if v & 1 else 0) ^ (iz if v & 2 else 0) for v in range(4))
    for ix, iz in K_IMAGES
)
_K_INV = tuple(
    next(
        j
        for j in range(6)
        if all(_MAPBIT[j][_MAPBIT[i][v]] == v for v in range(4))
    )
    for i in range(6)
)
_IXYZ = (0, 1, 3, 2)
# public-order transport tables: row k maps column gamma to gamma*K
GAMMA_K = np.array(
    [[_IXYZ[_MAPBIT[k][_IXYZ[c]]] for c in range(4)] for k in range(6)]
)
GAMMA_KINV = np.array([GAMMA_K[_K_INV[k]] for k in range(6)])


@dataclass(frozen=True)
class QuantumInterleaver:
    """Permutation plus per-slot single-qubit twist, both fixed at build."""

    pi: tuple
    k_index: tuple

    def __post_init__(self):
        pi = tuple(int(v) for v in self.pi)
        kx = tuple(int(v) for v in self.k_index)
        if sorted(pi) != list(range(len(pi))):
            raise ValidationError("pi is not a permutation")
        if len(kx) != len(pi):
            raise ValidationError(
                f"{len(kx)} twist indices for {len(pi)} slots"
            )
        if kx and not 0 <= min(kx) <= max(kx) < 6:
            raise ValidationError("twist indices must lie in 0..5")
        object.__setattr__(self, "pi", pi)
        object.__setattr__(self, "k_index", kx)

    @property
    def size(self):
        return len(self.pi)

    @cached_property
    def _pi_arr(self):
        return np.array(self.pi, dtype=np.int64)

    @cached_property
    def _fwd_maps(self):
        return GAMMA_K[np.array(self.k_index, dtype=np.int64)]

    @cached_property
    def _inv_maps(self):
        return GAMMA_KINV[np.array(self.k_index, dtype=np.int64)]

    def apply(self, p: PauliString) -> PauliString:
        """Output slot i holds input slot pi(i) transformed by K_i."""
        if p.n != self.size:
            raise ValidationError(f"{p.n} qubits into a size-{self.size} interleaver")
        out = 0
        for i, (src, kx) in enumerate(zip(self.pi, self.k_index)):
            out |= _MAPBIT[kx][(p.bits >> (2 * src)) & 3] << (2 * i)
        return PauliString(p.n, out)

    def inverse_apply(self, p: PauliString) -> PauliString:
        if p.n != self.size:
            raise ValidationError(f"{p.n} qubits into a size-{self.size} interleaver")
        out = 0
        for i, (src, kx) in enumerate(zip(self.pi, self.k_index)):
            out |= _MAPBIT[_K_INV[kx]][(p.bits >> (2 * i)) & 3] << (2 * src)
        return PauliString(p.n, out)

    def transport_out(self, rows: np.ndarray) -> np.ndarray:
        """Move per-slot posteriors to the positions they were read from.

        rows[i] is a distribution over the transformed slot i; the result
        row pi(i) is the induced distribution over the original slot.
        """
        out = np.empty_like(rows)
        out[self._pi_arr] = np.take_along_axis(rows, self._fwd_maps, axis=1)
        return out

    def transport_back(self, rows: np.ndarray) -> np.ndarray:
        """Inverse of transport_out."""
        return np.take_along_axis(rows[self._pi_arr], self._inv_maps, axis=1)


def random_interleaver(
    size: int, rng: np.random.Generator, identity_twists: bool = False
) -> QuantumInterleaver:
    """Uniform permutation with independent uniform twists.

    identity_twists=True keeps every K_i trivial, for experiments that
    isolate the permutation's effect.
    """
    if size < 1:
        raise ValidationError(f"interleaver size {size} must be positive")
    pi = tuple(int(v) for v in rng.permutation(size))
    if identity_twists:
        kx = (0,) * size
    else:
        kx = tuple(int(v) for v in rng.integers(0, 6, size))
    return QuantumInterleaver(pi, kx)


@dataclass(frozen=True)
class TurboCode:
    """Outer encoder whose physical stream feeds the inner logical slots."""

    outer: ConvEncoder
    inner: ConvEncoder
    interleaver: QuantumInterleaver

    def __post_init__(self):
        if self.inner.n_logical != self.outer.n_physical:
            raise ValidationError(
                f"inner code carries {self.inner.n_logical} logical qubits "
                f"but the outer code emits {self.outer.n_physical}"
            )
        if self.interleaver.size != self.outer.n_physical:
            raise ValidationError(
                f"interleaver size {self.interleaver.size} does not match "
                f"the outer physical stream ({self.outer.n_physical})"
            )

    @property
    def n_logical(self):
        return self.outer.n_logical

    @property
    def n_physical(self):
        return self.inner.n_physical

    @property
    def rate(self):
        return self.n_logical / self.n_physical


@dataclass(frozen=True)
class TurboInverse:
    """Decomposition of a physical error through both decoding stages."""

    logical: PauliString
    outer_physical: PauliString
    inner: InverseResult
    outer: InverseResult


def _flatten_logical(enc: ConvEncoder, logical) -> int:
    bits = 0
    for i, lam in enumerate(logical):
        bits |= lam << (2 * enc.seed.k * i)
    return bits


def turbo_encode_inverse(code: TurboCode, p: PauliString) -> TurboInverse:
    """Peel a physical error: inner inverse, de-interleave, outer inverse."""
    if p.n != code.n_physical:
        raise ValidationError(
            f"input has {p.n} qubits, the code expects {code.n_physical}"
        )
    inner_inv = inverse_encode(code.inner, p)
    inner_logical = PauliString(
        code.inner.n_logical, _flatten_logical(code.inner, inner_inv.logical)
    )
    outer_physical = code.interleaver.inverse_apply(inner_logical)
    outer_inv = inverse_encode(code.outer, outer_physical)
    logical = PauliString(
        code.outer.n_logical, _flatten_logical(code.outer, outer_inv.logical)
    )
    return TurboInverse(
        logical=logical,
        outer_physical=outer_physical,
        inner=inner_inv,
        outer=outer_inv,
    )


def turbo_syndromes(code: TurboCode, p: PauliString):
    """Measured X-syndrome streams (inner, outer) of a physical error."""
    inv = turbo_encode_inverse(code, p)
    return syndrome(code.inner, p), syndrome(code.outer, inv.outer_physical)


@dataclass(frozen=True)
class TurboDecodeResult:
    """Estimate of the logical coset label plus per-round posteriors."""

    estimate: PauliString
    iterations: int
    logical_posteriors: np.ndarray
    history: tuple


def _extrinsic(posterior: np.ndarray, prior: np.ndarray) -> np.ndarray:
    rows = posterior / np.maximum(prior, 1e-300)
    return rows / rows.sum(axis=1, keepdims=True)


def _hard_estimate(enc: ConvEncoder, rows: np.ndarray) -> PauliString:
    bits = 0
    for pos in range(rows.shape[0]):
        bits |= BIT_FROM_IXYZ[int(np.argmax(rows[pos]))] << (2 * pos)
    return PauliString(enc.n_logical, bits)


def turbo_decode(
    code: TurboCode,
    channel_priors: np.ndarray,
    syndrome_inner: np.ndarray,
    syndrome_outer: np.ndarray,
    iterations: int = 20,
    extrinsic: bool = False,
) -> TurboDecodeResult:
    """Iterative two-stage decode of a measured syndrome pair.

    Raises SisoFailure (annotated with .iteration) if a stage's syndrome
    is inconsistent with the support of its priors.
    """
    if iterations < 1:
        raise ValidationError(f"iterations must be >= 1, got {iterations}")
    inner, outer, il = code.inner, code.outer, code.interleaver
    inner_logical_priors = uniform_logical_priors(inner)
    outer_logical_priors = uniform_logical_priors(outer)
    estimate = None
    history = []
    rounds = 0
    for it in range(1, iterations + 1):
        rounds = it
        try:
            inner_out = siso_decode(
                SisoInput(inner, channel_priors, inner_logical_priors, syndrome_inner)
            )
            fed = inner_out.logical
            if extrinsic:
                fed = _extrinsic(fed, inner_logical_priors)
            outer_phys_priors = il.transport_out(fed)
            outer_out = siso_decode(
                SisoInput(outer, outer_phys_priors, outer_logical_priors, syndrome_outer)
            )
        except SisoFailure as exc:
            exc.iteration = it
            raise
        history.append(outer_out.logical)
        new_estimate = _hard_estimate(outer, outer_out.logical)
        if estimate is not None and new_estimate == estimate:
            estimate = new_estimate
            break
        estimate = new_estimate
        back = outer_out.physical
        if extrinsic:
            back = _extrinsic(back, outer_phys_priors)
        inner_logical_priors = il.transport_back(back)
    return TurboDecodeResult(
        estimate=estimate,
        iterations=rounds,
        logical_posteriors=history[-1],
        history=tuple(history),
    )
