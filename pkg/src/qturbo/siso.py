"""Exact soft-input soft-output decoding of one convolutional code.

The decoder conditions on the measured syndrome (the x parts of every
stabilizer slot of the decomposition) and returns exact per-qubit
posteriors for the logical content and for every physical position. It
runs a backward recursion over memory-state distributions, a forward
recursion, and a local combination step; each message is renormalized
every slice so block lengths in the thousands stay well-scaled.

Messages and transition tables live in raw bit-code space; the public
surface speaks (I, X, Y, Z) throughout. Transition tables are built once
per seed and cached: for each measured stabilizer x-pattern they list the
emitted physical Pauli and next memory state of every (memory, logical,
stabilizer-z) input combination.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _kernels
from .conv_code import ConvEncoder, SeedTransformation, split_syndrome_bits
from .errors import ResourceBudgetError, SisoFailure, ValidationError
from .state_graph import DEFAULT_MEMORY_BUDGET

# involution between (I,X,Y,Z) column order and bit codes (I,X,Z,Y)
_IXYZ = (0, 1, 3, 2)

_PRIOR_TOL = 1e-8


def _interleave(x: int, z: int, n: int) -> int:
    bits = 0
    for j in range(n):
        bits |= ((x >> j) & 1) << (2 * j)
        bits |= ((z >> j) & 1) << (2 * j + 1)
    return bits


@lru_cache(maxsize=None)
def _tables(seed: SeedTransformation, max_memory_qubits: int):
    """Per-seed transition tables (dst_body, psym_body, dst_term, psym_term)."""
    n, k, m = seed.n, seed.k, seed.m
    if m > max_memory_qubits:
        raise ResourceBudgetError(
            f"{4 ** m} memory states exceed the budget of "
            f"{4 ** max_memory_qubits}; raise max_memory_qubits to allow"
        )
    width = 2 * (n + m)
    rows = np.array(seed.u.rows, dtype=np.int64)
    img = np.zeros(1 << width, dtype=np.int64)
    size = 1
    for b in range(width):
        img[size : 2 * size] = img[:size] ^ rows[b]
        size *= 2

    mm, kk = 1 << (2 * m), 1 << (2 * k)
    szs, sxs = 1 << (n - k), 1 << (n - k)
    pmask = (1 << (2 * n)) - 1

    sig = np.array(
        [[_interleave(x, z, n - k) for z in range(szs)] for x in range(sxs)],
        dtype=np.int64,
    )
    inp = (
        np.arange(mm, dtype=np.int64)[None, :, None, None]
        | (np.arange(kk, dtype=np.int64) << (2 * m))[None, None, :, None]
        | (sig << (2 * (m + k)))[:, None, None, :]
    )
    body = img[inp]

    sig_n = np.array(
        [[_interleave(x, z, n) for z in range(1 << n)] for x in range(1 << n)],
        dtype=np.int64,
    )
    inp_t = (
        np.arange(mm, dtype=np.int64)[None, :, None]
        | (sig_n << (2 * m))[:, None, :]
    )
    term = img[inp_t]
    return body >> (2 * n), body & pmask, term >> (2 * n), term & pmask


def _check_priors(name: str, arr: np.ndarray, rows: int) -> np.ndarray:
    arr = np.asarray(arr, dtype=np.float64)
    if arr.shape != (rows, 4):
        raise ValidationError(
            f"{name} priors have shape {arr.shape}, expected ({rows}, 4)"
        )
    if arr.min() < 0.0:
        raise ValidationError(f"negative entry in {name} priors")
    if np.abs(arr.sum(axis=1) - 1.0).max() > _PRIOR_TOL:
        raise ValidationError(f"{name} priors rows do not sum to 1")
    return arr


@dataclass(frozen=True)
class SisoInput:
    """One decoding problem: an encoder, priors, and a measured syndrome.

    Physical priors cover all n*(N+t)+m positions (the trailing m rows are
    the flushed memory qubits); logical priors cover the k*N logical
    positions. Both are (rows, 4) arrays in (I, X, Y, Z) column order.
    """

    encoder: ConvEncoder
    priors_physical: np.ndarray
    priors_logical: np.ndarray
    syndrome: np.ndarray

    def __post_init__(self):
        enc = self.encoder
        object.__setattr__(
            self,
            "priors_physical",
            _check_priors("physical", self.priors_physical, enc.n_physical),
        )
        object.__setattr__(
            self,
            "priors_logical",
            _check_priors("logical", self.priors_logical, enc.n_logical),
        )
        syn = np.asarray(self.syndrome, dtype=np.int64)
        if syn.shape != (enc.syndrome_bit_count,):
            raise ValidationError(
                f"syndrome has shape {syn.shape}, expected "
                f"({enc.syndrome_bit_count},)"
            )
        if not np.isin(syn, (0, 1)).all():
            raise ValidationError("syndrome entries must be 0 or 1")
        object.__setattr__(self, "syndrome", syn)


@dataclass(frozen=True)
class SisoOutput:
    """Per-qubit posteriors given the syndrome, (I, X, Y, Z) columns.

    ``logical`` has one row per logical position (k*N); ``physical`` one
    row per physical position including the flushed memory qubits.
    """

    logical: np.ndarray
    physical: np.ndarray


def uniform_logical_priors(enc: ConvEncoder) -> np.ndarray:
    """Flat priors over every logical position."""
    return np.full((enc.n_logical, 4), 0.25)


def _prepare(inp: SisoInput, max_memory_qubits: int):
    enc = inp.encoder
    seed = enc.seed
    n, k, m = seed.n, seed.k, seed.m
    tables = _tables(seed, max_memory_qubits)
    s0x, body, term = split_syndrome_bits(enc, inp.syndrome)

    pphys = inp.priors_physical[:, _IXYZ].copy()
    plog = inp.priors_logical[:, _IXYZ].copy()
    sx_body = np.array(body, dtype=np.int64)
    sx_term = np.array(term, dtype=np.int64) if term else np.zeros(0, np.int64)

    alpha0 = np.zeros(1 << (2 * m))
    xpart = _interleave(s0x, 0, m)
    for z in range(1 << m):
        alpha0[xpart | _interleave(0, z, m)] = 1.0 / (1 << m)

    beta_init = np.ones(1 << (2 * m))
    base = n * (enc.N + enc.t)
    for gamma in range(1 << (2 * m)):
        v = 1.0
        for j in range(m):
            v *= pphys[base + j, (gamma >> (2 * j)) & 3]
        beta_init[gamma] = v
    tot = beta_init.sum()
    if tot <= 0.0:
        raise SisoFailure("backward", enc.N + enc.t)
    beta_init /= tot

    args = (pphys, plog, sx_body, sx_term) + tables + (n, k, enc.N, enc.t)
    return alpha0, beta_init, args


def forward_pass(
    inp: SisoInput, max_memory_qubits: int = DEFAULT_MEMORY_BUDGET
) -> np.ndarray:
    """Memory-state distributions given syndromes up to each slice.

    Row i is the distribution of the memory state after slice i
    (row 0 is the initial state), shape (N+t, 4^m).
    """
    alpha0, _, args = _prepare(inp, max_memory_qubits)
    alphas, fail = _kernels.forward_kernel(alpha0, *args)
    if fail >= 0:
        raise SisoFailure("forward", fail)
    return alphas


def backward_pass(
    inp: SisoInput, max_memory_qubits: int = DEFAULT_MEMORY_BUDGET
) -> np.ndarray:
    """Memory-state distributions given syndromes after each slice.

    Row i is the distribution of the memory state after slice i given
    the later syndrome bits, shape (N+t+1, 4^m); the last row carries the
    flushed-memory priors.
    """
    _, beta_init, args = _prepare(inp, max_memory_qubits)
    betas, fail = _kernels.backward_kernel(beta_init, *args)
    if fail >= 0:
        raise SisoFailure("backward", fail)
    return betas


def local_update(
    inp: SisoInput,
    alphas: np.ndarray,
    betas: np.ndarray,
    max_memory_qubits: int = DEFAULT_MEMORY_BUDGET,
) -> SisoOutput:
    """Combine the two passes into per-qubit posteriors."""
    _, _, args = _prepare(inp, max_memory_qubits)
    return _finish(inp, _kernels.local_kernel(alphas, betas, *args))


def _finish(inp: SisoInput, kernel_out) -> SisoOutput:
    post_log, post_phys, post_mem, fail = kernel_out
    if fail >= 0:
        raise SisoFailure("local", fail)
    seed = inp.encoder.seed
    mem_rows = np.zeros((seed.m, 4))
    for gamma, mass in enumerate(post_mem):
        if mass == 0.0:
            continue
        for j in range(seed.m):
            mem_rows[j, (gamma >> (2 * j)) & 3] += mass
    phys = np.concatenate([post_phys, mem_rows])
    phys /= phys.sum(axis=1, keepdims=True)
    post_log = post_log / post_log.sum(axis=1, keepdims=True)
    return SisoOutput(logical=post_log[:, _IXYZ], physical=phys[:, _IXYZ])


def siso_decode(
    inp: SisoInput, max_memory_qubits: int = DEFAULT_MEMORY_BUDGET
) -> SisoOutput:
    """Full decode: backward pass, forward pass, local update."""
    alpha0, beta_init, args = _prepare(inp, max_memory_qubits)
    betas, fail = _kernels.backward_kernel(beta_init, *args)
    if fail >= 0:
        raise SisoFailure("backward", fail)
    alphas, fail = _kernels.forward_kernel(alpha0, *args)
    if fail >= 0:
        raise SisoFailure("forward", fail)
    return _finish(inp, _kernels.local_kernel(alphas, betas, *args))
