"""Monte Carlo error-rate estimation and random code search.

A decoding trial samples a physical error, decomposes it to get the true
logical coset label and both measured syndromes, runs the turbo decoder
on the syndromes alone, and accepts when the estimated label equals the
true one (the correction then differs from the actual error by a
pure-stabilizer element). Word and per-qubit error counts aggregate into
a report with Wilson score intervals.

Every trial draws from its own counter-based generator keyed by
(master seed, trial index), so reports are bit-for-bit reproducible and
independent of any batching or scheduling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel import PauliChannel, priors, sample
from .conv_code import ConvEncoder, SeedTransformation, syndrome_from_inverse
from .errors import ResourceBudgetError, SisoFailure, ValidationError
from .gf2_symplectic import random_symplectic
from .spectrum import DistanceSpectrum, compute_spectrum
from .state_graph import build_state_diagram, is_non_catastrophic
from .turbo import TurboCode, turbo_decode, turbo_encode_inverse

Z95 = 1.959963984540054
Z90 = 1.6448536269514722


def wilson(errors: int, trials: int, z: float = Z95):
    """Wilson score interval for a binomial proportion."""
    if trials < 1 or not 0 <= errors <= trials:
        raise ValidationError(f"bad counts {errors}/{trials}")
    phat = errors / trials
    denom = 1.0 + z * z / trials
    center = phat + z * z / (2 * trials)
    half = z * math.sqrt(phat * (1.0 - phat) / trials + z * z / (4 * trials * trials))
    return (center - half) / denom, (center + half) / denom


@dataclass(frozen=True)
class TrialReport:
    """Aggregated outcome of a Monte Carlo run."""

    p: float
    K: int
    trials: int
    word_errors: int
    qubit_errors: int
    wer: float
    qer: float
    ci_low: float
    ci_high: float
    master_seed: int
    iterations: dict
    decode_failures: int

    @property
    def iterations_mean(self) -> float:
        done = sum(self.iterations.values())
        if done == 0:
            return float("nan")
        return sum(k * v for k, v in self.iterations.items()) / done


def trial_rng(master_seed: int, trial_index: int) -> np.random.Generator:
    """The deterministic per-trial generator stream."""
    return np.random.Generator(np.random.Philox(key=(master_seed, trial_index)))


def run_wer(
    code: TurboCode,
    channel: PauliChannel,
    trials: int,
    iterations: int = 20,
    master_seed: int = 0,
    extrinsic: bool = False,
) -> TrialReport:
    """Estimate word and qubit error rates over independent trials.

    A decode failure (syndrome outside the prior support, which cannot
    happen for full-support channels) counts as a word error with every
    qubit wrong, and is tallied separately.
    """
    if trials < 1:
        raise ValidationError(f"trials must be >= 1, got {trials}")
    K = code.n_logical
    ch_priors = priors(channel, code.n_physical)
    word_errors = 0
    qubit_errors = 0
    decode_failures = 0
    iteration_counts = {}
    for t in range(trials):
        rng = trial_rng(master_seed, t)
        err = sample(channel, code.n_physical, rng)
        inv = turbo_encode_inverse(code, err)
        s_in = syndrome_from_inverse(code.inner, inv.inner)
        s_out = syndrome_from_inverse(code.outer, inv.outer)
        try:
            res = turbo_decode(code, ch_priors, s_in, s_out, iterations, extrinsic)
        except SisoFailure:
            word_errors += 1
            qubit_errors += K
            decode_failures += 1
            continue
        iteration_counts[res.iterations] = iteration_counts.get(res.iterations, 0) + 1
        if res.estimate != inv.logical:
            word_errors += 1
            diff = res.estimate.bits ^ inv.logical.bits
            qubit_errors += sum(
                1 for q in range(K) if (diff >> (2 * q)) & 3
            )
    lo, hi = wilson(word_errors, trials)
    return TrialReport(
        p=float(1.0 - channel.resolve(code.n_physical)[:, 0].mean()),
        K=K,
        trials=trials,
        word_errors=word_errors,
        qubit_errors=qubit_errors,
        wer=word_errors / trials,
        qer=qubit_errors / (trials * K),
        ci_low=lo,
        ci_high=hi,
        master_seed=master_seed,
        iterations=iteration_counts,
        decode_failures=decode_failures,
    )


@dataclass(frozen=True)
class SearchResult:
    """One surviving seed with its sieve spectrum (None when unsieved)."""

    seed: SeedTransformation
    spectrum: DistanceSpectrum


def _sieve_key(spec: DistanceSpectrum):
    d_free, d1 = spec.d_free, spec.d1
    return (
        d_free is None,
        -(d_free or 0),
        d1 is None,
        -(d1 or 0),
        spec.F[d_free] if d_free is not None else math.inf,
        spec.F1[d1] if d1 is not None else math.inf,
    )


def search_codes(
    n: int,
    k: int,
    m: int,
    count: int,
    sieve_wmax: int = None,
    rng: np.random.Generator = None,
    max_attempts: int = None,
    pool_factor: int = 4,
):
    """Draw random seeds, keep non-catastrophic ones, optionally rank them.

    Without a sieve the first `count` non-catastrophic seeds are returned.
    With sieve_wmax set, a pool of pool_factor*count survivors is ranked
    by falling free distance, then falling first logical-weight-one
    distance, then rising multiplicities at those distances.
    """
    if count < 0:
        raise ValidationError(f"count must be >= 0, got {count}")
    if rng is None:
        rng = np.random.default_rng()
    wanted = count if sieve_wmax is None else count * pool_factor
    if max_attempts is None:
        max_attempts = max(1000, 200 * wanted)
    pool = []
    attempts = 0
    while len(pool) < wanted and count > 0:
        if attempts >= max_attempts:
            raise ResourceBudgetError(
                f"found {len(pool)} usable seeds in {attempts} attempts, "
                f"needed {wanted}; raise max_attempts"
            )
        attempts += 1
        seed = SeedTransformation(n, k, m, random_symplectic(n + m, rng))
        diagram = build_state_diagram(seed)
        if not is_non_catastrophic(diagram):
            continue
        if sieve_wmax is None:
            pool.append(SearchResult(seed, None))
        else:
            pool.append(
                SearchResult(seed, compute_spectrum(seed, sieve_wmax, diagram=diagram))
            )
    if sieve_wmax is not None:
        pool.sort(key=lambda r: _sieve_key(r.spectrum))
    return pool[:count]
