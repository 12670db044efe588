"""Memoryless Pauli channels.

A channel is a product distribution over Pauli errors: each qubit draws
its error symbol independently from a 4-vector over (I, X, Y, Z).  The
channel either applies one shared distribution to every qubit or carries
an explicit per-qubit table.  Decoders consume the same distributions as
per-position priors.

``hashing_rate`` gives the standard achievable-rate reference curve for
the depolarizing channel, used to put simulated error rates in context.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .errors import ValidationError
from .gf2_symplectic import BIT_FROM_IXYZ, PauliString

_DIST_TOL = 1e-12


def _check_dist(f: Sequence[float]) -> tuple[float, float, float, float]:
    if len(f) != 4:
        raise ValidationError(f"distribution must have 4 entries, got {len(f)}")
    vals = tuple(float(x) for x in f)
    if min(vals) < 0.0:
        raise ValidationError(f"negative probability in {vals}")
    if abs(sum(vals) - 1.0) > _DIST_TOL:
        raise ValidationError(f"probabilities sum to {sum(vals)!r}, not 1")
    return vals


@dataclass(frozen=True)
class PauliChannel:
    """Product Pauli channel given by per-qubit (I, X, Y, Z) distributions.

    ``table`` holds one distribution per qubit; a single-row table is
    broadcast over any block length.
    """

    table: tuple[tuple[float, float, float, float], ...]

    def __post_init__(self) -> None:
        if not self.table:
            raise ValidationError("channel table is empty")
        object.__setattr__(
            self, "table", tuple(_check_dist(f) for f in self.table)
        )

    @classmethod
    def from_distribution(cls, f: Sequence[float]) -> "PauliChannel":
        """Channel applying the same distribution to every qubit."""
        return cls((tuple(f),))

    def resolve(self, n: int) -> np.ndarray:
        """Per-qubit distributions as an (n, 4) float array."""
        if n < 0:
            raise ValidationError(f"negative block length {n}")
        rows = np.asarray(self.table, dtype=np.float64)
        if rows.shape[0] == n:
            return rows.copy()
        if rows.shape[0] == 1:
            return np.repeat(rows, n, axis=0)
        raise ValidationError(
            f"channel table has {rows.shape[0]} rows, need 1 or {n}"
        )


def depolarizing(p: float) -> PauliChannel:
    """Uniform depolarizing channel: I with probability 1-p, else X/Y/Z."""
    if not 0.0 <= p <= 1.0:
        raise ValidationError(f"depolarizing probability {p!r} outside [0, 1]")
    return PauliChannel.from_distribution((1.0 - p, p / 3.0, p / 3.0, p / 3.0))


def channel_from_config(obj: Mapping) -> PauliChannel:
    """Build a channel from a config mapping.

    Accepted forms: {"type": "depolarizing", "p": real} and
    {"type": "product", "table": [[pI, pX, pY, pZ], ...]}.
    """
    kind = obj.get("type")
    if kind == "depolarizing":
        return depolarizing(obj["p"])
    if kind == "product":
        return PauliChannel(tuple(tuple(row) for row in obj["table"]))
    raise ValidationError(f"unknown channel type {kind!r}")


def priors(ch: PauliChannel, n: int) -> np.ndarray:
    """Per-qubit decoder priors, shape (n, 4), columns in (I, X, Y, Z) order."""
    return ch.resolve(n)


_BIT_CODES = np.array(BIT_FROM_IXYZ, dtype=np.uint8)
_PACK = np.array([1, 4, 16, 64], dtype=np.uint16)


def sample(ch: PauliChannel, n: int, rng: np.random.Generator) -> PauliString:
    """Draw an n-qubit Pauli error, one independent symbol per qubit."""
    rows = ch.resolve(n)
    u = rng.random(n)
    # inverse-CDF draw per qubit; columns are IXYZ, convert to bit codes
    ixyz = (u[:, None] >= np.cumsum(rows, axis=1)[:, :3]).sum(axis=1)
    codes = _BIT_CODES[ixyz]
    pad = (-codes.size) % 4
    if pad:
        codes = np.concatenate([codes, np.zeros(pad, dtype=np.uint8)])
    packed = (codes.reshape(-1, 4).astype(np.uint16) * _PACK).sum(axis=1)
    bits = int.from_bytes(packed.astype(np.uint8).tobytes(), "little")
    return PauliString(n, bits)


def hashing_rate(p: float) -> float:
    """Achievable-rate curve 1 - h2(p) - p*log2(3) for depolarizing noise."""
    if not 0.0 < p < 1.0:
        raise ValidationError(f"probability {p!r} outside (0, 1)")
    h2 = -p * math.log2(p) - (1.0 - p) * math.log2(1.0 - p)
    return 1.0 - h2 - p * math.log2(3.0)
