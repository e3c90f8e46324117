"""Monte Carlo estimates over the Gaussian unitary ensemble.

Matrices are drawn with density proportional to exp(-N Tr H^2 / 2): real
diagonal entries of variance 1/N and complex off-diagonal entries with
E|H_ij|^2 = 1/N. Each batch runs on its own stream spawned from the seed,
so the estimate does not depend on how batches are scheduled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from ..errors import CapabilityError, ConfigurationError

__all__ = [
    "McConfig",
    "McEstimate",
    "sample_gue",
    "batch_mean",
    "mc_gue_sample",
    "mc_observable",
]

_CHUNK = 4096
_MIN_BATCHES = 10


@dataclass(frozen=True)
class McConfig:
    sample_count: int
    seed: int
    matrix_size: int
    batches: int = 20

    def __post_init__(self):
        if self.sample_count < 1:
            raise ConfigurationError("sample_count must be at least 1")
        if not 0 <= self.seed < 2**64:
            raise ConfigurationError("seed must be an unsigned 64-bit integer")
        if self.matrix_size < 1:
            raise ConfigurationError("matrix_size must be positive")
        if self.batches < _MIN_BATCHES:
            raise ConfigurationError(f"need at least {_MIN_BATCHES} batches")


@dataclass(frozen=True)
class McEstimate:
    mean: complex
    std_error: float
    batches: int
    samples: int
    seed: int

    def to_json(self) -> dict:
        return {
            "mean_re": self.mean.real,
            "mean_im": self.mean.imag,
            "std_error": self.std_error,
            "samples": self.samples,
            "seed": self.seed,
        }

    @classmethod
    def from_json(cls, doc: dict) -> "McEstimate":
        keys = {"mean_re", "mean_im", "std_error", "samples", "seed"}
        if set(doc) != keys:
            raise ConfigurationError(f"MC estimate: expected fields {sorted(keys)}")
        return cls(complex(doc["mean_re"], doc["mean_im"]), float(doc["std_error"]),
                   _MIN_BATCHES, int(doc["samples"]), int(doc["seed"]))


def sample_gue(rng: np.random.Generator, n: int, size: int) -> np.ndarray:
    """``size`` GUE matrices of order ``n``, shape ``(size, n, n)``."""
    diag = rng.standard_normal((size, n)) / math.sqrt(n)
    z = (rng.standard_normal((size, n, n)) + 1j * rng.standard_normal((size, n, n)))
    z *= 1.0 / math.sqrt(2.0 * n)
    upper = np.triu(z, k=1)
    h = upper + np.conj(np.swapaxes(upper, 1, 2))
    idx = np.arange(n)
    h[:, idx, idx] = diag
    return h


def batch_mean(batch_means: np.ndarray) -> tuple[complex, float]:
    """Grand mean and its standard error from equal-size batch means."""
    b = np.asarray(batch_means)
    if b.size < 2:
        raise ConfigurationError("need at least two batches")
    mean = b.mean()
    var = (np.var(b.real, ddof=1) + np.var(b.imag, ddof=1)) if np.iscomplexobj(b) \
        else np.var(b, ddof=1)
    return complex(mean), float(math.sqrt(var / b.size))


def _batch_sizes(total: int, batches: int) -> list[int]:
    base, extra = divmod(total, batches)
    return [base + (1 if i < extra else 0) for i in range(batches)]


def mc_observable(config: McConfig, observable: Callable[[np.ndarray], np.ndarray]) -> McEstimate:
    """Batch-means estimate of ``E[observable(H)]``; ``observable`` maps a
    stack of matrices to one value per matrix."""
    streams = np.random.SeedSequence(config.seed).spawn(config.batches)
    sizes = _batch_sizes(config.sample_count, config.batches)
    means = []
    for seq, size in zip(streams, sizes):
        if size == 0:
            continue
        rng = np.random.default_rng(seq)
        acc = 0j
        left = size
        while left:
            step = min(left, _CHUNK)
            acc += np.sum(observable(sample_gue(rng, config.matrix_size, step)))
            left -= step
        means.append(acc / size)
    means = np.asarray(means)
    if means.size < 2:
        return McEstimate(complex(means.mean()), math.inf, int(means.size),
                          config.sample_count, config.seed)
    mean, err = batch_mean(means)
    # weight batches by size when they differ by one sample
    if len(set(sizes)) > 1:
        mean = complex(np.dot(means, [s for s in sizes if s]) / config.sample_count)
    return McEstimate(mean, err, int(means.size), config.sample_count, config.seed)


def mc_gue_sample(config: McConfig, args, potential=None) -> McEstimate:
    """Estimate ``< prod det(mu - H) / prod det(eps - H) >`` for the GUE.

    Products are accumulated as sums of complex logarithms over eigenvalues.
    """
    if potential is not None and potential.kind != "gaussian":
        raise CapabilityError("Monte Carlo sampling is implemented for the gaussian potential only")
    if args.matrix_size != config.matrix_size:
        raise ConfigurationError("config and arguments disagree on N")
    if any(abs(e.imag) < 0.5 for e in args.epsilons):
        raise ConfigurationError("Monte Carlo ratio estimates need |Im eps| >= 0.5")
    if args.M == 0 and args.L == 0:
        return McEstimate(1 + 0j, 0.0, config.batches, config.sample_count, config.seed)
    mus = np.asarray(args.mus, dtype=complex)
    eps = np.asarray(args.epsilons, dtype=complex)

    def ratio(h):
        lam = np.linalg.eigvalsh(h)[:, None, :]
        logs = np.zeros(h.shape[0], dtype=complex)
        if mus.size:
            logs += np.log(mus[None, :, None] - lam).sum(axis=(1, 2))
        if eps.size:
            logs -= np.log(eps[None, :, None] - lam).sum(axis=(1, 2))
        return np.exp(logs)

    return mc_observable(config, ratio)
