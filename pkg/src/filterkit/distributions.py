"""Probability distributions on the 3-simplex, categorical and multinomial
distributions, diagonal Gaussians, and the samplers shared by every filter
and model.

Points of the open 3-simplex store three coordinates; the fourth is the
implicit fill-up ``1 - (y1 + y2 + y3)``.  Vectorized internals work with
full length-4 rows (shape ``(..., 4)``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .special import gammaln, reg_incomplete_beta

__all__ = [
    "Simplex3",
    "DirichletParams",
    "CategoricalDist",
    "GaussianSpec",
    "dirichlet_sample",
    "dirichlet_sample_rows",
    "dirichlet_density",
    "dirichlet_log_density",
    "dirichlet_mean_abs_dev",
    "multinomial_density",
    "multinomial_sample",
    "categorical_sample",
    "categorical_sample_rows",
    "gaussian_sample",
]


@dataclass(frozen=True)
class Simplex3:
    """A point of the open 3-simplex; y4 is the implicit fill-up argument."""

    y1: float
    y2: float
    y3: float

    def __post_init__(self):
        if min(self.y1, self.y2, self.y3) <= 0.0:
            raise ValueError(f"simplex coordinates must be positive: {self}")
        if self.y1 + self.y2 + self.y3 >= 1.0:
            raise ValueError(f"simplex coordinates must sum to less than 1: {self}")

    @property
    def y4(self) -> float:
        return 1.0 - (self.y1 + self.y2 + self.y3)

    def as4(self) -> np.ndarray:
        return np.array([self.y1, self.y2, self.y3, self.y4])

    @staticmethod
    def from4(values) -> "Simplex3":
        v = np.asarray(values, dtype=float)
        if v.shape != (4,):
            raise ValueError(f"expected 4 components, got shape {v.shape}")
        return Simplex3(float(v[0]), float(v[1]), float(v[2]))


@dataclass(frozen=True)
class DirichletParams:
    """Concentration parameters of a Dirichlet distribution on the 3-simplex."""

    a1: float
    a2: float
    a3: float
    a4: float

    def __post_init__(self):
        if min(self.a1, self.a2, self.a3, self.a4) <= 0.0:
            raise ValueError(f"concentration parameters must be positive: {self}")

    def as_array(self) -> np.ndarray:
        return np.array([self.a1, self.a2, self.a3, self.a4])

    @staticmethod
    def from_array(values) -> "DirichletParams":
        v = np.asarray(values, dtype=float)
        return DirichletParams(float(v[0]), float(v[1]), float(v[2]), float(v[3]))

    @property
    def total(self) -> float:
        return self.a1 + self.a2 + self.a3 + self.a4

    def mean(self) -> np.ndarray:
        a = self.as_array()
        return a / a.sum()


@dataclass(frozen=True)
class CategoricalDist:
    """A categorical distribution over a finite label set."""

    labels: tuple
    probs: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.probs, dtype=float)
        object.__setattr__(self, "probs", p)
        if len(self.labels) != p.shape[0]:
            raise ValueError("labels and probabilities must have equal length")
        if np.any(p < 0.0):
            raise ValueError("probabilities must be nonnegative")
        if abs(p.sum() - 1.0) > 1e-12:
            raise ValueError(f"probabilities must sum to 1, got {p.sum()!r}")

    def prob(self, label) -> float:
        return float(self.probs[self.labels.index(label)])


@dataclass(frozen=True)
class GaussianSpec:
    """Mean vector and diagonal covariance (variances) of a Gaussian."""

    mean: np.ndarray
    var: np.ndarray

    def __post_init__(self):
        m = np.atleast_1d(np.asarray(self.mean, dtype=float))
        v = np.atleast_1d(np.asarray(self.var, dtype=float))
        object.__setattr__(self, "mean", m)
        object.__setattr__(self, "var", v)
        if m.shape != v.shape:
            raise ValueError("mean and variance vectors must have the same shape")
        if np.any(v <= 0.0):
            raise ValueError("variances must be positive")


def dirichlet_sample(d: DirichletParams, rng: np.random.Generator) -> Simplex3:
    """Draw one point of the open simplex from Dir(a1..a4)."""
    row = dirichlet_sample_rows(d.as_array()[None, :], rng)[0]
    return Simplex3(float(row[0]), float(row[1]), float(row[2]))


def dirichlet_sample_rows(alphas: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Draw one simplex point per row of concentration parameters.

    Gamma-ratio construction, vectorized over rows; coordinates that
    underflow to the boundary are nudged inside the open simplex.
    """
    alphas = np.asarray(alphas, dtype=float)
    g = rng.standard_gamma(alphas)
    total = g.sum(axis=-1, keepdims=True)
    # Guard against an all-zero row (possible for very small concentrations).
    bad = total[..., 0] <= 0.0
    if np.any(bad):
        g[bad] = alphas[bad]
        total = g.sum(axis=-1, keepdims=True)
    y = g / total
    tiny = 1e-12
    np.clip(y, tiny, None, out=y)
    y /= y.sum(axis=-1, keepdims=True)
    return y


def dirichlet_log_density(alphas: np.ndarray, y: np.ndarray) -> float:
    """Log Dirichlet density at a length-4 simplex row (-inf off the open simplex)."""
    alphas = np.asarray(alphas, dtype=float)
    y = np.asarray(y, dtype=float)
    if np.any(y <= 0.0) or np.any(y >= 1.0):
        return -math.inf
    norm = gammaln(float(alphas.sum())) - sum(gammaln(float(a)) for a in alphas)
    return norm + float(((alphas - 1.0) * np.log(y)).sum())


def dirichlet_density(d: DirichletParams, y: Simplex3) -> float:
    """Dirichlet density at y under Lebesgue measure on the 3-simplex.

    Returns 0 for points on or outside the boundary (beliefs never place
    mass exactly on the boundary).
    """
    logp = dirichlet_log_density(d.as_array(), y.as4())
    return 0.0 if logp == -math.inf else math.exp(logp)


def dirichlet_mean_abs_dev(d: DirichletParams, j: int, c: float) -> float:
    """Expected absolute deviation E|c - y_j| of component j under Dir(a1..a4).

    Closed form in terms of the regularized incomplete beta function; j is a
    0-based component index and c must lie in [0, 1].
    """
    if not 0 <= j <= 3:
        raise ValueError(f"component index must be in 0..3, got {j}")
    if not 0.0 <= c <= 1.0:
        raise ValueError(f"reference value must be in [0, 1], got {c}")
    a = d.as_array()
    a0 = float(a.sum())
    aj = float(a[j])
    mean_j = aj / a0
    if c == 0.0:
        return mean_j
    if c == 1.0:
        return 1.0 - mean_j
    term = c * reg_incomplete_beta(c, aj, a0 - aj) - mean_j * reg_incomplete_beta(
        c, aj + 1.0, a0 - aj
    )
    return 2.0 * term + mean_j - c


def multinomial_density(m: int, p: np.ndarray, o: np.ndarray) -> float:
    """Multinomial probability mass Mult(m, p) at the count vector o."""
    p = np.asarray(p, dtype=float)
    o = np.asarray(o)
    if np.any(o < 0) or int(o.sum()) != int(m):
        raise ValueError(f"counts must be nonnegative and sum to m={m}, got {o}")
    if m == 0:
        return 1.0
    logp = gammaln(m + 1.0)
    for oj, pj in zip(o.tolist(), p.tolist()):
        logp -= gammaln(oj + 1.0)
        if oj > 0:
            if pj <= 0.0:
                return 0.0
            logp += oj * math.log(pj)
    return math.exp(logp)


def multinomial_sample(m: int, p: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Draw a count vector from Mult(m, p)."""
    p = np.asarray(p, dtype=float)
    if np.any(p < 0.0) or abs(p.sum() - 1.0) > 1e-9:
        raise ValueError("multinomial probabilities must be nonnegative and sum to 1")
    if m < 0:
        raise ValueError(f"number of draws must be nonnegative, got {m}")
    return rng.multinomial(m, p / p.sum())


def categorical_sample(probs: np.ndarray, rng: np.random.Generator) -> int:
    """Draw a label index from a categorical distribution."""
    probs = np.asarray(probs, dtype=float)
    if np.any(probs < 0.0) or abs(probs.sum() - 1.0) > 1e-9:
        raise ValueError("categorical probabilities must be nonnegative and sum to 1")
    u = rng.random()
    return int(np.searchsorted(np.cumsum(probs), u * probs.sum(), side="right").clip(0, len(probs) - 1))


def categorical_sample_rows(probs: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Draw one label index per row of a (..., k) array of probabilities."""
    probs = np.asarray(probs, dtype=float)
    cum = np.cumsum(probs, axis=-1)
    u = rng.random(size=probs.shape[:-1] + (1,)) * cum[..., -1:]
    return (u > cum[..., :-1]).sum(axis=-1).astype(np.int64)


def gaussian_sample(spec: GaussianSpec, rng: np.random.Generator) -> np.ndarray:
    """Draw one vector from a diagonal Gaussian."""
    return spec.mean + np.sqrt(spec.var) * rng.standard_normal(spec.mean.shape)
