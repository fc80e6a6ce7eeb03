"""Numerical side: parameter sampling, model membership, the group action,
maximal invariants and numerical checks of vanishing minors.

Random draws use ``numpy.random.default_rng(seed)`` (PCG64), so outputs are
reproducible for a given seed and numpy version.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .equivalence import require_nf_chain_graph
from .errors import RankDeficientData, SampleTooSmall, SingularMatrix, SizeMismatch
from .graph import HybridGraph, component_order, components
from .symmetry import QuotientGraph, ZeroPattern, down_sets, equivalence_classes

COND_LIMIT = 1e12


@dataclass(frozen=True)
class ModelParameters:
    lam: np.ndarray
    omega: np.ndarray


def _signed_uniform(rng, low, high, size):
    return rng.uniform(low, high, size) * rng.choice([-1.0, 1.0], size)


def sample_parameters(h: HybridGraph, seed: int) -> ModelParameters:
    """Random Lambda on the arrows and a diagonally dominant Omega on the
    undirected edges; arrows then edges are drawn in sorted order."""
    require_nf_chain_graph(h)
    rng = np.random.default_rng(seed)
    m = h.m
    lam = np.zeros((m, m))
    arrows = sorted(h.directed)
    if arrows:
        vals = _signed_uniform(rng, 0.2, 1.0, len(arrows))
        for (i, j), v in zip(arrows, vals):
            lam[i - 1, j - 1] = v
    omega = np.zeros((m, m))
    edges = sorted(h.undirected)
    if edges:
        vals = _signed_uniform(rng, 0.1, 0.5, len(edges))
        for (i, j), v in zip(edges, vals):
            omega[i - 1, j - 1] = omega[j - 1, i - 1] = v
    omega[np.diag_indices(m)] = 1.0 + np.abs(omega).sum(axis=1)
    return ModelParameters(lam, omega)


def concentration(p: ModelParameters) -> np.ndarray:
    a = np.eye(p.lam.shape[0]) - p.lam
    return a @ p.omega @ a.T


def _inv(a, what="matrix"):
    if a.size and np.linalg.cond(a) > COND_LIMIT:
        raise SingularMatrix(f"{what} is numerically singular")
    return np.linalg.inv(a)


def membership(h: HybridGraph, k: np.ndarray, tol: float = 1e-8) -> bool:
    """Whether K lies in the model, decided component by component.

    Along a topological order of the components, each block T is regressed on
    everything before it: coefficients outside the parents of T and partial
    concentrations between non-adjacent vertices of T must vanish.
    """
    require_nf_chain_graph(h)
    k = np.asarray(k, dtype=float)
    sigma = _inv(k, "K")
    part = components(h)
    seen = []
    for block_id in component_order(h, part):
        block = sorted(part.blocks[block_id])
        t = [v - 1 for v in block]
        s_tt = sigma[np.ix_(t, t)]
        if seen:
            pre = [v - 1 for v in seen]
            s_tp = sigma[np.ix_(t, pre)]
            coef = s_tp @ _inv(sigma[np.ix_(pre, pre)], "covariance block")
            pa = h.parents_of_set(block)
            for col, v in enumerate(seen):
                if v not in pa and np.max(np.abs(coef[:, col])) > tol:
                    return False
            s_tt = s_tt - coef @ s_tp.T
        omega_t = _inv(s_tt, "conditional covariance")
        for a, i in enumerate(block):
            for b in range(a + 1, len(block)):
                j = block[b]
                if (i, j) not in h.undirected and abs(omega_t[a, b]) > tol:
                    return False
        seen.extend(block)
    return True


def act(g: np.ndarray, k: np.ndarray) -> np.ndarray:
    """g . K = g^-T K g^-1, symmetrised."""
    g_inv = _inv(np.asarray(g, dtype=float), "g")
    out = g_inv.T @ k @ g_inv
    return (out + out.T) / 2


def random_group_element(pattern: ZeroPattern, rng, max_cond=1e6) -> np.ndarray:
    """Random invertible matrix supported on the pattern (rejection sampled)."""
    mask = pattern.matrix()
    m = pattern.m
    while True:
        g = np.where(mask, rng.uniform(-1.0, 1.0, (m, m)), 0.0)
        g[np.diag_indices(m)] = rng.uniform(0.5, 2.0, m)
        if np.linalg.cond(g) < max_cond:
            return g


def elementary(m: int, i: int, j: int, t: float) -> np.ndarray:
    """I + t E_ij with 1-based indices."""
    g = np.eye(m)
    g[i - 1, j - 1] += t
    return g


@dataclass(frozen=True)
class InvariantStatistic:
    classes: tuple  # one tuple of vertices per equivalence class
    projections: tuple  # n x n arrays, same order

    def max_abs_diff(self, other: "InvariantStatistic") -> float:
        return max(float(np.max(np.abs(a - b))) for a, b in zip(self.projections, other.projections))


def maximal_invariant(h: HybridGraph, x: np.ndarray, quotient: QuotientGraph | None = None) -> InvariantStatistic:
    """Per class, the projection onto the row space of the rows ``down(i)``."""
    require_nf_chain_graph(h)
    x = np.asarray(x, dtype=float)
    if x.ndim != 2 or x.shape[0] != h.m:
        raise SizeMismatch(f"data must have {h.m} rows, got shape {x.shape}")
    n = x.shape[1]
    down = down_sets(h)
    needed = max(len(d) for d in down.values())
    if n < needed:
        raise SampleTooSmall(f"{n} samples, at least {needed} needed")
    quotient = quotient or equivalence_classes(h)
    projections = []
    for cls in quotient.classes:
        rows = [v - 1 for v in sorted(down[cls[0]])]
        xs = x[rows, :]
        gram = xs @ xs.T
        if np.linalg.cond(gram) > COND_LIMIT:
            raise RankDeficientData(f"rows {[r + 1 for r in rows]} of the data are not of full rank")
        projections.append(xs.T @ np.linalg.solve(gram, xs))
    return InvariantStatistic(quotient.classes, tuple(projections))


def numeric_determinants(h: HybridGraph, a, b, trials: int, seed: int) -> list:
    a, b = sorted(a), sorted(b)
    if len(a) != len(b):
        raise SizeMismatch(f"row set has {len(a)} elements, column set has {len(b)}")
    rows, cols = [v - 1 for v in a], [v - 1 for v in b]
    out = []
    for t in range(trials):
        k = concentration(sample_parameters(h, seed + t))
        out.append(float(np.linalg.det(k[np.ix_(rows, cols)])))
    return out


def numeric_vanishing_check(h: HybridGraph, a, b, trials: int = 5, seed: int = 0, tol: float = 1e-9) -> bool:
    """True if |det K[A, B]| < tol on every seeded parameter draw."""
    return all(abs(d) < tol for d in numeric_determinants(h, a, b, trials, seed))


def sample_data(h: HybridGraph, seed: int, n: int) -> np.ndarray:
    """m x n sample from the model with parameters drawn from the same seed."""
    k = concentration(sample_parameters(h, seed))
    rng = np.random.default_rng(seed + 1_000_003)
    cov = np.linalg.inv(k)
    return rng.multivariate_normal(np.zeros(h.m), (cov + cov.T) / 2, size=n).T
