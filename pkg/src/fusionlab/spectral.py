"""Truncations of the regular representation and the amenability test."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

import numpy as np
from scipy import sparse

from .builders import TLJRing
from .core import FusionElement, FusionRing
from .errors import ParameterError

__all__ = ["TruncatedRegularRep", "truncated_matrix", "NormEstimate", "norm_estimate", "amenability_report"]


def _as_element(ring: FusionRing, generator) -> FusionElement:
    if isinstance(generator, FusionElement):
        if generator.ring is not ring:
            raise ParameterError("generator belongs to another ring")
        return generator
    return ring.delta(generator)


@dataclass(frozen=True)
class TruncatedRegularRep:
    """Compression of the regular representation to the first ``len(basis)`` labels.

    ``matrix[i, j]`` is the coefficient of ``basis[i]`` in ``x * basis[j]`` where
    x is the generator, or x* x when ``symmetrized``.
    """

    ring: FusionRing
    generator: FusionElement
    basis: list
    matrix: sparse.csr_matrix
    symmetrized: bool

    @property
    def size(self) -> int:
        return len(self.basis)

    def dense(self) -> np.ndarray:
        M = self.matrix.toarray()
        if np.all(M == np.round(M)):
            return M.astype(np.int64)
        return M


def truncated_matrix(ring: FusionRing, generator, N: int) -> TruncatedRegularRep:
    """Matrix of the regular representation of ``generator`` on the first N labels.

    A generator that is not self-adjoint is replaced by x* x, whose norm is
    the square of the norm of x.
    """
    if N < 1:
        raise ParameterError("N must be at least 1")
    x = _as_element(ring, generator)
    symmetrized = x.star() != x
    op = x.star() * x if symmetrized else x
    basis = ring.first_labels(N)
    index = {b: i for i, b in enumerate(basis)}
    rows, cols, vals = [], [], []
    for j, b in enumerate(basis):
        col = op * ring.delta(b)
        for c, v in col.items():
            i = index.get(c)
            if i is not None:
                rows.append(i)
                cols.append(j)
                vals.append(complex(v) if isinstance(v, complex) else float(v))
    dtype = complex if any(isinstance(v, complex) for v in vals) else float
    M = sparse.csr_matrix((np.array(vals, dtype=dtype), (rows, cols)), shape=(len(basis), len(basis)))
    return TruncatedRegularRep(ring, x, basis, M, symmetrized)


@dataclass(frozen=True)
class NormEstimate:
    """Lower bounds for the regular-representation norm from nested truncations.

    ``bounds`` is non-decreasing in ``sizes``; ``upper`` is the triangle-inequality
    bound sum |x_a| d(a).
    """

    sizes: list
    bounds: list
    estimate: float
    gap: float
    converged: bool
    upper: float
    iterations: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "sizes": self.sizes,
            "bounds": self.bounds,
            "estimate": self.estimate,
            "gap": self.gap,
            "converged": self.converged,
            "upper": self.upper,
            "iterations": self.iterations,
        }


def _power(A, iterations: int, tol: float) -> tuple[float, int, bool]:
    """||A v|| for v the normalized power iterate of the all-ones vector."""
    v = np.ones(A.shape[0], dtype=A.dtype)
    v /= np.linalg.norm(v)
    est = 0.0
    for k in range(1, iterations + 1):
        w = A @ v
        nrm = float(np.linalg.norm(w))
        if nrm == 0.0:
            return 0.0, k, True
        if abs(nrm - est) <= tol * nrm:
            return nrm, k, True
        est = nrm
        v = w / nrm
    return est, iterations, False


def norm_estimate(ring: FusionRing, generator, N: int, iterations: int | None = None, tol: float = 1e-12) -> NormEstimate:
    """Power-iteration lower bounds at truncation sizes N/4, N/2 and N."""
    if N < 2:
        raise ParameterError("N must be at least 2")
    rep = truncated_matrix(ring, generator, N)
    full = rep.size
    sizes = sorted({max(1, min(s, full)) for s in (N // 4, N // 2, N)})
    bounds, its = [], []
    converged = True
    best = 0.0
    for s in sizes:
        A = rep.matrix[:s, :s]
        cap = iterations if iterations is not None else 10 * s
        val, k, ok = _power(A, max(cap, 1), tol)
        if rep.symmetrized:
            val = float(np.sqrt(val))
        best = max(best, val)
        bounds.append(best)
        its.append(k)
        converged = converged and ok
    x = rep.generator
    upper = float(sum(abs(c) * float(ring.dim(a)) for a, c in x.items()))
    gap = bounds[-1] - bounds[-2] if len(bounds) > 1 else 0.0
    return NormEstimate(sizes, bounds, bounds[-1], gap, converged, upper, its)


Verdict = Literal["AmenableWithinTol", "GapDetected", "Undetermined"]


def _exact_norm(ring: FusionRing, x: FusionElement):
    if isinstance(ring, TLJRing):
        from .tlj import reduced_norm

        return float(reduced_norm(x)), "polynomial sup on [0, 4]"
    if ring.is_finite:
        labels = ring.all_labels()
        rep = truncated_matrix(ring, x, len(labels))
        w = np.linalg.eigvals(rep.matrix.toarray())
        val = float(np.max(np.abs(w)))
        if rep.symmetrized:
            val = float(np.sqrt(val))
        return val, "full eigensolve"
    return None, None


def amenability_report(ring: FusionRing, generator, N: int = 200, tol: float = 1e-3) -> dict:
    """Compare the regular norm of ``generator`` with its trivial-representation value.

    The trivial value is sum_a x_a d(a).  GapDetected needs an exact norm,
    available for A_infinity TLJ rings and finite rings; otherwise a shortfall
    is reported as Undetermined.  ``tol`` is relative.
    """
    x = _as_element(ring, generator)
    d = sum((c * ring.dim(a) for a, c in x.items()), 0)
    if isinstance(d, complex) or any(isinstance(c, complex) or c < 0 for _, c in x.items()):
        raise ParameterError("generator must have non-negative real coefficients")
    d = float(d)
    est = norm_estimate(ring, x, N)
    exact, method = _exact_norm(ring, x)
    value = exact if exact is not None else est.estimate
    rel_gap = (d - value) / d
    if rel_gap <= tol:
        verdict: Verdict = "AmenableWithinTol"
    elif exact is not None:
        verdict = "GapDetected"
    else:
        verdict = "Undetermined"
    return {
        "estimate": est.estimate,
        "exact_norm": exact,
        "exact_method": method,
        "dimension": d,
        "relative_gap": rel_gap,
        "verdict": verdict,
        "truncation": est.to_dict(),
        "tolerance": tol,
    }
