"""Representation theory of the A_infinity Temperley-Lieb-Jones ring.

The fusion algebra is the polynomial algebra C[X] with X = H_0 + H_1 and
H_n = V_n(X).  Normalized positive multipliers correspond to probability
measures on [0, lambda_inv]; the point evaluations give phi_t(H_n) =
V_n(t) / V_n(lambda_inv).  Admissibility of an arbitrary phi is decided
through the truncated Hausdorff moment problem on [0, lambda_inv].
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Literal

import numpy as np
from scipy import integrate, optimize

from .builders import TLJRing, as_number, build_tlj_ainf
from .chebyshev import V_coefficients, chebyshev_V, chebyshev_V_all, chebyshev_V_closed
from .core import FusionElement, is_exact
from .errors import NumericalError, ParameterError
from .multipliers import Multiplier

__all__ = [
    "chebyshev_V",
    "chebyshev_V_closed",
    "phi_point",
    "multiplier_from_measure",
    "monomial_coefficients",
    "MomentSequence",
    "moments",
    "HankelTriple",
    "hankel_triple",
    "AdmissibilityVerdict",
    "admissibility",
    "l1_range_check",
    "plancherel_density",
    "plancherel_pair",
    "to_polynomial",
    "evaluate_polynomial",
    "universal_norm",
    "reduced_norm",
]

_U = np.finfo(float).eps / 2


def _tlj(ring_or_lambda) -> TLJRing:
    if isinstance(ring_or_lambda, TLJRing):
        return ring_or_lambda
    return build_tlj_ainf(ring_or_lambda)


def _exact(x) -> Fraction:
    return Fraction(x)


# -- point multipliers and measures -------------------------------------------


def phi_point(ring_or_lambda, t) -> Multiplier:
    """phi_t(H_n) = V_n(t) / V_n(lambda_inv).

    Exact when t and lambda_inv are rational; otherwise the ratio is formed
    exactly from the binary values and rounded once.
    """
    ring = _tlj(ring_or_lambda)
    t = as_number(t)
    L = ring.lambda_inv
    exact = is_exact(t) and is_exact(L)
    tq, Lq = _exact(t), _exact(L)

    def value(n):
        r = chebyshev_V(n, tq) / chebyshev_V(n, Lq)
        if exact:
            return int(r) if r.denominator == 1 else r
        return float(r)

    return Multiplier(ring, value, claimed_cp=0 <= t <= L, name=f"phi_{t}")


def multiplier_from_measure(ring_or_lambda, atoms) -> Multiplier:
    """phi = sum_i w_i phi_{t_i} for a probability measure sum_i w_i delta_{t_i} on [0, lambda_inv]."""
    ring = _tlj(ring_or_lambda)
    L = ring.lambda_inv
    pts = [(as_number(t), as_number(w)) for t, w in atoms]
    if not pts:
        raise ParameterError("measure needs at least one atom")
    for t, w in pts:
        if not 0 <= t <= L:
            raise ParameterError(f"atom {t} lies outside [0, {L}]")
        if not w > 0:
            raise ParameterError(f"weight {w} is not positive")
    total = sum(w for _, w in pts)
    if all(is_exact(w) for _, w in pts):
        if total != 1:
            raise ParameterError(f"weights sum to {total}, not 1")
    elif abs(total - 1) > 1e-12:
        raise ParameterError(f"weights sum to {total}, not 1")
    parts = [(phi_point(ring, t), w) for t, w in pts]

    def value(n):
        return sum((w * phi(n) for phi, w in parts), 0)

    return Multiplier(ring, value, claimed_cp=True, name="phi_mu")


# -- moments -----------------------------------------------------------------


@lru_cache(maxsize=None)
def _power_table(k_max: int) -> tuple[tuple[int, ...], ...]:
    ring = TLJRing(4)
    X = ring.generator()
    rows = []
    P = ring.one()
    for _ in range(k_max + 1):
        rows.append(tuple(int(P[n]) for n in range(len(rows) + 1)))
        P = P * X
    return tuple(rows)


def monomial_coefficients(k: int) -> tuple[int, ...]:
    """c_{k,n} with X^k = sum_n c_{k,n} H_n, for n = 0..k."""
    if k < 0:
        raise ValueError("k must be non-negative")
    size = 16
    while size < k:
        size *= 2
    return _power_table(size)[k]


@dataclass(frozen=True)
class MomentSequence:
    """m_k = omega_phi(X^k) for k = 0..N.

    ``errors`` bounds the absolute floating-point error of each moment and is
    all zeros for exact sequences.
    """

    lambda_inv: object
    values: tuple
    errors: tuple = ()
    source: str = ""

    def __post_init__(self):
        if not self.errors:
            object.__setattr__(self, "errors", (0.0,) * len(self.values))

    @property
    def exact(self) -> bool:
        return is_exact(self.lambda_inv) and all(is_exact(v) for v in self.values)

    def __len__(self):
        return len(self.values)

    def __getitem__(self, k):
        return self.values[k]


def moments(ring_or_lambda, phi: Multiplier, N: int) -> MomentSequence:
    """m_k = sum_n c_{k,n} V_n(lambda_inv) phi(H_n), k = 0..N."""
    ring = _tlj(ring_or_lambda) if not isinstance(phi, Multiplier) else phi.ring
    if not isinstance(ring, TLJRing):
        raise ParameterError("moments need a multiplier on a TLJ ring")
    if N < 0:
        raise ParameterError("N must be non-negative")
    L = ring.lambda_inv
    phis = [phi(n) for n in range(N + 1)]
    dims = [ring.dim(n) for n in range(N + 1)]
    exact = is_exact(L) and all(is_exact(v) for v in phis)
    values, errors = [], []
    for k in range(N + 1):
        c = monomial_coefficients(k)
        terms = [c[n] * dims[n] * phis[n] for n in range(k + 1)]
        total = sum(terms, 0)
        if exact:
            values.append(int(total) if Fraction(total).denominator == 1 else Fraction(total))
            errors.append(0.0)
        else:
            if any(isinstance(x, complex) and x.imag for x in terms):
                raise ParameterError("moments of a non-real multiplier are not a Hausdorff sequence")
            values.append(float(np.real(total)))
            scale = sum(abs(complex(x)) for x in terms)
            errors.append((8 + 6 * k) * _U * scale)
    return MomentSequence(L, tuple(values), tuple(errors), source=phi.name)


# -- Hankel certificates -------------------------------------------------------


@dataclass(frozen=True)
class HankelTriple:
    """H0 = [m_{i+j}], H1 = [m_{i+j+1}], H2 = lambda_inv*H0 - H1, each (level+1)^2."""

    level: int
    H0: list
    H1: list
    H2: list

    def matrices(self):
        return {"H0": self.H0, "H1": self.H1, "H2": self.H2}


def hankel_triple(seq: MomentSequence, level: int) -> HankelTriple:
    if len(seq) < 2 * level + 2:
        raise ParameterError(f"level {level} needs moments up to index {2 * level + 1}")
    m = seq.values
    L = seq.lambda_inv
    size = level + 1
    H0 = [[m[i + j] for j in range(size)] for i in range(size)]
    H1 = [[m[i + j + 1] for j in range(size)] for i in range(size)]
    H2 = [[L * m[i + j] - m[i + j + 1] for j in range(size)] for i in range(size)]
    return HankelTriple(level, H0, H1, H2)


def _exact_psd(M) -> bool:
    """Symmetric rational PSD test by LDL^T with diagonal pivoting."""
    A = [[Fraction(x) for x in row] for row in M]
    n = len(A)
    active = list(range(n))
    while active:
        p = max(active, key=lambda i: A[i][i])
        piv = A[p][p]
        if piv < 0:
            return False
        if piv == 0:
            return all(A[i][j] == 0 for i in active for j in active)
        active.remove(p)
        row = A[p]
        for i in active:
            if row[i] == 0:
                continue
            f = row[i] / piv
            Ai = A[i]
            for j in active:
                Ai[j] -= f * row[j]
    return True


Status = Literal["Admissible", "Rejected", "Inconclusive"]


@dataclass(frozen=True)
class AdmissibilityVerdict:
    """Outcome of the moment test.

    ``Admissible(level)`` certifies the three Hankel conditions up to
    ``level``; it is not a proof for all levels.  ``Rejected`` is conclusive:
    ``witness`` names the matrix, its level, most negative eigenvalue and
    eigenvector.  ``Inconclusive`` means a violation within the numerical
    uncertainty of floating-point moments.
    """

    status: Status
    level: int
    exact: bool
    witness: dict | None = None
    tolerance: float | None = None

    def __bool__(self):
        return self.status == "Admissible"

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "level": self.level,
            "exact": self.exact,
            "witness": self.witness,
            "tolerance": self.tolerance,
            "semantics": "Admissible(N) certifies Hankel conditions up to level N only; Rejected is conclusive",
        }


def _float(M) -> np.ndarray:
    return np.array([[float(x) for x in row] for row in M], dtype=float)


def _eig_witness(name: str, level: int, M) -> dict:
    w, v = np.linalg.eigh(_float(M))
    vec = v[:, 0]
    if vec[np.argmax(np.abs(vec))] < 0:
        vec = -vec
    return {"matrix": name, "level": level, "eigenvalue": float(w[0]), "eigenvector": [float(x) for x in vec]}


def admissibility(ring_or_lambda, phi, N: int, tol: float = 1e-9) -> AdmissibilityVerdict:
    """Decide whether ``phi`` (a Multiplier or MomentSequence) passes the Hankel
    tests on [0, lambda_inv] at every level up to N.

    Exact moments are tested exactly and ``tol`` is unused.  Floating-point
    moments use eigenvalues: a matrix passes if its smallest eigenvalue is at
    least ``-tol * max(1, trace / size)``, fails conclusively below that
    threshold minus the propagated moment error, and is borderline between.
    """
    if N < 0:
        raise ParameterError("N must be non-negative")
    if isinstance(phi, MomentSequence):
        seq = phi
    else:
        seq = moments(phi.ring if isinstance(phi, Multiplier) else ring_or_lambda, phi, 2 * N + 1)
    if len(seq) < 2 * N + 2:
        raise ParameterError(f"level {N} needs {2 * N + 2} moments, got {len(seq)}")
    vals = seq.values[: 2 * N + 2]
    if not all(math.isfinite(float(v)) for v in vals):
        raise NumericalError("moments are not finite")
    m0 = vals[0]
    if not m0 > 0:
        raise ParameterError(f"m_0 = {m0} must be positive")
    if seq.exact:
        norm = MomentSequence(seq.lambda_inv, tuple(Fraction(v) / Fraction(m0) for v in vals))
        return _exact_verdict(norm, N)
    L = float(seq.lambda_inv)
    norm = MomentSequence(
        L,
        tuple(float(v) / float(m0) for v in vals),
        tuple(e / abs(float(m0)) for e in seq.errors[: 2 * N + 2]),
    )
    return _float_verdict(norm, N, tol)


def _exact_verdict(seq: MomentSequence, N: int) -> AdmissibilityVerdict:
    full = hankel_triple(seq, N)
    if all(_exact_psd(M) for M in full.matrices().values()):
        return AdmissibilityVerdict("Admissible", N, True)
    for level in range(N + 1):
        ht = hankel_triple(seq, level)
        for name, M in ht.matrices().items():
            if not _exact_psd(M):
                return AdmissibilityVerdict("Rejected", level, True, _eig_witness(name, level, M))
    raise AssertionError("leading minors are PSD but the full matrix is not")


def _float_status(M: np.ndarray, E: np.ndarray, tol: float):
    size = M.shape[0]
    lam = float(np.linalg.eigvalsh(M)[0])
    tol_abs = tol * max(1.0, float(np.trace(M)) / size)
    pert = float(np.linalg.norm(E))
    if lam >= -tol_abs:
        return "ok", tol_abs
    if lam < -(tol_abs + pert):
        return "reject", tol_abs
    return "borderline", tol_abs


def _float_verdict(seq: MomentSequence, N: int, tol: float) -> AdmissibilityVerdict:
    m = np.array(seq.values)
    e = np.array(seq.errors)
    L = seq.lambda_inv

    def mats(level):
        idx = np.add.outer(np.arange(level + 1), np.arange(level + 1))
        H0, H1 = m[idx], m[idx + 1]
        E0, E1 = e[idx], e[idx + 1]
        H2 = L * H0 - H1
        E2 = L * E0 + E1 + 2 * _U * (np.abs(L * H0) + np.abs(H1))
        return {"H0": (H0, E0), "H1": (H1, E1), "H2": (H2, E2)}

    statuses = {name: _float_status(M, E, tol) for name, (M, E) in mats(N).items()}
    tol_used = max(t for _, t in statuses.values())
    if all(s == "ok" for s, _ in statuses.values()):
        return AdmissibilityVerdict("Admissible", N, False, tolerance=tol_used)
    for level in range(N + 1):
        for name, (M, E) in mats(level).items():
            status, t = _float_status(M, E, tol)
            if status == "reject":
                return AdmissibilityVerdict("Rejected", level, False, _eig_witness(name, level, M), tolerance=t)
    return AdmissibilityVerdict("Inconclusive", N, False, tolerance=tol_used)


# -- L^1 range -----------------------------------------------------------------


def l1_range_check(ring_or_lambda, t, n_max: int) -> int | None:
    """First n <= n_max with |V_n(t)| > V_n(lambda_inv), or None.

    The comparison is exact: floats are taken at their binary value.
    """
    if n_max < 1:
        raise ParameterError("n_max must be at least 1")
    L = ring_or_lambda.lambda_inv if isinstance(ring_or_lambda, TLJRing) else as_number(ring_or_lambda)
    tq, Lq = Fraction(as_number(t)), Fraction(L)
    vt = chebyshev_V_all(n_max, tq)
    vL = chebyshev_V_all(n_max, Lq)
    for n in range(n_max + 1):
        if abs(vt[n]) > vL[n]:
            return n
    return None


# -- Plancherel measure --------------------------------------------------------


def plancherel_density(t):
    """Density of the free Poisson law on [0, 4], normalized to total mass 1."""
    t = np.asarray(t, dtype=float)
    return np.sqrt((4 - t) / t) / (2 * np.pi)


def plancherel_pair(n: int, m: int, tol: float = 1e-8) -> float:
    """Integral of V_n V_m against the Plancherel measure.

    With t = 2 - 2 cos u the density times dt becomes (1 + cos u) du / pi,
    which removes the endpoint singularity at t = 0.
    """
    if n < 0 or m < 0:
        raise ParameterError("n and m must be non-negative")
    top = max(n, m)

    def integrand(u):
        t = 2.0 - 2.0 * math.cos(u)
        vs = chebyshev_V_all(top, t)
        return vs[n] * vs[m] * (1.0 + math.cos(u)) / math.pi

    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", integrate.IntegrationWarning)
        value, err = integrate.quad(integrand, 0.0, math.pi, epsabs=tol / 10, epsrel=0.0, limit=200)
    if err > tol:
        note = f" ({caught[0].message})" if caught else ""
        raise NumericalError(f"quadrature error {err:.3g} exceeds {tol:.3g}{note}", estimate=value)
    return value


# -- polynomial picture and norms ----------------------------------------------


def _check_tlj_element(x: FusionElement) -> TLJRing:
    if not isinstance(x.ring, TLJRing):
        raise ParameterError("element must belong to a TLJ ring")
    return x.ring


def to_polynomial(x: FusionElement) -> list:
    """Monomial coefficients (lowest degree first) of P_x(t) = sum_n x_n V_n(t)."""
    _check_tlj_element(x)
    if not x:
        return [0]
    deg = max(x.support())
    coeffs = [0] * (deg + 1)
    for n, c in x.items():
        for i, a in enumerate(V_coefficients(n)):
            coeffs[i] += c * a
    return coeffs


def evaluate_polynomial(x: FusionElement, t):
    """P_x(t) through the V_n recurrence; ``t`` may be an array."""
    _check_tlj_element(x)
    if not x:
        return 0 * t
    vs = chebyshev_V_all(max(x.support()), t)
    return sum(c * vs[n] for n, c in x.items())


def _sup_abs(x: FusionElement, a, b, grid: int = 2048):
    ends = [abs(evaluate_polynomial(x, Fraction(a) if is_exact(a) else a)),
            abs(evaluate_polynomial(x, Fraction(b) if is_exact(b) else b))]
    best_end = max(ends)
    af, bf = float(a), float(b)
    k = np.arange(grid)
    nodes = (af + bf) / 2 + (bf - af) / 2 * np.cos((2 * k + 1) * np.pi / (2 * grid))
    nodes = np.sort(nodes)
    vals = np.abs(evaluate_polynomial(x, nodes))
    best_inner = float(np.max(vals))
    for i in np.argsort(vals)[-5:]:
        lo = nodes[max(i - 1, 0)] if i > 0 else af
        hi = nodes[min(i + 1, grid - 1)] if i < grid - 1 else bf
        res = optimize.minimize_scalar(
            lambda s: -abs(complex(evaluate_polynomial(x, s))),
            bounds=(lo, hi),
            method="bounded",
            options={"xatol": 1e-14 * max(1.0, abs(bf))},
        )
        best_inner = max(best_inner, -float(res.fun))
    if best_inner <= float(best_end) * (1 + 1e-12):
        if is_exact(best_end):
            return int(best_end) if Fraction(best_end).denominator == 1 else Fraction(best_end)
        return float(best_end)
    return best_inner


def universal_norm(x: FusionElement, lambda_inv=None):
    """max |P_x| on [0, lambda_inv], the norm of x in the universal C*-algebra."""
    ring = _check_tlj_element(x)
    L = ring.lambda_inv if lambda_inv is None else as_number(lambda_inv)
    return _sup_abs(x, 0, L)


def reduced_norm(x: FusionElement):
    """max |P_x| on [0, 4], the norm of x in the regular representation."""
    _check_tlj_element(x)
    return _sup_abs(x, 0, 4)
