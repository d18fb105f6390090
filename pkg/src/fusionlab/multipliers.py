"""Functions on irreducible labels and their calculus.

A :class:`Multiplier` is a function ``phi: Irr -> C`` attached to a ring.  It
carries a *claim* of complete positivity; nothing here proves that claim
except the decision procedure for TLJ rings in :mod:`fusionlab.tlj` and the
necessary Gram-matrix test :func:`gram_matrix`.
"""

from __future__ import annotations

import threading
from collections.abc import Callable, Mapping, Sequence
from fractions import Fraction

import numpy as np

from .builders import FreeProductRing, GradingMap, SubRing, as_number
from .core import FusionElement, FusionRing, is_exact
from .errors import EvaluationError, ParameterError, RingMismatchError, ValidationError

__all__ = [
    "Multiplier",
    "regular_multiplier",
    "trivial_multiplier",
    "table_multiplier",
    "omega",
    "convolve",
    "pointwise_product",
    "extend_by_zero",
    "restrict",
    "free_product_multiplier",
    "grade_average",
    "gram_matrix",
]


def _ratio(num, den):
    if is_exact(num) and is_exact(den):
        r = Fraction(num) / Fraction(den)
        return int(r) if r.denominator == 1 else r
    return num / den


class Multiplier:
    """A memoized function on the labels of ``ring``."""

    def __init__(
        self,
        ring: FusionRing,
        fn: Callable[[object], object],
        *,
        claimed_cp: bool = False,
        finitely_supported: bool = False,
        name: str = "phi",
    ):
        self.ring = ring
        self._fn = fn
        self.claimed_cp = claimed_cp
        self.finitely_supported = finitely_supported
        self.name = name
        self._cache: dict = {}
        self._lock = threading.Lock()

    def __call__(self, label):
        label = self.ring.canonical(label)
        try:
            return self._cache[label]
        except KeyError:
            pass
        try:
            value = self._fn(label)
        except EvaluationError:
            raise
        except Exception as exc:
            raise EvaluationError(f"{self.name} cannot be evaluated at {label!r}: {exc}", [label]) from exc
        with self._lock:
            self._cache.setdefault(label, value)
        return value

    def values(self, labels) -> list:
        return [self(a) for a in labels]

    def bound_violations(self, max_level: int, tol: float = 1e-12) -> list:
        """Labels up to ``max_level`` where |phi| exceeds phi(unit).

        A normalized cp-multiplier has none.
        """
        top = abs(self(self.ring.unit))
        return [a for a in self.ring.labels(max_level) if abs(self(a)) > top * (1 + tol) + tol]

    def __repr__(self):
        flag = ", cp" if self.claimed_cp else ""
        return f"<Multiplier {self.name} on {self.ring.name}{flag}>"


def regular_multiplier(ring: FusionRing) -> Multiplier:
    """delta at the unit; its representation is the regular one."""
    unit = ring.unit
    return Multiplier(ring, lambda a: 1 if a == unit else 0, claimed_cp=True, finitely_supported=True, name="phi_0")


def trivial_multiplier(ring: FusionRing) -> Multiplier:
    """Constant 1; its representation is a -> d(a)."""
    return Multiplier(ring, lambda a: 1, claimed_cp=True, name="phi_eps")


def table_multiplier(ring: FusionRing, values: Mapping, default=0, *, claimed_cp: bool = False, name: str = "table") -> Multiplier:
    table = {ring.canonical(k): v for k, v in values.items()}
    return Multiplier(
        ring,
        lambda a: table.get(a, default),
        claimed_cp=claimed_cp,
        finitely_supported=(default == 0),
        name=name,
    )


def _check_ring(phi: Multiplier, x: FusionElement):
    if x.ring is not phi.ring:
        raise RingMismatchError(f"element of {x.ring.name} used with multiplier on {phi.ring.name}")


def omega(phi: Multiplier, x: FusionElement):
    """The functional sum_a x_a d(a) phi(a)."""
    _check_ring(phi, x)
    ring = phi.ring
    return sum((c * ring.dim(a) * phi(a) for a, c in x.items()), 0)


def convolve(phi: Multiplier, x: FusionElement, y: FusionElement | None = None) -> Multiplier:
    """The multiplier phi_{x,y} with omega_{phi_{x,y}}(a) = omega_phi(y* a x).

    Evaluated at rho as
    d(rho)^-1 sum_{pi, eta, gamma} x_pi conj(y_eta) phi(gamma) d(gamma) mult(gamma, conj(eta) ⊗ rho ⊗ pi).
    """
    if y is None:
        y = x
    _check_ring(phi, x)
    _check_ring(phi, y)
    ring = phi.ring
    xs = list(x.items())
    ys = [(ring.conjugate(eta), c.conjugate()) for eta, c in y.items()]

    def value(rho):
        needed: dict = {}
        for etabar, yc in ys:
            left = dict(ring.fuse(etabar, rho))
            for pi, xc in xs:
                for gamma, m in ring._fuse_dict(left, pi).items():
                    needed[gamma] = needed.get(gamma, 0) + xc * yc * m
        total = 0
        for gamma, coeff in needed.items():
            try:
                val = phi(gamma)
            except EvaluationError as exc:
                raise EvaluationError(
                    f"convolution at {rho!r} needs {phi.name} on {sorted(needed, key=ring.sort_key)!r}",
                    needed,
                ) from exc
            total += coeff * ring.dim(gamma) * val
        return _ratio(total, ring.dim(rho))

    return Multiplier(ring, value, claimed_cp=phi.claimed_cp and x == y, name=f"{phi.name}_(x,y)")


def pointwise_product(phi1: Multiplier, phi2: Multiplier) -> Multiplier:
    if phi1.ring is not phi2.ring:
        raise RingMismatchError("multipliers live on different rings")
    return Multiplier(
        phi1.ring,
        lambda a: phi1(a) * phi2(a),
        claimed_cp=phi1.claimed_cp and phi2.claimed_cp,
        finitely_supported=phi1.finitely_supported or phi2.finitely_supported,
        name=f"{phi1.name}*{phi2.name}",
    )


def _check_subring(ring: FusionRing, subring: SubRing, check_level: int):
    if not isinstance(subring, SubRing) or subring.parent is not ring:
        raise ValidationError("subring must be a SubRing of the given ring", witness=(subring,))
    subring.validate_full(check_level)


def extend_by_zero(ring: FusionRing, subring: SubRing, phi1: Multiplier, check_level: int = 4) -> Multiplier:
    """phi1 on the labels of ``subring``, zero elsewhere."""
    _check_subring(ring, subring, check_level)
    if phi1.ring is not subring:
        raise RingMismatchError("phi1 must be a multiplier on the subring")
    pred = subring.predicate
    return Multiplier(
        ring,
        lambda a: phi1(a) if pred(a) else 0,
        claimed_cp=phi1.claimed_cp,
        finitely_supported=phi1.finitely_supported,
        name=f"ext({phi1.name})",
    )


def restrict(ring: FusionRing, subring: SubRing, phi: Multiplier, check_level: int = 4) -> Multiplier:
    _check_subring(ring, subring, check_level)
    if phi.ring is not ring:
        raise RingMismatchError("phi must be a multiplier on the ambient ring")
    return Multiplier(
        subring,
        lambda a: phi(a),
        claimed_cp=phi.claimed_cp,
        finitely_supported=phi.finitely_supported,
        name=f"res({phi.name})",
    )


def free_product_multiplier(ring: FreeProductRing, phi1: Multiplier, phi2: Multiplier, r) -> Multiplier:
    """psi(a_1 ... a_d) = r^d prod phi_{factor(k)}(a_k)."""
    if not isinstance(ring, FreeProductRing):
        raise ParameterError("free_product_multiplier needs a free product ring")
    r = as_number(r)
    if not 0 < r <= 1:
        raise ParameterError(f"r must lie in (0, 1], got {r}")
    parts = (phi1, phi2)
    for i, phi in enumerate(parts):
        if phi.ring is not ring.factors[i]:
            raise RingMismatchError(f"multiplier {i} does not live on factor {i}")
        u = phi(phi.ring.unit)
        if abs(u - 1) > 1e-12:
            raise ParameterError(f"multiplier {i} must equal 1 at the unit, got {u}")

    def value(word):
        out = r ** len(word)
        for i, letter in word:
            out = out * parts[i](letter)
        return out

    return Multiplier(
        ring,
        value,
        claimed_cp=phi1.claimed_cp and phi2.claimed_cp,
        name=f"{phi1.name}*_{r}{phi2.name}",
    )


def grade_average(ring: FusionRing, grading: GradingMap, reps: Mapping | Sequence, phi: Multiplier) -> Multiplier:
    """phi_{a,a} for a = |G|^-1/2 sum_s d(alpha_s)^-1 alpha_s.

    ``reps[s]`` is a label of grade s, with the unit at s = 0.  The
    |G|^-1/2 factor is applied as 1/|G| after the convolution so rational
    inputs stay exact.
    """
    if grading.ring is not ring or phi.ring is not ring:
        raise RingMismatchError("grading, multiplier and ring must agree")
    order = grading.order
    if isinstance(reps, Mapping):
        section = {int(s): ring.canonical(reps[s]) for s in reps}
    else:
        section = {s: ring.canonical(a) for s, a in enumerate(reps)}
    if sorted(section) != list(range(order)):
        raise ValidationError("reps must cover every grade exactly once", witness=tuple(section))
    if section[0] != ring.unit:
        raise ValidationError("reps[0] must be the unit", witness=(section[0],))
    for s, a in section.items():
        if grading(a) != s:
            raise ValidationError(f"reps[{s}] has grade {grading(a)}", witness=(s, a))
    b = ring.element({a: _ratio(1, ring.dim(a)) for a in section.values()})
    conv = convolve(phi, b, b)
    return Multiplier(
        ring,
        lambda rho: _ratio(conv(rho), order),
        claimed_cp=phi.claimed_cp,
        name=f"avg({phi.name})",
    )


def gram_matrix(phi: Multiplier, labels: Sequence) -> np.ndarray:
    """G[i, j] = omega_phi(a_i* a_j).

    Positive semidefinite whenever phi is a cp-multiplier; for a group ring
    this is the matrix [phi(g_i^-1 g_j)].
    """
    ring = phi.ring
    labels = [ring.canonical(a) for a in labels]
    n = len(labels)
    G = np.zeros((n, n), dtype=complex)
    for i, a in enumerate(labels):
        abar = ring.conjugate(a)
        for j, b in enumerate(labels):
            G[i, j] = complex(sum(m * ring.dim(c) * phi(c) for c, m in ring.fuse(abar, b).items()))
    if np.all(G.imag == 0):
        return G.real
    return G
