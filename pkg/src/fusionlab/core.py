"""Fusion rings and the fusion *-algebra.

A :class:`FusionRing` is a based ring with a distinguished unit, an
involution on labels and non-negative integer structure constants
``mult(c, a ⊗ b)``.  Concrete rings subclass it and implement the
underscored hooks; everything else (memoization, element algebra, word
products, invariant checking) lives here.
"""

from __future__ import annotations

import itertools
import random
import threading
from collections.abc import Iterable, Mapping
from fractions import Fraction
from numbers import Number

from .errors import LabelError, RingMismatchError, ValidationError

__all__ = [
    "FusionRing",
    "FusionOutcome",
    "FusionElement",
    "check_invariants",
    "is_exact",
]


def is_exact(value) -> bool:
    """True for ints and Fractions (and exact complex combos thereof)."""
    return isinstance(value, (int, Fraction)) and not isinstance(value, bool)


def _close(a, b, rel=1e-9) -> bool:
    if is_exact(a) and is_exact(b):
        return a == b
    return abs(a - b) <= rel * max(1.0, abs(a), abs(b))


class FusionOutcome(Mapping):
    """Decomposition of a tensor product: an immutable ``label -> multiplicity`` map.

    Iteration follows the ring's canonical label order.
    """

    __slots__ = ("_terms", "_index")

    def __init__(self, terms: Iterable[tuple[object, int]]):
        self._terms = tuple(terms)
        self._index = dict(self._terms)

    def __getitem__(self, label):
        return self._index[label]

    def get(self, label, default=0):
        return self._index.get(label, default)

    def __iter__(self):
        return (label for label, _ in self._terms)

    def __len__(self):
        return len(self._terms)

    def __hash__(self):
        return hash(self._terms)

    @property
    def terms(self) -> tuple[tuple[object, int], ...]:
        return self._terms

    def __repr__(self):
        inner = ", ".join(f"{label!r}: {m}" for label, m in self._terms)
        return f"FusionOutcome({{{inner}}})"


class FusionRing:
    """Abstract fusion ring.

    Subclasses set ``unit`` and implement ``_canonical``, ``_conjugate``,
    ``_fuse``, ``_dim``, ``level`` and ``labels``.  Finite rings also set
    ``max_level`` to the largest level that occurs.
    """

    unit: object = None
    max_level: int | None = None
    name: str = "ring"
    #: dimensions are exact ints/Fractions
    exact: bool = True

    def __init__(self):
        self._fuse_cache: dict = {}
        self._dim_cache: dict = {}
        self._lock = threading.Lock()
        self.spec: dict | None = None

    # -- hooks -------------------------------------------------------------
    def _canonical(self, label):
        raise NotImplementedError

    def _conjugate(self, label):
        raise NotImplementedError

    def _fuse(self, a, b) -> Mapping:
        raise NotImplementedError

    def _dim(self, label):
        raise NotImplementedError

    def level(self, label) -> int:
        raise NotImplementedError

    def labels(self, max_level: int) -> list:
        """All labels of level at most ``max_level`` in canonical order."""
        raise NotImplementedError

    # -- public API --------------------------------------------------------
    def canonical(self, label):
        """Return the canonical form of ``label`` or raise :class:`LabelError`."""
        try:
            return self._canonical(label)
        except LabelError:
            raise
        except (TypeError, ValueError, KeyError, IndexError) as exc:
            raise LabelError(f"{label!r} is not a label of {self.name}") from exc

    def contains(self, label) -> bool:
        try:
            self.canonical(label)
        except LabelError:
            return False
        return True

    def sort_key(self, label):
        return (self.level(label), label)

    def sorted(self, labels: Iterable) -> list:
        return sorted(labels, key=self.sort_key)

    def conjugate(self, a):
        return self._conjugate(self.canonical(a))

    def fuse(self, a, b) -> FusionOutcome:
        a = self.canonical(a)
        b = self.canonical(b)
        key = (a, b)
        out = self._fuse_cache.get(key)
        if out is None:
            raw = self._fuse(a, b)
            out = FusionOutcome(
                (c, int(m)) for c, m in sorted(raw.items(), key=lambda kv: self.sort_key(kv[0])) if m
            )
            with self._lock:
                self._fuse_cache.setdefault(key, out)
        return out

    def mult(self, c, a, b) -> int:
        return self.fuse(a, b).get(self.canonical(c), 0)

    def mult_word(self, c, word: Iterable) -> int:
        """Multiplicity of ``c`` in the left-to-right tensor product of ``word``."""
        word = list(word)
        if not word:
            raise ValueError("word must be non-empty")
        acc: dict = {self.canonical(word[0]): 1}
        for letter in word[1:]:
            acc = self._fuse_dict(acc, self.canonical(letter))
        return acc.get(self.canonical(c), 0)

    def _fuse_dict(self, acc: Mapping, letter) -> dict:
        nxt: dict = {}
        for label, m in acc.items():
            for c, k in self.fuse(label, letter).items():
                nxt[c] = nxt.get(c, 0) + m * k
        return nxt

    def dim(self, a):
        a = self.canonical(a)
        d = self._dim_cache.get(a)
        if d is None:
            d = self._dim(a)
            with self._lock:
                self._dim_cache.setdefault(a, d)
        return d

    @property
    def is_finite(self) -> bool:
        return self.max_level is not None

    def all_labels(self) -> list:
        if not self.is_finite:
            raise ValueError(f"{self.name} is infinite")
        return self.labels(self.max_level)

    def first_labels(self, count: int, level_cap: int = 10_000) -> list:
        """The first ``count`` labels in canonical order (fewer if the ring is smaller)."""
        level = 0
        found = self.labels(0)
        while len(found) < count:
            if self.max_level is not None and level >= self.max_level:
                break
            if level >= level_cap:
                break
            level += 1
            found = self.labels(level)
        return found[:count]

    # -- elements ----------------------------------------------------------
    def element(self, coeffs: Mapping | Iterable = ()) -> FusionElement:
        return FusionElement(self, coeffs)

    def delta(self, label, coeff=1) -> FusionElement:
        return FusionElement(self, {label: coeff})

    def one(self) -> FusionElement:
        return self.delta(self.unit)

    def __repr__(self):
        return f"<{type(self).__name__} {self.name}>"


class FusionElement:
    """Finitely supported linear combination of labels of one ring.

    Supports ``+``, ``-``, scalar and ring multiplication, and :meth:`star`.
    """

    __slots__ = ("ring", "_coeffs")

    def __init__(self, ring: FusionRing, coeffs: Mapping | Iterable = ()):
        self.ring = ring
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: dict = {}
        for label, c in items:
            label = ring.canonical(label)
            acc[label] = acc.get(label, 0) + c
        self._coeffs = {k: acc[k] for k in ring.sorted(acc) if acc[k] != 0}

    @property
    def coeffs(self) -> Mapping:
        return dict(self._coeffs)

    def items(self):
        return self._coeffs.items()

    def support(self) -> list:
        return list(self._coeffs)

    def __getitem__(self, label):
        return self._coeffs.get(self.ring.canonical(label), 0)

    def __len__(self):
        return len(self._coeffs)

    def __bool__(self):
        return bool(self._coeffs)

    def _check(self, other: FusionElement):
        if other.ring is not self.ring:
            raise RingMismatchError(f"elements of {self.ring.name} and {other.ring.name} cannot be combined")

    def __add__(self, other):
        if not isinstance(other, FusionElement):
            return NotImplemented
        self._check(other)
        return FusionElement(self.ring, itertools.chain(self.items(), other.items()))

    def __neg__(self):
        return FusionElement(self.ring, {k: -v for k, v in self.items()})

    def __sub__(self, other):
        if not isinstance(other, FusionElement):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, FusionElement):
            self._check(other)
            acc: dict = {}
            for a, x in self.items():
                for b, y in other.items():
                    for c, m in self.ring.fuse(a, b).items():
                        acc[c] = acc.get(c, 0) + x * y * m
            return FusionElement(self.ring, acc)
        if isinstance(other, Number):
            return FusionElement(self.ring, {k: v * other for k, v in self.items()})
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, Number):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, Number):
            return FusionElement(self.ring, {k: v / other for k, v in self.items()})
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = self.ring.one()
        for _ in range(k):
            out = out * self
        return out

    def star(self) -> FusionElement:
        """Conjugate-linear involution: coefficients conjugated, labels dualized."""
        return FusionElement(self.ring, {self.ring.conjugate(k): v.conjugate() for k, v in self.items()})

    def __eq__(self, other):
        if not isinstance(other, FusionElement):
            return NotImplemented
        return self.ring is other.ring and self._coeffs == other._coeffs

    def __hash__(self):
        return hash((id(self.ring), tuple(self._coeffs.items())))

    def __repr__(self):
        if not self._coeffs:
            return "0"
        return " + ".join(f"{v!r}*[{k!r}]" for k, v in self._coeffs.items())


# -- invariant suite ---------------------------------------------------------


def _pairs(labels: list, budget: int, rng: random.Random) -> list:
    total = len(labels) ** 2
    if total <= budget:
        return list(itertools.product(labels, repeat=2))
    return [(rng.choice(labels), rng.choice(labels)) for _ in range(budget)]


def _triples(labels: list, budget: int, rng: random.Random) -> list:
    total = len(labels) ** 3
    if total <= budget:
        return list(itertools.product(labels, repeat=3))
    return [(rng.choice(labels), rng.choice(labels), rng.choice(labels)) for _ in range(budget)]


def check_invariants(
    ring: FusionRing,
    max_level: int = 3,
    *,
    pair_budget: int = 4000,
    triple_budget: int = 1500,
    seed: int = 0,
    rel_tol: float = 1e-9,
) -> dict:
    """Run the fusion-ring axioms on labels up to ``max_level``.

    Pairs and triples are exhaustive when they fit in their budget and a
    seeded sample otherwise.  Raises :class:`ValidationError` carrying the
    offending labels; returns a summary of what was checked.
    """
    rng = random.Random(seed)
    labels = ring.labels(max_level)
    e = ring.unit

    if ring.dim(e) != 1:
        raise ValidationError("d(unit) != 1", witness=(e,))
    for a in labels:
        abar = ring.conjugate(a)
        if ring.conjugate(abar) != a:
            raise ValidationError("conjugation is not involutive", witness=(a,))
        if dict(ring.fuse(e, a)) != {a: 1} or dict(ring.fuse(a, e)) != {a: 1}:
            raise ValidationError("unit law fails", witness=(a,))
        da = ring.dim(a)
        if not _close(ring.dim(abar), da, rel_tol):
            raise ValidationError("d(conj a) != d(a)", witness=(a,))
        if da < 1 - rel_tol:
            raise ValidationError("d(a) < 1", witness=(a,))
        if (ring.level(a) == 0) != (a == e):
            raise ValidationError("only the unit may have level 0", witness=(a,))

    pairs = _pairs(labels, pair_budget, rng)
    for a, b in pairs:
        out = ring.fuse(a, b)
        abar, bbar = ring.conjugate(a), ring.conjugate(b)
        if out.get(e, 0) != (1 if b == abar else 0):
            raise ValidationError("mult(unit, a⊗b) != [b = conj a]", witness=(a, b))
        total = sum(m * ring.dim(c) for c, m in out.items())
        if not _close(total, ring.dim(a) * ring.dim(b), rel_tol):
            raise ValidationError("dimension is not multiplicative", witness=(a, b))
        for c, m in out.items():
            if m < 1:
                raise ValidationError("non-positive multiplicity", witness=(a, b, c))
            if ring.mult(a, c, bbar) != m or ring.mult(b, abar, c) != m:
                raise ValidationError("Frobenius reciprocity fails", witness=(a, b, c))

    triples = _triples(labels, triple_budget, rng)
    for a, b, c in triples:
        left = ring._fuse_dict(dict(ring.fuse(a, b)), c)
        right: dict = {}
        for x, m in ring.fuse(b, c).items():
            for y, k in ring.fuse(a, x).items():
                right[y] = right.get(y, 0) + m * k
        if left != right:
            raise ValidationError("fusion is not associative", witness=(a, b, c))

    return {"labels": len(labels), "pairs": len(pairs), "triples": len(triples)}
