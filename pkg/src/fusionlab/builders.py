"""Concrete fusion rings: Temperley-Lieb-Jones, group rings, products, free products.

SU(n) lives in :mod:`fusionlab.sun`.  Full subrings and gradings are here
because every builder can produce them.
"""

from __future__ import annotations

import itertools
import math
import string
from collections import deque
from collections.abc import Callable, Sequence
from fractions import Fraction
from numbers import Integral, Real

from .chebyshev import chebyshev_V
from .core import FusionRing, is_exact
from .errors import LabelError, ParameterError, ValidationError

__all__ = [
    "TLJRing",
    "TLJFiniteRing",
    "IntegerLatticeRing",
    "CyclicGroupRing",
    "FreeGroupRing",
    "FiniteGroupRing",
    "ProductRing",
    "FreeProductRing",
    "SubRing",
    "GradingMap",
    "as_number",
    "build_tlj_ainf",
    "build_tlj_finite",
    "build_group_ring",
    "build_product",
    "build_free_product",
    "full_subring",
    "grading_kernel",
    "mod_grading",
]


def as_number(x):
    """Normalize a numeric parameter: ints and Fractions stay exact, ``"9/2"`` and
    decimal strings become Fractions, integral floats become ints."""
    if isinstance(x, bool):
        raise ParameterError("booleans are not numbers here")
    if isinstance(x, str):
        x = Fraction(x.strip())
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else x
    if isinstance(x, Integral):
        return int(x)
    if isinstance(x, Real):
        x = float(x)
        if not math.isfinite(x):
            raise ParameterError("parameter must be finite")
        return int(x) if x.is_integer() else x
    raise ParameterError(f"not a real number: {x!r}")


def _as_index(label) -> int:
    if isinstance(label, bool) or not isinstance(label, Integral):
        raise LabelError(f"{label!r} is not an integer label")
    return int(label)


# -- Temperley-Lieb-Jones ------------------------------------------------------


class TLJRing(FusionRing):
    """A_infinity TLJ fusion ring: labels H_n are the integers n >= 0.

    ``H_m ⊗ H_n = H_{|m-n|} ⊕ ... ⊕ H_{m+n}`` and ``d(H_n) = V_n(lambda_inv)``.
    """

    unit = 0

    def __init__(self, lambda_inv):
        super().__init__()
        lambda_inv = as_number(lambda_inv)
        if lambda_inv < 4:
            raise ParameterError(
                f"lambda_inv = {lambda_inv} < 4 has finite depth; use build_tlj_finite"
            )
        self.lambda_inv = lambda_inv
        self.exact = is_exact(lambda_inv)
        self.name = f"TLJ({lambda_inv})"

    def _canonical(self, label):
        n = _as_index(label)
        if n < 0:
            raise LabelError(f"TLJ labels are non-negative, got {n}")
        return n

    def _conjugate(self, n):
        return n

    def _fuse(self, m, n):
        return {k: 1 for k in range(abs(m - n), m + n + 1)}

    def _dim(self, n):
        return chebyshev_V(n, self.lambda_inv)

    def level(self, n):
        return n

    def labels(self, max_level):
        return list(range(max(max_level, -1) + 1))

    def generator(self):
        """X = H_0 + H_1, the class of the generating bimodule."""
        return self.element({0: 1, 1: 1})


class TLJFiniteRing(FusionRing):
    """Finite-depth TLJ ring with index 4 cos^2(pi/m): labels H_0..H_p, p = (m-2)//2.

    Fusion is the level-(m-2) truncation of the SU(2) rule restricted to
    integer spins.
    """

    unit = 0

    def __init__(self, m: int):
        super().__init__()
        if isinstance(m, bool) or not isinstance(m, Integral) or m < 3:
            raise ParameterError(f"m must be an integer >= 3, got {m!r}")
        self.m = int(m)
        self.k = self.m - 2
        self.max_level = self.k // 2
        self.lambda_inv = 4 * math.cos(math.pi / self.m) ** 2
        self.exact = False
        self.name = f"TLJ_finite({self.m})"

    def _canonical(self, label):
        n = _as_index(label)
        if not 0 <= n <= self.max_level:
            raise LabelError(f"label {n} outside 0..{self.max_level}")
        return n

    def _conjugate(self, n):
        return n

    def _fuse(self, a, b):
        return {c: 1 for c in range(abs(a - b), min(a + b, self.k - a - b) + 1)}

    def _dim(self, j):
        return math.sin((2 * j + 1) * math.pi / self.m) / math.sin(math.pi / self.m)

    def level(self, n):
        return n

    def labels(self, max_level):
        return list(range(min(max_level, self.max_level) + 1))


def build_tlj_ainf(lambda_inv) -> TLJRing:
    ring = TLJRing(lambda_inv)
    ring.spec = {"kind": "tlj_ainf", "lambda_inv": ring.lambda_inv}
    return ring


def build_tlj_finite(m: int) -> TLJFiniteRing:
    ring = TLJFiniteRing(m)
    ring.spec = {"kind": "tlj_finite", "m": ring.m}
    return ring


# -- group rings ---------------------------------------------------------------


class GroupRing(FusionRing):
    """Common part of group rings: d = 1, conjugate = inverse, g ⊗ h = gh."""

    def _dim(self, g):
        return 1

    def _fuse(self, a, b):
        return {self.multiply(a, b): 1}

    def multiply(self, a, b):
        raise NotImplementedError

    def _conjugate(self, g):
        return self.inverse(g)

    def inverse(self, g):
        raise NotImplementedError


class IntegerLatticeRing(GroupRing):
    """Z^d; labels are ints when d = 1 and int tuples otherwise."""

    def __init__(self, d: int = 1):
        super().__init__()
        if isinstance(d, bool) or not isinstance(d, Integral) or d < 1:
            raise ParameterError(f"d must be a positive integer, got {d!r}")
        self.d = int(d)
        self.unit = 0 if self.d == 1 else (0,) * self.d
        self.name = "Z" if self.d == 1 else f"Z^{self.d}"

    def _canonical(self, label):
        if self.d == 1:
            return _as_index(label)
        v = tuple(_as_index(x) for x in label)
        if len(v) != self.d:
            raise LabelError(f"expected {self.d} coordinates, got {label!r}")
        return v

    def multiply(self, a, b):
        if self.d == 1:
            return a + b
        return tuple(x + y for x, y in zip(a, b))

    def inverse(self, g):
        return -g if self.d == 1 else tuple(-x for x in g)

    def level(self, g):
        return abs(g) if self.d == 1 else sum(abs(x) for x in g)

    def labels(self, max_level):
        if max_level < 0:
            return []
        if self.d == 1:
            return self.sorted(range(-max_level, max_level + 1))
        rng = range(-max_level, max_level + 1)
        return self.sorted(v for v in itertools.product(rng, repeat=self.d) if sum(map(abs, v)) <= max_level)


class CyclicGroupRing(GroupRing):
    """Z/n with labels 0..n-1."""

    unit = 0

    def __init__(self, n: int):
        super().__init__()
        if isinstance(n, bool) or not isinstance(n, Integral) or n < 1:
            raise ParameterError(f"n must be a positive integer, got {n!r}")
        self.n = int(n)
        self.max_level = self.n // 2
        self.name = f"Z/{self.n}"

    def _canonical(self, label):
        k = _as_index(label)
        if not 0 <= k < self.n:
            raise LabelError(f"{k} is not in 0..{self.n - 1}")
        return k

    def multiply(self, a, b):
        return (a + b) % self.n

    def inverse(self, g):
        return (-g) % self.n

    def level(self, g):
        return min(g, self.n - g)

    def labels(self, max_level):
        return self.sorted(g for g in range(self.n) if self.level(g) <= max_level)


class FreeGroupRing(GroupRing):
    """Free group F_k on generators 1..k; a label is a reduced tuple of nonzero
    ints, -i standing for the inverse of generator i.

    Strings are accepted on input: ``"ab"`` is (1, 2) and ``"Ba"`` is (-2, 1).
    """

    unit = ()

    def __init__(self, k: int):
        super().__init__()
        if isinstance(k, bool) or not isinstance(k, Integral) or k < 1:
            raise ParameterError(f"k must be a positive integer, got {k!r}")
        self.k = int(k)
        self.name = f"F_{self.k}"

    def _canonical(self, label):
        if isinstance(label, str):
            letters = []
            for ch in label:
                i = string.ascii_lowercase.index(ch.lower()) + 1
                letters.append(-i if ch.isupper() else i)
        else:
            letters = [_as_index(x) for x in label]
        for x in letters:
            if x == 0 or abs(x) > self.k:
                raise LabelError(f"letter {x} is not a generator of F_{self.k}")
        return self._reduce(letters)

    @staticmethod
    def _reduce(letters):
        out: list[int] = []
        for x in letters:
            if out and out[-1] == -x:
                out.pop()
            else:
                out.append(x)
        return tuple(out)

    def multiply(self, a, b):
        return self._reduce(a + b)

    def inverse(self, g):
        return tuple(-x for x in reversed(g))

    def level(self, g):
        return len(g)

    def labels(self, max_level):
        if max_level < 0:
            return []
        gens = [i for i in range(1, self.k + 1)] + [-i for i in range(1, self.k + 1)]
        out = [()]
        frontier = [()]
        for _ in range(max_level):
            frontier = [w + (x,) for w in frontier for x in gens if not w or w[-1] != -x]
            out.extend(frontier)
        return self.sorted(out)

    @staticmethod
    def word(text: str) -> tuple[int, ...]:
        """Parse ``"aB"`` style words without reduction checks."""
        return tuple(
            -(string.ascii_lowercase.index(ch.lower()) + 1) if ch.isupper() else string.ascii_lowercase.index(ch) + 1
            for ch in text
        )


class FiniteGroupRing(GroupRing):
    """Group given by a multiplication table on 0..n-1.

    ``level`` is the word length in ``generators`` (default: every element).
    """

    def __init__(self, table: Sequence[Sequence[int]], generators: Sequence[int] | None = None):
        super().__init__()
        n = len(table)
        tab = [list(map(int, row)) for row in table]
        if n == 0 or any(len(row) != n for row in tab):
            raise ParameterError("multiplication table must be square and non-empty")
        if any(not 0 <= x < n for row in tab for x in row):
            raise ParameterError("table entries must lie in 0..n-1")
        ids = [e for e in range(n) if tab[e] == list(range(n)) and all(tab[g][e] == g for g in range(n))]
        if not ids:
            raise ParameterError("table has no identity element")
        e = ids[0]
        inv = {}
        for g in range(n):
            hs = [h for h in range(n) if tab[g][h] == e and tab[h][g] == e]
            if not hs:
                raise ParameterError(f"element {g} has no inverse")
            inv[g] = hs[0]
        for a, b, c in itertools.product(range(n), repeat=3):
            if tab[tab[a][b]][c] != tab[a][tab[b][c]]:
                raise ParameterError(f"table is not associative at {(a, b, c)}")
        self.table = tab
        self.unit = e
        self._inv = inv
        gens = list(range(n)) if generators is None else [int(g) for g in generators]
        dist = {e: 0}
        queue = deque([e])
        while queue:
            g = queue.popleft()
            for s in gens:
                for h in (tab[g][s], tab[g][inv[s]]):
                    if h not in dist:
                        dist[h] = dist[g] + 1
                        queue.append(h)
        if len(dist) != n:
            raise ParameterError("generators do not generate the group")
        self._dist = dist
        self.max_level = max(dist.values())
        self.name = f"G[{n}]"

    def _canonical(self, label):
        g = _as_index(label)
        if not 0 <= g < len(self.table):
            raise LabelError(f"{g} is not a group element")
        return g

    def multiply(self, a, b):
        return self.table[a][b]

    def inverse(self, g):
        return self._inv[g]

    def level(self, g):
        return self._dist[g]

    def labels(self, max_level):
        return self.sorted(g for g in range(len(self.table)) if self._dist[g] <= max_level)


def build_group_ring(family: str, **params) -> GroupRing:
    """``family`` is one of ``"Z"`` (param ``d``), ``"Zn"`` (``n``), ``"free"`` (``k``),
    ``"table"`` (``table``, optional ``generators``)."""
    required = {"Zn": "n", "free": "k", "table": "table"}.get(family)
    if required is not None and required not in params:
        raise ParameterError(f"group family {family!r} needs parameter {required!r}")
    if family == "Z":
        ring = IntegerLatticeRing(params.get("d", 1))
    elif family == "Zn":
        ring = CyclicGroupRing(params["n"])
    elif family == "free":
        ring = FreeGroupRing(params["k"])
    elif family == "table":
        ring = FiniteGroupRing(params["table"], params.get("generators"))
    else:
        raise ParameterError(f"unknown group family {family!r}")
    ring.spec = {"kind": "group", "family": family, "params": dict(params)}
    return ring


# -- products and free products ------------------------------------------------


class ProductRing(FusionRing):
    """Labels are pairs; fusion, conjugation and dimension act componentwise."""

    def __init__(self, r1: FusionRing, r2: FusionRing):
        super().__init__()
        self.factors = (r1, r2)
        self.unit = (r1.unit, r2.unit)
        self.exact = r1.exact and r2.exact
        if r1.max_level is not None and r2.max_level is not None:
            self.max_level = r1.max_level + r2.max_level
        self.name = f"({r1.name} x {r2.name})"

    def _canonical(self, label):
        a, b = label
        return (self.factors[0].canonical(a), self.factors[1].canonical(b))

    def _conjugate(self, label):
        return (self.factors[0].conjugate(label[0]), self.factors[1].conjugate(label[1]))

    def _fuse(self, x, y):
        r1, r2 = self.factors
        out1 = r1.fuse(x[0], y[0])
        out2 = r2.fuse(x[1], y[1])
        return {(a, b): m * k for a, m in out1.items() for b, k in out2.items()}

    def _dim(self, label):
        return self.factors[0].dim(label[0]) * self.factors[1].dim(label[1])

    def level(self, label):
        return self.factors[0].level(label[0]) + self.factors[1].level(label[1])

    def labels(self, max_level):
        r1, r2 = self.factors
        return self.sorted(
            (a, b) for a in r1.labels(max_level) for b in r2.labels(max_level - r1.level(a))
        )


class FreeProductRing(FusionRing):
    """Free product of two fusion rings.

    A label is a tuple of ``(factor, letter)`` pairs alternating between factors
    0 and 1, with no unit letters; ``()`` is the unit.
    """

    unit = ()

    def __init__(self, r1: FusionRing, r2: FusionRing):
        super().__init__()
        self.factors = (r1, r2)
        self.exact = r1.exact and r2.exact
        trivial = [r.max_level == 0 for r in self.factors]
        if trivial[0] and trivial[1]:
            self.max_level = 0
        elif trivial[0] and r2.max_level is not None:
            self.max_level = r2.max_level
        elif trivial[1] and r1.max_level is not None:
            self.max_level = r1.max_level
        self.name = f"({r1.name} * {r2.name})"

    def _canonical(self, label):
        stack: list[tuple[int, object]] = []
        for item in label:
            i, letter = item
            i = _as_index(i)
            if i not in (0, 1):
                raise LabelError(f"factor index must be 0 or 1, got {i}")
            r = self.factors[i]
            letter = r.canonical(letter)
            if stack and stack[-1][0] == i:
                out = r.fuse(stack[-1][1], letter)
                if len(out) != 1 or next(iter(out.values())) != 1:
                    raise LabelError(f"adjacent letters {stack[-1][1]!r}, {letter!r} do not fuse to an irreducible")
                stack.pop()
                letter = next(iter(out))
            if letter != r.unit:
                stack.append((i, letter))
        return tuple(stack)

    def _conjugate(self, word):
        return tuple((i, self.factors[i].conjugate(x)) for i, x in reversed(word))

    def _fuse(self, v, w):
        if not v:
            return {w: 1}
        if not w:
            return {v: 1}
        (i, x), (j, y) = v[-1], w[0]
        if i != j:
            return {v + w: 1}
        head, tail = v[:-1], w[1:]
        r = self.factors[i]
        out: dict = {}
        for z, m in r.fuse(x, y).items():
            if z == r.unit:
                for u, k in self.fuse(head, tail).items():
                    out[u] = out.get(u, 0) + m * k
            else:
                u = head + ((i, z),) + tail
                out[u] = out.get(u, 0) + m
        return out

    def _dim(self, word):
        d = 1
        for i, x in word:
            d = d * self.factors[i].dim(x)
        return d

    def level(self, word):
        return sum(self.factors[i].level(x) for i, x in word)

    def sort_key(self, word):
        return (self.level(word), tuple((i, self.factors[i].sort_key(x)) for i, x in word))

    def labels(self, max_level):
        if max_level < 0:
            return []
        letters = []
        for i, r in enumerate(self.factors):
            letters.append([(x, r.level(x)) for x in r.labels(max_level) if x != r.unit])
        out = [()]

        def rec(word, last, budget):
            for i in (0, 1):
                if i == last:
                    continue
                for x, lev in letters[i]:
                    if lev <= budget:
                        nxt = word + ((i, x),)
                        out.append(nxt)
                        rec(nxt, i, budget - lev)

        rec((), None, max_level)
        return self.sorted(out)


def build_product(r1: FusionRing, r2: FusionRing) -> ProductRing:
    ring = ProductRing(r1, r2)
    if r1.spec is not None and r2.spec is not None:
        ring.spec = {"kind": "product", "factors": [r1.spec, r2.spec]}
    return ring


def build_free_product(r1: FusionRing, r2: FusionRing) -> FreeProductRing:
    ring = FreeProductRing(r1, r2)
    if r1.spec is not None and r2.spec is not None:
        ring.spec = {"kind": "free_product", "factors": [r1.spec, r2.spec]}
    return ring


# -- full subrings and gradings -------------------------------------------------


class SubRing(FusionRing):
    """Full subring of ``parent`` cut out by ``predicate``.

    Construct through :func:`full_subring` or :func:`grading_kernel`, which
    check closure under conjugation and fusion.
    """

    def __init__(self, parent: FusionRing, predicate: Callable[[object], bool], name: str | None = None):
        super().__init__()
        self.parent = parent
        self.predicate = predicate
        self.unit = parent.unit
        self.exact = parent.exact
        self.max_level = parent.max_level
        self.name = name or f"sub({parent.name})"

    def _canonical(self, label):
        label = self.parent.canonical(label)
        if not self.predicate(label):
            raise LabelError(f"{label!r} is not in {self.name}")
        return label

    def _conjugate(self, a):
        return self.parent.conjugate(a)

    def _fuse(self, a, b):
        return dict(self.parent.fuse(a, b))

    def _dim(self, a):
        return self.parent.dim(a)

    def level(self, a):
        return self.parent.level(a)

    def sort_key(self, a):
        return self.parent.sort_key(a)

    def labels(self, max_level):
        return [a for a in self.parent.labels(max_level) if self.predicate(a)]

    def validate_full(self, max_level: int = 4) -> None:
        """Raise :class:`ValidationError` unless the label set is closed up to ``max_level``."""
        if not self.predicate(self.parent.unit):
            raise ValidationError("subring must contain the unit", witness=(self.parent.unit,))
        labels = self.labels(max_level)
        for a in labels:
            abar = self.parent.conjugate(a)
            if not self.predicate(abar):
                raise ValidationError("subring is not closed under conjugation", witness=(a, abar))
        for a, b in itertools.product(labels, repeat=2):
            for c in self.parent.fuse(a, b):
                if not self.predicate(c):
                    raise ValidationError("subring is not closed under fusion", witness=(a, b, c))


def full_subring(parent: FusionRing, predicate, name: str | None = None, check_level: int = 4) -> SubRing:
    sub = SubRing(parent, predicate, name)
    sub.validate_full(check_level)
    return sub


class GradingMap:
    """Map from labels to Z/order compatible with fusion.

    Validated on construction up to ``check_level``: the unit has grade 0,
    conjugates have opposite grades and every component of a ⊗ b has grade
    grade(a) + grade(b).
    """

    def __init__(self, ring: FusionRing, order: int, fn: Callable[[object], int], check_level: int = 4, name: str = "grading"):
        if order < 1:
            raise ParameterError("grading order must be positive")
        self.ring = ring
        self.order = int(order)
        self._fn = fn
        self.name = name
        self.validate(check_level)

    def __call__(self, label) -> int:
        return self._fn(self.ring.canonical(label)) % self.order

    def validate(self, max_level: int) -> None:
        ring = self.ring
        if self(ring.unit) != 0:
            raise ValidationError("grade of the unit must be 0", witness=(ring.unit,))
        labels = ring.labels(max_level)
        for a in labels:
            if (self(a) + self(ring.conjugate(a))) % self.order:
                raise ValidationError("conjugate grades do not cancel", witness=(a, ring.conjugate(a)))
        for a, b in itertools.product(labels, repeat=2):
            want = (self(a) + self(b)) % self.order
            for c in ring.fuse(a, b):
                if self(c) != want:
                    raise ValidationError("grading is incompatible with fusion", witness=(a, b, c))


def grading_kernel(ring: FusionRing, grading: GradingMap, check_level: int = 4) -> SubRing:
    """Full subring of labels with grade 0."""
    sub = SubRing(ring, lambda a: grading(a) == 0, name=f"ker({grading.name})")
    sub.validate_full(check_level)
    return sub


def mod_grading(ring: FusionRing, modulus: int, check_level: int = 4) -> GradingMap:
    """Grading k -> k mod ``modulus`` on Z or a cyclic group ring."""
    if isinstance(ring, CyclicGroupRing) and ring.n % modulus:
        raise ParameterError(f"{modulus} does not divide {ring.n}")
    if not isinstance(ring, (CyclicGroupRing, IntegerLatticeRing)) or getattr(ring, "d", 1) != 1:
        raise ParameterError("mod grading needs Z or Z/n")
    return GradingMap(ring, modulus, lambda k: k, check_level, name=f"mod {modulus}")
