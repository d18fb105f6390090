"""SU(n) / SU_q(n) fusion rings on Young diagrams."""

from __future__ import annotations

from fractions import Fraction
from numbers import Integral

from .builders import GradingMap, SubRing, as_number, grading_kernel
from .core import FusionRing, is_exact
from .errors import LabelError, ParameterError
from .littlewood import lr_products

__all__ = ["SUnRing", "build_sun", "grading_of_sun", "quantum_integer", "strip_columns"]


def quantum_integer(k: int, q):
    """[k]_q = (q^k - q^-k) / (q - q^-1), equal to k at q = 1."""
    if q == 1:
        return k
    return (q**k - q ** (-k)) / (q - 1 / q)


def strip_columns(shape, n: int) -> tuple[int, ...]:
    """Remove full columns of height n and trailing zero rows."""
    shape = [int(x) for x in shape]
    if len(shape) > n:
        raise LabelError(f"{tuple(shape)} has more than {n} rows")
    if len(shape) == n:
        c = shape[-1]
        shape = [x - c for x in shape]
    while shape and shape[-1] == 0:
        shape.pop()
    return tuple(shape)


class SUnRing(FusionRing):
    """Irreducibles of SU(n) as partitions with fewer than n rows.

    Fusion is Littlewood-Richardson with shapes of more than n rows dropped and
    full columns stripped.  Dimensions are quantum dimensions
    prod over boxes of [n + content]_q / [hook]_q, exact integers at q = 1.
    ``level`` is the box count, the word length in the vector representation.
    """

    unit = ()

    def __init__(self, n: int, q=1, max_boxes: int = 24):
        super().__init__()
        if isinstance(n, bool) or not isinstance(n, Integral) or n < 2:
            raise ParameterError(f"n must be an integer >= 2, got {n!r}")
        q = as_number(q)
        if not 0 < q <= 1:
            raise ParameterError(f"q must lie in (0, 1], got {q}")
        self.n = int(n)
        self.q = q
        self.max_boxes = max_boxes
        self.exact = is_exact(q)
        self.name = f"SU({self.n})" if q == 1 else f"SU_{q}({self.n})"

    def _canonical(self, label):
        shape = [int(x) for x in label]
        if any(isinstance(x, bool) or not isinstance(x, Integral) for x in label):
            raise LabelError(f"{label!r} is not a partition")
        if any(x < 0 for x in shape) or any(a < b for a, b in zip(shape, shape[1:])):
            raise LabelError(f"{label!r} is not a partition")
        return strip_columns(shape, self.n)

    def _conjugate(self, lam):
        padded = list(lam) + [0] * (self.n - len(lam))
        top = padded[0]
        return strip_columns([top - padded[self.n - 1 - i] for i in range(self.n)], self.n)

    def _fuse(self, a, b):
        if sum(a) + sum(b) > self.max_boxes:
            raise ParameterError(f"|a| + |b| exceeds max_boxes = {self.max_boxes}")
        if sum(b) > sum(a):
            a, b = b, a
        out: dict = {}
        for nu, c in lr_products(a, b, max_rows=self.n).items():
            key = strip_columns(nu, self.n)
            out[key] = out.get(key, 0) + c
        return out

    def _dim(self, lam):
        q = self.q
        num = 1
        den = 1
        conj = [sum(1 for r in lam if r > j) for j in range(lam[0])] if lam else []
        for i, row in enumerate(lam):
            for j in range(row):
                content = j - i
                hook = (row - j - 1) + (conj[j] - i - 1) + 1
                num *= quantum_integer(self.n + content, q)
                den *= quantum_integer(hook, q)
        if is_exact(num) and is_exact(den):
            d = Fraction(num, den)
            return int(d) if d.denominator == 1 else d
        return num / den

    def level(self, lam):
        return sum(lam)

    def labels(self, max_level):
        out = []

        def rec(prefix, remaining, cap):
            out.append(tuple(prefix))
            if len(prefix) == self.n - 1:
                return
            for part in range(min(remaining, cap), 0, -1):
                prefix.append(part)
                rec(prefix, remaining - part, part)
                prefix.pop()

        if max_level >= 0:
            rec([], max_level, max_level)
        return self.sorted(out)


def build_sun(n: int, q=1) -> SUnRing:
    ring = SUnRing(n, q)
    ring.spec = {"kind": "su_n", "n": ring.n, "q": ring.q}
    return ring


def grading_of_sun(ring: SUnRing, check_level: int = 4) -> GradingMap:
    """Box count modulo n; the vector representation has grade 1."""
    if not isinstance(ring, SUnRing):
        raise ParameterError("grading_of_sun needs an SU(n) ring")
    return GradingMap(ring, ring.n, lambda lam: sum(lam), check_level, name=f"Z/{ring.n}")


def psu_kernel(ring: SUnRing, check_level: int = 4) -> SubRing:
    """The PSU(n) fusion ring: labels with box count divisible by n."""
    return grading_kernel(ring, grading_of_sun(ring, check_level), check_level)
