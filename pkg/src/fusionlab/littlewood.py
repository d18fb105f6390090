"""Littlewood-Richardson coefficients by explicit enumeration of LR tableaux."""

from __future__ import annotations

from collections import Counter

Partition = tuple[int, ...]


def _horizontal_strips(shape: list[int], k: int, max_rows: int | None):
    """Yield ``(new_shape, added)`` for every horizontal k-strip added to ``shape``.

    ``added[r]`` is the number of boxes placed in row r.
    """
    rows = len(shape) + 1
    if max_rows is not None:
        rows = min(rows, max_rows)
    base = list(shape) + [0] * (rows - len(shape))

    def rec(r: int, left: int, added: list[int]):
        if r == rows:
            if left == 0:
                yield added
            return
        cap = left if r == 0 else min(left, base[r - 1] - base[r])
        for a in range(cap, -1, -1):
            added.append(a)
            yield from rec(r + 1, left - a, added)
            added.pop()

    for added in rec(0, k, []):
        new = [b + a for b, a in zip(base, added)]
        while new and new[-1] == 0:
            new.pop()
        yield new, list(added)


def lr_products(lam: Partition, mu: Partition, max_rows: int | None = None) -> Counter:
    """Expand s_lam * s_mu as ``Counter({nu: c^nu_{lam,mu}})``.

    Boxes labelled i = 1, 2, ... are added to ``lam`` as horizontal strips of
    length ``mu[i-1]``; a filling is kept only while its reverse reading word
    stays a lattice word.  Shapes with more than ``max_rows`` rows are pruned.
    """
    lam, mu = tuple(lam), tuple(mu)
    out: Counter = Counter()

    # counts[i][r] = number of boxes labelled i+1 in row r
    def rec(i: int, shape: list[int], counts: list[list[int]]):
        if i == len(mu):
            out[tuple(shape)] += 1
            return
        for new, added in _horizontal_strips(shape, mu[i], max_rows):
            if i > 0 and not _lattice_ok(added, counts[i - 1]):
                continue
            rec(i + 1, new, counts + [added])

    rec(0, list(lam), [])
    return out


def _lattice_ok(added: list[int], prev: list[int]) -> bool:
    # boxes labelled i in rows <= r must not exceed boxes labelled i-1 in rows < r
    have_i = 0
    have_prev = 0
    for r, a in enumerate(added):
        have_i += a
        if have_i > have_prev:
            return False
        if r < len(prev):
            have_prev += prev[r]
    return True


def lr_coefficient(lam: Partition, mu: Partition, nu: Partition) -> int:
    return lr_products(lam, mu).get(tuple(nu), 0)
