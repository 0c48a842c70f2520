"""Exact short-vector enumeration on positive-definite integer Gram matrices.

Fincke-Pohst style depth-first search with the quadratic form written as
``q(x) = sum_i d_i * (x_i + sum_{j>i} u_ij x_j)**2`` from an exact rational
LDL^T factorization.  No floating point decides membership: floats only seed
the coordinate interval, which is then corrected by exact comparisons.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Sequence

import numpy as np


class IndefiniteFormError(ValueError):
    pass


def ldl_exact(gram: Sequence[Sequence[int]]) -> tuple[list[Fraction], list[list[Fraction]]]:
    """Return ``(d, u)`` with ``gram = U^T diag(d) U`` and U unit upper triangular."""
    n = len(gram)
    a = [[Fraction(int(gram[i][j])) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            if a[i][j] != a[j][i]:
                raise IndefiniteFormError("Gram matrix is not symmetric")
    d = [Fraction(0)] * n
    u = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for i in range(n):
        s = a[i][i] - sum(d[k] * u[k][i] ** 2 for k in range(i))
        if s <= 0:
            raise IndefiniteFormError(f"leading minor {i + 1} is not positive")
        d[i] = s
        for j in range(i + 1, n):
            u[i][j] = (a[i][j] - sum(d[k] * u[k][i] * u[k][j] for k in range(i))) / s
    return d, u


def leading_minors_positive(gram: Sequence[Sequence[int]]) -> bool:
    try:
        ldl_exact(gram)
    except IndefiniteFormError:
        return False
    return True


def _interval(center: Fraction, radius2: Fraction) -> range:
    """Integers x with (x - center)**2 <= radius2."""
    c = float(center)
    r = math.sqrt(max(float(radius2), 0.0))
    lo = math.floor(c - r) - 1
    hi = math.ceil(c + r) + 1
    while (lo - center) ** 2 > radius2 and lo <= hi:
        lo += 1
    while (hi - center) ** 2 > radius2 and hi >= lo:
        hi -= 1
    return range(lo, hi + 1)


def _search(d, u, bound: Fraction, exact: bool, top: int | None):
    n = len(d)
    out: list[tuple[int, ...]] = []
    x = [0] * n
    # tail[i] = sum_{k>i} d_k (x_k + ...)^2, the already committed part
    def rec(i: int, used: Fraction) -> None:
        center = -sum((u[i][j] * x[j] for j in range(i + 1, n) if x[j]), Fraction(0))
        rem = bound - used
        if i == n - 1 and top is not None:
            values = [top] if (top - center) ** 2 * d[i] <= rem else []
        else:
            values = _interval(center, rem / d[i])
        for v in values:
            x[i] = v
            t = v - center
            q = used + d[i] * t * t
            if i == 0:
                if not exact or q == bound:
                    out.append(tuple(x))
            else:
                rec(i - 1, q)
        x[i] = 0

    if n:
        rec(n - 1, Fraction(0))
    return out


def _search_task(args):
    d, u, bound, exact, top = args
    return _search(d, u, bound, exact, top)


def short_vectors(
    gram: Sequence[Sequence[int]] | np.ndarray,
    bound: int | Fraction,
    *,
    exact: bool = True,
    workers: int = 1,
) -> list[tuple[int, ...]]:
    """All integer vectors c with c^T G c == bound (or <= bound when ``exact`` is False).

    The result is sorted, so it does not depend on ``workers``: with more than
    one worker the outermost coordinate range is split across processes.
    """
    g = np.asarray(gram, dtype=object).tolist()
    bound = Fraction(bound)
    if bound < 0:
        return []
    d, u = ldl_exact(g)
    n = len(d)
    if n == 0:
        return [()] if bound == 0 else []
    if workers <= 1:
        vecs = _search(d, u, bound, exact, None)
    else:
        tops = list(_interval(Fraction(0), bound / d[n - 1]))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = pool.map(_search_task, [(d, u, bound, exact, t) for t in tops])
            vecs = [v for part in parts for v in part]
    return sorted(vecs)


def rational_inverse(m: Sequence[Sequence[object]]) -> list[list[Fraction]]:
    n = len(m)
    a = [[Fraction(m[i][j]) for j in range(n)] + [Fraction(int(i == k)) for k in range(n)] for i in range(n)]
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [v * inv for v in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return [row[n:] for row in a]


def box_vectors(gram: Sequence[Sequence[int]], bound: int, radius: int) -> list[tuple[int, ...]]:
    """Naive search over the box |c_i| <= radius; used as an independent check."""
    g = np.asarray(gram, dtype=np.int64)
    n = g.shape[0]
    axes = [np.arange(-radius, radius + 1)] * n
    grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, n)
    vals = np.einsum("ki,ij,kj->k", grid, g, grid)
    return sorted(tuple(int(v) for v in row) for row in grid[vals == bound])
