"""Fraction-free exact linear algebra over the workbench scalar fields.

Bareiss-style elimination keeps every entry a quotient of minors, so the
divisions performed are exact; no floating point is involved.  The solver
does plain Gaussian elimination with field division, which both scalar
types support.
"""

from __future__ import annotations


def rank(rows: list[list], one) -> int:
    """Rank of a matrix of scalars by fraction-free Bareiss elimination."""
    m = [list(r) for r in rows]
    if not m or not m[0]:
        return 0
    nrows, ncols = len(m), len(m[0])
    prev = one
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, nrows):
            for j in range(c + 1, ncols):
                m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) / prev
            m[i][c] = m[i][c] * 0
        prev = m[r][c]
        r += 1
    return r


def solve_unique(rows: list[list], rhs: list, one):
    """Solve A x = b with unique solution; raises on inconsistency/freedom.

    rows is m x k with m >= k; returns the length-k solution vector.
    """
    m = [list(r) + [b] for r, b in zip(rows, rhs)]
    nrows = len(m)
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            raise ArithmeticError("system has a free variable; solution not unique")
        m[r], m[piv] = m[piv], m[r]
        inv = one / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    if len(pivots) < ncols:
        raise ArithmeticError("system has a free variable; solution not unique")
    for i in range(r, nrows):
        if m[i][ncols]:
            raise ArithmeticError("inconsistent linear system")
    return [m[c][ncols] for c in range(ncols)]
