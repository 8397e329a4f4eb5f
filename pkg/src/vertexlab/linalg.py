"""Small exact linear algebra: dense solves over F_q and over Q."""

from __future__ import annotations

from fractions import Fraction


# ------------------------------------------------------------------ mod-q part


def fq_solve_columns(cols: list[list[int]], target: list[int], q: int):
    """Coordinates x with sum x_j * cols[j] = target (mod q), or None.

    Columns are expected to be linearly independent, so a solution is unique.
    """
    rows = len(target)
    ncols = len(cols)
    aug = [[cols[j][i] % q for j in range(ncols)] + [target[i] % q] for i in range(rows)]
    piv_rows = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, rows) if aug[i][c]), None)
        if piv is None:
            return None
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = pow(aug[r][c], -1, q)
        aug[r] = [(x * inv) % q for x in aug[r]]
        for i in range(rows):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [(a - f * b) % q for a, b in zip(aug[i], aug[r])]
        piv_rows.append(r)
        r += 1
    for i in range(r, rows):
        if aug[i][ncols]:
            return None
    return [aug[piv_rows[c]][ncols] for c in range(ncols)]


def fq_nullspace(mat: list[list[int]], q: int) -> list[list[int]]:
    """Basis of the right nullspace of a square matrix mod q."""
    n = len(mat)
    aug = [row[:] for row in mat]
    pivots: dict[int, int] = {}
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, n) if aug[i][c] % q), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = pow(aug[r][c] % q, -1, q)
        aug[r] = [(x * inv) % q for x in aug[r]]
        for i in range(n):
            if i != r and aug[i][c] % q:
                f = aug[i][c] % q
                aug[i] = [(a - f * b) % q for a, b in zip(aug[i], aug[r])]
        pivots[c] = r
        r += 1
    basis = []
    for c in range(n):
        if c in pivots:
            continue
        vec = [0] * n
        vec[c] = 1
        for pc, pr in pivots.items():
            vec[pc] = (-aug[pr][c]) % q
        basis.append(vec)
    return basis


# --------------------------------------------------------------- rational part


def rational_solve(cols: list[list[Fraction]], target: list[Fraction]):
    """Unique x with sum x_j * cols[j] = target over Q, else None.

    Returns None when the system is inconsistent; raises if the columns are
    linearly dependent (no unique solution).
    """
    rows = len(target)
    ncols = len(cols)
    aug = [[cols[j][i] for j in range(ncols)] + [target[i]] for i in range(rows)]
    piv_rows = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, rows) if aug[i][c]), None)
        if piv is None:
            raise ValueError("linearly dependent columns in exact solve")
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(rows):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        piv_rows.append(r)
        r += 1
    for i in range(r, rows):
        if aug[i][ncols]:
            return None
    return [aug[piv_rows[c]][ncols] for c in range(ncols)]
