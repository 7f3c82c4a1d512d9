"""Integer row lattices: Hermite normal form."""
from __future__ import annotations


def hermite_rows(rows: list[list[int]]) -> list[list[int]]:
    """Row Hermite normal form of the lattice spanned by ``rows``.

    The result is upper triangular with positive pivots, every entry above a
    pivot reduced into ``[0, pivot)``, and zero rows dropped.
    """
    m = [list(r) for r in rows if any(r)]
    if not m:
        return []
    ncols = len(m[0])
    top = 0
    pivots = []
    for col in range(ncols):
        if top >= len(m):
            break
        while True:
            nz = [i for i in range(top, len(m)) if m[i][col] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(m[i][col]))
            m[top], m[piv] = m[piv], m[top]
            done = True
            for i in range(top + 1, len(m)):
                if m[i][col]:
                    q = m[i][col] // m[top][col]
                    m[i] = [a - q * b for a, b in zip(m[i], m[top])]
                    if m[i][col]:
                        done = False
            if done:
                break
        if top < len(m) and m[top][col] != 0:
            if m[top][col] < 0:
                m[top] = [-a for a in m[top]]
            pivots.append((top, col))
            top += 1
    m = m[:top]
    for row, col in pivots:
        p = m[row][col]
        for i in range(row):
            q = m[i][col] // p
            if q:
                m[i] = [a - q * b for a, b in zip(m[i], m[row])]
    return m
