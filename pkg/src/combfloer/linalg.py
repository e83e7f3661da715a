"""Small exact integer / mod-2 linear algebra on lists of lists."""

from __future__ import annotations


def zeros(r: int, c: int) -> list:
    return [[0] * c for _ in range(r)]


def identity(n: int) -> list:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: list, b: list, rows: int | None = None, cols: int | None = None) -> list:
    """Product a*b; shapes are passed explicitly when a side may be empty."""
    n = len(a) if rows is None else rows
    m = (len(b[0]) if b else 0) if cols is None else cols
    k = len(b)
    out = zeros(n, m)
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            v = ai[t]
            if v:
                bt = b[t]
                for j in range(m):
                    oi[j] += v * bt[j]
    return out


def add(a: list, b: list) -> list:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def sub(a: list, b: list) -> list:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mod2(a: list) -> list:
    return [[x % 2 for x in row] for row in a]


def is_zero(a: list) -> bool:
    return all(x == 0 for row in a for x in row)


def rank_mod2(a: list) -> int:
    rows = [int("".join("1" if x % 2 else "0" for x in row) or "0", 2) for row in a]
    rank = 0
    while rows:
        pivot = rows.pop()
        if not pivot:
            continue
        rank += 1
        top = pivot.bit_length() - 1
        rows = [r ^ pivot if (r >> top) & 1 else r for r in rows]
    return rank


def smith_invariants(a: list) -> list:
    """Nonzero invariant factors d1 | d2 | ... of an integer matrix."""
    m = [row[:] for row in a]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    out = []
    t = 0
    while t < min(nr, nc):
        # choose the smallest nonzero entry in the remaining block as pivot
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                if m[i][j] and (best is None or abs(m[i][j]) < abs(m[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        m[t], m[i] = m[i], m[t]
        for row in m:
            row[t], row[j] = row[j], row[t]
        done = False
        while not done:
            done = True
            p = m[t][t]
            for i in range(t + 1, nr):
                q = m[i][t] // p
                if q:
                    m[i] = [x - q * y for x, y in zip(m[i], m[t])]
                if m[i][t]:
                    m[t], m[i] = m[i], m[t]
                    done = False
                    break
            if not done:
                continue
            for j in range(t + 1, nc):
                q = m[t][j] // p
                if q:
                    for row in m:
                        row[j] -= q * row[t]
                if m[t][j]:
                    for row in m:
                        row[t], row[j] = row[j], row[t]
                    done = False
                    break
            if not done:
                continue
            # divisibility: p must divide every entry of the remaining block
            for i in range(t + 1, nr):
                if any(m[i][j] % p for j in range(t + 1, nc)):
                    m[t] = [x + y for x, y in zip(m[t], m[i])]
                    done = False
                    break
        out.append(abs(m[t][t]))
        t += 1
    return out


def rank_z(a: list) -> int:
    return len(smith_invariants(a))


def submatrix(a: list, rows: list, cols: list) -> list:
    return [[a[i][j] for j in cols] for i in rows]
