"""Exact integer lattice reduction over Python ints.

Only what the fixed-point solver needs: Hermite reduction of a row lattice
containing N*Z^l, Smith normal form with the column transform, and the
solution group of a homogeneous congruence system modulo N.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

Matrix = list[list[int]]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, s, t) with s*a + t*b == g == gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def hermite_mod_basis(rows: Iterable[Sequence[int]], modulus: int, width: int) -> Matrix:
    """Upper-triangular (Hermite) basis of span(rows) + modulus * Z^width.

    Rows are folded in one at a time, so the basis never exceeds
    width x width.  Because the lattice contains modulus * Z^width, every
    off-diagonal entry may be reduced modulo the modulus as we go without
    changing the lattice (the diagonal, hence the determinant, is untouched).
    """
    if modulus < 1:
        raise ValueError("modulus must be positive")
    basis: Matrix = [[modulus if i == j else 0 for j in range(width)] for i in range(width)]
    seen = set()
    for row in rows:
        v = tuple(int(x) % modulus for x in row)
        if len(v) != width:
            raise ValueError(f"row of length {len(v)}, expected {width}")
        if v in seen:
            continue
        seen.add(v)
        v = list(v)
        for i in range(width):
            if v[i] == 0:
                continue
            b = basis[i]
            g, s, t = _xgcd(b[i], v[i])
            p, q = b[i] // g, v[i] // g
            # [[s, t], [-q, p]] is unimodular
            new_b = [(s * x + t * y) % modulus for x, y in zip(b, v)]
            new_b[i] = g
            v = [(-q * x + p * y) % modulus for x, y in zip(b, v)]
            basis[i] = new_b
    for i in range(width):
        for k in range(i + 1, width):
            q = basis[i][k] // basis[k][k]
            if q:
                basis[i] = [x - q * y for x, y in zip(basis[i], basis[k])]
    return basis


def _bezout_step(a: int, b: int) -> tuple[int, int, int, int]:
    """Unimodular 2x2 (s, u, c, d) sending (a, b) to (gcd, 0)."""
    if b % a == 0:
        return 1, 0, -(b // a), 1
    g, s, u = _xgcd(a, b)
    return s, u, -b // g, a // g


@dataclass(frozen=True)
class SmithForm:
    """P @ A @ Q == diag(diagonal) with P, Q unimodular."""

    diagonal: tuple[int, ...]
    P: Matrix
    Q: Matrix


def smith_normal_form(A: Sequence[Sequence[int]]) -> SmithForm:
    """Smith normal form; diagonal entries are non-negative and d_i | d_{i+1}."""
    M = [list(map(int, row)) for row in A]
    m = len(M)
    n = len(M[0]) if m else 0
    P = [[int(i == j) for j in range(m)] for i in range(m)]
    Q = [[int(i == j) for j in range(n)] for i in range(n)]

    def row_op(i, j, a, b, c, d):
        # rows (i, j) <- (a*Ri + b*Rj, c*Ri + d*Rj)
        for X in (M, P):
            ri, rj = X[i], X[j]
            X[i] = [a * x + b * y for x, y in zip(ri, rj)]
            X[j] = [c * x + d * y for x, y in zip(ri, rj)]

    def col_op(i, j, a, b, c, d):
        # cols (i, j) <- (a*Ci + b*Cj, c*Ci + d*Cj)
        for X in (M, Q):
            for row in X:
                x, y = row[i], row[j]
                row[i], row[j] = a * x + b * y, c * x + d * y

    def swap_rows(i, j):
        M[i], M[j] = M[j], M[i]
        P[i], P[j] = P[j], P[i]

    def swap_cols(i, j):
        for X in (M, Q):
            for row in X:
                row[i], row[j] = row[j], row[i]

    t = 0
    while t < min(m, n):
        # pivot: smallest nonzero entry in the trailing block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if M[i][j] and (best is None or abs(M[i][j]) < abs(M[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            done = True
            for i in range(t + 1, m):
                if M[i][t]:
                    row_op(t, i, *_bezout_step(M[t][t], M[i][t]))
            for j in range(t + 1, n):
                if M[t][j]:
                    col_op(t, j, *_bezout_step(M[t][t], M[t][j]))
                    done = False
            if done and all(M[i][t] == 0 for i in range(t + 1, m)):
                # divisibility: fold any offending row into row t
                piv = M[t][t]
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                            if M[i][j] % piv), None)
                if bad is None:
                    break
                row_op(t, bad[0], 1, 1, 0, 1)
        if M[t][t] < 0:
            M[t] = [-x for x in M[t]]
            P[t] = [-x for x in P[t]]
        t += 1
    diag = tuple(M[i][i] for i in range(min(m, n)))
    return SmithForm(diag, P, Q)


@dataclass(frozen=True)
class CongruenceKernel:
    """Solutions of A e == 0 (mod N) as a direct sum of cyclic groups.

    ``orders[i]`` is the order of ``generators[i]``; orders run through the
    invariant factors (each divides the next), trivial summands dropped.
    """

    modulus: int
    orders: tuple[int, ...]
    generators: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        out = 1
        for o in self.orders:
            out *= o
        return out


def congruence_kernel(rows: Iterable[Sequence[int]], modulus: int, width: int) -> CongruenceKernel:
    """Solve the homogeneous system rows . e == 0 (mod modulus) over (Z/N)^width.

    With B a basis of span(rows) + N Z^width and P B Q = diag(d), every d_i
    divides N and the substitution e = Q y decouples the system into
    d_i y_i == 0 (mod N), i.e. y_i a multiple of N / d_i.
    """
    if width == 0:
        return CongruenceKernel(modulus, (), ())
    B = hermite_mod_basis(rows, modulus, width)
    snf = smith_normal_form(B)
    orders, gens = [], []
    for i, d in enumerate(snf.diagonal):
        if d == 0 or modulus % d:
            raise ArithmeticError(f"unexpected Smith diagonal {snf.diagonal} for modulus {modulus}")
        if d == 1:
            continue
        step = modulus // d
        gens.append(tuple((step * snf.Q[r][i]) % modulus for r in range(width)))
        orders.append(d)
    return CongruenceKernel(modulus, tuple(orders), tuple(gens))
