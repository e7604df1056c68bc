"""Exact integer linear algebra.

Matrices are plain lists of rows of Python ints (or Fractions where noted).
Nothing here touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .errors import AllZeroGenerators, NotInLattice

IntMatrix = list[list[int]]
Vector = tuple[int, ...]


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(row[k] * b[k][j] for k in range(inner)) for j in range(cols)] for row in a]


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def vec_mat(x: Sequence, m: Sequence[Sequence]) -> list:
    """Row vector times matrix."""
    if not m:
        return []
    return [sum(x[k] * m[k][j] for k in range(len(m))) for j in range(len(m[0]))]


def primitive(v: Sequence[int]) -> Vector:
    """Divide an integer vector by the gcd of its entries, keeping its direction."""
    g = 0
    for a in v:
        g = gcd(g, a)
    if g == 0:
        return tuple(v)
    return tuple(a // g for a in v)


def integralize(v: Sequence[Fraction]) -> Vector:
    """Scale a rational vector to the primitive integer vector on the same ray."""
    den = 1
    for a in v:
        den = den * Fraction(a).denominator // gcd(den, Fraction(a).denominator)
    return primitive([int(Fraction(a) * den) for a in v])


def determinant(m: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant."""
    a = [list(row) for row in m]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


def row_echelon(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q. Returns (nonzero rows, pivot columns)."""
    a = [[Fraction(x) for x in row] for row in rows]
    if not a:
        return [], []
    ncols = len(a[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    if not all(isinstance(a, int) for row in rows for a in row):
        return len(row_echelon(rows)[1])
    # fraction-free elimination for integer input
    a = [list(row) for row in rows if any(row)]
    r = 0
    ncols = len(a[0]) if a else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r]
        for i in range(r + 1, len(a)):
            if a[i][c]:
                f = a[i][c]
                a[i] = [p[c] * x - f * y for x, y in zip(a[i], p)]
        r += 1
        if r == len(a):
            break
    return r


def rational_kernel(rows: Sequence[Sequence], ncols: int) -> list[list[Fraction]]:
    """Basis of {x : rows . x = 0} over Q."""
    red, pivots = row_echelon(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(red, pivots):
            x[p] = -row[f]
        basis.append(x)
    return basis


def adjugate(m: Sequence[Sequence[int]]) -> IntMatrix:
    """Integer adjugate: adj(m) . m = det(m) I."""
    n = len(m)
    if n == 1:
        return [[1]]
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1 :] for k, row in enumerate(map(list, m)) if k != i]
            out[j][i] = (-1) ** (i + j) * determinant(minor)
    return out


def inverse(m: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(m)
    aug = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    red, pivots = row_echelon(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red]


def smith_normal_form(m: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return (U, D, V) with U*m*V == D, D in Smith normal form, U and V unimodular.

    Pivots are the smallest nonzero entry by absolute value, ties broken by
    (row, col), so the transforms are deterministic.
    """
    a = [list(map(int, row)) for row in m]
    nr = len(a)
    nc = len(a[0]) if nr else 0
    u = identity(nr)
    v = identity(nc)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    for t in range(min(nr, nc)):
        while True:
            best = None
            for i in range(t, nr):
                for j in range(t, nc):
                    if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return u, a, v
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = a[t][t]
            clean = True
            for i in range(t + 1, nr):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[t])]
                clean = clean and a[i][t] == 0
            for j in range(t + 1, nc):
                q = a[t][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                    for row in v:
                        row[j] -= q * row[t]
                clean = clean and a[t][j] == 0
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, nr) for j in range(t + 1, nc) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[bad])]
            u[t] = [x + y for x, y in zip(u[t], u[bad])]
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return u, a, v


def snf_diagonal(d: IntMatrix) -> list[int]:
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0)) if d[i][i]]


def hermite_rows(m: Sequence[Sequence[int]]) -> IntMatrix:
    """Row-style Hermite normal form; returns only the nonzero rows.

    The result is the canonical basis of the row lattice: echelon, positive
    pivots, entries above a pivot reduced into [0, pivot).
    """
    a = [list(map(int, row)) for row in m]
    if not a:
        return []
    nc = len(a[0])
    r = 0
    for c in range(nc):
        # gcd-reduce column c among rows r..end
        while True:
            nz = [i for i in range(r, len(a)) if a[i][c]]
            if not nz:
                break
            piv = min(nz, key=lambda i: (abs(a[i][c]), i))
            a[r], a[piv] = a[piv], a[r]
            done = True
            for i in range(r + 1, len(a)):
                if a[i][c]:
                    q = a[i][c] // a[r][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    done = done and a[i][c] == 0
            if done:
                break
        if r < len(a) and a[r][c]:
            if a[r][c] < 0:
                a[r] = [-x for x in a[r]]
            for i in range(r):
                q = a[i][c] // a[r][c]
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
            r += 1
            if r == len(a):
                break
    return [row for row in a[:r] if any(row)]


@dataclass(frozen=True)
class Reembedding:
    """Identification of the group ZP inside Z^n with Z^r.

    ``basis`` is the Hermite basis of ZP; ``backward(y) = y * basis`` and
    ``forward`` inverts it on ZP.
    """

    original_rank: int
    reduced_rank: int
    basis: tuple[Vector, ...]
    index_note: int

    @property
    def is_identity(self) -> bool:
        return self.basis == tuple(tuple(r) for r in identity(self.original_rank))

    def backward(self, y: Sequence[int]) -> Vector:
        if len(y) != self.reduced_rank:
            raise ValueError(f"expected a vector of length {self.reduced_rank}")
        return tuple(vec_mat(list(y), [list(b) for b in self.basis])) if self.basis else ()

    def forward(self, x: Sequence[int]) -> Vector:
        """Coordinates of x in the reduced lattice; raises NotInLattice off ZP."""
        if len(x) != self.original_rank:
            raise ValueError(f"expected a vector of length {self.original_rank}")
        coeffs: list[int] = []
        rest = list(x)
        for row in self.basis:
            c = next(j for j, a in enumerate(row) if a)
            q, rem = divmod(rest[c], row[c])
            if rem:
                raise NotInLattice(tuple(x))
            coeffs.append(q)
            rest = [a - q * b for a, b in zip(rest, row)]
        if any(rest):
            raise NotInLattice(tuple(x))
        return tuple(coeffs)

    def contains(self, x: Sequence[int]) -> bool:
        try:
            self.forward(x)
        except NotInLattice:
            return False
        return True


def reembed_full_rank(gens: Sequence[Sequence[int]]) -> tuple[Reembedding, list[Vector]]:
    """Replace the ambient lattice by the group generated by ``gens``."""
    gens = [tuple(int(a) for a in g) for g in gens]
    if not gens or not any(any(g) for g in gens):
        raise AllZeroGenerators("every generator is the zero vector")
    n = len(gens[0])
    basis = hermite_rows(gens)
    _, d, _ = smith_normal_form(gens)
    index = 1
    for a in snf_diagonal(d):
        index *= a
    emb = Reembedding(n, len(basis), tuple(tuple(b) for b in basis), index)
    return emb, [emb.forward(g) for g in gens]
