"""Exact arithmetic in cyclotomic fields and exact dense linear algebra.

A ``Cyclotomic`` is an element of Q(zeta_N) held in the power basis
1, zeta, ..., zeta^(phi(N)-1), reduced modulo the N-th cyclotomic
polynomial.  Coefficients are ``fractions.Fraction`` so Gaussian
elimination never loses exactness.  Values of different orders are
lifted to the lcm order before combining.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache

from .errors import (
    DivisionByZeroError,
    MalformedRationalError,
    SingularMatrixError,
)

__all__ = [
    "Cyclotomic",
    "ExactMatrix",
    "zeta",
    "rational",
    "cyc_normalize",
    "linear_solve",
    "matrix_rank",
    "nullspace",
    "solve",
    "inverse",
]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, low degree first."""
    # x^n - 1 = prod_{d | n} Phi_d; divide out the proper divisors.
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            q = cyclotomic_polynomial(d)
            poly = _int_poly_div(poly, list(q))
    return tuple(poly)


def _int_poly_div(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1] // den[-1]
        out[k] = c
        for j, dj in enumerate(den):
            num[k + j] -= c * dj
    assert all(v == 0 for v in num), "non-exact polynomial division"
    return out


@lru_cache(maxsize=None)
def _reduction_table(n: int) -> tuple[tuple[Fraction, ...], ...]:
    """Row k: zeta_n^k expressed in the power basis (degree < phi(n))."""
    phi = len(cyclotomic_polynomial(n)) - 1
    rows: list[tuple[Fraction, ...]] = []
    for k in range(phi):
        rows.append(tuple(Fraction(1) if j == k else Fraction(0) for j in range(phi)))
    top = cyclotomic_polynomial(n)
    lead = top[-1]
    assert lead == 1
    for k in range(phi, 2 * n + 1):
        # zeta^k = zeta * zeta^(k-1); shift then reduce the overflow term.
        prev = rows[k - 1]
        shifted = [Fraction(0)] + list(prev[:-1])
        over = prev[-1]
        if over:
            for j in range(phi):
                shifted[j] -= over * top[j]
        rows.append(tuple(shifted))
    return tuple(rows)


def _phi_degree(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


class Cyclotomic:
    """An exact element of Q(zeta_order) in canonical power-basis form."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: dict[int, Fraction], *, _reduced: bool = False):
        if order < 1:
            raise MalformedRationalError(f"cyclotomic order must be >= 1, got {order}")
        self.order = order
        if _reduced:
            self.coeffs = coeffs
        else:
            self.coeffs = _reduce(order, coeffs)

    # -- constructors ------------------------------------------------

    @staticmethod
    def from_terms(order: int, terms) -> "Cyclotomic":
        """Build from (exponent, numerator, denominator) triples."""
        coeffs: dict[int, Fraction] = {}
        for exp, num, den in terms:
            if den == 0:
                raise MalformedRationalError(
                    f"zero denominator in term (exp={exp}, num={num}, den=0)"
                )
            coeffs[exp % order] = coeffs.get(exp % order, Fraction(0)) + Fraction(num, den)
        return Cyclotomic(order, coeffs)

    @staticmethod
    def zero(order: int = 1) -> "Cyclotomic":
        return Cyclotomic(order, {}, _reduced=True)

    @staticmethod
    def one(order: int = 1) -> "Cyclotomic":
        return Cyclotomic(order, {0: Fraction(1)})

    # -- canonical form ----------------------------------------------

    def lift(self, order: int) -> "Cyclotomic":
        """Rewrite in Q(zeta_order); order must be a multiple of self.order."""
        if order == self.order:
            return self
        if order % self.order:
            raise ValueError(f"cannot lift order {self.order} into order {order}")
        k = order // self.order
        return Cyclotomic(order, {e * k: q for e, q in self.coeffs.items()})

    def terms(self):
        """Canonical serialization: sorted (exponent, numerator, denominator)."""
        return [(e, q.numerator, q.denominator) for e, q in sorted(self.coeffs.items())]

    # -- predicates ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_rational(self) -> bool:
        return all(e == 0 for e in self.coeffs)

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs.get(0, Fraction(0))

    # -- arithmetic ---------------------------------------------------

    def _pair(self, other):
        if isinstance(other, (int, Fraction)):
            other = Cyclotomic(1, {0: Fraction(other)})
        if not isinstance(other, Cyclotomic):
            return None, None
        n = math.lcm(self.order, other.order)
        return self.lift(n), other.lift(n)

    def __add__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        coeffs = dict(a.coeffs)
        for e, q in b.coeffs.items():
            coeffs[e] = coeffs.get(e, Fraction(0)) + q
        return Cyclotomic(a.order, {e: q for e, q in coeffs.items() if q}, _reduced=True)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.order, {e: -q for e, q in self.coeffs.items()}, _reduced=True)

    def __sub__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        if not a.coeffs or not b.coeffs:
            return Cyclotomic.zero(a.order)
        prod: dict[int, Fraction] = {}
        for e1, q1 in a.coeffs.items():
            for e2, q2 in b.coeffs.items():
                e = e1 + e2
                prod[e] = prod.get(e, Fraction(0)) + q1 * q2
        return Cyclotomic(a.order, prod)

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        if self.is_zero():
            raise DivisionByZeroError("inverse of zero cyclotomic")
        if self.is_rational():
            return Cyclotomic(self.order, {0: 1 / self.coeffs[0]}, _reduced=True)
        n = self.order
        phi = _phi_degree(n)
        # Solve (self * x) = 1 as a rational linear system in x's coordinates.
        cols = []
        for k in range(phi):
            prod = self * Cyclotomic(n, {k: Fraction(1)}, _reduced=True)
            cols.append([prod.coeffs.get(j, Fraction(0)) for j in range(phi)])
        rhs = [Fraction(1 if j == 0 else 0) for j in range(phi)]
        x = _rational_solve(cols, rhs, phi)
        if x is None:
            raise DivisionByZeroError("zero divisor encountered in cyclotomic inverse")
        return Cyclotomic(n, {k: x[k] for k in range(phi) if x[k]}, _reduced=True)

    def __truediv__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return a * b.inverse()

    def __rtruediv__(self, other):
        return Cyclotomic(1, {0: Fraction(other)}) / self

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = Cyclotomic.one(self.order)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "Cyclotomic":
        """The ring automorphism zeta -> zeta^(-1) (complex conjugation)."""
        n = self.order
        return Cyclotomic(n, {(n - e) % n: q for e, q in self.coeffs.items()})

    def galois(self, a: int) -> "Cyclotomic":
        """The automorphism zeta -> zeta^a for gcd(a, order) = 1."""
        n = self.order
        if math.gcd(a, n) != 1:
            raise ValueError(f"{a} is not coprime to {n}")
        return Cyclotomic(n, {(e * a) % n: q for e, q in self.coeffs.items()})

    # -- comparisons / conversions -------------------------------------

    def __eq__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return a.coeffs == b.coeffs

    def __hash__(self):
        # Hash via a minimal stable invariant: the complex embedding rounded.
        z = self.embed()
        return hash((round(z.real, 9), round(z.imag, 9)))

    def embed(self) -> complex:
        """Numerical embedding zeta_N -> exp(2 pi i / N)."""
        z = 0j
        for e, q in self.coeffs.items():
            z += float(q) * cmath.exp(2j * cmath.pi * e / self.order)
        return z

    def __repr__(self):
        if self.is_zero():
            return "0"
        bits = []
        for e, q in sorted(self.coeffs.items()):
            if e == 0:
                bits.append(f"{q}")
            elif q == 1:
                bits.append(f"z{self.order}^{e}")
            else:
                bits.append(f"{q}*z{self.order}^{e}")
        return " + ".join(bits)


def _reduce(order: int, coeffs: dict[int, Fraction]) -> dict[int, Fraction]:
    phi = _phi_degree(order)
    table = _reduction_table(order)
    out = [Fraction(0)] * phi
    for e, q in coeffs.items():
        if not q:
            continue
        row = table[e % order]
        for j in range(phi):
            if row[j]:
                out[j] += q * row[j]
    return {j: out[j] for j in range(phi) if out[j]}


def _rational_solve(cols, rhs, n):
    """Solve sum_k x_k * cols[k] = rhs over Q; returns None if singular."""
    # Augmented system in row-echelon form.
    mat = [[cols[k][j] for k in range(n)] + [rhs[j]] for j in range(n)]
    row = 0
    pivots = []
    for col in range(n):
        p = next((r for r in range(row, n) if mat[r][col]), None)
        if p is None:
            continue
        mat[row], mat[p] = mat[p], mat[row]
        inv = 1 / mat[row][col]
        mat[row] = [v * inv for v in mat[row]]
        for r in range(n):
            if r != row and mat[r][col]:
                f = mat[r][col]
                mat[r] = [v - f * w for v, w in zip(mat[r], mat[row])]
        pivots.append(col)
        row += 1
        if row == n:
            break
    if row < n and any(all(mat[r][c] == 0 for c in range(n)) and mat[r][n] for r in range(n)):
        return None
    if row < n:
        return None
    x = [Fraction(0)] * n
    for r, c in enumerate(pivots):
        x[c] = mat[r][n]
    return x


def zeta(order: int, exp: int = 1) -> Cyclotomic:
    """The root of unity zeta_order^exp."""
    return Cyclotomic(order, {exp % order: Fraction(1)})


def rational(num, den=1) -> Cyclotomic:
    if den == 0:
        raise MalformedRationalError(f"zero denominator in rational {num}/0")
    return Cyclotomic(1, {0: Fraction(num, den)})


def cyc_normalize(order: int, terms) -> Cyclotomic:
    """Canonicalize a raw exponent/rational term list.  Idempotent."""
    return Cyclotomic.from_terms(order, terms)


C0 = Cyclotomic.zero()
C1 = Cyclotomic.one()


class ExactMatrix:
    """Dense matrix over Cyclotomic with exact Gaussian elimination."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data=None):
        self.rows = rows
        self.cols = cols
        if data is None:
            self.data = [[C0 for _ in range(cols)] for _ in range(rows)]
        else:
            if len(data) != rows or any(len(r) != cols for r in data):
                raise ValueError("entry grid does not match declared shape")
            self.data = [list(r) for r in data]

    @staticmethod
    def identity(n: int) -> "ExactMatrix":
        m = ExactMatrix(n, n)
        for i in range(n):
            m.data[i][i] = C1
        return m

    @staticmethod
    def zeros(rows: int, cols: int) -> "ExactMatrix":
        return ExactMatrix(rows, cols)

    def copy(self) -> "ExactMatrix":
        return ExactMatrix(self.rows, self.cols, self.data)

    def __getitem__(self, ij):
        return self.data[ij[0]][ij[1]]

    def __setitem__(self, ij, value):
        self.data[ij[0]][ij[1]] = value

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            return False
        return all(
            self.data[i][j] == other.data[i][j]
            for i in range(self.rows)
            for j in range(self.cols)
        )

    def __add__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in matrix addition")
        return ExactMatrix(
            self.rows,
            self.cols,
            [
                [self.data[i][j] + other.data[i][j] for j in range(self.cols)]
                for i in range(self.rows)
            ],
        )

    def __sub__(self, other):
        return self + other.scale(rational(-1))

    def scale(self, s: Cyclotomic) -> "ExactMatrix":
        return ExactMatrix(
            self.rows,
            self.cols,
            [[self.data[i][j] * s for j in range(self.cols)] for i in range(self.rows)],
        )

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError(
                f"shape mismatch in matrix product: {self.rows}x{self.cols} @ "
                f"{other.rows}x{other.cols}"
            )
        out = ExactMatrix(self.rows, other.cols)
        for i in range(self.rows):
            row = self.data[i]
            for k in range(self.cols):
                a = row[k]
                if a.is_zero():
                    continue
                brow = other.data[k]
                orow = out.data[i]
                for j in range(other.cols):
                    b = brow[j]
                    if not b.is_zero():
                        orow[j] = orow[j] + a * b
        return out

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(
            self.cols, self.rows,
            [[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)],
        )

    def is_zero(self) -> bool:
        return all(v.is_zero() for row in self.data for v in row)

    def embed(self):
        """Complex numpy array (import deferred so core stays numpy-free)."""
        import numpy as np

        return np.array(
            [[self.data[i][j].embed() for j in range(self.cols)] for i in range(self.rows)]
        )

    def __repr__(self):
        return f"ExactMatrix({self.rows}x{self.cols})"


def _echelon(m: ExactMatrix):
    """Row-reduce a copy; returns (echelon data, pivot column list)."""
    data = [list(row) for row in m.data]
    pivots = []
    row = 0
    for col in range(m.cols):
        p = next((r for r in range(row, m.rows) if not data[r][col].is_zero()), None)
        if p is None:
            continue
        data[row], data[p] = data[p], data[row]
        inv = data[row][col].inverse()
        data[row] = [v * inv for v in data[row]]
        for r in range(m.rows):
            if r != row and not data[r][col].is_zero():
                f = data[r][col]
                data[r] = [v - f * w for v, w in zip(data[r], data[row])]
        pivots.append(col)
        row += 1
        if row == m.rows:
            break
    return data, pivots


def matrix_rank(m: ExactMatrix) -> int:
    return len(_echelon(m)[1])


def nullspace(m: ExactMatrix) -> list[list[Cyclotomic]]:
    """Basis vectors v (length cols) with M v = 0, exactly."""
    data, pivots = _echelon(m)
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [C0] * m.cols
        v[fc] = C1
        for r, pc in enumerate(pivots):
            v[pc] = -data[r][fc]
        basis.append(v)
    return basis


def solve(m: ExactMatrix, rhs: list[Cyclotomic]) -> list[Cyclotomic]:
    """One exact solution of M x = rhs; raises if inconsistent."""
    aug = ExactMatrix(m.rows, m.cols + 1, [list(m.data[i]) + [rhs[i]] for i in range(m.rows)])
    data, pivots = _echelon(aug)
    if m.cols in pivots:
        raise SingularMatrixError("inconsistent linear system")
    x = [C0] * m.cols
    for r, pc in enumerate(pivots):
        x[pc] = data[r][m.cols]
    return x

def inverse(m: ExactMatrix) -> "ExactMatrix":
    if m.rows != m.cols:
        raise SingularMatrixError("inverse of a non-square matrix")
    n = m.rows
    aug = ExactMatrix(n, 2 * n, [list(m.data[i]) + list(ExactMatrix.identity(n).data[i]) for i in range(n)])
    data, pivots = _echelon(aug)
    if pivots[:n] != list(range(n)):
        raise SingularMatrixError("matrix is singular")
    return ExactMatrix(n, n, [row[n:] for row in data[:n]])


def linear_solve(m: ExactMatrix, mode: str, rhs=None):
    """Spec-shaped front end: mode in {rank, nullspace, solve, inverse}."""
    if mode == "rank":
        return matrix_rank(m)
    if mode == "nullspace":
        return nullspace(m)
    if mode == "solve":
        if rhs is None:
            raise ValueError("solve mode needs rhs")
        return solve(m, rhs)
    if mode == "inverse":
        return inverse(m)
    raise ValueError(f"unknown mode {mode!r}")
