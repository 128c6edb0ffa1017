"""Exact integer/rational matrix arithmetic and polynomial quotient rings.

Everything here is exact: integer matrices with arbitrary-precision
entries, fraction-free determinants (Bareiss), rational rank, inverses
that are *proved* integral before they are returned, and arithmetic in
Z[x]/(p) for a monic-up-to-sign integer polynomial p.

Polynomials are tuples of integer coefficients in ascending order with
trailing zeros trimmed; the zero polynomial is the empty tuple.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import NotUnimodular

IntPoly = tuple  # ascending integer coefficients, trailing zeros trimmed


class Matrix:
    """Immutable matrix of Python integers."""

    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[Iterable[int]]):
        rs = tuple(tuple(int(x) for x in row) for row in rows)
        if rs:
            width = len(rs[0])
            if any(len(r) != width for r in rs):
                raise ValueError("ragged rows in matrix")
        self.rows = rs

    @staticmethod
    def identity(n: int) -> "Matrix":
        return Matrix([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @staticmethod
    def zeros(n_rows: int, n_cols: int) -> "Matrix":
        return Matrix([[0] * n_cols for _ in range(n_rows)])

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    @property
    def n_cols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @property
    def is_square(self) -> bool:
        return self.n_rows == self.n_cols

    def row(self, i: int) -> tuple:
        return self.rows[i]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def __getitem__(self, ij: tuple) -> int:
        i, j = ij
        return self.rows[i][j]

    def transpose(self) -> "Matrix":
        return Matrix(zip(*self.rows)) if self.rows else Matrix(())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in r) for r in self.rows)
        return f"Matrix[{body}]"

    def __add__(self, other: "Matrix") -> "Matrix":
        self._shape_check(other)
        return Matrix(
            tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(self.rows, other.rows)
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._shape_check(other)
        return Matrix(
            tuple(a - b for a, b in zip(ra, rb)) for ra, rb in zip(self.rows, other.rows)
        )

    def __neg__(self) -> "Matrix":
        return Matrix(tuple(-a for a in r) for r in self.rows)

    def __mul__(self, other):
        if isinstance(other, int):
            return Matrix(tuple(a * other for a in r) for r in self.rows)
        if isinstance(other, Matrix):
            if self.n_cols != other.n_rows:
                raise ValueError(
                    f"shape mismatch: ({self.n_rows}x{self.n_cols}) * "
                    f"({other.n_rows}x{other.n_cols})"
                )
            cols = other.transpose().rows
            return Matrix(
                tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in self.rows
            )
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def _shape_check(self, other: "Matrix") -> None:
        if self.n_rows != other.n_rows or self.n_cols != other.n_cols:
            raise ValueError(
                f"shape mismatch: ({self.n_rows}x{self.n_cols}) vs "
                f"({other.n_rows}x{other.n_cols})"
            )


def trace(m: Matrix) -> int:
    if not m.is_square:
        raise ValueError("trace requires a square matrix")
    return sum(m.rows[i][i] for i in range(m.n_rows))


def col_sums(m: Matrix) -> tuple:
    """Column sums as a tuple, one entry per column."""
    return tuple(sum(col) for col in zip(*m.rows)) if m.rows else ()


def row_vec_mul(vec: Sequence[int], m: Matrix) -> tuple:
    """Row vector times matrix."""
    if len(vec) != m.n_rows:
        raise ValueError(f"vector length {len(vec)} does not match {m.n_rows} rows")
    return tuple(sum(vec[i] * m.rows[i][j] for i in range(m.n_rows)) for j in range(m.n_cols))


def kron(a: Matrix, b: Matrix) -> Matrix:
    """Kronecker product, left-factor-major block order."""
    rows = []
    for ra in a.rows:
        for rb in b.rows:
            rows.append(tuple(x * y for x in ra for y in rb))
    if not a.rows or not b.rows:
        return Matrix(())
    return Matrix(rows)


def det(m: Matrix) -> int:
    """Exact determinant by fraction-free Bareiss elimination.

    The 0x0 determinant is 1.
    """
    if not m.is_square:
        raise ValueError("determinant requires a square matrix")
    n = m.n_rows
    if n == 0:
        return 1
    a = [list(r) for r in m.rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # Bareiss: this division is exact
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def inv_unimodular(m: Matrix) -> Matrix:
    """Inverse of an integer matrix with det = +-1.

    Raises :class:`NotUnimodular` (carrying the determinant) otherwise.
    The result is computed over the rationals and checked to be integral.
    """
    if not m.is_square:
        raise ValueError("inverse requires a square matrix")
    d = det(m)
    if d not in (1, -1):
        raise NotUnimodular(d)
    n = m.n_rows
    aug = [
        [Fraction(x) for x in m.rows[i]] + [Fraction(int(i == j)) for j in range(n)]
        for i in range(n)
    ]
    for col in range(n):
        pivot_row = next(i for i in range(col, n) if aug[i][col] != 0)
        aug[col], aug[pivot_row] = aug[pivot_row], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col] != 0:
                factor = aug[i][col]
                aug[i] = [x - factor * y for x, y in zip(aug[i], aug[col])]
    inv_rows = []
    for i in range(n):
        row = aug[i][n:]
        assert all(x.denominator == 1 for x in row), "unimodular inverse must be integral"
        inv_rows.append([int(x) for x in row])
    result = Matrix(inv_rows)
    assert result * m == Matrix.identity(n)
    return result


def power(m: Matrix, k: int) -> Matrix:
    """Exact matrix power; negative exponents require a unimodular matrix."""
    if not m.is_square:
        raise ValueError("power requires a square matrix")
    if k < 0:
        return power(inv_unimodular(m), -k)
    result = Matrix.identity(m.n_rows)
    base = m
    while k:
        if k & 1:
            result = result * base
        base = base * base
        k >>= 1
    return result


def rank_Q(m: Matrix) -> int:
    """Rank over the rationals, by exact fraction elimination."""
    rows = [[Fraction(x) for x in r] for r in m.rows]
    n_rows = len(rows)
    n_cols = m.n_cols
    rank = 0
    for col in range(n_cols):
        pivot = next((i for i in range(rank, n_rows) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pv = rows[rank][col]
        rows[rank] = [x / pv for x in rows[rank]]
        for i in range(n_rows):
            if i != rank and rows[i][col] != 0:
                factor = rows[i][col]
                rows[i] = [x - factor * y for x, y in zip(rows[i], rows[rank])]
        rank += 1
        if rank == n_rows:
            break
    return rank


def charpoly(m: Matrix) -> tuple:
    """Coefficients of det(x*I - m), ascending, leading coefficient 1.

    Computed by the exact Faddeev-LeVerrier recursion; all divisions are
    integral and asserted so.
    """
    if not m.is_square:
        raise ValueError("characteristic polynomial requires a square matrix")
    n = m.n_rows
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    if n == 0:
        return (1,)
    ident = Matrix.identity(n)
    mk = ident
    for k in range(1, n + 1):
        amk = m * mk
        t = trace(amk)
        assert t % k == 0, "Faddeev-LeVerrier trace must divide exactly"
        c = -(t // k)
        coeffs[n - k] = c
        mk = amk + c * ident
    # closing identity of the recursion: M_(n+1) = A*M_n + c_0*I = 0
    assert mk == Matrix.zeros(n, n), "Faddeev-LeVerrier closing identity failed"
    return tuple(coeffs)


def rev_charpoly(m: Matrix) -> IntPoly:
    """Coefficients (c_0, ..., c_n) of det(t*m - 1) in ascending order.

    If det(x*I - m) = sum a_k x^k then det(t*m - 1) = sum_j (-1)^n a_{n-j} t^j.
    Postconditions checked: c_0 = (-1)^n and c_n = det(m).
    """
    a = charpoly(m)
    n = m.n_rows
    sign = (-1) ** n
    c = tuple(sign * a[n - j] for j in range(n + 1))
    assert c[0] == sign
    assert c[n] == det(m), "trailing coefficient must equal the determinant"
    return c


def is_non_derogatory(m: Matrix) -> bool:
    """True iff I, m, m^2, ..., m^(n-1) are linearly independent over Q."""
    if not m.is_square:
        raise ValueError("non-derogatory test requires a square matrix")
    n = m.n_rows
    if n == 0:
        return True
    rows = []
    p = Matrix.identity(n)
    for _ in range(n):
        rows.append([x for r in p.rows for x in r])
        p = p * m
    return rank_Q(Matrix(rows)) == n


# -- integer polynomials ---------------------------------------------------


def poly_trim(coeffs: Iterable[int]) -> IntPoly:
    cs = list(coeffs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def poly_deg(p: IntPoly) -> int:
    """Degree; the zero polynomial has degree -1."""
    return len(p) - 1


def poly_add(p: IntPoly, q: IntPoly) -> IntPoly:
    n = max(len(p), len(q))
    return poly_trim(
        (p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)
    )


def poly_neg(p: IntPoly) -> IntPoly:
    return tuple(-c for c in p)


def poly_sub(p: IntPoly, q: IntPoly) -> IntPoly:
    return poly_add(p, poly_neg(q))


def poly_mul(p: IntPoly, q: IntPoly) -> IntPoly:
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return poly_trim(out)


def poly_scale(c: int, p: IntPoly) -> IntPoly:
    return poly_trim(c * a for a in p)


def poly_mod_monic(p: IntPoly, modulus: IntPoly) -> IntPoly:
    """Remainder of p modulo a monic modulus (integer long division)."""
    assert modulus and modulus[-1] == 1, "modulus must be monic"
    d = poly_deg(modulus)
    rem = list(p)
    while len(rem) - 1 >= d and len(rem) > 0:
        lead = rem[-1]
        if lead:
            shift = len(rem) - 1 - d
            for i, c in enumerate(modulus):
                rem[shift + i] -= lead * c
        rem.pop()
    return poly_trim(rem)


def poly_str(p: IntPoly, var: str = "x") -> str:
    if not p:
        return "0"
    parts = []
    for i, c in enumerate(p):
        if c == 0:
            continue
        if i == 0:
            term = str(c)
        else:
            mag = "" if abs(c) == 1 else str(abs(c)) + "*"
            sign = "-" if c < 0 else ""
            pow_part = var if i == 1 else f"{var}^{i}"
            term = f"{sign}{mag}{pow_part}"
        parts.append(term)
    out = parts[0]
    for term in parts[1:]:
        out += f" + {term}" if not term.startswith("-") else f" - {term[1:]}"
    return out


# -- quotient ring Z[x]/(p) ------------------------------------------------


def _normalize_modulus(p: IntPoly) -> IntPoly:
    p = poly_trim(p)
    if poly_deg(p) < 1:
        raise ValueError(f"quotient modulus must have degree >= 1, got {p!r}")
    if abs(p[-1]) != 1:
        raise ValueError(f"quotient modulus must have leading coefficient +-1, got {p!r}")
    if p[-1] == -1:
        p = poly_neg(p)
    return p


@dataclass(frozen=True)
class QuotElem:
    """An element of Z[x]/(modulus); residue degree < deg(modulus)."""

    modulus: IntPoly
    residue: IntPoly

    def _binop_check(self, other: "QuotElem") -> None:
        if not isinstance(other, QuotElem):
            raise TypeError(f"cannot combine QuotElem with {type(other).__name__}")
        if self.modulus != other.modulus:
            raise ValueError(
                f"modulus mismatch: {self.modulus!r} vs {other.modulus!r}"
            )

    def __add__(self, other: "QuotElem") -> "QuotElem":
        self._binop_check(other)
        return QuotElem(self.modulus, poly_add(self.residue, other.residue))

    def __sub__(self, other: "QuotElem") -> "QuotElem":
        self._binop_check(other)
        return QuotElem(self.modulus, poly_sub(self.residue, other.residue))

    def __neg__(self) -> "QuotElem":
        return QuotElem(self.modulus, poly_neg(self.residue))

    def __mul__(self, other):
        if isinstance(other, int):
            return QuotElem(self.modulus, poly_scale(other, self.residue))
        self._binop_check(other)
        return QuotElem(
            self.modulus,
            poly_mod_monic(poly_mul(self.residue, other.residue), self.modulus),
        )

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def is_zero(self) -> bool:
        return not self.residue

    def __repr__(self) -> str:
        return f"({poly_str(self.residue)}) mod ({poly_str(self.modulus)})"


def quot_make(p: IntPoly, residue: Iterable[int]) -> QuotElem:
    """Reduce ``residue`` into Z[x]/(p); ``p`` is normalized to be monic."""
    modulus = _normalize_modulus(tuple(p))
    return QuotElem(modulus, poly_mod_monic(poly_trim(residue), modulus))


def quot_add(x: QuotElem, y: QuotElem) -> QuotElem:
    return x + y


def quot_mul(x: QuotElem, y: QuotElem) -> QuotElem:
    return x * y


def quot_one(p: IntPoly) -> QuotElem:
    return quot_make(p, (1,))


def lambda_pow(p: IntPoly, k: int) -> QuotElem:
    """The class of x^k in Z[x]/(p), for any integer k.

    Negative powers exist iff the constant term of the normalized modulus
    is +-1; then x^-1 = -c_0 * (c_1 + c_2 x + ... + c_n x^(n-1)).
    """
    modulus = _normalize_modulus(tuple(p))
    if k >= 0:
        residue = (0,) * k + (1,)
        return QuotElem(modulus, poly_mod_monic(residue, modulus))
    c0 = modulus[0]
    if c0 not in (1, -1):
        raise ValueError(
            f"x is not invertible modulo {poly_str(modulus)} (constant term {c0})"
        )
    inv = QuotElem(
        modulus,
        poly_mod_monic(poly_trim(-c0 * c for c in modulus[1:]), modulus),
    )
    out = quot_one(modulus)
    for _ in range(-k):
        out = out * inv
    return out
