#!/usr/bin/env python3
"""
Cyclotomic Linear Algebra
Exact arithmetic in cyclotomic fields Q(zeta_N) and dense linear algebra over them
"""

import logging
import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from sympy import Matrix, Poly, QQ, Rational, divisors, symbols

logger = logging.getLogger(__name__)

# Constants
_X = symbols('x')
TEXT_FORM_PATTERN = re.compile(r'^\s*(\d+):\[(.*)\]\s*$')


# Exception hierarchy
class CyclotomicError(ArithmeticError):
    """Base exception for cyclotomic arithmetic"""
    pass


class DivisionByZero(CyclotomicError, ZeroDivisionError):
    """Division by the zero element of Q(zeta_N)"""
    pass


class IncompatibleOrders(CyclotomicError):
    """Root orders that cannot be embedded into each other"""
    pass


class ShapeError(CyclotomicError, ValueError):
    """Matrix dimensions do not fit the requested operation"""
    pass


@lru_cache(maxsize=None)
def _phi_poly(order: int) -> Poly:
    """Phi_N by exact division of x^N - 1 by Phi_d for the proper divisors d"""
    poly = Poly(_X ** order - 1, _X, domain=QQ)
    for d in divisors(order)[:-1]:
        poly = poly.exquo(_phi_poly(d))
    return poly


@lru_cache(maxsize=None)
def cyclotomic_coeffs(order: int) -> Tuple[int, ...]:
    """Coefficients of the N-th cyclotomic polynomial, lowest degree first"""
    if order < 1:
        raise ValueError(f"Root order must be positive, got {order}")
    return tuple(int(c) for c in reversed(_phi_poly(order).all_coeffs()))


def field_degree(order: int) -> int:
    return len(cyclotomic_coeffs(order)) - 1


def _reduce(coeffs: List[Fraction], order: int) -> Tuple[Fraction, ...]:
    """Reduce a coefficient list modulo the monic Phi_N"""
    phi = cyclotomic_coeffs(order)
    deg = len(phi) - 1
    c = list(coeffs)
    for i in range(len(c) - 1, deg - 1, -1):
        top = c[i]
        if top:
            base = i - deg
            for j in range(deg):
                if phi[j]:
                    c[base + j] -= top * phi[j]
            c[i] = Fraction(0)
    if len(c) < deg:
        c.extend([Fraction(0)] * (deg - len(c)))
    return tuple(c[:deg])


class CycloNum:
    """
    Exact element of Q(zeta_N) in the power basis 1, z, ..., z^(phi(N)-1).

    Values are immutable. Elements of different orders are lifted to the lcm
    of the orders before arithmetic or comparison. Hashes are taken on the
    coordinates in the smallest cyclotomic field holding the value, so they
    agree whenever values compare equal.
    """

    __slots__ = ('order', 'coeffs')

    def __init__(self, order: int, coeffs: Sequence[Union[int, Fraction]] = ()):
        if order < 1:
            raise ValueError(f"Root order must be positive, got {order}")
        self.order = order
        self.coeffs = _reduce([Fraction(c) for c in coeffs], order)

    @classmethod
    def _raw(cls, order: int, coeffs: Tuple[Fraction, ...]) -> 'CycloNum':
        obj = cls.__new__(cls)
        obj.order = order
        obj.coeffs = coeffs
        return obj

    @classmethod
    def zero(cls, order: int) -> 'CycloNum':
        return cls._raw(order, (Fraction(0),) * field_degree(order))

    @classmethod
    def one(cls, order: int) -> 'CycloNum':
        return cls.rational(order, 1)

    @classmethod
    def rational(cls, order: int, value: Union[int, Fraction]) -> 'CycloNum':
        deg = field_degree(order)
        return cls._raw(order, (Fraction(value),) + (Fraction(0),) * (deg - 1))

    # Predicates

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def __bool__(self) -> bool:
        return not self.is_zero()

    # Coercion helpers

    def _coerce(self, other) -> Optional['CycloNum']:
        if isinstance(other, CycloNum):
            return other
        if isinstance(other, (int, Fraction)):
            return CycloNum.rational(self.order, other)
        return None

    def _lift_pair(self, other: 'CycloNum') -> Tuple['CycloNum', 'CycloNum']:
        if self.order == other.order:
            return self, other
        common = math.lcm(self.order, other.order)
        return embed(self, common), embed(other, common)

    # Field operations

    def __add__(self, other) -> 'CycloNum':
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self._lift_pair(other)
        return CycloNum._raw(a.order, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> 'CycloNum':
        return CycloNum._raw(self.order, tuple(-x for x in self.coeffs))

    def __sub__(self, other) -> 'CycloNum':
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self._lift_pair(other)
        return CycloNum._raw(a.order, tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))

    def __rsub__(self, other) -> 'CycloNum':
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other) -> 'CycloNum':
        if isinstance(other, (int, Fraction)):
            return CycloNum._raw(self.order, tuple(x * other for x in self.coeffs))
        if not isinstance(other, CycloNum):
            return NotImplemented
        a, b = self._lift_pair(other)
        if a.is_zero() or b.is_zero():
            return CycloNum.zero(a.order)
        if b.is_rational():
            s = b.coeffs[0]
            return CycloNum._raw(a.order, tuple(x * s for x in a.coeffs))
        if a.is_rational():
            s = a.coeffs[0]
            return CycloNum._raw(a.order, tuple(x * s for x in b.coeffs))
        product = [Fraction(0)] * (len(a.coeffs) + len(b.coeffs) - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        product[i + j] += x * y
        return CycloNum._raw(a.order, _reduce(product, a.order))

    __rmul__ = __mul__

    def inverse(self) -> 'CycloNum':
        """Multiplicative inverse via polynomial inversion modulo Phi_N"""
        if self.is_zero():
            raise DivisionByZero(f"Cannot invert zero in Q(zeta_{self.order})")
        if self.is_rational():
            return CycloNum.rational(self.order, 1 / self.coeffs[0])
        poly = Poly([Rational(c.numerator, c.denominator) for c in reversed(self.coeffs)], _X, domain=QQ)
        inv = poly.invert(_phi_poly(self.order))
        coeffs = [Fraction(int(r.p), int(r.q)) for r in reversed(inv.all_coeffs())]
        return CycloNum(self.order, coeffs)

    def __truediv__(self, other) -> 'CycloNum':
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self._lift_pair(other)
        return a * b.inverse()

    def __rtruediv__(self, other) -> 'CycloNum':
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, exponent: int) -> 'CycloNum':
        base = self if exponent >= 0 else self.inverse()
        acc = CycloNum.one(self.order)
        for bit in bin(abs(exponent))[2:]:
            acc = acc * acc
            if bit == '1':
                acc = acc * base
        return acc

    # Comparison and text form

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self._lift_pair(other)
        return a.coeffs == b.coeffs

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash(_canonical_form(self.order, self.coeffs))

    def __str__(self) -> str:
        return format_cyclonum(self)

    def __repr__(self) -> str:
        return f"CycloNum({format_cyclonum(self)})"


@lru_cache(maxsize=4096)
def _canonical_form(order: int, coeffs: Tuple[Fraction, ...]) -> Tuple[int, Tuple[Fraction, ...]]:
    """Smallest d | order with the value in Q(zeta_d), and its coordinates there"""
    target = Matrix([Rational(c.numerator, c.denominator) for c in coeffs])
    for d in divisors(order):
        columns = [embed(cyclo_root(d, j), order).coeffs for j in range(field_degree(d))]
        basis = Matrix([[Rational(col[i].numerator, col[i].denominator) for col in columns]
                        for i in range(len(coeffs))])
        try:
            solution, _ = basis.gauss_jordan_solve(target)
        except ValueError:
            continue
        return d, tuple(Fraction(int(v.p), int(v.q)) for v in solution)
    return order, coeffs


def format_cyclonum(value: CycloNum) -> str:
    """Canonical text form N:[c0,c1,...] with rationals in lowest terms"""
    return f"{value.order}:[{','.join(str(c) for c in value.coeffs)}]"


def parse_cyclonum(text: str) -> CycloNum:
    """Parse the canonical text form"""
    match = TEXT_FORM_PATTERN.match(text)
    if not match:
        raise ValueError(f"Invalid cyclotomic text form: {text!r}")
    order = int(match.group(1))
    body = match.group(2).strip()
    coeffs = [Fraction(part.strip()) for part in body.split(',')] if body else []
    if len(coeffs) != field_degree(order):
        raise ValueError(f"Expected {field_degree(order)} coefficients for order {order}, got {len(coeffs)}")
    return CycloNum(order, coeffs)


@lru_cache(maxsize=4096)
def cyclo_root(order: int, k: int) -> CycloNum:
    """zeta_N^k in reduced form"""
    if order < 1:
        raise ValueError(f"Root order must be positive, got {order}")
    k %= order
    coeffs = [0] * (k + 1)
    coeffs[k] = 1
    return CycloNum(order, coeffs)


_ARITH_OPS: Dict[str, Callable[[CycloNum, CycloNum], CycloNum]] = {
    'add': lambda a, b: a + b,
    'sub': lambda a, b: a - b,
    'mul': lambda a, b: a * b,
    'div': lambda a, b: a / b,
}


def cyclo_arith(a: CycloNum, b: CycloNum, op: str) -> CycloNum:
    handler = _ARITH_OPS.get(op)
    if handler is None:
        raise ValueError(f"Unknown operation: {op}")
    return handler(a, b)


def embed(a: CycloNum, order: int) -> CycloNum:
    """Image of a under Q(zeta_N) -> Q(zeta_M), zeta_N -> zeta_M^(M/N)"""
    if order % a.order:
        raise IncompatibleOrders(f"Order {a.order} does not divide {order}")
    if order == a.order:
        return a
    step = order // a.order
    coeffs = [Fraction(0)] * ((len(a.coeffs) - 1) * step + 1)
    for i, c in enumerate(a.coeffs):
        coeffs[i * step] = c
    return CycloNum(order, coeffs)


def as_cyclonum(value, order: int) -> CycloNum:
    """Coerce an int, Fraction or CycloNum into Q(zeta_order)"""
    if isinstance(value, CycloNum):
        if value.order == order:
            return value
        return embed(value, order)
    return CycloNum.rational(order, value)


class CycloMatrix:
    """Dense matrix over Q(zeta_N) backed by an object-dtype numpy grid"""

    __slots__ = ('order', 'entries')

    def __init__(self, rows: Sequence[Sequence], order: Optional[int] = None):
        rows = [list(row) for row in rows]
        if not rows or not rows[0]:
            raise ShapeError("Matrix dimensions must be positive")
        width = len(rows[0])
        if any(len(row) != width for row in rows):
            raise ShapeError("Ragged rows")
        if order is None:
            order = 1
            for row in rows:
                for value in row:
                    if isinstance(value, CycloNum):
                        order = math.lcm(order, value.order)
        grid = np.empty((len(rows), width), dtype=object)
        for i, row in enumerate(rows):
            for j, value in enumerate(row):
                grid[i, j] = as_cyclonum(value, order)
        self.order = order
        self.entries = grid

    @classmethod
    def _wrap(cls, grid: np.ndarray, order: int) -> 'CycloMatrix':
        obj = cls.__new__(cls)
        obj.order = order
        obj.entries = grid
        return obj

    @classmethod
    def zeros(cls, rows: int, cols: int, order: int) -> 'CycloMatrix':
        grid = np.empty((rows, cols), dtype=object)
        zero = CycloNum.zero(order)
        for i in range(rows):
            for j in range(cols):
                grid[i, j] = zero
        return cls._wrap(grid, order)

    @classmethod
    def identity(cls, size: int, order: int) -> 'CycloMatrix':
        matrix = cls.zeros(size, size, order)
        one = CycloNum.one(order)
        for i in range(size):
            matrix.entries[i, i] = one
        return matrix

    @property
    def shape(self) -> Tuple[int, int]:
        return self.entries.shape

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    def __getitem__(self, index: Tuple[int, int]) -> CycloNum:
        return self.entries[index]

    def to_rows(self) -> List[List[CycloNum]]:
        return [list(row) for row in self.entries]

    def with_order(self, order: int) -> 'CycloMatrix':
        if order == self.order:
            return self
        grid = np.empty(self.shape, dtype=object)
        for index, value in np.ndenumerate(self.entries):
            grid[index] = embed(value, order)
        return CycloMatrix._wrap(grid, order)

    def _aligned(self, other: 'CycloMatrix') -> Tuple['CycloMatrix', 'CycloMatrix']:
        if self.order == other.order:
            return self, other
        common = math.lcm(self.order, other.order)
        return self.with_order(common), other.with_order(common)

    def __add__(self, other: 'CycloMatrix') -> 'CycloMatrix':
        if self.shape != other.shape:
            raise ShapeError(f"Cannot add {self.shape} and {other.shape}")
        a, b = self._aligned(other)
        return CycloMatrix._wrap(a.entries + b.entries, a.order)

    def __sub__(self, other: 'CycloMatrix') -> 'CycloMatrix':
        if self.shape != other.shape:
            raise ShapeError(f"Cannot subtract {self.shape} and {other.shape}")
        a, b = self._aligned(other)
        return CycloMatrix._wrap(a.entries - b.entries, a.order)

    def __neg__(self) -> 'CycloMatrix':
        return CycloMatrix._wrap(-self.entries, self.order)

    def __matmul__(self, other: 'CycloMatrix') -> 'CycloMatrix':
        if self.cols != other.rows:
            raise ShapeError(f"Cannot multiply {self.shape} by {other.shape}")
        a, b = self._aligned(other)
        return CycloMatrix._wrap(a.entries @ b.entries, a.order)

    def scale(self, scalar) -> 'CycloMatrix':
        if isinstance(scalar, CycloNum) and scalar.order != self.order:
            common = math.lcm(scalar.order, self.order)
            return self.with_order(common).scale(embed(scalar, common))
        s = as_cyclonum(scalar, self.order)
        grid = np.empty(self.shape, dtype=object)
        for index, value in np.ndenumerate(self.entries):
            grid[index] = value * s
        return CycloMatrix._wrap(grid, self.order)

    def kron(self, other: 'CycloMatrix') -> 'CycloMatrix':
        a, b = self._aligned(other)
        (r1, c1), (r2, c2) = a.shape, b.shape
        grid = np.multiply.outer(a.entries, b.entries).transpose(0, 2, 1, 3).reshape(r1 * r2, c1 * c2)
        return CycloMatrix._wrap(grid, a.order)

    def transpose(self) -> 'CycloMatrix':
        return CycloMatrix._wrap(self.entries.T.copy(), self.order)

    def trace(self) -> CycloNum:
        if self.rows != self.cols:
            raise ShapeError("Trace requires a square matrix")
        total = CycloNum.zero(self.order)
        for i in range(self.rows):
            total = total + self.entries[i, i]
        return total

    def power(self, exponent: int) -> 'CycloMatrix':
        if exponent < 0:
            return self.inverse().power(-exponent)
        result = CycloMatrix.identity(self.rows, self.order)
        for bit in bin(exponent)[2:]:
            result = result @ result
            if bit == '1':
                result = result @ self
        return result

    def inverse(self) -> 'CycloMatrix':
        if self.rows != self.cols:
            raise ShapeError("Inverse requires a square matrix")
        n = self.rows
        identity = CycloMatrix.identity(n, self.order).to_rows()
        augmented = [row + identity[i] for i, row in enumerate(self.to_rows())]
        reduced, pivots, _ = _row_reduce(augmented, n, self.order)
        if len(pivots) < n:
            raise DivisionByZero("Matrix is singular")
        return CycloMatrix([row[n:] for row in reduced[:n]], self.order)

    def apply(self, vector: Sequence[CycloNum]) -> List[CycloNum]:
        result = []
        for row in self.entries:
            total = CycloNum.zero(self.order)
            for value, x in zip(row, vector):
                if value and x:
                    total = total + value * x
            result.append(total)
        return result

    def is_zero(self) -> bool:
        return all(value.is_zero() for value in self.entries.flat)

    def nonzero_entries(self) -> List[Tuple[int, int]]:
        return [index for index, value in np.ndenumerate(self.entries) if not value.is_zero()]

    def __eq__(self, other) -> bool:
        if not isinstance(other, CycloMatrix):
            return NotImplemented
        if self.shape != other.shape:
            return False
        return all(x == y for x, y in zip(self.entries.flat, other.entries.flat))

    __hash__ = None

    def __repr__(self) -> str:
        body = '; '.join(' '.join(str(v) for v in row) for row in self.entries)
        return f"CycloMatrix({self.rows}x{self.cols}, [{body}])"


def scalar_ratio(a: CycloMatrix, b: CycloMatrix) -> Optional[CycloNum]:
    """Return c with a = c*b, or None when a is not a multiple of b (b nonzero)"""
    if a.shape != b.shape:
        raise ShapeError(f"Cannot compare {a.shape} and {b.shape}")
    a, b = a._aligned(b)
    pivot = next(((i, j) for (i, j), v in np.ndenumerate(b.entries) if not v.is_zero()), None)
    if pivot is None:
        raise DivisionByZero("Reference matrix is zero")
    ratio = a.entries[pivot] / b.entries[pivot]
    if a == b.scale(ratio):
        return ratio
    return None


def _row_reduce(rows: List[List[CycloNum]], pivot_cols: int, order: int) -> Tuple[List[List[CycloNum]], List[int], int]:
    """
    Gauss-Jordan elimination in place on a copy.

    Only the first pivot_cols columns are used for pivots. Returns the reduced
    rows, the pivot columns and the sign of the row permutation.
    """
    rows = [list(row) for row in rows]
    pivots: List[int] = []
    sign = 1
    r = 0
    height = len(rows)
    for col in range(pivot_cols):
        pivot_row = next((i for i in range(r, height) if not rows[i][col].is_zero()), None)
        if pivot_row is None:
            continue
        if pivot_row != r:
            rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
            sign = -sign
        inv = rows[r][col].inverse()
        rows[r] = [v * inv if v else v for v in rows[r]]
        for i in range(height):
            if i != r:
                factor = rows[i][col]
                if factor:
                    rows[i] = [v - factor * p if p else v for v, p in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == height:
            break
    return rows, pivots, sign


def mat_rank(matrix: CycloMatrix) -> int:
    _, pivots, _ = _row_reduce(matrix.to_rows(), matrix.cols, matrix.order)
    return len(pivots)


def mat_det(matrix: CycloMatrix) -> CycloNum:
    """Determinant by pivoting elimination"""
    if matrix.rows != matrix.cols:
        raise ShapeError(f"Determinant requires a square matrix, got {matrix.shape}")
    rows = matrix.to_rows()
    n = matrix.rows
    det = CycloNum.one(matrix.order)
    for col in range(n):
        pivot_row = next((i for i in range(col, n) if not rows[i][col].is_zero()), None)
        if pivot_row is None:
            return CycloNum.zero(matrix.order)
        if pivot_row != col:
            rows[col], rows[pivot_row] = rows[pivot_row], rows[col]
            det = -det
        pivot = rows[col][col]
        det = det * pivot
        inv = pivot.inverse()
        for i in range(col + 1, n):
            factor = rows[i][col]
            if factor:
                factor = factor * inv
                rows[i] = [v - factor * p if p else v for v, p in zip(rows[i], rows[col])]
    return det


def mat_solve(matrix: CycloMatrix, rhs: Sequence) -> Optional[List[CycloNum]]:
    """
    Solve matrix * x = rhs exactly.

    Returns one solution (free variables set to zero), or None when the
    system is inconsistent.
    """
    if len(rhs) != matrix.rows:
        raise ShapeError(f"Right-hand side has length {len(rhs)}, expected {matrix.rows}")
    order = matrix.order
    augmented = [row + [as_cyclonum(b, order)] for row, b in zip(matrix.to_rows(), rhs)]
    reduced, pivots, _ = _row_reduce(augmented, matrix.cols, order)
    for row in reduced[len(pivots):]:
        if not row[-1].is_zero():
            return None
    solution = [CycloNum.zero(order) for _ in range(matrix.cols)]
    for r, col in enumerate(pivots):
        solution[col] = reduced[r][-1]
    return solution


# Polynomials over Q(zeta_N), coefficient lists lowest degree first

def _poly_trim(p: List[CycloNum]) -> List[CycloNum]:
    p = list(p)
    while p and p[-1].is_zero():
        p.pop()
    return p


def _poly_monic(p: List[CycloNum]) -> List[CycloNum]:
    p = _poly_trim(p)
    if not p:
        return p
    inv = p[-1].inverse()
    return [c * inv for c in p]


def _poly_mul(a: List[CycloNum], b: List[CycloNum], order: int) -> List[CycloNum]:
    if not a or not b:
        return []
    out = [CycloNum.zero(order) for _ in range(len(a) + len(b) - 1)]
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = out[i + j] + x * y
    return _poly_trim(out)


def _poly_divmod(a: List[CycloNum], b: List[CycloNum], order: int) -> Tuple[List[CycloNum], List[CycloNum]]:
    b = _poly_trim(b)
    if not b:
        raise DivisionByZero("Polynomial division by zero")
    rem = _poly_trim(a)
    quot = [CycloNum.zero(order) for _ in range(max(len(rem) - len(b) + 1, 0))]
    lead_inv = b[-1].inverse()
    while len(rem) >= len(b):
        shift = len(rem) - len(b)
        factor = rem[-1] * lead_inv
        quot[shift] = factor
        for i, c in enumerate(b):
            rem[shift + i] = rem[shift + i] - factor * c
        rem = _poly_trim(rem)
    return _poly_trim(quot), rem


def _poly_gcd(a: List[CycloNum], b: List[CycloNum], order: int) -> List[CycloNum]:
    a, b = _poly_trim(a), _poly_trim(b)
    while b:
        _, r = _poly_divmod(a, b, order)
        a, b = b, r
    return _poly_monic(a)


def _poly_lcm(a: List[CycloNum], b: List[CycloNum], order: int) -> List[CycloNum]:
    g = _poly_gcd(a, b, order)
    quot, _ = _poly_divmod(_poly_mul(a, b, order), g, order)
    return _poly_monic(quot)


def _poly_derivative(p: List[CycloNum]) -> List[CycloNum]:
    return _poly_trim([c * i for i, c in enumerate(p)][1:])


def _local_min_poly(matrix: CycloMatrix, vector: List[CycloNum]) -> List[CycloNum]:
    """Monic polynomial of least degree annihilating vector, by Krylov iteration"""
    order = matrix.order
    one = CycloNum.one(order)
    if all(v.is_zero() for v in vector):
        return [one]
    krylov = [vector]
    while True:
        nxt = matrix.apply(krylov[-1])
        columns = CycloMatrix([[krylov[j][i] for j in range(len(krylov))] for i in range(matrix.rows)], order)
        coeffs = mat_solve(columns, nxt)
        if coeffs is not None:
            return [-c for c in coeffs] + [one]
        krylov.append(nxt)


def minimal_polynomial(matrix: CycloMatrix) -> List[CycloNum]:
    """Minimal polynomial as the lcm of the local minimal polynomials of the basis vectors"""
    if matrix.rows != matrix.cols:
        raise ShapeError(f"Minimal polynomial requires a square matrix, got {matrix.shape}")
    order = matrix.order
    result = [CycloNum.one(order)]
    for j in range(matrix.cols):
        basis = [CycloNum.zero(order) for _ in range(matrix.rows)]
        basis[j] = CycloNum.one(order)
        result = _poly_lcm(result, _local_min_poly(matrix, basis), order)
    return result


def min_poly_squarefree(matrix: CycloMatrix) -> bool:
    """True iff gcd(p, p') is constant for the minimal polynomial p"""
    p = minimal_polynomial(matrix)
    return len(_poly_gcd(p, _poly_derivative(p), matrix.order)) == 1
