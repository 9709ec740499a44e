"""Exact linear algebra over the rationals and prime fields.

Scalars are plain values: ``fractions.Fraction`` over Q (always in lowest
terms with positive denominator), canonical residues in ``[0, p)`` over F_p.
Field objects supply the arithmetic so the matrix routines stay field
generic; everything is immutable and deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence, Union

Scalar = Union[Fraction, int]


class FieldError(ValueError):
    """Mixed fields, bad field parameters, or unconvertible scalars."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Rationals:
    """The field Q.  A single shared instance is exposed as ``QQ``."""

    kind = "Q"
    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, x) -> Fraction:
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, str):
            return Fraction(x)
        raise FieldError(f"cannot interpret {x!r} as a rational")

    @staticmethod
    def add(a: Fraction, b: Fraction) -> Fraction:
        return a + b

    @staticmethod
    def sub(a: Fraction, b: Fraction) -> Fraction:
        return a - b

    @staticmethod
    def mul(a: Fraction, b: Fraction) -> Fraction:
        return a * b

    @staticmethod
    def neg(a: Fraction) -> Fraction:
        return -a

    def inv(self, a: Fraction) -> Fraction:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in Q")
        return 1 / a

    def __eq__(self, other) -> bool:
        return isinstance(other, Rationals)

    def __hash__(self) -> int:
        return hash("Q")

    def __repr__(self) -> str:
        return "QQ"


QQ = Rationals()


class PrimeField:
    """The prime field F_p; scalars are ints reduced into ``[0, p)``."""

    kind = "Fp"

    def __init__(self, p: int):
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        self.p = p
        self.zero = 0
        self.one = 1 % p

    def coerce(self, x) -> int:
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, str):
            return int(x) % self.p
        raise FieldError(f"cannot interpret {x!r} as an element of F_{self.p}")

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError(f"inverse of zero in F_{self.p}")
        return pow(a, self.p - 2, self.p)

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("Fp", self.p))

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"


Field = Union[Rationals, PrimeField]


def field_to_json(field: Field):
    return "Q" if field.kind == "Q" else {"Fp": field.p}


def field_from_json(data) -> Field:
    if data == "Q":
        return QQ
    if isinstance(data, dict) and set(data) == {"Fp"}:
        return PrimeField(int(data["Fp"]))
    raise FieldError(f"unrecognized field spec {data!r}")


@dataclass(frozen=True)
class Matrix:
    """Immutable rectangular matrix over a single field."""

    field: Field
    rows: tuple[tuple[Scalar, ...], ...]
    ncols: int

    def __post_init__(self):
        for row in self.rows:
            if len(row) != self.ncols:
                raise ValueError("ragged matrix rows")

    @property
    def nrows(self) -> int:
        return len(self.rows)


def matrix(field: Field, rows: Iterable[Iterable], ncols: int | None = None) -> Matrix:
    coerced = tuple(tuple(field.coerce(x) for x in row) for row in rows)
    if ncols is None:
        if not coerced:
            raise ValueError("ncols required for a matrix with no rows")
        ncols = len(coerced[0])
    return Matrix(field, coerced, ncols)


class RrefResult(NamedTuple):
    matrix: Matrix
    rank: int
    pivots: tuple[int, ...]


def _rref_rows(field: Field, rows: Sequence[Sequence[Scalar]], ncols: int):
    """Reduced row echelon form on raw rows; returns (rows, pivots)."""
    work = [list(r) for r in rows]
    zero = field.zero
    sub, mul, inv = field.sub, field.mul, field.inv
    pivots = []
    pr = 0
    for c in range(ncols):
        pivot = None
        for r in range(pr, len(work)):
            if work[r][c] != zero:
                pivot = r
                break
        if pivot is None:
            continue
        work[pr], work[pivot] = work[pivot], work[pr]
        row = work[pr]
        scale = inv(row[c])
        if scale != field.one:
            work[pr] = row = [mul(scale, x) for x in row]
        for r in range(len(work)):
            if r == pr:
                continue
            factor = work[r][c]
            if factor != zero:
                other = work[r]
                work[r] = [sub(other[j], mul(factor, row[j])) for j in range(ncols)]
        pivots.append(c)
        pr += 1
        if pr == len(work):
            break
    reduced = tuple(tuple(work[r]) for r in range(pr))
    return reduced, tuple(pivots)


def rref(m: Matrix) -> RrefResult:
    """Unique reduced row echelon form, with rank and pivot columns."""
    rows, pivots = _rref_rows(m.field, m.rows, m.ncols)
    return RrefResult(Matrix(m.field, rows, m.ncols), len(rows), pivots)


def reduce_against(field: Field, rows, pivots, vector):
    """Residual of ``vector`` after elimination by an rref row set."""
    zero = field.zero
    sub, mul = field.sub, field.mul
    v = list(vector)
    for row, c in zip(rows, pivots):
        factor = v[c]
        if factor != zero:
            v = [sub(v[j], mul(factor, row[j])) for j in range(len(v))]
    return v


def extend_rref(field: Field, rows, pivots, vector):
    """Insert one row into an rref row set, keeping it in rref form.

    Returns ``None`` when the vector already lies in the row space,
    otherwise the extended ``(rows, pivots)``.  Equal to a full rref of the
    stacked matrix, by uniqueness of the reduced echelon form.
    """
    zero = field.zero
    sub, mul, inv = field.sub, field.mul, field.inv
    v = reduce_against(field, rows, pivots, vector)
    lead = None
    for j, x in enumerate(v):
        if x != zero:
            lead = j
            break
    if lead is None:
        return None
    scale = inv(v[lead])
    if scale != field.one:
        v = [mul(scale, x) for x in v]
    new_rows = []
    new_pivots = []
    inserted = False
    for row, c in zip(rows, pivots):
        if not inserted and lead < c:
            new_rows.append(v)
            new_pivots.append(lead)
            inserted = True
        factor = row[lead]
        if factor != zero:
            row = [sub(row[j], mul(factor, v[j])) for j in range(len(row))]
        new_rows.append(list(row))
        new_pivots.append(c)
    if not inserted:
        new_rows.append(v)
        new_pivots.append(lead)
    return tuple(tuple(r) for r in new_rows), tuple(new_pivots)


def kernel_basis(m: Matrix) -> list[tuple[Scalar, ...]]:
    """Canonical kernel basis read off the free columns of the rref."""
    field = m.field
    rows, pivots = _rref_rows(field, m.rows, m.ncols)
    pivot_set = set(pivots)
    free_cols = [c for c in range(m.ncols) if c not in pivot_set]
    basis = []
    for fc in free_cols:
        v = [field.zero] * m.ncols
        v[fc] = field.one
        for row, pc in zip(rows, pivots):
            v[pc] = field.neg(row[fc])
        basis.append(tuple(v))
    return basis


def normalize_covector(field: Field, v: Sequence) -> tuple[Scalar, ...]:
    """Scale so the first nonzero entry is 1; canonical per proportionality class."""
    w = [field.coerce(x) for x in v]
    lead = None
    for x in w:
        if x != field.zero:
            lead = x
            break
    if lead is None:
        raise ValueError("cannot normalize the zero covector")
    if lead == field.one:
        return tuple(w)
    scale = field.inv(lead)
    return tuple(field.mul(scale, x) for x in w)


def scalar_to_json(field: Field, x):
    if field.kind == "Q":
        if x.denominator == 1:
            return int(x.numerator)
        return f"{x.numerator}/{x.denominator}"
    return int(x)
