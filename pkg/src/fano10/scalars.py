"""Exact scalars and dense exact linear algebra.

Three kinds of field are supported: the rationals (``fractions.Fraction``),
prime fields ``F_p`` and degree-2 extensions ``F_p[s]/(s^2 - r)`` for a fixed
quadratic nonresidue ``r``. Matrices are immutable row-major tuples of field
elements; every operation returns a new value.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from sympy import isprime
from sympy.ntheory import sqrt_mod

__all__ = [
    "FieldError",
    "FieldMismatch",
    "FieldDescriptor",
    "Fp",
    "Fp2",
    "Matrix",
    "QQ",
]


class FieldError(ValueError):
    """Invalid field description or an element that does not belong to it."""


class FieldMismatch(FieldError):
    """Operands live over different fields."""


# ---------------------------------------------------------------------------
# elements


class Fp:
    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    @property
    def field(self) -> "FieldDescriptor":
        return FieldDescriptor.prime(self.p)

    def _coerce(self, other):
        if isinstance(other, Fp):
            if other.p != self.p:
                raise FieldMismatch(f"F_{self.p} vs F_{other.p}")
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.v * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Fp(-self.v, self.p)

    def inverse(self) -> "Fp":
        if self.v == 0:
            raise ZeroDivisionError("inverse of zero in F_p")
        return Fp(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        o %= self.p
        if o == 0:
            raise ZeroDivisionError("division by zero in F_p")
        return Fp(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(o, self.p) / self

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return Fp(pow(self.v, e, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, Fp):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return (other - self.v) % self.p == 0
        if isinstance(other, Fp2):
            return other == self
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"{self.v}"


class Fp2:
    """Element a + b*s of F_p[s]/(s^2 - r)."""

    __slots__ = ("a", "b", "p", "r")

    def __init__(self, a: int, b: int, p: int, r: int):
        self.a = a % p
        self.b = b % p
        self.p = p
        self.r = r

    @property
    def field(self) -> "FieldDescriptor":
        return FieldDescriptor.ext2(self.p, self.r)

    def _coerce(self, other):
        if isinstance(other, Fp2):
            if other.p != self.p or other.r != self.r:
                raise FieldMismatch("different quadratic extensions")
            return other.a, other.b
        if isinstance(other, Fp):
            if other.p != self.p:
                raise FieldMismatch(f"F_{self.p}^2 vs F_{other.p}")
            return other.v, 0
        if isinstance(other, int):
            return other, 0
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p), 0
        return NotImplemented

    def _new(self, a, b):
        return Fp2(a, b, self.p, self.r)

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._new(self.a + o[0], self.b + o[1])

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._new(self.a - o[0], self.b - o[1])

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._new(o[0] - self.a, o[1] - self.b)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        c, d = o
        return self._new(self.a * c + self.r * self.b * d, self.a * d + self.b * c)

    __rmul__ = __mul__

    def __neg__(self):
        return self._new(-self.a, -self.b)

    def norm(self) -> int:
        return (self.a * self.a - self.r * self.b * self.b) % self.p

    def conjugate(self) -> "Fp2":
        return self._new(self.a, -self.b)

    def inverse(self) -> "Fp2":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in F_p^2")
        ni = pow(n, -1, self.p)
        return self._new(self.a * ni, -self.b * ni)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * self._new(*o).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._new(*o) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self._new(1, 0)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Fp2):
            return (self.p, self.r, self.a, self.b) == (other.p, other.r, other.a, other.b)
        if isinstance(other, Fp):
            return self.p == other.p and self.b == 0 and self.a == other.v
        if isinstance(other, int):
            return self.b == 0 and (other - self.a) % self.p == 0
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash((self.a, self.p))
        return hash((self.a, self.b, self.p, self.r))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def in_base(self) -> bool:
        return self.b == 0

    def __repr__(self):
        if self.b == 0:
            return f"{self.a}"
        return f"({self.a}+{self.b}s)"


# ---------------------------------------------------------------------------
# field descriptors


@lru_cache(maxsize=None)
def _smallest_nonresidue(p: int) -> int:
    for r in range(2, p):
        if pow(r, (p - 1) // 2, p) == p - 1:
            return r
    raise FieldError(f"no nonresidue mod {p}")


@dataclass(frozen=True)
class FieldDescriptor:
    kind: str  # "rational", "prime" or "ext2"
    p: int | None = None
    nonresidue: int | None = None

    def __post_init__(self):
        if self.kind == "rational":
            if self.p is not None or self.nonresidue is not None:
                raise FieldError("the rationals take no characteristic")
            return
        if self.kind not in ("prime", "ext2"):
            raise FieldError(f"unknown field kind {self.kind!r}")
        p = self.p
        if not isinstance(p, int) or p < 5 or not isprime(p):
            raise FieldError(f"characteristic must be a prime >= 5, got {p!r}")
        if self.kind == "prime":
            if self.nonresidue is not None:
                raise FieldError("a prime field takes no nonresidue")
        else:
            r = self.nonresidue
            if not isinstance(r, int) or r % p == 0 or pow(r, (p - 1) // 2, p) != p - 1:
                raise FieldError(f"{r!r} is not a quadratic nonresidue mod {p}")

    # constructors -------------------------------------------------------
    @staticmethod
    def rationals() -> "FieldDescriptor":
        return QQ

    @staticmethod
    @lru_cache(maxsize=None)
    def prime(p: int) -> "FieldDescriptor":
        return FieldDescriptor("prime", p)

    @staticmethod
    @lru_cache(maxsize=None)
    def ext2(p: int, nonresidue: int | None = None) -> "FieldDescriptor":
        if nonresidue is None:
            if not isinstance(p, int) or p < 5 or not isprime(p):
                raise FieldError(f"characteristic must be a prime >= 5, got {p!r}")
            nonresidue = _smallest_nonresidue(p)
        return FieldDescriptor("ext2", p, nonresidue)

    @staticmethod
    def parse(text: str) -> "FieldDescriptor":
        """Parse ``rational``, ``fp:<p>`` or ``fp2:<p>``."""
        t = text.strip().lower()
        if t in ("rational", "rationals", "q"):
            return QQ
        head, sep, tail = t.partition(":")
        if not sep:
            raise FieldError(f"cannot parse field {text!r}")
        try:
            p = int(tail)
        except ValueError:
            raise FieldError(f"cannot parse characteristic in {text!r}") from None
        if head == "fp":
            return FieldDescriptor.prime(p)
        if head == "fp2":
            return FieldDescriptor.ext2(p)
        raise FieldError(f"cannot parse field {text!r}")

    def __str__(self) -> str:
        if self.kind == "rational":
            return "rational"
        if self.kind == "prime":
            return f"fp:{self.p}"
        return f"fp2:{self.p}"

    # properties ---------------------------------------------------------
    @property
    def is_finite(self) -> bool:
        return self.kind != "rational"

    @property
    def is_prime(self) -> bool:
        return self.kind == "prime"

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    @property
    def order(self) -> int | None:
        if self.kind == "rational":
            return None
        return self.p if self.kind == "prime" else self.p * self.p

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def base(self) -> "FieldDescriptor":
        """Prime subfield (the field itself unless it is an extension)."""
        return FieldDescriptor.prime(self.p) if self.kind == "ext2" else self

    def extension(self) -> "FieldDescriptor":
        if self.kind != "prime":
            raise FieldError(f"no quadratic extension available for {self}")
        return FieldDescriptor.ext2(self.p)

    # elements -----------------------------------------------------------
    def __call__(self, x):
        if self.kind == "rational":
            if isinstance(x, (Fp, Fp2)):
                raise FieldMismatch("finite-field element used over the rationals")
            return Fraction(x)
        if self.kind == "prime":
            if isinstance(x, Fp):
                if x.p != self.p:
                    raise FieldMismatch(f"F_{x.p} element used over F_{self.p}")
                return x
            if isinstance(x, Fp2):
                if x.p != self.p or x.b != 0:
                    raise FieldMismatch("extension element used over its base field")
                return Fp(x.a, self.p)
            if isinstance(x, Fraction):
                return Fp(x.numerator * pow(x.denominator, -1, self.p), self.p)
            return Fp(int(x), self.p)
        if isinstance(x, Fp2):
            if x.p != self.p or x.r != self.nonresidue:
                raise FieldMismatch("element of a different quadratic extension")
            return x
        if isinstance(x, Fp):
            if x.p != self.p:
                raise FieldMismatch(f"F_{x.p} element used over {self}")
            return Fp2(x.v, 0, self.p, self.nonresidue)
        if isinstance(x, tuple):
            a, b = x
            return Fp2(int(a), int(b), self.p, self.nonresidue)
        if isinstance(x, Fraction):
            return Fp2(x.numerator * pow(x.denominator, -1, self.p), 0, self.p, self.nonresidue)
        return Fp2(int(x), 0, self.p, self.nonresidue)

    def contains(self, x) -> bool:
        if self.kind == "rational":
            return isinstance(x, (int, Fraction))
        if self.kind == "prime":
            return isinstance(x, int) or (isinstance(x, Fp) and x.p == self.p)
        if isinstance(x, Fp2):
            return x.p == self.p and x.r == self.nonresidue
        return isinstance(x, int) or (isinstance(x, Fp) and x.p == self.p)

    def generator(self):
        """The adjoined square root s (extensions only)."""
        if self.kind != "ext2":
            raise FieldError(f"{self} is not a quadratic extension")
        return Fp2(0, 1, self.p, self.nonresidue)

    def random(self, rng, bound: int = 10):
        """Uniform element for finite fields; small integers for the rationals."""
        if self.kind == "rational":
            return Fraction(rng.randint(-bound, bound))
        if self.kind == "prime":
            return Fp(rng.randrange(self.p), self.p)
        return Fp2(rng.randrange(self.p), rng.randrange(self.p), self.p, self.nonresidue)

    def random_nonzero(self, rng, bound: int = 10):
        while True:
            x = self.random(rng, bound)
            if x != 0:
                return x

    def elements(self) -> Iterator:
        if self.kind == "rational":
            raise FieldError("cannot enumerate the rationals")
        if self.kind == "prime":
            return (Fp(v, self.p) for v in range(self.p))
        return (Fp2(a, b, self.p, self.nonresidue) for a in range(self.p) for b in range(self.p))

    def sqrt(self, x):
        """A square root of x in this field, or None when x is not a square."""
        x = self(x)
        if x == 0:
            return self(0)
        if self.kind == "rational":
            return _fraction_sqrt(x)
        if self.kind == "prime":
            root = sqrt_mod(x.v, self.p)
            return None if root is None else Fp(int(root), self.p)
        return _fp2_sqrt(x)

    def to_int(self, x) -> int:
        """Canonical representative of a prime-field element."""
        if self.kind != "prime":
            raise FieldError("integer lifts exist only for prime fields")
        return self(x).v


QQ = FieldDescriptor("rational")


def _int_sqrt(n: int) -> int | None:
    if n < 0:
        return None
    from math import isqrt

    r = isqrt(n)
    return r if r * r == n else None


def _fraction_sqrt(x: Fraction):
    a = _int_sqrt(x.numerator)
    b = _int_sqrt(x.denominator)
    if a is None or b is None:
        return None
    return Fraction(a, b)


def _fp2_sqrt(x: Fp2):
    p, r = x.p, x.r
    if x.b == 0:
        root = sqrt_mod(x.a, p)
        if root is not None:
            return Fp2(int(root), 0, p, r)
        # a = r * c^2 then (c s)^2 = a
        root = sqrt_mod(x.a * pow(r, -1, p) % p, p)
        return Fp2(0, int(root), p, r)
    n = sqrt_mod(x.norm(), p)
    if n is None:
        return None
    inv2 = pow(2, -1, p)
    for sign in (1, -1):
        c2 = (x.a + sign * int(n)) * inv2 % p
        c = sqrt_mod(c2, p)
        if c is not None and c % p != 0:
            c = int(c)
            d = x.b * pow(2 * c, -1, p) % p
            cand = Fp2(c, d, p, r)
            if cand * cand == x:
                return cand
    return None


# ---------------------------------------------------------------------------
# matrices


def _field_of_rows(rows) -> FieldDescriptor | None:
    for row in rows:
        for x in row:
            if isinstance(x, Fp):
                return FieldDescriptor.prime(x.p)
            if isinstance(x, Fp2):
                return FieldDescriptor.ext2(x.p, x.r)
    return None


class Matrix:
    """Immutable dense matrix over an exact field."""

    __slots__ = ("field", "nrows", "ncols", "_rows")

    def __init__(self, field: FieldDescriptor, rows: Iterable[Sequence], ncols: int | None = None):
        conv = tuple(tuple(field(x) for x in row) for row in rows)
        if ncols is None:
            ncols = len(conv[0]) if conv else 0
        for row in conv:
            if len(row) != ncols:
                raise ValueError("ragged rows")
        self.field = field
        self.nrows = len(conv)
        self.ncols = ncols
        self._rows = conv

    @classmethod
    def _raw(cls, field, rows: tuple, ncols: int) -> "Matrix":
        m = object.__new__(cls)
        m.field = field
        m.nrows = len(rows)
        m.ncols = ncols
        m._rows = rows
        return m

    # constructors -------------------------------------------------------
    @classmethod
    def zeros(cls, field, nrows: int, ncols: int) -> "Matrix":
        z = field(0)
        return cls._raw(field, tuple((z,) * ncols for _ in range(nrows)), ncols)

    @classmethod
    def identity(cls, field, n: int) -> "Matrix":
        z, o = field(0), field(1)
        return cls._raw(field, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)), n)

    @classmethod
    def from_columns(cls, field, cols: Sequence[Sequence], nrows: int | None = None) -> "Matrix":
        if not cols:
            return cls._raw(field, tuple(() for _ in range(nrows or 0)), 0)
        return cls(field, zip(*cols))

    @classmethod
    def diagonal(cls, field, entries: Sequence) -> "Matrix":
        n = len(entries)
        z = field(0)
        return cls._raw(
            field, tuple(tuple(field(entries[i]) if i == j else z for j in range(n)) for i in range(n)), n
        )

    # access -------------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def rows(self) -> tuple:
        return self._rows

    def cols(self) -> list[tuple]:
        return [tuple(r[j] for r in self._rows) for j in range(self.ncols)]

    def row(self, i: int) -> tuple:
        return self._rows[i]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self._rows)

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash((self.field, self.shape, self._rows))

    def __repr__(self):
        body = "; ".join(" ".join(repr(x) for x in r) for r in self._rows)
        return f"Matrix<{self.field} {self.nrows}x{self.ncols}>[{body}]"

    def _check(self, other: "Matrix"):
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    # arithmetic ---------------------------------------------------------
    @property
    def T(self) -> "Matrix":
        if self.nrows == 0:
            return Matrix._raw(self.field, tuple(() for _ in range(self.ncols)), 0)
        return Matrix._raw(self.field, tuple(zip(*self._rows)), self.nrows)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix._raw(
            self.field, tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._rows, other._rows)), self.ncols
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix._raw(
            self.field, tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._rows, other._rows)), self.ncols
        )

    def __neg__(self) -> "Matrix":
        return Matrix._raw(self.field, tuple(tuple(-a for a in r) for r in self._rows), self.ncols)

    def scale(self, c) -> "Matrix":
        c = self.field(c)
        return Matrix._raw(self.field, tuple(tuple(c * a for a in r) for r in self._rows), self.ncols)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            self._check(other)
            if self.ncols != other.nrows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            cols = other.cols()
            z = self.field(0)
            out = []
            for r in self._rows:
                out.append(tuple(_dot(r, c, z) for c in cols))
            return Matrix._raw(self.field, tuple(out), other.ncols)
        vec = tuple(other)
        if len(vec) != self.ncols:
            raise ValueError("vector length mismatch")
        z = self.field(0)
        return tuple(_dot(r, vec, z) for r in self._rows)

    def apply(self, vec: Sequence) -> tuple:
        return self @ tuple(self.field(x) for x in vec)

    def hstack(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.nrows != other.nrows:
            raise ValueError("row count mismatch")
        return Matrix._raw(
            self.field, tuple(r + s for r, s in zip(self._rows, other._rows)), self.ncols + other.ncols
        )

    def vstack(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.ncols != other.ncols:
            raise ValueError("column count mismatch")
        return Matrix._raw(self.field, self._rows + other._rows, self.ncols)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix._raw(self.field, tuple(tuple(self._rows[i][j] for j in cols) for i in rows), len(cols))

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._rows for x in r)

    def map_field(self, target: FieldDescriptor) -> "Matrix":
        """Reinterpret the entries in another field (e.g. reduce or extend)."""
        return Matrix(target, self._rows, self.ncols)

    # elimination --------------------------------------------------------
    def rref(self) -> tuple["Matrix", int, list[int]]:
        """Reduced row-echelon form with first-nonzero pivoting."""
        if self.field.kind == "prime" and self.nrows and self.ncols and self.field.p < _ACCEL_PRIME_LIMIT:
            return _rref_prime(self)
        return _rref_generic(self)

    def rank(self) -> int:
        return self.rref()[1]

    def kernel_basis(self) -> list[tuple]:
        """Basis of {x : M x = 0}, one vector per free column."""
        red, rank, pivots = self.rref()
        z, o = self.field(0), self.field(1)
        pivset = set(pivots)
        basis = []
        for free in range(self.ncols):
            if free in pivset:
                continue
            v = [z] * self.ncols
            v[free] = o
            for i, pc in enumerate(pivots):
                v[pc] = -red[i, free]
            basis.append(tuple(v))
        return basis

    def left_kernel_basis(self) -> list[tuple]:
        return self.T.kernel_basis()

    def solve(self, b: Sequence) -> tuple | None:
        """A solution of M x = b, or None when the system is inconsistent."""
        b = tuple(self.field(x) for x in b)
        if len(b) != self.nrows:
            raise ValueError(f"right-hand side has length {len(b)}, expected {self.nrows}")
        aug = self.hstack(Matrix._raw(self.field, tuple((x,) for x in b), 1))
        red, rank, pivots = aug.rref()
        if pivots and pivots[-1] == self.ncols:
            return None
        z = self.field(0)
        x = [z] * self.ncols
        for i, pc in enumerate(pivots):
            x[pc] = red[i, self.ncols]
        return tuple(x)

    def det(self) -> object:
        if self.nrows != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        n = self.nrows
        rows = [list(r) for r in self._rows]
        det = self.field(1)
        for c in range(n):
            piv = next((i for i in range(c, n) if rows[i][c] != 0), None)
            if piv is None:
                return self.field(0)
            if piv != c:
                rows[c], rows[piv] = rows[piv], rows[c]
                det = -det
            pv = rows[c][c]
            det = det * pv
            inv = 1 / pv
            for i in range(c + 1, n):
                f = rows[i][c]
                if f != 0:
                    f = f * inv
                    rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
        return det

    def inverse(self) -> "Matrix":
        n = self.nrows
        if n != self.ncols:
            raise ValueError("inverse of a non-square matrix")
        red, rank, pivots = self.hstack(Matrix.identity(self.field, n)).rref()
        if rank < n or pivots[n - 1] != n - 1:
            raise ZeroDivisionError("singular matrix")
        return red.submatrix(range(n), range(n, 2 * n))

    def row_space(self) -> "Matrix":
        """Matrix whose rows are the nonzero rows of the rref."""
        red, rank, _ = self.rref()
        return red.submatrix(range(rank), range(self.ncols))


def _dot(r, c, z):
    s = z
    for a, b in zip(r, c):
        if a and b:
            s = s + a * b
    return s


def _rref_generic(m: Matrix) -> tuple[Matrix, int, list[int]]:
    rows = [list(r) for r in m.rows]
    nr, nc = m.nrows, m.ncols
    pivots: list[int] = []
    r = 0
    for c in range(nc):
        if r == nr:
            break
        piv = next((i for i in range(r, nr) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        pr = rows[r]
        for i in range(nr):
            if i != r:
                f = rows[i][c]
                if f != 0:
                    rows[i] = [a - f * b for a, b in zip(rows[i], pr)]
        pivots.append(c)
        r += 1
    return Matrix._raw(m.field, tuple(tuple(x) for x in rows), nc), r, pivots


_ACCEL_PRIME_LIMIT = 1 << 31


def _rref_prime(m: Matrix) -> tuple[Matrix, int, list[int]]:
    import numpy as np

    from . import _accel

    p = m.field.p
    a = np.array([[x.v for x in r] for r in m.rows], dtype=np.int64)
    red, pivots = _accel.rref_mod(a, p)
    rows = tuple(tuple(Fp(int(v), p) for v in r) for r in red.tolist())
    pl = [int(c) for c in pivots]
    return Matrix._raw(m.field, rows, m.ncols), len(pl), pl


# ---------------------------------------------------------------------------
# subspace helpers (subspaces given by spanning row vectors)


def span_basis(field: FieldDescriptor, vectors: Sequence[Sequence], dim: int | None = None) -> list[tuple]:
    """Canonical (rref) basis of the span of the given vectors."""
    vectors = [tuple(v) for v in vectors]
    if not vectors:
        return []
    m = Matrix(field, vectors)
    return list(m.row_space().rows)


def span_rank(field: FieldDescriptor, vectors: Sequence[Sequence]) -> int:
    if not vectors:
        return 0
    return Matrix(field, [tuple(v) for v in vectors]).rank()


def span_contains(field: FieldDescriptor, basis: Sequence[Sequence], v: Sequence) -> bool:
    if not basis:
        return all(x == 0 for x in v)
    return span_rank(field, list(basis) + [tuple(v)]) == span_rank(field, basis)


def spans_equal(field: FieldDescriptor, a: Sequence[Sequence], b: Sequence[Sequence]) -> bool:
    return span_basis(field, a) == span_basis(field, b)


def intersect_spans(field: FieldDescriptor, a: Sequence[Sequence], b: Sequence[Sequence]) -> list[tuple]:
    """Basis of span(a) ∩ span(b)."""
    if not a or not b:
        return []
    n = len(a[0])
    # x in both iff x = sum s_i a_i = sum t_j b_j
    cols = [tuple(v) for v in a] + [tuple(-field(x) for x in v) for v in b]
    m = Matrix.from_columns(field, cols)
    out = []
    for k in m.kernel_basis():
        s = k[: len(a)]
        out.append(tuple(sum((s[i] * field(a[i][j]) for i in range(len(a))), field(0)) for j in range(n)))
    return span_basis(field, out) if out else []


def coordinates_in(field: FieldDescriptor, basis: Sequence[Sequence], v: Sequence) -> tuple | None:
    """Coefficients c with sum c_i basis_i = v, or None when v is outside the span."""
    m = Matrix.from_columns(field, [tuple(b) for b in basis])
    return m.solve(v)


def proportional(u: Sequence, v: Sequence) -> bool:
    """True iff u and v are nonzero and projectively equal."""
    i = next((k for k, x in enumerate(u) if x != 0), None)
    j = next((k for k, x in enumerate(v) if x != 0), None)
    if i is None or j is None or i != j:
        return False
    lam = v[i] / u[i]
    return all(y == lam * x for x, y in zip(u, v))


def normalize(v: Sequence) -> tuple:
    """Scale a nonzero vector so its first nonzero entry is 1."""
    i = next((k for k, x in enumerate(v) if x != 0), None)
    if i is None:
        raise ValueError("zero vector has no projective representative")
    inv = 1 / v[i]
    return tuple(x * inv for x in v)
