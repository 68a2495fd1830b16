"""Small dense matrices over any commutative ring with Python operators.

Entries may be Fractions, RatFuncs, ShiftPolys, ShiftFracs or dual numbers;
mixed entries are fine as long as the ring operations interoperate.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Callable, Iterable, List, Sequence, Tuple


def is_zero(x: Any) -> bool:
    if isinstance(x, (int, Fraction)):
        return x == 0
    return x.is_zero()


class SingularMatrix(ZeroDivisionError):
    """Gaussian elimination found no usable pivot."""


class Matrix:
    """An immutable square-or-rectangular matrix stored as a tuple of rows."""

    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[Iterable[Any]]):
        self.rows: Tuple[Tuple[Any, ...], ...] = tuple(tuple(r) for r in rows)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[Fraction(int(i == j)) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, n: int, m: int | None = None) -> "Matrix":
        m = n if m is None else m
        return cls([[Fraction(0)] * m for _ in range(n)])

    @classmethod
    def diag(cls, entries: Sequence[Any]) -> "Matrix":
        n = len(entries)
        return cls([[entries[i] if i == j else Fraction(0) for j in range(n)] for i in range(n)])

    @classmethod
    def unit(cls, n: int, i: int, j: int) -> "Matrix":
        """Matrix unit E_ij (0-based)."""
        return cls([[Fraction(int(a == i and b == j)) for b in range(n)] for a in range(n)])

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.rows), len(self.rows[0]) if self.rows else 0

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij: Tuple[int, int]) -> Any:
        i, j = ij
        return self.rows[i][j]

    def __iter__(self):
        return iter(self.rows)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix) or self.shape != other.shape:
            return False
        return all(is_zero(a - b) for ra, rb in zip(self.rows, other.rows) for a, b in zip(ra, rb))

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return "Matrix([" + ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.rows) + "])"

    def is_zero(self) -> bool:
        return all(is_zero(x) for r in self.rows for x in r)

    def map(self, fn: Callable[[Any], Any]) -> "Matrix":
        return Matrix([[fn(x) for x in r] for r in self.rows])

    def __add__(self, other: "Matrix") -> "Matrix":
        return Matrix([[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        return Matrix([[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)])

    def __neg__(self) -> "Matrix":
        return Matrix([[-a for a in r] for r in self.rows])

    def scale(self, c: Any) -> "Matrix":
        """Multiply every entry by a ring element (zeros stay exact zeros)."""
        return Matrix([[Fraction(0) if is_zero(a) else a * c for a in r] for r in self.rows])

    def __mul__(self, other: Any) -> "Matrix":
        if not isinstance(other, Matrix):
            return self.scale(other)
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            nz = [(k, a) for k, a in enumerate(r) if not is_zero(a)]
            row = []
            for c in cols:
                acc: Any = Fraction(0)
                for k, a in nz:
                    b = c[k]
                    if not is_zero(b):
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return Matrix(out)

    def __rmul__(self, c: Any) -> "Matrix":
        return self.scale(c)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return self * other

    def __pow__(self, k: int) -> "Matrix":
        if k < 0:
            return self.inverse() ** (-k)
        out = Matrix.identity(self.n)
        for _ in range(k):
            out = out * self
        return out

    def transpose(self) -> "Matrix":
        return Matrix(zip(*self.rows))

    def trace(self) -> Any:
        acc: Any = Fraction(0)
        for i in range(self.n):
            acc = acc + self.rows[i][i]
        return acc

    def commutator(self, other: "Matrix") -> "Matrix":
        return self * other - other * self

    def is_diagonal(self) -> bool:
        return all(is_zero(x) for i, r in enumerate(self.rows) for j, x in enumerate(r) if i != j)

    def diagonal(self) -> List[Any]:
        return [self.rows[i][i] for i in range(self.n)]

    def inverse(self, one: Any = None) -> "Matrix":
        """Gauss-Jordan inverse; pivots must be invertible in the entry ring."""
        n = self.n
        one = Fraction(1) if one is None else one
        aug = [list(r) + [one if i == j else Fraction(0) for j in range(n)] for i, r in enumerate(self.rows)]
        for col in range(n):
            piv = next((r for r in range(col, n) if not is_zero(aug[r][col])), None)
            if piv is None:
                raise SingularMatrix("matrix is not invertible")
            aug[col], aug[piv] = aug[piv], aug[col]
            inv = 1 / aug[col][col]
            aug[col] = [x * inv if not is_zero(x) else x for x in aug[col]]
            for r in range(n):
                if r != col and not is_zero(aug[r][col]):
                    f = aug[r][col]
                    aug[r] = [x - f * y if not is_zero(y) else x for x, y in zip(aug[r], aug[col])]
        return Matrix(row[n:] for row in aug)

    def det(self) -> Any:
        """Determinant by cofactor expansion along sparse rows (fine for n <= 8)."""
        return _det(self.rows)

    def minor(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix([[self.rows[i][j] for j in cols] for i in rows])


def _det(rows) -> Any:
    n = len(rows)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return rows[0][0]
    # expand along the sparsest row
    best = min(range(n), key=lambda i: sum(not is_zero(x) for x in rows[i]))
    acc: Any = Fraction(0)
    for j, a in enumerate(rows[best]):
        if is_zero(a):
            continue
        sub = [r[:j] + r[j + 1:] for k, r in enumerate(rows) if k != best]
        term = a * _det(sub)
        acc = acc + term if (best + j) % 2 == 0 else acc - term
    return acc


def solve_linear(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> List[Fraction] | None:
    """One solution of ``rows * x = rhs`` over Q (free variables set to 0), or None if inconsistent."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    aug = [[Fraction(x) for x in r] + [Fraction(b)] for r, b in zip(rows, rhs)]
    pivots: List[int] = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if aug[i][c] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    if any(all(x == 0 for x in row[:n]) and row[n] != 0 for row in aug):
        return None
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = aug[i][n]
    return x


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    """Rank over Q by row reduction."""
    work = [[Fraction(x) for x in r] for r in rows]
    rk = 0
    cols = len(work[0]) if work else 0
    for c in range(cols):
        piv = next((i for i in range(rk, len(work)) if work[i][c] != 0), None)
        if piv is None:
            continue
        work[rk], work[piv] = work[piv], work[rk]
        for i in range(rk + 1, len(work)):
            if work[i][c] != 0:
                f = work[i][c] / work[rk][c]
                work[i] = [x - f * y for x, y in zip(work[i], work[rk])]
        rk += 1
    return rk
