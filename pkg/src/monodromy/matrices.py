"""Exact dense linear algebra over Z and Z/nZ.

Matrices are immutable tuples of tuples of Python ints, so every
operation is exact at any size and results are hashable.  The normal
forms here are the load-bearing primitives for everything else:

* Smith normal form over Z with unimodular transforms and a fixed
  pivoting rule, so outputs are deterministic and testable.
* Row Hermite normal form over Z, which doubles as the engine for the
  Howell form over Z/nZ: the Howell form of a row span is the mod-n
  reduction of the Hermite form of the rows stacked over n*I.  That
  makes the Howell form canonical: two generating sets span the same
  submodule of (Z/nZ)^c exactly when their forms are identical.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

from .polynomials import IntPoly


class MatrixError(ValueError):
    pass


class DimensionError(MatrixError):
    pass


class SingularMatrixError(MatrixError):
    pass


def _freeze(data: Iterable[Iterable[int]]) -> Tuple[Tuple[int, ...], ...]:
    return tuple(tuple(int(x) for x in row) for row in data)


class IntMatrix:
    """Immutable matrix over Z with positive dimensions."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data: Iterable[Iterable[int]]) -> None:
        frozen = _freeze(data)
        if not frozen or not frozen[0]:
            raise DimensionError("IntMatrix dimensions must be positive")
        cols = len(frozen[0])
        if any(len(r) != cols for r in frozen):
            raise DimensionError("ragged rows")
        object.__setattr__(self, "rows", len(frozen))
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "data", frozen)

    def __setattr__(self, name, value):
        raise AttributeError("IntMatrix is immutable")

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @staticmethod
    def zeros(rows: int, cols: int) -> "IntMatrix":
        return IntMatrix([[0] * cols for _ in range(rows)])

    @staticmethod
    def from_diag(entries: Sequence[int]) -> "IntMatrix":
        n = len(entries)
        return IntMatrix([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def to_lists(self) -> List[List[int]]:
        return [list(r) for r in self.data]

    def transpose(self) -> "IntMatrix":
        return IntMatrix([[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def trace(self) -> int:
        if not self.is_square:
            raise DimensionError("trace needs a square matrix")
        return sum(self.data[i][i] for i in range(self.rows))

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.data for x in row)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, IntMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __hash__(self) -> int:
        return hash(("IntMatrix", self.data))

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        self._same_shape(other)
        return IntMatrix(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.data, other.data)]
        )

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        self._same_shape(other)
        return IntMatrix(
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.data, other.data)]
        )

    def __neg__(self) -> "IntMatrix":
        return IntMatrix([[-a for a in row] for row in self.data])

    def __mul__(self, scalar):
        if not isinstance(scalar, int):
            return NotImplemented
        return IntMatrix([[a * scalar for a in row] for row in self.data])

    __rmul__ = __mul__

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if not isinstance(other, IntMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise DimensionError("inner dimensions do not match")
        bt = other.transpose().data
        return IntMatrix(
            [[sum(a * b for a, b in zip(row, col)) for col in bt] for row in self.data]
        )

    def __pow__(self, e: int) -> "IntMatrix":
        if not self.is_square:
            raise DimensionError("powers need a square matrix")
        if e < 0:
            return self.inverse_unimodular() ** (-e)
        result = IntMatrix.identity(self.rows)
        base = self
        while e:
            if e & 1:
                result = result @ base
            base = base @ base
            e >>= 1
        return result

    def reduce_mod(self, n: int) -> "ModMatrix":
        return ModMatrix(n, self.data)

    def det(self) -> int:
        if not self.is_square:
            raise DimensionError("determinant needs a square matrix")
        return _det_bareiss(self.data)

    def adjugate(self) -> "IntMatrix":
        if not self.is_square:
            raise DimensionError("adjugate needs a square matrix")
        n = self.rows
        if n == 1:
            return IntMatrix([[1]])
        cof = [
            [(-1) ** (i + j) * _det_bareiss(_minor(self.data, i, j)) for j in range(n)]
            for i in range(n)
        ]
        return IntMatrix(cof).transpose()

    def inverse_unimodular(self) -> "IntMatrix":
        """Inverse of a matrix with determinant +-1."""
        d = self.det()
        if d not in (1, -1):
            raise SingularMatrixError(f"determinant {d} is not a unit in Z")
        adj = self.adjugate()
        return adj if d == 1 else -adj

    def _same_shape(self, other: "IntMatrix") -> None:
        if self.rows != other.rows or self.cols != other.cols:
            raise DimensionError("shape mismatch")

    def __repr__(self) -> str:
        return f"IntMatrix({self.to_lists()!r})"


class ModMatrix:
    """Immutable matrix over Z/nZ; entries are reduced into [0, n).

    Zero-row matrices are allowed so that the trivial subgroup has a
    generator matrix; the column count is always positive.
    """

    __slots__ = ("modulus", "rows", "cols", "data")

    def __init__(self, modulus: int, data: Iterable[Iterable[int]], cols: Optional[int] = None) -> None:
        if modulus < 1:
            raise MatrixError("modulus must be >= 1")
        frozen = tuple(tuple(int(x) % modulus for x in row) for row in data)
        if frozen:
            ncols = len(frozen[0])
            if any(len(r) != ncols for r in frozen):
                raise DimensionError("ragged rows")
            if cols is not None and cols != ncols:
                raise DimensionError("cols does not match data")
        else:
            if cols is None or cols < 1:
                raise DimensionError("zero-row ModMatrix needs an explicit positive column count")
            ncols = cols
        if ncols < 1:
            raise DimensionError("column count must be positive")
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "rows", len(frozen))
        object.__setattr__(self, "cols", ncols)
        object.__setattr__(self, "data", frozen)

    def __setattr__(self, name, value):
        raise AttributeError("ModMatrix is immutable")

    @staticmethod
    def identity(n: int, modulus: int) -> "ModMatrix":
        return ModMatrix(modulus, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @staticmethod
    def zeros(rows: int, cols: int, modulus: int) -> "ModMatrix":
        return ModMatrix(modulus, [[0] * cols for _ in range(rows)], cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def lift(self) -> IntMatrix:
        if self.rows == 0:
            raise DimensionError("cannot lift a zero-row matrix")
        return IntMatrix(self.data)

    def to_lists(self) -> List[List[int]]:
        return [list(r) for r in self.data]

    def transpose(self) -> "ModMatrix":
        if self.rows == 0:
            raise DimensionError("cannot transpose a zero-row matrix")
        return ModMatrix(
            self.modulus,
            [[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)],
        )

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.data for x in row)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ModMatrix)
            and self.modulus == other.modulus
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __hash__(self) -> int:
        return hash(("ModMatrix", self.modulus, self.cols, self.data))

    def _same(self, other: "ModMatrix") -> None:
        if self.modulus != other.modulus:
            raise MatrixError("modulus mismatch")
        if self.rows != other.rows or self.cols != other.cols:
            raise DimensionError("shape mismatch")

    def __add__(self, other: "ModMatrix") -> "ModMatrix":
        self._same(other)
        return ModMatrix(
            self.modulus,
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.data, other.data)],
            self.cols,
        )

    def __sub__(self, other: "ModMatrix") -> "ModMatrix":
        self._same(other)
        return ModMatrix(
            self.modulus,
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.data, other.data)],
            self.cols,
        )

    def __neg__(self) -> "ModMatrix":
        return ModMatrix(self.modulus, [[-a for a in row] for row in self.data], self.cols)

    def __mul__(self, scalar):
        if not isinstance(scalar, int):
            return NotImplemented
        return ModMatrix(self.modulus, [[a * scalar for a in row] for row in self.data], self.cols)

    __rmul__ = __mul__

    def __matmul__(self, other: "ModMatrix") -> "ModMatrix":
        if not isinstance(other, ModMatrix):
            return NotImplemented
        if self.modulus != other.modulus:
            raise MatrixError("modulus mismatch")
        if self.cols != other.rows:
            raise DimensionError("inner dimensions do not match")
        n = self.modulus
        bt = [[other.data[i][j] for i in range(other.rows)] for j in range(other.cols)]
        return ModMatrix(
            n,
            [[sum(a * b for a, b in zip(row, col)) % n for col in bt] for row in self.data],
            other.cols,
        )

    def __pow__(self, e: int) -> "ModMatrix":
        if not self.is_square:
            raise DimensionError("powers need a square matrix")
        if e < 0:
            return self.inverse() ** (-e)
        result = ModMatrix.identity(self.rows, self.modulus)
        base = self
        while e:
            if e & 1:
                result = result @ base
            base = base @ base
            e >>= 1
        return result

    def det(self) -> int:
        if not self.is_square:
            raise DimensionError("determinant needs a square matrix")
        return _det_bareiss(self.data) % self.modulus

    def inverse(self) -> "ModMatrix":
        if not self.is_square:
            raise DimensionError("inverse needs a square matrix")
        n = self.modulus
        d = _det_bareiss(self.data) % n
        if math.gcd(d, n) != 1:
            raise SingularMatrixError(f"determinant {d} is not a unit mod {n}")
        inv_d = pow(d, -1, n)
        adj = self.lift().adjugate()
        return ModMatrix(n, [[x * inv_d for x in row] for row in adj.data], self.cols)

    def __repr__(self) -> str:
        return f"ModMatrix({self.modulus}, {self.to_lists()!r})"


def _minor(data: Sequence[Sequence[int]], i: int, j: int) -> Tuple[Tuple[int, ...], ...]:
    return tuple(
        tuple(x for cj, x in enumerate(row) if cj != j)
        for ri, row in enumerate(data)
        if ri != i
    )


def _det_bareiss(data: Sequence[Sequence[int]]) -> int:
    """Fraction-free determinant; all divisions are exact."""
    n = len(data)
    if n == 0:
        return 1
    if n == 1:
        return data[0][0]
    m = [list(r) for r in data]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pk = m[k][k]
        for i in range(k + 1, n):
            mi = m[i]
            mik = mi[k]
            for j in range(k + 1, n):
                mi[j] = (mi[j] * pk - mik * m[k][j]) // prev
        prev = pk
    return sign * m[n - 1][n - 1]


@dataclass(frozen=True)
class SmithDecomposition:
    """U @ A @ V == D with U, V unimodular; diagonal divisors d1 | d2 | ..."""

    u: IntMatrix
    d: IntMatrix
    v: IntMatrix

    @property
    def divisors(self) -> Tuple[int, ...]:
        return tuple(self.d.data[i][i] for i in range(min(self.d.rows, self.d.cols)))

    @property
    def nonzero_divisors(self) -> Tuple[int, ...]:
        return tuple(x for x in self.divisors if x != 0)

    @property
    def rank(self) -> int:
        return len(self.nonzero_divisors)


def _select_pivot(m, rows, cols, t):
    best = None
    best_abs = 0
    for i in range(t, rows):
        for j in range(t, cols):
            v = m[i][j]
            if v != 0 and (best is None or abs(v) < best_abs):
                best = (i, j)
                best_abs = abs(v)
    return best


def smith_normal_form(a: IntMatrix) -> SmithDecomposition:
    """Smith normal form with transforms.

    The pivot at each stage is the smallest-absolute-value nonzero entry
    of the trailing block, ties broken row-major, so the computation is
    deterministic.  Diagonal entries come out nonnegative with zeros
    last and each dividing the next.
    """
    rows, cols = a.rows, a.cols
    m = a.to_lists()
    u = IntMatrix.identity(rows).to_lists()
    v = IntMatrix.identity(cols).to_lists()
    for t in range(min(rows, cols)):
        while True:
            piv = _select_pivot(m, rows, cols, t)
            if piv is None:
                break
            pi, pj = piv
            if pi != t:
                m[t], m[pi] = m[pi], m[t]
                u[t], u[pi] = u[pi], u[t]
            if pj != t:
                for row in m:
                    row[t], row[pj] = row[pj], row[t]
                for row in v:
                    row[t], row[pj] = row[pj], row[t]
            pivot = m[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if m[i][t]:
                    q = m[i][t] // pivot
                    if q:
                        m[i] = [x - q * y for x, y in zip(m[i], m[t])]
                        u[i] = [x - q * y for x, y in zip(u[i], u[t])]
                    if m[i][t]:
                        dirty = True
            for j in range(t + 1, cols):
                if m[t][j]:
                    q = m[t][j] // pivot
                    if q:
                        for row in m:
                            row[j] -= q * row[t]
                        for row in v:
                            row[j] -= q * row[t]
                    if m[t][j]:
                        dirty = True
            if dirty:
                continue
            stain = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if m[i][j] % pivot:
                        stain = i
                        break
                if stain is not None:
                    break
            if stain is None:
                break
            m[t] = [x + y for x, y in zip(m[t], m[stain])]
            u[t] = [x + y for x, y in zip(u[t], u[stain])]
        if m[t][t] < 0:
            m[t] = [-x for x in m[t]]
            u[t] = [-x for x in u[t]]
    return SmithDecomposition(IntMatrix(u), IntMatrix(m), IntMatrix(v))


def _hnf_rows(rows: List[List[int]], cols: int) -> List[List[int]]:
    """Row Hermite normal form; returns only the nonzero rows.

    Pivots are positive, pivot columns strictly increase, and entries
    above each pivot are reduced into [0, pivot).
    """
    work = [list(r) for r in rows]
    m = len(work)
    pr = 0
    for j in range(cols):
        while True:
            nz = [i for i in range(pr, m) if work[i][j] != 0]
            if not nz:
                break
            i0 = min(nz, key=lambda i: (abs(work[i][j]), i))
            if i0 != pr:
                work[pr], work[i0] = work[i0], work[pr]
            p = work[pr][j]
            clean = True
            for i in range(pr + 1, m):
                if work[i][j]:
                    q = work[i][j] // p
                    if q:
                        work[i] = [x - q * y for x, y in zip(work[i], work[pr])]
                    if work[i][j]:
                        clean = False
            if clean:
                break
        if pr < m and work[pr][j] != 0:
            if work[pr][j] < 0:
                work[pr] = [-x for x in work[pr]]
            p = work[pr][j]
            for i in range(pr):
                q = work[i][j] // p
                if q:
                    work[i] = [x - q * y for x, y in zip(work[i], work[pr])]
            pr += 1
    return work[:pr]


def hermite_normal_form(a: IntMatrix) -> IntMatrix:
    """Row Hermite normal form of a; zero rows are dropped.

    Raises MatrixError when the row space is trivial, since IntMatrix
    cannot represent an empty matrix.
    """
    rows = _hnf_rows(a.to_lists(), a.cols)
    if not rows:
        raise MatrixError("zero row space has no IntMatrix Hermite form")
    return IntMatrix(rows)


def howell_form(a: ModMatrix) -> ModMatrix:
    """Canonical generator matrix for the row span of a over Z/nZ.

    Computed as the Hermite form of the rows stacked over n*I, reduced
    mod n with vanishing rows dropped.  Every pivot divides n, and two
    matrices have equal row spans iff their Howell forms are equal.
    """
    n, cols = a.modulus, a.cols
    stacked = a.to_lists() + [
        [n if i == j else 0 for j in range(cols)] for i in range(cols)
    ]
    h = _hnf_rows(stacked, cols)
    out = []
    for row in h:
        red = [x % n for x in row]
        if any(red):
            out.append(red)
    return ModMatrix(n, out, cols)


def howell_pivots(h: ModMatrix) -> Tuple[Tuple[int, int], ...]:
    """(column, pivot) pairs for the rows of a Howell-form matrix."""
    out = []
    for row in h.data:
        for j, x in enumerate(row):
            if x:
                out.append((j, x))
                break
    return tuple(out)


def kernel_mod_n(a: ModMatrix) -> ModMatrix:
    """Howell-form generators of {x : a @ x == 0 over Z/nZ}.

    A zero-row matrix imposes no constraints, so the kernel is all of
    (Z/nZ)^cols.
    """
    n, cols = a.modulus, a.cols
    if a.rows == 0 or a.is_zero():
        return howell_form(ModMatrix.identity(cols, n))
    snf = smith_normal_form(a.lift())
    lim = min(a.rows, cols)
    gens = []
    for i in range(cols):
        if i < lim:
            g = n // math.gcd(snf.divisors[i], n)
        else:
            g = 1
        if g % n == 0:
            continue
        gens.append([snf.v.data[r][i] * g for r in range(cols)])
    return howell_form(ModMatrix(n, gens, cols))


def char_poly(a: IntMatrix) -> IntPoly:
    """Monic characteristic polynomial det(x*I - a), exactly over Z.

    Faddeev-LeVerrier: every division is exact, and the Cayley-Hamilton
    identity is asserted at the end as an internal check.
    """
    if not a.is_square:
        raise DimensionError("characteristic polynomial needs a square matrix")
    n = a.rows
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    m = IntMatrix.identity(n)
    for k in range(1, n + 1):
        am = a @ m
        q, rem = divmod(-am.trace(), k)
        assert rem == 0, "Faddeev-LeVerrier division must be exact"
        coeffs[n - k] = q
        m = am + q * IntMatrix.identity(n)
    assert m.is_zero(), "Cayley-Hamilton check failed"
    return IntPoly(coeffs)


def exterior_power(a, k: int):
    """k-th exterior power; entries are k x k minors in lexicographic order.

    Accepts IntMatrix or ModMatrix (the latter computed via an integer
    lift and reduced).  k = 0 gives the 1 x 1 identity.
    """
    if isinstance(a, ModMatrix):
        lifted = exterior_power(a.lift(), k)
        return ModMatrix(a.modulus, lifted.data)
    if not isinstance(a, IntMatrix):
        raise TypeError("exterior_power expects IntMatrix or ModMatrix")
    if not a.is_square:
        raise DimensionError("exterior power needs a square matrix")
    if k < 0 or k > a.rows:
        raise ValueError("k out of range")
    subsets = list(itertools.combinations(range(a.rows), k))
    ent = []
    for s in subsets:
        row = []
        for t in subsets:
            sub = tuple(tuple(a.data[i][j] for j in t) for i in s)
            row.append(_det_bareiss(sub))
        ent.append(row)
    return IntMatrix(ent)


def is_unipotent(a) -> Tuple[bool, Optional[int]]:
    """(True, index) when (a - I) is nilpotent; index(I) is fixed at 0."""
    if isinstance(a, IntMatrix):
        ident = IntMatrix.identity(a.rows)
    elif isinstance(a, ModMatrix):
        ident = ModMatrix.identity(a.rows, a.modulus)
    else:
        raise TypeError("is_unipotent expects IntMatrix or ModMatrix")
    if not a.is_square:
        raise DimensionError("unipotency needs a square matrix")
    nil = a - ident
    if nil.is_zero():
        return True, 0
    power = nil
    for r in range(1, a.rows + 1):
        if power.is_zero():
            return True, r
        power = power @ nil
    return False, None
