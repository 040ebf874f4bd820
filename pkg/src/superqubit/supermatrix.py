"""Z2-graded matrices over a finite complex Grassmann algebra.

A supermatrix carries explicit per-row and per-column parity labels
(0 even, 1 odd) and a declared parity.  For a matrix of declared parity
s, the entry at (i, j) must be a homogeneous Supernumber of parity
|i| + |j| + s mod 2 (or zero).  With rows/columns ordered even-first
this reproduces the usual A/B/C/D block picture; permuted orders (as
produced by the graded tensor product) are equally valid.

Inhomogeneous matrices are formal even+odd sums (declared parity None);
every parity-sensitive operation acts per homogeneous part.
"""

from __future__ import annotations

from .grassmann import (
    COMPARE_TOL,
    DimensionMismatch,
    ParityError,
    Supernumber,
)
import numbers


class NotNilpotent(ValueError):
    """exp_nilpotent requires every entry to have zero body."""


def _as_parity_tuple(par) -> tuple[int, ...]:
    t = tuple(int(x) for x in par)
    if any(x not in (0, 1) for x in t):
        raise ValueError(f"parities must be 0 or 1, got {par!r}")
    return t


class Supermatrix:
    """Dense graded matrix; immutable, entries are Supernumbers."""

    __slots__ = ("order", "row_parity", "col_parity", "entries", "parity")

    def __init__(self, entries, row_parity, col_parity, parity, order=None, validate=True):
        row_parity = _as_parity_tuple(row_parity)
        col_parity = _as_parity_tuple(col_parity)
        if parity not in (0, 1, None):
            raise ValueError("parity must be 0 (even), 1 (odd) or None (inhomogeneous)")
        rows = []
        for r in entries:
            rows.append(tuple(r))
        if len(rows) != len(row_parity) or any(len(r) != len(col_parity) for r in rows):
            raise DimensionMismatch("entry grid does not match the parity labels")
        if order is None:
            for r in rows:
                for e in r:
                    if isinstance(e, Supernumber):
                        order = e.order
                        break
                if order is not None:
                    break
            if order is None:
                raise ValueError("cannot infer algebra order from scalar-only entries")
        grid = []
        for r in rows:
            grid.append(tuple(
                e if isinstance(e, Supernumber) else Supernumber.from_complex(e, order)
                for e in r
            ))
        for r in grid:
            for e in r:
                if e.order != order:
                    raise DimensionMismatch("mixed algebra orders in one matrix")
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "row_parity", row_parity)
        object.__setattr__(self, "col_parity", col_parity)
        object.__setattr__(self, "entries", tuple(grid))
        object.__setattr__(self, "parity", parity)
        if validate and parity is not None:
            self._validate()

    def __setattr__(self, name, value):
        raise AttributeError("Supermatrix is immutable")

    def _validate(self):
        s = self.parity
        for i, rp in enumerate(self.row_parity):
            for j, cp in enumerate(self.col_parity):
                e = self.entries[i][j]
                if e.is_zero(0.0):
                    continue
                want = (rp + cp + s) % 2
                if e.parity() != want:
                    raise ParityError(
                        f"entry ({i},{j}) has parity {e.parity()}, "
                        f"declared matrix parity {s} requires {want}"
                    )

    # -- construction helpers ----------------------------------------------

    @staticmethod
    def identity(parities, order: int) -> "Supermatrix":
        parities = _as_parity_tuple(parities)
        n = len(parities)
        one = Supernumber.one(order)
        zero = Supernumber.zero(order)
        grid = [[one if i == j else zero for j in range(n)] for i in range(n)]
        return Supermatrix(grid, parities, parities, 0, order=order)

    @staticmethod
    def zeros(row_parity, col_parity, order: int, parity=0) -> "Supermatrix":
        z = Supernumber.zero(order)
        grid = [[z] * len(col_parity) for _ in row_parity]
        return Supermatrix(grid, row_parity, col_parity, parity, order=order)

    @staticmethod
    def column(entries, row_parity, parity, order=None) -> "Supermatrix":
        return Supermatrix([[e] for e in entries], row_parity, (0,), parity, order=order)

    @staticmethod
    def row(entries, col_parity, parity, order=None) -> "Supermatrix":
        return Supermatrix([list(entries)], (0,), col_parity, parity, order=order)

    # -- inspection ----------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.row_parity), len(self.col_parity)

    @property
    def row_dims(self) -> tuple[int, int]:
        return self.row_parity.count(0), self.row_parity.count(1)

    @property
    def col_dims(self) -> tuple[int, int]:
        return self.col_parity.count(0), self.col_parity.count(1)

    def is_square(self) -> bool:
        return self.row_parity == self.col_parity

    def is_zero(self, tol: float | None = None) -> bool:
        return all(e.is_zero(tol) for r in self.entries for e in r)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def _map(self, f, parity) -> "Supermatrix":
        grid = [[f(e) for e in r] for r in self.entries]
        return Supermatrix(grid, self.row_parity, self.col_parity, parity,
                           order=self.order, validate=False)

    def even_part(self) -> "Supermatrix":
        out = [[e.even_part() if (rp + cp) % 2 == 0 else e.odd_part()
                for cp, e in zip(self.col_parity, row)]
               for rp, row in zip(self.row_parity, self.entries)]
        return Supermatrix(out, self.row_parity, self.col_parity, 0,
                           order=self.order, validate=False)

    def odd_part(self) -> "Supermatrix":
        out = [[e.odd_part() if (rp + cp) % 2 == 0 else e.even_part()
                for cp, e in zip(self.col_parity, row)]
               for rp, row in zip(self.row_parity, self.entries)]
        return Supermatrix(out, self.row_parity, self.col_parity, 1,
                           order=self.order, validate=False)

    # -- linear structure ----------------------------------------------------

    def _check_same_shape(self, other):
        if self.row_parity != other.row_parity or self.col_parity != other.col_parity:
            raise DimensionMismatch("shape/parity labels differ")
        if self.order != other.order:
            raise DimensionMismatch("algebra orders differ")

    def __add__(self, other):
        if not isinstance(other, Supermatrix):
            return NotImplemented
        self._check_same_shape(other)
        parity = self.parity if self.parity == other.parity else None
        grid = [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)]
        return Supermatrix(grid, self.row_parity, self.col_parity, parity,
                           order=self.order, validate=False)

    def __neg__(self):
        return self._map(lambda e: -e, self.parity)

    def __sub__(self, other):
        if not isinstance(other, Supermatrix):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (Supernumber, numbers.Complex)):
            return scalar_right(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (Supernumber, numbers.Complex)):
            return scalar_left(other, self)
        return NotImplemented

    def __matmul__(self, other):
        if not isinstance(other, Supermatrix):
            return NotImplemented
        if self.col_parity != other.row_parity:
            raise DimensionMismatch("inner parity labels differ")
        if self.order != other.order:
            raise DimensionMismatch("algebra orders differ")
        n, k = self.shape
        m = other.shape[1]
        zero = Supernumber.zero(self.order)
        grid = []
        for i in range(n):
            row = []
            for j in range(m):
                acc = zero
                for t in range(k):
                    acc = acc + self.entries[i][t] * other.entries[t][j]
                row.append(acc)
            grid.append(row)
        if self.parity is None or other.parity is None:
            parity = None
        else:
            parity = (self.parity + other.parity) % 2
        return Supermatrix(grid, self.row_parity, other.col_parity, parity,
                           order=self.order, validate=False)

    def __eq__(self, other):
        if not isinstance(other, Supermatrix):
            return NotImplemented
        if self.row_parity != other.row_parity or self.col_parity != other.col_parity:
            return False
        if self.order != other.order:
            return False
        return (self - other).is_zero()

    __hash__ = None

    # -- graded operations ---------------------------------------------------

    def supertranspose(self) -> "Supermatrix":
        if self.parity is None:
            return self.even_part().supertranspose() + self.odd_part().supertranspose()
        s = self.parity
        n, m = self.shape
        grid = []
        for c in range(m):
            row = []
            for r in range(n):
                rp, cp = self.row_parity[r], self.col_parity[c]
                if rp == cp:
                    sign = 1
                elif rp == 1:  # old C block -> new upper block
                    sign = -1 if s else 1
                else:          # old B block -> new lower block
                    sign = 1 if s else -1
                e = self.entries[r][c]
                row.append(e * sign if sign < 0 else e)
            grid.append(row)
        return Supermatrix(grid, self.col_parity, self.row_parity, s,
                           order=self.order, validate=False)

    def hash(self) -> "Supermatrix":
        """Entrywise hash involution (preserves parity labels)."""
        return self._map(lambda e: e.hash(), self.parity)

    def grade_adjoint(self) -> "Supermatrix":
        return self.hash().supertranspose()

    def __repr__(self):
        return (f"Supermatrix({self.shape[0]}x{self.shape[1]}, parity={self.parity}, "
                f"rows={self.row_parity}, cols={self.col_parity})")

    def __str__(self):
        width = max((len(str(e)) for r in self.entries for e in r), default=1)
        lines = []
        for r in self.entries:
            lines.append("[ " + " | ".join(str(e).ljust(width) for e in r) + " ]")
        return "\n".join(lines)


def supertranspose(s: Supermatrix) -> Supermatrix:
    return s.supertranspose()


def grade_adjoint(s: Supermatrix) -> Supermatrix:
    return s.grade_adjoint()


def supertrace(s: Supermatrix) -> Supernumber:
    """Tr(A) - (-1)^|S| Tr(D) over the graded diagonal."""
    if not s.is_square():
        raise DimensionMismatch("supertrace needs matching row/column parities")
    if s.parity is None:
        return supertrace(s.even_part()) + supertrace(s.odd_part())
    acc = Supernumber.zero(s.order)
    for i, rp in enumerate(s.row_parity):
        e = s.entries[i][i]
        if rp == 1 and s.parity == 0:
            e = -e
        acc = acc + e
    return acc


def scalar_left(zeta, s: Supermatrix) -> Supermatrix:
    """zeta * S with the row-parity sign (-1)^(|zeta| |i|)."""
    if not isinstance(zeta, Supernumber):
        zeta = Supernumber.from_complex(zeta, s.order)
    zp = zeta.parity()
    if zp is None:
        return scalar_left(zeta.even_part(), s) + scalar_left(zeta.odd_part(), s)
    grid = [[(zeta * e if rp == 0 or zp == 0 else -(zeta * e)) for e in row]
            for rp, row in zip(s.row_parity, s.entries)]
    parity = None if s.parity is None else (s.parity + zp) % 2
    return Supermatrix(grid, s.row_parity, s.col_parity, parity,
                       order=s.order, validate=False)


def scalar_right(s: Supermatrix, zeta) -> Supermatrix:
    """S * zeta with the column-parity sign (-1)^(|zeta| |j|)."""
    if not isinstance(zeta, Supernumber):
        zeta = Supernumber.from_complex(zeta, s.order)
    zp = zeta.parity()
    if zp is None:
        return scalar_right(s, zeta.even_part()) + scalar_right(s, zeta.odd_part())
    grid = [[(e * zeta if cp == 0 or zp == 0 else -(e * zeta))
             for cp, e in zip(s.col_parity, row)]
            for row in s.entries]
    parity = None if s.parity is None else (s.parity + zp) % 2
    return Supermatrix(grid, s.row_parity, s.col_parity, parity,
                       order=s.order, validate=False)


def graded_kron(a: Supermatrix, b: Supermatrix) -> Supermatrix:
    """Graded tensor product of two even supermatrices.

    Entry at (row (i,k), col (j,l)) is (-1)^((|i|+|j|)|k|) a_ij b_kl, which
    makes (A (x) B)(u (x) v) = (Au) (x) (Bv) in the graded basis whose ket
    (i,k) has parity |i|+|k|.  Row/column pairs are flattened in
    lexicographic order (a-index outer).
    """
    if a.parity != 0 or b.parity != 0:
        raise ParityError("graded tensor product needs even factors")
    if a.order != b.order:
        raise DimensionMismatch("algebra orders differ")
    row_parity = tuple((pa + pb) % 2 for pa in a.row_parity for pb in b.row_parity)
    col_parity = tuple((pa + pb) % 2 for pa in a.col_parity for pb in b.col_parity)
    na, ma = a.shape
    nb, mb = b.shape
    grid = []
    for i in range(na):
        for k in range(nb):
            row = []
            for j in range(ma):
                koszul = (a.row_parity[i] + a.col_parity[j]) * b.row_parity[k]
                for l in range(mb):
                    e = a.entries[i][j] * b.entries[k][l]
                    row.append(-e if koszul % 2 else e)
            grid.append(row)
    return Supermatrix(grid, row_parity, col_parity, 0, order=a.order, validate=False)


def exp_nilpotent(s: Supermatrix, tol: float | None = None) -> Supermatrix:
    """Matrix exponential of a pure-soul (hence nilpotent) supermatrix."""
    if not s.is_square():
        raise DimensionMismatch("exp needs a square matrix")
    tol = COMPARE_TOL if tol is None else tol
    for row in s.entries:
        for e in row:
            if abs(e.body) > tol:
                raise NotNilpotent(f"entry has nonzero body {e.body}")
    acc = Supermatrix.identity(s.row_parity, s.order)
    term = acc
    for k in range(1, s.order + 2):
        term = (term @ s) * (1.0 / k)
        if term.is_zero(0.0):
            break
        acc = acc + term
    return acc
