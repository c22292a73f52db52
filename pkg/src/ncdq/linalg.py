"""Exact field arithmetic and sparse exact linear algebra.

Vectors are plain dicts ``{index: value}`` with zero entries omitted.  Over the
rationals values are ``int`` where possible and ``Fraction`` otherwise; over a
prime field they are ints in ``range(p)``.
"""

from __future__ import annotations

import heapq
import warnings
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

Vector = Dict[int, object]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class Field:
    """The rationals (``p == 0``) or the prime field GF(p)."""

    p: int = 0

    def __post_init__(self):
        if self.p and not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @classmethod
    def rationals(cls) -> "Field":
        return cls(0)

    @classmethod
    def prime(cls, p: int, warn: bool = True) -> "Field":
        if warn:
            warnings.warn(
                "prime-field mode: results are only meaningful in characteristic zero",
                stacklevel=2,
            )
        return cls(p)

    @property
    def is_rational(self) -> bool:
        return self.p == 0

    def __call__(self, x) -> object:
        if self.p:
            if isinstance(x, str):
                x = Fraction(x)
            if isinstance(x, Fraction):
                return x.numerator * pow(x.denominator, -1, self.p) % self.p
            return int(x) % self.p
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, Fraction):
            return x.numerator if x.denominator == 1 else x
        return int(x)

    def reduce(self, x):
        if self.p:
            return x % self.p
        if type(x) is Fraction and x.denominator == 1:
            return x.numerator
        return x

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        if self.p:
            return pow(x, -1, self.p)
        if x == 1 or x == -1:
            return int(x)
        return self.reduce(Fraction(1) / x)

    def div(self, a, b):
        return self.reduce(a * self.inv(b))

    def elements(self):
        if not self.p:
            raise ValueError("the rationals cannot be enumerated")
        return range(self.p)

    def __str__(self):
        return "Q" if not self.p else f"GF({self.p})"


QQ = Field(0)


# -- vector helpers ---------------------------------------------------------


def vec_add(u: Vector, v: Vector, F: Field, scale=1) -> Vector:
    """Return ``u + scale * v`` as a new vector."""
    out = dict(u)
    for k, x in v.items():
        y = F.reduce(out.get(k, 0) + scale * x)
        if y:
            out[k] = y
        else:
            out.pop(k, None)
    return out


def vec_iadd(u: Vector, v: Vector, F: Field, scale=1) -> None:
    for k, x in v.items():
        y = F.reduce(u.get(k, 0) + scale * x)
        if y:
            u[k] = y
        else:
            u.pop(k, None)


def vec_scale(v: Vector, c, F: Field) -> Vector:
    if not c:
        return {}
    return {k: F.reduce(c * x) for k, x in v.items()}


def vec_clean(v: Vector, F: Field) -> Vector:
    out = {}
    for k, x in v.items():
        x = F.reduce(x)
        if x:
            out[k] = x
    return out


# -- sparse matrices ---------------------------------------------------------


@dataclass(frozen=True)
class SparseMatrix:
    """An immutable ``rows x cols`` matrix stored as ``{row: {col: value}}``."""

    rows: int
    cols: int
    data: Dict[int, Dict[int, object]] = dc_field(default_factory=dict)
    field: Field = QQ

    def __post_init__(self):
        for r, row in self.data.items():
            if not 0 <= r < self.rows:
                raise IndexError(f"row {r} out of range")
            for c, x in row.items():
                if not 0 <= c < self.cols:
                    raise IndexError(f"column {c} out of range")
                if not x:
                    raise ValueError("stored entries must be nonzero")

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence], F: Field = QQ, cols: Optional[int] = None):
        rows = len(dense)
        if cols is None:
            cols = len(dense[0]) if rows else 0
        data = {}
        for i, row in enumerate(dense):
            r = {j: F(x) for j, x in enumerate(row) if F(x)}
            if r:
                data[i] = r
        return cls(rows, cols, data, F)

    @classmethod
    def from_columns(cls, rows: int, columns: Sequence[Vector], F: Field = QQ):
        data: Dict[int, Dict[int, object]] = {}
        for j, col in enumerate(columns):
            for i, x in col.items():
                if x:
                    data.setdefault(i, {})[j] = x
        return cls(rows, len(columns), data, F)

    @classmethod
    def identity(cls, n: int, F: Field = QQ):
        return cls(n, n, {i: {i: 1} for i in range(n)}, F)

    def columns(self) -> List[Vector]:
        cols: List[Vector] = [dict() for _ in range(self.cols)]
        for i, row in self.data.items():
            for j, x in row.items():
                cols[j][i] = x
        return cols

    def row_vectors(self) -> List[Vector]:
        return [dict(self.data.get(i, {})) for i in range(self.rows)]

    def apply(self, v: Vector) -> Vector:
        out: Vector = {}
        F = self.field
        for i, row in self.data.items():
            s = 0
            for j, x in row.items():
                y = v.get(j)
                if y:
                    s += x * y
            s = F.reduce(s)
            if s:
                out[i] = s
        return out

    def to_dense(self):
        return [[self.data.get(i, {}).get(j, 0) for j in range(self.cols)] for i in range(self.rows)]


# -- incremental echelon form -----------------------------------------------


class Echelon:
    """Row-echelon basis of a subspace, grown one vector at a time.

    Every stored row has its smallest index as pivot, normalised to 1.  With
    ``track=True`` each row remembers which tagged input vectors it combines,
    so reductions can report how a vector decomposes over the inputs.
    """

    def __init__(self, F: Field = QQ, track: bool = False):
        self.F = F
        self.track = track
        self.rows: Dict[int, Vector] = {}
        self.combos: Dict[int, Dict[Hashable, object]] = {}

    def __len__(self):
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def copy(self) -> "Echelon":
        other = Echelon(self.F, self.track)
        other.rows = dict(self.rows)
        other.combos = dict(self.combos)
        return other

    def reduce(self, v: Vector, combo: Optional[dict] = None) -> Tuple[Vector, dict]:
        """Reduce ``v`` against the stored rows.

        Returns ``(remainder, combo)`` with ``v = remainder + sum combo[t] * input_t``.
        """
        F = self.F
        p = F.p
        rows = self.rows
        v = dict(v)
        combo = {} if combo is None else combo
        heap = [c for c in v if c in rows]
        heapq.heapify(heap)
        while heap:
            c = heapq.heappop(heap)
            x = v.get(c)
            if x is None:
                continue
            row = rows[c]
            for cc, y in row.items():
                old = v.get(cc)
                if old is None:
                    nv = -x * y
                    if p:
                        nv %= p
                    elif type(nv) is Fraction and nv.denominator == 1:
                        nv = nv.numerator
                    v[cc] = nv
                    if cc in rows and cc != c:
                        heapq.heappush(heap, cc)
                else:
                    nv = old - x * y
                    if p:
                        nv %= p
                    elif type(nv) is Fraction and nv.denominator == 1:
                        nv = nv.numerator
                    if nv:
                        v[cc] = nv
                    else:
                        del v[cc]
            if self.track:
                for t, y in self.combos[c].items():
                    nv = F.reduce(combo.get(t, 0) + x * y)
                    if nv:
                        combo[t] = nv
                    else:
                        combo.pop(t, None)
        return v, combo

    def add(self, v: Vector, tag: Hashable = None) -> bool:
        """Insert ``v``; return True iff it was independent of the stored rows."""
        F = self.F
        rem, combo = self.reduce(v)
        if self.track:
            # rem = v - sum combo * inputs, so rem carries {tag: 1} - combo
            combo = {t: F.reduce(-y) for t, y in combo.items()}
            if tag is not None:
                combo[tag] = F.reduce(combo.get(tag, 0) + 1)
                if not combo[tag]:
                    del combo[tag]
        if not rem:
            return False
        piv = min(rem)
        inv = F.inv(rem[piv])
        row = {c: F.reduce(x * inv) for c, x in rem.items()}
        self.rows[piv] = row
        if self.track:
            self.combos[piv] = {t: F.reduce(y * inv) for t, y in combo.items() if y}
        return True

    def contains(self, v: Vector) -> bool:
        return not self.reduce(v)[0]

    __contains__ = contains

    def pivots(self) -> List[int]:
        return sorted(self.rows)

    def basis(self) -> List[Vector]:
        return [dict(self.rows[c]) for c in sorted(self.rows)]

    def rref_rows(self) -> Dict[int, Vector]:
        """Fully reduced rows keyed by pivot (no pivot appears in another row)."""
        F = self.F
        out: Dict[int, Vector] = {}
        for c in sorted(self.rows, reverse=True):
            row = dict(self.rows[c])
            for cc in [k for k in row if k != c and k in out]:
                x = row.get(cc)
                if x:
                    vec_iadd(row, out[cc], F, -x)
            out[c] = row
        return out


def span_echelon(vectors: Iterable[Vector], F: Field = QQ) -> Echelon:
    ech = Echelon(F)
    for v in vectors:
        ech.add(v)
    return ech


# -- matrix operations -------------------------------------------------------


def _markowitz_rank(rows: List[Vector], F: Field) -> int:
    """Rank by sparse elimination with Markowitz-style pivot selection.

    Pivot: the shortest remaining row, then its column with the fewest
    occurrences; ties broken by (row, col) index.
    """
    p = F.p
    rows = {i: dict(r) for i, r in enumerate(rows) if r}
    colrows: Dict[int, set] = {}
    for i, r in rows.items():
        for c in r:
            colrows.setdefault(c, set()).add(i)
    # buckets of rows by length
    rank = 0
    heap = [(len(r), i) for i, r in rows.items()]
    heapq.heapify(heap)
    while heap:
        ln, i = heapq.heappop(heap)
        r = rows.get(i)
        if r is None or len(r) != ln:
            continue
        pc = min(r, key=lambda c: (len(colrows[c]), c))
        del rows[i]
        for c in r:
            colrows[c].discard(i)
        rank += 1
        pinv = F.inv(r[pc])
        for k in sorted(colrows[pc]):
            rk = rows[k]
            f = rk[pc] * pinv
            for c, x in r.items():
                old = rk.get(c)
                nv = (0 if old is None else old) - f * x
                if p:
                    nv %= p
                elif type(nv) is Fraction and nv.denominator == 1:
                    nv = nv.numerator
                if nv:
                    if old is None:
                        colrows[c].add(k)
                    rk[c] = nv
                elif old is not None:
                    del rk[c]
                    colrows[c].discard(k)
            if rk:
                heapq.heappush(heap, (len(rk), k))
            else:
                del rows[k]
        colrows[pc] = set()
    return rank


def rank(m: SparseMatrix) -> int:
    """Exact rank of ``m``."""
    if not m.data:
        return 0
    return _markowitz_rank([m.data[i] for i in sorted(m.data)], m.field)


def rank_of_vectors(vectors: Sequence[Vector], F: Field = QQ) -> int:
    vs = [v for v in vectors if v]
    if not vs:
        return 0
    return _markowitz_rank(vs, F)


def column_kernel(columns: Sequence[Vector], F: Field = QQ) -> Tuple[List[Vector], Echelon]:
    """Kernel of the map whose j-th column is ``columns[j]``.

    Returns a kernel basis (one vector per dependent column, supported on that
    column and earlier pivot columns) and the echelon form of the image.
    """
    ech = Echelon(F, track=True)
    kernel = []
    for j, col in enumerate(columns):
        rem, combo = ech.reduce(col)
        if rem:
            ech.add(col, tag=j)
        else:
            v = {t: F.reduce(-y) for t, y in combo.items() if y}
            v[j] = 1
            kernel.append(v)
    return kernel, ech


def kernel_basis(m: SparseMatrix) -> List[Vector]:
    """Basis of the right kernel ``{v : m v = 0}``."""
    return column_kernel(m.columns(), m.field)[0]


def image_echelon(m: SparseMatrix) -> Echelon:
    return span_echelon(m.columns(), m.field)


def solve(m: SparseMatrix, b: Vector) -> Optional[Vector]:
    """One solution of ``m x = b`` or None."""
    return solve_columns(m.columns(), b, m.field)


def solve_columns(columns: Sequence[Vector], b: Vector, F: Field = QQ) -> Optional[Vector]:
    ech = Echelon(F, track=True)
    for j, col in enumerate(columns):
        ech.add(col, tag=j)
    rem, combo = ech.reduce(b)
    if rem:
        return None
    return {t: y for t, y in combo.items() if y}


class QuotientSpace:
    """Coordinates on ``F^n / U`` using standard basis vectors as coset representatives."""

    def __init__(self, space_dim: int, subspace: Iterable[Vector], F: Field = QQ):
        self.dim_ambient = space_dim
        self.F = F
        self.sub = span_echelon(subspace, F)
        piv = set(self.sub.rows)
        self.representatives = [i for i in range(space_dim) if i not in piv]
        self._pos = {i: k for k, i in enumerate(self.representatives)}

    @property
    def dim(self) -> int:
        return len(self.representatives)

    def project(self, v: Vector) -> Vector:
        rem, _ = self.sub.reduce(v)
        return {self._pos[i]: x for i, x in rem.items()}

    def lift(self, coords: Vector) -> Vector:
        return {self.representatives[k]: x for k, x in coords.items() if x}


def quotient_basis(space_dim: int, subspace: Iterable[Vector], F: Field = QQ):
    """Coset representatives (as unit vectors) and the projection to quotient coordinates."""
    q = QuotientSpace(space_dim, subspace, F)
    reps = [{i: 1} for i in q.representatives]
    return reps, q.project


class SubquotientCoords:
    """Coordinates of vectors of ``Z`` modulo ``B`` for a chosen basis of ``Z/B``.

    ``reps`` are picked greedily from ``candidates`` (in order) among those
    independent of ``B`` and of earlier picks.
    """

    def __init__(self, boundary: Echelon, candidates: Iterable[Vector]):
        self.F = boundary.F
        self.ech = Echelon(self.F, track=True)
        for c in sorted(boundary.rows):
            self.ech.rows[c] = boundary.rows[c]
            self.ech.combos[c] = {}
        self.reps: List[Vector] = []
        for z in candidates:
            if self.ech.add(z, tag=len(self.reps)):
                self.reps.append(z)

    @property
    def dim(self) -> int:
        return len(self.reps)

    def coords(self, v: Vector, strict: bool = True) -> Vector:
        rem, combo = self.ech.reduce(v)
        if rem and strict:
            raise ValueError("vector is not in the span of boundaries and representatives")
        return {t: y for t, y in combo.items() if y}
