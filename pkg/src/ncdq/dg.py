"""Windowed cochain complexes and dgas, split into (degree, weight) cells.

A cell ``(n, w)`` holds the degree-``n`` part of internal weight ``w``.  The
differential raises degree by one and keeps weight; products add both.
Ungraded objects put everything in weight 0.

Every complex lives in a finite window.  A cell is *known* when its contents
are correct: either it lies inside the window, or it lies outside but is
guaranteed to vanish (``known_zero``).  Cohomology at a cell is trusted only
when the cell and both neighbours are known.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .linalg import (Echelon, Field, QuotientSpace, SubquotientCoords, Vector, column_kernel,
                     rank_of_vectors, vec_iadd)

Cell = Tuple[int, int]


@dataclass
class GradedWindow:
    n_min: int
    n_max: int
    max_weight: Optional[int] = None        # None: ungraded, weight 0 only
    zero_above: bool = True                 # nothing lives above n_max
    zero_below: bool = False                # nothing lives below n_min
    known_zero: Optional[Callable[[int, int], bool]] = None
    exact_weights: bool = False             # nothing lives above max_weight

    def weights(self) -> range:
        return range(0, 1 if self.max_weight is None else self.max_weight + 1)

    def contains(self, n: int, w: int) -> bool:
        if not self.n_min <= n <= self.n_max:
            return False
        return w == 0 if self.max_weight is None else 0 <= w <= self.max_weight

    def known(self, n: int, w: int) -> bool:
        if self.contains(n, w):
            return True
        if self.max_weight is None and w != 0:
            return True
        if w < 0:
            return True
        if self.exact_weights and self.max_weight is not None and w > self.max_weight:
            return True
        if n > self.n_max and self.zero_above:
            return True
        if n < self.n_min and self.zero_below:
            return True
        if self.known_zero is not None and self.known_zero(n, w):
            return True
        return False

    def cells(self) -> List[Cell]:
        return [(n, w) for n in range(self.n_max, self.n_min - 1, -1) for w in self.weights()]


class CochainComplex:
    """A cochain complex given cell by cell.

    ``basis`` maps each in-window cell to a list of labels.  ``diff(cell, i)``
    returns the differential of basis element ``i`` as a vector in the cell
    ``(n + 1, w)``; it is only called when that cell is in the window.
    """

    def __init__(self, field: Field, window: GradedWindow, basis: Dict[Cell, List],
                 diff: Callable[[Cell, int], Vector], name: str = ""):
        self.field = field
        self.window = window
        self.basis = {c: list(b) for c, b in basis.items() if window.contains(*c)}
        self._diff = diff
        self._dcache: Dict[Cell, List[Vector]] = {}
        self.name = name

    def dim(self, cell: Cell) -> int:
        return len(self.basis.get(cell, ()))

    def cells(self) -> List[Cell]:
        return [c for c in self.window.cells() if self.dim(c)]

    def d_columns(self, cell: Cell) -> List[Vector]:
        """Differential out of ``cell``: one column per basis element."""
        hit = self._dcache.get(cell)
        if hit is not None:
            return hit
        n, w = cell
        if not self.dim(cell) or not self.dim((n + 1, w)):
            cols = [{} for _ in range(self.dim(cell))]
        else:
            cols = [self._diff(cell, i) for i in range(self.dim(cell))]
        self._dcache[cell] = cols
        return cols

    def d(self, cell: Cell, v: Vector) -> Vector:
        cols = self.d_columns(cell)
        out: Vector = {}
        for i, x in v.items():
            if cols[i]:
                vec_iadd(out, cols[i], self.field, x)
        return out

    def sizes(self) -> Dict[Cell, int]:
        return {c: self.dim(c) for c in self.cells()}

    def check_d_squared(self) -> List[Tuple[Cell, int]]:
        bad = []
        for cell in self.cells():
            n, w = cell
            if not self.window.contains(n + 2, w):
                continue
            for i, col in enumerate(self.d_columns(cell)):
                if col and self.d((n + 1, w), col):
                    bad.append((cell, i))
        return bad

    @classmethod
    def from_matrices(cls, field: Field, dims: Dict[Cell, int], diffs: Dict[Cell, List[Vector]],
                      window: Optional[GradedWindow] = None, name=""):
        """Explicit complex: ``diffs[cell]`` is the list of columns of d out of ``cell``."""
        if window is None:
            ns = [c[0] for c in dims] or [0]
            ws = [c[1] for c in dims] or [0]
            window = GradedWindow(min(ns), max(ns), max(ws) if max(ws) > 0 else None,
                                  zero_above=True, zero_below=True)
        basis = {c: list(range(k)) for c, k in dims.items()}
        def diff(c, i):
            col = diffs.get(c, [{}] * dims[c])[i]
            return {k: field(x) for k, x in col.items() if field(x)}

        return cls(field, window, basis, diff, name)


class DgaWindow(CochainComplex):
    """A dga in a window.

    ``mul(c1, i, c2, j)`` returns the product of basis elements as a vector in
    cell ``c1 + c2``; it is only called when that cell is in the window.
    ``unit`` is a vector in cell (0, 0).  ``augmentation`` (optional) is the
    functional on cell (0, 0) splitting the unit.
    """

    def __init__(self, field: Field, window: GradedWindow, basis: Dict[Cell, List],
                 diff: Callable[[Cell, int], Vector], mul: Callable[[Cell, int, Cell, int], Vector],
                 unit: Optional[Vector] = None, augmentation: Optional[Vector] = None, name: str = ""):
        super().__init__(field, window, basis, diff, name)
        self._mul = mul
        self.unit = unit
        self.augmentation = augmentation
        self._mcache: Dict[Tuple[Cell, int, Cell, int], Vector] = {}

    def mul_basis(self, c1: Cell, i: int, c2: Cell, j: int) -> Vector:
        key = (c1, i, c2, j)
        hit = self._mcache.get(key)
        if hit is None:
            tgt = (c1[0] + c2[0], c1[1] + c2[1])
            hit = self._mul(c1, i, c2, j) if self.window.contains(*tgt) else {}
            self._mcache[key] = hit
        return hit

    def mul(self, c1: Cell, u: Vector, c2: Cell, v: Vector) -> Vector:
        F = self.field
        out: Vector = {}
        for i, x in u.items():
            for j, y in v.items():
                p = self.mul_basis(c1, i, c2, j)
                if p:
                    vec_iadd(out, p, F, x * y)
        return out


def algebra_as_dga(A, name: str = "") -> DgaWindow:
    """A basis algebra concentrated in degree 0, zero differential.

    Graded algebras keep their weights; ungraded ones live in weight 0.
    """
    graded = A.graded
    maxw = (A.max_weight if A.max_weight is not None else max(A.weight, default=0)) if graded else None
    pos: Dict[Cell, List[int]] = {}
    for i in range(A.dim):
        pos.setdefault((0, A.weight[i] if graded else 0), []).append(i)
    index = {i: (c, k) for c, idx in pos.items() for k, i in enumerate(idx)}

    def mul(c1, i, c2, j):
        prod = A.mul(pos[c1][i], pos[c2][j])
        out = {}
        for g, x in prod.items():
            out[index[g][1]] = x
        return out

    unit = {index[g][1]: x for g, x in A.unit().items()}
    win = GradedWindow(0, 0, maxw, zero_above=True, zero_below=True,
                       exact_weights=bool(graded and A.exact))
    dga = DgaWindow(A.field, win, {c: [A.labels[i] for i in idx] for c, idx in pos.items()},
                    lambda c, i: {}, mul, unit=unit, name=name or A.name)
    dga.source_index = pos
    return dga


# -- cohomology -----------------------------------------------------------


@dataclass
class HCell:
    dim: int
    trusted: bool
    reps: List[Vector] = field(default_factory=list)
    coords: Optional[SubquotientCoords] = None


class CohomologyRing:
    """Cohomology of a complex (and, for a dga, its cup product) per cell."""

    def __init__(self, complex: CochainComplex, cells: Dict[Cell, HCell]):
        self.complex = complex
        self.cells = cells
        self.field = complex.field

    def dim(self, cell: Cell) -> int:
        h = self.cells.get(cell)
        return h.dim if h else 0

    def trusted(self, cell: Cell) -> bool:
        h = self.cells.get(cell)
        if h is not None:
            return h.trusted
        return _cell_trusted(self.complex, cell)

    def degree_dims(self, trusted_only: bool = True) -> Dict[int, int]:
        out: Dict[int, int] = {}
        for (n, w), h in self.cells.items():
            if h.trusted or not trusted_only:
                out[n] = out.get(n, 0) + h.dim
        return dict(sorted(out.items(), reverse=True))

    def cell_dims(self, trusted_only: bool = True) -> Dict[Cell, int]:
        return {c: h.dim for c, h in sorted(self.cells.items()) if h.dim and (h.trusted or not trusted_only)}

    def euler(self, w: int) -> int:
        return sum((-1) ** (n % 2) * h.dim for (n, ww), h in self.cells.items() if ww == w)

    def classes(self, trusted_only: bool = True) -> List[Tuple[Cell, int]]:
        return [(c, k) for c, h in sorted(self.cells.items(), reverse=True)
                if (h.trusted or not trusted_only) for k in range(h.dim)]

    def boundaries(self, cell: Cell) -> Echelon:
        n, w = cell
        c = self.complex
        ech = Echelon(self.field)
        if c.window.contains(n - 1, w):
            for v in c.d_columns((n - 1, w)):
                if v:
                    ech.add(v)
        return ech

    def ensure_reps(self, cell: Cell, hints: Sequence[Vector] = ()) -> HCell:
        """Pick representatives at a cell, trying the cocycles in ``hints`` first.

        Falls back to a full kernel computation only when the hints do not
        span the cohomology of the cell.
        """
        h = self.cells[cell]
        if h.coords is not None:
            return h
        c = self.complex
        bech = self.boundaries(cell)
        for v in hints:
            if c.d(cell, v):
                raise ValueError(f"hint at {cell} is not a cocycle")
        sq = SubquotientCoords(bech, hints)
        if sq.dim < h.dim:
            kernel, _ = column_kernel(c.d_columns(cell), self.field)
            sq = SubquotientCoords(bech, list(hints) + _reduced_kernel(kernel, bech, self.field))
        h.reps, h.coords = sq.reps, sq
        if sq.dim != h.dim:
            raise AssertionError(f"cohomology dimension mismatch at {cell}: {sq.dim} != {h.dim}")
        return h

    def coords(self, cell: Cell, v: Vector) -> Vector:
        """Coordinates of a cocycle in the chosen basis of the cell's cohomology."""
        h = self.ensure_reps(cell)
        return h.coords.coords(v)

    def is_zero_class(self, cell: Cell, v: Vector) -> bool:
        h = self.cells[cell]
        if h.coords is not None:
            return not h.coords.coords(v)
        return self.boundaries(cell).contains(v)

    def product(self, c1: Cell, a: Vector, c2: Cell, b: Vector) -> Optional[Vector]:
        """Product of classes (coordinate vectors); None if the target cell is not trusted."""
        tgt = (c1[0] + c2[0], c1[1] + c2[1])
        dga = self.complex
        if not isinstance(dga, DgaWindow):
            raise TypeError("cup products need a dga")
        if tgt not in self.cells or not self.cells[tgt].trusted:
            if _cell_trusted(dga, tgt) and not dga.dim(tgt):
                return {}
            return None
        h1, h2 = self.ensure_reps(c1), self.ensure_reps(c2)
        F = self.field
        u: Vector = {}
        for k, x in a.items():
            vec_iadd(u, h1.reps[k], F, x)
        v: Vector = {}
        for k, x in b.items():
            vec_iadd(v, h2.reps[k], F, x)
        return self.coords(tgt, dga.mul(c1, u, c2, v))

    def structure_constants(self, trusted_only: bool = True) -> Dict[Tuple[Cell, int, Cell, int], Vector]:
        out = {}
        cls = self.classes(trusted_only)
        for (c1, i), (c2, j) in itertools.product(cls, cls):
            p = self.product(c1, {i: 1}, c2, {j: 1})
            if p is not None:
                out[(c1, i, c2, j)] = p
        return out


def _cell_trusted(c: CochainComplex, cell: Cell) -> bool:
    n, w = cell
    win = c.window
    return win.known(n, w) and win.known(n - 1, w) and win.known(n + 1, w)


def cohomology(c: CochainComplex, cells: Optional[Iterable[Cell]] = None, reps: bool = True,
               check: bool = True) -> CohomologyRing:
    """Cohomology per cell.  With ``reps=False`` only dimensions are computed (rank only)."""
    if check:
        bad = c.check_d_squared()
        if bad:
            raise ValueError(f"d^2 != 0 at {bad[:3]}")
    todo = list(cells) if cells is not None else c.window.cells()
    out: Dict[Cell, HCell] = {}
    F = c.field
    for cell in todo:
        if not c.window.contains(*cell):
            continue
        n, w = cell
        dim = c.dim(cell)
        trusted = _cell_trusted(c, cell)
        incoming = c.d_columns((n - 1, w)) if c.window.contains(n - 1, w) else []
        if not dim:
            out[cell] = HCell(0, trusted)
            continue
        out_cols = c.d_columns(cell)
        if reps:
            kernel, _ = column_kernel(out_cols, F)
            bech = Echelon(F)
            for v in incoming:
                if v:
                    bech.add(v)
            sq = SubquotientCoords(bech, _reduced_kernel(kernel, bech, F))
            out[cell] = HCell(sq.dim, trusted, sq.reps, sq)
        else:
            rk_out = rank_of_vectors(out_cols, F)
            rk_in = rank_of_vectors(incoming, F)
            out[cell] = HCell(dim - rk_out - rk_in, trusted)
    return CohomologyRing(c, out)


def _reduced_kernel(kernel: List[Vector], boundaries: Echelon, F: Field) -> List[Vector]:
    # representatives: kernel vectors ordered by their leading index, reduced modulo boundaries
    out = []
    for v in sorted(kernel, key=lambda v: (max(v), len(v))):
        rem, _ = boundaries.reduce(v)
        if rem:
            out.append(rem)
    return out


# -- checks -------------------------------------------------------------------


@dataclass
class DgaReport:
    checked: Dict[str, int] = field(default_factory=dict)
    violations: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def note(self, kind: str, n: int = 1):
        self.checked[kind] = self.checked.get(kind, 0) + n


def _tuples(dga: DgaWindow, k: int, rng: Optional[random.Random], limit: Optional[int]):
    """Basis k-tuples whose total cell lies in the window; a seeded sample above ``limit``."""
    cells = [c for c in dga.cells() if dga.dim(c)]
    groups = [((), (0, 0))]
    for _ in range(k):
        groups = [(g + (c,), (t[0] + c[0], t[1] + c[1])) for g, t in groups for c in cells
                  if dga.window.contains(t[0] + c[0], t[1] + c[1])]
    sizes = []
    for g, _ in groups:
        n = 1
        for c in g:
            n *= dga.dim(c)
        sizes.append(n)
    if limit is None or sum(sizes) <= limit:
        out = []
        for g, _ in groups:
            idx = [()]
            for c in g:
                idx = [t + ((c, i),) for t in idx for i in range(dga.dim(c))]
            out.extend(idx)
        return out
    rng = rng or random.Random(0)
    picks = rng.choices(range(len(groups)), weights=sizes, k=limit)
    return [tuple((c, rng.randrange(dga.dim(c))) for c in groups[n][0]) for n in picks]


def check_dga(dga: DgaWindow, limit: Optional[int] = 20000, seed: int = 0,
              stop_after: int = 20) -> DgaReport:
    """Verify d^2 = 0, unit, Leibniz and associativity on window basis elements.

    When there are more than ``limit`` pairs (or triples) a seeded sample is
    checked; the report records how many were examined.
    """
    F = dga.field
    rep = DgaReport()
    rng = random.Random(seed)

    for cell, i in dga.check_d_squared():
        rep.violations.append(f"d^2 != 0 on basis element {i} of cell {cell}")
    rep.note("d^2", sum(dga.dim(c) for c in dga.cells()))

    items = [(c, i) for c in dga.cells() for i in range(dga.dim(c))]
    pairs = _tuples(dga, 2, rng, limit)
    if dga.unit is not None:
        u = dga.unit
        if dga.d((0, 0), u) and dga.window.contains(1, 0):
            rep.violations.append("d(1) != 0")
        for c, i in items:
            left = dga.mul((0, 0), u, c, {i: 1})
            right = dga.mul(c, {i: 1}, (0, 0), u)
            if left != {i: 1} or right != {i: 1}:
                rep.violations.append(f"unit fails on basis element {i} of cell {c}")
            rep.note("unit")

    for (c1, i), (c2, j) in pairs:
        if len(rep.violations) >= stop_after:
            break
        n1, w1 = c1
        n2, w2 = c2
        tgt = (n1 + n2 + 1, w1 + w2)
        if not dga.window.contains(*tgt):
            continue
        lhs = dga.d((n1 + n2, w1 + w2), dga.mul_basis(c1, i, c2, j))
        rhs: Vector = {}
        da = dga.d_columns(c1)[i]
        if da:
            vec_iadd(rhs, dga.mul((n1 + 1, w1), da, c2, {j: 1}), F)
        db = dga.d_columns(c2)[j]
        if db:
            vec_iadd(rhs, dga.mul(c1, {i: 1}, (n2 + 1, w2), db), F, (-1) ** (n1 % 2))
        if lhs != rhs:
            rep.violations.append(
                f"Leibniz fails on pair ({dga.basis[c1][i]}, {dga.basis[c2][j]}) in cells {c1}, {c2}")
        rep.note("leibniz")

    triples = _tuples(dga, 3, rng, limit)
    for (c1, i), (c2, j), (c3, k) in triples:
        if len(rep.violations) >= stop_after:
            break
        c12 = (c1[0] + c2[0], c1[1] + c2[1])
        c23 = (c2[0] + c3[0], c2[1] + c3[1])
        left = dga.mul(c12, dga.mul_basis(c1, i, c2, j), c3, {k: 1})
        right = dga.mul(c1, {i: 1}, c23, dga.mul_basis(c2, j, c3, k))
        if left != right:
            rep.violations.append(
                f"associativity fails on ({dga.basis[c1][i]}, {dga.basis[c2][j]}, {dga.basis[c3][k]})")
        rep.note("associativity")
    return rep


# -- truncation and cones ---------------------------------------------------------


def good_truncation(a: DgaWindow, n: int) -> DgaWindow:
    """``tau_{>= -n}``: drop degrees below ``-n`` and replace degree ``-n`` by the cokernel of d."""
    F = a.field
    win = a.window
    if win.n_max > 0:
        raise ValueError("good truncation is implemented for nonpositive dgas")
    lo = -n
    quots: Dict[Cell, QuotientSpace] = {}
    basis: Dict[Cell, List] = {}
    for cell in a.cells():
        m, w = cell
        if m < lo:
            continue
        if m == lo:
            below = a.d_columns((m - 1, w)) if win.contains(m - 1, w) else []
            q = QuotientSpace(a.dim(cell), below, F)
            quots[cell] = q
            basis[cell] = [a.basis[cell][i] for i in q.representatives]
        else:
            basis[cell] = a.basis[cell]

    def embed(cell, i):
        q = quots.get(cell)
        return {q.representatives[i]: 1} if q else {i: 1}

    def fix(cell, v):
        q = quots.get(cell)
        return q.project(v) if q else v

    def diff(cell, i):
        return fix((cell[0] + 1, cell[1]), a.d(cell, embed(cell, i)))

    def mul(c1, i, c2, j):
        tgt = (c1[0] + c2[0], c1[1] + c2[1])
        if tgt[0] < lo:
            return {}
        return fix(tgt, a.mul(c1, embed(c1, i), c2, embed(c2, j)))

    nwin = GradedWindow(max(lo, win.n_min), win.n_max, win.max_weight, zero_above=win.zero_above,
                        zero_below=lo >= win.n_min, known_zero=win.known_zero)
    unit = fix((0, 0), a.unit) if a.unit is not None and lo <= 0 else a.unit
    return DgaWindow(F, nwin, basis, diff, mul, unit=unit, augmentation=a.augmentation,
                     name=f"{a.name}:tau>={lo}")


@dataclass
class ChainMap:
    source: CochainComplex
    target: CochainComplex
    columns: Callable[[Cell], List[Vector]]      # matrix of f on each source cell

    def apply(self, cell: Cell, v: Vector) -> Vector:
        cols = self.columns(cell)
        out: Vector = {}
        for i, x in v.items():
            if cols[i]:
                vec_iadd(out, cols[i], self.source.field, x)
        return out

    def violations(self) -> List[Tuple[Cell, int]]:
        bad = []
        X, Y = self.source, self.target
        for cell in X.cells():
            n, w = cell
            if not (X.window.contains(n + 1, w) and Y.window.contains(n + 1, w)):
                continue
            for i in range(X.dim(cell)):
                lhs = Y.d(cell, self.apply(cell, {i: 1})) if Y.dim(cell) else {}
                dx = X.d_columns(cell)[i]
                rhs = self.apply((n + 1, w), dx) if dx else {}
                if lhs != rhs:
                    bad.append((cell, i))
        return bad


def cone(f: ChainMap) -> CochainComplex:
    """Cone of f: degree n is X^{n+1} + Y^n, with d(x, y) = (-dx, f(x) + dy)."""
    bad = f.violations()
    if bad:
        raise ValueError(f"not a chain map: fails at {bad[:3]}")
    X, Y = f.source, f.target
    F = X.field
    wx, wy = X.window, Y.window
    mw = None if wx.max_weight is None and wy.max_weight is None else max(
        wx.max_weight or 0, wy.max_weight or 0)
    lo = min(wx.n_min - 1, wy.n_min)
    hi = max(wx.n_max - 1, wy.n_max)

    def kz(n, w):
        return wx.known(n + 1, w) and not wx.contains(n + 1, w) and wy.known(n, w) and not wy.contains(n, w)

    win = GradedWindow(lo, hi, mw, zero_above=wx.zero_above and wy.zero_above,
                       zero_below=wx.zero_below and wy.zero_below, known_zero=kz)
    basis: Dict[Cell, List] = {}
    for n, w in win.cells():
        bx = X.basis.get((n + 1, w), [])
        by = Y.basis.get((n, w), [])
        if bx or by:
            basis[(n, w)] = [("X", b) for b in bx] + [("Y", b) for b in by]

    def diff(cell, i):
        n, w = cell
        nx = X.dim((n + 1, w))
        nxt = X.dim((n + 2, w))
        out: Vector = {}
        if i < nx:
            if X.window.contains(n + 2, w):
                for k, x in X.d_columns((n + 1, w))[i].items():
                    out[k] = F.reduce(-x)
            for k, x in f.apply((n + 1, w), {i: 1}).items():
                out[nxt + k] = x
        else:
            j = i - nx
            if Y.window.contains(n + 1, w):
                for k, x in Y.d_columns((n, w))[j].items():
                    out[nxt + k] = x
        return out

    return CochainComplex(F, win, basis, diff, name=f"cone({X.name}->{Y.name})")


def truncated_free_dga(field: Field, generators: Sequence[Tuple[str, int, int]],
                       differential: Dict[str, List[Tuple[int, str]]], max_weight: int,
                       name: str = "") -> DgaWindow:
    """Free dga on ``(name, degree, weight)`` generators modulo words of weight > max_weight.

    ``differential[g]`` lists ``(coeff, word)`` with ``word`` a space-separated
    string of generator names (empty string for the unit).  It is extended as
    a derivation with the Koszul sign.  Generators must have positive weight.
    """
    gens = {g: (n, w) for g, n, w in generators}
    if any(w <= 0 for _, w in gens.values()):
        raise ValueError("generators need positive weight")
    words: Dict[int, List[Tuple[str, ...]]] = {0: [()]}
    for w in range(1, max_weight + 1):
        words[w] = [(g,) + rest for g, (n, gw) in gens.items() if gw <= w for rest in words[w - gw]]
    basis: Dict[Cell, List[Tuple[str, ...]]] = {}
    for ws in words.values():
        for word in ws:
            cell = (sum(gens[g][0] for g in word), sum(gens[g][1] for g in word))
            basis.setdefault(cell, []).append(word)
    index = {c: {word: k for k, word in enumerate(ws)} for c, ws in basis.items()}
    dgen = {g: [(c, tuple(s.split())) for c, s in terms] for g, terms in differential.items()}

    def cell_of(word):
        return (sum(gens[g][0] for g in word), sum(gens[g][1] for g in word))

    def diff(cell, i):
        word = basis[cell][i]
        out: Vector = {}
        deg = 0
        for k, g in enumerate(word):
            s = -1 if deg % 2 else 1
            for c, repl in dgen.get(g, []):
                new = word[:k] + repl + word[k + 1:]
                j = index[cell_of(new)][new]
                vec_iadd(out, {j: c}, field, s)
            deg += gens[g][0]
        return out

    def mul(c1, i, c2, j):
        new = basis[c1][i] + basis[c2][j]
        tgt = cell_of(new)
        return {index[tgt][new]: 1} if new in index.get(tgt, {}) else {}

    ns = [c[0] for c in basis]
    win = GradedWindow(min(ns), max(ns), max_weight, zero_above=True, zero_below=True)
    return DgaWindow(field, win, {c: [" ".join(w) or "1" for w in ws] for c, ws in basis.items()},
                     diff, mul, unit={0: 1}, augmentation={0: 1}, name=name or "free")
