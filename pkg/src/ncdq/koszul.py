"""Bar and cobar constructions, Koszul duals and the double-dual comparison.

Everything is split by internal weight.  The input dga must have weight-0
part spanned by the unit, so that each weight contains finitely many bar words.

Sign conventions (checked by d^2 = 0 and Leibniz in the tests):

* bar letter ``[a]`` has degree ``|a| - 1``; with ``e_i`` the total degree
  of the first ``i`` letters, the differential is
  ``sum_i (-1)^(e_(i-1)+1) [..|da_i|..] + sum_i (-1)^(e_i) [..|a_i a_(i+1)|..]``;
* the coproduct is deconcatenation;
* the dual algebra has ``u* v* = (-1)^(|u||v|) (uv)*`` and
  ``(df)(x) = -(-1)^|f| f(dx)``;
* cobar letter ``<c>`` has degree ``|c| + 1``, and
  ``d<c> = -<dc> + sum (-1)^|c'| <c'><c''>``, extended as a derivation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Sequence, Tuple

from .dg import Cell, CochainComplex, CohomologyRing, DgaWindow, GradedWindow, cohomology
from .linalg import Vector, rank_of_vectors


class KoszulError(ValueError):
    """Input outside the hypotheses (unbounded words per weight, nonlocal H^0, ...)."""


Letter = Tuple[Cell, int]


def _letters(a: DgaWindow, W: int) -> List[Letter]:
    win = a.window
    if win.max_weight is None:
        raise KoszulError("the bar construction needs a weight grading (ungraded input)")
    if not (win.zero_above and win.zero_below):
        raise KoszulError("the input dga window must contain every nonzero cell")
    if win.max_weight < W and not win.exact_weights:
        raise KoszulError(f"input window has weights <= {win.max_weight}, below the cap {W}")
    for c in a.cells():
        if c[1] == 0 and c != (0, 0):
            raise KoszulError(f"weight-0 cell {c} outside degree 0")
    if a.dim((0, 0)) != 1:
        raise KoszulError("weight-0 part is not spanned by the unit: words per weight are unbounded")
    out = []
    for c in sorted(a.cells(), key=lambda c: (c[1], -c[0])):
        if 1 <= c[1] <= W:
            out.extend((c, i) for i in range(a.dim(c)))
    return out


def _compositions(letters: List[Letter], W: int, weight_of) -> Dict[int, List[Tuple[int, ...]]]:
    """All words (tuples of letter ids) of total weight <= W, grouped by weight."""
    by_w: Dict[int, List[int]] = {}
    for k, l in enumerate(letters):
        by_w.setdefault(weight_of(l), []).append(k)
    words: Dict[int, List[Tuple[int, ...]]] = {0: [()]}
    for w in range(1, W + 1):
        out = []
        for first in range(1, w + 1):
            for k in by_w.get(first, []):
                for rest in words.get(w - first, []):
                    out.append((k,) + rest)
        words[w] = out
    return words


class WordComplex(CochainComplex):
    """Shared bookkeeping for bar and cobar words."""

    def _setup(self, letters, degree_of, W):
        self.letters = letters
        self.W = W
        self._ldeg = [degree_of(l) for l in letters]
        self._lwt = [l[0][1] for l in letters]
        self._lpos = {l: k for k, l in enumerate(letters)}
        words = _compositions(letters, W, lambda l: l[0][1])
        basis: Dict[Cell, List[Tuple[int, ...]]] = {}
        for w, ws in words.items():
            for word in ws:
                n = sum(self._ldeg[k] for k in word)
                basis.setdefault((n, w), []).append(word)
        for c in basis:
            basis[c].sort()
        ns = [c[0] for c in basis] or [0]
        window = GradedWindow(min(ns), max(ns), W, zero_above=True, zero_below=True)
        self.index = {c: {word: k for k, word in enumerate(ws)} for c, ws in basis.items()}
        return window, basis

    def word_cell(self, word) -> Cell:
        return (sum(self._ldeg[k] for k in word), sum(self._lwt[k] for k in word))

    def _emit(self, out: Vector, word, coeff):
        if not coeff:
            return
        cell = self.word_cell(word)
        k = self.index.get(cell, {}).get(word)
        if k is None:
            raise KoszulError(f"word {word} left the window")
        F = self.field
        nv = F.reduce(out.get(k, 0) + coeff)
        if nv:
            out[k] = nv
        else:
            out.pop(k, None)

    def word_str(self, word, name=str) -> str:
        return "[" + "|".join(name(self.letters[k]) for k in word) + "]"


class BarConstruction(WordComplex):
    """``BA``: tensor coalgebra on the shifted augmentation ideal, all weights ``<= W``."""

    def __init__(self, a: DgaWindow, W: int):
        self.source = a
        letters = _letters(a, W)
        window, basis = self._setup(letters, lambda l: l[0][0] - 1, W)
        super().__init__(a.field, window, basis, self._bar_diff, name=f"B({a.name})")

    def _bar_diff(self, cell: Cell, k: int) -> Vector:
        a = self.source
        word = self.basis[cell][k]
        out: Vector = {}
        eps = 0
        letters = self.letters
        for i, li in enumerate(word):
            c, idx = letters[li]
            # internal differential
            da = a.d_columns(c)[idx] if a.window.contains(c[0] + 1, c[1]) else {}
            if da:
                sign = -1 if eps % 2 == 0 else 1
                tc = (c[0] + 1, c[1])
                for j, x in da.items():
                    self._emit(out, word[:i] + (self._lpos[(tc, j)],) + word[i + 1:], sign * x)
            eps += self._ldeg[li]
            # merge with the next letter
            if i + 1 < len(word):
                c2, idx2 = letters[word[i + 1]]
                prod = a.mul_basis(c, idx, c2, idx2)
                if prod:
                    sign = -1 if eps % 2 else 1
                    tc = (c[0] + c2[0], c[1] + c2[1])
                    for j, x in prod.items():
                        self._emit(out, word[:i] + (self._lpos[(tc, j)],) + word[i + 2:], sign * x)
        return out

    def coproduct(self, cell: Cell, k: int) -> List[Tuple[Cell, int, Cell, int]]:
        """Deconcatenation of a basis word (including the trivial splittings)."""
        word = self.basis[cell][k]
        out = []
        for i in range(len(word) + 1):
            u, v = word[:i], word[i:]
            cu, cv = self.word_cell(u), self.word_cell(v)
            out.append((cu, self.index[cu][u], cv, self.index[cv][v]))
        return out

    def check_coalgebra(self, limit: int = 2000) -> List[str]:
        """Coassociativity of deconcatenation and the coderivation rule on sample words."""
        problems = []
        F = self.field
        items = [(c, k) for c in self.cells() for k in range(self.dim(c))][:limit]
        for c, k in items:
            left = set()
            right = set()
            for cu, iu, cv, iv in self.coproduct(c, k):
                for a1, b1, a2, b2 in self.coproduct(cu, iu):
                    left.add(((a1, b1), (a2, b2), (cv, iv)))
                for a1, b1, a2, b2 in self.coproduct(cv, iv):
                    right.add(((cu, iu), (a1, b1), (a2, b2)))
            if left != right:
                problems.append(f"coassociativity fails on {self.basis[c][k]}")
        # coderivation: Delta(d x) = (d (x) 1 + 1 (x) d) Delta(x), with Koszul sign on the right factor
        for c, k in items:
            if not self.window.contains(c[0] + 1, c[1]):
                continue
            dx = self.d_columns(c)[k]
            lhs: Dict[Tuple, object] = {}
            for j, x in dx.items():
                for cu, iu, cv, iv in self.coproduct((c[0] + 1, c[1]), j):
                    key = (cu, iu, cv, iv)
                    lhs[key] = F.reduce(lhs.get(key, 0) + x)
            rhs: Dict[Tuple, object] = {}
            for cu, iu, cv, iv in self.coproduct(c, k):
                for j, x in (self.d_columns(cu)[iu] if self.dim((cu[0] + 1, cu[1])) else {}).items():
                    key = ((cu[0] + 1, cu[1]), j, cv, iv)
                    rhs[key] = F.reduce(rhs.get(key, 0) + x)
                s = -1 if cu[0] % 2 else 1
                for j, x in (self.d_columns(cv)[iv] if self.dim((cv[0] + 1, cv[1])) else {}).items():
                    key = (cu, iu, (cv[0] + 1, cv[1]), j)
                    rhs[key] = F.reduce(rhs.get(key, 0) + s * x)
            lhs = {k2: v for k2, v in lhs.items() if v}
            rhs = {k2: v for k2, v in rhs.items() if v}
            if lhs != rhs:
                problems.append(f"coderivation rule fails on {self.basis[c][k]}")
        return problems


def bar(a: DgaWindow, W: int) -> BarConstruction:
    B = BarConstruction(a, W)
    bad = B.check_d_squared()
    if bad:
        raise AssertionError(f"bar differential squares to nonzero at {bad[:3]}")
    return B


class KoszulDual(DgaWindow):
    """``A^! = (BA)^*`` cell by cell: cell (n, w) is dual to BA cell (-n, w)."""

    def __init__(self, a: DgaWindow, W: int):
        self.bar = B = bar(a, W)
        basis = {(-n, w): list(ws) for (n, w), ws in B.basis.items()}
        win = B.window
        window = GradedWindow(-win.n_max, -win.n_min, W, zero_above=True, zero_below=True)
        self._transpose: Dict[Cell, Dict[int, Vector]] = {}
        F = a.field
        empty_cell = (0, 0)
        unit = {B.index[empty_cell][()]: 1}
        super().__init__(F, window, basis, self._dual_diff, self._dual_mul, unit=unit,
                         augmentation=dict(unit), name=f"{a.name}^!")

    def _dual_diff(self, cell: Cell, k: int) -> Vector:
        n, w = cell
        t = self._transpose.get(cell)
        if t is None:
            # d_B from BA cell (-n-1, w) into (-n, w), transposed
            t = {}
            src = (-n - 1, w)
            if self.bar.dim(src):
                for j, col in enumerate(self.bar.d_columns(src)):
                    for i, x in col.items():
                        t.setdefault(i, {})[j] = x
            self._transpose[cell] = t
        sign = 1 if n % 2 else -1          # -(-1)^|f| with |f| = n
        F = self.field
        return {j: F.reduce(sign * x) for j, x in t.get(k, {}).items()}

    def _dual_mul(self, c1: Cell, i: int, c2: Cell, j: int) -> Vector:
        B = self.bar
        u = B.basis[(-c1[0], c1[1])][i]
        v = B.basis[(-c2[0], c2[1])][j]
        uv = u + v
        cell = (-(c1[0] + c2[0]), c1[1] + c2[1])
        k = B.index[cell][uv]
        sign = -1 if (c1[0] * c2[0]) % 2 else 1
        return {k: sign}

    def word_label(self, cell: Cell, k: int, name=str) -> str:
        return self.bar.word_str(self.basis[cell][k], name) + "*"


def koszul_dual(a: DgaWindow, W: int) -> KoszulDual:
    return KoszulDual(a, W)


@dataclass
class CoalgebraWindow:
    """A conilpotent dg coalgebra: a complex plus a reduced coproduct on weight >= 1 cells.

    ``reduced_coproduct(cell, k)`` returns ``[(cell1, i1, cell2, i2, coeff)]``
    with both factors of positive weight.
    """

    complex: CochainComplex
    reduced_coproduct: Callable[[Cell, int], List[Tuple[Cell, int, Cell, int, object]]]

    @classmethod
    def from_bar(cls, B: BarConstruction) -> "CoalgebraWindow":
        def red(cell, k):
            out = []
            for cu, iu, cv, iv in B.coproduct(cell, k):
                if cu[1] > 0 and cv[1] > 0:
                    out.append((cu, iu, cv, iv, 1))
            return out
        return cls(B, red)

    @classmethod
    def trivial(cls, complex: CochainComplex) -> "CoalgebraWindow":
        return cls(complex, lambda cell, k: [])


class Cobar(WordComplex, DgaWindow):
    """``Omega C``: tensor algebra on the desuspended coaugmentation coideal."""

    def __init__(self, C: CoalgebraWindow, W: int):
        self.coalgebra = C
        X = C.complex
        if X.window.max_weight is None or X.window.max_weight < W:
            raise KoszulError("coalgebra window too small for the weight cap")
        letters = []
        for c in sorted(X.cells(), key=lambda c: (c[1], -c[0])):
            if 1 <= c[1] <= W:
                letters.extend((c, i) for i in range(X.dim(c)))
        window, basis = self._setup(letters, lambda l: l[0][0] + 1, W)
        unit = {self.index[(0, 0)][()]: 1}
        DgaWindow.__init__(self, X.field, window, basis, self._cobar_diff, self._concat, unit=unit,
                           augmentation=dict(unit), name=f"Omega({X.name})")

    def _cobar_diff(self, cell: Cell, k: int) -> Vector:
        X = self.coalgebra.complex
        word = self.basis[cell][k]
        out: Vector = {}
        eta = 0
        for i, li in enumerate(word):
            c, idx = self.letters[li]
            pre, post = word[:i], word[i + 1:]
            s = -1 if eta % 2 else 1
            if X.window.contains(c[0] + 1, c[1]):
                tc = (c[0] + 1, c[1])
                for j, x in X.d_columns(c)[idx].items():
                    self._emit(out, pre + (self._lpos[(tc, j)],) + post, -s * x)
            for c1, i1, c2, i2, x in self.coalgebra.reduced_coproduct(c, idx):
                t = -1 if c1[0] % 2 else 1
                self._emit(out, pre + (self._lpos[(c1, i1)], self._lpos[(c2, i2)]) + post, s * t * x)
            eta += self._ldeg[li]
        return out

    def _concat(self, c1: Cell, i: int, c2: Cell, j: int) -> Vector:
        u = self.basis[c1][i]
        v = self.basis[c2][j]
        tgt = (c1[0] + c2[0], c1[1] + c2[1])
        return {self.index[tgt][u + v]: 1}


def cobar(C: CoalgebraWindow, W: int) -> Cobar:
    Om = Cobar(C, W)
    bad = Om.check_d_squared()
    if bad:
        raise AssertionError(f"cobar differential squares to nonzero at {bad[:3]}")
    return Om


# -- comparisons ------------------------------------------------------------------------


def multiplication_ranks(H: CohomologyRing, cells: Sequence[Cell]) -> Dict[Tuple[Cell, Cell], int]:
    """Rank of the product H_c1 (x) H_c2 -> H_(c1+c2) for each pair of cells.

    These ranks are invariant under change of basis, so they compare algebra
    structures without choosing an isomorphism.
    """
    out = {}
    for c1 in cells:
        for c2 in cells:
            tgt = (c1[0] + c2[0], c1[1] + c2[1])
            if not H.dim(c1) or not H.dim(c2) or not H.dim(tgt):
                continue
            vecs = []
            ok = True
            for i in range(H.dim(c1)):
                for j in range(H.dim(c2)):
                    p = H.product(c1, {i: 1}, c2, {j: 1})
                    if p is None:
                        ok = False
                        break
                    vecs.append(p)
                if not ok:
                    break
            if ok:
                out[(c1, c2)] = rank_of_vectors(vecs, H.field)
    return out


def _hypotheses(a: DgaWindow) -> List[str]:
    problems = []
    if any(c[0] > 0 for c in a.cells()):
        problems.append("not nonpositive")
    if a.dim((0, 0)) != 1:
        problems.append("weight-0 part is not the ground field, H^0 need not be local")
    return problems


@dataclass
class DoubleDualReport:
    W: int
    h_a: Dict[Cell, int]
    h_double: Dict[Cell, int]
    h_cobar_bar: Dict[Cell, int] = field(default_factory=dict)
    structure_a: Dict = field(default_factory=dict)
    structure_double: Dict = field(default_factory=dict)

    @property
    def dims_match(self) -> bool:
        return self.h_a == self.h_double

    @property
    def cobar_bar_match(self) -> bool:
        return self.h_a == self.h_cobar_bar

    @property
    def structure_match(self) -> bool:
        return self.structure_a == self.structure_double


def double_dual_compare(a: DgaWindow, W: int, structure: bool = False, cobar_bar: bool = True) \
        -> DoubleDualReport:
    """Compare H(A) with H(A^!!) (and H(Omega B A)) cell by cell up to weight W.

    ``H(A^!!)`` at cell (n, w) equals the dual of ``H(B(A^!))`` at (-n, w), so
    dimensions are read off the bar construction of ``A^!``.  With
    ``structure=True`` the double dual is built as a dga and the ranks of its
    multiplication maps are compared with those of ``A``.
    """
    problems = _hypotheses(a)
    if problems:
        raise KoszulError("; ".join(problems))
    Ha = cohomology(a, reps=structure)
    h_a = {c: d for c, d in Ha.cell_dims(False).items() if c[1] <= W}
    A1 = koszul_dual(a, W)
    B1 = bar(A1, W)
    Hb = cohomology(B1, reps=False, check=False)
    h_dd = {(-n, w): d for (n, w), d in Hb.cell_dims(False).items()}
    rep = DoubleDualReport(W, h_a, h_dd)
    if cobar_bar:
        Om = cobar(CoalgebraWindow.from_bar(bar(a, W)), W)
        rep.h_cobar_bar = cohomology(Om, reps=False, check=False).cell_dims(False)
    if structure:
        A2 = koszul_dual(A1, W)
        H2 = cohomology(A2, reps=True, check=False)
        cells_a = sorted(h_a)
        rep.structure_a = multiplication_ranks(Ha, cells_a)
        rep.structure_double = multiplication_ranks(H2, sorted(H2.cell_dims(False)))
    return rep
