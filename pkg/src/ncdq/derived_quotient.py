"""The dg model of the derived quotient of A by AeA and what can be computed from it.

The model adjoins ``h`` in degree -1 with ``he = eh = h`` and ``dh = e``.  A
degree ``-n`` basis word is ``x_0 h x_1 h ... h x_n`` with ``x_0`` in ``Ae``,
``x_n`` in ``eA`` and the middle factors in ``R = eAe``; it is stored as the
tuple of algebra basis indices.  The differential collapses adjacent factors
with sign ``(-1)^i``, the product concatenates words and multiplies the two
boundary factors.

By default the smaller *reduced* model is used: words are composable through
the marked vertices and the middle factors avoid vertex idempotents (the
normalised two-sided bar construction relative to the span of the marked
idempotents).  ``reduced=False`` gives the model with tensor products over the
field, degree ``-n`` being ``Ae (x) R^(n-1) (x) eA``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .dg import Cell, CochainComplex, CohomologyRing, DgaWindow, GradedWindow, ChainMap, cohomology
from .linalg import Echelon, QuotientSpace, Vector, rank_of_vectors, span_echelon, vec_iadd
from .quiver import (BasisAlgebra, Path, QuiverSpec, corner_algebra,
                     idempotent_ideal_span, quotient_by_idempotent_ideal)
from .resolutions import WindowError, minimal_resolution, piece_module, tor_dims


class ModelError(ValueError):
    """Inconsistent truncation parameters for the model."""


class DerivedQuotientModel(DgaWindow):
    """The derived quotient as a dga window in degrees ``[-J, 0]`` and weights ``<= D``."""

    def __init__(self, A: BasisAlgebra, vertices: Iterable[str], J: int, D: Optional[int] = None,
                 reduced: bool = True):
        V = [v for v in A.vertices if v in set(vertices)]
        self.A = A
        self.V = V
        self.J = J
        self.reduced = reduced
        graded = A.graded
        if graded:
            if D is None:
                # exact algebras: every word of degree >= -J has weight <= (J + 1) * top
                D = (J + 1) * max(A.weight, default=0) if A.exact else A.max_weight
            if not A.exact and A.max_weight is not None and D > A.max_weight:
                raise ModelError(f"weight cap D={D} exceeds the truncated algebra window N={A.max_weight}")
        else:
            D = None
        self.D = D
        Vs = set(V)
        idem = set(A.idempotent.values())
        self.Ae = [i for i in range(A.dim) if A.tgt[i] in Vs]
        self.eA = [i for i in range(A.dim) if A.src[i] in Vs]
        self.Rm = [i for i in range(A.dim) if A.src[i] in Vs and A.tgt[i] in Vs
                   and not (reduced and i in idem)]
        self._idem = idem
        wt = (lambda i: A.weight[i]) if graded else (lambda i: 0)
        self._wt = wt

        basis: Dict[Cell, List[Tuple[int, ...]]] = {}
        for i in range(A.dim):
            if D is None or wt(i) <= D:
                basis.setdefault((0, wt(i)), []).append((i,))
        for n in range(1, J + 1):
            for word in self._words(n):
                w = sum(wt(i) for i in word)
                basis.setdefault((-n, w), []).append(word)
        for c in basis:
            basis[c].sort()
        self.index = {c: {word: k for k, word in enumerate(ws)} for c, ws in basis.items()}

        mR = min((wt(i) for i in self.Rm), default=None)
        mA = min((wt(i) for i in self.Ae), default=None)
        mB = min((wt(i) for i in self.eA), default=None)

        def known_zero(n, w):
            # lowest weight a degree n word can have
            if n >= 0 or mA is None or mB is None:
                return n != 0
            if n <= -2 and mR is None:
                return True
            low = mA + mB + (-n - 1) * (mR or 0)
            return w < low

        # every word of degree >= -J fits below D: nothing of higher weight is missing
        complete = graded and A.exact and D >= (J + 1) * max(A.weight, default=0)
        window = GradedWindow(-J, 0, D, zero_above=True, zero_below=not self.Ae or not self.eA,
                              known_zero=known_zero, exact_weights=complete)
        unit = {self.index[(0, 0)][(A.idempotent[v],)]: 1 for v in A.vertices}
        super().__init__(A.field, window, basis, self._diff, self._mul, unit=unit,
                         name=f"{A.name}/L AeA")

    # -- words --
    def _words(self, n: int):
        A = self.A
        D = self.D
        wt = self._wt
        # pools grouped by source vertex (or not at all) and sorted by weight for early exit
        def group(pool):
            out: Dict[object, List[Tuple[int, int]]] = {}
            for i in pool:
                key = A.src[i] if self.reduced else None
                out.setdefault(key, []).append((wt(i), i))
            for v in out.values():
                v.sort()
            return out

        mids, ends = group(self.Rm), group(self.eA)
        out = []
        cap = D if D is not None else 0

        def rec(prefix, w, k):
            key = A.tgt[prefix[-1]] if self.reduced else None
            pool = (ends if k == n else mids).get(key, ())
            for wi, i in pool:
                ww = w + wi
                if D is not None and ww > cap:
                    break
                if k == n:
                    out.append(prefix + (i,))
                else:
                    rec(prefix + (i,), ww, k + 1)

        for x0 in self.Ae:
            if D is None or wt(x0) <= D:
                rec((x0,), wt(x0), 1)
        return out

    def label_word(self, word: Tuple[int, ...]) -> str:
        A = self.A
        return "|".join(_short(A, i) for i in word)

    def sizes_by_degree(self) -> Dict[int, int]:
        out: Dict[int, int] = {}
        for (n, w), b in self.basis.items():
            out[n] = out.get(n, 0) + len(b)
        return out

    # -- structure --
    def _emit(self, out: Vector, word: Tuple[int, ...], coeff, cell: Cell):
        k = self.index[cell].get(word)
        if k is None:
            return
        F = self.field
        nv = F.reduce(out.get(k, 0) + coeff)
        if nv:
            out[k] = nv
        else:
            out.pop(k, None)

    def _middle_ok(self, g: int) -> bool:
        return not (self.reduced and g in self._idem)

    def _diff(self, cell: Cell, k: int) -> Vector:
        word = self.basis[cell][k]
        n = len(word) - 1
        A = self.A
        out: Vector = {}
        tgt = (cell[0] + 1, cell[1])
        for i in range(n):
            sign = -1 if i % 2 else 1
            prod = A.mul(word[i], word[i + 1])
            for g, x in prod.items():
                # the merged factor sits in the middle unless it touches an end of the word
                if n >= 2 and i != 0 and i + 1 != n and not self._middle_ok(g):
                    continue
                self._emit(out, word[:i] + (g,) + word[i + 2:], sign * x, tgt)
        return out

    def _mul(self, c1: Cell, i: int, c2: Cell, j: int) -> Vector:
        u = self.basis[c1][i]
        v = self.basis[c2][j]
        A = self.A
        out: Vector = {}
        prod = A.mul(u[-1], v[0])
        in_middle = len(u) > 1 and len(v) > 1
        tgt = (c1[0] + c2[0], c1[1] + c2[1])
        for g, x in prod.items():
            if in_middle and not self._middle_ok(g):
                continue
            self._emit(out, u[:-1] + (g,) + v[1:], x, tgt)
        return out

    def vector_from_pairs(self, terms: Sequence[Tuple[object, Vector, Vector]]) -> Tuple[Cell, Vector]:
        """The degree -1 element sum c * (u | v) for algebra vectors u in Ae, v in eA (homogeneous)."""
        out: Vector = {}
        cell = None
        F = self.field
        for c, u, v in terms:
            for a, x in u.items():
                for b, y in v.items():
                    if self.reduced and self.A.tgt[a] != self.A.src[b]:
                        continue
                    word = (a, b)
                    cl = (-1, self._wt(a) + self._wt(b))
                    cell = cl if cell is None else cell
                    if cl != cell:
                        raise ValueError("marked relation is not weight-homogeneous")
                    kk = self.index[cl].get(word)
                    if kk is None:
                        raise WindowError("marked relation lies outside the weight window")
                    nv = F.reduce(out.get(kk, 0) + F(c) * x * y)
                    if nv:
                        out[kk] = nv
                    else:
                        out.pop(kk, None)
        return (cell if cell is not None else (-1, 0)), out


def _short(A: BasisAlgebra, i: int) -> str:
    lab = A.labels[i]
    if isinstance(lab, Path) and not lab.arrows:
        return ""
    return str(lab)


def build_model(A: BasisAlgebra, vertices: Iterable[str], J: int, D: Optional[int] = None,
                reduced: bool = True) -> DerivedQuotientModel:
    return DerivedQuotientModel(A, vertices, J, D, reduced)


def dq_cohomology_ring(model: DerivedQuotientModel, reps: bool = True) -> CohomologyRing:
    return cohomology(model, reps=reps, check=False)


# -- independent routes -------------------------------------------------------------


def h0_isomorphism(model: DerivedQuotientModel) -> Dict[str, object]:
    """Compare H^0 of the model with A/AeA: same subspace of A is killed."""
    A = model.A
    F = A.field
    ideal = span_echelon(idempotent_ideal_span(A, model.V), F)
    image = Echelon(F)
    for w in model.window.weights():
        for col in model.d_columns((-1, w)):
            if col:
                image.add({model.basis[(0, w)][k][0]: x for k, x in col.items()})
    same = len(ideal) == len(image) and all(image.contains(r) for r in ideal.basis())
    Q = quotient_by_idempotent_ideal(A, model.V)
    return {"dim_quotient": Q.dim, "dim_h0": A.dim - len(image), "same_ideal": same}


def ker_mu_dims(A: BasisAlgebra, vertices: Iterable[str], D: Optional[int] = None) -> Dict[int, int]:
    """dim ker(Ae (x)_R eA -> A) per weight, built from the tensor product over the field.

    ``Ae (x)_R eA`` is ``Ae (x)_k eA`` modulo ``ar (x) b - a (x) rb`` for ``r`` in ``R``.
    """
    V = set(vertices)
    F = A.field
    graded = A.graded
    wt = (lambda i: A.weight[i]) if graded else (lambda i: 0)
    Ae = [i for i in range(A.dim) if A.tgt[i] in V]
    eA = [i for i in range(A.dim) if A.src[i] in V]
    R = [i for i in range(A.dim) if A.src[i] in V and A.tgt[i] in V]
    pairs: Dict[int, List[Tuple[int, int]]] = {}
    for a in Ae:
        for b in eA:
            w = wt(a) + wt(b)
            if D is not None and graded and w > D:
                continue
            pairs.setdefault(w, []).append((a, b))
    out = {}
    for w, ps in pairs.items():
        idx = {p: k for k, p in enumerate(ps)}
        rels = []
        for a in Ae:
            for r in R:
                for b in eA:
                    if wt(a) + wt(r) + wt(b) != w:
                        continue
                    v: Vector = {}
                    for g, x in A.mul(a, r).items():
                        k = idx.get((g, b))
                        if k is not None:
                            vec_iadd(v, {k: x}, F)
                    for g, x in A.mul(r, b).items():
                        k = idx.get((a, g))
                        if k is not None:
                            vec_iadd(v, {k: x}, F, -1)
                    if v:
                        rels.append(v)
        q = QuotientSpace(len(ps), rels, F)
        # multiplication on quotient coordinates
        cols = []
        for k in q.representatives:
            a, b = ps[k]
            cols.append(A.mul(a, b))
        out[w] = q.dim - rank_of_vectors(cols, F)
    return out


def tor_oracle(A: BasisAlgebra, vertices: Iterable[str], j_max: int, D: Optional[int] = None) \
        -> Dict[Tuple[int, int], int]:
    """dim Tor^R_j(Ae, eA) per (j, weight), from a minimal resolution of Ae over R = eAe."""
    V = [v for v in A.vertices if v in set(vertices)]
    R = corner_algebra(A, V)
    Ae = [i for i in range(A.dim) if A.tgt[i] in set(V)]
    eA = [i for i in range(A.dim) if A.src[i] in set(V)]
    if not V:
        return {}
    M = piece_module(A, Ae, R, name="Ae")
    if A.graded and D is None and not A.exact:
        D = A.max_weight
    res = minimal_resolution(M, j_max + 1, D if A.graded else None)
    dims = tor_dims(res, A, eA)
    return dims


def is_stratifying(H: CohomologyRing) -> Dict[str, object]:
    """Window verdict: all trusted negative cohomology vanishes."""
    neg = {c: h.dim for c, h in H.cells.items() if c[0] < 0 and h.trusted and h.dim}
    depth = min((c[0] for c, h in H.cells.items() if h.trusted), default=0)
    return {"stratifying": not neg, "witnesses": sorted(neg), "up_to_depth": -depth}


def bimodule_triangle(model: DerivedQuotientModel) -> Tuple[CochainComplex, ChainMap]:
    """The complex T computing Ae (x)^L_R eA and the multiplication map T -> A.

    The model is the cone of this map; ``cohomology(cone(mu))`` reproduces the
    model's cohomology.
    """
    F = model.field
    win = model.window
    basis = {}
    for (n, w), b in model.basis.items():
        if n <= -1:
            basis[(n + 1, w)] = b
    twin = GradedWindow(-model.J + 1, 0, model.D, zero_above=True, zero_below=win.zero_below,
                        known_zero=(lambda n, w: win.known_zero(n - 1, w)) if win.known_zero else None)

    def diff(cell, k):
        n, w = cell
        return model.d_columns((n - 1, w))[k]

    T = CochainComplex(F, twin, basis, lambda c, k: {x: (-y) for x, y in diff(c, k).items()}, name="T")
    Adga = CochainComplex(F, GradedWindow(0, 0, model.D, zero_above=True, zero_below=True),
                          {c: b for c, b in model.basis.items() if c[0] == 0}, lambda c, k: {}, name="A")

    def cols(cell):
        n, w = cell
        if n != 0:
            return [{} for _ in range(T.dim(cell))]
        return model.d_columns((-1, w))

    return T, ChainMap(T, Adga, cols)


# -- marked relations ------------------------------------------------------------------------


@dataclass
class MarkedRelation:
    relation: int
    terms: List[Tuple[object, Path, Path]]       # (coefficient, u, v) with u v a monomial of the relation

    def __str__(self):
        parts = []
        for c, u, v in self.terms:
            s = f"{''.join(u.arrows)}|{''.join(v.arrows)}"
            if c == 1:
                parts.append(("+ " if parts else "") + s)
            elif c == -1:
                parts.append(("- " if parts else "-") + s)
            else:
                parts.append(("+ " if parts else "") + f"{c}*{s}")
        return " ".join(parts)


def markings(spec: QuiverSpec, rel_index: int) -> List[MarkedRelation]:
    """All markings of a relation: one split point through V per monomial."""
    V = set(spec.marked_vertices)
    Q = spec.quiver
    rel = spec.relations[rel_index]
    options = []
    for c, p in rel.terms:
        cuts = []
        for k in range(len(p) + 1):
            vert = p.src if k == 0 else Q.arrow(p.arrows[k - 1]).tgt
            if vert in V:
                u = Q.path(p.arrows[:k], vertex=vert)
                v = Q.path(p.arrows[k:], vertex=vert)
                cuts.append((c, u, v))
        options.append(cuts)
    if any(not o for o in options):
        return []
    return [MarkedRelation(rel_index, list(choice)) for choice in itertools.product(*options)]


def _path_to_vector(A: BasisAlgebra, spec: QuiverSpec, p: Path) -> Vector:
    """Normal form of a path as an element of A, via products of arrows."""
    labels = {lab: i for i, lab in enumerate(A.labels)}
    if not p.arrows:
        return {A.idempotent[p.src]: 1}
    Q = spec.quiver
    vec: Optional[Vector] = None
    for name in p.arrows:
        a = Q.arrow(name)
        ap = Path(a.src, a.tgt, (name,))
        if ap in labels:
            av = {labels[ap]: 1}
        else:
            av = _reduce_arrow(A, spec, ap)
        vec = av if vec is None else A.mul_vec(vec, av)
    return vec or {}


def _reduce_arrow(A, spec, ap):
    # an arrow that is not a basis element: it was rewritten by an inhomogeneous relation
    for rel in spec.relations:
        for c, p in rel.terms:
            if p == ap:
                out: Vector = {}
                F = A.field
                for c2, p2 in rel.terms:
                    if p2 != ap:
                        vec_iadd(out, _path_to_vector(A, spec, p2), F, F.div(-F(c2), F(c)))
                return out
    return {}


@dataclass
class MarkedRelationReport:
    markings: List[MarkedRelation]
    classes: Dict[int, Tuple[Cell, Vector]]          # marking index -> (cell, H coordinates)
    basis: List[int]                                 # marking indices forming a basis of their span
    h1_dims: Dict[Cell, int]
    span_rank: Dict[Cell, int]
    spans: bool


def marked_relations(spec: QuiverSpec, model: DerivedQuotientModel, H: CohomologyRing) -> MarkedRelationReport:
    """Classes of all marked relations in H^{-1}; checks they span over A/AeA."""
    A = model.A
    F = A.field
    allm: List[MarkedRelation] = []
    for r in range(len(spec.relations)):
        allm.extend(markings(spec, r))
    classes: Dict[int, Tuple[Cell, Vector]] = {}
    vectors: Dict[int, Tuple[Cell, Vector]] = {}
    for k, m in enumerate(allm):
        terms = [(c, _path_to_vector(A, spec, u), _path_to_vector(A, spec, v)) for c, u, v in m.terms]
        try:
            cell, vec = model.vector_from_pairs(terms)
        except WindowError:
            continue
        if model.d(cell, vec):
            raise AssertionError(f"marked relation {m} is not a cocycle")
        if cell not in H.cells or not H.cells[cell].trusted:
            continue
        vectors[k] = (cell, vec)
        classes[k] = (cell, H.coords(cell, vec))

    # basis among markings, per cell, in order
    basis = []
    echs: Dict[Cell, Echelon] = {}
    for k in sorted(classes, key=lambda k: (len(allm[k].terms), k)):
        cell, co = classes[k]
        if echs.setdefault(cell, Echelon(F)).add(co):
            basis.append(k)
    basis.sort()

    # span over A/AeA: a m b with a, b basis elements of A
    span: Dict[Cell, Echelon] = {}
    deg0 = [(c, i) for c in model.cells() if c[0] == 0 for i in range(model.dim(c))]
    for k, (cell, vec) in vectors.items():
        for ca, a in deg0:
            left = model.mul(ca, {a: 1}, cell, vec)
            lc = (cell[0], cell[1] + ca[1])
            if not left:
                continue
            for cb, b in deg0:
                tgt = (lc[0], lc[1] + cb[1])
                if tgt not in H.cells or not H.cells[tgt].trusted:
                    continue
                prod = model.mul(lc, left, cb, {b: 1})
                if prod:
                    span.setdefault(tgt, Echelon(F)).add(H.coords(tgt, prod))
    h1 = {c: h.dim for c, h in H.cells.items() if c[0] == -1 and h.trusted and h.dim}
    ranks = {c: len(e) for c, e in span.items() if len(e)}
    spans = all(ranks.get(c, 0) == d for c, d in h1.items())
    return MarkedRelationReport(allm, classes, basis, h1, ranks, spans)


def homotopy_identities(model: DerivedQuotientModel, samples: int = 20, seed: int = 0) -> List[str]:
    """Check |uv ~ u|v ~ uv| on random composable basis pairs: differences are coboundaries."""
    A = model.A
    rng = random.Random(seed)
    V = set(model.V)
    F = model.field
    pairs = [(u, v) for u in model.Ae for v in model.eA if A.mul(u, v)]
    rng.shuffle(pairs)
    failures = []
    for u, v in pairs[:samples]:
        prod = A.mul(u, v)
        left_v = {A.idempotent[A.src[u]]: 1} if A.src[u] in V else None
        right_v = {A.idempotent[A.tgt[v]]: 1} if A.tgt[v] in V else None
        mid = model.vector_from_pairs([(1, {u: 1}, {v: 1})])
        cands = [mid]
        if left_v is not None:
            cands.append(model.vector_from_pairs([(1, left_v, prod)]))
        if right_v is not None:
            cands.append(model.vector_from_pairs([(1, prod, right_v)]))
        cell = mid[0]
        for c2, vec in cands[1:]:
            if c2 != cell:
                continue
            diff: Vector = dict(mid[1])
            vec_iadd(diff, vec, F, -1)
            boundary = span_echelon([col for col in model.d_columns((-2, cell[1])) if col], F) \
                if model.window.contains(-2, cell[1]) else Echelon(F)
            if diff and not boundary.contains(diff):
                failures.append(f"{_short(A, u)}|{_short(A, v)}")
    return failures


# -- the H_1 bound ---------------------------------------------------------------------------


def h1_bound(spec: QuiverSpec, dim_quotient: int) -> Dict[str, object]:
    """ell_i = prod_j max(1, len_ij - 1), ell = sum ell_i, bound = d^2 ell."""
    ells = []
    for rel in spec.relations:
        e = 1
        for _, p in rel.terms:
            e *= max(1, len(p) - 1)
        ells.append(e)
    ell = sum(ells)
    return {"ell_i": ells, "ell": ell, "d": dim_quotient, "bound": dim_quotient ** 2 * ell}
