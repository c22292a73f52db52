"""Minimal projective resolutions of right modules, Ext and Tor, Yoneda products.

Algebras are basis algebras whose radical is spanned by the non-idempotent
basis elements (true for quotients of path algebras by admissible ideals).
The indecomposable projective at vertex ``v`` is ``e_v L``.  Everything is
split by internal weight; for graded algebras only weights ``<= D`` are
computed, which is exact for those weights.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .linalg import Echelon, Vector, column_kernel, rank_of_vectors, vec_iadd
from .quiver import BasisAlgebra, SubAlgebra, quotient_by_idempotent_ideal


class WindowError(RuntimeError):
    """The requested window is too small to determine the answer."""


# -- modules ----------------------------------------------------------------------


class RightModule:
    """A finite right module with a homogeneous basis.

    ``vertex[i]`` is the vertex with ``m_i e_v = m_i``; ``act(i, a)`` is
    ``m_i * a`` for a basis element ``a`` of the algebra.
    """

    def __init__(self, algebra: BasisAlgebra, labels: List, vertex: List[str], weight: List[int],
                 act: Callable[[int, int], Vector], name: str = ""):
        self.algebra = algebra
        self.labels = labels
        self.vertex = vertex
        self.weight = weight
        self._act = act
        self.name = name

    @property
    def dim(self) -> int:
        return len(self.labels)

    def act(self, i: int, a: int) -> Vector:
        if self.vertex[i] != self.algebra.src[a]:
            return {}
        return self._act(i, a)

    def act_vec(self, v: Vector, a: int) -> Vector:
        out: Vector = {}
        F = self.algebra.field
        for i, x in v.items():
            p = self.act(i, a)
            if p:
                vec_iadd(out, p, F, x)
        return out

    def check_action(self) -> List[Tuple[int, int, int]]:
        """Basis triples (m, a, b) with (m a) b != m (a b)."""
        L = self.algebra
        F = L.field
        bad = []
        for i in range(self.dim):
            for a in L.starting_at(self.vertex[i]):
                ma = self.act(i, a)
                for b in L.starting_at(L.tgt[a]):
                    left = self.act_vec(ma, b)
                    right: Vector = {}
                    for c, x in L.mul(a, b).items():
                        vec_iadd(right, self.act(i, c), F, x)
                    if left != right:
                        bad.append((i, a, b))
        return bad


def _inclusion(over: BasisAlgebra, parent: BasisAlgebra) -> Callable[[int], int]:
    if over is parent:
        return lambda a: a
    if isinstance(over, SubAlgebra) and over.parent is parent:
        return lambda a: over.inclusion[a]
    raise ValueError("algebra is neither the ambient algebra nor one of its subalgebras")


def piece_module(A: BasisAlgebra, indices: Sequence[int], over: BasisAlgebra, name="") -> RightModule:
    """The span of some basis elements of ``A`` as a right module over ``over`` (``A`` or a corner)."""
    incl = _inclusion(over, A)
    pos = {g: k for k, g in enumerate(indices)}

    def act(i, a):
        prod = A.mul(indices[i], incl(a))
        try:
            return {pos[g]: x for g, x in prod.items()}
        except KeyError:
            raise ValueError("basis span is not closed under the action") from None

    return RightModule(over, [A.labels[g] for g in indices], [A.tgt[g] for g in indices],
                       [A.weight[g] for g in indices], act, name)


def simple_module(L: BasisAlgebra, vertex: str) -> RightModule:
    e = L.idempotent[vertex]

    def act(i, a):
        return {0: 1} if a == e else {}

    return RightModule(L, [f"S_{vertex}"], [vertex], [0], act, name=f"S_{vertex}")


def is_local(Q: BasisAlgebra) -> bool:
    return Q.dim > 0 and len(Q.radical()) == Q.dim - 1


def simple_top(A: BasisAlgebra, vertices) -> RightModule:
    """The simple module ``S`` = top of ``A/AeA``, as a right ``A``-module."""
    Q = quotient_by_idempotent_ideal(A, vertices)
    if not is_local(Q):
        raise ValueError(
            f"A/AeA is not local (dimension {Q.dim}, {Q.dim - len(Q.radical())} idempotents); "
            "the simple top is undefined")
    v = next(v for v in Q.vertices if v in Q.idempotent)
    return simple_module(A, v)


# -- projective terms -------------------------------------------------------------------


@dataclass
class ProjectiveTerm:
    """``P = sum_g e_{v_g} L [weight shift w_g]``, truncated at total weight ``D``."""

    algebra: BasisAlgebra
    gens: List[Tuple[str, int]]                   # (vertex, weight)
    max_weight: Optional[int]
    basis: List[Tuple[int, int]] = field(default_factory=list)   # (generator, algebra basis element)
    index: Dict[Tuple[int, int], int] = field(default_factory=dict)
    cells: Dict[Tuple[str, int], List[int]] = field(default_factory=dict)

    def __post_init__(self):
        L = self.algebra
        for g, (v, w) in enumerate(self.gens):
            for a in L.starting_at(v):
                wt = w + L.weight[a]
                if self.max_weight is not None and L.graded and wt > self.max_weight:
                    continue
                self.index[(g, a)] = len(self.basis)
                self.basis.append((g, a))
                self.cells.setdefault((L.tgt[a], self.weight_of(len(self.basis) - 1)), []).append(
                    len(self.basis) - 1)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def weight_of(self, i: int) -> int:
        g, a = self.basis[i]
        return self.gens[g][1] + self.algebra.weight[a] if self.algebra.graded else 0

    def vertex_of(self, i: int) -> str:
        return self.algebra.tgt[self.basis[i][1]]

    def act(self, i: int, b: int) -> Vector:
        L = self.algebra
        g, a = self.basis[i]
        out: Vector = {}
        for c, x in L.mul(a, b).items():
            j = self.index.get((g, c))
            if j is not None:
                out[j] = x
        return out

    def act_vec(self, v: Vector, b: int) -> Vector:
        out: Vector = {}
        for i, x in v.items():
            p = self.act(i, b)
            if p:
                vec_iadd(out, p, self.algebra.field, x)
        return out

    def multiplicities(self) -> Dict[str, int]:
        out: Dict[str, int] = {}
        for v, _ in self.gens:
            out[v] = out.get(v, 0) + 1
        return out

    def shape(self) -> str:
        m = self.multiplicities()
        parts = [f"P{v}" + (f"^{k}" if k > 1 else "") for v, k in m.items()]
        return " + ".join(parts) if parts else "0"


@dataclass
class ResolutionWindow:
    module: RightModule
    terms: List[ProjectiveTerm]
    images: List[List[Vector]]      # images[j][g]: image of generator g of P_j in P_{j-1} (or M for j = 0)
    complete: List[bool]            # term j has all of its generators (not cut off by the weight cap)
    max_weight: Optional[int]
    length: int
    terminated: bool = False        # the last kernel vanished inside the window

    def shapes(self) -> List[str]:
        return [t.shape() for t in self.terms]

    def multiplicities(self) -> List[Dict[str, int]]:
        return [t.multiplicities() for t in self.terms]

    def apply(self, j: int, v: Vector) -> Vector:
        """The differential P_j -> P_{j-1} (or the augmentation to M for j = 0)."""
        P = self.terms[j]
        F = P.algebra.field
        out: Vector = {}
        target_act = self.module.act_vec if j == 0 else self.terms[j - 1].act_vec
        for i, x in v.items():
            g, a = P.basis[i]
            img = target_act(self.images[j][g], a)
            if img:
                vec_iadd(out, img, F, x)
        return out

    def matrix(self, j: int) -> List[List[Vector]]:
        """Differential of P_j -> P_{j-1} as a generator matrix with entries in the algebra.

        Entry [g][h] is the algebra element lambda with g |-> sum_h h * lambda.
        """
        prev = self.terms[j - 1]
        out = []
        for img in self.images[j]:
            row = [dict() for _ in prev.gens]
            for i, x in img.items():
                h, a = prev.basis[i]
                row[h][a] = x
            out.append(row)
        return out

    def is_minimal(self) -> bool:
        for j in range(1, len(self.terms)):
            L = self.terms[j].algebra
            idem = set(L.idempotent.values())
            for row in self.matrix(j):
                for entry in row:
                    if any(a in idem for a in entry):
                        return False
        return True

    def check_exact(self) -> List[str]:
        """Consecutive composites vanish and ranks match kernels, cell by cell."""
        problems = []
        F = self.module.algebra.field
        for j in range(1, len(self.terms)):
            P = self.terms[j]
            for i in range(P.dim):
                img = self.apply(j, {i: 1})
                if img and self.apply(j - 1, img):
                    problems.append(f"d^2 != 0 at term {j}, basis element {i}")
                    break
        for j in range(len(self.terms) - 1):
            P, Pn = self.terms[j], self.terms[j + 1]
            for cell, idx in P.cells.items():
                cols = [self.apply(j, {i: 1}) for i in idx]
                ker = len(idx) - rank_of_vectors(cols, F)
                incoming = [self.apply(j + 1, {i: 1}) for i in Pn.cells.get(cell, [])]
                im = rank_of_vectors(incoming, F)
                if ker != im:
                    problems.append(f"not exact at term {j}, cell {cell}: kernel {ker}, image {im}")
        return problems


def _cover(L: BasisAlgebra, cells: Dict[Tuple[str, int], List[Vector]], act_vec, max_weight) \
        -> List[Tuple[str, int, Vector]]:
    """Generators of ``K / K rad`` for K given by homogeneous spanning vectors per (vertex, weight)."""
    F = L.field
    rad = L.radical()
    radspan: Dict[Tuple[str, int], Echelon] = {}
    for (v, w), vecs in cells.items():
        for a in rad:
            if L.src[a] != v:
                continue
            wt = w + L.weight[a] if L.graded else 0
            if L.graded and max_weight is not None and wt > max_weight:
                continue
            key = (L.tgt[a], wt)
            for k in vecs:
                p = act_vec(k, a)
                if p:
                    radspan.setdefault(key, Echelon(F)).add(p)
    gens = []
    for key in sorted(cells, key=lambda c: (c[1], L.vertices.index(c[0]))):
        ech = radspan.get(key, Echelon(F)).copy()
        for k in cells[key]:
            if ech.add(k):
                gens.append((key[0], key[1], k))
    return gens


def minimal_resolution(M: RightModule, L: int, D: Optional[int] = None) -> ResolutionWindow:
    """Minimal projective resolution P_L -> ... -> P_0 -> M, all weights <= D.

    For graded algebras ``D`` defaults to the algebra's weight window; for an
    ungraded (finite-dimensional) algebra ``D`` is ignored.
    """
    Lam = M.algebra
    F = Lam.field
    if Lam.graded:
        if D is None and not Lam.exact:
            D = Lam.max_weight
        if not Lam.exact and D is not None and Lam.max_weight is not None and D > Lam.max_weight:
            raise WindowError(f"weight cap {D} exceeds the truncated algebra window {Lam.max_weight}")
    else:
        D = None
    top = max(Lam.weight, default=0) if Lam.graded else 0

    cells: Dict[Tuple[str, int], List[Vector]] = {}
    for i in range(M.dim):
        w = M.weight[i] if Lam.graded else 0
        if D is not None and w > D:
            continue
        cells.setdefault((M.vertex[i], w), []).append({i: 1})
    act_vec = M.act_vec
    full_top = max(M.weight, default=0) if Lam.graded else 0
    prev_complete = D is None or full_top <= D
    terms, images, complete = [], [], []
    for j in range(L + 1):
        gens = _cover(Lam, cells, act_vec, D)
        P = ProjectiveTerm(Lam, [(v, w) for v, w, _ in gens], D)
        terms.append(P)
        images.append([k for _, _, k in gens])
        complete.append(prev_complete)
        # kernel of P -> previous, per cell
        new_cells: Dict[Tuple[str, int], List[Vector]] = {}
        for cell, idx in P.cells.items():
            cols = []
            for i in idx:
                g, a = P.basis[i]
                cols.append(act_vec(images[j][g], a))
            ker, _ = column_kernel(cols, F)
            if ker:
                new_cells[cell] = [{idx[k]: x for k, x in v.items()} for v in ker]
        cells = new_cells
        act_vec = P.act_vec
        max_gen = max((w for _, w in P.gens), default=0)
        prev_complete = prev_complete and Lam.exact and (D is None or max_gen + top <= D)
        if not cells:
            break
    return ResolutionWindow(M, terms, images, complete, D, L, terminated=not cells)


# -- Ext via the resolution and via Hom complexes ------------------------------------------


def ext_dims_from_resolution(res: ResolutionWindow, vertex: str) -> Dict[Tuple[int, int], int]:
    """dim Ext^j(M, S_v) per (j, internal weight): generators of P_j at v (minimal resolution)."""
    out: Dict[Tuple[int, int], int] = {}
    for j, P in enumerate(res.terms):
        for v, w in P.gens:
            if v == vertex:
                out[(j, w)] = out.get((j, w), 0) + 1
    return out


def hom_complex_ext(res: ResolutionWindow, N: RightModule, max_j: Optional[int] = None) \
        -> Dict[Tuple[int, int], int]:
    """dim Ext^j(M, N) per (j, s) from the cohomology of Hom(P_*, N).

    ``s`` is the internal degree shift ``weight(n) - weight(g)``.  The last
    computed term only yields a kernel, so it is omitted.
    """
    Lam = N.algebra
    F = Lam.field
    graded = Lam.graded
    last = len(res.terms) if res.terminated else len(res.terms) - 1
    J = last if max_j is None else min(max_j, last)

    def hom_basis(j):
        out = []
        for g, (v, w) in enumerate(res.terms[j].gens):
            for n in range(N.dim):
                if N.vertex[n] == v:
                    out.append((g, n, (N.weight[n] - w) if graded else 0))
        return out

    bases = [hom_basis(j) if j < len(res.terms) else [] for j in range(J + 1)]
    index = [{(g, n): k for k, (g, n, _) in enumerate(b)} for b in bases]

    def delta(j, k):
        # (delta phi)(g') = phi(d g') for generators g' of P_{j+1}
        g, n, _ = bases[j][k]
        out: Vector = {}
        if j + 1 >= len(res.terms):
            return out
        P = res.terms[j]
        for gp, img in enumerate(res.images[j + 1]):
            val: Vector = {}
            for i, x in img.items():
                h, a = P.basis[i]
                if h == g:
                    vec_iadd(val, N.act(n, a), F, x)
            for m, y in val.items():
                out[index[j + 1][(gp, m)]] = y
        return out

    dims: Dict[Tuple[int, int], int] = {}
    incoming: Dict[int, List[Vector]] = {}
    for j in range(J):
        shifts = sorted({s for _, _, s in bases[j]})
        cols_all = [delta(j, k) for k in range(len(bases[j]))]
        for s in shifts:
            ks = [k for k, b in enumerate(bases[j]) if b[2] == s]
            rk_out = rank_of_vectors([cols_all[k] for k in ks], F)
            rk_in = rank_of_vectors([v for v in incoming.get(s, [])], F)
            d = len(ks) - rk_out - rk_in
            if d:
                dims[(j, s)] = d
        incoming = {}
        for k, col in enumerate(cols_all):
            if col:
                incoming.setdefault(bases[j][k][2], []).append(col)
    return dims


def ext_total_dims(dims: Dict[Tuple[int, int], int]) -> Dict[int, int]:
    out: Dict[int, int] = {}
    for (j, _), d in dims.items():
        out[j] = out.get(j, 0) + d
    return out


# -- Tor -----------------------------------------------------------------------------------


def tor_dims(res: ResolutionWindow, A: BasisAlgebra, left_indices: Sequence[int]) \
        -> Dict[Tuple[int, int], int]:
    """dim Tor_j(M, N) per (j, weight) for ``N`` a left module spanned by basis elements of ``A``.

    The resolution is over a subalgebra ``R`` of ``A`` (or ``A`` itself) and
    ``N`` must be closed under left multiplication by ``R``.  Uses
    ``e_v R (x)_R N = e_v N``.
    """
    R = res.terms[0].algebra
    F = A.field
    incl = _inclusion(R, A)
    Nset = set(left_indices)
    by_src: Dict[str, List[int]] = {}
    for n in left_indices:
        by_src.setdefault(A.src[n], []).append(n)
    D = res.max_weight
    graded = A.graded

    def basis(j):
        out = []
        for g, (v, w) in enumerate(res.terms[j].gens):
            for n in by_src.get(v, []):
                wt = w + A.weight[n] if graded else 0
                if D is not None and graded and wt > D:
                    continue
                out.append((g, n, wt))
        return out

    J = len(res.terms)
    bases = [basis(j) for j in range(J)] + [[]]
    index = [{(g, n): k for k, (g, n, _) in enumerate(b)} for b in bases]

    def d(j, k):
        g, n, _ = bases[j][k]
        out: Vector = {}
        P = res.terms[j - 1]
        for i, x in res.images[j][g].items():
            h, a = P.basis[i]
            for m, y in A.mul(incl(a), n).items():
                if m not in Nset:
                    raise ValueError("left module is not closed under the action")
                key = index[j - 1].get((h, m))
                if key is None:
                    continue
                out[key] = F.reduce(out.get(key, 0) + x * y)
                if not out[key]:
                    del out[key]
        return out

    dims: Dict[Tuple[int, int], int] = {}
    for j in range(J if res.terminated else J - 1):
        weights = sorted({b[2] for b in bases[j]})
        for w in weights:
            ks = [k for k, b in enumerate(bases[j]) if b[2] == w]
            out_cols = [d(j, k) for k in ks] if j > 0 else []
            ins = [d(j + 1, k) for k, b in enumerate(bases[j + 1]) if b[2] == w]
            dd = len(ks) - rank_of_vectors(out_cols, F) - rank_of_vectors(ins, F)
            if dd:
                dims[(j, w)] = dd
    return dims


# -- Yoneda products ------------------------------------------------------------------------


class ExtAlgebraWindow:
    """Ext^*(S, S) for a simple module, with Yoneda products by chain-map lifting.

    Basis of Ext^j: generators of P_j at the simple's vertex (minimal
    resolution).  The product ``a * b`` is the composite ``a o b`` (``b``
    applied first).
    """

    def __init__(self, res: ResolutionWindow, vertex: str):
        self.res = res
        self.vertex = vertex
        self.field = res.module.algebra.field
        self.classes: Dict[int, List[int]] = {}
        for j, P in enumerate(res.terms):
            self.classes[j] = [g for g, (v, _) in enumerate(P.gens) if v == vertex]
        self._solvers: Dict[Tuple[int, str, int], Tuple[List[int], Echelon]] = {}
        self._lifts: Dict[Tuple[int, int], List[Dict[int, Vector]]] = {}

    @property
    def top(self) -> int:
        return len(self.res.terms) - 1

    def dims(self) -> Dict[int, int]:
        return {j: len(c) for j, c in self.classes.items()}

    def weight(self, j: int, k: int) -> int:
        return self.res.terms[j].gens[self.classes[j][k]][1]

    def cell_dims(self) -> Dict[Tuple[int, int], int]:
        out: Dict[Tuple[int, int], int] = {}
        for j, cl in self.classes.items():
            for k in range(len(cl)):
                key = (j, self.weight(j, k))
                out[key] = out.get(key, 0) + 1
        return out

    def _solve(self, k: int, target: Vector) -> Optional[Vector]:
        """x in P_k with d(x) = target (target homogeneous in P_{k-1})."""
        res = self.res
        P, Pp = res.terms[k], res.terms[k - 1]
        if not target:
            return {}
        i0 = next(iter(target))
        cell = (Pp.vertex_of(i0), Pp.weight_of(i0))
        key = (k,) + cell
        hit = self._solvers.get(key)
        if hit is None:
            idx = P.cells.get(cell, [])
            ech = Echelon(self.field, track=True)
            for t, i in enumerate(idx):
                ech.add(res.apply(k, {i: 1}), tag=t)
            hit = (idx, ech)
            self._solvers[key] = hit
        idx, ech = hit
        rem, combo = ech.reduce(target)
        if rem:
            return None
        return {idx[t]: y for t, y in combo.items() if y}

    def lift(self, j: int, c: int, upto: int) -> Optional[List[Dict[int, Vector]]]:
        """Chain map f_k: P_{j+k} -> P_k (k <= upto) lifting the class c of Ext^j.

        f_k is stored as generator -> vector in P_k.  Returns None when the
        window is too small.
        """
        res = self.res
        key = (j, c)
        maps = self._lifts.get(key)
        if maps is None:
            g0 = self.classes[j][c]
            P0 = res.terms[0]
            e = res.module.algebra.idempotent[self.vertex]
            base = {}
            gen0 = next(h for h, (v, _) in enumerate(P0.gens) if v == self.vertex)
            base[g0] = {P0.index[(gen0, e)]: 1}
            maps = [base]
            self._lifts[key] = maps
        while len(maps) <= upto:
            k = len(maps)
            if j + k >= len(res.terms) or k >= len(res.terms):
                return None
            prev = maps[-1]
            Psrc_prev = res.terms[j + k - 1]
            Ptgt_prev = res.terms[k - 1]
            fk = {}
            for G, img in enumerate(res.images[j + k]):
                t: Vector = {}
                for i, x in img.items():
                    h, a = Psrc_prev.basis[i]
                    fh = prev.get(h)
                    if fh:
                        vec_iadd(t, Ptgt_prev.act_vec(fh, a), self.field, x)
                x = self._solve(k, t)
                if x is None:
                    return None
                if x:
                    fk[G] = x
            maps.append(fk)
        return maps[: upto + 1]

    def product(self, i: int, a: int, j: int, b: int) -> Optional[Vector]:
        """Coordinates of (class a of Ext^i) * (class b of Ext^j) in Ext^{i+j}; None if out of window."""
        if i + j > self.top:
            return {} if self.res.terminated else None
        D = self.res.max_weight
        if D is not None and self.weight(i, a) + self.weight(j, b) > D:
            return None
        maps = self.lift(j, b, i)
        if maps is None:
            return None
        fi = maps[i]
        P = self.res.terms[i]
        ga = self.classes[i][a]
        e = self.res.module.algebra.idempotent[self.vertex]
        col = P.index.get((ga, e))
        out: Vector = {}
        for k, G in enumerate(self.classes[i + j]):
            x = fi.get(G, {}).get(col, 0) if col is not None else 0
            if x:
                out[k] = x
        return out


def ext_algebra(S: RightModule, L: int, D: Optional[int] = None) -> ExtAlgebraWindow:
    res = minimal_resolution(S, L, D)
    if S.dim != 1:
        raise ValueError("Yoneda products are implemented for simple modules")
    return ExtAlgebraWindow(res, S.vertex[0])


# -- Theorem A consistency ------------------------------------------------------------------


def ext_complete_weight(E: ExtAlgebraWindow, by_degree: bool) -> Optional[int]:
    """Largest W such that every Ext class of weight <= W is computed (None: all of them)."""
    res = E.res
    D = None if by_degree else res.max_weight
    if res.terminated:
        # the last kernel vanished in weights <= D, so no later generator has weight <= D
        return D
    # Ext^j classes have weight >= j (minimal resolution over a positively graded algebra)
    return E.top if D is None else min(E.top, D)


def ext_as_dga(E: ExtAlgebraWindow, W: int, by_degree: bool = False):
    """The Ext algebra as a formal dga (zero differential) in cells (j, weight), weights <= W.

    ``weight`` is the internal degree, or ``j`` itself when ``by_degree`` (ungraded algebras).
    """
    from .dg import DgaWindow, GradedWindow
    bound = ext_complete_weight(E, by_degree)
    if bound is not None and W > bound:
        raise WindowError(f"Ext classes are only complete through weight {bound} < {W}")
    pos: Dict[Tuple[int, int], List[Tuple[int, int]]] = {}
    for j, cl in E.classes.items():
        for k in range(len(cl)):
            w = j if by_degree else E.weight(j, k)
            if w <= W:
                pos.setdefault((j, w), []).append((j, k))
    index = {c: {jk: n for n, jk in enumerate(v)} for c, v in pos.items()}

    def mul(c1, i, c2, j):
        (j1, k1), (j2, k2) = pos[c1][i], pos[c2][j]
        prod = E.product(j1, k1, j2, k2)
        if prod is None:
            raise WindowError(f"Yoneda product Ext^{j1} x Ext^{j2} left the resolution window")
        tgt = (c1[0] + c2[0], c1[1] + c2[1])
        return {index[tgt][(j1 + j2, k)]: x for k, x in prod.items()}

    top = max((c[0] for c in pos), default=0)
    win = GradedWindow(0, top, W, zero_above=True, zero_below=True, exact_weights=bound is None)
    unit = {0: 1}
    return DgaWindow(E.field, win, {c: [f"ext{j}_{k}" for j, k in v] for c, v in pos.items()},
                     lambda c, i: {}, mul, unit=unit, augmentation=dict(unit), name="Ext(S,S)")


@dataclass
class TheoremAReport:
    verdict: str                            # "pass", "inconclusive: possible non-formality", "insufficient window"
    weight_cap: int
    compared: Dict[object, Tuple[int, int]]  # key -> (Koszul-dual route, derived-quotient route)
    mismatches: List[object]
    notes: List[str]

    @property
    def ok(self) -> bool:
        return self.verdict == "pass"


def theorem_a_consistency(A: BasisAlgebra, vertices, L: int, J: int, D: Optional[int] = None,
                          W: Optional[int] = None, H=None) -> TheoremAReport:
    """Compare H of the Koszul dual of Ext_A(S, S) (taken formal) with H(A/L AeA).

    Graded algebras are compared cell by cell (degree, internal weight);
    ungraded ones degree by degree, with Ext^j placed in weight j.
    """
    from .derived_quotient import build_model, dq_cohomology_ring
    from .dg import cohomology
    from .koszul import koszul_dual
    notes = ["the Ext algebra is assumed formal"]
    S = simple_top(A, vertices)
    graded = A.graded
    E = ext_algebra(S, L, D if graded else None)
    bound = ext_complete_weight(E, not graded)
    if W is None:
        W = D if graded and D is not None else 2 * J
    if bound is not None and W > bound:
        notes.append(f"weight cap lowered from {W} to {bound} (Ext window)")
        W = bound
    K = cohomology(koszul_dual(ext_as_dga(E, W, by_degree=not graded), W), reps=False, check=False)
    if H is None:
        H = dq_cohomology_ring(build_model(A, vertices, J, D), reps=False)
    compared, mismatches = {}, []
    if graded:
        for c, h in H.cells.items():
            if not h.trusted or c[1] > W:
                continue
            k = K.dim(c) if c in K.cells else 0
            compared[c] = (k, h.dim)
            if k != h.dim:
                mismatches.append(c)
    else:
        has_ext1 = bool(E.classes.get(1))
        if has_ext1:
            notes.append("Ext^1 is nonzero: degree-wise totals of the dual are not finite at a weight cap")
            return TheoremAReport("insufficient window", W, {}, [], notes)
        kd = K.degree_dims(trusted_only=False)
        hd = H.degree_dims(trusted_only=True)
        trusted_deg = {c[0] for c, h in H.cells.items() if h.trusted}
        untrusted_deg = {c[0] for c, h in H.cells.items() if not h.trusted}
        for n in sorted(trusted_deg - untrusted_deg, reverse=True):
            if 2 * (-n) > W:
                continue
            compared[n] = (kd.get(n, 0), hd.get(n, 0))
            if compared[n][0] != compared[n][1]:
                mismatches.append(n)
    if not compared:
        return TheoremAReport("insufficient window", W, compared, mismatches, notes)
    verdict = "pass" if not mismatches else "inconclusive: possible non-formality"
    return TheoremAReport(verdict, W, compared, mismatches, notes)
