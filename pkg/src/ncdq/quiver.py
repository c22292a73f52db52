"""Path algebras of quivers with relations, corner rings and idempotent quotients.

Paths compose left to right: ``xy`` means ``x`` followed by ``y``.  Right
modules are the default, so the indecomposable projective at ``i`` is
``e_i A`` (paths starting at ``i``).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .linalg import QQ, Echelon, Field, QuotientSpace, Vector, vec_add, vec_iadd


class SpecError(ValueError):
    """Invalid quiver, relation or truncation data."""


@dataclass(frozen=True)
class Arrow:
    name: str
    src: str
    tgt: str


@dataclass(frozen=True)
class Path:
    src: str
    tgt: str
    arrows: Tuple[str, ...] = ()

    def __len__(self):
        return len(self.arrows)

    def __str__(self):
        return "".join(self.arrows) if self.arrows else f"e_{self.src}"


@dataclass
class Quiver:
    vertices: List[str]
    arrows: List[Arrow]

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise SpecError("vertex labels must be unique")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise SpecError("arrow labels must be unique")
        vs = set(self.vertices)
        for a in self.arrows:
            if a.src not in vs or a.tgt not in vs:
                raise SpecError(f"arrow {a.name!r} has an undeclared endpoint")
        self._arrow = {a.name: a for a in self.arrows}
        self._vidx = {v: i for i, v in enumerate(self.vertices)}

    def arrow(self, name: str) -> Arrow:
        try:
            return self._arrow[name]
        except KeyError:
            raise SpecError(f"unknown arrow {name!r}") from None

    def vertex_index(self, v: str) -> int:
        return self._vidx[v]

    def path(self, names: Sequence[str], vertex: Optional[str] = None) -> Path:
        if not names:
            if vertex is None or vertex not in self._vidx:
                raise SpecError("a length-0 path needs a declared vertex")
            return Path(vertex, vertex)
        arrows = [self.arrow(n) for n in names]
        for a, b in zip(arrows, arrows[1:]):
            if a.tgt != b.src:
                raise SpecError(f"arrows {a.name!r} and {b.name!r} do not compose ({a.tgt} != {b.src})")
        return Path(arrows[0].src, arrows[-1].tgt, tuple(names))

    def concat(self, p: Path, q: Path) -> Optional[Path]:
        if p.tgt != q.src:
            return None
        return Path(p.src, q.tgt, p.arrows + q.arrows)

    def path_key(self, p: Path):
        """Basis ordering: length, source, target, then arrow labels."""
        return (len(p), self._vidx[p.src], self._vidx[p.tgt], p.arrows)

    def paths_by_length(self, n: int) -> List[List[Path]]:
        """All paths of length 0..n, grouped by length and sorted by ``path_key``."""
        out = [[Path(v, v) for v in self.vertices]]
        out_of: Dict[str, List[Arrow]] = {v: [] for v in self.vertices}
        for a in self.arrows:
            out_of[a.src].append(a)
        for _ in range(n):
            nxt = []
            for p in out[-1]:
                for a in out_of[p.tgt]:
                    nxt.append(Path(p.src, a.tgt, p.arrows + (a.name,)))
            out.append(sorted(nxt, key=self.path_key))
        out[0].sort(key=self.path_key)
        return out


@dataclass
class Relation:
    terms: List[Tuple[object, Path]]

    def __post_init__(self):
        if not self.terms:
            raise SpecError("empty relation")
        s, t = self.terms[0][1].src, self.terms[0][1].tgt
        for c, p in self.terms:
            if (p.src, p.tgt) != (s, t):
                raise SpecError(f"relation terms are not parallel: offending term {p}")
            if not c:
                raise SpecError("relation coefficients must be nonzero")
            if len(p) == 0:
                raise SpecError("relations may not contain length-0 paths")

    @property
    def src(self):
        return self.terms[0][1].src

    @property
    def tgt(self):
        return self.terms[0][1].tgt

    @property
    def homogeneous(self) -> bool:
        return len({len(p) for _, p in self.terms}) == 1

    def __str__(self):
        return " + ".join(f"{c}*{p}" for c, p in self.terms)


@dataclass
class Truncation:
    path_length: int = 12
    dg_depth: int = 4
    internal_degree: int = 12
    resolution_length: int = 5

    def __post_init__(self):
        for k in ("path_length", "dg_depth", "internal_degree", "resolution_length"):
            if getattr(self, k) < 0:
                raise SpecError(f"truncation {k} must be nonnegative")


@dataclass
class QuiverSpec:
    quiver: Quiver
    relations: List[Relation]
    marked_vertices: List[str]
    field: Field = QQ
    truncation: Truncation = dc_field(default_factory=Truncation)
    name: str = ""

    def __post_init__(self):
        for v in self.marked_vertices:
            if v not in self.quiver.vertices:
                raise SpecError(f"idempotent vertex {v!r} is not a vertex")

    @property
    def homogeneous(self) -> bool:
        return all(r.homogeneous for r in self.relations)


# -- basis algebras ----------------------------------------------------------


class BasisAlgebra:
    """A finite (or weight-truncated) algebra with an explicit basis.

    Every basis element carries a source and target vertex and a weight (path
    length for path algebras).  ``graded`` means products add weights; in that
    case ``max_weight`` bounds the window and products beyond it vanish (when
    ``exact`` is False they are truncated, not genuinely zero).
    """

    def __init__(self, field: Field, labels: List, src: List[str], tgt: List[str],
                 weight: List[int], vertices: List[str], table: Dict[Tuple[int, int], Vector],
                 graded: bool, exact: bool, max_weight: Optional[int] = None, name: str = ""):
        self.field = field
        self.labels = labels
        self.src = src
        self.tgt = tgt
        self.weight = weight
        self.vertices = vertices
        self.table = table
        self.graded = graded
        self.exact = exact
        self.max_weight = max_weight
        self.name = name
        self.idempotent: Dict[str, int] = {}
        for i, lab in enumerate(labels):
            if weight[i] == 0 and src[i] == tgt[i] and src[i] not in self.idempotent:
                if table.get((i, i)) == {i: 1}:
                    self.idempotent[src[i]] = i
        self._from_src: Dict[str, List[int]] = {v: [] for v in vertices}
        self._to_tgt: Dict[str, List[int]] = {v: [] for v in vertices}
        for i in range(len(labels)):
            self._from_src[src[i]].append(i)
            self._to_tgt[tgt[i]].append(i)

    def __len__(self):
        return len(self.labels)

    @property
    def dim(self) -> int:
        return len(self.labels)

    def mul(self, i: int, j: int) -> Vector:
        if self.tgt[i] != self.src[j]:
            return {}
        return self.table.get((i, j), {})

    def mul_vec(self, u: Vector, v: Vector) -> Vector:
        F = self.field
        out: Vector = {}
        for i, x in u.items():
            for j, y in v.items():
                prod = self.mul(i, j)
                if prod:
                    vec_iadd(out, prod, F, x * y)
        return out

    def unit(self) -> Vector:
        return {self.idempotent[v]: 1 for v in self.vertices}

    def idempotent_vector(self, vertices: Iterable[str]) -> Vector:
        return {self.idempotent[v]: 1 for v in vertices}

    def starting_at(self, v: str) -> List[int]:
        return self._from_src[v]

    def ending_at(self, v: str) -> List[int]:
        return self._to_tgt[v]

    def radical(self) -> List[int]:
        """Basis elements spanning the radical: everything but vertex idempotents."""
        idem = set(self.idempotent.values())
        return [i for i in range(self.dim) if i not in idem]

    def label(self, i: int) -> str:
        return str(self.labels[i])

    def cells(self) -> Dict[Tuple[int, str, str], List[int]]:
        out: Dict[Tuple[int, str, str], List[int]] = {}
        for i in range(self.dim):
            out.setdefault((self.weight[i], self.src[i], self.tgt[i]), []).append(i)
        return out

    def check_associativity(self, limit: Optional[int] = None) -> List[Tuple[int, int, int]]:
        """Basis triples violating associativity (within the weight window)."""
        bad = []
        n = 0
        for i in range(self.dim):
            for j in self._from_src[self.tgt[i]]:
                ij = self.mul(i, j)
                for k in self._from_src[self.tgt[j]]:
                    if self.graded and self.max_weight is not None and \
                            self.weight[i] + self.weight[j] + self.weight[k] > self.max_weight:
                        continue
                    left = self.mul_vec(ij, {k: 1})
                    right = self.mul_vec({i: 1}, self.mul(j, k))
                    if left != right:
                        bad.append((i, j, k))
                    n += 1
                    if limit is not None and n >= limit:
                        return bad
        return bad

    def peirce_dims(self, vertices: Iterable[str]) -> Dict[str, int]:
        V = set(vertices)
        out = {"eAe": 0, "eA(1-e)": 0, "(1-e)Ae": 0, "(1-e)A(1-e)": 0}
        for i in range(self.dim):
            a = self.src[i] in V
            b = self.tgt[i] in V
            key = ("eA" if a else "(1-e)A") + ("e" if b else "(1-e)")
            out[key] += 1
        return out


def _path_vector(terms, index, F: Field) -> Vector:
    v: Vector = {}
    for c, p in terms:
        j = index.get(p)
        if j is None:
            continue
        vec_iadd(v, {j: F(c)}, F)
    return v


def build_algebra(spec: QuiverSpec) -> BasisAlgebra:
    """Basis and structure constants of ``kQ/(I)``.

    Homogeneous relations: the ideal is computed length by length up to
    ``N + 1``; the result is exact when every path of length ``N + 1`` lies in
    the ideal, otherwise it is the truncation ``A / A_{>N}``.  Inhomogeneous
    relations: the ideal is closed under arrow multiplication inside paths of
    length at most ``N + r`` (``r`` the longest relation); the algebra must be
    finite-dimensional with all paths of length ``N + 1`` vanishing.
    """
    Q = spec.quiver
    F = spec.field
    N = spec.truncation.path_length
    if spec.homogeneous:
        return _build_graded(spec, Q, F, N)
    return _build_exact(spec, Q, F, N)


def _build_graded(spec, Q: Quiver, F: Field, N: int) -> BasisAlgebra:
    by_len = Q.paths_by_length(N + 1)
    rel_by_len: Dict[int, List[Relation]] = {}
    for r in spec.relations:
        rel_by_len.setdefault(len(r.terms[0][1]), []).append(r)
    out_of: Dict[str, List[Arrow]] = {v: [] for v in Q.vertices}
    into: Dict[str, List[Arrow]] = {v: [] for v in Q.vertices}
    for a in Q.arrows:
        out_of[a.src].append(a)
        into[a.tgt].append(a)

    # column index within each length: descending path order, so pivots are the largest paths
    col_index: List[Dict[Path, int]] = []
    col_path: List[List[Path]] = []
    for ell, paths in enumerate(by_len):
        desc = list(reversed(paths))
        col_path.append(desc)
        col_index.append({p: i for i, p in enumerate(desc)})

    ideals: List[Echelon] = [Echelon(F)]
    for ell in range(1, N + 2):
        ech = Echelon(F)
        idx = col_index[ell]
        prev = ideals[-1]
        prev_paths = col_path[ell - 1]
        for row in prev.rows.values():
            some = prev_paths[next(iter(row))]
            s, t = some.src, some.tgt
            for a in out_of[t]:
                v = {idx[Path(prev_paths[c].src, a.tgt, prev_paths[c].arrows + (a.name,))]: x
                     for c, x in row.items()}
                ech.add(v)
            for a in into[s]:
                v = {idx[Path(a.src, prev_paths[c].tgt, (a.name,) + prev_paths[c].arrows)]: x
                     for c, x in row.items()}
                ech.add(v)
        for r in rel_by_len.get(ell, []):
            ech.add(_path_vector(r.terms, idx, F))
        ideals.append(ech)

    exact = len(ideals[N + 1]) == len(col_path[N + 1])
    top = N
    if exact:
        # the last nonzero length
        while top > 0 and len(ideals[top]) == len(col_path[top]):
            top -= 1
    labels: List[Path] = []
    for ell in range(0, top + 1):
        piv = ideals[ell].rows
        keep = [p for i, p in enumerate(col_path[ell]) if i not in piv]
        labels.extend(sorted(keep, key=Q.path_key))
    bindex = {p: i for i, p in enumerate(labels)}

    nf_cache: Dict[Path, Vector] = {}

    def normal_form(p: Path) -> Vector:
        if p in bindex:
            return {bindex[p]: 1}
        ell = len(p)
        if ell > top:
            return {}
        hit = nf_cache.get(p)
        if hit is not None:
            return hit
        rem, _ = ideals[ell].reduce({col_index[ell][p]: 1})
        v = {bindex[col_path[ell][c]]: x for c, x in rem.items()}
        nf_cache[p] = v
        return v

    table = _path_table(Q, labels, normal_form, max_len=top)
    return BasisAlgebra(F, labels, [p.src for p in labels], [p.tgt for p in labels],
                        [len(p) for p in labels], list(Q.vertices), table,
                        graded=True, exact=exact, max_weight=top if exact else N, name=spec.name)


def _path_table(Q: Quiver, labels: List[Path], normal_form, max_len: Optional[int]):
    table: Dict[Tuple[int, int], Vector] = {}
    starting: Dict[str, List[int]] = {}
    for j, q in enumerate(labels):
        starting.setdefault(q.src, []).append(j)
    for i, p in enumerate(labels):
        for j in starting.get(p.tgt, []):
            q = labels[j]
            if max_len is not None and len(p) + len(q) > max_len:
                continue
            v = normal_form(Path(p.src, q.tgt, p.arrows + q.arrows))
            if v:
                table[(i, j)] = v
    return table


def _build_exact(spec, Q: Quiver, F: Field, N: int) -> BasisAlgebra:
    r = max(len(p) for rel in spec.relations for _, p in rel.terms)
    cutoff = N + r
    by_len = Q.paths_by_length(cutoff)
    allpaths = [p for ps in by_len for p in ps]
    desc = sorted(allpaths, key=Q.path_key, reverse=True)
    idx = {p: i for i, p in enumerate(desc)}
    out_of: Dict[str, List[Arrow]] = {v: [] for v in Q.vertices}
    into: Dict[str, List[Arrow]] = {v: [] for v in Q.vertices}
    for a in Q.arrows:
        out_of[a.src].append(a)
        into[a.tgt].append(a)

    ech = Echelon(F)
    queue: List[Vector] = []
    for rel in spec.relations:
        v = _path_vector(rel.terms, idx, F)
        if ech.add(v):
            queue.append(v)
    # close under multiplication by arrows, dropping paths longer than the cutoff
    while queue:
        v = queue.pop()
        some = desc[next(iter(v))]
        s, t = some.src, some.tgt
        for a in out_of[t]:
            w = {}
            for c, x in v.items():
                p = desc[c]
                if len(p) < cutoff:
                    w[idx[Path(p.src, a.tgt, p.arrows + (a.name,))]] = x
            if w and ech.add(w):
                queue.append(w)
        for a in into[s]:
            w = {}
            for c, x in v.items():
                p = desc[c]
                if len(p) < cutoff:
                    w[idx[Path(a.src, p.tgt, (a.name,) + p.arrows)]] = x
            if w and ech.add(w):
                queue.append(w)

    for p in by_len[N + 1] if N + 1 < len(by_len) else []:
        if ech.reduce({idx[p]: 1})[0]:
            raise SpecError(
                f"inhomogeneous relations: path {p} of length {N + 1} survives; the algebra is "
                "not finite-dimensional within path_length (increase it or use graded relations)")

    labels = sorted([p for i, p in enumerate(desc) if i not in ech.rows], key=Q.path_key)
    bindex = {p: i for i, p in enumerate(labels)}

    def normal_form(p: Path) -> Vector:
        if p in bindex:
            return {bindex[p]: 1}
        if len(p) > cutoff:
            return {}
        rem, _ = ech.reduce({idx[p]: 1})
        return {bindex[desc[c]]: x for c, x in rem.items()}

    table = _path_table(Q, labels, normal_form, max_len=None)
    return BasisAlgebra(F, labels, [p.src for p in labels], [p.tgt for p in labels],
                        [len(p) for p in labels], list(Q.vertices), table,
                        graded=False, exact=True, max_weight=None, name=spec.name)


# -- corners, quotients, bimodule pieces ------------------------------------


class SubAlgebra(BasisAlgebra):
    """A subalgebra spanned by a subset of the basis, remembering the inclusion."""

    def __init__(self, parent: BasisAlgebra, indices: List[int], vertices: List[str], name=""):
        pos = {i: k for k, i in enumerate(indices)}
        table = {}
        for a, i in enumerate(indices):
            for b, j in enumerate(indices):
                prod = parent.mul(i, j)
                if prod:
                    try:
                        table[(a, b)] = {pos[k]: x for k, x in prod.items()}
                    except KeyError:
                        raise ValueError("basis subset is not closed under products") from None
        super().__init__(parent.field, [parent.labels[i] for i in indices],
                         [parent.src[i] for i in indices], [parent.tgt[i] for i in indices],
                         [parent.weight[i] for i in indices], vertices, table,
                         parent.graded, parent.exact, parent.max_weight, name)
        self.parent = parent
        self.inclusion = list(indices)
        self.position = pos


def corner_algebra(A: BasisAlgebra, vertices: Iterable[str]) -> SubAlgebra:
    """The corner ring ``eAe`` for the idempotent of a vertex set."""
    V = [v for v in A.vertices if v in set(vertices)]
    Vs = set(V)
    idx = [i for i in range(A.dim) if A.src[i] in Vs and A.tgt[i] in Vs]
    return SubAlgebra(A, idx, V, name=f"{A.name}:eAe")


class QuotientAlgebra(BasisAlgebra):
    """``A / I`` for a two-sided ideal given by spanning vectors."""

    def __init__(self, parent: BasisAlgebra, ideal: Iterable[Vector], name=""):
        F = parent.field
        q = QuotientSpace(parent.dim, ideal, F)
        reps = q.representatives
        table = {}
        for a, i in enumerate(reps):
            for b, j in enumerate(reps):
                prod = parent.mul(i, j)
                if prod:
                    v = q.project(prod)
                    if v:
                        table[(a, b)] = v
        verts = sorted({parent.src[i] for i in reps} | {parent.tgt[i] for i in reps},
                       key=parent.vertices.index)
        super().__init__(F, [parent.labels[i] for i in reps], [parent.src[i] for i in reps],
                         [parent.tgt[i] for i in reps], [parent.weight[i] for i in reps],
                         verts, table, parent.graded, parent.exact, parent.max_weight, name)
        self.parent = parent
        self.quotient = q

    def project(self, v: Vector) -> Vector:
        return self.quotient.project(v)

    def lift(self, v: Vector) -> Vector:
        return self.quotient.lift(v)


def idempotent_ideal_span(A: BasisAlgebra, vertices: Iterable[str]) -> List[Vector]:
    """Spanning vectors of ``AeA``: products of basis elements meeting at a vertex of ``V``."""
    V = set(vertices)
    out = []
    for v in A.vertices:
        if v not in V:
            continue
        for i in A.ending_at(v):
            for j in A.starting_at(v):
                prod = A.mul(i, j)
                if prod:
                    out.append(prod)
    return out


def quotient_by_idempotent_ideal(A: BasisAlgebra, vertices: Iterable[str]) -> QuotientAlgebra:
    return QuotientAlgebra(A, idempotent_ideal_span(A, vertices), name=f"{A.name}:A/AeA")


@dataclass
class BimodulePiece:
    """``Ae`` or ``eA`` as a subspace of ``A`` spanned by basis elements."""

    algebra: BasisAlgebra
    side: str           # "Ae" or "eA"
    indices: List[int]

    @property
    def dim(self):
        return len(self.indices)


def bimodule_piece(A: BasisAlgebra, vertices: Iterable[str], side: str) -> BimodulePiece:
    V = set(vertices)
    if side == "Ae":
        idx = [i for i in range(A.dim) if A.tgt[i] in V]
    elif side == "eA":
        idx = [i for i in range(A.dim) if A.src[i] in V]
    else:
        raise ValueError("side must be 'Ae' or 'eA'")
    return BimodulePiece(A, side, idx)


def element_str(A: BasisAlgebra, v: Vector) -> str:
    if not v:
        return "0"
    parts = []
    for i in sorted(v):
        c = v[i]
        lab = A.label(i)
        parts.append(lab if c == 1 else (f"-{lab}" if c == -1 else f"{c}*{lab}"))
    return " + ".join(parts).replace("+ -", "- ")


def check_peirce(A: BasisAlgebra, vertices: Iterable[str]) -> List[str]:
    """Peirce decomposition by actual multiplication with ``e = sum_{v in V} e_v``.

    Checks ``e^2 = e``, that the four pieces ``e b e``, ``e b (1-e)``, ... sum to
    ``b`` for every basis element, and that their sizes match ``peirce_dims``.
    """
    F = A.field
    V = [v for v in A.vertices if v in set(vertices)]
    e: Vector = {A.idempotent[v]: 1 for v in V}
    one = A.unit()
    f = vec_add(one, e, F, -1)
    problems = []
    if A.mul_vec(e, e) != e:
        problems.append("e^2 != e")
    counts = {"eAe": 0, "eA(1-e)": 0, "(1-e)Ae": 0, "(1-e)A(1-e)": 0}
    for i in range(A.dim):
        b = {i: 1}
        total: Vector = {}
        for left, ln in ((e, "eA"), (f, "(1-e)A")):
            lb = A.mul_vec(left, b)
            for right, rn in ((e, "e"), (f, "(1-e)")):
                piece = A.mul_vec(lb, right)
                if piece:
                    counts[ln + rn] += 1
                vec_iadd(total, piece, F)
        if total != b:
            problems.append(f"Peirce pieces of {A.labels[i]} do not sum to it")
    if counts != A.peirce_dims(V):
        problems.append(f"Peirce dimensions {counts} != {A.peirce_dims(V)}")
    return problems
