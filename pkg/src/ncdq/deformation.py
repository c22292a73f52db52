"""Maurer-Cartan elements, gauge action and the twisting-morphism correspondence.

All algebras here are finite-dimensional dgas given by explicit structure
constants (:class:`FiniteDga`), possibly without unit.  Deformations over an
Artinian local test algebra Gamma live in the tensor product ``E (x) m_Gamma``;
gauges live in ``1 + (E (x) m_Gamma)^0`` inside the unitalisation.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .linalg import QQ, Field, Vector, vec_add, vec_iadd, vec_scale


class DeformationError(ValueError):
    """Wrong degree, failed precondition or non-nilpotent input."""


@dataclass
class FiniteDga:
    """Finite-dimensional dga, unit optional.

    ``table[(i, j)]`` is the product of basis elements, ``diff[i]`` the
    differential of basis element ``i`` (degree + 1).
    """

    field: Field
    degrees: List[int]
    table: Dict[Tuple[int, int], Vector]
    diff: List[Vector]
    labels: List[str] = field(default_factory=list)
    unit: Optional[int] = None
    name: str = ""

    def __post_init__(self):
        if not self.labels:
            self.labels = [f"b{i}" for i in range(len(self.degrees))]

    @property
    def dim(self) -> int:
        return len(self.degrees)

    def of_degree(self, n: int) -> List[int]:
        return [i for i, d in enumerate(self.degrees) if d == n]

    def mul(self, u: Vector, v: Vector) -> Vector:
        out: Vector = {}
        for i, x in u.items():
            for j, y in v.items():
                p = self.table.get((i, j))
                if p:
                    vec_iadd(out, p, self.field, x * y)
        return out

    def d(self, v: Vector) -> Vector:
        out: Vector = {}
        for i, x in v.items():
            if self.diff[i]:
                vec_iadd(out, self.diff[i], self.field, x)
        return out

    def add(self, u: Vector, v: Vector, scale=1) -> Vector:
        return vec_add(u, v, self.field, scale)

    def degree_of(self, v: Vector) -> Optional[int]:
        ds = {self.degrees[i] for i in v}
        if len(ds) > 1:
            raise DeformationError(f"element {v} is not homogeneous")
        return ds.pop() if ds else None

    def check(self) -> List[str]:
        """d^2 = 0, degree bookkeeping, Leibniz and associativity on all basis pairs/triples."""
        F = self.field
        n = self.dim
        out = []
        for i in range(n):
            if self.d(self.diff[i]):
                out.append(f"d^2 != 0 on {self.labels[i]}")
            for j in self.diff[i]:
                if self.degrees[j] != self.degrees[i] + 1:
                    out.append(f"d changes degree wrongly on {self.labels[i]}")
        for (i, j), p in self.table.items():
            for k in p:
                if self.degrees[k] != self.degrees[i] + self.degrees[j]:
                    out.append(f"product {self.labels[i]}*{self.labels[j]} has wrong degree")
        for i in range(n):
            for j in range(n):
                ei, ej = {i: 1}, {j: 1}
                lhs = self.d(self.mul(ei, ej))
                s = -1 if self.degrees[i] % 2 else 1
                rhs = self.add(self.mul(self.diff[i], ej), self.mul(ei, self.diff[j]), s)
                if vec_add(lhs, rhs, F, -1):
                    out.append(f"Leibniz fails on ({self.labels[i]}, {self.labels[j]})")
                for k in range(n):
                    ek = {k: 1}
                    if vec_add(self.mul(self.mul(ei, ej), ek), self.mul(ei, self.mul(ej, ek)), F, -1):
                        out.append(f"associativity fails on ({self.labels[i]}, {self.labels[j]}, {self.labels[k]})")
        if self.unit is not None:
            u = {self.unit: 1}
            for i in range(n):
                if self.mul(u, {i: 1}) != {i: 1} or self.mul({i: 1}, u) != {i: 1}:
                    out.append(f"unit law fails on {self.labels[i]}")
        return out

    def unitalize(self) -> "FiniteDga":
        """``E (+) k`` with a new unit basis element at the end."""
        if self.unit is not None:
            return self
        n = self.dim
        table = dict(self.table)
        for i in range(n + 1):
            table[(n, i)] = {i: 1}
            table[(i, n)] = {i: 1}
        return FiniteDga(self.field, self.degrees + [0], table, self.diff + [{}],
                         self.labels + ["1"], unit=n, name=self.name + "+")

    @classmethod
    def from_window(cls, dga, augmentation_ideal: bool = True, name: str = "") -> "FiniteDga":
        """Flatten a complete :class:`DgaWindow`; optionally drop the unit cell (0, 0)."""
        pos = {}
        labels, degrees = [], []
        for c in sorted(dga.cells()):
            if augmentation_ideal and c == (0, 0):
                continue
            for k in range(dga.dim(c)):
                pos[(c, k)] = len(labels)
                labels.append(str(dga.basis[c][k]))
                degrees.append(c[0])
        cells = {c for c, _ in pos}
        table = {}
        diff = []
        for (c, k), i in pos.items():
            tc = (c[0] + 1, c[1])
            col = dga.d_columns(c)[k] if tc in cells else {}
            diff.append({pos[(tc, j)]: x for j, x in col.items()})
        for (c1, i1), a in pos.items():
            for (c2, i2), b in pos.items():
                tc = (c1[0] + c2[0], c1[1] + c2[1])
                if tc not in cells:
                    continue
                p = dga.mul_basis(c1, i1, c2, i2)
                if p:
                    table[(a, b)] = {pos[(tc, j)]: x for j, x in p.items()}
        return cls(dga.field, degrees, table, diff, labels, name=name or dga.name)


def tensor(E: FiniteDga, Z: FiniteDga, name: str = "") -> FiniteDga:
    """``E (x) Z`` with the Koszul sign rule; basis pairs in row-major order."""
    F = E.field
    nE, nZ = E.dim, Z.dim
    idx = lambda a, i: a * nZ + i
    degrees, labels, diff = [], [], []
    for a in range(nE):
        for i in range(nZ):
            degrees.append(E.degrees[a] + Z.degrees[i])
            labels.append(f"{E.labels[a]}@{Z.labels[i]}")
            out: Vector = {}
            for b, x in E.diff[a].items():
                vec_iadd(out, {idx(b, i): x}, F)
            s = -1 if E.degrees[a] % 2 else 1
            for j, x in Z.diff[i].items():
                vec_iadd(out, {idx(a, j): x}, F, s)
            diff.append(out)
    table = {}
    for (a, b), pe in E.table.items():
        for (i, j), pz in Z.table.items():
            s = -1 if (Z.degrees[i] * E.degrees[b]) % 2 else 1
            out: Vector = {}
            for c, x in pe.items():
                for k, y in pz.items():
                    vec_iadd(out, {idx(c, k): x * y}, F, s)
            if out:
                table[(idx(a, i), idx(b, j))] = out
    unit = idx(E.unit, Z.unit) if E.unit is not None and Z.unit is not None else None
    return FiniteDga(F, degrees, table, diff, labels, unit, name or f"{E.name}(x){Z.name}")


@dataclass
class ArtinianTestAlgebra:
    """Local Artinian Gamma with maximal ideal basis ``m`` (indices into ``algebra``)."""

    algebra: FiniteDga
    m: List[int]
    nilpotency_index: int = 0

    def __post_init__(self):
        self.nilpotency_index = self._compute_nilpotency()

    def _compute_nilpotency(self) -> int:
        G = self.algebra
        if G.unit is None:
            raise DeformationError("test algebra needs a unit")
        if sorted(self.m + [G.unit]) != list(range(G.dim)):
            raise DeformationError("maximal ideal must be a complement of the unit line")
        power = [{i: 1} for i in self.m]
        for k in range(1, G.dim + 2):
            if not any(power):
                return k
            power = [G.mul(p, {i: 1}) for p in power for i in self.m]
            power = [p for p in power if p]
        raise DeformationError("maximal ideal is not nilpotent")

    @classmethod
    def truncated_polynomial(cls, n: int, F: Field = QQ) -> "ArtinianTestAlgebra":
        """``k[t]/t^n``."""
        table = {(i, j): {i + j: 1} for i in range(n) for j in range(n) if i + j < n}
        labels = ["1"] + [f"t^{i}" if i > 1 else "t" for i in range(1, n)]
        G = FiniteDga(F, [0] * n, table, [{} for _ in range(n)], labels, unit=0, name=f"k[t]/t^{n}")
        return cls(G, list(range(1, n)))


class Deformations:
    """The dga ``E^+ (x) Gamma`` with the subspaces used by MC and gauge calculus."""

    def __init__(self, E: FiniteDga, gamma: ArtinianTestAlgebra):
        self.E = E
        self.gamma = gamma
        self.T = tensor(E.unitalize(), gamma.algebra)
        nG = gamma.algebra.dim
        eplus = E.unitalize()
        # E (x) m; the unit added by unitalize has index E.dim and is excluded
        self.ideal = [a * nG + i for a in range(E.dim) for i in gamma.m]
        self.one = {eplus.unit * nG + gamma.algebra.unit: 1}
        self.field = E.field

    def ideal_of_degree(self, n: int) -> List[int]:
        return [k for k in self.ideal if self.T.degrees[k] == n]

    def random_element(self, n: int, rng: random.Random, coeffs=(-2, -1, 0, 1, 2)) -> Vector:
        F = self.field
        out = {}
        for k in self.ideal_of_degree(n):
            c = F(rng.choice(coeffs))
            if c:
                out[k] = c
        return out

    def random_gauge(self, rng: random.Random) -> Vector:
        return vec_add(self.one, self.random_element(0, rng), self.field)

    def _check_in_ideal(self, x: Vector, n: int, what: str):
        allowed = set(self.ideal_of_degree(n))
        if any(k not in allowed for k in x):
            raise DeformationError(f"{what} must lie in (E (x) m)^{n}")

    def mc_defect(self, x: Vector) -> Vector:
        return vec_add(self.T.d(x), self.T.mul(x, x), self.field)

    def is_mc(self, x: Vector) -> bool:
        self._check_in_ideal(x, 1, "MC candidate")
        return not self.mc_defect(x)

    def inverse(self, g: Vector) -> Vector:
        """``(1 + a)^-1 = sum (-a)^k``; terminates since ``a`` is nilpotent."""
        a = vec_add(g, self.one, self.field, -1)
        self._check_in_ideal(a, 0, "gauge minus 1")
        out = dict(self.one)
        term = dict(self.one)
        neg = vec_scale(a, -1, self.field)
        for _ in range(self.gamma.nilpotency_index + 1):
            term = self.T.mul(term, neg)
            if not term:
                return out
            out = vec_add(out, term, self.field)
        raise DeformationError("gauge is not unipotent")

    def gauge_act(self, g: Vector, x: Vector, check: bool = True) -> Vector:
        """``g.x = g x g^-1 + g d(g^-1)``."""
        if check and not self.is_mc(x):
            raise DeformationError("gauge action applied to a non-MC element")
        gi = self.inverse(g)
        T = self.T
        y = vec_add(T.mul(T.mul(g, x), gi), T.mul(g, T.d(gi)), self.field)
        if check and not self.is_mc(y):
            raise AssertionError("gauge action left the MC set")
        return y

    def homotopy_act(self, h: Vector, g: Vector, x: Vector, y: Vector) -> Vector:
        """``g' = g + dh + yh + hx``; asserts that ``g'`` still carries ``x`` to ``y``."""
        self._check_in_ideal(h, -1, "homotopy")
        if self.gauge_act(g, x) != y:
            raise DeformationError("precondition g.x = y fails")
        T, F = self.T, self.field
        g2 = vec_add(g, T.d(h), F)
        g2 = vec_add(g2, T.mul(y, h), F)
        g2 = vec_add(g2, T.mul(h, x), F)
        if self.gauge_act(g2, x) != y:
            raise AssertionError("homotopic gauge does not connect the same MC pair")
        return g2

    def random_mc(self, rng: random.Random, tries: int = 50) -> Vector:
        """An MC element: a gauge transform of 0, or a random square-zero cocycle."""
        for _ in range(tries):
            x = self.random_element(1, rng)
            if self.is_mc(x):
                return x
        return self.gauge_act(self.random_gauge(rng), {})


@dataclass
class LawReport:
    checked: Dict[str, int] = field(default_factory=dict)
    failures: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def note(self, kind: str):
        self.checked[kind] = self.checked.get(kind, 0) + 1


def check_gauge_laws(D: Deformations, samples: int = 100, seed: int = 0) -> LawReport:
    """MC preservation, identity gauge, group-action law and the homotopy action on random samples."""
    rng = random.Random(seed)
    rep = LawReport()
    for s in range(samples):
        x = D.random_mc(rng)
        g1, g2 = D.random_gauge(rng), D.random_gauge(rng)
        try:
            y2 = D.gauge_act(g2, x)
            lhs = D.gauge_act(g1, y2)
            rhs = D.gauge_act(D.T.mul(g1, g2), x)
            rep.note("mc-preserved")
            if lhs != rhs:
                rep.failures.append(f"sample {s}: g1.(g2.x) != (g1 g2).x")
            rep.note("group-law")
            if D.gauge_act(D.one, x) != x:
                rep.failures.append(f"sample {s}: 1.x != x")
            rep.note("identity")
            h = D.random_element(-1, rng)
            D.homotopy_act(h, g2, x, y2)
            rep.note("homotopy")
        except (AssertionError, DeformationError) as exc:
            rep.failures.append(f"sample {s}: {exc}")
    return rep


# -- twisting morphisms ---------------------------------------------------------------


@dataclass
class TwistReport:
    mode: str                       # "enumerated" or "sampled"
    states: int
    twisting: int
    mc: int
    bijective: bool
    failures: List[str] = field(default_factory=list)


def _twist_defect(Z: FiniteDga, E: FiniteDga, tau: Dict[int, Vector]) -> Dict[int, Vector]:
    """``d tau + tau * tau`` evaluated on each dual basis element ``z_k^*``.

    ``tau[i]`` is ``tau(z_i^*)``.  The dual coalgebra has
    ``<Delta z_k^*, z_i (x) z_j> = (-1)^(|z_i||z_j|) c_ij^k`` and
    ``(df)(z) = (-1)^|f| f(dz)``; convolution is
    ``(f * g)(c) = sum (-1)^(|g||c'|) f(c') g(c'')``.
    """
    F = E.field
    out: Dict[int, Vector] = {}
    for k in range(Z.dim):
        val: Vector = {}
        t = tau.get(k, {})
        if t:
            vec_iadd(val, E.d(t), F)
        # tau(d z_k^*) with (d z_k^*)(z_j) = (-1)^(|z_k^*|) [coefficient of z_k in d z_j]
        s_dual = -1 if Z.degrees[k] % 2 else 1
        for j in range(Z.dim):
            c = Z.diff[j].get(k)
            if c and tau.get(j):
                # d tau = d_E tau - (-1)^|tau| tau d, |tau| = 1
                vec_iadd(val, tau[j], F, c * s_dual)
        for (i, j), p in Z.table.items():
            c = p.get(k)
            if not c or not tau.get(i) or not tau.get(j):
                continue
            s = -1 if (Z.degrees[i] * Z.degrees[j]) % 2 else 1
            s *= -1 if (1 * Z.degrees[i]) % 2 else 1      # (-1)^(|tau| |z_i^*|)
            vec_iadd(val, E.mul(tau[i], tau[j]), F, c * s)
        if val:
            out[k] = val
    return out


def twist_correspondence(Z: FiniteDga, E: FiniteDga, samples: int = 0, seed: int = 0,
                         max_states: int = 1 << 16) -> TwistReport:
    """Compare twisting morphisms ``Z^* -> E`` with MC elements of ``E (x) Z``.

    The coordinates ``tau_(a,i)`` (coefficient of ``e_a`` in ``tau(z_i^*)``,
    with ``|e_a| + |z_i| = 1``) are shared by both sides; the twisting equation
    and the MC equation are evaluated independently.  Over GF(p) with at most
    ``max_states`` points the whole space is enumerated; otherwise random
    points plus all single-coordinate points are checked.
    """
    F = E.field
    if Z.field != F:
        raise DeformationError("Z and E must share a field")
    EZ = tensor(E, Z)
    coords = [(a, i) for a in range(E.dim) for i in range(Z.dim) if E.degrees[a] + Z.degrees[i] == 1]
    pos = {(a, i): a * Z.dim + i for a, i in coords}

    def sides(values):
        tau: Dict[int, Vector] = {}
        x: Vector = {}
        for (a, i), v in zip(coords, values):
            if v:
                tau.setdefault(i, {})[a] = v
                x[pos[(a, i)]] = v
        tw = not _twist_defect(Z, E, tau)
        mc = not vec_add(EZ.d(x), EZ.mul(x, x), F)
        return tw, mc

    n_states = F.p ** len(coords) if F.p else None
    rep = TwistReport("enumerated", 0, 0, 0, True)
    if n_states is not None and n_states <= max_states:
        points: Iterator = itertools.product(range(F.p), repeat=len(coords))
    else:
        rng = random.Random(seed)
        vals = list(F.elements()) if F.p else [-2, -1, 0, 1, 2]
        rep.mode = "sampled"
        unit_points = [tuple(1 if j == i else 0 for j in range(len(coords))) for i in range(len(coords))]
        rand_points = [tuple(F(rng.choice(vals)) for _ in coords) for _ in range(samples or 200)]
        points = iter([tuple(0 for _ in coords)] + unit_points + rand_points)
    for values in points:
        rep.states += 1
        tw, mc = sides(values)
        rep.twisting += tw
        rep.mc += mc
        if tw != mc:
            rep.bijective = False
            if len(rep.failures) < 10:
                rep.failures.append(f"point {values}: twisting={tw} mc={mc}")
    return rep


# -- example dgas ------------------------------------------------------------------------


def square_zero_line(F: Field = QQ) -> FiniteDga:
    """``E^1 = span{a}``, ``a^2 = 0``, ``d = 0``."""
    return FiniteDga(F, [1], {}, [{}], ["a"], name="line")


def end_complex(dims: Sequence[int], diffs: Sequence[Sequence[Sequence[int]]], F: Field = QQ,
                name: str = "") -> FiniteDga:
    """``End(V)`` for a cochain complex ``V`` in degrees ``0..len(dims)-1``.

    ``diffs[n]`` is the matrix ``V^n -> V^(n+1)`` (rows index V^(n+1)).
    Basis: matrix units ``E_(p,q)`` sending basis vector q to p, of degree
    ``deg p - deg q``; ``d f = [delta, f]`` with the graded commutator.
    """
    deg = [n for n, k in enumerate(dims) for _ in range(k)]
    off = [sum(dims[:n]) for n in range(len(dims))]
    N = len(deg)
    delta: Dict[Tuple[int, int], int] = {}
    for n, m in enumerate(diffs):
        for r, row in enumerate(m):
            for c, x in enumerate(row):
                if x:
                    delta[(off[n + 1] + r, off[n] + c)] = x
    idx = lambda p, q: p * N + q
    degrees = [deg[p] - deg[q] for p in range(N) for q in range(N)]
    labels = [f"E{p}{q}" for p in range(N) for q in range(N)]
    table = {}
    for p in range(N):
        for q in range(N):
            for r in range(N):
                table[(idx(p, q), idx(q, r))] = {idx(p, r): 1}
    diff = []
    for p in range(N):
        for q in range(N):
            out: Vector = {}
            s = -1 if (deg[p] - deg[q]) % 2 else 1
            for (a, b), x in delta.items():
                if b == p:                      # delta . E_pq = x E_aq
                    vec_iadd(out, {idx(a, q): x}, F)
                if a == q:                      # E_pq . delta = x E_pb
                    vec_iadd(out, {idx(p, b): x}, F, -s)
            diff.append(out)
    return FiniteDga(F, degrees, table, diff, labels, name=name or "End")


def strictly_upper(E: FiniteDga, positive: bool = True) -> FiniteDga:
    """Subalgebra of an End complex spanned by ``E_pq`` with ``p < q`` (if closed under d)."""
    N = int(round(E.dim ** 0.5))
    keep = [p * N + q for p in range(N) for q in range(N) if p < q]
    pos = {k: i for i, k in enumerate(keep)}
    diff = []
    for k in keep:
        col = E.diff[k]
        if any(j not in pos for j in col):
            raise DeformationError("strictly upper part is not closed under d")
        diff.append({pos[j]: x for j, x in col.items()})
    table = {}
    for a in keep:
        for b in keep:
            p = E.table.get((a, b))
            if p:
                table[(pos[a], pos[b])] = {pos[j]: x for j, x in p.items()}
    return FiniteDga(E.field, [E.degrees[k] for k in keep], table, diff,
                     [E.labels[k] for k in keep], name=E.name + "_upper")


def standard_examples(F: Field = QQ) -> List[FiniteDga]:
    """Five small nonunital dgas used by the property runs."""
    from .dg import truncated_free_dga
    out = [square_zero_line(F)]
    # End of k -> k (identity differential), degrees 0, 1
    out.append(end_complex([1, 1], [[[1]]], F, name="End(k->k)"))
    # End of k -> k^2 -> k with d = (1,1) then (1,-1)
    out.append(end_complex([1, 2, 1], [[[1], [1]], [[1, -1]]], F, name="End(k->k2->k)"))
    # strictly upper triangular part of End(k^3 in degrees 0,1,1 with zero differential)
    out.append(strictly_upper(end_complex([1, 2], [[[0], [0]]], F), True))
    # augmentation ideal of a truncated free dga with dx = y^2
    free = truncated_free_dga(F, [("y", 0, 1), ("x", -1, 2), ("u", 1, 1)], {"x": [(1, "y y")]}, 3)
    out.append(FiniteDga.from_window(free, augmentation_ideal=True, name="free(y,x,u)/w>3"))
    return out
