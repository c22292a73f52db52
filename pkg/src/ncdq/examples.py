"""Example quiver specs: parametric versions of the bundled ones and seeded random quotients."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import List, Optional

from .linalg import QQ, Field
from .quiver import Arrow, Path, Quiver, QuiverSpec, Relation, Truncation


def marked_relations_spec(N: int = 4, F: Field = QQ) -> QuiverSpec:
    """Three vertices, arrows x: 1->2, w: 2->1, y: 2->3, z: 3->1, relations w = yz and the 3-cycles."""
    Q = Quiver(["1", "2", "3"], [Arrow("x", "1", "2"), Arrow("w", "2", "1"),
                                 Arrow("y", "2", "3"), Arrow("z", "3", "1")])
    P = Q.path
    rels = [Relation([(F(1), P(["w"])), (F(-1), P("yz"))]),
            Relation([(F(1), P("xyz"))]), Relation([(F(1), P("yzx"))]), Relation([(F(1), P("zxy"))])]
    return QuiverSpec(Q, rels, ["1", "2"], F, Truncation(N, 5, 12, 5), name="marked_relations")


def atiyah_flop_spec(N: int = 12, F: Field = QQ) -> QuiverSpec:
    """The two-vertex quiver with arrows a, b: 1->2 and s, t: 2->1 and commutation relations."""
    Q = Quiver(["1", "2"], [Arrow("a", "1", "2"), Arrow("b", "1", "2"),
                            Arrow("s", "2", "1"), Arrow("t", "2", "1")])
    P = Q.path
    pairs = [("asb", "bsa"), ("sbt", "tbs"), ("atb", "bta"), ("sat", "tas")]
    rels = [Relation([(F(1), P(u)), (F(-1), P(v))]) for u, v in pairs]
    return QuiverSpec(Q, rels, ["1"], F, Truncation(N, 8, N, 5), name="atiyah_flop")


def dual_numbers_spec(N: int = 4, F: Field = QQ) -> QuiverSpec:
    Q = Quiver(["1"], [Arrow("x", "1", "1")])
    return QuiverSpec(Q, [Relation([(F(1), Q.path("xx"))])], [], F, Truncation(N, 4, 8, 6),
                      name="dual_numbers")


def square_zero_plane_spec(N: int = 4, F: Field = QQ) -> QuiverSpec:
    """k<x, y>/(x, y)^2."""
    Q = Quiver(["1"], [Arrow("x", "1", "1"), Arrow("y", "1", "1")])
    rels = [Relation([(F(1), Q.path(p))]) for p in ("xx", "xy", "yx", "yy")]
    return QuiverSpec(Q, rels, [], F, Truncation(N, 4, 8, 6), name="square_zero_plane")


def a1_hypersurface_spec(N: int = 6, F: Field = QQ) -> QuiverSpec:
    """a: 1->2, b: 2->1 with ba = 0; the corner at 1 is k[ab]."""
    Q = Quiver(["1", "2"], [Arrow("a", "1", "2"), Arrow("b", "2", "1")])
    return QuiverSpec(Q, [Relation([(F(1), Q.path("ba"))])], ["1"], F, Truncation(N, 6, 12, 8),
                      name="a1_hypersurface")


@dataclass
class RandomQuotientConfig:
    max_vertices: int = 3
    max_arrows: int = 4
    path_length: int = 4
    max_relations: int = 3
    binomial_rate: float = 0.4


def _paths_of_length(Q: Quiver, n: int) -> List[Path]:
    layers = Q.paths_by_length(n)
    return layers[n] if n < len(layers) else []


def random_spec(rng: random.Random, cfg: Optional[RandomQuotientConfig] = None, F: Field = QQ,
                name: str = "") -> QuiverSpec:
    """A random homogeneous quotient of a small quiver, cut to an exact finite-dimensional algebra.

    Every path of length ``path_length + 1`` is added as a monomial relation,
    so the result is exact with paths of length at most ``path_length``.  At
    least one vertex is marked and at least one is left unmarked.
    """
    cfg = cfg or RandomQuotientConfig()
    nv = rng.randint(2, cfg.max_vertices)
    verts = [str(i + 1) for i in range(nv)]
    na = rng.randint(1, cfg.max_arrows)
    arrows = []
    for k in range(na):
        arrows.append(Arrow("abcdefgh"[k], rng.choice(verts), rng.choice(verts)))
    Q = Quiver(verts, arrows)
    rels: List[Relation] = []
    for _ in range(rng.randint(0, cfg.max_relations)):
        n = rng.randint(2, 3)
        paths = _paths_of_length(Q, n)
        if not paths:
            continue
        p = rng.choice(paths)
        twins = [q for q in paths if q != p and q.src == p.src and q.tgt == p.tgt]
        if twins and rng.random() < cfg.binomial_rate:
            c = F(rng.choice([1, -1, 2]))
            rels.append(Relation([(F(1), p), (-c, rng.choice(twins))]))
        else:
            rels.append(Relation([(F(1), p)]))
    rels.extend(Relation([(F(1), p)]) for p in _paths_of_length(Q, cfg.path_length + 1))
    k = rng.randint(1, nv - 1)
    marked = sorted(rng.sample(verts, k))
    return QuiverSpec(Q, rels, marked, F, Truncation(cfg.path_length, 6, 24, 6), name=name)
