"""Command-line front end: ``ncdq <command> --input FILE``.

Exit codes: 0 all trusted checks pass, 1 invariant failure, 2 input error,
3 window insufficient.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path as FsPath
from typing import Dict, List, Optional

import jsonschema

from .linalg import QQ, Field
from .quiver import (Arrow, Quiver, QuiverSpec, Relation, SpecError, Truncation, build_algebra,
                     check_peirce, corner_algebra, quotient_by_idempotent_ideal)

SCHEMA_VERSION = "1.0"
EXAMPLES = ("marked_relations", "atiyah_flop", "dual_numbers", "a1_hypersurface")

EXIT_OK, EXIT_INVARIANT, EXIT_INPUT, EXIT_WINDOW = 0, 1, 2, 3


class InputError(ValueError):
    pass


class InsufficientWindow(RuntimeError):
    pass


SPEC_SCHEMA = {
    "type": "object",
    "required": ["vertices", "arrows", "relations", "idempotent_vertices"],
    "properties": {
        "name": {"type": "string"},
        "vertices": {"type": "array", "items": {"type": "string"}},
        "arrows": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "src", "tgt"],
                "properties": {"name": {"type": "string"}, "src": {"type": "string"}, "tgt": {"type": "string"}},
                "additionalProperties": False,
            },
        },
        "relations": {
            "type": "array",
            "items": {
                "type": "array",
                "minItems": 1,
                "items": {
                    "type": "object",
                    "required": ["coeff", "path"],
                    "properties": {
                        "coeff": {"type": ["string", "integer"]},
                        "path": {"type": "array", "items": {"type": "string"}},
                    },
                    "additionalProperties": False,
                },
            },
        },
        "idempotent_vertices": {"type": "array", "items": {"type": "string"}},
        "field": {
            "oneOf": [
                {"const": "Q"},
                {"type": "object", "required": ["p"], "properties": {"p": {"type": "integer", "minimum": 2}},
                 "additionalProperties": False},
            ]
        },
        "truncation": {
            "type": "object",
            "properties": {k: {"type": "integer", "minimum": 0}
                           for k in ("path_length", "dg_depth", "internal_degree", "resolution_length")},
            "additionalProperties": False,
        },
    },
    "additionalProperties": False,
}


def _field_from(data, override: Optional[str]) -> Field:
    if override:
        if override == "Q":
            return QQ
        if override.startswith("F") and override[1:].isdigit():
            return Field.prime(int(override[1:]), warn=False)
        if override == "Fp":
            p = data.get("field", {}).get("p") if isinstance(data.get("field"), dict) else None
            return Field.prime(p or 32003, warn=False)
        raise InputError(f"--field must be Q, Fp or F<prime>, got {override!r}")
    f = data.get("field", "Q")
    if f == "Q":
        return QQ
    try:
        return Field.prime(int(f["p"]), warn=False)
    except ValueError as exc:
        raise InputError(f"field: {exc}") from None


def parse_spec(source, field_override: Optional[str] = None, name: str = "") -> QuiverSpec:
    """Validate a quiver spec (path, JSON text or dict) and build the QuiverSpec."""
    if isinstance(source, dict):
        data = source
    else:
        text = source
        if isinstance(source, FsPath) or (isinstance(source, str) and not source.lstrip().startswith("{")):
            p = FsPath(source)
            if not p.exists():
                raise InputError(f"input file {p} does not exist")
            text = p.read_text()
            name = name or p.stem
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    try:
        jsonschema.validate(data, SPEC_SCHEMA)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise InputError(f"field {where}: {exc.message}") from None
    F = _field_from(data, field_override)
    try:
        Q = Quiver(list(data["vertices"]), [Arrow(a["name"], a["src"], a["tgt"]) for a in data["arrows"]])
        rels = []
        for r, terms in enumerate(data["relations"]):
            try:
                rels.append(Relation([(F(str(t["coeff"])), Q.path(t["path"])) for t in terms]))
            except SpecError as exc:
                raise SpecError(f"relation {r}: {exc}") from None
        trunc = Truncation(**data.get("truncation", {}))
        return QuiverSpec(Q, rels, list(data["idempotent_vertices"]), F, trunc,
                          name=data.get("name", name))
    except (SpecError, ValueError, ZeroDivisionError) as exc:
        raise InputError(str(exc)) from None


def example_path(name: str):
    if name not in EXAMPLES:
        raise InputError(f"unknown example {name!r}; choose from {', '.join(EXAMPLES)}")
    return resources.files("ncdq").joinpath("data", f"{name}.json")


def load_example(name: str, field_override: Optional[str] = None) -> QuiverSpec:
    return parse_spec(example_path(name).read_text(), field_override, name=name)


@dataclass
class JobConfig:
    command: str
    input: Optional[str] = None
    example: Optional[str] = None
    depth: Optional[int] = None            # J
    weight: Optional[int] = None           # D
    path_length: Optional[int] = None      # N
    resolution_length: Optional[int] = None  # L
    period: Optional[int] = None           # p
    max_period: int = 4                    # P
    field: Optional[str] = None
    format: str = "table"
    seed: int = 0
    corrupt: Optional[str] = None
    samples: int = 100

    def __post_init__(self):
        for k in ("depth", "weight", "path_length", "resolution_length", "period"):
            v = getattr(self, k)
            if v is not None and v <= 0:
                raise InputError(f"--{k.replace('_', '-')} must be positive")
        if self.max_period <= 0:
            raise InputError("--max-period must be positive")

    def spec(self) -> QuiverSpec:
        if self.input:
            spec = parse_spec(self.input, self.field)
        elif self.example:
            spec = load_example(self.example, self.field)
        else:
            raise InputError("give --input FILE or --example NAME")
        t = spec.truncation
        spec.truncation = Truncation(self.path_length or t.path_length, self.depth or t.dg_depth,
                                     self.weight or t.internal_degree,
                                     self.resolution_length or t.resolution_length)
        return spec


@dataclass
class Report:
    command: str
    config: Dict
    results: Dict = field(default_factory=dict)
    checks: List[Dict] = field(default_factory=list)
    wall_time: float = 0.0

    def check(self, name: str, ok: bool, detail: str = "", trusted: bool = True):
        self.checks.append({"name": name, "ok": bool(ok), "trusted": trusted, "detail": detail})

    @property
    def failed(self) -> bool:
        return any(not c["ok"] and c["trusted"] for c in self.checks)

    def structured(self) -> Dict:
        return {"schema_version": SCHEMA_VERSION, "command": self.command, "config": self.config,
                "results": self.results, "checks": self.checks,
                "status": "fail" if self.failed else "ok"}


# -- shared builders ------------------------------------------------------------------------


def _model_params(spec: QuiverSpec, A):
    t = spec.truncation
    J = t.dg_depth
    D = t.internal_degree if A.graded else None
    if A.graded and not A.exact and A.max_weight is not None:
        D = min(D, A.max_weight)
    return J, D


def _cells_table(H):
    """Nonzero cells; untrusted ones are listed with their flag."""
    return [{"degree": c[0], "weight": c[1], "dim": h.dim, "trusted": h.trusted}
            for c, h in sorted(H.cells.items(), key=lambda x: (-x[0][0], x[0][1])) if h.dim]


def _degree_table(H):
    """Degree totals; ``complete`` is False when weights above the cap are not known to vanish."""
    win = H.complex.window
    complete = win.max_weight is None or win.exact_weights
    dims = {}
    for c, h in H.cells.items():
        d = dims.setdefault(c[0], {"dim": 0, "trusted": True, "complete": complete})
        d["dim"] += h.dim
        d["trusted"] = d["trusted"] and h.trusted
    return {str(n): v for n, v in sorted(dims.items(), reverse=True)}


def _algebra_summary(spec, A):
    V = spec.marked_vertices
    R = corner_algebra(A, V)
    Q = quotient_by_idempotent_ideal(A, V)
    return {"dim_A": A.dim, "dim_R": R.dim, "dim_A/AeA": Q.dim, "exact": A.exact,
            "graded": A.graded, "weight_window": A.max_weight}


# -- commands ---------------------------------------------------------------------------------


def cmd_derived_quotient(spec, cfg, rep: Report):
    from .derived_quotient import build_model, dq_cohomology_ring, h0_isomorphism, is_stratifying
    A = build_algebra(spec)
    J, D = _model_params(spec, A)
    model = build_model(A, spec.marked_vertices, J, D)
    H = dq_cohomology_ring(model, reps=False)
    rep.results["algebra"] = _algebra_summary(spec, A)
    rep.results["window"] = {"J": J, "D": D}
    rep.results["cohomology_cells"] = _cells_table(H)
    rep.results["cohomology_degrees"] = _degree_table(H)
    strat = is_stratifying(H)
    rep.results["stratifying"] = {"verdict": strat["stratifying"], "witnesses": [list(c) for c in strat["witnesses"]],
                                  "up_to_depth": strat["up_to_depth"]}
    h0 = h0_isomorphism(model)
    rep.results["h0"] = h0
    rep.check("H^0 = A/AeA", h0["same_ideal"] and h0["dim_h0"] == h0["dim_quotient"])


def cmd_h1(spec, cfg, rep: Report):
    from .derived_quotient import build_model, dq_cohomology_ring, h1_bound, marked_relations
    A = build_algebra(spec)
    J, D = _model_params(spec, A)
    model = build_model(A, spec.marked_vertices, max(J, 2), D)
    H = dq_cohomology_ring(model, reps=False)
    mr = marked_relations(spec, model, H)
    summary = _algebra_summary(spec, A)
    bound = h1_bound(spec, summary["dim_A/AeA"])
    h1 = sum(mr.h1_dims.values())
    rep.results["algebra"] = summary
    rep.results["dim_H^-1"] = h1
    rep.results["H^-1_cells"] = [{"degree": c[0], "weight": c[1], "dim": d, "trusted": True}
                                 for c, d in sorted(mr.h1_dims.items())]
    rep.results["marked_relations"] = [
        {"marking": str(m), "relation": m.relation,
         "class": ({str(k): str(v) for k, v in mr.classes[i][1].items()} if i in mr.classes else None),
         "in_basis": i in mr.basis}
        for i, m in enumerate(mr.markings)]
    rep.results["basis"] = [str(mr.markings[i]) for i in mr.basis]
    rep.results["ell"] = bound["ell"]
    rep.results["ell_i"] = bound["ell_i"]
    rep.results["bound"] = bound["bound"]
    rep.check("marked relations span H^-1 over A/AeA", mr.spans)
    rep.check("dim H^-1 <= d^2 ell", h1 <= bound["bound"])


def cmd_ext(spec, cfg, rep: Report):
    from .resolutions import (ext_algebra, ext_total_dims, hom_complex_ext,
                              simple_top)
    A = build_algebra(spec)
    t = spec.truncation
    _, D = _model_params(spec, A)
    S = simple_top(A, spec.marked_vertices)
    E = ext_algebra(S, t.resolution_length, D)
    res = E.res
    rep.results["simple_vertex"] = S.vertex[0]
    rep.results["resolution_shape"] = res.shapes()
    rep.results["terminated"] = res.terminated
    ext_cells = E.cell_dims()
    rep.results["ext_cells"] = [{"degree": j, "weight": w, "dim": d, "trusted": True}
                                for (j, w), d in sorted(ext_cells.items())]
    tot = {j: 0 for j in range(E.top + 1)}
    for (j, _), d in ext_cells.items():
        tot[j] += d
    rep.results["ext_dims"] = [tot[j] for j in sorted(tot)]
    hom = ext_total_dims(hom_complex_ext(res, S))
    route = {j: tot.get(j, 0) for j in hom}
    rep.check("minimal resolution", res.is_minimal())
    exact = res.check_exact()
    rep.check("resolution exact in window", not exact, "; ".join(exact[:3]))
    rep.check("Ext dims: resolution route = Hom-complex route",
              all(hom.get(j, 0) == route[j] for j in route), f"hom={hom}")
    prods = []
    for i, ci in E.classes.items():
        for j, cj in E.classes.items():
            if i == 0 or j == 0:
                continue
            for a in range(len(ci)):
                for b in range(len(cj)):
                    p = E.product(i, a, j, b)
                    prods.append({"left": [i, a], "right": [j, b],
                                  "product": None if p is None else {str(k): str(v) for k, v in p.items()},
                                  "trusted": p is not None})
    rep.results["products"] = prods


def _graded_dga(spec):
    from .dg import algebra_as_dga
    A = build_algebra(spec)
    if not A.graded:
        from .koszul import KoszulError
        raise KoszulError("inhomogeneous relations: no weight grading available for the bar construction")
    return A, algebra_as_dga(A)


def cmd_koszul(spec, cfg, rep: Report):
    from .koszul import bar, double_dual_compare, koszul_dual
    A, a = _graded_dga(spec)
    W = cfg.weight or min(spec.truncation.internal_degree, 8)
    B = bar(a, W)
    K = koszul_dual(a, W)
    rep.results["bar_cells"] = [{"degree": c[0], "weight": c[1], "dim": B.dim(c), "trusted": True}
                                for c in sorted(B.cells(), key=lambda c: (c[1], -c[0]))]
    rep.results["dual_cells"] = [{"degree": c[0], "weight": c[1], "dim": K.dim(c), "trusted": True}
                                 for c in sorted(K.cells(), key=lambda c: (c[1], c[0]))]
    r = double_dual_compare(a, W, structure=A.dim <= 4)
    rep.results["H(A)"] = {f"{c[0]},{c[1]}": d for c, d in sorted(r.h_a.items())}
    rep.results["H(A!!)"] = {f"{c[0]},{c[1]}": d for c, d in sorted(r.h_double.items())}
    rep.results["H(Omega B A)"] = {f"{c[0]},{c[1]}": d for c, d in sorted(r.h_cobar_bar.items())}
    rep.results["weight_cap"] = W
    rep.check("bar d^2 = 0 and coalgebra laws", not B.check_coalgebra())
    rep.check("H(A!!) = H(A) by cell", r.dims_match)
    rep.check("H(Omega B A) = H(A) by cell", r.cobar_bar_match)
    if r.structure_a:
        rep.check("multiplication ranks of H(A!!) match H(A)", r.structure_match)


def cmd_thma(spec, cfg, rep: Report):
    from .resolutions import theorem_a_consistency
    A = build_algebra(spec)
    J, D = _model_params(spec, A)
    r = theorem_a_consistency(A, spec.marked_vertices, spec.truncation.resolution_length, J, D)
    rep.results["verdict"] = r.verdict
    rep.results["weight_cap"] = r.weight_cap
    rep.results["compared"] = [
        {"cell": list(k) if isinstance(k, tuple) else k, "koszul_route": a, "dq_route": b, "trusted": True}
        for k, (a, b) in sorted(r.compared.items(), key=lambda x: x[0]) if a or b]
    rep.results["notes"] = r.notes
    if r.verdict == "insufficient window":
        raise InsufficientWindow("; ".join(r.notes))
    rep.check("Theorem A consistency", r.ok, r.verdict)


def cmd_eta(spec, cfg, rep: Report):
    from .derived_quotient import build_model, dq_cohomology_ring
    from .periodicity import (centrality_check, find_eta, localize_at_eta, stable_ext_crosscheck,
                              uniqueness_report)
    A = build_algebra(spec)
    J, D = _model_params(spec, A)
    model = build_model(A, spec.marked_vertices, J, D)
    H = dq_cohomology_ring(model, reps=False)
    periods = [cfg.period] if cfg.period else list(range(1, cfg.max_period + 1))
    found = None
    skipped = []
    for p in periods:
        if 2 * p > J:
            skipped.append(p)
            continue
        cands = find_eta(H, p)
        rep.results.setdefault("candidates", {})[str(p)] = [
            {"cell": list(c.cell), "coords": {str(k): str(v) for k, v in c.coords.items()}} for c in cands]
        if cands and found is None:
            found = cands[0]
    if found is None and skipped:
        raise InsufficientWindow(f"depth J={J} cannot test periods {skipped} (needs J >= 2p)")
    if found is None:
        rep.results["eta"] = None
        rep.results["notes"] = ["no periodicity element in the scanned periods"]
        return
    rep.results["eta"] = {"cell": list(found.cell), "period": found.p}
    cen = centrality_check(found, H)
    rep.check("eta central", cen["central"], f"graded={cen['graded']}, checked={cen['checked']}")
    loc = localize_at_eta(H, found)
    rep.results["localized_degrees"] = {str(j): d for j, d in loc.degree_dims(-J, J).items()}
    fl = loc.flatness()
    rep.check("localized dims agree with H on trusted nonpositive cells", fl["ok"])
    rep.check("localization is ring compatible", loc.check_periodic()["ok"])
    u = uniqueness_report(H, found.p, [c for c in [found]])
    rep.results["uniqueness"] = {"verdict": u["verdict"]}
    cc = stable_ext_crosscheck(A, spec.marked_vertices, H, found, J - 1, D)
    rep.results["crosscheck"] = {"ext": {str(k): v for k, v in cc["ext"].items()},
                                 "tor": {str(k): v for k, v in cc["tor"].items()}, "notes": cc["notes"]}
    rep.check("stable Ext cross-check", cc["ok"])


def cmd_mc(spec, cfg, rep: Report):
    from .dg import truncated_free_dga
    from .deformation import (ArtinianTestAlgebra, Deformations, FiniteDga, check_gauge_laws,
                              standard_examples, twist_correspondence)
    runs = []
    for E in standard_examples():
        for n in (2, 3):
            D = Deformations(E, ArtinianTestAlgebra.truncated_polynomial(n))
            r = check_gauge_laws(D, cfg.samples, cfg.seed)
            runs.append({"dga": E.name, "gamma": f"k[t]/t^{n}", "checked": r.checked, "ok": r.ok})
            rep.check(f"gauge laws on {E.name} over k[t]/t^{n}", r.ok, "; ".join(r.failures[:3]))
    rep.results["gauge_runs"] = runs
    F = Field.prime(3, warn=False)
    Z = FiniteDga.from_window(truncated_free_dga(F, [("a", 0, 1), ("b", 1, 1)], {"a": [(1, "b")]}, 2))
    E = standard_examples(F)[1]
    t = twist_correspondence(Z, E)
    rep.results["twist"] = {"Z": "free(a,b; da=b)/w>2", "E": E.name, "field": "F3", "mode": t.mode,
                            "states": t.states, "twisting": t.twisting, "mc": t.mc}
    rep.check("twisting morphisms <-> MC elements", t.bijective and t.mode == "enumerated")


# -- check suite with fault injection ------------------------------------------------------------

CORRUPTIONS = ("differential", "product", "resolution", "algebra")


def _corrupt_model(model, kind):
    """Flip one entry of d or of the product; returns a description of the location."""
    if kind == "differential":
        for c in sorted(model.cells(), key=lambda c: (-c[0], c[1])):
            cols = model.d_columns(c)
            for i, col in enumerate(cols):
                if col:
                    k = next(iter(col))
                    col[k] = model.field.reduce(col[k] + 1) or 2
                    return f"d on basis element {i} of cell {c}"
    if kind == "product":
        cells = sorted(model.cells(), key=lambda c: (-c[0], c[1]))
        for c1 in cells:
            for c2 in cells:
                for i in range(model.dim(c1)):
                    for j in range(model.dim(c2)):
                        p = model.mul_basis(c1, i, c2, j)
                        if p and c1 != (0, 0) and c2 != (0, 0):
                            model._mcache[(c1, i, c2, j)] = {}
                            return f"product of basis elements {i} in {c1} and {j} in {c2}"
    return None


def _check_one(spec, cfg, rep: Report, corrupt: Optional[str]):
    from .derived_quotient import build_model, dq_cohomology_ring
    from .dg import _cell_trusted, check_dga
    from .resolutions import minimal_resolution, simple_top
    name = spec.name or "input"
    A = build_algebra(spec)
    if corrupt == "algebra":
        # double one structure constant a_i * a_j that feeds a nonzero triple product
        hit = None
        for (i, j), val in sorted(A.table.items()):
            if not val or A.weight[i] == 0 or A.weight[j] == 0:
                continue
            for k in range(A.dim):
                if A.weight[k] and A.mul_vec(val, {k: 1}):
                    hit = (i, j)
                    break
            if hit:
                break
        if hit:
            A.table[hit] = {k: A.field.reduce(2 * x) for k, x in A.table[hit].items()}
            what = f"algebra product {A.label(hit[0])}*{A.label(hit[1])} doubled"
        else:
            # no triple products to disturb: break an idempotent instead
            v = sorted(A.idempotent)[0]
            e = A.idempotent[v]
            A.table[(e, e)] = {}
            what = f"idempotent e_{v} squared to zero"
        rep.results.setdefault("injected", {})[name] = what
    bad = A.check_associativity()
    rep.check(f"{name}: associativity of A", not bad,
              "; ".join(f"({A.label(i)}, {A.label(j)}, {A.label(k)})" for i, j, k in bad[:3]))
    peirce = check_peirce(A, spec.marked_vertices)
    rep.check(f"{name}: Peirce decomposition", not peirce, "; ".join(peirce[:3]))
    J, D = _model_params(spec, A)
    J = min(J, 4)
    D = None if D is None else min(D, 8)
    model = build_model(A, spec.marked_vertices, J, D)
    if corrupt in ("differential", "product"):
        rep.results.setdefault("injected", {})[name] = _corrupt_model(model, corrupt)
    dr = check_dga(model, limit=cfg.samples * 20, seed=cfg.seed)
    rep.check(f"{name}: dga laws (d^2, unit, Leibniz, associativity)", dr.ok, "; ".join(dr.violations[:3]))
    # window trust: trusted cells agree with a deeper window
    H = dq_cohomology_ring(model, reps=False)
    trust_bad = [c for c, h in H.cells.items() if h.trusted and not _cell_trusted(model, c)]
    deeper = build_model(A, spec.marked_vertices, J + 1, D)
    H2 = dq_cohomology_ring(deeper, reps=False)
    for c, h in H.cells.items():
        if h.trusted and H2.dim(c) != h.dim:
            trust_bad.append(c)
    rep.check(f"{name}: window-trust consistency", not trust_bad, f"cells {sorted(set(trust_bad))[:3]}")
    # resolution minimality
    try:
        S = simple_top(A, spec.marked_vertices)
    except ValueError as exc:
        rep.check(f"{name}: minimal resolution", True, f"skipped: {exc}", trusted=False)
        return
    res = minimal_resolution(S, min(spec.truncation.resolution_length, 5), D)
    if corrupt == "resolution" and len(res.terms) > 1:
        # add a unit multiple of the first generator to a differential image
        P0 = res.terms[0]
        img = res.images[1][0]
        k = next(iter(img))
        img2 = dict(img)
        g0, _ = P0.basis[k]
        unit_pos = P0.index.get((g0, A.idempotent[P0.gens[g0][0]]))
        if unit_pos is not None:
            img2[unit_pos] = 1
        res.images[1][0] = img2
        rep.results.setdefault("injected", {})[name] = "unit entry in the first resolution differential"
    ex = res.check_exact()
    rep.check(f"{name}: resolution minimal and exact", res.is_minimal() and not ex,
              "; ".join(ex[:2]) or ("" if res.is_minimal() else "differential has a non-radical entry"))


def cmd_check(spec, cfg, rep: Report):
    if cfg.corrupt and cfg.corrupt not in CORRUPTIONS:
        raise InputError(f"--corrupt must be one of {', '.join(CORRUPTIONS)}")
    specs = [spec] if spec is not None else [load_example(n, cfg.field) for n in EXAMPLES]
    for s in specs:
        _check_one(s, cfg, rep, cfg.corrupt)


COMMANDS = {
    "derived-quotient": cmd_derived_quotient,
    "h1": cmd_h1,
    "ext": cmd_ext,
    "koszul": cmd_koszul,
    "thma": cmd_thma,
    "eta": cmd_eta,
    "mc": cmd_mc,
    "check": cmd_check,
}


def run(cfg: JobConfig) -> Report:
    spec = None
    if cfg.input or cfg.example:
        spec = cfg.spec()
    elif cfg.command not in ("mc", "check"):
        raise InputError("give --input FILE or --example NAME")
    rep = Report(cfg.command, {k: v for k, v in vars(cfg).items() if v is not None})
    t0 = time.perf_counter()
    COMMANDS[cfg.command](spec, cfg, rep)
    rep.wall_time = time.perf_counter() - t0
    return rep


# -- rendering --------------------------------------------------------------------------------


def _fmt(v) -> str:
    if isinstance(v, dict):
        return ", ".join(f"{k}: {_fmt(x)}" for k, x in v.items())
    if isinstance(v, list):
        return "[" + ", ".join(_fmt(x) for x in v) + "]"
    return str(v)


def render_table(rep: Report) -> str:
    lines = [f"ncdq {rep.command}"]
    for key, val in rep.results.items():
        if isinstance(val, list) and val and isinstance(val[0], dict):
            lines.append(f"{key}:")
            cols = list(val[0].keys())
            rows = [[_fmt(r.get(c)) for c in cols] for r in val]
            widths = [max(len(c), *(len(r[i]) for r in rows)) for i, c in enumerate(cols)]
            lines.append("  " + "  ".join(c.ljust(w) for c, w in zip(cols, widths)))
            for r in rows:
                lines.append("  " + "  ".join(x.ljust(w) for x, w in zip(r, widths)))
        else:
            lines.append(f"{key}: {_fmt(val)}")
    if rep.checks:
        lines.append("checks:")
        for c in rep.checks:
            tag = "PASS" if c["ok"] else "FAIL"
            trust = "" if c["trusted"] else " (untrusted)"
            detail = f"  [{c['detail']}]" if c["detail"] else ""
            lines.append(f"  {tag} {c['name']}{trust}{detail}")
    lines.append(f"status: {'fail' if rep.failed else 'ok'}  ({rep.wall_time:.2f}s)")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ncdq", description="Derived quotients of quiver algebras.")
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("--input", help="quiver spec (JSON)")
    ap.add_argument("--example", choices=EXAMPLES, help="bundled example spec")
    ap.add_argument("--depth", type=int, help="dg depth J")
    ap.add_argument("--weight", type=int, help="internal degree cap D")
    ap.add_argument("--path-length", type=int, help="path length cap N")
    ap.add_argument("--resolution-length", type=int, help="resolution length L")
    ap.add_argument("--period", type=int, help="period p for eta")
    ap.add_argument("--max-period", type=int, default=4, help="scan periods 1..P")
    ap.add_argument("--field", help="Q, Fp or F<prime>")
    ap.add_argument("--format", choices=("table", "structured"), default="table")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--samples", type=int, default=100, help="sample count for property runs")
    ap.add_argument("--corrupt", help=f"fault injection for check: {', '.join(CORRUPTIONS)}")
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    from .koszul import KoszulError
    from .periodicity import PeriodicityError
    from .resolutions import WindowError
    from .derived_quotient import ModelError
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        cfg = JobConfig(**{k.replace("-", "_"): v for k, v in vars(args).items()})
        rep = run(cfg)
    except (InputError, SpecError, KoszulError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (InsufficientWindow, WindowError, ModelError, PeriodicityError) as exc:
        print(f"window insufficient: {exc}", file=sys.stderr)
        return EXIT_WINDOW
    if cfg.format == "structured":
        print(json.dumps(rep.structured(), indent=2, sort_keys=True, default=str))
    else:
        print(render_table(rep))
    return EXIT_INVARIANT if rep.failed else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
