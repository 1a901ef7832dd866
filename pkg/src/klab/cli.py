"""Command line front end: group-spec parsing, dispatch, sweeps and report emission.

Usage examples::

    klab bgmu GL2 1,0
    klab fullhnd GL2 3,0 --format=text
    klab dims GL2 1,0 --stratum=basic
    klab bgmu "A2 sc galois=flip,2" 1,0,-1 --format=dot
"""
from __future__ import annotations

import argparse
import hashlib
import json
import random
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from multiprocessing import Pool
from typing import Any, Callable, Sequence

from . import __version__
from .galois import GroupSpec, flip_action, trivial_action
from .rootcore import BasedRootDatum, RatVector, build_datum, cw, fmt, gl

SCHEMA = "klab-report/1"


# -- group specs -------------------------------------------------------------------

class SpecError(ValueError):
    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line, self.column, self.reason = line, column, message


_ALIASES = {
    "SL": lambda n: ("A", n - 1, "sc", None, 2),
    "PGL": lambda n: ("A", n - 1, "ad", None, 2),
    "Sp": lambda n: ("C", n // 2, "sc", None, 2) if n % 2 == 0 else None,
    "U": lambda n: ("GL", n, None, "flip,2", 2),
    "SU": lambda n: ("A", n - 1, "sc", "flip,2", 2),
}


def _tokens(text: str) -> list[tuple[int, str]]:
    return [(m.start() + 1, m.group()) for m in re.finditer(r"\S+", text)]


def parse_spec(text: str, line: int = 1) -> GroupSpec:
    """Parse a group spec such as ``GL3``, ``C2 sc`` or ``A2 sc galois=flip,2``."""
    toks = _tokens(text)
    if not toks:
        raise SpecError("empty group spec", line, 1)
    col, head = toks[0]
    rest = toks[1:]
    galois: tuple[int, str] | None = None
    mh = re.fullmatch(r"(GL|SL|PGL|Sp|SU|U|[ABCDG])(\d+)", head)
    if mh is None:
        raise SpecError(f"unknown group type {head!r}", line, col)
    kind, num = mh.group(1), int(mh.group(2))
    isogeny = None
    if kind in _ALIASES:
        if num < 1 or (kind != "U" and num < 2) or _ALIASES[kind](num) is None:
            raise SpecError(f"unknown group type {head!r}", line, col)
        kind, num, isogeny, gal, _ = _ALIASES[kind](num)
        if gal is not None:
            galois = (col, gal)
    if kind == "GL":
        if num < 1:
            raise SpecError(f"unknown group type {head!r}", line, col)
    elif isogeny is None:
        if rest and "=" not in rest[0][1]:
            icol, isogeny = rest[0]
            rest = rest[1:]
        else:
            icol, isogeny = col, "sc"
        try:
            build_datum(kind, num, isogeny)
        except ValueError as exc:
            where = icol if "isogeny" in str(exc) else col
            raise SpecError(str(exc), line, where) from None
    for tcol, tok in rest:
        key, sep, val = tok.partition("=")
        if not sep:
            raise SpecError(f"unexpected token {tok!r}", line, tcol)
        if key != "galois":
            raise SpecError(f"unknown option {key!r}", line, tcol)
        if galois is not None:
            raise SpecError("galois given twice", line, tcol)
        galois = (tcol + len(key) + 1, val)
    datum = gl(num) if kind == "GL" else build_datum(kind, num, isogeny)
    if galois is None:
        action = trivial_action(datum)
    else:
        action = _parse_galois(datum, galois[1], line, galois[0])
    try:
        g = GroupSpec(datum, action, "")
    except ValueError as exc:
        raise SpecError(f"data is not Galois-stable: {exc}", line, galois[0] if galois else col) from None
    return GroupSpec(datum, action, print_spec(g))


def _parse_galois(datum: BasedRootDatum, val: str, line: int, col: int):
    body, _, order_txt = val.partition(",")
    order = 2
    if order_txt:
        if not order_txt.isdigit() or int(order_txt) < 1:
            raise SpecError(f"malformed Galois order {order_txt!r}", line, col + len(body) + 1)
        order = int(order_txt)
    n = datum.rank
    if body == "flip":
        perm = None
    else:
        parts = body.split("/")
        if not all(p.isdigit() for p in parts) or sorted(int(p) for p in parts) != list(range(n)):
            raise SpecError(f"malformed permutation {body!r}", line, col)
        perm = tuple(int(p) for p in parts)
    if n == 0:
        raise SpecError("a torus has no diagram automorphism to twist by", line, col)
    try:
        return flip_action(datum, perm, order)
    except ValueError as exc:
        raise SpecError(f"data is not Galois-stable: {exc}", line, col) from None


def print_spec(g: GroupSpec) -> str:
    base = g.datum.label
    act = g.action
    if act.is_trivial():
        return base
    default = tuple(reversed(range(g.rank)))
    perm = "flip" if act.node_permutation == default else "/".join(map(str, act.node_permutation))
    return f"{base} galois={perm},{act.order}"


def spec_hash(g: GroupSpec | None) -> str | None:
    if g is None:
        return None
    return hashlib.sha256(print_spec(g).encode()).hexdigest()[:16]


def parse_vector(text: str, g: GroupSpec | None = None) -> RatVector:
    try:
        vals = [Fraction(x) for x in text.split(",")] if text.strip() else []
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"cannot parse coweight {text!r}; use comma-separated rationals") from None
    v = cw(*vals)
    if g is not None:
        if len(vals) != g.datum.ambient:
            raise ValueError(f"coweight {text!r} needs {g.datum.ambient} coordinates")
        if not g.datum.in_lattice(v):
            raise ValueError(f"{v} is not in the coweight lattice of {print_spec(g)}")
    return v


def parse_indices(text: str | None, rank: int) -> tuple[int, ...]:
    if text is None or text.strip() == "":
        return ()
    out = tuple(sorted({int(x) for x in text.split(",")}))
    if any(not 0 <= i < rank for i in out):
        raise ValueError(f"simple-root indices must lie in 0..{rank - 1}")
    return out


# -- JSON helpers ------------------------------------------------------------------

def class_json(b) -> dict[str, Any]:
    return {
        "newton": b.newton.to_json(),
        "kappa": list(b.kappa.coords),
        "levi": list(b.levi),
        "basic": b.is_basic,
    }


def poset_json(s) -> dict[str, Any]:
    return {
        "size": len(s),
        "elements": [class_json(b) for b in s],
        "edges": [list(e) for e in s.hasse_edges],
        "basic": s.basic_index,
        "maximal": s.maximal_index,
        "bound": s.bound.to_json(),
    }


def _graph(labels: list[str], edges: list[tuple[int, int]]) -> dict[str, Any]:
    return {"nodes": labels, "edges": [list(e) for e in edges]}


@dataclass
class Report:
    command: str
    inputs: dict[str, Any]
    results: Any
    group: GroupSpec | None = None
    graph: dict[str, Any] | None = None

    def to_json(self) -> dict[str, Any]:
        out = {
            "schema": SCHEMA,
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "provenance": {"version": __version__, "spec_hash": spec_hash(self.group)},
        }
        if self.graph is not None:
            out["graph"] = self.graph
        return out


# -- commands ------------------------------------------------------------------------

def _group_mu(args) -> tuple[GroupSpec, RatVector]:
    g = parse_spec(args.spec)
    mu = parse_vector(args.mu, g)
    if not g.datum.is_dominant(mu):
        raise ValueError(f"mu = {mu} is not dominant")
    return g, mu


def _inputs(args, g: GroupSpec, **extra) -> dict[str, Any]:
    out = {"spec": print_spec(g)}
    if getattr(args, "mu", None) is not None:
        out["mu"] = parse_vector(args.mu).to_json()
    out.update(extra)
    return out


def cmd_bgmu(args) -> Report:
    from .kottwitz import enumerate_variants, enumerate_B_G_mu
    g, mu = _group_mu(args)
    if args.variant == "B":
        s = enumerate_B_G_mu(g, mu)
    else:
        nu_b = parse_vector(args.nu_b, g) if args.nu_b else None
        s = enumerate_variants(g, mu, args.variant, nu_b)
    labels = [str(b.newton) + ("" if len(set(x.kappa for x in s)) == 1 else f" k={list(b.kappa.coords)}") for b in s]
    return Report("bgmu", _inputs(args, g, variant=args.variant), poset_json(s), g, _graph(labels, s.hasse_edges))


def cmd_ngmu(args) -> Report:
    from .kottwitz import N_G_mu
    g, mu = _group_mu(args)
    pts = N_G_mu(g, mu)
    d = g.datum
    n = len(pts)
    le = [[d.dominance_leq(pts[i], pts[j], "rational") for j in range(n)] for i in range(n)]
    edges = [(i, j) for i in range(n) for j in range(n)
             if i != j and le[i][j] and not any(k not in (i, j) and le[i][k] and le[k][j] for k in range(n))]
    return Report("ngmu", _inputs(args, g), {"newton_points": [p.to_json() for p in pts], "edges": [list(e) for e in edges]},
                  g, _graph([str(p) for p in pts], edges))


def cmd_fullhnd(args) -> Report:
    from .hodgenewton import fully_hnd_formulations
    g, mu = _group_mu(args)
    rep = fully_hnd_formulations(g, mu)

    def tag(x):
        return x.newton.to_json()

    res = {
        "fully_hnd": rep["verdicts"][0],
        "verdicts": rep["verdicts"],
        "agree": rep["agree"],
        "failures": sorted(tag(x) for x in rep["failures"][0]),
        "failures_by_formulation": [sorted(tag(x) for x in f) for f in rep["failures"]],
    }
    return Report("fullhnd", _inputs(args, g), res, g)


def cmd_witness(args) -> Report:
    from .hodgenewton import is_fully_hnd, witness_functional
    g, mu = _group_mu(args)
    w = witness_functional(g, mu).to_json()
    w["fully_hnd"] = is_fully_hnd(g, mu)[0]
    return Report("witness", _inputs(args, g), w, g)


def cmd_replay(args) -> Report:
    from .hodgenewton import replay_nonfull, witness_functional
    g, mu = _group_mu(args)
    if args.alpha is None:
        flagged = witness_functional(g, mu).flagged
        if not flagged:
            raise ValueError("the witness flags no relative root for this mu")
        alpha = flagged[0][0]
    else:
        alpha = int(args.alpha)
    return Report("replay", _inputs(args, g, alpha=alpha), replay_nonfull(g, mu, None, alpha), g)


def cmd_theta(args) -> Report:
    from .strata import hn_vector_of_type, theta_set
    g, mu = _group_mu(args)
    types = theta_set(g, mu)
    res = []
    for t in types:
        js = t.to_json()
        js["hn_vector"] = hn_vector_of_type(g, t).to_json()
        res.append(js)
    return Report("theta", _inputs(args, g), {"count": len(res), "types": res}, g)


def cmd_dims(args) -> Report:
    from .kottwitz import enumerate_B_G_mu
    from .strata import stratum_dimensions
    g, mu = _group_mu(args)
    s = enumerate_B_G_mu(g, mu)
    which = args.stratum
    if which == "cell":
        targets = ["cell"]
    elif which == "basic":
        targets = [s.elements[s.basic_index]]
    elif which == "ordinary":
        targets = [s.elements[s.maximal_index]]
    elif which == "all":
        targets = list(s) + ["cell"]
    else:
        nu = parse_vector(which, g)
        hit = s.find(nu)
        if hit is None:
            raise ValueError(f"no class with Newton point {nu} in B(G, mu)")
        targets = [hit]
    reports = [stratum_dimensions(g, mu, t).to_json() for t in targets]
    res: dict[str, Any] = {"strata": reports}
    if len(reports) == 1:
        res["dimension"] = reports[0]["dimension"]
    return Report("dims", _inputs(args, g, stratum=which), res, g)


def cmd_dual(args) -> Report:
    from .duality import B_J_generalized, B_J_mu_inverse, dual_local_datum
    from .kottwitz import enumerate_B_G_mu
    g, mu = _group_mu(args)
    s = enumerate_B_G_mu(g, mu)
    b = s.elements[s.basic_index]
    d = dual_local_datum(g, mu, b)

    def jj(c):
        return {"newton": c.newton.to_json(), "kappa": list(c.kappa.coords)}

    res = {
        "b": class_json(b),
        "mu_inverse": d.mu_inverse.to_json(),
        "B_J_mu_inverse": [jj(c) for c in B_J_mu_inverse(d)],
        "B_J_generalized": [jj(c) for c in B_J_generalized(d)],
        "b_inverse": jj(d.b_inverse),
    }
    return Report("dual", _inputs(args, g), res, g)


def cmd_verifydual(args) -> Report:
    from .duality import verify_bijections
    g, mu = _group_mu(args)
    rep = verify_bijections(g, mu)
    res = {k: (v.to_json() if hasattr(v, "to_json") else v) for k, v in rep.items()}
    return Report("verifydual", _inputs(args, g), res, g)


def cmd_smu(args) -> Report:
    from .semiinfinite import branching_s_mu
    g, mu = _group_mu(args)
    levi = parse_indices(args.levi, g.rank)
    sm = branching_s_mu(g, mu, levi)

    def srt(xs):
        return [x.to_json() for x in sorted(xs, key=lambda v: v.entries)]

    res = {
        "levi": list(levi),
        "lower": srt(sm.lower),
        "value": srt(sm.value),
        "upper": srt(sm.upper),
        "max_element": sm.max_element.to_json(),
        "conditional": sm.conditional,
    }
    return Report("smu", _inputs(args, g, levi=list(levi)), res, g)


def cmd_closure(args) -> Report:
    from .semiinfinite import branching_s_mu, leq_P
    g = parse_spec(args.spec)
    lam = parse_vector(args.lam, g)
    levi = parse_indices(args.levi, g.rank)
    mu = parse_vector(args.mu, g) if args.mu else g.datum.dominant(lam)
    pool = sorted(branching_s_mu(g, mu, levi).value, key=lambda v: v.entries)
    if lam not in pool:
        raise ValueError(f"{lam} is not in S_M(mu) for mu = {mu}")
    below = [x for x in pool if leq_P(g, x, lam, levi)]
    n = len(pool)
    le = [[leq_P(g, pool[i], pool[j], levi) for j in range(n)] for i in range(n)]
    edges = [(i, j) for i in range(n) for j in range(n)
             if i != j and le[i][j] and not any(k not in (i, j) and le[i][k] and le[k][j] for k in range(n))]
    res = {
        "lambda": lam.to_json(),
        "mu": mu.to_json(),
        "closure": [x.to_json() for x in below],
        "order_edges": [list(e) for e in edges],
        "pool": [x.to_json() for x in pool],
    }
    if args.other:
        other = parse_vector(args.other, g)
        res["leq"] = leq_P(g, other, lam, levi)
    return Report("closure", {"spec": print_spec(g), "lambda": lam.to_json(), "levi": list(levi)}, res, g,
                  _graph([str(x) for x in pool], edges))


def _load_filspace(args):
    from . import filspace as fs
    if args.matrix is not None:
        rows = [r.split(",") for r in args.matrix.split(";")]
        return [fs.lattice_point(args.p, rows, args.e, args.m, args.precision)]
    if args.file is None:
        raise ValueError("give an instance file or --matrix")
    text = sys.stdin.read() if args.file == "-" else open(args.file, encoding="utf-8").read()
    items = fs.load_instances(text)
    if args.precision is not None:
        items = [x.with_precision(args.precision) if isinstance(x, fs.LatticePoint) else x for x in items]
    return items


def _lattice_record(L) -> dict[str, Any]:
    from . import filspace as fs
    cmp = fs.compare_hn_routes(L)
    return {
        "instance": fs.dump_instances([L]).strip(),
        "cartan": list(fs.cartan_invariant(L).exponents),
        "det_valuation": fs.det_valuation(L),
        "hodge_type": [fmt(x) for x in fs.hodge_filtration(L).hodge_type()],
        "deg": fmt(cmp["deg"]),
        "hn_lattice": cmp["lattice"].to_json(),
        "hn_filtration": cmp["filtration"].to_json(),
        "routes_agree": cmp["equal"],
        "minuscule": cmp["minuscule"],
        "swap": fs.swap_identity(L),
        "membership": fs.hn_membership(L),
    }


def _filtered_record(X) -> dict[str, Any]:
    from . import filspace as fs
    return {
        "instance": fs.dump_instances([X]).strip(),
        "hodge_type": [fmt(x) for x in X.hodge_type()],
        "hn": fs.hn_filtration(X).to_json(),
        "submodular": not fs.submodularity_violations(X),
    }


def cmd_hnfil(args) -> Report:
    from . import filspace as fs
    items = _load_filspace(args)
    recs = [_lattice_record(x) if isinstance(x, fs.LatticePoint) else _filtered_record(x) for x in items]
    return Report("hnfil", {"count": len(items)}, {"records": recs})


def cmd_cartan(args) -> Report:
    from . import filspace as fs
    items = [x for x in _load_filspace(args) if isinstance(x, fs.LatticePoint)]
    recs = []
    for L in items:
        recs.append({
            "instance": fs.dump_instances([L]).strip(),
            "cartan": list(fs.cartan_invariant(L).exponents),
            "bb": fs.bb_type_check(L),
            "hodge_filtration": fs.hodge_filtration(L).to_json(),
        })
    return Report("cartan", {"count": len(items)}, {"records": recs})


def _group_record(item: tuple[str, str]) -> dict[str, Any]:
    from .duality import verify_bijections
    from .hodgenewton import is_fully_hnd, witness_functional
    from .kottwitz import enumerate_B_G_mu
    from .strata import theta_set
    spec, mu_txt = item
    g = parse_spec(spec)
    mu = parse_vector(mu_txt, g)
    s = enumerate_B_G_mu(g, mu)
    return {
        "spec": spec,
        "mu": mu.to_json(),
        "size": len(s),
        "basic": s.elements[s.basic_index].newton.to_json(),
        "ordinary": s.elements[s.maximal_index].newton.to_json(),
        "fully_hnd": is_fully_hnd(g, mu)[0],
        "witness_flagged": [list(o) for o in witness_functional(g, mu).flagged],
        "theta": len(theta_set(g, mu)),
        "duality_ok": verify_bijections(g, mu)["ok"],
    }


def _run_pool(fn: Callable, items: list, jobs: int) -> list:
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with Pool(jobs) as pool:
        return pool.map(fn, items)  # keeps input order


def cmd_sweep(args) -> Report:
    from . import filspace as fs
    from .corpus import SWEEP_SPECS, small_mus
    if args.kind == "groups":
        items = [(print_spec(g), ",".join(fmt(x) for x in mu.entries))
                 for g in (parse_spec(s) for s in SWEEP_SPECS) for mu in small_mus(g)]
        fn: Callable = _group_record
    else:
        if args.instances:
            with open(args.instances, encoding="utf-8") as fh:
                items = fs.load_instances(fh.read())
        elif args.kind == "lattice":
            items = []
            for n in range(1, args.n + 1):
                items += fs.lattice_sweep(n, args.p, precision=args.precision)
        else:
            items = []
            for n in range(1, args.n + 1):
                items += fs.filtered_sweep(n, args.p)
        fn = _sweep_fil_record
    if args.random is not None:
        rng = random.Random(args.seed)
        picks = sorted(rng.sample(range(len(items)), min(args.random, len(items))))
        items = [items[i] for i in picks]
    if args.write_instances and args.kind != "groups":
        with open(args.write_instances, "w", encoding="utf-8") as fh:
            fh.write(fs.dump_instances(items))
    recs = _run_pool(fn, items, args.jobs)
    inputs = {"kind": args.kind, "random": args.random, "seed": args.seed, "count": len(items)}
    return Report("sweep", inputs, {"records": recs})


def _sweep_fil_record(x) -> dict[str, Any]:
    from . import filspace as fs
    return _lattice_record(x) if isinstance(x, fs.LatticePoint) else _filtered_record(x)


COMMANDS: dict[str, Callable] = {
    "bgmu": cmd_bgmu, "ngmu": cmd_ngmu, "fullhnd": cmd_fullhnd, "witness": cmd_witness,
    "replay": cmd_replay, "theta": cmd_theta, "dims": cmd_dims, "dual": cmd_dual,
    "verifydual": cmd_verifydual, "smu": cmd_smu, "closure": cmd_closure, "hnfil": cmd_hnfil,
    "cartan": cmd_cartan, "sweep": cmd_sweep,
}


def dispatch(command: str, args) -> Report:
    if command not in COMMANDS:
        raise ValueError(f"unknown command {command!r}")
    return COMMANDS[command](args)


# -- emission ------------------------------------------------------------------------

def emit(report: Report, fmt_name: str = "json") -> bytes:
    if fmt_name == "json":
        return (json.dumps(report.to_json(), sort_keys=True, indent=2) + "\n").encode()
    if fmt_name == "dot":
        if report.graph is None:
            raise ValueError(f"command {report.command!r} has no poset to draw")
        return to_dot(report.graph["nodes"], report.graph["edges"], report.command).encode()
    if fmt_name == "text":
        lines = [f"# {report.command} ({SCHEMA}, klab {__version__})"]
        for k, v in sorted(report.inputs.items()):
            lines.append(f"input {k}: {_flat(v)}")
        _text_lines(report.results, "", lines)
        return ("\n".join(lines) + "\n").encode()
    raise ValueError(f"unknown format {fmt_name!r}")


def to_dot(nodes: Sequence[str], edges: Sequence[Sequence[int]], name: str = "poset") -> str:
    """Hasse diagram, smaller elements at the bottom."""
    out = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=box];"]
    for i, lab in enumerate(nodes):
        esc = lab.replace("\\", "\\\\").replace('"', '\\"')
        out.append(f'  n{i} [label="{esc}"];')
    for a, b in edges:
        out.append(f"  n{a} -> n{b};")
    out.append("}")
    return "\n".join(out) + "\n"


def _flat(v: Any) -> str:
    if isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v):
        return "(" + ",".join(_scalar(x) for x in v) + ")"
    return json.dumps(v, sort_keys=True)


def _scalar(x: Any) -> str:
    return x if isinstance(x, str) else json.dumps(x)


def _text_lines(obj: Any, prefix: str, out: list[str]) -> None:
    if isinstance(obj, dict):
        for k in sorted(obj):
            _text_lines(obj[k], f"{prefix}.{k}" if prefix else k, out)
    elif isinstance(obj, list) and obj and any(isinstance(x, (dict, list)) for x in obj):
        for i, x in enumerate(obj):
            _text_lines(x, f"{prefix}[{i}]", out)
    else:
        out.append(f"{prefix}: {_flat(obj)}")


# -- argument parsing --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="klab", description="Kottwitz sets, Hodge-Newton checks and filtered objects.")
    ap.add_argument("--version", action="version", version=f"klab {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", default="json", choices=("json", "dot", "text"))

    for name in ("bgmu", "ngmu", "fullhnd", "witness", "replay", "theta", "dims", "dual", "verifydual", "smu"):
        p = sub.add_parser(name)
        p.add_argument("spec", help='group spec, e.g. "GL3" or "A2 sc galois=flip,2"')
        p.add_argument("mu", help="dominant coweight as comma-separated rationals")
        common(p)
    sub.choices["bgmu"].add_argument("--variant", default="B", choices=("B", "A", "B0"))
    sub.choices["bgmu"].add_argument("--nu-b", dest="nu_b", default=None)
    sub.choices["replay"].add_argument("--alpha", default=None)
    sub.choices["dims"].add_argument("--stratum", default="all")
    sub.choices["smu"].add_argument("--levi", default="")

    p = sub.add_parser("closure")
    p.add_argument("spec")
    p.add_argument("lam")
    p.add_argument("--levi", default="")
    p.add_argument("--mu", default=None)
    p.add_argument("--other", default=None, help="also report other <=_P lam")
    common(p)

    for name in ("hnfil", "cartan"):
        p = sub.add_parser(name)
        p.add_argument("file", nargs="?", default=None, help="instance file, or - for stdin")
        p.add_argument("--matrix", default=None, help='rows separated by ";", entries by ",", e.g. "t^-1,0;0,1"')
        p.add_argument("--p", type=int, default=2)
        p.add_argument("--e", type=int, default=1)
        p.add_argument("--m", type=int, default=1)
        p.add_argument("--precision", type=int, default=None)
        common(p)

    p = sub.add_parser("sweep")
    p.add_argument("--kind", default="groups", choices=("groups", "lattice", "filtered"))
    p.add_argument("--instances", default=None)
    p.add_argument("--write-instances", dest="write_instances", default=None)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--precision", type=int, default=None)
    p.add_argument("--random", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    common(p)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        report = dispatch(args.command, args)
        data = emit(report, args.format)
    except (ValueError, ArithmeticError, LookupError, OSError) as exc:
        print(f"klab: error: {exc}", file=sys.stderr)
        return 1
    sys.stdout.buffer.write(data)
    sys.stdout.flush()
    return 0


if __name__ == "__main__":
    sys.exit(main())
