"""Command-line interface.

Every subcommand builds one report dictionary; ``--format json`` prints it as
canonical JSON, the default text format prints one ``key: value`` line per
entry. Exit status is 0 on success, 1 on failed validation or data errors,
2 on usage errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional

from . import documents, equivariant as eqv, guards, species as sp, unfold as uf, zplus
from .errors import SpeciesForgeError
from .groups import FiniteGroup
from .ring import FusionRing, dual_element, fpdim, multiply, validate_ring
from .species import Species


class Result:
    def __init__(self, payload: dict, status: int = 0, dot: Optional[str] = None):
        self.payload = payload
        self.status = status
        self.dot = dot


# --- serialisation helpers ---------------------------------------------------

def _violations(vs) -> list:
    return [v.to_dict() for v in vs]


def _module_dict(mod: zplus.ZPlusModule) -> dict:
    return {"labels": list(mod.labels), "action": mod.action.tolist()}


def _species_dict(s: Species) -> dict:
    ring = s.ring
    return {
        "vertices": [{"label": v.label, "class": list(v.cls), "class_name": ring.format(v.cls), "tag": v.tag}
                     for v in s.vertices],
        "arrows": [{"from": a.source, "to": a.target, "class": list(a.cls), "class_name": ring.format(a.cls)}
                   for a in s.arrows],
    }


def _quiver_dict(q: uf.OrdinaryQuiver) -> dict:
    return {"vertices": list(q.vertices), "arrows": [[s, t, m] for s, t, m in q.arrows]}


# --- handlers ----------------------------------------------------------------

def cmd_validate(args) -> Result:
    obj = documents.load(args.doc)
    if isinstance(obj, FusionRing):
        vs = validate_ring(obj)
        return Result({"kind": "fusion_ring", "valid": not vs, "violations": _violations(vs)}, int(bool(vs)))
    if isinstance(obj, FiniteGroup):
        return Result({"kind": "group", "valid": True, "violations": [], "order": obj.order})
    if isinstance(obj, zplus.ZPlusModule):
        vs = validate_module_with_ring(obj)
        return Result({"kind": "zplus_module", "valid": not vs, "violations": _violations(vs)}, int(bool(vs)))
    if isinstance(obj, Species):
        rep = sp.validate_species(obj)
        return Result({"kind": "species", "valid": rep.valid, "violations": _violations(rep.violations),
                       "is_quiver": rep.is_quiver, "dual_sensitive": rep.dual_sensitive}, int(not rep.valid))
    if isinstance(obj, eqv.EquivariantQuiver):
        vs = eqv.validate_equivariant(obj)
        return Result({"kind": "equivariant_quiver", "valid": not vs, "violations": _violations(vs)},
                      int(bool(vs)))
    return Result({"kind": "quiver", "valid": True, "violations": []})


def validate_module_with_ring(mod):
    return validate_ring(mod.ring) + zplus.validate_module(mod)


def cmd_fpdim(args) -> Result:
    ring = documents.load(args.ring, expect="fusion_ring")
    x = ring.parse(args.element)
    return Result({"element": ring.format(x), "coeffs": list(x), "fpdim": fpdim(ring, x)})


def cmd_multiply(args) -> Result:
    ring = documents.load(args.ring, expect="fusion_ring")
    a, b = ring.parse(args.a), ring.parse(args.b)
    p = multiply(ring, a, b)
    return Result({"left": ring.format(a), "right": ring.format(b), "product": ring.format(p), "coeffs": list(p)})


def cmd_dual(args) -> Result:
    ring = documents.load(args.ring, expect="fusion_ring")
    x = ring.parse(args.element)
    d = dual_element(ring, x)
    return Result({"element": ring.format(x), "dual": ring.format(d), "coeffs": list(d)})


def cmd_zplus(args) -> Result:
    if args.action == "enumerate":
        ring = documents.load(args.doc, expect="fusion_ring")
        mods = zplus.enumerate_irreducible(ring, args.max_rank, args.max_entry)
        return Result({"count": len(mods), "modules": [_module_dict(m) for m in mods],
                       "max_rank": args.max_rank, "max_entry": args.max_entry,
                       "note": zplus.ENUMERATION_NOTE})
    mod = documents.load(args.doc, expect="zplus_module")
    if args.action == "check":
        vs = validate_module_with_ring(mod)
        return Result({"valid": not vs, "violations": _violations(vs)}, int(bool(vs)))
    if args.action == "classes":
        return Result({"classes": [[mod.labels[i] for i in c] for c in zplus.equivalence_classes(mod)]})
    if args.action == "regular":
        w = zplus.is_regular_iso(mod)
        return Result({"regular": w is not None,
                       "witness": None if w is None else
                       {"base": mod.labels[w.base],
                        "image": {mod.ring.labels[i]: mod.labels[m] for i, m in enumerate(w.image)}}})
    parts = zplus.decompose_free(mod)
    return Result({"free": parts is not None,
                   "summands": None if parts is None else [
                       {"members": [mod.labels[i] for i in p.indices],
                        "image": {mod.ring.labels[i]: mod.labels[m] for i, m in enumerate(p.witness.image)}}
                       for p in parts]})


def cmd_species(args) -> Result:
    s = documents.load(args.doc, expect="species")
    if args.action == "validate":
        rep = sp.validate_species(s)
        return Result({"valid": rep.valid, "violations": _violations(rep.violations),
                       "is_quiver": rep.is_quiver, "dual_sensitive": rep.dual_sensitive}, int(not rep.valid))
    if args.action == "graph":
        g = sp.underlying_graph(s)
        return Result({"graph": g.to_dict()}, dot=g.to_dot())
    if args.action == "acyclic":
        ok, cycle = sp.is_acyclic(s)
        return Result({"acyclic": ok, "cycle": cycle})
    if args.action == "graded":
        comp = sp.graded_component(s, args.k, args.max_paths)
        return Result({"degree": comp.degree, "fpdim": comp.fpdim, "paths": [
            {"path": [s.vertices[v].label for v in e.path], "fpdim": e.fpdim,
             "class": None if e.cls is None else s.ring.format(e.cls)} for e in comp.entries]})
    if args.action == "total":
        t = sp.total_class(s, args.max_paths)
        return Result({"class": None if t.cls is None else s.ring.format(t.cls),
                       "fpdim": t.fpdim, "graded_fpdims": list(t.graded_fpdims),
                       "graded_classes": None if t.graded_classes is None
                       else [s.ring.format(c) for c in t.graded_classes]})
    rep = sp.hereditary_report(s)
    return Result({"acyclic": rep.acyclic, "verdict": rep.verdict, "cycle": rep.cycle})


def cmd_equivariant(args) -> Result:
    eq = documents.load(args.doc, expect="equivariant_quiver")
    vs = eqv.validate_equivariant(eq)
    if vs:
        return Result({"valid": False, "violations": _violations(vs)}, 1)
    G = eq.group
    if args.action == "orbits":
        return Result({"orbits": [{"representative": eq.vertices[o.representative],
                                   "members": [eq.vertices[v] for v in o.members]} for o in eqv.orbits(eq)]})
    if args.action == "end":
        cls, stab = eqv.internal_end(eq, args.v)
        return Result({"multiplicities": list(cls), "stabilizer": [G.elements[g] for g in stab]})
    if args.action == "ext":
        return Result({"multiplicities": list(eqv.internal_ext(eq, args.u, args.v))})
    if args.action == "species":
        return Result({"species": _species_dict(eqv.species_of(eq))})
    if args.action == "graph":
        g, cert = eqv.directed_graph_of(eq)
        return Result({"graph": g.to_dict(), "certificate": {"passed": cert.passed,
                                                             "pairs_checked": cert.pairs_checked}},
                      dot=g.to_dot())
    mod = eqv.grothendieck_module(eq)
    return Result({"module": _module_dict(mod)})


def cmd_unfold(args) -> Result:
    if args.action == "roundtrip":
        eq = documents.load(args.doc, expect="equivariant_quiver")
        rep = uf.round_trip(eq, args.max_iso_vertices)
        return Result({"round_trip": "isomorphic",
                       "witness": {eq.vertices[v]: rep.unfolded.vertices[w] for v, w in enumerate(rep.witness)},
                       "unfolded": _quiver_dict(rep.unfolded)}, dot=rep.unfolded.to_dot())
    s = documents.load(args.doc, expect="species")
    q = uf.unfold_quiver_species(s) if args.action == "quiver" else uf.pointed_unfold(s)
    return Result({"quiver": _quiver_dict(q), "arrow_count": q.arrow_count}, dot=q.to_dot())


def cmd_pointed_data(args) -> Result:
    g = documents.load(args.group, expect="group")
    data = eqv.pointed_module_data(g)
    return Result({"subgroups": [{"subgroup": [g.elements[h] for h in d.subgroup],
                                  "h2_order": d.schur_multiplier_order} for d in data],
                   "note": eqv.POINTED_NOTE})


def corpus_report() -> dict:
    """Run the standard analyses over every bundled document."""
    out = {}
    for name in documents.bundled_names():
        obj = documents.load(name)
        entry: dict = {}
        if isinstance(obj, FusionRing):
            entry["valid"] = not validate_ring(obj)
            entry["fpdims"] = [fpdim(obj, obj.basis(i)) for i in range(obj.rank)]
            if obj.rank <= 2:
                mods = zplus.enumerate_irreducible(obj, 2, 2)
                entry["irreducible_modules"] = [_module_dict(m) for m in mods]
        elif isinstance(obj, FiniteGroup):
            entry["pointed_data"] = [[list(d.subgroup), d.schur_multiplier_order]
                                     for d in eqv.pointed_module_data(obj)]
        elif isinstance(obj, zplus.ZPlusModule):
            entry["valid"] = not zplus.validate_module(obj)
            entry["classes"] = [list(c) for c in zplus.equivalence_classes(obj)]
            entry["regular"] = zplus.is_regular_iso(obj) is not None
        elif isinstance(obj, Species):
            entry["species"] = _species_dict(obj)
            ok, cycle = sp.is_acyclic(obj)
            entry["acyclic"] = ok
            entry["hereditary"] = sp.hereditary_report(obj).verdict
            if ok:
                t = sp.total_class(obj)
                entry["total_fpdim"] = t.fpdim
                entry["graded_fpdims"] = list(t.graded_fpdims)
            if obj.is_quiver:
                entry["unfolded"] = _quiver_dict(uf.unfold_quiver_species(obj))
            else:
                try:
                    entry["unfolded"] = _quiver_dict(uf.pointed_unfold(obj))
                except SpeciesForgeError as exc:
                    entry["unfolded"] = f"not unfolded: {exc}"
        elif isinstance(obj, eqv.EquivariantQuiver):
            g, cert = eqv.directed_graph_of(obj)
            entry["graph"] = g.to_dict()
            entry["certificate"] = cert.passed
            entry["species"] = _species_dict(eqv.species_of(obj))
            entry["round_trip"] = uf.round_trip(obj).witness
            entry["free"] = zplus.decompose_free(eqv.grothendieck_module(obj)) is not None
        out[name] = entry
    return out


def cmd_corpus(args) -> Result:
    return Result({"corpus": corpus_report()})


# --- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--dot", metavar="PATH", help="write graph output as Graphviz DOT")
    common.add_argument("--max-paths", type=int, default=guards.MAX_PATHS)
    common.add_argument("--max-iso-vertices", type=int, default=guards.MAX_ISO_VERTICES)

    p = argparse.ArgumentParser(prog="species-forge", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("validate", parents=[common], help="check any document")
    q.add_argument("doc")
    q.set_defaults(func=cmd_validate)

    q = sub.add_parser("fpdim", parents=[common], help="Frobenius-Perron dimension of a ring element")
    q.add_argument("ring")
    q.add_argument("element")
    q.set_defaults(func=cmd_fpdim)

    q = sub.add_parser("multiply", parents=[common])
    q.add_argument("ring")
    q.add_argument("a")
    q.add_argument("b")
    q.set_defaults(func=cmd_multiply)

    q = sub.add_parser("dual", parents=[common])
    q.add_argument("ring")
    q.add_argument("element")
    q.set_defaults(func=cmd_dual)

    q = sub.add_parser("zplus", parents=[common], help="Z+-module operations")
    q.add_argument("action", choices=("check", "classes", "regular", "decompose", "enumerate"))
    q.add_argument("doc", help="module document (ring document for enumerate)")
    q.add_argument("--max-rank", type=int, default=4)
    q.add_argument("--max-entry", type=int, default=3)
    q.set_defaults(func=cmd_zplus)

    sq = sub.add_parser("species", help="species operations").add_subparsers(dest="action", required=True)
    for name in ("validate", "graph", "acyclic", "total", "hereditary"):
        q = sq.add_parser(name, parents=[common])
        q.add_argument("doc")
        q.set_defaults(func=cmd_species, action=name)
    q = sq.add_parser("graded", parents=[common])
    q.add_argument("doc")
    q.add_argument("k", type=int)
    q.set_defaults(func=cmd_species, action="graded")

    eq = sub.add_parser("equivariant", help="group actions on quivers").add_subparsers(dest="action", required=True)
    for name in ("orbits", "species", "graph", "module"):
        q = eq.add_parser(name, parents=[common])
        q.add_argument("doc")
        q.set_defaults(func=cmd_equivariant, action=name)
    q = eq.add_parser("end", parents=[common])
    q.add_argument("doc")
    q.add_argument("v")
    q.set_defaults(func=cmd_equivariant, action="end")
    q = eq.add_parser("ext", parents=[common])
    q.add_argument("doc")
    q.add_argument("u")
    q.add_argument("v")
    q.set_defaults(func=cmd_equivariant, action="ext")

    uq = sub.add_parser("unfold", help="unfold species into ordinary quivers").add_subparsers(dest="action",
                                                                                              required=True)
    for name in ("quiver", "pointed", "roundtrip"):
        q = uq.add_parser(name, parents=[common])
        q.add_argument("doc")
        q.set_defaults(func=cmd_unfold, action=name)

    q = sub.add_parser("pointed-data", parents=[common], help="subgroups and Schur multipliers")
    q.add_argument("group")
    q.set_defaults(func=cmd_pointed_data)

    q = sub.add_parser("corpus", parents=[common], help="run every analysis on the bundled examples")
    q.set_defaults(func=cmd_corpus)
    return p


def render_text(payload: dict) -> str:
    lines = []
    for key in sorted(payload):
        value = payload[key]
        if isinstance(value, bool):
            text = "true" if value else "false"
        elif isinstance(value, str):
            text = value
        elif value is None:
            text = "none"
        else:
            text = documents.dumps(value).strip()
        lines.append(f"{key.replace('_', ' ')}: {text}")
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result = args.func(args)
    except SpeciesForgeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (KeyError, IndexError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.format == "json":
        sys.stdout.write(documents.dumps(result.payload))
    else:
        sys.stdout.write(render_text(result.payload))
    if args.dot:
        if result.dot is None:
            print("error: this subcommand has no graph output for --dot", file=sys.stderr)
            return 2
        Path(args.dot).write_text(result.dot, encoding="utf-8")
    return result.status


if __name__ == "__main__":
    sys.exit(main())
