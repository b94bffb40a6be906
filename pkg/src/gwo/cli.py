"""Command-line certifier.

Exit codes: 0 valid / property holds, 1 mathematically invalid (a witness is
reported), 2 malformed input, bad usage or exceeded bound, 3 internal
inconsistency (a bug).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .actions import ActionSet, is_derived_action, semidirect
from .cat1 import Cat1Group, Cat1Morphism, is_normal_subcat1, quotient_cat1, validate_cat1
from .core import DEFAULT_BOUND, GroupWithOps, Morphism, is_ideal, is_subobject, quotient_gwo, validate_gwo
from .corpus import PROFILES, corpus_summary, generate_corpus
from .equivalences import (
    cat1_to_xmod,
    gpd_to_cat1,
    gpd_to_xmod,
    is_covering,
    roundtrip_cat1,
    roundtrip_gpd,
    roundtrip_xmod_cat1,
    roundtrip_xmod_gpd,
    transport_morphism,
    xmod_to_cat1,
    xmod_to_gpd,
)
from .errors import BoundExceededError, InconsistencyError, PreconditionError, StructureError
from .fileformat import Subobject, canonical_text, read, to_doc, write
from .groupoid import (
    GpdMorphism,
    InternalGroupoid,
    SubGroupoid,
    higgins_normality,
    internal_quotient,
    is_internal_normal_subgroupoid,
    validate_internal_gpd,
)
from .verify import verify_corpus
from .xmod import CrossedModule, XModMorphism, is_normal_subxmod, is_subxmod, quotient_xmod, validate_xmod

EXIT_OK, EXIT_INVALID, EXIT_STRUCTURE, EXIT_BUG = 0, 1, 2, 3


class Outcome:
    def __init__(self, command):
        self.doc = {"command": command, "verdict": None, "witnesses": [], "summary": ""}
        self.code = EXIT_OK

    def verdict(self, ok: bool, summary: str, witnesses=()):
        self.doc["verdict"] = "valid" if ok else "invalid"
        self.doc["summary"] = summary
        self.doc["witnesses"].extend(witnesses)
        self.code = EXIT_OK if ok else EXIT_INVALID
        return self


def _violations(report) -> list:
    return [v.to_dict() for v in report.violations]


def _validate(obj):
    if isinstance(obj, GroupWithOps):
        return validate_gwo(obj)
    if isinstance(obj, CrossedModule):
        return validate_xmod(obj)
    if isinstance(obj, InternalGroupoid):
        return validate_internal_gpd(obj)
    if isinstance(obj, Cat1Group):
        return validate_cat1(obj)
    return None


def _require_valid(out, obj, label="input"):
    rep = _validate(obj)
    if rep is not None and not rep.ok:
        out.verdict(False, f"{label} is not a valid structure ({len(rep)} violations)", _violations(rep))
        return False
    return True


def _parse_subset(text: str):
    """A subobject file or an inline subset: ``0,2`` or ``0,2/0,1,2,3`` for pairs."""
    if os.path.exists(text):
        sub = read(text)
        if not isinstance(sub, Subobject):
            raise StructureError(f"{text}: expected a subobject file")
        return tuple(sub.parts.values()) if len(sub.parts) > 1 else sub.parts["elements"], sub.parts
    parts = []
    for chunk in text.split("/"):
        try:
            parts.append(tuple(int(x) for x in chunk.split(",") if x.strip()))
        except ValueError:
            raise StructureError(f"cannot read subset {text!r}") from None
    return (tuple(parts) if len(parts) > 1 else parts[0]), None


def _pair_parts(parent, spec, parts, names):
    if parts is not None:
        return tuple(parts[n] for n in names)
    if not isinstance(spec, tuple) or len(spec) != 2 or not all(isinstance(x, tuple) for x in spec):
        raise StructureError(f"expected two subsets {names[0]}/{names[1]}")
    return spec


def _flat_parts(spec, parts):
    if parts is not None:
        return parts["elements"]
    if spec and isinstance(spec[0], tuple):
        raise StructureError("expected a single subset")
    return spec


def _check_range(values, n, label):
    for x in values:
        if not 0 <= x < n:
            raise StructureError(f"{label}: element {x} out of range 0..{n - 1}", index=x)


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------


def cmd_validate(args, out):
    obj = read(args.file)
    if isinstance(obj, (XModMorphism, GpdMorphism, Cat1Morphism, Morphism)):
        v = obj.first_violation()
        return out.verdict(v is None, "morphism" + (" is valid" if v is None else f" fails {v.axiom}"),
                           [] if v is None else [v.to_dict()])
    if isinstance(obj, ActionSet):
        ok, rep = is_derived_action(obj.acted, obj.actor, obj)
        return out.verdict(ok, "derived action" if ok else "not a derived action", _violations(rep))
    if isinstance(obj, Subobject):
        return _normality(out, obj.parent, obj.parts)
    rep = _validate(obj)
    kind = type(obj).__name__
    return out.verdict(rep.ok, f"{kind} is " + ("valid" if rep.ok else f"invalid ({len(rep)} violations)"),
                       _violations(rep))


def _normality(out, obj, parts):
    if not _require_valid(out, obj):
        return out
    if isinstance(obj, GroupWithOps):
        X = parts["elements"]
        _check_range(X, obj.order, "subset")
        sub, ideal = is_subobject(obj, X), is_ideal(obj, X)
        out.doc["details"] = {"subobject": sub, "ideal": ideal}
        return out.verdict(ideal, "ideal" if ideal else ("subobject, not an ideal" if sub else "not a subobject"))
    if isinstance(obj, CrossedModule):
        S, T = parts["S"], parts["T"]
        _check_range(S, obj.A.order, "S")
        _check_range(T, obj.B.order, "T")
        if not is_subxmod(obj, S, T):
            return out.verdict(False, "not a subcrossed module")
        ok, rep = is_normal_subxmod(obj, S, T)
        out.doc["details"] = rep.to_dict()
        return out.verdict(ok, "normal subcrossed module" if ok else "subcrossed module, not normal")
    if isinstance(obj, InternalGroupoid):
        _check_range(parts["N1"], obj.arrows.order, "N1")
        _check_range(parts["N0"], obj.objects.order, "N0")
        N = SubGroupoid(obj, parts["N1"], parts["N0"])
        if not N.is_subgroupoid:
            return out.verdict(False, "not a subgroupoid")
        details = {"wide": N.is_wide, "internal_normal": is_internal_normal_subgroupoid(obj, N)}
        if N.is_wide:
            h = higgins_normality(obj, N)
            details["higgins_normal"] = h.coset
            details["lemma_criterion"] = h.lemma
        out.doc["details"] = details
        ok = details["internal_normal"]
        return out.verdict(ok, "internal normal subgroupoid" if ok else "subgroupoid, not internal normal")
    if isinstance(obj, Cat1Group):
        _check_range(parts["elements"], obj.G.order, "subset")
        ok = is_normal_subcat1(obj, parts["elements"])
        return out.verdict(ok, "normal subcat¹-group" if ok else "not a normal subcat¹-group")
    raise StructureError(f"normality is not defined for {type(obj).__name__}")


def _parts_for(obj, spec, parts):
    if isinstance(obj, (GroupWithOps, Cat1Group)):
        return {"elements": _flat_parts(spec, parts)}
    if isinstance(obj, CrossedModule):
        S, T = _pair_parts(obj, spec, parts, ("S", "T"))
        return {"S": S, "T": T}
    if isinstance(obj, InternalGroupoid):
        N1, N0 = _pair_parts(obj, spec, parts, ("N1", "N0"))
        return {"N1": N1, "N0": N0}
    raise StructureError(f"subsets are not defined for {type(obj).__name__}")


def cmd_check_normal(args, out):
    obj = read(args.file)
    spec, parts = _parse_subset(args.sub)
    return _normality(out, obj, _parts_for(obj, spec, parts))


def cmd_quotient(args, out):
    obj = read(args.file)
    spec, parts = _parse_subset(args.sub)
    parts = _parts_for(obj, spec, parts)
    _normality(out, obj, parts)
    if out.code != EXIT_OK:
        out.doc["summary"] = "cannot form quotient: " + out.doc["summary"]
        return out
    if isinstance(obj, GroupWithOps):
        Q, _ = quotient_gwo(obj, parts["elements"])
    elif isinstance(obj, CrossedModule):
        Q, _ = quotient_xmod(obj, parts["S"], parts["T"])
    elif isinstance(obj, InternalGroupoid):
        Q, _ = internal_quotient(obj, SubGroupoid(obj, parts["N1"], parts["N0"]))
    else:
        Q, _ = quotient_cat1(obj, parts["elements"])
    _emit_result(args, out, Q)
    return out.verdict(True, f"quotient computed ({type(Q).__name__})")


def _emit_result(args, out, obj):
    out.doc["result"] = to_doc(obj)
    if getattr(args, "output", None):
        write(args.output, obj)


def cmd_semidirect(args, out):
    A, B, acts = read(args.A), read(args.B), read(args.action)
    if not (isinstance(A, GroupWithOps) and isinstance(B, GroupWithOps) and isinstance(acts, ActionSet)):
        raise StructureError("semidirect expects two gwo files and an action file")
    if A.order * B.order > args.bound:
        raise BoundExceededError(f"|A||B| = {A.order * B.order} exceeds --bound {args.bound}")
    if acts.acted.order != A.order or acts.actor.order != B.order:
        raise StructureError("action orders do not match A and B")
    acts = ActionSet(B, A, acts.dot, acts.star)
    for label, X in (("A", A), ("B", B)):
        if not _require_valid(out, X, label):
            return out
    ok, rep = is_derived_action(A, B, acts)
    if ok:
        _emit_result(args, out, semidirect(A, B, acts))
    return out.verdict(ok, "derived action; semidirect product is valid" if ok
                       else "not a derived action: semidirect product fails the axioms", _violations(rep))


_CONVERSIONS = {
    "to-gpd": {CrossedModule: xmod_to_gpd, Cat1Group: lambda C: xmod_to_gpd(cat1_to_xmod(C))},
    "to-cat1": {CrossedModule: xmod_to_cat1, InternalGroupoid: gpd_to_cat1},
    "to-xmod": {InternalGroupoid: gpd_to_xmod, Cat1Group: cat1_to_xmod},
}


def cmd_convert(args, out):
    obj = read(args.file)
    table = _CONVERSIONS[args.command]
    fn = table.get(type(obj))
    if fn is None:
        raise StructureError(f"{args.command} does not accept {type(obj).__name__}")
    if not _require_valid(out, obj):
        return out
    result = fn(obj)
    rep = _validate(result)
    if not rep.ok:
        raise InconsistencyError(f"converted structure is invalid: {rep.axioms()}")
    _emit_result(args, out, result)
    return out.verdict(True, f"{type(obj).__name__} -> {type(result).__name__}")


def cmd_check_covering(args, out):
    m = read(args.morphism)
    if not isinstance(m, (XModMorphism, GpdMorphism, Cat1Morphism)):
        raise StructureError("check-covering expects an xmod, gpd or cat1 morphism")
    for label, obj in (("domain", m.dom), ("codomain", m.cod)):
        if not _require_valid(out, obj, label):
            return out
    v = m.first_violation()
    if v is not None:
        return out.verdict(False, f"not a morphism: {v.axiom}", [v.to_dict()])
    flag = is_covering(m)
    if isinstance(m, XModMorphism):
        out.doc["transported"] = {
            d: is_covering(transport_morphism(d, m)) for d in ("xmod->gpd", "xmod->cat1")
        }
    elif isinstance(m, GpdMorphism):
        out.doc["transported"] = {"gpd->xmod": is_covering(transport_morphism("gpd->xmod", m))}
    else:
        out.doc["transported"] = {"cat1->xmod": is_covering(transport_morphism("cat1->xmod", m))}
    return out.verdict(flag, "covering morphism" if flag else "not a covering morphism")


def cmd_roundtrip(args, out):
    obj = read(args.file)
    if not _require_valid(out, obj):
        return out
    if isinstance(obj, CrossedModule):
        ws = {"xmod->gpd->xmod": roundtrip_xmod_gpd(obj), "xmod->cat1->xmod": roundtrip_xmod_cat1(obj)}
    elif isinstance(obj, Cat1Group):
        ws = {"cat1->xmod->cat1": roundtrip_cat1(obj)}
    elif isinstance(obj, InternalGroupoid):
        ws = {"gpd->xmod->gpd": roundtrip_gpd(obj)}
    else:
        raise StructureError(f"roundtrip expects an xmod, gpd or cat1 file, got {type(obj).__name__}")
    out.doc["iso_witnesses"] = {k: w.to_dict() for k, w in ws.items()}
    return out.verdict(True, "verified: " + ", ".join(ws))


def cmd_corpus_verify(args, out):
    profile = args.profile_arg or args.profile or "default"
    if profile not in PROFILES:
        raise StructureError(f"unknown profile {profile!r}; expected one of {list(PROFILES)}")
    entries = generate_corpus(profile, bound=args.bound)
    results = verify_corpus(entries)
    out.doc["corpus"] = corpus_summary(entries)
    out.doc["checks"] = [r.to_dict() for r in results]
    ok = all(r.ok for r in results)
    total = sum(r.checked for r in results)
    lines = [f"{'ok ' if r.ok else 'FAIL'} {r.name}: {r.checked} checked" for r in results]
    out.doc["lines"] = lines
    return out.verdict(ok, f"{len(entries)} structures, {total} theorem instances checked, "
                           f"{sum(not r.ok for r in results)} families failing")


COMMANDS = {
    "validate": cmd_validate,
    "quotient": cmd_quotient,
    "semidirect": cmd_semidirect,
    "to-gpd": cmd_convert,
    "to-cat1": cmd_convert,
    "to-xmod": cmd_convert,
    "check-normal": cmd_check_normal,
    "check-covering": cmd_check_covering,
    "roundtrip": cmd_roundtrip,
    "corpus-verify": cmd_corpus_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--bound", type=int, default=DEFAULT_BOUND,
                        help="element-count ceiling for constructed products and corpora (default %(default)s)")
    common.add_argument("--report", metavar="PATH", help="write the machine-readable report (JSON) here")
    common.add_argument("--profile", help="corpus profile for corpus-verify")
    parser = argparse.ArgumentParser(prog="gwo", description="Certify finite groups with operations and "
                                     "their crossed modules, internal groupoids and cat¹-groups.",
                                     parents=[common])
    sub = parser.add_subparsers(dest="command", metavar="command")

    def add(name, help_, *positionals, output=False):
        p = sub.add_parser(name, help=help_, parents=[common])
        for pos in positionals:
            p.add_argument(pos)
        if output:
            p.add_argument("-o", "--output", help="write the resulting structure file here")
        return p

    add("validate", "check the axioms of a structure file", "file")
    add("quotient", "quotient by a normal subobject", "file", "sub", output=True)
    add("semidirect", "semidirect product from an action", "A", "B", "action", output=True)
    add("to-gpd", "crossed module or cat¹-group to internal groupoid", "file", output=True)
    add("to-cat1", "crossed module or groupoid to cat¹-group", "file", output=True)
    add("to-xmod", "groupoid or cat¹-group to crossed module", "file", output=True)
    add("check-normal", "decide normality of a subobject", "file", "sub")
    add("check-covering", "decide whether a morphism is a covering", "morphism")
    add("roundtrip", "verify the equivalence roundtrips on a structure", "file")
    p = add("corpus-verify", "run every theorem check over a generated corpus")
    p.add_argument("profile_arg", nargs="?", metavar="profile")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    if argv and not argv[0].startswith("-") and argv[0] not in COMMANDS:
        parser.print_usage(sys.stderr)
        print(f"gwo: unknown command {argv[0]!r}", file=sys.stderr)
        return EXIT_STRUCTURE
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_STRUCTURE
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_STRUCTURE
    out = Outcome(args.command)
    try:
        COMMANDS[args.command](args, out)
    except (StructureError, BoundExceededError, OSError) as exc:
        out.doc["verdict"] = "error"
        out.doc["summary"] = str(exc)
        loc = {k: getattr(exc, k, None) for k in ("line", "column", "index")}
        out.doc["error"] = {"type": type(exc).__name__, **{k: v for k, v in loc.items() if v is not None}}
        out.code = EXIT_STRUCTURE
    except InconsistencyError as exc:
        out.doc["verdict"] = "error"
        out.doc["summary"] = f"internal inconsistency: {exc}"
        out.code = EXIT_BUG
    except PreconditionError as exc:
        out.verdict(False, str(exc))
    out.doc["exit_code"] = out.code
    _report(args, out)
    return out.code


def _report(args, out):
    stream = sys.stdout if out.code in (EXIT_OK, EXIT_INVALID) else sys.stderr
    print(f"{args.command}: {out.doc['verdict']}: {out.doc['summary']}", file=stream)
    for line in out.doc.get("lines", []):
        print("  " + line, file=stream)
    for w in out.doc["witnesses"][:5]:
        print(f"  witness: {w}", file=stream)
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(canonical_text(json.loads(json.dumps(out.doc, default=str))))
