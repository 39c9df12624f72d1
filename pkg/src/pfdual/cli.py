"""Command-line front end.

Verbs: check-axioms, dualize, sections, bidual, hom-check, functor-check,
naturality, and a transducer subcommand family.  Reports print as aligned
text or JSON; both are byte-stable across runs on identical input.

Exit codes: 0 when every check passes, 1 when some check fails, 2 on parse
or precondition errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Optional

from . import algebra as alg
from . import dualize as dz
from . import duality as du
from . import formats as fmt
from . import sections as sec
from . import topcat as tc
from . import transducer as td
from .errors import InconsistencyError, NotClosedError, NotFunctionalError


class Workspace:
    """Named bindings from labels (file paths) to loaded values."""

    def __init__(self, max_base: int = 6) -> None:
        self.max_base = max_base
        self._cache: dict[str, Any] = {}

    def algebra(self, label: str) -> alg.FinAlgebra:
        key = f"alg:{label}"
        if key not in self._cache:
            self._cache[key] = fmt.load_algebra(label, self.max_base)
        return self._cache[key]

    def category(self, label: str) -> tc.TopCategory:
        key = f"cat:{label}"
        if key not in self._cache:
            self._cache[key] = fmt.load_category(label)
        return self._cache[key]

    def transducer(self, label: str) -> td.Transducer:
        key = f"td:{label}"
        if key not in self._cache:
            self._cache[key] = fmt.load_transducer(label)
        return self._cache[key]


def _emit(report: dict, fmt_kind: str) -> None:
    if fmt_kind == "json":
        sys.stdout.write(json.dumps(report, indent=2) + "\n")
        return
    for line in _text_lines(report, ""):
        sys.stdout.write(line + "\n")


def _text_lines(value: Any, prefix: str):
    if isinstance(value, dict):
        for k, v in value.items():
            key = f"{prefix}{k}" if not prefix else f"{prefix}.{k}"
            if isinstance(v, (dict, list)):
                yield from _text_lines(v, key)
            else:
                yield f"{key}: {v}"
    elif isinstance(value, list):
        for i, v in enumerate(value):
            key = f"{prefix}[{i}]"
            if isinstance(v, (dict, list)):
                yield from _text_lines(v, key)
            else:
                yield f"{key}: {v}"
    else:
        yield f"{prefix}: {value}"


def _write_out(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _axiom_entries(report: alg.AxiomReport, names: tuple[str, ...]) -> list[dict]:
    entries = []
    for r in report.results:
        entry: dict[str, Any] = {
            "axiom": r.index,
            "name": r.name,
            "statement": alg.AXIOM_STATEMENTS[r.index],
            "passed": r.passed,
        }
        if r.witness is not None:
            entry["witness"] = [names[i] for i in r.witness]
        if r.detail:
            entry["detail"] = r.detail
        entries.append(entry)
    return entries


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_check_axioms(args) -> int:
    a = Workspace(args.max_base).algebra(args.file)
    report = alg.check_axioms(a)
    _emit({"algebra": args.file, "elements": a.size,
           "axioms": _axiom_entries(report, a.names), "passed": report.passed}, args.format)
    return 0 if report.passed else 1


def cmd_dualize(args) -> int:
    a = Workspace(args.max_base).algebra(args.file)
    dual = dz.pf_object(a)
    cat = dual.category
    if args.out:
        _write_out(fmt.write_category(cat), args.out)
    if args.dot:
        Path(args.dot).write_text(fmt.category_to_dot(cat))
    _emit({
        "algebra": args.file,
        "objects": cat.n_objects,
        "arrows": cat.n_arrows,
        "identities": len(set(cat.id_of)),
        "object_names": list(cat.obj_names),
        "arrow_names": list(cat.arr_names),
        "category_file": args.out or "",
        "dot_file": args.dot or "",
    }, args.format)
    return 0


def cmd_sections(args) -> int:
    cat = Workspace().category(args.file)
    report = tc.validate_object_of_C(cat)
    if not report.passed:
        raise ValueError("category fails membership checks: " + "; ".join(report.problems()))
    algebra, secs = sec.seccl_object(cat)
    if args.out:
        _write_out(fmt.write_algebra(algebra), args.out)
    _emit({
        "category": args.file,
        "sections": algebra.size,
        "axioms_pass": alg.check_axioms(algebra).passed,
        "algebra_file": args.out or "",
    }, args.format)
    return 0


def cmd_bidual(args) -> int:
    a = Workspace(args.max_base).algebra(args.file)
    iso = du.theta(a)
    _emit({
        "algebra": args.file,
        "theta": f"isomorphism ({a.size} <-> {iso.target.size})",
        "elements": a.size,
        "sections": iso.target.size,
    }, args.format)
    return 0


def cmd_hom_check(args) -> int:
    h = fmt.load_homomorphism(args.file, args.max_base)
    valid = alg.check_homomorphism(h)
    report: dict[str, Any] = {"hom": args.file, "valid": valid}
    ok = valid
    if valid:
        proper, witness = alg.check_locally_proper(h)
        report["locally_proper"] = proper
        if witness is not None:
            report["locally_proper_witness"] = list(witness.element_names())
        fun = dz.pf_morphism(h)
        stars = tc.star_checks(fun)
        report["dual"] = {
            "multifunctor_valid": tc.check_multifunctor(fun).passed,
            "continuous": tc.is_continuous_multifunctor(fun),
            "star_injective": stars.injective,
            "star_surjective": stars.surjective,
            "pseudo_star_surjective": stars.pseudo,
            "co_pseudo_star_surjective": stars.co_pseudo,
            "star_coherent": stars.coherent,
            "plain_functor": tc.is_plain_functor(fun),
        }
        ok = report["dual"]["multifunctor_valid"] and report["dual"]["continuous"] and stars.coherent
    _emit(report, args.format)
    return 0 if ok else 1


def cmd_functor_check(args) -> int:
    fun = fmt.load_functor(args.file)
    structure = tc.check_multifunctor(fun)
    continuous = tc.is_continuous_multifunctor(fun)
    stars = tc.star_checks(fun)
    report = {
        "functor": args.file,
        "multifunctor_valid": structure.passed,
        "continuous": continuous,
        "star_injective": stars.injective,
        "star_surjective": stars.surjective,
        "pseudo_star_surjective": stars.pseudo,
        "co_pseudo_star_surjective": stars.co_pseudo,
        "star_coherent": stars.coherent,
        "plain_functor": tc.is_plain_functor(fun),
    }
    _emit(report, args.format)
    return 0 if structure.passed and continuous and stars.coherent else 1


def cmd_naturality(args) -> int:
    data = json.loads(Path(args.file).read_text())
    if "map" in data:
        h = fmt.load_homomorphism(args.file, args.max_base)
        commutes = du.check_naturality_theta(h)
        _emit({"hom": args.file, "square": "theta", "commutes": commutes}, args.format)
    elif "arr_rel" in data:
        fun = fmt.load_functor(args.file)
        commutes = du.check_naturality_phi(fun)
        _emit({"functor": args.file, "square": "phi", "commutes": commutes}, args.format)
    else:
        raise fmt.FormatError(args.file, "expected a homomorphism ('map') or functor ('arr_rel') file")
    return 0 if commutes else 1


def cmd_transducer(args) -> int:
    ws = Workspace()
    if args.sub == "eval":
        t = ws.transducer(args.file)
        out = td.eval(t, args.word)
        _emit({"transducer": args.file, "input": args.word,
               "defined": out is not None, "output": out if out is not None else ""}, args.format)
        return 0 if out is not None else 1
    if args.sub in ("compose", "pref"):
        t1, t2 = ws.transducer(args.left), ws.transducer(args.right)
        result = td.compose(t1, t2) if args.sub == "compose" else td.pref_union(t1, t2)
        _write_out(fmt.write_transducer(result), args.out)
        return 0
    if args.sub in ("dom", "range"):
        t = ws.transducer(args.file)
        d = td.domain_dfa(t) if args.sub == "dom" else td.range_dfa(t)
        limit = min(args.max_len, 4)
        sample = [w for w in td.words_upto(d.alphabet, limit) if d.accepts(w)]
        if args.out:
            _write_out(fmt.write_dfa(d), args.out)
        _emit({"transducer": args.file, "acceptor": args.sub, "states": len(d.states),
               "sample_max_len": limit, "accepted_sample": sample,
               "dfa_file": args.out or ""}, args.format)
        return 0
    if args.sub == "axioms":
        machines = [ws.transducer(f) for f in args.files]
        report = td.axioms_bounded(machines, args.max_len)
        entries = []
        for r in report.results:
            entry: dict[str, Any] = {"axiom": r.index, "name": r.name,
                                     "equational": r.equational, "passed": r.passed}
            if r.witness is not None:
                entry["witness"] = {"operands": [args.files[i] for i in r.witness[:-1]],
                                    "word": r.witness[-1]}
            entries.append(entry)
        _emit({"max_len": report.max_len, "axioms": entries, "passed": report.passed}, args.format)
        return 0 if report.passed else 1
    raise ValueError(f"unknown transducer subcommand {args.sub!r}")


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pfdual",
        description="Check, dualize and compare finite partial-function algebras, "
                    "their dual categories, and word transducers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, max_base=False):
        p.add_argument("--format", choices=("text", "json"), default="text")
        if max_base:
            p.add_argument("--max-base", type=int, default=6,
                           help="largest base size accepted in concrete algebra files")

    p = sub.add_parser("check-axioms", help="run the ten representability axioms on an algebra file")
    p.add_argument("file")
    common(p, max_base=True)
    p.set_defaults(fn=cmd_check_axioms)

    p = sub.add_parser("dualize", help="build the dual category of an algebra")
    p.add_argument("file")
    p.add_argument("--out", help="write the category file here")
    p.add_argument("--dot", help="write a DOT rendering here")
    common(p, max_base=True)
    p.set_defaults(fn=cmd_dualize)

    p = sub.add_parser("sections", help="build the section algebra of a category file")
    p.add_argument("file")
    p.add_argument("--out", help="write the algebra file here")
    common(p)
    p.set_defaults(fn=cmd_sections)

    p = sub.add_parser("bidual", help="verify the double-dual isomorphism of an algebra")
    p.add_argument("file")
    common(p, max_base=True)
    p.set_defaults(fn=cmd_bidual)

    p = sub.add_parser("hom-check", help="validate a homomorphism file and its dual functor")
    p.add_argument("file")
    common(p, max_base=True)
    p.set_defaults(fn=cmd_hom_check)

    p = sub.add_parser("functor-check", help="validate a multivalued-functor file")
    p.add_argument("file")
    common(p)
    p.set_defaults(fn=cmd_functor_check)

    p = sub.add_parser("naturality", help="check the naturality square of a hom or functor file")
    p.add_argument("file")
    common(p, max_base=True)
    p.set_defaults(fn=cmd_naturality)

    p = sub.add_parser("transducer", help="transducer operations")
    tsub = p.add_subparsers(dest="sub", required=True)

    q = tsub.add_parser("eval", help="run a transducer on a word")
    q.add_argument("file")
    q.add_argument("word")
    common(q)
    q.set_defaults(fn=cmd_transducer)

    for name, help_text in (("compose", "compose two transducers (left first)"),
                            ("pref", "override union of two transducers")):
        q = tsub.add_parser(name, help=help_text)
        q.add_argument("left")
        q.add_argument("right")
        q.add_argument("--out", help="write the resulting transducer here")
        common(q)
        q.set_defaults(fn=cmd_transducer)

    for name, help_text in (("dom", "domain acceptor"), ("range", "range acceptor")):
        q = tsub.add_parser(name, help=help_text)
        q.add_argument("file")
        q.add_argument("--out", help="write the acceptor here")
        q.add_argument("--max-len", type=int, default=8)
        common(q)
        q.set_defaults(fn=cmd_transducer)

    q = tsub.add_parser("axioms", help="bounded axiom sweep over a set of transducers")
    q.add_argument("files", nargs="+")
    q.add_argument("--max-len", type=int, default=8)
    common(q)
    q.set_defaults(fn=cmd_transducer)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (fmt.FormatError, NotClosedError, NotFunctionalError, InconsistencyError,
            ValueError, OSError) as e:
        sys.stderr.write(f"error: {e}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
