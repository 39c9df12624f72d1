"""JSON file formats for algebras, categories, morphisms and machines.

All formats are JSON objects with a fixed key order; `write_*` functions
emit the canonical form (two-space indent, documented key order, trailing
newline), so writing a parsed file normalizes it byte-stably.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .algebra import FinAlgebra, Homomorphism
from .bitsets import bits, mask_of
from .pfun import Base, PFunc, as_abstract
from .topcat import FinTopology, MultiFunctor, TopCategory
from .transducer import Dfa, Transducer


class FormatError(ValueError):
    """A structural problem in an input file."""

    def __init__(self, path: str | Path, message: str, line: int | None = None, column: int | None = None) -> None:
        self.path = str(path)
        self.line = line
        self.column = column
        where = f"{path}" if line is None else f"{path}:{line}:{column}"
        super().__init__(f"{where}: {message}")


def _load_json(path: str | Path) -> Any:
    text = Path(path).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(path, e.msg, e.lineno, e.colno) from None


def _dump(obj: Any) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _need(data: dict, key: str, path) -> Any:
    if key not in data:
        raise FormatError(path, f"missing key {key!r}")
    return data[key]


# ---------------------------------------------------------------------------
# Algebras: abstract tables, or concrete partial functions
# ---------------------------------------------------------------------------


def algebra_to_dict(alg: FinAlgebra) -> dict:
    names = alg.names
    return {
        "elements": list(names),
        "compose": [[names[v] for v in row] for row in alg.compose_t],
        "antidomain": [names[v] for v in alg.anti_t],
        "range": [names[v] for v in alg.range_t],
        "pref": [[names[v] for v in row] for row in alg.pref_t],
    }


def write_algebra(alg: FinAlgebra) -> str:
    return _dump(algebra_to_dict(alg))


def parse_algebra(data: dict, path: str | Path = "<algebra>") -> FinAlgebra:
    if "functions" in data:
        return parse_concrete_algebra(data, path)[0]
    names = _need(data, "elements", path)
    if len(set(names)) != len(names):
        raise FormatError(path, "element names must be distinct")
    idx = {n: i for i, n in enumerate(names)}

    def one(name: Any, where: str) -> int:
        if name not in idx:
            raise FormatError(path, f"unknown element {name!r} in {where}")
        return idx[name]

    try:
        return FinAlgebra.from_tables(
            [[one(v, "compose") for v in row] for row in _need(data, "compose", path)],
            [one(v, "antidomain") for v in _need(data, "antidomain", path)],
            [one(v, "range") for v in _need(data, "range", path)],
            [[one(v, "pref") for v in row] for row in _need(data, "pref", path)],
            names,
        )
    except ValueError as e:
        raise FormatError(path, str(e)) from None


def parse_concrete_algebra(data: dict, path: str | Path = "<algebra>", max_base: int = 6):
    """A family of named partial functions over a listed base; the family
    must be closed under the four operations."""
    points = _need(data, "base", path)
    if len(points) > max_base:
        raise FormatError(path, f"base size {len(points)} exceeds the limit {max_base}")
    base = Base(tuple(points))
    functions = _need(data, "functions", path)
    named: dict[PFunc, str] = {}
    for name, graph in functions.items():
        try:
            f = PFunc.from_pairs(base, dict(graph))
        except ValueError as e:
            raise FormatError(path, f"function {name!r}: {e}") from None
        if f in named:
            raise FormatError(path, f"functions {named[f]!r} and {name!r} are identical")
        named[f] = name
    if not named:
        raise FormatError(path, "at least one function is required")
    return as_abstract(named.keys(), named)


def load_algebra(path: str | Path, max_base: int = 6) -> FinAlgebra:
    data = _load_json(path)
    if not isinstance(data, dict):
        raise FormatError(path, "expected a JSON object")
    if "functions" in data:
        return parse_concrete_algebra(data, path, max_base)[0]
    return parse_algebra(data, path)


# ---------------------------------------------------------------------------
# Categories
# ---------------------------------------------------------------------------


def _opens_to_lists(top: FinTopology, names: tuple[str, ...]) -> list[list[str]]:
    return [[names[i] for i in bits(m)] for m in top.opens]


def category_to_dict(cat: TopCategory) -> dict:
    return {
        "objects": list(cat.obj_names),
        "opens_obj": _opens_to_lists(cat.obj_top, cat.obj_names),
        "arrows": [
            {"name": cat.arr_names[f], "src": cat.obj_names[cat.src[f]], "tgt": cat.obj_names[cat.tgt[f]]}
            for f in range(cat.n_arrows)
        ],
        "opens_arr": _opens_to_lists(cat.arr_top, cat.arr_names),
        "id": {cat.obj_names[x]: cat.arr_names[cat.id_of[x]] for x in range(cat.n_objects)},
        "comp": {
            f"{cat.arr_names[f]},{cat.arr_names[g]}": cat.arr_names[h]
            for f, g, h in sorted(cat.comp_pairs)
        },
    }


def write_category(cat: TopCategory) -> str:
    for name in cat.arr_names:
        if "," in name:
            raise ValueError(f"arrow name {name!r} may not contain a comma")
    return _dump(category_to_dict(cat))


def parse_category(data: dict, path: str | Path = "<category>") -> TopCategory:
    obj_names = tuple(_need(data, "objects", path))
    arrows = _need(data, "arrows", path)
    arr_names = tuple(a["name"] for a in arrows)
    if len(set(obj_names)) != len(obj_names) or len(set(arr_names)) != len(arr_names):
        raise FormatError(path, "object and arrow names must be distinct")
    oi = {n: i for i, n in enumerate(obj_names)}
    ai = {n: i for i, n in enumerate(arr_names)}

    def obj(n, where):
        if n not in oi:
            raise FormatError(path, f"unknown object {n!r} in {where}")
        return oi[n]

    def arr(n, where):
        if n not in ai:
            raise FormatError(path, f"unknown arrow {n!r} in {where}")
        return ai[n]

    def topology(key, index, size):
        fam = set()
        for group in _need(data, key, path):
            fam.add(mask_of(index(n, key) for n in group))
        fam |= {0, (1 << size) - 1}
        try:
            return FinTopology(size, tuple(sorted(fam)))
        except ValueError as e:
            raise FormatError(path, f"{key}: {e}") from None

    comp_pairs = []
    for pair, h in _need(data, "comp", path).items():
        parts = pair.split(",")
        if len(parts) != 2:
            raise FormatError(path, f"bad composition key {pair!r}")
        comp_pairs.append((arr(parts[0], "comp"), arr(parts[1], "comp"), arr(h, "comp")))
    id_map = _need(data, "id", path)
    try:
        return TopCategory(
            obj_names=obj_names,
            arr_names=arr_names,
            obj_top=topology("opens_obj", obj, len(obj_names)),
            arr_top=topology("opens_arr", arr, len(arr_names)),
            src=tuple(obj(a["src"], "arrows") for a in arrows),
            tgt=tuple(obj(a["tgt"], "arrows") for a in arrows),
            id_of=tuple(arr(id_map[o], "id") for o in obj_names),
            comp_pairs=tuple(sorted(comp_pairs)),
        )
    except (KeyError, ValueError) as e:
        raise FormatError(path, str(e)) from None


def load_category(path: str | Path) -> TopCategory:
    return parse_category(_load_json(path), path)


# ---------------------------------------------------------------------------
# Homomorphisms and functors (sources and targets are file paths)
# ---------------------------------------------------------------------------


def load_homomorphism(path: str | Path, max_base: int = 6) -> Homomorphism:
    data = _load_json(path)
    folder = Path(path).parent
    source = load_algebra(folder / _need(data, "source", path), max_base)
    target = load_algebra(folder / _need(data, "target", path), max_base)
    m = _need(data, "map", path)
    mapping = []
    for name in source.names:
        if name not in m:
            raise FormatError(path, f"map is missing source element {name!r}")
        mapping.append(target.index_of(m[name]))
    return Homomorphism(source, target, tuple(mapping))


def hom_to_dict(h: Homomorphism, source_label: str, target_label: str) -> dict:
    return {
        "source": source_label,
        "target": target_label,
        "map": {h.source.names[a]: h.target.names[h(a)] for a in range(h.source.size)},
    }


def load_functor(path: str | Path) -> MultiFunctor:
    data = _load_json(path)
    folder = Path(path).parent
    source = load_category(folder / _need(data, "source", path))
    target = load_category(folder / _need(data, "target", path))
    om = _need(data, "obj_map", path)
    obj_map = []
    for name in source.obj_names:
        if name not in om:
            raise FormatError(path, f"obj_map is missing object {name!r}")
        obj_map.append(target.obj_names.index(om[name]))
    rel = [0] * source.n_arrows
    for pair in _need(data, "arr_rel", path):
        if len(pair) != 2:
            raise FormatError(path, f"arr_rel entries must be pairs, got {pair!r}")
        f, g = pair
        if f not in source.arr_names or g not in target.arr_names:
            raise FormatError(path, f"unknown arrow in pair {pair!r}")
        rel[source.arr_names.index(f)] |= 1 << target.arr_names.index(g)
    return MultiFunctor(source, target, tuple(obj_map), tuple(rel))


def functor_to_dict(fun: MultiFunctor, source_label: str, target_label: str) -> dict:
    pairs = [
        [fun.source.arr_names[f], fun.target.arr_names[g]]
        for f in range(fun.source.n_arrows)
        for g in bits(fun.arr_rel[f])
    ]
    return {
        "source": source_label,
        "target": target_label,
        "obj_map": {fun.source.obj_names[x]: fun.target.obj_names[fun.obj_map[x]] for x in range(fun.source.n_objects)},
        "arr_rel": pairs,
    }


# ---------------------------------------------------------------------------
# Transducers and acceptors
# ---------------------------------------------------------------------------


def transducer_to_dict(t: Transducer) -> dict:
    return {
        "alphabet": list(t.alphabet),
        "states": list(t.states),
        "initial": t.initial,
        "final": dict(sorted(t.final_out.items())),
        "trans": [
            {"from": q, "in": a, "out": out, "to": q2}
            for (q, a) in sorted(t.trans)
            for out, q2 in sorted(t.trans[(q, a)])
        ],
    }


def write_transducer(t: Transducer) -> str:
    return _dump(transducer_to_dict(t))


def parse_transducer(data: dict, path: str | Path = "<transducer>") -> Transducer:
    trans: dict[tuple[str, str], set[tuple[str, str]]] = {}
    for e in _need(data, "trans", path):
        for key in ("from", "in", "out", "to"):
            if key not in e:
                raise FormatError(path, f"transition missing key {key!r}: {e!r}")
        trans.setdefault((e["from"], e["in"]), set()).add((e["out"], e["to"]))
    try:
        return Transducer(
            states=tuple(_need(data, "states", path)),
            alphabet=tuple(_need(data, "alphabet", path)),
            initial=_need(data, "initial", path),
            trans={k: frozenset(v) for k, v in trans.items()},
            final_out=dict(_need(data, "final", path)),
        )
    except ValueError as e:
        raise FormatError(path, str(e)) from None


def load_transducer(path: str | Path) -> Transducer:
    return parse_transducer(_load_json(path), path)


def dfa_to_dict(d: Dfa) -> dict:
    return {
        "alphabet": list(d.alphabet),
        "states": list(d.states),
        "initial": d.initial,
        "accepting": sorted(d.accepting),
        "trans": [
            {"from": q, "in": a, "to": d.delta[(q, a)]}
            for q in d.states
            for a in d.alphabet
        ],
    }


def write_dfa(d: Dfa) -> str:
    return _dump(dfa_to_dict(d))


# ---------------------------------------------------------------------------
# DOT rendering
# ---------------------------------------------------------------------------


def category_to_dot(cat: TopCategory) -> str:
    """Objects as nodes, arrows as labelled edges; identity arrows are drawn
    as doubled loops."""
    lines = ["digraph dual {", "  rankdir=LR;"]
    for name in cat.obj_names:
        lines.append(f'  "{name}" [shape=circle];')
    identity = set(cat.id_of)
    for f in range(cat.n_arrows):
        src = cat.obj_names[cat.src[f]]
        tgt = cat.obj_names[cat.tgt[f]]
        style = ' color="black:invis:black"' if f in identity else ""
        lines.append(f'  "{src}" -> "{tgt}" [label="{cat.arr_names[f]}"{style}];')
    lines.append("}")
    return "\n".join(lines) + "\n"
