"""Concrete partial functions on a finite base set.

This module is the semantic ground truth for the whole package: every
abstract law checked elsewhere can be evaluated directly on graphs here.
Composition is written in diagrammatic order throughout: ``f.compose(g)``
applies ``f`` first, then ``g``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Hashable, Iterable, Mapping, Optional, Sequence

from .errors import NotClosedError

Point = Hashable

ENUMERATION_CAP = 4


@dataclass(frozen=True)
class Base:
    """A finite ordered set of point labels. May be empty."""

    points: tuple[Point, ...]

    def __post_init__(self) -> None:
        if len(set(self.points)) != len(self.points):
            raise ValueError(f"base points must be distinct: {self.points!r}")

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def index(self, point: Point) -> int:
        try:
            return self.points.index(point)
        except ValueError:
            raise ValueError(f"point {point!r} not in base {self.points!r}") from None


@dataclass(frozen=True)
class PFunc:
    """A partial function on a base, stored positionally.

    ``graph[i]`` is the index of the image of ``base.points[i]``, or None
    where the function is undefined.
    """

    base: Base
    graph: tuple[Optional[int], ...]

    def __post_init__(self) -> None:
        n = len(self.base)
        if len(self.graph) != n:
            raise ValueError("graph length must equal base size")
        for v in self.graph:
            if v is not None and not (0 <= v < n):
                raise ValueError(f"graph value {v!r} out of range for base of size {n}")

    # -- constructors ------------------------------------------------------

    @classmethod
    def empty(cls, base: Base) -> "PFunc":
        return cls(base, (None,) * len(base))

    @classmethod
    def identity(cls, base: Base) -> "PFunc":
        return cls(base, tuple(range(len(base))))

    @classmethod
    def identity_on(cls, base: Base, points: Iterable[Point]) -> "PFunc":
        keep = {base.index(p) for p in points}
        return cls(base, tuple(i if i in keep else None for i in range(len(base))))

    @classmethod
    def from_pairs(cls, base: Base, pairs: Mapping[Point, Point] | Iterable[tuple[Point, Point]]) -> "PFunc":
        items = pairs.items() if isinstance(pairs, Mapping) else pairs
        graph: list[Optional[int]] = [None] * len(base)
        for x, y in items:
            i = base.index(x)
            if graph[i] is not None:
                raise ValueError(f"point {x!r} mapped twice")
            graph[i] = base.index(y)
        return cls(base, tuple(graph))

    # -- inspection --------------------------------------------------------

    @property
    def mapping(self) -> dict[Point, Point]:
        pts = self.base.points
        return {pts[i]: pts[v] for i, v in enumerate(self.graph) if v is not None}

    def apply(self, point: Point) -> Optional[Point]:
        v = self.graph[self.base.index(point)]
        return None if v is None else self.base.points[v]

    def __repr__(self) -> str:
        body = ",".join(f"{x!r}>{y!r}" for x, y in self.mapping.items())
        return f"PFunc{{{body}}}"

    # -- the four operations ------------------------------------------------

    def _same_base(self, other: "PFunc") -> None:
        if self.base != other.base:
            raise ValueError("operands live on different bases")

    def compose(self, other: "PFunc") -> "PFunc":
        """Apply self first, then other."""
        self._same_base(other)
        g = other.graph
        return PFunc(self.base, tuple(None if v is None else g[v] for v in self.graph))

    def antidomain(self) -> "PFunc":
        """Identity restricted to the points where self is undefined."""
        return PFunc(self.base, tuple(i if v is None else None for i, v in enumerate(self.graph)))

    def range(self) -> "PFunc":
        """Identity restricted to the image points of self."""
        image = {v for v in self.graph if v is not None}
        return PFunc(self.base, tuple(i if i in image else None for i in range(len(self.base))))

    def pref_union(self, other: "PFunc") -> "PFunc":
        """Override: self where defined, otherwise other."""
        self._same_base(other)
        return PFunc(self.base, tuple(v if v is not None else w for v, w in zip(self.graph, other.graph)))

    # -- derived notions ----------------------------------------------------

    def domain(self) -> "PFunc":
        return PFunc(self.base, tuple(i if v is not None else None for i, v in enumerate(self.graph)))

    def leq(self, other: "PFunc") -> bool:
        """Graph inclusion."""
        self._same_base(other)
        return all(v is None or v == w for v, w in zip(self.graph, other.graph))

    def __le__(self, other: "PFunc") -> bool:
        return self.leq(other)

    def compatible(self, other: "PFunc") -> bool:
        """True iff the two functions agree wherever both are defined."""
        self._same_base(other)
        return all(v is None or w is None or v == w for v, w in zip(self.graph, other.graph))


def join_compatible(f: PFunc, g: PFunc) -> Optional[PFunc]:
    """Union of graphs when f and g are compatible; None signals incompatibility."""
    if not f.compatible(g):
        return None
    return f.pref_union(g)


def graph_key(f: PFunc) -> tuple[int, ...]:
    """Canonical sort key: undefined sorts first at each position."""
    return tuple(0 if v is None else v + 1 for v in f.graph)


def enumerate_all(base: Base, cap: int = ENUMERATION_CAP) -> list[PFunc]:
    """All (n+1)^n partial functions on the base, in a fixed order."""
    n = len(base)
    if n > cap:
        raise ValueError(f"base size {n} exceeds enumeration cap {cap}")
    values: list[Optional[int]] = [None] + list(range(n))
    return [PFunc(base, g) for g in itertools.product(values, repeat=n)]


def close_under_ops(gens: Iterable[PFunc]) -> list[PFunc]:
    """Least superset of gens closed under compose, antidomain, range and
    pref_union, sorted canonically.  At least one generator is required.
    """
    gen_list = list(gens)
    if not gen_list:
        raise ValueError("at least one generator is required")
    base = gen_list[0].base
    for g in gen_list:
        if g.base != base:
            raise ValueError("generators live on different bases")
    closed = set(gen_list)
    frontier = list(closed)
    while frontier:
        new: list[PFunc] = []
        current = list(closed)
        for f in frontier:
            for out in (f.antidomain(), f.range()):
                if out not in closed:
                    closed.add(out)
                    new.append(out)
            for g in current:
                for out in (f.compose(g), g.compose(f), f.pref_union(g), g.pref_union(f)):
                    if out not in closed:
                        closed.add(out)
                        new.append(out)
        frontier = new
    return sorted(closed, key=graph_key)


def as_abstract(
    elems: Iterable[PFunc],
    names: Mapping[PFunc, str] | Sequence[str] | None = None,
):
    """Turn a closed set of partial functions into operation tables.

    Returns ``(algebra, labeling)`` where ``labeling[i]`` is the partial
    function represented by element index ``i``.  Raises NotClosedError if
    some operation leaves the set, naming the operation and its operands.
    """
    from .algebra import FinAlgebra

    ordered = sorted(set(elems), key=graph_key)
    if not ordered:
        raise ValueError("an algebra needs at least one element")
    index = {f: i for i, f in enumerate(ordered)}

    def look(op: str, operands: tuple[PFunc, ...], result: PFunc) -> int:
        try:
            return index[result]
        except KeyError:
            raise NotClosedError(op, operands, result) from None

    compose_t = tuple(
        tuple(look("compose", (f, g), f.compose(g)) for g in ordered) for f in ordered
    )
    anti_t = tuple(look("antidomain", (f,), f.antidomain()) for f in ordered)
    range_t = tuple(look("range", (f,), f.range()) for f in ordered)
    pref_t = tuple(
        tuple(look("pref_union", (f, g), f.pref_union(g)) for g in ordered) for f in ordered
    )

    if names is None:
        name_list = tuple(_auto_name(f) for f in ordered)
    elif isinstance(names, Mapping):
        name_list = tuple(names[f] for f in ordered)
    else:
        if len(list(names)) != len(ordered):
            raise ValueError("names must match the number of distinct elements")
        name_list = tuple(names)
    alg = FinAlgebra(compose_t=compose_t, anti_t=anti_t, range_t=range_t, pref_t=pref_t, names=name_list)
    return alg, tuple(ordered)


def _auto_name(f: PFunc) -> str:
    if not any(v is not None for v in f.graph):
        return "0"
    return "{" + ",".join(f"{x}>{y}" for x, y in f.mapping.items()) + "}"
