"""Finite topological categories and multivalued functors.

Opens are bitmasks over an indexed carrier.  All membership checks
(continuity, local homeomorphism, openness, the star conditions) are done
by exhaustion, which is exact for finite spaces.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional

from .bitsets import bits, mask_of, popcount


@dataclass(frozen=True)
class FinTopology:
    """An explicit family of open sets over carrier indices 0..size-1."""

    size: int
    opens: tuple[int, ...]

    def __post_init__(self) -> None:
        full = (1 << self.size) - 1
        fam = set(self.opens)
        if 0 not in fam or full not in fam:
            raise ValueError("a topology must contain the empty set and the carrier")
        if any(m & ~full for m in fam):
            raise ValueError("open set outside the carrier")
        if tuple(sorted(fam)) != self.opens:
            raise ValueError("opens must be sorted and duplicate-free")
        if len(fam) != full + 1:  # the full powerset is trivially closed
            members = tuple(fam)
            for i, a in enumerate(members):
                for b in members[i + 1:]:
                    if a | b not in fam or a & b not in fam:
                        raise ValueError("opens are not closed under union and intersection")

    @property
    def full(self) -> int:
        return (1 << self.size) - 1

    def is_open(self, mask: int) -> bool:
        return mask in self._open_set

    def is_clopen(self, mask: int) -> bool:
        return mask in self._open_set and (self.full & ~mask) in self._open_set

    def clopens(self) -> tuple[int, ...]:
        return tuple(m for m in self.opens if self.full & ~m in self._open_set)

    def is_discrete(self) -> bool:
        return all(self.is_open(1 << i) for i in range(self.size))

    def min_nbhd(self, point: int) -> int:
        """Smallest open set containing the point."""
        return self._min_nbhds[point]

    @cached_property
    def _open_set(self) -> frozenset:
        return frozenset(self.opens)

    @cached_property
    def _min_nbhds(self) -> tuple[int, ...]:
        out = []
        for i in range(self.size):
            m = self.full
            for o in self.opens:
                if o >> i & 1:
                    m &= o
            out.append(m)
        return tuple(out)


def discrete_topology(size: int) -> FinTopology:
    return FinTopology(size, tuple(range(1 << size)))


def indiscrete_topology(size: int) -> FinTopology:
    full = (1 << size) - 1
    return FinTopology(size, (0, full) if full else (0,))


def is_topology(size: int, family: Iterable[int]) -> bool:
    fam = set(family)
    full = (1 << size) - 1
    if 0 not in fam or full not in fam:
        return False
    return all(a | b in fam and a & b in fam for a in fam for b in fam)


def generate_topology(size: int, subbasis: Iterable[int]) -> FinTopology:
    """Close a subbasis under finite unions and intersections."""
    full = (1 << size) - 1
    fam = {0, full}
    pending = [m & full for m in subbasis]
    while pending:
        m = pending.pop()
        if m in fam:
            continue
        fresh = {m}
        for o in fam:
            for candidate in (m | o, m & o):
                if candidate not in fam:
                    fresh.add(candidate)
        fam.add(m)
        pending.extend(fresh - {m})
    # one confirming pass; new elements can appear from pairs of late arrivals
    while True:
        extra = set()
        members = tuple(fam)
        for i, a in enumerate(members):
            for b in members[i + 1:]:
                if a | b not in fam:
                    extra.add(a | b)
                if a & b not in fam:
                    extra.add(a & b)
        if not extra:
            break
        fam |= extra
    return FinTopology(size, tuple(sorted(fam)))


# ---------------------------------------------------------------------------
# Topological categories
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TopCategory:
    """A finite category with topologies on its objects and arrows.

    comp maps composable pairs (arrow f, arrow g with tgt f = src g) to the
    arrow "f then g"; it must be defined on exactly those pairs.
    """

    obj_names: tuple[str, ...]
    arr_names: tuple[str, ...]
    obj_top: FinTopology
    arr_top: FinTopology
    src: tuple[int, ...]
    tgt: tuple[int, ...]
    id_of: tuple[int, ...]
    comp_pairs: tuple[tuple[int, int, int], ...]

    def __post_init__(self) -> None:
        n_obj, n_arr = len(self.obj_names), len(self.arr_names)
        if self.obj_top.size != n_obj or self.arr_top.size != n_arr:
            raise ValueError("topology sizes must match carrier sizes")
        if len(self.src) != n_arr or len(self.tgt) != n_arr or len(self.id_of) != n_obj:
            raise ValueError("src/tgt/id_of sizes are wrong")

    @property
    def n_objects(self) -> int:
        return len(self.obj_names)

    @property
    def n_arrows(self) -> int:
        return len(self.arr_names)

    @cached_property
    def comp(self) -> dict[tuple[int, int], int]:
        return {(f, g): h for f, g, h in self.comp_pairs}

    def composable(self, f: int, g: int) -> bool:
        return self.tgt[f] == self.src[g]

    def compose(self, f: int, g: int) -> int:
        return self.comp[(f, g)]

    def star(self, x: int) -> tuple[int, ...]:
        """Arrows with source x."""
        return tuple(f for f in range(self.n_arrows) if self.src[f] == x)

    def costar(self, x: int) -> tuple[int, ...]:
        """Arrows with target x."""
        return tuple(f for f in range(self.n_arrows) if self.tgt[f] == x)

    def identity_mask(self) -> int:
        return mask_of(self.id_of)

    def check_category(self) -> list[str]:
        """Category axioms; returns a list of problems (empty when valid)."""
        problems = []
        comp = self.comp
        for x in range(self.n_objects):
            e = self.id_of[x]
            if self.src[e] != x or self.tgt[e] != x:
                problems.append(f"identity of object {x} has wrong endpoints")
        for f in range(self.n_arrows):
            for g in range(self.n_arrows):
                defined = (f, g) in comp
                if defined != self.composable(f, g):
                    problems.append(f"composition defined on wrong pair ({f},{g})")
                elif defined:
                    h = comp[(f, g)]
                    if self.src[h] != self.src[f] or self.tgt[h] != self.tgt[g]:
                        problems.append(f"composite of ({f},{g}) has wrong endpoints")
        for f in range(self.n_arrows):
            if comp.get((self.id_of[self.src[f]], f)) != f:
                problems.append(f"left unit law fails at arrow {f}")
            if comp.get((f, self.id_of[self.tgt[f]])) != f:
                problems.append(f"right unit law fails at arrow {f}")
        for f in range(self.n_arrows):
            for g in range(self.n_arrows):
                if not self.composable(f, g):
                    continue
                for h in range(self.n_arrows):
                    if not self.composable(g, h):
                        continue
                    if comp[(comp[(f, g)], h)] != comp[(f, comp[(g, h)])]:
                        problems.append(f"associativity fails at ({f},{g},{h})")
        return problems


def make_category(
    obj_names: Iterable[str],
    arrows: Iterable[tuple[str, str, str]],
    id_of: dict[str, str],
    comp: dict[tuple[str, str], str],
    obj_opens: Optional[Iterable[Iterable[str]]] = None,
    arr_opens: Optional[Iterable[Iterable[str]]] = None,
) -> TopCategory:
    """Convenience constructor from names; topologies default to discrete."""
    objs = tuple(obj_names)
    arrs = tuple(arrows)
    arr_names = tuple(a[0] for a in arrs)
    oi = {o: i for i, o in enumerate(objs)}
    ai = {a: i for i, a in enumerate(arr_names)}
    src = tuple(oi[a[1]] for a in arrs)
    tgt = tuple(oi[a[2]] for a in arrs)
    ids = tuple(ai[id_of[o]] for o in objs)
    pairs = tuple(sorted((ai[f], ai[g], ai[h]) for (f, g), h in comp.items()))
    if obj_opens is None:
        otop = discrete_topology(len(objs))
    else:
        otop = generate_topology(len(objs), (mask_of(oi[x] for x in U) for U in obj_opens))
    if arr_opens is None:
        atop = discrete_topology(len(arrs))
    else:
        atop = generate_topology(len(arrs), (mask_of(ai[x] for x in U) for U in arr_opens))
    return TopCategory(
        obj_names=objs, arr_names=arr_names, obj_top=otop, arr_top=atop,
        src=src, tgt=tgt, id_of=ids, comp_pairs=pairs,
    )


# ---------------------------------------------------------------------------
# Continuity and the etale/Stone/epi checks
# ---------------------------------------------------------------------------


def _image(mapping: tuple[int, ...], mask: int) -> int:
    return mask_of(mapping[i] for i in bits(mask))


def _preimage(mapping: tuple[int, ...], mask: int) -> int:
    return mask_of(i for i in range(len(mapping)) if mask >> mapping[i] & 1)


@dataclass(frozen=True)
class TopCategoryReport:
    src_continuous: bool
    tgt_continuous: bool
    id_continuous: bool
    comp_continuous: bool
    witnesses: tuple[tuple[str, int], ...]

    @property
    def passed(self) -> bool:
        return self.src_continuous and self.tgt_continuous and self.id_continuous and self.comp_continuous


def check_topological_category(cat: TopCategory) -> TopCategoryReport:
    """Continuity of source, target, identity-assignment and composition.

    Composition is checked against the pullback of composable pairs, whose
    topology is generated by the preimages of arrow opens under the two
    projections; openness there is decided by minimal neighbourhoods.
    """
    witnesses: list[tuple[str, int]] = []

    def continuous(mapping, domain_top: FinTopology, codomain_top: FinTopology, label: str) -> bool:
        ok = True
        for u in codomain_top.opens:
            if not domain_top.is_open(_preimage(mapping, u)):
                witnesses.append((label, u))
                ok = False
        return ok

    src_ok = continuous(cat.src, cat.arr_top, cat.obj_top, "src")
    tgt_ok = continuous(cat.tgt, cat.arr_top, cat.obj_top, "tgt")
    id_ok = continuous(cat.id_of, cat.obj_top, cat.arr_top, "id")

    pairs = sorted(cat.comp)
    pair_index = {p: i for i, p in enumerate(pairs)}
    k = len(pairs)
    # minimal neighbourhood of each pair in the pullback topology
    min_nbhd = [(1 << k) - 1 if k else 0] * k
    for u in cat.arr_top.opens:
        left = mask_of(i for i, (f, _) in enumerate(pairs) if u >> f & 1)
        right = mask_of(i for i, (_, g) in enumerate(pairs) if u >> g & 1)
        for cyl in (left, right):
            for i in bits(cyl):
                min_nbhd[i] &= cyl
    comp_ok = True
    for u in cat.arr_top.opens:
        pre = mask_of(pair_index[p] for p in pairs if u >> cat.comp[p] & 1)
        if any(min_nbhd[i] & ~pre for i in bits(pre)):
            witnesses.append(("comp", u))
            comp_ok = False
    return TopCategoryReport(src_ok, tgt_ok, id_ok, comp_ok, tuple(witnesses))


def _map_of(cat: TopCategory, which: str) -> tuple[int, ...]:
    if which == "src":
        return cat.src
    if which == "tgt":
        return cat.tgt
    raise ValueError("which must be 'src' or 'tgt'")


def is_local_homeo(cat: TopCategory, which: str = "src") -> bool:
    """Every arrow has an open neighbourhood mapped homeomorphically onto an
    open set of objects."""
    mapping = _map_of(cat, which)
    atop, otop = cat.arr_top, cat.obj_top
    for u in otop.opens:
        if not atop.is_open(_preimage(mapping, u)):
            return False
    candidates = sorted(atop.opens, key=lambda m: (popcount(m), m))
    for m in range(cat.n_arrows):
        if not any(
            u >> m & 1 and _neighbourhood_works(cat, mapping, u)
            for u in candidates
        ):
            return False
    return True


def _neighbourhood_works(cat: TopCategory, mapping: tuple[int, ...], u: int) -> bool:
    pts = list(bits(u))
    imgs = [mapping[i] for i in pts]
    if len(set(imgs)) != len(imgs):
        return False
    image = mask_of(imgs)
    if not cat.obj_top.is_open(image):
        return False
    # inverse continuity: images of relatively open sets are relatively open
    for w in cat.arr_top.opens:
        t = _image(mapping, u & w)
        if any(cat.obj_top.min_nbhd(y) & image & ~t for y in bits(t)):
            return False
    return True


def is_open_map(cat: TopCategory, which: str = "tgt") -> bool:
    mapping = _map_of(cat, which)
    return all(cat.obj_top.is_open(_image(mapping, u)) for u in cat.arr_top.opens)


def is_stone(top: FinTopology) -> bool:
    """Every pair of distinct points is separated by a clopen set.

    Compactness is automatic for finite spaces.
    """
    clopens = top.clopens()
    for x in range(top.size):
        for y in range(x + 1, top.size):
            if not any((m >> x & 1) != (m >> y & 1) for m in clopens):
                return False
    return True


def all_arrows_epi(cat: TopCategory) -> bool:
    """Right cancellation: a.b = a.c forces b = c."""
    for a in range(cat.n_arrows):
        y = cat.tgt[a]
        post = [b for b in range(cat.n_arrows) if cat.src[b] == y]
        for b in post:
            for c in post:
                if b != c and cat.compose(a, b) == cat.compose(a, c):
                    return False
    return True


def identity_arrows_open(cat: TopCategory) -> bool:
    return cat.arr_top.is_open(cat.identity_mask())


@dataclass(frozen=True)
class CObjectReport:
    category_problems: tuple[str, ...]
    topology: TopCategoryReport
    src_local_homeo: bool
    tgt_open: bool
    objects_stone: bool
    arrows_epi: bool

    @property
    def passed(self) -> bool:
        return (
            not self.category_problems
            and self.topology.passed
            and self.src_local_homeo
            and self.tgt_open
            and self.objects_stone
            and self.arrows_epi
        )

    def problems(self) -> tuple[str, ...]:
        out = list(self.category_problems)
        for label, u in self.topology.witnesses:
            out.append(f"{label} not continuous at open {u:#x}")
        if not self.src_local_homeo:
            out.append("source map is not a local homeomorphism")
        if not self.tgt_open:
            out.append("target map is not open")
        if not self.objects_stone:
            out.append("object space is not Stone")
        if not self.arrows_epi:
            out.append("some arrow is not an epimorphism")
        return tuple(out)


def validate_object_of_C(cat: TopCategory) -> CObjectReport:
    """All membership conditions for the dual category class: category
    axioms, continuity, source local homeomorphism, open target, Stone
    object space, and every arrow an epimorphism."""
    problems = tuple(cat.check_category())
    top = check_topological_category(cat)
    return CObjectReport(
        category_problems=problems,
        topology=top,
        src_local_homeo=is_local_homeo(cat, "src") if top.passed else False,
        tgt_open=is_open_map(cat, "tgt"),
        objects_stone=is_stone(cat.obj_top),
        arrows_epi=not problems and all_arrows_epi(cat),
    )


# ---------------------------------------------------------------------------
# Multivalued functors
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MultiFunctor:
    """An object map plus an arrow relation (possibly empty-valued).

    arr_rel[f] is the bitmask of target arrows related to source arrow f.
    """

    source: TopCategory
    target: TopCategory
    obj_map: tuple[int, ...]
    arr_rel: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.obj_map) != self.source.n_objects:
            raise ValueError("object map must cover every source object")
        if len(self.arr_rel) != self.source.n_arrows:
            raise ValueError("arrow relation must cover every source arrow")

    def values(self, f: int) -> tuple[int, ...]:
        return tuple(bits(self.arr_rel[f]))


def identity_multifunctor(cat: TopCategory) -> MultiFunctor:
    return MultiFunctor(
        source=cat, target=cat,
        obj_map=tuple(range(cat.n_objects)),
        arr_rel=tuple(1 << f for f in range(cat.n_arrows)),
    )


@dataclass(frozen=True)
class MultiFunctorReport:
    endpoints_ok: bool
    identities_ok: bool
    compositions_ok: bool
    witness: Optional[tuple] = None

    @property
    def passed(self) -> bool:
        return self.endpoints_ok and self.identities_ok and self.compositions_ok


def check_multifunctor(fun: MultiFunctor) -> MultiFunctorReport:
    """The three structural conditions: related arrows have the mapped
    endpoints, mapped identities are related to identities, and relatedness
    is preserved by composition."""
    src_c, tgt_c = fun.source, fun.target
    for f in range(src_c.n_arrows):
        for g in bits(fun.arr_rel[f]):
            if tgt_c.src[g] != fun.obj_map[src_c.src[f]] or tgt_c.tgt[g] != fun.obj_map[src_c.tgt[f]]:
                return MultiFunctorReport(False, False, False, witness=("endpoints", f, g))
    for x in range(src_c.n_objects):
        if not fun.arr_rel[src_c.id_of[x]] >> tgt_c.id_of[fun.obj_map[x]] & 1:
            return MultiFunctorReport(True, False, False, witness=("identity", x))
    for (f1, f2), h in src_c.comp.items():
        for g1 in bits(fun.arr_rel[f1]):
            for g2 in bits(fun.arr_rel[f2]):
                if not fun.arr_rel[h] >> tgt_c.compose(g1, g2) & 1:
                    return MultiFunctorReport(True, True, False, witness=("composition", f1, f2, g1, g2))
    return MultiFunctorReport(True, True, True)


def relation_preimage(fun: MultiFunctor, mask: int) -> int:
    """Arrows whose image meets the given set of target arrows."""
    return mask_of(f for f in range(fun.source.n_arrows) if fun.arr_rel[f] & mask)


def is_continuous_multifunctor(fun: MultiFunctor) -> bool:
    obj_ok = all(
        fun.source.obj_top.is_open(_preimage(fun.obj_map, u))
        for u in fun.target.obj_top.opens
    )
    arr_ok = all(
        fun.source.arr_top.is_open(relation_preimage(fun, u))
        for u in fun.target.arr_top.opens
    )
    return obj_ok and arr_ok


@dataclass(frozen=True)
class StarReport:
    injective: bool
    surjective: bool
    pseudo: bool
    co_pseudo: bool

    @property
    def coherent(self) -> bool:
        return self.injective and self.surjective and self.co_pseudo


def star_checks(fun: MultiFunctor) -> StarReport:
    """The per-source-object restrictions of the arrow relation.

    injective: images of two arrows sharing a source can only meet if the
    arrows are equal.  surjective: every target arrow out of a mapped object
    is hit.  pseudo / co_pseudo: every open set meeting the mapped star
    (costar) is hit by the image of the star (costar).
    """
    src_c, tgt_c = fun.source, fun.target
    injective = True
    surjective = True
    pseudo = True
    co_pseudo = True
    for x in range(src_c.n_objects):
        star = src_c.star(x)
        for i, f1 in enumerate(star):
            for f2 in star[i + 1:]:
                if fun.arr_rel[f1] & fun.arr_rel[f2]:
                    injective = False
        fx = fun.obj_map[x]
        star_mask = mask_of(tgt_c.star(fx))
        hit = 0
        for f in star:
            hit |= fun.arr_rel[f]
        if star_mask & ~hit:
            surjective = False
        for u in tgt_c.arr_top.opens:
            if u & star_mask and not u & hit:
                pseudo = False
        costar_mask = mask_of(tgt_c.costar(fx))
        cohit = 0
        for f in src_c.costar(x):
            cohit |= fun.arr_rel[f]
        for u in tgt_c.arr_top.opens:
            if u & costar_mask and not u & cohit:
                co_pseudo = False
    return StarReport(injective, surjective, pseudo, co_pseudo)


def compose_multifunctors(first: MultiFunctor, second: MultiFunctor) -> MultiFunctor:
    """Relational composition: apply `first`, then `second`."""
    if first.target != second.source:
        raise ValueError("functors are not composable")
    obj_map = tuple(second.obj_map[v] for v in first.obj_map)
    arr_rel = []
    for f in range(first.source.n_arrows):
        m = 0
        for g in bits(first.arr_rel[f]):
            m |= second.arr_rel[g]
        arr_rel.append(m)
    return MultiFunctor(first.source, second.target, obj_map, tuple(arr_rel))


def is_plain_functor(fun: MultiFunctor) -> bool:
    """Total and single-valued on arrows."""
    return all(popcount(m) == 1 for m in fun.arr_rel)
