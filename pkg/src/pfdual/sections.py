"""Sections on clopens of a finite etale category, and the algebra they form.

A section picks one arrow per object of a clopen set of objects, with the
source map as left inverse; continuity is equivalent to the image being an
open set of arrows.  The set of all such sections carries the four algebra
operations, giving the other half of the duality.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Iterable, Optional

from .algebra import FinAlgebra, Homomorphism
from .bitsets import bits, mask_of, popcount
from .errors import InconsistencyError
from .topcat import (
    MultiFunctor,
    TopCategory,
    check_topological_category,
    is_local_homeo,
    relation_preimage,
    star_checks,
)


@dataclass(frozen=True)
class Section:
    """A choice of arrows over a clopen set of objects.

    choice is a tuple of (object, arrow) pairs sorted by object index;
    domain is the bitmask of the objects covered.
    """

    category: TopCategory
    domain: int
    choice: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        objs = [x for x, _ in self.choice]
        if objs != sorted(set(objs)) or mask_of(objs) != self.domain:
            raise ValueError("choice must cover exactly the domain, sorted, one arrow per object")
        for x, f in self.choice:
            if self.category.src[f] != x:
                raise ValueError(f"chosen arrow {f} does not start at object {x}")

    @property
    def image(self) -> int:
        return mask_of(f for _, f in self.choice)

    def arrow_at(self, x: int) -> Optional[int]:
        for obj, f in self.choice:
            if obj == x:
                return f
        return None

    def is_valid(self) -> bool:
        """Clopen domain and open image (the continuity criterion)."""
        return self.category.obj_top.is_clopen(self.domain) and self.category.arr_top.is_open(self.image)


def section_from_arrows(cat: TopCategory, arrows: Iterable[int]) -> Section:
    """Assemble a section from a set of arrows; fails if two share a source."""
    pairs = sorted((cat.src[f], f) for f in arrows)
    seen = [x for x, _ in pairs]
    if len(set(seen)) != len(seen):
        raise ValueError("two arrows share a source; not a section")
    return Section(cat, mask_of(seen), tuple(pairs))


@functools.lru_cache(maxsize=None)
def _structurally_sound(cat: TopCategory) -> tuple[str, ...]:
    """Problems that make section enumeration meaningless: broken category
    axioms, discontinuous structure maps, or a source map that is not a
    local homeomorphism (the open-image continuity criterion needs it).
    Deliberately does not include the epimorphism condition."""
    problems = list(cat.check_category())
    if not problems:
        if not check_topological_category(cat).passed:
            problems.append("structure maps are not continuous")
        elif not is_local_homeo(cat, "src"):
            problems.append("source map is not a local homeomorphism")
    return tuple(problems)


def enumerate_sections(cat: TopCategory) -> tuple[Section, ...]:
    """All sections on clopen domains, in a fixed order: domains by size
    then mask value, choices lexicographically by per-object arrow index."""
    problems = _structurally_sound(cat)
    if problems:
        raise ValueError("cannot enumerate sections: " + "; ".join(problems))
    fibers = [cat.star(x) for x in range(cat.n_objects)]
    out = []
    for dom in sorted(cat.obj_top.clopens(), key=lambda m: (popcount(m), m)):
        objs = list(bits(dom))
        for picks in itertools.product(*(fibers[x] for x in objs)):
            s = Section(cat, dom, tuple(zip(objs, picks)))
            if cat.arr_top.is_open(s.image):
                out.append(s)
    return tuple(out)


# ---------------------------------------------------------------------------
# The four operations on sections
# ---------------------------------------------------------------------------


def sec_compose(a: Section, b: Section) -> Section:
    """Pointwise: follow a, then b from where a landed."""
    cat = a.category
    pairs = []
    for x, f in a.choice:
        g = b.arrow_at(cat.tgt[f])
        if g is not None:
            pairs.append((x, cat.compose(f, g)))
    return _checked(Section(cat, mask_of(x for x, _ in pairs), tuple(pairs)))


def sec_antidomain(a: Section) -> Section:
    """Identity arrows on the objects outside the domain of a."""
    cat = a.category
    pairs = tuple((x, cat.id_of[x]) for x in range(cat.n_objects) if not a.domain >> x & 1)
    return _checked(Section(cat, mask_of(x for x, _ in pairs), pairs))


def sec_range(a: Section) -> Section:
    """Identity arrows on the targets hit by a."""
    cat = a.category
    hit = sorted({cat.tgt[f] for _, f in a.choice})
    pairs = tuple((x, cat.id_of[x]) for x in hit)
    return _checked(Section(cat, mask_of(hit), pairs))


def sec_pref(a: Section, b: Section) -> Section:
    """Override: a, extended by b outside the domain of a."""
    rest = sec_compose(sec_antidomain(a), b)
    pairs = tuple(sorted(a.choice + rest.choice))
    return _checked(Section(a.category, a.domain | rest.domain, pairs))


def _checked(s: Section) -> Section:
    if not s.is_valid():
        raise InconsistencyError("operation produced an invalid section")
    return s


# ---------------------------------------------------------------------------
# The section algebra and its homomorphisms
# ---------------------------------------------------------------------------


def _section_key(s: Section) -> tuple:
    return (s.domain, s.choice)


def seccl_object(cat: TopCategory) -> tuple[FinAlgebra, tuple[Section, ...]]:
    """The algebra of all sections on clopens of a validated category.

    Returns the operation tables together with the section they index.
    """
    secs = enumerate_sections(cat)
    index = {_section_key(s): i for i, s in enumerate(secs)}

    def look(s: Section) -> int:
        try:
            return index[_section_key(s)]
        except KeyError:
            raise InconsistencyError("sections are not closed under the operations") from None

    n = len(secs)
    compose_t = tuple(tuple(look(sec_compose(a, b)) for b in secs) for a in secs)
    anti_t = tuple(look(sec_antidomain(a)) for a in secs)
    range_t = tuple(look(sec_range(a)) for a in secs)
    pref_t = tuple(tuple(look(sec_pref(a, b)) for b in secs) for a in secs)
    names = tuple(f"s{i}" for i in range(n))
    return FinAlgebra(compose_t=compose_t, anti_t=anti_t, range_t=range_t, pref_t=pref_t, names=names), secs


def seccl_morphism(
    fun: MultiFunctor,
    target_sections: Optional[tuple[FinAlgebra, tuple[Section, ...]]] = None,
    source_sections: Optional[tuple[FinAlgebra, tuple[Section, ...]]] = None,
) -> Homomorphism:
    """Dualize a star-coherent multivalued functor F: C -> D into the
    homomorphism SecCl(D) -> SecCl(C) taking a section to its inverse image.
    """
    if not star_checks(fun).coherent:
        raise ValueError("functor must be star coherent")
    alg_d, secs_d = target_sections or seccl_object(fun.target)
    alg_c, secs_c = source_sections or seccl_object(fun.source)
    index_c = {_section_key(s): i for i, s in enumerate(secs_c)}
    mapping = []
    for s in secs_d:
        arrows = relation_preimage(fun, s.image)
        try:
            pulled = section_from_arrows(fun.source, bits(arrows))
        except ValueError:
            raise InconsistencyError("inverse image of a section is not a section") from None
        k = index_c.get(_section_key(pulled))
        if k is None:
            raise InconsistencyError("inverse image of a section has a non-clopen domain")
        mapping.append(k)
    return Homomorphism(source=alg_d, target=alg_c, mapping=tuple(mapping))


def sections_form_basis(cat: TopCategory) -> bool:
    """Images of sections on clopens form a basis of the arrow topology."""
    images = [s.image for s in enumerate_sections(cat)]
    for u in cat.arr_top.opens:
        for m in bits(u):
            if not any(im >> m & 1 and not im & ~u for im in images):
                return False
    return True
