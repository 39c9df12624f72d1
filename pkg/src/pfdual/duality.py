"""The two halves of the duality composed: double-dual isomorphisms,
naturality squares, and the restricted duality for locally proper
homomorphisms and plain functors."""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Union

from .algebra import FinAlgebra, Homomorphism, check_homomorphism, check_locally_proper
from .bitsets import bits, mask_of
from .dualize import DualCategory, pf_morphism, pf_object
from .errors import InconsistencyError
from .filters import FilterSet, prime_from
from .sections import Section, seccl_morphism, seccl_object
from .topcat import (
    MultiFunctor,
    TopCategory,
    check_multifunctor,
    compose_multifunctors,
    is_continuous_multifunctor,
    is_plain_functor,
)


@dataclass(frozen=True)
class AlgebraIso:
    """Mutually inverse homomorphisms between two algebras."""

    source: FinAlgebra
    target: FinAlgebra
    fwd: tuple[int, ...]
    back: tuple[int, ...]

    def forward_hom(self) -> Homomorphism:
        return Homomorphism(self.source, self.target, self.fwd)

    def backward_hom(self) -> Homomorphism:
        return Homomorphism(self.target, self.source, self.back)


@dataclass(frozen=True)
class CategoryIso:
    """Mutually inverse continuous functors between topological categories."""

    fwd: MultiFunctor
    back: MultiFunctor

    @property
    def source(self) -> TopCategory:
        return self.fwd.source

    @property
    def target(self) -> TopCategory:
        return self.fwd.target


@functools.lru_cache(maxsize=None)
def dual_of(alg: FinAlgebra) -> DualCategory:
    return pf_object(alg)


@functools.lru_cache(maxsize=None)
def sections_of(cat: TopCategory):
    return seccl_object(cat)


def _verify_algebra_iso(iso: AlgebraIso) -> AlgebraIso:
    n = iso.source.size
    if sorted(iso.fwd) != list(range(iso.target.size)) or iso.target.size != n:
        raise InconsistencyError("map is not a bijection")
    if any(iso.back[iso.fwd[a]] != a for a in range(n)):
        raise InconsistencyError("maps are not mutually inverse")
    if not check_homomorphism(iso.forward_hom()) or not check_homomorphism(iso.backward_hom()):
        raise InconsistencyError("direction maps are not homomorphisms")
    return iso


def theta(alg: FinAlgebra) -> AlgebraIso:
    """The double-dual isomorphism on algebras: each element goes to the
    section whose domain is the objects containing its domain element and
    whose choice at an object mu is the prime filter (mu * a) closed upward.
    """
    dual = dual_of(alg)
    secalg, secs = sections_of(dual.category)
    sec_index = {(s.domain, s.choice): i for i, s in enumerate(secs)}
    arr_index = {p.members: i for i, p in enumerate(dual.arrow_filters)}

    fwd = []
    for a in range(alg.size):
        dom_mask = dual.domain_opens[alg.dom(a)]
        pairs = []
        for o in bits(dom_mask):
            p = prime_from(alg, dual.object_filters[o], a)
            k = arr_index.get(p.members)
            if k is None:
                raise InconsistencyError("choice filter is not an arrow of the dual")
            pairs.append((o, k))
        section = Section(dual.category, dom_mask, tuple(pairs))
        if section.image != dual.element_opens[a]:
            raise InconsistencyError("section disagrees with the filters containing the element")
        idx = sec_index.get((section.domain, section.choice))
        if idx is None:
            raise InconsistencyError("image section was not enumerated")
        fwd.append(idx)

    if sorted(fwd) != list(range(secalg.size)):
        raise InconsistencyError(
            f"double dual has {secalg.size} sections but the algebra has {alg.size} elements"
        )
    back = [0] * secalg.size
    for a, s in enumerate(fwd):
        back[s] = a
    return _verify_algebra_iso(AlgebraIso(source=alg, target=secalg, fwd=tuple(fwd), back=tuple(back)))


def _verify_category_iso(iso: CategoryIso) -> CategoryIso:
    fwd, back = iso.fwd, iso.back
    if sorted(fwd.obj_map) != list(range(fwd.target.n_objects)):
        raise InconsistencyError("object map is not a bijection")
    if not is_plain_functor(fwd) or not is_plain_functor(back):
        raise InconsistencyError("direction maps are not single-valued functors")
    for f in range(fwd.source.n_arrows):
        g = next(bits(fwd.arr_rel[f]))
        if next(bits(back.arr_rel[g])) != f:
            raise InconsistencyError("arrow maps are not mutually inverse")
    for fun in (fwd, back):
        if not check_multifunctor(fun).passed:
            raise InconsistencyError("direction map is not a functor")
        if not is_continuous_multifunctor(fun):
            raise InconsistencyError("direction map is not continuous")
    return iso


def phi(cat: TopCategory) -> CategoryIso:
    """The double-dual isomorphism on categories: an object goes to the
    ultrafilter of identity sections through its identity arrow, an arrow to
    the prime filter of sections containing it."""
    secalg, secs = sections_of(cat)
    dd = dual_of(secalg)
    id_mask = cat.identity_mask()

    obj_map = []
    for x in range(cat.n_objects):
        members = mask_of(
            i for i, s in enumerate(secs)
            if not s.image & ~id_mask and s.image >> cat.id_of[x] & 1
        )
        obj_map.append(dd.object_index(FilterSet(secalg, members)))
    arr_map = []
    for c in range(cat.n_arrows):
        members = mask_of(i for i, s in enumerate(secs) if s.image >> c & 1)
        arr_map.append(dd.arrow_index(FilterSet(secalg, members)))

    if sorted(obj_map) != list(range(dd.category.n_objects)) or sorted(arr_map) != list(range(dd.category.n_arrows)):
        raise InconsistencyError("double dual of the category has a different shape")
    back_obj = [0] * len(obj_map)
    for x, v in enumerate(obj_map):
        back_obj[v] = x
    back_arr = [0] * len(arr_map)
    for c, v in enumerate(arr_map):
        back_arr[v] = c
    fwd = MultiFunctor(cat, dd.category, tuple(obj_map), tuple(1 << v for v in arr_map))
    back = MultiFunctor(dd.category, cat, tuple(back_obj), tuple(1 << v for v in back_arr))
    return _verify_category_iso(CategoryIso(fwd=fwd, back=back))


# ---------------------------------------------------------------------------
# Naturality
# ---------------------------------------------------------------------------


def naturality_theta_sides(h: Homomorphism) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Both composites around the algebra naturality square, as maps from
    the source algebra into the double dual of the target."""
    dual_b = dual_of(h.target)
    dual_a = dual_of(h.source)
    fun = pf_morphism(h, dual_src=dual_b, dual_tgt=dual_a)
    secl = seccl_morphism(
        fun,
        target_sections=sections_of(fun.target),
        source_sections=sections_of(fun.source),
    )
    th_a = theta(h.source)
    th_b = theta(h.target)
    lhs = tuple(secl.mapping[th_a.fwd[a]] for a in range(h.source.size))
    rhs = tuple(th_b.fwd[h(a)] for a in range(h.source.size))
    return lhs, rhs


def check_naturality_theta(h: Homomorphism) -> bool:
    lhs, rhs = naturality_theta_sides(h)
    return lhs == rhs


def naturality_phi_sides(fun: MultiFunctor) -> tuple[MultiFunctor, MultiFunctor]:
    """Both composites around the category naturality square, as multivalued
    functors from the source category into the double dual of the target."""
    secl = seccl_morphism(
        fun,
        target_sections=sections_of(fun.target),
        source_sections=sections_of(fun.source),
    )
    dd = pf_morphism(
        secl,
        dual_src=dual_of(secl.target),
        dual_tgt=dual_of(secl.source),
    )
    phi_c = phi(fun.source)
    phi_d = phi(fun.target)
    lhs = compose_multifunctors(phi_c.fwd, dd)
    rhs = compose_multifunctors(fun, phi_d.fwd)
    return lhs, rhs


def check_naturality_phi(fun: MultiFunctor) -> bool:
    lhs, rhs = naturality_phi_sides(fun)
    return lhs.obj_map == rhs.obj_map and lhs.arr_rel == rhs.arr_rel


# ---------------------------------------------------------------------------
# The restricted duality
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RestrictedDualityReport:
    kind: str
    input_restricted: bool
    dual_restricted: bool
    double_dual_restricted: bool

    @property
    def preserved(self) -> bool:
        """Restriction survives dualizing twice whenever it held going in."""
        return not self.input_restricted or (self.dual_restricted and self.double_dual_restricted)


def restricted_duality_check(morphism: Union[Homomorphism, MultiFunctor]) -> RestrictedDualityReport:
    """For a homomorphism: locally proper in, plain-functor dual, locally
    proper double dual.  For a functor: plain in, locally proper dual,
    plain-functor double dual.  Observations are reported either way."""
    if isinstance(morphism, Homomorphism):
        lp, _ = check_locally_proper(morphism)
        fun = pf_morphism(
            morphism,
            dual_src=dual_of(morphism.target),
            dual_tgt=dual_of(morphism.source),
        )
        dd = seccl_morphism(
            fun,
            target_sections=sections_of(fun.target),
            source_sections=sections_of(fun.source),
        )
        dd_lp, _ = check_locally_proper(dd)
        return RestrictedDualityReport(
            kind="homomorphism",
            input_restricted=lp,
            dual_restricted=is_plain_functor(fun),
            double_dual_restricted=dd_lp,
        )
    secl = seccl_morphism(
        morphism,
        target_sections=sections_of(morphism.target),
        source_sections=sections_of(morphism.source),
    )
    lp, _ = check_locally_proper(secl)
    dd = pf_morphism(secl, dual_src=dual_of(secl.target), dual_tgt=dual_of(secl.source))
    return RestrictedDualityReport(
        kind="functor",
        input_restricted=is_plain_functor(morphism),
        dual_restricted=lp,
        double_dual_restricted=is_plain_functor(dd),
    )


def invert_plain_functor(fun: MultiFunctor) -> MultiFunctor:
    """Inverse of a bijective single-valued functor."""
    if not is_plain_functor(fun):
        raise ValueError("functor is not single-valued")
    if sorted(fun.obj_map) != list(range(fun.target.n_objects)):
        raise ValueError("functor is not bijective on objects")
    arr_map = [next(bits(m)) for m in fun.arr_rel]
    if sorted(arr_map) != list(range(fun.target.n_arrows)):
        raise ValueError("functor is not bijective on arrows")
    back_obj = [0] * fun.target.n_objects
    for x, v in enumerate(fun.obj_map):
        back_obj[v] = x
    back_arr = [0] * fun.target.n_arrows
    for f, v in enumerate(arr_map):
        back_arr[v] = f
    return MultiFunctor(fun.target, fun.source, tuple(back_obj), tuple(1 << v for v in back_arr))


def is_topcat_iso(fun: MultiFunctor) -> bool:
    """Bijective continuous functor with a continuous functorial inverse."""
    try:
        back = invert_plain_functor(fun)
    except ValueError:
        return False
    try:
        _verify_category_iso(CategoryIso(fwd=fun, back=back))
    except InconsistencyError:
        return False
    return True
