"""Finite abstract algebras of the composition/antidomain/range/override
signature, given by operation tables.

The central piece is `check_axioms`: a finite algebra passes all ten
(quasi)equations iff it is isomorphic to an algebra of partial functions,
so the checker doubles as a representability decision procedure.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Optional, Sequence

from .bitsets import bits, mask_of
from .errors import InconsistencyError, NoZeroError


@dataclass(frozen=True)
class FinAlgebra:
    """Operation tables over element indices 0..n-1.

    compose_t and pref_t are n*n tables, anti_t and range_t are n-vectors.
    Row-major convention: compose_t[a][b] is "a then b"; pref_t[a][b] is
    "a, falling back to b".
    """

    compose_t: tuple[tuple[int, ...], ...]
    anti_t: tuple[int, ...]
    range_t: tuple[int, ...]
    pref_t: tuple[tuple[int, ...], ...]
    names: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        n = len(self.anti_t)
        if n == 0:
            raise ValueError("an algebra needs at least one element")
        if not self.names:
            object.__setattr__(self, "names", tuple(f"e{i}" for i in range(n)))
        if len(self.names) != n or len(set(self.names)) != n:
            raise ValueError("names must be distinct and match the element count")
        for label, table in (("compose", self.compose_t), ("pref", self.pref_t)):
            if len(table) != n or any(len(row) != n for row in table):
                raise ValueError(f"{label} table must be {n}x{n}")
            if any(not 0 <= v < n for row in table for v in row):
                raise ValueError(f"{label} table entry out of range")
        for label, vec in (("antidomain", self.anti_t), ("range", self.range_t)):
            if len(vec) != n:
                raise ValueError(f"{label} table must have {n} entries")
            if any(not 0 <= v < n for v in vec):
                raise ValueError(f"{label} table entry out of range")

    @classmethod
    def from_tables(cls, compose_t, anti_t, range_t, pref_t, names=None) -> "FinAlgebra":
        return cls(
            compose_t=tuple(tuple(row) for row in compose_t),
            anti_t=tuple(anti_t),
            range_t=tuple(range_t),
            pref_t=tuple(tuple(row) for row in pref_t),
            names=tuple(names) if names else (),
        )

    @property
    def size(self) -> int:
        return len(self.anti_t)

    def comp(self, a: int, b: int) -> int:
        return self.compose_t[a][b]

    def anti(self, a: int) -> int:
        return self.anti_t[a]

    def rng(self, a: int) -> int:
        return self.range_t[a]

    def pref(self, a: int, b: int) -> int:
        return self.pref_t[a][b]

    def dom(self, a: int) -> int:
        return self.anti_t[self.anti_t[a]]

    def index_of(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise ValueError(f"no element named {name!r}") from None


@dataclass(frozen=True)
class Constants:
    """Derived constants and order of an algebra.

    up[a] / down[a] are bitmasks of the elements above / below a.
    """

    zero: int
    ident: int
    dom_t: tuple[int, ...]
    up: tuple[int, ...]
    down: tuple[int, ...]

    def leq(self, a: int, b: int) -> bool:
        return bool(self.up[a] >> b & 1)


@functools.lru_cache(maxsize=None)
def derive_constants(alg: FinAlgebra) -> Constants:
    """Compute zero, the identity, the domain table and the order.

    Raises NoZeroError (with a witness pair) when A(a)*a is not constant.
    """
    n = alg.size
    zero = alg.comp(alg.anti_t[0], 0)
    for a in range(1, n):
        if alg.comp(alg.anti_t[a], a) != zero:
            raise NoZeroError((0, a))
    ident = alg.anti_t[zero]
    dom_t = tuple(alg.anti_t[alg.anti_t[a]] for a in range(n))
    up = []
    for a in range(n):
        row = alg.compose_t[dom_t[a]]
        up.append(mask_of(b for b in range(n) if row[b] == a))
    down = tuple(mask_of(a for a in range(n) if up[a] >> b & 1) for b in range(n))
    return Constants(zero=zero, ident=ident, dom_t=dom_t, up=tuple(up), down=down)


# ---------------------------------------------------------------------------
# The axiom checker
# ---------------------------------------------------------------------------

AXIOM_NAMES = {
    1: "compose_associative",
    2: "antidomain_compose_constant",
    3: "left_identity",
    4: "antidomain_exchange",
    5: "domain_partition_cancel",
    6: "range_is_domain_element",
    7: "compose_own_range",
    8: "range_left_cancel",
    9: "pref_restricted_to_domain",
    10: "pref_outside_domain",
}

AXIOM_STATEMENTS = {
    1: "a*(b*c) = (a*b)*c",
    2: "A(a)*a = A(b)*b",
    3: "id*a = a",
    4: "a*A(b) = A(a*b)*a",
    5: "D(a)*b = D(a)*c and A(a)*b = A(a)*c  =>  b = c",
    6: "D(R(a)) = R(a)",
    7: "a*R(a) = a",
    8: "a*b = a*c  =>  R(a)*b = R(a)*c",
    9: "D(a)*(a|b) = a",
    10: "A(a)*(a|b) = A(a)*b",
}

QUASIEQUATIONS = (5, 8)


@dataclass(frozen=True)
class AxiomCheck:
    index: int
    name: str
    passed: bool
    witness: Optional[tuple[int, ...]]
    detail: str = ""


@dataclass(frozen=True)
class AxiomReport:
    results: tuple[AxiomCheck, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def failures(self) -> tuple[AxiomCheck, ...]:
        return tuple(r for r in self.results if not r.passed)

    def result(self, index: int) -> AxiomCheck:
        return self.results[index - 1]


def _zero_witness(alg: FinAlgebra) -> Optional[tuple[int, int]]:
    base = alg.comp(alg.anti_t[0], 0)
    for a in range(1, alg.size):
        if alg.comp(alg.anti_t[a], a) != base:
            return (0, a)
    return None


@functools.lru_cache(maxsize=None)
def check_axioms(alg: FinAlgebra) -> AxiomReport:
    """Check the ten representability (quasi)equations.

    Failures are results, not errors; each carries the first witness tuple
    in lexicographic element order.
    """
    n = alg.size
    C = alg.compose_t
    A = alg.anti_t
    R = alg.range_t
    P = alg.pref_t
    D = tuple(A[A[a]] for a in range(n))
    rng_n = range(n)
    results: list[AxiomCheck] = []

    def record(index: int, witness: Optional[tuple[int, ...]], detail: str = "") -> None:
        results.append(
            AxiomCheck(index=index, name=AXIOM_NAMES[index], passed=witness is None, witness=witness, detail=detail)
        )

    # (1) associativity of composition
    w = None
    for a in rng_n:
        Ca = C[a]
        for b in rng_n:
            Cab = C[Ca[b]]
            Cb = C[b]
            for c in rng_n:
                if Cab[c] != Ca[Cb[c]]:
                    w = (a, b, c)
                    break
            if w:
                break
        if w:
            break
    record(1, w)

    # (2) A(a)*a is one fixed element (the zero)
    zw = _zero_witness(alg)
    record(2, zw)

    # (3) id*a = a; only meaningful once the zero exists
    if zw is not None:
        record(3, zw, detail="identity constant undefined because A(a)*a is not constant")
    else:
        zero = C[A[0]][0]
        ident = A[zero]
        w = None
        for a in rng_n:
            if C[ident][a] != a:
                w = (a,)
                break
        record(3, w)

    # (4) a*A(b) = A(a*b)*a
    w = None
    for a in rng_n:
        Ca = C[a]
        for b in rng_n:
            if Ca[A[b]] != C[A[Ca[b]]][a]:
                w = (a, b)
                break
        if w:
            break
    record(4, w)

    # (5) D(a)*b = D(a)*c and A(a)*b = A(a)*c imply b = c
    w = None
    for a in rng_n:
        Cd = C[D[a]]
        Cn = C[A[a]]
        for b in rng_n:
            db, nb = Cd[b], Cn[b]
            for c in rng_n:
                if b != c and Cd[c] == db and Cn[c] == nb:
                    w = (a, b, c)
                    break
            if w:
                break
        if w:
            break
    record(5, w)

    # (6) D(R(a)) = R(a)
    w = None
    for a in rng_n:
        if D[R[a]] != R[a]:
            w = (a,)
            break
    record(6, w)

    # (7) a*R(a) = a
    w = None
    for a in rng_n:
        if C[a][R[a]] != a:
            w = (a,)
            break
    record(7, w)

    # (8) a*b = a*c implies R(a)*b = R(a)*c
    w = None
    for a in rng_n:
        Ca = C[a]
        Cr = C[R[a]]
        for b in rng_n:
            ab, rb = Ca[b], Cr[b]
            for c in rng_n:
                if Ca[c] == ab and Cr[c] != rb:
                    w = (a, b, c)
                    break
            if w:
                break
        if w:
            break
    record(8, w)

    # (9) D(a)*(a|b) = a
    w = None
    for a in rng_n:
        Cd = C[D[a]]
        Pa = P[a]
        for b in rng_n:
            if Cd[Pa[b]] != a:
                w = (a, b)
                break
        if w:
            break
    record(9, w)

    # (10) A(a)*(a|b) = A(a)*b
    w = None
    for a in rng_n:
        Cn = C[A[a]]
        Pa = P[a]
        for b in rng_n:
            if Cn[Pa[b]] != Cn[b]:
                w = (a, b)
                break
        if w:
            break
    record(10, w)

    return AxiomReport(results=tuple(results))


def axiom_instance_holds(alg: FinAlgebra, index: int, witness: Sequence[int]) -> bool:
    """Evaluate one axiom instance at a witness tuple.

    For quasiequations, True means "premise fails or conclusion holds".
    Used to confirm that reported failures are genuine violations.
    """
    C, A, R, P = alg.compose_t, alg.anti_t, alg.range_t, alg.pref_t
    dom = lambda a: A[A[a]]
    w = tuple(witness)
    if index == 1:
        a, b, c = w
        return C[C[a][b]][c] == C[a][C[b][c]]
    if index == 2:
        a, b = w
        return C[A[a]][a] == C[A[b]][b]
    if index == 3:
        if _zero_witness(alg) is not None:
            a, b = w
            return C[A[a]][a] == C[A[b]][b]
        ident = A[C[A[0]][0]]
        (a,) = w
        return C[ident][a] == a
    if index == 4:
        a, b = w
        return C[a][A[b]] == C[A[C[a][b]]][a]
    if index == 5:
        a, b, c = w
        premise = C[dom(a)][b] == C[dom(a)][c] and C[A[a]][b] == C[A[a]][c]
        return not premise or b == c
    if index == 6:
        (a,) = w
        return dom(R[a]) == R[a]
    if index == 7:
        (a,) = w
        return C[a][R[a]] == a
    if index == 8:
        a, b, c = w
        premise = C[a][b] == C[a][c]
        return not premise or C[R[a]][b] == C[R[a]][c]
    if index == 9:
        a, b = w
        return C[dom(a)][P[a][b]] == a
    if index == 10:
        a, b = w
        return C[A[a]][P[a][b]] == C[A[a]][b]
    raise ValueError(f"unknown axiom index {index}")


# ---------------------------------------------------------------------------
# Domain elements and the Boolean subalgebra they form
# ---------------------------------------------------------------------------


def domain_elements(alg: FinAlgebra) -> tuple[int, ...]:
    """The sub-universe of elements of the form A(-), in index order."""
    return tuple(sorted({alg.anti_t[a] for a in range(alg.size)}))


def is_domain_element(alg: FinAlgebra, a: int) -> bool:
    return a in set(alg.anti_t)


@dataclass(frozen=True)
class DomainSubalgebraReport:
    universe: tuple[int, ...]
    atoms: tuple[int, ...]
    bottom: int
    top: int


def domain_subalgebra(alg: FinAlgebra) -> DomainSubalgebraReport:
    """Verify that the domain elements form a Boolean algebra.

    Meet is composition, complement is antidomain, join is override,
    bottom is the zero and top is the identity.  Any law failure raises
    InconsistencyError since it cannot happen for representable input.
    """
    con = derive_constants(alg)
    universe = domain_elements(alg)
    uset = set(universe)
    comp, anti, pref = alg.comp, alg.anti, alg.pref

    def law(ok: bool, text: str) -> None:
        if not ok:
            raise InconsistencyError(f"domain elements violate Boolean law: {text}")

    law(con.zero in uset and con.ident in uset, "bottom/top present")
    for x in universe:
        law(comp(x, x) == x, f"meet idempotent at {x}")
        law(anti(x) in uset, f"complement closure at {x}")
        law(comp(x, anti(x)) == con.zero, f"x*A(x)=0 at {x}")
        law(pref(x, anti(x)) == con.ident, f"x|A(x)=id at {x}")
        law(alg.dom(x) == x, f"D fixes domain elements at {x}")
        for y in universe:
            law(comp(x, y) in uset, f"meet closure at ({x},{y})")
            law(pref(x, y) in uset, f"join closure at ({x},{y})")
            law(comp(x, y) == comp(y, x), f"meet commutative at ({x},{y})")
            law(pref(x, y) == pref(y, x), f"join commutative on domain elements at ({x},{y})")
            for z in universe:
                law(comp(x, pref(y, z)) == pref(comp(x, y), comp(x, z)), f"distributivity at ({x},{y},{z})")
    atoms = tuple(
        x for x in universe
        if x != con.zero and all(not con.leq(y, x) for y in universe if y not in (con.zero, x))
    )
    return DomainSubalgebraReport(universe=universe, atoms=atoms, bottom=con.zero, top=con.ident)


# ---------------------------------------------------------------------------
# Compatibility, joins, and the override/join translations
# ---------------------------------------------------------------------------


def compatible(alg: FinAlgebra, a: int, b: int) -> bool:
    return alg.comp(alg.dom(a), b) == alg.comp(alg.dom(b), a)


def upper_bounds(alg: FinAlgebra, a: int, b: int) -> int:
    con = derive_constants(alg)
    return con.up[a] & con.up[b]


def has_upper_bound(alg: FinAlgebra, a: int, b: int) -> bool:
    return upper_bounds(alg, a, b) != 0


def join(alg: FinAlgebra, a: int, b: int) -> Optional[int]:
    """Least upper bound, or None when no upper bound exists."""
    ubs = upper_bounds(alg, a, b)
    if not ubs:
        return None
    c = next(bits(ubs))
    return alg.comp(alg.anti(alg.comp(alg.anti(a), alg.anti(b))), c)


def in_class_A(alg: FinAlgebra) -> bool:
    """Every compatible pair has an upper bound."""
    n = alg.size
    return all(
        has_upper_bound(alg, a, b)
        for a in range(n)
        for b in range(n)
        if compatible(alg, a, b)
    )


def pref_from_join(alg: FinAlgebra) -> tuple[tuple[int, ...], ...]:
    """Reconstruct the override table from compose/antidomain/range alone,
    as a|b := join(a, A(a)*b).  The input's own pref table is ignored.
    """
    n = alg.size
    rows = []
    for a in range(n):
        row = []
        for b in range(n):
            rest = alg.comp(alg.anti(a), b)
            j = join(alg, a, rest)
            if j is None:
                raise ValueError(f"compatible pair ({a},{rest}) has no upper bound; override undefined")
            row.append(j)
        rows.append(tuple(row))
    return tuple(rows)


def join_from_pref(alg: FinAlgebra) -> tuple[tuple[Optional[int], ...], ...]:
    """Partial join table: a|b for compatible pairs, None otherwise."""
    n = alg.size
    return tuple(
        tuple(alg.pref(a, b) if compatible(alg, a, b) else None for b in range(n))
        for a in range(n)
    )


# ---------------------------------------------------------------------------
# Homomorphisms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Homomorphism:
    source: FinAlgebra
    target: FinAlgebra
    mapping: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.mapping) != self.source.size:
            raise ValueError("mapping must cover every source element")
        if any(not 0 <= v < self.target.size for v in self.mapping):
            raise ValueError("mapping value out of range")

    def __call__(self, a: int) -> int:
        return self.mapping[a]


def identity_hom(alg: FinAlgebra) -> Homomorphism:
    return Homomorphism(alg, alg, tuple(range(alg.size)))


def compose_homs(h1: Homomorphism, h2: Homomorphism) -> Homomorphism:
    """First h1, then h2."""
    if h1.target != h2.source:
        raise ValueError("homomorphisms are not composable")
    return Homomorphism(h1.source, h2.target, tuple(h2.mapping[v] for v in h1.mapping))


def check_homomorphism(h: Homomorphism) -> bool:
    src, tgt, m = h.source, h.target, h.mapping
    n = src.size
    for a in range(n):
        if m[src.anti(a)] != tgt.anti(m[a]) or m[src.rng(a)] != tgt.rng(m[a]):
            return False
        for b in range(n):
            if m[src.comp(a, b)] != tgt.comp(m[a], m[b]):
                return False
            if m[src.pref(a, b)] != tgt.pref(m[a], m[b]):
                return False
    return True


def preserves_joins(h: Homomorphism) -> bool:
    """Whenever join(a,b) exists in the source, h maps it to join(h a, h b)."""
    n = h.source.size
    for a in range(n):
        for b in range(n):
            j = join(h.source, a, b)
            if j is None:
                continue
            jt = join(h.target, h(a), h(b))
            if jt is None or jt != h(j):
                return False
    return True


def check_locally_proper(h: Homomorphism):
    """True iff the inverse image of every prime filter of the target is a
    prime filter of the source.  Returns (verdict, offending_filter_or_None).
    """
    from .filters import FilterSet, enumerate_prime_filters, is_filter, is_prime

    for p in enumerate_prime_filters(h.target):
        inv = mask_of(a for a in range(h.source.size) if p.members >> h(a) & 1)
        fs = FilterSet(h.source, inv)
        if not (inv and is_filter(h.source, inv) and is_prime(h.source, fs)):
            return False, p
    return True, None
