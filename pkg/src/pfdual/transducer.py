"""One-way finite-state transducers for rational word functions.

Machines are real-time: each transition consumes exactly one input letter
and emits an output word; a state may carry a final output word appended on
acceptance.  Nondeterminism is allowed but every machine must realize a
partial function; this is enforced by bounded checking, with violations
surfacing as NotFunctionalError.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

from .errors import NotFunctionalError

BOUND_CAP = 12


@dataclass(frozen=True, eq=False)
class Dfa:
    """A complete deterministic acceptor; delta must be total."""

    states: tuple[str, ...]
    alphabet: tuple[str, ...]
    initial: str
    accepting: frozenset[str]
    delta: dict[tuple[str, str], str]

    def __post_init__(self) -> None:
        sset = set(self.states)
        if self.initial not in sset or not self.accepting <= sset:
            raise ValueError("initial/accepting states must be listed states")
        for q in self.states:
            for a in self.alphabet:
                if self.delta.get((q, a)) not in sset:
                    raise ValueError(f"transition function must be total: missing ({q!r},{a!r})")

    def accepts(self, word: str) -> bool:
        q = self.initial
        for a in word:
            if a not in self.alphabet:
                raise ValueError(f"letter {a!r} outside the alphabet")
            q = self.delta[(q, a)]
        return q in self.accepting


def complement(d: Dfa) -> Dfa:
    return Dfa(d.states, d.alphabet, d.initial, frozenset(set(d.states) - d.accepting), dict(d.delta))


def words_upto(alphabet: Sequence[str], max_len: int) -> Iterator[str]:
    """All words of length at most max_len, by length then letter order."""
    for n in range(max_len + 1):
        for letters in itertools.product(alphabet, repeat=n):
            yield "".join(letters)


@dataclass(frozen=True, eq=False)
class Transducer:
    """states, one-letter input transitions to (output word, state) pairs,
    and a partial final-output map marking the accepting states."""

    states: tuple[str, ...]
    alphabet: tuple[str, ...]
    initial: str
    trans: dict[tuple[str, str], frozenset[tuple[str, str]]]
    final_out: dict[str, str]

    def __post_init__(self) -> None:
        sset = set(self.states)
        aset = set(self.alphabet)
        if self.initial not in sset:
            raise ValueError("initial state must be listed")
        if not set(self.final_out) <= sset:
            raise ValueError("final states must be listed states")
        for (q, a), outs in self.trans.items():
            if q not in sset or a not in aset:
                raise ValueError(f"transition from unknown state/letter ({q!r},{a!r})")
            for out, q2 in outs:
                if q2 not in sset:
                    raise ValueError(f"transition to unknown state {q2!r}")
                if any(ch not in aset for ch in out):
                    raise ValueError(f"output {out!r} uses letters outside the alphabet")
        for v in self.final_out.values():
            if any(ch not in aset for ch in v):
                raise ValueError(f"final output {v!r} uses letters outside the alphabet")

    def moves(self, q: str, a: str) -> frozenset[tuple[str, str]]:
        return self.trans.get((q, a), frozenset())


def eval(t: Transducer, word: str) -> Optional[str]:
    """The unique output for the word, or None when no run accepts.

    Raises NotFunctionalError when two accepting runs disagree.
    """
    configs = {(t.initial, "")}
    for a in word:
        if a not in t.alphabet:
            raise ValueError(f"letter {a!r} outside the alphabet")
        configs = {(q2, out + emitted) for q, out in configs for emitted, q2 in t.moves(q, a)}
        if not configs:
            return None
    results = {out + t.final_out[q] for q, out in configs if q in t.final_out}
    if len(results) > 1:
        two = sorted(results)[:2]
        raise NotFunctionalError(word, (two[0], two[1]))
    return results.pop() if results else None


def identity_transducer(alphabet: Sequence[str]) -> Transducer:
    al = tuple(alphabet)
    return Transducer(
        states=("q0",), alphabet=al, initial="q0",
        trans={("q0", a): frozenset({(a, "q0")}) for a in al},
        final_out={"q0": ""},
    )


def empty_transducer(alphabet: Sequence[str]) -> Transducer:
    return Transducer(states=("q0",), alphabet=tuple(alphabet), initial="q0", trans={}, final_out={})


def from_dfa(d: Dfa) -> Transducer:
    """The identity function restricted to the language of the acceptor."""
    return Transducer(
        states=d.states,
        alphabet=d.alphabet,
        initial=d.initial,
        trans={(q, a): frozenset({(a, d.delta[(q, a)])}) for q in d.states for a in d.alphabet},
        final_out={q: "" for q in d.accepting},
    )


def _relabel_transducer(
    alphabet: tuple[str, ...],
    initial,
    moves,          # state -> letter -> iterable of (out, state)
    final,          # state -> word or None
) -> Transducer:
    """Breadth-first renaming to q0, q1, ... for deterministic output."""
    order = [initial]
    seen = {initial}
    k = 0
    while k < len(order):
        q = order[k]
        k += 1
        for a in alphabet:
            for _, q2 in sorted(moves(q, a)):
                if q2 not in seen:
                    seen.add(q2)
                    order.append(q2)
    name = {q: f"q{i}" for i, q in enumerate(order)}
    trans = {}
    for q in order:
        for a in alphabet:
            outs = frozenset((out, name[q2]) for out, q2 in moves(q, a))
            if outs:
                trans[(name[q], a)] = outs
    final_out = {}
    for q in order:
        v = final(q)
        if v is not None:
            final_out[name[q]] = v
    return Transducer(tuple(name[q] for q in order), alphabet, "q0", trans, final_out)


def _run_on_word(t: Transducer, q: str, word: str) -> set[tuple[str, str]]:
    """All (output, state) pairs after consuming the word from state q."""
    configs = {("", q)}
    for a in word:
        configs = {(out + emitted, q3) for out, q2 in configs for emitted, q3 in t.moves(q2, a)}
        if not configs:
            break
    return configs


def compose(t1: Transducer, t2: Transducer) -> Transducer:
    """Realizes w -> t2(t1(w)): the second machine consumes the output of
    the first, letter by letter."""
    if t1.alphabet != t2.alphabet:
        raise ValueError("transducers must share an alphabet")
    al = t1.alphabet

    def moves(pair, a):
        q1, q2 = pair
        out = set()
        for emitted, q1b in t1.moves(q1, a):
            for v, q2b in _run_on_word(t2, q2, emitted):
                out.add((v, (q1b, q2b)))
        return out

    def final(pair):
        q1, q2 = pair
        u = t1.final_out.get(q1)
        if u is None:
            return None
        results = {
            v + t2.final_out[q2b]
            for v, q2b in _run_on_word(t2, q2, u)
            if q2b in t2.final_out
        }
        if len(results) > 1:
            two = sorted(results)[:2]
            raise NotFunctionalError("<final>", (two[0], two[1]))
        return results.pop() if results else None

    return _relabel_transducer(al, (t1.initial, t2.initial), moves, final)


# ---------------------------------------------------------------------------
# Domain and range acceptors via subset construction
# ---------------------------------------------------------------------------


def _determinize(alphabet, start: frozenset, move, accepting_pred) -> Dfa:
    order = [start]
    seen = {start}
    k = 0
    delta = {}
    while k < len(order):
        s = order[k]
        k += 1
        for a in alphabet:
            s2 = move(s, a)
            delta[(s, a)] = s2
            if s2 not in seen:
                seen.add(s2)
                order.append(s2)
    name = {s: f"d{i}" for i, s in enumerate(order)}
    return Dfa(
        states=tuple(name[s] for s in order),
        alphabet=tuple(alphabet),
        initial=name[start],
        accepting=frozenset(name[s] for s in order if accepting_pred(s)),
        delta={(name[s], a): name[s2] for (s, a), s2 in delta.items()},
    )


def domain_dfa(t: Transducer) -> Dfa:
    """Forget outputs, then determinize."""
    def move(s, a):
        return frozenset(q2 for q in s for _, q2 in t.moves(q, a))

    return _determinize(
        t.alphabet, frozenset({t.initial}), move,
        lambda s: any(q in t.final_out for q in s),
    )


def range_dfa(t: Transducer) -> Dfa:
    """Acceptor for the set of output words, built by reading transition
    outputs through an epsilon automaton and determinizing."""
    # nodes: transducer states, plus spelled-out positions inside output words
    eps: dict[object, set] = {}
    letter_edges: dict[tuple[object, str], set] = {}
    counter = itertools.count()
    accept = ("acc",)

    def add_word_path(src, word, dst):
        if word == "":
            eps.setdefault(src, set()).add(dst)
            return
        node = src
        for ch in word[:-1]:
            nxt = ("n", next(counter))
            letter_edges.setdefault((node, ch), set()).add(nxt)
            node = nxt
        letter_edges.setdefault((node, word[-1]), set()).add(dst)

    for (q, _a), outs in t.trans.items():
        for out, q2 in outs:
            add_word_path(("s", q), out, ("s", q2))
    for q, v in t.final_out.items():
        add_word_path(("s", q), v, accept)

    def closure(nodes: Iterable) -> frozenset:
        todo = list(nodes)
        seen = set(todo)
        while todo:
            n = todo.pop()
            for m in eps.get(n, ()):
                if m not in seen:
                    seen.add(m)
                    todo.append(m)
        return frozenset(seen)

    def move(s, a):
        step = set()
        for n in s:
            step |= letter_edges.get((n, a), set())
        return closure(step)

    return _determinize(
        t.alphabet, closure({("s", t.initial)}), move,
        lambda s: accept in s,
    )


def antidomain(t: Transducer) -> Transducer:
    """Identity on the words where t is undefined."""
    return from_dfa(complement(domain_dfa(t)))


def domain_transducer(t: Transducer) -> Transducer:
    """Identity on the domain, as the derived term A(A(t))."""
    return antidomain(antidomain(t))


def range_transducer(t: Transducer) -> Transducer:
    """Identity on the range language."""
    return from_dfa(range_dfa(t))


def restrict(t: Transducer, d: Dfa) -> Transducer:
    """t limited to inputs accepted by d, via the product construction."""
    if t.alphabet != d.alphabet:
        raise ValueError("alphabets differ")

    def moves(pair, a):
        q, s = pair
        return {(out, (q2, d.delta[(s, a)])) for out, q2 in t.moves(q, a)}

    def final(pair):
        q, s = pair
        if s in d.accepting:
            return t.final_out.get(q)
        return None

    return _relabel_transducer(t.alphabet, (t.initial, d.initial), moves, final)


def pref_union(t1: Transducer, t2: Transducer) -> Transducer:
    """t1 where defined, else t2: the union of t1 with t2 restricted to the
    complement of the domain of t1.  The two parts have disjoint domains, so
    the union stays functional."""
    if t1.alphabet != t2.alphabet:
        raise ValueError("transducers must share an alphabet")
    t2r = restrict(t2, complement(domain_dfa(t1)))

    def moves(state, a):
        if state == "u0":
            return {(out, ("l", q)) for out, q in t1.moves(t1.initial, a)} | {
                (out, ("r", q)) for out, q in t2r.moves(t2r.initial, a)
            }
        side, q = state
        t = t1 if side == "l" else t2r
        return {(out, (side, q2)) for out, q2 in t.moves(q, a)}

    def final(state):
        if state == "u0":
            u = t1.final_out.get(t1.initial)
            return u if u is not None else t2r.final_out.get(t2r.initial)
        side, q = state
        return (t1 if side == "l" else t2r).final_out.get(q)

    return _relabel_transducer(t1.alphabet, "u0", moves, final)


# ---------------------------------------------------------------------------
# Bounded oracles
# ---------------------------------------------------------------------------


def equiv_bounded(t1: Transducer, t2: Transducer, max_len: int, cap: int = BOUND_CAP):
    """Pointwise agreement on every word of length at most max_len.

    Returns (verdict, witness_word_or_None).
    """
    if max_len > cap:
        raise ValueError(f"bound {max_len} exceeds the cap {cap}")
    if t1.alphabet != t2.alphabet:
        raise ValueError("transducers must share an alphabet")
    for w in words_upto(t1.alphabet, max_len):
        if eval(t1, w) != eval(t2, w):
            return False, w
    return True, None


@dataclass(frozen=True)
class BoundedAxiomCheck:
    index: int
    name: str
    equational: bool
    passed: bool
    witness: Optional[tuple] = None  # (operand indices..., word)


@dataclass(frozen=True)
class BoundedAxiomReport:
    max_len: int
    results: tuple[BoundedAxiomCheck, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def equational_passed(self) -> bool:
        return all(r.passed for r in self.results if r.equational)

    def result(self, index: int) -> BoundedAxiomCheck:
        return self.results[index - 1]


def axioms_bounded(ts: Sequence[Transducer], max_len: int, cap: int = BOUND_CAP) -> BoundedAxiomReport:
    """Instantiate the ten representability (quasi)equations over all tuples
    from the given machines and compare both sides word by word."""
    if max_len > cap:
        raise ValueError(f"bound {max_len} exceeds the cap {cap}")
    if not ts:
        raise ValueError("at least one transducer is required")
    al = ts[0].alphabet
    if any(t.alphabet != al for t in ts):
        raise ValueError("transducers must share an alphabet")
    ident = identity_transducer(al)
    A, R, D, comp, pref = antidomain, range_transducer, domain_transducer, compose, pref_union
    idxs = range(len(ts))

    def eq(x: Transducer, y: Transducer):
        return equiv_bounded(x, y, max_len, cap)

    results = []

    def run(index: int, name: str, equational: bool, tuples, check) -> None:
        for tup in tuples:
            outcome, word = check(*[ts[i] for i in tup])
            if not outcome:
                results.append(BoundedAxiomCheck(index, name, equational, False, tuple(tup) + (word,)))
                return
        results.append(BoundedAxiomCheck(index, name, equational, True))

    def quasi(premises, conclusion):
        """Bounded quasiequation: conclusion checked when all premises hold."""
        for lhs, rhs in premises:
            ok, _ = eq(lhs, rhs)
            if not ok:
                return True, None
        return eq(*conclusion)

    pairs = list(itertools.product(idxs, repeat=2))
    triples = list(itertools.product(idxs, repeat=3))
    singles = [(i,) for i in idxs]

    run(1, "compose_associative", True, triples,
        lambda a, b, c: eq(comp(a, comp(b, c)), comp(comp(a, b), c)))
    run(2, "antidomain_compose_constant", True, pairs,
        lambda a, b: eq(comp(A(a), a), comp(A(b), b)))
    run(3, "left_identity", True, singles,
        lambda a: eq(comp(ident, a), a))
    run(4, "antidomain_exchange", True, pairs,
        lambda a, b: eq(comp(a, A(b)), comp(A(comp(a, b)), a)))
    run(5, "domain_partition_cancel", False, triples,
        lambda a, b, c: quasi(
            [(comp(D(a), b), comp(D(a), c)), (comp(A(a), b), comp(A(a), c))],
            (b, c)))
    run(6, "range_is_domain_element", True, singles,
        lambda a: eq(D(R(a)), R(a)))
    run(7, "compose_own_range", True, singles,
        lambda a: eq(comp(a, R(a)), a))
    run(8, "range_left_cancel", False, triples,
        lambda a, b, c: quasi(
            [(comp(a, b), comp(a, c))],
            (comp(R(a), b), comp(R(a), c))))
    run(9, "pref_restricted_to_domain", True, pairs,
        lambda a, b: eq(comp(D(a), pref(a, b)), a))
    run(10, "pref_outside_domain", True, pairs,
        lambda a, b: eq(comp(A(a), pref(a, b)), comp(A(a), b)))

    return BoundedAxiomReport(max_len=max_len, results=tuple(results))
