"""Structural measurements on minimal DFAs (i.e. on the quotients of a language)."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

from .automata import Dfa


class SpecialQuotients(NamedTuple):
    empty: bool
    universal: bool
    epsilon: bool
    sigma_plus: bool


@dataclass(frozen=True)
class ComplexityProfile:
    kappa: int
    accepting_count: int
    has_empty_quotient: bool
    has_universal_quotient: bool
    has_epsilon_quotient: bool
    has_sigma_plus_quotient: bool
    ur_tree: dict = field(hash=False)
    ur_accepting_count: int
    ur_rejecting_count: int
    is_suffix_free: bool
    is_finite: bool
    is_empty_language: bool
    # whether the language itself contains the empty word
    initial_accepting: bool = False

    @property
    def initial_is_only_accepting(self) -> bool:
        """True when the language itself is its only accepting quotient."""
        return self.accepting_count == 1 and self.initial_accepting

    @property
    def accepting_other_than_initial(self) -> int:
        return self.accepting_count - (1 if self.initial_accepting else 0)

    @property
    def ur_count(self) -> int:
        return len(self.ur_tree)


@dataclass(frozen=True)
class PairProfile:
    r: int


def unique_reachable(d: Dfa) -> dict[int, str]:
    """States reached by exactly one word, mapped to that word.

    The result is a tree rooted at the initial state, or empty when the
    initial state has an incoming transition.
    """
    incoming: dict[int, list[tuple[int, str]]] = {q: [] for q in range(d.state_count)}
    for p, row in enumerate(d.transitions):
        for a, t in zip(d.alphabet, row):
            incoming[t].append((p, a))
    if incoming[d.initial]:
        return {}
    tree = {d.initial: ""}
    frontier = [d.initial]
    while frontier:
        p = frontier.pop()
        for a, t in zip(d.alphabet, d.transitions[p]):
            if t != d.initial and len(incoming[t]) == 1:
                tree[t] = tree[p] + a
                frontier.append(t)
    return dict(sorted(tree.items()))


def shared_ur_count(ur_k: dict, ur_l: dict) -> PairProfile:
    """Number of words reaching a uniquely reachable quotient in both languages."""
    return PairProfile(len(set(ur_k.values()) & set(ur_l.values())))


def _sink_states(d: Dfa, accepting: bool) -> set[int]:
    return {
        q
        for q in range(d.state_count)
        if (q in d.accepting) == accepting and all(t == q for t in d.transitions[q])
    }


def special_quotients(d: Dfa) -> SpecialQuotients:
    """Which of the quotients ∅, Σ*, ε, Σ⁺ occur (exact on minimal DFAs)."""
    empties = _sink_states(d, accepting=False)
    universals = _sink_states(d, accepting=True)
    eps = any(
        q in d.accepting and all(t in empties for t in d.transitions[q])
        for q in range(d.state_count)
    )
    plus = any(
        q not in d.accepting and all(t in universals for t in d.transitions[q])
        for q in range(d.state_count)
    )
    return SpecialQuotients(bool(empties), bool(universals), eps, plus)


def is_suffix_free(d: Dfa) -> bool:
    """No word of the language is a proper suffix of another one.

    Every state ``q`` entered by some transition must satisfy
    L(q) ∩ L = ∅; all such pairs are explored together.
    """
    targets = {t for row in d.transitions for t in row}
    start = [(q, d.initial) for q in sorted(targets)]
    seen = set(start)
    stack = list(start)
    while stack:
        p, q = stack.pop()
        if p in d.accepting and q in d.accepting:
            return False
        for tp, tq in zip(d.transitions[p], d.transitions[q]):
            if (tp, tq) not in seen:
                seen.add((tp, tq))
                stack.append((tp, tq))
    return True


def coreachable(d: Dfa) -> set[int]:
    """States from which some accepting state can be reached."""
    preds: dict[int, set[int]] = {q: set() for q in range(d.state_count)}
    for p, row in enumerate(d.transitions):
        for t in row:
            preds[t].add(p)
    live = set(d.accepting)
    stack = list(live)
    while stack:
        q = stack.pop()
        for p in preds[q]:
            if p not in live:
                live.add(p)
                stack.append(p)
    return live


def is_finite(d: Dfa) -> bool:
    """True iff the live part of the automaton has no cycle."""
    live = coreachable(d)
    indeg = {q: 0 for q in live}
    for q in live:
        for t in d.transitions[q]:
            if t in live:
                indeg[t] += 1
    ready = [q for q, k in indeg.items() if k == 0]
    removed = 0
    while ready:
        q = ready.pop()
        removed += 1
        for t in d.transitions[q]:
            if t in live:
                indeg[t] -= 1
                if indeg[t] == 0:
                    ready.append(t)
    return removed == len(live)


def profile(d: Dfa) -> ComplexityProfile:
    """Measure a minimal DFA."""
    ur = unique_reachable(d)
    ur_acc = sum(1 for q in ur if q in d.accepting)
    special = special_quotients(d)
    return ComplexityProfile(
        kappa=d.state_count,
        accepting_count=len(d.accepting),
        has_empty_quotient=special.empty,
        has_universal_quotient=special.universal,
        has_epsilon_quotient=special.epsilon,
        has_sigma_plus_quotient=special.sigma_plus,
        ur_tree=ur,
        ur_accepting_count=ur_acc,
        ur_rejecting_count=len(ur) - ur_acc,
        is_suffix_free=is_suffix_free(d),
        is_finite=is_finite(d),
        is_empty_language=not d.accepting,
        initial_accepting=d.initial in d.accepting,
    )


def profile_dict(p: ComplexityProfile) -> dict:
    """JSON-ready form; field names follow ComplexityProfile."""
    return {
        "kappa": p.kappa,
        "accepting_count": p.accepting_count,
        "has_empty_quotient": p.has_empty_quotient,
        "has_universal_quotient": p.has_universal_quotient,
        "has_epsilon_quotient": p.has_epsilon_quotient,
        "has_sigma_plus_quotient": p.has_sigma_plus_quotient,
        "ur_tree": {str(q): w for q, w in p.ur_tree.items()},
        "ur_accepting_count": p.ur_accepting_count,
        "ur_rejecting_count": p.ur_rejecting_count,
        "is_suffix_free": p.is_suffix_free,
        "is_finite": p.is_finite,
        "is_empty_language": p.is_empty_language,
    }
