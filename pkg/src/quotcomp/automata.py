"""Complete DFAs: derivative exploration, minimization, products and reversal."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Optional

from .regex import Alphabet, Regex, derive_letter

DEFAULT_MAX_STATES = 1_000_000

BOOLEAN_OPS: dict[str, Callable[[bool, bool], bool]] = {
    "union": lambda p, q: p or q,
    "intersection": lambda p, q: p and q,
    "difference": lambda p, q: p and not q,
    "symdiff": lambda p, q: p != q,
}


class CapExceeded(RuntimeError):
    """Raised when a construction generates more states than allowed."""

    def __init__(self, limit: int, what: str = "states"):
        super().__init__(f"more than {limit} {what} generated")
        self.limit = limit


class DfaFormatError(ValueError):
    pass


@dataclass(frozen=True)
class ExplorationConfig:
    max_states: int = DEFAULT_MAX_STATES

    def __post_init__(self):
        if self.max_states < 1:
            raise ValueError("max_states must be at least 1")


@dataclass(frozen=True)
class Dfa:
    """A complete DFA whose states ``0 .. state_count-1`` are all reachable.

    ``transitions[q][i]`` is the target of state ``q`` on the i-th letter of
    ``alphabet``.  ``labels`` optionally records the derivative behind each
    state; it does not take part in equality.
    """

    alphabet: Alphabet
    transitions: tuple[tuple[int, ...], ...]
    initial: int
    accepting: frozenset[int]
    labels: Optional[tuple[Regex, ...]] = field(default=None, compare=False)

    def __post_init__(self):
        n = len(self.transitions)
        if n == 0:
            raise ValueError("a DFA needs at least one state")
        width = len(self.alphabet)
        for q, row in enumerate(self.transitions):
            if len(row) != width:
                raise ValueError(f"state {q} has {len(row)} transitions, expected {width}")
            for t in row:
                if not 0 <= t < n:
                    raise ValueError(f"state {q} has a transition to unknown state {t}")
        if not 0 <= self.initial < n:
            raise ValueError(f"initial state {self.initial} out of range")
        if any(not 0 <= q < n for q in self.accepting):
            raise ValueError("accepting state out of range")
        if self.labels is not None and len(self.labels) != n:
            raise ValueError("one label per state required")
        if len(_reachable(self.transitions, self.initial)) != n:
            raise ValueError("every state must be reachable from the initial state")

    @property
    def state_count(self) -> int:
        return len(self.transitions)

    def step(self, q: int, a: str) -> int:
        return self.transitions[q][self.alphabet.index(a)]

    def run(self, word: str, start: Optional[int] = None) -> int:
        q = self.initial if start is None else start
        for a in word:
            q = self.transitions[q][self.alphabet.index(a)]
        return q

    def accepts(self, word: str) -> bool:
        return self.run(word) in self.accepting


def _reachable(transitions, initial) -> list[int]:
    seen = {initial}
    order = [initial]
    i = 0
    while i < len(order):
        for t in transitions[order[i]]:
            if t not in seen:
                seen.add(t)
                order.append(t)
        i += 1
    return order


def from_table(
    alphabet: Alphabet,
    transitions,
    initial: int,
    accepting,
    labels=None,
) -> Dfa:
    """Build a DFA from a possibly non-reachable table, keeping the reachable part.

    States are renumbered breadth-first from ``initial``.
    """
    order = _reachable(transitions, initial)
    new = {q: i for i, q in enumerate(order)}
    rows = tuple(tuple(new[t] for t in transitions[q]) for q in order)
    acc = frozenset(new[q] for q in order if q in set(accepting))
    labs = tuple(labels[q] for q in order) if labels is not None else None
    return Dfa(alphabet, rows, 0, acc, labs)


def build_dfa(r: Regex, alphabet: Alphabet, cfg: ExplorationConfig = ExplorationConfig()) -> Dfa:
    """Quotient automaton of ``r`` with one state per dissimilar derivative.

    Exploration is breadth-first with letters in alphabet order, so state 0
    is ``r`` itself.  The result is complete but not necessarily minimal.
    """
    missing = r.letters() - set(alphabet.letters)
    if missing:
        raise ValueError(f"letters {sorted(missing)} not in alphabet {alphabet.text!r}")
    memo: dict = {}
    index = {r: 0}
    labels = [r]
    rows: list[tuple[int, ...]] = []
    i = 0
    while i < len(labels):
        row = []
        for a in alphabet:
            d = derive_letter(labels[i], a, memo)
            j = index.get(d)
            if j is None:
                if len(labels) >= cfg.max_states:
                    raise CapExceeded(cfg.max_states, "dissimilar derivatives")
                j = index[d] = len(labels)
                labels.append(d)
            row.append(j)
        rows.append(tuple(row))
        i += 1
    accepting = frozenset(q for q, lab in enumerate(labels) if lab.nullable)
    return Dfa(alphabet, tuple(rows), 0, accepting, tuple(labels))


def minimize(d: Dfa) -> Dfa:
    """Minimal DFA by iterated partition refinement.

    States of the result are numbered breadth-first from the initial state,
    letters in alphabet order, so equal languages give equal DFAs.
    """
    n = d.state_count
    block = [1 if q in d.accepting else 0 for q in range(n)]
    count = len(set(block))
    while True:
        sigs: dict = {}
        new_block = []
        for q in range(n):
            sig = (block[q], tuple(block[t] for t in d.transitions[q]))
            new_block.append(sigs.setdefault(sig, len(sigs)))
        if len(sigs) == count:
            break
        block, count = new_block, len(sigs)
    reps: dict[int, int] = {}
    for q in range(n):
        reps.setdefault(block[q], q)
    rows = {b: tuple(block[t] for t in d.transitions[q]) for b, q in reps.items()}
    acc = {block[q] for q in d.accepting}
    labels = None
    if d.labels is not None:
        labels = {b: d.labels[q] for b, q in reps.items()}
    return from_table(d.alphabet, rows, block[d.initial], acc, labels)


def kappa(r: Regex, alphabet: Alphabet, cfg: ExplorationConfig = ExplorationConfig()) -> int:
    """Quotient complexity of the language of ``r`` over ``alphabet``."""
    return minimize(build_dfa(r, alphabet, cfg)).state_count


def _check_same_alphabet(d1: Dfa, d2: Dfa):
    if d1.alphabet != d2.alphabet:
        raise ValueError(f"alphabets differ: {d1.alphabet.text!r} vs {d2.alphabet.text!r}")


def product_dfa(dK: Dfa, dL: Dfa, op: str) -> Dfa:
    """Reachable pair automaton for the boolean connective ``op``."""
    _check_same_alphabet(dK, dL)
    accept = BOOLEAN_OPS[op]
    start = (dK.initial, dL.initial)
    index = {start: 0}
    pairs = [start]
    rows = []
    i = 0
    while i < len(pairs):
        p, q = pairs[i]
        row = []
        for tp, tq in zip(dK.transitions[p], dL.transitions[q]):
            j = index.get((tp, tq))
            if j is None:
                j = index[(tp, tq)] = len(pairs)
                pairs.append((tp, tq))
            row.append(j)
        rows.append(tuple(row))
        i += 1
    acc = frozenset(
        i for i, (p, q) in enumerate(pairs) if accept(p in dK.accepting, q in dL.accepting)
    )
    return Dfa(dK.alphabet, tuple(rows), 0, acc)


def complement_dfa(d: Dfa) -> Dfa:
    acc = frozenset(range(d.state_count)) - d.accepting
    return Dfa(d.alphabet, d.transitions, d.initial, acc)


def _determinize(alphabet, start, successors, is_accepting, cfg) -> Dfa:
    """Subset construction helper; ``successors(S, i)`` maps a state set on letter i."""
    index = {start: 0}
    sets = [start]
    rows = []
    i = 0
    while i < len(sets):
        row = []
        for li in range(len(alphabet)):
            nxt = successors(sets[i], li)
            j = index.get(nxt)
            if j is None:
                if len(sets) >= cfg.max_states:
                    raise CapExceeded(cfg.max_states, "subsets")
                j = index[nxt] = len(sets)
                sets.append(nxt)
            row.append(j)
        rows.append(tuple(row))
        i += 1
    acc = frozenset(i for i, s in enumerate(sets) if is_accepting(s))
    return Dfa(alphabet, tuple(rows), 0, acc)


def reverse(d: Dfa, cfg: ExplorationConfig = ExplorationConfig()) -> Dfa:
    """Minimal DFA of the reversed language.

    The reversed transition relation is determinized starting from the set
    of accepting states; the empty subset serves as the sink.
    """
    preds = [[[] for _ in d.alphabet] for _ in range(d.state_count)]
    for p, row in enumerate(d.transitions):
        for li, t in enumerate(row):
            preds[t][li].append(p)

    def successors(subset, li):
        out = set()
        for q in subset:
            out.update(preds[q][li])
        return frozenset(out)

    start = frozenset(d.accepting)
    rev = _determinize(d.alphabet, start, successors, lambda s: d.initial in s, cfg)
    return minimize(rev)


def concat_dfa(dK: Dfa, dL: Dfa, cfg: ExplorationConfig = ExplorationConfig()) -> Dfa:
    """Minimal DFA of the product (concatenation) of the two languages.

    States are pairs of a state of ``dK`` and a set of states of ``dL``.
    """
    _check_same_alphabet(dK, dL)

    def close(p, subset):
        if p in dK.accepting:
            subset = subset | {dL.initial}
        return (p, frozenset(subset))

    def successors(state, li):
        p, subset = state
        return close(dK.transitions[p][li], {dL.transitions[q][li] for q in subset})

    start = close(dK.initial, frozenset())
    out = _determinize(
        dK.alphabet, start, successors, lambda s: bool(s[1] & dL.accepting), cfg
    )
    return minimize(out)


def star_dfa(d: Dfa, cfg: ExplorationConfig = ExplorationConfig()) -> Dfa:
    """Minimal DFA of the Kleene star of the language.

    Subsets of states of ``d``; entering an accepting state also starts a
    new factor at the initial state.  A separate start state accepts ε.
    """

    def close(subset):
        if subset & d.accepting:
            subset = subset | {d.initial}
        return frozenset(subset)

    def successors(state, li):
        subset = state[1]
        return ("run", close({d.transitions[q][li] for q in subset}))

    start = ("start", frozenset({d.initial}))
    out = _determinize(
        d.alphabet,
        start,
        successors,
        lambda s: s[0] == "start" or bool(s[1] & d.accepting),
        cfg,
    )
    return minimize(out)


def equivalent(d1: Dfa, d2: Dfa) -> bool:
    """Language equality, by comparing canonical minimal forms."""
    _check_same_alphabet(d1, d2)
    return minimize(d1) == minimize(d2)


def is_empty(d: Dfa) -> bool:
    return not d.accepting


# -- text format -----------------------------------------------------------------


def dumps(d: Dfa) -> str:
    lines = [
        f"dfa {d.state_count} {d.alphabet.text}",
        f"initial {d.initial}",
        " ".join(["accepting"] + [str(q) for q in sorted(d.accepting)]),
    ]
    for q, row in enumerate(d.transitions):
        lines.append(f"{q}: " + " ".join(str(t) for t in row))
    return "\n".join(lines) + "\n"


def loads(text: str) -> Dfa:
    """Read the ``dfa <n> <letters>`` text format; validates totality and reachability."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if len(lines) < 3:
        raise DfaFormatError("expected header, initial and accepting lines")
    head = lines[0].split()
    if len(head) != 3 or head[0] != "dfa":
        raise DfaFormatError(f"bad header {lines[0]!r}")
    try:
        n = int(head[1])
        alphabet = Alphabet(head[2])
    except ValueError as exc:
        raise DfaFormatError(f"bad header {lines[0]!r}: {exc}") from exc
    init = lines[1].split()
    if len(init) != 2 or init[0] != "initial":
        raise DfaFormatError(f"bad initial line {lines[1]!r}")
    acc = lines[2].split()
    if acc[0] != "accepting":
        raise DfaFormatError(f"bad accepting line {lines[2]!r}")
    rows: dict[int, tuple[int, ...]] = {}
    for ln in lines[3:]:
        src, sep, rest = ln.partition(":")
        if not sep:
            raise DfaFormatError(f"bad transition line {ln!r}")
        try:
            q = int(src)
            targets = tuple(int(t) for t in rest.split())
        except ValueError as exc:
            raise DfaFormatError(f"bad transition line {ln!r}") from exc
        if q in rows:
            raise DfaFormatError(f"state {q} listed twice")
        rows[q] = targets
    if sorted(rows) != list(range(n)):
        raise DfaFormatError(f"transition lines must cover states 0..{n - 1} exactly")
    try:
        return Dfa(
            alphabet,
            tuple(rows[q] for q in range(n)),
            int(init[1]),
            frozenset(int(q) for q in acc[1:]),
        )
    except ValueError as exc:
        raise DfaFormatError(str(exc)) from exc
