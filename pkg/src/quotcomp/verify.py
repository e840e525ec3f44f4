"""Measured complexity against the bounds: single checks and seeded campaigns."""

from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional, Union

from . import regex as rx
from .analysis import ComplexityProfile, profile, profile_dict, shared_ur_count, special_quotients
from .automata import (
    BOOLEAN_OPS,
    Dfa,
    ExplorationConfig,
    build_dfa,
    complement_dfa,
    concat_dfa,
    from_table,
    minimize,
    product_dfa,
    reverse,
    star_dfa,
)
from .bounds import BoundReport, select_bounds
from .regex import Alphabet, Regex
from .witnesses import WitnessCase

Operand = Union[Regex, Dfa]

BINARY_OPS = ("union", "intersection", "difference", "symdiff", "product")
UNARY_OPS = ("star", "reversal", "complement")
OPERATIONS = BINARY_OPS + UNARY_OPS

_REGEX_OPS = {
    "union": rx.union,
    "intersection": rx.intersect,
    "difference": rx.diff,
    "symdiff": rx.symdiff,
    "product": rx.concat,
    "star": rx.star,
    "complement": rx.complement,
}


@dataclass(frozen=True)
class BoundCheck:
    bound_name: str
    value: Optional[int]
    applicable: bool
    satisfied: Optional[bool]
    tight: Optional[bool]


@dataclass
class VerifyReport:
    operands: list[str]
    alphabet: str
    operation: str
    measured_kappa: int
    operand_profiles: list[ComplexityProfile]
    bound_reports: list[BoundCheck]
    # kappa from the independent automaton construction, when one was run
    second_path_kappa: Optional[int] = None
    # special quotients of the computed reversal, for auditing
    result_quotients: Optional[dict] = None
    notes: list[str] = field(default_factory=list)

    @property
    def violations(self) -> list[BoundCheck]:
        return [b for b in self.bound_reports if b.applicable and not b.satisfied]

    @property
    def paths_agree(self) -> bool:
        return self.second_path_kappa is None or self.second_path_kappa == self.measured_kappa

    def to_dict(self) -> dict:
        return {
            "operands": self.operands,
            "alphabet": self.alphabet,
            "operation": self.operation,
            "measured_kappa": self.measured_kappa,
            "operand_profiles": [profile_dict(p) for p in self.operand_profiles],
            "bound_reports": [
                {
                    "bound_name": b.bound_name,
                    "value": b.value,
                    "applicable": b.applicable,
                    "satisfied": b.satisfied,
                    "tight": b.tight,
                }
                for b in self.bound_reports
            ],
            "second_path_kappa": self.second_path_kappa,
            "result_quotients": self.result_quotients,
            "notes": self.notes,
        }


def check_bounds(measured: int, reports: list[BoundReport]) -> list[BoundCheck]:
    out = []
    for rep in reports:
        if rep.applicable:
            out.append(
                BoundCheck(rep.bound_name, rep.value, True, measured <= rep.value, measured == rep.value)
            )
        else:
            out.append(BoundCheck(rep.bound_name, None, False, None, None))
    return out


def operate(op: str, k: Regex, l: Optional[Regex] = None) -> Regex:
    """Expression for the operated language (reversal has none)."""
    if op in BINARY_OPS:
        return _REGEX_OPS[op](k, l)
    return _REGEX_OPS[op](k)


def operate_dfa(op: str, dk: Dfa, dl: Optional[Dfa] = None, cfg=ExplorationConfig()) -> Dfa:
    """Minimal DFA of the operated language, built from operand automata only."""
    if op in BOOLEAN_OPS:
        return minimize(product_dfa(dk, dl, op))
    if op == "product":
        return concat_dfa(dk, dl, cfg)
    if op == "star":
        return star_dfa(dk, cfg)
    if op == "reversal":
        return reverse(dk, cfg)
    if op == "complement":
        return minimize(complement_dfa(dk))
    raise ValueError(f"unknown operation {op!r}")


class _Measured:
    """An operand with its minimal DFA and profile, computed once."""

    def __init__(self, operand: Operand, alphabet: Alphabet, cfg: ExplorationConfig):
        self.regex = operand if isinstance(operand, Regex) else None
        if self.regex is not None:
            self.dfa = minimize(build_dfa(operand, alphabet, cfg))
            self.text = rx.to_text(operand)
        else:
            if operand.alphabet != alphabet:
                raise ValueError("DFA operand alphabet differs from the declared alphabet")
            self.dfa = minimize(operand)
            self.text = "<dfa with %d states>" % operand.state_count
        self.profile = profile(self.dfa)


def _verify_measured(op, mk: _Measured, ml: Optional[_Measured], alphabet, cfg) -> VerifyReport:
    binary = op in BINARY_OPS
    second = operate_dfa(op, mk.dfa, ml.dfa if binary else None, cfg).state_count
    if op != "reversal" and mk.regex is not None and (not binary or ml.regex is not None):
        expr = operate(op, mk.regex, ml.regex if binary else None)
        measured = minimize(build_dfa(expr, alphabet, cfg)).state_count
    else:
        measured, second = second, None
    pair = shared_ur_count(mk.profile.ur_tree, ml.profile.ur_tree) if binary else None
    reports = select_bounds(op, mk.profile, ml.profile if binary else None, pair)
    report = VerifyReport(
        operands=[mk.text] + ([ml.text] if binary else []),
        alphabet=alphabet.text,
        operation=op,
        measured_kappa=measured,
        operand_profiles=[mk.profile] + ([ml.profile] if binary else []),
        bound_reports=check_bounds(measured, reports),
        second_path_kappa=second,
    )
    if op == "reversal":
        sq = special_quotients(reverse(mk.dfa, cfg))
        report.result_quotients = sq._asdict()
    if not report.paths_agree:
        report.notes.append(
            f"derivative path gives {measured}, automaton path gives {report.second_path_kappa}"
        )
    return report


def verify_operation(
    k: Operand,
    l: Optional[Operand],
    op: str,
    alphabet: Alphabet,
    cfg: ExplorationConfig = ExplorationConfig(),
) -> VerifyReport:
    """Measure ``op`` applied to the operands and check every applicable bound.

    Regex operands go through derivatives, cross-checked by the automaton
    construction; DFA operands use the automaton construction alone.
    """
    if op not in OPERATIONS:
        raise ValueError(f"unknown operation {op!r}; expected one of {', '.join(OPERATIONS)}")
    binary = op in BINARY_OPS
    if binary and l is None:
        raise ValueError(f"{op} needs two operands")
    if not binary and l is not None:
        raise ValueError(f"{op} takes one operand")
    mk = _Measured(k, alphabet, cfg)
    ml = _Measured(l, alphabet, cfg) if binary else None
    return _verify_measured(op, mk, ml, alphabet, cfg)


# -- derivative identities ---------------------------------------------------------


def _splits(word: str):
    return [(word[:i], word[i:]) for i in range(len(word) + 1)]


def theorem1_product_rhs(k: Regex, l: Regex, word: str) -> Regex:
    """K_w L ∪ K^ε L_w ∪ (union over w = uv, u, v non-empty, of K_u^ε L_v)."""
    if not word:
        return rx.concat(k, l)
    memo: dict = {}
    terms = [
        rx.concat(rx.derive_word(k, word, memo), l),
        rx.concat(rx.epsilon_of(k), rx.derive_word(l, word, memo)),
    ]
    for u, v in _splits(word)[1:-1]:
        terms.append(rx.concat(rx.epsilon_of(rx.derive_word(k, u, memo)), rx.derive_word(l, v, memo)))
    return rx.union(*terms)


def theorem1_star_rhs(l: Regex, word: str) -> Regex:
    """(union over all w = uv of ((L*)_u)^ε L_v) · L*, for non-empty w."""
    if not word:
        raise ValueError("the star identity is stated for non-empty words")
    memo: dict = {}
    ls = rx.star(l)
    terms = [
        rx.concat(rx.epsilon_of(rx.derive_word(ls, u, memo)), rx.derive_word(l, v, memo))
        for u, v in _splits(word)
    ]
    return rx.concat(rx.union(*terms), ls)


# -- random inputs -------------------------------------------------------------------

# node kind -> weight (percent).  Letters fill exactly the leaves; the
# operator weights are used relative to each other at inner nodes.
NODE_WEIGHTS = (
    ("letter", 40),
    ("union", 20),
    ("concat", 20),
    ("star", 10),
    ("complement", 2.5),
    ("intersect", 2.5),
    ("diff", 2.5),
    ("symdiff", 2.5),
)
_UNARY = {"star": rx.STAR_K, "complement": rx.COMPLEMENT_K}
_BINARY = {
    "union": rx.UNION_K,
    "concat": rx.CONCAT_K,
    "intersect": rx.INTERSECT_K,
    "diff": rx.DIFF_K,
    "symdiff": rx.SYMDIFF_K,
}
_ALL_OPS = [(k, w) for k, w in NODE_WEIGHTS if k != "letter"]
_UNARY_OPS = [(k, w) for k, w in _ALL_OPS if k in _UNARY]


def random_regex(rng: random.Random, size: int, alphabet: Alphabet) -> Regex:
    """Normal form of a random tree with exactly ``size`` nodes before normalization.

    Inner node kinds are drawn by NODE_WEIGHTS; normalization can only
    shrink the tree.
    """
    if size < 1:
        raise ValueError("size must be at least 1")
    return rx.normalize(_grow(rng, size, alphabet.letters))


def _grow(rng, budget, letters):
    if budget == 1:
        return rx.letter(rng.choice(letters))
    table = _UNARY_OPS if budget == 2 else _ALL_OPS
    kind = rng.choices([k for k, _ in table], [w for _, w in table])[0]
    if kind in _UNARY:
        return rx.Regex(_UNARY[kind], (_grow(rng, budget - 1, letters),))
    left = rng.randint(1, budget - 2)
    return rx.Regex(
        _BINARY[kind],
        (_grow(rng, left, letters), _grow(rng, budget - 1 - left, letters)),
    )


def random_dfa(rng: random.Random, n: int, alphabet: Alphabet, plant: bool = False) -> Dfa:
    """Reachable part of a uniformly random complete DFA on ``n`` states.

    With ``plant``, each of the special quotients ∅, Σ*, ε, Σ⁺ is wired into
    the top states with probability 1/2 (as room allows) before the rest of
    the table is drawn.
    """
    rows: list = [None] * n
    accepting = set()
    free = list(range(n - 1, 0, -1))
    planted = {}
    if plant:
        for kind in ("empty", "universal", "epsilon", "sigma_plus"):
            if free and rng.random() < 0.5:
                planted[kind] = free.pop(0)
        sinks = {"epsilon": "empty", "sigma_plus": "universal"}
        for kind, target_kind in sinks.items():
            if kind in planted and target_kind not in planted:
                del planted[kind]
        for kind, q in planted.items():
            if kind in ("empty", "universal"):
                rows[q] = [q] * len(alphabet)
            else:
                rows[q] = [planted[sinks[kind]]] * len(alphabet)
            if kind in ("universal", "epsilon"):
                accepting.add(q)
    for q in range(n):
        if rows[q] is None:
            rows[q] = [rng.randrange(n) for _ in alphabet]
            if rng.random() < 0.5:
                accepting.add(q)
    return from_table(alphabet, rows, 0, accepting)


def sample_rng(seed: int, index: int) -> random.Random:
    """Independent generator for sample ``index`` of a campaign seeded with ``seed``."""
    return random.Random(f"{seed}:{index}")


# -- campaigns -------------------------------------------------------------------------


@dataclass(frozen=True)
class CampaignConfig:
    seed: int = 1
    samples: int = 100
    max_regex_size: int = 6
    alphabet: Alphabet = Alphabet("ab")
    cap: ExplorationConfig = ExplorationConfig()
    max_word_length: int = 3
    fail_fast: bool = True
    # plant one fake violation to exercise the failure path
    inject_failure: bool = False

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError("samples must be at least 1")
        if self.max_regex_size < 1:
            raise ValueError("max_regex_size must be at least 1")


@dataclass
class Failure:
    seed: int
    sample: int
    check: str
    inputs: list[str]
    detail: str

    def __str__(self):
        return (
            f"[seed {self.seed} sample {self.sample}] {self.check}: {self.detail} "
            f"(inputs: {', '.join(self.inputs)})"
        )


@dataclass
class CampaignSummary:
    seed: int
    samples: int
    checks: Counter = field(default_factory=Counter)
    failures: list[Failure] = field(default_factory=list)
    bound_applicable: Counter = field(default_factory=Counter)
    bound_tight: Counter = field(default_factory=Counter)

    @property
    def failure_count(self) -> int:
        return len(self.failures)

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "samples": self.samples,
            "failure_count": self.failure_count,
            "failures": [vars(f) for f in self.failures],
            "checks": dict(sorted(self.checks.items())),
            "bounds": {
                name: {"applicable": self.bound_applicable[name], "tight": self.bound_tight[name]}
                for name in sorted(self.bound_applicable)
            },
        }


class CampaignFailure(AssertionError):
    def __init__(self, failure: Failure, summary: CampaignSummary):
        super().__init__(str(failure))
        self.failure = failure
        self.summary = summary


class _Sample:
    def __init__(self, cfg: CampaignConfig, summary: CampaignSummary, index: int, inputs):
        self.cfg = cfg
        self.summary = summary
        self.index = index
        self.inputs = inputs
        self._min: dict[Regex, Dfa] = {}

    def check(self, name: str, ok: bool, detail: str = ""):
        self.summary.checks[name] += 1
        if ok:
            return
        failure = Failure(self.cfg.seed, self.index, name, list(self.inputs), detail)
        self.summary.failures.append(failure)
        if self.cfg.fail_fast:
            raise CampaignFailure(failure, self.summary)

    def minimal(self, r: Regex) -> Dfa:
        d = self._min.get(r)
        if d is None:
            d = self._min[r] = minimize(build_dfa(r, self.cfg.alphabet, self.cfg.cap))
        return d

    def same_language(self, r1: Regex, r2: Regex) -> bool:
        return r1 == r2 or self.minimal(r1) == self.minimal(r2)


def _words(alphabet: Alphabet, max_len: int):
    for n in range(max_len + 1):
        for t in itertools.product(alphabet.letters, repeat=n):
            yield "".join(t)


def _record(sample: _Sample, report: VerifyReport):
    s = sample.summary
    for b in report.bound_reports:
        if not b.applicable:
            continue
        s.bound_applicable[b.bound_name] += 1
        s.bound_tight[b.bound_name] += bool(b.tight)
        sample.check(
            f"dominance {b.bound_name}",
            b.satisfied,
            f"{report.operation}: measured {report.measured_kappa} > bound {b.value}",
        )
    if report.second_path_kappa is not None:
        sample.check(
            f"two-path {report.operation}",
            report.paths_agree,
            "; ".join(report.notes),
        )


def _run_sample(cfg: CampaignConfig, summary: CampaignSummary, index: int):
    rng = sample_rng(cfg.seed, index)
    alphabet = cfg.alphabet
    k = random_regex(rng, rng.randint(1, cfg.max_regex_size), alphabet)
    l = random_regex(rng, rng.randint(1, cfg.max_regex_size), alphabet)
    sample = _Sample(cfg, summary, index, [rx.to_text(k), rx.to_text(l)])
    if cfg.inject_failure and index == 0:
        sample.check("injected self-test failure", False, "planted by inject_failure")

    mk = _Measured(k, alphabet, cfg.cap)
    ml = _Measured(l, alphabet, cfg.cap)
    for op in BINARY_OPS:
        _record(sample, _verify_measured(op, mk, ml, alphabet, cfg.cap))
    for m in (mk, ml):
        for op in UNARY_OPS:
            report = _verify_measured(op, m, None, alphabet, cfg.cap)
            _record(sample, report)
            if op == "star" and m.profile.kappa > 1 and m.profile.initial_is_only_accepting:
                sample.check(
                    "star equality when L is its only accepting quotient",
                    report.measured_kappa == m.profile.kappa,
                    f"kappa(L*) = {report.measured_kappa}, kappa(L) = {m.profile.kappa}",
                )
            if op == "complement":
                sample.check(
                    "complement keeps kappa",
                    report.measured_kappa == m.profile.kappa,
                    f"{report.measured_kappa} != {m.profile.kappa}",
                )
        double = sample.minimal(rx.complement(rx.complement(m.regex))).state_count
        sample.check("double complement keeps kappa", double == m.profile.kappa)

    _check_identities(sample, k, l)


def _check_identities(sample: _Sample, k: Regex, l: Regex):
    cfg = sample.cfg
    memo: dict = {}
    not_k = rx.complement(k)
    combos = {op: _REGEX_OPS[op](k, l) for op in BOOLEAN_OPS}
    kl = rx.concat(k, l)
    ks = rx.star(k)
    for w in _words(cfg.alphabet, cfg.max_word_length):
        kw = rx.derive_word(k, w, memo)
        lw = rx.derive_word(l, w, memo)
        shown = w or "_"
        sample.check(
            "complement identity",
            sample.same_language(rx.derive_word(not_k, w, memo), rx.complement(kw)),
            f"w={shown}",
        )
        for op, expr in combos.items():
            sample.check(
                f"boolean identity {op}",
                sample.same_language(rx.derive_word(expr, w, memo), _REGEX_OPS[op](kw, lw)),
                f"w={shown}",
            )
        sample.check(
            "product identity",
            sample.same_language(rx.derive_word(kl, w, memo), theorem1_product_rhs(k, l, w)),
            f"w={shown}",
        )
        if w:
            rhs = theorem1_star_rhs(k, w)
        else:
            rhs = rx.union(rx.EPSILON, rx.concat(k, ks))
        sample.check(
            "star identity",
            sample.same_language(rx.derive_word(ks, w, memo), rhs),
            f"w={shown}",
        )


def campaign(cfg: CampaignConfig) -> CampaignSummary:
    """Run ``cfg.samples`` seeded random samples through every check.

    Each sample draws a pair (K, L), verifies all operations on it (bounds,
    two-path agreement, complement and star equalities) and checks the word
    derivative identities for all words up to ``cfg.max_word_length``.
    With ``fail_fast`` the first failure raises :class:`CampaignFailure`.
    """
    summary = CampaignSummary(cfg.seed, cfg.samples)
    for i in range(cfg.samples):
        _run_sample(cfg, summary, i)
    return summary


def reversal_campaign(
    seed: int,
    samples: int,
    max_kappa: int = 6,
    alphabet: Alphabet = Alphabet("ab"),
    max_regex_size: int = 6,
    cfg: ExplorationConfig = ExplorationConfig(),
) -> CampaignSummary:
    """Reversal bounds on languages of complexity at most ``max_kappa``.

    Even-numbered samples come from random regexes, odd ones from random
    DFAs; draws with larger complexity are redrawn from the same stream.
    """
    summary = CampaignSummary(seed, samples)
    run = CampaignConfig(seed=seed, samples=samples, alphabet=alphabet, cap=cfg)
    for i in range(samples):
        rng = sample_rng(seed, i)
        while True:
            if i % 2 == 0:
                operand = random_regex(rng, rng.randint(1, max_regex_size), alphabet)
                d = minimize(build_dfa(operand, alphabet, cfg))
                shown = rx.to_text(operand)
            else:
                d = minimize(random_dfa(rng, rng.randint(1, max_kappa), alphabet, plant=True))
                shown = "dfa " + " ".join(map(str, d.transitions))
            if d.state_count <= max_kappa:
                break
        sample = _Sample(run, summary, i, [shown])
        m = _Measured(d, alphabet, cfg)
        _record(sample, _verify_measured("reversal", m, None, alphabet, cfg))
    return summary


# -- witnesses -------------------------------------------------------------------------


@dataclass
class WitnessResult:
    case: WitnessCase
    measured_operand_kappas: tuple[int, ...]
    measured_kappa: int
    second_path_kappa: int
    # counter DFAs, where the family provides them, recognize the operand expressions
    operand_dfas_agree: bool

    @property
    def operands_ok(self) -> bool:
        return self.measured_operand_kappas == self.case.expected_operand_kappas

    @property
    def tight(self) -> bool:
        return self.measured_kappa == self.case.expected_result_kappa

    @property
    def ok(self) -> bool:
        return (
            self.tight
            and self.operands_ok
            and self.operand_dfas_agree
            and self.second_path_kappa == self.measured_kappa
        )

    def to_dict(self) -> dict:
        c = self.case
        return {
            "family": c.family,
            "params": list(c.params),
            "alphabet": c.alphabet.text,
            "operation": c.operation,
            "operands": [rx.to_text(o) for o in c.operands],
            "expected_operand_kappas": list(c.expected_operand_kappas),
            "measured_operand_kappas": list(self.measured_operand_kappas),
            "expected_result_kappa": c.expected_result_kappa,
            "measured_kappa": self.measured_kappa,
            "second_path_kappa": self.second_path_kappa,
            "operand_dfas_agree": self.operand_dfas_agree,
            "tight": self.tight,
        }


def check_witness(case, cfg: ExplorationConfig = ExplorationConfig()) -> WitnessResult:
    """Measure a witness case: operand complexities and the operated language, two ways."""
    alphabet = case.alphabet
    dfas = [minimize(build_dfa(o, alphabet, cfg)) for o in case.operands]
    agree = all(
        given is None or minimize(given) == d for given, d in zip(case.operand_dfas, dfas)
    )
    expr = operate(case.operation, *case.operands)
    measured = minimize(build_dfa(expr, alphabet, cfg)).state_count
    second = operate_dfa(case.operation, *dfas, cfg=cfg).state_count
    return WitnessResult(case, tuple(d.state_count for d in dfas), measured, second, agree)
