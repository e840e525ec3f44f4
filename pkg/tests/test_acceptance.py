"""Acceptance criteria, one test each.

Every criterion is an exact integer equality.  Each test prints a single
``PASS``/``FAIL`` line (visible under pytest's capture) before asserting.
Run directly with ``python tests/test_acceptance.py`` for just the summary.
"""

import sys
from math import gcd

import pytest

from quotcomp.analysis import is_suffix_free, profile
from quotcomp.automata import build_dfa, minimize
from quotcomp.bounds import evaluate_named
from quotcomp.verify import CampaignConfig, campaign, check_witness, reversal_campaign
from quotcomp.witnesses import witness

REVERSAL_CASES = (
    "epsilon",
    "sigmaplus",
    "empty",
    "sigmastar",
    "empty+sigmastar",
    "empty+sigmaplus",
)


def _grid(family, params, expected):
    """Check a witness grid; ``expected`` maps params to the claimed result."""
    bad = []
    for p in params:
        res = check_witness(witness(family, p))
        want = expected(*p)
        if not (res.ok and res.measured_kappa == want):
            bad.append(
                f"{family}{p}: measured {res.measured_kappa} (second path "
                f"{res.second_path_kappa}), expected {want}, operands "
                f"{res.measured_operand_kappas}"
            )
    return bad


def _pairs(lo, hi):
    return [(m, n) for m in range(lo, hi + 1) for n in range(lo, hi + 1)]


def criterion_1():
    return _grid("union.binary", _pairs(2, 5), lambda m, n: m * n)


def criterion_2():
    return _grid("intersection.binary", _pairs(2, 5), lambda m, n: m * n) + _grid(
        "difference.binary", _pairs(2, 5), lambda m, n: m * n
    )


def criterion_3():
    return _grid("symdiff.binary", _pairs(2, 4), lambda m, n: m * n)


def criterion_4():
    return _grid("product.binary", _pairs(2, 4), lambda m, n: m * 2**n - 2 ** (n - 1))


def criterion_5():
    values = {3: 6, 4: 12, 5: 24, 6: 48}
    bad = _grid("star.binary", [(n,) for n in values], values.get)
    for n in values:
        case = witness("star.binary", (n,))
        d = minimize(build_dfa(case.operands[0], case.alphabet))
        if len(d.accepting) != 1:
            bad.append(f"star.binary({n}): {len(d.accepting)} accepting quotients")
    res = check_witness(witness("star.binary.n2", ()))
    if not (res.ok and res.measured_operand_kappas == (2,) and res.measured_kappa == 3):
        bad.append(f"star.binary.n2: kappa(L)={res.measured_operand_kappas}, kappa(L*)={res.measured_kappa}")
    return bad


def criterion_6():
    pairs = [(2, 3), (3, 4), (3, 5), (4, 5), (5, 7)]
    assert all(gcd(m, n) == 1 for m, n in pairs)
    bad = _grid("union.unary", pairs, lambda m, n: m * n)
    bad += _grid("product.unary", pairs, lambda m, n: m * n)
    star = {2: 2, 3: 5, 4: 10, 5: 17, 6: 26}
    bad += _grid("star.unary", [(n,) for n in star], star.get)
    return bad


def criterion_7():
    bad = []
    for m, n in _pairs(4, 5):
        case = witness("suffixfree.union.binary", (m, n))
        for o in case.operands:
            if not is_suffix_free(minimize(build_dfa(o, case.alphabet))):
                bad.append(f"suffixfree.union.binary({m},{n}): operand {o} not suffix-free")
    return bad + _grid("suffixfree.union.binary", _pairs(4, 5), lambda m, n: m * n - (m + n - 2))


def criterion_8():
    bad = []
    for m, n in _pairs(3, 5):
        case = witness("suffixfree.intersection.marked", (m, n))
        for o in case.operands:
            p = profile(minimize(build_dfa(o, case.alphabet)))
            if not p.is_suffix_free or p.is_empty_language:
                bad.append(f"marked({m},{n}): operand {o} not a non-empty suffix-free language")
    return bad + _grid(
        "suffixfree.intersection.marked", _pairs(3, 5), lambda m, n: m * n - 2 * (m + n - 3)
    )


def criterion_9():
    got = {
        "thm3.boolean(7,5,4,3,2)": (evaluate_named("thm3.boolean", m=7, n=5, mu=4, nu=3, r=2), 11),
        "thm3.product(7,5,2,3,1)": (evaluate_named("thm3.product", m=7, n=5, k=2, s=3, t=1), 84),
        "thm3.boolean(7,101,4,0,0)": (evaluate_named("thm3.boolean", m=7, n=101, mu=4, nu=0, r=0), 307),
    }
    return [f"{k} = {v}, expected {w}" for k, (v, w) in got.items() if v != w]


CAMPAIGN = CampaignConfig(seed=1, samples=500, max_regex_size=6, fail_fast=False)


def criterion_10():
    s = campaign(CAMPAIGN)
    bad = [str(f) for f in s.failures]
    n = CAMPAIGN.samples
    expected_counts = {
        "two-path union": n,
        "two-path intersection": n,
        "two-path difference": n,
        "two-path symdiff": n,
        "complement keeps kappa": 2 * n,
    }
    for check, count in expected_counts.items():
        if s.checks[check] != count:
            bad.append(f"{check} ran {s.checks[check]} times, expected {count}")
    for check in (
        "complement identity",
        "boolean identity union",
        "boolean identity intersection",
        "boolean identity difference",
        "boolean identity symdiff",
        "product identity",
        "star identity",
        "star equality when L is its only accepting quotient",
    ):
        if not s.checks[check]:
            bad.append(f"{check} never exercised")
    if not any(name.startswith("dominance ") for name in s.checks):
        bad.append("no bound was ever applicable")
    return bad


def criterion_11():
    s = reversal_campaign(seed=1, samples=200, max_kappa=6)
    bad = [str(f) for f in s.failures]
    for case in REVERSAL_CASES:
        if not s.bound_applicable[f"thm4.reversal.{case}"]:
            bad.append(f"reversal case {case} never applicable")
    return bad


CRITERIA = {
    1: ("union tightness, binary counters", criterion_1),
    2: ("intersection and difference tightness", criterion_2),
    3: ("symmetric difference tightness", criterion_3),
    4: ("product tightness", criterion_4),
    5: ("star tightness", criterion_5),
    6: ("unary union, product and star", criterion_6),
    7: ("suffix-free union", criterion_7),
    8: ("suffix-free intersection, marked", criterion_8),
    9: ("worked formula values", criterion_9),
    10: ("property campaign, 500 samples", criterion_10),
    11: ("reversal bounds, 200 samples", criterion_11),
}


def _line(number, bad):
    title = CRITERIA[number][0]
    status = "PASS" if not bad else "FAIL"
    line = f"{status} criterion {number:>2}: {title}"
    if bad:
        line += " | " + "; ".join(bad[:5])
    return line


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, capsys):
    bad = CRITERIA[number][1]()
    with capsys.disabled():
        print("\n" + _line(number, bad))
    assert not bad, "\n".join(bad)


if __name__ == "__main__":
    results = {n: fn() for n, (_, fn) in CRITERIA.items()}
    for n, bad in results.items():
        print(_line(n, bad))
    sys.exit(1 if any(results.values()) else 0)
