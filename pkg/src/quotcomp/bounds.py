"""Closed-form upper bounds on quotient complexity.

Each evaluator is plain integer arithmetic.  :func:`select_bounds` turns
measured profiles into :class:`BoundReport` lists, one per named bound, with
the preconditions that decide whether the bound applies.

Notation: ``m``, ``n`` are the complexities of K and L, ``k``, ``l`` their
numbers of accepting quotients, ``mu``, ``nu`` the numbers of uniquely
reachable quotients, ``r`` the number of words reaching a uniquely
reachable quotient in both, and ``s``/``t`` the rejecting/accepting uniquely
reachable quotients of K.
"""

from __future__ import annotations

import inspect
from dataclasses import dataclass
from typing import Callable, Optional

from .analysis import ComplexityProfile, PairProfile


class BoundDomainError(ValueError):
    """Arguments outside the domain on which a bound is stated."""


@dataclass(frozen=True)
class BoundReport:
    bound_name: str
    applicable: bool
    preconditions: tuple[tuple[str, bool], ...]
    value: Optional[int] = None

    def __post_init__(self):
        if self.applicable != (self.value is not None):
            raise ValueError("a bound has a value exactly when it applies")


def _require(cond: bool, message: str):
    if not cond:
        raise BoundDomainError(message)


def _positive(**kw):
    for name, v in kw.items():
        _require(v >= 1, f"{name} must be at least 1, got {v}")


def bound_complement(n: int) -> int:
    _positive(n=n)
    return n


def bound_boolean(m: int, n: int) -> int:
    _positive(m=m, n=n)
    return m * n


def bound_product(m: int, n: int, k: int, l: int) -> int:
    """Complexity bound for KL, covering the three cases by k, l and n."""
    _positive(m=m, n=n)
    _require(0 <= k <= m, f"need 0 <= k <= m, got k={k}, m={m}")
    _require(0 <= l <= n, f"need 0 <= l <= n, got l={l}, n={n}")
    if k == 0 or l == 0:
        return 1
    if n == 1:
        return m - (k - 1)
    return m * 2**n - k * 2 ** (n - 1)


def bound_star(n: int, l: int, only_self_accepting: bool) -> int:
    """Bound for L*; ``l`` counts accepting quotients other than L itself."""
    _positive(n=n)
    _require(0 <= l <= n, f"need 0 <= l <= n, got l={l}")
    if n == 1:
        return 2
    if only_self_accepting:
        return n
    _require(l > 0, "n > 1 with no accepting quotient besides L requires L to be its only one")
    return 2 ** (n - 1) + 2 ** (n - l - 1)


def _check_ur(m, n, mu, nu, r):
    _positive(m=m, n=n)
    _require(0 <= mu <= m and 0 <= nu <= n, "need 0 <= mu <= m and 0 <= nu <= n")
    _require(0 <= r <= min(mu, nu), f"need 0 <= r <= min(mu, nu), got r={r}")


def bound_urbool(m: int, n: int, mu: int, nu: int, r: int) -> int:
    """Boolean-operation bound reduced by uniquely reachable quotients."""
    _check_ur(m, n, mu, nu, r)
    alpha = r * (m + n) - r * (r + 1)
    beta = (mu - r) * (n - (r + 1))
    gamma = (nu - r) * (m - mu - 1)
    return m * n - (alpha + beta + gamma)


def bound_urproduct(m: int, n: int, k: int, s: int, t: int) -> int:
    """Product bound reduced by the uniquely reachable quotients of K."""
    _positive(m=m, n=n)
    _require(0 <= k <= m, f"need 0 <= k <= m, got k={k}")
    _require(s >= 0 and 0 <= t <= k and s + t <= m, "need s, t >= 0, t <= k, s + t <= m")
    return m * 2**n - k * 2 ** (n - 1) - s * (2**n - 1) - t * (2 ** (n - 1) - 1)


def bound_suffixfree_or_finite_boolean(m: int, n: int) -> int:
    _require(m > 1 and n > 1, f"need m, n > 1, got m={m}, n={n}")
    return m * n - (m + n - 2)


_SPECIAL_BOOLEAN: dict[tuple[str, str], Callable[..., int]] = {
    ("epsilon", "union"): lambda m, n, k, l: m * n - 2,
    ("epsilon", "intersection"): lambda m, n, k, l: m * n - (2 * m + 2 * n - 6),
    ("epsilon", "difference"): lambda m, n, k, l: m * n - (m + 2 * n - k - 3),
    ("epsilon", "symdiff"): lambda m, n, k, l: m * n - 2,
    ("sigmaplus", "intersection"): lambda m, n, k, l: m * n - 2,
    ("sigmaplus", "union"): lambda m, n, k, l: m * n - (2 * m + 2 * n - 6),
    ("sigmaplus", "difference"): lambda m, n, k, l: m * n - (2 * m + l - 3),
    ("sigmaplus", "symdiff"): lambda m, n, k, l: m * n - 2,
    ("empty", "intersection"): lambda m, n, k, l: m * n - (m + n - 2),
    ("empty", "difference"): lambda m, n, k, l: m * n - n + 1,
    ("sigmastar", "union"): lambda m, n, k, l: m * n - (m + n - 2),
    ("sigmastar", "difference"): lambda m, n, k, l: m * n - m + 1,
}

QUOTIENT_NAMES = ("epsilon", "sigmaplus", "empty", "sigmastar")

_PROFILE_FLAG = {
    "epsilon": "has_epsilon_quotient",
    "sigmaplus": "has_sigma_plus_quotient",
    "empty": "has_empty_quotient",
    "sigmastar": "has_universal_quotient",
}


def special_boolean_value(quotient: str, op: str, m: int, n: int, k: int = 1, l: int = 1) -> int:
    """Value of the special-quotient bound for ``op``; raises KeyError if none is stated."""
    _positive(m=m, n=n)
    _require(0 < k <= m and 0 < l <= n, "need 0 < k <= m and 0 < l <= n")
    return _SPECIAL_BOOLEAN[(quotient, op)](m, n, k, l)


def bound_special_boolean(
    op: str,
    m: int,
    n: int,
    k: int,
    l: int,
    flags_k: dict[str, bool],
    flags_l: dict[str, bool],
) -> list[BoundReport]:
    """One report per special-quotient bound stated for ``op``.

    A report applies when both operands have the quotient and both have
    accepting quotients.
    """
    out = []
    for q in QUOTIENT_NAMES:
        if (q, op) not in _SPECIAL_BOOLEAN:
            continue
        pre = (
            (f"K has {q} quotient", bool(flags_k.get(q))),
            (f"L has {q} quotient", bool(flags_l.get(q))),
            ("k > 0", k > 0),
            ("l > 0", l > 0),
        )
        ok = all(v for _, v in pre)
        value = _SPECIAL_BOOLEAN[(q, op)](m, n, k, l) if ok else None
        out.append(BoundReport(f"thm4.{q}.{op}", ok, pre, value))
    return out


REVERSAL_CASES: dict[str, tuple[tuple[str, ...], Callable[[int], int], int]] = {
    # case name -> (required quotients, formula, smallest n giving a whole exponent)
    "epsilon": (("epsilon",), lambda n: 2 ** (n - 2) + 1, 2),
    "sigmaplus": (("sigmaplus",), lambda n: 2 ** (n - 2) + 1, 2),
    "empty": (("empty",), lambda n: 2 ** (n - 1), 1),
    "sigmastar": (("sigmastar",), lambda n: 2 ** (n - 1), 1),
    "empty+sigmastar": (("empty", "sigmastar"), lambda n: 2 ** (n - 2), 2),
    "empty+sigmaplus": (("empty", "sigmaplus"), lambda n: 2 ** (n - 3) + 1, 3),
}


def reversal_value(case: str, n: int) -> int:
    _, formula, n_min = REVERSAL_CASES[case]
    _require(n >= n_min, f"reversal bound {case} needs n >= {n_min}")
    return formula(n)


def bound_special_reversal(n: int, flags: dict[str, bool], l: int = 1) -> list[BoundReport]:
    """Reports for the reversal bounds, with flags measured on L."""
    out = []
    for case, (needed, formula, n_min) in REVERSAL_CASES.items():
        pre = tuple((f"L has {q} quotient", bool(flags.get(q))) for q in needed) + (
            ("l > 0", l > 0),
            (f"n >= {n_min}", n >= n_min),
        )
        ok = all(v for _, v in pre)
        out.append(BoundReport(f"thm4.reversal.{case}", ok, pre, formula(n) if ok else None))
    return out


def bound_suffixfree_intersection(m: int, n: int) -> int:
    _positive(m=m, n=n)
    return m * n - 2 * (m + n - 3)


def bound_star_epsilon(n: int, l: int) -> int:
    """Star bound for languages having ε as a quotient."""
    _require(n >= 3, f"need n >= 3, got {n}")
    _require(0 < l <= n, f"need 0 < l <= n, got l={l}")
    return 2 ** (n - 3) + 2 ** (n - l - 1) + 1


# -- selection from measured profiles ------------------------------------------


def quotient_flags(p: ComplexityProfile) -> dict[str, bool]:
    return {q: getattr(p, attr) for q, attr in _PROFILE_FLAG.items()}


def _report(name, pre, compute) -> BoundReport:
    pre = tuple(pre)
    ok = all(v for _, v in pre)
    return BoundReport(name, ok, pre, compute() if ok else None)


BINARY_BOOLEAN = ("union", "intersection", "difference", "symdiff")


def select_bounds(
    op: str,
    pk: ComplexityProfile,
    pl: Optional[ComplexityProfile] = None,
    pair: Optional[PairProfile] = None,
) -> list[BoundReport]:
    """Every bound stated for ``op``, evaluated where its preconditions hold.

    ``pk`` profiles the (first) operand.  Unary operations (complement, star,
    reversal) read their single operand from ``pk``.
    """
    if op in BINARY_BOOLEAN:
        return _boolean_reports(op, pk, pl, pair)
    if op == "product":
        return _product_reports(pk, pl)
    if op == "star":
        return _star_reports(pk)
    if op == "reversal":
        return bound_special_reversal(pk.kappa, quotient_flags(pk), pk.accepting_count)
    if op == "complement":
        return [_report("thm2.complement", [], lambda: bound_complement(pk.kappa))]
    raise ValueError(f"unknown operation {op!r}")


def _boolean_reports(op, pk, pl, pair):
    m, n = pk.kappa, pl.kappa
    r = pair.r if pair is not None else 0
    out = [
        _report("thm2.boolean", [], lambda: bound_boolean(m, n)),
        _report(
            "thm3.boolean",
            [],
            lambda: bound_urbool(m, n, pk.ur_count, pl.ur_count, r),
        ),
        _report(
            "cor1.boolean",
            [
                ("K non-empty", not pk.is_empty_language),
                ("L non-empty", not pl.is_empty_language),
                ("K finite or suffix-free", pk.is_finite or pk.is_suffix_free),
                ("L finite or suffix-free", pl.is_finite or pl.is_suffix_free),
                ("m > 1", m > 1),
                ("n > 1", n > 1),
            ],
            lambda: bound_suffixfree_or_finite_boolean(m, n),
        ),
    ]
    out += bound_special_boolean(
        op, m, n, pk.accepting_count, pl.accepting_count, quotient_flags(pk), quotient_flags(pl)
    )
    if op == "intersection":
        out.append(
            _report(
                "cor2.intersection",
                [
                    ("K non-empty", not pk.is_empty_language),
                    ("L non-empty", not pl.is_empty_language),
                    ("K suffix-free", pk.is_suffix_free),
                    ("L suffix-free", pl.is_suffix_free),
                ],
                lambda: bound_suffixfree_intersection(m, n),
            )
        )
    return out


def _product_reports(pk, pl):
    m, n, k, l = pk.kappa, pl.kappa, pk.accepting_count, pl.accepting_count
    return [
        _report("thm2.product.a", [("k = 0 or l = 0", k == 0 or l == 0)], lambda: 1),
        _report(
            "thm2.product.b",
            [("k > 0", k > 0), ("l > 0", l > 0), ("n = 1", n == 1)],
            lambda: bound_product(m, n, k, l),
        ),
        _report(
            "thm2.product.c",
            [("k > 0", k > 0), ("l > 0", l > 0), ("n > 1", n > 1)],
            lambda: bound_product(m, n, k, l),
        ),
        _report(
            "thm3.product",
            [],
            lambda: bound_urproduct(m, n, k, pk.ur_rejecting_count, pk.ur_accepting_count),
        ),
    ]


def _star_reports(pl):
    n = pl.kappa
    l = pl.accepting_other_than_initial
    only_self = pl.initial_is_only_accepting
    return [
        _report("thm2.star.a", [("n = 1", n == 1)], lambda: 2),
        _report(
            "thm2.star.b",
            [("n > 1", n > 1), ("L is its only accepting quotient", only_self)],
            lambda: n,
        ),
        _report(
            "thm2.star.c",
            [("n > 1", n > 1), ("l > 0 accepting quotients other than L", l > 0)],
            lambda: bound_star(n, l, False),
        ),
        _report(
            "prop5.star",
            [
                ("n >= 3", n >= 3),
                ("l > 0", l > 0),
                ("L has epsilon quotient", pl.has_epsilon_quotient),
            ],
            lambda: bound_star_epsilon(n, l),
        ),
    ]


# -- lookup by stable name (used by the command line) -----------------------------


def _named_table() -> dict[str, Callable[..., int]]:
    table: dict[str, Callable[..., int]] = {
        "thm2.complement": bound_complement,
        "thm2.boolean": bound_boolean,
        "thm2.product.a": lambda: 1,
        "thm2.product.b": lambda m, k: bound_product(m, 1, k, 1),
        "thm2.product.c": lambda m, n, k: _product_c(m, n, k),
        "thm2.star.a": lambda: 2,
        "thm2.star.b": lambda n: bound_star(n, 0, True),
        "thm2.star.c": lambda n, l: bound_star(n, l, False),
        "thm3.boolean": bound_urbool,
        "thm3.product": bound_urproduct,
        "cor1.boolean": bound_suffixfree_or_finite_boolean,
        "cor2.intersection": bound_suffixfree_intersection,
        "prop5.star": bound_star_epsilon,
    }
    for quotient, op in _SPECIAL_BOOLEAN:
        table[f"thm4.{quotient}.{op}"] = _special_named(quotient, op)
    for case in REVERSAL_CASES:
        table[f"thm4.reversal.{case}"] = _reversal_named(case)
    return table


def _product_c(m, n, k):
    _require(n > 1, "case c needs n > 1")
    _require(k > 0, "case c needs k > 0")
    return bound_product(m, n, k, 1)


def _special_named(quotient, op):
    def f(m, n, k=1, l=1):
        return special_boolean_value(quotient, op, m, n, k, l)

    return f


def _reversal_named(case):
    def f(n):
        return reversal_value(case, n)

    return f


NAMED_BOUNDS = _named_table()


def bound_parameters(name: str) -> list[str]:
    return list(inspect.signature(NAMED_BOUNDS[name]).parameters)


def evaluate_named(name: str, **params: int) -> int:
    """Evaluate a bound by its stable name with keyword parameters."""
    try:
        f = NAMED_BOUNDS[name]
    except KeyError:
        raise BoundDomainError(f"unknown bound {name!r}") from None
    sig = inspect.signature(f)
    unknown = set(params) - set(sig.parameters)
    if unknown:
        raise BoundDomainError(f"{name} does not take {sorted(unknown)}")
    missing = [
        p.name
        for p in sig.parameters.values()
        if p.default is inspect.Parameter.empty and p.name not in params
    ]
    if missing:
        raise BoundDomainError(f"{name} needs {missing}")
    return f(**params)
