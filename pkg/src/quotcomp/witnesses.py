"""Parametric witness languages that meet complexity bounds exactly."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Callable, Optional

from .automata import Dfa, complement_dfa
from .regex import (
    EPSILON,
    Alphabet,
    Regex,
    any_of,
    complement,
    concat,
    letter,
    power,
    star,
    union,
)

BINARY = Alphabet("ab")
UNARY = Alphabet("a")
MARKED = Alphabet("abc")


class WitnessParamError(ValueError):
    pass


@dataclass(frozen=True)
class WitnessCase:
    family: str
    params: tuple[int, ...]
    operands: tuple[Regex, ...]
    alphabet: Alphabet
    expected_operand_kappas: tuple[int, ...]
    operation: str
    expected_result_kappa: int
    # counter DFAs for the operands given by letter counts, None elsewhere
    operand_dfas: tuple[Optional[Dfa], ...] = ()


def modular_counting_dfa(letter_: str, residue: int, modulus: int, alphabet: Alphabet) -> Dfa:
    """Cyclic counter accepting the words whose count of ``letter_`` is ``residue`` mod ``modulus``."""
    if modulus < 1 or not 0 <= residue < modulus:
        raise WitnessParamError(f"need 0 <= residue < modulus, got {residue}, {modulus}")
    if letter_ not in alphabet:
        raise WitnessParamError(f"{letter_!r} not in alphabet {alphabet.text!r}")
    rows = tuple(
        tuple((q + 1) % modulus if c == letter_ else q for c in alphabet) for q in range(modulus)
    )
    return Dfa(alphabet, rows, 0, frozenset({residue}))


def modular_regex(letter_: str, residue: int, modulus: int, letters: str) -> Regex:
    """Expression for the same language as :func:`modular_counting_dfa` over ``letters``."""
    if modulus < 1 or not 0 <= residue < modulus:
        raise WitnessParamError(f"need 0 <= residue < modulus, got {residue}, {modulus}")
    others = [c for c in letters if c != letter_]
    filler = star(any_of(others)) if others else EPSILON
    block = concat(letter(letter_), filler)
    return concat(filler, power(block, residue), star(power(block, modulus)))


def _need(cond: bool, family: str, params):
    if not cond:
        raise WitnessParamError(f"parameters {list(params)} out of range for {family}")


a, b, c = letter("a"), letter("b"), letter("c")
SIGMA2 = union(a, b)


def _union_binary(m, n):
    _need(m >= 2 and n >= 2, "union.binary", (m, n))
    return WitnessCase(
        "union.binary",
        (m, n),
        (modular_regex("a", m - 1, m, "ab"), modular_regex("b", n - 1, n, "ab")),
        BINARY,
        (m, n),
        "union",
        m * n,
        (modular_counting_dfa("a", m - 1, m, BINARY), modular_counting_dfa("b", n - 1, n, BINARY)),
    )


def _intersection_binary(m, n):
    _need(m >= 2 and n >= 2, "intersection.binary", (m, n))
    return WitnessCase(
        "intersection.binary",
        (m, n),
        (modular_regex("a", 0, m, "ab"), modular_regex("b", 0, n, "ab")),
        BINARY,
        (m, n),
        "intersection",
        m * n,
        (modular_counting_dfa("a", 0, m, BINARY), modular_counting_dfa("b", 0, n, BINARY)),
    )


def _difference_binary(m, n):
    _need(m >= 2 and n >= 2, "difference.binary", (m, n))
    return WitnessCase(
        "difference.binary",
        (m, n),
        (modular_regex("a", 0, m, "ab"), complement(modular_regex("b", 0, n, "ab"))),
        BINARY,
        (m, n),
        "difference",
        m * n,
        (modular_counting_dfa("a", 0, m, BINARY), complement_dfa(modular_counting_dfa("b", 0, n, BINARY))),
    )


def _symdiff_binary(m, n):
    _need(m >= 1 and n >= 1, "symdiff.binary", (m, n))
    k = concat(power(concat(star(b), a), m - 1), star(SIGMA2))
    l_ = concat(power(concat(star(a), b), n - 1), star(SIGMA2))
    return WitnessCase("symdiff.binary", (m, n), (k, l_), BINARY, (m, n), "symdiff", m * n)


def _coprime(family, m, n):
    _need(m >= 2 and n >= 2 and gcd(m, n) == 1, family, (m, n))


def _union_unary(m, n):
    _coprime("union.unary", m, n)
    return WitnessCase(
        "union.unary",
        (m, n),
        (star(power(a, m)), star(power(a, n))),
        UNARY,
        (m, n),
        "union",
        m * n,
        (modular_counting_dfa("a", 0, m, UNARY), modular_counting_dfa("a", 0, n, UNARY)),
    )


def _unary_shifted(k):
    return concat(star(power(a, k)), power(a, k - 1))


def _product_unary(m, n):
    _coprime("product.unary", m, n)
    return WitnessCase(
        "product.unary",
        (m, n),
        (_unary_shifted(m), _unary_shifted(n)),
        UNARY,
        (m, n),
        "product",
        m * n,
        (
            modular_counting_dfa("a", m - 1, m, UNARY),
            modular_counting_dfa("a", n - 1, n, UNARY),
        ),
    )


def _product_binary(m, n):
    _need(m >= 2 and n >= 2, "product.binary", (m, n))
    l_ = concat(
        power(concat(star(a), b), n - 2),
        SIGMA2,
        star(union(b, concat(a, SIGMA2))),
    )
    return WitnessCase(
        "product.binary",
        (m, n),
        (modular_regex("a", m - 1, m, "ab"), l_),
        BINARY,
        (m, n),
        "product",
        m * 2**n - 2 ** (n - 1),
        (modular_counting_dfa("a", m - 1, m, BINARY), None),
    )


def _star_binary(n):
    _need(n >= 3, "star.binary", (n,))
    l_ = concat(
        star(union(b, concat(a, power(SIGMA2, n - 1)))),
        a,
        power(SIGMA2, n - 2),
    )
    return WitnessCase(
        "star.binary", (n,), (l_,), BINARY, (n,), "star", 2 ** (n - 1) + 2 ** (n - 2)
    )


def _star_binary_n2():
    return WitnessCase(
        "star.binary.n2",
        (),
        (modular_regex("a", 1, 2, "ab"),),
        BINARY,
        (2,),
        "star",
        3,
        (modular_counting_dfa("a", 1, 2, BINARY),),
    )


def _star_unary(n):
    _need(n >= 2, "star.unary", (n,))
    return WitnessCase(
        "star.unary",
        (n,),
        (_unary_shifted(n),),
        UNARY,
        (n,),
        "star",
        n * n - 2 * n + 2,
        (modular_counting_dfa("a", n - 1, n, UNARY),),
    )


def _suffixfree_union_binary(m, n):
    _need(m >= 4 and n >= 4, "suffixfree.union.binary", (m, n))
    ba = concat(b, star(a))
    k = concat(a, star(concat(power(ba, m - 3), b)), power(ba, m - 3))
    l_ = concat(a, star(concat(power(SIGMA2, n - 3), b)), power(SIGMA2, n - 3))
    return WitnessCase(
        "suffixfree.union.binary",
        (m, n),
        (k, l_),
        BINARY,
        (m, n),
        "union",
        m * n - (m + n - 2),
    )


def _suffixfree_intersection_marked(m, n):
    _need(m >= 3 and n >= 3, "suffixfree.intersection.marked", (m, n))
    k = concat(c, modular_regex("a", 0, m - 2, "ab"))
    l_ = concat(c, modular_regex("b", 0, n - 2, "ab"))
    return WitnessCase(
        "suffixfree.intersection.marked",
        (m, n),
        (k, l_),
        MARKED,
        (m, n),
        "intersection",
        m * n - 2 * (m + n - 3),
    )


FAMILIES: dict[str, Callable[..., WitnessCase]] = {
    "union.binary": _union_binary,
    "intersection.binary": _intersection_binary,
    "difference.binary": _difference_binary,
    "symdiff.binary": _symdiff_binary,
    "union.unary": _union_unary,
    "product.unary": _product_unary,
    "product.binary": _product_binary,
    "star.binary": _star_binary,
    "star.binary.n2": _star_binary_n2,
    "star.unary": _star_unary,
    "suffixfree.union.binary": _suffixfree_union_binary,
    "suffixfree.intersection.marked": _suffixfree_intersection_marked,
}

# parameter names, in order, per family
FAMILY_PARAMS: dict[str, tuple[str, ...]] = {
    name: tuple(
        p for p in fn.__code__.co_varnames[: fn.__code__.co_argcount]
    )
    for name, fn in FAMILIES.items()
}


def witness(family: str, params=()) -> WitnessCase:
    """Build the witness case of ``family`` for the given integer parameters."""
    try:
        build = FAMILIES[family]
    except KeyError:
        raise WitnessParamError(f"unknown witness family {family!r}") from None
    params = tuple(int(p) for p in params)
    if len(params) != len(FAMILY_PARAMS[family]):
        raise WitnessParamError(
            f"{family} takes {len(FAMILY_PARAMS[family])} parameter(s), got {len(params)}"
        )
    return build(*params)
