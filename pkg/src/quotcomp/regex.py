"""Extended regular expressions: syntax trees, parsing, printing and derivatives.

Trees are immutable.  The smart constructors (:func:`union`, :func:`concat`,
...) always return trees in normal form, i.e. modulo the similarity rules:
union is associative, commutative and idempotent with ``@`` as unit, ``@``
annihilates concatenation and ``_`` is its unit.  The same ACI treatment is
given to intersection; symmetric difference is flattened and sorted with
equal operands cancelling in pairs.

The :class:`Regex` constructor itself builds raw trees with no rewriting,
which is what :func:`normalize` takes apart.
"""

from __future__ import annotations

import string
from dataclasses import dataclass
from typing import Iterable, Sequence

EMPTY_K = 0
EPSILON_K = 1
LETTER_K = 2
STAR_K = 3
COMPLEMENT_K = 4
CONCAT_K = 5
UNION_K = 6
INTERSECT_K = 7
DIFF_K = 8
SYMDIFF_K = 9

KIND_NAMES = {
    EMPTY_K: "Empty",
    EPSILON_K: "Epsilon",
    LETTER_K: "Letter",
    STAR_K: "Star",
    COMPLEMENT_K: "Complement",
    CONCAT_K: "Concat",
    UNION_K: "Union",
    INTERSECT_K: "Intersect",
    DIFF_K: "Diff",
    SYMDIFF_K: "SymDiff",
}

_NARY = (CONCAT_K, UNION_K, INTERSECT_K, SYMDIFF_K)


class RegexError(ValueError):
    """Base class for errors raised while reading expressions."""


class RegexSyntaxError(RegexError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class LetterNotInAlphabet(RegexError):
    def __init__(self, letter: str, alphabet: "Alphabet"):
        super().__init__(f"letter {letter!r} is not in alphabet {alphabet.text!r}")
        self.letter = letter


@dataclass(frozen=True)
class Alphabet:
    """An ordered, non-empty set of lowercase letters."""

    letters: tuple[str, ...]

    def __init__(self, letters: Iterable[str]):
        letters = tuple(letters)
        if not letters:
            raise ValueError("alphabet must not be empty")
        if len(set(letters)) != len(letters):
            raise ValueError(f"duplicate letters in alphabet {''.join(letters)!r}")
        for c in letters:
            if len(c) != 1 or c not in string.ascii_lowercase:
                raise ValueError(f"invalid alphabet letter {c!r}")
        object.__setattr__(self, "letters", letters)

    @property
    def text(self) -> str:
        return "".join(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __len__(self):
        return len(self.letters)

    def __contains__(self, c):
        return c in self.letters

    def index(self, c: str) -> int:
        return self.letters.index(c)

    def __repr__(self):
        return f"Alphabet({self.text!r})"


class Regex:
    """A node of an extended regular expression.

    ``kind`` is one of the ``*_K`` constants, ``sym`` the letter of a Letter
    node (``""`` otherwise) and ``args`` the tuple of operands.  ``key`` is the
    canonical sort key; ordering and equality both go through it.
    """

    __slots__ = ("kind", "sym", "args", "key", "nullable", "_hash")

    def __init__(self, kind: int, args: Sequence["Regex"] = (), sym: str = ""):
        args = tuple(args)
        if kind == LETTER_K:
            if len(sym) != 1 or args:
                raise ValueError("a Letter node carries exactly one symbol")
        elif kind in (EMPTY_K, EPSILON_K):
            if args:
                raise ValueError("constants take no operands")
        elif kind in (STAR_K, COMPLEMENT_K):
            if len(args) != 1:
                raise ValueError(f"{KIND_NAMES[kind]} takes one operand")
        elif kind == DIFF_K:
            if len(args) != 2:
                raise ValueError("Diff takes two operands")
        elif kind in _NARY:
            if not args:
                raise ValueError(f"{KIND_NAMES[kind]} needs operands")
        else:
            raise ValueError(f"unknown node kind {kind!r}")
        self.kind = kind
        self.sym = sym
        self.args = args
        self.key = (kind, sym, tuple(a.key for a in args))
        self._hash = hash(self.key)
        self.nullable = _nullable_node(kind, args)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Regex):
            return NotImplemented
        return self._hash == other._hash and self.key == other.key

    def __hash__(self):
        return self._hash

    def __lt__(self, other: "Regex"):
        return self.key < other.key

    def __repr__(self):
        if self.kind == LETTER_K:
            return f"Letter({self.sym!r})"
        if self.kind in (EMPTY_K, EPSILON_K):
            return KIND_NAMES[self.kind]
        inner = ", ".join(repr(a) for a in self.args)
        return f"{KIND_NAMES[self.kind]}({inner})"

    def __str__(self):
        return to_text(self)

    def size(self) -> int:
        """Number of nodes in the tree."""
        return 1 + sum(a.size() for a in self.args)

    def letters(self) -> set[str]:
        if self.kind == LETTER_K:
            return {self.sym}
        out: set[str] = set()
        for a in self.args:
            out |= a.letters()
        return out

    def has_complement(self) -> bool:
        return self.kind == COMPLEMENT_K or any(a.has_complement() for a in self.args)


def _nullable_node(kind, args) -> bool:
    if kind in (EPSILON_K, STAR_K):
        return True
    if kind in (EMPTY_K, LETTER_K):
        return False
    if kind == COMPLEMENT_K:
        return not args[0].nullable
    if kind == UNION_K:
        return any(a.nullable for a in args)
    if kind in (CONCAT_K, INTERSECT_K):
        return all(a.nullable for a in args)
    if kind == DIFF_K:
        return args[0].nullable and not args[1].nullable
    # SYMDIFF_K
    return sum(a.nullable for a in args) % 2 == 1


EMPTY = Regex(EMPTY_K)
EPSILON = Regex(EPSILON_K)


def nullable(r: Regex) -> bool:
    """True iff the empty word belongs to the language of ``r``."""
    return r.nullable


def epsilon_of(r: Regex) -> Regex:
    """The ε-function as an expression: ``_`` if ``r`` is nullable, else ``@``."""
    return EPSILON if r.nullable else EMPTY


# -- smart constructors (normal form) ------------------------------------------


def letter(c: str) -> Regex:
    return Regex(LETTER_K, sym=c)


def _flatten(kind, operands):
    out = []
    for r in operands:
        if r.kind == kind:
            out.extend(r.args)
        else:
            out.append(r)
    return out


def union(*operands: Regex) -> Regex:
    items = {r for r in _flatten(UNION_K, operands) if r.kind != EMPTY_K}
    if not items:
        return EMPTY
    if len(items) == 1:
        return next(iter(items))
    return Regex(UNION_K, sorted(items))


def intersect(*operands: Regex) -> Regex:
    items = set(_flatten(INTERSECT_K, operands))
    if len(items) == 1:
        return next(iter(items))
    return Regex(INTERSECT_K, sorted(items))


def symdiff(*operands: Regex) -> Regex:
    odd: set[Regex] = set()
    for r in _flatten(SYMDIFF_K, operands):
        if r.kind == EMPTY_K:
            continue
        if r in odd:
            odd.remove(r)
        else:
            odd.add(r)
    if not odd:
        return EMPTY
    if len(odd) == 1:
        return next(iter(odd))
    return Regex(SYMDIFF_K, sorted(odd))


def concat(*operands: Regex) -> Regex:
    items = []
    for r in _flatten(CONCAT_K, operands):
        if r.kind == EMPTY_K:
            return EMPTY
        if r.kind != EPSILON_K:
            items.append(r)
    if not items:
        return EPSILON
    if len(items) == 1:
        return items[0]
    return Regex(CONCAT_K, items)


def star(r: Regex) -> Regex:
    return Regex(STAR_K, (r,))


def complement(r: Regex) -> Regex:
    return Regex(COMPLEMENT_K, (r,))


def diff(left: Regex, right: Regex) -> Regex:
    return Regex(DIFF_K, (left, right))


def power(r: Regex, k: int) -> Regex:
    """``r`` concatenated with itself ``k`` times (``_`` for k = 0)."""
    return concat(*([r] * k))


def any_of(letters: Iterable[str]) -> Regex:
    return union(*(letter(c) for c in letters))


_BUILD = {
    UNION_K: union,
    INTERSECT_K: intersect,
    SYMDIFF_K: symdiff,
    CONCAT_K: concat,
}


def normalize(r: Regex) -> Regex:
    """Rewrite ``r`` bottom-up into its similarity normal form."""
    k = r.kind
    if k in (EMPTY_K, EPSILON_K, LETTER_K):
        return r
    args = [normalize(a) for a in r.args]
    if k == STAR_K:
        return star(args[0])
    if k == COMPLEMENT_K:
        return complement(args[0])
    if k == DIFF_K:
        return diff(args[0], args[1])
    return _BUILD[k](*args)


# -- derivatives ---------------------------------------------------------------


def derive_letter(r: Regex, a: str, memo: dict | None = None) -> Regex:
    """Normal-form derivative of ``r`` by the letter ``a``.

    ``memo`` may be shared between calls that derive by the same letter set;
    it is keyed on ``(node, letter)``.
    """
    if memo is None:
        memo = {}
    return _derive(r, a, memo)


def _derive(r: Regex, a: str, memo: dict) -> Regex:
    k = r.kind
    if k in (EMPTY_K, EPSILON_K):
        return EMPTY
    if k == LETTER_K:
        return EPSILON if r.sym == a else EMPTY
    cache_key = (r, a)
    hit = memo.get(cache_key)
    if hit is not None:
        return hit
    if k == UNION_K:
        out = union(*(_derive(x, a, memo) for x in r.args))
    elif k == INTERSECT_K:
        out = intersect(*(_derive(x, a, memo) for x in r.args))
    elif k == SYMDIFF_K:
        out = symdiff(*(_derive(x, a, memo) for x in r.args))
    elif k == DIFF_K:
        out = diff(_derive(r.args[0], a, memo), _derive(r.args[1], a, memo))
    elif k == COMPLEMENT_K:
        out = complement(_derive(r.args[0], a, memo))
    elif k == STAR_K:
        out = concat(_derive(r.args[0], a, memo), r)
    else:
        head, tail = r.args[0], r.args[1:]
        rest = tail[0] if len(tail) == 1 else Regex(CONCAT_K, tail)
        first = concat(_derive(head, a, memo), rest)
        out = union(first, _derive(rest, a, memo)) if head.nullable else first
    memo[cache_key] = out
    return out


def derive_word(r: Regex, word: str, memo: dict | None = None) -> Regex:
    """Derivative by a word, one letter at a time; ``r`` itself for the empty word."""
    if memo is None:
        memo = {}
    for a in word:
        r = _derive(r, a, memo)
    return r


# -- text syntax ---------------------------------------------------------------
#
# tightest first: postfix * and prefix !, juxtaposition, &, -, ^, |

_BINARY_LEVELS = (("|", UNION_K), ("^", SYMDIFF_K), ("-", DIFF_K), ("&", INTERSECT_K))
_PREC = {
    UNION_K: 1,
    SYMDIFF_K: 2,
    DIFF_K: 3,
    INTERSECT_K: 4,
    CONCAT_K: 5,
    COMPLEMENT_K: 6,
    STAR_K: 7,
    EMPTY_K: 8,
    EPSILON_K: 8,
    LETTER_K: 8,
}
_OP_CHAR = {UNION_K: "|", SYMDIFF_K: "^", DIFF_K: "-", INTERSECT_K: "&", CONCAT_K: ""}


class _Parser:
    def __init__(self, text: str, alphabet: Alphabet | None):
        self.text = text
        self.alphabet = alphabet
        self.pos = 0

    def peek(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else None

    def take(self, ch):
        if self.peek() != ch:
            found = self.peek()
            what = "end of input" if found is None else repr(found)
            raise RegexSyntaxError(f"expected {ch!r}, found {what}", self.pos)
        self.pos += 1

    def parse(self) -> Regex:
        if self.peek() is None:
            raise RegexSyntaxError("empty expression", self.pos)
        r = self.binary(0)
        if self.peek() is not None:
            raise RegexSyntaxError(f"unexpected {self.peek()!r}", self.pos)
        return r

    def binary(self, level: int) -> Regex:
        if level == len(_BINARY_LEVELS):
            return self.sequence()
        ch, kind = _BINARY_LEVELS[level]
        left = self.binary(level + 1)
        while self.peek() == ch:
            self.pos += 1
            right = self.binary(level + 1)
            left = Regex(kind, (left, right))
        return left

    def sequence(self) -> Regex:
        items = [self.unary()]
        while self.peek() is not None and self.peek() not in "|^-&)*":
            items.append(self.unary())
        return items[0] if len(items) == 1 else Regex(CONCAT_K, items)

    def unary(self) -> Regex:
        if self.peek() == "!":
            self.pos += 1
            return Regex(COMPLEMENT_K, (self.unary(),))
        r = self.atom()
        while self.peek() == "*":
            self.pos += 1
            r = Regex(STAR_K, (r,))
        return r

    def atom(self) -> Regex:
        ch = self.peek()
        start = self.pos
        if ch is None:
            raise RegexSyntaxError("unexpected end of input", start)
        if ch == "(":
            self.pos += 1
            r = self.binary(0)
            self.take(")")
            return r
        self.pos += 1
        if ch == "@":
            return EMPTY
        if ch == "_":
            return EPSILON
        if ch in string.ascii_lowercase:
            if self.alphabet is not None and ch not in self.alphabet:
                raise LetterNotInAlphabet(ch, self.alphabet)
            return letter(ch)
        raise RegexSyntaxError(f"unexpected {ch!r}", start)


def parse(text: str, alphabet: Alphabet | None = None) -> Regex:
    """Read an expression and return its normal form.

    With ``alphabet`` given, every letter must belong to it.
    """
    return normalize(_Parser(text, alphabet).parse())


def parse_raw(text: str, alphabet: Alphabet | None = None) -> Regex:
    """Like :func:`parse` but without normalization (binary operators nest left)."""
    return _Parser(text, alphabet).parse()


def to_text(r: Regex) -> str:
    """Print ``r`` in the parser's syntax with as few parentheses as possible."""
    k = r.kind
    if k == EMPTY_K:
        return "@"
    if k == EPSILON_K:
        return "_"
    if k == LETTER_K:
        return r.sym
    if k == STAR_K:
        return _wrap(r.args[0], _PREC[STAR_K]) + "*"
    if k == COMPLEMENT_K:
        return "!" + _wrap(r.args[0], _PREC[COMPLEMENT_K])
    prec = _PREC[k]
    op = _OP_CHAR[k]
    if k == DIFF_K:
        return _wrap(r.args[0], prec) + op + _wrap(r.args[1], prec + 1)
    return op.join(_wrap(a, prec + 1) for a in r.args)


def _wrap(r: Regex, min_prec: int) -> str:
    s = to_text(r)
    return s if _PREC[r.kind] >= min_prec else f"({s})"
