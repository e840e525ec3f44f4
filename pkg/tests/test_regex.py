import pytest
from hypothesis import given, settings

from quotcomp import regex as rx
from quotcomp.regex import (
    EMPTY,
    EPSILON,
    Alphabet,
    Regex,
    derive_letter,
    derive_word,
    normalize,
    nullable,
    parse,
    parse_raw,
    to_text,
)

from oracles import matches, small_regexes, words

a, b, c = rx.letter("a"), rx.letter("b"), rx.letter("c")
AB = Alphabet("ab")


def raw(kind, *args):
    return Regex(kind, args)


class TestAlphabet:
    def test_letters(self):
        assert AB.letters == ("a", "b")
        assert AB.text == "ab"
        assert "a" in AB and "c" not in AB

    @pytest.mark.parametrize("bad", ["", "aa", "aB", "a1"])
    def test_rejects(self, bad):
        with pytest.raises(ValueError):
            Alphabet(bad)


class TestParse:
    def test_star_binds_tighter_than_union(self):
        assert parse_raw("a|b*", AB) == raw(rx.UNION_K, a, raw(rx.STAR_K, b))

    def test_empty_literal(self):
        assert parse_raw("@", AB) == EMPTY
        assert parse_raw("_", AB) == EPSILON

    def test_complement_of_group(self):
        assert parse_raw("!(a&b)", AB) == raw(rx.COMPLEMENT_K, raw(rx.INTERSECT_K, a, b))

    def test_grammar_example(self):
        r = parse_raw("!(a|b)*c - ab")
        left = raw(rx.CONCAT_K, raw(rx.COMPLEMENT_K, raw(rx.STAR_K, raw(rx.UNION_K, a, b))), c)
        assert r == raw(rx.DIFF_K, left, raw(rx.CONCAT_K, a, b))

    def test_precedence_ladder(self):
        # tightest first: concat, &, -, ^, |
        r = parse_raw("a|b^a-b&ab")
        inner = raw(rx.DIFF_K, a, raw(rx.INTERSECT_K, b, raw(rx.CONCAT_K, a, b)))
        assert r == raw(rx.UNION_K, a, raw(rx.SYMDIFF_K, b, inner))

    def test_left_associative(self):
        assert parse_raw("a-b-a") == raw(rx.DIFF_K, raw(rx.DIFF_K, a, b), a)

    def test_whitespace_ignored(self):
        assert parse_raw(" a | b ") == parse_raw("a|b")

    @pytest.mark.parametrize("text, pos", [("a|", 2), ("(a", 2), ("a)", 1), ("A", 0), ("", 0), ("*a", 0)])
    def test_syntax_errors(self, text, pos):
        with pytest.raises(rx.RegexSyntaxError) as err:
            parse(text)
        assert err.value.position == pos

    def test_letter_outside_alphabet(self):
        with pytest.raises(rx.LetterNotInAlphabet):
            parse("abc", AB)


class TestPrint:
    def test_examples(self):
        assert to_text(raw(rx.UNION_K, a, raw(rx.STAR_K, b))) == "a|b*"
        assert to_text(EMPTY) == "@"
        assert to_text(raw(rx.CONCAT_K, a, b)) == "ab"

    @pytest.mark.parametrize(
        "text",
        ["(a|b)*a", "!(a|b)*c-ab", "(ab)*", "!a*", "a-(b-a)", "(a|b)(a^b)", "a&(b|_)", "(a-b)&a"],
    )
    def test_round_trip(self, text):
        r = parse_raw(text)
        assert parse_raw(to_text(r)) == r

    @settings(max_examples=300, deadline=None)
    @given(small_regexes("abc"))
    def test_round_trip_property(self, r):
        n = normalize(r)
        assert parse(to_text(n)) == n
        assert normalize(parse_raw(to_text(r))) == n


class TestNormalize:
    def test_union_aci(self):
        assert normalize(raw(rx.UNION_K, b, a, a)) == raw(rx.UNION_K, a, b)

    def test_concat_units(self):
        assert normalize(raw(rx.CONCAT_K, EPSILON, a)) == a
        assert normalize(raw(rx.CONCAT_K, a, EMPTY)) == EMPTY

    def test_union_empty_unit(self):
        assert normalize(raw(rx.UNION_K, EMPTY, a)) == a

    def test_symdiff_cancels_pairs(self):
        assert normalize(raw(rx.SYMDIFF_K, a, b, a)) == b
        assert normalize(raw(rx.SYMDIFF_K, a, a)) == EMPTY
        assert normalize(raw(rx.SYMDIFF_K, raw(rx.SYMDIFF_K, a, a), b)) == b

    def test_no_extra_simplification(self):
        # star of star and ε beside a star are left alone
        r = normalize(raw(rx.STAR_K, raw(rx.STAR_K, a)))
        assert r.kind == rx.STAR_K and r.args[0].kind == rx.STAR_K
        assert normalize(raw(rx.UNION_K, EPSILON, raw(rx.STAR_K, a))).kind == rx.UNION_K

    def test_diff_not_reordered(self):
        assert normalize(raw(rx.DIFF_K, b, a)) == raw(rx.DIFF_K, b, a)

    @settings(max_examples=300, deadline=None)
    @given(small_regexes())
    def test_idempotent(self, r):
        n = normalize(r)
        assert normalize(n) == n

    @settings(max_examples=150, deadline=None)
    @given(small_regexes())
    def test_preserves_language(self, r):
        n = normalize(r)
        for w in words("ab", 6):
            assert matches(n, w) == matches(r, w), w


class TestNullable:
    def test_examples(self):
        assert nullable(raw(rx.STAR_K, a))
        assert not nullable(raw(rx.CONCAT_K, a, b))
        assert nullable(raw(rx.COMPLEMENT_K, EMPTY))

    @settings(max_examples=300, deadline=None)
    @given(small_regexes())
    def test_matches_oracle(self, r):
        assert nullable(r) == matches(r, "")


class TestDerivatives:
    def test_letter_examples(self):
        assert derive_letter(parse("ab"), "a") == b
        assert derive_letter(parse("a*"), "a") == parse("a*")
        assert derive_letter(parse("a*b"), "b") == EPSILON

    def test_third_example_by_oracle(self):
        r = parse("(a|b)*a")
        d = derive_letter(r, "b")
        assert d == r
        for x in words("ab", 4):
            assert matches(d, x) == matches(r, "b" + x)

    def test_word_examples(self):
        r = parse("a*b|ba")
        assert derive_word(r, "") == r
        assert derive_word(parse("ab"), "ab") == EPSILON
        d = derive_word(parse("a*b"), "aab")
        assert d == EPSILON
        for x in words("ab", 4):
            assert matches(d, x) == matches(parse("a*b"), "aab" + x)

    def test_results_are_normal(self):
        r = parse("!(a|b)*a&(ab)*^b-a")
        for w in words("ab", 3):
            d = derive_word(r, w)
            assert normalize(d) == d

    @settings(max_examples=120, deadline=None)
    @given(small_regexes())
    def test_soundness(self, r):
        memo = {}
        for w in words("ab", 4):
            d = derive_word(r, w, memo)
            for x in words("ab", 4):
                assert matches(d, x) == matches(r, w + x), (w, x)
