import random

import pytest
from hypothesis import given, settings

from quotcomp import automata as au
from quotcomp.automata import (
    BOOLEAN_OPS,
    CapExceeded,
    Dfa,
    ExplorationConfig,
    build_dfa,
    complement_dfa,
    concat_dfa,
    dumps,
    equivalent,
    from_table,
    kappa,
    loads,
    minimize,
    product_dfa,
    reverse,
    star_dfa,
)
from quotcomp.regex import EMPTY, EPSILON, Alphabet, derive_letter, normalize, parse, to_text
from quotcomp.verify import operate, random_dfa, random_regex, sample_rng

from oracles import dfa_language, language, matches, random_dfas, words

AB = Alphabet("ab")


def dfa(text, alphabet=AB):
    return build_dfa(parse(text, alphabet), alphabet)


class TestBuildDfa:
    def test_empty(self):
        d = build_dfa(EMPTY, AB)
        assert d.state_count == 1 and not d.accepting

    def test_a_star_b(self):
        d = dfa("a*b")
        assert d.state_count == 3
        assert set(d.labels) == {parse("a*b"), EPSILON, EMPTY}
        assert d.labels[d.initial] == parse("a*b")

    def test_sigma_star(self):
        d = dfa("(a|b)*")
        assert d.state_count == 1
        assert d.accepting == {0}
        assert d.transitions == ((0, 0),)

    @pytest.mark.parametrize("text", ["(a|b)*a", "!(ab)*&a*", "(a^b)*-ba", "a*b*a*"])
    def test_labels_follow_derivatives(self, text):
        d = dfa(text)
        for q, lab in enumerate(d.labels):
            assert normalize(lab) == lab
            for i, c in enumerate(AB):
                assert d.labels[d.transitions[q][i]] == normalize(derive_letter(lab, c))

    def test_cap(self):
        with pytest.raises(CapExceeded):
            build_dfa(parse("(a|b)*a(a|b)(a|b)(a|b)"), AB, ExplorationConfig(max_states=4))

    @pytest.mark.parametrize("text", ["(a|b)*a", "!(ab)*&a*", "a*b*a*"])
    def test_accepting_iff_nullable_label(self, text):
        d = dfa(text)
        assert d.accepting == {q for q, lab in enumerate(d.labels) if lab.nullable}


class TestMinimize:
    def test_idempotent(self):
        m = minimize(dfa("(a|b)*ab"))
        assert minimize(m) == m

    def test_merges_sinks(self):
        d = Dfa(AB, ((1, 1), (1, 1)), 0, frozenset())
        assert d.state_count == 2
        assert minimize(d).state_count == 1

    def test_redundant_form(self):
        redundant = dfa("(a*|b*|(a|b)*)*|_")
        assert minimize(redundant) == minimize(dfa("(a|b)*"))

    @settings(max_examples=100, deadline=None)
    @given(random_dfas())
    def test_preserves_language(self, d):
        assert equivalent(d, minimize(d))
        assert dfa_language(minimize(d), 6) == dfa_language(d, 6)

    @settings(max_examples=100, deadline=None)
    @given(random_dfas())
    def test_canonical_numbering(self, d):
        # relabelling the input does not change the canonical output
        n = d.state_count
        perm = list(range(n))
        random.Random(n).shuffle(perm)
        rows = [None] * n
        for q in range(n):
            rows[perm[q]] = tuple(perm[t] for t in d.transitions[q])
        shuffled = Dfa(AB, tuple(rows), perm[d.initial], frozenset(perm[q] for q in d.accepting))
        assert minimize(shuffled) == minimize(d)


class TestKappa:
    def test_examples(self):
        assert kappa(EMPTY, AB) == 1
        assert kappa(parse("a*b"), AB) == 3

    def test_counter_language(self):
        # {w : |w|_a = 2 mod 3}
        r = parse("b*(ab*)(ab*)((ab*)(ab*)(ab*))*")
        assert kappa(r, AB) == 3

    def test_a_star_b_quotients_distinct(self):
        qs = [parse("a*b"), EPSILON, EMPTY]
        langs = [frozenset(language(q, "ab", 4)) for q in qs]
        assert len(set(langs)) == 3


class TestProduct:
    def test_intersection_self(self):
        d = minimize(dfa("a*"))
        assert equivalent(product_dfa(d, d, "intersection"), d)

    def test_difference_universal(self):
        d = dfa("a*b")
        assert au.is_empty(product_dfa(d, dfa("(a|b)*"), "difference"))

    def test_symdiff_self(self):
        d = dfa("(ab|b)*")
        assert au.is_empty(product_dfa(d, d, "symdiff"))

    def test_alphabet_mismatch(self):
        with pytest.raises(ValueError):
            product_dfa(dfa("a"), dfa("a", Alphabet("abc")), "union")

    @pytest.mark.parametrize("op", sorted(BOOLEAN_OPS))
    def test_two_paths_agree(self, op):
        for i in range(500):
            rng = sample_rng(7, i)
            k = random_regex(rng, rng.randint(1, 6), AB)
            l_ = random_regex(rng, rng.randint(1, 6), AB)
            direct = kappa(operate(op, k, l_), AB)
            second = minimize(product_dfa(build_dfa(k, AB), build_dfa(l_, AB), op)).state_count
            assert direct == second, (to_text(k), to_text(l_))

    @settings(max_examples=60, deadline=None)
    @given(random_dfas(max_states=4), random_dfas(max_states=4))
    def test_languages(self, dk, dl):
        lk, ll = dfa_language(dk, 5), dfa_language(dl, 5)
        for op, f in BOOLEAN_OPS.items():
            got = dfa_language(product_dfa(dk, dl, op), 5)
            assert got == {w for w in words("ab", 5) if f(w in lk, w in ll)}


class TestComplement:
    def test_kappa_preserved(self):
        for i in range(200):
            rng = sample_rng(3, i)
            r = random_regex(rng, rng.randint(1, 6), AB)
            assert kappa(operate("complement", r), AB) == kappa(r, AB)

    def test_language(self):
        d = dfa("ab*")
        c = complement_dfa(d)
        for w in words("ab", 5):
            assert c.accepts(w) != d.accepts(w)


class TestReverse:
    def test_single_word(self):
        assert equivalent(reverse(dfa("ab")), dfa("ba"))

    def test_palindromic(self):
        assert equivalent(reverse(dfa("a*")), dfa("a*"))

    def test_subset_bound(self):
        for i in range(100):
            rng = random.Random(i)
            d = random_dfa(rng, rng.randint(1, 6), AB)
            assert reverse(d).state_count <= 2 ** d.state_count

    @settings(max_examples=100, deadline=None)
    @given(random_dfas())
    def test_double_reversal(self, d):
        assert equivalent(reverse(reverse(d)), minimize(d))

    @settings(max_examples=100, deadline=None)
    @given(random_dfas())
    def test_language(self, d):
        lang = dfa_language(d, 5)
        assert dfa_language(reverse(d), 5) == {w[::-1] for w in lang}

    def test_cap(self):
        d = minimize(dfa("(a|b)*a(a|b)(a|b)(a|b)"))
        with pytest.raises(CapExceeded):
            reverse(reverse(d), ExplorationConfig(max_states=3))


class TestConcatStar:
    @settings(max_examples=60, deadline=None)
    @given(random_dfas(max_states=4), random_dfas(max_states=4))
    def test_concat(self, dk, dl):
        lk, ll = dfa_language(dk, 5), dfa_language(dl, 5)
        expect = {w for w in words("ab", 5) if any(w[:i] in lk and w[i:] in ll for i in range(len(w) + 1))}
        assert dfa_language(concat_dfa(dk, dl), 5) == expect

    @pytest.mark.parametrize("text", ["ab", "a|ba", "(ab)*b", "!(a*)", "b*a(a|b)"])
    def test_star(self, text):
        r = parse(text, AB)
        s = operate("star", r)
        got = dfa_language(star_dfa(dfa(text)), 6)
        assert got == {w for w in words("ab", 6) if matches(s, w)}


class TestEquivalent:
    def test_examples(self):
        d = dfa("(a|b)*ab")
        assert equivalent(minimize(d), d)
        assert not equivalent(dfa("a"), dfa("b"))
        assert equivalent(dfa("(a|b)*"), dfa("!@"))


class TestTextFormat:
    @settings(max_examples=100, deadline=None)
    @given(random_dfas())
    def test_round_trip(self, d):
        assert loads(dumps(d)) == d

    def test_sample(self):
        text = "dfa 3 ab\ninitial 0\naccepting 1\n0: 0 1\n1: 2 2\n2: 2 2\n"
        d = loads(text)
        assert equivalent(d, dfa("a*b"))
        assert dumps(d) == text

    def test_empty_accepting_list(self):
        d = loads("dfa 1 ab\ninitial 0\naccepting\n0: 0 0\n")
        assert not d.accepting

    @pytest.mark.parametrize(
        "text",
        [
            "dfa 2 ab\ninitial 0\naccepting\n0: 0 1\n",  # missing state
            "dfa 1 ab\ninitial 0\naccepting\n0: 0\n",  # not total
            "dfa 2 ab\ninitial 0\naccepting\n0: 0 0\n1: 1 1\n",  # unreachable
            "dfa 1 ab\ninitial 3\naccepting\n0: 0 0\n",
            "nfa 1 ab\ninitial 0\naccepting\n0: 0 0\n",
            "dfa 1 ab\ninitial 0\n",
            "dfa 1 ab\ninitial 0\naccepting\n0 0 0\n",
        ],
    )
    def test_rejects(self, text):
        with pytest.raises(au.DfaFormatError):
            loads(text)


def test_from_table_drops_unreachable():
    d = from_table(AB, [[0, 2], [1, 1], [2, 0]], 0, {1, 2})
    assert d.state_count == 2
    assert d.accepting == {1}
