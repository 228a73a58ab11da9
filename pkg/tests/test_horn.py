"""Horn entailment: chaining, equivalence, and the truth-table cross-check."""

import random
import time

import pytest

from posshorn import (
    HornClause,
    HornKB,
    HornSyntaxError,
    closure,
    entails,
    equivalent,
    parse_clause,
    parse_horn_kb,
    tt_entails,
)
from helpers import random_clause, random_horn_kb, variables


def kb(text: str) -> HornKB:
    return parse_horn_kb(text)


class TestParsing:
    def test_round_trip(self):
        for text in ["a -> b", "a,b -> c", "true -> a", "a -> false", "true -> false"]:
            assert str(parse_clause(text)) == text

    def test_antecedent_order_canonical(self):
        assert str(parse_clause("c,a,b -> d")) == "a,b,c -> d"

    def test_rejects_garbage(self):
        for bad in ["a b", "-> a", "a ->", "a, -> b", "1a -> b", "true -> true"]:
            with pytest.raises(HornSyntaxError):
                parse_clause(bad)

    def test_kb_drops_wide_tautologies_keeps_anchor_form(self):
        parsed = kb("a,b -> a\nc -> c\na -> b")
        texts = {str(c) for c in parsed.clauses}
        assert texts == {"c -> c", "a -> b"}

    def test_comments_and_blanks(self):
        parsed = kb("# header\n\na -> b  # trailing\n")
        assert {str(c) for c in parsed.clauses} == {"a -> b"}

    def test_signature_must_cover_clauses(self):
        with pytest.raises(HornSyntaxError):
            HornKB(frozenset([parse_clause("a -> b")]), frozenset(["a"]))


class TestClosure:
    def test_two_chaining_steps(self):
        closed, inconsistent = closure(kb("a -> b\nb -> c"), {"a"})
        assert closed == {"a", "b", "c"} and not inconsistent

    def test_empty_kb(self):
        closed, inconsistent = closure(HornKB.of((), ["a"]), {"a"})
        assert closed == {"a"} and not inconsistent

    def test_falsum_fires(self):
        _, inconsistent = closure(kb("a -> false"), {"a"})
        assert inconsistent

    def test_unknown_seed_rejected(self):
        with pytest.raises(HornSyntaxError):
            closure(kb("a -> b"), {"zz"})

    def test_monotone_and_idempotent(self):
        rng = random.Random(7)
        for _ in range(50):
            base = random_horn_kb(rng, 6, 8)
            seed = frozenset(rng.sample(variables(6), rng.randint(0, 3)))
            extra = frozenset(rng.sample(variables(6), rng.randint(0, 3)))
            small, _ = closure(base, seed)
            large, _ = closure(base, seed | extra)
            assert small <= large
            again, _ = closure(base, small)
            assert again == small

    def test_long_chain_is_fast(self):
        n = 1000
        text = "\n".join(f"v{i} -> v{i + 1}" for i in range(n))
        chain = parse_horn_kb(text)
        start = time.perf_counter()
        closed, _ = closure(chain, {"v0"})
        elapsed = time.perf_counter() - start
        assert len(closed) == n + 1
        assert elapsed < 0.5


class TestEntailment:
    def test_contained_clause(self):
        assert entails(kb("p -> q1\np -> q2"), parse_clause("p -> q1"))

    def test_conjunctive_consequent_normalization(self):
        # p -> (q1 and q2) is stored as two clauses; each conjunct follows
        assert entails(kb("p -> q1\np -> q2"), parse_clause("p -> q2"))

    def test_tautology_from_empty_kb(self):
        assert entails(HornKB.of(()), HornClause(frozenset(["a"]), "a"))

    def test_ex_falso(self):
        inconsistent = kb("a -> false\ntrue -> a")
        assert entails(inconsistent, parse_clause("x -> y"))

    def test_no_entailment_without_support(self):
        assert not entails(HornKB.of((), ["a", "b"]), parse_clause("a -> b"))


class TestEquivalence:
    def test_redundant_clause(self):
        a = kb("p -> q1\np -> q2")
        b = kb("p -> q1\np -> q2\np,q1 -> q2")
        assert equivalent(a, b)
        assert tt_entails(a, parse_clause("p,q1 -> q2"))

    def test_direction_matters(self):
        assert not equivalent(kb("a -> b"), kb("b -> a"))
        assert not tt_entails(kb("a -> b"), parse_clause("b -> a"))

    def test_reflexive(self):
        a = kb("a -> b\nb -> c")
        assert equivalent(a, a)

    def test_equivalence_relation_on_randoms(self):
        rng = random.Random(11)
        kbs = [random_horn_kb(rng, 5, 6) for _ in range(12)]
        for x in kbs:
            assert equivalent(x, x)
            for y in kbs:
                assert equivalent(x, y) == equivalent(y, x)

    def test_equivalent_kbs_agree_on_sampled_clauses(self):
        rng = random.Random(13)
        found = 0
        while found < 10:
            a = random_horn_kb(rng, 4, 4)
            extra = random_clause(rng, sorted(a.signature))
            b = HornKB.of(set(a.clauses) | {extra}, a.signature)
            if not equivalent(a, b):
                continue
            found += 1
            for _ in range(30):
                query = random_clause(rng, sorted(a.signature))
                assert entails(a, query) == entails(b, query)


class TestTruthTableOracle:
    def test_matches_chaining_on_randoms(self):
        rng = random.Random(3)
        for _ in range(1000):
            base = random_horn_kb(rng, rng.randint(1, 8), 8)
            query = random_clause(rng, sorted(base.signature))
            assert entails(base, query) == tt_entails(base, query)

    def test_inconsistent_kb_entails_everything(self):
        inconsistent = kb("a -> false\ntrue -> a")
        assert tt_entails(inconsistent, parse_clause("b -> c"))

    def test_countermodel(self):
        assert not tt_entails(HornKB.of((), ["a", "b"]), parse_clause("a -> b"))

    def test_cap(self):
        from posshorn.horn import SignatureCapExceeded

        big = HornKB.of((), variables(20))
        with pytest.raises(SignatureCapExceeded):
            tt_entails(big, parse_clause("x0 -> x1"))
