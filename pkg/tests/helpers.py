"""Shared random generators and oracle adapters for the test suite."""

from __future__ import annotations

import random

from posshorn import (
    FALSUM,
    HornClause,
    HornKB,
    PossClause,
    PossKB,
    Valuation,
)


def variables(n: int) -> list[str]:
    return [f"x{i}" for i in range(n)]


def random_clause(
    rng: random.Random,
    vars_: list[str],
    max_antecedent: int = 3,
    falsum_prob: float = 0.05,
) -> HornClause:
    size = rng.randint(0, min(max_antecedent, len(vars_)))
    antecedent = frozenset(rng.sample(vars_, size))
    rest = [v for v in vars_ if v not in antecedent]
    if not rest or rng.random() < falsum_prob:
        return HornClause(antecedent, FALSUM)
    return HornClause(antecedent, rng.choice(rest))


def random_horn_kb(
    rng: random.Random,
    n_vars: int,
    max_clauses: int,
    max_antecedent: int = 3,
    falsum_prob: float = 0.05,
) -> HornKB:
    vars_ = variables(n_vars)
    n_clauses = rng.randint(0, max_clauses)
    clauses = {
        random_clause(rng, vars_, max_antecedent, falsum_prob)
        for _ in range(n_clauses)
    }
    return HornKB.of(clauses, vars_)


def random_valuation(rng: random.Random, precision: int) -> Valuation:
    return Valuation(rng.randint(1, 10**precision), precision)


def random_poss_kb(
    rng: random.Random,
    n_vars: int,
    max_clauses: int,
    precision: int,
    max_antecedent: int = 3,
    falsum_prob: float = 0.05,
) -> PossKB:
    vars_ = variables(n_vars)
    n_clauses = rng.randint(0, max_clauses)
    clauses = {
        PossClause(
            random_clause(rng, vars_, max_antecedent, falsum_prob),
            random_valuation(rng, precision),
        )
        for _ in range(n_clauses)
    }
    return PossKB.of(clauses, vars_)


def random_poss_kb_with_prec(
    rng: random.Random, n_vars: int, max_clauses: int, precision: int, **kw
) -> PossKB:
    """A random KB whose semantic precision is exactly ``precision``.

    Syntactic precision is not enough: a fine-grained valuation can be
    redundant (a coarser clause already carries the formula), leaving the KB
    equivalent to one of lower precision.  Every KB is equivalent to
    {(phi, val(phi)) | phi in it}, so the semantic precision is the maximum
    precision over its formulas' exact degrees.
    """
    from posshorn import val_of

    while True:
        kb = random_poss_kb(rng, n_vars, max_clauses, precision, **kw)
        if not kb.clauses:
            continue
        semantic = max(val_of(kb, c.formula).prec() for c in kb.clauses)
        if semantic == precision:
            return kb
