"""Possibilistic Horn knowledge bases: cuts, entailment, val, inc.

A possibilistic clause pairs a Horn clause with a positive valuation (a lower
bound on its necessity degree).  Entailment of (phi, a) reduces to classical
entailment from the a-cut, so every operation here runs on top of the forward
chaining in :mod:`posshorn.horn`.

The module also materializes the least-specific possibility distribution a KB
induces over the full assignment space, which gives a second, independent
route to the same entailment answers: necessity(pi_K, phi) must equal
val(phi, K).  That agreement is the semantic cross-check behind the
``oracle-check`` command.

KB file format, one clause per line: ``ANT -> CONS @ DECIMAL`` with ``#``
comments and blank lines ignored.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

from .horn import (
    BRUTE_FORCE_CAP,
    HornClause,
    HornKB,
    HornSyntaxError,
    assignments,
    entails,
    equivalent,
    parse_clause,
    _satisfies,
)
from .valuation import Valuation


@dataclass(frozen=True, order=True)
class PossClause:
    """A Horn clause asserted to hold with necessity at least ``valuation``."""

    sort_index: tuple = field(init=False, repr=False)
    formula: HornClause
    valuation: Valuation

    def __post_init__(self) -> None:
        if self.valuation.is_zero:
            raise ValueError(f"formula valuation must be positive: {self.formula}")
        object.__setattr__(
            self, "sort_index", (self.formula.sort_index, self.valuation)
        )

    def __str__(self) -> str:
        return f"{self.formula} @ {self.valuation}"


@dataclass(frozen=True)
class PossKB:
    """An immutable finite set of possibilistic clauses over a signature."""

    clauses: frozenset[PossClause]
    signature: frozenset[str]

    def __post_init__(self) -> None:
        object.__setattr__(self, "clauses", frozenset(self.clauses))
        object.__setattr__(self, "signature", frozenset(self.signature))
        occurring = {v for c in self.clauses for v in c.formula.variables}
        if not occurring <= self.signature:
            missing = sorted(occurring - self.signature)
            raise HornSyntaxError(f"clause variables not in signature: {missing}")

    @classmethod
    def of(cls, clauses: Iterable[PossClause], signature: Iterable[str] = ()) -> "PossKB":
        clauses = frozenset(clauses)
        sig = frozenset(signature) | {
            v for c in clauses for v in c.formula.variables
        }
        return cls(clauses, sig)

    @cached_property
    def sorted_clauses(self) -> tuple[PossClause, ...]:
        return tuple(sorted(self.clauses))

    @cached_property
    def levels(self) -> tuple[Valuation, ...]:
        """The distinct valuations occurring in the KB, increasing."""
        return tuple(sorted({c.valuation for c in self.clauses}))

    def prec(self) -> int:
        """Maximum precision over clause valuations (1 for the empty KB)."""
        return max((v.prec() for v in self.levels), default=1)

    @cached_property
    def _cut_cache(self) -> dict[Valuation, HornKB]:
        return {}

    def with_signature(self, extra: Iterable[str]) -> "PossKB":
        return PossKB(self.clauses, self.signature | frozenset(extra))

    def __str__(self) -> str:
        return "\n".join(str(c) for c in self.sorted_clauses)


def projection(kb: PossKB) -> HornKB:
    """Drop the valuations."""
    return HornKB(frozenset(c.formula for c in kb.clauses), kb.signature)


def cut(kb: PossKB, a: Valuation, strict: bool = False) -> PossKB:
    """Clauses with valuation >= a (or > a when strict)."""
    keep = (
        (lambda c: c.valuation > a) if strict else (lambda c: c.valuation >= a)
    )
    return PossKB(frozenset(c for c in kb.clauses if keep(c)), kb.signature)


def _cut_projection(kb: PossKB, a: Valuation) -> HornKB:
    """Projection of the non-strict a-cut, memoized on the KB instance.

    Cuts only change at the valuations present in the KB, so the cache is
    keyed by the smallest KB level >= a.
    """
    key = next((v for v in kb.levels if v >= a), None)
    if key is None:
        return HornKB(frozenset(), kb.signature)
    cache = kb._cut_cache
    if key not in cache:
        cache[key] = projection(cut(kb, key))
    return cache[key]


def poss_entails(kb: PossKB, c: PossClause) -> bool:
    """kb |= (phi, a) iff the projection of the a-cut classically entails phi."""
    return entails(_cut_projection(kb, c.valuation), c.formula)


def val_of(kb: PossKB, phi: HornClause) -> Valuation:
    """Largest degree at which phi is entailed; 1 for tautologies, else the
    greatest KB level whose cut entails phi, else exact zero."""
    if phi.is_tautology:
        return Valuation.one()
    for level in reversed(kb.levels):
        if entails(_cut_projection(kb, level), phi):
            return level
    return Valuation.zero()


def inc_of(kb: PossKB) -> Valuation:
    """Inconsistency degree: the degree at which falsum is entailed."""
    return val_of(kb, HornClause(frozenset(), None))


def poss_equivalent(a: PossKB, b: PossKB) -> bool:
    """Equivalence via classical equivalence of cuts at every occurring level.

    Sound and complete because cuts only change at valuations present in
    either KB; the level 1 is included for KBs with no clauses at value 1.
    """
    joint = a.signature | b.signature
    levels = set(a.levels) | set(b.levels) | {Valuation.one()}
    for level in levels:
        ka = _cut_projection(a, level).with_signature(joint)
        kb = _cut_projection(b, level).with_signature(joint)
        if not equivalent(ka, kb):
            return False
    return True


# -- brute-force semantic oracle -------------------------------------------


@dataclass(frozen=True)
class Distribution:
    """A possibility degree for every assignment over a signature."""

    degrees: dict[frozenset[str], Valuation]
    signature: frozenset[str]

    def __getitem__(self, world: frozenset[str]) -> Valuation:
        return self.degrees[world]


def pi_k(kb: PossKB, cap: int = BRUTE_FORCE_CAP) -> Distribution:
    """The least-specific possibility distribution compatible with the KB.

    An assignment satisfying every formula gets degree 1; otherwise its
    degree is min over violated formulas of 1 - valuation.
    """
    degrees: dict[frozenset[str], Valuation] = {}
    for world in assignments(kb.signature, cap):
        violated = [
            c.valuation for c in kb.clauses if not _satisfies(world, c.formula)
        ]
        if violated:
            degrees[world] = max(violated).complement()
        else:
            degrees[world] = Valuation.one()
    return Distribution(degrees, kb.signature)


def necessity(dist: Distribution, phi: HornClause) -> Valuation:
    """N(phi) = 1 - Pi(not phi): min of 1 - degree over falsifying worlds."""
    best: Valuation | None = None
    for world, degree in dist.degrees.items():
        if not _satisfies(world, phi):
            value = degree.complement()
            if best is None or value < best:
                best = value
    return Valuation.one() if best is None else best


# -- text format -------------------------------------------------------------


def parse_poss_clause(text: str) -> PossClause:
    if "@" not in text:
        raise HornSyntaxError(f"missing '@ VALUATION' in: {text!r}")
    clause_text, val_text = text.rsplit("@", 1)
    return PossClause(parse_clause(clause_text), Valuation.parse(val_text.strip()))


def parse_poss_kb(text: str) -> PossKB:
    """Parse a possibilistic KB file (tautologies other than v -> v dropped)."""
    clauses = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            c = parse_poss_clause(line)
        except (HornSyntaxError, ValueError) as exc:
            raise HornSyntaxError(f"line {lineno}: {exc}") from exc
        f = c.formula
        if f.is_tautology and f.antecedent != frozenset([f.consequent]):
            continue
        clauses.append(c)
    return PossKB.of(clauses)
