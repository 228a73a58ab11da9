"""Propositional Horn clauses, knowledge bases, and entailment.

Entailment is decided by forward chaining with the counter-based linear
algorithm (one pass over each clause antecedent per derived variable), so a
single query costs O(size of the KB).  A truth-table oracle that enumerates
all 2^n assignments is provided as an independent cross-check for small
signatures; it is used by the test suite and the ``oracle-check`` command,
never by the learners.

Text format, one clause per line: ``ANT -> CONS`` where ANT is ``true`` or a
comma-separated variable list and CONS is a variable or ``false``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional

FALSUM = None  # consequent of an integrity constraint, printed as "false"

_VARIABLE = re.compile(r"^[A-Za-z][A-Za-z0-9_]*$")
_RESERVED = {"true", "false"}


class HornSyntaxError(ValueError):
    """Raised for malformed clause or KB text."""


def check_variable(name: str) -> str:
    if not _VARIABLE.match(name) or name in _RESERVED:
        raise HornSyntaxError(f"bad variable name: {name!r}")
    return name


@dataclass(frozen=True, order=True)
class HornClause:
    """A definite clause or integrity constraint: antecedent -> consequent.

    The consequent is a variable, or FALSUM (None) for constraints.  The
    ordering key is (antecedent size, sorted antecedent, consequent), which
    fixes the deterministic scan order used throughout the package.
    """

    sort_index: tuple = field(init=False, repr=False)
    antecedent: frozenset[str]
    consequent: Optional[str]

    def __post_init__(self) -> None:
        object.__setattr__(self, "antecedent", frozenset(self.antecedent))
        key = (
            len(self.antecedent),
            tuple(sorted(self.antecedent)),
            "" if self.consequent is FALSUM else self.consequent,
            self.consequent is FALSUM,
        )
        object.__setattr__(self, "sort_index", key)

    @property
    def is_tautology(self) -> bool:
        return self.consequent is not FALSUM and self.consequent in self.antecedent

    @property
    def variables(self) -> frozenset[str]:
        if self.consequent is FALSUM:
            return self.antecedent
        return self.antecedent | {self.consequent}

    def __str__(self) -> str:
        ant = ",".join(sorted(self.antecedent)) if self.antecedent else "true"
        cons = "false" if self.consequent is FALSUM else self.consequent
        return f"{ant} -> {cons}"


def parse_clause(text: str) -> HornClause:
    """Parse ``ANT -> CONS`` clause text."""
    if "->" not in text:
        raise HornSyntaxError(f"missing '->' in clause: {text!r}")
    left, right = text.split("->", 1)
    left, right = left.strip(), right.strip()
    if left == "true":
        antecedent: frozenset[str] = frozenset()
    else:
        parts = [p.strip() for p in left.split(",")]
        if not all(parts):
            raise HornSyntaxError(f"empty antecedent variable in: {text!r}")
        antecedent = frozenset(check_variable(p) for p in parts)
    consequent = FALSUM if right == "false" else check_variable(right)
    return HornClause(antecedent, consequent)


@dataclass(frozen=True)
class HornKB:
    """An immutable finite set of Horn clauses over an explicit signature."""

    clauses: frozenset[HornClause]
    signature: frozenset[str]

    def __post_init__(self) -> None:
        object.__setattr__(self, "clauses", frozenset(self.clauses))
        object.__setattr__(self, "signature", frozenset(self.signature))
        occurring = {v for c in self.clauses for v in c.variables}
        if not occurring <= self.signature:
            missing = sorted(occurring - self.signature)
            raise HornSyntaxError(f"clause variables not in signature: {missing}")

    @classmethod
    def of(cls, clauses: Iterable[HornClause], signature: Iterable[str] = ()) -> "HornKB":
        clauses = frozenset(clauses)
        sig = frozenset(signature) | {v for c in clauses for v in c.variables}
        return cls(clauses, sig)

    @cached_property
    def sorted_clauses(self) -> tuple[HornClause, ...]:
        return tuple(sorted(self.clauses))

    @cached_property
    def _chain_index(self) -> tuple[dict[str, list[int]], list[int], list[Optional[str]], list[int]]:
        """Watch lists for counter-based chaining.

        Returns (watch, antecedent sizes, consequents, empty-antecedent ids).
        """
        watch: dict[str, list[int]] = {}
        sizes: list[int] = []
        consequents: list[Optional[str]] = []
        roots: list[int] = []
        for i, c in enumerate(self.sorted_clauses):
            sizes.append(len(c.antecedent))
            consequents.append(c.consequent)
            if not c.antecedent:
                roots.append(i)
            for v in c.antecedent:
                watch.setdefault(v, []).append(i)
        return watch, sizes, consequents, roots

    def with_signature(self, extra: Iterable[str]) -> "HornKB":
        return HornKB(self.clauses, self.signature | frozenset(extra))

    @property
    def is_non_trivial(self) -> bool:
        """Satisfiable and falsifiable (some clause body can actually fail)."""
        _, inconsistent = closure(self, frozenset())
        falsifiable = any(not c.is_tautology for c in self.clauses)
        return not inconsistent and falsifiable

    def __str__(self) -> str:
        return "\n".join(str(c) for c in self.sorted_clauses)


def closure(kb: HornKB, seed: Iterable[str]) -> tuple[frozenset[str], bool]:
    """Least superset of seed closed under kb's clauses.

    Returns (closed set, inconsistent flag); the flag is set when a
    falsum-consequent clause fires.  Counter-based: each clause keeps the
    number of antecedent variables not yet derived, so total work is linear
    in the size of the KB.
    """
    seed = frozenset(seed)
    unknown = seed - kb.signature
    if unknown:
        raise HornSyntaxError(f"seed variables not in signature: {sorted(unknown)}")
    watch, sizes, consequents, roots = kb._chain_index
    remaining = list(sizes)
    derived = set(seed)
    inconsistent = False
    queue = list(seed)

    def fire(i: int) -> None:
        nonlocal inconsistent
        cons = consequents[i]
        if cons is FALSUM:
            inconsistent = True
        elif cons not in derived:
            derived.add(cons)
            queue.append(cons)

    for i in roots:
        fire(i)
    while queue:
        v = queue.pop()
        for i in watch.get(v, ()):
            remaining[i] -= 1
            if remaining[i] == 0:
                fire(i)
    return frozenset(derived), inconsistent


def entails(kb: HornKB, clause: HornClause) -> bool:
    """kb |= clause, by chaining from the clause antecedent (ex falso holds)."""
    if not clause.variables <= kb.signature:
        kb = kb.with_signature(clause.variables)
    closed, inconsistent = closure(kb, clause.antecedent)
    if inconsistent:
        return True
    return clause.consequent is not FALSUM and clause.consequent in closed


def entails_all(kb: HornKB, clauses: Iterable[HornClause]) -> bool:
    return all(entails(kb, c) for c in clauses)


def equivalent(a: HornKB, b: HornKB) -> bool:
    """Mutual entailment of all clauses (entails lifts signatures as needed)."""
    return entails_all(b, a.clauses) and entails_all(a, b.clauses)


class SignatureCapExceeded(RuntimeError):
    """Raised when a brute-force operation would enumerate too many assignments."""


BRUTE_FORCE_CAP = 16


def _satisfies(true_vars: frozenset[str], clause: HornClause) -> bool:
    if not clause.antecedent <= true_vars:
        return True
    return clause.consequent is not FALSUM and clause.consequent in true_vars


def assignments(signature: Iterable[str], cap: int = BRUTE_FORCE_CAP):
    """All assignments over the signature, as frozensets of true variables."""
    variables = sorted(signature)
    if len(variables) > cap:
        raise SignatureCapExceeded(
            f"{len(variables)} variables exceed the brute-force cap {cap}"
        )
    for mask in range(2 ** len(variables)):
        yield frozenset(v for i, v in enumerate(variables) if mask >> i & 1)


def tt_entails(kb: HornKB, clause: HornClause, cap: int = BRUTE_FORCE_CAP) -> bool:
    """Semantic entailment by enumerating every assignment (oracle only)."""
    signature = kb.signature | clause.variables
    for world in assignments(signature, cap):
        if all(_satisfies(world, c) for c in kb.clauses) and not _satisfies(
            world, clause
        ):
            return False
    return True


def parse_horn_kb(text: str) -> HornKB:
    """Parse a classical KB file: one clause per line, ``#`` comments.

    Tautological clauses are normalized away, except the designated single
    variable form ``v -> v`` which the learners use as an anchor formula.
    """
    clauses = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            c = parse_clause(line)
        except HornSyntaxError as exc:
            raise HornSyntaxError(f"line {lineno}: {exc}") from exc
        if c.is_tautology and c.antecedent != frozenset([c.consequent]):
            continue
        clauses.append(c)
    return HornKB.of(clauses)
