"""Critical branchings, generating confluences, and convergence checking.

Two rule occurrences in the same word either act on disjoint factors (and
then commute by exchange) or overlap; the minimal overlaps are the
critical branchings.  A terminating presentation is locally confluent
exactly when every critical branching completes to a common normal form,
and then confluent by Newman's lemma.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .errors import NotJoinableError
from .presentation import Presentation, Rule, Word
from .rewrite import (
    Path,
    RewriteStep,
    TerminationCertificate,
    apply_step,
    check_termination,
    find_redexes,
    normal_path,
)
from .track import compose, free_reduce, invert

PROPER = "proper-overlap"
CONTAINMENT = "containment"


@dataclass(frozen=True)
class CriticalBranching:
    """A minimal overlap of two rule left-hand sides.

    ``rule1`` matches the overlap word at position 0; ``rule2`` matches at
    ``offset``.  For a proper overlap the two sides stick out of each
    other; for a containment rule2's lhs sits inside rule1's.
    """

    rule1: Rule
    rule2: Rule
    offset: int
    overlap: Word
    kind: str

    @property
    def redexes(self) -> tuple[tuple[str, int], tuple[str, int]]:
        return (self.rule1.rule_id, 0), (self.rule2.rule_id, self.offset)


def _branching_key(overlap: Word, redex_a: tuple[str, int], redex_b: tuple[str, int]):
    return overlap, tuple(sorted([(redex_a[1], redex_a[0]), (redex_b[1], redex_b[0])]))


def critical_branchings(p: Presentation) -> tuple[CriticalBranching, ...]:
    """All critical branchings, each unordered redex pair reported once,
    sorted by (rule1 index, rule2 index, offset)."""
    found: dict[object, CriticalBranching] = {}
    for i, r1 in enumerate(p.rules):
        for j, r2 in enumerate(p.rules):
            l1, l2 = r1.lhs, r2.lhs
            # proper overlaps: a suffix of l1 is a prefix of l2 sticking out
            for off in range(1, len(l1)):
                k = len(l1) - off
                if k < len(l2) and l1[off:] == l2[:k]:
                    overlap = l1 + l2[k:]
                    key = _branching_key(overlap, (r1.rule_id, 0), (r2.rule_id, off))
                    found.setdefault(
                        key, CriticalBranching(r1, r2, off, overlap, PROPER)
                    )
            # containments: l2 occurs inside l1 (same-position same-rule excluded)
            if len(l2) <= len(l1):
                for off in range(len(l1) - len(l2) + 1):
                    if l1[off : off + len(l2)] == l2 and not (i == j and off == 0):
                        key = _branching_key(l1, (r1.rule_id, 0), (r2.rule_id, off))
                        found.setdefault(
                            key, CriticalBranching(r1, r2, off, l1, CONTAINMENT)
                        )
    return tuple(
        sorted(
            found.values(),
            key=lambda b: (
                p.rule_position[b.rule1.rule_id],
                p.rule_position[b.rule2.rule_id],
                b.offset,
            ),
        )
    )


@dataclass(frozen=True)
class GeneratingConfluence:
    """A completed critical branching and its boundary loop.

    ``step1``/``step2`` are the branching's two one-step paths from the
    overlap word; ``completion1``/``completion2`` are their canonical
    normalizations.  The loop is the free-reduced boundary
    (step1 ⁎ completion1) ⁎ (step2 ⁎ completion2)⁻, closed at the overlap.
    """

    branching: CriticalBranching
    step1: Path
    step2: Path
    completion1: Path
    completion2: Path
    loop: Path


def generating_confluence(b: CriticalBranching, p: Presentation) -> GeneratingConfluence:
    """Complete both branches with the canonical strategy.

    Raises NotJoinableError when the branches reach distinct normal forms,
    which is precisely a local-confluence counterexample.
    """
    step1 = Path(b.overlap, (RewriteStep(b.overlap, b.rule1, 0, 1),))
    step2 = Path(b.overlap, (RewriteStep(b.overlap, b.rule2, b.offset, 1),))
    completion1 = normal_path(p, step1.target)
    completion2 = normal_path(p, step2.target)
    if completion1.target != completion2.target:
        raise NotJoinableError(b, completion1.target, completion2.target)
    loop = free_reduce(
        compose(compose(step1, completion1), invert(compose(step2, completion2)))
    )
    return GeneratingConfluence(b, step1, step2, completion1, completion2, loop)


@dataclass(frozen=True)
class BranchingFailure:
    branching: CriticalBranching
    left_nf: Word
    right_nf: Word


@dataclass(frozen=True)
class LocalConfluenceReport:
    failures: tuple[BranchingFailure, ...]

    @property
    def ok(self) -> bool:
        return not self.failures


def is_locally_confluent(p: Presentation) -> LocalConfluenceReport:
    """Check every critical branching; non-critical local branchings commute
    by exchange or reduce to a containment, so they need no check."""
    failures: list[BranchingFailure] = []
    for b in critical_branchings(p):
        try:
            generating_confluence(b, p)
        except NotJoinableError as exc:
            failures.append(BranchingFailure(b, exc.left_nf, exc.right_nf))
    return LocalConfluenceReport(tuple(failures))


@dataclass(frozen=True)
class ConvergenceCertificate:
    termination: TerminationCertificate
    local_confluence: LocalConfluenceReport | None

    @property
    def ok(self) -> bool:
        return self.termination.ok and (
            self.local_confluence is not None and self.local_confluence.ok
        )


@lru_cache(maxsize=None)
def is_convergent(p: Presentation) -> ConvergenceCertificate:
    """Termination by order plus local confluence of all critical branchings
    (hence confluence, by Newman's lemma for terminating systems)."""
    termination = check_termination(p)
    if not termination.ok:
        return ConvergenceCertificate(termination, None)
    return ConvergenceCertificate(termination, is_locally_confluent(p))


@dataclass(frozen=True)
class BruteForceReport:
    max_len: int
    counterexample: tuple[Word, Word, Word] | None

    @property
    def ok(self) -> bool:
        return self.counterexample is None


def words_up_to(alphabet: tuple[str, ...], max_len: int):
    """All words over the alphabet of length at most max_len, shortest first."""
    for n in range(max_len + 1):
        for combo in itertools.product(alphabet, repeat=n):
            yield combo


def brute_force_confluence(p: Presentation, max_len: int) -> BruteForceReport:
    """Exhaustive confluence oracle: for every word up to ``max_len``, every
    reduct must reach one single normal form.  Intended for small bounds on
    terminating presentations."""
    nf_sets: dict[Word, frozenset[Word]] = {}

    def nfs(w: Word) -> frozenset[Word]:
        cached = nf_sets.get(w)
        if cached is not None:
            return cached
        redexes = find_redexes(w, p)
        if not redexes:
            result = frozenset((w,))
        else:
            out: set[Word] = set()
            for redex in redexes:
                out |= nfs(apply_step(RewriteStep(w, redex.rule, redex.pos, 1)))
            result = frozenset(out)
        nf_sets[w] = result
        return result

    for w in words_up_to(p.generators, max_len):
        forms = sorted(nfs(w))
        if len(forms) > 1:
            return BruteForceReport(max_len, (w, forms[0], forms[1]))
    return BruteForceReport(max_len, None)
