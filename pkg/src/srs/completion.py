"""Knuth–Bendix completion with inter-reduction, and a bounded
congruence-equivalence check between presentations.

Completion repeatedly orients the normal forms of unjoinable critical
branchings into new rules, keeping the rule set inter-reduced (right-hand
sides normalized, rules with reducible left-hand sides collapsed).  The
output presents the same monoid and, when the procedure stops within its
budget, is convergent.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import FuelError, NotTerminatingError, UnorientableError
from .presentation import (
    GREATER,
    LESS,
    Presentation,
    Rule,
    Word,
    compare_words,
)
from .rewrite import check_termination, normalize
from .critical import critical_branchings, words_up_to

DEFAULT_RULE_FUEL = 256


@dataclass(frozen=True)
class CompletionEvent:
    """One trace entry: an added, removed, or right-simplified rule."""

    kind: str  # "add" | "remove" | "simplify"
    rule_id: str
    lhs: Word
    rhs: Word
    overlap: Word | None = None


def _with_rules(p: Presentation, rules: list[Rule]) -> Presentation:
    return Presentation(p.generators, tuple(rules), p.order)


def _orient(p: Presentation, u: Word, v: Word) -> tuple[Word, Word]:
    cmp = compare_words(p.order, u, v)
    if cmp is GREATER:
        return u, v
    if cmp is LESS:
        return v, u
    raise UnorientableError(
        f"the order cannot orient {''.join(u) or 'ε'} = {''.join(v) or 'ε'}"
    )


def knuth_bendix(
    p: Presentation, fuel: int = DEFAULT_RULE_FUEL
) -> tuple[Presentation, tuple[CompletionEvent, ...]]:
    """Complete a terminating presentation into a convergent one.

    Branchings are processed in their canonical sorted order and the rule
    set is re-enumerated after every addition, so the result is
    deterministic.  ``fuel`` bounds the number of added rules; exceeding it
    raises FuelError.  Every added rule's sides are congruent in the input
    presentation by construction.
    """
    if not check_termination(p).ok:
        raise NotTerminatingError("completion requires a terminating presentation")

    rules: list[Rule] = list(p.rules)
    trace: list[CompletionEvent] = []
    used_ids = {r.rule_id for r in rules}
    counter = itertools.count(1)
    added = 0

    def fresh_id() -> str:
        while True:
            cand = f"kb{next(counter)}"
            if cand not in used_ids:
                used_ids.add(cand)
                return cand

    def add_rule(u: Word, v: Word, overlap: Word | None):
        nonlocal added
        lhs, rhs = _orient(p, u, v)
        added += 1
        if added > fuel:
            raise FuelError(f"completion did not finish within {fuel} added rules")
        rule = Rule(fresh_id(), lhs, rhs)
        rules.append(rule)
        trace.append(CompletionEvent("add", rule.rule_id, lhs, rhs, overlap))

    def simplify():
        changed = True
        while changed:
            changed = False
            # collapse rules whose lhs the others already reduce
            for idx, rule in enumerate(rules):
                others = rules[:idx] + rules[idx + 1 :]
                q = _with_rules(p, others)
                u, _ = normalize(rule.lhs, q)
                if u != rule.lhs:
                    del rules[idx]
                    trace.append(
                        CompletionEvent("remove", rule.rule_id, rule.lhs, rule.rhs)
                    )
                    v, _ = normalize(rule.rhs, q)
                    if u != v:
                        add_rule(u, v, None)
                    changed = True
                    break
            if changed:
                continue
            # normalize right-hand sides against the full set
            current = _with_rules(p, rules)
            for idx, rule in enumerate(rules):
                rhs, _ = normalize(rule.rhs, current)
                if rhs != rule.rhs:
                    rules[idx] = Rule(rule.rule_id, rule.lhs, rhs)
                    trace.append(
                        CompletionEvent("simplify", rule.rule_id, rule.lhs, rhs)
                    )
                    changed = True
                    break

    simplify()
    while True:
        current = _with_rules(p, rules)
        pending = None
        for b in critical_branchings(current):
            left = b.overlap[:0] + b.rule1.rhs + b.overlap[len(b.rule1.lhs) :]
            right = (
                b.overlap[: b.offset]
                + b.rule2.rhs
                + b.overlap[b.offset + len(b.rule2.lhs) :]
            )
            nf_left, _ = normalize(left, current)
            nf_right, _ = normalize(right, current)
            if nf_left != nf_right:
                pending = (nf_left, nf_right, b.overlap)
                break
        if pending is None:
            return current, tuple(trace)
        add_rule(pending[0], pending[1], pending[2])
        simplify()


# ---------------------------------------------------------------------------
# bounded congruence comparison


def _congruence_classes(p: Presentation, bound: int) -> dict[Word, Word]:
    """Union-find closure of one-step rewriting over all words of length at
    most ``bound``; returns a map from each word to a class representative."""
    parent: dict[Word, Word] = {}

    def find(w: Word) -> Word:
        root = w
        while parent[root] != root:
            root = parent[root]
        while parent[w] != root:
            parent[w], w = root, parent[w]
        return root

    words = list(words_up_to(p.generators, bound))
    for w in words:
        parent[w] = w
    for w in words:
        for rule in p.rules:
            n = len(rule.lhs)
            for pos in range(len(w) - n + 1):
                if w[pos : pos + n] == rule.lhs:
                    rewritten = w[:pos] + rule.rhs + w[pos + n :]
                    if len(rewritten) <= bound:
                        ra, rb = find(w), find(rewritten)
                        if ra != rb:
                            parent[rb] = ra
    # canonicalize on the smallest member so representatives are stable
    best: dict[Word, Word] = {}
    for w in words:
        root = find(w)
        cur = best.get(root)
        if cur is None or (len(w), w) < (len(cur), cur):
            best[root] = w
    return {w: best[find(w)] for w in words}


@dataclass(frozen=True)
class CongruenceReport:
    max_len: int
    witness: tuple[Word, Word] | None

    @property
    def agree(self) -> bool:
        return self.witness is None


def same_congruence(p: Presentation, q: Presentation, max_len: int) -> CongruenceReport:
    """Check that both presentations identify the same pairs of words up to
    ``max_len``, by congruence closure over a slightly larger bound (peaks
    witnessing an equality may pass through longer words)."""
    if p.generators != q.generators:
        raise ValueError("presentations must share the same alphabet")
    slack = max(
        (len(r.lhs) for r in p.rules + q.rules),
        default=1,
    )
    bound = max_len + slack
    classes_p = _congruence_classes(p, bound)
    classes_q = _congruence_classes(q, bound)
    words = [w for w in words_up_to(p.generators, max_len)]
    for i, u in enumerate(words):
        for v in words[i + 1 :]:
            if (classes_p[u] == classes_p[v]) != (classes_q[u] == classes_q[v]):
                return CongruenceReport(max_len, (u, v))
    return CongruenceReport(max_len, None)
