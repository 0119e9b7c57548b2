"""One-step rewriting, normalization, and the word problem.

The deterministic normalization strategy used everywhere is: leftmost
position first, then lowest rule index.  Fixing the strategy makes every
downstream certificate (confluence bases, decompositions, transported
generators) reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import FuelError, MatchError, NotConvergentError
from .presentation import (
    GREATER,
    OrderSpec,
    Presentation,
    Rule,
    ValidationReport,
    Word,
    compare_words,
    validate,
)

DEFAULT_FUEL = 10**6


@dataclass(frozen=True)
class Redex:
    """An occurrence of a rule's left-hand side in a word."""

    rule: Rule
    pos: int

    @property
    def rule_id(self) -> str:
        return self.rule.rule_id


@dataclass(frozen=True)
class RewriteStep:
    """A signed, positioned rule application with its own source word.

    Sign +1 replaces the lhs by the rhs at ``pos``; sign -1 replaces the
    rhs by the lhs.  The match is checked at construction, so a step value
    is always applicable.
    """

    source: Word
    rule: Rule
    pos: int
    sign: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if self.pos < 0:
            raise MatchError(f"negative position {self.pos}")
        factor = self.matched
        if self.source[self.pos : self.pos + len(factor)] != factor or (
            self.pos > len(self.source)
        ):
            side = "lhs" if self.sign > 0 else "rhs"
            raise MatchError(
                f"{side} of rule {self.rule.rule_id} does not occur at "
                f"position {self.pos} of {''.join(self.source) or 'ε'!r}"
            )

    @property
    def matched(self) -> Word:
        return self.rule.lhs if self.sign > 0 else self.rule.rhs

    @property
    def replacement(self) -> Word:
        return self.rule.rhs if self.sign > 0 else self.rule.lhs


def apply_step(step: RewriteStep) -> Word:
    """The target word of a step."""
    n = len(step.matched)
    return step.source[: step.pos] + step.replacement + step.source[step.pos + n :]


@dataclass(frozen=True)
class Path:
    """A chain of rewriting steps starting at ``base``.

    Consecutive steps must chain (each step's source is the previous
    target); this is checked at construction.  The empty path at a word is
    the identity.  See the track module for the algebra on paths.
    """

    base: Word
    steps: tuple[RewriteStep, ...] = ()

    def __post_init__(self):
        current = self.base
        for step in self.steps:
            if step.source != current:
                raise ValueError(
                    f"step {step.rule.rule_id}@{step.pos} starts at "
                    f"{''.join(step.source) or 'ε'}, expected {''.join(current) or 'ε'}"
                )
            current = apply_step(step)
        object.__setattr__(self, "_target", current)

    @property
    def target(self) -> Word:
        return self._target  # type: ignore[attr-defined]

    @property
    def is_closed(self) -> bool:
        return self.base == self.target

    def __len__(self) -> int:
        return len(self.steps)


def find_redexes(w: Word, p: Presentation) -> tuple[Redex, ...]:
    """All rule occurrences in ``w``, sorted by position then rule index.

    Empty exactly when ``w`` is a normal form.
    """
    out: list[Redex] = []
    for pos in range(len(w)):
        for rule in p.rules:
            if w[pos : pos + len(rule.lhs)] == rule.lhs:
                out.append(Redex(rule, pos))
    return tuple(out)


def normalize(w: Word, p: Presentation, fuel: int = DEFAULT_FUEL) -> tuple[Word, Path]:
    """Reduce ``w`` to a normal form with the leftmost-lowest strategy.

    Returns the normal form and the canonical reduction path.  ``fuel``
    bounds the number of steps; exceeding it raises FuelError rather than
    truncating silently (relevant only when termination was not certified).
    """
    steps: list[RewriteStep] = []
    current = w
    remaining = fuel
    while True:
        redexes = find_redexes(current, p)
        if not redexes:
            break
        if remaining <= 0:
            raise FuelError(
                f"no normal form within {fuel} steps from {''.join(w) or 'ε'!r}"
            )
        remaining -= 1
        first = redexes[0]
        step = RewriteStep(current, first.rule, first.pos, 1)
        steps.append(step)
        current = apply_step(step)
    return current, Path(w, tuple(steps))


@lru_cache(maxsize=None)
def normal_path(p: Presentation, w: Word) -> Path:
    """Cached canonical reduction path of ``w`` (default fuel)."""
    return normalize(w, p)[1]


def normal_form(p: Presentation, w: Word) -> Word:
    return normal_path(p, w).target


@dataclass(frozen=True)
class TerminationCertificate:
    """Records the order used and any rules it fails to orient."""

    order: "OrderSpec"
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def check_termination(p: Presentation) -> TerminationCertificate:
    """Certify termination via the presentation's reduction order.

    Succeeds exactly when every rule decreases under the order; since the
    order is total, well-founded and compatible with concatenation on both
    sides, this certifies that no infinite reduction sequence exists.
    """
    report: ValidationReport = validate(p)
    return TerminationCertificate(p.order, report.offending)


def words_equal(u: Word, v: Word, p: Presentation, cert=None) -> bool:
    """Decide equality in the presented monoid via normal forms.

    Requires a convergence certificate (computed and cached if not
    supplied); raises NotConvergentError otherwise.
    """
    if cert is None:
        from .critical import is_convergent

        cert = is_convergent(p)
    if not cert.ok:
        raise NotConvergentError(
            "word problem needs a convergent presentation; run completion first"
        )
    return normal_form(p, u) == normal_form(p, v)


def step_decreases(step: RewriteStep, p: Presentation) -> bool:
    """True when a positive step strictly decreases the order (termination)."""
    return compare_words(p.order, step.source, apply_step(step)) is GREATER
