"""Monoid presentations: alphabet, oriented rules, and reduction orders.

A presentation is an alphabet of named generators together with a family of
oriented rewriting rules over words in those generators and a reduction
order (shortlex or weighted shortlex) used to certify termination.  All
values here are immutable after construction and safe to share between
threads.

The line-oriented file format (``#`` starts a comment)::

    generators: <name> <name> ...
    order: shortlex <name> < <name> < ...   |   weights <name>=<int> ...
    rules:
     <id>: <name> <name> ... -> <name> ...

An empty right-hand side denotes the unit.  ``parse_presentation`` and
``print_presentation`` round-trip exactly on valid presentations.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property

from .errors import ParseError

Word = tuple[str, ...]

EMPTY: Word = ()

LESS, EQUAL, GREATER = -1, 0, 1

_NAME_RE = re.compile(r"[A-Za-z0-9_]+\Z")


@dataclass(frozen=True)
class OrderSpec:
    """A reduction order: shortlex or weighted shortlex over a precedence.

    ``precedence`` lists the generators from smallest to largest; for the
    weighted kind, ``weights`` assigns a positive weight to generators
    (unlisted generators weigh 1).
    """

    kind: str
    precedence: tuple[str, ...]
    weights: tuple[tuple[str, int], ...] | None = None

    def __post_init__(self):
        if self.kind not in ("shortlex", "weighted-shortlex"):
            raise ValueError(f"unknown order kind {self.kind!r}")
        if len(set(self.precedence)) != len(self.precedence):
            raise ValueError("precedence lists a generator twice")
        if self.weights is not None:
            for name, w in self.weights:
                if w <= 0:
                    raise ValueError(f"weight of {name!r} must be positive")
            if len({n for n, _ in self.weights}) != len(self.weights):
                raise ValueError("duplicate weight entry")

    @cached_property
    def rank(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.precedence)}

    @cached_property
    def weight(self) -> dict[str, int]:
        table = dict(self.weights or ())
        return {name: table.get(name, 1) for name in self.precedence}


@dataclass(frozen=True)
class Rule:
    """An oriented rewriting rule ``lhs -> rhs`` with a stable id."""

    rule_id: str
    lhs: Word
    rhs: Word

    def __post_init__(self):
        if not _NAME_RE.match(self.rule_id):
            raise ValueError(f"bad rule id {self.rule_id!r}")
        if not self.lhs:
            raise ValueError(f"rule {self.rule_id}: empty left-hand side")
        if self.lhs == self.rhs:
            raise ValueError(f"rule {self.rule_id}: sides are equal")


@dataclass(frozen=True)
class Presentation:
    """Alphabet, rules and reduction order; the unit of work for every tool."""

    generators: tuple[str, ...]
    rules: tuple[Rule, ...]
    order: OrderSpec

    def __post_init__(self):
        seen: set[str] = set()
        for name in self.generators:
            if not _NAME_RE.match(name):
                raise ValueError(f"bad generator name {name!r}")
            if name in seen:
                raise ValueError(f"duplicate generator {name!r}")
            seen.add(name)
        if set(self.order.precedence) != seen:
            raise ValueError("order precedence must cover exactly the alphabet")
        ids: set[str] = set()
        for rule in self.rules:
            if rule.rule_id in ids:
                raise ValueError(f"duplicate rule id {rule.rule_id!r}")
            ids.add(rule.rule_id)
            for g in rule.lhs + rule.rhs:
                if g not in seen:
                    raise ValueError(
                        f"rule {rule.rule_id}: unknown generator {g!r}"
                    )

    @cached_property
    def generator_index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.generators)}

    @cached_property
    def rule_by_id(self) -> dict[str, Rule]:
        return {rule.rule_id: rule for rule in self.rules}

    @cached_property
    def rule_position(self) -> dict[str, int]:
        return {rule.rule_id: i for i, rule in enumerate(self.rules)}

    @cached_property
    def single_letter_names(self) -> bool:
        return all(len(g) == 1 for g in self.generators)


def compare_words(order: OrderSpec, u: Word, v: Word) -> int:
    """Total order on words: returns LESS, EQUAL or GREATER.

    Shortlex compares length first (total weight for the weighted kind),
    then lexicographically by precedence.  Compatible with concatenation
    on both sides, which is what makes rule orientation a termination
    certificate.
    """
    rank = order.rank
    try:
        if order.kind == "shortlex":
            ku, kv = len(u), len(v)
        else:
            weight = order.weight
            ku = sum(weight[g] for g in u)
            kv = sum(weight[g] for g in v)
        if ku != kv:
            return LESS if ku < kv else GREATER
        for a, b in zip(u, v):
            if a != b:
                return LESS if rank[a] < rank[b] else GREATER
    except KeyError as exc:
        raise ValueError(f"word uses undeclared generator {exc.args[0]!r}") from None
    if len(u) == len(v):
        return EQUAL
    return LESS if len(u) < len(v) else GREATER


@dataclass(frozen=True)
class ValidationReport:
    """Rules whose orientation violates the presentation's order."""

    offending: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.offending


def validate(p: Presentation) -> ValidationReport:
    """Report every rule with lhs <= rhs under the presentation's order."""
    bad = tuple(
        rule.rule_id
        for rule in p.rules
        if compare_words(p.order, rule.lhs, rule.rhs) is not GREATER
    )
    return ValidationReport(bad)


# ---------------------------------------------------------------------------
# words


def format_word(w: Word, p: Presentation) -> str:
    """Display a word; the empty word prints as the unit symbol."""
    if not w:
        return "ε"
    if p.single_letter_names:
        return "".join(w)
    return " ".join(w)


def parse_word(text: str, p: Presentation) -> Word:
    """Parse a word: whitespace-separated generator tokens, or, when a token
    is not itself a generator name, its longest-match split into names.
    ``ε`` (or an empty string) is the unit."""
    s = text.strip()
    if s in ("", "ε"):
        return EMPTY
    out: list[str] = []
    for token in s.split():
        if token == "ε":
            continue
        out.extend(_split_token(token, p))
    return tuple(out)


def _split_token(token: str, p: Presentation) -> list[str]:
    index = p.generator_index
    if token in index:
        return [token]
    lengths = sorted({len(g) for g in p.generators}, reverse=True)
    dead: set[int] = set()

    def walk(i: int) -> list[str] | None:
        if i == len(token):
            return []
        if i in dead:
            return None
        for n in lengths:
            if token[i : i + n] in index:
                rest = walk(i + n)
                if rest is not None:
                    return [token[i : i + n]] + rest
        dead.add(i)
        return None

    parts = walk(0)
    if parts is None:
        raise ParseError(f"cannot read {token!r} as a word over the alphabet")
    return parts


# ---------------------------------------------------------------------------
# file format

_HEADERS = ("generators:", "order:", "rules:")


def parse_presentation(text: str) -> Presentation:
    """Parse the presentation file format; raises ParseError with position."""
    generators: list[str] | None = None
    order_line: tuple[int, str] | None = None
    rule_lines: list[tuple[int, str]] = []
    in_rules = False

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("generators:"):
            if generators is not None:
                raise ParseError("duplicate generators section", lineno)
            generators = line[len("generators:"):].split()
            in_rules = False
        elif line.startswith("order:"):
            if order_line is not None:
                raise ParseError("duplicate order section", lineno)
            order_line = (lineno, line[len("order:"):].strip())
            in_rules = False
        elif line == "rules:" or line.startswith("rules:"):
            tail = line[len("rules:"):].strip()
            if tail:
                raise ParseError("rules must start on the following lines", lineno)
            in_rules = True
        elif in_rules:
            rule_lines.append((lineno, line))
        else:
            raise ParseError(f"unexpected line {line!r}", lineno)

    names = tuple(generators or ())
    for lineno_name in names:
        if not _NAME_RE.match(lineno_name):
            raise ParseError(f"bad generator name {lineno_name!r}")
    if len(set(names)) != len(names):
        dupe = next(n for i, n in enumerate(names) if n in names[:i])
        raise ParseError(f"duplicate generator {dupe!r}")

    order = _parse_order(order_line, names)
    rules = _parse_rules(rule_lines, names)
    try:
        return Presentation(names, rules, order)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def _parse_order(order_line: tuple[int, str] | None, names: tuple[str, ...]) -> OrderSpec:
    if order_line is None:
        return OrderSpec("shortlex", names)
    lineno, rest = order_line
    tokens = rest.split()
    if not tokens:
        raise ParseError("empty order specification", lineno)
    kind, args = tokens[0], tokens[1:]
    if kind == "shortlex":
        precedence = tuple(" ".join(args).replace("<", " ").split())
        order_kind = "shortlex"
        weights = None
    elif kind == "weights":
        precedence_list: list[str] = []
        weight_list: list[tuple[str, int]] = []
        for tok in args:
            if "=" not in tok:
                raise ParseError(f"expected name=weight, got {tok!r}", lineno)
            name, _, value = tok.partition("=")
            if not value.isdigit() or int(value) <= 0:
                raise ParseError(f"weight of {name!r} must be a positive integer", lineno)
            precedence_list.append(name)
            weight_list.append((name, int(value)))
        precedence = tuple(precedence_list)
        weights = tuple(weight_list)
        order_kind = "weighted-shortlex"
    else:
        raise ParseError(f"unknown order kind {kind!r}", lineno)
    for name in precedence:
        if name not in names:
            raise ParseError(f"order mentions unknown generator {name!r}", lineno)
    if set(precedence) != set(names):
        missing = sorted(set(names) - set(precedence))
        raise ParseError(f"order does not cover generator(s) {', '.join(missing)}", lineno)
    try:
        return OrderSpec(order_kind, precedence, weights)
    except ValueError as exc:
        raise ParseError(str(exc), lineno) from None


def _parse_rules(rule_lines: list[tuple[int, str]], names: tuple[str, ...]) -> tuple[Rule, ...]:
    alphabet = set(names)
    rules: list[Rule] = []
    seen: set[str] = set()
    for lineno, line in rule_lines:
        if ":" not in line:
            raise ParseError("expected '<id>: <lhs> -> <rhs>'", lineno)
        rule_id, _, body = line.partition(":")
        rule_id = rule_id.strip()
        if not _NAME_RE.match(rule_id):
            raise ParseError(f"bad rule id {rule_id!r}", lineno)
        if rule_id in seen:
            raise ParseError(f"duplicate rule id {rule_id!r}", lineno)
        seen.add(rule_id)
        if "->" not in body:
            raise ParseError("rule is missing '->'", lineno)
        lhs_text, _, rhs_text = body.partition("->")
        lhs = tuple(lhs_text.split())
        rhs = tuple(t for t in rhs_text.split() if t != "ε")
        for g in lhs + rhs:
            if g not in alphabet:
                raise ParseError(f"unknown generator {g!r}", lineno)
        if not lhs:
            raise ParseError(f"rule {rule_id}: empty left-hand side", lineno)
        if lhs == rhs:
            raise ParseError(f"rule {rule_id}: sides are equal", lineno)
        rules.append(Rule(rule_id, lhs, rhs))
    return tuple(rules)


def print_presentation(p: Presentation) -> str:
    """Canonical form: single spaces, declaration order, one rule per line."""
    lines = ["generators: " + " ".join(p.generators) if p.generators else "generators:"]
    if p.order.kind == "shortlex":
        lines.append(("order: shortlex " + " < ".join(p.order.precedence)).rstrip())
    else:
        weight = p.order.weight
        parts = " ".join(f"{name}={weight[name]}" for name in p.order.precedence)
        lines.append(("order: weights " + parts).rstrip())
    lines.append("rules:")
    for rule in p.rules:
        lines.append(f" {rule.rule_id}: {' '.join(rule.lhs)} -> {' '.join(rule.rhs)}".rstrip())
    return "\n".join(lines) + "\n"
