"""Shared fixtures: standard presentations, independent oracles, and seeded
random generators for words, paths and closed loops."""

from __future__ import annotations

import itertools
import random
from collections import deque

from srs import (
    Path,
    Presentation,
    RewriteStep,
    Word,
    apply_step,
    compose,
    conjugate,
    find_redexes,
    invert,
    normal_path,
    parse_presentation,
    whisker,
)

AS_TEXT = "generators: a\norder: shortlex a\nrules:\n r: a a -> a\n"

TWO_TEXT = (
    "generators: a b\norder: shortlex a < b\nrules:\n"
    " r1: a b -> a\n r2: b a -> b\n"
)

FOUR_TEXT = (
    "generators: a b\norder: shortlex a < b\nrules:\n"
    " r1: a b -> a\n r2: b a -> b\n r3: a a -> a\n r4: b b -> b\n"
)


def as_presentation() -> Presentation:
    return parse_presentation(AS_TEXT)


def two_rule_presentation() -> Presentation:
    return parse_presentation(TWO_TEXT)


def four_rule_presentation() -> Presentation:
    return parse_presentation(FOUR_TEXT)


def w(text: str) -> Word:
    """Shorthand: a word from single-letter generator names."""
    return tuple(text)


# ---------------------------------------------------------------------------
# independent oracles


def reachable_normal_forms(p: Presentation, start: Word) -> set[Word]:
    """Breadth-first forward reduction; the set of all normal forms reachable
    from ``start``.  Independent of the deterministic strategy."""
    seen = {start}
    queue = deque([start])
    out: set[Word] = set()
    while queue:
        word = queue.popleft()
        redexes = find_redexes(word, p)
        if not redexes:
            out.add(word)
            continue
        for redex in redexes:
            nxt = apply_step(RewriteStep(word, redex.rule, redex.pos, 1))
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return out


def congruence_classes_oracle(p: Presentation, bound: int) -> dict[Word, frozenset[Word]]:
    """Connected components of the rewriting graph (both directions) on all
    words of length <= bound, by breadth-first search."""
    words = [
        tuple(combo)
        for n in range(bound + 1)
        for combo in itertools.product(p.generators, repeat=n)
    ]
    index = {word: i for i, word in enumerate(words)}
    component = [None] * len(words)
    classes: dict[Word, frozenset[Word]] = {}
    for seed_word in words:
        if component[index[seed_word]] is not None:
            continue
        members = []
        queue = deque([seed_word])
        component[index[seed_word]] = seed_word
        while queue:
            word = queue.popleft()
            members.append(word)
            neighbours = []
            for rule in p.rules:
                n = len(rule.lhs)
                for pos in range(len(word) - n + 1):
                    if word[pos : pos + n] == rule.lhs:
                        neighbours.append(word[:pos] + rule.rhs + word[pos + n :])
                m = len(rule.rhs)
                for pos in range(len(word) - m + 1):
                    if word[pos : pos + m] == rule.rhs:
                        neighbours.append(word[:pos] + rule.lhs + word[pos + m :])
            for nxt in neighbours:
                if len(nxt) <= bound and component[index[nxt]] is None:
                    component[index[nxt]] = seed_word
                    queue.append(nxt)
        frozen = frozenset(members)
        for member in members:
            classes[member] = frozen
    return classes


def alt_normal_path(p: Presentation, word: Word) -> Path:
    """A second deterministic normalizer: rightmost position, highest rule
    index.  Used to build two-strategy zigzag loops."""
    steps = []
    current = word
    while True:
        redexes = find_redexes(current, p)
        if not redexes:
            break
        last = redexes[-1]
        step = RewriteStep(current, last.rule, last.pos, 1)
        steps.append(step)
        current = apply_step(step)
    return Path(word, tuple(steps))


# ---------------------------------------------------------------------------
# random generation


def random_word(rng: random.Random, p: Presentation, max_len: int, min_len: int = 0) -> Word:
    n = rng.randint(min_len, max_len)
    return tuple(rng.choice(p.generators) for _ in range(n))


def random_forward_path(rng: random.Random, p: Presentation, word: Word, max_steps: int) -> Path:
    steps = []
    current = word
    for _ in range(rng.randint(0, max_steps)):
        redexes = find_redexes(current, p)
        if not redexes:
            break
        redex = rng.choice(redexes)
        step = RewriteStep(current, redex.rule, redex.pos, 1)
        steps.append(step)
        current = apply_step(step)
    return Path(word, tuple(steps))


def random_mixed_path(
    rng: random.Random,
    p: Presentation,
    word: Word,
    max_steps: int,
    max_len: int = 12,
) -> Path:
    """A zigzag: each step is a random redex (forward) or a random rule
    inversion (backward), keeping the word length bounded."""
    steps = []
    current = word
    for _ in range(rng.randint(0, max_steps)):
        options: list[RewriteStep] = []
        for redex in find_redexes(current, p):
            options.append(RewriteStep(current, redex.rule, redex.pos, 1))
        for rule in p.rules:
            if len(current) - len(rule.rhs) + len(rule.lhs) > max_len:
                continue
            m = len(rule.rhs)
            for pos in range(len(current) - m + 1):
                if current[pos : pos + m] == rule.rhs:
                    options.append(RewriteStep(current, rule, pos, -1))
        if not options:
            break
        step = rng.choice(options)
        steps.append(step)
        current = apply_step(step)
    return Path(word, tuple(steps))


def return_path(p: Presentation, source: Word, destination: Word) -> Path:
    """Canonical zigzag from source to destination through their common
    normal form (they must be congruent)."""
    down = normal_path(p, source)
    up = normal_path(p, destination)
    assert down.target == up.target, "words are not congruent"
    return compose(down, invert(up))


def random_loop(
    rng: random.Random,
    p: Presentation,
    basis: tuple[Path, ...],
    max_len: int = 8,
    depth: int = 2,
) -> Path:
    """A random closed path: two-strategy zigzags, mixed zigzag excursions,
    whiskered basis loops, conjugates, inverses and composites thereof."""
    kind = rng.choice(
        ["zigzag", "excursion", "whisker", "conjugate", "inverse", "compose"]
        if depth > 0
        else ["zigzag", "excursion", "whisker"]
    )
    if kind == "zigzag":
        word = random_word(rng, p, max_len)
        return compose(normal_path(p, word), invert(alt_normal_path(p, word)))
    if kind == "excursion":
        word = random_word(rng, p, max_len)
        out = random_mixed_path(rng, p, word, 6)
        return compose(out, return_path(p, out.target, word))
    if kind == "whisker":
        if not basis:
            return Path(random_word(rng, p, max_len))
        loop = rng.choice(basis)
        left = random_word(rng, p, 2)
        right = random_word(rng, p, 2)
        return whisker(left, loop, right)
    if kind == "inverse":
        return invert(random_loop(rng, p, basis, max_len, depth - 1))
    if kind == "compose":
        first = random_loop(rng, p, basis, max_len, depth - 1)
        second_source = random_loop(rng, p, basis, max_len, depth - 1)
        second = move_loop(p, second_source, first.base)
        return compose(first, second)
    # conjugate
    inner = random_loop(rng, p, basis, max_len, depth - 1)
    out = random_mixed_path(rng, p, inner.base, 4)
    conjugator = invert(out)
    return conjugate(inner, conjugator)


def move_loop(p: Presentation, loop: Path, base: Word) -> Path:
    """Conjugate a loop to sit at another base in the same congruence class;
    falls back to the empty loop when the classes differ."""
    down_new = normal_path(p, base)
    down_old = normal_path(p, loop.base)
    if down_new.target != down_old.target:
        return Path(base)
    g = compose(down_new, invert(down_old))
    return compose(g, compose(loop, invert(g)))


def random_terminating_presentation(rng: random.Random) -> Presentation:
    """A random shortlex-oriented presentation: alphabet of 1-2 letters, up
    to 3 rules with lhs length up to 3."""
    from srs import GREATER, OrderSpec, Rule, compare_words

    alphabet = tuple("ab"[: rng.randint(1, 2)])
    order = OrderSpec("shortlex", alphabet)
    rules = []
    for k in range(rng.randint(1, 3)):
        for _ in range(40):
            lhs = tuple(rng.choice(alphabet) for _ in range(rng.randint(1, 3)))
            rhs = tuple(rng.choice(alphabet) for _ in range(rng.randint(0, 3)))
            if lhs == rhs or not lhs:
                continue
            if compare_words(order, lhs, rhs) is not GREATER:
                lhs, rhs = rhs, lhs
            if not lhs:
                continue
            rules.append(Rule(f"r{k + 1}", lhs, rhs))
            break
    return Presentation(alphabet, tuple(rules), order)
