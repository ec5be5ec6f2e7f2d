"""Seeded random generators for the verification suites.

Random classes keep every parameter rational so suite checks stay exact.
The generated true model is always a proper measure; semimeasure classes
add leaky wrappers around the non-true members only.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import List

from .decisions import LossFunction, table_loss
from .measures import (
    BINARY,
    Alphabet,
    DeterministicModel,
    FactorizableModel,
    IidModel,
    LeakySemimeasure,
    Semimeasure,
)
from .model_class import WeightedClass


def suite_rng(seed: int, case: int) -> random.Random:
    return random.Random(f"mdl-lab-suite:{seed}:{case}")


def random_distribution(rng: random.Random, k: int, max_den: int = 12) -> tuple:
    """Exact rational distribution over k symbols (zeros allowed, not all)."""
    den = rng.randint(2, max_den)
    cuts = sorted(rng.randint(0, den) for _ in range(k - 1))
    parts = []
    prev = 0
    for c in cuts:
        parts.append(c - prev)
        prev = c
    parts.append(den - prev)
    return tuple(Fraction(p, den) for p in parts)


def random_positive_distribution(rng: random.Random, k: int, max_den: int = 12) -> tuple:
    while True:
        dist = random_distribution(rng, k, max_den)
        if all(p > 0 for p in dist):
            return dist


def random_measure(rng: random.Random, alphabet: Alphabet = BINARY) -> Semimeasure:
    kind = rng.choice(("iid", "iid", "deterministic", "factorizable"))
    if kind == "iid":
        return IidModel(random_distribution(rng, alphabet.size), alphabet)
    if kind == "deterministic":
        pre = tuple(rng.randrange(alphabet.size) for _ in range(rng.randint(0, 2)))
        per = tuple(rng.randrange(alphabet.size) for _ in range(rng.randint(1, 3)))
        return DeterministicModel(pre, per, alphabet)
    steps = [random_distribution(rng, alphabet.size) for _ in range(rng.randint(1, 3))]
    tail = random_positive_distribution(rng, alphabet.size)
    return FactorizableModel.from_steps(alphabet, steps, tail)


def random_weights(rng: random.Random, n: int, allow_deficient: bool = True) -> List[Fraction]:
    raw = [rng.randint(1, 20) for _ in range(n)]
    total = sum(raw)
    scale = Fraction(1)
    if allow_deficient and rng.random() < 0.5:
        scale = rng.choice((Fraction(1, 2), Fraction(3, 4), Fraction(9, 10)))
    return [Fraction(r, total) * scale for r in raw]


def random_measure_class(
    seed: int,
    case: int,
    max_models: int = 6,
    alphabet: Alphabet = BINARY,
    allow_deficient: bool = True,
) -> WeightedClass:
    """Binary measure class with rational parameters and a designated truth."""
    rng = suite_rng(seed, case)
    n = rng.randint(2, max_models)
    models = [random_measure(rng, alphabet) for _ in range(n)]
    weights = random_weights(rng, n, allow_deficient)
    return WeightedClass(models, weights, true_index=rng.randrange(n))


def random_semimeasure_class(
    seed: int,
    case: int,
    max_models: int = 6,
    alphabet: Alphabet = BINARY,
) -> WeightedClass:
    """Like :func:`random_measure_class` but with leaky members mixed in."""
    rng = suite_rng(seed, case * 7919 + 1)
    n = rng.randint(2, max_models)
    true_index = rng.randrange(n)
    models: List[Semimeasure] = []
    for i in range(n):
        m = random_measure(rng, alphabet)
        if i != true_index and rng.random() < 0.4:
            m = LeakySemimeasure(m, rng.choice((Fraction(1, 8), Fraction(1, 4))))
        models.append(m)
    return WeightedClass(models, random_weights(rng, n), true_index=true_index)


def random_word(rng: random.Random, alphabet: Alphabet, max_len: int = 8) -> tuple:
    return tuple(
        rng.randrange(alphabet.size) for _ in range(rng.randint(0, max_len))
    )


def random_stationary_loss(rng: random.Random) -> LossFunction:
    """Bounded rational 2x2 loss with correct predictions never dearer."""
    den = rng.randint(4, 16)
    table = {}
    for x in (0, 1):
        diag = rng.randint(0, den)
        off = rng.randint(diag, den)
        table[(x, x)] = Fraction(diag, den)
        table[(x, 1 - x)] = Fraction(off, den)
    return table_loss(table, name=f"random_loss_den{den}")
