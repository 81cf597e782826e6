"""Genetic search over linkage-method combinations.

A genome assigns one linkage method per slot; fitness is supplied by the
caller (typically silhouette of the resulting partition). Small search
spaces are enumerated exhaustively instead, since the full sweep is cheaper
than a population run of the same budget.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence

import numpy as np

from .core import Method
from .errors import ConfigError

log = logging.getLogger(__name__)

Genome = tuple[Method, ...]

_METHODS = tuple(Method)


@dataclass(frozen=True)
class GaParams:
    population: int = 20
    generations: int = 10
    tournament: int = 3
    mutation_rate: float = 0.1
    elitism: int = 1
    seed: int = 0

    def __post_init__(self):
        if self.population < 2:
            raise ConfigError("population must be >= 2")
        if self.generations < 1:
            raise ConfigError("generations must be >= 1")
        if self.tournament < 1:
            raise ConfigError("tournament size must be >= 1")
        if not 0.0 <= self.mutation_rate <= 1.0:
            raise ConfigError("mutation rate must be in [0, 1]")
        if not 0 <= self.elitism < self.population:
            raise ConfigError("elitism must be in [0, population)")


class GaResult(NamedTuple):
    """Winning genome, its fitness, and the per-generation best-so-far
    trace (a single entry when the space was enumerated exhaustively)."""

    genome: Genome
    fitness: float
    history: tuple[float, ...]


def _rank_key(genome: Genome) -> tuple[int, ...]:
    return tuple(m.index for m in genome)


def evolve(
    genome_len: int,
    fitness: Callable[[Genome], float],
    params: GaParams = GaParams(),
) -> GaResult:
    """Search the genome space for the highest-fitness linkage combination.

    Fitness values are cached per genome, and NaN fitness is demoted to
    -inf with a warning so degenerate partitions never win. When the whole
    space fits within population * generations evaluations it is enumerated
    in order and the first optimum returned; otherwise a generational GA
    with tournament selection, uniform crossover, per-gene mutation, and
    elitism runs for the configured number of generations.
    """
    if genome_len < 1:
        raise ConfigError("genome length must be >= 1")
    cache: dict[Genome, float] = {}

    def score(genome: Genome) -> float:
        if genome not in cache:
            value = float(fitness(genome))
            if math.isnan(value):
                log.warning("fitness is NaN for %s; treating as -inf",
                            "+".join(m.value for m in genome))
                value = -math.inf
            cache[genome] = value
        return cache[genome]

    space = len(_METHODS) ** genome_len
    if space <= params.population * params.generations:
        best_genome: Genome | None = None
        best_score = -math.inf
        for combo in itertools.product(_METHODS, repeat=genome_len):
            value = score(combo)
            if best_genome is None or value > best_score:
                best_genome, best_score = combo, value
        return GaResult(best_genome, best_score, (best_score,))

    rng = np.random.default_rng(params.seed)

    def random_genome() -> Genome:
        picks = rng.integers(0, len(_METHODS), size=genome_len)
        return tuple(_METHODS[int(i)] for i in picks)

    population = [random_genome() for _ in range(params.population)]
    best_genome = None
    best_score = -math.inf
    history: list[float] = []
    for generation in range(params.generations):
        scores = [score(g) for g in population]
        for genome, value in zip(population, scores):
            if value > best_score:
                best_genome, best_score = genome, value
        history.append(best_score)
        if generation == params.generations - 1:
            break
        order = sorted(
            range(params.population),
            key=lambda i: (-scores[i], _rank_key(population[i])),
        )
        children = [population[i] for i in order[: params.elitism]]
        while len(children) < params.population:
            parents = []
            for _ in range(2):
                picks = rng.choice(
                    params.population,
                    size=min(params.tournament, params.population),
                    replace=False,
                )
                winner = max(picks, key=lambda i: (scores[i], -i))
                parents.append(population[int(winner)])
            take_first = rng.random(genome_len) < 0.5
            child = tuple(
                a if flip else b
                for a, b, flip in zip(parents[0], parents[1], take_first)
            )
            mutate = rng.random(genome_len) < params.mutation_rate
            replacements = rng.integers(0, len(_METHODS), size=genome_len)
            child = tuple(
                _METHODS[int(r)] if flip else gene
                for gene, flip, r in zip(child, mutate, replacements)
            )
            children.append(child)
        population = children
    return GaResult(best_genome, best_score, tuple(history))
