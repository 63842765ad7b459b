"""Built-in experiment scenarios.

Each scenario fixes the party count, the reinforcement amount and the shape
of the initial allocation; the imitation probability p stays a free
parameter.  Block patterns scale with the district count N (the three-party
scenarios split districts 80% / 10% / 10%, so N must be a multiple of 10).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .urn import InitialAllocation, SimulationConfig

__all__ = ["ScenarioDef", "SCENARIOS", "scenario_names", "build_config"]

Blocks = tuple[tuple[int, tuple[int, ...]], ...]


@dataclass(frozen=True)
class ScenarioDef:
    name: str
    num_colours: int
    reinforcement: int
    blocks_for: Callable[[int], Blocks]
    description: str


def _uniform(counts: tuple[int, ...]) -> Callable[[int], Blocks]:
    return lambda n: ((n, counts),)


def _split_halves(first: tuple[int, ...], second: tuple[int, ...]) -> Callable[[int], Blocks]:
    def blocks(n: int) -> Blocks:
        cut = n // 2
        return ((cut, first), (n - cut, second))
    return blocks


def _split_80_10_10(a: tuple[int, ...], b: tuple[int, ...], c: tuple[int, ...]) -> Callable[[int], Blocks]:
    def blocks(n: int) -> Blocks:
        if n % 10 != 0:
            raise ValueError("three-party scenarios need a district count divisible by 10")
        tenth = n // 10
        return ((8 * tenth, a), (tenth, b), (tenth, c))
    return blocks


SCENARIOS: dict[str, ScenarioDef] = {
    s.name: s
    for s in (
        ScenarioDef("sym_1_1", 2, 1, _uniform((1, 1)),
                    "one ball per party in every district"),
        ScenarioDef("sym_2_2", 2, 1, _uniform((2, 2)),
                    "two balls per party in every district"),
        ScenarioDef("sym_1_1_K5", 2, 5, _uniform((1, 1)),
                    "one ball per party, five balls added per step"),
        ScenarioDef("polar_2_1", 2, 1, _split_halves((2, 1), (1, 2)),
                    "2:1 advantage to party 1 in the north, reversed in the south"),
        ScenarioDef("polar_3_1", 2, 1, _split_halves((3, 1), (1, 3)),
                    "3:1 advantage to party 1 in the north, reversed in the south"),
        ScenarioDef("third_party_i", 3, 1, _split_80_10_10((0, 2, 2), (1, 2, 2), (2, 1, 1)),
                    "small party absent from 80% of districts, leading in 10%"),
        ScenarioDef("third_party_ii", 3, 1, _split_80_10_10((0, 2, 2), (1, 2, 2), (3, 1, 1)),
                    "like (i) but with a stronger 3:1:1 regional base"),
        ScenarioDef("third_party_iii", 3, 1, _uniform((1, 2, 2)),
                    "small party trailing 1:2:2 everywhere"),
    )
}


def scenario_names() -> tuple[str, ...]:
    return tuple(SCENARIOS)


def build_config(name: str, p: float, num_districts: int = 100,
                 target_total_balls: int = 100_000, seed: int = 0,
                 reinforcement: int | None = None) -> SimulationConfig:
    """Instantiate a catalog scenario at imitation probability p."""
    if name not in SCENARIOS:
        raise ValueError(f"unknown scenario {name!r}; choose from {', '.join(SCENARIOS)}")
    sc = SCENARIOS[name]
    return SimulationConfig(
        num_districts=num_districts,
        num_colours=sc.num_colours,
        imitation_prob=p,
        reinforcement=sc.reinforcement if reinforcement is None else reinforcement,
        initial_allocation=InitialAllocation(sc.blocks_for(num_districts)),
        target_total_balls=target_total_balls,
        seed=seed,
    )
