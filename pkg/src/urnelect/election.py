"""First-past-the-post outcomes computed from an urn state.

Each district elects the plurality colour; the popular vote is ball-weighted
across districts (districts end a run with different populations, so the
mean of district shares would differ at order 1/sqrt(n)).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .urn import UrnState, vote_shares

__all__ = ["ElectionResult", "RegionalSplit", "tally", "regional_shares", "TIE_RULES"]

TIE_RULES = ("random", "lowest_index")


@dataclass
class ElectionResult:
    district_shares: np.ndarray  # (N, m) vote shares per district
    winners: np.ndarray          # (N,) winning colour index per district
    seats: np.ndarray            # (m,) seats won per colour
    popular_shares: np.ndarray   # (m,) ball-weighted national shares
    tie_flags: np.ndarray        # (N,) True where the plurality was tied


@dataclass(frozen=True)
class RegionalSplit:
    """Partition of districts into named regions."""

    region_of_district: tuple[str, ...]

    def __post_init__(self):
        if not self.region_of_district:
            raise ValueError("split must cover at least one district")

    @classmethod
    def halves(cls, num_districts: int, names: tuple[str, str] = ("north", "south")) -> "RegionalSplit":
        """Default split: first half of the district list vs the rest."""
        cut = num_districts // 2
        labels = (names[0],) * cut + (names[1],) * (num_districts - cut)
        return cls(labels)

    @property
    def regions(self) -> tuple[str, ...]:
        seen: list[str] = []
        for r in self.region_of_district:
            if r not in seen:
                seen.append(r)
        return tuple(seen)


def tally(state: UrnState, tie_rule: str = "random",
          rng: np.random.Generator | None = None) -> ElectionResult:
    """Elect the plurality colour in every district.

    ``tie_rule`` is "random" (uniform among the tied leaders, consuming the
    given rng; the default, since exact ties occur with small but nonzero
    probability at finite populations) or "lowest_index" (deterministic, for
    reproducible unit tests).
    """
    if tie_rule not in TIE_RULES:
        raise ValueError(f"unknown tie rule {tie_rule!r}")
    counts = state.counts
    row_max = counts.max(axis=1)
    is_max = counts == row_max[:, None]
    tie_flags = is_max.sum(axis=1) > 1
    winners = counts.argmax(axis=1)  # first maximum = lowest tied index
    if tie_rule == "random" and tie_flags.any():
        if rng is None:
            raise ValueError("tie_rule='random' needs an rng")
        for u in np.flatnonzero(tie_flags):
            tied = np.flatnonzero(is_max[u])
            winners[u] = tied[rng.integers(0, tied.size)]
    seats = np.bincount(winners, minlength=state.config.num_colours)
    popular = counts.sum(axis=0) / state.grand_total
    return ElectionResult(
        district_shares=vote_shares(state),
        winners=winners,
        seats=seats,
        popular_shares=popular,
        tie_flags=tie_flags,
    )


def regional_shares(state: UrnState, split: RegionalSplit) -> dict[str, np.ndarray]:
    """Ball-weighted colour shares per region of the split."""
    labels = split.region_of_district
    if len(labels) != state.config.num_districts:
        raise ValueError("split must label every district exactly once")
    out: dict[str, np.ndarray] = {}
    arr = np.asarray(labels)
    for region in split.regions:
        rows = arr == region
        region_counts = state.counts[rows].sum(axis=0)
        out[region] = region_counts / region_counts.sum()
    return out
