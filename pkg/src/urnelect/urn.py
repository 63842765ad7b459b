"""Multi-district reinforcement-urn process.

Each district is an urn containing coloured balls (one colour per party).
A step picks a target district u uniformly at random; with probability
``1 - p`` a ball is drawn from u itself, otherwise from a uniformly chosen
*other* district.  The drawn ball is returned and K additional balls of its
colour are added to u.  Counts only ever grow, so a colour absent from every
urn can never appear, and after s steps the grand total has increased by
exactly K*s.

Randomness comes from a named, seedable numpy Generator (PCG64, which also
supports ``jumped()``).  Replicate r of an experiment uses an independent
stream derived from (master_seed, r) via SeedSequence spawn keys, so
replicates are reproducible in any order; see :func:`stream_for_replicate`.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _engine

__all__ = [
    "InitialAllocation",
    "SimulationConfig",
    "UrnState",
    "DrawEvent",
    "init_state",
    "step",
    "run_steps",
    "run_until",
    "vote_shares",
    "make_rng",
    "stream_for_replicate",
    "mc_final_state_frequencies",
]


@dataclass(frozen=True)
class InitialAllocation:
    """Initial ball counts, as ordered blocks of identically seeded districts.

    ``blocks`` is a sequence of ``(district_count, counts_per_colour)`` pairs;
    districts are laid out in block order.  Every district must start with at
    least one ball so that a draw is always possible.
    """

    blocks: tuple[tuple[int, tuple[int, ...]], ...]

    def __post_init__(self):
        blocks = tuple((int(n), tuple(int(c) for c in row)) for n, row in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        if not blocks:
            raise ValueError("allocation needs at least one block")
        m = len(blocks[0][1])
        for n, row in blocks:
            if n < 1:
                raise ValueError("block district_count must be >= 1")
            if len(row) != m:
                raise ValueError("all blocks must list the same number of colours")
            if any(c < 0 for c in row):
                raise ValueError("ball counts must be nonnegative")
            if sum(row) < 1:
                raise ValueError("every district needs at least one initial ball")

    @property
    def num_districts(self) -> int:
        return sum(n for n, _ in self.blocks)

    @property
    def num_colours(self) -> int:
        return len(self.blocks[0][1])

    @property
    def total_balls(self) -> int:
        return sum(n * sum(row) for n, row in self.blocks)

    def expand(self) -> np.ndarray:
        """Expand the blocks into the full (N, m) int64 count matrix."""
        rows = np.array([row for _, row in self.blocks], dtype=np.int64)
        reps = np.array([n for n, _ in self.blocks])
        return np.repeat(rows, reps, axis=0)


@dataclass(frozen=True)
class SimulationConfig:
    """Full parameterisation of one simulation run."""

    num_districts: int
    num_colours: int
    imitation_prob: float
    reinforcement: int
    initial_allocation: InitialAllocation
    target_total_balls: int
    seed: int = 0

    def __post_init__(self):
        if self.num_districts < 1:
            raise ValueError("num_districts must be >= 1")
        if self.num_colours < 1:
            raise ValueError("num_colours must be >= 1")
        if not 0.0 <= self.imitation_prob <= 1.0:
            raise ValueError("imitation_prob must lie in [0, 1]")
        if self.num_districts == 1 and self.imitation_prob > 0.0:
            raise ValueError("a single district has no other urn to imitate; p must be 0")
        if self.reinforcement < 1:
            raise ValueError("reinforcement must be >= 1")
        alloc = self.initial_allocation
        if alloc.num_districts != self.num_districts:
            raise ValueError("allocation blocks must cover exactly num_districts districts")
        if alloc.num_colours != self.num_colours:
            raise ValueError("allocation colour count must equal num_colours")
        if self.target_total_balls < alloc.total_balls:
            raise ValueError("target_total_balls must be >= total initial balls")
        if not 0 <= int(self.seed) < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")


@dataclass(frozen=True)
class DrawEvent:
    """One completed step: ball drawn from ``source_urn``, added to ``target_urn``."""

    target_urn: int
    source_urn: int
    colour: int

    @property
    def was_cross_district(self) -> bool:
        return self.target_urn != self.source_urn


@dataclass
class UrnState:
    """Mutable ball-count state of a run.

    Invariants (checked by :meth:`validate`): per_urn_totals are the row sums
    of counts, grand_total their sum, and grand_total equals initial_total
    plus reinforcement times step_count.
    """

    config: SimulationConfig
    counts: np.ndarray
    per_urn_totals: np.ndarray = field(repr=False)
    grand_total: int
    step_count: int
    initial_total: int

    def validate(self) -> None:
        """Raise AssertionError if any derived quantity is inconsistent."""
        assert self.counts.dtype == np.int64
        assert (self.counts >= 0).all(), "negative ball count"
        row = self.counts.sum(axis=1)
        assert (row == self.per_urn_totals).all(), "per-urn totals out of sync"
        assert int(row.sum()) == self.grand_total, "grand total out of sync"
        expected = self.initial_total + self.config.reinforcement * self.step_count
        assert self.grand_total == expected, "ball conservation violated"

    def copy(self) -> "UrnState":
        return UrnState(
            config=self.config,
            counts=self.counts.copy(),
            per_urn_totals=self.per_urn_totals.copy(),
            grand_total=self.grand_total,
            step_count=self.step_count,
            initial_total=self.initial_total,
        )


def init_state(config: SimulationConfig) -> UrnState:
    """Expand a config's initial allocation into a fresh simulation state."""
    counts = config.initial_allocation.expand()
    totals = counts.sum(axis=1)
    return UrnState(
        config=config,
        counts=counts,
        per_urn_totals=totals,
        grand_total=int(totals.sum()),
        step_count=0,
        initial_total=int(totals.sum()),
    )


def make_rng(seed: int) -> np.random.Generator:
    """A PCG64 Generator seeded directly with ``seed``."""
    return np.random.Generator(np.random.PCG64(seed))


def stream_for_replicate(master_seed: int, replicate: int) -> tuple[int, np.random.Generator]:
    """Derive replicate ``replicate``'s independent random stream.

    Returns ``(token, generator)`` where the 64-bit token alone reproduces the
    stream via ``make_rng(token)``.  Tokens come from SeedSequence spawn keys,
    so streams for different replicates are independent and can be created in
    any order.
    """
    ss = np.random.SeedSequence(master_seed, spawn_key=(replicate,))
    token = int(ss.generate_state(1, dtype=np.uint64)[0])
    return token, make_rng(token)


def _draw_step_arrays(config: SimulationConfig, n_steps: int, rng: np.random.Generator):
    """Vectorised per-call randomness, consumed in narration order.

    Per call: target districts ``integers(0, N, n)``; when N > 1 and p > 0,
    imitation uniforms ``random(n)`` and other-district offsets
    ``integers(0, N-1, n)``; finally colour uniforms ``random(n)``.  A fixed
    call pattern is therefore bit-reproducible from (config, seed); splitting
    the same steps over several calls yields a different but equally valid
    trajectory.
    """
    n_districts = config.num_districts
    p = config.imitation_prob
    u = rng.integers(0, n_districts, size=n_steps)
    if n_districts > 1 and p > 0.0:
        w = rng.random(n_steps)
        other = rng.integers(0, n_districts - 1, size=n_steps)
        v = np.where(w < p, other + (other >= u), u)
    else:
        v = u
    r = rng.random(n_steps)
    return u, v, r


def run_steps(state: UrnState, n_steps: int, rng: np.random.Generator,
              record_events: bool = False, _bias: float = 0.0) -> list[DrawEvent] | None:
    """Advance ``state`` by exactly ``n_steps`` steps, in place.

    With ``record_events`` the full event sequence is returned (one
    :class:`DrawEvent` per step); otherwise None.  ``_bias`` is the
    probability-corruption test hook described in ``_engine``.
    """
    if n_steps < 0:
        raise ValueError("n_steps must be >= 0")
    if n_steps == 0:
        return [] if record_events else None
    u, v, r = _draw_step_arrays(state.config, n_steps, rng)
    colours = np.empty(n_steps, dtype=np.int64)
    _engine.advance(state.counts, state.per_urn_totals,
                    state.config.reinforcement, u, v, r, colours, _bias)
    state.grand_total += state.config.reinforcement * n_steps
    state.step_count += n_steps
    if record_events:
        return [DrawEvent(int(u[t]), int(v[t]), int(colours[t])) for t in range(n_steps)]
    return None


def step(state: UrnState, rng: np.random.Generator) -> DrawEvent:
    """Perform a single step and return its event."""
    return run_steps(state, 1, rng, record_events=True)[0]


def run_until(state: UrnState, target_total_balls: int, rng: np.random.Generator,
              debug: bool = False) -> UrnState:
    """Step until the grand total first reaches or exceeds the target.

    When the gap is not a multiple of the reinforcement K the final total
    overshoots the target (first crossing).  ``debug`` runs one step at a
    time and re-checks all state invariants after each (slow; changes the
    batching and hence the sampled trajectory).
    """
    if target_total_balls < state.grand_total:
        raise ValueError("target_total_balls is below the current grand total")
    gap = target_total_balls - state.grand_total
    n_steps = -(-gap // state.config.reinforcement)  # ceil division
    if debug:
        for _ in range(n_steps):
            run_steps(state, 1, rng)
            state.validate()
    else:
        run_steps(state, n_steps, rng)
        state.validate()
    return state


def vote_shares(state: UrnState) -> np.ndarray:
    """Per-district colour proportions: row u is counts[u] / total of urn u."""
    return state.counts / state.per_urn_totals[:, None]


def mc_final_state_frequencies(config: SimulationConfig, n_steps: int, n_samples: int,
                               rng: np.random.Generator, _bias: float = 0.0,
                               max_chunk_draws: int = 4_000_000) -> dict[tuple[int, ...], int]:
    """Monte Carlo frequencies of final count states over many short runs.

    Runs ``n_samples`` independent simulations of ``n_steps`` steps each from
    the config's initial allocation and tallies the flattened final count
    matrices.  This is the sampling side of the exact-enumeration oracle
    comparison; keep n_steps small.  Work is chunked so peak memory stays
    bounded regardless of n_samples.
    """
    if n_steps < 1 or n_samples < 1:
        raise ValueError("n_steps and n_samples must be >= 1")
    init = config.initial_allocation.expand()
    n_cells = init.size
    base = int(init.max()) + config.reinforcement * n_steps + 1
    if base ** n_cells >= 2**63:
        raise ValueError("state space too large to encode; reduce steps or size")

    freqs: dict[tuple[int, ...], int] = {}
    chunk = max(1, max_chunk_draws // n_steps)
    done = 0
    while done < n_samples:
        take = min(chunk, n_samples - done)
        u, v, r = _draw_step_arrays(config, take * n_steps, rng)
        codes = np.empty(take, dtype=np.int64)
        _engine.replay_final_codes(init, config.reinforcement, n_steps,
                                   u, v, r, codes, base, _bias)
        uniq, cnt = np.unique(codes, return_counts=True)
        for code, c in zip(uniq.tolist(), cnt.tolist()):
            digits = []
            for _ in range(n_cells):
                digits.append(code % base)
                code //= base
            key = tuple(reversed(digits))
            freqs[key] = freqs.get(key, 0) + int(c)
        done += take
    return freqs
