"""Reproducible experiment driver.

Runs R independent replicates of a configured simulation (each on its own
derived random stream), tallies the election per replicate, and serializes
the resulting dataset with a manifest that pins everything needed to
reproduce it byte for byte.  Also hosts the inter-election swing pipeline
and a self-check battery comparing the sampler against the exact oracles.
"""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, asdict, replace
from pathlib import Path
from typing import Sequence

import numpy as np

from . import __version__
from .analytic import (
    cube_curve,
    dirichlet_multinomial_pmf,
    enumerate_multiurn,
    seatvote_exact_n2,
    seatvote_numeric,
    central_difference_slope,
)
from .election import tally
from .scenarios import build_config
from .stats import (
    ReplicateDataset,
    SlopeFit,
    SwingRecord,
    central_slope_fit,
    cube_exponent_fit,
    pearson,
    swing_regression,
)
from .urn import (
    InitialAllocation,
    SimulationConfig,
    UrnState,
    init_state,
    mc_final_state_frequencies,
    make_rng,
    run_until,
    stream_for_replicate,
)

__all__ = [
    "ExperimentSpec",
    "SwingSpec",
    "ValidationCheck",
    "run_experiment",
    "run_swing",
    "largest_remainder",
    "rescale_state",
    "write_dataset_csv",
    "read_dataset_csv",
    "write_state_csv",
    "write_swing_csv",
    "read_swing_csv",
    "validate",
]

CSV_SCHEMA_VERSION = 1

OUTPUT_KINDS = ("dataset", "summary", "histograms", "district_shares")


@dataclass(frozen=True)
class ExperimentSpec:
    """One named, fully pinned replication experiment."""

    scenario: str
    config: SimulationConfig
    replicates: int = 1000
    outputs: tuple[str, ...] = ("dataset", "summary")
    out_dir: Path | None = None
    tie_rule: str = "random"
    workers: int = 1

    def __post_init__(self):
        if self.replicates < 1:
            raise ValueError("replicates must be >= 1")
        unknown = set(self.outputs) - set(OUTPUT_KINDS)
        if unknown:
            raise ValueError(f"unknown outputs requested: {sorted(unknown)}")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")


@dataclass(frozen=True)
class SwingSpec:
    """Inter-election swing experiment parameters (two parties only).

    Grow the system to ``grow_target`` balls (the base election), rescale
    every district down so the grand total is exactly ``rescale_total`` while
    keeping district and party proportions to the nearest ball, then regrow
    to ``regrow_target`` (the next election).
    """

    config: SimulationConfig
    rescale_total: int = 600
    regrow_target: int = 1_000_000
    replicates: int = 1000
    tracked_district: int = 0
    out_dir: Path | None = None
    workers: int = 1

    def __post_init__(self):
        if self.config.num_colours != 2:
            raise ValueError("swing analysis is defined for two parties")
        if self.rescale_total < self.config.num_districts:
            raise ValueError("rescale_total must allow at least one ball per district")
        if self.regrow_target < self.rescale_total:
            raise ValueError("regrow_target must be >= rescale_total")
        if self.replicates < 1:
            raise ValueError("replicates must be >= 1")
        if not 0 <= self.tracked_district < self.config.num_districts:
            raise ValueError("tracked_district out of range")

    @property
    def grow_target(self) -> int:
        return self.config.target_total_balls


# ---------------------------------------------------------------------------
# replicate execution
# ---------------------------------------------------------------------------

def _replicate_row(config: SimulationConfig, tie_rule: str, replicate: int,
                   keep_district_shares: bool):
    """Simulate one replicate and reduce it to a dataset row."""
    token, rng = stream_for_replicate(config.seed, replicate)
    state = init_state(config)
    run_until(state, config.target_total_balls, rng)
    result = tally(state, tie_rule=tie_rule, rng=rng)
    shares = result.district_shares
    cut = config.num_districts // 2
    north = state.counts[:cut, 0].sum() / state.counts[:cut].sum()
    south = state.counts[cut:, 0].sum() / state.counts[cut:].sum()
    return (
        replicate,
        token,
        result.popular_shares.tolist(),
        result.seats.tolist(),
        float(shares[0, 0]),
        float(north),
        float(south),
        shares[:, 0].tolist() if keep_district_shares else None,
    )


def _replicate_batch(args):
    config, tie_rule, replicates, keep = args
    return [_replicate_row(config, tie_rule, r, keep) for r in replicates]


def _collect_rows(config: SimulationConfig, tie_rule: str, n_replicates: int,
                  workers: int, keep_district_shares: bool):
    ids = list(range(n_replicates))
    if workers <= 1:
        rows = [_replicate_row(config, tie_rule, r, keep_district_shares) for r in ids]
    else:
        chunks = [ids[i::workers] for i in range(workers)]
        rows = []
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_replicate_batch,
                                 [(config, tie_rule, c, keep_district_shares) for c in chunks]):
                rows.extend(part)
        rows.sort(key=lambda row: row[0])  # deterministic merge in replicate order
    return rows


def _rows_to_dataset(rows) -> ReplicateDataset:
    return ReplicateDataset(
        replicate_ids=np.array([r[0] for r in rows], dtype=np.int64),
        seeds=np.array([r[1] for r in rows], dtype=np.uint64),
        popular_shares=np.array([r[2] for r in rows], dtype=float),
        seats=np.array([r[3] for r in rows], dtype=np.int64),
        district1_shares=np.array([r[4] for r in rows], dtype=float),
        north_shares=np.array([r[5] for r in rows], dtype=float),
        south_shares=np.array([r[6] for r in rows], dtype=float),
        district_shares_p1=(np.array([r[7] for r in rows], dtype=float)
                            if rows[0][7] is not None else None),
    )


def run_experiment(spec: ExperimentSpec) -> ReplicateDataset:
    """Run all replicates of ``spec`` and write any requested output files.

    Replicate r uses the stream derived from (config.seed, r), so the result
    is independent of worker count and replicate execution order.
    """
    rows = _collect_rows(spec.config, spec.tie_rule, spec.replicates, spec.workers,
                         keep_district_shares="district_shares" in spec.outputs)
    dataset = _rows_to_dataset(rows)
    if spec.out_dir is not None:
        _write_experiment_files(spec, dataset)
    return dataset


def _experiment_basename(spec: ExperimentSpec) -> str:
    p = spec.config.imitation_prob
    return f"{spec.scenario}_p{p:g}"


def _write_experiment_files(spec: ExperimentSpec, dataset: ReplicateDataset) -> None:
    out = Path(spec.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    base = _experiment_basename(spec)
    if "dataset" in spec.outputs:
        write_dataset_csv(dataset, out / f"{base}_dataset.csv")
    write_manifest(spec, out / f"{base}_manifest.json")
    if "summary" in spec.outputs:
        summary = summarize_dataset(dataset)
        (out / f"{base}_summary.json").write_text(
            json.dumps(summary, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    if "histograms" in spec.outputs:
        _write_histogram_csvs(dataset, out, base)


def summarize_dataset(dataset: ReplicateDataset) -> dict:
    """Headline reductions: north/south correlation, slope fits, seat moments."""
    seats1 = dataset.seats[:, 0]
    summary: dict = {
        "replicates": int(dataset.num_replicates),
        "seat_mean_party1": float(seats1.mean()),
        "seat_variance_party1": float(seats1.var(ddof=1)) if dataset.num_replicates > 1 else 0.0,
        "popular_mean_party1": float(dataset.popular_share_party1.mean()),
    }
    try:
        summary["north_south_pearson"] = pearson(dataset.north_shares, dataset.south_shares)
    except ValueError as exc:
        summary["north_south_pearson"] = None
        summary["north_south_note"] = str(exc)
    try:
        fit = central_slope_fit(dataset)
        summary["central_slope"] = fit.slope
        summary["central_slope_intercept"] = fit.intercept
        summary["central_slope_points"] = fit.points_used
    except ValueError as exc:
        summary["central_slope"] = None
        summary["central_slope_note"] = str(exc)
    try:
        summary["cube_exponent"] = cube_exponent_fit(dataset)
    except ValueError as exc:
        summary["cube_exponent"] = None
        summary["cube_exponent_note"] = str(exc)
    return summary


def _write_histogram_csvs(dataset: ReplicateDataset, out: Path, base: str) -> None:
    from .stats import histogram

    n_seats = dataset.num_districts
    seat_edges = np.arange(-0.5, n_seats + 1.5)
    share_edges = np.linspace(0.0, 1.0, 21)
    specs = (
        ("seats", dataset.seats[:, 0].astype(float), seat_edges),
        ("popular", dataset.popular_share_party1, share_edges),
        ("district1", dataset.district1_shares, share_edges),
    )
    for name, values, edges in specs:
        counts = histogram(values, edges)
        with (out / f"{base}_hist_{name}.csv").open("w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["bin_lo", "bin_hi", "count"])
            for lo, hi, c in zip(edges[:-1], edges[1:], counts):
                writer.writerow([repr(float(lo)), repr(float(hi)), int(c)])


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def _dataset_header(num_parties: int) -> list[str]:
    cols = ["replicate_id", "seed"]
    cols += [f"popular_share_p{i + 1}" for i in range(num_parties)]
    cols += [f"seats_p{i + 1}" for i in range(num_parties)]
    cols += ["district1_share_p1", "north_share_p1", "south_share_p1"]
    return cols


def write_dataset_csv(dataset: ReplicateDataset, path: str | Path) -> Path:
    """Write the replicate CSV (UTF-8, '.' decimals, header row mandatory).

    Floats are written with shortest round-trip formatting, so identical
    datasets always produce identical bytes.
    """
    path = Path(path)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(_dataset_header(dataset.num_parties))
    for i in range(dataset.num_replicates):
        row: list = [int(dataset.replicate_ids[i]), int(dataset.seeds[i])]
        row += [repr(float(v)) for v in dataset.popular_shares[i]]
        row += [int(v) for v in dataset.seats[i]]
        row += [repr(float(dataset.district1_shares[i])),
                repr(float(dataset.north_shares[i])),
                repr(float(dataset.south_shares[i]))]
        writer.writerow(row)
    path.write_text(buf.getvalue(), encoding="utf-8")
    return path


def read_dataset_csv(path: str | Path) -> ReplicateDataset:
    """Read a replicate CSV produced by :func:`write_dataset_csv`."""
    with Path(path).open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        rows = list(reader)
    if not rows:
        raise ValueError("dataset CSV contains no replicates")
    n_parties = sum(1 for c in header if c.startswith("popular_share_p"))
    expected = _dataset_header(n_parties)
    if header != expected:
        raise ValueError("unrecognized dataset CSV header")
    off = 2
    return ReplicateDataset(
        replicate_ids=np.array([int(r[0]) for r in rows], dtype=np.int64),
        seeds=np.array([int(r[1]) for r in rows], dtype=np.uint64),
        popular_shares=np.array([[float(v) for v in r[off:off + n_parties]] for r in rows]),
        seats=np.array([[int(v) for v in r[off + n_parties:off + 2 * n_parties]] for r in rows],
                       dtype=np.int64),
        district1_shares=np.array([float(r[-3]) for r in rows]),
        north_shares=np.array([float(r[-2]) for r in rows]),
        south_shares=np.array([float(r[-1]) for r in rows]),
    )


def write_state_csv(state: UrnState, path: str | Path) -> Path:
    """Snapshot a state's count matrix as CSV (one district per row)."""
    path = Path(path)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["district"] + [f"count_p{i + 1}" for i in range(state.config.num_colours)])
    for u in range(state.config.num_districts):
        writer.writerow([u] + [int(v) for v in state.counts[u]])
    path.write_text(buf.getvalue(), encoding="utf-8")
    return path


def write_swing_csv(records: Sequence[SwingRecord], seeds: Sequence[int],
                    path: str | Path) -> Path:
    path = Path(path)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["replicate_id", "seed", "original_district_share",
                     "local_swing", "national_swing"])
    for i, (rec, seed) in enumerate(zip(records, seeds)):
        writer.writerow([i, int(seed), repr(rec.original_district_share),
                         repr(rec.local_swing), repr(rec.national_swing)])
    path.write_text(buf.getvalue(), encoding="utf-8")
    return path


def read_swing_csv(path: str | Path) -> list[SwingRecord]:
    """Read swing records written by :func:`write_swing_csv`."""
    with Path(path).open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header != ["replicate_id", "seed", "original_district_share",
                      "local_swing", "national_swing"]:
            raise ValueError("unrecognized swing CSV header")
        return [SwingRecord(float(r[2]), float(r[3]), float(r[4])) for r in reader]


def config_to_jsonable(config: SimulationConfig) -> dict:
    return {
        "num_districts": config.num_districts,
        "num_colours": config.num_colours,
        "imitation_prob": config.imitation_prob,
        "reinforcement": config.reinforcement,
        "blocks": [[n, list(row)] for n, row in config.initial_allocation.blocks],
        "target_total_balls": config.target_total_balls,
        "seed": config.seed,
    }


def config_from_jsonable(doc: dict) -> SimulationConfig:
    return SimulationConfig(
        num_districts=int(doc["num_districts"]),
        num_colours=int(doc["num_colours"]),
        imitation_prob=float(doc["imitation_prob"]),
        reinforcement=int(doc.get("reinforcement", 1)),
        initial_allocation=InitialAllocation(
            tuple((int(n), tuple(int(c) for c in row)) for n, row in doc["blocks"])),
        target_total_balls=int(doc["target_total_balls"]),
        seed=int(doc.get("seed", 0)),
    )


def write_manifest(spec: ExperimentSpec, path: str | Path) -> Path:
    """Pin everything needed to reproduce the dataset byte for byte."""
    doc = {
        "package_version": __version__,
        "csv_schema_version": CSV_SCHEMA_VERSION,
        "scenario": spec.scenario,
        "replicates": spec.replicates,
        "tie_rule": spec.tie_rule,
        "outputs": list(spec.outputs),
        "config": config_to_jsonable(spec.config),
    }
    path = Path(path)
    path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return path


# ---------------------------------------------------------------------------
# swing pipeline
# ---------------------------------------------------------------------------

def largest_remainder(weights: Sequence[float], total: int) -> np.ndarray:
    """Apportion ``total`` integer units proportionally to ``weights``.

    Hamilton / largest-remainder rounding: floor every quota, then hand the
    leftover units to the largest fractional parts (ties to the lower index).
    Every result is within one unit of its exact quota, and the results sum
    to ``total`` exactly.
    """
    w = np.asarray(weights, dtype=float)
    if total < 0:
        raise ValueError("total must be nonnegative")
    if w.ndim != 1 or w.size == 0 or np.any(w < 0) or w.sum() <= 0:
        raise ValueError("weights must be nonnegative with a positive sum")
    quota = total * w / w.sum()
    base = np.floor(quota).astype(np.int64)
    leftover = int(total - base.sum())
    if leftover > 0:
        order = np.argsort(-(quota - base), kind="stable")
        base[order[:leftover]] += 1
    return base


def rescale_state(state: UrnState, new_total: int) -> UrnState:
    """Shrink a state to ``new_total`` balls, preserving proportions.

    District populations are apportioned by largest remainder from the
    current populations, then each district's balls are apportioned to
    parties the same way, so both levels sum exactly and every share moves
    by less than one ball's worth.  The result is a fresh state (step count
    zero) holding a config whose initial allocation is the rescaled matrix.
    """
    pops = largest_remainder(state.per_urn_totals, new_total)
    if pops.min() < 1:
        raise ValueError("rescale left a district with no balls; raise rescale_total")
    n = state.config.num_districts
    rows = []
    for u in range(n):
        party = largest_remainder(state.counts[u], int(pops[u]))
        rows.append((1, tuple(int(v) for v in party)))
    cfg = replace(
        state.config,
        initial_allocation=InitialAllocation(tuple(rows)),
        target_total_balls=max(state.config.target_total_balls, new_total),
    )
    return init_state(cfg)


def _swing_replicate(spec: SwingSpec, replicate: int) -> tuple[int, SwingRecord]:
    """Grow, rescale, regrow; report the tracked district's swing.

    Swings are oriented as base-election share minus next-election share.
    With this orientation the model reproduces the expected inter-election
    signatures: a flat (local - national) cloud under independent districts
    (uniform swing) and a negative-to-positive sloped cloud once imitation
    couples districts (proportional swing), because regrowth pulls each
    district toward the national mixture.
    """
    config = spec.config
    token, rng = stream_for_replicate(config.seed, replicate)
    state = init_state(config)
    run_until(state, spec.grow_target, rng)

    d = spec.tracked_district
    original_local = float(state.counts[d, 0] / state.per_urn_totals[d])
    original_national = float(state.counts[:, 0].sum() / state.grand_total)

    reduced = rescale_state(state, spec.rescale_total)
    run_until(reduced, spec.regrow_target, rng)

    new_local = float(reduced.counts[d, 0] / reduced.per_urn_totals[d])
    new_national = float(reduced.counts[:, 0].sum() / reduced.grand_total)
    record = SwingRecord(
        original_district_share=original_local,
        local_swing=original_local - new_local,
        national_swing=original_national - new_national,
    )
    return token, record


def _swing_batch(args):
    spec, replicates = args
    return [(r, *_swing_replicate(spec, r)) for r in replicates]


def run_swing(spec: SwingSpec) -> tuple[list[SwingRecord], SlopeFit]:
    """Run the grow / rescale / regrow pipeline and fit the swing regression."""
    ids = list(range(spec.replicates))
    if spec.workers <= 1:
        triples = [(r, *_swing_replicate(spec, r)) for r in ids]
    else:
        chunks = [ids[i::spec.workers] for i in range(spec.workers)]
        triples = []
        with ProcessPoolExecutor(max_workers=spec.workers) as pool:
            for part in pool.map(_swing_batch, [(spec, c) for c in chunks]):
                triples.extend(part)
        triples.sort(key=lambda t: t[0])
    seeds = [t[1] for t in triples]
    records = [t[2] for t in triples]
    fit = swing_regression(records)
    if spec.out_dir is not None:
        out = Path(spec.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        base = f"swing_p{spec.config.imitation_prob:g}"
        write_swing_csv(records, seeds, out / f"{base}_records.csv")
        doc = {
            "package_version": __version__,
            "config": config_to_jsonable(spec.config),
            "rescale_total": spec.rescale_total,
            "regrow_target": spec.regrow_target,
            "replicates": spec.replicates,
            "tracked_district": spec.tracked_district,
            "fit": asdict(fit),
        }
        (out / f"{base}_summary.json").write_text(
            json.dumps(doc, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return records, fit


# ---------------------------------------------------------------------------
# validation battery
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ValidationCheck:
    name: str
    passed: bool
    detail: str


def _tiny_two_urn_config(p: float) -> SimulationConfig:
    return SimulationConfig(
        num_districts=2, num_colours=2, imitation_prob=p, reinforcement=1,
        initial_allocation=InitialAllocation(((2, (1, 1)),)),
        target_total_balls=8, seed=0,
    )


def validate(mc_samples: int = 200_000, seed: int = 20_260_811,
             tmp_dir: str | Path | None = None) -> list[ValidationCheck]:
    """Desk-scale oracle battery: sampler vs exact laws, curve identities.

    Returns one check per comparison; the CLI turns any failure into a
    nonzero exit status.  ``mc_samples`` trades speed against the sampling
    noise floor (the TV threshold 0.02 needs roughly 1e5 samples or more).
    """
    checks: list[ValidationCheck] = []

    def add(name: str, passed: bool, detail: str) -> None:
        checks.append(ValidationCheck(name, bool(passed), detail))

    # sampler vs exact enumeration, three imitation regimes
    for p in (0.0, 0.3, 1.0):
        config = _tiny_two_urn_config(p)
        exact = enumerate_multiurn(config, 4)
        freqs = mc_final_state_frequencies(config, 4, mc_samples, make_rng(seed))
        tv = exact.total_variation(freqs)
        add(f"multiurn_tv_p{p:g}", tv < 0.02, f"TV={tv:.5f} (< 0.02)")

    # negative control: corrupted colour probabilities must be detected
    config = _tiny_two_urn_config(0.3)
    exact = enumerate_multiurn(config, 4)
    freqs = mc_final_state_frequencies(config, 4, mc_samples, make_rng(seed), _bias=0.75)
    tv = exact.total_variation(freqs)
    add("corruption_negative_control", tv >= 0.02,
        f"biased sampler TV={tv:.5f} (>= 0.02 expected)")

    # single-urn exchangeability: count law after 6 draws is Dirichlet-multinomial
    single = SimulationConfig(
        num_districts=1, num_colours=2, imitation_prob=0.0, reinforcement=1,
        initial_allocation=InitialAllocation(((1, (1, 1)),)), target_total_balls=8)
    freqs = mc_final_state_frequencies(single, 6, mc_samples, make_rng(seed + 1))
    tv = 0.5 * sum(
        abs(count / mc_samples - dirichlet_multinomial_pmf((1, 1), 6, (s[0] - 1, s[1] - 1)))
        for s, count in freqs.items()
    )
    add("single_urn_dirichlet_multinomial_tv", tv < 0.02, f"TV={tv:.5f} (< 0.02)")

    # enumeration reduces to the single-urn law when N=1
    single_exact = enumerate_multiurn(single, 4)
    worst = max(
        abs(prob - dirichlet_multinomial_pmf((1, 1), 4, (s[0] - 1, s[1] - 1)))
        for s, prob in single_exact.as_dict().items()
    )
    add("enumeration_single_urn_reduction", worst < 1e-12, f"max pmf gap {worst:.2e}")

    # hand-checkable one-step probability: ((2,1),(1,1)), p=0.3, target urn 0 colour 1
    cfg = SimulationConfig(
        num_districts=2, num_colours=2, imitation_prob=0.3, reinforcement=1,
        initial_allocation=InitialAllocation(((1, (2, 1)), (1, (1, 1)))),
        target_total_balls=6)
    one = enumerate_multiurn(cfg, 1).as_dict()
    got = one[(3, 1, 1, 1)]
    want = 0.5 * (0.7 * 2 / 3 + 0.3 * 0.5)
    add("one_step_hand_value", abs(got - want) < 1e-12,
        f"P={got:.6f} vs {want:.6f}")

    # pmf normalisation
    total = sum(enumerate_multiurn(_tiny_two_urn_config(0.3), 4).probabilities)
    add("enumeration_normalised", abs(total - 1.0) < 1e-12, f"sum={total!r}")

    # curve identities (logit check on the lower half, where 1-y is
    # cancellation-free; symmetry carries it to the upper half)
    lower = np.linspace(0.001, 0.5, 100)
    gap = max(abs(np.log(cube_curve(3.0, x) / (1 - cube_curve(3.0, x)))
                  - 3.0 * np.log(x / (1 - x))) for x in lower)
    add("cube_logit_identity", gap < 1e-10, f"max logit gap {gap:.2e}")
    grid = np.linspace(0.001, 0.999, 199)
    sym = max(abs(cube_curve(3.0, x) + cube_curve(3.0, 1 - x) - 1.0) for x in grid)
    add("cube_symmetry", sym < 1e-12, f"max symmetry gap {sym:.2e}")
    n2 = max(abs(seatvote_numeric(2, float(x)) - seatvote_exact_n2(float(x)))
             for x in np.linspace(0.01, 0.99, 99))
    add("seatvote_numeric_matches_closed_form", n2 < 1e-8, f"max gap {n2:.2e}")
    s2 = central_difference_slope(lambda x: seatvote_numeric(2, x), 0.5)
    s3 = central_difference_slope(lambda x: seatvote_numeric(3, x), 0.5)
    add("seatvote_central_slopes", abs(s2 - 1.0) < 1e-3 and abs(s3 - 2.0) < 1e-3,
        f"slopes N=2: {s2:.6f}, N=3: {s3:.6f}")

    # byte-identical reruns of a small experiment
    import tempfile

    with tempfile.TemporaryDirectory(dir=tmp_dir) as td:
        spec = ExperimentSpec(
            scenario="sym_1_1",
            config=build_config("sym_1_1", p=0.1, num_districts=10,
                                target_total_balls=500, seed=seed),
            replicates=5, outputs=("dataset",), out_dir=Path(td) / "a")
        run_experiment(spec)
        run_experiment(replace(spec, out_dir=Path(td) / "b"))
        a = (Path(td) / "a" / "sym_1_1_p0.1_dataset.csv").read_bytes()
        b = (Path(td) / "b" / "sym_1_1_p0.1_dataset.csv").read_bytes()
        add("determinism_bytes", a == b, f"{len(a)} bytes compared")

    return checks
