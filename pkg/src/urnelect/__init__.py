"""Monte Carlo simulator and analysis toolkit for multi-district urn elections.

The model grows voter populations by reinforcement: districts are urns of
party-coloured balls, and each step copies one sampled preference (possibly
from another district, with the imitation probability p) into a target
district.  The package simulates that process at scale, turns states into
first-past-the-post election outcomes, reduces replicate sets to seat/vote
statistics, and validates the sampler against exact small-instance and
limiting distributions.
"""

__version__ = "0.1.0"

from .urn import (  # noqa: E402
    DrawEvent,
    InitialAllocation,
    SimulationConfig,
    UrnState,
    init_state,
    make_rng,
    mc_final_state_frequencies,
    run_steps,
    run_until,
    step,
    stream_for_replicate,
    vote_shares,
)
from .election import ElectionResult, RegionalSplit, regional_shares, tally  # noqa: E402
from .analytic import (  # noqa: E402
    AnalyticCurve,
    ExactPmf,
    beta_cdf_int,
    central_difference_slope,
    cube_curve,
    dirichlet_multinomial_pmf,
    enumerate_multiurn,
    irwin_hall_pdf,
    seatvote_exact_n2,
    seatvote_numeric,
    write_curve_csv,
)
from .stats import (  # noqa: E402
    ReplicateDataset,
    SlopeFit,
    SwingRecord,
    central_slope_fit,
    cube_exponent_fit,
    histogram,
    ks_statistic,
    pearson,
    swing_regression,
)
from .scenarios import SCENARIOS, build_config, scenario_names  # noqa: E402
from .experiments import (  # noqa: E402
    ExperimentSpec,
    SwingSpec,
    largest_remainder,
    read_dataset_csv,
    rescale_state,
    run_experiment,
    run_swing,
    summarize_dataset,
    validate,
    write_dataset_csv,
    write_state_csv,
)
from .plots import emit_plots, emit_swing_plot, svg_histogram, svg_scatter  # noqa: E402
