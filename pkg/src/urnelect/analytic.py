"""Exact distributions and closed-form seat-vote curves.

These serve as independent test oracles for the stochastic engine: the
single-urn reinforcement process has the Dirichlet-multinomial (Polya) law
for its colour counts and a Dirichlet/Beta limit for its shares, the
multi-urn process can be enumerated exactly for tiny instances, and the
idealised seat-vote relationship has closed or numerically-integrable forms.

Beta and Dirichlet parameters are restricted to positive integers, which
covers every initial allocation of interest and keeps all CDFs and pmfs
exact finite sums (no special-function library, no numerical ambiguity in
oracle code).
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial, floor
from pathlib import Path
from typing import Callable, Iterable, Mapping

import numpy as np

from .urn import SimulationConfig

__all__ = [
    "AnalyticCurve",
    "ExactPmf",
    "beta_cdf_int",
    "dirichlet_multinomial_pmf",
    "enumerate_multiurn",
    "cube_curve",
    "seatvote_exact_n2",
    "seatvote_numeric",
    "irwin_hall_pdf",
    "central_difference_slope",
    "write_curve_csv",
]

# Enumeration guard: branching is N*m per step over a merged state dict, but
# the state space itself is C(steps + N*m - 1, N*m - 1).
_MAX_ENUM_DISTRICTS = 3
_MAX_ENUM_COLOURS = 3
_MAX_ENUM_STEPS = 8


def beta_cdf_int(a: int, b: int, x: float) -> float:
    """Regularized incomplete beta I_x(a, b) for integer a, b >= 1.

    Uses the finite binomial tail identity
    I_x(a, b) = sum_{j=a}^{a+b-1} C(a+b-1, j) x^j (1-x)^(a+b-1-j),
    an exact polynomial in x.
    """
    if a < 1 or b < 1 or a != int(a) or b != int(b):
        raise ValueError("beta parameters must be integers >= 1")
    if not 0.0 <= x <= 1.0:
        raise ValueError("x must lie in [0, 1]")
    n = a + b - 1
    return float(sum(comb(n, j) * x**j * (1.0 - x) ** (n - j) for j in range(a, n + 1)))


def _rising(x: int, k: int) -> int:
    """Rising factorial x (x+1) ... (x+k-1); equals 1 when k = 0."""
    out = 1
    for i in range(k):
        out *= x + i
    return out


def dirichlet_multinomial_pmf(a: Iterable[int], n: int, counts: Iterable[int]) -> float:
    """Exact probability of the colour-addition vector after n single-urn draws.

    For a single urn started at integer counts ``a`` with one ball added per
    draw (K = 1), the number of times each colour is drawn in n steps follows
    the Dirichlet-multinomial law

        P(counts) = multinomial(n; counts) * prod_i rising(a_i, k_i)
                                           / rising(sum(a), n),

    evaluated here in exact integer arithmetic.
    """
    a = [int(v) for v in a]
    k = [int(v) for v in counts]
    if any(v < 1 for v in a):
        raise ValueError("initial counts must be integers >= 1")
    if len(a) != len(k) or any(v < 0 for v in k):
        raise ValueError("counts must be nonnegative, one per colour")
    if sum(k) != n:
        raise ValueError("counts must sum to n")
    multinomial = factorial(n)
    for v in k:
        multinomial //= factorial(v)
    numerator = multinomial
    for ai, ki in zip(a, k):
        numerator *= _rising(ai, ki)
    return float(Fraction(numerator, _rising(sum(a), n)))


@dataclass(frozen=True)
class ExactPmf:
    """Exact distribution over flattened (N, m) count matrices."""

    shape: tuple[int, int]
    support: tuple[tuple[int, ...], ...]
    probabilities: np.ndarray

    def as_dict(self) -> dict[tuple[int, ...], float]:
        return dict(zip(self.support, self.probabilities.tolist()))

    def total_variation(self, sample_counts: Mapping[tuple[int, ...], int]) -> float:
        """TV distance between this pmf and empirical state frequencies."""
        n = sum(sample_counts.values())
        if n < 1:
            raise ValueError("empty sample")
        exact = self.as_dict()
        keys = set(exact) | set(sample_counts)
        return 0.5 * sum(
            abs(exact.get(s, 0.0) - sample_counts.get(s, 0) / n) for s in keys
        )

    def marginal(self, urn: int) -> "ExactPmf":
        """Marginal law of a single urn's count vector."""
        n_urns, m = self.shape
        if not 0 <= urn < n_urns:
            raise ValueError("urn index out of range")
        acc: dict[tuple[int, ...], float] = {}
        for state, p in zip(self.support, self.probabilities):
            key = state[urn * m:(urn + 1) * m]
            acc[key] = acc.get(key, 0.0) + float(p)
        support = tuple(sorted(acc))
        return ExactPmf((1, m), support, np.array([acc[s] for s in support]))


def enumerate_multiurn(config: SimulationConfig, n_steps: int) -> ExactPmf:
    """Brute-force exact distribution of the multi-urn process after n steps.

    Walks the event tree level by level, merging identical count states.  The
    per-state transition probability of adding K balls of colour c to urn u is

        (1/N) * [ (1-p) counts[u,c]/tot[u] + p/(N-1) sum_{v != u} counts[v,c]/tot[v] ].

    Guarded to tiny instances (N <= 3, m <= 3, steps <= 8).
    """
    n_urns = config.num_districts
    m = config.num_colours
    p = config.imitation_prob
    if n_urns > _MAX_ENUM_DISTRICTS or m > _MAX_ENUM_COLOURS or n_steps > _MAX_ENUM_STEPS:
        raise ValueError("instance too large for exact enumeration")
    if n_steps < 0:
        raise ValueError("n_steps must be >= 0")

    init = tuple(int(v) for v in config.initial_allocation.expand().ravel())
    states: dict[tuple[int, ...], float] = {init: 1.0}
    for _ in range(n_steps):
        nxt: dict[tuple[int, ...], float] = {}
        for state, prob in states.items():
            totals = [sum(state[u * m:(u + 1) * m]) for u in range(n_urns)]
            for u in range(n_urns):
                for c in range(m):
                    q = (1.0 - p) * state[u * m + c] / totals[u]
                    if n_urns > 1 and p > 0.0:
                        q += p / (n_urns - 1) * sum(
                            state[v * m + c] / totals[v]
                            for v in range(n_urns) if v != u
                        )
                    q /= n_urns
                    if q <= 0.0:
                        continue
                    child = list(state)
                    child[u * m + c] += config.reinforcement
                    key = tuple(child)
                    nxt[key] = nxt.get(key, 0.0) + prob * q
        states = nxt
    support = tuple(sorted(states))
    return ExactPmf((n_urns, m), support, np.array([states[s] for s in support]))


def cube_curve(k: float, x: float) -> float:
    """Seat share y = x^k / (x^k + (1-x)^k); its slope at x = 1/2 equals k."""
    if not 0.0 <= x <= 1.0:
        raise ValueError("x must lie in [0, 1]")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    xk = x**k
    return xk / (xk + (1.0 - x) ** k)


def seatvote_exact_n2(x: float) -> float:
    """Exact seat-vote curve for two identically-sized independent uniform districts."""
    if not 0.0 <= x <= 1.0:
        raise ValueError("x must lie in [0, 1]")
    if x <= 0.25:
        return 0.0
    if x <= 0.5:
        return 1.0 - 1.0 / (4.0 * x)
    if x <= 0.75:
        return 1.0 / (4.0 * (1.0 - x))
    return 1.0


def _irwin_hall_piece(n: int, piece: int, s: float) -> float:
    """The degree n-1 polynomial equal to the Irwin-Hall density on [piece, piece+1]."""
    acc = 0.0
    for j in range(piece + 1):
        acc += (-1) ** j * comb(n, j) * (s - j) ** (n - 1)
    return acc / factorial(n - 1)


def irwin_hall_pdf(n: int, s: float) -> float:
    """Density of the sum of n independent Uniform[0,1] variables.

    Piecewise polynomial of degree n-1 with knots at the integers:
    f_n(s) = 1/(n-1)! * sum_{j=0}^{floor(s)} (-1)^j C(n, j) (s-j)^(n-1).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if s <= 0.0 or s >= n:
        return 0.0
    return _irwin_hall_piece(n, min(floor(s), n - 1), s)


def _adaptive_simpson(f: Callable[[float], float], lo: float, hi: float,
                      tol: float, depth: int = 24) -> float:
    """Adaptive Simpson quadrature with absolute tolerance ``tol``."""

    def simpson(a, fa, b, fb, fm):
        return (b - a) / 6.0 * (fa + 4.0 * fm + fb)

    def recurse(a, fa, b, fb, fm, whole, eps, d):
        mid = 0.5 * (a + b)
        lm = 0.5 * (a + mid)
        rm = 0.5 * (mid + b)
        flm = f(lm)
        frm = f(rm)
        left = simpson(a, fa, mid, fm, flm)
        right = simpson(mid, fm, b, fb, frm)
        if d <= 0 or abs(left + right - whole) <= 15.0 * eps:
            return left + right + (left + right - whole) / 15.0
        return (recurse(a, fa, mid, fm, flm, left, eps / 2.0, d - 1)
                + recurse(mid, fm, b, fb, frm, right, eps / 2.0, d - 1))

    if hi <= lo:
        return 0.0
    fa, fb, fm = f(lo), f(hi), f(0.5 * (lo + hi))
    whole = simpson(lo, fa, hi, fb, fm)
    return recurse(lo, fa, hi, fb, fm, whole, tol, depth)


def _integrate_irwin_hall(n: int, lo: float, hi: float, tol: float) -> float:
    """Integrate the Irwin-Hall density over [lo, hi], splitting at integer knots.

    Each segment integrates its own closed-form polynomial (valid on the
    closed segment), so Simpson never sees the support-edge discontinuity.
    """
    lo = max(lo, 0.0)
    hi = min(hi, float(n))
    if hi <= lo:
        return 0.0
    interior = [float(j) for j in range(floor(lo) + 1, floor(hi) + 1) if lo < j < hi]
    knots = [lo] + interior + [hi]
    pieces = len(knots) - 1
    total = 0.0
    for i in range(pieces):
        a, b = knots[i], knots[i + 1]
        piece = min(floor((a + b) / 2.0), n - 1)
        total += _adaptive_simpson(lambda w: _irwin_hall_piece(n, piece, w), a, b,
                                   tol / pieces)
    return total


def seatvote_numeric(n_districts: int, x: float, tol: float = 1e-8) -> float:
    """Expected seat share at popular vote x for independent uniform districts.

    With district shares X_1..X_N i.i.d. Uniform[0,1], the expected seat share
    given mean share x is P(X_1 > 1/2 | sum X_i = N x).  Writing the sum of
    the other N-1 shares with the Irwin-Hall density f, this is the ratio of
    integrals of f(N x - t) over t in (1/2, 1] and t in [0, 1], evaluated by
    adaptive Simpson on the polynomial segments.
    """
    if n_districts < 2:
        raise ValueError("need at least two districts")
    if not 0.0 < x < 1.0:
        raise ValueError("x must lie strictly inside (0, 1)")
    s = n_districts * x
    n_other = n_districts - 1
    # substitute w = s - t: t in (1/2, 1] -> w in [s-1, s-1/2)
    numerator = _integrate_irwin_hall(n_other, s - 1.0, s - 0.5, tol)
    denominator = _integrate_irwin_hall(n_other, s - 1.0, s, tol)
    return numerator / denominator


def central_difference_slope(f: Callable[[float], float], x: float, h: float = 1e-4) -> float:
    """Central finite-difference slope; h defaults to 1e-4 of the unit domain."""
    return (f(x + h) - f(x - h)) / (2.0 * h)


@dataclass(frozen=True)
class AnalyticCurve:
    """A named exact curve: limiting CDF or idealised seat-vote function.

    Kinds: ``beta_cdf(a, b)``, ``uniform_cdf``, ``cube_curve(k)``,
    ``seatvote_n2`` and ``seatvote_numeric(N)``.  Instances are callable.
    """

    kind: str
    params: tuple = ()

    _KINDS = ("beta_cdf", "uniform_cdf", "cube_curve", "seatvote_n2", "seatvote_numeric")

    def __post_init__(self):
        if self.kind not in self._KINDS:
            raise ValueError(f"unknown curve kind {self.kind!r}")
        if self.kind == "beta_cdf":
            a, b = self.params
            if int(a) < 1 or int(b) < 1:
                raise ValueError("beta parameters must be positive integers")
        if self.kind == "cube_curve" and self.params[0] <= 0:
            raise ValueError("cube exponent must be positive")
        if self.kind == "seatvote_numeric" and self.params[0] < 2:
            raise ValueError("seat-vote curve needs at least two districts")

    @classmethod
    def beta(cls, a: int, b: int) -> "AnalyticCurve":
        return cls("beta_cdf", (int(a), int(b)))

    @classmethod
    def uniform(cls) -> "AnalyticCurve":
        return cls("uniform_cdf")

    @classmethod
    def cube(cls, k: float) -> "AnalyticCurve":
        return cls("cube_curve", (float(k),))

    @classmethod
    def seatvote_n2(cls) -> "AnalyticCurve":
        return cls("seatvote_n2")

    @classmethod
    def seatvote(cls, n_districts: int) -> "AnalyticCurve":
        return cls("seatvote_numeric", (int(n_districts),))

    def __call__(self, x: float) -> float:
        if self.kind == "beta_cdf":
            return beta_cdf_int(self.params[0], self.params[1], x)
        if self.kind == "uniform_cdf":
            return min(1.0, max(0.0, x))
        if self.kind == "cube_curve":
            return cube_curve(self.params[0], x)
        if self.kind == "seatvote_n2":
            return seatvote_exact_n2(x)
        return seatvote_numeric(self.params[0], x)

    def table(self, n_points: int = 512, lo: float = 0.0, hi: float = 1.0):
        """Evaluate on a uniform grid; open-interval kinds clip the endpoints."""
        if self.kind == "seatvote_numeric":
            lo = max(lo, 1e-9)
            hi = min(hi, 1.0 - 1e-9)
        xs = np.linspace(lo, hi, n_points)
        ys = np.array([self(float(x)) for x in xs])
        return xs, ys


def write_curve_csv(curve: AnalyticCurve, path: str | Path, n_points: int = 512) -> Path:
    """Export a curve as an (x, y) CSV table on a uniform grid."""
    xs, ys = curve.table(n_points)
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["x", "y"])
        for x, y in zip(xs, ys):
            writer.writerow([repr(float(x)), repr(float(y))])
    return path
