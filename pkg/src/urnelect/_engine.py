"""Numba kernels for the urn sampler's hot path.

All randomness is drawn vectorised from a numpy Generator *before* a kernel
runs; the kernels are deterministic consumers of those arrays.  Ball counts
are int64 and mutated in place, so the Python layer never copies state when
advancing it.

``bias`` is a test hook: 0.0 leaves the colour draw exact, any other value
warps the colour-selection uniform to ``r**(1+bias)`` and therefore corrupts
the step probabilities in a controlled way (used by validation negative
controls).
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def advance(counts, totals, reinforcement, u_arr, v_arr, r_arr, c_out, bias):
    """Advance one urn system by len(u_arr) steps, in place.

    u_arr[t] is the target district of step t, v_arr[t] the district the
    ball is drawn from, r_arr[t] the colour-selection uniform.  The chosen
    colour is the smallest c with r*totals[v] < cumsum(counts[v, :c+1]),
    which hits colour c with probability counts[v, c] / totals[v] exactly.
    c_out[t] receives the chosen colour.
    """
    n_steps = u_arr.shape[0]
    m = counts.shape[1]
    for t in range(n_steps):
        u = u_arr[t]
        v = v_arr[t]
        r = r_arr[t]
        if bias != 0.0:
            r = r ** (1.0 + bias)
        threshold = r * totals[v]
        acc = 0
        c = m - 1
        for k in range(m):
            acc += counts[v, k]
            if threshold < acc:
                c = k
                break
        counts[u, c] += reinforcement
        totals[u] += reinforcement
        c_out[t] = c


@njit(cache=True)
def replay_final_codes(init_counts, reinforcement, n_steps,
                       u_arr, v_arr, r_arr, codes, base, bias):
    """Run many short simulations from one initial state; encode final states.

    Sample s consumes rows [s*n_steps, (s+1)*n_steps) of the input arrays and
    writes its final count matrix into codes[s] as a base-``base`` integer
    (row-major digit order).  Used by the Monte Carlo side of the exact
    small-instance oracle comparisons.
    """
    n_samples = codes.shape[0]
    n_urns, m = init_counts.shape
    counts = np.empty((n_urns, m), dtype=np.int64)
    totals = np.empty(n_urns, dtype=np.int64)
    for s in range(n_samples):
        for i in range(n_urns):
            tot = 0
            for k in range(m):
                counts[i, k] = init_counts[i, k]
                tot += init_counts[i, k]
            totals[i] = tot
        off = s * n_steps
        for t in range(off, off + n_steps):
            u = u_arr[t]
            v = v_arr[t]
            r = r_arr[t]
            if bias != 0.0:
                r = r ** (1.0 + bias)
            threshold = r * totals[v]
            acc = 0
            c = m - 1
            for k in range(m):
                acc += counts[v, k]
                if threshold < acc:
                    c = k
                    break
            counts[u, c] += reinforcement
            totals[u] += reinforcement
        code = np.int64(0)
        for i in range(n_urns):
            for k in range(m):
                code = code * base + counts[i, k]
        codes[s] = code
