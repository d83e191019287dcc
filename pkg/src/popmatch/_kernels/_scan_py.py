"""Vectorized fallback for the popularity scan.

Table layout, shared with the compiled kernel: agent a's votes live in
``flat[offsets[a] : offsets[a] + sizes[a]**2]``, row-major, where row i /
column j hold the agent's vote for assignment i over assignment j.  Local
assignment indices follow the agent's incident-edge listing order and
``sizes[a] - 1`` is the unmatched slot.  ``assign[m, a]`` gives matching
m's local assignment for agent a.
"""

from __future__ import annotations

import numpy as np


def first_negative(flat: np.ndarray, offsets: np.ndarray, sizes: np.ndarray,
                   assign: np.ndarray, m_row: int) -> int:
    """Index of the first matching beating row ``m_row``, or -1.

    A matching N beats M when the summed votes of all agents comparing
    M against N are negative.
    """
    n_mat, n_agents = assign.shape
    totals = np.zeros(n_mat, dtype=np.int32)
    base = offsets + assign[m_row].astype(np.int64) * sizes
    for a in range(n_agents):
        totals += flat[base[a] + assign[:, a]]
    losses = np.nonzero(totals < 0)[0]
    return int(losses[0]) if losses.size else -1
