# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled popularity scan.

Same table layout as the fallback: per-agent flattened vote tables
indexed by local assignment (incident-edge listing order, last slot =
unmatched), plus a matchings-by-agents assignment matrix.  Scans rows in
order and exits at the first matching that wins the pairwise vote.
"""

from libc.stdint cimport int8_t, int16_t, int64_t

import numpy as np


def first_negative(const int8_t[::1] flat, const int64_t[::1] offsets,
                   const int64_t[::1] sizes, const int16_t[:, ::1] assign,
                   Py_ssize_t m_row) -> int:
    """Index of the first matching beating row ``m_row``, or -1."""
    cdef Py_ssize_t n_mat = assign.shape[0]
    cdef Py_ssize_t n_agents = assign.shape[1]
    cdef int64_t[::1] base = np.empty(n_agents, dtype=np.int64)
    cdef Py_ssize_t n, a
    cdef int64_t delta

    for a in range(n_agents):
        base[a] = offsets[a] + <int64_t>assign[m_row, a] * sizes[a]
    for n in range(n_mat):
        delta = 0
        for a in range(n_agents):
            delta += flat[base[a] + assign[n, a]]
        if delta < 0:
            return n
    return -1
