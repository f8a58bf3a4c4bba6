# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled combinatorial kernels.

Mirrors ``fogcache._kernels._pure`` operation for operation: same splitting
rule, same tie-breaking, same float accumulation order, so outputs are bit
identical.  Clique masks live in single 64-bit words (the dispatcher guards
the vertex count); the greedy kernel packs arbitrary-width Python-int masks
into little-endian 64-bit words.
"""

from libc.stdint cimport uint64_t
from libcpp.vector cimport vector
from libcpp.unordered_set cimport unordered_set
from libcpp.algorithm cimport sort as cpp_sort

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil


def maximal_clique_masks(int num_vertices, list neighbor_masks, list table_masks):
    """Maximal cliques (>= 2 vertices) via worklist splitting of the tables."""
    if num_vertices > 64:
        raise ValueError("compiled clique kernel is limited to 64 vertices")
    cdef vector[uint64_t] closed
    cdef int v
    closed.resize(num_vertices)
    for v in range(num_vertices):
        closed[v] = <uint64_t> neighbor_masks[v] | ((<uint64_t> 1) << v)

    cdef vector[uint64_t] stack
    cdef unordered_set[uint64_t] seen
    cdef unordered_set[uint64_t] emitted
    cdef uint64_t start, table, rest, without, with_v, branch
    cdef int conflict, b
    for mask_obj in table_masks:
        start = <uint64_t> mask_obj
        if seen.insert(start).second:
            stack.push_back(start)
    while stack.size() > 0:
        table = stack.back()
        stack.pop_back()
        rest = table
        conflict = -1
        while rest != 0:
            v = __builtin_ctzll(rest)
            if table & ~closed[v]:
                conflict = v
                break
            rest &= rest - 1
        if conflict < 0:
            emitted.insert(table)
            continue
        without = table & ~((<uint64_t> 1) << conflict)
        with_v = table & closed[conflict]
        for b in range(2):
            branch = without if b == 0 else with_v
            if seen.insert(branch).second:
                stack.push_back(branch)

    # canonical output: popcount >= 2, maximal only, ascending by mask.
    # emitted masks are cliques; a clique is maximal iff the intersection of
    # its members' neighborhoods is empty (members never appear in it).
    cdef vector[uint64_t] neighbor
    neighbor.resize(num_vertices)
    for v in range(num_vertices):
        neighbor[v] = <uint64_t> neighbor_masks[v]
    cdef vector[uint64_t] kept
    cdef uint64_t common, mask
    cdef size_t i
    for it in emitted:
        mask = <uint64_t> it
        if __builtin_popcountll(mask) < 2:
            continue
        common = <uint64_t> 0xFFFFFFFFFFFFFFFF
        rest = mask
        while rest != 0:
            v = __builtin_ctzll(rest)
            common &= neighbor[v]
            rest &= rest - 1
        if common == 0:
            kept.push_back(mask)
    cpp_sort(kept.begin(), kept.end())
    return [int(kept[i]) for i in range(kept.size())]


def greedy_restart_mwis(list conflict_masks, list weights):
    """Restart greedy for max-weight independent set on the conflict graph."""
    cdef int n = len(weights)
    if n == 0:
        return [], 0.0
    cdef vector[double] wts
    wts.resize(n)
    cdef int v, w, k
    for v in range(n):
        wts[v] = <double> weights[v]
        if wts[v] < 0:
            raise ValueError(f"negative weight {weights[v]!r}")

    cdef int words = (n + 63) >> 6
    cdef int nbytes = words * 8
    cdef vector[uint64_t] closed
    closed.resize(n * words)
    cdef const unsigned char[::1] buf
    cdef uint64_t word
    cdef object py_one = 1
    for v in range(n):
        packed = (int(conflict_masks[v]) | (py_one << v)).to_bytes(nbytes, "little")
        buf = packed
        for w in range(words):
            word = 0
            for k in range(8):
                word |= (<uint64_t> buf[w * 8 + k]) << (8 * k)
            closed[v * words + w] = word

    order_py = sorted(range(n), key=lambda i: (-float(weights[i]), i))
    cdef vector[int] order
    order.resize(n)
    for v in range(n):
        order[v] = <int> order_py[v]

    cdef vector[uint64_t] full
    full.resize(words)
    for w in range(words):
        full[w] = <uint64_t> 0xFFFFFFFFFFFFFFFF
    if n & 63:
        full[words - 1] = ((<uint64_t> 1) << (n & 63)) - 1

    cdef vector[uint64_t] alive, chosen, best
    alive.resize(words)
    chosen.resize(words)
    best.resize(words)
    cdef double best_total = -1.0
    cdef double total
    cdef int start, oi, base
    for start in range(n):
        base = start * words
        for w in range(words):
            alive[w] = full[w] & ~closed[base + w]
            chosen[w] = 0
        chosen[start >> 6] |= (<uint64_t> 1) << (start & 63)
        total = wts[start]
        for oi in range(n):
            v = order[oi]
            if (alive[v >> 6] >> (v & 63)) & 1:
                chosen[v >> 6] |= (<uint64_t> 1) << (v & 63)
                total += wts[v]
                base = v * words
                for w in range(words):
                    alive[w] &= ~closed[base + w]
        if total > best_total:
            best_total = total
            for w in range(words):
                best[w] = chosen[w]
    picks = [v for v in range(n) if (best[v >> 6] >> (v & 63)) & 1]
    return picks, best_total
