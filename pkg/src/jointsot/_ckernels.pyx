# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels. Same signatures and results as ``_pykernels``."""

from libc.stdlib cimport malloc, free

DEF ASR = 0
DEF ST = 1


cdef long *_as_array(seq, Py_ssize_t n) except NULL:
    cdef long *buf = <long *> malloc((n if n > 0 else 1) * sizeof(long))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(n):
        buf[i] = seq[i]
    return buf


def edit_distance(ref, hyp):
    cdef Py_ssize_t m = len(ref), n = len(hyp), i, j
    cdef long *r = _as_array(ref, m)
    cdef long *h
    cdef long *prev
    cdef long *cur
    cdef long *tmp
    cdef long best, c, result
    try:
        h = _as_array(hyp, n)
    except MemoryError:
        free(r)
        raise
    prev = <long *> malloc((n + 1) * sizeof(long))
    cur = <long *> malloc((n + 1) * sizeof(long))
    if prev == NULL or cur == NULL:
        free(r); free(h); free(prev); free(cur)
        raise MemoryError()
    for j in range(n + 1):
        prev[j] = j
    for i in range(1, m + 1):
        cur[0] = i
        for j in range(1, n + 1):
            best = prev[j - 1] + (0 if r[i - 1] == h[j - 1] else 1)
            c = prev[j] + 1
            if c < best:
                best = c
            c = cur[j - 1] + 1
            if c < best:
                best = c
            cur[j] = best
        tmp = prev
        prev = cur
        cur = tmp
    result = prev[n]
    free(r); free(h); free(prev); free(cur)
    return result


def lagging(delays, double duration, long rate_len):
    cdef double rate = duration / rate_len
    cdef double total = 0.0, d
    cdef Py_ssize_t i, tau = 0, k = len(delays)
    for i in range(k):
        d = delays[i]
        total += d - i * rate
        tau = i + 1
        if d >= duration:
            break
    return total / tau


def gamma_schedule(long m, long n, long long num, long long den):
    cdef long ca = 0, cs = 0
    out = []
    while ca < m and cs < n:
        if (den - num) * (1 + cs) >= num * (1 + ca):
            out.append(ASR)
            ca += 1
        else:
            out.append(ST)
            cs += 1
    out.extend([ASR] * (m - ca))
    out.extend([ST] * (n - cs))
    return out


def block_cuts(long m, long n, src, tgt):
    cdef Py_ssize_t k = len(src), i
    cdef long s, t, s0 = 0, t0 = 0, reach = -1, j, last = -1, s_end, t_end
    cdef long *lo
    cdef long *hi
    cdef long *suffix_min
    if k == 0:
        return [(0, m, 0, n)] if m + n else []
    lo = <long *> malloc(m * sizeof(long))
    hi = <long *> malloc(m * sizeof(long))
    suffix_min = <long *> malloc((m + 1) * sizeof(long))
    if lo == NULL or hi == NULL or suffix_min == NULL:
        free(lo); free(hi); free(suffix_min)
        raise MemoryError()
    for i in range(m):
        lo[i] = n
        hi[i] = -1
    for i in range(k):
        s = src[i]
        t = tgt[i]
        if t < lo[s]:
            lo[s] = t
        if t > hi[s]:
            hi[s] = t
    suffix_min[m] = n
    for i in range(m - 1, -1, -1):
        suffix_min[i] = lo[i] if lo[i] < suffix_min[i + 1] else suffix_min[i + 1]
    for i in range(m - 1, -1, -1):
        if hi[i] >= 0:
            last = i
            break
    blocks = []
    for i in range(last):
        if hi[i] < 0:
            continue
        if hi[i] > reach:
            reach = hi[i]
        j = reach + 1
        if suffix_min[i + 1] >= j:
            blocks.append((s0, i + 1, t0, j))
            s0 = i + 1
            t0 = j
    if hi[last] > reach:
        reach = hi[last]
    s_end = last + 1
    t_end = reach + 1
    blocks.append((s0, s_end, t0, t_end))
    if s_end < m or t_end < n:
        blocks.append((s_end, m, t_end, n))
    free(lo); free(hi); free(suffix_min)
    return blocks
