"""Pure-Python kernels. Must stay behaviourally identical to ``_ckernels.pyx``."""

ASR = 0
ST = 1


def edit_distance(ref, hyp):
    """Unit-cost Levenshtein distance between two integer sequences."""
    n = len(hyp)
    prev = list(range(n + 1))
    for i in range(1, len(ref) + 1):
        r = ref[i - 1]
        cur = [i] + [0] * n
        for j in range(1, n + 1):
            sub = prev[j - 1] + (r != hyp[j - 1])
            dele = prev[j] + 1
            ins = cur[j - 1] + 1
            cur[j] = min(sub, dele, ins)
        prev = cur
    return prev[n]


def lagging(delays, duration, rate_len):
    rate = duration / rate_len
    total = 0.0
    tau = 0
    for i, d in enumerate(delays):
        total += d - i * rate
        tau = i + 1
        if d >= duration:
            break
    return total / tau


def gamma_schedule(m, n, num, den):
    """Task code (ASR=0, ST=1) per emitted word for gamma = num/den."""
    out = []
    ca = cs = 0
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


def block_cuts(m, n, src, tgt):
    """Return blocks ``(s0, s1, t0, t1)`` for links given as parallel index lists."""
    if not src:
        return [(0, m, 0, n)] if m + n else []
    lo = [n] * m
    hi = [-1] * m
    for s, t in zip(src, tgt):
        if t < lo[s]:
            lo[s] = t
        if t > hi[s]:
            hi[s] = t
    suffix_min = [n] * (m + 1)
    for s in range(m - 1, -1, -1):
        suffix_min[s] = min(lo[s], suffix_min[s + 1])
    linked = [s for s in range(m) if hi[s] >= 0]
    blocks = []
    s0 = t0 = 0
    reach = -1
    for s in linked[:-1]:
        reach = max(reach, hi[s])
        j = reach + 1
        if suffix_min[s + 1] >= j:
            blocks.append((s0, s + 1, t0, j))
            s0, t0 = s + 1, j
    reach = max(reach, hi[linked[-1]])
    s_end, t_end = linked[-1] + 1, reach + 1
    blocks.append((s0, s_end, t0, t_end))
    if s_end < m or t_end < n:
        blocks.append((s_end, m, t_end, n))
    return blocks
