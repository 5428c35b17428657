"""Seeded synthetic parallel corpora with controlled alignment topologies."""

from __future__ import annotations

import random

from .corpus import Alignment, UtterancePair

TOPOLOGIES = ("monotone", "crossing", "many-to-one", "sparse")


def _monotone(m, n):
    k = max(m, n)
    if not m or not n:
        return set()
    return {(i * m // k, i * n // k) for i in range(k)}


def _crossing(rng, m, n):
    links = sorted(_monotone(m, n))
    # swap targets of two increasing links to create a local reordering
    candidates = [
        (p, q)
        for p in range(len(links))
        for q in range(p + 1, min(p + 4, len(links)))
        if links[q][0] > links[p][0] and links[q][1] > links[p][1]
    ]
    if not candidates:
        return set(links)
    swaps = 1 + rng.randrange(max(1, min(m, n) // 5))
    rng.shuffle(candidates)
    used = set()
    for p, q in candidates:
        if swaps == 0:
            break
        if p in used or q in used:
            continue
        used.update((p, q))
        (a, ta), (b, tb) = links[p], links[q]
        links[p], links[q] = (a, tb), (b, ta)
        swaps -= 1
    return set(links)


def _groups(rng, total, parts):
    """Split ``range(total)`` into ``parts`` non-empty consecutive groups."""
    cuts = sorted(rng.sample(range(1, total), parts - 1)) if parts > 1 else []
    bounds = [0, *cuts, total]
    return [range(bounds[k], bounds[k + 1]) for k in range(parts)]


def _many_to_one(rng, m, n):
    if not m or not n:
        return set()
    if m >= n:
        return {(i, j) for j, grp in enumerate(_groups(rng, m, n)) for i in grp}
    return {(i, j) for i, grp in enumerate(_groups(rng, n, m)) for j in grp}


def _sparse(rng, m, n):
    links = sorted(_monotone(m, n))
    kept = {link for link in links if rng.random() < 0.5}
    if links and not kept:
        kept.add(rng.choice(links))
    return kept


def random_alignment(rng: random.Random, m: int, n: int, topology: str) -> Alignment:
    if topology == "monotone":
        links = _monotone(m, n)
    elif topology == "crossing":
        links = _crossing(rng, m, n)
    elif topology == "many-to-one":
        links = _many_to_one(rng, m, n)
    elif topology == "sparse":
        links = _sparse(rng, m, n)
    else:
        raise ValueError(f"unknown topology {topology!r}; choose from {', '.join(TOPOLOGIES)}")
    return Alignment(frozenset(links))


def has_crossing(alignment: Alignment) -> bool:
    links = sorted(alignment.links)
    return any(
        (a < b and ta > tb) for k, (a, ta) in enumerate(links) for b, tb in links[k + 1:]
    )


def random_pair(
    rng: random.Random,
    id: str,
    m: int,
    n: int,
    topology: str,
    ms_per_word: int = 1000,
    vocab_size: int = 50,
) -> UtterancePair:
    src = tuple(f"s{rng.randrange(vocab_size)}" for _ in range(m))
    tgt = tuple(f"t{rng.randrange(vocab_size)}" for _ in range(n))
    return UtterancePair(
        id,
        src,
        tgt,
        random_alignment(rng, m, n, topology),
        src_lang="xx",
        tgt_lang="yy",
        duration_ms=m * ms_per_word if m else ms_per_word,
        extra={"topology": topology},
    )


def generate_corpus(
    seed: int,
    count: int,
    min_words: int = 8,
    max_words: int = 15,
    topologies=("monotone",),
    ms_per_word: int = 1000,
) -> list[UtterancePair]:
    """Deterministic corpus; topologies are assigned round-robin."""
    if min_words < 0 or max_words < min_words:
        raise ValueError("need 0 <= min_words <= max_words")
    for topo in topologies:
        if topo not in TOPOLOGIES:
            raise ValueError(f"unknown topology {topo!r}; choose from {', '.join(TOPOLOGIES)}")
    if "crossing" in topologies and min_words < 2:
        raise ValueError("crossing topology needs at least 2 words per side")
    rng = random.Random(seed)
    pairs = []
    for k in range(count):
        topo = topologies[k % len(topologies)]
        m = rng.randint(min_words, max_words)
        n = rng.randint(min_words, max_words)
        pairs.append(random_pair(rng, f"syn{seed}-{k:05d}", m, n, topo, ms_per_word))
    return pairs
