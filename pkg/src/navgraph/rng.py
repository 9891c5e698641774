"""Counter-based random streams.

Every random draw in the package goes through Philox4x64-10 (numpy's
``Philox`` bit generator) keyed by ``(seed, stream)``: the low 64 bits of
the 128-bit key hold the user seed, the high 64 bits hold a stream id.
Only ``random_raw`` words are consumed, so outputs depend on the Philox
algorithm alone and not on numpy's distribution code.
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1

# stream id domains, kept disjoint by the top 16 bits
STREAM_SIGN_POINTS = 1 << 48
STREAM_RANDOM_EDGES = 2 << 48
STREAM_SAMPLING = 3 << 48


def philox(seed: int, stream: int = 0) -> np.random.Philox:
    if not 0 <= seed <= MASK64:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
    if not 0 <= stream <= MASK64:
        raise ValueError(f"stream id out of range: {stream}")
    return np.random.Philox(key=(stream << 64) | seed)


def raw_words(bg: np.random.Philox, count: int) -> np.ndarray:
    return np.asarray(bg.random_raw(count), dtype="<u8")


def random_bits(seed: int, stream: int, count: int) -> np.ndarray:
    """``count`` independent fair bits as a uint8 array of 0/1."""
    words = raw_words(philox(seed, stream), -(-count // 64))
    bits = np.unpackbits(words.view(np.uint8), bitorder="little")
    return bits[:count]


def bounded_ints(bg: np.random.Philox, bound: int, count: int) -> np.ndarray:
    """``count`` uniform integers in ``[0, bound)`` by rejection sampling.

    A raw word ``w`` is accepted iff ``w < 2**64 - (2**64 % bound)``, which
    makes ``w % bound`` exactly uniform.
    """
    if bound < 1:
        raise ValueError("bound must be positive")
    limit = np.uint64((1 << 64) - ((1 << 64) % bound)) if (1 << 64) % bound else None
    out = np.empty(count, dtype=np.int64)
    filled = 0
    while filled < count:
        w = raw_words(bg, count - filled)
        if limit is not None:
            w = w[w < limit]
        take = w[: count - filled]
        out[filled : filled + take.size] = (take % np.uint64(bound)).astype(np.int64)
        filled += take.size
    return out


def sample_without_replacement(bg: np.random.Philox, pool: np.ndarray, k: int) -> np.ndarray:
    """First ``k`` entries of a partial Fisher-Yates shuffle of ``pool``.

    Step ``j`` swaps position ``j`` with a uniform position in ``[j, size)``
    drawn with the same rejection rule as :func:`bounded_ints`.
    """
    pool = np.array(pool, copy=True)
    size = pool.size
    if k > size:
        raise ValueError("sample larger than population")
    words = raw_words(bg, k).tolist()
    for j in range(k):
        bound = size - j
        limit = (1 << 64) - ((1 << 64) % bound)
        w = words[j]
        while w >= limit:
            w = int(raw_words(bg, 1)[0])
        r = j + w % bound
        pool[j], pool[r] = pool[r], pool[j]
    return pool[:k]
