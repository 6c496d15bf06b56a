"""Counter-based keyed random streams.

All stochastic pieces of the trainer (embedding init, negative sampling)
draw from pure hash functions of their key words, so any slice of the
stream can be regenerated independently and in parallel.
"""

import numpy as np

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_INIT = np.uint64(0x7F4A7C15F39CC060)

# stream tags keep the init and sampler streams disjoint
TAG_INIT = 0x11
TAG_NEGATIVE = 0x22


def _finalize(z):
    # splitmix64 finalizer
    z = (z ^ (z >> np.uint64(30))) * _MIX1
    z = (z ^ (z >> np.uint64(27))) * _MIX2
    return z ^ (z >> np.uint64(31))


def hash_words(*words):
    """Mix an arbitrary list of integer words (scalars or uint-castable
    arrays) into a uint64 hash. Broadcasts over array arguments."""
    h = _INIT
    with np.errstate(over="ignore"):
        for w in words:
            w = np.asarray(w)
            if w.dtype.kind != "u":
                w = w.astype(np.int64).view(np.uint64) if w.dtype.kind == "i" else w.astype(np.uint64)
            else:
                w = w.astype(np.uint64)
            h = _finalize((h ^ w) + _GOLDEN)
    return h


def uniform01(*words):
    """Uniform floats in [0, 1) keyed by the given words."""
    return (hash_words(*words) >> np.uint64(11)) * 2.0**-53


def randint(upper, *words):
    """Uniform integers in [0, upper) keyed by the given words."""
    return (hash_words(*words) % np.uint64(upper)).astype(np.int64)
