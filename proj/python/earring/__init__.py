"""Graph oracles, path lifting and core-freeness certificates for a
semicovering of the Hawaiian Earring.

Words are lists of non-zero ints: ``k`` stands for a_k and ``-k`` for its
inverse; the empty list is the identity.
"""

from ._core import (
    Oracle,
    anchor,
    anchor_length,
    enumerate,
    format_word,
    index_of,
    parse_word,
    planar,
    reduce,
    run,
)

__all__ = [
    "Oracle",
    "anchor",
    "anchor_length",
    "enumerate",
    "format_word",
    "index_of",
    "parse_word",
    "planar",
    "reduce",
    "run",
]
