"""Exact computations in the truncated SL(m)-representation algebra of F_n and Z^n."""

from .rep_algebra import AlgebraContext, context
from .words import AutPair, Word, nielsen, magnus_Kij, magnus_Kijl, parse_aut, parse_word

__version__ = "0.1.0"

__all__ = [
    "AlgebraContext", "AutPair", "Word", "context", "magnus_Kij", "magnus_Kijl", "nielsen", "parse_aut",
    "parse_word", "__version__",
]
