"""Context-sensitive correction of non-word spelling errors.

Candidate corrections one Damerau edit away are ranked by independent
guessers (document frequency, background frequency, a constraint-grammar
style POS filter, optional semantic hooks) and combined by weighted voting.
"""
from .kernels import BACKEND

__version__ = "0.1.0"
__all__ = ["BACKEND", "__version__"]
