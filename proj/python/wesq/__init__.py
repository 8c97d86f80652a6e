"""Exact invariants of the Whitehead certain exact sequence.

Integral homology, the universal quadratic functor, Ext^1 classes, and
the 4-dimensional equivalence classifier, all over exact integer
arithmetic. The heavy lifting lives in the C++ extension module.
"""

from wesq._core import *  # noqa: F401,F403

__version__ = "0.1.0"
