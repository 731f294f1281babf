"""fracchern: exact symbolic engine for twisted (fractional) Chern classes.

Subpackages:
  gcring        truncated graded-commutative rings over exact rationals
  symroots      Chern-root workspace (splitting principle, closed forms, oracle)
  towers        classifying-space registry, pullback tables, obstructions
  transgression free suspension as a degree -1 derivation
  qtheta        q^{1/2}-series, theta products, Witten gerbe module characters
  cli           command-line front end
"""

from ._kernel import KERNEL_NAME
from .gcring import Generator, GradedPolynomial, RingMorphism, RingPresentation
from .qtheta import HalfQSeries, WittenKind
from .symroots import RootModel
from .towers import BundleDescriptor, load_descriptor

__version__ = "0.1.0"

__all__ = [
    "Generator",
    "GradedPolynomial",
    "RingMorphism",
    "RingPresentation",
    "RootModel",
    "BundleDescriptor",
    "load_descriptor",
    "HalfQSeries",
    "WittenKind",
    "KERNEL_NAME",
    "__version__",
]
