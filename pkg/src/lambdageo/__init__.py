"""lambdageo: exact graded differential geometry over an exterior-algebra
coefficient ring, with verification tooling for flat-model supergravity
constraint systems."""

__version__ = "0.1.0"

from .grassmann import LambdaElement, wedge, parity, conjugate, invert  # noqa: F401
