"""
idealforge - exact ideal algebra and mechanical verification for the
K(n, d) ideal family
"""
from .errors import IdealForgeError
from .ideals import Ideal
from .poly import Polynomial, Ring

__version__ = "0.1.0"

__all__ = ['Ideal', 'IdealForgeError', 'Polynomial', 'Ring', '__version__']
