"""zsym: exact Z2xZ2-gradings of classical complex Lie algebras."""

from .kernel import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]
