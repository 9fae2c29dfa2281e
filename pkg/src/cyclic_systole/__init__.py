"""Systoles of the hyperbolic surfaces with maximal cyclic symmetry.

Closed-form hyperbolic trigonometry, a half-plane geometry kernel, the three
polygon models, a battery of signed-margin checks and a brute-force oracle
built from the side-pairing group.
"""

__version__ = "0.1.0"

from .models import ModelKind, angles, candidate_systole, metrics, theorem_systole  # noqa: E402

__all__ = ["ModelKind", "angles", "candidate_systole", "metrics", "theorem_systole", "__version__"]
