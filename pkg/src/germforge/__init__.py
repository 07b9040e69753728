"""germforge: symbolic-numeric toolkit for semicomplete commuting germs on (C^2, 0)."""

from .scalars import EXACT, FLOAT, GaussianRational
from .series import Jet1, Jet2

__all__ = ["EXACT", "FLOAT", "GaussianRational", "Jet1", "Jet2"]

__version__ = "0.1.0"
