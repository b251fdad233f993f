"""Finite geometries from coset spaces of a two-generator group."""
from __future__ import annotations

from .dessin import Dessin
from .geometry import IncidenceStructure
from .perm import Permutation, PermGroup
from .words import Presentation, Word, parse_word

__all__ = ["Dessin", "IncidenceStructure", "Permutation", "PermGroup", "Presentation", "Word", "parse_word"]
__version__ = "0.1.0"
