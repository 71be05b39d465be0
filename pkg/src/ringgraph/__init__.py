"""Compressed commuting graphs of finite rings."""

from __future__ import annotations

__version__ = "0.1.0"

from .errors import (
    DescriptorError,
    MorphismError,
    NonUnitalError,
    NotInFamilyError,
    SizeLimitError,
    UndecidedError,
)
from .compressed import (
    CompressedGraph,
    GraphMorphism,
    commuting_graph,
    compressed_graph,
    induced_morphism,
    reconstruct_gamma,
    unitalization_iso,
)

__all__ = [
    "CompressedGraph",
    "DescriptorError",
    "GraphMorphism",
    "MorphismError",
    "NonUnitalError",
    "NotInFamilyError",
    "SizeLimitError",
    "UndecidedError",
    "commuting_graph",
    "compressed_graph",
    "induced_morphism",
    "reconstruct_gamma",
    "unitalization_iso",
]
