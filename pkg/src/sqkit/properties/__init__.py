"""Property extraction: occupations, pattern expansion, containers and extractors."""
from .containers import (
    DOS,
    LDOS,
    Density,
    EigenValues,
    GreensFunction,
    GreensFunctionType,
    Magnetization,
    SpinPolarizedLDOS,
    WaveFunctions,
)
from .expansion import EnergyWindow, Expansion, expand_patterns
from .extractor import DiagonalizerPropertyExtractor, PropertyExtractor
from .occupation import bose_einstein, fermi_dirac, occupation

__all__ = [
    "DOS", "LDOS", "Density", "EigenValues", "GreensFunction", "GreensFunctionType",
    "Magnetization", "SpinPolarizedLDOS", "WaveFunctions", "EnergyWindow", "Expansion",
    "expand_patterns", "DiagonalizerPropertyExtractor", "PropertyExtractor",
    "bose_einstein", "fermi_dirac", "occupation",
]
