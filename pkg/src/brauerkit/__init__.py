"""Brauer-graph toolkit: quiver presentations, Cartan matrices,
derived-equivalence normal forms and stable invariants for the standard
one-parametric selfinjective algebras."""

__version__ = "0.1.0"
