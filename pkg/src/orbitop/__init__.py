"""orbitop: exact analysis of finite-group quotient singularities of
flat tori and vector spaces, and of the topological data classifying
their desingularizations."""

__version__ = "0.1.0"
