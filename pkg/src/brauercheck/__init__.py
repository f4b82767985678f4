"""Certified computations for a Shioda-type cubic surface over F_q((t)):
stable reduction of the ramification quartic, the mod-2 Galois class gamma,
and Mayer-Vietoris cohomology of amalgamated products of cyclic groups."""

__version__ = "0.1.0"
