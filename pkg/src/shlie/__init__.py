"""Exact computations in the shuffle category of the Lie operad: Leibniz
homology of its left modules and the functor homology Tor(t, -)."""

__version__ = "0.1.0"
