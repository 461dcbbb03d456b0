"""Exact realizations of the matroid T_n: point chains on plane cubics,
cyclotomic cusp configurations and q-expansions of the modular realization."""

__version__ = "0.1.0"
