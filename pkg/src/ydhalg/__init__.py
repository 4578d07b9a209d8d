"""Exact computational toolkit for Yetter-Drinfel'd Hopf algebras over
group rings of finite abelian groups.

Everything is computed over a cyclotomic field Q(zeta_N) with rational
coefficients, so all checks are exact; there are no tolerances anywhere.
"""

__version__ = "0.1.0"
