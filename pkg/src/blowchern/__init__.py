"""blowchern: exact intersection-theory engine for blow-up Chern class formulas.

Layers, bottom up:

- ``gradedpoly``: sparse exact polynomials with graded variables.
- ``chowring``: presented graded rings, normal forms, Segre pushforward.
- ``bundles``: vector-bundle surrogates (rank + total Chern class).
- ``blowup``: the blow-up operator calculus and its verification suite.
- ``geometry``: concrete projective-space scenarios and Euler checks.
- ``service`` / ``cli``: HTTP front end and the thin command-line client.
"""

__version__ = "0.1.0"
