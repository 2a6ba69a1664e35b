"""bipermkit: permutative and bipermutative category toolkit.

Structural axiom checkers for bipermutative categories, the Grothendieck
construction over them, truncated Gamma-categories, and the inverse K-theory
composite, all at exhaustively checkable sizes.
"""

__version__ = "0.1.0"
