"""Exact computer algebra for dg categories and pointed curved coalgebras.

The layers, bottom up:

- ``field``, ``matrix``, ``complexes``: exact scalars (Q, GF(p)), sparse
  elimination, bounded cochain complexes with labelled bases.
- ``quiver``: graded quivers with named basis arrows; tensor and internal hom.
- ``dgcat``: dg / curved categories as finite structure tables, validation,
  free categories, tensor, opposite, hom homology.
- ``coalgebra``: pointed curved coalgebras, morphisms, tensor, cofree.
- ``barcobar``: bar and cobar constructions, materialization with caps and
  exactness reports, the Koszul adjunction transports and counit.
- ``convmc``: convolution categories, Maurer-Cartan elements and categories,
  the internal hom, the interchange isomorphism, Eilenberg-Zilber comparison.
- ``hochschild``: Hochschild cohomology of dg categories with twisted
  bimodule coefficients, weight analysis, comparison with twisted MC homs.
- ``workspace``, ``cli``: the JSON document format and the command line.
"""

from .field import QQ, GF, Field, field_by_name
from .matrix import SparseMatrix
from .complexes import BoundedComplex

__all__ = [
    "QQ",
    "GF",
    "Field",
    "field_by_name",
    "SparseMatrix",
    "BoundedComplex",
]
