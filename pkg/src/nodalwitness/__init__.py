"""nodalwitness: exact homotopy decisions on nodal ruled surfaces.

The package decides when two sections of a ruled surface, blown up along a
tree of nodal configurations over a henselian local base ring, can be joined
by an elementary chain of affine-line homotopies — and when they can only be
joined once a ghost component is inserted.  Positive answers come with a
witness object that an independent checker can replay; negative answers come
with the invariant that separates the two sections.
"""

from .farey import INF, ZERO, Slope, farey_path, mediant, unimodular

__version__ = "0.1.0"

__all__ = [
    "Slope",
    "INF",
    "ZERO",
    "mediant",
    "unimodular",
    "farey_path",
    "__version__",
]
