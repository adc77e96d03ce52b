"""Desk-scale combinatorics of linked Grassmannian degenerations.

Subpackages cover the extended affine Weyl group and its Bruhat order
(`weyl`), convex lattice configurations in one apartment (`lattice`), the
associated quiver and its sub-representations over small prime fields
(`quiver`), locally weakly independent configurations (`independence`),
admissible collections and Bruhat strata (`admissible`), dual-graph
multidegree twisting (`multidegree`), and named verification suites
(`verify`).  The `linkedgrass` command line drives batch analyses.
"""

from . import admissible, gf, independence, lattice, multidegree, quiver, verify, weyl

__all__ = [
    "admissible",
    "gf",
    "independence",
    "lattice",
    "multidegree",
    "quiver",
    "verify",
    "weyl",
]
