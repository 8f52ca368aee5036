"""Exact symbolic workbench for the two-parameter quantum groups of GL_n.

The package implements the coordinate algebras O_ab(M_n) / O_ab(GL_n) and
their Borel and root-of-unity quotients, the enveloping algebras U_ab(gl_n)
with their restricted quotients, the Hopf pairing between the two sides,
and the subgroup-datum calculus that classifies the finite quantum
subgroups.  All arithmetic is exact: bivariate rational functions in
generic mode, cyclotomic numbers at a root of unity.
"""

from .ncpoly import Gen, NCPoly, RewriteSystem, TensorElement
from .oab import GLElement, OSession, session as o_session
from .pairing import PairingContext
from .scalars import (Cyclotomic, CoefficientField, ParameterSpec,
                      RationalFunction, cyclotomic_poly, geometric_sum,
                      specialize)
from .subgroup import (FiniteMatrixGroup, SubgroupDatum, ZmodSubgroup,
                       datum_compare, datum_validate, position_sets,
                       standard_corpus)
from .uab import USession, finite_basis, root_vector_expand, u_session

__all__ = [
    "Gen", "NCPoly", "RewriteSystem", "TensorElement",
    "GLElement", "OSession", "o_session",
    "PairingContext",
    "Cyclotomic", "CoefficientField", "ParameterSpec", "RationalFunction",
    "cyclotomic_poly", "geometric_sum", "specialize",
    "FiniteMatrixGroup", "SubgroupDatum", "ZmodSubgroup",
    "datum_compare", "datum_validate", "position_sets", "standard_corpus",
    "USession", "finite_basis", "root_vector_expand", "u_session",
]
