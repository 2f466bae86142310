"""Exact verification toolkit for K-orbit closures on GL(p+q) flag varieties.

Submodules: ``polycore`` (polynomials and matrices over Q and GF(p)),
``groebner`` (reduced bases, ideal predicates, elimination), ``linalg``
(rational matrices), ``clans``, ``slices``, ``braden``, ``nilorbit`` and the
``cli`` entry point.
"""

from .clans import Clan, clan_representative, clan_to_involution, induce_clan, orbit_dimension, parse_clan
from .groebner import (Ideal, RingMap, apply_map, eliminate, groebner_basis, ideal_dimension,
                       ideal_equal, ideal_member, saturate)
from .nilorbit import SignedTableau, moment_map_image, signed_tableau_of
from .polycore import GF, QQ, PolyMatrix, Polynomial, Ring, determinant, minors

__version__ = "0.1.0"

__all__ = [
    "Clan", "parse_clan", "clan_to_involution", "clan_representative", "orbit_dimension", "induce_clan",
    "Ideal", "RingMap", "apply_map", "eliminate", "groebner_basis", "ideal_dimension", "ideal_equal",
    "ideal_member", "saturate",
    "SignedTableau", "moment_map_image", "signed_tableau_of",
    "GF", "QQ", "PolyMatrix", "Polynomial", "Ring", "determinant", "minors",
]
