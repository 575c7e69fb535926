"""Exact computations with cochain complexes over Z, Q and F_p.

Submodules: ``exactla`` (Smith normal form, f.g. modules), ``complex``
(complexes, maps, cohomology), ``cone`` (cones, cylinders, triangles),
``homotopy`` (homotopies, Hom complexes, exactness certificates),
``derived`` (resolutions, Tor, Ext), ``tstruct`` (truncations,
t-structures), ``axioms`` (random instances, TR1-TR4 checks) and ``cli``.
"""

from .rings import GF, QQ, ZZ, CoefficientRing, ring_from_tag
from .matrix import ExactMatrix
from .exactla import FgModule, ModuleMap, smith_normal_form
from .complex import (ChainComplex, ChainMap, Homotopy, biproduct, cohomology,
                      cohomology_table, induced_map, is_quasi_iso, shift, tensor)
from .cone import cofiber_les, cone_triangle, cylinder, rotate, ses_compare
from .homotopy import (certify_exact, exactness_verdict, find_homotopy_inverse,
                       find_null_homotopy, hom_in_K)
from .derived import derived_tensor, ext, free_resolution, tor
from .tstruct import standard_t_verdict, tilted_t_verdict, truncate, truncation_triangle

__version__ = "0.1.0"
