"""cfx: exact verification engine for quaternionic differential complexes.

The package builds the flat complex on R^{4(n+1)}, its boundary analogue on
step-two nilpotent groups attached to quadratic hypersurfaces, classifies
those groups, and evaluates the associated wedge-power operator with exact
arithmetic throughout.
"""

from .rational import ComplexRational, cq
from .poly import Poly, poly_diff, x_vars, group_vars
from .exterior import ExtForm, wedge
from .spinor import (EpsilonTable, SpinorField, raise_primed, lower_primed,
                     sym_basis_derivative, tilde_basis_multiply, symmetrize)
from .flat import (ComplexSpec, flat_D, flat_D_tuple, make_Dj, make_Dj_tuple,
                   d_upper, d_lower, symbol_at, check_exactness)
from .groups import GroupSpec, group_from_phi, is_right_type, is_right_type_via_E
from .boundary import BoundarySpec, TangentFrame, BoundaryField, boundary_D, frak_d

__version__ = "0.1.0"
