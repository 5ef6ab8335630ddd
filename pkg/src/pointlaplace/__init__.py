"""The Laplacian on two half-lines coupled by ``A psi(0) + B psi'(0) = 0``."""

from .boundary import (BCPair, CayleyClass, Classification, MSectorialForm, Table1Row,
                       canonicalize, classify, is_regular, msectorial_form, new_bc)
from .cayley import CayleyEvaluation, DetPoly, Pole, PoleSet, det_poly, poles
from .cayley import eval as cayley_eval
from .cayley import eval_adjoint_reflected, growth_class
from .complex2 import DEFAULT_TOL, TOLERANCE_PROFILES, TolerancePolicy
from .errors import *  # noqa: F401,F403
from .grid import GridFunction, PanelGrid
from .resolvent import (EdgePoint, apply_resolvent, defect_check, kernel,
                        nongenerator_lower_bound, resolvent_norm_probe)
from .semigroup import (ContourSpec, InvarianceReport, asymptotic_positivity, evolve,
                        invariance_kernel_sample, invariance_msectorial, semigroup_property_check)
from .spectral import (GeneratorVerdict, SpectrumReport, eigenfunction_coeffs, generator_verdict,
                       parabola_check, spectrum)

__version__ = "0.1.0"
