"""sl_q(2) representations, twisted tensor products, universal R-operators,
and numerical verification of the identities they satisfy."""

__version__ = "0.1.0"

from .qcore import (DeformationParameter, PhiProduct, ToleranceConfig,
                    phi_product, qnum, qpow)
from .rep import (CasimirReport, OperatorTriple, build_lax, build_spin_rep,
                  casimir, fundamental_r, fundamental_r_rational)
from .tensorrep import (CasimirSpectrumReport, EigenSector, TwistedCoproduct,
                        casimir_matrix, coproduct_generators, lowest_weight_coeffs,
                        lowest_weight_vectors, tensor_casimir, weight_reversed)
from .rop import (REigenvalues, RMatrix, assemble_R, closed_form_R,
                  eigenvalue_ratios, eigenvalue_sequence, normalize_global)
from .cyclic import (CentralElements, CyclicEigenFamily, CyclicRepSpec, PartialR,
                     build_cyclic_rep, central_elements, cyclic_R_eigenvalues,
                     cyclic_tensor, eigenstate_family, family_closure_defect,
                     family_ratio, partial_R, sample_compatible_params,
                     shift_prefactor, tensor_power_scalars, weight_degeneracy,
                     weyl_generators)
from .verify import ResidualReport
from . import errors

__all__ = [
    "DeformationParameter", "PhiProduct", "ToleranceConfig", "phi_product", "qnum", "qpow",
    "CasimirReport", "OperatorTriple", "build_lax", "build_spin_rep", "casimir",
    "fundamental_r", "fundamental_r_rational",
    "CasimirSpectrumReport", "EigenSector", "TwistedCoproduct", "casimir_matrix",
    "coproduct_generators", "lowest_weight_coeffs", "lowest_weight_vectors",
    "tensor_casimir", "weight_reversed",
    "REigenvalues", "RMatrix", "assemble_R", "closed_form_R", "eigenvalue_ratios",
    "eigenvalue_sequence", "normalize_global",
    "CentralElements", "CyclicEigenFamily", "CyclicRepSpec", "PartialR",
    "build_cyclic_rep", "central_elements", "cyclic_R_eigenvalues", "cyclic_tensor",
    "eigenstate_family", "family_closure_defect", "family_ratio", "partial_R",
    "sample_compatible_params", "shift_prefactor", "tensor_power_scalars",
    "weight_degeneracy", "weyl_generators",
    "ResidualReport", "errors",
]
