"""Cyclic representations at odd roots of unity.

The N-dimensional basis {theta_k} is treated as purely cyclic: all index
arithmetic is mod N and multiplication by the N-th power of the variable
acts as the identity.  Generators act by

    S- theta_k = q^{-lam/2} [k - beta] theta_{k-1},
    S+ theta_k = q^{ lam/2} [alpha - k] theta_{k+1},
    q^{aS} theta_k = q^{a (k - (alpha+beta)/2)} theta_k.
"""
from __future__ import annotations

import dataclasses

import numpy as np

from .errors import (InconsistentConstraints, NotScalar, OrderMismatch,
                     ParameterDomainError, ShiftLawViolation, WrongMode)
from .qcore import DeformationParameter, phi_product, qnum
from .rep import OperatorTriple
from .tensorrep import TwistedCoproduct, coproduct_generators


@dataclasses.dataclass(frozen=True)
class CyclicRepSpec:
    """Three-parameter cyclic representation data at order N."""

    alpha: complex
    beta: complex
    lam: complex
    n: int
    q: DeformationParameter | None = None

    def __post_init__(self):
        if self.n < 1 or self.n % 2 == 0:
            raise ParameterDomainError("N must be an odd positive integer")
        if self.q is None:
            object.__setattr__(self, "q", DeformationParameter.root_of_unity(self.n))
        elif not self.q.is_root_of_unity or self.q.order != self.n:
            raise WrongMode("q must be the matching root of unity")

    @property
    def ell(self) -> complex:
        """Derived spin label (alpha + beta) / 2."""
        return (self.alpha + self.beta) / 2


def weyl_generators(n: int, q: DeformationParameter | None = None
                    ) -> tuple[np.ndarray, np.ndarray]:
    """The cyclic pair (X, Z) with Z X = q X Z, X^N = Z^N = 1.

    Z is diagonal in the powers of q; X is the cyclic shift theta_k ->
    theta_{k+1}.
    """
    if q is None:
        q = DeformationParameter.root_of_unity(n)
    if not q.is_root_of_unity or q.order != n:
        raise WrongMode("weyl_generators needs q in root-of-unity mode of order N")
    z = np.diag(q.pow(np.arange(n)))
    x = np.zeros((n, n), complex)
    for k in range(n):
        x[(k + 1) % n, k] = 1.0
    return x, z


def build_cyclic_rep(spec: CyclicRepSpec) -> OperatorTriple:
    """Generator matrices of the cyclic representation on {theta_k}."""
    n, q = spec.n, spec.q
    sp = np.zeros((n, n), complex)
    sm = np.zeros((n, n), complex)
    for k in range(n):
        sm[(k - 1) % n, k] = q.pow(-spec.lam / 2) * qnum(k - spec.beta, q)
        sp[(k + 1) % n, k] = q.pow(spec.lam / 2) * qnum(spec.alpha - k, q)
    weights = np.arange(n) - spec.ell
    return OperatorTriple(sp=sp, sm=sm, weights=weights.astype(complex), q=q,
                          basis_tag="theta", ell=None, from_monomial=None)


def weight_degeneracy(spec: CyclicRepSpec, tol: float = 1e-9) -> dict:
    """Flags a nilpotent direction: alpha (resp. beta) integral mod N kills
    an S+ (resp. S-) matrix element, so a highest (lowest) weight appears."""
    q = spec.q
    sp_gaps = np.abs(qnum(spec.alpha - np.arange(spec.n), q))
    sm_gaps = np.abs(qnum(np.arange(spec.n) - spec.beta, q))
    return {
        "highest_weight": bool(sp_gaps.min() < tol),
        "lowest_weight": bool(sm_gaps.min() < tol),
        "highest_weight_at": int(sp_gaps.argmin()),
        "lowest_weight_at": int(sm_gaps.argmin()),
    }


def _scalar_part(m: np.ndarray) -> tuple[complex, float]:
    s = complex(np.trace(m) / m.shape[0])
    resid = float(np.abs(m - s * np.eye(m.shape[0])).max() / max(1.0, abs(s)))
    return s, resid


@dataclasses.dataclass(frozen=True)
class CentralElements:
    alpha_plus: complex
    alpha_minus: complex
    qns_scalar: complex
    max_offscalar_residual: float
    alpha_minus_product_route: complex


def central_elements(spec: CyclicRepSpec, tol: float = 1e-10) -> CentralElements:
    """Scalars of (S+)^N, (S-)^N and q^{NS}, verified to be central.

    (S-)^N is cross-checked against the independent q-number-product route
    q^{-N lam/2} * (-1) * prod_{j=0}^{N-1} [beta + j].
    """
    rep = build_cyclic_rep(spec)
    n = spec.n
    ap, rp = _scalar_part(np.linalg.matrix_power(rep.sp, n))
    am, rm = _scalar_part(np.linalg.matrix_power(rep.sm, n))
    aq, rq = _scalar_part(rep.qs(n))
    worst = max(rp, rm, rq)
    if worst > tol:
        raise NotScalar(f"extended-center candidate has off-scalar residual {worst:.3e}")
    am_route = -spec.q.pow(-n * spec.lam / 2) * phi_product(spec.beta, spec.q).product
    return CentralElements(alpha_plus=ap, alpha_minus=am, qns_scalar=aq,
                           max_offscalar_residual=worst,
                           alpha_minus_product_route=complex(am_route))


def cyclic_tensor(spec1: CyclicRepSpec, spec2: CyclicRepSpec, u: complex,
                  kind: str = "delta") -> TwistedCoproduct:
    """Twisted tensor generators on the N^2 basis theta_{k1,k2}."""
    if spec1.n != spec2.n:
        raise OrderMismatch(f"orders differ: {spec1.n} vs {spec2.n}")
    return coproduct_generators(build_cyclic_rep(spec1), build_cyclic_rep(spec2),
                                kind=kind, u=u)


@dataclasses.dataclass(frozen=True)
class TensorPowerReport:
    scalars: dict
    offscalar_residuals: dict
    closed_form_errors: dict

    @property
    def max_offscalar_residual(self) -> float:
        return max(self.offscalar_residuals.values())


def tensor_power_scalars(spec1: CyclicRepSpec, spec2: CyclicRepSpec, u: complex,
                         tol: float = 1e-9) -> TensorPowerReport:
    """N-th powers of all four twisted generators, with closed-form scalars.

    The unbarred powers telescope to
    (S-_u)^N = q^{N(u/2+S2)} (S1-)^N + q^{-N(u/2+S1)} (S2-)^N  (and the
    raising analogue), which yields explicit scalars in the parameters.
    """
    n = spec1.n
    q = spec1.q
    cop = cyclic_tensor(spec1, spec2, u, "delta")
    cop_bar = cyclic_tensor(spec1, spec2, u, "deltabar")
    a1, b1, l1 = spec1.alpha, spec1.beta, spec1.lam
    a2, b2, l2 = spec2.alpha, spec2.beta, spec2.lam
    den = (q.value - 1 / q.value) ** (-n)
    closed = {
        "sm_u": den * (q.pow(n * (u - a2 - b2 - l1) / 2) * (q.pow(-n * b1) - q.pow(n * b1))
                       + q.pow(n * (-u + a1 + b1 - l2) / 2) * (q.pow(-n * b2) - q.pow(n * b2))),
        "sp_u": den * (q.pow(n * (-u - a2 - b2 + l1) / 2) * (q.pow(n * a1) - q.pow(-n * a1))
                       + q.pow(n * (u + a1 + b1 + l2) / 2) * (q.pow(n * a2) - q.pow(-n * a2))),
    }
    scalars, resids, errors = {}, {}, {}
    mats = {"sm_u": cop.gens.sm, "sp_u": cop.gens.sp,
            "sm_bar_u": cop_bar.gens.sm, "sp_bar_u": cop_bar.gens.sp}
    for name, mat in mats.items():
        s, r = _scalar_part(np.linalg.matrix_power(mat, n))
        scalars[name] = s
        resids[name] = r
        if r > tol:
            raise NotScalar(f"(S^N) off-scalar residual {r:.3e} for {name}")
        if name in closed:
            errors[name] = abs(s - closed[name]) / max(1.0, abs(closed[name]))
    return TensorPowerReport(scalars=scalars, offscalar_residuals=resids,
                             closed_form_errors=errors)


# ---------------------------------------------------------------------------
# eigenstate families

def family_ratio(spec1: CyclicRepSpec, spec2: CyclicRepSpec, u: complex,
                 barred: bool = False) -> complex:
    """Geometric coefficient ratio along the support cycle of the family."""
    q = spec1.q
    a1, b1, l1 = spec1.alpha, spec1.beta, spec1.lam
    a2, b2, l2 = spec2.alpha, spec2.beta, spec2.lam
    if barred:
        return complex(q.pow(2 - u + (a1 + a2 - b1 - b2 + l2 - l1) / 2))
    return complex(q.pow(u - 2 + (b1 + b2 - a1 - a2 + l2 - l1) / 2))


def family_closure_defect(spec1: CyclicRepSpec, spec2: CyclicRepSpec,
                          u: complex) -> tuple[float, float]:
    """Distance from the existence condition ratio^N = 1 (both families).

    The coefficients run along a closed N-cycle of basis labels, so a
    geometric ratio is consistent only when its N-th power is 1.
    """
    out = []
    for barred in (False, True):
        r = family_ratio(spec1, spec2, u, barred) ** spec1.n
        out.append(abs(r - 1))
    return tuple(out)


def _family_vector(n: int, ratio: complex, m: int) -> np.ndarray:
    v = np.zeros(n * n, complex)
    for k in range(n):
        v[((m - k) % n) * n + k] = ratio**k
    return v


@dataclasses.dataclass(frozen=True)
class CyclicEigenFamily:
    phi: list[np.ndarray]
    phibar: list[np.ndarray]
    ratio: complex
    barred_ratio: complex
    span_rank: int
    shift_residuals: dict


def shift_prefactor(relation: str, spec1: CyclicRepSpec, spec2: CyclicRepSpec,
                    u: complex, m: int) -> complex:
    """Exact q-exponent prefactor of one of the four shift relations."""
    q = spec1.q
    a1, b1, l1 = spec1.alpha, spec1.beta, spec1.lam
    a2, b2, l2 = spec2.alpha, spec2.beta, spec2.lam
    if relation == "lower":
        return complex(q.pow(-1 + (u - l1 + b2 - a2) / 2) * qnum(m + 1 - b1 - b2, q))
    if relation == "raise":
        return complex(q.pow(1 - (u - l1 + b2 - a2) / 2) * qnum(a1 + a2 + 1 - m, q))
    if relation == "lower_bar":
        return complex(q.pow(1 - (u + l1 + b2 - a2) / 2) * qnum(m + 1 - b1 - b2, q))
    if relation == "raise_bar":
        return complex(q.pow(-1 + (u + l1 + b2 - a2) / 2) * qnum(a1 + a2 + 1 - m, q))
    raise ParameterDomainError(f"unknown relation {relation!r}")


def eigenstate_family(spec1: CyclicRepSpec, spec2: CyclicRepSpec, u: complex,
                      tol: float = 1e-9, enforce: bool = True) -> CyclicEigenFamily:
    """The N + N vectors phi_m, phibar_m and their shift-relation residuals.

    phi_m lives on {theta_{(m-k) mod N, k}} with geometric coefficients;
    the twisted lowering/raising operators shift m by one with explicit
    prefactors (see :func:`shift_prefactor`).  When the closure condition
    ratio^N = 1 fails the laws break at the cycle seam; with ``enforce``
    the first violation is raised, otherwise residuals are just reported.
    """
    n = spec1.n
    cop = cyclic_tensor(spec1, spec2, u, "delta")
    cop_bar = cyclic_tensor(spec1, spec2, u, "deltabar")
    rho = family_ratio(spec1, spec2, u, barred=False)
    sig = family_ratio(spec1, spec2, u, barred=True)
    phi = [_family_vector(n, rho, m) for m in range(n)]
    phibar = [_family_vector(n, sig, m) for m in range(n)]
    resids = {}
    checks = (
        ("lower", cop.gens.sm, phi, -1),
        ("raise", cop.gens.sp, phi, +1),
        ("lower_bar", cop_bar.gens.sm, phibar, -1),
        ("raise_bar", cop_bar.gens.sp, phibar, +1),
    )
    for name, op, fam, step in checks:
        for m in range(n):
            c = shift_prefactor(name, spec1, spec2, u, m)
            target = fam[(m + step) % n]
            r = np.abs(op @ fam[m] - c * target).max()
            r /= max(1.0, np.abs(fam[m]).max(), abs(c))
            resids[(name, m)] = float(r)
            if enforce and r > tol:
                dm, db = family_closure_defect(spec1, spec2, u)
                raise ShiftLawViolation(
                    name, m, r,
                    f"shift relation '{name}' fails at m={m} (residual {r:.3e}); "
                    f"closure defects |ratio^N - 1| = ({dm:.2e}, {db:.2e})")
    stack = np.array(phi + phibar).T
    rank = int(np.linalg.matrix_rank(stack, tol=1e-8 * max(1.0, np.abs(stack).max())))
    return CyclicEigenFamily(phi=phi, phibar=phibar, ratio=rho, barred_ratio=sig,
                             span_rank=rank, shift_residuals=resids)


def sample_compatible_params(n: int, rng: np.random.Generator,
                             scale: float = 0.5) -> tuple[CyclicRepSpec, CyclicRepSpec, complex]:
    """Random parameters satisfying the closure conditions of both families.

    Draws alpha_1, alpha_2, beta_1, lam_1 freely, sets lam_2 - lam_1 to an
    integer and u to a half-integer, then solves for beta_2 so that the
    family ratios are N-th roots of unity (this also keeps the families at
    -u on the admissible set, which the partial R construction needs).
    Integer choices with coinciding barred/unbarred ratios at u or -u are
    rejected so the two families stay linearly independent.
    """
    a1, a2, b1, l1 = (complex(rng.normal(0, scale), rng.normal(0, scale)) for _ in range(4))
    while True:
        d = int(rng.integers(-2, 3))
        u = int(rng.integers(-3, 4)) / 2
        z = int(rng.integers(-1, 2))
        # ratios are q^z and q^{d-z} at u, q^{z-2u} and q^{d-z+2u} at -u
        if (2 * z - d) % n == 0 or round(2 * z - d - 4 * u) % n == 0:
            continue
        l2 = l1 + d
        b2 = 2 * (z - u + 2 - (l2 - l1) / 2) - b1 + a1 + a2
        return (CyclicRepSpec(a1, b1, l1, n), CyclicRepSpec(a2, b2, l2, n), complex(u))


def cyclic_R_eigenvalues(spec1: CyclicRepSpec, spec2: CyclicRepSpec, u: complex,
                         r0: complex = 1.0) -> np.ndarray:
    """Geometric eigenvalue family R_m = q^{m (2 - u + alpha2 - beta2 - lam1)} R_0."""
    q = spec1.q
    step = q.pow(2 - u + spec2.alpha - spec2.beta - spec1.lam)
    return np.array([r0 * step**m for m in range(spec1.n)])


@dataclasses.dataclass(frozen=True)
class PartialR:
    matrix: np.ndarray
    span_rank: int
    max_residual: float
    eigenvalues: np.ndarray


def partial_R(spec1: CyclicRepSpec, spec2: CyclicRepSpec, u: complex,
              r0: complex = 1.0, tol: float = 1e-9) -> PartialR:
    """R on the span of the 2N family vectors, mapping phi_m(u) -> R_m phibar_m(-u)
    and phibar_m(u) -> R_m phi_m(-u).

    The solve is exact on the joint span (pseudo-inverse of a full-column-
    rank stack); a residual above tolerance means the prescribed images
    contradict a linear dependence among the inputs.
    """
    n = spec1.n
    fam_u = eigenstate_family(spec1, spec2, u, enforce=False)
    fam_mu = eigenstate_family(spec1, spec2, -u, enforce=False)
    r_m = cyclic_R_eigenvalues(spec1, spec2, u, r0)
    v = np.array(fam_u.phi + fam_u.phibar).T
    w = np.array([r_m[m] * fam_mu.phibar[m] for m in range(n)]
                 + [r_m[m] * fam_mu.phi[m] for m in range(n)]).T
    rank = int(np.linalg.matrix_rank(v, tol=1e-8 * max(1.0, np.abs(v).max())))
    mat = w @ np.linalg.pinv(v)
    resid = float(np.abs(mat @ v - w).max() / max(1.0, np.abs(w).max()))
    if resid > tol:
        raise InconsistentConstraints(
            f"defining relations conflict on the joint span (residual {resid:.3e})")
    return PartialR(matrix=mat, span_rank=rank, max_residual=resid, eigenvalues=r_m)
