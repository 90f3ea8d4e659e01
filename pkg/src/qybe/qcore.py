"""Complex scalar kernel: deformation parameters, q-numbers, sampling.

All fractional powers of q go through a single fixed logarithm branch so
that expressions like q^{1/2} or q^{k-ell} are single-valued for the
lifetime of a parameter.
"""
from __future__ import annotations

import dataclasses
from typing import NamedTuple

import numpy as np

from .errors import DegenerateDenominator, ParameterDomainError, WrongMode

GENERIC_GUARD_BOUND = 64
_ROOT_GUARD_TOL = 1e-8
_BRANCH_TOL = 1e-12


@dataclasses.dataclass(frozen=True)
class ToleranceConfig:
    """Numeric policy shared by the verification suites."""

    abs_tol: float = 1e-10
    rel_tol: float = 1e-9
    sample_count: int = 10
    rng_seed: int = 42

    def __post_init__(self):
        if self.abs_tol <= 0 or self.rel_tol <= 0:
            raise ParameterDomainError("tolerances must be positive")
        if self.sample_count < 1:
            raise ParameterDomainError("sample_count must be at least 1")

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.rng_seed)


@dataclasses.dataclass(frozen=True)
class DeformationParameter:
    """A nonzero complex q together with its mode and a fixed log branch.

    mode is "generic" or "root_of_unity"; in the latter case ``order`` is
    the odd integer N with q^N = 1.  Construct through :meth:`generic` or
    :meth:`root_of_unity`.
    """

    value: complex
    mode: str
    order: int | None = None
    log_branch: complex = 0j

    def __post_init__(self):
        if self.value == 0:
            raise ParameterDomainError("q must be nonzero")
        if self.mode not in ("generic", "root_of_unity"):
            raise ParameterDomainError(f"unknown mode {self.mode!r}")
        if abs(np.exp(self.log_branch) - self.value) > _BRANCH_TOL * max(1.0, abs(self.value)):
            raise ParameterDomainError("log_branch is not a logarithm of q")
        if self.mode == "root_of_unity":
            n = self.order
            if n is None or n < 1 or n % 2 == 0:
                raise ParameterDomainError("root-of-unity order N must be odd and positive")
            if abs(self.value**n - 1) > _ROOT_GUARD_TOL:
                raise ParameterDomainError(f"q^{n} != 1 for declared root of unity")

    @classmethod
    def generic(cls, value: complex, log_branch: complex | None = None,
                guard_bound: int = GENERIC_GUARD_BOUND) -> "DeformationParameter":
        value = complex(value)
        if value == 0:
            raise ParameterDomainError("q must be nonzero")
        # reject accidental roots of unity up to the guard bound: they make
        # q-number identities collapse to 0/0
        w = value
        for n in range(1, guard_bound + 1):
            if abs(w - 1) < _ROOT_GUARD_TOL:
                raise ParameterDomainError(
                    f"q is within {_ROOT_GUARD_TOL:g} of a root of unity of order {n}; "
                    "use root_of_unity mode or move q")
            w *= value
        lb = np.log(value) if log_branch is None else complex(log_branch)
        return cls(value=value, mode="generic", order=None, log_branch=lb)

    @classmethod
    def root_of_unity(cls, n: int) -> "DeformationParameter":
        """The primitive root q = exp(2 pi i / N), N odd."""
        if n < 1 or n % 2 == 0:
            raise ParameterDomainError("N must be odd")
        lb = 2j * np.pi / n
        return cls(value=complex(np.exp(lb)), mode="root_of_unity", order=int(n), log_branch=lb)

    @property
    def is_root_of_unity(self) -> bool:
        return self.mode == "root_of_unity"

    def pow(self, z):
        """q^z computed through the fixed branch; accepts scalars or arrays."""
        return np.exp(np.asarray(z) * self.log_branch) if np.ndim(z) else np.exp(z * self.log_branch)

    def inverse(self) -> "DeformationParameter":
        """The parameter 1/q with the matching branch -log q."""
        return DeformationParameter(value=1 / self.value, mode=self.mode,
                                    order=self.order, log_branch=-self.log_branch)

    def with_branch_shift(self, k: int = 1) -> "DeformationParameter":
        """Same q, log branch moved by 2 pi i k (for single-valuedness tests)."""
        return DeformationParameter(value=self.value, mode=self.mode, order=self.order,
                                    log_branch=self.log_branch + 2j * np.pi * k)


def qpow(q: DeformationParameter, z) -> complex:
    """q^z through the parameter's fixed logarithm branch."""
    return q.pow(z)


def qnum(n, q: DeformationParameter, abs_tol: float = 1e-10):
    """The q-number [n] = (q^n - q^{-n}) / (q - 1/q); n may be an array."""
    den = q.value - 1 / q.value
    if abs(den) < abs_tol:
        raise DegenerateDenominator("q - 1/q below tolerance; use the rational (undeformed) mode")
    return (q.pow(n) - q.pow(-np.asarray(n) if np.ndim(n) else -n)) / den


class PhiProduct(NamedTuple):
    product: complex
    closed_form: complex
    residual: float


def phi_product(alpha: complex, q: DeformationParameter) -> PhiProduct:
    """Product of the N consecutive q-numbers [alpha], [alpha+1], ..., [alpha+N-1].

    Only defined at a root of unity, where it collapses to
    (q - 1/q)^{-N} (q^{alpha N} - q^{-alpha N}); both routes are returned
    together with their normalized disagreement.
    """
    if not q.is_root_of_unity:
        raise WrongMode("phi_product requires a root-of-unity parameter")
    n = q.order
    prod = complex(np.prod(qnum(alpha + np.arange(n), q)))
    closed = (q.value - 1 / q.value) ** (-n) * (q.pow(alpha * n) - q.pow(-alpha * n))
    resid = abs(prod - closed) / max(1.0, abs(closed))
    return PhiProduct(prod, complex(closed), resid)


# ---------------------------------------------------------------------------
# seeded sampling of test points

def sample_generic_q(rng: np.random.Generator, radial: float = 0.25,
                     on_circle: bool = False) -> DeformationParameter:
    """Draw a generic q away from roots of unity and from q = +-1.

    log q gets imaginary part in (0.15, pi - 0.15) with a random sign, and
    real part in [-radial, radial] (zero when on_circle).
    """
    for _ in range(100):
        re = 0.0 if on_circle else rng.uniform(-radial, radial)
        im = rng.uniform(0.15, np.pi - 0.15) * rng.choice([-1.0, 1.0])
        try:
            return DeformationParameter.generic(np.exp(complex(re, im)))
        except ParameterDomainError:
            continue
    raise ParameterDomainError("could not draw an admissible generic q")


def sample_u(rng: np.random.Generator, scale: float = 1.2) -> complex:
    """A complex spectral parameter in a centred box."""
    return complex(rng.uniform(-scale, scale), rng.uniform(-scale, scale))


def sample_params(rng: np.random.Generator, count: int = 1, scale: float = 0.5) -> list[complex]:
    """Moderate complex parameter draws (keeps root-of-unity powers well scaled)."""
    return [complex(rng.normal(0, scale), rng.normal(0, scale)) for _ in range(count)]
