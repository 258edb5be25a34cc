"""Exactly solvable convection-diffusion-reaction systems.

A built system packages similarity profiles for the solution P, the
diffusion coefficient D, the convection coefficient C, and the reaction
term R of

    dP/dt = -d/dx (C P) + d^2/dx^2 (D P) + R.

All systems share the similarity class mu = -alpha with convection
profile 2*sigma'(z) + alpha*z, under which the reduced equation in
z = x/t^alpha collapses to a Schroedinger pair: the solution profile
y(z) and the diffusion profile sigma(z) are bound states of partner
potentials at related energies. Three constructions are provided:

* :func:`build_fpe`     -- zero reaction, y = sigma (a Fokker-Planck system);
* :func:`build_case_a`  -- one potential, two levels n and m; the reaction
  couples them with strength E_m - E_n;
* :func:`build_case_b`  -- two chain members s and s' with one shared
  energy (index constraint n + s = n' + s'); the reaction carries the
  potential difference.

Physical fields, with z = x / t^alpha:

    P = t^(-alpha) * y(z)
    D = t^(2 alpha - 1) * sigma(z)
    C = t^(alpha - 1) * (2 sigma'(z) + alpha z)
    R = t^(-alpha - 1) * rho(z)

:class:`FieldForm` selects between this exact assembly and two
deliberately inconsistent alternates (convection built on sigma instead
of sigma', reaction carrying t^(1 - alpha)); the alternates exist only so
the residual oracle in :mod:`susycdr.verify` can demonstrate that they
violate the equation as soon as t != 1 (reaction) or anywhere (convection).
"""

import enum
from dataclasses import dataclass, replace

import numpy as np

from .quantum import Eigenstate, RadialOscillatorFamily
from .similarity import ScalingExponents, exponents_for_class, to_similarity

__all__ = [
    "CaseTag",
    "FieldForm",
    "CdrSystem",
    "build_fpe",
    "build_case_a",
    "build_case_b",
    "eval_fields",
    "swap",
]


class CaseTag(enum.Enum):
    FPE = "fpe"
    CASE_A = "case_a"
    CASE_B = "case_b"


class FieldForm(enum.Enum):
    """Field assembly variants; only EXACT solves the equation for all t."""

    EXACT = "exact"
    ALT_CONVECTION_PROFILE = "alt_convection_profile"
    ALT_REACTION_EXPONENT = "alt_reaction_exponent"


@dataclass(frozen=True)
class CdrSystem:
    """An exactly solvable system: profiles, constants, and provenance.

    ``y_state``/``sigma_state`` are the unscaled eigenstates behind the
    solution and diffusion profiles; ``coeff_a``/``coeff_b`` scale them.
    ``delta_e`` is the energy offset of the diffusion state relative to
    the solution state (nonzero only for CASE_A). Instances are immutable;
    evaluation is pure.
    """

    case_tag: CaseTag
    exponents: ScalingExponents
    family: RadialOscillatorFamily
    y_state: Eigenstate
    sigma_state: Eigenstate
    coeff_a: float = 1.0
    coeff_b: float = 1.0

    @property
    def alpha(self) -> float:
        return self.exponents.alpha

    @property
    def energy(self) -> float:
        """Schroedinger eigenvalue of the solution profile."""
        return self.y_state.energy

    @property
    def sigma_energy(self) -> float:
        return self.sigma_state.energy

    @property
    def delta_e(self) -> float:
        return self.sigma_state.energy - self.y_state.energy

    @property
    def indices(self) -> tuple:
        """((n, s) of the solution state, (n', s') of the diffusion state)."""
        return ((self.y_state.n, self.y_state.s),
                (self.sigma_state.n, self.sigma_state.s))

    # -- z-profiles (closed form, with derivatives) ---------------------

    def solution(self, z):
        return self.coeff_a * self.y_state(z)

    def solution_d(self, z):
        return self.coeff_a * self.y_state.deriv(z)

    def solution_dd(self, z):
        return self.coeff_a * self.y_state.deriv2(z)

    def diffusion(self, z):
        return self.coeff_b * self.sigma_state(z)

    def diffusion_d(self, z):
        return self.coeff_b * self.sigma_state.deriv(z)

    def diffusion_dd(self, z):
        return self.coeff_b * self.sigma_state.deriv2(z)

    def convection(self, z, form: FieldForm = FieldForm.EXACT):
        if form is FieldForm.ALT_CONVECTION_PROFILE:
            return 2.0 * self.diffusion(z) + self.alpha * np.asarray(z)
        return 2.0 * self.diffusion_d(z) + self.alpha * np.asarray(z)

    def convection_d(self, z, form: FieldForm = FieldForm.EXACT):
        if form is FieldForm.ALT_CONVECTION_PROFILE:
            return 2.0 * self.diffusion_d(z) + self.alpha
        return 2.0 * self.diffusion_dd(z) + self.alpha

    def potential_y(self, z):
        """Chain potential the solution state solves."""
        return self.family.potential(self.y_state.s, z)

    def potential_sigma(self, z):
        return self.family.potential(self.sigma_state.s, z)

    def reaction(self, z):
        if self.case_tag is CaseTag.FPE:
            return np.zeros_like(np.asarray(z, dtype=np.float64)) if np.ndim(z) else 0.0
        if self.case_tag is CaseTag.CASE_A:
            return -self.delta_e * self.diffusion(z) * self.solution(z)
        dv = self.potential_sigma(z) - self.potential_y(z)
        return dv * self.diffusion(z) * self.solution(z)

    def reaction_time_exponent(self, form: FieldForm = FieldForm.EXACT) -> float:
        if form is FieldForm.ALT_REACTION_EXPONENT:
            return 1.0 - self.alpha
        return self.exponents.rho_exp

    def __repr__(self):
        (n, s), (np_, sp) = self.indices
        return (
            f"CdrSystem({self.case_tag.value}, alpha={self.alpha}, "
            f"omega={self.family.omega}, ell={self.family.ell}, "
            f"y=(n={n}, s={s}), sigma=(n'={np_}, s'={sp}), "
            f"A={self.coeff_a}, B={self.coeff_b})"
        )


def build_fpe(family: RadialOscillatorFamily, s: int, n: int,
              alpha: float) -> CdrSystem:
    """Zero-reaction system: solution and diffusion share one eigenstate."""
    state = family.eigenstate(s, n)
    return CdrSystem(
        case_tag=CaseTag.FPE,
        exponents=exponents_for_class(alpha),
        family=family,
        y_state=state,
        sigma_state=state,
    )


def build_case_a(family: RadialOscillatorFamily, alpha: float, n: int,
                 m: int) -> CdrSystem:
    """Two levels of one potential: y = u_n, sigma = u_m, both at s = 0.

    The reaction profile is -(E_m - E_n) * u_m(z) * u_n(z); for m = n it
    vanishes and the system reduces to the zero-reaction case.
    """
    return CdrSystem(
        case_tag=CaseTag.CASE_A,
        exponents=exponents_for_class(alpha),
        family=family,
        y_state=family.eigenstate(0, n),
        sigma_state=family.eigenstate(0, m),
    )


def build_case_b(family: RadialOscillatorFamily, alpha: float, n: int, s: int,
                 n_prime: int, s_prime: int, coeff_a: float = 1.0,
                 coeff_b: float = 1.0) -> CdrSystem:
    """Two chain members at one shared energy: y = A u_n of member s,
    sigma = B u_n' of member s'.

    Equal energies force n + s = n' + s'; the reaction profile is
    A*B*(V_s'(z) - V_s(z)) * u_n'(z) * u_n(z).
    """
    if n + s != n_prime + s_prime:
        raise ValueError(
            f"index constraint violated: n + s must equal n' + s' "
            f"(got {n}+{s} = {n + s} vs {n_prime}+{s_prime} = {n_prime + s_prime})"
        )
    if coeff_a == 0.0 or coeff_b == 0.0:
        raise ValueError("coefficients A and B must be nonzero")
    return CdrSystem(
        case_tag=CaseTag.CASE_B,
        exponents=exponents_for_class(alpha),
        family=family,
        y_state=family.eigenstate(s, n),
        sigma_state=family.eigenstate(s_prime, n_prime),
        coeff_a=float(coeff_a),
        coeff_b=float(coeff_b),
    )


def eval_fields(system: CdrSystem, x, t, form: FieldForm = FieldForm.EXACT):
    """Physical fields (P, D, C, R) at (x, t); t > 0, x in the half-line domain."""
    t_arr = np.asarray(t, dtype=np.float64)
    x_arr = np.asarray(x, dtype=np.float64)
    if np.any(x_arr <= 0.0):
        raise ValueError("fields of the half-line family require x > 0")
    z = to_similarity(x_arr, t_arr, system.alpha)
    e = system.exponents
    p_field = t_arr ** e.mu * system.solution(z)
    d_field = t_arr ** e.delta * system.diffusion(z)
    c_field = t_arr ** e.gamma * system.convection(z, form)
    r_field = t_arr ** system.reaction_time_exponent(form) * system.reaction(z)
    return p_field, d_field, c_field, r_field


def swap(system: CdrSystem) -> CdrSystem:
    """Exchange the solution and diffusion assignments, (n,s,A) <-> (n',s',B).

    Yields another solvable system of the same class; its reaction field
    is the pointwise negation of the original's.
    """
    if system.case_tag is CaseTag.FPE:
        raise ValueError("swap is defined for CASE_A and CASE_B systems only")
    return replace(
        system,
        y_state=system.sigma_state,
        sigma_state=system.y_state,
        coeff_a=system.coeff_b,
        coeff_b=system.coeff_a,
    )
