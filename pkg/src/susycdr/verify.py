"""Independent numerical oracles for the closed-form constructions.

Nothing in this module trusts the algebra that built a system: residuals
re-evaluate the defining identities (Schroedinger equation, reduced
z-equation, the full PDE), orthonormality re-derives the normalization by
quadrature, and the Crank-Nicolson stepper reproduces the dynamics from
initial data alone. A closed-form construction is accepted only when all
of these agree.
"""

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .cdr import CdrSystem, FieldForm, eval_fields
from .mathfn import QuadratureSpec, gaussian_tail_cutoff, integrate
from .quantum import Eigenstate, RadialOscillatorFamily

__all__ = [
    "GridSpec",
    "ResidualReport",
    "EvolveReport",
    "schrodinger_residual",
    "ode_residual",
    "pde_residual",
    "orthonormality_matrix",
    "node_count",
    "positive_diffusion_x_max",
    "evolve_oracle",
]

# Floor added to local scales before dividing, so relative residuals stay
# finite where every field vanishes (large x).
_SCALE_FLOOR = 1e-30


@dataclass(frozen=True)
class GridSpec:
    """Evaluation grid; excludes x = 0 (centrifugal singularity) and t <= 0."""

    x_min: float = 0.2
    x_max: float = 8.0
    nx: int = 400
    t_min: float = 0.5
    t_max: float = 2.5
    nt: int = 200

    def __post_init__(self):
        if not 0.0 < self.x_min < self.x_max:
            raise ValueError(
                f"need 0 < x_min < x_max, got x_min={self.x_min}, x_max={self.x_max}"
            )
        if not 0.0 < self.t_min <= self.t_max:
            raise ValueError(
                f"need 0 < t_min <= t_max, got t_min={self.t_min}, t_max={self.t_max}"
            )
        if self.nx < 8:
            raise ValueError(f"nx must be >= 8, got {self.nx}")
        if self.nt < 2:
            raise ValueError(f"nt must be >= 2, got {self.nt}")

    def x_points(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.nx)

    def t_points(self) -> np.ndarray:
        return np.linspace(self.t_min, self.t_max, self.nt)


@dataclass(frozen=True)
class ResidualReport:
    """Residual diagnostics over a grid.

    ``max_rel`` normalizes by the scale each operation defines (documented
    there); ``worst_point`` is where that normalized residual peaks --
    an x or z value for one-dimensional sweeps, an (x, t) pair for the PDE.
    """

    max_abs: float
    l2: float
    max_rel: float
    worst_point: object
    mode: str

    def as_dict(self) -> dict:
        """Plain-types view for JSON/CSV export (see the cli module)."""
        worst = self.worst_point
        if isinstance(worst, tuple):
            worst = [float(v) for v in worst]
        else:
            worst = float(worst)
        return {
            "max_abs": self.max_abs,
            "l2": self.l2,
            "max_rel": self.max_rel,
            "worst_point": worst,
            "mode": self.mode,
        }


def _report(residual, scale, points, mode):
    rel = np.abs(residual) / np.maximum(scale, _SCALE_FLOOR)
    idx = int(np.argmax(rel))
    worst = points[idx]
    return ResidualReport(
        max_abs=float(np.max(np.abs(residual))),
        l2=float(np.sqrt(np.mean(residual ** 2))),
        max_rel=float(rel[idx]),
        worst_point=worst,
        mode=mode,
    )


def schrodinger_residual(state: Eigenstate, grid: GridSpec) -> ResidualReport:
    """Residual of -u'' + (V_s - E) u = 0 on the x grid, analytic derivatives.

    ``max_rel`` is normalized by the maximum of |u| over the grid, so a
    unit max_rel means the residual is as large as the state itself.
    """
    x = grid.x_points()
    u = state(x)
    v = state.family.potential(state.s, x)
    r = -state.deriv2(x) + (v - state.energy) * u
    scale = np.full_like(r, max(float(np.max(np.abs(u))), _SCALE_FLOOR))
    return _report(r, scale, x, "analytic")


def ode_residual(system: CdrSystem, z_grid) -> ResidualReport:
    """Residual of the reduced z-equation,

        sigma y'' + (2 sigma' + alpha z - tau) y' - (tau' + mu - sigma'') y + rho,

    with tau the system's convection profile. The full expression is
    evaluated as written; for the shipped class the y' coefficient cancels
    identically. ``max_rel`` normalizes by the local magnitude of the
    participating terms.
    """
    z = np.asarray(z_grid, dtype=np.float64)
    alpha = system.alpha
    mu = system.exponents.mu
    sig = system.diffusion(z)
    sig_d = system.diffusion_d(z)
    sig_dd = system.diffusion_dd(z)
    y = system.solution(z)
    y_d = system.solution_d(z)
    y_dd = system.solution_dd(z)
    tau = system.convection(z)
    tau_d = system.convection_d(z)
    rho = system.reaction(z)
    r = (
        sig * y_dd
        + (2.0 * sig_d + alpha * z - tau) * y_d
        - (tau_d + mu - sig_dd) * y
        + rho
    )
    scale = np.maximum.reduce([
        np.abs(sig * y_dd), np.abs(sig_dd * y), np.abs(mu * y), np.abs(rho),
    ])
    return _report(r, scale, z, "analytic")


def _analytic_terms(system, x, t, form):
    """Time derivative, flux divergences, and reaction at one time level."""
    e = system.exponents
    z = x / t ** e.alpha
    y = system.solution(z)
    y_d = system.solution_d(z)
    y_dd = system.solution_dd(z)
    sig = system.diffusion(z)
    sig_d = system.diffusion_d(z)
    sig_dd = system.diffusion_dd(z)
    c = system.convection(z, form)
    c_d = system.convection_d(z, form)
    t_mu1 = t ** (e.mu - 1.0)
    dt_p = t_mu1 * (e.mu * y - e.alpha * z * y_d)
    dx_cp = t_mu1 * (c_d * y + c * y_d)
    dxx_dp = t_mu1 * (sig_dd * y + 2.0 * sig_d * y_d + sig * y_dd)
    reac = t ** system.reaction_time_exponent(form) * system.reaction(z)
    p = t ** e.mu * y
    return p, dt_p, dx_cp, dxx_dp, reac


def _fd_terms(system, x, t, form, fd_step):
    h_t = fd_step if fd_step is not None else 1e-4 * max(1.0, abs(t))
    h_x = fd_step if fd_step is not None else 1e-4 * np.maximum(1.0, np.abs(x))

    def p_at(tt):
        return eval_fields(system, x, tt, form)[0]

    def cp_at(xx):
        p, _, c, _ = eval_fields(system, xx, t, form)
        return c * p

    def dp_at(xx):
        p, d, _, _ = eval_fields(system, xx, t, form)
        return d * p

    dt_p = (
        -p_at(t + 2 * h_t) + 8 * p_at(t + h_t) - 8 * p_at(t - h_t) + p_at(t - 2 * h_t)
    ) / (12 * h_t)
    dx_cp = (
        -cp_at(x + 2 * h_x) + 8 * cp_at(x + h_x)
        - 8 * cp_at(x - h_x) + cp_at(x - 2 * h_x)
    ) / (12 * h_x)
    dxx_dp = (
        -dp_at(x + 2 * h_x) + 16 * dp_at(x + h_x) - 30 * dp_at(x)
        + 16 * dp_at(x - h_x) - dp_at(x - 2 * h_x)
    ) / (12 * h_x * h_x)
    p, _, _, reac = eval_fields(system, x, t, form)
    return p, dt_p, dx_cp, dxx_dp, reac


def pde_residual(system: CdrSystem, grid: GridSpec, mode: str = "analytic",
                 form: FieldForm = FieldForm.EXACT,
                 fd_step: float | None = None) -> ResidualReport:
    """Residual of dP/dt + d/dx(CP) - d2/dx2(DP) - R over the (x, t) grid.

    ``mode="analytic"`` assembles every term from the closed-form profile
    derivatives; ``mode="finite-difference"`` differentiates the physical
    fields numerically (4th-order stencils, step ``fd_step`` or the
    per-point default). ``max_rel`` normalizes pointwise by
    max(|P|, |d/dx(CP)|, |d2/dx2(DP)|, |R|) plus a tiny floor.
    """
    if mode not in ("analytic", "finite-difference"):
        raise ValueError(f"unknown mode {mode!r}")
    x = grid.x_points()
    residuals = []
    scales = []
    points = []
    for t in grid.t_points():
        if mode == "analytic":
            p, dt_p, dx_cp, dxx_dp, reac = _analytic_terms(system, x, float(t), form)
        else:
            p, dt_p, dx_cp, dxx_dp, reac = _fd_terms(
                system, x, float(t), form, fd_step
            )
        r = dt_p + dx_cp - dxx_dp - reac
        scale = np.maximum.reduce(
            [np.abs(p), np.abs(dx_cp), np.abs(dxx_dp), np.abs(reac)]
        )
        residuals.append(r)
        scales.append(scale)
        points.extend((float(xx), float(t)) for xx in x)
    return _report(
        np.concatenate(residuals), np.concatenate(scales), points,
        mode,
    )


def orthonormality_matrix(family: RadialOscillatorFamily, s: int, n_max: int,
                          spec: QuadratureSpec | None = None) -> np.ndarray:
    """Gram matrix G[m, n] = integral of u_m u_n over (0, inf), m, n <= n_max.

    Every entry is computed independently (no symmetry shortcut); the
    quadrature is the arbiter of the normalization convention.
    """
    if n_max > 8:
        raise ValueError(f"n_max must be <= 8, got {n_max}")
    if spec is None:
        # Widened cut: the polynomial factor in front of the Gaussian
        # pushes the negligible-tail point outward for higher levels.
        spec = QuadratureSpec(
            abs_tol=1e-10,
            rel_tol=1e-10,
            truncation_x_max=gaussian_tail_cutoff(family.omega, safety=1.35),
        )
    states = [family.eigenstate(s, n) for n in range(n_max + 1)]
    gram = np.empty((n_max + 1, n_max + 1))
    for m in range(n_max + 1):
        for n in range(n_max + 1):
            gram[m, n] = integrate(
                lambda xx: states[m](xx) * states[n](xx), 0.0, spec
            )
    return gram


def node_count(state, interval, samples: int = 4096) -> int:
    """Number of interior zeros of ``state`` on ``interval`` = (lo, hi).

    Sign changes on a dense sample are refined by bisection; positive
    rescaling of the state cannot change the answer.
    """
    lo, hi = interval
    if not 0.0 < lo < hi:
        raise ValueError(f"interval must satisfy 0 < lo < hi, got {interval}")
    xs = np.linspace(lo, hi, samples)
    vals = np.asarray(state(xs), dtype=np.float64)
    count = 0
    i = 0
    while i < samples - 1:
        a, b = vals[i], vals[i + 1]
        if a == 0.0:
            # node exactly on a sample point; skip its right neighbour
            count += 1
            i += 1
            continue
        if a * b < 0.0:
            x_lo, x_hi = xs[i], xs[i + 1]
            f_lo = a
            for _ in range(60):
                mid = 0.5 * (x_lo + x_hi)
                f_mid = float(state(mid))
                if f_mid == 0.0:
                    break
                if f_lo * f_mid < 0.0:
                    x_hi = mid
                else:
                    x_lo, f_lo = mid, f_mid
            count += 1
        i += 1
    return count


def positive_diffusion_x_max(system: CdrSystem, t_min: float, x_max: float,
                             margin: float = 0.95, samples: int = 4096) -> float:
    """Largest x below ``x_max`` with D(x, t) > 0 for every t >= t_min.

    Time stepping is only well posed where the diffusion coefficient is
    positive; a diffusion profile with nodes turns the equation
    backward-parabolic beyond its first zero, and no initial-value scheme
    converges there. The first zero z* of the diffusion profile bounds
    the usable region by x < z* * t_min^alpha (for alpha > 0); ``margin``
    keeps a safety gap from the degenerate boundary.
    """
    alpha = system.alpha
    if alpha <= 0:
        raise ValueError("positive_diffusion_x_max requires alpha > 0")
    z_hi = x_max / t_min ** alpha
    zs = np.linspace(z_hi / samples, z_hi, samples)
    sig = np.asarray(system.diffusion(zs))
    sign_change = np.nonzero(sig[:-1] * sig[1:] < 0.0)[0]
    if sign_change.size == 0:
        return x_max
    i = int(sign_change[0])
    z_lo, z_up = zs[i], zs[i + 1]
    f_lo = sig[i]
    for _ in range(60):
        mid = 0.5 * (z_lo + z_up)
        f_mid = float(system.diffusion(mid))
        if f_mid == 0.0:
            z_lo = mid
            break
        if f_lo * f_mid < 0.0:
            z_up = mid
        else:
            z_lo, f_lo = mid, f_mid
    return min(x_max, margin * z_lo * t_min ** alpha)


@dataclass(frozen=True)
class EvolveReport:
    """Crank-Nicolson cross-check results.

    ``entries`` holds (nx, nt, l2_error) per resolution, coarsest first;
    ``orders`` the observed convergence order between consecutive levels.
    ``field`` is the numeric solution at t1 on the coarsest grid.
    """

    x: np.ndarray
    field: np.ndarray
    entries: tuple
    orders: tuple

    @property
    def l2_error(self) -> float:
        return self.entries[0][2]


def _evolve_single(system, x, t0, t1, nt):
    nx = x.shape[0]
    h = x[1] - x[0]
    dt = (t1 - t0) / nt
    levels = t0 + dt * np.arange(nt + 1)
    halves = t0 + dt * (np.arange(nt) + 0.5)

    d_levels = np.empty((nt + 1, nx))
    c_levels = np.empty((nt + 1, nx))
    bc_left = np.empty(nt + 1)
    bc_right = np.empty(nt + 1)
    for j, t in enumerate(levels):
        p, d, c, _ = eval_fields(system, x, float(t))
        d_levels[j] = d
        c_levels[j] = c
        bc_left[j] = p[0]
        bc_right[j] = p[-1]
    r_half = np.empty((nt, nx))
    for j, t in enumerate(halves):
        r_half[j] = eval_fields(system, x, float(t))[3]

    p0 = eval_fields(system, x, t0)[0]
    p_num = _kernels.cn_evolve(
        p0, d_levels, c_levels, r_half, bc_left, bc_right, dt, h
    )
    p_exact = eval_fields(system, x, t1)[0]
    blowup = 1e6 * max(float(np.max(np.abs(p0))), float(np.max(np.abs(p_exact))))
    if not np.all(np.isfinite(p_num)) or float(np.max(np.abs(p_num))) > blowup:
        raise RuntimeError(
            f"time stepper diverged (nx={nx}, nt={nt}); the problem is "
            "ill posed wherever the diffusion coefficient is negative -- "
            "restrict the domain (see positive_diffusion_x_max)"
        )
    err = float(np.sqrt(h * np.sum((p_num - p_exact) ** 2)))
    return p_num, err


def evolve_oracle(system: CdrSystem, grid: GridSpec, t0: float, t1: float,
                  refinements: int = 2) -> EvolveReport:
    """Integrate the PDE numerically from analytic data at t0 and compare at t1.

    Crank-Nicolson in conservative form with the closed-form reaction as a
    known source at the half step and analytic Dirichlet values at both
    ends. Runs ``refinements`` resolutions, doubling nx and nt each time,
    and reports the discrete L2 errors and observed orders.
    """
    if not 0.0 < t0 <= t1:
        raise ValueError(f"need 0 < t0 <= t1, got t0={t0}, t1={t1}")
    base_x = grid.x_points()
    if t1 == t0:
        p0 = eval_fields(system, base_x, t0)[0]
        return EvolveReport(
            x=base_x, field=p0, entries=((grid.nx, grid.nt, 0.0),), orders=()
        )
    entries = []
    base_field = None
    for level in range(max(1, refinements)):
        nx = grid.nx * 2 ** level
        nt = grid.nt * 2 ** level
        x = np.linspace(grid.x_min, grid.x_max, nx)
        p_num, err = _evolve_single(system, x, t0, t1, nt)
        if level == 0:
            base_field = p_num
        entries.append((nx, nt, err))
    orders = tuple(
        float(np.log2(entries[k][2] / entries[k + 1][2]))
        for k in range(len(entries) - 1)
        if entries[k + 1][2] > 0.0
    )
    return EvolveReport(
        x=base_x, field=base_field, entries=tuple(entries), orders=orders
    )
