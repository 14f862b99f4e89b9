"""Time integration of u_t + u_xxx + mu u^2 u_x = 0 on the periodic grid.

The cubic term is advanced in divergence form (mu/3) d/dx (u^3): one
dealiased cubic product plus an exact spectral derivative.  Stiffness from
the third derivative is removed exactly by an integrating factor, so the
classical RK4 stages see only the nonlinear rotation:

    v = e^{-i xi^3 t} u_hat  =>  dv/dt = e^{-i xi^3 t} N(e^{i xi^3 t} v).

With mu = 0 a step reduces to the exact Airy propagator.
"""

from dataclasses import dataclass

import numpy as np

from .errors import BlowUpError, CflViolationError, InvalidInputError
from .grid import SpectralField, dealiased_product, derivative

# nonlinear CFL safety constant: dt <= CFL_CONST * dx / max|u|^2
CFL_CONST = 0.5
CFL_RECHECK_INTERVAL = 100


@dataclass(frozen=True)
class SolverConfig:
    mu: int
    dt: float
    t_final: float
    scheme: str = "IFRK4"
    dealias: int = 2

    def __post_init__(self):
        if self.mu not in (-1, 0, 1):
            raise InvalidInputError(f"mu must be -1, 0 or +1, got {self.mu}")
        if self.dt <= 0:
            raise InvalidInputError(f"dt must be positive, got {self.dt}")
        if self.t_final <= 0:
            raise InvalidInputError(f"t_final must be positive, got {self.t_final}")
        if self.scheme != "IFRK4":
            raise InvalidInputError(f"unknown scheme {self.scheme!r}")
        if self.dealias < 2:
            raise InvalidInputError(f"dealias factor must be >= 2, got {self.dealias}")


@dataclass
class State:
    field: SpectralField
    t: float = 0.0


def airy_propagate(f: SpectralField, t: float) -> SpectralField:
    """Exact linear propagator: multiply each mode by e^{i xi^3 t}.

    Unitary, so |coeffs| are preserved for any t.
    """
    xi = f.grid.wavenumbers
    return f.with_coeffs(f.coeffs * np.exp(1j * xi**3 * t))


def _nonlinear(f: SpectralField, mu: int, dealias: int) -> np.ndarray:
    """Coefficients of -(mu/3) d/dx (u^3), dealiased."""
    cubic = dealiased_product(f, f, f, pad_factor=dealias)
    return (-mu / 3.0) * derivative(cubic, 1).coeffs


def _ifrk4_step(f: SpectralField, dt: float, mu: int, dealias: int) -> SpectralField:
    grid = f.grid
    if mu == 0:
        return airy_propagate(f, dt)
    xi = grid.wavenumbers
    E = np.exp(1j * xi**3 * (dt / 2.0))
    E2 = E * E
    c = f.coeffs

    def N(coeffs: np.ndarray) -> np.ndarray:
        return _nonlinear(SpectralField(grid, coeffs, real=f.real), mu, dealias)

    n1 = N(c)
    ub = E * (c + (dt / 2.0) * n1)
    n2 = N(ub)
    uc = E * c + (dt / 2.0) * n2
    n3 = N(uc)
    ud = E2 * c + dt * E * n3
    n4 = N(ud)
    c_new = E2 * c + (dt / 6.0) * (E2 * n1 + 2.0 * E * (n2 + n3) + n4)
    return SpectralField(grid, c_new, real=f.real)


def step(state: State, cfg: SolverConfig) -> State:
    """One IF-RK4 step of size cfg.dt; raises BlowUpError on NaN/Inf."""
    new_field = _ifrk4_step(state.field, cfg.dt, cfg.mu, cfg.dealias)
    t_new = state.t + cfg.dt
    if not new_field.is_finite():
        raise BlowUpError(
            f"solution lost finiteness during the step ending at t = {t_new:.6g}",
            time=t_new,
        )
    return State(new_field, t_new)


def _check_cfl(state: State, cfg: SolverConfig):
    if cfg.mu == 0:
        return
    umax = float(np.max(np.abs(state.field.samples())))
    if umax == 0.0:
        return
    bound = CFL_CONST * state.field.grid.dx / umax**2
    if cfg.dt > bound:
        raise CflViolationError(
            f"dt = {cfg.dt:.3g} violates the nonlinear CFL bound {bound:.3g} "
            f"at t = {state.t:.6g} (max|u| = {umax:.3g})"
        )


def evolve(
    state: State,
    cfg: SolverConfig,
    sample_times=(),
    observers=(),
):
    """March to cfg.t_final, invoking observers at the requested times.

    The step size is cfg.dt except that the last step before each sample
    time (and before t_final) is shortened to land exactly.  Returns the
    final state and one record list per observer.  Blow-up aborts the run;
    the partial records ride along on the exception.
    """
    t0 = state.t
    horizon = cfg.t_final
    samples = sorted(set(float(t) for t in sample_times))
    if samples and (samples[0] < t0 - 1e-12 or samples[-1] > horizon + 1e-12):
        raise InvalidInputError(
            f"sample times must lie within [{t0:.6g}, {horizon:.6g}]"
        )
    records: list[list] = [[] for _ in observers]

    def notify(st: State):
        for obs, rec in zip(observers, records):
            rec.append(obs(st))

    _check_cfl(state, cfg)
    step_count = 0
    targets = [t for t in samples if t > t0 + 1e-12]
    if samples and abs(samples[0] - t0) <= 1e-12:
        notify(state)
    if not targets or abs(targets[-1] - horizon) > 1e-12:
        targets.append(horizon)

    current = state
    try:
        for target in targets:
            while current.t < target - 1e-12:
                dt = min(cfg.dt, target - current.t)
                new_field = _ifrk4_step(current.field, dt, cfg.mu, cfg.dealias)
                current = State(new_field, current.t + dt)
                if not new_field.is_finite():
                    raise BlowUpError(
                        f"solution lost finiteness at t = {current.t:.6g}",
                        time=current.t,
                    )
                step_count += 1
                if step_count % CFL_RECHECK_INTERVAL == 0:
                    _check_cfl(current, cfg)
            current = State(current.field, target)
            if any(abs(target - s) <= 1e-12 for s in samples):
                notify(current)
    except BlowUpError as err:
        err.records = records
        raise
    return current, records


def reflect(f: SpectralField) -> SpectralField:
    """Spatial reflection u(x) -> u(-x); for real fields this conjugates
    the coefficients."""
    if f.real:
        return f.with_coeffs(np.conj(f.coeffs))
    n = f.grid.n
    out = np.empty(n, dtype=np.complex128)
    out[0] = f.coeffs[0]
    out[1:] = f.coeffs[:0:-1]
    half = f.grid.nyquist_index
    out[half] = f.coeffs[half]
    return f.with_coeffs(out, real=False)
