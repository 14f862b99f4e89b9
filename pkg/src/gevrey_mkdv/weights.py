"""Gevrey weights, weighted norms, weight inequalities, and the radius fit.

The analytic-class norms used throughout are

    G-norm (exp):   ( 2L * sum <xi>^{2s} e^{2 sigma |xi|}    |c|^2 )^{1/2}
    H-norm (cosh):  ( 2L * sum <xi>^{2s} cosh^2(sigma |xi|)  |c|^2 )^{1/2}

with <xi> = 1 + |xi|.  The two are equivalent because
(1/2) e^{sigma|xi|} <= cosh(sigma|xi|) <= e^{sigma|xi|}; that bound and its
relatives are exposed as checkable margin reports rather than assumed.

Overflow policy is prevention: every weighted computation on a grid is gated
by ``safe_sigma_max`` so that amplified round-off stays far below O(1)
solution scale.  Nothing is silently clamped.
"""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import InvalidInputError, SigmaGateError, WeightOverflowError
from .grid import Grid, SpectralField, lp_norm, multiplier

# sigma*|xi| cap for exp/cosh evaluation (double overflow is at ~709.8)
EXP_ARG_MAX = 700.0
# assumed relative round-off floor of stored coefficients
DEFAULT_COEFF_FLOOR = 1e-14
# weighted round-off must stay below this fraction of O(1) solution scale
GATE_LEVEL = 1e-2


class WeightKind(Enum):
    EXP = "exp"
    COSH = "cosh"
    SECH = "sech"


@dataclass(frozen=True)
class GevreyParams:
    """Radius parameter, Sobolev index, and weight choice."""

    sigma: float
    s: float = 0.0
    kind: WeightKind = WeightKind.COSH

    def __post_init__(self):
        if self.sigma < 0:
            raise InvalidInputError(f"sigma must be >= 0, got {self.sigma}")


@dataclass(frozen=True)
class RadiusEstimate:
    """Decay-rate fit of a spectrum: the numerical analyticity-radius proxy."""

    sigma_hat: float
    band: tuple[float, float]
    residual: float
    trusted: bool


@dataclass(frozen=True)
class MarginReport:
    """Worst case of LHS - RHS over a sample set; <= 0 means the bound held."""

    name: str
    n_samples: int
    max_margin: float
    argmax: tuple


def _weight_scalar_array(kind: WeightKind, sigma: float, xi):
    x = sigma * np.abs(np.asarray(xi, dtype=float))
    if kind in (WeightKind.EXP, WeightKind.COSH):
        xmax = float(np.max(x)) if x.size else 0.0
        if xmax > EXP_ARG_MAX:
            bad = float(np.asarray(xi).flat[int(np.argmax(x))])
            raise WeightOverflowError(
                f"sigma*|xi| = {xmax:.3g} exceeds {EXP_ARG_MAX:,.0f} at xi = {bad:.6g}",
                xi=bad,
            )
    if kind is WeightKind.EXP:
        return np.exp(x)
    if kind is WeightKind.COSH:
        return np.cosh(x)
    if kind is WeightKind.SECH:
        return 1.0 / np.cosh(np.minimum(x, EXP_ARG_MAX))
    raise InvalidInputError(f"unknown weight kind {kind!r}")


def weight_value(kind: WeightKind, sigma: float, xi: float) -> float:
    """e^{sigma|xi|}, cosh(sigma|xi|) or sech(sigma|xi|) at one wavenumber."""
    if sigma < 0:
        raise InvalidInputError(f"sigma must be >= 0, got {sigma}")
    return float(_weight_scalar_array(kind, sigma, np.asarray([xi]))[0])


def safe_sigma_max(grid: Grid, floor: float = DEFAULT_COEFF_FLOOR) -> float:
    """Largest sigma with cosh(sigma*xi_max)*floor below the gate level.

    Coefficients carry a relative round-off floor; weighting amplifies it by
    cosh(sigma*xi_max) at the highest mode, and past this bound the amplified
    noise would pollute O(1) energies.
    """
    if floor <= 0:
        raise InvalidInputError(f"floor must be positive, got {floor}")
    ratio = GATE_LEVEL / floor
    if ratio <= 1.0:
        return 0.0
    return float(np.arccosh(ratio) / grid.xi_max)


def check_sigma_gate(grid: Grid, sigma: float, floor: float = DEFAULT_COEFF_FLOOR):
    bound = safe_sigma_max(grid, floor)
    if sigma > bound:
        raise SigmaGateError(
            f"sigma = {sigma:.6g} exceeds the grid's safe bound {bound:.6g} "
            f"(n = {grid.n}, xi_max = {grid.xi_max:.6g}, floor = {floor:g})"
        )


def apply_weight(f: SpectralField, params: GevreyParams) -> SpectralField:
    """Apply the Fourier weight w(sigma |xi|) of the given kind to a field.

    The sech kind is the exact inverse of cosh with the same sigma.
    """
    if params.kind in (WeightKind.EXP, WeightKind.COSH):
        check_sigma_gate(f.grid, params.sigma)
    return multiplier(f, lambda xi: _weight_scalar_array(params.kind, params.sigma, xi))


def gevrey_norm(f: SpectralField, params: GevreyParams) -> float:
    """Weighted Sobolev norm of the field; cosh kind gives the H-norm,
    exp kind the G-norm."""
    if params.kind is WeightKind.SECH:
        raise InvalidInputError("gevrey_norm is defined for the exp and cosh kinds")
    check_sigma_gate(f.grid, params.sigma)
    xi = f.grid.wavenumbers
    w = _weight_scalar_array(params.kind, params.sigma, xi)
    bracket = (1.0 + np.abs(xi)) ** params.s
    total = 2.0 * f.grid.half_length * np.sum(
        (bracket * w) ** 2 * np.abs(f.coeffs) ** 2
    )
    return float(np.sqrt(total))


def _log_cosh(x: np.ndarray) -> np.ndarray:
    """log(cosh(x)), stable for large |x|."""
    ax = np.abs(x)
    return ax + np.log1p(np.exp(-2.0 * ax)) - math.log(2.0)


def inequality_margin(name: str, samples: np.ndarray, theta: float | None = None) -> MarginReport:
    """Worst-case margin LHS - RHS of one weight inequality over samples.

    name       samples per row         inequality checked
    ---------  ----------------------  ------------------------------------------
    exp_est    (sigma, xi), theta      e^x - 1            <= x^theta e^x,  x = sigma|xi|
    cosh_1     (sigma, xi), theta      cosh(x) - 1        <= x^{2 theta} cosh(x)
    equivalence(sigma, xi)             (1/2) e^x <= cosh(x) <= e^x   (both sides)
    cosh_lemma (xi_1 .. xi_p)          |1 - cosh|sum| prod sech|xi_j||
                                          <= 2^p sum_{j != k} |xi_j||xi_k|

    The report is evidence, not an assertion: callers decide what a positive
    margin means.
    """
    samples = np.asarray(samples, dtype=float)
    if samples.ndim != 2:
        raise InvalidInputError("samples must be a 2-d array, one sample per row")

    # exp_est/cosh_1/equivalence margins are computed in factored form,
    # weight * (stable inner difference): algebraically equal to LHS - RHS
    # but with an exact sign, where the naive subtraction of two huge
    # near-equal exponentials rounds to garbage.
    if name in ("exp_est", "cosh_1"):
        if theta is None or not 0.0 <= theta <= 1.0:
            raise InvalidInputError(f"{name} needs theta in [0, 1], got {theta}")
        x = np.abs(samples[:, 0]) * np.abs(samples[:, 1])
        if name == "exp_est":
            # e^x - 1 - x^theta e^x = e^x ((1 - e^{-x}) - x^theta)
            margin = np.exp(x) * (-np.expm1(-x) - x**theta)
        else:
            # cosh x - 1 - x^{2 theta} cosh x = cosh x ((cosh x - 1)/cosh x - x^{2 theta})
            ch = np.cosh(x)
            coshm1 = 0.5 * (np.expm1(x) + np.expm1(-x))
            margin = ch * (coshm1 / ch - x ** (2.0 * theta))
    elif name == "equivalence":
        x = np.abs(samples[:, 0]) * np.abs(samples[:, 1])
        lower = -0.5 * np.exp(-x)                  # (1/2) e^x - cosh x
        upper = np.exp(x) * 0.5 * np.expm1(-2.0 * x)  # cosh x - e^x
        margin = np.maximum(lower, upper)
    elif name == "cosh_lemma":
        p = samples.shape[1]
        if not 1 <= p <= 4:
            raise InvalidInputError(f"cosh_lemma expects 1 <= p <= 4 wavenumbers, got {p}")
        axi = np.abs(samples)
        xi_sum = samples.sum(axis=1)
        # cosh|xi| prod sech|xi_j| in log space: exact cancellation at p = 1
        log_ratio = _log_cosh(xi_sum) - _log_cosh(samples).sum(axis=1)
        lhs = np.abs(1.0 - np.exp(log_ratio))
        rhs = (2.0**p) * (axi.sum(axis=1) ** 2 - (axi**2).sum(axis=1))
        margin = lhs - rhs
    else:
        raise InvalidInputError(f"unknown inequality {name!r}")

    worst = int(np.argmax(margin))
    return MarginReport(
        name=name,
        n_samples=samples.shape[0],
        max_margin=float(margin[worst]),
        argmax=tuple(float(v) for v in samples[worst]),
    )


def sample_sigma_xi(rng: np.random.Generator, count: int) -> np.ndarray:
    """Seeded (sigma, xi) draws covering six decades of sigma*|xi| without
    entering the overflow region."""
    log_sigma = rng.uniform(np.log(1e-3), np.log(1.0), size=count)
    log_xi = rng.uniform(np.log(1e-3), np.log(500.0), size=count)
    sign = rng.choice([-1.0, 1.0], size=count)
    return np.column_stack([np.exp(log_sigma), sign * np.exp(log_xi)])


def sample_xi_tuples(rng: np.random.Generator, count: int, p: int) -> np.ndarray:
    """Seeded p-tuples of signed wavenumbers across scales for the product
    lemma."""
    mag = np.exp(rng.uniform(np.log(1e-3), np.log(50.0), size=(count, p)))
    sign = rng.choice([-1.0, 1.0], size=(count, p))
    return sign * mag


def run_inequality_suite(seed: int, count: int = 100_000) -> list[MarginReport]:
    """The standard battery: exp_est at theta in {0, 1/2, 1}, cosh_1 at
    theta = 1, the cosh/exp equivalence, and the product lemma for p <= 4."""
    reports = []
    rng = np.random.default_rng(seed)
    for theta in (0.0, 0.5, 1.0):
        reports.append(
            inequality_margin("exp_est", sample_sigma_xi(rng, count), theta=theta)
        )
    reports.append(inequality_margin("cosh_1", sample_sigma_xi(rng, count), theta=1.0))
    reports.append(inequality_margin("equivalence", sample_sigma_xi(rng, count)))
    for p in (1, 2, 3, 4):
        reports.append(inequality_margin("cosh_lemma", sample_xi_tuples(rng, count, p)))
    return reports


def estimate_radius(
    f: SpectralField,
    noise_floor: float | None = None,
    xi_lo: float | None = None,
) -> RadiusEstimate:
    """Analyticity-radius proxy: minus the slope of ln|c_k| against |xi_k|.

    The usable band runs from the first positive mode up to the first mode
    whose magnitude drops to the noise floor; the fit uses only its upper
    half (low modes reflect the profile's shape, not the decay rate).  Fewer
    than 8 fitted modes marks the estimate untrusted.
    """
    if not f.real:
        raise InvalidInputError("estimate_radius expects a real-valued field")
    half = f.grid.nyquist_index
    xi = f.grid.wavenumbers[1:half]
    mag = np.abs(f.coeffs[1:half])
    peak = float(np.max(np.abs(f.coeffs)))
    if noise_floor is None:
        noise_floor = 1e-13 * peak
    if noise_floor <= 0:
        raise InvalidInputError("noise_floor must be positive")

    below = mag <= noise_floor
    cut = int(np.argmax(below)) if below.any() else mag.size
    if cut == 0:
        return RadiusEstimate(0.0, (0.0, 0.0), float("inf"), False)
    xi_hi = float(xi[cut - 1])
    if xi_lo is None:
        xi_lo = 0.5 * xi_hi
    keep = slice(0, cut)
    band = (xi[keep] >= xi_lo) & (mag[keep] > noise_floor)
    xs = xi[keep][band]
    ys = np.log(mag[keep][band])
    if xs.size < 2:
        return RadiusEstimate(0.0, (float(xi_lo), xi_hi), float("inf"), False)
    slope, intercept = np.polyfit(xs, ys, 1)
    fit = slope * xs + intercept
    residual = float(np.sqrt(np.mean((ys - fit) ** 2)))
    return RadiusEstimate(
        sigma_hat=max(0.0, float(-slope)),
        band=(float(xi_lo), xi_hi),
        residual=residual,
        trusted=bool(xs.size >= 8),
    )
