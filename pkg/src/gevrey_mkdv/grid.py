"""Periodic spectral discretization: grids, transforms, multipliers, products.

Conventions
-----------
The domain is the periodic box [-L, L) sampled at n points x_j = -L + j*dx,
dx = 2L/n.  Wavenumbers are xi_k = pi*k/L for k in {-n/2, ..., n/2-1}, stored
in FFT order.  The forward transform carries the 1/n factor,

    c_k = (1/n) * sum_j u(x_j) * exp(-i xi_k x_j),

so a single mode has an O(1) coefficient and Parseval reads

    integral |u|^2 dx = 2L * sum_k |c_k|^2.

Pointwise products are dealiased by zero padding: a product of p band-limited
factors is evaluated on a grid with more than p*n/2 modes, so the retained
coefficients are exact linear-convolution values (no aliasing).
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidInputError, RealnessError

# Relative tolerance for the Hermitian-symmetry check on real-flagged fields.
HERMITIAN_RTOL = 1e-10


@dataclass(frozen=True)
class Grid:
    """Uniform periodic grid on [-L, L) with its wavenumber table."""

    n: int
    half_length: float

    def __post_init__(self):
        if self.n < 8 or self.n % 2 != 0:
            raise InvalidInputError(f"grid size must be even and >= 8, got {self.n}")
        if self.half_length <= 0:
            raise InvalidInputError(f"half_length must be positive, got {self.half_length}")
        k = np.fft.fftfreq(self.n, d=1.0 / self.n)  # integer mode numbers, FFT order
        wavenumbers = np.pi * k / self.half_length
        x = -self.half_length + self.dx * np.arange(self.n)
        # Phase (-1)^k converts numpy's x_0 = 0 DFT to the x_0 = -L convention.
        phase = np.where(np.rint(k).astype(int) % 2 == 0, 1.0, -1.0)
        for name, arr in (("wavenumbers", wavenumbers), ("x", x), ("_phase", phase)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    wavenumbers: np.ndarray = field(init=False, repr=False, compare=False)
    x: np.ndarray = field(init=False, repr=False, compare=False)
    _phase: np.ndarray = field(init=False, repr=False, compare=False)

    @property
    def dx(self) -> float:
        return 2.0 * self.half_length / self.n

    @property
    def xi_max(self) -> float:
        """Magnitude of the Nyquist wavenumber, pi*(n/2)/L."""
        return np.pi * (self.n // 2) / self.half_length

    @property
    def nyquist_index(self) -> int:
        return self.n // 2


@dataclass(eq=False)
class SpectralField:
    """One function of x held as Fourier coefficients on a :class:`Grid`.

    ``real`` records that the field represents a real-valued function; the
    Hermitian symmetry c(-k) = conj(c(k)) is checked on construction, so any
    operation that silently breaks realness fails loudly.
    """

    grid: Grid
    coeffs: np.ndarray
    real: bool = True

    def __post_init__(self):
        self.coeffs = np.asarray(self.coeffs, dtype=np.complex128)
        if self.coeffs.shape != (self.grid.n,):
            raise InvalidInputError(
                f"coefficient array has shape {self.coeffs.shape}, expected ({self.grid.n},)"
            )
        if self.real:
            self._check_and_project_hermitian()

    def _check_and_project_hermitian(self):
        """Verify Hermitian symmetry, then enforce it exactly.

        Pairs k <-> -k and the DC mode are constrained; the unpaired Nyquist
        mode is exempt (linear propagation legitimately rotates it, and
        sampling projects it back to its cosine part).  After the check the
        coefficients are averaged with their reversed conjugate, so even
        Fourier multipliers -- which can amplify ulp-level asymmetry by many
        orders -- preserve the symmetry bitwise downstream.
        """
        c = self.coeffs
        scale = float(np.max(np.abs(c)))
        if scale == 0.0:
            return
        tol = HERMITIAN_RTOL * scale
        half = self.grid.nyquist_index
        pairs = np.abs(c[1:half] - np.conj(c[half + 1:][::-1]))
        mismatch = float(np.max(pairs)) if pairs.size else 0.0
        dc_imag = abs(c[0].imag)
        if mismatch > tol or dc_imag > tol:
            raise RealnessError(
                "field flagged real has non-Hermitian coefficients "
                f"(max pair mismatch {mismatch:.3e}, tol {tol:.3e})"
            )
        projected = c.copy()
        projected[1:half] = 0.5 * (c[1:half] + np.conj(c[half + 1:][::-1]))
        projected[half + 1:] = np.conj(projected[1:half][::-1])
        projected[0] = c[0].real
        self.coeffs = projected

    def with_coeffs(self, coeffs: np.ndarray, real: bool | None = None) -> "SpectralField":
        return SpectralField(self.grid, coeffs, self.real if real is None else real)

    def copy(self) -> "SpectralField":
        return SpectralField(self.grid, self.coeffs.copy(), self.real)

    def samples(self, pad_factor: int = 1) -> np.ndarray:
        """Physical-space samples, optionally on a zero-padded finer grid.

        With ``pad_factor`` m the result has m*n points on the same box, so
        products of several fields can be formed alias-free.  For real fields
        the Nyquist coefficient is split across +-n/2 on the padded grid (the
        cosine convention), which keeps off-node values real.
        """
        if pad_factor == 1:
            padded = self.coeffs
        else:
            padded = _zero_pad(self.coeffs, self.grid.n * pad_factor, split_nyquist=self.real)
        m = padded.size
        phase = _padded_phase(m)
        out = np.fft.ifft(phase * padded) * m
        return out.real if self.real else out

    def is_finite(self) -> bool:
        return bool(np.all(np.isfinite(self.coeffs)))


def _padded_phase(m: int) -> np.ndarray:
    k = np.rint(np.fft.fftfreq(m, d=1.0 / m)).astype(int)
    return np.where(k % 2 == 0, 1.0, -1.0)


def _zero_pad(coeffs: np.ndarray, m: int, split_nyquist: bool = True) -> np.ndarray:
    """Embed FFT-ordered coefficients of length n into length m > n.

    ``split_nyquist`` shares the unpaired -n/2 coefficient between the +-n/2
    slots of the finer grid; required for real fields, wrong for a genuinely
    one-sided complex spectrum.
    """
    n = coeffs.size
    out = np.zeros(m, dtype=np.complex128)
    half = n // 2
    out[:half] = coeffs[:half]
    out[m - half:] = coeffs[half:]
    if split_nyquist:
        out[m - half] = 0.5 * coeffs[half]
        out[half] = 0.5 * coeffs[half]
    return out


def _truncate(coeffs_m: np.ndarray, n: int) -> np.ndarray:
    """Keep the modes |k| <= n/2 of an FFT-ordered length-m spectrum.

    The +-n/2 coefficients fold into the single Nyquist slot, matching how
    those modes coincide on the coarse grid's nodes.
    """
    m = coeffs_m.size
    half = n // 2
    out = np.empty(n, dtype=np.complex128)
    out[:half] = coeffs_m[:half]
    out[half:] = coeffs_m[m - half:]
    out[half] = coeffs_m[m - half] + coeffs_m[half]
    return out


def forward(samples: np.ndarray, grid: Grid) -> SpectralField:
    """Transform physical samples on ``grid`` to Fourier coefficients."""
    samples = np.asarray(samples)
    if samples.shape != (grid.n,):
        raise InvalidInputError(
            f"sample array has shape {samples.shape}, expected ({grid.n},)"
        )
    real = bool(np.isrealobj(samples))
    coeffs = grid._phase * np.fft.fft(samples) / grid.n
    return SpectralField(grid, coeffs, real=real)


def inverse(f: SpectralField) -> np.ndarray:
    """Physical samples of ``f`` on its own grid."""
    return f.samples()


def derivative(f: SpectralField, p: int = 1) -> SpectralField:
    """Spectral derivative of order ``p``.

    Odd orders zero the Nyquist mode: (i*xi)^p at the unpaired mode would
    break Hermitian symmetry.
    """
    if p < 1:
        raise InvalidInputError(f"derivative order must be >= 1, got {p}")
    mult = (1j * f.grid.wavenumbers) ** p
    coeffs = f.coeffs * mult
    if p % 2 == 1:
        coeffs[f.grid.nyquist_index] = 0.0
    return SpectralField(f.grid, coeffs, real=f.real)


def multiplier(f: SpectralField, m) -> SpectralField:
    """Apply a real Fourier multiplier xi -> m(xi).

    Even multipliers preserve realness; an asymmetric table clears the flag.
    Non-finite values raise, naming the offending wavenumber.
    """
    xi = f.grid.wavenumbers
    with np.errstate(over="ignore", invalid="ignore"):
        try:
            values = np.asarray(m(xi), dtype=float)
            if values.shape != xi.shape:
                raise TypeError
        except TypeError:
            values = np.array([float(m(x)) for x in xi])
    bad = ~np.isfinite(values)
    if np.any(bad):
        xi_bad = float(xi[np.argmax(bad)])
        from .errors import WeightOverflowError

        raise WeightOverflowError(
            f"multiplier is not finite at xi = {xi_bad:.6g}", xi=xi_bad
        )
    even = bool(np.array_equal(values[1:], values[:0:-1]))
    return SpectralField(f.grid, f.coeffs * values, real=f.real and even)


def dealiased_product(
    f1: SpectralField,
    f2: SpectralField,
    f3: SpectralField | None = None,
    pad_factor: int = 2,
) -> SpectralField:
    """Pointwise product of two or three fields, dealiased by zero padding.

    Factor-2 padding makes quadratic and cubic convolutions exact for the
    retained modes.  One corner is excluded: a cubic of fields with O(1)
    Nyquist amplitude picks up a |c_nyq|^3 alias in the Nyquist slot, which
    is round-off-cubed for the spectrally resolved fields this package
    computes with; pass ``pad_factor=3`` to remove it entirely.
    """
    factors = [f1, f2] if f3 is None else [f1, f2, f3]
    grid = f1.grid
    for f in factors:
        if f.grid is not grid and f.grid != grid:
            raise InvalidInputError("dealiased_product requires fields on one grid")
    if pad_factor < 2:
        raise InvalidInputError(f"pad_factor must be >= 2, got {pad_factor}")
    m = grid.n * pad_factor
    prod = factors[0].samples(pad_factor)
    for f in factors[1:]:
        prod = prod * f.samples(pad_factor)
    coeffs_m = _padded_phase(m) * np.fft.fft(prod) / m
    coeffs = _truncate(coeffs_m, grid.n)
    real = all(f.real for f in factors)
    return SpectralField(grid, coeffs, real=real)


def product_integral(*fields: SpectralField) -> float:
    """integral over the box of the pointwise product of the given fields.

    Evaluated on a grid padded beyond the product bandwidth, so the rectangle
    rule is exact (to round-off) for band-limited factors; degree up to six
    is supported alias-free.
    """
    grid = fields[0].grid
    for f in fields[1:]:
        if f.grid != grid:
            raise InvalidInputError("product_integral requires fields on one grid")
    degree = len(fields)
    pad = degree // 2 + 1
    m = grid.n * pad
    prod = fields[0].samples(pad)
    for f in fields[1:]:
        prod = prod * f.samples(pad)
    dx_pad = 2.0 * grid.half_length / m
    return float(np.sum(prod).real * dx_pad)


def lp_norm(f: SpectralField, p) -> float:
    """L^p norm over the box by trapezoid quadrature, p in {2, 4, 6, inf}."""
    if not f.real:
        raise InvalidInputError("lp_norm expects a real-valued field")
    u = f.samples()
    if p == np.inf or p == "inf":
        return float(np.max(np.abs(u)))
    if p not in (2, 4, 6):
        raise InvalidInputError(f"unsupported p = {p}; use 2, 4, 6 or inf")
    return float(np.sum(np.abs(u) ** p) * f.grid.dx) ** (1.0 / p)
