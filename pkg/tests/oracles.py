"""Independent brute-force oracles used to freeze expected values.

Everything here avoids the library's FFT/padding code paths: convolutions are
direct sums over integer mode indices, integrals come from the convolution at
mode zero, and refined-grid evaluation sums the Fourier series explicitly.

Real fields follow the cosine convention for the unpaired Nyquist mode: its
coefficient is split across +-n/2 before any product and the +-n/2 results
fold back into the single Nyquist slot, mirroring how those modes coincide on
the grid's nodes.
"""

import itertools
import math

import numpy as np


def mode_table(n: int):
    """Integer modes k = 0..n/2-1, -n/2..-1 matching FFT coefficient order."""
    return np.rint(np.fft.fftfreq(n, d=1.0 / n)).astype(int)


def unfold(coeffs, n: int):
    """FFT-ordered spectrum -> list of (integer mode, coefficient) pairs with
    the Nyquist coefficient split across +-n/2."""
    modes = mode_table(n)
    half = n // 2
    pairs = []
    for i, k in enumerate(modes):
        c = coeffs[i]
        if c == 0.0:
            continue
        if k == -half:
            pairs.append((-half, 0.5 * c))
            pairs.append((half, 0.5 * c))
        else:
            pairs.append((k, c))
    return pairs


def conv_weighted(spectra, n: int, weight=None):
    """Linear convolution of FFT-ordered spectra, truncated to the grid band.

    ``weight(k_tuple, k)`` optionally multiplies each term of the sum, with
    ``k_tuple`` the integer input modes and ``k`` their sum.  Returns an
    FFT-ordered length-n array; mode sums beyond |n/2| are dropped and the
    +-n/2 sums fold into the Nyquist slot.
    """
    factor_lists = [unfold(s, n) for s in spectra]
    acc: dict[int, complex] = {}
    for combo in itertools.product(*factor_lists):
        ks = tuple(k for k, _ in combo)
        ksum = sum(ks)
        coeff = 1.0 + 0.0j
        for _, c in combo:
            coeff *= c
        if weight is not None:
            coeff *= weight(ks, ksum)
        acc[ksum] = acc.get(ksum, 0.0) + coeff
    modes = mode_table(n)
    half = n // 2
    out = np.zeros(n, dtype=complex)
    for i, k in enumerate(modes):
        if k == -half:
            out[i] = acc.get(-half, 0.0) + acc.get(half, 0.0)
        else:
            out[i] = acc.get(k, 0.0)
    return out


def integral_of_product(spectra, n: int, half_length: float, weight=None):
    """integral over [-L, L) of the product of fields given by their spectra.

    Equals 2L times the full (untruncated) convolution at mode zero.  Terms
    are accumulated with math.fsum so the oracle itself adds no summation
    round-off.
    """
    factor_lists = [unfold(s, n) for s in spectra]
    re_terms: list[float] = []
    im_terms: list[float] = []
    for combo in itertools.product(*factor_lists[:-1]):
        ksum = sum(k for k, _ in combo)
        coeff = 1.0 + 0.0j
        for _, c in combo:
            coeff *= c
        for k_last, c_last in factor_lists[-1]:
            if k_last == -ksum:
                term = coeff * c_last
                if weight is not None:
                    term *= weight(tuple(k for k, _ in combo) + (k_last,), 0)
                re_terms.append(term.real)
                im_terms.append(term.imag)
    return 2.0 * half_length * complex(math.fsum(re_terms), math.fsum(im_terms))


def eval_series(coeffs, n: int, half_length: float, x):
    """Evaluate the field's Fourier series at arbitrary points x."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.zeros(x.shape, dtype=complex)
    for k, c in unfold(coeffs, n):
        out += c * np.exp(1j * (np.pi * k / half_length) * x)
    return out


def refined_integral_of_product(spectra, n: int, half_length: float, refine: int = 4):
    """Rectangle-rule integral of a product evaluated by direct series
    summation on a ``refine`` times finer uniform grid."""
    m = refine * n
    x = -half_length + (2.0 * half_length / m) * np.arange(m)
    prod = np.ones(m, dtype=complex)
    for c in spectra:
        prod *= eval_series(c, n, half_length, x)
    return float(np.sum(prod).real * (2.0 * half_length / m))


def random_real_spectrum(n: int, rng, decay: float = 0.0, include_nyquist: bool = True):
    """Random Hermitian-symmetric spectrum of a real field (FFT order)."""
    modes = mode_table(n)
    coeffs = np.zeros(n, dtype=complex)
    coeffs[0] = rng.standard_normal()
    for i, k in enumerate(modes):
        if k <= 0:
            continue
        c = (rng.standard_normal() + 1j * rng.standard_normal()) * np.exp(-decay * abs(k))
        coeffs[i] = c
        coeffs[np.nonzero(modes == -k)[0][0]] = np.conj(c)
    nyq = np.nonzero(modes == -(n // 2))[0][0]
    coeffs[nyq] = rng.standard_normal() * np.exp(-decay * (n // 2)) if include_nyquist else 0.0
    return coeffs
