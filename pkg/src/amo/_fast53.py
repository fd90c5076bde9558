"""Vectorized interval kernels for the native 53-bit regime.

Intervals are (lo, hi) float64 numpy arrays.  Outward rounding is one
``nextafter`` step past the round-to-nearest result of each elementwise
operation, which is sound because round-to-nearest is within half an ulp.
No dot-product/BLAS accumulation is used anywhere, so no assumptions about
summation order are needed.
"""
from __future__ import annotations

import numpy as np

_NINF = -np.inf
_PINF = np.inf


def dn(x):
    return np.nextafter(x, _NINF)


def up(x):
    return np.nextafter(x, _PINF)


def iv_add(alo, ahi, blo, bhi):
    return dn(alo + blo), up(ahi + bhi)


def iv_sub(alo, ahi, blo, bhi):
    return dn(alo - bhi), up(ahi - blo)


def iv_mul(alo, ahi, blo, bhi):
    p1 = alo * blo
    p2 = alo * bhi
    p3 = ahi * blo
    p4 = ahi * bhi
    lo = np.minimum(np.minimum(p1, p2), np.minimum(p3, p4))
    hi = np.maximum(np.maximum(p1, p2), np.maximum(p3, p4))
    return dn(lo), up(hi)


def iv_abs_hi(alo, ahi):
    """Upper bound of |interval| per entry."""
    return np.maximum(np.abs(alo), np.abs(ahi))


def sum_bounds(x: np.ndarray) -> tuple[float, float]:
    """Rigorous lower/upper bounds on the exact sum of nonnegative floats.

    Valid for any summation order numpy may use: the classical bound
    |computed - exact| <= (n-1) u sum(x)."""
    n = x.size
    s = float(np.sum(x))
    if n <= 1 or s == 0.0:
        return s, s
    slack = s * (n * np.finfo(float).eps)
    return max(0.0, dn(dn(s - slack))), up(up(s + slack))


class _Twiddles:
    """Outward-rounded enclosures of cos/sin(2 pi k/N), k = 0..N/2-1."""

    _cache: dict[int, "_Twiddles"] = {}

    def __init__(self, n: int):
        from .rigor import PrecisionContext

        ctx = PrecisionContext(64)
        ks = np.arange(n // 2)
        clo = np.empty(n // 2)
        chi = np.empty(n // 2)
        slo = np.empty(n // 2)
        shi = np.empty(n // 2)
        for k in ks:
            s, c = ctx.sincos2pi(ctx.from_rational(int(k), n))
            clo[k], chi[k] = _to53(c)
            slo[k], shi[k] = _to53(s)
        self.clo, self.chi, self.slo, self.shi = clo, chi, slo, shi

    @classmethod
    def get(cls, n: int) -> "_Twiddles":
        t = cls._cache.get(n)
        if t is None:
            t = cls._cache[n] = _Twiddles(n)
        return t


def _to53(enc):
    lo = float(enc.lo)
    hi = float(enc.hi)
    if lo > enc.lo:
        lo = np.nextafter(lo, _NINF)
    if hi < enc.hi:
        hi = np.nextafter(hi, _PINF)
    return lo, hi


def _bitrev_indices(n: int) -> np.ndarray:
    idx = np.arange(n)
    rev = np.zeros(n, dtype=np.int64)
    bits = n.bit_length() - 1
    for b in range(bits):
        rev |= ((idx >> b) & 1) << (bits - 1 - b)
    return rev


_BITREV: dict[int, np.ndarray] = {}


def fft_interval(relo, rehi, imlo, imhi, inverse: bool):
    """Radix-2 interval FFT, unscaled: X_k = sum_j x_j e^{-+2 pi i jk/N}."""
    n = len(relo)
    if n & (n - 1):
        raise ValueError("length must be a power of two")
    if n == 1:
        return relo.copy(), rehi.copy(), imlo.copy(), imhi.copy()
    rev = _BITREV.get(n)
    if rev is None:
        rev = _BITREV[n] = _bitrev_indices(n)
    rl, rh = relo[rev].copy(), rehi[rev].copy()
    il, ih = imlo[rev].copy(), imhi[rev].copy()
    tw = _Twiddles.get(n)
    size = 2
    while size <= n:
        half = size // 2
        stride = n // size
        k = np.arange(half) * stride
        wcl, wch = tw.clo[k], tw.chi[k]
        if inverse:
            wsl, wsh = tw.slo[k], tw.shi[k]
        else:
            wsl, wsh = -tw.shi[k], -tw.slo[k]
        rl4 = rl.reshape(-1, size)
        rh4 = rh.reshape(-1, size)
        il4 = il.reshape(-1, size)
        ih4 = ih.reshape(-1, size)
        arl, arh = rl4[:, :half], rh4[:, :half]
        ail, aih = il4[:, :half], ih4[:, :half]
        brl, brh = rl4[:, half:], rh4[:, half:]
        bil, bih = il4[:, half:], ih4[:, half:]
        # t = w * b  (complex interval product)
        t1l, t1h = iv_mul(brl, brh, wcl, wch)
        t2l, t2h = iv_mul(bil, bih, wsl, wsh)
        trl, trh = iv_sub(t1l, t1h, t2l, t2h)
        t3l, t3h = iv_mul(brl, brh, wsl, wsh)
        t4l, t4h = iv_mul(bil, bih, wcl, wch)
        til, tih = iv_add(t3l, t3h, t4l, t4h)
        # butterfly
        nrl, nrh = iv_add(arl, arh, trl, trh)
        nil, nih = iv_add(ail, aih, til, tih)
        mrl, mrh = iv_sub(arl, arh, trl, trh)
        mil, mih = iv_sub(ail, aih, til, tih)
        rl4[:, :half], rh4[:, :half] = nrl, nrh
        il4[:, :half], ih4[:, :half] = nil, nih
        rl4[:, half:], rh4[:, half:] = mrl, mrh
        il4[:, half:], ih4[:, half:] = mil, mih
        size *= 2
    return rl, rh, il, ih
