"""Rigorous Fourier models for real maps on the circle.

A :class:`FourierModel` stores enclosure coefficients of a trigonometric
polynomial ``sum_k a_k cos(2 pi k theta) + b_k sin(2 pi k theta)`` together
with a uniform C0 error radius ``err``.  Products go through a rigorous FFT
round-trip; aliasing and truncation mass is absorbed into ``err``.

The FFT kernel dispatches on the precision regime: vectorized float64
interval butterflies at 53 bits, scalar MPFR butterflies otherwise.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

from .rigor import Enclosure, EncMatrix2, PrecisionContext, RigorError

__all__ = [
    "NonPowerOfTwoLength",
    "FourierModel",
    "MatrixModel",
    "rigorous_fft",
    "model_mul",
    "model_rotate",
    "model_sup_bound",
    "model_eval",
    "model_truncate",
    "save_models",
    "load_models",
]


class NonPowerOfTwoLength(RigorError):
    pass


def _err_bound(ctx, *parts) -> "Enclosure":
    """Nonnegative err enclosure [0, sum of upper bounds]."""
    hi = ctx.zero()
    for p in parts:
        hi = hi + p
    return ctx.enclose(0, hi.hi) if hi.hi > 0 else ctx.zero()


def _is_pow2(n: int) -> bool:
    return n > 0 and (n & (n - 1)) == 0


def _next_pow2(n: int) -> int:
    m = 1
    while m < n:
        m *= 2
    return m


@dataclass(frozen=True)
class FourierModel:
    """Trigonometric polynomial with enclosure coefficients plus a uniform
    error radius covering everything the coefficients do not."""

    ctx: PrecisionContext
    degree: int
    acos: tuple
    bsin: tuple
    err: Enclosure

    def __post_init__(self):
        if len(self.acos) != self.degree + 1 or len(self.bsin) != self.degree + 1:
            raise ValueError("coefficient count must be degree + 1")
        if self.err.lo < 0:
            raise ValueError("err must be nonnegative")

    @staticmethod
    def constant(ctx: PrecisionContext, value) -> "FourierModel":
        v = value if isinstance(value, Enclosure) else ctx.point(value)
        return FourierModel(ctx, 0, (v,), (ctx.zero(),), ctx.zero())

    @staticmethod
    def from_coeffs(ctx, acos, bsin, err=None) -> "FourierModel":
        acos = tuple(c if isinstance(c, Enclosure) else ctx.point(c) for c in acos)
        bsin = tuple(c if isinstance(c, Enclosure) else ctx.point(c) for c in bsin)
        return FourierModel(ctx, len(acos) - 1, acos, bsin, err or ctx.zero())

    def pad_to(self, degree: int) -> "FourierModel":
        if degree < self.degree:
            raise ValueError("pad_to cannot lower the degree")
        z = self.ctx.zero()
        extra = (z,) * (degree - self.degree)
        return FourierModel(self.ctx, degree, self.acos + extra, self.bsin + extra, self.err)


def rigorous_fft(ctx: PrecisionContext, node_values: list) -> FourierModel:
    """Interpolating model through enclosure values at nodes j/N.

    The returned coefficients enclose the exact discrete Fourier transform of
    every real sequence selectable from the inputs; ``err`` starts at zero
    because the model represents exactly the trigonometric interpolant
    family.  Cost O(N log N) enclosure operations.
    """
    n = len(node_values)
    if not _is_pow2(n):
        raise NonPowerOfTwoLength(f"need a power of two, got {n}")
    vals = [v if isinstance(v, Enclosure) else ctx.point(v) for v in node_values]
    if ctx.native:
        arrs = _pack_native(vals)
        if arrs is not None:
            return _analyze_native(ctx, *arrs)
    zero = ctx.zero()
    spec_re, spec_im = _fft(ctx, vals, [zero] * n, inverse=False)
    half = n // 2
    inv_n = ctx.point(1) / n
    two = ctx.point(2)
    acos = [spec_re[0] * inv_n]
    bsin = [zero]
    for k in range(1, half):
        acos.append(spec_re[k] * two * inv_n)
        bsin.append(-(spec_im[k] * two) * inv_n)
    if half >= 1:
        acos.append(spec_re[half] * inv_n)
        bsin.append(zero)
    return FourierModel(ctx, half, tuple(acos), tuple(bsin), zero)


def _pack_native(vals):
    import numpy as np

    lo = np.array([e.lo for e in vals])
    hi = np.array([e.hi for e in vals])
    if not (np.isfinite(lo).all() and np.isfinite(hi).all()):
        return None
    return lo, hi


def _analyze_native(ctx, vlo, vhi) -> FourierModel:
    """Array-resident analysis: FFT, then exact power-of-two scaling."""
    import numpy as np

    from ._fast53 import fft_interval

    n = len(vlo)
    z = np.zeros(n)
    rl, rh, il, ih = fft_interval(vlo, vhi, z, z, inverse=False)
    half = n // 2
    s = 2.0 / n  # exact power of two: scaling is error-free
    acos_lo = np.concatenate(([rl[0] / n], rl[1:half] * s, [rl[half] / n]))
    acos_hi = np.concatenate(([rh[0] / n], rh[1:half] * s, [rh[half] / n]))
    bsin_lo = np.concatenate(([0.0], -ih[1:half] * s, [0.0]))
    bsin_hi = np.concatenate(([0.0], -il[1:half] * s, [0.0]))
    acos = tuple(Enclosure(ctx, float(a), float(b)) for a, b in zip(acos_lo, acos_hi))
    bsin = tuple(Enclosure(ctx, float(a), float(b)) for a, b in zip(bsin_lo, bsin_hi))
    return FourierModel(ctx, half, acos, bsin, ctx.zero())


def _synthesize(f: FourierModel, m: int) -> list:
    """Enclosure values of the trig-polynomial part of f at nodes j/m
    (m a power of two with f.degree < m/2).  The err slab is not included."""
    ctx = f.ctx
    if f.degree >= m // 2:
        raise ValueError("synthesis grid too coarse for the degree")
    zero = ctx.zero()
    re = [zero] * m
    im = [zero] * m
    half = ctx.point(1) / 2
    re[0] = f.acos[0]
    for k in range(1, f.degree + 1):
        re[k] = f.acos[k] * half
        im[k] = -(f.bsin[k] * half)
        re[m - k] = f.acos[k] * half
        im[m - k] = f.bsin[k] * half
    out_re, out_im = _fft(ctx, re, im, inverse=True)
    return out_re


def _analyze(ctx: PrecisionContext, vals: list, keep_degree: int) -> tuple:
    """FFT analysis of real enclosure node values; coefficient mass above
    keep_degree is folded into an err bound (second return)."""
    n = len(vals)
    model = rigorous_fft(ctx, vals)
    return model_truncate(model, keep_degree)


def model_truncate(f: FourierModel, degree: int) -> FourierModel:
    """Drop modes above ``degree``, moving their l1 mass into err."""
    if degree >= f.degree:
        return f
    ctx = f.ctx
    extra = ctx.zero()
    for k in range(degree + 1, f.degree + 1):
        extra = extra + ctx.abs(f.acos[k]) + ctx.abs(f.bsin[k])
    err = _err_bound(ctx, f.err, extra)
    return FourierModel(ctx, degree, f.acos[: degree + 1], f.bsin[: degree + 1], err)


def model_mul(f: FourierModel, g: FourierModel) -> FourierModel:
    """Enclosure of the pointwise product, via an FFT round-trip on a grid
    fine enough that the polynomial product is alias-free."""
    ctx = f.ctx
    k_out = f.degree + g.degree
    m = _next_pow2(2 * k_out + 2)
    if ctx.native:
        prod = _mul_native(ctx, f, g, m)
    else:
        fv = _synthesize(f, m)
        gv = _synthesize(g, m)
        pv = [a * b for a, b in zip(fv, gv)]
        prod = rigorous_fft(ctx, pv)
    if prod is not None:
        prod = model_truncate(prod, k_out)
        sup_f = model_sup_bound(f)
        sup_g = model_sup_bound(g)
        cross = sup_f * g.err + sup_g * f.err + f.err * g.err
        err = _err_bound(ctx, prod.err, cross)
        return FourierModel(ctx, prod.degree, prod.acos, prod.bsin, err)
    raise RigorError("non-finite coefficients in model_mul")


def _mul_native(ctx, f, g, m):
    """Array-resident synthesize -> pointwise product -> analyze."""
    import numpy as np

    from ._fast53 import fft_interval, iv_mul

    def synth_arrays(h):
        lo, hi = _pack_native(h.acos)
        blo, bhi = _pack_native(h.bsin)
        relo = np.zeros(m)
        rehi = np.zeros(m)
        imlo = np.zeros(m)
        imhi = np.zeros(m)
        relo[0] = lo[0]
        rehi[0] = hi[0]
        k = h.degree
        relo[1 : k + 1] = lo[1:] / 2  # exact scaling
        rehi[1 : k + 1] = hi[1:] / 2
        imlo[1 : k + 1] = -bhi[1:] / 2
        imhi[1 : k + 1] = -blo[1:] / 2
        relo[m - 1 : m - k - 1 : -1] = lo[1:] / 2
        rehi[m - 1 : m - k - 1 : -1] = hi[1:] / 2
        imlo[m - 1 : m - k - 1 : -1] = blo[1:] / 2
        imhi[m - 1 : m - k - 1 : -1] = bhi[1:] / 2
        rl, rh, il, ih = fft_interval(relo, rehi, imlo, imhi, inverse=True)
        return rl, rh

    for h in (f, g):
        for coeffs in (h.acos, h.bsin):
            if _pack_native(coeffs) is None:
                return None
    flo, fhi = synth_arrays(f)
    glo, ghi = synth_arrays(g)
    plo, phi = iv_mul(flo, fhi, glo, ghi)
    return _analyze_native(ctx, plo, phi)


def model_rotate(f: FourierModel, omega: Enclosure) -> FourierModel:
    """Model of theta -> f(theta + omega); err is unchanged."""
    ctx = f.ctx
    acos = [f.acos[0]]
    bsin = [f.bsin[0]]
    for k in range(1, f.degree + 1):
        ang = omega * k
        s, c = ctx.sincos2pi(ang)
        acos.append(f.acos[k] * c + f.bsin[k] * s)
        bsin.append(f.bsin[k] * c - f.acos[k] * s)
    return FourierModel(ctx, f.degree, tuple(acos), tuple(bsin), f.err)


def model_sup_bound(f: FourierModel) -> Enclosure:
    """l1 coefficient norm plus err: guaranteed >= sup |f|."""
    ctx = f.ctx
    if ctx.native:
        import numpy as np

        from ._fast53 import iv_abs_hi, sum_bounds

        pa, pb = _pack_native(f.acos), _pack_native(f.bsin)
        if pa is not None and pb is not None:
            hi_abs = np.concatenate([iv_abs_hi(*pa), iv_abs_hi(*pb)])
            lo_abs = np.concatenate(
                [np.maximum(0.0, np.maximum(pa[0], -pa[1])),
                 np.maximum(0.0, np.maximum(pb[0], -pb[1]))]
            )
            lo, _ = sum_bounds(lo_abs)
            _, hi = sum_bounds(hi_abs)
            return Enclosure(ctx, lo, hi) + f.err
    s = ctx.zero()
    for k in range(f.degree + 1):
        s = s + ctx.abs(f.acos[k]) + ctx.abs(f.bsin[k])
    return s + f.err


def model_eval(f: FourierModel, theta: Enclosure) -> Enclosure:
    """Enclosure of f over theta, including the +-err slab."""
    ctx = f.ctx
    acc = f.acos[0]
    for k in range(1, f.degree + 1):
        s, c = ctx.sincos2pi(theta * k)
        acc = acc + f.acos[k] * c + f.bsin[k] * s
    return acc + ctx.enclose(-f.err.hi, f.err.hi)


def model_add(f: FourierModel, g: FourierModel) -> FourierModel:
    ctx = f.ctx
    d = max(f.degree, g.degree)
    f, g = f.pad_to(d), g.pad_to(d)
    return FourierModel(
        ctx, d,
        tuple(a + b for a, b in zip(f.acos, g.acos)),
        tuple(a + b for a, b in zip(f.bsin, g.bsin)),
        _err_bound(ctx, f.err, g.err),
    )


def model_sub_const(f: FourierModel, c: Enclosure) -> FourierModel:
    return FourierModel(
        f.ctx, f.degree, (f.acos[0] - c,) + f.acos[1:], f.bsin, f.err
    )


def model_scale(f: FourierModel, s) -> FourierModel:
    ctx = f.ctx
    s = s if isinstance(s, Enclosure) else ctx.point(s)
    sa = ctx.abs(s)
    return FourierModel(
        ctx, f.degree,
        tuple(a * s for a in f.acos),
        tuple(b * s for b in f.bsin),
        ctx.enclose(0, (f.err * sa).hi),
    )


# -- FFT kernel dispatch -------------------------------------------------------


def _fft(ctx: PrecisionContext, re: list, im: list, inverse: bool) -> tuple:
    """Unscaled complex interval FFT: X_k = sum_j x_j e^{-+2 pi i jk/N}.

    No 1/N normalization on either direction; the callers own the scaling
    (analysis divides coefficients by N, synthesis feeds spectral weights
    directly)."""
    if ctx.native:
        return _fft_native(ctx, re, im, inverse)
    return _fft_mpfr(ctx, re, im, inverse)


def _fft_native(ctx, re, im, inverse):
    import numpy as np

    from ._fast53 import fft_interval

    relo = np.array([e.lo for e in re])
    rehi = np.array([e.hi for e in re])
    imlo = np.array([e.lo for e in im])
    imhi = np.array([e.hi for e in im])
    if not (np.isfinite(relo).all() and np.isfinite(rehi).all()
            and np.isfinite(imlo).all() and np.isfinite(imhi).all()):
        return _fft_mpfr(ctx, re, im, inverse)
    rl, rh, il, ih = fft_interval(relo, rehi, imlo, imhi, inverse)
    out_re = [Enclosure(ctx, float(a), float(b)) for a, b in zip(rl, rh)]
    out_im = [Enclosure(ctx, float(a), float(b)) for a, b in zip(il, ih)]
    return out_re, out_im


_TWIDDLE_CACHE: dict = {}


def _twiddles(ctx: PrecisionContext, n: int):
    key = (ctx.precision_bits, n)
    tw = _TWIDDLE_CACHE.get(key)
    if tw is None:
        tw = []
        for k in range(n // 2):
            s, c = ctx.sincos2pi(ctx.from_rational(k, n))
            tw.append((c, s))
        _TWIDDLE_CACHE[key] = tw
    return tw


def _fft_mpfr(ctx, re, im, inverse):
    n = len(re)
    if n == 1:
        return list(re), list(im)
    bits = n.bit_length() - 1
    rev = [0] * n
    for i in range(n):
        r = 0
        for b in range(bits):
            r |= ((i >> b) & 1) << (bits - 1 - b)
        rev[i] = r
    rl = [re[rev[i]] for i in range(n)]
    il = [im[rev[i]] for i in range(n)]
    tw = _twiddles(ctx, n)
    size = 2
    while size <= n:
        half = size // 2
        stride = n // size
        for start in range(0, n, size):
            for j in range(half):
                c, s = tw[j * stride]
                if not inverse:
                    s = -s
                bi = start + j + half
                ai = start + j
                br, bim = rl[bi], il[bi]
                tr = br * c - bim * s
                ti = br * s + bim * c
                ar, aim = rl[ai], il[ai]
                rl[ai] = ar + tr
                il[ai] = aim + ti
                rl[bi] = ar - tr
                il[bi] = aim - ti
        size *= 2
    return rl, il


# -- 2x2 matrices of models ----------------------------------------------------


@dataclass(frozen=True)
class MatrixModel:
    """2x2 matrix of Fourier models sharing one degree."""

    m11: FourierModel
    m12: FourierModel
    m21: FourierModel
    m22: FourierModel

    @property
    def ctx(self):
        return self.m11.ctx

    @property
    def degree(self):
        return max(m.degree for m in self.entries())

    def entries(self):
        return (self.m11, self.m12, self.m21, self.m22)

    @staticmethod
    def constant(ctx: PrecisionContext, mat: EncMatrix2) -> "MatrixModel":
        return MatrixModel(*(FourierModel.constant(ctx, e) for e in mat.entries()))

    def mul(self, other: "MatrixModel") -> "MatrixModel":
        a, b = self, other
        return MatrixModel(
            model_add(model_mul(a.m11, b.m11), model_mul(a.m12, b.m21)),
            model_add(model_mul(a.m11, b.m12), model_mul(a.m12, b.m22)),
            model_add(model_mul(a.m21, b.m11), model_mul(a.m22, b.m21)),
            model_add(model_mul(a.m21, b.m12), model_mul(a.m22, b.m22)),
        )

    def rotate(self, omega: Enclosure) -> "MatrixModel":
        return MatrixModel(*(model_rotate(m, omega) for m in self.entries()))

    def sub_const(self, mat: EncMatrix2) -> "MatrixModel":
        return MatrixModel(
            model_sub_const(self.m11, mat.a11),
            model_sub_const(self.m12, mat.a12),
            model_sub_const(self.m21, mat.a21),
            model_sub_const(self.m22, mat.a22),
        )

    def max_sup_bound(self) -> Enclosure:
        ctx = self.ctx
        m = model_sup_bound(self.m11)
        for e in (self.m12, self.m21, self.m22):
            m = ctx.max(m, model_sup_bound(e))
        return m

    def eval(self, theta: Enclosure) -> EncMatrix2:
        return EncMatrix2(
            model_eval(self.m11, theta),
            model_eval(self.m12, theta),
            model_eval(self.m21, theta),
            model_eval(self.m22, theta),
        )

    def det_model(self) -> FourierModel:
        ctx = self.ctx
        prod1 = model_mul(self.m11, self.m22)
        prod2 = model_mul(self.m12, self.m21)
        return model_add(prod1, model_scale(prod2, ctx.point(-1)))


# -- archival ------------------------------------------------------------------

_MAGIC = b"AMOF\x01"


def _model_payload(f: FourierModel) -> dict:
    return {
        "degree": f.degree,
        "acos": [list(c.to_hex()) for c in f.acos],
        "bsin": [list(c.to_hex()) for c in f.bsin],
        "err": list(f.err.to_hex()),
    }


def _model_from_payload(ctx: PrecisionContext, d: dict) -> FourierModel:
    acos = tuple(Enclosure.from_hex(ctx, *h) for h in d["acos"])
    bsin = tuple(Enclosure.from_hex(ctx, *h) for h in d["bsin"])
    err = Enclosure.from_hex(ctx, *d["err"])
    return FourierModel(ctx, d["degree"], acos, bsin, err)


def save_models(path, models: dict, precision_bits: int) -> None:
    """Binary dump (versioned header + hex-exact payload) of named models."""
    payload = {
        "precision_bits": precision_bits,
        "models": {k: _model_payload(v) for k, v in models.items()},
    }
    with open(path, "wb") as fh:
        fh.write(_MAGIC)
        fh.write(json.dumps(payload).encode())


def load_models(path) -> tuple[PrecisionContext, dict]:
    with open(path, "rb") as fh:
        blob = fh.read()
    if blob[: len(_MAGIC)] != _MAGIC:
        raise RigorError("not a model archive (bad magic/version)")
    payload = json.loads(blob[len(_MAGIC):].decode())
    ctx = PrecisionContext(payload["precision_bits"])
    models = {k: _model_from_payload(ctx, d) for k, d in payload["models"].items()}
    return ctx, models
