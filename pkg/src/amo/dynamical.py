"""Gap certification through cocycle hyperbolicity.

Pipeline: a non-rigorous float stage approximates the stable/unstable
bundles of the transfer cocycle and massages them into an almost-conjugacy
``P2(theta+omega) A(theta) P1(theta) ~ diag(L11, L22)`` with constant
diagonal (a cohomological renormalization makes the multipliers constant);
a rigorous stage re-checks the three sufficient bounds with Fourier-model
arithmetic, then widens the certified energy to an interval via a rank-one
perturbation bound.  Chaining widened balls certifies whole gap intervals.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

import numpy as np

from .fourier import (
    FourierModel,
    MatrixModel,
    model_sub_const,
    model_sup_bound,
    rigorous_fft,
)
from .rigor import Enclosure, EncMatrix2, PrecisionContext, RigorError

__all__ = [
    "DegenerateDirection",
    "SignFlipDetected",
    "ValidationFailed",
    "CoverageFailed",
    "AmbiguousLabel",
    "CocycleSpec",
    "HyperbolicityCertificate",
    "GapCertificate",
    "CertifyPolicy",
    "transfer_matrix",
    "transfer_model",
    "approximate_bundles",
    "validate_certificate",
    "widen_energy",
    "certify_gap_dynamical",
    "certify_resolvent_ray",
    "label_by_rotation",
    "spot_check_certificate",
]

SPECTRUM_NORM_BOUND = 4.0  # |a| > 2 + b sup|cos| = 4 is trivially resolvent at b = 2


class DegenerateDirection(RigorError):
    """Stable/unstable directions too close: energy is (numerically) not in
    a gap."""


class SignFlipDetected(RigorError):
    """Bundle is non-orientable on this cover; retry on the double cover."""


class ValidationFailed(RigorError):
    def __init__(self, sigma=None, tau=None, lam=None, reason=""):
        self.sigma, self.tau, self.lam = sigma, tau, lam
        msg = reason or (
            f"sigma={float(sigma.hi) if sigma else '?'} "
            f"tau={float(tau.hi) if tau else '?'} lam={float(lam.hi) if lam else '?'}"
        )
        super().__init__(msg)


class CoverageFailed(RigorError):
    def __init__(self, frontier: float, target: float, last_error=None):
        self.frontier = frontier
        self.target = target
        super().__init__(f"coverage stalled at {frontier} before reaching {target}: {last_error}")


class AmbiguousLabel(RigorError):
    pass


@dataclass(frozen=True)
class CocycleSpec:
    """Which transfer cocycle to certify: energy, coupling, frequency,
    cover."""

    b: Enclosure
    omega: Enclosure
    energy: Enclosure
    cover: str = "single"  # or "double"

    def __post_init__(self):
        if self.cover not in ("single", "double"):
            raise ValueError("cover must be 'single' or 'double'")

    @property
    def ctx(self) -> PrecisionContext:
        return self.energy.ctx

    def angle_multiplier(self) -> int:
        return 2 if self.cover == "double" else 1

    def effective_omega(self) -> Enclosure:
        if self.cover == "double":
            return self.omega / 2
        return self.omega

    def with_energy(self, a: Enclosure) -> "CocycleSpec":
        return CocycleSpec(self.b, self.omega, a, self.cover)

    def with_cover(self, cover: str) -> "CocycleSpec":
        return CocycleSpec(self.b, self.omega, self.energy, cover)


def transfer_matrix(ctx: PrecisionContext, spec: CocycleSpec, theta: Enclosure) -> EncMatrix2:
    """Schroedinger transfer matrix [[a - b cos(2 pi m theta), -1], [1, 0]]
    with m = 1 (single cover) or 2 (double cover, angle-doubled sampling)."""
    m = spec.angle_multiplier()
    arg = theta * m if m != 1 else theta
    c = spec.energy - spec.b * ctx.cos2pi(arg)
    return EncMatrix2(c, ctx.point(-1), ctx.point(1), ctx.zero())


def transfer_model(ctx: PrecisionContext, spec: CocycleSpec) -> MatrixModel:
    """The transfer matrix as a degree-1 (or 2) matrix of Fourier models."""
    m = spec.angle_multiplier()
    z = ctx.zero()
    coeffs_a = [spec.energy] + [z] * m
    coeffs_a[m] = -spec.b
    top = FourierModel.from_coeffs(ctx, coeffs_a, [z] * (m + 1))
    return MatrixModel(
        top,
        FourierModel.constant(ctx, ctx.point(-1)),
        FourierModel.constant(ctx, ctx.one()),
        FourierModel.constant(ctx, z),
    )


@dataclass(frozen=True)
class HyperbolicityCertificate:
    """Validated data proving uniform hyperbolicity on an energy ball."""

    P1: MatrixModel
    P2: MatrixModel
    lambda11: Enclosure
    lambda22: Enclosure
    sigma: Enclosure
    tau: Enclosure
    lam: Enclosure
    margin: Enclosure
    eps_radius: Enclosure
    a_center: Enclosure
    cover: str
    norm_p1: Enclosure
    norm_p2: Enclosure
    cocycle_negated: bool
    n_modes: int

    def is_valid(self) -> bool:
        return self.margin.lo > 0


@dataclass(frozen=True)
class GapCertificate:
    """A certified open subinterval of a spectral gap."""

    frequency: Enclosure
    label: Optional[int]
    certified_lo: Enclosure
    certified_hi: Enclosure
    method: str
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.certified_lo.hi < self.certified_hi.lo:
            raise ValueError("certified interval is empty at enclosure level")

    def guaranteed_interval(self) -> tuple[float, float]:
        """The (open) interval certainly inside the resolvent."""
        return float(self.certified_lo.hi), float(self.certified_hi.lo)

    def length_lower_bound(self) -> float:
        return float((self.certified_hi - self.certified_lo).lo)


# -- float stage ---------------------------------------------------------------


def _cocycle_nodes(a, b, freq, mul, theta):
    return a - b * np.cos(2 * np.pi * mul * theta)


def _iterate_directions(a, b, freq, mul, n_nodes, transient, cocycle_fn=None):
    """Power iteration for the unstable (forward) and stable (backward)
    directions at all nodes j/n, plus a mean expansion-rate estimate."""
    theta = np.arange(n_nodes) / n_nodes
    if cocycle_fn is None:
        def apply_fwd(th, v):
            c = _cocycle_nodes(a, b, freq, mul, th)
            return np.vstack([c * v[0] - v[1], v[0]])

        def apply_bwd(th, v):
            # inverse of [[c, -1], [1, 0]] is [[0, 1], [-1, c]]
            c = _cocycle_nodes(a, b, freq, mul, th)
            return np.vstack([v[1], -v[0] + c * v[1]])
    else:
        def apply_fwd(th, v):
            m = cocycle_fn(th)
            return np.vstack([m[0, 0] * v[0] + m[0, 1] * v[1],
                              m[1, 0] * v[0] + m[1, 1] * v[1]])

        def apply_bwd(th, v):
            m = cocycle_fn(th)
            det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
            return np.vstack([(m[1, 1] * v[0] - m[0, 1] * v[1]) / det,
                              (-m[1, 0] * v[0] + m[0, 0] * v[1]) / det])

    u = np.tile(np.array([[1.0], [0.7]]), (1, n_nodes))
    loggrow = 0.0
    for k in range(transient, 0, -1):
        u = apply_fwd(theta - k * freq, u)
        norms = np.hypot(u[0], u[1])
        if k <= transient // 2:
            loggrow += float(np.mean(np.log(norms)))
        u /= norms
    s = np.tile(np.array([[0.3], [1.0]]), (1, n_nodes))
    for k in range(transient - 1, -1, -1):
        s = apply_bwd(theta + k * freq, s)
        s /= np.hypot(s[0], s[1])
    lyap = loggrow / max(1, transient - transient // 2)
    return theta, u, s, lyap


def _fix_section_signs(v):
    """Make the direction field continuous along nodes; report whether it
    closes up around the circle."""
    w = v.copy()
    n = w.shape[1]
    dots = w[0, :-1] * w[0, 1:] + w[1, :-1] * w[1, 1:]
    flip = np.cumprod(np.where(dots < 0, -1.0, 1.0))
    w[:, 1:] *= flip
    wraps = w[0, -1] * w[0, 0] + w[1, -1] * w[1, 0] >= 0
    return w, wraps


def _spectral_shift(values, delta):
    """Evaluate the trigonometric interpolant of node samples at nodes + delta."""
    n = len(values)
    spec = np.fft.fft(values)
    k = np.fft.fftfreq(n, d=1.0 / n)
    return np.real(np.fft.ifft(spec * np.exp(2j * np.pi * k * delta)))


def approximate_bundles(
    ctx: PrecisionContext,
    spec: CocycleSpec,
    n_modes: int,
    transient: Optional[int] = None,
    cocycle_fn: Optional[Callable] = None,
    min_det: float = 1e-6,
    min_lyap: float = 5e-4,
):
    """NON-RIGOROUS stage: approximate conjugacy data (P1, P2, Lambda).

    Returns MatrixModels interpolating float node data (so the models
    represent exactly what the rigorous stage validates) and the snapped
    diagonal guess.  Raises :class:`DegenerateDirection` when the energy
    looks spectral, :class:`SignFlipDetected` when the bundles are
    non-orientable on the requested cover.
    """
    if transient is None:
        transient = 8 * n_modes
    a = float(spec.energy.mid)
    b = float(spec.b.mid)
    omega = float(spec.omega.mid)
    mul = spec.angle_multiplier()
    freq = omega / 2 if spec.cover == "double" else omega
    theta, u, s, lyap = _iterate_directions(a, b, freq, mul, n_modes, transient, cocycle_fn)
    dets = s[0] * u[1] - s[1] * u[0]
    if cocycle_fn is None and lyap < min_lyap:
        raise DegenerateDirection(f"expansion rate too small ({lyap:.2e})")
    if np.abs(dets).min() < min_det:
        raise DegenerateDirection(f"bundle angle too small ({np.abs(dets).min():.2e})")
    u, u_ok = _fix_section_signs(u)
    s, s_ok = _fix_section_signs(s)
    if not (u_ok and s_ok):
        raise SignFlipDetected(f"non-orientable bundle on {spec.cover} cover")
    det = s[0] * u[1] - s[1] * u[0]
    if np.mean(det) < 0:
        u = -u
        det = -det
    if det.min() <= 0:
        raise DegenerateDirection("bundle angle changes sign between nodes")
    rt = np.sqrt(det)
    s = s / rt
    u = u / rt
    # multipliers along the dynamics; make them constant by a cohomological
    # rescaling of the columns (one rho for both keeps det P1 = 1)
    u_shift = np.array([_spectral_shift(u[0], freq), _spectral_shift(u[1], freq)])
    s_shift = np.array([_spectral_shift(s[0], freq), _spectral_shift(s[1], freq)])
    if cocycle_fn is None:
        c = _cocycle_nodes(a, b, freq, mul, theta)
        au = np.vstack([c * u[0] - u[1], u[0]])
        a_s = np.vstack([c * s[0] - s[1], s[0]])
    else:
        m = cocycle_fn(theta)
        au = np.vstack([m[0, 0] * u[0] + m[0, 1] * u[1], m[1, 0] * u[0] + m[1, 1] * u[1]])
        a_s = np.vstack([m[0, 0] * s[0] + m[0, 1] * s[1], m[1, 0] * s[0] + m[1, 1] * s[1]])
    lam2 = (au[0] * u_shift[0] + au[1] * u_shift[1]) / (u_shift[0] ** 2 + u_shift[1] ** 2)
    lam1 = (a_s[0] * s_shift[0] + a_s[1] * s_shift[1]) / (s_shift[0] ** 2 + s_shift[1] ** 2)
    sgn = 1.0 if np.mean(lam2) > 0 else -1.0
    if np.any(lam2 * sgn <= 0) or np.any(lam1 * sgn <= 0):
        raise DegenerateDirection("incoherent multiplier signs along the orbit")
    cfun = 0.5 * (np.log(np.abs(lam2)) - np.log(np.abs(lam1)))
    mean_log = float(np.mean(cfun))
    ch = np.fft.fft(cfun) / n_modes
    k = np.fft.fftfreq(n_modes, d=1.0 / n_modes)
    div = np.exp(2j * np.pi * k * freq) - 1.0
    rh = np.zeros(n_modes, dtype=complex)
    rh[1:] = -ch[1:] / div[1:]
    log_rho = np.real(np.fft.ifft(rh * n_modes))
    rho = np.exp(log_rho - np.mean(log_rho))
    u = u / rho
    s = s * rho
    # P2 = pointwise inverse of P1 = [s | u]
    det = s[0] * u[1] - s[1] * u[0]
    p2 = np.array([[u[1], -u[0]], [-s[1], s[0]]]) / det
    p1 = np.array([[s[0], u[0]], [s[1], u[1]]])
    p1m = MatrixModel(*(rigorous_fft(ctx, list(p1[i, j])) for i in (0, 1) for j in (0, 1)))
    p2m = MatrixModel(*(rigorous_fft(ctx, list(p2[i, j])) for i in (0, 1) for j in (0, 1)))
    l22 = sgn * math.exp(mean_log)
    l11 = sgn * math.exp(-mean_log)
    lam_guess = EncMatrix2.diag(ctx.point(l11), ctx.point(l22))
    return p1m, p2m, lam_guess


# -- rigorous stage --------------------------------------------------------------


def validate_certificate(
    ctx: PrecisionContext,
    spec: CocycleSpec,
    P1: MatrixModel,
    P2: MatrixModel,
    lam_guess: EncMatrix2,
    a_model: Optional[MatrixModel] = None,
    det_gate: float = 0.1,
) -> HyperbolicityCertificate:
    """Check the three sufficient hyperbolicity bounds rigorously.

    A negative multiplier pair is handled by validating the negated cocycle,
    which has the same hyperbolicity and projective dynamics.
    """
    l11, l22 = lam_guess.a11, lam_guess.a22
    negated = float(l22.mid) < 0
    if a_model is None:
        a_model = transfer_model(ctx, spec)
    if negated:
        a_model = MatrixModel(*(_model_neg(m) for m in a_model.entries()))
        l11, l22 = -l11, -l22
    if not (l11.lo > 0 and l11.hi < 1 and l22.lo > 1):
        raise ValidationFailed(reason=f"diagonal guess out of order: {l11}, {l22}")
    omega_eff = spec.effective_omega()
    lam_mat = EncMatrix2.diag(l11, l22)
    g = P2.rotate(omega_eff).mul(a_model.mul(P1))
    resid = g.sub_const(lam_mat)
    sigma = resid.max_sup_bound()
    t = P1.mul(P2).sub_const(EncMatrix2.identity(ctx))
    tau = t.max_sup_bound()
    lam = ctx.max(l11, ctx.one() / l22)
    one = ctx.one()
    margin = one - sigma - lam - tau
    det_dev = model_sup_bound(model_sub_const(P1.det_model(), one))
    if not det_dev.hi <= det_gate:
        raise ValidationFailed(sigma, tau, lam, reason=f"det(P1) strays from 1 by {float(det_dev.hi)}")
    norm_p1 = P1.max_sup_bound()
    norm_p2 = P2.max_sup_bound()
    if not margin.lo > 0:
        raise ValidationFailed(sigma, tau, lam)
    cert = HyperbolicityCertificate(
        P1=P1, P2=P2,
        lambda11=l11, lambda22=l22,
        sigma=sigma, tau=tau, lam=lam, margin=margin,
        eps_radius=ctx.zero(),
        a_center=spec.energy, cover=spec.cover,
        norm_p1=norm_p1, norm_p2=norm_p2,
        cocycle_negated=negated, n_modes=max(e.degree for e in P1.entries()),
    )
    eps = widen_energy(cert, P1, P2)
    return replace(cert, eps_radius=eps)


def _model_neg(m: FourierModel):
    from .fourier import model_scale

    return model_scale(m, m.ctx.point(-1))


def widen_energy(cert: HyperbolicityCertificate, P1: MatrixModel, P2: MatrixModel) -> Enclosure:
    """Validated energy half-width: perturbing the energy by eps perturbs the
    conjugated cocycle by eps * P2(theta+omega) [[-1,0],[0,0]] P1(theta), so
    every |eps| < (1 - sigma - lam - tau) / (||P1|| ||P2||) keeps the bounds.
    """
    ctx = cert.margin.ctx
    if not cert.margin.lo > 0:
        return ctx.zero()
    num = ctx.point(cert.margin.lo)
    den = P1.max_sup_bound() * P2.max_sup_bound()
    eps = num / ctx.point(den.hi)
    return ctx.enclose(0, eps.hi) if eps.lo <= 0 else eps


# -- certification driver ----------------------------------------------------------


@dataclass
class CertifyPolicy:
    n_min: int = 64
    n_max: int = 1024
    transient_factor: int = 8
    step_fraction: float = 0.9
    max_steps: int = 20000
    label_kmax: int = 40
    det_gate: float = 0.1

    def mode_ladder(self, n_start: Optional[int] = None):
        n = max(self.n_min, min(n_start or self.n_min, self.n_max))
        while n <= self.n_max:
            yield n
            n *= 2


def validate_energy(
    ctx: PrecisionContext,
    base: CocycleSpec,
    a: float,
    policy: CertifyPolicy,
    cover_hint: str = "single",
    n_hint: Optional[int] = None,
) -> HyperbolicityCertificate:
    """Escalate Fourier modes (and the cover, on sign flips) until one energy
    validates; raises the last failure otherwise."""
    last = None
    covers_first = [cover_hint, "double" if cover_hint == "single" else "single"]
    for n_modes in policy.mode_ladder(n_hint):
        for cover in covers_first:
            spec = base.with_energy(ctx.point(a)).with_cover(cover)
            try:
                p1, p2, lam = approximate_bundles(
                    ctx, spec, n_modes, policy.transient_factor * n_modes
                )
                return validate_certificate(ctx, spec, p1, p2, lam, det_gate=policy.det_gate)
            except SignFlipDetected as e:
                last = e
                continue
            except (ValidationFailed, DegenerateDirection) as e:
                last = e
                break
    raise last if last is not None else ValidationFailed(reason="mode ladder exhausted")


def certify_gap_dynamical(
    ctx: PrecisionContext,
    base: CocycleSpec,
    a_lo: float,
    a_hi: float,
    policy: Optional[CertifyPolicy] = None,
    label: Optional[int] = None,
) -> GapCertificate:
    """Cover [a_lo, a_hi] with validated, overlapping hyperbolicity balls.

    The certificate interval is the connected union of the balls, which
    strictly contains [a_lo, a_hi] when coverage succeeds.
    """
    policy = policy or CertifyPolicy()
    if a_hi < a_lo:
        raise ValueError("empty energy window")
    cover_hint = "single"
    cert0 = validate_energy(ctx, base, a_lo, policy, cover_hint)
    cover_hint = cert0.cover
    n_hint = 2 * cert0.n_modes
    lo_enc = ctx.point(a_lo) - ctx.point(cert0.eps_radius.lo)
    frontier = float((ctx.point(a_lo) + ctx.point(cert0.eps_radius.lo)).lo)
    max_n = cert0.n_modes
    steps = 1
    c = a_lo
    r = float(cert0.eps_radius.lo)
    last_cert = cert0
    while frontier <= a_hi:
        if r <= 0:
            raise CoverageFailed(frontier, a_hi, "zero widening radius")
        c_next = min(c + policy.step_fraction * r, a_hi)
        if c_next <= c:
            raise CoverageFailed(frontier, a_hi, "step underflow")
        cert = None
        for _ in range(60):
            try:
                cand = validate_energy(ctx, base, c_next, policy, cover_hint, n_hint)
            except RigorError as e:
                raise CoverageFailed(frontier, a_hi, e)
            rn = float(cand.eps_radius.lo)
            reach_back = float((ctx.point(c_next) - ctx.point(rn)).hi)
            if reach_back < frontier:
                cert = cand
                break
            c_next = c + (c_next - c) / 2  # overlap failed: shorten the step
            if c_next <= c:
                break
        if cert is None:
            raise CoverageFailed(frontier, a_hi, "balls failed to overlap")
        cover_hint = cert.cover
        n_hint = cert.n_modes  # node count = 2 * degree; retry one level down
        max_n = max(max_n, cert.n_modes)
        steps += 1
        if steps > policy.max_steps:
            raise CoverageFailed(frontier, a_hi, "step budget exhausted")
        c, r = c_next, rn
        frontier = float((ctx.point(c) + ctx.point(r)).lo)
        last_cert = cert
        if c >= a_hi:
            break
    hi_enc = ctx.point(c) + ctx.point(r)
    if label is None:
        try:
            label = label_by_rotation(
                float(base.omega.mid), (a_lo + a_hi) / 2, policy.label_kmax
            )
        except AmbiguousLabel:
            label = None
    return GapCertificate(
        frequency=base.omega,
        label=label,
        certified_lo=lo_enc,
        certified_hi=hi_enc,
        method="dynamical",
        provenance={
            "n_modes": max_n,
            "precision_bits": ctx.precision_bits,
            "steps": steps,
            "cover": last_cert.cover,
            "transient_factor": policy.transient_factor,
            "sigma_last": float(last_cert.sigma.hi),
            "tau_last": float(last_cert.tau.hi),
            "lambda_last": float(last_cert.lam.hi),
        },
    )


def certify_resolvent_ray(
    ctx: PrecisionContext,
    base: CocycleSpec,
    a_from: float,
    direction: int,
    policy: Optional[CertifyPolicy] = None,
) -> GapCertificate:
    """Certify the unbounded resolvent ray beyond ``a_from``.

    Chains hyperbolicity balls outward until the operator-norm bound
    |a| > 2 + b takes over, then the ray to infinity is free.
    """
    policy = policy or CertifyPolicy()
    b_hi = float(base.b.hi)
    norm_edge = 2.0 + b_hi + 1e-9
    lo, hi = (a_from, norm_edge) if direction > 0 else (-norm_edge, a_from)
    inner = certify_gap_dynamical(ctx, base, lo, hi, policy, label=0)
    if direction > 0:
        return GapCertificate(
            frequency=base.omega, label=0,
            certified_lo=inner.certified_lo,
            certified_hi=ctx.pos_infinity(),
            method="dynamical",
            provenance={**inner.provenance, "norm_bound_tail": norm_edge},
        )
    return GapCertificate(
        frequency=base.omega, label=0,
        certified_lo=ctx.neg_infinity(),
        certified_hi=inner.certified_hi,
        method="dynamical",
        provenance={**inner.provenance, "norm_bound_tail": -norm_edge},
    )


# -- labelling (non-rigorous helper) ----------------------------------------------


def label_by_rotation(
    omega: float, a: float, kmax: int = 40, b: float = 2.0, n_steps: int = 60000
) -> int:
    """Estimate the gap label from the rotation number of a long float
    orbit; the integer k minimizing the circular distance |{k omega} - ids|
    wins."""
    ids = estimate_ids(omega, a, b, n_steps)

    def circ(x):
        d = abs(x % 1.0)
        return min(d, 1.0 - d)

    cands = sorted(
        ((circ((k * omega) - ids), k) for k in range(-kmax, kmax + 1)),
        key=lambda t: (t[0], abs(t[1])),
    )
    best, second = cands[0], cands[1]
    if second[0] - best[0] < 2e-3:
        raise AmbiguousLabel(
            f"labels {best[1]} and {second[1]} both match ids={ids:.6f}"
        )
    return best[1]


def estimate_ids(omega: float, a: float, b: float = 2.0, n_steps: int = 60000) -> float:
    """Integrated density of states at energy ``a`` from the density of
    solution sign changes (oscillation count) along one long orbit."""
    theta = 0.1234
    x0, x1 = 0.7, 1.0
    flips = 0
    for _ in range(n_steps):
        c = a - b * math.cos(2 * math.pi * theta)
        x2 = c * x1 - x0
        if x2 == 0.0:
            x2 = 1e-300
        if (x2 > 0) != (x1 > 0):
            flips += 1
        m = abs(x2)
        if m > 1e100:
            x1 /= m
            x2 /= m
        x0, x1 = x1, x2
        theta = (theta + omega) % 1.0
    return 1.0 - flips / n_steps


def spot_check_certificate(
    cert: GapCertificate,
    base_b: float = 2.0,
    n_energies: int = 10,
    seed: int = 0,
    bits: Optional[int] = None,
    policy: Optional[CertifyPolicy] = None,
) -> bool:
    """Re-validate random energies inside a certificate at (by default)
    doubled precision.  Returns True when every sample validates."""
    src_bits = cert.provenance.get("precision_bits", 53)
    ctx = PrecisionContext(bits or 2 * src_bits)
    policy = policy or CertifyPolicy(n_max=1024)
    lo, hi = cert.guaranteed_interval()
    if not math.isfinite(lo):
        lo = hi - 0.5
    if not math.isfinite(hi):
        hi = lo + 0.5
    rng = np.random.default_rng(seed)
    base = CocycleSpec(
        ctx.point(base_b),
        Enclosure.from_hex(ctx, *_freq_hex(cert)),
        ctx.zero(),
    )
    for _ in range(n_energies):
        a = float(rng.uniform(lo, hi))
        validate_energy(ctx, base, a, policy, cert.provenance.get("cover", "single"))
    return True


def _freq_hex(cert: GapCertificate):
    return cert.frequency.to_hex()
