"""Zeta, its logarithmic derivative, digamma, xi, and principal log/arg.

Evaluation routes
-----------------
The workhorse is Euler-Maclaurin summation,

    zeta(s) = sum_{n<N} n^-s  +  N^(1-s)/(s-1)  +  N^-s/2
              + sum_{k=1..M} B_2k/(2k)! (s)_{2k-1} N^(1-s-2k)  +  R_{N,M}(s),

with the classical remainder bound
|R| <= |B_{2M+2}/(2M+2)! (s)_{2M+1} N^(-s-2M-1)| * |s+2M+1|/(sigma+2M+1),
valid for sigma > -(2M+1). N is escalated with |Im s| until the bound meets
the configured tolerance. zeta' is the termwise derivative with an analogous
bound. For sigma <= -1 both are continued through the functional equation.

An independent cross-check route, ``zeta_alternating``, sums the alternating
Dirichlet eta series with an Euler-transformed tail and divides by
(1 - 2^(1-s)). It shares no code with the Euler-Maclaurin path and is the
oracle used by the verification suite.

Both engines of ``PrecisionConfig`` are implemented: scalar mpmath at
configured digits, and a vectorized complex128 path (``*_batch``) used by the
quadrature, zero-scan, and universality modules.
"""
from __future__ import annotations

import math
from typing import Tuple

import numpy as np
import mpmath as mp

from .errors import (
    DomainError,
    NearSingularity,
    PoleAtNonpositiveInteger,
    PoleAtOne,
    PrecisionExhausted,
    ZeroArgument,
)
from .precision import (
    DEFAULT_CONFIG,
    EXCLUSION_RADIUS,
    F64_ROUNDOFF,
    FLAG_RADIUS,
    ComplexValue,
    PrecisionConfig,
    as_complex,
    as_mpc,
)

_TWO_PI = 2.0 * math.pi

# B_2k/(2k)! as floats, k = 0..40; enough for every double-engine plan.
_B2K_OVER_FACT = [float(mp.bernoulli(2 * k) / mp.factorial(2 * k)) for k in range(41)]

_F64_MAX_T = 2.5e4  # desk-scale ceiling; beyond this the plan escalation gives up


# ---------------------------------------------------------------------------
# Euler-Maclaurin plan selection
# ---------------------------------------------------------------------------

def _trunc_bound_log(sigma, t, N, M):
    """log of the Euler-Maclaurin remainder bound (vectorized over inputs)."""
    sigma = np.asarray(sigma, dtype=float)
    t = np.asarray(t, dtype=float)
    N = np.asarray(N, dtype=float)
    lp = np.zeros(np.broadcast(sigma, t, N).shape)
    for j in range(2 * M + 1):
        # the clip only matters where a factor of (s)_{2M+1} vanishes exactly
        lp = lp + 0.5 * np.log(np.maximum((sigma + j) ** 2 + t * t, 1e-300))
    lb = math.log(2.2) - (2 * M + 2) * math.log(_TWO_PI)
    tail_factor = np.hypot(sigma + 2 * M + 1, t) / (sigma + 2 * M + 1)
    return lb + lp + (-sigma - 2 * M - 1) * np.log(N) + np.log(tail_factor)


def _f64_choose_N(sigma, t, M, cutoff_N, tol):
    """Per-point truncation N meeting tol; pure function of the inputs."""
    t = np.abs(np.asarray(t, dtype=float))
    sigma = np.asarray(sigma, dtype=float)
    N = np.maximum(cutoff_N, np.ceil(0.55 * (t + 2 * M)) + 8).astype(np.int64)
    logtol = math.log(0.25 * tol)
    for _ in range(14):
        bad = _trunc_bound_log(sigma, t, N, M) > logtol
        if not np.any(bad):
            break
        N = np.where(bad, (N * 13) // 10 + 4, N)
    else:
        raise PrecisionExhausted(
            f"Euler-Maclaurin cannot reach tol={tol:g} in double precision")
    # quantize upward so batches share few distinct N (bound only improves)
    return ((N + 15) // 16) * 16


# ---------------------------------------------------------------------------
# complex128 engine
# ---------------------------------------------------------------------------

def _em_f64_group(s, N, M, want_prime):
    """Euler-Maclaurin at shared (N, M) for a complex128 batch."""
    n = np.arange(1, N, dtype=np.float64)
    ln_n = np.log(n)
    E = np.exp(-np.multiply.outer(s, ln_n))
    vals = E.sum(axis=1)
    lnN = math.log(N)
    NmS = np.exp(-s * lnN)
    vals = vals + N * NmS / (s - 1.0) + 0.5 * NmS
    if want_prime:
        dvals = -(E * ln_n).sum(axis=1)
        dvals = dvals - lnN * N * NmS / (s - 1.0) - N * NmS / (s - 1.0) ** 2
        dvals = dvals - 0.5 * lnN * NmS
    poch = np.ones_like(s)
    dpoch = np.zeros_like(s)
    Npow = NmS * N  # N^(1-s)
    j = 0
    invN2 = 1.0 / (float(N) * float(N))
    for k in range(1, M + 1):
        while j <= 2 * k - 2:
            if want_prime:
                dpoch = dpoch * (s + j) + poch
            poch = poch * (s + j)
            j += 1
        Npow = Npow * invN2  # N^(1-s-2k)
        c = _B2K_OVER_FACT[k]
        vals = vals + c * poch * Npow
        if want_prime:
            dvals = dvals + c * (dpoch - poch * lnN) * Npow
    if want_prime:
        return vals, dvals
    return vals, None


def _f64_errors(s, N, M, want_prime):
    sigma = s.real
    t = np.abs(s.imag)
    trunc = np.exp(_trunc_bound_log(sigma, t, N, M))
    with np.errstate(divide="ignore"):
        sumabs = np.where(
            np.abs(sigma - 1.0) > 1e-9,
            1.0 + np.abs((np.power(N.astype(float), 1.0 - sigma) - 1.0) / (1.0 - sigma)),
            1.0 + np.log(N.astype(float)),
        )
    edge = np.power(N.astype(float), 1.0 - sigma) / np.maximum(np.abs(s - 1.0), 1e-3)
    ro = F64_ROUNDOFF * (3.0 + sumabs + edge)
    err = trunc + ro
    if not want_prime:
        return err, None
    lnN = np.log(N.astype(float))
    lever = lnN + 2 * M + 2 + 1.0 / np.maximum(np.abs(s), 0.1)
    derr = trunc * lever + ro * (1.0 + lnN)
    return err, derr


def zeta_batch(s_arr, cfg: PrecisionConfig, want_prime: bool = False):
    """Vectorized zeta (and optionally zeta') for complex128 inputs.

    Requires the double engine (cfg.working_digits <= 15) and Re s >= -1.
    Returns (vals, dvals_or_None, errs, derrs_or_None).
    """
    if not cfg.uses_f64:
        raise DomainError("zeta_batch requires the double-precision engine")
    s = np.asarray(s_arr, dtype=np.complex128).ravel()
    if s.size == 0:
        z = np.empty(0, dtype=np.complex128)
        f = np.empty(0, dtype=float)
        return z, (z.copy() if want_prime else None), f, (f.copy() if want_prime else None)
    if np.any(s.real < -1.0 - 1e-12):
        raise DomainError("batch evaluation covers Re s >= -1 only")
    if np.any(np.abs(s - 1.0) < EXCLUSION_RADIUS):
        raise PoleAtOne("batch point inside the exclusion radius of s=1")
    if np.any(np.abs(s.imag) > _F64_MAX_T):
        raise PrecisionExhausted(f"|Im s| beyond the desk ceiling {_F64_MAX_T:g}")
    M = min(cfg.euler_maclaurin_terms, 20)
    N = _f64_choose_N(s.real, s.imag, M, cfg.cutoff_N, cfg.target_abs_tol)
    vals = np.empty_like(s)
    dvals = np.empty_like(s) if want_prime else None
    for Nv in np.unique(N):
        idx = np.nonzero(N == Nv)[0]
        v, dv = _em_f64_group(s[idx], int(Nv), M, want_prime)
        vals[idx] = v
        if want_prime:
            dvals[idx] = dv
    errs, derrs = _f64_errors(s, N, M, want_prime)
    return vals, dvals, errs, derrs


def log_deriv_batch(s_arr, cfg: PrecisionConfig):
    """Vectorized zeta'/zeta with propagated error bounds (double engine)."""
    vals, dvals, errs, derrs = zeta_batch(s_arr, cfg, want_prime=True)
    az = np.abs(vals)
    ld = dvals / vals
    lerr = (derrs + np.abs(ld) * errs) / az
    return ld, lerr


def digamma_batch(z_arr):
    """Vectorized digamma for complex128 arrays, poles excluded by caller.

    Upward recurrence psi(z) = psi(z+1) - 1/z into |z| >= 12, then the
    standard asymptotic series with eight Bernoulli terms.
    """
    z = np.asarray(z_arr, dtype=np.complex128)
    val = np.zeros_like(z)
    w = z.copy()
    for _ in range(16):
        mask = np.abs(w) < 12.0
        if not mask.any():
            break
        val[mask] -= 1.0 / w[mask]
        w[mask] += 1.0
    r = 1.0 / w
    val = val + np.log(w) - 0.5 * r
    r2 = r * r
    p = r2
    for n in range(1, 9):
        val = val - (float(mp.bernoulli(2 * n)) / (2 * n)) * p
        p = p * r2
    err = np.full(z.shape, 5e-14) * (1.0 + np.abs(val))
    return val, err


# ---------------------------------------------------------------------------
# mpmath engine
# ---------------------------------------------------------------------------

def _mp_choose_N(s, M, cutoff_N, tol):
    t = abs(float(mp.im(s)))
    sigma = float(mp.re(s))
    N = max(cutoff_N, int(math.ceil(0.55 * (t + 2 * M))) + 8,
            int(math.ceil(1.1 * (-math.log10(tol)))))
    for _ in range(40):
        if float(_trunc_bound_log(sigma, t, N, M)) <= math.log(0.25 * tol):
            return N
        N = (N * 13) // 10 + 4
    raise PrecisionExhausted(f"Euler-Maclaurin bound stuck above tol={tol:g}")


def _em_mp(s: mp.mpc, cfg: PrecisionConfig, want_prime: bool):
    M = cfg.euler_maclaurin_terms
    sigma = float(mp.re(s))
    if sigma + 2 * M + 1 <= 0:
        raise PrecisionExhausted("need sigma + 2M + 1 > 0 for the remainder bound")
    tol = cfg.target_abs_tol
    N = _mp_choose_N(s, M, cfg.cutoff_N, tol)
    with mp.workdps(cfg.dps):
        acc = mp.mpc(0)
        dacc = mp.mpc(0)
        for n in range(1, N):
            p = mp.power(n, -s)
            acc += p
            if want_prime and n > 1:
                dacc -= mp.log(n) * p
        NmS = mp.power(N, -s)
        lnN = mp.log(N)
        acc += N * NmS / (s - 1) + NmS / 2
        if want_prime:
            dacc += -lnN * N * NmS / (s - 1) - N * NmS / (s - 1) ** 2
            dacc += -lnN * NmS / 2
        poch = mp.mpc(1)
        dpoch = mp.mpc(0)
        Npow = NmS * N
        j = 0
        for k in range(1, M + 1):
            while j <= 2 * k - 2:
                if want_prime:
                    dpoch = dpoch * (s + j) + poch
                poch = poch * (s + j)
                j += 1
            Npow = Npow / (N * N)
            c = mp.bernoulli(2 * k) / mp.factorial(2 * k)
            acc += c * poch * Npow
            if want_prime:
                dacc += c * (dpoch - poch * lnN) * Npow
        t = abs(float(mp.im(s)))
        trunc = math.exp(float(_trunc_bound_log(sigma, t, N, M)))
        ro = 10.0 ** (-(cfg.dps - 3)) * (3.0 + N ** max(0.0, 1.0 - sigma))
        err = trunc + ro
        if want_prime:
            lever = math.log(N) + 2 * M + 2 + 1.0 / max(abs(complex(s)), 0.1)
            derr = trunc * lever + ro * (1.0 + math.log(N))
            return acc, dacc, err, derr
        return acc, None, err, None


def _chi_mp(s) -> mp.mpc:
    """chi(s) = pi^(s-1/2) Gamma((1-s)/2) / Gamma(s/2), zeta(s) = chi zeta(1-s).

    The reciprocal gamma keeps this entire across the trivial zeros s = -2k,
    where 1/Gamma(s/2) vanishes."""
    return mp.power(mp.pi, s - mp.mpf(1) / 2) * mp.gamma((1 - s) / 2) \
        * mp.rgamma(s / 2)


def _zeta_scalar(s: mp.mpc, cfg: PrecisionConfig, want_prime: bool):
    """Scalar zeta/zeta' at any s != 1 (functional equation for Re s <= -1)."""
    if float(mp.re(s)) > -1.0:
        return _em_mp(s, cfg, want_prime)
    with mp.workdps(cfg.dps):
        s1 = 1 - s
        v1, d1, e1, de1 = _em_mp(s1, cfg, want_prime)
        chi = _chi_mp(s)
        val = chi * v1
        scale = float(abs(chi))
        err = scale * e1 + 10.0 ** (-(cfg.dps - 4)) * float(abs(val) + 1)
        if not want_prime:
            return val, None, err, None
        half = s / 2
        near_trivial = abs(half - mp.nint(half)) < 0.01 and float(mp.re(half)) < 0.25
        if near_trivial:
            # log-derivative form degenerates at the Gamma pole; chi is
            # entire, so differentiate it directly
            dchi = mp.diff(_chi_mp, s)
        else:
            dchi = chi * (mp.log(mp.pi) - mp.digamma((1 - s) / 2) / 2
                          - mp.digamma(s / 2) / 2)
        dval = dchi * v1 - chi * d1
        derr = scale * de1 + float(abs(dchi)) * e1 \
            + 10.0 ** (-(cfg.dps - 6)) * float(abs(dval) + 1)
        return val, dval, err, derr


# ---------------------------------------------------------------------------
# public scalar operations
# ---------------------------------------------------------------------------

def _check_pole(s):
    if abs(as_complex(s) - 1.0) < EXCLUSION_RADIUS:
        raise PoleAtOne(f"s={as_complex(s)} within {EXCLUSION_RADIUS:g} of the pole")


def zeta(s, cfg: PrecisionConfig = DEFAULT_CONFIG) -> ComplexValue:
    """zeta(s) by Euler-Maclaurin, continued everywhere except s = 1."""
    _check_pole(s)
    sc = as_complex(s)
    if cfg.uses_f64 and sc.real > -1.0:
        vals, _, errs, _ = zeta_batch([sc], cfg)
        v, e = vals[0], float(errs[0])
        if e > cfg.target_abs_tol:
            raise PrecisionExhausted(f"abs_err={e:g} exceeds tol={cfg.target_abs_tol:g}")
        return ComplexValue(v.real, v.imag, e)
    use_cfg = cfg if not cfg.uses_f64 else PrecisionConfig(
        working_digits=25, target_abs_tol=min(cfg.target_abs_tol, 1e-16),
        euler_maclaurin_terms=max(cfg.euler_maclaurin_terms, 16), cutoff_N=cfg.cutoff_N)
    v, _, e, _ = _zeta_scalar(as_mpc(s), use_cfg, want_prime=False)
    if e > cfg.target_abs_tol:
        raise PrecisionExhausted(f"abs_err={e:g} exceeds tol={cfg.target_abs_tol:g}")
    return ComplexValue(v.real, v.imag, e)


def zeta_prime(s, cfg: PrecisionConfig = DEFAULT_CONFIG) -> ComplexValue:
    """zeta'(s), termwise-differentiated Euler-Maclaurin."""
    _check_pole(s)
    sc = as_complex(s)
    if cfg.uses_f64 and sc.real > -1.0:
        vals, dvals, errs, derrs = zeta_batch([sc], cfg, want_prime=True)
        dv, de = dvals[0], float(derrs[0])
        if de > cfg.target_abs_tol:
            raise PrecisionExhausted(f"abs_err={de:g} exceeds tol={cfg.target_abs_tol:g}")
        return ComplexValue(dv.real, dv.imag, de)
    use_cfg = cfg if not cfg.uses_f64 else PrecisionConfig(
        working_digits=25, target_abs_tol=min(cfg.target_abs_tol, 1e-16),
        euler_maclaurin_terms=max(cfg.euler_maclaurin_terms, 16), cutoff_N=cfg.cutoff_N)
    _, dv, _, de = _zeta_scalar(as_mpc(s), use_cfg, want_prime=True)
    if de > cfg.target_abs_tol:
        raise PrecisionExhausted(f"abs_err={de:g} exceeds tol={cfg.target_abs_tol:g}")
    return ComplexValue(dv.real, dv.imag, de)


def zeta_alternating(s, cfg: PrecisionConfig = DEFAULT_CONFIG) -> ComplexValue:
    """Cross-check route: alternating eta series with an Euler-transformed tail.

    eta(s) = sum (-1)^(n-1) n^-s is summed directly up to a head K scaled
    with |Im s|, and the remaining alternating tail is accelerated by
    repeated averaging of its partial sums (Euler's transformation). Then
    zeta(s) = eta(s) / (1 - 2^(1-s)). Valid for Re s > 0 away from the zeros
    of the denominator; shares nothing with the Euler-Maclaurin route.
    """
    _check_pole(s)
    sm = as_mpc(s)
    if float(mp.re(sm)) <= 0.05:
        raise DomainError("eta-series route needs Re s > 0.05")
    digits = cfg.working_digits
    t = abs(float(mp.im(sm)))
    K = max(int(math.ceil(1.6 * t)), int(math.ceil(3.3 * digits))) + 16
    J = int(math.ceil(2.2 * digits)) + 16
    for _attempt in range(2):
        with mp.workdps(cfg.dps + 6):
            head = mp.mpc(0)
            sign = 1
            for n in range(1, K):
                head += sign * mp.power(n, -sm)
                sign = -sign
            partial = []
            acc = mp.mpc(0)
            sgn = 1
            for m_ in range(J + 1):
                acc += sgn * mp.power(K + m_, -sm)
                partial.append(acc)
                sgn = -sgn
            prev2 = prev1 = None
            row = partial
            for _r in range(J):
                row = [(row[i] + row[i + 1]) / 2 for i in range(len(row) - 1)]
                prev2, prev1 = prev1, row[0]
            tail = row[0]
            denom = 1 - mp.power(2, 1 - sm)
            if abs(denom) < 1e-3:
                raise PrecisionExhausted("near a zero of 1 - 2^(1-s)")
            eta_err = float(abs(tail - prev2)) * 4 if prev2 is not None else float("inf")
            val = (head + sign * tail) / denom
            err = (eta_err + 10.0 ** (-(cfg.dps + 2)) * (K + J)) / float(abs(denom))
            if err <= cfg.target_abs_tol:
                return ComplexValue(val.real, val.imag, err)
        K *= 2
        J += 40
    raise PrecisionExhausted("eta-series acceleration did not converge to tolerance")


def log_deriv_zeta(s, cfg: PrecisionConfig = DEFAULT_CONFIG, zeros=None,
                   exclusion: float = EXCLUSION_RADIUS,
                   flag_radius: float = FLAG_RADIUS) -> ComplexValue:
    """zeta'(s)/zeta(s) with singularity guards against a zero table.

    Raises NearSingularity inside ``exclusion`` of the pole s=1, a tabulated
    nontrivial zero 1/2 +- i gamma, or a trivial zero -2k. Between
    ``exclusion`` and ``flag_radius`` the value is returned with ``flag`` set.
    """
    sc = as_complex(s)
    flag = None
    candidates = [("pole s=1", abs(sc - 1.0))]
    if zeros is not None and len(zeros.gammas) > 0:
        g = zeros.nearest_gamma(abs(sc.imag))
        d = math.hypot(sc.real - 0.5, abs(sc.imag) - g)
        candidates.append((f"zero 1/2+{g:.6f}i", d))
    if sc.real < -1.0:
        k = max(1, round(-sc.real / 2.0))
        candidates.append((f"trivial zero -{2 * k}",
                           math.hypot(sc.real + 2 * k, sc.imag)))
    which, dist = min(candidates, key=lambda c: c[1])
    if dist < exclusion:
        raise NearSingularity(which, dist)
    if dist < flag_radius:
        flag = f"within {flag_radius:g} of {which}"
    if cfg.uses_f64 and sc.real > -1.0:
        vals, errs = log_deriv_batch([sc], cfg)
        return ComplexValue(vals[0].real, vals[0].imag, float(errs[0]), flag)
    v, dv, e, de = _zeta_scalar(as_mpc(s), cfg, want_prime=True)
    av = float(abs(v))
    ld = dv / v
    err = (de + float(abs(ld)) * e) / av
    return ComplexValue(ld.real, ld.imag, err, flag)


def digamma(s, cfg: PrecisionConfig = DEFAULT_CONFIG) -> ComplexValue:
    """psi(s) by upward recurrence psi(s+1) = psi(s) + 1/s into the regime
    where the asymptotic series psi(w) ~ log w - 1/2w - sum B_2n/(2n w^2n)
    (A&S 6.3.18) meets the tolerance."""
    sc = as_complex(s)
    near = round(sc.real)
    if near <= 0 and abs(sc - near) < EXCLUSION_RADIUS:
        raise PoleAtNonpositiveInteger(f"digamma pole at {near}")
    if cfg.uses_f64:
        v, e = digamma_batch(np.array([sc]))
        return ComplexValue(v[0].real, v[0].imag, float(e[0]))
    R = max(10.0, 0.9 * cfg.working_digits)
    with mp.workdps(cfg.dps):
        w = as_mpc(s)
        acc = mp.mpc(0)
        guard = 0
        while abs(w) < R and guard < int(R) + 4:
            acc -= 1 / w
            w += 1
            guard += 1
        r = 1 / w
        acc += mp.log(w) - r / 2
        r2 = r * r
        p = r2
        tol = cfg.target_abs_tol
        err = None
        last = float("inf")
        for n in range(1, 64):
            term = (mp.bernoulli(2 * n) / (2 * n)) * p
            tmag = float(abs(term))
            if tmag > last:
                err = 2 * last
                break
            acc -= term
            p = p * r2
            last = tmag
            if tmag < tol / 8:
                err = 2 * tmag
                break
        if err is None or err > tol:
            raise PrecisionExhausted("digamma asymptotic series stalled above tolerance")
        err += 10.0 ** (-(cfg.dps - 3)) * (1 + float(abs(acc)))
        return ComplexValue(acc.real, acc.imag, err)


def digamma_asymptotic(s, terms: int = 8, dps: int = 50) -> mp.mpc:
    """Plain truncation of the large-|s| series, no recurrence; for comparing
    against the recurrence-shifted route within the truncation's own bound."""
    with mp.workdps(dps):
        w = as_mpc(s)
        v = mp.log(w) - 1 / (2 * w)
        p = 1 / (w * w)
        for n in range(1, terms + 1):
            v -= (mp.bernoulli(2 * n) / (2 * n)) * p
            p = p / (w * w)
        return v


def digamma_asymptotic_remainder(s, terms: int = 8) -> float:
    """Magnitude bound for the first omitted term of ``digamma_asymptotic``."""
    w = abs(as_complex(s))
    n = terms + 1
    return 2.0 * abs(float(mp.bernoulli(2 * n))) / (2 * n * w ** (2 * n))


def digamma_weierstrass(s, terms: int = 200_000) -> complex:
    """Cross-check oracle from the product form of Gamma:

        psi(z) = -C - 1/z + sum_{k>=1} z/(k(z+k)).

    The tail beyond ``terms`` is corrected through second order in 1/K, good
    to ~|z|^3/K^3. Intended for |z| <= ~20 in tests, not production use.
    """
    z = as_complex(s)
    k = np.arange(1, terms + 1, dtype=np.float64)
    ssum = np.sum(z / (k * (z + k)))
    K = float(terms)
    tail = z * (1.0 / K - (z + 1.0) / (2.0 * K * K))
    return complex(-float(mp.euler) - 1.0 / z + ssum + tail)


def xi(s, cfg: PrecisionConfig = DEFAULT_CONFIG) -> ComplexValue:
    """Completed zeta, xi(s) = 1/2 s(s-1) pi^(-s/2) Gamma(s/2) zeta(s).

    The pi^(-s/2) factor makes the reflection xi(s) = xi(1-s) exact; entire,
    so the pole of zeta and the Gamma poles are removable and handled via
    the Stieltjes expansion of (s-1) zeta(s) near s = 1 (and symmetry near
    s = 0).
    """
    sm = as_mpc(s)
    if abs(as_complex(s)) < 1e-4:
        out = xi(1 - sm, cfg)
        return out
    with mp.workdps(cfg.dps):
        if abs(complex(sm - 1)) < 1e-4:
            u = sm - 1
            # (s-1) zeta(s) = 1 + sum (-1)^n gamma_n u^(n+1) / n!
            reg = mp.mpf(1)
            fac = mp.mpf(1)
            up = u
            for n_ in range(0, 4):
                reg += (-1) ** n_ * mp.stieltjes(n_) * up / fac
                up *= u
                fac *= n_ + 1
            val = mp.power(mp.pi, -sm / 2) * mp.gamma(sm / 2 + 1) * reg
        else:
            z = zeta(sm, cfg)
            zv = mp.mpc(z.re, z.im)
            val = mp.mpf(1) / 2 * sm * (sm - 1) * mp.power(mp.pi, -sm / 2) \
                * mp.gamma(sm / 2) * zv
        err = 10.0 ** (-(cfg.dps - 6)) * (1 + float(abs(val)))
        return ComplexValue(val.real, val.imag, err)


def principal_log_arg(z) -> Tuple[float, float]:
    """Principal branch: log z = log|z| + i arg(z) with arg in (-pi, pi]."""
    zc = as_complex(z)
    if zc == 0:
        raise ZeroArgument("principal log/arg of 0")
    a = math.atan2(zc.imag, zc.real)
    if a == -math.pi:
        a = math.pi
    return math.log(abs(zc)), a
