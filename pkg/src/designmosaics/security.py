"""Exact security metrics and bounds for mosaic-based security functions.

Covers the distance/divergence toolbox, the wiretap and privacy-amplification
joint distributions, the four semantic-security bounds (mutual-information and
total-variation flavors, BIBD and GDD cases), the per-design exact identities
behind them, the spectral generalization, and the partition sandwich
comparisons.  All logarithms and exponentials are base 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .designs import BIBDParams, GDDParams, IncidenceStructure, classify_gdd, verify_tactical
from .mosaics import Mosaic

INF = math.inf


# ---------------------------------------------------------------------------
# distances, divergences, entropies
# ---------------------------------------------------------------------------

def _pair(P, Q):
    P = np.asarray(P, dtype=float).ravel()
    Q = np.asarray(Q, dtype=float).ravel()
    if P.shape != Q.shape:
        raise ValueError(f"dimension mismatch: {P.shape} vs {Q.shape}")
    return P, Q


def tv(P, Q) -> float:
    """Total variation in the unhalved convention: sum_z |P(z) - Q(z)|."""
    P, Q = _pair(P, Q)
    return float(np.abs(P - Q).sum())


def chi2(P, Q) -> float:
    """sum over {Q > 0} of Q (P/Q - 1)^2."""
    P, Q = _pair(P, Q)
    m = Q > 0
    return float((np.square(P[m] - Q[m]) / Q[m]).sum())


def kl(P, Q) -> float:
    """Kullback-Leibler divergence in bits; +inf when supp(P) escapes supp(Q)."""
    P, Q = _pair(P, Q)
    m = P > 0
    if np.any(Q[m] <= 0):
        return INF
    return float((P[m] * (np.log2(P[m]) - np.log2(Q[m]))).sum())


def exp_d2(P, Q) -> float:
    """2^D2(P||Q) = sum P^2/Q, kept linear to avoid needless log/exp."""
    P, Q = _pair(P, Q)
    m = P > 0
    if np.any(Q[m] <= 0):
        return INF
    return float((np.square(P[m]) / Q[m]).sum())


def d2(P, Q) -> float:
    """Renyi 2-divergence log2 sum P^2/Q; +inf when supp(P) escapes supp(Q)."""
    val = exp_d2(P, Q)
    return INF if val == INF else float(np.log2(val))


def kl_cond(W, Q, P) -> float:
    """D(W || Q | P) = sum_x P(x) D(W(.|x) || Q)."""
    W = np.asarray(W, dtype=float)
    P = np.asarray(P, dtype=float).ravel()
    total = 0.0
    for x in range(W.shape[0]):
        if P[x] > 0:
            term = kl(W[x], Q)
            if term == INF:
                return INF
            total += P[x] * term
    return total


def exp_d2_cond(W, Q, P) -> float:
    """2^D2(W || Q | P) = sum_x P(x) 2^(D2(W(.|x) || Q))."""
    W = np.asarray(W, dtype=float)
    Q = np.asarray(Q, dtype=float).ravel()
    P = np.asarray(P, dtype=float).ravel()
    total = 0.0
    for x in range(W.shape[0]):
        if P[x] > 0:
            term = exp_d2(W[x], Q)
            if term == INF:
                return INF
            total += P[x] * term
    return total


def d2_cond(W, Q, P) -> float:
    val = exp_d2_cond(W, Q, P)
    return INF if val == INF else float(np.log2(val))


def renyi2_entropy(P) -> float:
    """H2(X) = -log2 sum P(x)^2."""
    P = np.asarray(P, dtype=float).ravel()
    return float(-np.log2(np.square(P).sum()))


def mutual_information(P_XY) -> float:
    """I(X ^ Y) = D(P_{Y|X} || P_Y | P_X) from a joint matrix."""
    P = np.asarray(P_XY, dtype=float)
    P_X = P.sum(axis=1)
    P_Y = P.sum(axis=0)
    total = 0.0
    for x in range(P.shape[0]):
        if P_X[x] > 0:
            term = kl(P[x] / P_X[x], P_Y)
            if term == INF:
                return INF
            total += P_X[x] * term
    return total


# ---------------------------------------------------------------------------
# channels and sources
# ---------------------------------------------------------------------------

class Channel:
    """A stochastic matrix W : X -> Z; substochastic rows only when flagged."""

    def __init__(self, W, substochastic=False, tol=1e-12):
        W = np.asarray(W, dtype=float)
        if W.ndim != 2:
            raise ValueError("channel matrix must be two-dimensional")
        if (W < -tol).any():
            raise ValueError("channel entries must be nonnegative")
        sums = W.sum(axis=1)
        if substochastic:
            if (sums > 1 + tol).any():
                raise ValueError("substochastic rows must sum to at most 1")
        elif np.abs(sums - 1).max() > tol:
            x = int(np.abs(sums - 1).argmax())
            raise ValueError(f"row {x} sums to {sums[x]}, not 1")
        self.W = np.clip(W, 0.0, None)
        self.substochastic = substochastic

    @property
    def v(self):
        return self.W.shape[0]

    @property
    def nz(self):
        return self.W.shape[1]

    def output_distribution(self, P_X=None) -> np.ndarray:
        """(P_X W); uniform input by default."""
        if P_X is None:
            return self.W.mean(axis=0)
        return np.asarray(P_X, dtype=float) @ self.W


class JointXZ:
    """A joint distribution P_XZ with every output letter reachable (P_Z > 0)."""

    def __init__(self, P, tol=1e-12):
        P = np.asarray(P, dtype=float)
        if P.ndim != 2:
            raise ValueError("joint matrix must be two-dimensional")
        if (P < -tol).any():
            raise ValueError("joint entries must be nonnegative")
        if abs(P.sum() - 1) > max(tol, 1e-9):
            raise ValueError(f"joint distribution sums to {P.sum()}, not 1")
        self.P = np.clip(P, 0.0, None)
        self.P_Z = self.P.sum(axis=0)
        if (self.P_Z <= 0).any():
            bad = np.flatnonzero(self.P_Z <= 0)
            raise ValueError(f"P_Z must be positive everywhere; zero at z = {bad.tolist()}")
        self.P_X = self.P.sum(axis=1)

    @property
    def v(self):
        return self.P.shape[0]

    @property
    def nz(self):
        return self.P.shape[1]

    def conditional_given_z(self) -> np.ndarray:
        """P_{X|Z} as a (v, nz) column-conditional matrix."""
        return self.P / self.P_Z[None, :]

    def h2_given_z(self) -> np.ndarray:
        """H2(X | Z = z) for every z."""
        cond = self.conditional_given_z()
        return -np.log2(np.square(cond).sum(axis=0))

    def h2_classes_given_z(self, partition) -> np.ndarray:
        """H2(X_Pi | Z = z) for the coarsened variable P(X_i | z)."""
        cond = self.conditional_given_z()
        mass = np.stack([cond[list(cls)].sum(axis=0) for cls in partition])
        return -np.log2(np.square(mass).sum(axis=0))


# ---------------------------------------------------------------------------
# joint distributions of mosaic-based schemes
# ---------------------------------------------------------------------------

class WiretapJoint:
    """P_{ZXSA}(z,x,s,alpha) = w(z|x) N_alpha(x,s) P_A(alpha) / (bk).

    Stores the stack P_{ZS|A=alpha}, which is independent of P_A; the output
    marginal equals (P_X W) for every alpha, checked at build time.
    """

    def __init__(self, mosaic: Mosaic, channel: Channel, p_a=None, tol=1e-10):
        if channel.v != mosaic.v:
            raise ValueError(f"channel input size {channel.v} != mosaic point count {mosaic.v}")
        if p_a is None:
            p_a = np.full(mosaic.a, 1.0 / mosaic.a)
        p_a = np.asarray(p_a, dtype=float).ravel()
        if p_a.shape != (mosaic.a,) or (p_a < 0).any() or abs(p_a.sum() - 1) > 1e-9:
            raise ValueError("P_A must be a distribution on the color set")
        N = mosaic.member_matrices().astype(float)
        self.cond_zs = np.einsum("xz,axs->azs", channel.W, N) / (mosaic.b * mosaic.k)
        self.p_z = channel.output_distribution()
        self.p_a = p_a
        self.mosaic = mosaic
        self.channel = channel
        marg = self.cond_zs.sum(axis=2)
        err = np.abs(marg - self.p_z[None, :]).max()
        if err > tol:
            raise AssertionError(f"per-color Z-marginal deviates from P_X W by {err}")

    @property
    def p_zsa(self) -> np.ndarray:
        return self.cond_zs * self.p_a[:, None, None]

    def tensor(self) -> np.ndarray:
        """The full P_{ZXSA} array, axes (z, x, s, alpha)."""
        N = self.mosaic.member_matrices().astype(float)
        t = np.einsum("xz,axs,a->zxsa", self.channel.W, N, self.p_a)
        return t / (self.mosaic.b * self.mosaic.k)


class PAJoint:
    """P_{XZSA}(x,z,s,alpha) = P_XZ(x,z) N_alpha(x,s) / b.

    The key marginal is uniform; the seed law given the observation is
    P_{S|Z=z,A=alpha}(s) = (p_z^T N_alpha)(s) / (r p_z^T 1).
    """

    def __init__(self, mosaic: Mosaic, joint: JointXZ, tol=1e-10):
        if joint.v != mosaic.v:
            raise ValueError(f"source size {joint.v} != mosaic point count {mosaic.v}")
        N = mosaic.member_matrices().astype(float)
        r = mosaic.b * mosaic.k // mosaic.v
        pzN = np.einsum("xz,axs->azs", joint.P, N)
        self.cond_zs = pzN * (mosaic.a / mosaic.b)                 # P_{ZS|A=alpha}
        self.cond_s_given_za = pzN / (r * joint.P_Z[None, :, None])
        self.p_z = joint.P_Z
        self.p_a = np.full(mosaic.a, 1.0 / mosaic.a)
        self.mosaic = mosaic
        self.joint = joint
        totals = self.cond_zs.sum(axis=(1, 2))
        if np.abs(totals - 1).max() > tol:
            raise AssertionError("conditional laws P_{ZS|A} do not normalize")

    @property
    def p_zsa(self) -> np.ndarray:
        return self.cond_zs / self.mosaic.a

    def tensor(self) -> np.ndarray:
        """The full P_{XZSA} array, axes (x, z, s, alpha)."""
        N = self.mosaic.member_matrices().astype(float)
        return np.einsum("xz,axs->xzsa", self.joint.P, N) / self.mosaic.b


def key_marginal_exact(mosaic: Mosaic, P_XZ) -> list:
    """The key marginal P_A in exact rational arithmetic.

    Every float entry of P_XZ is taken as the exact binary rational it is, so
    uniformity of the result is an identity, not an approximation.
    """
    P = np.asarray(P_XZ, dtype=float)
    row_sums = mosaic.member_matrices().sum(axis=2)   # (a, v) replication counts
    p_x = [sum(Fraction(float(t)) for t in row) for row in P]
    out = []
    for alpha in range(mosaic.a):
        acc = Fraction(0)
        for x in range(mosaic.v):
            acc += p_x[x] * int(row_sums[alpha, x])
        out.append(acc / mosaic.b)
    return out


# ---------------------------------------------------------------------------
# exact metrics
# ---------------------------------------------------------------------------

def exact_wiretap_metrics(J: WiretapJoint) -> dict:
    """I(A ^ Z,S), the per-color conditional divergences given S, and the
    total-variation metric with its doubling upper bound."""
    cond = J.cond_zs
    a, nz, b = cond.shape
    p_a = J.p_a
    p_zsa = cond * p_a[:, None, None]
    p_zs = p_zsa.sum(axis=0)

    mi = 0.0
    for al in range(a):
        if p_a[al] > 0:
            mi += p_a[al] * kl(cond[al], p_zs)

    unif_b = np.full(b, 1.0 / b)
    max_kl = -INF
    max_d2 = -INF
    for al in range(a):
        rows = (b * cond[al]).T          # (b, nz): P_{Z|S=s,A=alpha}
        max_kl = max(max_kl, kl_cond(rows, J.p_z, unif_b))
        max_d2 = max(max_d2, d2_cond(rows, J.p_z, unif_b))

    ref = J.p_z[:, None] / b
    tv_metric = float(np.abs(p_zsa - p_zs[None, :, :] * p_a[:, None, None]).sum())
    tv_upper = 2.0 * max(float(np.abs(cond[al] - ref).sum()) for al in range(a))

    return {
        "mutual_information": mi,
        "max_kl_cond": max_kl,
        "max_d2_cond": max_d2,
        "tv": tv_metric,
        "tv_upper": tv_upper,
        "chain_ok": bool(mi <= max_kl + 1e-12 and max_kl <= max_d2 + 1e-12),
        "tv_chain_ok": bool(tv_metric <= tv_upper + 1e-12),
    }


def exact_pa_metrics(J: PAJoint) -> dict:
    """max-over-key divergences from P_Z P_S, the strong-secrecy mutual
    information, and the key-uniformity deviation."""
    cond = J.cond_zs
    a, nz, b = cond.shape
    ref = np.broadcast_to(J.p_z[:, None] / b, (nz, b))

    max_kl = max(kl(cond[al], ref) for al in range(a))
    max_tv = max(tv(cond[al], ref) for al in range(a))

    p_zs = cond.mean(axis=0)
    mi = sum(kl(cond[al], p_zs) for al in range(a)) / a

    unif_b = np.full(b, 1.0 / b)
    max_d2_s = -INF
    for al in range(a):
        for z in range(nz):
            max_d2_s = max(max_d2_s, d2(J.cond_s_given_za[al, z], unif_b))

    key_dev = float(np.abs(cond.sum(axis=(1, 2)) / a - 1.0 / a).max())

    return {
        "max_kl": max_kl,
        "max_tv": max_tv,
        "mutual_information": mi,
        "max_d2_seed": max_d2_s,
        "key_uniformity_deviation": key_dev,
        "strong_secrecy_ok": bool(mi <= max_kl + 1e-12),
    }


# ---------------------------------------------------------------------------
# theorem bounds
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BoundReport:
    value: float
    coefficients: dict
    specialization: Optional[dict] = None


def _exp_d2_w_uniform(W) -> float:
    """2^D2(W || P_X W | P_X) for uniform P_X, in linear scale."""
    W = np.asarray(W, dtype=float)
    pz = W.mean(axis=0)
    m = pz > 0
    return float((np.square(W[:, m]) / pz[m]).sum() / W.shape[0])


def _exp_d2_pi_uniform(W, partition) -> float:
    """2^D2(R_Pi W || P_X W | P_Pi): class-averaged rows against the full mixture."""
    W = np.asarray(W, dtype=float)
    pz = W.mean(axis=0)
    rows = np.stack([W[list(cls)].mean(axis=0) for cls in partition])
    m = pz > 0
    return float((np.square(rows[:, m]) / pz[m]).sum() / rows.shape[0])


def _gdd_coefficients(params: GDDParams) -> tuple:
    kr = params.k * params.r
    c_w = (params.r - params.lambda1) / kr
    c_pi = (params.lambda1 - params.lambda2) * params.u / kr
    return 1.0 - c_w - c_pi, c_pi, c_w


def _gdd_specialization(params: GDDParams, const, c_pi, c_w) -> dict:
    """The closed-form coefficient displays for singular and semi-regular
    members, cross-checked against the general formulas."""
    cls = classify_gdd(params)
    out = {"class": cls}
    if cls == "singular":
        k_star = params.k // params.u
        r_star, lam_star = params.r, params.lambda2
        frac = (r_star - lam_star) / (k_star * r_star)
        out["coefficients"] = (1.0 - frac, frac)
        assert abs(const - (1.0 - frac)) < 1e-12 and abs(c_pi - frac) < 1e-12 and abs(c_w) < 1e-12
    elif cls == "semi-regular":
        frac = (params.r - params.lambda1) / (params.k * params.r)
        out["coefficients"] = (1.0, -frac, frac)
        assert abs(const - 1.0) < 1e-12 and abs(c_pi + frac) < 1e-12 and abs(c_w - frac) < 1e-12
        if params.lambda1 == 0:
            out["td_coefficients"] = (1.0, -1.0 / params.k, 1.0 / params.k)
    return out


def bound_wt_bibd(params: BIBDParams, channel: Channel) -> BoundReport:
    """Mutual-information bound for mosaics of BIBDs:
    max_{P_A} 2^I(A ^ Z,S) <= (1 - (r-l)/(kr)) + (r-l)/(kr) 2^D2(W || P_X W | P_X)."""
    c = (params.r - params.lam) / (params.k * params.r)
    ew = _exp_d2_w_uniform(channel.W)
    return BoundReport(value=(1.0 - c) + c * ew,
                       coefficients={"const": 1.0 - c, "exp_d2_w": c})


def bound_wt_gdd(params: GDDParams, channel: Channel, partition=None) -> BoundReport:
    """Mutual-information bound for mosaics of GDDs with a common point class
    partition; the partition enters through the coarsened channel R_Pi W."""
    partition = partition if partition is not None else params.partition
    if partition is None:
        raise ValueError("GDD bound needs the point class partition")
    const, c_pi, c_w = _gdd_coefficients(params)
    ew = _exp_d2_w_uniform(channel.W)
    epi = _exp_d2_pi_uniform(channel.W, partition)
    return BoundReport(value=const + c_pi * epi + c_w * ew,
                       coefficients={"const": const, "exp_d2_pi": c_pi, "exp_d2_w": c_w},
                       specialization=_gdd_specialization(params, const, c_pi, c_w))


def bound_wt_tv_bibd(params: BIBDParams, channel: Channel) -> BoundReport:
    """Total-variation bound 2 sqrt((r-l)/(kr)) sqrt(2^D2 - 1)."""
    c = (params.r - params.lam) / (params.k * params.r)
    ew = _exp_d2_w_uniform(channel.W)
    return BoundReport(value=2.0 * math.sqrt(max(c * (ew - 1.0), 0.0)),
                       coefficients={"inner": c})


def bound_wt_tv_gdd(params: GDDParams, channel: Channel, partition=None) -> BoundReport:
    partition = partition if partition is not None else params.partition
    if partition is None:
        raise ValueError("GDD bound needs the point class partition")
    const, c_pi, c_w = _gdd_coefficients(params)
    ew = _exp_d2_w_uniform(channel.W)
    epi = _exp_d2_pi_uniform(channel.W, partition)
    inner = c_w * ew + c_pi * epi - (c_w + c_pi)
    return BoundReport(value=2.0 * math.sqrt(max(inner, 0.0)),
                       coefficients={"const": -(c_w + c_pi), "exp_d2_pi": c_pi, "exp_d2_w": c_w},
                       specialization=_gdd_specialization(params, const, c_pi, c_w))


def _pa_terms(params, joint: JointXZ, partition):
    """Per-z value of the Renyi identity right-hand side, shared by the
    privacy-amplification bounds (a = v/k)."""
    if isinstance(params, BIBDParams):
        a = params.v // params.k
        coeff_h2 = a * (params.r - params.lam) / params.r
        coeff_pi = 0.0
        const = 1.0 - (params.r - params.lam) / (params.k * params.r)
        vals = coeff_h2 * np.exp2(-joint.h2_given_z()) + const
        return vals, {"coeff_h2": coeff_h2, "coeff_pi": coeff_pi, "const": const}, None
    params_g: GDDParams = params
    partition = partition if partition is not None else params_g.partition
    if partition is None:
        raise ValueError("GDD bound needs the point class partition")
    a = params_g.v // params_g.k
    const_g, c_pi, c_w = _gdd_coefficients(params_g)
    coeff_h2 = a * (params_g.r - params_g.lambda1) / params_g.r
    coeff_pi = a * (params_g.lambda1 - params_g.lambda2) / params_g.r
    vals = (coeff_h2 * np.exp2(-joint.h2_given_z())
            + coeff_pi * np.exp2(-joint.h2_classes_given_z(partition))
            + const_g)
    spec = {"class": classify_gdd(params_g)}
    if spec["class"] == "singular":
        k_star = params_g.k // params_g.u
        r_star, lam_star = params_g.r, params_g.lambda2
        spec["coefficients"] = (a * (r_star - lam_star) / r_star,
                                -(r_star - lam_star) / (k_star * r_star))
        assert abs(coeff_pi - spec["coefficients"][0]) < 1e-9
        assert abs((const_g - 1.0) - spec["coefficients"][1]) < 1e-9
    elif spec["class"] == "semi-regular":
        spec["coefficients"] = (a * (params_g.r - params_g.lambda1) / params_g.r,
                                -a * (params_g.r - params_g.lambda1) / (params_g.u * params_g.r),
                                0.0)
        assert abs(coeff_h2 - spec["coefficients"][0]) < 1e-9
        assert abs(coeff_pi - spec["coefficients"][1]) < 1e-9
        assert abs(const_g - 1.0) < 1e-9
        if params_g.lambda1 == 0:
            spec["td_coefficients"] = (float(a), -1.0, 0.0)
    return vals, {"coeff_h2": coeff_h2, "coeff_pi": coeff_pi, "const": const_g}, spec


def bound_pa_kl(params, joint: JointXZ, partition=None) -> BoundReport:
    """Key-leakage bound: max_alpha 2^D(P_{ZS|A=a} || P_Z P_S) is at most the
    worst-z Renyi term (exact per design, see the identity checks)."""
    vals, coeffs, spec = _pa_terms(params, joint, partition)
    return BoundReport(value=float(vals.max()), coefficients=coeffs, specialization=spec)


def bound_pa_tv(params, joint: JointXZ, partition=None) -> BoundReport:
    """Total-variation key bound: sqrt of the worst-z Renyi term minus one."""
    vals, coeffs, spec = _pa_terms(params, joint, partition)
    return BoundReport(value=float(np.sqrt(np.clip(vals - 1.0, 0.0, None)).max()),
                       coefficients=coeffs, specialization=spec)


# ---------------------------------------------------------------------------
# exact per-design identities (the propositions behind the theorems)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IdentityReport:
    lhs: float
    rhs: float
    discrepancy: float
    per_z: Optional[tuple] = None


def _as_gdd_like(params):
    """Uniform (r, k, lambda1, lambda2, u, partition) view; a BIBD is the
    lambda1 = lambda2 case whose class term vanishes for any partition."""
    if isinstance(params, BIBDParams):
        return params.r, params.k, params.lam, params.lam, 1, None
    return (params.r, params.k, params.lambda1, params.lambda2, params.u,
            params.partition)


def wiretap_seed_divergence(D: IncidenceStructure, channel: Channel, k: int) -> float:
    """2^D2(P_{Z|S} || P_Z | P_S) for the single-design joint w(z|x)N(x,s)/(bk)."""
    N = D.N.astype(float)
    rows = (N.T @ channel.W) / k          # (b, nz): P_{Z|S=s}
    pz = channel.output_distribution()
    m = pz > 0
    return float((np.square(rows[:, m]) / pz[m]).sum() / D.b)


def prop41_check(D: IncidenceStructure, params, channel: Channel, partition=None) -> IdentityReport:
    """The wiretap identity: 2^D2(P_{Z|S} || P_Z | P_S) equals
    const + c_pi 2^D2(R_Pi W || P_X W | P_Pi) + c_w 2^D2(W || P_X W | P_X)."""
    r, k, l1, l2, u, part = _as_gdd_like(params)
    part = partition if partition is not None else part
    kr = k * r
    c_w = (r - l1) / kr
    c_pi = (l1 - l2) * u / kr
    const = 1.0 - c_w - c_pi
    lhs = wiretap_seed_divergence(D, channel, k)
    rhs = const + c_w * _exp_d2_w_uniform(channel.W)
    if c_pi != 0.0:
        if part is None:
            raise ValueError("GDD identity needs the point class partition")
        rhs += c_pi * _exp_d2_pi_uniform(channel.W, part)
    return IdentityReport(lhs=lhs, rhs=rhs, discrepancy=abs(lhs - rhs))


def pa_seed_divergences(D: IncidenceStructure, joint: JointXZ, r: int) -> np.ndarray:
    """Per-z values 2^D2(P_{S|Z=z} || P_S) for the joint P_XZ(x,z)N(x,s)/r."""
    N = D.N.astype(float)
    rows = np.einsum("xz,xs->zs", joint.P, N) / (r * joint.P_Z[:, None])
    return D.b * np.square(rows).sum(axis=1)


def prop42_check(D: IncidenceStructure, params, joint: JointXZ, partition=None) -> IdentityReport:
    """The privacy-amplification identity, per z:
    2^D2(P_{S|Z=z} || P_S) = v(r-l1)/(kr) 2^-H2(X|Z=z)
                              + v(l1-l2)/(kr) 2^-H2(X_Pi|Z=z) + const."""
    r, k, l1, l2, u, part = _as_gdd_like(params)
    part = partition if partition is not None else part
    v = D.v
    kr = k * r
    const = 1.0 - ((r - l1) + (l1 - l2) * u) / kr
    lhs = pa_seed_divergences(D, joint, r)
    rhs = v * (r - l1) / kr * np.exp2(-joint.h2_given_z()) + const
    if l1 != l2:
        if part is None:
            raise ValueError("GDD identity needs the point class partition")
        rhs = rhs + v * (l1 - l2) / kr * np.exp2(-joint.h2_classes_given_z(part))
    disc = float(np.abs(lhs - rhs).max())
    worst = int(np.abs(lhs - rhs).argmax())
    return IdentityReport(lhs=float(lhs[worst]), rhs=float(rhs[worst]), discrepancy=disc,
                          per_z=tuple(zip(lhs.tolist(), rhs.tolist())))


# ---------------------------------------------------------------------------
# generalized quadratic-form bounds (spectral and lambda_max choices)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GeneralizedBoundReport:
    c: float
    d: float
    wiretap: Optional[dict]
    pa: Optional[dict]
    lambda_max: Optional[dict]


def generalized_bound(D: IncidenceStructure, channel: Optional[Channel] = None,
                      joint: Optional[JointXZ] = None,
                      gdd_params: Optional[GDDParams] = None,
                      tol: float = 1e-9) -> GeneralizedBoundReport:
    """Bounds from any c, d with w^T N N^T w <= c w^T w + d (w^T 1)^2.

    Uses the spectral choice c = mu2, d = (mu1 - mu2)/v from the eigenvalues of
    N N^T (1 is the top eigenvector of a tactical configuration), and, when GDD
    parameters are supplied, also the lambda_max choice c = r - lambda_max,
    d = lambda_max.
    """
    tact = verify_tactical(D)
    if not tact:
        raise ValueError(f"generalized bound needs a tactical configuration: {tact.reason}")
    eig = np.linalg.eigvalsh(D.gram().astype(float))
    mu1, mu2 = float(eig[-1]), float(eig[-2]) if D.v > 1 else 0.0
    c, dcoef = mu2, (mu1 - mu2) / D.v
    kr = tact.k * tact.r
    a = D.v / tact.k

    def evaluate(cc, dd):
        out = {}
        if channel is not None:
            exact = wiretap_seed_divergence(D, channel, tact.k)
            bound = dd * D.v / kr + cc / kr * _exp_d2_w_uniform(channel.W)
            out["wiretap"] = {"exact": exact, "bound": bound,
                              "dominates": bool(bound >= exact - tol)}
        if joint is not None:
            exact_z = pa_seed_divergences(D, joint, tact.r)
            bound_z = a * cc / tact.r * np.exp2(-joint.h2_given_z()) + a * dd / tact.r
            out["pa"] = {"exact_max": float(exact_z.max()), "bound_max": float(bound_z.max()),
                         "dominates": bool((bound_z >= exact_z - tol).all())}
        return out

    spectral = evaluate(c, dcoef)
    lam_report = None
    if gdd_params is not None:
        lam_max = max(gdd_params.lambda1, gdd_params.lambda2)
        lam_report = evaluate(tact.r - lam_max, lam_max)
        lam_report["c"] = tact.r - lam_max
        lam_report["d"] = lam_max
    return GeneralizedBoundReport(c=c, d=dcoef,
                                  wiretap=spectral.get("wiretap"),
                                  pa=spectral.get("pa"),
                                  lambda_max=lam_report)


# ---------------------------------------------------------------------------
# partition sandwich comparisons
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SandwichReport:
    full: float
    coarse: float
    log_u: float
    left_holds: bool
    right_holds: bool
    left_equality: bool
    right_equality: bool
    left_detector: bool
    right_detector: bool


def divergence_comparison(channel: Channel, partition, tol: float = 1e-9) -> SandwichReport:
    """D2(W||P_X W|P_X) - log u <= D2(R_Pi W||P_X W|P_Pi) <= D2(W||P_X W|P_X).

    Left equality holds iff every class supports at most one positive entry
    per output letter; right equality iff rows are constant on every class.
    """
    sizes = {len(cls) for cls in partition}
    if len(sizes) != 1:
        raise ValueError("partition classes must have equal sizes")
    u = sizes.pop()
    full = math.log2(_exp_d2_w_uniform(channel.W))
    coarse = math.log2(_exp_d2_pi_uniform(channel.W, partition))
    log_u = math.log2(u)
    left_det = all(((channel.W[list(cls)] > 0).sum(axis=0) <= 1).all() for cls in partition)
    right_det = all(np.ptp(channel.W[list(cls)], axis=0).max() == 0 for cls in partition)
    return SandwichReport(
        full=full, coarse=coarse, log_u=log_u,
        left_holds=bool(coarse >= full - log_u - tol),
        right_holds=bool(coarse <= full + tol),
        left_equality=bool(abs(coarse - (full - log_u)) <= tol),
        right_equality=bool(abs(coarse - full) <= tol),
        left_detector=left_det, right_detector=right_det)


def entropy_comparison(joint: JointXZ, partition, tol: float = 1e-9) -> dict:
    """H2(X|Z=z) - log u <= H2(X_Pi|Z=z) <= H2(X|Z=z) for every z.

    Right equality holds iff at most one point per class is possible given z;
    left equality iff the conditional is constant on every class.
    """
    sizes = {len(cls) for cls in partition}
    if len(sizes) != 1:
        raise ValueError("partition classes must have equal sizes")
    u = sizes.pop()
    full = joint.h2_given_z()
    coarse = joint.h2_classes_given_z(partition)
    log_u = math.log2(u)
    cond = joint.conditional_given_z()
    right_det = all(((cond[list(cls)] > 0).sum(axis=0) <= 1).all() for cls in partition)
    left_det = all(np.ptp(cond[list(cls)], axis=0).max() <= tol for cls in partition)
    return {
        "h2_full": full,
        "h2_classes": coarse,
        "log_u": log_u,
        "left_holds": bool((coarse >= full - log_u - tol).all()),
        "right_holds": bool((coarse <= full + tol).all()),
        "left_equality": bool(np.abs(coarse - (full - log_u)).max() <= tol),
        "right_equality": bool(np.abs(coarse - full).max() <= tol),
        "left_detector": left_det,
        "right_detector": right_det,
    }


# ---------------------------------------------------------------------------
# assembled reports
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SecurityReport:
    exact: dict
    bounds: dict
    dominates: bool
    coefficients: dict

    def to_json(self) -> dict:
        return {"exact": self.exact, "bounds": self.bounds,
                "dominates": self.dominates, "coefficients": self.coefficients}


def _mosaic_bounds_wt(M: Mosaic, channel: Channel):
    if M.member_kind == "bibd":
        kl_b = bound_wt_bibd(M.member_params, channel)
        tv_b = bound_wt_tv_bibd(M.member_params, channel)
    elif M.member_kind == "gdd":
        kl_b = bound_wt_gdd(M.member_params, channel, M.point_classes)
        tv_b = bound_wt_tv_gdd(M.member_params, channel, M.point_classes)
    else:
        raise ValueError("bounds need classified members (member_kind set)")
    return kl_b, tv_b


def wiretap_report(M: Mosaic, channel: Channel, p_a=None, tol: float = 1e-9) -> SecurityReport:
    """Exact wiretap metrics side by side with the theorem bounds."""
    J = WiretapJoint(M, channel, p_a)
    exact = exact_wiretap_metrics(J)
    kl_b, tv_b = _mosaic_bounds_wt(M, channel)
    dominates = (2.0 ** exact["mutual_information"] <= kl_b.value + tol
                 and 2.0 ** exact["max_kl_cond"] <= kl_b.value + tol
                 and exact["tv"] <= tv_b.value + tol)
    return SecurityReport(exact=exact,
                          bounds={"exp_mutual_information": kl_b.value, "tv": tv_b.value},
                          dominates=bool(dominates),
                          coefficients={"kl": kl_b.coefficients, "tv": tv_b.coefficients,
                                        "specialization": kl_b.specialization})


def pa_report(M: Mosaic, joint: JointXZ, tol: float = 1e-9) -> SecurityReport:
    """Exact privacy-amplification metrics side by side with the theorem bounds."""
    J = PAJoint(M, joint)
    exact = exact_pa_metrics(J)
    params = M.member_params
    if params is None:
        raise ValueError("bounds need classified members")
    kl_b = bound_pa_kl(params, joint, M.point_classes)
    tv_b = bound_pa_tv(params, joint, M.point_classes)
    dominates = (2.0 ** exact["max_kl"] <= kl_b.value + tol
                 and exact["max_tv"] <= tv_b.value + tol
                 and 2.0 ** exact["mutual_information"] <= kl_b.value + tol)
    return SecurityReport(exact=exact,
                          bounds={"exp_max_kl": kl_b.value, "tv": tv_b.value},
                          dominates=bool(dominates),
                          coefficients={"kl": kl_b.coefficients, "tv": tv_b.coefficients,
                                        "specialization": kl_b.specialization})
