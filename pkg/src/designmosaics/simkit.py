"""End-to-end wiretap and privacy-amplification simulations.

Both scenarios have exact joint laws (computed in :mod:`.security`), so the
Monte Carlo pipelines here are calibration checks: decode correctness, key
agreement, and chi-square goodness of fit of the empirical histograms against
the exact distributions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.stats import chi2 as chi2_dist

from .mosaics import Mosaic
from .security import (
    Channel,
    JointXZ,
    PAJoint,
    WiretapJoint,
    exact_pa_metrics,
    exact_wiretap_metrics,
    tv,
)


# ---------------------------------------------------------------------------
# channel and source constructors
# ---------------------------------------------------------------------------

def identity_channel(v: int) -> Channel:
    return Channel(np.eye(v))


def symmetric_channel(v: int, crossover: float) -> Channel:
    if not 0 <= crossover <= 1:
        raise ValueError("crossover must lie in [0, 1]")
    W = np.full((v, v), crossover / (v - 1) if v > 1 else 0.0)
    np.fill_diagonal(W, 1.0 - crossover)
    return Channel(W)


def constant_column_channel(v: int, output_dist=None) -> Channel:
    """Zero-leakage channel: every input produces the same output law."""
    q = np.full(2, 0.5) if output_dist is None else np.asarray(output_dist, float)
    if (q < 0).any() or abs(q.sum() - 1) > 1e-9:
        raise ValueError("output distribution must be a probability vector")
    return Channel(np.tile(q, (v, 1)))


def channel_from_csv(path) -> Channel:
    W = np.atleast_2d(np.loadtxt(path, delimiter=","))
    return Channel(W)


def random_channel(v: int, nz: int, rng) -> Channel:
    return Channel(rng.dirichlet(np.ones(nz), size=v))


def make_channel(kind: str, v: Optional[int] = None, crossover: float = 0.1,
                 output_dist=None, path=None, nz: Optional[int] = None,
                 rng=None) -> Channel:
    if kind == "identity":
        return identity_channel(v)
    if kind == "symmetric":
        return symmetric_channel(v, crossover)
    if kind == "constant-column":
        return constant_column_channel(v, output_dist)
    if kind == "file":
        return channel_from_csv(path)
    if kind == "random":
        return random_channel(v, nz or v, rng or np.random.default_rng(0))
    raise ValueError(f"unknown channel kind {kind!r}")


def random_source(v: int, nz: int, rng) -> JointXZ:
    return JointXZ(rng.dirichlet(np.ones(v * nz)).reshape(v, nz))


def independent_source(v: int, nz: int) -> JointXZ:
    """Uniform X independent of a uniform Z: the zero-leakage source."""
    return JointXZ(np.full((v, nz), 1.0 / (v * nz)))


def source_from_csv(path) -> JointXZ:
    P = np.atleast_2d(np.loadtxt(path, delimiter=","))
    return JointXZ(P)


# ---------------------------------------------------------------------------
# chi-square goodness of fit
# ---------------------------------------------------------------------------

def chi_square_gof(counts, probs, min_expected: float = 5.0):
    """Pearson chi-square against an exact law, pooling rare cells.

    Cells with expected count below ``min_expected`` are merged into one pooled
    bin.  Observations in zero-probability cells are impossible under the
    claimed law, so they force p = 0.
    """
    counts = np.asarray(counts, dtype=float).ravel()
    probs = np.asarray(probs, dtype=float).ravel()
    n = counts.sum()
    if counts[probs <= 0].sum() > 0:
        return math.inf, 0, 0.0
    keep = probs > 0
    counts, probs = counts[keep], probs[keep]
    expected = probs * n
    big = expected >= min_expected
    obs = counts[big].tolist()
    exp = expected[big].tolist()
    if (~big).any():
        obs.append(counts[~big].sum())
        exp.append(expected[~big].sum())
    obs = np.asarray(obs)
    exp = np.asarray(exp)
    pos = exp > 0
    stat = float((np.square(obs[pos] - exp[pos]) / exp[pos]).sum())
    df = max(int(pos.sum()) - 1, 1)
    return stat, df, float(chi2_dist.sf(stat, df))


def _miller_madow_entropy(counts) -> float:
    """Plug-in Shannon entropy (bits) with the Miller-Madow bias correction."""
    counts = np.asarray(counts, dtype=float)
    n = counts.sum()
    p = counts[counts > 0] / n
    h = float(-(p * np.log2(p)).sum())
    return h + (len(p) - 1) / (2.0 * n * math.log(2.0))


def _empirical_mi(joint_counts) -> float:
    """Miller-Madow corrected plug-in estimate of I(A ^ rest) from a (cells, a)
    contingency array."""
    c = np.asarray(joint_counts, dtype=float)
    return (_miller_madow_entropy(c.sum(axis=0)) + _miller_madow_entropy(c.sum(axis=1))
            - _miller_madow_entropy(c))


# ---------------------------------------------------------------------------
# simulation pipelines
# ---------------------------------------------------------------------------

@dataclass
class SimConfig:
    mosaic: Mosaic
    trials: int
    seed: int
    channel: Optional[Channel] = None
    source: Optional[JointXZ] = None
    p_a: Optional[np.ndarray] = None
    batches: int = 10
    significance: float = 1e-3


@dataclass
class SimResult:
    scenario: str
    seed: int
    trials: int
    decode_errors: int
    agreement: float
    counts: np.ndarray
    pvalues: dict
    empirical: dict
    exact: dict
    passed: bool

    def to_json(self) -> dict:
        return {
            "scenario": self.scenario,
            "seed": self.seed,
            "trials": self.trials,
            "decode_errors": self.decode_errors,
            "agreement": self.agreement,
            "pvalues": self.pvalues,
            "empirical": self.empirical,
            "exact": self.exact,
            "passed": self.passed,
        }


def _draw_outputs(W, xs, rng):
    cum = np.cumsum(W, axis=1)
    us = rng.random(len(xs))
    return (us[:, None] > cum[xs]).sum(axis=1)


def wiretap_roundtrip(cfg: SimConfig) -> SimResult:
    """Seed, message, randomized inverse, channel draw; Bob decodes via f.

    The empirical (z, s, alpha) histogram is tested against the exact wiretap
    joint; the mutual-information estimate comes with a batch standard error.
    """
    if cfg.channel is None:
        raise ValueError("wiretap simulation needs a channel")
    M, n = cfg.mosaic, cfg.trials
    if n < 1:
        raise ValueError("trial count must be at least 1")
    rng = np.random.default_rng(cfg.seed)
    p_a = np.full(M.a, 1.0 / M.a) if cfg.p_a is None else np.asarray(cfg.p_a, float)

    alphas = rng.choice(M.a, size=n, p=p_a)
    seeds = rng.integers(0, M.b, size=n)
    kappas = rng.integers(0, M.k, size=n)
    xs = np.fromiter((M.g(int(s), int(al), int(kp))
                      for s, al, kp in zip(seeds, alphas, kappas)), dtype=np.int64, count=n)
    decoded = np.fromiter((M.f(int(x), int(s)) for x, s in zip(xs, seeds)),
                          dtype=np.int64, count=n)
    decode_errors = int((decoded != alphas).sum())
    zs = _draw_outputs(cfg.channel.W, xs, rng)

    joint = WiretapJoint(M, cfg.channel, p_a)
    nz = cfg.channel.nz
    probs = np.moveaxis(joint.p_zsa, 0, -1).ravel()       # (z, s, alpha) cells
    cells = (zs * M.b + seeds) * M.a + alphas
    counts = np.bincount(cells, minlength=nz * M.b * M.a)
    stat, df, pval = chi_square_gof(counts, probs)

    exact = exact_wiretap_metrics(joint)
    batch_mi = []
    per_batch = n // cfg.batches
    for i in range(cfg.batches):
        sl = slice(i * per_batch, (i + 1) * per_batch)
        table = np.zeros((nz * M.b, M.a))
        np.add.at(table, (zs[sl] * M.b + seeds[sl], alphas[sl]), 1.0)
        batch_mi.append(_empirical_mi(table))
    mi_mean = float(np.mean(batch_mi))
    mi_se = float(np.std(batch_mi, ddof=1) / math.sqrt(len(batch_mi))) if len(batch_mi) > 1 else 0.0

    passed = decode_errors == 0 and pval >= cfg.significance
    return SimResult(
        scenario="wiretap", seed=cfg.seed, trials=n,
        decode_errors=decode_errors, agreement=1.0 - decode_errors / n,
        counts=counts,
        pvalues={"joint_zsa": pval, "statistic": stat, "df": df},
        empirical={"mi_batch_mean": mi_mean, "mi_batch_se": mi_se},
        exact={"mutual_information": exact["mutual_information"], "tv": exact["tv"]},
        passed=bool(passed))


def pa_roundtrip(cfg: SimConfig) -> SimResult:
    """Shared-source draw, uniform seed, both parties hash; keys must agree,
    be uniform, and the eavesdropper histogram must match the exact law."""
    if cfg.source is None:
        raise ValueError("privacy-amplification simulation needs a source")
    M, n = cfg.mosaic, cfg.trials
    if n < 1:
        raise ValueError("trial count must be at least 1")
    rng = np.random.default_rng(cfg.seed)
    src = cfg.source
    nz = src.nz

    flat_idx = rng.choice(src.v * nz, size=n, p=src.P.ravel())
    xs, zs = np.divmod(flat_idx, nz)
    seeds = rng.integers(0, M.b, size=n)
    alice = np.fromiter((M.f(int(x), int(s)) for x, s in zip(xs, seeds)),
                        dtype=np.int64, count=n)
    bob = np.fromiter((M.f(int(x), int(s)) for x, s in zip(xs, seeds)),
                      dtype=np.int64, count=n)
    agreement = float((alice == bob).mean())

    joint = PAJoint(M, src)
    key_counts = np.bincount(alice, minlength=M.a)
    _, _, p_key = chi_square_gof(key_counts, np.full(M.a, 1.0 / M.a))
    probs = np.moveaxis(joint.p_zsa, 0, -1).ravel()
    cells = (zs * M.b + seeds) * M.a + alice
    counts = np.bincount(cells, minlength=nz * M.b * M.a)
    stat, df, p_joint = chi_square_gof(counts, probs)

    # empirical worst-key TV against the product reference
    ref = np.broadcast_to(joint.p_z[:, None] / M.b, (nz, M.b)).ravel()
    emp_tv = 0.0
    for al in range(M.a):
        sel = alice == al
        if sel.sum() == 0:
            continue
        hist = np.bincount(zs[sel] * M.b + seeds[sel], minlength=nz * M.b).astype(float)
        emp_tv = max(emp_tv, tv(hist / sel.sum(), ref))

    exact = exact_pa_metrics(joint)
    passed = agreement == 1.0 and p_key >= cfg.significance and p_joint >= cfg.significance
    return SimResult(
        scenario="privacy-amplification", seed=cfg.seed, trials=n,
        decode_errors=0, agreement=agreement,
        counts=counts,
        pvalues={"key_uniformity": p_key, "joint_zsa": p_joint, "statistic": stat, "df": df},
        empirical={"max_tv": emp_tv},
        exact={"max_tv": exact["max_tv"], "max_kl": exact["max_kl"],
               "key_uniformity_deviation": exact["key_uniformity_deviation"]},
        passed=bool(passed))
