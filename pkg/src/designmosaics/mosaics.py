"""Mosaics of incidence structures and their functional forms.

A mosaic is a family of incidence structures on a common point set [v] and
block index set [b] whose incidence matrices sum to the all-ones matrix.  Its
functional form f(x, s) reads off the unique member in which (x, s) is
incident; the preimage enumerator g(s, alpha, kappa) walks the k points of
f_s^{-1}(alpha) bijectively.  Mosaics are kept lazily as (f, g) pairs and
materialized to dense matrices only for verification.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .designs import (
    BIBDParams,
    CheckFailure,
    GDDParams,
    IncidenceStructure,
    Resolution,
    verify_resolution,
    verify_tactical,
)


# ---------------------------------------------------------------------------
# quasigroups
# ---------------------------------------------------------------------------

class Quasigroup:
    """Binary operation on [a] with unique left and right division."""

    order: int

    def value(self, beta, gamma):
        raise NotImplementedError

    def solve_right(self, beta, alpha):
        """The unique gamma with value(beta, gamma) = alpha."""
        raise NotImplementedError

    def solve_left(self, gamma, alpha):
        """The unique beta with value(beta, gamma) = alpha."""
        raise NotImplementedError


class CyclicQuasigroup(Quasigroup):
    """Addition on Z_a."""

    def __init__(self, order):
        if order < 1:
            raise ValueError("order must be positive")
        self.order = order

    def value(self, beta, gamma):
        return (beta + gamma) % self.order

    def solve_right(self, beta, alpha):
        return (alpha - beta) % self.order

    def solve_left(self, gamma, alpha):
        return (alpha - gamma) % self.order


class FieldAdditiveQuasigroup(Quasigroup):
    """The additive group of a finite field, on packed element encodings."""

    def __init__(self, gf):
        self.gf = gf
        self.order = gf.order

    def value(self, beta, gamma):
        return self.gf.add(beta, gamma)

    def solve_right(self, beta, alpha):
        return self.gf.sub(alpha, beta)

    def solve_left(self, gamma, alpha):
        return self.gf.sub(alpha, gamma)


class TableQuasigroup(Quasigroup):
    """Quasigroup backed by an explicit Latin table; solves by index lookup."""

    def __init__(self, table):
        T = np.asarray(table, dtype=np.int64)
        if T.ndim != 2 or T.shape[0] != T.shape[1]:
            raise ValueError("quasigroup table must be square")
        a = T.shape[0]
        want = np.arange(a)
        if not (np.array_equal(np.sort(T, axis=1), np.tile(want, (a, 1)))
                and np.array_equal(np.sort(T, axis=0), np.tile(want[:, None], (1, a)))):
            raise ValueError("table is not a Latin square")
        self.order = a
        self.table = T
        self._right = np.argsort(T, axis=1)      # _right[beta, alpha] = gamma
        self._left = np.argsort(T.T, axis=1)     # _left[gamma, alpha] = beta

    def value(self, beta, gamma):
        return int(self.table[beta, gamma])

    def solve_right(self, beta, alpha):
        return int(self._right[beta, alpha])

    def solve_left(self, gamma, alpha):
        return int(self._left[gamma, alpha])


# ---------------------------------------------------------------------------
# the mosaic data model
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FunctionalForm:
    v: int
    b: int
    a: int
    k: int
    f: Callable
    g: Optional[Callable]


@dataclass(frozen=True)
class MosaicCert:
    v: int
    b: int
    a: int
    k: int


class Mosaic:
    """Color-indexed family (D_alpha) on [v] x [b], held as a functional form.

    ``member_kind`` ('bibd' or 'gdd') and ``member_params`` describe the common
    parameters of all members when known; ``point_classes`` carries the shared
    point class partition of GDD members.
    """

    def __init__(self, v, b, a, f, g=None, k=None, member_kind=None,
                 member_params=None, point_classes=None, meta=None):
        self.v = v
        self.b = b
        self.a = a
        self.k = v // a if k is None else k
        self._f = f
        self._g = g
        self.member_kind = member_kind
        self.member_params = member_params
        self.point_classes = point_classes
        self.meta = dict(meta or {})
        self._colors = None
        self._stack = None
        self._preimages = None

    def __repr__(self):
        fam = self.meta.get("family")
        tag = f", family={fam!r}" if fam else ""
        return f"Mosaic(v={self.v}, b={self.b}, a={self.a}, k={self.k}{tag})"

    # -- evaluation -----------------------------------------------------------

    def f(self, x, s):
        return self._f(x, s)

    def g(self, s, alpha, kappa):
        if self._g is not None:
            return self._g(s, alpha, kappa)
        return int(self._preimage_table()[alpha][s][kappa])

    def functional_form(self) -> FunctionalForm:
        return FunctionalForm(v=self.v, b=self.b, a=self.a, k=self.k, f=self.f, g=self.g)

    # -- materialization --------------------------------------------------------

    def color_matrix(self) -> np.ndarray:
        if self._colors is None:
            F = np.empty((self.v, self.b), dtype=np.int32)
            f = self._f
            for x in range(self.v):
                for s in range(self.b):
                    F[x, s] = f(x, s)
            self._colors = F
        return self._colors

    def member_matrices(self) -> np.ndarray:
        if self._stack is None:
            F = self.color_matrix()
            self._stack = (F[None, :, :] == np.arange(self.a)[:, None, None]).astype(np.uint8)
        return self._stack

    def member(self, alpha) -> IncidenceStructure:
        return IncidenceStructure(self.member_matrices()[alpha])

    def members(self):
        return [self.member(alpha) for alpha in range(self.a)]

    def _preimage_table(self):
        if self._preimages is None:
            stack = self.member_matrices()
            self._preimages = [
                [np.flatnonzero(stack[alpha, :, s]) for s in range(self.b)]
                for alpha in range(self.a)
            ]
        return self._preimages


def from_functional_form(f, g, v, b, a, k=None, validate=True, **kwargs) -> Mosaic:
    M = Mosaic(v, b, a, f, g, k=k, **kwargs)
    if validate:
        res = verify_functional_form(M)
        if not res:
            raise ValueError(f"inconsistent functional form: {res.reason} {res.witness}")
    return M


def from_members(structures, member_kind=None, member_params=None,
                 point_classes=None, meta=None) -> Mosaic:
    """Mosaic from explicit member matrices; the partition property is checked
    by :func:`verify_mosaic`, not here."""
    stack = np.stack([S.N for S in structures]).astype(np.uint8)
    a, v, b = stack.shape
    colors = np.argmax(stack, axis=0).astype(np.int32)

    def f(x, s):
        return int(colors[x, s])

    M = Mosaic(v, b, a, f, None, member_kind=member_kind, member_params=member_params,
               point_classes=point_classes, meta=meta)
    M._stack = stack
    M._colors = colors
    return M


def verify_mosaic(M: Mosaic):
    """Partition property (every pair incident in exactly one member) plus
    nonemptiness of every member."""
    if M._stack is not None:
        total = M._stack.sum(axis=0, dtype=np.int64)
        if not (total == 1).all():
            x, s = map(int, np.argwhere(total != 1)[0])
            return CheckFailure("pair covered by wrong number of members", (x, s, int(total[x, s])))
        per_member = M._stack.sum(axis=(1, 2))
        empty = np.flatnonzero(per_member == 0)
        if empty.size:
            return CheckFailure("empty member", (int(empty[0]),))
        return MosaicCert(M.v, M.b, M.a, M.k)
    F = M.color_matrix()
    if F.min() < 0 or F.max() >= M.a:
        x, s = map(int, np.argwhere((F < 0) | (F >= M.a))[0])
        return CheckFailure("color out of range", (x, s, int(F[x, s])))
    counts = np.bincount(F.ravel(), minlength=M.a)
    empty = np.flatnonzero(counts == 0)
    if empty.size:
        return CheckFailure("empty member", (int(empty[0]),))
    return MosaicCert(M.v, M.b, M.a, M.k)


def verify_functional_form(M: Mosaic):
    """Exhaustive consistency of (f, g): for every (s, alpha) the map
    kappa -> g(s, alpha, kappa) must hit f_s^{-1}(alpha) bijectively."""
    for s in range(M.b):
        for alpha in range(M.a):
            seen = set()
            for kappa in range(M.k):
                x = M.g(s, alpha, kappa)
                if not 0 <= x < M.v:
                    return CheckFailure("preimage point out of range", (s, alpha, kappa, x))
                if x in seen:
                    return CheckFailure("preimage enumerator repeats a point", (s, alpha, x))
                seen.add(x)
                got = M.f(x, s)
                if got != alpha:
                    return CheckFailure("f(g(s,alpha,kappa), s) != alpha", (s, alpha, kappa, x, got))
    return MosaicCert(M.v, M.b, M.a, M.k)


# ---------------------------------------------------------------------------
# the general construction from a resolvable design and a quasigroup
# ---------------------------------------------------------------------------

def construct_from_resolvable(D: IncidenceStructure, resolution: Resolution, L: Quasigroup,
                              member_kind=None, member_params=None,
                              point_classes=None, meta=None) -> Mosaic:
    """Mosaic on (X, R x A): the point p and block (i, beta) are incident in
    member alpha exactly when p lies on the block of parallel class i labelled
    gamma, for the unique gamma with L(beta, gamma) = alpha.

    Every member is isomorphic to D via a block relabeling within each class.
    """
    res = verify_resolution(D, resolution.classes)
    if not res:
        raise ValueError(f"invalid resolution: {res.reason} {res.witness}")
    tact = verify_tactical(D)
    a = D.v // tact.k
    if L.order != a:
        raise ValueError(f"quasigroup order {L.order} must equal v/k = {a}")
    r = tact.r

    gamma_of = np.empty((D.v, r), dtype=np.int32)
    block_pts = [[None] * a for _ in range(r)]
    for i, cls in enumerate(res.classes):
        for label, s in enumerate(cls):
            pts = np.flatnonzero(D.N[:, s])
            block_pts[i][label] = pts
            gamma_of[pts, i] = label

    def f(x, s):
        i, beta = divmod(s, a)
        return L.value(beta, int(gamma_of[x, i]))

    def g(s, alpha, kappa):
        i, beta = divmod(s, a)
        gamma = L.solve_right(beta, alpha)
        return int(block_pts[i][gamma][kappa])

    return Mosaic(D.v, r * a, a, f, g, k=tact.k, member_kind=member_kind,
                  member_params=member_params, point_classes=point_classes, meta=meta)


def dual_mosaic(M: Mosaic, member_kind=None, member_params=None,
                point_classes=None) -> Mosaic:
    """Transpose every member: f^T(s, x) = f(x, s)."""
    if (M.b * M.k) % M.v:
        raise ValueError("dual of a non-tactical mosaic has no constant block size")
    out = Mosaic(M.b, M.v, M.a, lambda x, s: M.f(s, x), None, k=M.b * M.k // M.v,
                 member_kind=member_kind, member_params=member_params,
                 point_classes=point_classes,
                 meta={**M.meta, "dual": True})
    if M._colors is not None:
        out._colors = M._colors.T.copy()
    return out


def sum_structure(M: Mosaic):
    """The sum on (X, a x S): x is incident with copy (alpha, s) of s iff
    f(x, s) = alpha.  Returns the structure and its canonical resolution,
    whose classes are indexed by the original block indices."""
    F = M.color_matrix()
    N = np.zeros((M.v, M.a * M.b), dtype=np.uint8)
    cols = F.astype(np.int64) * M.b + np.arange(M.b)[None, :]
    np.put_along_axis(N, cols, 1, axis=1)
    classes = tuple(tuple(alpha * M.b + s for alpha in range(M.a)) for s in range(M.b))
    return IncidenceStructure(N), Resolution(classes)


def point_multiple(M: Mosaic, u: int) -> Mosaic:
    """Replace every point by a class of u copies; members of a mosaic of
    (v, k, lambda) BIBDs become singular GDDs with parameters
    (u, m=v, k=u k, lambda1=r, lambda2=lambda)."""
    if u < 1:
        raise ValueError("u must be a positive integer")
    if M.member_kind != "bibd" or not isinstance(M.member_params, BIBDParams):
        raise ValueError("point multiples are defined for mosaics of BIBDs")
    bp = M.member_params
    classes = tuple(tuple(range(x * u, (x + 1) * u)) for x in range(M.v))
    gdd = GDDParams(u=u, m=M.v, k=u * bp.k, lambda1=bp.r, lambda2=bp.lam,
                    v=u * M.v, r=bp.r, b=M.b, partition=classes)

    def f(x, s):
        return M.f(x // u, s)

    def g(s, alpha, kappa):
        base, i = divmod(kappa, u)
        return M.g(s, alpha, base) * u + i

    return Mosaic(u * M.v, M.b, M.a, f, g, k=u * M.k, member_kind="gdd",
                  member_params=gdd, point_classes=classes,
                  meta={**M.meta, "point_multiple": u})


def sample_inverse(M: Mosaic, s: int, alpha: int, rng) -> int:
    """Uniform draw from f_s^{-1}(alpha): kappa ~ U[k] mapped through g."""
    kappa = int(rng.integers(M.k))
    x = M.g(s, alpha, kappa)
    if M.f(x, s) != alpha:
        raise ValueError(f"preimage enumerator inconsistent at (s={s}, alpha={alpha})")
    return x


# ---------------------------------------------------------------------------
# rate analysis
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RateReport:
    color_rate: float
    block_rate: float
    ratio: float          # log b / log a = block rate over color rate
    rho0: Optional[float]
    optimal: bool
    verdict: str
    reason: str
    td_rate_floor: Optional[float] = None


def rho0(v: int, k: int) -> float:
    """The color-rate threshold below which Fisher's bound b >= v dominates."""
    return 1.0 - (math.log2(v - 1) + math.log2(k) - math.log2(k - 1)) / (2.0 * math.log2(v))


def rates(M: Mosaic) -> RateReport:
    """Color/block rates and the block-rate optimality verdict.

    Mosaics of BIBDs are optimal iff lambda = 1 (color rate >= rho0) or b = v
    (color rate < rho0); mosaics of GDDs are optimal iff every member is an
    (a, k, 1) transversal design.
    """
    lv, la, lb = math.log2(M.v), math.log2(M.a), math.log2(M.b)
    color, block, ratio = la / lv, lb / lv, lb / la
    if M.member_kind == "bibd":
        p = M.member_params
        r0 = rho0(M.v, p.k)
        if color >= r0:
            opt = p.lam == 1
            reason = "lambda = 1" if opt else f"lambda = {p.lam} > 1; ratio log b/log a = {ratio:.6f}"
        else:
            opt = M.b == M.v
            reason = "b = v (square)" if opt else f"b = {M.b} > v = {M.v}; ratio log b/log a = {ratio:.6f}"
        return RateReport(color, block, ratio, r0, opt,
                          "optimal" if opt else "near-optimal", reason)
    if M.member_kind == "gdd":
        p = M.member_params
        is_td = p.lambda1 == 0 and p.lambda2 == 1 and p.m == p.k and p.u == M.a
        floor = math.log2(p.u) / (math.log2(p.u) + math.log2(p.u + 1))
        if is_td:
            reason = "every member is an (a, k, 1) transversal design"
        else:
            reason = f"members are not (a, k, 1) TDs; ratio log b/log a = {ratio:.6f}"
        return RateReport(color, block, ratio, None, is_td,
                          "optimal" if is_td else "near-optimal", reason,
                          td_rate_floor=floor)
    raise ValueError("rate analysis needs classified members (member_kind set)")


def check_block_rate_optimal(M: Mosaic) -> RateReport:
    return rates(M)


# ---------------------------------------------------------------------------
# serialization header
# ---------------------------------------------------------------------------

def mosaic_header(M: Mosaic) -> dict:
    from .designs import params_to_json
    head = {
        "format": "mosaic",
        "family": M.meta.get("family"),
        "params": {key: val for key, val in M.meta.items() if key != "family"},
        "v": M.v, "b": M.b, "a": M.a, "k": M.k,
        "member_kind": M.member_kind,
        "member_params": None if M.member_params is None else params_to_json(M.member_params),
        "point_classes": None if M.point_classes is None else [list(c) for c in M.point_classes],
    }
    return head
