"""The four explicit mosaic families over finite fields.

* ``build_m1``: mosaics of the affine-geometry BIBDs AG_{t-1}(t, q), color
  rate 1/t, functional form f(x; h, beta) = h.x + beta.
* ``build_m2``: mosaics of Denniston-arc BIBDs in AG(2, 2^t) with block size
  2^l and lambda = 1; the functional form and its inverse run through the
  rank/unrank maps of the arc geometry.
* ``build_m3``: u-fold point multiples of M2 mosaics, singular GDDs.
* ``build_m4``: mosaics of (q, k, 1) transversal designs obtained from duals
  of affine planes with deleted parallel classes.

Slopes of AG(2, q) are encoded as ints in [0, q] with q standing for the
vertical (infinite) slope.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .designs import (
    BIBDParams,
    GDDParams,
    IncidenceStructure,
    Resolution,
)
from .field import make_field, prime_power
from .mosaics import Mosaic, point_multiple


# ---------------------------------------------------------------------------
# M1: affine geometry designs AG_{t-1}(t, q)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class M1Spec:
    t: int
    q: int
    v: int
    b: int
    r: int
    k: int
    lam: int
    a: int


def m1_spec(t: int, q: int) -> M1Spec:
    if t < 2:
        raise ValueError("M1 requires t >= 2")
    prime_power(q)
    r = (q ** t - 1) // (q - 1)
    # two points lie on (q^(t-1) - 1)/(q - 1) common hyperplanes, the value
    # forced by r(k-1) = lambda(v-1); q^(t-2) is the affine intersection
    # number mu of this design, not its lambda (they agree only at t = 2)
    lam = (q ** (t - 1) - 1) // (q - 1)
    return M1Spec(t=t, q=q, v=q ** t, b=q * r, r=r, k=q ** (t - 1),
                  lam=lam, a=q)


def _m1_slopes(t: int, q: int):
    """Nonzero vectors in F_q^t with first nonzero coordinate 1, one per
    parallel class of hyperplanes; ordered by pivot position then suffix."""
    slopes = []
    for pivot in range(t):
        tail = t - pivot - 1
        for m in range(q ** tail):
            coords = [0] * pivot + [1]
            mm = m
            for _ in range(tail):
                mm, d = divmod(mm, q)
                coords.append(d)
            slopes.append(tuple(coords))
    return slopes


def _vector_digits(x: int, q: int, t: int):
    out = []
    for _ in range(t):
        x, d = divmod(x, q)
        out.append(d)
    return out


def build_m1(t: int, q: int) -> Mosaic:
    """Mosaic of hyperplane designs of AG(t, q): f(x; h, beta) = h.x + beta."""
    spec = m1_spec(t, q)
    p, e = prime_power(q)
    gf = make_field(p, e)
    slopes = _m1_slopes(t, q)

    def dot(h, x):
        acc = 0
        coords = _vector_digits(x, q, t)
        for hi, xi in zip(h, coords):
            if hi and xi:
                acc = gf.add(acc, gf.mul(hi, xi))
        return acc

    def f(x, s):
        i, beta = divmod(s, q)
        return gf.add(dot(slopes[i], x), beta)

    def g(s, alpha, kappa):
        i, beta = divmod(s, q)
        h = slopes[i]
        target = gf.sub(alpha, beta)
        pivot = next(j for j, hj in enumerate(h) if hj)
        free = _vector_digits(kappa, q, t - 1)
        coords = [0] * t
        fi = 0
        acc = 0
        for j in range(t):
            if j == pivot:
                continue
            coords[j] = free[fi]
            fi += 1
            if h[j] and coords[j]:
                acc = gf.add(acc, gf.mul(h[j], coords[j]))
        coords[pivot] = gf.sub(target, acc)  # h[pivot] = 1
        x = 0
        for j in range(t - 1, -1, -1):
            x = x * q + coords[j]
        return x

    return Mosaic(spec.v, spec.b, spec.a, f, g, k=spec.k,
                  member_kind="bibd",
                  member_params=BIBDParams(v=spec.v, k=spec.k, lam=spec.lam,
                                           r=spec.r, b=spec.b),
                  meta={"family": "m1", "t": t, "q": q})


def ag_design(t: int, q: int):
    """The resolvable BIBD AG_{t-1}(t, q) itself, with its hyperplane-pencil
    resolution; block (i, alpha) is the hyperplane h_i . x = alpha."""
    spec = m1_spec(t, q)
    p, e = prime_power(q)
    gf = make_field(p, e)
    slopes = _m1_slopes(t, q)
    N = np.zeros((spec.v, spec.b), dtype=np.uint8)
    for x in range(spec.v):
        coords = _vector_digits(x, q, t)
        for i, h in enumerate(slopes):
            acc = 0
            for hj, xj in zip(h, coords):
                if hj and xj:
                    acc = gf.add(acc, gf.mul(hj, xj))
            N[x, i * q + acc] = 1
    classes = tuple(tuple(i * q + al for al in range(q)) for i in range(spec.r))
    return IncidenceStructure(N), Resolution(classes)


# ---------------------------------------------------------------------------
# M2: Denniston arcs in AG(2, 2^t)
# ---------------------------------------------------------------------------

class DennistonGeometry:
    """Coordinates and rank/unrank maps for the Denniston arc.

    The arc is X = {(x, y) : Q(x, y) in H} for the irreducible quadratic form
    Q(x, y) = eta1 x^2 + eta2 xy + eta3 y^2 and the subgroup
    H = span{1, theta, ..., theta^(l-1)} of F_q, q = 2^t.  With the packed
    field encoding, H is exactly the set of integers below 2^l.

    Slopes c run over [0, q] with c = q the vertical slope.  The blocks of the
    induced design are the nontrivial line intersections (c, d) with d in U_c.
    """

    def __init__(self, t: int, l: int):
        if t < 2:
            raise ValueError("Denniston geometry requires t >= 2")
        if not 1 <= l <= t:
            raise ValueError("l must satisfy 1 <= l <= t")
        self.t = t
        self.l = l
        self.q = 1 << t
        self.gf = make_field(2, t)
        self.k = 1 << l
        self.a = self.q + 1 - (1 << (t - l))
        self.v = self.k * self.a
        self.r = self.q + 1
        self.b = self.r * self.a
        self.eta1 = 1
        self.eta3 = 1
        self.eta2 = self._pick_eta2()
        self.gf.dual_basis()  # warm the cache for the dual-coordinate maps
        self._blocks = {}

    def _pick_eta2(self) -> int:
        # scan eta2 ascending until Q is irreducible; for eta1 = eta3 = 1 this
        # is Tr(1/eta2^2) = 1, confirmed by the absence of roots of T^2+eta2*T+1
        gf = self.gf
        for e2 in range(1, self.q):
            if gf.trace(gf.inv(gf.mul(e2, e2))) == 1:
                for x in gf.elements():
                    if gf.add(gf.add(gf.mul(x, x), gf.mul(e2, x)), 1) == 0:
                        raise AssertionError("trace condition violated by a root")
                return e2
        raise AssertionError("no irreducible quadratic form found")

    # -- basic geometry --------------------------------------------------------

    def quadratic_form(self, x: int, y: int) -> int:
        gf = self.gf
        return gf.add(gf.add(gf.mul(self.eta1, gf.mul(x, x)),
                             gf.mul(self.eta2, gf.mul(x, y))),
                      gf.mul(self.eta3, gf.mul(y, y)))

    def in_H(self, z: int) -> bool:
        return z < self.k

    def e_coeff(self, c: int) -> int:
        """eta1 + eta2 c + eta3 c^2, with the vertical convention e_inf = eta3."""
        if c == self.q:
            return self.eta3
        gf = self.gf
        return gf.add(gf.add(self.eta1, gf.mul(self.eta2, c)),
                      gf.mul(self.eta3, gf.mul(c, c)))

    def intercept_of(self, point, c: int) -> int:
        """The d with point on L_{c,d} (x-coordinate for the vertical class)."""
        px, py = point
        if c == self.q:
            return px
        return self.gf.add(py, self.gf.mul(c, px))

    # -- Phi_X: [v] <-> arc points ----------------------------------------------

    def phi_x(self, m: int):
        if not 0 <= m < self.v:
            raise ValueError(f"point index {m} out of range")
        if m == 0:
            return (0, 0)
        c, hpos = divmod(m - 1, self.k - 1)
        h = hpos + 1
        gf = self.gf
        x = gf.sqrt(gf.div(h, self.e_coeff(c)))
        if c == self.q:
            return (0, x)
        return (x, gf.mul(c, x))

    def phi_x_inv(self, point) -> int:
        px, py = point
        if px == 0 and py == 0:
            return 0
        gf = self.gf
        if px == 0:
            c = self.q
            h = gf.mul(self.eta3, gf.mul(py, py))
        else:
            c = gf.div(py, px)
            h = gf.mul(self.e_coeff(c), gf.mul(px, px))
        if not 1 <= h < self.k:
            raise ValueError(f"point {point} is not on the arc")
        return 1 + c * (self.k - 1) + (h - 1)

    # -- Phi_{U_c}: [a] <-> valid intercepts -------------------------------------

    def phi_uc(self, c: int, j: int) -> int:
        """The j-th intercept of parallel class c; index 0 is the intercept 0.

        For j >= 1 the map unranks the j-th element w of F_q \\ H_perp in
        dual-basis coordinates (H_perp is spanned by the dual tail, so w is
        valid iff its low l dual bits are not all zero) and solves
        d^{-2} = (eta2^2 / e_c) w.
        """
        if not 0 <= j < self.a:
            raise ValueError(f"intercept index {j} out of range")
        if j == 0:
            return 0
        jp = j - 1
        wz = jp + 1 + jp // (self.k - 1)
        gf = self.gf
        w = gf.from_dual_coords(wz)
        val = gf.mul(gf.div(gf.mul(self.eta2, self.eta2), self.e_coeff(c)), w)
        return gf.inv(gf.sqrt(val))

    def phi_uc_inv(self, c: int, d: int) -> int:
        if d == 0:
            return 0
        gf = self.gf
        w = gf.mul(gf.div(self.e_coeff(c), gf.mul(self.eta2, self.eta2)),
                   gf.inv(gf.mul(d, d)))
        wz = gf.dual_coords(w)
        if wz % self.k == 0:
            raise ValueError(f"intercept {d} is not in U_{c}")
        return wz - wz // self.k

    # -- block enumeration (the preimage machinery) -------------------------------

    def hcd_list(self, c: int, d: int):
        """The z in H with Tr(e_c z / (eta2^2 d^2)) = 1, a coset of a hyperplane
        of H, in a fixed enumeration order."""
        if d == 0:
            raise ValueError("H_{c,d} is defined for nonzero intercepts")
        gf = self.gf
        beta = gf.div(self.e_coeff(c),
                      gf.mul(gf.mul(self.eta2, self.eta2), gf.mul(d, d)))
        mask = gf.dual_coords(beta) & (self.k - 1)
        if mask == 0:
            raise ValueError(f"intercept {d} is not in U_{c}")
        piv = mask.bit_length() - 1
        free = [i for i in range(self.l) if i != piv]
        out = []
        for counter in range(1 << (self.l - 1)):
            z = 0
            for idx, pos in enumerate(free):
                if (counter >> idx) & 1:
                    z |= 1 << pos
            parity = bin(z & mask).count("1") & 1
            if parity == 0:
                z |= 1 << piv
            out.append(z)
        return out

    def rcd_slopes(self, c: int, d: int):
        """The slopes whose arc section meets L_{c,d}; exactly k of them,
        with multiplicity structure two per z in H_{c,d}."""
        if d == 0:
            raise ValueError("R_{c,d} is defined for nonzero intercepts")
        gf = self.gf
        q = self.q
        d2 = gf.mul(d, d)
        e2sq = gf.mul(self.eta2, self.eta2)
        slopes = []
        for z in self.hcd_list(c, d):
            if c != q and z == gf.mul(self.eta3, d2):
                # degenerate quadratic: the linear root plus the vertical slope
                ct = gf.div(gf.add(self.eta1, gf.mul(self.eta3, gf.mul(c, c))), self.eta2)
                slopes.append(ct)
                slopes.append(q)
                continue
            if c != q:
                denom = gf.add(z, gf.mul(self.eta3, d2))
                const = gf.div(
                    gf.mul(gf.add(gf.mul(self.eta1, d2), gf.mul(gf.mul(c, c), z)), denom),
                    gf.mul(e2sq, gf.mul(d2, d2)))
                for w in gf.artin_schreier_roots(const):
                    slopes.append(gf.div(gf.mul(gf.mul(self.eta2, d2), w), denom))
            else:
                const = gf.div(gf.mul(self.eta3, gf.add(gf.mul(self.eta1, d2), z)),
                               gf.mul(e2sq, d2))
                for w in gf.artin_schreier_roots(const):
                    slopes.append(gf.div(gf.mul(self.eta2, w), self.eta3))
        return slopes

    def block_points(self, c: int, d: int):
        """The k arc points on the line L_{c,d}, in a fixed enumeration order."""
        key = (c, d)
        cached = self._blocks.get(key)
        if cached is not None:
            return cached
        gf = self.gf
        q = self.q
        pts = []
        if d == 0:
            pts.append((0, 0))
            e = self.e_coeff(c)
            for h in range(1, self.k):
                x = gf.sqrt(gf.div(h, e))
                pts.append((0, x) if c == q else (x, gf.mul(c, x)))
        else:
            for ct in self.rcd_slopes(c, d):
                if c == q:
                    pts.append((d, gf.mul(ct, d)))
                elif ct == q:
                    pts.append((0, d))
                else:
                    x = gf.div(d, gf.add(c, ct))
                    pts.append((x, gf.mul(ct, x)))
        if len(pts) != self.k or len(set(pts)) != self.k:
            raise AssertionError(f"block ({c},{d}) enumerated {pts}")
        pts = tuple(pts)
        self._blocks[key] = pts
        return pts


def denniston_geometry(t: int, l: int) -> DennistonGeometry:
    return DennistonGeometry(t, l)


def denniston_point_set(geom: DennistonGeometry):
    return [geom.phi_x(m) for m in range(geom.v)]


def enumerate_uc(geom: DennistonGeometry, c: int):
    return [geom.phi_uc(c, j) for j in range(geom.a)]


def enumerate_hcd(geom: DennistonGeometry, c: int, d: int):
    return geom.hcd_list(c, d)


def enumerate_rcd(geom: DennistonGeometry, c: int, d: int):
    return geom.rcd_slopes(c, d)


def denniston_design(geom: DennistonGeometry):
    """The resolvable (v, 2^l, 1) BIBD of line sections of the arc, blocks
    indexed (c, j) -> c*a + j with intercepts ordered by Phi_{U_c}."""
    N = np.zeros((geom.v, geom.b), dtype=np.uint8)
    for c in range(geom.q + 1):
        for j in range(geom.a):
            d = geom.phi_uc(c, j)
            s = c * geom.a + j
            for pt in geom.block_points(c, d):
                N[geom.phi_x_inv(pt), s] = 1
    classes = tuple(tuple(c * geom.a + j for j in range(geom.a))
                    for c in range(geom.q + 1))
    return IncidenceStructure(N), Resolution(classes)


def build_m2(t: int, l: int) -> Mosaic:
    """Mosaic of Denniston (v, 2^l, 1) BIBDs, colors the cyclic group Z_a."""
    geom = DennistonGeometry(t, l)
    a, q, gf = geom.a, geom.q, geom.gf

    def f(x, s):
        i, beta = divmod(s, a)
        pt = geom.phi_x(x)
        d = geom.intercept_of(pt, i)
        return (beta + geom.phi_uc_inv(i, d)) % a

    def g(s, alpha, kappa):
        i, beta = divmod(s, a)
        d = geom.phi_uc(i, (alpha - beta) % a)
        return geom.phi_x_inv(geom.block_points(i, d)[kappa])

    mosaic = Mosaic(geom.v, geom.b, a, f, g, k=geom.k,
                    member_kind="bibd",
                    member_params=BIBDParams(v=geom.v, k=geom.k, lam=1,
                                             r=geom.r, b=geom.b),
                    meta={"family": "m2", "t": t, "l": l})
    mosaic.geometry = geom
    return mosaic


def build_m3(t: int, l: int, u: int) -> Mosaic:
    """The u-fold point multiple of the (t, l) Denniston mosaic: singular GDDs
    with lambda1 = r = 2^t + 1 and lambda2 = 1."""
    base = build_m2(t, l)
    out = point_multiple(base, u)
    out.meta = {"family": "m3", "t": t, "l": l, "u": u}
    out.base = base
    return out


# ---------------------------------------------------------------------------
# M4: transversal designs from duals of affine planes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class M4Spec:
    q: int
    k: int
    slopes: tuple
    u: int
    v: int
    b: int
    r: int
    lam: int
    a: int


def m4_default_slopes(k: int, q: int) -> tuple:
    # a plain subset of F_q when k <= q; all q + 1 classes (vertical included)
    # only in the full dual-of-AG(2, q) case
    if k == q + 1:
        return tuple(range(q + 1))
    return tuple(range(k))


def m4_spec(k: int, q: int, slopes=None) -> M4Spec:
    prime_power(q)
    if not 2 <= k <= q + 1:
        raise ValueError("M4 requires 2 <= k <= q + 1")
    slopes = m4_default_slopes(k, q) if slopes is None else tuple(int(c) for c in slopes)
    if len(slopes) != k or len(set(slopes)) != k:
        raise ValueError(f"slope set must have exactly k = {k} distinct elements")
    if any(not 0 <= c <= q for c in slopes):
        raise ValueError("slopes must lie in F_q plus the vertical slope q")
    return M4Spec(q=q, k=k, slopes=slopes, u=q, v=q * k, b=q * q, r=q, lam=1, a=q)


def build_m4(k: int, q: int, slopes=None) -> Mosaic:
    """Mosaic of (q, k, 1) transversal designs on the lines with slopes in R.

    The point (c, d) is the line y = c x + d (x = d for the vertical slope);
    the block (s1, s2) is a point of AG(2, q).  Member alpha declares them
    incident when c s1 + d - s2 = alpha, so f(c, d; s1, s2) = c s1 + d - s2,
    and d = alpha + s2 - c s1 solves the preimage for each slope.  Vertical
    lines use the shifted rule d = s1 - alpha.
    """
    spec = m4_spec(k, q, slopes)
    p, e = prime_power(q)
    gf = make_field(p, e)
    R = spec.slopes

    def f(x, s):
        ci, d = divmod(x, q)
        c = R[ci]
        s1, s2 = divmod(s, q)
        if c == q:
            return gf.sub(s1, d)
        return gf.sub(gf.add(gf.mul(c, s1), d), s2)

    def g(s, alpha, kappa):
        c = R[kappa]
        s1, s2 = divmod(s, q)
        if c == q:
            d = gf.sub(s1, alpha)
        else:
            d = gf.sub(gf.add(alpha, s2), gf.mul(c, s1))
        return kappa * q + d

    partition = tuple(tuple(range(ci * q, (ci + 1) * q)) for ci in range(k))
    gdd = GDDParams(u=q, m=k, k=k, lambda1=0, lambda2=1,
                    v=spec.v, r=q, b=spec.b, partition=partition)
    return Mosaic(spec.v, spec.b, q, f, g, k=k, member_kind="gdd",
                  member_params=gdd, point_classes=partition,
                  meta={"family": "m4", "k": k, "q": q, "slopes": list(R)})


def td_design(k: int, q: int, slopes=None):
    """The underlying (q, k, 1) TD and, when no vertical slope is kept, its
    resolution into the point pencils {(e, *)}."""
    spec = m4_spec(k, q, slopes)
    p, e = prime_power(q)
    gf = make_field(p, e)
    N = np.zeros((spec.v, spec.b), dtype=np.uint8)
    for ci, c in enumerate(spec.slopes):
        for d in range(q):
            x = ci * q + d
            if c == q:
                for s2 in range(q):
                    N[x, d * q + s2] = 1
            else:
                for s1 in range(q):
                    N[x, s1 * q + gf.add(gf.mul(c, s1), d)] = 1
    resolution = None
    if q not in spec.slopes:
        classes = tuple(tuple(e1 * q + s2 for s2 in range(q)) for e1 in range(q))
        resolution = Resolution(classes)
    return IncidenceStructure(N), resolution


# ---------------------------------------------------------------------------
# small catalogued GDDs used as universal-hash test cases
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CataloguedGDD:
    name: str
    structure: IncidenceStructure
    resolution: Resolution
    partition: tuple
    params: GDDParams


def clatworthy_r1() -> CataloguedGDD:
    """The regular GDD with v=4, r=4, k=2, lambda1=2, lambda2=1 (kr = lambda1 v)."""
    blocks = [(0, 1), (2, 3), (0, 1), (2, 3), (0, 2), (1, 3), (0, 3), (1, 2)]
    D = IncidenceStructure.from_blocks(4, blocks)
    partition = ((0, 1), (2, 3))
    params = GDDParams.from_classes(u=2, m=2, k=2, lambda1=2, lambda2=1, partition=partition)
    res = Resolution(((0, 1), (2, 3), (4, 5), (6, 7)))
    return CataloguedGDD("R1", D, res, partition, params)


def clatworthy_r2() -> CataloguedGDD:
    """The regular GDD with v=4, r=5, k=2, lambda1=3, lambda2=1 (kr < lambda1 v)."""
    blocks = [(0, 1), (2, 3), (0, 1), (2, 3), (0, 1), (2, 3),
              (0, 2), (1, 3), (0, 3), (1, 2)]
    D = IncidenceStructure.from_blocks(4, blocks)
    partition = ((0, 1), (2, 3))
    params = GDDParams.from_classes(u=2, m=2, k=2, lambda1=3, lambda2=1, partition=partition)
    res = Resolution(((0, 1), (2, 3), (4, 5), (6, 7), (8, 9)))
    return CataloguedGDD("R2", D, res, partition, params)


FAMILY_BUILDERS = {
    "m1": (build_m1, ("t", "q")),
    "m2": (build_m2, ("t", "l")),
    "m3": (build_m3, ("t", "l", "u")),
    "m4": (build_m4, ("k", "q")),
}


def build_family(family: str, **params) -> Mosaic:
    try:
        builder, names = FAMILY_BUILDERS[family]
    except KeyError:
        raise ValueError(f"unknown family {family!r}; choose from {sorted(FAMILY_BUILDERS)}")
    missing = [n for n in names if params.get(n) is None]
    if missing:
        raise ValueError(f"family {family!r} needs parameters {names}, missing {missing}")
    return builder(**{n: params[n] for n in names})
