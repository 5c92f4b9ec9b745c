"""Exact arithmetic in GF(p^n) over a polynomial basis.

Field elements are encoded as integers in [0, p^n): the element
c0 + c1*theta + ... + c_{n-1}*theta^(n-1) corresponds to the integer
c0 + c1*p + ... + c_{n-1}*p^(n-1).  For p = 2 this is plain bit packing,
so addition is XOR and the basis vector theta^i is ``1 << i``.

Besides the four arithmetic operations, the module provides the
characteristic-2 machinery needed by the Denniston constructions:
absolute trace, dual basis, square roots, Artin-Schreier solving and
quadratic root finding.
"""

from __future__ import annotations

from dataclasses import dataclass

MAX_FIELD_ORDER = 1 << 20

# below this order, multiplication in a proper extension field is backed by
# discrete-log tables built once from the shift-and-add implementation
_LOG_TABLE_MAX = 1 << 16


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


# ---------------------------------------------------------------------------
# dense polynomials over GF(p): little-endian coefficient lists, no trailing 0
# ---------------------------------------------------------------------------

def _digits(m: int, p: int, n: int) -> list:
    out = []
    for _ in range(n):
        m, r = divmod(m, p)
        out.append(r)
    return out


def _trim(c: list) -> list:
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mul(a: list, b: list, p: int) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _trim(out)


def _poly_mod(a: list, b: list, p: int) -> list:
    a = _trim(list(a))
    db = len(b) - 1
    inv_lead = pow(b[-1], -1, p)
    while a and len(a) - 1 >= db:
        shift = len(a) - 1 - db
        factor = (a[-1] * inv_lead) % p
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - factor * bi) % p
        _trim(a)
    return a


def _is_irreducible(f: list, p: int) -> bool:
    """Brute-force irreducibility test: scan all monic divisors up to degree n/2."""
    n = len(f) - 1
    if n == 1:
        return True
    for d in range(1, n // 2 + 1):
        for m in range(p ** d):
            g = _digits(m, p, d) + [1]
            if not _poly_mod(f, g, p):
                return False
    return True


def _least_irreducible(p: int, n: int) -> tuple:
    # candidates ordered by the integer packing of the non-leading coefficients,
    # i.e. lexicographically by (c_{n-1}, ..., c_0); the search is reproducible
    for m in range(p ** n):
        f = _digits(m, p, n) + [1]
        if _is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("irreducible polynomial must exist for every degree")


def _gf2_inverse(rows: list, n: int) -> list:
    """Invert an n x n GF(2) matrix given as a list of row bitmasks."""
    aug = [rows[i] | (1 << (n + i)) for i in range(n)]
    for col in range(n):
        piv = next((i for i in range(col, n) if (aug[i] >> col) & 1), None)
        if piv is None:
            raise ValueError("matrix is singular over GF(2)")
        aug[col], aug[piv] = aug[piv], aug[col]
        for i in range(n):
            if i != col and (aug[i] >> col) & 1:
                aug[i] ^= aug[col]
    return [aug[i] >> n for i in range(n)]


@dataclass(frozen=True)
class DualBasisData:
    """Dual basis zeta_0..zeta_{n-1} with Tr(zeta_i * theta^j) = delta_ij.

    ``dual[i]`` is the packed encoding of zeta_i, and row i of ``T`` gives the
    coordinates of zeta_i in the polynomial basis.
    """

    dual: tuple
    T: tuple


class GF:
    """The finite field GF(p^n) in the polynomial basis {1, theta, ..., theta^(n-1)}.

    The modulus is a monic irreducible polynomial of degree n over GF(p),
    chosen deterministically (least in the candidate ordering) when not given.
    Instances are immutable apart from internal caches and safe to share.
    """

    def __init__(self, p, n, modulus=None, max_order=MAX_FIELD_ORDER):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if n < 1:
            raise ValueError("extension degree must be at least 1")
        order = p ** n
        if order > max_order:
            raise ValueError(f"field order {order} exceeds the configured bound {max_order}")
        self.p = p
        self.n = n
        self.order = order
        if modulus is None:
            modulus = _least_irreducible(p, n)
        else:
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != n + 1 or modulus[-1] != 1:
                raise ValueError("modulus must be monic of degree n")
            if not _is_irreducible(list(modulus), p):
                raise ValueError("modulus is reducible over GF(p)")
        self.modulus = modulus
        self._modlist = list(modulus)
        self._mod_bits = sum(c << i for i, c in enumerate(modulus)) if p == 2 else None
        self._exp = None
        self._log = None
        self._dual = None

    def __repr__(self):
        if self.n == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.n})"

    # -- encoding -----------------------------------------------------------

    def to_coeffs(self, x: int) -> tuple:
        if not 0 <= x < self.order:
            raise ValueError(f"{x} is not an element of {self}")
        return tuple(_digits(x, self.p, self.n))

    def from_coeffs(self, coeffs) -> int:
        coeffs = list(coeffs)
        if len(coeffs) > self.n:
            raise ValueError("too many coefficients")
        x = 0
        for i, c in enumerate(coeffs):
            if not 0 <= c < self.p:
                raise ValueError("coefficient out of range")
            x += c * self.p ** i
        return x

    def elements(self):
        return range(self.order)

    # -- arithmetic -----------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.n == 1:
            return (a + b) % self.p
        p = self.p
        out, mult = 0, 1
        while a or b:
            da, a = a % p, a // p
            db, b = b % p, b // p
            out += ((da + db) % p) * mult
            mult *= p
        return out

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        if self.n == 1:
            return (-a) % self.p
        p = self.p
        out, mult = 0, 1
        while a:
            da, a = a % p, a // p
            out += ((-da) % p) * mult
            mult *= p
        return out

    def sub(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.n == 1:
            return (a * b) % self.p
        if self._exp is None and self.order <= _LOG_TABLE_MAX:
            self._build_log_tables()
        if self._exp is not None:
            return self._exp[self._log[a] + self._log[b]]
        return self._mul_raw(a, b)

    def _mul_raw(self, a: int, b: int) -> int:
        if self.p == 2:
            mod, top, r = self._mod_bits, 1 << self.n, 0
            while b:
                if b & 1:
                    r ^= a
                b >>= 1
                a <<= 1
                if a & top:
                    a ^= mod
            return r
        prod = _poly_mul(_digits(a, self.p, self.n), _digits(b, self.p, self.n), self.p)
        return self.from_coeffs(_poly_mod(prod, self._modlist, self.p))

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError(f"0 has no inverse in {self}")
        if self.n == 1:
            return pow(a, -1, self.p)
        if self._exp is None and self.order <= _LOG_TABLE_MAX:
            self._build_log_tables()
        if self._exp is not None:
            q1 = self.order - 1
            return self._exp[(q1 - self._log[a]) % q1]
        return self._inv_euclid(a)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def _inv_euclid(self, a: int) -> int:
        p = self.p
        r0, r1 = self._modlist[:], _digits(a, p, self.n)
        _trim(r1)
        t0, t1 = [], [1]
        while r1:
            # one division step: r0 = q*r1 + rem
            rem, q = _trim(r0[:]), []
            db = len(r1) - 1
            inv_lead = pow(r1[-1], -1, p)
            q = [0] * max(len(rem) - db, 1)
            while rem and len(rem) - 1 >= db:
                shift = len(rem) - 1 - db
                factor = (rem[-1] * inv_lead) % p
                q[shift] = factor
                for i, bi in enumerate(r1):
                    rem[shift + i] = (rem[shift + i] - factor * bi) % p
                _trim(rem)
            qt1 = _poly_mul(_trim(q), t1, p)
            new_t = [(x - y) % p for x, y in
                     zip(t0 + [0] * max(0, len(qt1) - len(t0)),
                         qt1 + [0] * max(0, len(t0) - len(qt1)))]
            r0, r1 = r1, rem
            t0, t1 = t1, _trim(new_t)
        # r0 is the gcd, a nonzero constant
        c_inv = pow(r0[0], -1, p)
        inv_poly = [(c_inv * c) % p for c in t0]
        return self.from_coeffs(_poly_mod(inv_poly, self._modlist, p))

    def _build_log_tables(self):
        g = self._find_generator()
        q1 = self.order - 1
        exp = [1] * (2 * q1 - 1)
        log = [0] * self.order
        x = 1
        for i in range(q1):
            exp[i] = x
            log[x] = i
            x = self._mul_raw(x, g)
        for i in range(q1, 2 * q1 - 1):
            exp[i] = exp[i - q1]
        self._exp, self._log = exp, log

    def _find_generator(self) -> int:
        q1 = self.order - 1
        factors, m, f = [], q1, 2
        while f * f <= m:
            if m % f == 0:
                factors.append(f)
                while m % f == 0:
                    m //= f
            f += 1
        if m > 1:
            factors.append(m)

        def pow_raw(a, e):
            r = 1
            while e:
                if e & 1:
                    r = self._mul_raw(r, a)
                a = self._mul_raw(a, a)
                e >>= 1
            return r

        for g in range(2, self.order):
            if all(pow_raw(g, q1 // f) != 1 for f in factors):
                return g
        raise AssertionError("multiplicative group must be cyclic")

    # -- characteristic-2 machinery ------------------------------------------

    def trace(self, x: int) -> int:
        """Absolute trace x + x^p + ... + x^(p^(n-1)), as an int in [0, p)."""
        acc, y = x, x
        for _ in range(self.n - 1):
            y = self.pow(y, self.p)
            acc = self.add(acc, y)
        assert acc < self.p, "trace must lie in the prime subfield"
        return acc

    def sqrt(self, x: int) -> int:
        """The unique square root in characteristic 2, computed as x^(2^(n-1))."""
        self._require_char2()
        for _ in range(self.n - 1):
            x = self.mul(x, x)
        return x

    def dual_basis(self) -> DualBasisData:
        """Basis zeta_0..zeta_{n-1} dual to the polynomial basis under the trace form."""
        self._require_char2()
        if self._dual is None:
            n = self.n
            gram = []
            for i in range(n):
                row = 0
                for j in range(n):
                    if self.trace(self.mul(1 << i, 1 << j)):
                        row |= 1 << j
                gram.append(row)
            # row i of gram^-1 gives zeta_i in the polynomial basis; for p = 2
            # the row bitmask is already the packed element
            t_rows = _gf2_inverse(gram, n)
            dual = tuple(t_rows)
            T = tuple(tuple((r >> j) & 1 for j in range(n)) for r in t_rows)
            self._dual = DualBasisData(dual=dual, T=T)
        return self._dual

    def dual_coords(self, x: int) -> int:
        """Coordinates of x in the dual basis, packed as bits: bit i = Tr(x*theta^i)."""
        self._require_char2()
        out = 0
        for i in range(self.n):
            if self.trace(self.mul(x, 1 << i)):
                out |= 1 << i
        return out

    def from_dual_coords(self, bits: int) -> int:
        self._require_char2()
        dual = self.dual_basis().dual
        x = 0
        for i in range(self.n):
            if (bits >> i) & 1:
                x ^= dual[i]
        return x

    def artin_schreier_roots(self, a: int) -> tuple:
        """All w with w^2 + w = a, sorted; empty unless Tr(a) = 0, else exactly {w, w+1}."""
        self._require_char2()
        n = self.n
        cols = [self.mul(1 << j, 1 << j) ^ (1 << j) for j in range(n)]
        rows = []
        for i in range(n):
            r = 0
            for j in range(n):
                if (cols[j] >> i) & 1:
                    r |= 1 << j
            if (a >> i) & 1:
                r |= 1 << n
            rows.append(r)
        piv_cols, rank = [], 0
        for col in range(n):
            piv = next((i for i in range(rank, n) if (rows[i] >> col) & 1), None)
            if piv is None:
                continue
            rows[rank], rows[piv] = rows[piv], rows[rank]
            for i in range(n):
                if i != rank and (rows[i] >> col) & 1:
                    rows[i] ^= rows[rank]
            piv_cols.append(col)
            rank += 1
        if any(rows[i] >> n for i in range(rank, n)):
            return ()
        w = 0
        for idx, col in enumerate(piv_cols):
            if (rows[idx] >> n) & 1:
                w |= 1 << col
        # the kernel of w -> w^2 + w is the prime subfield {0, 1}
        return (min(w, w ^ 1), max(w, w ^ 1))

    def quadratic_roots(self, alpha: int, beta: int, gamma: int) -> tuple:
        """All c with alpha*c^2 + beta*c + gamma = 0 in characteristic 2.

        For beta != 0 this substitutes w = alpha*c/beta and solves the
        Artin-Schreier equation w^2 + w = alpha*gamma/beta^2; the degenerate
        beta = 0 case has the single root sqrt(gamma/alpha).
        """
        self._require_char2()
        if alpha == 0:
            raise ValueError("leading coefficient is zero; not a quadratic")
        if beta == 0:
            return (self.sqrt(self.div(gamma, alpha)),)
        k = self.div(self.mul(alpha, gamma), self.mul(beta, beta))
        scale = self.div(beta, alpha)
        return tuple(sorted(self.mul(scale, w) for w in self.artin_schreier_roots(k)))

    def _require_char2(self):
        if self.p != 2:
            raise ValueError("operation implemented for characteristic 2 only")


def make_field(p: int, n: int, max_order: int = MAX_FIELD_ORDER) -> GF:
    """GF(p^n) with the deterministically chosen least irreducible modulus."""
    return GF(p, n, max_order=max_order)


def prime_power(q: int) -> tuple:
    """Decompose q = p^e with p prime, or raise ValueError."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = q
    for f in range(2, q + 1):
        if f * f > q:
            break
        if q % f == 0:
            p = f
            break
    e = 0
    m = q
    while m % p == 0 and m > 1:
        m //= p
        e += 1
    if m != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, e
