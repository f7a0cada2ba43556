"""Local cyclotomic fields: Galois bookkeeping and finite-precision arithmetic.

Everything lives inside Q_p(zeta_m) for an odd prime p. Writing m = m' * p^t
with p not dividing m', the field is represented concretely as

    (Z/p^N)[x, y] / (g(x), E(y))

where g is the degree-f0 factor of the m'-th cyclotomic polynomial picked up
by Hensel lifting its (canonically chosen) mod-p factor, f0 = ord of p mod m',
and E(y) = Phi_{p^t}(1 + y) is Eisenstein of degree e0 = phi(p^t). So x is a
primitive m'-th root of unity, 1 + y is a primitive p^t-th root, and the
monomials x^i y^j (i < f0, j < e0) are an integral basis. The uniformizer is
y when t >= 1 and p when t = 0.

Conductors m' with phi(m') beyond CYCLO_FACTOR_BOUND cannot go through the
cyclotomic factorization; they are accepted exactly when m' = p^f0 - 1, in
which case g is built directly: pick the canonical primitive polynomial over
F_p (first in base-p coefficient order), lift its root to the Teichmueller
representative, and take the characteristic polynomial of that lift. This is
the regime of the root-of-unity generators of large unramified extensions,
where the full table of x-powers is also replaced by on-demand powering.

PadicElement stores (coefficient rows mod p^N, uniformizer-power shift,
trusted digit count). Two exact facts keep valuations honest: the valuation
of a coefficient vector is min over entries of e0*v_p(c_ij) + j, and
p = y * rho with rho read off exactly from E, so dividing by y costs exactly
one trusted p-digit. Unit inversion goes through the product of all Galois
conjugates (the norm is then a rational integer) and loses no digits.

Subfields are never given their own coordinates: a subfield K is a
LocalFieldSpec carrying the stabilizer subgroup U with K = fixed(U), and its
elements are ambient elements fixed by U.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import sympy

from .errors import (
    FieldOutOfRange,
    MalformedInput,
    NoRootInResidue,
    NotASubfield,
    NotAUnit,
    PrecisionLoss,
)
from .modp import (
    factor_poly,
    inv_mod,
    kernel_mod_pn,
    pgcd,
    pmod,
    pmul,
    ppowmod,
    psub,
    ptrim,
    pxgcd,
)

DEFAULT_PRECISION = 32

# Build g by factoring the m'-th cyclotomic polynomial only while phi(m') is
# this small; beyond it, fall back to the primitive-polynomial construction,
# which needs m' = p^f - 1.
CYCLO_FACTOR_BOUND = 600

# Precompute the table of all powers of x only for conductors up to this size;
# larger contexts compute powers on demand.
XPOW_TABLE_LIMIT = 10000

# Largest prime order allowed inside a residue-field discrete logarithm
# (Pohlig-Hellman reduces to baby-step giant-step per prime factor).
DLOG_PRIME_BOUND = 2_000_000


# ---------------------------------------------------------------------------
# Galois bookkeeping: pure modular arithmetic on (Z/m)^*


def _crt(m1: int, r1: int, m2: int, r2: int) -> int:
    if m1 == 1:
        return r2 % m2 if m2 > 1 else 0
    if m2 == 1:
        return r1 % m1
    g, s, _t = _xgcd(m1, m2)
    assert g == 1
    return (r1 + (r2 - r1) * s % m2 * m1) % (m1 * m2)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def _mult_order(a: int, m: int) -> int:
    if m == 1:
        return 1
    assert math.gcd(a, m) == 1
    k, cur = 1, a % m
    while cur != 1 % m:
        cur = cur * a % m
        k += 1
    return k


@dataclass(frozen=True)
class LocalGaloisGroup:
    """Gal(Q_p(zeta_m)/Q_p) as a subgroup of (Z/m)^*, inertia marked."""

    m: int
    p: int
    m_prime: int
    t: int
    elements: tuple[int, ...]
    inertia: tuple[int, ...]
    frobenius: int

    def __contains__(self, a: int) -> bool:
        return a % self.m in self.elements


def local_galois_group(m: int, p: int) -> LocalGaloisGroup:
    if not sympy.isprime(p) or p == 2:
        raise MalformedInput(f"p must be an odd prime, got {p}")
    if m < 1:
        raise MalformedInput(f"modulus must be positive, got {m}")
    m_prime, t = m, 0
    while m_prime % p == 0:
        m_prime //= p
        t += 1
    pt = p**t
    f0 = _mult_order(p, m_prime)
    elements = sorted(
        _crt(m_prime, pow(p, a, m_prime) if m_prime > 1 else 0, pt, u)
        for a in range(f0)
        for u in range(pt)
        if math.gcd(u, pt) == 1 or pt == 1
    )
    inertia = sorted(
        _crt(m_prime, 1, pt, u) for u in range(pt) if math.gcd(u, pt) == 1 or pt == 1
    )
    frob = _crt(m_prime, p, pt, 1)
    return LocalGaloisGroup(
        m=m,
        p=p,
        m_prime=m_prime,
        t=t,
        elements=tuple(elements),
        inertia=tuple(inertia),
        frobenius=frob,
    )


def _close_subgroup(gens: list[int], m: int) -> tuple[int, ...]:
    span = {1 % m}
    frontier = [g % m for g in gens]
    while frontier:
        g = frontier.pop()
        if g in span:
            continue
        span |= {g}
        frontier.extend(g * h % m for h in list(span))
        frontier.append(g * g % m)
    # close fully (the loop above can miss products of older elements)
    changed = True
    while changed:
        changed = False
        for a in list(span):
            for b in list(span):
                c = a * b % m
                if c not in span:
                    span.add(c)
                    changed = True
    return tuple(sorted(span))


@dataclass(frozen=True)
class LocalFieldSpec:
    """A subfield of Q_p(zeta_m): the fixed field of the stabilizer."""

    m: int
    p: int
    stabilizer: tuple[int, ...]
    degree: int
    e: int
    f: int

    @property
    def q(self) -> int:
        return self.p**self.f


def field_spec(m: int, p: int, stabilizer_gens: list[int]) -> LocalFieldSpec:
    G = local_galois_group(m, p)
    for a in stabilizer_gens:
        if a % m not in G.elements:
            raise MalformedInput(
                f"stabilizer generator {a} is not in the local Galois group mod {m}"
            )
    U = _close_subgroup(list(stabilizer_gens) + [1], m)
    inertia = set(G.inertia)
    u_in_i = [a for a in U if a in inertia]
    degree = len(G.elements) // len(U)
    e = len(G.inertia) // len(u_in_i)
    assert degree % e == 0
    return LocalFieldSpec(
        m=m, p=p, stabilizer=U, degree=degree, e=e, f=degree // e
    )


def load_field(spec: dict) -> LocalFieldSpec:
    try:
        m = int(spec["m"])
        p = int(spec["p"])
        gens = [int(a) for a in spec["stabilizer_gens"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedInput(f"bad field spec: {exc}") from exc
    return field_spec(m, p, gens)


@dataclass(frozen=True)
class ExtensionProfile:
    lower: LocalFieldSpec
    upper: LocalFieldSpec
    degree: int
    e: int
    f: int


def extension_profile(lower: LocalFieldSpec, upper: LocalFieldSpec) -> ExtensionProfile:
    if (lower.m, lower.p) != (upper.m, upper.p):
        raise NotASubfield("fields live in different ambient cyclotomic fields")
    if not set(upper.stabilizer) <= set(lower.stabilizer):
        raise NotASubfield("upper stabilizer is not contained in the lower one")
    G = local_galois_group(lower.m, lower.p)
    inertia = set(G.inertia)
    v_in_i = sum(1 for a in lower.stabilizer if a in inertia)
    u_in_i = sum(1 for a in upper.stabilizer if a in inertia)
    degree = len(lower.stabilizer) // len(upper.stabilizer)
    e = v_in_i // u_in_i
    assert degree % e == 0
    return ExtensionProfile(lower=lower, upper=upper, degree=degree, e=e, f=degree // e)


# ---------------------------------------------------------------------------
# integer polynomial helpers mod p^N (monic moduli only)


def _zmul(f: list[int], g: list[int], pn: int) -> list[int]:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                if b:
                    out[i + j] = (out[i + j] + a * b) % pn
    return out


def _zreduce(f: list[int], mod: tuple[int, ...], pn: int) -> list[int]:
    """Reduce modulo a monic polynomial, coefficients mod p^N."""
    deg = len(mod) - 1
    v = [a % pn for a in f]
    for i in range(len(v) - 1, deg - 1, -1):
        c = v[i]
        if c:
            base = i - deg
            for k in range(deg):
                v[base + k] = (v[base + k] - c * mod[k]) % pn
        v.pop()
    v += [0] * (deg - len(v))
    return v


def _pad(f: list[int], n: int) -> list[int]:
    return f + [0] * (n - len(f)) if len(f) < n else f


def _zadd(f: list[int], g: list[int], pn: int) -> list[int]:
    n = max(len(f), len(g))
    return [(a + b) % pn for a, b in zip(_pad(f, n), _pad(g, n))]


def _zsub(f: list[int], g: list[int], pn: int) -> list[int]:
    n = max(len(f), len(g))
    return [(a - b) % pn for a, b in zip(_pad(f, n), _pad(g, n))]


def _zdivmod_monic(
    f: list[int], g: list[int], pn: int
) -> tuple[list[int], list[int]]:
    assert g and g[-1] == 1, "divisor must be monic"
    r = [a % pn for a in f]
    dg = len(g) - 1
    if len(r) - 1 < dg:
        return [0], r
    q = [0] * (len(r) - dg)
    for i in range(len(r) - 1, dg - 1, -1):
        c = r[i]
        if c:
            q[i - dg] = c
            for k in range(dg + 1):
                r[i - dg + k] = (r[i - dg + k] - c * g[k]) % pn
    return q, ptrim(r) or [0]


def _hensel_factor(f: tuple[int, ...], p: int, n_target: int) -> tuple[int, ...]:
    """The canonical monic irreducible-mod-p factor of f over Z/p^(n_target).

    f must be monic and squarefree mod p. Picks the lexicographically
    smallest (degree first) monic irreducible factor mod p and lifts the
    factorization f = g*h together with a Bezout pair s*g + t*h = 1 by
    quadratic Hensel steps.
    """
    pN = p**n_target
    fbar = list(ptrim([c % p for c in f]))
    assert fbar[-1] == 1, "polynomial must be monic"
    factors = factor_poly(fbar, p)
    assert all(mult == 1 for _fac, mult in factors), "not squarefree mod p"
    g = list(min((tuple(fac) for fac, _m in factors), key=lambda fa: (len(fa), fa)))
    h, rem = _zdivmod_monic(fbar, g, p)
    assert rem == [0]
    _d, s, t = pxgcd(g, h, p)
    assert _d == [1], "factor and cofactor are not coprime mod p"
    cur = p
    fl = [c % pN for c in f]
    while cur < pN:
        cur = min(cur * cur, pN)
        e = _zsub(fl, _zmul(g, h, cur), cur)
        q, r = _zdivmod_monic(_zmul(t, e, cur), g, cur)
        g = _zadd(g, r, cur)
        h = ptrim(_zadd(_zadd(h, _zmul(s, e, cur), cur), _zmul(q, h, cur), cur)) or [0]
        assert g[-1] == 1 and h[-1] == 1, "lift must keep both factors monic"
        b = _zadd(_zmul(s, g, cur), _zmul(t, h, cur), cur)
        b[0] = (b[0] - 1) % cur
        b = ptrim(b) or []
        q2, r2 = _zdivmod_monic(_zmul(s, b, cur), h, cur)
        s = ptrim(_zsub(s, r2, cur)) or [0]
        t = ptrim(_zsub(_zsub(t, _zmul(t, b, cur), cur), _zmul(q2, g, cur), cur)) or [0]
    assert _zreduce(fl, tuple(g), pN) == [0] * (len(g) - 1)
    return tuple(c % pN for c in g)


# ---------------------------------------------------------------------------
# the computational ring (Z/p^N)[x, y]/(g(x), E(y))


@lru_cache(maxsize=None)
def _cyclo_int_coeffs(m: int) -> tuple[int, ...]:
    x = sympy.Symbol("x")
    poly = sympy.Poly(sympy.cyclotomic_poly(m, x), x)
    return tuple(int(c) for c in reversed(poly.all_coeffs()))


def _poly_powmod_pn(f, e: int, mod, pN: int) -> list[int]:
    """f^e reduced by the monic polynomial mod, coefficients in Z/p^N."""
    out = [1]
    base = _zreduce(list(f), tuple(mod), pN)
    while e:
        if e & 1:
            out = _zreduce(_zmul(out, base, pN), tuple(mod), pN)
        base = _zreduce(_zmul(base, base, pN), tuple(mod), pN)
        e >>= 1
    return _pad(out, len(mod) - 1)


def _is_irreducible_mod_p(f: list[int], p: int) -> bool:
    """Rabin's irreducibility test for a monic polynomial over F_p."""
    n = len(f) - 1
    if n < 1:
        return False
    xq = ppowmod([0, 1], p**n, f, p)
    if ptrim(psub(xq, [0, 1], p)):
        return False
    for ell in sympy.factorint(n):
        xe = ppowmod([0, 1], p ** (n // ell), f, p)
        if len(pgcd(psub(xe, [0, 1], p), f, p)) != 1:
            return False
    return True


def _primitive_residue_poly(p: int, f0: int) -> list[int]:
    """Canonical primitive polynomial of degree f0 over F_p.

    First monic polynomial, enumerating the non-leading coefficients as base-p
    digits of a counter (constant term least significant), whose root
    generates the multiplicative group of F_(p^f0).
    """
    q = p**f0
    radicals = list(sympy.factorint(q - 1))
    for idx in range(q):
        digits = []
        k = idx
        while k:
            digits.append(k % p)
            k //= p
        cand = _pad(digits, f0) + [1]
        if not _is_irreducible_mod_p(cand, p):
            continue
        if all(ppowmod([0, 1], (q - 1) // r, cand, p) != [1] for r in radicals):
            return cand
    raise AssertionError("no primitive polynomial of the requested degree (bug)")


def _minpoly_via_teichmuller(m_prime: int, p: int, N: int, f0: int) -> tuple[int, ...]:
    """Minimal polynomial of an exact m'-th root of unity for m' = p^f0 - 1.

    Any monic lift of an irreducible residue polynomial presents the
    unramified extension of Z/p^N, so lift the canonical primitive polynomial
    plainly, replace its root x by the Teichmueller representative
    z = lim x^(q^n), and return the characteristic polynomial of z. The root
    of the result has exact multiplicative order m'.
    """
    pN = p**N
    q = p**f0
    gbar = _primitive_residue_poly(p, f0)
    ghat = tuple(c % pN for c in gbar)
    z = _pad([0, 1], f0)
    for _ in range(N + 8):
        z_next = _poly_powmod_pn(z, q, ghat, pN)
        if z_next == z:
            break
        z = z_next
    else:
        raise AssertionError("Teichmueller lift of the residue root did not stabilize")
    conj = [z]
    for _ in range(f0 - 1):
        conj.append(_poly_powmod_pn(conj[-1], p, ghat, pN))
    # expand prod_j (X - conj[j]) with coefficients in (Z/p^N)[x]/(ghat)
    poly: list[list[int]] = [_pad([1], f0)]
    for c in conj:
        neg_c = [(-a) % pN for a in c]
        new = [[0] * f0 for _ in range(len(poly) + 1)]
        for i, coeff in enumerate(poly):
            for k in range(f0):
                new[i + 1][k] = (new[i + 1][k] + coeff[k]) % pN
            prod = _pad(_zreduce(_zmul(coeff, neg_c, pN), ghat, pN), f0)
            for k in range(f0):
                new[i][k] = (new[i][k] + prod[k]) % pN
        poly = new
    g = []
    for coeff in poly:
        assert all(a % pN == 0 for a in coeff[1:]), (
            "characteristic polynomial of the Teichmueller root must have "
            "scalar coefficients"
        )
        g.append(coeff[0] % pN)
    assert len(g) == f0 + 1 and g[-1] == 1
    assert [c % p for c in g] == gbar, "reduction must recover the residue polynomial"
    return tuple(g)


class PadicContext:
    """Shared arithmetic data for Q_p(zeta_m) at working precision N."""

    def __init__(self, m: int, p: int, N: int = DEFAULT_PRECISION):
        if N < 4:
            raise MalformedInput(f"precision must be at least 4, got {N}")
        self.m = m
        self.p = p
        self.N = N
        self.pN = p**N
        self.group = local_galois_group(m, p)
        self.m_prime = self.group.m_prime
        self.t = self.group.t
        self.e0 = (p - 1) * p ** (self.t - 1) if self.t >= 1 else 1
        # x: primitive m'-th root of unity, minimal polynomial g
        if self.m_prime == 1:
            self.g = (self.pN - 1, 1)  # x - 1: x is the trivial root
        elif int(sympy.totient(self.m_prime)) <= CYCLO_FACTOR_BOUND:
            self.g = _hensel_factor(_cyclo_int_coeffs(self.m_prime), p, N)
        else:
            f0 = _mult_order(p, self.m_prime)
            if self.m_prime != p**f0 - 1:
                raise FieldOutOfRange(
                    f"conductor {self.m_prime} is too large to factor the "
                    f"cyclotomic polynomial and is not of the form {p}^f - 1"
                )
            self.g = _minpoly_via_teichmuller(self.m_prime, p, N, f0)
        self.f0 = len(self.g) - 1
        self.q = p**self.f0
        # E(y) = Phi_{p^t}(1 + y), Eisenstein of degree e0, expanded over Z
        # so that the exact unit y^e0 / p = -(E_0/p + (E_1/p) y + ...) is
        # available at full precision
        if self.t >= 1:
            phi_pt = _cyclo_int_coeffs(p**self.t)
            acc = [0]
            pw = [1]
            for c in phi_pt:
                if c:
                    n = max(len(acc), len(pw))
                    acc = [
                        a + c * b
                        for a, b in zip(acc + [0] * (n - len(acc)), pw + [0] * (n - len(pw)))
                    ]
                pw = [
                    (pw[i - 1] if i else 0) + (pw[i] if i < len(pw) else 0)
                    for i in range(len(pw) + 1)
                ]
            E_exact = acc + [0] * (self.e0 + 1 - len(acc))
            assert len(E_exact) == self.e0 + 1 and E_exact[-1] == 1
            assert E_exact[0] == p, "constant term of E must be exactly p"
            assert all(c % p == 0 for c in E_exact[:-1]), "E must be Eisenstein"
            self.E = tuple(c % self.pN for c in E_exact)
            self.y_e0_over_p = tuple(
                (-(c // p)) % self.pN for c in E_exact[: self.e0]
            )
        else:
            self.E = (0, 1)  # y = 0; the y-direction is trivial
            self.y_e0_over_p = (1,)
        self.deg = self.f0 * self.e0
        # powers of x modulo g: a full table for small conductors, on-demand
        # powering (with a cache) beyond XPOW_TABLE_LIMIT
        self.xpow: list[tuple[int, ...]] | None
        self._xpow_cache: dict[int, tuple[int, ...]] = {}
        if self.m_prime <= XPOW_TABLE_LIMIT:
            xp = [0] * self.f0
            xp[0] = 1
            table: list[tuple[int, ...]] = []
            for _ in range(self.m_prime):
                table.append(tuple(xp))
                xp = _zreduce([0] + xp, self.g, self.pN)
            assert tuple(xp) == table[0], "x^m' must reduce to 1"
            self.xpow = table
        else:
            self.xpow = None
            one = _pad([1], self.f0)
            assert (
                _poly_powmod_pn([0, 1], self.m_prime, self.g, self.pN) == one
            ), "x^m' must reduce to 1"
            for r in sympy.factorint(self.m_prime):
                assert (
                    _poly_powmod_pn([0, 1], self.m_prime // r, self.g, self.pN)
                    != one
                ), "x must have exact order m'"
        # rho = p / y, read off E exactly: p = -sum_{k>=1} E_k y^k
        if self.t >= 1:
            self.rho = tuple(
                (-self.E[k]) % self.pN for k in range(1, self.e0 + 1)
            )
        else:
            self.rho = (1,)
        self._gal_cache: dict[int, tuple[list[list[int]], tuple[int, ...]]] = {}
        self._residue_gen: tuple[int, ...] | None = None
        self._teich_gen = None
        self._y_e0_unit_inv = None

    # -- constructors ------------------------------------------------------

    def _blank(self) -> list[list[int]]:
        return [[0] * self.f0 for _ in range(self.e0)]

    def zero(self) -> "PadicElement":
        return PadicElement(self, tuple(tuple(r) for r in self._blank()), 0, self.N)

    def from_int(self, c: int) -> "PadicElement":
        rows = self._blank()
        rows[0][0] = c % self.pN
        return PadicElement(self, tuple(tuple(r) for r in rows), 0, self.N)

    def one(self) -> "PadicElement":
        return self.from_int(1)

    def xpow_at(self, k: int) -> tuple[int, ...]:
        """x^k reduced modulo g, exponent taken modulo m'."""
        k %= self.m_prime
        if self.xpow is not None:
            return self.xpow[k]
        hit = self._xpow_cache.get(k)
        if hit is None:
            hit = tuple(_poly_powmod_pn([0, 1], k, self.g, self.pN))
            self._xpow_cache[k] = hit
        return hit

    def zeta_prime_power(self, k: int) -> "PadicElement":
        """zeta_{m'}^k as an element."""
        rows = self._blank()
        rows[0] = list(self.xpow_at(k))
        return PadicElement(self, tuple(tuple(r) for r in rows), 0, self.N)

    def zeta_p_power(self, k: int) -> "PadicElement":
        """zeta_{p^t}^k = (1 + y)^k as an element (t >= 1)."""
        assert self.t >= 1
        poly = _one_plus_y_power(self, k % (self.p**self.t))
        rows = self._blank()
        for j, c in enumerate(poly):
            rows[j][0] = c
        return PadicElement(self, tuple(tuple(r) for r in rows), 0, self.N)

    def zeta_power(self, k: int) -> "PadicElement":
        """zeta_m^k, where zeta_m = zeta_{m'} * zeta_{p^t}."""
        out = self.zeta_prime_power(k)
        if self.t >= 1:
            out = out * self.zeta_p_power(k)
        return out

    def uniformizer(self) -> "PadicElement":
        rows = self._blank()
        rows[0][0] = 1
        return PadicElement(self, tuple(tuple(r) for r in rows), 1, self.N)

    # -- raw vector arithmetic ---------------------------------------------

    def _vec_mul(self, a, b):
        e0, f0, pn = self.e0, self.f0, self.pN
        rows = [[0] * f0 for _ in range(2 * e0 - 1)]
        for j1 in range(e0):
            a1 = a[j1]
            if not any(a1):
                continue
            for j2 in range(e0):
                b2 = b[j2]
                if not any(b2):
                    continue
                conv = rows[j1 + j2]
                prod = _zmul(list(a1), list(b2), pn)
                red = _zreduce(prod, self.g, pn)
                for i in range(f0):
                    conv[i] = (conv[i] + red[i]) % pn
        # reduce y-powers >= e0 with E
        for j in range(2 * e0 - 2, e0 - 1, -1):
            row = rows[j]
            if any(row):
                for k in range(e0):
                    ek = self.E[k]
                    if ek:
                        dst = rows[j - e0 + k]
                        for i in range(f0):
                            dst[i] = (dst[i] - ek * row[i]) % pn
            rows.pop()
        return tuple(tuple(r) for r in rows)

    def _vec_shift_unif(self, rows, k: int):
        """Multiply a coefficient vector by uniformizer^k (k >= 0), exactly."""
        assert k >= 0
        if self.t == 0:
            pk = pow(self.p, k, self.pN)
            return tuple(tuple(c * pk % self.pN for c in r) for r in rows)
        out = [list(r) for r in rows]
        for _ in range(k):
            top = out[-1]
            shifted = [[0] * self.f0] + out[:-1]
            if any(top):
                for kk in range(self.e0):
                    ek = self.E[kk]
                    if ek:
                        dst = shifted[kk]
                        for i in range(self.f0):
                            dst[i] = (dst[i] - ek * top[i]) % self.pN
            out = shifted
        return tuple(tuple(r) for r in out)

    def _vec_divide_unif_once(self, rows):
        """Divide by the uniformizer; needs valuation >= 1, costs one digit."""
        if self.t == 0:
            assert all(c % self.p == 0 for r in rows for c in r), "not divisible"
            return tuple(tuple(c // self.p for c in r) for r in rows)
        # x/y = x * rho / p with rho = p/y exact
        rho_rows = self._blank()
        for j, c in enumerate(self.rho):
            rho_rows[j][0] = c
        prod = self._vec_mul(rows, tuple(tuple(r) for r in rho_rows))
        assert all(c % self.p == 0 for r in prod for c in r), "not divisible"
        return tuple(tuple(c // self.p for c in r) for r in prod)

    def _vp_int(self, c: int, cap: int) -> int:
        c %= self.p**cap
        if c == 0:
            return cap
        v = 0
        while c % self.p == 0:
            c //= self.p
            v += 1
        return v

    def _vec_valuation(self, rows, prec: int) -> int | None:
        """pi-adic valuation of the vector, or None if zero at precision."""
        best = None
        for j, row in enumerate(rows):
            for c in row:
                vp = self._vp_int(c, prec)
                if vp < prec:
                    v = self.e0 * vp + j
                    if best is None or v < best:
                        best = v
        return best

    # -- Galois ------------------------------------------------------------

    def _galois_tables(self, a: int):
        """Per-automorphism data: powers of sigma_a(y), the unit sigma_a(y)/y,
        and the images x^(i*a) of the x-power basis."""
        a %= self.m
        if a not in self._gal_cache:
            if a not in self.group.elements:
                raise MalformedInput(
                    f"{a} is not in the local Galois group mod {self.m}"
                )
            if self.t >= 1:
                b = a % (self.p**self.t)
                # sigma(y) = (1+y)^b - 1; sigma(y)/y = sum_k C(b,k) y^(k-1)
                binom = 1
                tail: list[int] = []
                for k in range(1, b + 1):
                    binom = binom * (b - k + 1) // k
                    tail.append(binom % self.pN)
                w = _zreduce(tail, self.E, self.pN)
                ypoly = _zreduce([0] + tail, self.E, self.pN)
                powers = [[0] * self.e0 for _ in range(self.e0)]
                powers[0][0] = 1
                cur = [1]
                for j in range(1, self.e0):
                    cur = _zreduce(_zmul(cur, ypoly, self.pN), self.E, self.pN)
                    powers[j] = list(cur)
            else:
                powers, w = [[1]], (1,)
            xa = list(self.xpow_at(a % self.m_prime))
            xrows = [_pad([1], self.f0)]
            for _ in range(1, self.f0):
                nxt = _pad(
                    _zreduce(_zmul(xrows[-1], xa, self.pN), self.g, self.pN),
                    self.f0,
                )
                xrows.append(nxt)
            self._gal_cache[a] = (powers, tuple(w), xrows)
        return self._gal_cache[a]

    def galois_apply(self, a: int, elt: "PadicElement") -> "PadicElement":
        """sigma_a with zeta_{m'} -> zeta_{m'}^a, zeta_{p^t} -> zeta_{p^t}^a."""
        a %= self.m
        powers, w, xrows = self._galois_tables(a)
        out = [[0] * self.f0 for _ in range(self.e0)]
        for j in range(self.e0):
            row = elt.vec[j]
            ypoly = powers[j]
            for i in range(self.f0):
                c = row[i]
                if not c:
                    continue
                xv = xrows[i]
                for jj in range(self.e0):
                    yc = ypoly[jj]
                    if yc:
                        dst = out[jj]
                        cy = c * yc % self.pN
                        for ii in range(self.f0):
                            if xv[ii]:
                                dst[ii] = (dst[ii] + cy * xv[ii]) % self.pN
        res = PadicElement(self, tuple(tuple(r) for r in out), elt.shift, elt.prec)
        if elt.shift and self.t >= 1:
            # sigma(y^shift) = (sigma(y)/y)^shift * y^shift
            w_rows = self._blank()
            for j, c in enumerate(w):
                w_rows[j][0] = c
            w_elt = PadicElement(self, tuple(tuple(r) for r in w_rows), 0, elt.prec)
            res = res * _unit_power(w_elt, elt.shift)
        return res


def _one_plus_y_power(ctx: PadicContext, k: int) -> list[int]:
    """(1 + y)^k reduced mod E, as a y-coefficient list of length e0."""
    out = [1]
    base = [1, 1]
    while k:
        if k & 1:
            out = _zreduce(_zmul(out, base, ctx.pN), ctx.E, ctx.pN)
        base = _zreduce(_zmul(base, base, ctx.pN), ctx.E, ctx.pN)
        k >>= 1
    return _pad(out, ctx.e0)


def _unit_power(elt: "PadicElement", k: int) -> "PadicElement":
    if k < 0:
        elt = elt.inverse()
        k = -k
    out = elt.ctx.one()
    base = elt
    while k:
        if k & 1:
            out = out * base
        base = base * base
        k >>= 1
    return out


class PadicElement:
    """A value uniformizer^shift * (coefficient vector), trusted mod p^prec."""

    __slots__ = ("ctx", "vec", "shift", "prec")

    def __init__(self, ctx: PadicContext, vec, shift: int, prec: int):
        if prec < 1:
            raise PrecisionLoss("element has no trusted digits left")
        self.ctx = ctx
        self.vec = vec
        self.shift = shift
        self.prec = min(prec, ctx.N)

    # -- ring ops ------------------------------------------------------------

    def _aligned(self, other: "PadicElement"):
        assert self.ctx is other.ctx, "elements from different contexts"
        s = min(self.shift, other.shift)
        va = self.ctx._vec_shift_unif(self.vec, self.shift - s)
        vb = self.ctx._vec_shift_unif(other.vec, other.shift - s)
        return va, vb, s

    def __add__(self, other: "PadicElement") -> "PadicElement":
        va, vb, s = self._aligned(other)
        pn = self.ctx.pN
        rows = tuple(
            tuple((a + b) % pn for a, b in zip(ra, rb)) for ra, rb in zip(va, vb)
        )
        return PadicElement(self.ctx, rows, s, min(self.prec, other.prec))

    def __sub__(self, other: "PadicElement") -> "PadicElement":
        va, vb, s = self._aligned(other)
        pn = self.ctx.pN
        rows = tuple(
            tuple((a - b) % pn for a, b in zip(ra, rb)) for ra, rb in zip(va, vb)
        )
        return PadicElement(self.ctx, rows, s, min(self.prec, other.prec))

    def __neg__(self) -> "PadicElement":
        pn = self.ctx.pN
        rows = tuple(tuple((-a) % pn for a in r) for r in self.vec)
        return PadicElement(self.ctx, rows, self.shift, self.prec)

    def __mul__(self, other) -> "PadicElement":
        if isinstance(other, int):
            pn = self.ctx.pN
            rows = tuple(tuple(a * other % pn for a in r) for r in self.vec)
            return PadicElement(self.ctx, rows, self.shift, self.prec)
        rows = self.ctx._vec_mul(self.vec, other.vec)
        return PadicElement(
            self.ctx, rows, self.shift + other.shift, min(self.prec, other.prec)
        )

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "PadicElement":
        return _unit_power(self, k)

    def __truediv__(self, other: "PadicElement") -> "PadicElement":
        return self * other.inverse()

    # -- valuation and normal form -------------------------------------------

    def vec_valuation(self) -> int | None:
        return self.ctx._vec_valuation(self.vec, self.prec)

    def is_zero_at_precision(self) -> bool:
        return self.vec_valuation() is None

    def valuation(self) -> int:
        """pi-adic valuation (pi the ambient uniformizer)."""
        v = self.vec_valuation()
        if v is None:
            raise PrecisionLoss("zero at working precision: valuation undefined")
        return self.shift + v

    def normalized(self) -> "PadicElement":
        """Move the coefficient-vector valuation into the shift."""
        v = self.vec_valuation()
        if v is None:
            raise PrecisionLoss("zero at working precision")
        if v == 0:
            return self
        rows, cost = _divide_unif(self.ctx, self.vec, v)
        return PadicElement(self.ctx, rows, self.shift + v, self.prec - cost)

    def inverse(self) -> "PadicElement":
        u = self.normalized()
        ctx = self.ctx
        # product of the nontrivial conjugates; the full product is rational
        conj = None
        for a in ctx.group.elements:
            if a == 1 % ctx.m:
                continue
            s = ctx.galois_apply(a, PadicElement(ctx, u.vec, 0, u.prec))
            conj = s if conj is None else conj * s
        if conj is None:  # ambient field is Q_p itself
            n0 = u.vec[0][0]
            if n0 % ctx.p == 0:
                raise PrecisionLoss("unit part is not a unit (internal)")
            inv_rows = ((inv_mod(n0, ctx.pN),),)
            return PadicElement(ctx, inv_rows, -u.shift, u.prec)
        norm = PadicElement(ctx, u.vec, 0, u.prec) * conj
        n0 = norm.vec[0][0]
        pprec = ctx.p**norm.prec
        assert all(
            c % pprec == 0
            for j, row in enumerate(norm.vec)
            for i, c in enumerate(row)
            if (i, j) != (0, 0)
        ), "norm of a unit must be rational"
        assert n0 % ctx.p != 0, "norm of a unit must be a unit"
        n_inv = inv_mod(n0 % ctx.pN, ctx.pN)
        inv_vec = tuple(
            tuple(c * n_inv % ctx.pN for c in row) for row in conj.vec
        )
        return PadicElement(ctx, inv_vec, -u.shift, u.prec)

    # -- comparisons and display ----------------------------------------------

    def agrees_with(self, other: "PadicElement") -> bool:
        """Equality at the shared precision."""
        return (self - other).is_zero_at_precision()

    def residue(self) -> tuple[int, ...]:
        """Image in the residue field F_q, as x-coefficients mod p."""
        assert self.shift == 0, "normalize the shift away before reducing"
        assert self.vec_valuation() == 0, "residue needs an integral unit"
        return tuple(c % self.ctx.p for c in self.vec[0])

    def __repr__(self) -> str:
        v = self.vec_valuation()
        val = "+inf" if v is None else str(self.shift + v)
        return (
            f"<PadicElement m={self.ctx.m} p={self.ctx.p} v={val}"
            f" + O({self.ctx.p}^{self.prec})>"
        )


def _strip_unit_inverse(ctx: PadicContext) -> "PadicElement":
    """(y^e0 / p)^-1, the exact unit correcting p-divisions in strips."""
    if ctx._y_e0_unit_inv is None:
        rows = ctx._blank()
        for j, c in enumerate(ctx.y_e0_over_p):
            rows[j][0] = c
        unit = PadicElement(ctx, tuple(tuple(r) for r in rows), 0, ctx.N)
        ctx._y_e0_unit_inv = unit.inverse()
    return ctx._y_e0_unit_inv


def _divide_unif(ctx: PadicContext, rows, k: int):
    """Divide a coefficient vector by uniformizer^k; returns (rows, digit cost)."""
    assert k >= 0
    if ctx.t == 0:
        pk = ctx.p**k
        assert all(c % pk == 0 for r in rows for c in r)
        return tuple(tuple(c // pk for c in r) for r in rows), k
    kp, ky = divmod(k, ctx.e0)
    if kp:
        # y^e0 = p * (y^e0/p), so /y^(e0*kp) is /p^kp times a unit power
        pkp = ctx.p**kp
        assert all(c % pkp == 0 for r in rows for c in r), "p-part not divisible"
        rows = tuple(tuple(c // pkp for c in r) for r in rows)
        corr = _unit_power(_strip_unit_inverse(ctx), kp)
        rows = ctx._vec_mul(rows, corr.vec)
    for _ in range(ky):
        rows = ctx._vec_divide_unif_once(rows)
    return rows, kp + ky


# ---------------------------------------------------------------------------
# residue field F_q and discrete logs


def _residue_modulus(ctx: PadicContext) -> list[int]:
    return [c % ctx.p for c in ctx.g]


def _fq_mul(a, b, gbar, p):
    return _pad(pmod(pmul(list(a), list(b), p), gbar, p), len(gbar) - 1)


def _residue_generator(ctx: PadicContext) -> tuple[int, ...]:
    """Deterministic generator of F_q^*: smallest in base-p encoding order."""
    if ctx._residue_gen is not None:
        return ctx._residue_gen
    p, q = ctx.p, ctx.q
    gbar = _residue_modulus(ctx)
    radicals = list(sympy.factorint(q - 1))
    idx = 2 if ctx.f0 == 1 else p  # skip 0 and 1; start at x for f0 > 1
    while True:
        digits = []
        k = idx
        while k:
            digits.append(k % p)
            k //= p
        cand = _pad(digits, ctx.f0)
        idx += 1
        if all(
            ppowmod(cand, (q - 1) // r, gbar, p) != [1] for r in radicals
        ):
            ctx._residue_gen = tuple(cand)
            return ctx._residue_gen


def _bsgs_dlog(target, base, order: int, ctx: PadicContext) -> int:
    """Discrete log of target w.r.t. base in F_q^*, brute BSGS."""
    p = ctx.p
    gbar = _residue_modulus(ctx)
    mm = math.isqrt(order - 1) + 1 if order > 1 else 1
    baby: dict[tuple[int, ...], int] = {}
    cur = _pad([1], ctx.f0)
    for j in range(mm):
        baby.setdefault(tuple(cur), j)
        cur = _fq_mul(cur, base, gbar, p)
    giant = _pad(ppowmod(list(base), order - mm, gbar, p), ctx.f0)
    cur = _pad(list(target), ctx.f0)
    for i in range(mm + 1):
        j = baby.get(tuple(cur))
        if j is not None:
            return (i * mm + j) % order
        cur = _fq_mul(cur, giant, gbar, p)
    raise AssertionError("dlog target is not in the subgroup (bug)")


def _dlog(target, base, order: int, ctx: PadicContext) -> int:
    """Discrete log of target w.r.t. base of the given order in F_q^*.

    Pohlig-Hellman over the factorization of the order, so the cost is
    baby-step giant-step in the largest prime factor, not in the order.
    """
    fac = sympy.factorint(order) if order > 1 else {}
    if fac and max(fac) > DLOG_PRIME_BOUND:
        raise FieldOutOfRange(
            f"residue discrete log needs a cyclic group of prime order "
            f"{max(fac)}, beyond the supported bound {DLOG_PRIME_BOUND}"
        )
    p = ctx.p
    gbar = _residue_modulus(ctx)
    t0 = _pad(list(target), ctx.f0)
    b0 = _pad(list(base), ctx.f0)
    out, mod = 0, 1
    for ell, k in fac.items():
        lk = ell**k
        co = order // lk
        b_sub = _pad(ppowmod(b0, co, gbar, p), ctx.f0)
        t_sub = _pad(ppowmod(t0, co, gbar, p), ctx.f0)
        gamma = _pad(ppowmod(b_sub, ell ** (k - 1), gbar, p), ctx.f0)
        x = 0
        for i in range(k):
            h = _fq_mul(t_sub, ppowmod(b_sub, (lk - x) % lk, gbar, p), gbar, p)
            h = _pad(ppowmod(h, ell ** (k - 1 - i), gbar, p), ctx.f0)
            x += _bsgs_dlog(h, gamma, ell, ctx) * ell**i
        out = _crt(mod, out, lk, x % lk)
        mod *= lk
    assert _pad(ppowmod(b0, out, gbar, p), ctx.f0) == t0, (
        "dlog target is not in the subgroup (bug)"
    )
    return out


# ---------------------------------------------------------------------------
# Teichmueller decomposition, roots, norms


def teichmuller_split(u: PadicElement) -> tuple[PadicElement, PadicElement]:
    """u = zeta * u1 with zeta^(q-1) = 1 and u1 a 1-unit."""
    ctx = u.ctx
    v = u.vec_valuation()
    if v is None or u.shift + v != 0:
        raise NotAUnit("Teichmueller decomposition needs a unit")
    if u.shift != 0:
        u = u.normalized()
    q = ctx.q
    z = u
    mask = ctx.p**z.prec
    # each q-power gains at least one trusted digit once the 1-unit part is
    # past the shallow ramified range, so 2*prec + 8 iterations always suffice
    for _ in range(2 * z.prec + 8):
        z_next = _unit_power(z, q)
        if all(
            (a - b) % mask == 0
            for ra, rb in zip(z_next.vec, z.vec)
            for a, b in zip(ra, rb)
        ):
            z = z_next
            break
        z = z_next
    else:
        raise AssertionError("Teichmueller iteration did not stabilize")
    u1 = u * z.inverse()
    return z, u1


def _teich_generator(ctx: PadicContext) -> PadicElement:
    """Teichmueller lift of the canonical generator of F_q^*."""
    if ctx._teich_gen is None:
        gen = _residue_generator(ctx)
        rows = [[0] * ctx.f0 for _ in range(ctx.e0)]
        rows[0] = [c % ctx.pN for c in gen]
        lift = PadicElement(ctx, tuple(tuple(r) for r in rows), 0, ctx.N)
        ctx._teich_gen = teichmuller_split(lift)[0]
    return ctx._teich_gen


def sth_root_of_unit(x: PadicElement, s: int) -> PadicElement:
    """y with y^s = x, for a unit x and s coprime to p.

    Canonical choice: the root whose Teichmueller part has the smallest
    discrete log with respect to the canonical generator of mu_(q-1).
    """
    ctx = x.ctx
    if s < 1 or math.gcd(s, ctx.p) != 1:
        raise MalformedInput(f"s must be a positive integer coprime to p, got {s}")
    if s == 1:
        return x
    zeta_part, u1 = teichmuller_split(x)  # raises NotAUnit for non-units
    order = ctx.q - 1
    gen = _residue_generator(ctx)
    d = _dlog(zeta_part.residue(), gen, order, ctx)
    c = math.gcd(s, order)
    if d % c != 0:
        raise NoRootInResidue(
            f"root-of-unity part has discrete log {d}, not divisible by {c}"
        )
    sub_order = order // c
    e_sol = (d // c) * inv_mod((s // c) % sub_order, sub_order) % sub_order if sub_order > 1 else 0
    zeta_root = _unit_power(_teich_generator(ctx), e_sol)
    # 1-units: the s-th power map is bijective, invert the exponent p-adically;
    # the extra ctx.t slack covers the slow first steps in the ramified range
    t_exp = inv_mod(s, ctx.p ** (u1.prec + ctx.t + 2))
    y1 = _unit_power(u1, t_exp)
    root = zeta_root * y1
    assert _unit_power(root, s).agrees_with(x), "s-th root verification failed"
    return root


def norm_over_subgroup(x: PadicElement, subgroup) -> PadicElement:
    """Product of sigma_a(x) over the subgroup generated by the given elements."""
    ctx = x.ctx
    elems = _close_subgroup(list(subgroup), ctx.m)
    out = None
    for a in elems:
        s = ctx.galois_apply(a, x)
        out = s if out is None else out * s
    for a in elems:
        assert ctx.galois_apply(a, out).agrees_with(out), "norm must be fixed"
    return out


# ---------------------------------------------------------------------------
# uniformizers of subfields


def uniformizer_of(K: LocalFieldSpec, ctx: PadicContext) -> PadicElement:
    """An element of K = fixed(stabilizer) with K-valuation exactly 1."""
    assert (K.m, K.p) == (ctx.m, ctx.p), "field spec and context disagree"
    target = ctx.e0 // K.e  # ambient valuation of a K-uniformizer
    assert ctx.e0 % K.e == 0
    if ctx.t == 0 or K.e == 1:
        # K is unramified: p works and is always fixed
        out = ctx.from_int(ctx.p) if ctx.t >= 1 else ctx.uniformizer()
        assert out.valuation() == target
        return out
    U = K.stabilizer

    def trace_over_u(elt: PadicElement) -> PadicElement:
        acc = None
        for a in U:
            s = ctx.galois_apply(a, elt)
            acc = s if acc is None else acc + s
        return acc

    # traces of small monomials, cheapest first
    for j in range(1, ctx.e0):
        for i in range(ctx.f0):
            rows = [[0] * ctx.f0 for _ in range(ctx.e0)]
            rows[j][i] = 1
            cand = trace_over_u(
                PadicElement(ctx, tuple(tuple(r) for r in rows), 0, ctx.N)
            )
            v = cand.vec_valuation()
            if v == target:
                return cand
    # fall back to a basis of the full fixed lattice
    gens = [a for a in U if a != 1 % ctx.m]
    mat: list[list[int]] = []
    basis_elts = []
    for j in range(ctx.e0):
        for i in range(ctx.f0):
            rows = [[0] * ctx.f0 for _ in range(ctx.e0)]
            rows[j][i] = 1
            basis_elts.append(PadicElement(ctx, tuple(tuple(r) for r in rows), 0, ctx.N))
    for a in gens:
        images = [ctx.galois_apply(a, b) for b in basis_elts]
        for jj in range(ctx.e0):
            for ii in range(ctx.f0):
                row = []
                for b_idx, img in enumerate(images):
                    base = basis_elts[b_idx]
                    diff = img - base
                    row.append(diff.vec[jj][ii])
                mat.append(row)
    fixed = [
        vec for vec, torsion in kernel_mod_pn(mat, ctx.p, ctx.N) if torsion is None
    ]

    def from_coords(coords) -> PadicElement:
        rows = [[0] * ctx.f0 for _ in range(ctx.e0)]
        for idx, c in enumerate(coords):
            jj, ii = divmod(idx, ctx.f0)
            rows[jj][ii] = c % ctx.pN
        return PadicElement(ctx, tuple(tuple(r) for r in rows), 0, ctx.N)

    cands = [from_coords(v) for v in fixed]
    pool = list(cands)
    for idx_a in range(len(cands)):
        for idx_b in range(idx_a + 1, len(cands)):
            pool.append(cands[idx_a] + cands[idx_b])
            pool.append(cands[idx_a] - cands[idx_b])
    for cand in pool:
        if cand.vec_valuation() == target and all(
            ctx.galois_apply(a, cand).agrees_with(cand) for a in gens
        ):
            return cand
    raise AssertionError(
        f"no uniformizer with ambient valuation {target} found for {K}"
    )
