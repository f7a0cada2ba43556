"""Exact character tables over cyclotomic fields.

Characters are stored as vectors of CycloElement values, one per conjugacy
class, with classes in the order produced by conjugacy_classes. Values live
in Q(zeta_m) for m the group exponent, written in the power basis
1, zeta, ..., zeta^(phi(m)-1); coefficients are Fractions, so equality is
exact and there is no rounding anywhere.

The table comes from the Dixon-Schneider method: the structure constants of
the class algebra are simultaneously diagonalized over F_l for a prime
l = 1 (mod m), giving the central characters mod l, and the mod-l values
are lifted to Q(zeta_m) by a discrete Fourier transform over each element
order. The lift is canonical once the primitive m-th root of unity mod l
is fixed, and the finished rows are sorted by (degree, value vector) so the
table order is reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import sympy

from .errors import InternalPrimeSearchFailed, NotAUnit
from .groups import ConjugacyClassSet, FiniteGroupData, GammaAction, conjugacy_classes
from .modp import charpoly, inv_mod, kernel, poly_roots, primitive_root_mod

PRIME_SEARCH_BOUND = 1 << 24


@lru_cache(maxsize=None)
def _phi_poly(m: int) -> tuple[int, ...]:
    """Coefficients of the m-th cyclotomic polynomial, low to high, monic."""
    x = sympy.Symbol("x")
    poly = sympy.Poly(sympy.cyclotomic_poly(m, x), x)
    return tuple(int(c) for c in reversed(poly.all_coeffs()))


@lru_cache(maxsize=None)
def _zeta_power_table(m: int) -> tuple[tuple[Fraction, ...], ...]:
    """Power-basis vectors of zeta_m^k for k = 0..m-1."""
    phi = _phi_poly(m)
    deg = len(phi) - 1
    rows = []
    cur = [Fraction(0)] * deg
    cur[0] = Fraction(1)
    for _ in range(m):
        rows.append(tuple(cur))
        nxt = [Fraction(0)] + cur
        if len(nxt) > deg:
            lead = nxt.pop()
            if lead:
                for i in range(deg):
                    nxt[i] -= lead * phi[i]
        cur = nxt
    assert tuple(cur) == rows[0], "zeta_m^m must reduce to 1"
    return tuple(rows)


def _reduce_mod_phi(vec: list[Fraction], m: int) -> tuple[Fraction, ...]:
    phi = _phi_poly(m)
    deg = len(phi) - 1
    v = list(vec)
    for i in range(len(v) - 1, deg - 1, -1):
        c = v[i]
        if c:
            base = i - deg
            for j in range(deg):
                v[base + j] -= c * phi[j]
    v = v[:deg]
    v += [Fraction(0)] * (deg - len(v))
    return tuple(v)


class CycloElement:
    """An element of Q(zeta_m) in the power basis, with exact coefficients."""

    __slots__ = ("m", "coeffs")

    def __init__(self, m: int, coeffs):
        self.m = m
        deg = len(_phi_poly(m)) - 1
        cs = tuple(Fraction(c) for c in coeffs)
        assert len(cs) == deg, f"need {deg} coefficients for modulus {m}"
        self.coeffs = cs

    def _match(self, other: "CycloElement") -> None:
        assert self.m == other.m, "mixed cyclotomic moduli"

    def __add__(self, other: "CycloElement") -> "CycloElement":
        self._match(other)
        return CycloElement(self.m, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "CycloElement") -> "CycloElement":
        self._match(other)
        return CycloElement(self.m, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> "CycloElement":
        return CycloElement(self.m, [-a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycloElement(self.m, [a * other for a in self.coeffs])
        self._match(other)
        a, b = self.coeffs, other.coeffs
        prod = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        prod[i + j] += ai * bj
        return CycloElement(self.m, _reduce_mod_phi(prod, self.m))

    __rmul__ = __mul__

    def __truediv__(self, other) -> "CycloElement":
        q = Fraction(other)
        return CycloElement(self.m, [a / q for a in self.coeffs])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CycloElement)
            and self.m == other.m
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.m, self.coeffs))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def as_rational(self) -> Fraction:
        assert self.is_rational(), "not a rational value"
        return self.coeffs[0]

    def galois(self, a: int) -> "CycloElement":
        """Apply zeta_m -> zeta_m^a; a must be a unit mod m."""
        if math.gcd(a, self.m) != 1:
            raise NotAUnit(f"{a} is not a unit modulo {self.m}")
        table = _zeta_power_table(self.m)
        out = [Fraction(0)] * len(self.coeffs)
        for i, c in enumerate(self.coeffs):
            if c:
                row = table[(a * i) % self.m]
                for j, rj in enumerate(row):
                    out[j] += c * rj
        return CycloElement(self.m, out)

    def conj(self) -> "CycloElement":
        return self.galois(self.m - 1) if self.m > 1 else self

    def __repr__(self) -> str:
        return f"CycloElement(m={self.m}, coeffs={list(self.coeffs)})"


def zeta(m: int, k: int = 1) -> CycloElement:
    return CycloElement(m, _zeta_power_table(m)[k % m])


def cyclo_rational(m: int, q) -> CycloElement:
    deg = len(_phi_poly(m)) - 1
    coeffs = [Fraction(q)] + [Fraction(0)] * (deg - 1)
    return CycloElement(m, coeffs)


@dataclass(frozen=True)
class Character:
    """A table row: exact values per conjugacy class, plus the class data
    needed to act on it."""

    degree: int
    values: tuple[CycloElement, ...]
    m: int
    classes: ConjugacyClassSet

    def value_at(self, element: int) -> CycloElement:
        return self.values[self.classes.class_of[element]]

    def sort_key(self):
        return (self.degree, tuple(v.coeffs for v in self.values))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Character)
            and self.m == other.m
            and self.values == other.values
        )

    def __hash__(self) -> int:
        return hash((self.m, self.values))


def _dixon_prime(m: int, order: int, bound: int) -> int:
    floor = 2 * math.isqrt(order)
    ell = m + 1
    while ell <= bound:
        if ell > floor and order % ell != 0 and sympy.isprime(ell):
            return ell
        ell += m
    raise InternalPrimeSearchFailed(
        f"no prime l = 1 mod {m} with l > {floor} below {bound}"
    )


def _class_matrix_column_action(
    G: FiniteGroupData, cc: ConjugacyClassSet, i: int, ell: int
) -> list[list[int]]:
    """Matrix T with T[k][j] = #{x in C_i : x^(-1) g_k in C_j}, reduced mod l.

    T acts on the coefficient vector c of a central idempotent by
    (T c)_k = omega(i) c_k.
    """
    r = len(cc)
    T = [[0] * r for _ in range(r)]
    for x in cc.classes[i]:
        xi = G.inverses[x]
        row = G.mul_table[xi]
        for k, rep in enumerate(cc.representatives):
            T[k][cc.class_of[row[rep]]] += 1
    for k in range(r):
        Tk = T[k]
        for j in range(r):
            Tk[j] %= ell
    return T


def _omega_row(
    G: FiniteGroupData,
    cc: ConjugacyClassSet,
    c: list[int],
    k0: int,
    ell: int,
) -> list[int]:
    """Central character values omega(i) for the idempotent vector c."""
    g_k0 = cc.representatives[k0]
    c_inv = inv_mod(c[k0], ell)
    out = []
    for i in range(len(cc)):
        acc = 0
        for x in cc.classes[i]:
            acc += c[cc.class_of[G.mul_table[G.inverses[x]][g_k0]]]
        out.append(acc * c_inv % ell)
    return out


def _split_class_algebra(
    G: FiniteGroupData, cc: ConjugacyClassSet, ell: int
) -> list[list[int]]:
    """Common eigenvectors of the class algebra acting on itself mod l."""
    r = len(cc)
    done: list[list[int]] = []
    full = [[1 if i == j else 0 for j in range(r)] for i in range(r)]
    # active holds bases; each basis is a list of column vectors of length r
    active: list[list[list[int]]] = [full] if r > 1 else []
    if r == 1:
        done.append(full[0])
    for i in range(1, r):
        if not active:
            break
        T = _class_matrix_column_action(G, cc, i, ell)
        nxt: list[list[list[int]]] = []
        for basis in active:
            d = len(basis)
            # restriction of T to the subspace, in basis coordinates
            R = [[0] * d for _ in range(d)]
            for col, v in enumerate(basis):
                w = [sum(T[k][j] * v[j] for j in range(r)) % ell for k in range(r)]
                coeffs = _solve_in_span(basis, w, ell)
                for row in range(d):
                    R[row][col] = coeffs[row]
            for lam in poly_roots(charpoly(R, ell), ell):
                shifted = [row[:] for row in R]
                for t in range(d):
                    shifted[t][t] = (shifted[t][t] - lam) % ell
                eigbasis: list[list[int]] = []
                for kv in kernel(shifted, ell):
                    vec = [0] * r
                    for t, coef in enumerate(kv):
                        if coef:
                            for k in range(r):
                                vec[k] = (vec[k] + coef * basis[t][k]) % ell
                    eigbasis.append(vec)
                if len(eigbasis) == 1:
                    done.append(eigbasis[0])
                else:
                    nxt.append(eigbasis)
        active = nxt
    assert not active, "class algebra did not split into lines"
    assert len(done) == r
    return done


def _solve_in_span(basis: list[list[int]], w: list[int], ell: int) -> list[int]:
    """Coordinates of w in the span of basis (column vectors), mod l."""
    d = len(basis)
    r = len(w)
    aug = [[basis[t][k] for t in range(d)] + [w[k]] for k in range(r)]
    # gaussian elimination on the r x (d+1) system
    piv_rows = []
    row = 0
    for col in range(d):
        sel = None
        for rr in range(row, r):
            if aug[rr][col] % ell:
                sel = rr
                break
        assert sel is not None, "basis vectors are dependent"
        aug[row], aug[sel] = aug[sel], aug[row]
        inv = inv_mod(aug[row][col], ell)
        aug[row] = [a * inv % ell for a in aug[row]]
        for rr in range(r):
            if rr != row and aug[rr][col]:
                f = aug[rr][col]
                aug[rr] = [(a - f * b) % ell for a, b in zip(aug[rr], aug[row])]
        piv_rows.append(row)
        row += 1
    for rr in range(row, r):
        assert aug[rr][d] % ell == 0, "vector not in span"
    return [aug[t][d] for t in range(d)]


def _lift_value(
    chi_bar_at_power: list[int],
    elt_order: int,
    m: int,
    z: int,
    ell: int,
    degree: int,
) -> CycloElement:
    """DFT lift of chi(g) from the mod-l values at powers of g."""
    d = elt_order
    zd = pow(z, m // d, ell)
    zd_inv = inv_mod(zd, ell)
    d_inv = inv_mod(d % ell, ell)
    table = _zeta_power_table(m)
    deg_basis = len(table[0])
    out = [Fraction(0)] * deg_basis
    total = 0
    for a in range(d):
        acc = 0
        w = pow(zd_inv, a, ell)
        zt = 1
        for t in range(d):
            acc = (acc + chi_bar_at_power[t] * zt) % ell
            zt = zt * w % ell
        n_a = acc * d_inv % ell
        assert n_a <= degree, "root-of-unity multiplicity exceeds the degree"
        total += n_a
        if n_a:
            row = table[(m // d) * a % m]
            for j in range(deg_basis):
                out[j] += n_a * row[j]
    assert total == degree, "multiplicities must sum to the degree"
    return CycloElement(m, out)


def character_table(
    G: FiniteGroupData, prime_bound: int = PRIME_SEARCH_BOUND
) -> list[Character]:
    cc = conjugacy_classes(G)
    r = len(cc)
    n = G.order
    m = G.exponent
    ell = _dixon_prime(m, n, prime_bound)
    z = pow(primitive_root_mod(ell), (ell - 1) // m, ell)

    idempotent_vectors = _split_class_algebra(G, cc, ell)

    inv_class_size = [inv_mod(sz % ell, ell) for sz in cc.class_sizes]
    star = [cc.class_of[G.inverses[rep]] for rep in cc.representatives]
    rows = []
    for c in idempotent_vectors:
        k0 = next(k for k in range(r) if c[k] % ell)
        omega = _omega_row(G, cc, c, k0, ell)
        t = 0
        for j in range(r):
            t = (t + omega[j] * omega[star[j]] * inv_class_size[j]) % ell
        deg_sq = n % ell * inv_mod(t, ell) % ell
        degree = next(
            (d for d in range(1, math.isqrt(n) + 1) if d * d % ell == deg_sq), None
        )
        assert degree is not None, "no valid degree for a central character"
        chi_bar = [degree * omega[i] % ell * inv_class_size[i] % ell for i in range(r)]

        values = []
        for i, rep in enumerate(cc.representatives):
            d_i = G.element_orders[rep]
            at_power = [chi_bar[cc.class_of[G.power(rep, t_)]] for t_ in range(d_i)]
            values.append(_lift_value(at_power, d_i, m, z, ell, degree))
        rows.append(Character(degree=degree, values=tuple(values), m=m, classes=cc))

    assert sum(chi.degree**2 for chi in rows) == n
    assert all(n % chi.degree == 0 for chi in rows)
    rows.sort(key=Character.sort_key)
    return rows


def gamma_act(eta: Character, a: GammaAction) -> Character:
    """The twist h -> eta(a(h)), again an irreducible character."""
    cc = eta.classes
    new_values = tuple(
        eta.values[cc.class_of[a.apply(rep)]] for rep in cc.representatives
    )
    return Character(degree=eta.degree, values=new_values, m=eta.m, classes=cc)


def galois_act(eta: Character, a: int) -> Character:
    """Apply zeta_m -> zeta_m^a to every value; a must be a unit mod m."""
    if math.gcd(a, eta.m) != 1:
        raise NotAUnit(f"{a} is not a unit modulo {eta.m}")
    return Character(
        degree=eta.degree,
        values=tuple(v.galois(a) for v in eta.values),
        m=eta.m,
        classes=eta.classes,
    )


def inner_product(eta: Character, theta: Character) -> Fraction:
    """Exact <eta, theta>; the result is rational for genuine characters."""
    cc = eta.classes
    n = sum(cc.class_sizes)
    acc = cyclo_rational(eta.m, 0)
    for i in range(len(cc)):
        acc = acc + cc.class_sizes[i] * (eta.values[i] * theta.values[i].conj())
    return (acc / n).as_rational()
