"""Cyclic algebras over p-adic fields and their Galois extensions.

A cyclic algebra here is the crossed product attached to the unramified
extension L = K(omega) of a p-adic field K: as a left L-module

    D = L + L pi + ... + L pi^(s-1),

with multiplication twisted by a generator sigma of Gal(L/K),

    pi a = sigma(a) pi   for a in L,        pi^s = pi_K,

where omega is the canonical root of unity of order q^s - 1 (q the residue
size of K), sigma sends omega to omega^(q^r), and pi_K is the canonical
uniformizer of K.  For gcd(r, s) = 1 this is the division algebra with
centre K, index s and Hasse invariant r/s.  Everything lives inside one
cyclotomic ambient Q_p(zeta_M) with M = (q^s - 1) p^(t_K), which contains
both K and L; fields are subfield specs in that modulus and coefficients
are exact p-adic elements.

The second half extends a Galois automorphism tau of K of order d prime
to s (in the intended use d is a power of p) to the whole skew field.
Such an extension is pinned down by a unit eps_D of L with

    tau(pi) = eps_D pi,    eps_D^s = tau(pi_K)/pi_K,    N_tau(eps_D) = 1,

where N_tau is the d-fold twisted norm.  The s-th roots of tau(pi_K)/pi_K
differ by a root of unity of order s, the twisted norm multiplies that
root by its d-th power, and d is invertible mod s, so exactly one root
has twisted norm 1: the extension exists, is unique, and has exact order
d.  Fixed subalgebras of such extensions are computed as semilinear
kernels, slot by slot in the pi-grading.  combine_generators packages the
recombination of two commuting generators of coprime degree into a single
generator, which is how skew group ring presentations are flattened into
one cyclic description; its output is the norm scalar that multiplies the
power relation of the combined generator.

The last part goes the other way: given a simple component of a group
algebra over a local field (structure constants over its centre, plus a
seed order), it recovers the index s and Hasse numerator r by climbing to
a maximal order.  The component is flattened to a Z_p-algebra over an
integral basis of the centre, the seed lattice is enlarged by left orders
of radicals until it stabilizes, and s and r are read off the residue
algebra: s from the centre of Lambda/rad(Lambda) and its Frobenius orbit
count, r from the conjugation a radical generator induces on the residue
skew field.  component_algebra builds the flattening input for an actual
character orbit; cyclic_component_algebra builds it synthetically from a
cyclic algebra presentation, which is how the climb is cross-checked
against components with known invariants.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .chartable import CycloElement
from .clifford import ComponentOrbit, build_idempotents, component_invariants
from .errors import (
    BackendUnavailable,
    DegreesNotCoprime,
    IndexNotDividing,
    MalformedInput,
    OrderNotPPower,
    PrecisionLoss,
    SpecMismatch,
)
from .groups import FiniteGroupData
from .localfield import (
    DEFAULT_PRECISION,
    LocalFieldSpec,
    PadicContext,
    PadicElement,
    extension_profile,
    field_spec,
    local_galois_group,
    sth_root_of_unit,
    uniformizer_of,
)
from .modp import (
    algebra_radical_mod_p,
    echelon_mod_pn,
    express_over_echelon,
    inv_mod,
    kernel,
    kernel_mod_pn,
    rref,
    solve,
)

_CONTEXTS: dict[tuple[int, int, int], PadicContext] = {}
_UNIFORMIZERS: dict[tuple[LocalFieldSpec, int], PadicElement] = {}


def shared_context(m: int, p: int, N: int = DEFAULT_PRECISION) -> PadicContext:
    """The cached ambient context for Q_p(zeta_m) at precision N."""
    key = (m, p, N)
    if key not in _CONTEXTS:
        _CONTEXTS[key] = PadicContext(m, p, N)
    return _CONTEXTS[key]


# ---------------------------------------------------------------------------
# algebra specs


@dataclass(frozen=True)
class CyclicAlgebraSpec:
    """The data (K, s, r) of a cyclic algebra, resolved inside one modulus.

    K is the centre in its own conductor; K_lift and L = K(omega) are
    subfield specs of Q_p(zeta_modulus).  sigma is the unit acting on L as
    the algebra twist omega -> omega^(q^r), trivial on K.
    """

    K: LocalFieldSpec
    K_lift: LocalFieldSpec
    L: LocalFieldSpec
    s: int
    r: int
    modulus: int
    sigma: int
    omega_order: int
    p: int

    @property
    def q(self) -> int:
        return self.K.q


def cyclic_algebra_spec(K: LocalFieldSpec, s: int, r: int) -> CyclicAlgebraSpec:
    """Resolve (K, s, r) into field specs sharing the modulus (q^s-1) p^t."""
    if s < 1:
        raise MalformedInput(f"index must be a positive integer, got {s}")
    if s == 1:
        if r != 0:
            raise MalformedInput("the twist exponent must be 0 when s = 1")
    elif not (0 < r < s and math.gcd(r, s) == 1):
        raise MalformedInput(
            f"twist exponent {r} must be coprime to s = {s} and lie in (0, s)"
        )
    p = K.p
    t_K = 0
    mm = K.m
    while mm % p == 0:
        t_K += 1
        mm //= p
    q = K.q
    omega_order = q**s - 1
    modulus = omega_order * p**t_K
    assert modulus % K.m == 0, "the ambient modulus must contain the conductor of K"
    G = local_galois_group(modulus, p)
    stab_K_set = set(K.stabilizer)
    lift_gens = [b for b in G.elements if b % K.m in stab_K_set]
    K_lift = field_spec(modulus, p, lift_gens)
    assert K_lift.degree == K.degree, "lifting K must not change its degree"
    assert (K_lift.e, K_lift.f) == (K.e, K.f)
    L = field_spec(modulus, p, [b for b in lift_gens if b % omega_order == 1])
    profile = extension_profile(K_lift, L)
    assert (profile.degree, profile.e, profile.f) == (s, 1, s), (
        "K(omega)/K must be unramified of degree s"
    )
    sigma_target = pow(q, r, omega_order)
    candidates = [b for b in lift_gens if b % omega_order == sigma_target]
    assert candidates, "no automorphism of L over K acts as the requested twist"
    return CyclicAlgebraSpec(
        K=K,
        K_lift=K_lift,
        L=L,
        s=s,
        r=r,
        modulus=modulus,
        sigma=min(candidates),
        omega_order=omega_order,
        p=p,
    )


def algebra_context(spec: CyclicAlgebraSpec, N: int = DEFAULT_PRECISION) -> PadicContext:
    return shared_context(spec.modulus, spec.p, N)


def central_uniformizer(
    spec: CyclicAlgebraSpec, N: int = DEFAULT_PRECISION
) -> PadicElement:
    """The canonical uniformizer of the centre K, as an ambient element."""
    key = (spec.K_lift, N)
    if key not in _UNIFORMIZERS:
        _UNIFORMIZERS[key] = uniformizer_of(spec.K_lift, algebra_context(spec, N))
    return _UNIFORMIZERS[key]


# ---------------------------------------------------------------------------
# elements


@dataclass(frozen=True, eq=False)
class CyclicAlgebraElement:
    """sum coeffs[i] pi^i with coefficients in L, written on the left."""

    spec: CyclicAlgebraSpec
    coeffs: tuple[PadicElement, ...]

    def __post_init__(self):
        assert len(self.coeffs) == self.spec.s

    def __add__(self, other: "CyclicAlgebraElement") -> "CyclicAlgebraElement":
        _require_same_spec(self, other)
        return CyclicAlgebraElement(
            self.spec, tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __sub__(self, other: "CyclicAlgebraElement") -> "CyclicAlgebraElement":
        _require_same_spec(self, other)
        return CyclicAlgebraElement(
            self.spec, tuple(a - b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __neg__(self) -> "CyclicAlgebraElement":
        return CyclicAlgebraElement(self.spec, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, CyclicAlgebraElement):
            return ca_mul(self, other)
        if isinstance(other, (PadicElement, int)):
            return CyclicAlgebraElement(
                self.spec, tuple(c * other for c in self.coeffs)
            )
        return NotImplemented

    def __pow__(self, k: int) -> "CyclicAlgebraElement":
        assert k >= 0
        out = ca_one(self.spec, self.coeffs[0].ctx.N)
        base = self
        while k:
            if k & 1:
                out = ca_mul(out, base)
            base = ca_mul(base, base)
            k >>= 1
        return out

    def agrees_with(self, other: "CyclicAlgebraElement") -> bool:
        _require_same_spec(self, other)
        return all(a.agrees_with(b) for a, b in zip(self.coeffs, other.coeffs))


def _require_same_spec(x: CyclicAlgebraElement, y: CyclicAlgebraElement) -> None:
    if x.spec != y.spec:
        raise SpecMismatch("elements belong to different cyclic algebras")


def ca_scalar(spec: CyclicAlgebraSpec, c: PadicElement) -> CyclicAlgebraElement:
    ctx = c.ctx
    assert (ctx.m, ctx.p) == (spec.modulus, spec.p), "scalar from the wrong context"
    return CyclicAlgebraElement(
        spec, (c,) + tuple(ctx.zero() for _ in range(spec.s - 1))
    )


def ca_one(spec: CyclicAlgebraSpec, N: int = DEFAULT_PRECISION) -> CyclicAlgebraElement:
    return ca_scalar(spec, algebra_context(spec, N).one())


def ca_omega(
    spec: CyclicAlgebraSpec, N: int = DEFAULT_PRECISION
) -> CyclicAlgebraElement:
    """The canonical root of unity of order q^s - 1, as an algebra element."""
    return ca_scalar(spec, algebra_context(spec, N).zeta_prime_power(1))


def ca_pi(spec: CyclicAlgebraSpec, N: int = DEFAULT_PRECISION) -> CyclicAlgebraElement:
    ctx = algebra_context(spec, N)
    if spec.s == 1:
        return ca_scalar(spec, central_uniformizer(spec, N))
    coeffs = [ctx.zero() for _ in range(spec.s)]
    coeffs[1] = ctx.one()
    return CyclicAlgebraElement(spec, tuple(coeffs))


def ca_mul(
    x: CyclicAlgebraElement, y: CyclicAlgebraElement
) -> CyclicAlgebraElement:
    """Product in D: pi^i a = sigma^i(a) pi^i and pi^s = pi_K."""
    _require_same_spec(x, y)
    spec = x.spec
    ctx = x.coeffs[0].ctx
    s = spec.s
    pi_K = central_uniformizer(spec, ctx.N)
    out: list[PadicElement | None] = [None] * s
    for i, a in enumerate(x.coeffs):
        for j, b in enumerate(y.coeffs):
            term = a * ctx.galois_apply(pow(spec.sigma, i, spec.modulus), b)
            if i + j >= s:
                term = term * pi_K
            k = (i + j) % s
            out[k] = term if out[k] is None else out[k] + term
    return CyclicAlgebraElement(spec, tuple(out))


# ---------------------------------------------------------------------------
# extending automorphisms of the centre to the skew field


def _twisted_norm(
    ctx: PadicContext, unit: int, order: int, x: PadicElement
) -> PadicElement:
    """x * sigma_unit(x) * ... * sigma_unit^(order-1)(x)."""
    out = x
    img = x
    for _ in range(order - 1):
        img = ctx.galois_apply(unit, img)
        out = out * img
    return out


def _automorphism_order(unit: int, stab: set[int], modulus: int) -> int:
    k, cur = 1, unit % modulus
    while cur not in stab:
        cur = cur * unit % modulus
        k += 1
        assert k <= modulus, "unit does not normalize the stabilizer"
    return k


@dataclass(frozen=True, eq=False)
class ExtendedAutomorphism:
    """An automorphism of D restricting to a p-power-order tau on K.

    unit acts on L; the action on pi is tau(pi) = epsilon_D pi, so on a
    general element tau(sum a_i pi^i) = sum tau(a_i) cocycle[i] pi^i with
    cocycle[i] = epsilon_D sigma(epsilon_D) ... sigma^(i-1)(epsilon_D).
    """

    spec: CyclicAlgebraSpec
    unit: int
    order: int
    epsilon_D: PadicElement
    cocycle: tuple[PadicElement, ...]

    def apply_scalar(self, c: PadicElement) -> PadicElement:
        return self.epsilon_D.ctx.galois_apply(self.unit, c)

    def apply(self, x: CyclicAlgebraElement) -> CyclicAlgebraElement:
        if x.spec != self.spec:
            raise SpecMismatch("element belongs to a different cyclic algebra")
        ctx = self.epsilon_D.ctx
        assert x.coeffs[0].ctx is ctx, (
            "element and extension were built at different precisions"
        )
        return CyclicAlgebraElement(
            self.spec,
            tuple(
                ctx.galois_apply(self.unit, c) * self.cocycle[i]
                for i, c in enumerate(x.coeffs)
            ),
        )

    def power(self, e: int) -> "ExtendedAutomorphism":
        """The e-fold iterate, with its accumulated twisted norm of eps_D."""
        assert e >= 0
        ctx = self.epsilon_D.ctx
        spec = self.spec
        unit = pow(self.unit, e, spec.modulus)
        eps = (
            _twisted_norm(ctx, self.unit, e, self.epsilon_D) if e >= 1 else ctx.one()
        )
        order = self.order // math.gcd(self.order, e) if e else 1
        return ExtendedAutomorphism(
            spec=spec,
            unit=unit,
            order=order,
            epsilon_D=eps,
            cocycle=_sigma_cocycle(spec, ctx, eps),
        )


def _sigma_cocycle(
    spec: CyclicAlgebraSpec, ctx: PadicContext, eps: PadicElement
) -> tuple[PadicElement, ...]:
    cocycle = [ctx.one()]
    for _ in range(1, spec.s):
        cocycle.append(eps * ctx.galois_apply(spec.sigma, cocycle[-1]))
    return tuple(cocycle)


def extend_tau(
    spec: CyclicAlgebraSpec, tau: int, N: int = DEFAULT_PRECISION
) -> ExtendedAutomorphism:
    """Extend the automorphism sigma_tau of K to D, normalized to norm 1.

    The index s must divide q_tau - 1 for the residue size q_tau of the
    fixed field K^tau, and the order d of tau on K must be coprime to s;
    in the intended setting d is a power of p and s divides q_tau - 1, so
    both hold automatically.  The lift of tau to L is the unique unit
    restricting to tau whose d-th power fixes L: the Galois group of L
    over K^tau splits into coprime parts of orders s and d, and the
    order-d part maps isomorphically onto the group generated by tau.
    """
    K = spec.K
    G_K = local_galois_group(K.m, K.p)
    tau %= K.m
    if tau not in G_K:
        raise MalformedInput(
            f"{tau} does not label an automorphism: not in the Galois group mod {K.m}"
        )
    stab_K = set(K.stabilizer)
    d = _automorphism_order(tau, stab_K, K.m)
    if math.gcd(d, spec.s) != 1:
        raise OrderNotPPower(
            f"tau acts on K with order {d}, sharing a factor with the index"
            f" {spec.s}; the extension needs tau of order prime to s, as a"
            f" p-power order always is"
        )
    K_tau = field_spec(K.m, K.p, list(K.stabilizer) + [tau])
    q_tau = K_tau.q
    if (q_tau - 1) % spec.s != 0:
        raise IndexNotDividing(
            f"index {spec.s} does not divide q_tau - 1 = {q_tau - 1}"
        )
    M = spec.modulus
    G_M = local_galois_group(M, spec.p)
    coset = {(tau * u) % K.m for u in K.stabilizer}
    stab_L = set(spec.L.stabilizer)
    cands = [
        b for b in G_M.elements if b % K.m in coset and pow(b, d, M) in stab_L
    ]
    assert cands, "tau admits no lift with p-power order over L"
    assert len(cands) == len(stab_L), "the lift of tau is not unique on L"
    tau_hat = min(cands)
    for b in cands:
        assert b * inv_mod(tau_hat, M) % M in stab_L
    assert _automorphism_order(tau_hat, stab_L, M) == d

    ctx = algebra_context(spec, N)
    pi_K = central_uniformizer(spec, N)
    eps = ctx.galois_apply(tau_hat, pi_K) / pi_K
    one = ctx.one()
    # the twisted norm of eps telescopes to tau^d(pi_K)/pi_K = 1
    assert _twisted_norm(ctx, tau_hat, d, eps).agrees_with(one)
    eps0 = sth_root_of_unit(eps, spec.s)
    if spec.s == 1:
        eps_D = eps0
    else:
        n0 = _twisted_norm(ctx, tau_hat, d, eps0)
        assert (n0**spec.s).agrees_with(one), "twisted norm of the root is not in mu_s"
        e_inv = inv_mod(d % spec.s, spec.s)
        eps_D = eps0 * n0 ** ((-e_inv) % spec.s)
    assert (eps_D**spec.s).agrees_with(eps)
    assert _twisted_norm(ctx, tau_hat, d, eps_D).agrees_with(one)
    for b in spec.L.stabilizer:
        assert ctx.galois_apply(b, eps_D).agrees_with(eps_D), "eps_D must lie in L"
    return ExtendedAutomorphism(
        spec=spec,
        unit=tau_hat,
        order=d,
        epsilon_D=eps_D,
        cocycle=_sigma_cocycle(spec, ctx, eps_D),
    )


# ---------------------------------------------------------------------------
# fixed subalgebras


@dataclass(frozen=True, eq=False)
class FixedSubalgebra:
    """The subalgebra of D fixed by the e-th power of an extended tau.

    The fixed algebra has the same index s and Hasse twist as D; D is
    free of rank f = d/e over it, and its centre is the degree-(deg K)/f
    subfield fixed by tau^e.  norm_uniformizer and norm_unit are the
    products of the tau^(e i)-images of pi and omega: the first is a unit
    multiple of pi^f, the second the canonical root of unity of the
    descended algebra.
    """

    spec: CyclicAlgebraSpec
    e: int
    f: int
    centre: LocalFieldSpec
    index: int
    hasse_numerator: int
    basis: tuple[CyclicAlgebraElement, ...]
    dim_qp: int
    norm_uniformizer: CyclicAlgebraElement
    norm_unit: PadicElement


def _flat_coords(elt: CyclicAlgebraElement) -> list[int]:
    """Ambient integral coordinates of all coefficient slots, at shift 0."""
    out: list[int] = []
    for c in elt.coeffs:
        assert c.shift >= 0, "flattening needs an integral element"
        vec = c.ctx._vec_shift_unif(c.vec, c.shift)
        out.extend(v for row in vec for v in row)
    return out


def _lattice_contains(
    gens: list[list[int]], target: list[int], p: int, N: int
) -> bool:
    """Whether target lies in the Z_p-span of gens, mod p^N."""
    cols = gens + [target]
    rows = [[col[i] for col in cols] for i in range(len(target))]
    for vec, torsion in kernel_mod_pn(rows, p, N):
        if torsion is None and vec[-1] % p != 0:
            return True
    return False


def fixed_subalgebra(
    spec: CyclicAlgebraSpec,
    ext: ExtendedAutomorphism,
    e: int,
    N: int = DEFAULT_PRECISION,
) -> FixedSubalgebra:
    """Compute the fixed algebra of ext^e as a semilinear kernel.

    The fixed condition and membership of the coefficients in L are both
    diagonal in the pi-grading, so each slot is an independent Z_p-linear
    kernel over the ambient lattice.  The result is verified structurally:
    expected dimension, closure under multiplication, centre equal to the
    scalars of the fixed field of tau^e, and the two canonical norm
    elements lying in the computed lattice.

    epsilon_D is divided by a uniformizer during construction, so its
    trailing digits are junk; every lattice solve here runs at the working
    precision the cocycle actually carries, not at the ambient N.  The
    fixedness operator also has nonzero elementary divisors when K/Q_p is
    ramified, and a kernel generator computed mod p^Nw is then only a true
    lattice generator mod p^(Nw - v) for v the largest such divisor.  The
    elimination reports those valuations as its torsion pivots, so the
    membership checks run that many digits below the solve.
    """
    if ext.spec != spec:
        raise SpecMismatch("extension belongs to a different cyclic algebra")
    d = ext.order
    if e < 1 or d % e != 0:
        raise MalformedInput(f"e = {e} must divide the order {d} of the extension")
    f = d // e
    ctx = algebra_context(spec, N)
    assert ext.epsilon_D.ctx is ctx, (
        "extension was built at a different precision than requested"
    )
    ext_e = ext.power(e)
    s = spec.s
    deg = ctx.e0 * ctx.f0
    gens_L = [b for b in spec.L.stabilizer if b % spec.modulus != 1]

    # canonical norm elements: products of the tau^(e i)-images of pi, omega
    pi_elt = ca_pi(spec, N)
    omega_elt = ca_omega(spec, N)
    steps = [ext.power(e * i) for i in range(1, f + 1)]
    t_elt = None
    u_scalar = None
    for step in steps:
        t_term = step.apply(pi_elt)
        t_elt = t_term if t_elt is None else ca_mul(t_elt, t_term)
        u_term = step.apply_scalar(omega_elt.coeffs[0])
        u_scalar = u_term if u_scalar is None else u_scalar * u_term
    assert ext_e.apply(t_elt).agrees_with(t_elt)
    assert ext_e.apply_scalar(u_scalar).agrees_with(u_scalar)
    slot = f % s
    for k in range(s):
        if k != slot:
            assert t_elt.coeffs[k].is_zero_at_precision()

    precs = [c.prec for st in [ext_e] + steps for c in st.cocycle]
    precs.append(ext_e.epsilon_D.prec)
    precs.extend(c.prec for c in t_elt.coeffs)
    precs.append(u_scalar.prec)
    Nw = min([N] + precs)
    if Nw < 8:
        raise PrecisionLoss(
            f"cocycle carries only {Nw} trustworthy digits; rebuild the"
            " extension at a higher precision"
        )

    monomials = []
    for j in range(ctx.e0):
        for i in range(ctx.f0):
            rows = [[0] * ctx.f0 for _ in range(ctx.e0)]
            rows[j][i] = 1
            monomials.append(
                PadicElement(ctx, tuple(tuple(r) for r in rows), 0, ctx.N)
            )

    def flat_scalar(c: PadicElement) -> list[int]:
        assert c.shift >= 0
        vec = ctx._vec_shift_unif(c.vec, c.shift)
        return [v for row in vec for v in row]

    basis: list[CyclicAlgebraElement] = []
    tmax = 0
    for k in range(s):
        images = []
        for mono in monomials:
            y = ctx.galois_apply(ext_e.unit, mono) * ext_e.cocycle[k] - mono
            images.append(flat_scalar(y))
            for b in gens_L:
                images[-1] = images[-1] + flat_scalar(ctx.galois_apply(b, mono) - mono)
        mat = [[images[c][rr] for c in range(deg)] for rr in range(len(images[0]))]
        free = []
        for vec, torsion in kernel_mod_pn(mat, spec.p, Nw):
            if torsion is None:
                free.append(vec)
            else:
                tmax = max(tmax, torsion)
        for coords in free:
            rows = [[0] * ctx.f0 for _ in range(ctx.e0)]
            for idx, cval in enumerate(coords):
                jj, ii = divmod(idx, ctx.f0)
                rows[jj][ii] = cval % ctx.pN
            scalar = PadicElement(ctx, tuple(tuple(r) for r in rows), 0, ctx.N)
            coeffs = [ctx.zero() for _ in range(s)]
            coeffs[k] = scalar
            basis.append(CyclicAlgebraElement(spec, tuple(coeffs)))

    expected = s * s * spec.K.degree // f
    assert len(basis) <= expected, "fixed lattice is larger than the fixed algebra"
    if len(basis) < expected:
        raise PrecisionLoss(
            f"semilinear kernel found {len(basis)} directions, expected {expected};"
            " increase the working precision"
        )

    Nm = Nw - tmax
    if Nm < 8:
        raise PrecisionLoss(
            f"fixedness operator has elementary divisors up to p^{tmax}, leaving"
            f" only {Nm} digits for membership checks; rebuild at a higher"
            " precision"
        )

    flats = [_flat_coords(b) for b in basis]
    for b in basis:
        assert ext_e.apply(b).agrees_with(b)

    # closure under multiplication, exhaustively for small bases
    rng = random.Random(0xD1CE)
    pairs = [(i, j) for i in range(len(basis)) for j in range(len(basis))]
    if len(pairs) > 64:
        pairs = [
            (rng.randrange(len(basis)), rng.randrange(len(basis))) for _ in range(48)
        ]
    for i, j in pairs:
        prod = ca_mul(basis[i], basis[j])
        assert _lattice_contains(flats, _flat_coords(prod), spec.p, Nm), (
            "fixed lattice is not closed under multiplication"
        )

    # centre: solve for lattice combinations commuting with every generator
    comm_rows: list[list[int]] = []
    products = [
        [ca_mul(basis[kk], basis[jj]) for jj in range(len(basis))]
        for kk in range(len(basis))
    ]
    for jj in range(len(basis)):
        col_flats = [
            _flat_coords(products[kk][jj] - products[jj][kk])
            for kk in range(len(basis))
        ]
        for rr in range(len(col_flats[0])):
            comm_rows.append([col_flats[kk][rr] for kk in range(len(basis))])
    central = [
        vec for vec, torsion in kernel_mod_pn(comm_rows, spec.p, Nm) if torsion is None
    ]
    centre = field_spec(
        spec.modulus, spec.p, list(spec.K_lift.stabilizer) + [ext_e.unit]
    )
    assert centre.degree == spec.K.degree // f
    assert len(central) == centre.degree, (
        "centre of the fixed algebra does not match the fixed field"
    )

    assert _lattice_contains(flats, _flat_coords(t_elt), spec.p, Nm)
    assert _lattice_contains(
        flats, _flat_coords(ca_scalar(spec, u_scalar)), spec.p, Nm
    )

    return FixedSubalgebra(
        spec=spec,
        e=e,
        f=f,
        centre=centre,
        index=spec.s,
        hasse_numerator=spec.r,
        basis=tuple(basis),
        dim_qp=len(basis),
        norm_uniformizer=t_elt,
        norm_unit=u_scalar,
    )


# ---------------------------------------------------------------------------
# recombining two generators of coprime degree


@dataclass(frozen=True, eq=False)
class CombinedGenerators:
    """One generator out of two commuting ones of coprime degree.

    For a cyclic extension K/F split by subfields La, Lb of coprime
    indices, a generator pair (a, b) acting as the two factor groups is
    equivalent to the single generator ab, whose power relation picks up
    the norm of a^([K:La]) down to F:

        (a b)^([K:F]) = N_(La/F)(a^([K:La])) * b^([K:F]).

    scalar is that norm, computed exactly; the labels record the symbolic
    relation for reporting.
    """

    total_degree: int
    a_degree: int
    b_degree: int
    scalar: PadicElement
    b_label: str
    relation: str


def combine_generators(
    K: LocalFieldSpec,
    F: LocalFieldSpec,
    La: LocalFieldSpec,
    Lb: LocalFieldSpec,
    a_power: PadicElement,
    b_label: str = "b",
) -> CombinedGenerators:
    """Combine generators over La and Lb into one; a_power is a^([K:La])."""
    prof_a = extension_profile(La, K)
    prof_b = extension_profile(Lb, K)
    prof_f = extension_profile(F, K)
    extension_profile(F, La)
    extension_profile(F, Lb)
    da, db = prof_a.degree, prof_b.degree
    if math.gcd(da, db) != 1:
        raise DegreesNotCoprime(
            f"subextension degrees {da} and {db} share a factor"
        )
    if prof_f.degree != da * db:
        raise MalformedInput("the two subextensions do not generate the top field")
    if set(La.stabilizer) & set(Lb.stabilizer) != set(K.stabilizer):
        raise MalformedInput("the two subextensions do not intersect in the base")
    stab_K = set(K.stabilizer)
    n = prof_f.degree
    if not any(
        _automorphism_order(b, stab_K, K.m) == n for b in F.stabilizer
    ):
        raise MalformedInput("the top field is not cyclic over the base")

    ctx = a_power.ctx
    assert (ctx.m, ctx.p) == (K.m, K.p), "element from the wrong ambient context"
    for u in La.stabilizer:
        if not ctx.galois_apply(u, a_power).agrees_with(a_power):
            raise MalformedInput("a_power does not lie in its declared subfield")

    # coset representatives of Gal(La/F) inside the stabilizer of F
    stab_La = set(La.stabilizer)
    reps: list[int] = []
    seen: set[int] = set()
    for b in sorted(F.stabilizer):
        c = min(b * u % K.m for u in stab_La)
        if c not in seen:
            seen.add(c)
            reps.append(c)
    scalar = None
    for rep in reps:
        img = ctx.galois_apply(rep, a_power)
        scalar = img if scalar is None else scalar * img
    for b in F.stabilizer:
        assert ctx.galois_apply(b, scalar).agrees_with(scalar), (
            "norm must land in the base field"
        )
    relation = (
        f"(a*{b_label})^{da * db} = N(a^{da}) * {b_label}^{da * db}"
    )
    return CombinedGenerators(
        total_degree=da * db,
        a_degree=da,
        b_degree=db,
        scalar=scalar,
        b_label=b_label,
        relation=relation,
    )


# ---------------------------------------------------------------------------
# simple components of group algebras and their Schur indices

SCHUR_DESK_BOUND = 64
_COMPONENT_FLAT_BOUND = 1024


@dataclass(frozen=True, eq=False)
class SimpleComponentAlgebra:
    """A simple algebra over a local field, given by structure constants.

    The centre ``field`` is a subfield spec of the ambient Q_p(zeta_{field.m});
    every structure constant sc[i][j][k] is an element of that ambient lying
    in the centre, and sc[i][j] is the coordinate vector of the product of
    the i-th and j-th basis elements.  ``one`` is the coordinate vector of
    the identity, and ``order_generators`` are coordinate vectors whose
    O_field-span is a multiplicatively closed lattice containing the
    identity: the seed the maximal-order climb starts from.
    """

    field: LocalFieldSpec
    dim: int
    sc: tuple
    one: tuple
    order_generators: tuple
    p: int
    N: int
    label: str


def component_mul(
    comp: SimpleComponentAlgebra,
    u: tuple[PadicElement, ...],
    v: tuple[PadicElement, ...],
) -> tuple[PadicElement, ...]:
    """Product of two coordinate vectors under the structure constants."""
    ctx = comp.sc[0][0][0].ctx
    out = [ctx.zero() for _ in range(comp.dim)]
    for i, ui in enumerate(u):
        if ui.is_zero_at_precision():
            continue
        for j, vj in enumerate(v):
            if vj.is_zero_at_precision():
                continue
            w = ui * vj
            for k, c in enumerate(comp.sc[i][j]):
                if not c.is_zero_at_precision():
                    out[k] = out[k] + w * c
    return tuple(out)


def _validate_component(comp: SimpleComponentAlgebra) -> None:
    """Spot-check the identity and associativity on sampled basis vectors."""
    ctx = comp.sc[0][0][0].ctx
    dim = comp.dim

    def unit(k: int) -> tuple[PadicElement, ...]:
        return tuple(ctx.one() if t == k else ctx.zero() for t in range(dim))

    def agree(a, b) -> bool:
        return all(x.agrees_with(y) for x, y in zip(a, b))

    rng = random.Random(dim * 1009 + comp.p)
    for k in {0, dim - 1, rng.randrange(dim)}:
        bk = unit(k)
        assert agree(component_mul(comp, comp.one, bk), bk), "left identity"
        assert agree(component_mul(comp, bk, comp.one), bk), "right identity"
    for _ in range(4):
        i, j, k = (rng.randrange(dim) for _ in range(3))
        bi, bj, bk = unit(i), unit(j), unit(k)
        left = component_mul(comp, component_mul(comp, bi, bj), bk)
        right = component_mul(comp, bi, component_mul(comp, bj, bk))
        assert agree(left, right), "associativity sample"


def cyclic_component_algebra(
    spec: CyclicAlgebraSpec, N: int = DEFAULT_PRECISION
) -> SimpleComponentAlgebra:
    """Structure constants of a cyclic algebra on the basis omega^a pi^i.

    Restricted to centre Q_p (a degree-1 K): the ambient of the algebra is
    then unramified over Q_p, so the coordinates of omega-powers over the
    power basis omega^0 .. omega^(s-1) are read off directly and every
    structure constant is a plain integer.  This is the synthetic input
    used to cross-check the maximal-order climb against components with
    invariants fixed in advance.
    """
    if spec.K.degree != 1:
        raise MalformedInput(
            "synthetic component input requires a centre of degree 1"
        )
    s = spec.s
    p = spec.p
    actx = algebra_context(spec, N)
    assert actx.e0 == 1 and actx.f0 == s, "the omega-field must be unramified"
    kctx = shared_context(spec.K.m, p, N)
    mprime = spec.omega_order
    dim = s * s
    zero = kctx.zero()

    def basis_coords(c: int, pfac: int) -> list[int]:
        elt = actx.zeta_prime_power(c % mprime)
        assert elt.shift == 0
        return [x * pfac % kctx.pN for x in elt.vec[0]]

    sc = []
    for a in range(s):
        for i in range(s):
            row = []
            qri = pow(spec.q, spec.r * i, mprime)
            for b in range(s):
                for j in range(s):
                    c = (a + b * qri) % mprime
                    pfac = p if i + j >= s else 1
                    coords = basis_coords(c, pfac)
                    k2 = (i + j) % s
                    vec = [zero] * dim
                    for a2 in range(s):
                        if coords[a2]:
                            vec[a2 * s + k2] = kctx.from_int(coords[a2])
                    row.append(tuple(vec))
            sc.append(tuple(row))
    one = tuple(kctx.one() if k == 0 else zero for k in range(dim))
    gens = tuple(
        tuple(kctx.one() if k == t else zero for k in range(dim))
        for t in range(dim)
    )
    comp = SimpleComponentAlgebra(
        field=spec.K,
        dim=dim,
        sc=tuple(sc),
        one=one,
        order_generators=gens,
        p=p,
        N=N,
        label=f"cyclic(s={s}, r={spec.r}) over Q_{p}",
    )
    _validate_component(comp)
    return comp


def _embed_cyclo(c: CycloElement, ctx: PadicContext, scale: int) -> PadicElement:
    """scale * c as an ambient element; the scaled coordinates must be
    integers."""
    out = ctx.zero()
    stride = ctx.m // c.m
    assert ctx.m % c.m == 0
    for i, fr in enumerate(c.coeffs):
        fr = fr * scale
        assert fr.denominator == 1, "scaled coefficients must be integral"
        if fr.numerator:
            out = out + ctx.zeta_power(i * stride) * int(fr)
    return out


def _flat_of_padic(z: PadicElement) -> tuple[list[int], int, int]:
    """Integral monomial coordinates of z, with the p-denominator split off.

    Returns (flat, dexp, prec) with z = p^(-dexp) * sum(flat[t] * unif^j *
    basis_i) over t = j * f0 + i, the flat entries correct mod p^prec.
    """
    ctx = z.ctx
    width = ctx.e0 * ctx.f0
    if z.is_zero_at_precision():
        return [0] * width, 0, z.prec
    dexp = 0
    val = z.valuation()
    if val < 0:
        dexp = (-val + ctx.e0 - 1) // ctx.e0
        z = z * ctx.from_int(ctx.p**dexp)
    zn = z.normalized()
    assert zn.shift >= 0
    rows = ctx._vec_shift_unif(zn.vec, zn.shift)
    flat = [rows[j][i] for j in range(ctx.e0) for i in range(ctx.f0)]
    return flat, dexp, zn.prec


def _monomials(ctx: PadicContext) -> list[PadicElement]:
    """The integral monomial basis unif^j * basis_i, in flat order."""
    out = []
    for j in range(ctx.e0):
        for i in range(ctx.f0):
            rows = [[0] * ctx.f0 for _ in range(ctx.e0)]
            rows[j][i] = 1
            out.append(PadicElement(ctx, tuple(map(tuple, rows)), 0, ctx.N))
    return out


def _fixed_field_lattice(
    field: LocalFieldSpec, ctx: PadicContext
) -> tuple[list[list[int]], int]:
    """A Z_p-basis of the integers of the fixed field of field.stabilizer.

    Returned as flat monomial coordinate vectors, together with the largest
    torsion exponent of the fixedness kernel (the digits the elimination
    cannot vouch for).  The fixed ring is the kernel of all b - 1 with b in
    the stabilizer, one Z_p-linear condition block per stabilizer element.
    """
    width = ctx.e0 * ctx.f0
    monos = _monomials(ctx)
    mat: list[list[int]] = []
    for b in field.stabilizer:
        if b % ctx.m == 1 % ctx.m:
            continue
        images = []
        for mono in monos:
            diff = ctx.galois_apply(b, mono) - mono
            flat, dexp, _ = _flat_of_padic(diff)
            assert dexp == 0
            images.append(flat)
        for coord in range(width):
            mat.append([images[t][coord] for t in range(width)])
    if not mat:
        basis = [[1 if t == s2 else 0 for t in range(width)] for s2 in range(width)]
        return basis, 0
    free: list[list[int]] = []
    tmax = 0
    for vec, torsion in kernel_mod_pn(mat, field.p, ctx.N):
        if torsion is None:
            free.append(vec)
        else:
            tmax = max(tmax, torsion)
    if len(free) != field.degree:
        raise PrecisionLoss(
            f"fixed-field lattice has rank {len(free)}, expected {field.degree}"
        )
    return free, tmax


def component_algebra(
    orbit: ComponentOrbit,
    G: FiniteGroupData,
    F: LocalFieldSpec,
    N: int = DEFAULT_PRECISION,
    label: str | None = None,
) -> SimpleComponentAlgebra:
    """The simple component F(eta)[H]e(eta), by structure constants.

    The candidates e(eta)h are embedded into the ambient completion of
    F(eta) coefficientwise (scaled by |H| so the embedding is integral); a
    basis is selected greedily by integral independence over the lattice of
    monomial multiples of the accepted candidates, and every e(eta)g is
    expressed in exact coordinates over that basis.  Structure constants
    are then lookups, (e b_i)(e b_j) = e (b_i b_j), and the coordinate
    vectors of all e(eta)g span the seed order the index computation
    climbs from.
    """
    inv = component_invariants(orbit, F)
    field = inv.F_eta
    eta = orbit.eta
    dim = eta.degree * eta.degree
    ctx = shared_context(orbit.ambient_m, F.p, N)
    width = ctx.e0 * ctx.f0
    if dim * width > _COMPONENT_FLAT_BOUND:
        raise MalformedInput(
            f"component flattening size {dim * width} exceeds the bound "
            f"{_COMPONENT_FLAT_BOUND}"
        )
    p = F.p
    order = G.order
    e_eta = build_idempotents(orbit, G, F)["e_eta"].coeffs
    monos = _monomials(ctx)

    emb_flat: list[list[int]] = []
    mono_flat: list[list[list[int]]] = []
    for x in range(order):
        elt = _embed_cyclo(e_eta[x], ctx, order)
        flat, dexp, _ = _flat_of_padic(elt)
        assert dexp == 0
        emb_flat.append(flat)
        per_mono = []
        for mono in monos:
            mflat, mdexp, _ = _flat_of_padic(mono * elt)
            assert mdexp == 0
            per_mono.append(mflat)
        mono_flat.append(per_mono)

    def candidate_flat(h: int) -> list[int]:
        out: list[int] = []
        hinv = G.inv(h)
        for g in range(order):
            out.extend(emb_flat[G.mul(g, hinv)])
        return out

    basis_idx: list[int] = []
    cols: list[list[int]] = []
    for h in range(order):
        target = candidate_flat(h)
        if not any(target):
            continue
        if cols and _lattice_contains(cols, target, p, N):
            continue
        basis_idx.append(h)
        hinv = G.inv(h)
        for t in range(width):
            col: list[int] = []
            for g in range(order):
                col.extend(mono_flat[G.mul(g, hinv)][t])
            cols.append(col)
    if len(basis_idx) != dim:
        raise PrecisionLoss(
            f"greedy basis found {len(basis_idx)} candidates, expected {dim}"
        )

    rows = [[col[i] for col in cols] for i in range(order * width)]
    coords: list[tuple[PadicElement, ...]] = []
    for g in range(order):
        target = candidate_flat(g)
        aug = [row + [target[i]] for i, row in enumerate(rows)]
        solution = None
        tg = 0
        free_count = 0
        for vec, torsion in kernel_mod_pn(aug, p, N):
            if torsion is not None:
                tg = max(tg, torsion)
                continue
            if vec[-1] % p:
                free_count += 1
                if solution is None:
                    neg = (-inv_mod(vec[-1], ctx.pN)) % ctx.pN
                    solution = [vec[t] * neg % ctx.pN for t in range(len(cols))]
        if solution is None or free_count != 1:
            raise PrecisionLoss(
                f"coordinates of candidate {g} are not unique and integral"
            )
        prec = N - tg
        if prec < 8:
            raise PrecisionLoss("candidate coordinates have too few digits")
        vec_elts = []
        for k in range(dim):
            block = solution[k * width : (k + 1) * width]
            vrows = tuple(
                tuple(block[j * ctx.f0 + i] for i in range(ctx.f0))
                for j in range(ctx.e0)
            )
            vec_elts.append(PadicElement(ctx, vrows, 0, prec))
        coords.append(tuple(vec_elts))

    rng = random.Random(order * 31 + dim)
    for g in {0, order - 1, rng.randrange(order)}:
        for b in field.stabilizer:
            if b % ctx.m == 1 % ctx.m:
                continue
            for c in coords[g]:
                assert ctx.galois_apply(b, c).agrees_with(c), (
                    "coordinates must lie in the centre"
                )

    sc = tuple(
        tuple(coords[G.mul(bi, bj)] for bj in basis_idx) for bi in basis_idx
    )
    comp = SimpleComponentAlgebra(
        field=field,
        dim=dim,
        sc=sc,
        one=coords[G.identity],
        order_generators=tuple(coords),
        p=p,
        N=N,
        label=label or f"component of degree {eta.degree} at p={p}",
    )
    _validate_component(comp)
    return comp


def _maximal_order_invariants(comp: SimpleComponentAlgebra) -> tuple[int, int]:
    """Index and Hasse numerator of a component, via a maximal order.

    The component is flattened to a Z_p-algebra on an integral basis of its
    centre; the seed lattice is enlarged by replacing it with the left
    order of its radical until that stops growing, which happens exactly
    at a hereditary (for a division component: the maximal) order Lambda.
    The index s is read off the centre of Lambda/rad(Lambda) and its
    Frobenius orbit count; the Hasse numerator is the power of Frobenius
    that conjugation by a generator of rad(Lambda) induces on the residue
    skew field.
    """
    ctx = shared_context(comp.field.m, comp.p, comp.N)
    p = comp.p
    dim = comp.dim
    deg_f = comp.field.degree
    f_F = comp.field.f
    n = dim * deg_f
    root = math.isqrt(dim)
    assert root * root == dim
    if n > SCHUR_DESK_BOUND:
        raise BackendUnavailable(
            f"flattened dimension {n} exceeds the desk bound {SCHUR_DESK_BOUND};"
            " supply an index override"
        )

    fbasis, tmax = _fixed_field_lattice(comp.field, ctx)

    raw_sc: list[list[list[tuple[list[int], int]]]] = []
    precs = []
    for i in range(dim):
        row = []
        for j in range(dim):
            entry = []
            for k in range(dim):
                flat, dexp, prec = _flat_of_padic(comp.sc[i][j][k])
                precs.append(prec)
                entry.append((flat, dexp))
            row.append(entry)
        raw_sc.append(row)
    raw_one = []
    for z in comp.one:
        flat, dexp, prec = _flat_of_padic(z)
        precs.append(prec)
        raw_one.append((flat, dexp))
    raw_gens = []
    for gen in comp.order_generators:
        grow = []
        for z in gen:
            flat, dexp, prec = _flat_of_padic(z)
            precs.append(prec)
            grow.append((flat, dexp))
        raw_gens.append(grow)

    Nb = min([comp.N] + precs) - tmax
    if Nb < 12:
        raise PrecisionLoss("component constants carry too few digits")
    pNb = p**Nb

    fech, fpiv = echelon_mod_pn(fbasis, p, Nb)
    if len(fech) != deg_f or any(v != 0 for _, v in fpiv):
        raise PrecisionLoss("integral basis of the centre is degenerate")

    def centre_elt(coeff_row: list[int]) -> PadicElement:
        rows = [[0] * ctx.f0 for _ in range(ctx.e0)]
        for t, x in enumerate(coeff_row):
            rows[t // ctx.f0][t % ctx.f0] = x % ctx.pN
        return PadicElement(ctx, tuple(map(tuple, rows)), 0, ctx.N)

    fels = [centre_elt(r) for r in fech]

    def coord_f(flat: list[int]) -> list[int]:
        co = express_over_echelon(flat, fech, fpiv, p, Nb)
        if co is None:
            raise PrecisionLoss("an element escapes the centre's lattice")
        return [x % pNb for x in co]

    FM: list[list[list[int]]] = [[None] * deg_f for _ in range(deg_f)]
    for a in range(deg_f):
        for b in range(a, deg_f):
            prod = fels[a] * fels[b]
            flat, dexp, prec = _flat_of_padic(prod)
            if prec < Nb:
                raise PrecisionLoss("centre multiplication lost digits")
            assert dexp == 0
            FM[a][b] = FM[b][a] = coord_f(flat)

    def fmul(u: list[int], v: list[int]) -> list[int]:
        out = [0] * deg_f
        for a, ua in enumerate(u):
            if ua:
                for b, vb in enumerate(v):
                    if vb:
                        f = ua * vb
                        row = FM[a][b]
                        for c2 in range(deg_f):
                            out[c2] += f * row[c2]
        return [x % pNb for x in out]

    sc_f: list[list[list[tuple[list[int], int]]]] = []
    d0 = 0
    for i in range(dim):
        row = []
        for j in range(dim):
            entry = []
            for k in range(dim):
                flat, dexp = raw_sc[i][j][k]
                entry.append((coord_f(flat), dexp))
                d0 = max(d0, dexp)
            row.append(entry)
        sc_f.append(row)

    margin = 16
    B = p ** (2 * Nb + margin)
    assert n * n * p ** (2 * Nb) < B
    Bpow = [B**t for t in range(n + 1)]
    bigT: list[list[int]] = [[0] * n for _ in range(n)]
    for i in range(dim):
        for a in range(deg_f):
            u = i * deg_f + a
            for j in range(dim):
                for b in range(deg_f):
                    v = j * deg_f + b
                    acc = 0
                    fab = FM[a][b]
                    for k in range(dim):
                        co, dexp = sc_f[i][j][k]
                        if any(co):
                            w = fmul(fab, co)
                            lift = p ** (d0 - dexp)
                            for c2 in range(deg_f):
                                if w[c2]:
                                    acc += (w[c2] * lift % pNb) * Bpow[k * deg_f + c2]
                    bigT[u][v] = acc

    def mulflat(u: list[int], v: list[int]) -> list[int]:
        acc = 0
        for t, ut in enumerate(u):
            if ut:
                rowt = bigT[t]
                for w2, vw in enumerate(v):
                    if vw and rowt[w2]:
                        acc += (ut * vw % pNb) * rowt[w2]
        out = []
        for _ in range(n):
            acc, digit = divmod(acc, B)
            out.append(digit % pNb)
        return out

    def xrow(pairs: list[tuple[list[int], int]]) -> tuple[list[int], int]:
        dmax = max(d for _, d in pairs)
        out: list[int] = []
        for co, d in pairs:
            lift = p ** (dmax - d)
            out.extend(x * lift % pNb for x in co)
        return out, dmax

    def yscalar(c2: int, row: list[int]) -> list[int]:
        out = [0] * n
        for k in range(dim):
            for a in range(deg_f):
                xa = row[k * deg_f + a]
                if xa:
                    rowF = FM[c2][a]
                    for b in range(deg_f):
                        out[k * deg_f + b] += xa * rowF[b]
        return [x % pNb for x in out]

    gen_pairs = [xrow([(coord_f(flat), dexp) for flat, dexp in grow]) for grow in raw_gens]
    one_ints, one_d = xrow([(coord_f(flat), dexp) for flat, dexp in raw_one])
    D = max([one_d] + [d for _, d in gen_pairs])
    c0 = D + d0
    seed_rows = []
    for ints, d in gen_pairs:
        lifted = [x * p ** (D - d) % pNb for x in ints]
        for c2 in range(deg_f):
            seed_rows.append(yscalar(c2, lifted))
    one_row = [x * p ** (D - one_d) % pNb for x in one_ints]

    def normalize(
        rows: list[list[int]], piv: list[tuple[int, int]], scale: int
    ) -> tuple[list[list[int]], list[tuple[int, int]], int]:
        kmin = None
        for row in rows:
            for x in row:
                if x:
                    v = 0
                    while x % p == 0:
                        x //= p
                        v += 1
                    kmin = v if kmin is None else min(kmin, v)
                    if kmin == 0:
                        return rows, piv, scale
        assert kmin is not None and kmin <= scale
        fac = p**kmin
        rows = [[x // fac for x in row] for row in rows]
        piv = [(c, v - kmin) for c, v in piv]
        return rows, piv, scale - kmin

    R, piv = echelon_mod_pn(seed_rows, p, Nb)
    if len(R) != n:
        raise PrecisionLoss("seed order lattice is rank-deficient")
    if express_over_echelon(one_row, R, piv, p, Nb) is None:
        raise PrecisionLoss("the identity is outside the seed order")
    R, piv, scale = normalize(R, piv, c0)

    sc_p = None
    jbar = None
    Jech = Jpiv = None
    for _ in range(64):
        if 2 * scale + 4 > Nb:
            raise PrecisionLoss(
                "the order climb crowded out the working digits"
            )
        pscale = p**scale
        sc_p = [[None] * n for _ in range(n)]
        prods = [[mulflat(R[i], R[j]) for j in range(n)] for i in range(n)]
        for i in range(n):
            for j in range(n):
                y = express_over_echelon(prods[i][j], R, piv, p, Nb)
                if y is None or any(x % pscale for x in y):
                    raise PrecisionLoss(
                        "order lattice is not multiplicatively closed"
                    )
                sc_p[i][j] = [x // pscale % p for x in y]
        jbar = algebra_radical_mod_p(sc_p, p)
        jrows = [[x * p % pNb for x in row] for row in R]
        for vec in jbar:
            jrows.append(
                [sum(vec[t] * R[t][c] for t in range(n)) % pNb for c in range(n)]
            )
        Jech, Jpiv = echelon_mod_pn(jrows, p, Nb)

        cond_mod = p ** (scale + 1)
        wtab = []
        for t in range(n):
            per_j = []
            for jr in Jech:
                w = express_over_echelon(mulflat(R[t], jr), Jech, Jpiv, p, Nb)
                if w is None:
                    raise PrecisionLoss("the radical is not a right ideal")
                per_j.append(w)
            wtab.append(per_j)
        mat = []
        for jidx in range(len(Jech)):
            for coord in range(len(Jech)):
                mat.append(
                    [wtab[t][jidx][coord] % cond_mod for t in range(n)]
                )
        new_rows = [[x * p % pNb for x in row] for row in R]
        for vec, _tors in kernel_mod_pn(mat, p, scale + 1):
            new_rows.append(
                [sum(vec[t] * R[t][c] for t in range(n)) % pNb for c in range(n)]
            )
        R2, piv2 = echelon_mod_pn(new_rows, p, Nb)
        if len(R2) != n:
            raise PrecisionLoss("left order lattice is rank-deficient")
        R2, piv2, scale2 = normalize(R2, piv2, scale + 1)
        if scale2 == scale and R2 == R:
            break
        R, piv, scale = R2, piv2, scale2
    else:
        raise PrecisionLoss("the order climb did not stabilize")

    jred, jpivots = rref(jbar, p)
    jred = jred[: len(jpivots)]
    comp_idx = [c for c in range(n) if c not in jpivots]
    sdim = len(comp_idx)

    def sproject(vec: list[int]) -> list[int]:
        w = [x % p for x in vec]
        for row, c in zip(jred, jpivots):
            f = w[c]
            if f:
                w = [(a - f * b) % p for a, b in zip(w, row)]
        return [w[c] for c in comp_idx]

    ssc = [
        [sproject(sc_p[comp_idx[i]][comp_idx[j]]) for j in range(sdim)]
        for i in range(sdim)
    ]

    def smul(u: list[int], v: list[int]) -> list[int]:
        out = [0] * sdim
        for i, ui in enumerate(u):
            if ui:
                for j, vj in enumerate(v):
                    if vj:
                        f = ui * vj
                        row = ssc[i][j]
                        for k in range(sdim):
                            out[k] += f * row[k]
        return [x % p for x in out]

    def spow_p(u: list[int]) -> list[int]:
        out = u
        for _ in range(p - 1):
            out = smul(out, u)
        return out

    cmat = []
    for j in range(sdim):
        for coord in range(sdim):
            cmat.append(
                [(ssc[i][j][coord] - ssc[j][i][coord]) % p for i in range(sdim)]
            )
    zbasis = kernel(cmat, p)
    zdim = len(zbasis)
    ztcols = [[zb[i] for zb in zbasis] for i in range(sdim)]

    def z_coords(vec: list[int]) -> list[int]:
        sol = solve(ztcols, vec, p)
        assert sol is not None, "the Frobenius must preserve the centre"
        return sol

    phi_z = [z_coords(spow_p(zb)) for zb in zbasis]
    fixed = kernel(
        [
            [(phi_z[i][coord] - (1 if i == coord else 0)) % p for i in range(zdim)]
            for coord in range(zdim)
        ],
        p,
    )
    blocks = len(fixed)
    assert blocks >= 1 and zdim % (blocks * f_F) == 0, (
        "the centre must be a product of residue fields of the centre's ring"
    )
    s = zdim // (blocks * f_F)
    if root % s:
        raise PrecisionLoss(f"computed index {s} does not divide sqrt(dim) = {root}")
    if blocks == 1:
        assert sdim == (root // s) ** 2 * s * f_F, "residue dimension mismatch"
    else:
        assert sdim % (s * f_F) == 0, "residue dimension mismatch"

    if s == 1:
        return 1, 0
    if root != s:
        raise BackendUnavailable(
            "matrix component with nontrivial index is outside the desk "
            "backend; supply an index override"
        )
    assert blocks == 1, "an order in a division algebra stabilizes maximal"
    for i in range(sdim):
        for j in range(i):
            assert ssc[i][j] == ssc[j][i], "the residue ring must be commutative"

    pscale = p**scale
    target_form = echelon_mod_pn(
        [[x * pscale % pNb for x in row] for row in Jech], p, Nb
    )
    gen_row = None
    for grow in Jech:
        glat = echelon_mod_pn([mulflat(R[t], grow) for t in range(n)], p, Nb)
        if glat == target_form:
            gen_row = grow
            break
    if gen_row is None:
        raise PrecisionLoss("no single row generates the radical")

    M0 = 2 * scale + 2
    pM0 = p**M0
    left_cols = [mulflat(R[t], gen_row) for t in range(n)]
    rad_cols = [mulflat(jr, gen_row) for jr in Jech]
    psi_cols = []
    for ci in comp_idx:
        target = mulflat(gen_row, R[ci])
        aug = []
        for coord in range(n):
            aug.append(
                [col[coord] % pM0 for col in left_cols]
                + [col[coord] % pM0 for col in rad_cols]
                + [(-target[coord]) % pM0]
            )
        sol = None
        for vec, torsion in kernel_mod_pn(aug, p, M0):
            if torsion is None and vec[-1] % p:
                lam = inv_mod(vec[-1], pM0)
                sol = [vec[t] * lam % p for t in range(n)]
                break
        if sol is None:
            raise PrecisionLoss("conjugation by the radical generator failed")
        psi_cols.append(sproject(sol))

    def map_apply(cols_m: list[list[int]], vec: list[int]) -> list[int]:
        out = [0] * sdim
        for i, xi in enumerate(vec):
            if xi:
                for k in range(sdim):
                    out[k] += xi * cols_m[i][k]
        return [x % p for x in out]

    frob_cols = [
        spow_p([1 if t == i else 0 for t in range(sdim)]) for i in range(sdim)
    ]
    base_cols = frob_cols
    for _ in range(f_F - 1):
        base_cols = [map_apply(frob_cols, col) for col in base_cols]
    cur = base_cols
    r = None
    for j in range(1, s):
        if cur == psi_cols:
            r = j
            break
        cur = [map_apply(base_cols, col) for col in cur]
    if r is None or math.gcd(r, s) != 1:
        raise PrecisionLoss(
            "conjugation does not act as a unit power of Frobenius"
        )
    return s, r


def schur_index(
    component: SimpleComponentAlgebra,
    hints: dict | None = None,
) -> tuple[int, int, int]:
    """(s, r, n) for a simple component: index, Hasse numerator, matrix size.

    The backend chain: dimension 1 is trivial; hints["p_group"] asserts the
    split case s = 1 directly (valid whenever the group is a p-group over a
    p-adic base); otherwise the maximal-order climb runs.  When the climb
    refuses with BackendUnavailable, hints["override"] = {"s": ..., "r": ...}
    supplies the invariants from outside.  A PrecisionLoss is retried once
    with hints["rebuild"], a callable mapping a precision to a fresh
    component, at twice the precision; without that hint it propagates.
    """
    hints = dict(hints or {})
    dim = component.dim
    root = math.isqrt(dim)
    if root * root != dim:
        raise MalformedInput(f"component dimension {dim} is not a square")
    if dim == 1:
        return 1, 0, 1
    if hints.get("p_group"):
        return 1, 0, root
    try:
        try:
            s, r = _maximal_order_invariants(component)
        except PrecisionLoss:
            rebuild = hints.get("rebuild")
            if rebuild is None:
                raise
            s, r = _maximal_order_invariants(rebuild(2 * component.N))
    except BackendUnavailable:
        override = hints.get("override")
        if override is None:
            raise
        s, r = int(override["s"]), int(override["r"])
        bad = s < 1 or root % s or (s == 1 and r != 0)
        if s > 1 and not (0 < r < s and math.gcd(r, s) == 1):
            bad = True
        if bad:
            raise MalformedInput(
                f"override (s={s}, r={r}) is inconsistent with dimension {dim}"
            )
    return s, r, root // s
