"""Component bookkeeping for the quotient ring of the Iwasawa algebra.

The simple components of Q^F(G), for G = H x| <gamma>, are indexed by the
orbits of Irr(H) under the joint action of the twist eta -> eta(gamma(.))
and the Galois group of F(zeta)/F.  Each orbit carries a small set of
integer and field invariants:

  w    index of the stabiliser of eta in G, equivalently the size of the
       gamma-orbit of eta; a power of p.
  v    smallest positive i with {}^{gamma^i}eta Galois-conjugate to eta
       over F; the gamma-orbit splits into v Galois orbits over F_chi
       with representatives eta_i = {}^{gamma^{i-1}}eta.
  tau  the unique element of Gal(F(eta)/F_chi) with
       {}^{gamma^v}eta = {}^{tau}eta, stored as the smallest unit
       representative modulo the ambient conductor.
  F_chi, F(eta)
       the field generated by the values of chi on H (equivalently, the
       fixed field of the setwise stabiliser of the gamma-orbit) and the
       field generated by the values of eta.  Both are subfields of a
       cyclotomic extension of Q_p and are represented as LocalFieldSpec
       values inside the ambient modulus M = lcm(m_F, exp H).
  e, f ramification index and residue degree of F(eta) over F_chi;
       w = v * e * f always holds.

The group-algebra idempotents attached to an orbit are computed with
exact cyclotomic coefficients:

  e(eta)    = (eta(1)/|H|) sum_h eta(h^-1) h,
  eps(eta)  = sum of e({}^{sigma}eta) over the Galois orbit of eta,
  e_chi     = sum of e({}^{gamma^i}eta) over the gamma-orbit,
  eps_chi   = sum of e(eta') over the whole joint orbit,

with coefficients in F(eta), F, F_chi, and F respectively.

Base change replaces F by an intermediate field E with
F_chi <= E <= F(eta): the component over E attached to the same eta has
the same w, v^E = v * (E : F_chi), tau^E = tau^{(E : F_chi)}, character
field exactly E, and (e, f) read off from E inside F(eta).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .chartable import (
    Character,
    CycloElement,
    character_table,
    cyclo_rational,
    galois_act,
    gamma_act,
)
from .errors import FieldOutOfRange, InconsistentOrbit, MalformedInput
from .groups import FiniteGroupData, GammaAction
from .localfield import (
    LocalFieldSpec,
    extension_profile,
    field_spec,
    local_galois_group,
)


@dataclass(frozen=True)
class ComponentOrbit:
    """One joint orbit of Irr(H), with its integer invariants.

    ``eta`` is the member appearing first in character-table order;
    ``gamma_orbit`` lists eta, {}^{gamma}eta, ... (w distinct characters);
    ``galois_orbit_reps`` are eta_1, ..., eta_v; ``members`` is the whole
    orbit in table order.  ``tau`` is a unit modulo ``ambient_m``.
    """

    eta: Character
    gamma_orbit: tuple[Character, ...]
    galois_orbit_reps: tuple[Character, ...]
    members: tuple[Character, ...]
    w: int
    v: int
    tau: int
    ambient_m: int


@dataclass(frozen=True)
class ComponentInvariants:
    """The full invariant tuple of one component over a base field."""

    w: int
    v: int
    tau: int
    F_chi: LocalFieldSpec
    F_eta: LocalFieldSpec
    e: int
    f: int


@dataclass(frozen=True)
class GroupAlgebraIdempotent:
    """An element of F(zeta)[H] given by one coefficient per group element."""

    coeffs: tuple[CycloElement, ...]
    label: str


def _lift_units(F: LocalFieldSpec, M: int) -> tuple[int, ...]:
    """Units mod M acting on Q_p(zeta_M) and fixing F pointwise.

    F lives inside Q_p(zeta_{m_F}) with m_F dividing M; its stabiliser is
    pulled back along reduction mod m_F.
    """
    if M % F.m != 0:
        raise MalformedInput(f"ambient modulus {M} is not a multiple of {F.m}")
    GM = local_galois_group(M, F.p)
    return tuple(b for b in GM.elements if b % F.m in F.stabilizer)


def _generating_units(units: tuple[int, ...], M: int) -> list[int]:
    """A short generating set of the (abelian) unit subgroup.

    Orbit closures only need generators; acting by every unit would make
    the enumeration quadratic in the subgroup order.
    """
    have = {1 % M}
    gens = []
    for b in units:
        if b in have:
            continue
        gens.append(b)
        powers = [1 % M]
        cur = b
        while cur != 1 % M:
            powers.append(cur)
            cur = cur * b % M
        have = {x * y % M for x in have for y in powers}
    return gens


def _orbit_stabilizers(
    orbit: ComponentOrbit, F: LocalFieldSpec
) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]:
    """The acting units over F and the stabilisers of eta and of chi.

    The stabiliser of chi consists of the units mapping eta into its own
    gamma-orbit; because the two actions commute, such units permute the
    whole gamma-orbit and therefore fix F_chi.
    """
    units = _lift_units(F, orbit.ambient_m)
    m_eta = orbit.eta.m
    gamma_set = set(orbit.gamma_orbit)
    stab_eta = tuple(
        b for b in units if galois_act(orbit.eta, b % m_eta) == orbit.eta
    )
    stab_chi = tuple(
        b for b in units if galois_act(orbit.eta, b % m_eta) in gamma_set
    )
    return units, stab_eta, stab_chi


def enumerate_components(
    G: FiniteGroupData,
    action: GammaAction,
    F: LocalFieldSpec,
    table: list[Character] | None = None,
) -> list[ComponentOrbit]:
    """Partition Irr(H) into joint (twist, Galois)-orbits over F.

    Components are returned in table order of their representatives, and
    every irreducible character lands in exactly one component.  A
    precomputed character table of G may be passed to avoid recomputing.
    """
    if action.p != F.p:
        raise MalformedInput(
            f"the action is {action.p}-adic but the base field is {F.p}-adic"
        )
    if table is None:
        table = character_table(G)
    m_eta = G.exponent
    M = math.lcm(F.m, m_eta)
    units = _lift_units(F, M)
    unit_gens = _generating_units(units, M)
    index = {chi: i for i, chi in enumerate(table)}

    components = []
    unassigned = set(range(len(table)))
    while unassigned:
        start = table[min(unassigned)]
        cell = {start}
        frontier = [start]
        while frontier:
            chi = frontier.pop()
            moved = [gamma_act(chi, action)]
            moved.extend(galois_act(chi, b % m_eta) for b in unit_gens)
            for theta in moved:
                if theta not in cell:
                    assert theta in index, "action left the character table"
                    cell.add(theta)
                    frontier.append(theta)
        unassigned -= {index[chi] for chi in cell}

        eta = min(cell, key=lambda chi: index[chi])
        gamma_orbit = [eta]
        cur = gamma_act(eta, action)
        while cur != eta:
            gamma_orbit.append(cur)
            cur = gamma_act(cur, action)
        w = len(gamma_orbit)
        galois_orbit = {galois_act(eta, b % m_eta) for b in units}
        v = next(i for i in range(1, w + 1) if gamma_orbit[i % w] in galois_orbit)
        tau = min(
            b for b in units if galois_act(eta, b % m_eta) == gamma_orbit[v % w]
        )
        components.append(
            ComponentOrbit(
                eta=eta,
                gamma_orbit=tuple(gamma_orbit),
                galois_orbit_reps=tuple(gamma_orbit[:v]),
                members=tuple(sorted(cell, key=lambda chi: index[chi])),
                w=w,
                v=v,
                tau=tau,
                ambient_m=M,
            )
        )

    assert sum(len(c.members) for c in components) == len(table)
    return components


def component_invariants(
    orbit: ComponentOrbit, F: LocalFieldSpec
) -> ComponentInvariants:
    """The invariant tuple (w, v, tau, F_chi, F(eta), e, f) of one component.

    F_chi and F(eta) are cut out of the ambient cyclotomic extension as
    fixed fields of the stabilisers of the gamma-orbit and of eta; (e, f)
    describe F(eta) over F_chi.  Raises InconsistentOrbit if the recorded
    w and v do not satisfy w = v * (F(eta) : F_chi).
    """
    _, stab_eta, stab_chi = _orbit_stabilizers(orbit, F)
    F_eta = field_spec(orbit.ambient_m, F.p, list(stab_eta))
    F_chi = field_spec(orbit.ambient_m, F.p, list(stab_chi))
    profile = extension_profile(F_chi, F_eta)
    if orbit.w != orbit.v * profile.degree:
        raise InconsistentOrbit(
            f"w={orbit.w} but v={orbit.v} and (F(eta):F_chi)={profile.degree}"
        )
    return ComponentInvariants(
        w=orbit.w,
        v=orbit.v,
        tau=orbit.tau,
        F_chi=F_chi,
        F_eta=F_eta,
        e=profile.e,
        f=profile.f,
    )


def _character_idempotent(eta: Character, G: FiniteGroupData) -> list[CycloElement]:
    """Coefficients of e(eta) = (eta(1)/|H|) sum_h eta(h^-1) h."""
    scale = Fraction(eta.degree, G.order)
    return [eta.value_at(G.inv(h)) * scale for h in range(G.order)]


def _coeff_sum(parts: list[list[CycloElement]], m: int, order: int) -> tuple[CycloElement, ...]:
    total = [cyclo_rational(m, 0)] * order
    for part in parts:
        total = [a + b for a, b in zip(total, part)]
    return tuple(total)


def algebra_mul(
    a: tuple[CycloElement, ...],
    b: tuple[CycloElement, ...],
    G: FiniteGroupData,
) -> tuple[CycloElement, ...]:
    """Product of two group-algebra elements given by coefficient tuples."""
    m = a[0].m
    out = [cyclo_rational(m, 0)] * G.order
    for g, ca in enumerate(a):
        if ca.is_zero():
            continue
        for h, cb in enumerate(b):
            if cb.is_zero():
                continue
            k = G.mul(g, h)
            out[k] = out[k] + ca * cb
    return tuple(out)


def build_idempotents(
    orbit: ComponentOrbit, G: FiniteGroupData, F: LocalFieldSpec
) -> dict[str, GroupAlgebraIdempotent]:
    """The four idempotents attached to a component, as exact coefficients.

    Returns e(eta) for the orbit representative, its Galois-orbit sum
    eps(eta), the gamma-orbit sum e_chi, and the full component idempotent
    eps_chi.  The coefficients of e_chi are checked to be fixed by the
    stabiliser of chi (so they lie in F_chi), and those of eps_chi to be
    fixed by the whole acting group (so they lie in F).
    """
    units, _, stab_chi = _orbit_stabilizers(orbit, F)
    m_eta = orbit.eta.m

    e_eta = _character_idempotent(orbit.eta, G)
    galois_orbit = {galois_act(orbit.eta, b % m_eta) for b in units}
    eps_eta = _coeff_sum(
        [_character_idempotent(theta, G) for theta in galois_orbit], m_eta, G.order
    )
    e_chi = _coeff_sum(
        [_character_idempotent(theta, G) for theta in orbit.gamma_orbit],
        m_eta,
        G.order,
    )
    eps_chi = _coeff_sum(
        [_character_idempotent(theta, G) for theta in orbit.members], m_eta, G.order
    )

    for b in stab_chi:
        assert all(
            c.galois(b % m_eta) == c for c in e_chi
        ), "e_chi coefficients must lie in F_chi"
    for b in units:
        assert all(
            c.galois(b % m_eta) == c for c in eps_chi
        ), "eps_chi coefficients must lie in F"

    return {
        "e_eta": GroupAlgebraIdempotent(coeffs=tuple(e_eta), label="e(eta)"),
        "epsilon_eta": GroupAlgebraIdempotent(coeffs=eps_eta, label="eps(eta)"),
        "e_chi": GroupAlgebraIdempotent(coeffs=e_chi, label="e_chi"),
        "epsilon_chi": GroupAlgebraIdempotent(coeffs=eps_chi, label="eps_chi"),
    }


def base_change(inv: ComponentInvariants, E: LocalFieldSpec) -> ComponentInvariants:
    """Invariants of the same component after replacing the base field by E.

    E must satisfy F_chi <= E <= F(eta) inside the same ambient modulus.
    With d = (E : F_chi): w is unchanged, v becomes v*d, tau becomes the
    canonical representative of tau^d, the character field over E is
    exactly E, and (e, f) are those of F(eta) over E.
    """
    if (E.m, E.p) != (inv.F_chi.m, inv.F_chi.p):
        raise FieldOutOfRange(
            f"expected a field inside Q_{inv.F_chi.p}(zeta_{inv.F_chi.m})"
        )
    stab_E = set(E.stabilizer)
    if not set(inv.F_eta.stabilizer) <= stab_E:
        raise FieldOutOfRange("the new base field must lie inside F(eta)")
    if not stab_E <= set(inv.F_chi.stabilizer):
        raise FieldOutOfRange("the new base field must contain F_chi")

    M = E.m
    d = len(inv.F_chi.stabilizer) // len(E.stabilizer)
    tau_d = pow(inv.tau, d, M)
    tau_E = min(tau_d * b % M for b in inv.F_eta.stabilizer)
    profile = extension_profile(E, inv.F_eta)
    return ComponentInvariants(
        w=inv.w,
        v=inv.v * d,
        tau=tau_E,
        F_chi=E,
        F_eta=inv.F_eta,
        e=profile.e,
        f=profile.f,
    )
