"""Independent orbit bookkeeping for cyclic H, in plain integer arithmetic.

For H cyclic of order n with automorphism x -> x^k over the base field Q_p,
a character is determined by its exponent j in Z/n (it sends a fixed
generator x to zeta_n^j).  The automorphism twist multiplies the exponent
by k, and the local Galois action multiplies it by a unit from the
decomposition group.  Joint orbits and every derived invariant then reduce
to modular arithmetic on exponents.  Nothing here touches the library's
character table or field-spec machinery, so the numbers produced by
``cyclic_orbit_data`` serve as an independent cross-check for the orbit
enumeration over characters.
"""

import math


def _split_p_part(n, p):
    """Return (n', p^s) with n = n' * p^s and p not dividing n'."""
    n_prime, ps = n, 1
    while n_prime % p == 0:
        n_prime //= p
        ps *= p
    return n_prime, ps


def _crt_pair(m1, r1, m2, r2):
    """Smallest non-negative x with x = r1 mod m1 and x = r2 mod m2."""
    for x in range(max(m1 * m2, 1)):
        if x % m1 == r1 % m1 and x % m2 == r2 % m2:
            return x
    raise AssertionError("no CRT solution")


def decomposition_units(n, p):
    """Units mod n acting on Q_p(zeta_n): powers of p on the prime-to-p
    part, paired with every unit on the p-part."""
    if n == 1:
        return [0]
    n_prime, ps = _split_p_part(n, p)
    frobs = [1 % n_prime]
    if n_prime > 1:
        fr = p % n_prime
        while fr != 1 % n_prime:
            frobs.append(fr)
            fr = fr * p % n_prime
    units = set()
    for fr in frobs:
        for u in range(ps):
            if ps == 1 or math.gcd(u, ps) == 1:
                units.add(_crt_pair(n_prime, fr, ps, u))
    return sorted(units)


def inertia_units(n, p):
    """The subset of decomposition_units congruent to 1 mod the
    prime-to-p part (acting trivially on the residue field)."""
    n_prime, _ = _split_p_part(n, p)
    return [a for a in decomposition_units(n, p) if a % max(n_prime, 1) == 1 % max(n_prime, 1)]


def cyclic_orbit_data(n, k, p, units=None):
    """All joint orbits of exponents mod n under j -> j*k and the local
    Galois action, with the invariants each orbit determines.

    ``units`` restricts the Galois action to a subgroup of the
    decomposition units (the default is all of them, i.e. base field
    Q_p).  Returns a list of dicts sorted by orbit size then minimal
    exponent, one per orbit, with keys: exponents, size, w, v, tau,
    deg_F_eta, deg_F_chi, e, f.
    """
    if units is None:
        units = decomposition_units(n, p)
    else:
        assert set(units) <= set(decomposition_units(n, p))
    inertia = set(inertia_units(n, p))
    seen = set()
    out = []
    for j0 in range(n):
        if j0 in seen:
            continue
        cell = {j0}
        frontier = [j0]
        while frontier:
            j = frontier.pop()
            for nxt in [j * k % n] + [j * a % n for a in units]:
                if nxt not in cell:
                    cell.add(nxt)
                    frontier.append(nxt)
        seen |= cell
        j = min(cell)
        gamma_orbit = [j]
        cur = j * k % n
        while cur != j:
            gamma_orbit.append(cur)
            cur = cur * k % n
        w = len(gamma_orbit)
        galois_orbit = {j * a % n for a in units}
        v = next(i for i in range(1, w + 1) if gamma_orbit[i % w] in galois_orbit)
        tau = min(a for a in units if j * a % n == gamma_orbit[v % w])
        stab_eta = [a for a in units if j * a % n == j]
        stab_chi = [a for a in units if j * a % n in set(gamma_orbit)]
        deg_eta = len(units) // len(stab_eta)
        deg_chi = len(units) // len(stab_chi)
        e = len([a for a in stab_chi if a in inertia]) // len([a for a in stab_eta if a in inertia])
        f = (deg_eta // deg_chi) // e
        assert w == v * (deg_eta // deg_chi), "orbit bookkeeping out of joint"
        assert len(cell) == v * deg_eta, "cell is not a union of v Galois orbits"
        out.append({
            "exponents": sorted(cell),
            "size": len(cell),
            "w": w,
            "v": v,
            "tau": tau,
            "deg_F_eta": deg_eta,
            "deg_F_chi": deg_chi,
            "e": e,
            "f": f,
        })
    assert sum(c["size"] for c in out) == n
    assert sum(c["w"] * c["deg_F_chi"] for c in out) == n, "components must exhaust the group algebra"
    return sorted(out, key=lambda c: (c["size"], c["exponents"]))


if __name__ == "__main__":
    import json
    import sys

    n, k, p = (int(a) for a in sys.argv[1:4])
    print(json.dumps(cyclic_orbit_data(n, k, p), indent=1))
