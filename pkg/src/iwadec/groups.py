"""Finite groups H with a distinguished p-power-order automorphism.

Groups are handed around as validated multiplication tables (indices are
0-based, the identity is normalized to index 0). Permutation-generator
input is expanded to a table by orbit closure. The distinguished
automorphism is the action of the topological generator of the Z_p factor
on H; its order must be a power of the working prime p.

Desk-scale bound: |H| <= 2000. Everything downstream is table-driven and
exact, so the table is the canonical form.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import lcm

import sympy

from .errors import (
    MalformedInput,
    NoIdentity,
    NoInverse,
    NonAssociative,
    NotAutomorphism,
    OrderNotPPower,
)

MAX_ORDER = 2000


@dataclass(frozen=True)
class FiniteGroupData:
    order: int
    mul_table: tuple[tuple[int, ...], ...]
    identity: int
    exponent: int
    inverses: tuple[int, ...]
    element_orders: tuple[int, ...]

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def power(self, a: int, k: int) -> int:
        k %= self.element_orders[a]
        acc = self.identity
        for _ in range(k):
            acc = self.mul_table[acc][a]
        return acc

    def conjugate(self, g: int, h: int) -> int:
        """g h g^-1."""
        return self.mul_table[self.mul_table[g][h]][self.inverses[g]]


@dataclass(frozen=True)
class GammaAction:
    image_map: tuple[int, ...]
    action_order: int
    n0: int
    p: int

    def apply(self, h: int) -> int:
        return self.image_map[h]

    def iterate(self, h: int, k: int) -> int:
        k %= self.action_order
        for _ in range(k):
            h = self.image_map[h]
        return h


@dataclass(frozen=True)
class ConjugacyClassSet:
    classes: tuple[tuple[int, ...], ...]
    representatives: tuple[int, ...]
    class_sizes: tuple[int, ...]
    class_of: tuple[int, ...] = field(repr=False)

    def __len__(self) -> int:
        return len(self.classes)


def _expand_perm_gens(gens: list) -> list[tuple[int, ...]]:
    """Orbit-close a list of permutations given as cycle lists."""
    points: set[int] = set()
    for g in gens:
        for cyc in g:
            points.update(cyc)
    pts = sorted(points)
    idx = {pt: i for i, pt in enumerate(pts)}
    n = len(pts)

    def perm_of(cycles) -> tuple[int, ...]:
        img = list(range(n))
        for cyc in cycles:
            if len(set(cyc)) != len(cyc):
                raise MalformedInput(f"repeated point in cycle {cyc}")
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                img[idx[a]] = idx[b]
        if sorted(img) != list(range(n)):
            raise MalformedInput("cycles do not define a permutation")
        return tuple(img)

    gperms = [perm_of(g) for g in gens]
    ident = tuple(range(n))
    elements = [ident]
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for e in frontier:
            for g in gperms:
                prod = tuple(g[e[i]] for i in range(n))
                if prod not in seen:
                    seen.add(prod)
                    elements.append(prod)
                    nxt.append(prod)
                    if len(elements) > MAX_ORDER:
                        raise MalformedInput(
                            f"permutation group exceeds the desk bound {MAX_ORDER}"
                        )
        frontier = nxt
    return elements


def _table_from_perms(elements: list[tuple[int, ...]]) -> list[list[int]]:
    pos = {e: i for i, e in enumerate(elements)}
    n = len(elements[0])
    table = []
    for a in elements:
        row = []
        for b in elements:
            prod = tuple(a[b[i]] for i in range(n))
            row.append(pos[prod])
        table.append(row)
    return table


def _small_generating_set(table: list[list[int]], identity: int) -> list[int]:
    n = len(table)
    gens: list[int] = []
    span = {identity}
    for cand in range(n):
        if cand in span:
            continue
        gens.append(cand)
        frontier = list(span)
        span.add(cand)
        frontier.append(cand)
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = table[x][g]
                    if y not in span:
                        span.add(y)
                        nxt.append(y)
                    y = table[g][x]
                    if y not in span:
                        span.add(y)
                        nxt.append(y)
            frontier = nxt
        if len(span) == n:
            break
    return gens


def load_group(spec: dict) -> FiniteGroupData:
    """Validate a serialized group and normalize it to a table.

    Accepted shapes: {"order": n, "table": [[...]]} with table[i][j] = i*j,
    or {"perm_gens": [[cycle, ...], ...]} with cycles as lists of points.
    """
    if not isinstance(spec, dict):
        raise MalformedInput("group spec must be a JSON object")
    if "table" in spec:
        table = spec["table"]
        n = spec.get("order", len(table))
        if not isinstance(table, list) or len(table) != n:
            raise MalformedInput("table size does not match order")
        if n < 1 or n > MAX_ORDER:
            raise MalformedInput(f"order must be between 1 and {MAX_ORDER}")
        for row in table:
            if len(row) != n or any(
                not isinstance(x, int) or x < 0 or x >= n for x in row
            ):
                raise MalformedInput("table entries must be indices in range")
        table = [list(row) for row in table]
    elif "perm_gens" in spec:
        elements = _expand_perm_gens(spec["perm_gens"])
        table = _table_from_perms(elements)
        n = len(table)
    else:
        raise MalformedInput("group spec needs a 'table' or 'perm_gens' key")

    # identity
    ident = None
    for e in range(n):
        if all(table[e][x] == x and table[x][e] == x for x in range(n)):
            ident = e
            break
    if ident is None:
        raise NoIdentity("no two-sided identity in the table")

    # normalize identity to index 0
    if ident != 0:
        relabel = list(range(n))
        relabel[0], relabel[ident] = relabel[ident], relabel[0]
        inverse_relabel = relabel  # an involution
        table = [
            [inverse_relabel[table[relabel[i]][relabel[j]]] for j in range(n)]
            for i in range(n)
        ]
        ident = 0

    # associativity via Light's test on a small generating set
    gens = _small_generating_set(table, ident)
    for g in gens:
        col = table[g]
        for a in range(n):
            row_a = table[a]
            row_ag = table[row_a[g]]
            for b in range(n):
                if row_ag[b] != row_a[col[b]]:
                    raise NonAssociative(
                        f"(a*g)*b != a*(g*b) at a={a}, g={g}, b={b}"
                    )

    # inverses
    inverses = [-1] * n
    for a in range(n):
        for b in range(n):
            if table[a][b] == ident and table[b][a] == ident:
                inverses[a] = b
                break
        if inverses[a] < 0:
            raise NoInverse(f"element {a} has no inverse")

    # element orders and exponent
    orders = []
    for a in range(n):
        o, x = 1, a
        while x != ident:
            x = table[x][a]
            o += 1
        orders.append(o)
    exponent = 1
    for o in orders:
        exponent = lcm(exponent, o)
    assert n % exponent == 0
    assert all(exponent % o == 0 for o in orders)

    return FiniteGroupData(
        order=n,
        mul_table=tuple(tuple(row) for row in table),
        identity=0,
        exponent=exponent,
        inverses=tuple(inverses),
        element_orders=tuple(orders),
    )


def conjugacy_classes(G: FiniteGroupData) -> ConjugacyClassSet:
    n = G.order
    class_of = [-1] * n
    classes: list[tuple[int, ...]] = []
    for h in range(n):
        if class_of[h] >= 0:
            continue
        orbit = sorted({G.conjugate(g, h) for g in range(n)})
        k = len(classes)
        for x in orbit:
            class_of[x] = k
        classes.append(tuple(orbit))
    assert sum(len(c) for c in classes) == n
    return ConjugacyClassSet(
        classes=tuple(classes),
        representatives=tuple(c[0] for c in classes),
        class_sizes=tuple(len(c) for c in classes),
        class_of=tuple(class_of),
    )


def make_gamma_action(G: FiniteGroupData, automorphism: dict, p: int) -> GammaAction:
    if not sympy.isprime(p) or p == 2:
        raise MalformedInput(f"p must be an odd prime, got {p}")
    if not isinstance(automorphism, dict) or "images" not in automorphism:
        raise MalformedInput("automorphism spec must be a dict with an 'images' list")
    images = automorphism["images"]
    n = G.order
    if not isinstance(images, list) or any(not isinstance(x, int) for x in images):
        raise MalformedInput("'images' must be a list of element indices")
    if len(images) != n or sorted(images) != list(range(n)):
        raise NotAutomorphism("image map is not a bijection on element indices")
    for a in range(n):
        row = G.mul_table[a]
        ia = images[a]
        for b in range(n):
            if images[row[b]] != G.mul_table[ia][images[b]]:
                raise NotAutomorphism(
                    f"phi(a*b) != phi(a)*phi(b) at a={a}, b={b}"
                )
    # multiplicative order of the map
    ident = tuple(range(n))
    cur = tuple(images)
    order = 1
    while cur != ident:
        cur = tuple(images[x] for x in cur)
        order += 1
        if order > n * n:
            raise NotAutomorphism("image map does not have finite order (bug)")
    n0 = 0
    o = order
    while o % p == 0:
        o //= p
        n0 += 1
    if o != 1:
        raise OrderNotPPower(
            f"automorphism order {order} is not a power of p={p}"
        )
    return GammaAction(image_map=tuple(images), action_order=order, n0=n0, p=p)
