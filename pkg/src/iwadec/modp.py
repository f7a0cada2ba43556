"""Small exact kernels used across the package.

Three groups of helpers live here:

* dense polynomial arithmetic over F_ell (little-endian coefficient lists of
  plain ints), including gcds, modular powering, root extraction and full
  factorization (squarefree / distinct-degree / equal-degree);
* dense linear algebra over F_ell: rref, kernels, solving, and a Hessenberg
  characteristic polynomial;
* kernels of integer matrices over Z/p^N via valuation-pivoted elimination
  with tracked column operations (the local-ring analogue of Smith form).

Everything is deterministic: the "random" choices inside equal-degree
splitting walk a fixed sequence so repeated runs agree bit for bit.
"""

from __future__ import annotations

import sympy


def inv_mod(a: int, n: int) -> int:
    return pow(a, -1, n)


def primitive_root_mod(ell: int) -> int:
    """Smallest generator of F_ell^* (ell prime)."""
    fac = sympy.factorint(ell - 1)
    for g in range(2, ell):
        if all(pow(g, (ell - 1) // q, ell) != 1 for q in fac):
            return g
    raise ValueError(f"no primitive root mod {ell}, is it prime?")


# ---------------------------------------------------------------------------
# polynomials over F_ell, little endian

def ptrim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def padd(f: list[int], g: list[int], ell: int) -> list[int]:
    n = max(len(f), len(g))
    out = [0] * n
    for i, c in enumerate(f):
        out[i] = c
    for i, c in enumerate(g):
        out[i] = (out[i] + c) % ell
    return ptrim(out)


def psub(f: list[int], g: list[int], ell: int) -> list[int]:
    n = max(len(f), len(g))
    out = [0] * n
    for i, c in enumerate(f):
        out[i] = c
    for i, c in enumerate(g):
        out[i] = (out[i] - c) % ell
    return ptrim(out)


def pmul(f: list[int], g: list[int], ell: int) -> list[int]:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            out[i + j] = (out[i + j] + a * b) % ell
    return ptrim(out)


def pdivmod(f: list[int], g: list[int], ell: int) -> tuple[list[int], list[int]]:
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    f = f[:]
    q = [0] * max(len(f) - len(g) + 1, 0)
    ginv = inv_mod(g[-1], ell)
    while len(f) >= len(g):
        c = (f[-1] * ginv) % ell
        d = len(f) - len(g)
        if c:
            q[d] = c
            for i, b in enumerate(g):
                f[d + i] = (f[d + i] - c * b) % ell
        f.pop()
    return ptrim(q), ptrim(f)


def pmod(f: list[int], g: list[int], ell: int) -> list[int]:
    return pdivmod(f, g, ell)[1]


def pmonic(f: list[int], ell: int) -> list[int]:
    if not f:
        return f
    c = inv_mod(f[-1], ell)
    return [(a * c) % ell for a in f]


def pgcd(f: list[int], g: list[int], ell: int) -> list[int]:
    while g:
        f, g = g, pmod(f, g, ell)
    return pmonic(f, ell)


def pxgcd(f: list[int], g: list[int], ell: int) -> tuple[list[int], list[int], list[int]]:
    """Extended gcd: returns (d, s, t) monic with s*f + t*g = d."""
    r0, r1 = ptrim([a % ell for a in f]), ptrim([a % ell for a in g])
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = pdivmod(r0, r1, ell)
        r0, r1 = r1, r
        s0, s1 = s1, psub(s0, pmul(q, s1, ell), ell)
        t0, t1 = t1, psub(t0, pmul(q, t1, ell), ell)
    if r0:
        c = inv_mod(r0[-1], ell)
        r0 = [a * c % ell for a in r0]
        s0 = [a * c % ell for a in s0]
        t0 = [a * c % ell for a in t0]
    return r0, s0, t0


def ppowmod(f: list[int], e: int, g: list[int], ell: int) -> list[int]:
    """f^e mod g."""
    out = [1]
    f = pmod(f, g, ell)
    while e:
        if e & 1:
            out = pmod(pmul(out, f, ell), g, ell)
        f = pmod(pmul(f, f, ell), g, ell)
        e >>= 1
    return out


def peval(f: list[int], x: int, ell: int) -> int:
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % ell
    return acc


def poly_roots(f: list[int], ell: int) -> list[int]:
    """All distinct roots of f in F_ell, ell an odd prime. Sorted."""
    f = pmonic(f, ell)
    # keep only the part that splits into distinct linear factors
    xq = ppowmod([0, 1], ell, f, ell)
    lin = pgcd(psub(xq, [0, 1], ell), f, ell)
    roots: list[int] = []
    stack = [lin]
    shift = 0
    while stack:
        g = stack.pop()
        if len(g) <= 1:
            continue
        if len(g) == 2:
            roots.append((-g[0] * inv_mod(g[1], ell)) % ell)
            continue
        if g[0] == 0:
            roots.append(0)
            g = ptrim([g[i] for i in range(1, len(g))])
            stack.append(g)
            continue
        # deterministic splitting walk: gcd with (x+a)^((ell-1)/2) - 1
        split = None
        while split is None:
            shift += 1
            h = ppowmod([shift % ell, 1], (ell - 1) // 2, g, ell)
            h = pgcd(psub(h, [1], ell), g, ell)
            if 1 < len(h) < len(g):
                split = h
        stack.append(split)
        stack.append(pdivmod(g, split, ell)[0])
    return sorted(roots)


def pderiv(f: list[int], ell: int) -> list[int]:
    return ptrim([(i * f[i]) % ell for i in range(1, len(f))])


def factor_poly(f: list[int], ell: int) -> list[tuple[list[int], int]]:
    """Full factorization over F_ell into (monic irreducible, multiplicity).

    Classical squarefree / distinct-degree / equal-degree chain. Determinism
    as in poly_roots: the equal-degree splitting walks shifts 1, 2, 3, ...
    """
    f = pmonic(f, ell)
    out: list[tuple[list[int], int]] = []
    # squarefree decomposition (char ell, so watch for vanishing derivative)
    mult = 1
    while len(f) > 1:
        d = pderiv(f, ell)
        if not d:
            # f is a polynomial in x^ell: take ell-th root and scale mult
            root = [f[i] for i in range(0, len(f), ell)]
            f = root
            mult *= ell
            continue
        sqf = pdivmod(f, pgcd(f, d, ell), ell)[0]
        # peel factors of sqf with their multiplicities in f
        for g in _factor_squarefree(sqf, ell):
            e = 0
            while True:
                q, r = pdivmod(f, g, ell)
                if r:
                    break
                f = q
                e += 1
            out.append((g, e * mult))
    return sorted(out, key=lambda t: (len(t[0]), t[0]))


def _factor_squarefree(f: list[int], ell: int) -> list[list[int]]:
    """Irreducible factors of a squarefree monic f."""
    factors: list[list[int]] = []
    # distinct-degree
    pieces: list[tuple[list[int], int]] = []
    xq = [0, 1]
    g = f
    d = 0
    while len(g) - 1 > 2 * d:
        d += 1
        xq = ppowmod(xq, ell, g, ell)
        h = pgcd(psub(xq, [0, 1], ell), g, ell)
        if len(h) > 1:
            pieces.append((h, d))
            g = pdivmod(g, h, ell)[0]
            xq = pmod(xq, g, ell)
    if len(g) > 1:
        pieces.append((g, len(g) - 1))
    # equal-degree (Cantor-Zassenhaus with a deterministic walk)
    for h, d in pieces:
        stack = [h]
        shift = 0
        while stack:
            g = stack.pop()
            if len(g) - 1 == d:
                factors.append(g)
                continue
            split = None
            while split is None:
                shift += 1
                # walk every polynomial, coefficients read off the counter as
                # base-ell digits, so the candidate supply never runs dry
                base = []
                k = shift
                while k:
                    base.append(k % ell)
                    k //= ell
                w = ppowmod(base, (ell**d - 1) // 2, g, ell)
                w = pgcd(psub(w, [1], ell), g, ell)
                if 1 < len(w) < len(g):
                    split = w
            stack.append(split)
            stack.append(pdivmod(g, split, ell)[0])
    return factors


# ---------------------------------------------------------------------------
# linear algebra over F_ell

def mat_mul(a: list[list[int]], b: list[list[int]], ell: int) -> list[list[int]]:
    n, k, m = len(a), len(b), len(b[0])
    bt = [[b[r][c] for r in range(k)] for c in range(m)]
    return [[sum(ra[i] * cb[i] for i in range(k)) % ell for cb in bt] for ra in a]


def mat_vec(a: list[list[int]], v: list[int], ell: int) -> list[int]:
    return [sum(r[i] * v[i] for i in range(len(v))) % ell for r in a]


def rref(a: list[list[int]], ell: int) -> tuple[list[list[int]], list[int]]:
    """Row-reduced echelon form, returns (matrix, pivot column list)."""
    a = [row[:] for row in a]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        pr = next((i for i in range(r, rows) if a[i][c] % ell), None)
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        inv = inv_mod(a[r][c], ell)
        a[r] = [(x * inv) % ell for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % ell for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def kernel(a: list[list[int]], ell: int) -> list[list[int]]:
    """Basis of the right kernel {x : a x = 0} over F_ell."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    red, pivots = rref(a, ell)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * cols
        v[fc] = 1
        for r, pc in enumerate(pivots):
            v[pc] = (-red[r][fc]) % ell
        basis.append(v)
    return basis


def solve(a: list[list[int]], b: list[int], ell: int) -> list[int] | None:
    """One solution of a x = b over F_ell, or None."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    aug = [a[i][:] + [b[i] % ell] for i in range(rows)]
    red, pivots = rref(aug, ell)
    if cols in pivots:
        return None
    x = [0] * cols
    for r, pc in enumerate(pivots):
        x[pc] = red[r][cols]
    return x


def charpoly(a: list[list[int]], ell: int) -> list[int]:
    """Characteristic polynomial det(xI - a) over F_ell, little endian, monic.

    Hessenberg reduction then the standard leading-minor recurrence.
    """
    n = len(a)
    h = [row[:] for row in a]
    for c in range(n - 2):
        pr = next((r for r in range(c + 1, n) if h[r][c] % ell), None)
        if pr is None:
            continue
        h[c + 1], h[pr] = h[pr], h[c + 1]
        for r in range(n):
            h[r][c + 1], h[r][pr] = h[r][pr], h[r][c + 1]
        inv = inv_mod(h[c + 1][c], ell)
        for r in range(c + 2, n):
            f = (h[r][c] * inv) % ell
            if f:
                h[r] = [(x - f * y) % ell for x, y in zip(h[r], h[c + 1])]
                for i in range(n):
                    h[i][c + 1] = (h[i][c + 1] + f * h[i][r]) % ell
    # p_k = charpoly of leading k x k block
    polys = [[1]]
    for k in range(1, n + 1):
        term = pmul(polys[k - 1], [(-h[k - 1][k - 1]) % ell, 1], ell)
        run = 1
        for i in range(k - 1, 0, -1):
            run = (run * h[i][i - 1]) % ell
            coeff = (h[i - 1][k - 1] * run) % ell
            if coeff:
                term = psub(term, pmul([coeff], polys[i - 1], ell), ell)
        polys.append(term)
    out = polys[n]
    out += [0] * (n + 1 - len(out))
    return out


# ---------------------------------------------------------------------------
# kernels over Z/p^N

def kernel_mod_pn(
    a: list[list[int]], p: int, nprec: int
) -> list[tuple[list[int], int | None]]:
    """Generators of {x : a x = 0 over Z/p^N}.

    Valuation-pivoted elimination with tracked column operations. Returns
    pairs (vector, torsion): torsion None marks a free generator (a genuine
    kernel direction at full precision), torsion = a > 0 marks a generator
    whose p^(N-a) multiple only is known to be annihilated. Callers that
    expect an exact free kernel keep the None rows and treat any small-a
    torsion as precision junk.
    """
    q = p**nprec
    rows = len(a)
    cols = len(a[0]) if rows else 0
    m = [[x % q for x in row] for row in a]
    comp = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]

    def colop_sub(src: int, dst: int, f: int) -> None:
        for r in range(rows):
            m[r][dst] = (m[r][dst] - f * m[r][src]) % q
        for r in range(cols):
            comp[r][dst] = (comp[r][dst] - f * comp[r][src]) % q

    def val(x: int) -> int:
        if x == 0:
            return nprec
        v = 0
        while x % p == 0:
            x //= p
            v += 1
        return v

    pivot_val: dict[int, int] = {}
    used_cols: set[int] = set()
    r0 = 0
    while r0 < rows:
        best = None
        for r in range(r0, rows):
            for c in range(cols):
                if c in used_cols:
                    continue
                v = val(m[r][c])
                if v < nprec and (best is None or v < best[0]):
                    best = (v, r, c)
        if best is None:
            break
        v, r, c = best
        m[r0], m[r] = m[r], m[r0]
        u = m[r0][c] // p**v
        uinv = inv_mod(u % q, q)
        for cc in range(cols):
            m[r0][cc] = (m[r0][cc] * uinv) % q
        # m[r0][c] is now p^v; clear the rest of row r0 (column ops, tracked)
        for cc in range(cols):
            if cc != c and m[r0][cc]:
                f = m[r0][cc] // p**v
                colop_sub(c, cc, f)
        # clear the rest of column c (row ops, untracked)
        for r in range(rows):
            if r != r0 and m[r][c]:
                f = m[r][c] // p**v
                for cc in range(cols):
                    m[r][cc] = (m[r][cc] - f * m[r0][cc]) % q
        pivot_val[c] = v
        used_cols.add(c)
        r0 += 1

    out: list[tuple[list[int], int | None]] = []
    for c in range(cols):
        if c not in pivot_val:
            out.append(([comp[r][c] for r in range(cols)], None))
        elif pivot_val[c] > 0:
            scale = p ** (nprec - pivot_val[c])
            vec = [(comp[r][c] * scale) % q for r in range(cols)]
            out.append((vec, pivot_val[c]))
    return out


def echelon_mod_pn(
    rows: list[list[int]], p: int, nprec: int
) -> tuple[list[list[int]], list[tuple[int, int]]]:
    """Canonical echelon basis of the row span over Z/p^N.

    Row operations only. Returns (basis, pivots) where pivots is a list of
    (column, valuation) pairs aligned with the basis rows, in increasing
    column order. Each pivot entry is exactly p^v, rows below a pivot are
    zero in its column, and rows above are reduced mod p^v, so two inputs
    span the same submodule of (Z/p^N)^cols iff their outputs are equal.
    Zero rows are dropped.
    """
    q = p**nprec
    cols = len(rows[0]) if rows else 0
    work = [row2 for row in rows if any(row2 := [x % q for x in row])]
    basis: list[list[int]] = []
    pivots: list[tuple[int, int]] = []
    for c in range(cols):
        best = None
        for idx, row in enumerate(work):
            if row[c]:
                v = 0
                x = row[c]
                while x % p == 0:
                    x //= p
                    v += 1
                if best is None or v < best[0]:
                    best = (v, idx)
        if best is None:
            continue
        v, idx = best
        row = work.pop(idx)
        uinv = inv_mod((row[c] // p**v) % q, q)
        row = [(x * uinv) % q for x in row]
        keep = []
        for other in work:
            if other[c]:
                f = other[c] // p**v
                other = [(a - f * b) % q for a, b in zip(other, row)]
            if any(other):
                keep.append(other)
        work = keep
        for k, placed in enumerate(basis):
            f = placed[c] // p**v
            if f:
                basis[k] = [(a - f * b) % q for a, b in zip(placed, row)]
        basis.append(row)
        pivots.append((c, v))
    return basis, pivots


def express_over_echelon(
    target: list[int],
    basis: list[list[int]],
    pivots: list[tuple[int, int]],
    p: int,
    nprec: int,
) -> list[int] | None:
    """Coordinates of target over an echelon_mod_pn basis, or None when the
    target is outside the span mod p^N. Coordinates are exact mod p^(N-v)
    at a pivot of valuation v; with a pivot in every column they are the
    unique coordinates of a full-rank lattice."""
    q = p**nprec
    t = [x % q for x in target]
    coeffs = []
    for row, (c, v) in zip(basis, pivots):
        e = t[c]
        if e % p**v:
            return None
        f = e // p**v
        coeffs.append(f)
        if f:
            t = [(a - f * b) % q for a, b in zip(t, row)]
    if any(t):
        return None
    return coeffs


# ---------------------------------------------------------------------------
# radicals of F_ell-algebras

def algebra_radical_mod_p(
    sc: list[list[list[int]]], ell: int
) -> list[list[int]]:
    """Basis of the Jacobson radical of an associative F_ell-algebra.

    sc[i][j] is the coordinate vector of b_i * b_j over the basis b. Uses
    the characteristic-p descending chain J_0 = A,

        J_{k+1} = {x in J_k : c_{ell^k}(x y) = 0 for all y in J_k},

    where c_m(z) is the coefficient of lambda^(dim - m) in the
    characteristic polynomial of left multiplication by z. Each c_{ell^k}
    is additive on the previous step, the chain reaches the radical once
    ell^k exceeds dim, and level 0 is the ordinary trace form. Power-sum
    functionals are useless here (over F_ell the trace of a matrix power
    M^(ell^k) is a power of the trace), which is why the elementary
    symmetric coefficients are taken instead.

    A nilpotent two-sided ideal is always contained in the radical while
    the chain members always contain it, so the loop exits as soon as the
    candidate verifies as one; the final result is certified the same way
    before being returned.
    """
    n = len(sc)
    units = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def mul(u: list[int], v: list[int]) -> list[int]:
        out = [0] * n
        for i, ui in enumerate(u):
            if not ui:
                continue
            sci = sc[i]
            for j, vj in enumerate(v):
                if not vj:
                    continue
                f = ui * vj
                row = sci[j]
                for k in range(n):
                    if row[k]:
                        out[k] += f * row[k]
        return [x % ell for x in out]

    def left_mat(z: list[int]) -> list[list[int]]:
        colsv = [mul(z, e) for e in units]
        return [[colsv[j][k] for j in range(n)] for k in range(n)]

    def span(vectors: list[list[int]]) -> tuple[list[list[int]], list[int]]:
        red, piv = rref(vectors, ell)
        return red[: len(piv)], piv

    def outside(w: list[int], red: list[list[int]], piv: list[int]) -> bool:
        for row, c in zip(red, piv):
            f = w[c]
            if f:
                w = [(a - f * b) % ell for a, b in zip(w, row)]
        return any(w)

    def is_nilpotent_ideal(j_basis: list[list[int]]) -> bool:
        if not j_basis:
            return True
        jb, piv = span(j_basis)
        for v in jb:
            for e in units:
                if outside(mul(e, v), jb, piv) or outside(mul(v, e), jb, piv):
                    return False
        lmats = [left_mat(v) for v in jb]
        flag = [row[:] for row in units]
        for _ in range(n + 1):
            if not flag:
                return True
            nxt, _ = span([mat_vec(lm, v, ell) for lm in lmats for v in flag])
            if len(nxt) >= len(flag):
                return False
            flag = nxt
        return False

    trace_vec = [sum(sc[i][j][j] for j in range(n)) % ell for i in range(n)]
    current = [row[:] for row in units]
    power = 1
    checked_dim = -1
    while power <= n and current:
        if len(current) < n and len(current) != checked_dim:
            checked_dim = len(current)
            if is_nilpotent_ideal(current):
                return current
        rows = []
        if power == 1:
            for y in current:
                rows.append(
                    [
                        sum(t * z for t, z in zip(trace_vec, mul(x, y))) % ell
                        for x in current
                    ]
                )
        else:
            for y in current:
                row = []
                for x in current:
                    cp = charpoly(left_mat(mul(x, y)), ell)
                    row.append(cp[n - power])
                rows.append(row)
        coeffs = kernel(rows, ell)
        current = [
            [sum(c * v[k] for c, v in zip(co, current)) % ell for k in range(n)]
            for co in coeffs
        ]
        power *= ell
    if not is_nilpotent_ideal(current):
        raise ArithmeticError(
            "radical chain did not certify (is the algebra associative?)"
        )
    return current
