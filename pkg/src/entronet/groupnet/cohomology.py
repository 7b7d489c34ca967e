"""Cocycles on finite groups, central extensions, and H^1/H^2 computation.

Cochains are total value tables.  The solver sets up the cocycle and
coboundary conditions as integer linear systems modulo the module's
exponents and reduces the quotient with integer Smith normal form; small
cases can be cross-checked against exhaustive enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .groups import GModule, Group, UElt


class SizeBoundExceeded(ValueError):
    pass


GROUP_SIZE_BOUND = 64


@dataclass(frozen=True)
class Cocycle1:
    """Value table of a map G -> U; the cocycle law is checked on demand."""

    module: GModule
    values: tuple[UElt, ...]

    def __post_init__(self):
        if len(self.values) != self.module.group.order:
            raise ValueError("need one value per group element")

    def __call__(self, g: int) -> UElt:
        return self.values[g]


@dataclass(frozen=True)
class Cocycle2:
    """Value table of a map G x G -> U."""

    module: GModule
    values: tuple[tuple[UElt, ...], ...]

    def __post_init__(self):
        n = self.module.group.order
        if len(self.values) != n or any(len(row) != n for row in self.values):
            raise ValueError("need an n x n value table")

    def __call__(self, g: int, h: int) -> UElt:
        return self.values[g][h]

    def table(self) -> tuple[tuple[UElt, ...], ...]:
        return self.values


def verify_cocycle1(f: Cocycle1) -> bool:
    U, G = f.module, f.module.group
    return all(
        f(G.mul(s, t)) == U.add(f(s), U.act(s, f(t)))
        for s in G.elements()
        for t in G.elements()
    )


def verify_cocycle2(c: Cocycle2) -> bool:
    U, G = c.module, c.module.group
    for s, t, g in product(G.elements(), repeat=3):
        lhs = U.act(s, c(t, g))
        rhs = U.sub(U.add(c(s, t), c(G.mul(s, t), g)), c(s, G.mul(t, g)))
        if lhs != rhs:
            return False
    return True


def is_normalized(c: Cocycle2) -> bool:
    G = c.module.group
    zero = c.module.zero()
    return all(c(g, 0) == zero and c(0, g) == zero for g in G.elements())


def coboundary1(module: GModule, u: UElt) -> Cocycle1:
    """The principal 1-cocycle g |-> g(u) - u."""
    G = module.group
    u = module.reduce(u)
    return Cocycle1(module, tuple(module.sub(module.act(g, u), u) for g in G.elements()))


def coboundary2(module: GModule, b) -> Cocycle2:
    """d(b)(s,t) = b(s) + s(b(t)) - b(st) for a normalized 1-cochain b."""
    G = module.group
    b = [module.reduce(x) for x in b]
    if len(b) != G.order:
        raise ValueError("need one cochain value per group element")
    if any(b[0]):
        raise ValueError("cochain must be normalized: b(1) = 0")
    rows = []
    for s in G.elements():
        row = []
        for t in G.elements():
            val = module.sub(module.add(b[s], module.act(s, b[t])), b[G.mul(s, t)])
            row.append(val)
        rows.append(tuple(row))
    return Cocycle2(module, tuple(rows))


def shift_by_coboundary(c: Cocycle2, b) -> Cocycle2:
    """c'(s,t) = b(s) + s(b(t)) - b(st) + c(s,t); same cohomology class."""
    db = coboundary2(c.module, b)
    U, G = c.module, c.module.group
    rows = tuple(
        tuple(U.add(db(s, t), c(s, t)) for t in G.elements()) for s in G.elements()
    )
    return Cocycle2(U, rows)


def add_cocycles(c1: Cocycle2, c2: Cocycle2) -> Cocycle2:
    U, G = c1.module, c1.module.group
    rows = tuple(
        tuple(U.add(c1(s, t), c2(s, t)) for t in G.elements()) for s in G.elements()
    )
    return Cocycle2(U, rows)


def central_extension(c: Cocycle2) -> Group:
    """The extension group on U x G with multiplication twisted by c."""
    if not is_normalized(c):
        raise ValueError("extension needs a normalized cocycle")
    if not verify_cocycle2(c):
        raise ValueError("not a 2-cocycle")
    U, G = c.module, c.module.group
    u_elems = list(U.elements())
    u_index = {u: i for i, u in enumerate(u_elems)}
    n, m = G.order, len(u_elems)
    size = n * m
    table = [[0] * size for _ in range(size)]
    for iu, u1 in enumerate(u_elems):
        for s1 in G.elements():
            row = iu * n + s1
            for ju, u2 in enumerate(u_elems):
                for s2 in G.elements():
                    u = U.add(U.add(u1, U.act(s1, u2)), c(s1, s2))
                    table[row][ju * n + s2] = u_index[u] * n + G.mul(s1, s2)
    return Group(table)


# ---------------------------------------------------------------------------
# Integer Smith normal form with unimodular transforms.


def _identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def smith_normal_form(mat):
    """Return (D, S, T, Sinv, Tinv) with S*A*T = D diagonal, S,T unimodular."""
    A = [list(map(int, row)) for row in mat]
    m = len(A)
    n = len(A[0]) if m else 0
    S, Sinv = _identity(m), _identity(m)
    T, Tinv = _identity(n), _identity(n)

    def row_add(i, j, q):  # R_i += q R_j
        A[i] = [a + q * b for a, b in zip(A[i], A[j])]
        S[i] = [a + q * b for a, b in zip(S[i], S[j])]
        for r in range(m):  # Sinv: C_j -= q C_i
            Sinv[r][j] -= q * Sinv[r][i]

    def col_add(j, i, q):  # C_j += q C_i
        for r in range(m):
            A[r][j] += q * A[r][i]
        for r in range(n):
            T[r][j] += q * T[r][i]
        Tinv[i] = [a - q * b for a, b in zip(Tinv[i], Tinv[j])]

    def row_swap(i, j):
        A[i], A[j] = A[j], A[i]
        S[i], S[j] = S[j], S[i]
        for r in range(m):
            Sinv[r][i], Sinv[r][j] = Sinv[r][j], Sinv[r][i]

    def col_swap(i, j):
        for r in range(m):
            A[r][i], A[r][j] = A[r][j], A[r][i]
        for r in range(n):
            T[r][i], T[r][j] = T[r][j], T[r][i]
        Tinv[i], Tinv[j] = Tinv[j], Tinv[i]

    def row_neg(i):
        A[i] = [-a for a in A[i]]
        S[i] = [-a for a in S[i]]
        for r in range(m):
            Sinv[r][i] = -Sinv[r][i]

    k = 0
    while k < min(m, n):
        # find a pivot
        piv = None
        best = None
        for i in range(k, m):
            for j in range(k, n):
                if A[i][j] != 0 and (best is None or abs(A[i][j]) < best):
                    piv, best = (i, j), abs(A[i][j])
        if piv is None:
            break
        row_swap(k, piv[0])
        col_swap(k, piv[1])
        while True:
            if A[k][k] < 0:
                row_neg(k)
            done = True
            for i in range(k + 1, m):
                if A[i][k] % A[k][k] != 0:
                    row_add(i, k, -(A[i][k] // A[k][k]))
                    row_swap(i, k)
                    done = False
                    break
            if not done:
                continue
            for j in range(k + 1, n):
                if A[k][j] % A[k][k] != 0:
                    col_add(j, k, -(A[k][j] // A[k][k]))
                    col_swap(j, k)
                    done = False
                    break
            if not done:
                continue
            for i in range(k + 1, m):
                if A[i][k]:
                    row_add(i, k, -(A[i][k] // A[k][k]))
            for j in range(k + 1, n):
                if A[k][j]:
                    col_add(j, k, -(A[k][j] // A[k][k]))
            # divisibility condition d_k | everything below-right
            bad = None
            for i in range(k + 1, m):
                for j in range(k + 1, n):
                    if A[i][j] % A[k][k] != 0:
                        bad = (i, j)
                        break
                if bad:
                    break
            if bad is None:
                break
            row_add(k, bad[0], 1)
        k += 1
    return A, S, T, Sinv, Tinv


def integer_kernel(mat) -> list[list[int]]:
    """Basis (as column vectors) of the integer kernel of mat."""
    m = len(mat)
    n = len(mat[0]) if m else 0
    if m == 0:
        return [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    D, _, T, _, _ = smith_normal_form(mat)
    rank = sum(1 for i in range(min(m, n)) if D[i][i] != 0)
    return [[T[r][j] for r in range(n)] for j in range(rank, n)]


def solve_columns(basis_cols: list[list[int]], targets: list[list[int]]) -> list[list[int]]:
    """Solve B z = w over the integers for each target w (B square, full rank)."""
    N = len(basis_cols[0])
    mat = [[basis_cols[j][i] for j in range(len(basis_cols))] for i in range(N)]
    D, S, T, _, _ = smith_normal_form(mat)
    out = []
    for w in targets:
        sw = [sum(S[i][r] * w[r] for r in range(N)) for i in range(N)]
        y = []
        for i in range(N):
            d = D[i][i] if i < len(D[0]) else 0
            if d == 0:
                if sw[i] != 0:
                    raise ArithmeticError("target outside the lattice")
                y.append(0)
            else:
                if sw[i] % d != 0:
                    raise ArithmeticError("target outside the lattice")
                y.append(sw[i] // d)
        z = [sum(T[i][j] * y[j] for j in range(len(y))) for i in range(N)]
        out.append(z)
    return out


# ---------------------------------------------------------------------------
# The solver.


def _pair_vars(n: int, rank: int):
    pairs = [(g, h) for g in range(1, n) for h in range(1, n)]
    index = {p: i for i, p in enumerate(pairs)}

    def var(pair, coord):
        return index[pair] * rank + coord

    return pairs, index, var


def _cocycle_system(U: GModule):
    """Rows (as dicts) and row moduli of the normalized 2-cocycle conditions."""
    G = U.group
    n, r = G.order, U.rank
    pairs, _, var = _pair_vars(n, r)
    rows: list[dict[int, int]] = []
    moduli: list[int] = []
    for s, t, g in product(range(1, n), repeat=3):
        st, tg = G.mul(s, t), G.mul(t, g)
        mat = U.action_matrix(s)
        for coord in range(r):
            row: dict[int, int] = {}

            def bump(pair, coefs):
                if pair[0] == 0 or pair[1] == 0:
                    return
                for jc, coef in coefs:
                    if coef:
                        k = var(pair, jc)
                        row[k] = row.get(k, 0) + coef

            bump((t, g), [(j, mat[coord][j]) for j in range(r)])
            bump((s, t), [(coord, -1)])
            bump((st, g), [(coord, -1)])
            bump((s, tg), [(coord, 1)])
            if row:
                rows.append(row)
                moduli.append(U.moduli[coord])
    return pairs, rows, moduli


def _coboundary_columns(U: GModule):
    """Columns of the coboundary map from normalized 1-cochains, in pair coords."""
    G = U.group
    n, r = G.order, U.rank
    pairs, _, var = _pair_vars(n, r)
    N = len(pairs) * r
    cols = []
    for x in range(1, n):
        for coord in range(r):
            col = [0] * N
            # b supported at x with value e_coord; d(b)(s,t) = b(s)+s b(t)-b(st)
            for s, t in pairs:
                st = G.mul(s, t)
                acc = [0] * r
                if s == x:
                    acc[coord] += 1
                if t == x:
                    mat = U.action_matrix(s)
                    for i in range(r):
                        acc[i] += mat[i][coord]
                if st == x:
                    acc[coord] -= 1
                for i in range(r):
                    if acc[i]:
                        col[var((s, t), i)] += acc[i]
            cols.append(col)
    return cols


def _cochain1_system(U: GModule):
    G = U.group
    n, r = G.order, U.rank
    elems = list(range(1, n))
    index = {g: i for i, g in enumerate(elems)}

    def var(g, coord):
        return index[g] * r + coord

    rows, moduli = [], []
    for s, t in product(elems, repeat=2):
        st = G.mul(s, t)
        mat = U.action_matrix(s)
        for coord in range(r):
            row: dict[int, int] = {}
            if st != 0:
                row[var(st, coord)] = row.get(var(st, coord), 0) + 1
            row[var(s, coord)] = row.get(var(s, coord), 0) - 1
            for j in range(r):
                if mat[coord][j]:
                    k = var(t, j)
                    row[k] = row.get(k, 0) - mat[coord][j]
            if row:
                rows.append(row)
                moduli.append(U.moduli[coord])
    cols = []
    for jc in range(r):
        col = [0] * (len(elems) * r)
        e = tuple(1 if i == jc else 0 for i in range(r))
        for g in elems:
            val = U.sub(U.act(g, e), e)
            for i in range(r):
                col[var(g, i)] += val[i]
        cols.append(col)
    return elems, rows, moduli, cols


def _solution_lattice(rows, row_moduli, N):
    """Basis columns for {x : rows . x == 0 mod row moduli} inside Z^N."""
    R = len(rows)
    mat = [[0] * (N + R) for _ in range(R)]
    for i, row in enumerate(rows):
        for j, coef in row.items():
            mat[i][j] = coef
        mat[i][N + i] = row_moduli[i]
    kernel = integer_kernel(mat)
    return [col[:N] for col in kernel]


def _lattice_basis(cols, N):
    """A square basis of the full-rank lattice spanned by the given columns."""
    mat = [[col[i] for col in cols] for i in range(N)]
    D, _, _, Sinv, _ = smith_normal_form(mat)
    basis = []
    for i in range(N):
        d = D[i][i] if i < min(len(D), len(D[0]) if D else 0) else 0
        if d == 0:
            raise ArithmeticError("lattice is not full rank")
        basis.append([Sinv[r][i] * d for r in range(N)])
    return basis


def _quotient(lattice_basis_cols, sub_cols, N):
    """Invariant factors and generator columns of (lattice / sub-lattice)."""
    zs = solve_columns(lattice_basis_cols, sub_cols)
    k = len(zs)
    mat = [[zs[j][i] for j in range(k)] for i in range(N)]
    D, _, _, Sinv, _ = smith_normal_form(mat)
    factors, gens = [], []
    for i in range(N):
        d = abs(D[i][i]) if i < min(N, k) else 0
        if d == 0:
            raise ArithmeticError("quotient is not finite")
        if d == 1:
            continue
        factors.append(d)
        gen_z = [Sinv[r][i] for r in range(N)]
        gen_x = [
            sum(lattice_basis_cols[j][r] * gen_z[j] for j in range(N)) for r in range(N)
        ]
        gens.append(gen_x)
    return factors, gens


def _vector_to_cocycle2(U: GModule, pairs, vec) -> Cocycle2:
    G = U.group
    n, r = G.order, U.rank
    table = [[U.zero() for _ in range(n)] for _ in range(n)]
    for idx, (g, h) in enumerate(pairs):
        table[g][h] = U.reduce(tuple(vec[idx * r + c] for c in range(r)))
    return Cocycle2(U, tuple(tuple(row) for row in table))


def _vector_to_cocycle1(U: GModule, elems, vec) -> Cocycle1:
    r = U.rank
    values = [U.zero()] * U.group.order
    for idx, g in enumerate(elems):
        values[g] = U.reduce(tuple(vec[idx * r + c] for c in range(r)))
    return Cocycle1(U, tuple(values))


def h_solver(G: Group, U: GModule, degree: int):
    """Invariant factors and representative cocycles of H^degree(G, U).

    Works with normalized cochains; the group order is capped at 64.
    Returns (factors, representatives); factors exclude trivial 1s.
    """
    if U.group is not G:
        raise ValueError("module must be over the given group")
    if G.order > GROUP_SIZE_BOUND:
        raise SizeBoundExceeded(f"group order {G.order} exceeds bound {GROUP_SIZE_BOUND}")
    if degree == 2:
        pairs, rows, row_moduli, = _cocycle_system(U)
        N = len(pairs) * U.rank
        cob_cols = _coboundary_columns(U)
        to_cocycle = lambda vec: _vector_to_cocycle2(U, pairs, vec)
    elif degree == 1:
        elems, rows, row_moduli, cob_cols = _cochain1_system(U)
        N = len(elems) * U.rank
        to_cocycle = lambda vec: _vector_to_cocycle1(U, elems, vec)
    else:
        raise ValueError("degree must be 1 or 2")
    if N == 0:
        return [], []
    var_moduli_cols = [
        [U.moduli[i % U.rank] if r == i else 0 for r in range(N)] for i in range(N)
    ]
    lattice = _solution_lattice(rows, row_moduli, N)
    basis = _lattice_basis(lattice, N)
    sub = cob_cols + var_moduli_cols
    factors, gen_vecs = _quotient(basis, sub, N)
    reps = [to_cocycle(vec) for vec in gen_vecs]
    if degree == 2:
        assert all(verify_cocycle2(rep) for rep in reps)
    else:
        assert all(verify_cocycle1(rep) for rep in reps)
    return factors, reps


def is_coboundary2(c: Cocycle2) -> bool:
    """Whether c is d(b) for some normalized 1-cochain b (integer solve)."""
    U = c.module
    G = U.group
    n, r = G.order, U.rank
    pairs, _, var = _pair_vars(n, r)
    N = len(pairs) * r
    cols = _coboundary_columns(U)
    cols = cols + [[U.moduli[i % r] if row == i else 0 for row in range(N)] for i in range(N)]
    target = [0] * N
    for idx, (g, h) in enumerate(pairs):
        val = c(g, h)
        for coord in range(r):
            target[idx * r + coord] = val[coord]
    mat = [[col[i] for col in cols] for i in range(N)]
    D, S, _, _, _ = smith_normal_form(mat)
    k = len(cols)
    sw = [sum(S[i][rr] * target[rr] for rr in range(N)) for i in range(N)]
    for i in range(N):
        d = D[i][i] if i < min(N, k) else 0
        if d == 0:
            if sw[i] != 0:
                return False
        elif sw[i] % d != 0:
            return False
    return True


def h_exhaustive(G: Group, U: GModule, degree: int = 2):
    """Brute-force H^degree for small cases: (order, element-order multiset)."""
    n, r = G.order, U.rank
    if degree != 2:
        raise ValueError("exhaustive check implemented for degree 2 only")
    pairs = [(g, h) for g in range(1, n) for h in range(1, n)]
    space = U.size() ** len(pairs)
    if space > 2**20:
        raise SizeBoundExceeded(f"search space {space} exceeds 2^20")
    u_elems = list(U.elements())

    def tables():
        for combo in product(u_elems, repeat=len(pairs)):
            tab = [[U.zero()] * n for _ in range(n)]
            for (g, h), val in zip(pairs, combo):
                tab[g][h] = val
            yield Cocycle2(U, tuple(tuple(row) for row in tab))

    cocycles = [c for c in tables() if verify_cocycle2(c)]
    cob = set()
    for combo in product(u_elems, repeat=n - 1):
        b = [U.zero()] + list(combo)
        cob.add(coboundary2(U, b).table())
    order = len(cocycles) // len(cob)

    # one representative per coset; class order = least k with k*c a coboundary
    orders = []
    seen: set = set()
    for c in cocycles:
        key = min(
            tuple(
                tuple(tuple(U.add(c(g, h), db[g][h]) for h in range(n)) for g in range(n))
                for db in cob
            )
        )
        if key in seen:
            continue
        seen.add(key)
        k = 1
        acc = c
        while acc.table() not in cob:
            acc = add_cocycles(acc, c)
            k += 1
        orders.append(k)
    orders.sort()
    return order, tuple(orders)
