"""Brute-force oracles on finite linking forms.

Lagrangian search enumerates isotropic subgroups only: a subgroup extension
stays isotropic exactly when the new generator self-annihilates and pairs to
zero with the existing generators, so the search tree prunes early.
Deduplication keys subgroups by the Hermite normal form of the lattice
generated by the generator tuple together with the relation lattice; that
key is also the deterministic witness order.  Any prime is allowed here,
including 2.
"""

from __future__ import annotations

from collections import deque
from itertools import product
from math import prod

from wittkit.errors import SearchSpaceTooLarge
from wittkit.finite import FiniteLinkingForm

DEFAULT_SEARCH_BOUND = 10**4

MODES = ("any", "split", "complementary_pair")


# ---------------------------------------------------------------------------
# integer row Hermite normal form (unique echelon form)
# ---------------------------------------------------------------------------

def _hnf_rows(rows: list[list[int]], ncols: int) -> list[list[int]]:
    mat = [list(r) for r in rows]
    m = len(mat)
    r = 0
    for c in range(ncols):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if mat[i][c]]
            if not nz:
                break
            i0 = min(nz, key=lambda i: abs(mat[i][c]))
            if i0 != r:
                mat[r], mat[i0] = mat[i0], mat[r]
            piv = mat[r][c]
            clean = True
            for i in range(r + 1, m):
                if mat[i][c]:
                    q = mat[i][c] // piv
                    mat[i] = [a - q * b for a, b in zip(mat[i], mat[r])]
                    if mat[i][c]:
                        clean = False
            if clean:
                break
        if r < m and mat[r][c]:
            if mat[r][c] < 0:
                mat[r] = [-a for a in mat[r]]
            piv = mat[r][c]
            for i in range(r):
                q = mat[i][c] // piv
                if q:
                    mat[i] = [a - q * b for a, b in zip(mat[i], mat[r])]
            r += 1
    return mat[:r]


def _lattice_key(gens, mixed_orders) -> tuple:
    """HNF basis of the preimage lattice of the subgroup generated by `gens`
    inside (+) Z/n_i; a canonical subgroup identifier."""
    n = len(mixed_orders)
    rows = [list(g) for g in gens]
    rows += [[mixed_orders[i] if j == i else 0 for j in range(n)]
             for i in range(n)]
    return tuple(tuple(r) for r in _hnf_rows(rows, n))


def _witness_matrix(key: tuple, mixed_orders) -> list[list[int]]:
    """Generator matrix (generators as columns) from an HNF lattice key,
    with relation-only columns dropped."""
    n = len(mixed_orders)
    cols = []
    for basis_row in key:
        col = [basis_row[i] % mixed_orders[i] for i in range(n)]
        if any(col):
            cols.append(col)
    return [[col[i] for col in cols] for i in range(n)]


# ---------------------------------------------------------------------------
# isotropic subgroup enumeration
# ---------------------------------------------------------------------------

class _SearchContext:
    def __init__(self, form: FiniteLinkingForm, bound: int):
        self.form = form
        self.orders = list(form.mixed_orders())
        self.size = prod(self.orders)
        if self.size > bound:
            raise SearchSpaceTooLarge(
                f"|T| = {self.size} exceeds the search bound {bound}")
        p = form.prime
        big = max(form.orders) if form.orders else 1
        self.q = p**big
        self.pairing = [
            [int(form.gram[i][j] * self.q) % self.q for j in range(form.rank)]
            for i in range(form.rank)
        ]

    def pair(self, x, y) -> int:
        n = self.pairing
        return sum(
            x[i] * n[i][j] * y[j] for i in range(len(x)) for j in range(len(y))
        ) % self.q

    def elements(self):
        return product(*[range(o) for o in self.orders])

    def add(self, x, y):
        return tuple((a + b) % o for a, b, o in zip(x, y, self.orders))

    def closure(self, base: frozenset, x) -> frozenset:
        ord_x = max(
            (o // _gcd(xi, o) for xi, o in zip(x, self.orders)), default=1)
        out = set()
        for h in base:
            step = h
            for _ in range(ord_x):
                out.add(step)
                step = self.add(step, x)
        return frozenset(out)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _isotropic_subgroups(ctx: _SearchContext):
    """Every self-annihilating subgroup, as (hnf_key, element_set, gens)."""
    n = ctx.form.rank
    zero = (0,) * n
    self_ann = [x for x in ctx.elements() if ctx.pair(x, x) == 0]
    start_key = _lattice_key([], ctx.orders)
    seen = {start_key}
    queue = deque([(start_key, frozenset({zero}), ())])
    found = []
    while queue:
        key, elems, gens = queue.popleft()
        found.append((key, elems, gens))
        for x in self_ann:
            if x in elems:
                continue
            if any(ctx.pair(x, g) for g in gens):
                continue
            new_key = _lattice_key(list(gens) + [x], ctx.orders)
            if new_key in seen:
                continue
            seen.add(new_key)
            queue.append((new_key, ctx.closure(elems, x), gens + (x,)))
    return found


def _is_pure(elems: frozenset, ctx: _SearchContext) -> bool:
    """Pure subgroups (H intersect p^k T = p^k H for all k) are exactly the
    direct summands of a finite abelian p-group."""
    p = ctx.form.prime
    top = max(ctx.form.orders) if ctx.form.orders else 1
    for k in range(1, top):
        pk = p**k
        in_pkt = {
            x for x in elems
            if all(xi % min(pk, o) == 0 for xi, o in zip(x, ctx.orders))
        }
        pk_h = {
            tuple((pk * xi) % o for xi, o in zip(x, ctx.orders)) for x in elems
        }
        if in_pkt != pk_h:
            return False
    return True


# ---------------------------------------------------------------------------
# public oracles
# ---------------------------------------------------------------------------

def brute_force_lagrangians(
    form: FiniteLinkingForm,
    mode: str = "any",
    bound: int = DEFAULT_SEARCH_BOUND,
) -> dict:
    """Exhaustive lagrangian search.

    mode "any": a subgroup with lambda|_L = 0 and |L|^2 = |T| (equivalently
    L = L-perp, since the form is nonsingular).
    mode "split": additionally a direct summand of T.
    mode "complementary_pair": two lagrangians meeting trivially, so their
    internal direct sum is all of T.

    Returns {"mode", "witnesses", "exhausted"}; witnesses hold generator
    matrices (generators as columns), chosen minimal in HNF order, and are
    empty when the exhaustive search certifies absence.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    ctx = _SearchContext(form, bound)
    lagrangians = [
        (key, elems)
        for key, elems, _ in _isotropic_subgroups(ctx)
        if len(elems) ** 2 == ctx.size
    ]
    lagrangians.sort(key=lambda t: t[0])

    witnesses = []
    if mode == "any":
        if lagrangians:
            witnesses.append(_witness_matrix(lagrangians[0][0], ctx.orders))
    elif mode == "split":
        for key, elems in lagrangians:
            if _is_pure(elems, ctx):
                witnesses.append(_witness_matrix(key, ctx.orders))
                break
    else:
        zero = (0,) * form.rank
        done = False
        for key_a, elems_a in lagrangians:
            if done:
                break
            for key_b, elems_b in lagrangians:
                if len(elems_a) * len(elems_b) != ctx.size:
                    continue
                if elems_a & elems_b != {zero}:
                    continue
                witnesses.append(_witness_matrix(key_a, ctx.orders))
                witnesses.append(_witness_matrix(key_b, ctx.orders))
                done = True
                break
    return {"mode": mode, "witnesses": witnesses, "exhausted": True}


def brute_force_isomorphism(
    f: FiniteLinkingForm,
    g: FiniteLinkingForm,
    bound: int = DEFAULT_SEARCH_BOUND,
):
    """Backtracking search for a pairing-preserving group isomorphism,
    returned as an integer matrix C (columns = images of f's generators)
    with C^T gram_g C = gram_f in Q/Z, or None.
    """
    if (f.prime, f.epsilon) != (g.prime, g.epsilon):
        return None
    if sorted(f.orders) != sorted(g.orders):
        return None
    ctx = _SearchContext(g, bound)
    n = f.rank
    q = ctx.q
    target = [
        [int(f.gram[i][j] * q) % q for j in range(n)] for i in range(n)
    ]
    elements = list(ctx.elements())
    candidates = []
    for i in range(n):
        order_i = f.mixed_orders()[i]
        cand = [
            x for x in elements
            if all((order_i * xj) % o == 0 for xj, o in zip(x, ctx.orders))
            and ctx.pair(x, x) == target[i][i]
        ]
        candidates.append(cand)

    full_key = _lattice_key(
        [[1 if j == i else 0 for j in range(n)] for i in range(n)],
        ctx.orders,
    )
    chosen: list = []

    def extend(i: int):
        if i == n:
            return _lattice_key(chosen, ctx.orders) == full_key
        for x in candidates[i]:
            if all(
                ctx.pair(x, chosen[k]) == target[i][k] for k in range(i)
            ):
                chosen.append(x)
                if extend(i + 1):
                    return True
                chosen.pop()
        return False

    if not extend(0):
        return None
    return [[chosen[j][i] for j in range(n)] for i in range(n)]
