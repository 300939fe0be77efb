"""Shared builders for linking-form tests: isomorphism-class representatives
and presentation automorphisms."""

from fractions import Fraction

from wittkit.finite import FiniteLinkingForm


def nonsquare_unit(p: int) -> int:
    for u in range(2, p):
        if pow(u, (p - 1) // 2, p) == p - 1:
            return u
    raise ValueError(f"no nonresidue mod {p}")


def _partitions(total: int, cap: int):
    if total == 0:
        yield ()
        return
    for first in range(min(total, cap), 0, -1):
        for rest in _partitions(total - first, first):
            yield (first,) + rest


def diagonal_form(p: int, levels, units, epsilon: int = 1) -> FiniteLinkingForm:
    gram = [
        [Fraction(units[i], p ** levels[i]) if i == j else Fraction(0)
         for j in range(len(levels))]
        for i in range(len(levels))
    ]
    return FiniteLinkingForm(p, levels, gram, epsilon)


def enumerate_symmetric_forms(p: int, max_total: int):
    """One diagonal representative per isomorphism class of nonsingular
    symmetric linking form on groups of order up to p^max_total: at odd p a
    homogeneous level piece is determined by its rank and determinant square
    class, so each occupied level carries units (1, ..., 1, u), u in
    {1, nonsquare}."""
    ns = nonsquare_unit(p)
    for total in range(1, max_total + 1):
        for shape in _partitions(total, total):
            levels = sorted(shape, reverse=True)
            distinct = sorted(set(shape), reverse=True)
            for mask in range(2 ** len(distinct)):
                units = [1] * len(levels)
                for bit, l in enumerate(distinct):
                    if mask >> bit & 1:
                        units[max(i for i, li in enumerate(levels) if li == l)] = ns
                yield diagonal_form(p, levels, units)


def apply_generator_change(form: FiniteLinkingForm, cols) -> FiniteLinkingForm:
    """Re-present the form on generators g_i' = sum_a cols[a][i] g_a.  The
    caller is responsible for cols being an automorphism preserving the
    order profile; validation on construction catches anything else."""
    n = form.rank
    gram = [
        [
            sum(
                cols[a][i] * cols[b][j] * form.gram[a][b]
                for a in range(n)
                for b in range(n)
            ) % 1
            for j in range(n)
        ]
        for i in range(n)
    ]
    return FiniteLinkingForm(form.prime, form.orders, gram, form.epsilon)


def random_automorphism(rng, form: FiniteLinkingForm, moves: int = 6):
    """Product of unit scalings and order-respecting shears, as a column
    matrix over the integers."""
    n = form.rank
    p = form.prime
    cols = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def compose_shear(i, j, m):
        # g_i' = g_i + m g_j
        for a in range(n):
            cols[a][i] += m * cols[a][j]

    def compose_scale(i, u):
        for a in range(n):
            cols[a][i] *= u

    for _ in range(moves):
        if n >= 2 and rng.random() < 0.7:
            i, j = rng.sample(range(n), 2)
            gap = max(0, form.orders[j] - form.orders[i])
            m = rng.randrange(1, p**form.orders[j]) * p**gap
            compose_shear(i, j, m)
        else:
            i = rng.randrange(n)
            u = rng.randrange(1, p**form.orders[i])
            while u % p == 0:
                u = rng.randrange(1, p**form.orders[i])
            compose_scale(i, u)
    return cols
