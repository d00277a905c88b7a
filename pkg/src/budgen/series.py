"""Arity-truncated formal power series on a colored operad.

Coefficients are exact scalars (Fraction by default; anything with ring
semantics works).  Every operation takes or propagates an arity bound N:
coefficients at arity <= N are exact and higher arities are absent.  The
star and inverse operations iterate to a fixpoint with a certified
iteration cap derived from the finitely-factorizing degree bound.
"""

from __future__ import annotations

from fractions import Fraction

from .core import BudgenError, BudOperad, DivergenceError, Operad, type_of
from .operads import AsOperad, degree_bound, finitely_factorizing_check

ZERO = Fraction(0)
ONE = Fraction(1)


class Series:
    """Sparse finite map from operad elements of arity <= bound to scalars."""

    __slots__ = ("operad", "bound", "coeffs")

    def __init__(self, operad: Operad, bound: int, coeffs=None):
        if bound < 1:
            raise BudgenError("arity bound must be >= 1")
        self.operad = operad
        self.bound = bound
        cleaned = {}
        for x, c in (coeffs or {}).items():
            if c == 0:
                continue
            if operad.arity(x) > bound:
                raise BudgenError("support element exceeds the arity bound")
            cleaned[x] = c
        self.coeffs = cleaned

    def coeff(self, x):
        return self.coeffs.get(x, ZERO)

    def support(self):
        return set(self.coeffs)

    def support_slice(self, n: int):
        return {x for x in self.coeffs if self.operad.arity(x) == n}

    def __eq__(self, other):
        return (isinstance(other, Series) and self.bound == other.bound
                and self.coeffs == other.coeffs)

    def __hash__(self):  # pragma: no cover
        raise TypeError("series are not hashable")

    def __repr__(self):
        return "Series(bound=%d, %d terms)" % (self.bound, len(self.coeffs))

    def dumps(self) -> str:
        """Sorted `coeff * element` lines, ordered by (arity, serialization)."""
        op = self.operad
        lines = []
        for x in sorted(self.coeffs, key=op.key):
            lines.append("%s * %s" % (self.coeffs[x], op.dumps(x)))
        return "\n".join(lines)


def characteristic(operad: Operad, elements, bound: int) -> Series:
    return Series(operad, bound, {x: ONE for x in elements})


def units_series(operad: Operad, bound: int) -> Series:
    return characteristic(operad, [operad.unit(c) for c in operad.colors], bound)


def add(f: Series, g: Series) -> Series:
    _check_compat(f, g)
    coeffs = dict(f.coeffs)
    for x, c in g.coeffs.items():
        coeffs[x] = coeffs.get(x, ZERO) + c
    return Series(f.operad, f.bound, coeffs)


def sub(f: Series, g: Series) -> Series:
    return add(f, scale(-1, g))


def scale(scalar, f: Series) -> Series:
    return Series(f.operad, f.bound, {x: scalar * c for x, c in f.coeffs.items()})


def scalar_product(f: Series, g: Series):
    total = ZERO
    for x, c in f.coeffs.items():
        d = g.coeffs.get(x)
        if d is not None:
            total = total + c * d
    return total


def _check_compat(f: Series, g: Series) -> None:
    if f.bound != g.bound:
        raise BudgenError("arity bound mismatch")
    if f.operad is not g.operad:
        raise BudgenError("operad mismatch")


def pre_lie(f: Series, g: Series, bound: int | None = None) -> Series:
    """One-position composition product: sums coeff(y)*coeff(z) onto y o_i z."""
    _check_compat(f, g)
    op = f.operad
    n_max = bound if bound is not None else f.bound
    coeffs: dict = {}
    for y, cy in f.coeffs.items():
        ny = op.arity(y)
        for z, cz in g.coeffs.items():
            if ny + op.arity(z) - 1 > n_max:
                continue
            out_z = op.out(z)
            ins_y = op.ins(y)
            w = cy * cz
            for i in range(1, ny + 1):
                if ins_y[i - 1] != out_z:
                    continue
                x = op.compose(y, i, z)
                coeffs[x] = coeffs.get(x, ZERO) + w
    return Series(op, n_max, coeffs)


def compose_prod(f: Series, g: Series, bound: int | None = None) -> Series:
    """All-positions composition product: substitutes one g-term per input."""
    _check_compat(f, g)
    op = f.operad
    n_max = bound if bound is not None else f.bound
    by_color: dict = {}
    for z, cz in g.coeffs.items():
        by_color.setdefault(op.out(z), []).append((op.arity(z), z, cz))
    for pool in by_color.values():
        pool.sort(key=lambda item: (item[0], op.dumps(item[1])))
    coeffs: dict = {}
    for y, cy in f.coeffs.items():
        ins = op.ins(y)
        pools = []
        empty = False
        for c in ins:
            pool = by_color.get(c)
            if not pool:
                empty = True
                break
            pools.append(pool)
        if empty:
            continue
        min_rest = [0] * (len(pools) + 1)
        for j in range(len(pools) - 1, -1, -1):
            min_rest[j] = min_rest[j + 1] + pools[j][0][0]
        picks: list = []

        def assign(j: int, acc_arity: int, weight) -> None:
            if j == len(pools):
                x = op.full_compose(y, picks)
                coeffs[x] = coeffs.get(x, ZERO) + weight
                return
            for az, z, cz in pools[j]:
                if acc_arity + az + min_rest[j + 1] > n_max:
                    break
                picks.append(z)
                assign(j + 1, acc_arity + az, weight * cz)
                picks.pop()

        assign(0, 0, cy)
    return Series(op, n_max, coeffs)


def _star(f: Series, product, what: str) -> Series:
    op = f.operad
    s1 = [x for x in f.coeffs if op.arity(x) == 1]
    ok, chain = finitely_factorizing_check(op, s1)
    if not ok:
        raise DivergenceError(
            "%s diverges: arity-1 support admits a color cycle" % what)
    cap = degree_bound(f.bound, chain) + 2
    # both products are linear in their left argument, so the fixpoint
    # x = u + product(x, f) is the sum of the iterated increments
    current = units_series(op, f.bound)
    delta = current
    for _ in range(cap):
        delta = product(delta, f)
        if not delta.coeffs:
            return current
        current = add(current, delta)
    raise DivergenceError("%s did not stabilize within %d iterations" % (what, cap))


def pre_lie_star(f: Series) -> Series:
    """Unique solution of x = u + x <- f, truncated at the bound of f."""
    return _star(f, pre_lie, "pre-Lie star")


def compose_star(f: Series) -> Series:
    """Unique solution of x = u + x (.) f, truncated at the bound of f."""
    return _star(f, compose_prod, "composition star")


def pre_lie_power(f: Series, ell: int) -> Series:
    result = units_series(f.operad, f.bound)
    for _ in range(ell):
        result = pre_lie(result, f)
    return result


def compose_power(f: Series, ell: int) -> Series:
    result = units_series(f.operad, f.bound)
    for _ in range(ell):
        result = compose_prod(result, f)
    return result


def compose_inverse(f: Series) -> Series:
    """Two-sided inverse of f for the composition product.

    Requires the support of f to be the units plus a set S whose arity-1
    part is finitely factorizing, with nonzero unit coefficients.  The
    coefficients are the alternating sums over S-syntax trees, computed
    as the fixpoint of V = u - W (.) V where W carries the unit-normalized
    weights of S.
    """
    op = f.operad
    unit_coeff = {}
    rest = {}
    units = {c: op.unit(c) for c in op.colors}
    unit_set = set(units.values())
    for x, c in f.coeffs.items():
        if x in unit_set:
            unit_coeff[op.out(x)] = c
        else:
            rest[x] = c
    for c in op.colors:
        if c not in unit_coeff:
            raise BudgenError("missing unit coefficient for color %r" % c)
    weights = {}
    for x, c in rest.items():
        denom = ONE
        for a in op.ins(x):
            denom = denom * unit_coeff[a]
        weights[x] = c / denom
    s1 = [x for x in weights if op.arity(x) == 1]
    ok, chain = finitely_factorizing_check(op, s1)
    if not ok:
        raise DivergenceError("composition inverse diverges: color cycle")
    current = _graded_tree_sum(op, weights, f.bound, chain, negate=True)
    return Series(op, f.bound,
                  {x: c / unit_coeff[op.out(x)] for x, c in current.coeffs.items()})


def _graded_tree_sum(op: Operad, weights: dict, bound: int, chain: int,
                     negate: bool) -> Series:
    """Solve V = u - W (.) V (or V = u + W (.) V) arity slice by arity
    slice.  A slice depends on itself only through arity-1 supports of W,
    which the finitely-factorizing chain bound makes nilpotent, so each
    slice stabilizes within chain + 2 inner rounds."""
    sign = -ONE if negate else ONE
    w_items = [(y, cy, op.ins(y), op.arity(y)) for y, cy in weights.items()]
    final_pools: dict = {}  # out color -> [(arity, elem, coeff)], arity-sorted
    v_coeffs: dict = {}
    for n in range(1, bound + 1):
        base = {op.unit(c): ONE for c in op.colors} if n == 1 else {}
        prev = None
        for _ in range(chain + 2):
            cur = dict(base)
            for y, cy, ins, ay in w_items:
                if ay > n:
                    continue
                _accumulate_slice(op, y, sign * cy, ins, final_pools,
                                  prev or {}, n, cur)
            if cur == prev:
                break
            prev = cur
        else:
            raise DivergenceError("composition inverse did not stabilize")
        for x, c in prev.items():
            if c == 0:
                continue
            v_coeffs[x] = c
            final_pools.setdefault(op.out(x), []).append((n, x, c))
    return Series(op, bound, v_coeffs)


def _accumulate_slice(op: Operad, y, weight, ins, pools: dict,
                      extra: dict, target: int, acc: dict) -> None:
    """Add weight * (y composed with every pick of total arity `target`)
    into acc; picks come from pools plus the arity-`target` entries of
    extra."""
    choice_lists = []
    for color in ins:
        pool = pools.get(color, [])
        pool = pool + [(target, x, c) for x, c in extra.items()
                       if op.out(x) == color and op.arity(x) == target]
        if not pool:
            return
        choice_lists.append(pool)
    min_rest = [0] * (len(choice_lists) + 1)
    max_rest = [0] * (len(choice_lists) + 1)
    for j in range(len(choice_lists) - 1, -1, -1):
        min_rest[j] = min_rest[j + 1] + choice_lists[j][0][0]
        max_rest[j] = max_rest[j + 1] + choice_lists[j][-1][0]
    picks: list = []

    def assign(j: int, acc_arity: int, w) -> None:
        if j == len(choice_lists):
            x = op.full_compose(y, picks)
            acc[x] = acc.get(x, ZERO) + w
            return
        for az, z, cz in choice_lists[j]:
            if acc_arity + az + min_rest[j + 1] > target:
                break
            if acc_arity + az + max_rest[j + 1] < target:
                continue
            picks.append(z)
            assign(j + 1, acc_arity + az, w * cz)
            picks.pop()

    assign(0, 0, weight)


# ---------------------------------------------------------------------------
# transports


def col_series(f: Series) -> tuple[Series, BudOperad]:
    """Pushforward along (out, arity, ins); returns the series and its carrier."""
    op = f.operad
    target = BudOperad(AsOperad(), op.colors)
    coeffs: dict = {}
    for x, c in f.coeffs.items():
        y = (op.out(x), op.arity(x), op.ins(x))
        coeffs[y] = coeffs.get(y, ZERO) + c
    return Series(target, f.bound, coeffs), target


def pru_series(f: Series) -> Series:
    """Pushforward along the color-forgetting projection of a bud operad."""
    op = f.operad
    if not isinstance(op, BudOperad):
        raise BudgenError("pruning needs a series over a bud operad")
    coeffs: dict = {}
    for x, c in f.coeffs.items():
        g = x[1]
        coeffs[g] = coeffs.get(g, ZERO) + c
    return Series(op.ground, f.bound, coeffs)


def colt_table(f: Series) -> dict:
    """Pushforward to (output color, input color type) indices."""
    op = f.operad
    table: dict = {}
    for x, c in f.coeffs.items():
        key = (op.out(x), type_of(op.ins(x), op.colors))
        table[key] = table.get(key, ZERO) + c
    return table


def zero_one_coefficients(f: Series) -> bool:
    return all(c == 0 or c == 1 for c in f.coeffs.values())


# ---------------------------------------------------------------------------
# noncommutative word series


WORD_MARK = "$"


def word_operad(alphabet) -> BudOperad:
    """Carrier for word series: bud elements (mark, word + mark)."""
    alphabet = tuple(alphabet)
    if WORD_MARK in alphabet:
        raise BudgenError("the letter %r is reserved" % WORD_MARK)
    return BudOperad(AsOperad(), alphabet + (WORD_MARK,))


def mu_encode(word_coeffs: dict, alphabet, bound: int,
              op: BudOperad | None = None) -> Series:
    """Encode a word polynomial as a series; concatenation becomes the
    pre-Lie product on the encoded side.  Pass the same carrier `op` to
    make encoded series composable with each other."""
    if op is None:
        op = word_operad(alphabet)
    coeffs = {}
    for word, c in word_coeffs.items():
        if len(word) + 1 > bound:
            raise BudgenError("word %r too long for bound %d" % (word, bound))
        x = op.element(WORD_MARK, len(word) + 1, tuple(word) + (WORD_MARK,))
        coeffs[x] = coeffs.get(x, ZERO) + c
    return Series(op, bound, coeffs)
