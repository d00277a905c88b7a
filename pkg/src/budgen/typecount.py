"""Counting by color type: recurrences and functional systems.

The color type of a bud element is the vector counting each color among
its inputs.  Pushing the treelike / perfect expression counts of a bud
system to (output color, type) indices gives integer recurrences that
are much cheaper than the full series, and the same data packages as a
system of truncated polynomial equations in one variable per color.
"""

from __future__ import annotations

import math

import sympy as sp

from .core import BudgenError, DivergenceError, type_of
from .operads import degree_bound
from .systems import BudSystem


def multiset_factorial(counts) -> int:
    """(sum counts)! / prod of counts!: arrangements of a multiset."""
    counts = list(counts)
    num = math.factorial(sum(counts))
    for c in counts:
        num //= math.factorial(c)
    return num


def chi_table(system: BudSystem) -> dict:
    """Rule counts indexed by (output color, input color type)."""
    key = "chi"
    if key not in system._cache:
        table: dict = {}
        for r in system.rules:
            k = (r[0], type_of(r[2], system.colors))
            table[k] = table.get(k, 0) + 1
        system._cache[key] = table
    return system._cache[key]


def y_symbols(system: BudSystem) -> dict:
    return {c: sp.Symbol("y_%s" % c) for c in system.colors}


def g_poly(system: BudSystem) -> dict:
    """Rule-generating polynomials: g_a = sum over rules with output a of
    the product of y_c over the rule inputs c."""
    ys = y_symbols(system)
    g = {c: sp.Integer(0) for c in system.colors}
    for r in system.rules:
        mono = sp.Integer(1)
        for c in r[2]:
            mono *= ys[c]
        g[r[0]] += mono
    return g


# ---------------------------------------------------------------------------
# type-indexed recurrences


def _unit_type(system: BudSystem, color: str) -> tuple:
    return tuple(1 if c == color else 0 for c in system.colors)


def _nonzero(alpha) -> bool:
    return any(a > 0 for a in alpha)


def _sub_type(alpha, beta):
    return tuple(a - b for a, b in zip(alpha, beta))


def _fits(beta, alpha) -> bool:
    return all(b <= a for b, a in zip(beta, alpha))


def _vectors_below(bound):
    """All componentwise-nonnegative vectors <= bound, excluding zero."""
    if not bound:
        return
    vecs = [()]
    for b in bound:
        vecs = [v + (i,) for v in vecs for i in range(b + 1)]
    for v in vecs:
        if _nonzero(v):
            yield v


def _multisets(k: int, bound, ceiling=None):
    """Multisets (as nonincreasing tuples) of k nonzero vectors whose sum
    fits below `bound` componentwise."""
    if k == 0:
        yield ()
        return
    for v in _vectors_below(bound):
        if ceiling is not None and v > ceiling:
            continue
        for rest in _multisets(k - 1, _sub_type(bound, v), v):
            yield (v,) + rest


def _multiplicity_factor(multiset) -> int:
    counts: dict = {}
    for v in multiset:
        counts[v] = counts.get(v, 0) + 1
    return multiset_factorial(counts.values())


def colt_synt_coeff(system: BudSystem, color: str, alpha) -> int:
    """Treelike expressions of the system with the given output color,
    counted by input color type."""
    alpha = tuple(alpha)
    if len(alpha) != len(system.colors):
        raise BudgenError("type length must match the color count")
    chi = chi_table(system)
    memo = system._cache.setdefault("colt_synt", {})
    in_progress: set = set()
    colors = system.colors

    def rec(a: str, al: tuple) -> int:
        key = (a, al)
        if key in memo:
            return memo[key]
        if key in in_progress:
            raise DivergenceError("type recurrence admits a color cycle")
        in_progress.add(key)
        total = 1 if al == _unit_type(system, a) else 0
        for (out, tau), count in chi.items():
            if out != a:
                continue
            total += count * _synt_rule_sum(tau, al)
        in_progress.discard(key)
        memo[key] = total
        return total

    def _synt_rule_sum(tau: tuple, al: tuple) -> int:
        # assign a multiset of child types to each color class of the rule
        def go(idx: int, remaining: tuple) -> int:
            while idx < len(colors) and tau[idx] == 0:
                idx += 1
            if idx == len(colors):
                return 1 if not _nonzero(remaining) else 0
            b = colors[idx]
            subtotal = 0
            for multiset in _multisets(tau[idx], remaining):
                rest = remaining
                for gamma in multiset:
                    rest = _sub_type(rest, gamma)
                # resolve the rest of the rule first: dead branches must
                # not trigger recursive child counts
                tail = go(idx + 1, rest)
                if tail == 0:
                    continue
                weight = _multiplicity_factor(multiset)
                for gamma in multiset:
                    weight *= rec(b, gamma)
                    if weight == 0:
                        break
                subtotal += weight * tail
            return subtotal

        return go(0, al)

    return rec(color, alpha)


def colt_sync_coeff(system: BudSystem, color: str, alpha) -> int:
    """Perfect (synchronous) expressions of the system with the given
    output color, counted by input color type."""
    alpha = tuple(alpha)
    if len(alpha) != len(system.colors):
        raise BudgenError("type length must match the color count")
    chi = chi_table(system)
    memo = system._cache.setdefault("colt_sync", {})
    in_progress: set = set()
    colors = system.colors
    pairs = sorted(chi.items())  # ((out color, rule type), count)

    def rec(a: str, al: tuple) -> int:
        key = (a, al)
        if key in memo:
            return memo[key]
        if key in in_progress:
            raise DivergenceError("type recurrence admits a color cycle")
        in_progress.add(key)
        total = 1 if al == _unit_type(system, a) else 0

        # choose how many leaves of each color take each rule type
        def go(idx: int, remaining: tuple, beta: list, weight: int,
               phi_by_color: dict) -> int:
            if weight == 0:
                return 0
            if idx == len(pairs):
                if _nonzero(remaining) or not any(beta):
                    return 0
                for counts in phi_by_color.values():
                    weight_here = _multiplicity_factor_list(counts)
                    if weight_here != 1:
                        weight *= weight_here
                return weight * rec(a, tuple(beta))
            (b, gamma), count = pairs[idx]
            b_idx = colors.index(b)
            subtotal = 0
            d = 0
            chi_pow = 1
            rest = remaining
            while True:
                phi_by_color.setdefault(b, []).append(d)
                beta[b_idx] += d
                subtotal += go(idx + 1, rest, beta, weight * chi_pow,
                               phi_by_color)
                beta[b_idx] -= d
                phi_by_color[b].pop()
                if not _fits(gamma, rest):
                    break
                rest = _sub_type(rest, gamma)
                d += 1
                chi_pow *= count
            return subtotal

        total += go(0, al, [0] * len(colors), 1, {})
        in_progress.discard(key)
        memo[key] = total
        return total

    return rec(color, alpha)


def _multiplicity_factor_list(counts) -> int:
    counts = [c for c in counts if c > 0]
    return multiset_factorial(counts)


# ---------------------------------------------------------------------------
# counting series of the (synchronous) language


def _terminal_types(system: BudSystem, n: int):
    """All types of degree n supported on the terminal colors."""
    idxs = [system.colors.index(c) for c in system.terminal]

    def go(remaining: int, pos: int):
        if pos == len(idxs) - 1:
            yield {idxs[pos]: remaining}
            return
        for v in range(remaining + 1):
            for rest in go(remaining - v, pos + 1):
                rest[idxs[pos]] = v
                yield rest

    if not idxs:
        return
    for assign in go(n, 0):
        yield tuple(assign.get(i, 0) for i in range(len(system.colors)))


PROBE_BOUND = 5


def _counting_series(system: BudSystem, bound: int, synchronous: bool):
    probe = min(bound, PROBE_BOUND)
    if synchronous:
        unambiguous = system.is_sync_unambiguous(probe)
        coeff = colt_sync_coeff
        series = system.sync_series
    else:
        unambiguous = system.is_unambiguous(probe)
        coeff = colt_synt_coeff
        series = system.synt_series
    if unambiguous:
        counts = []
        for n in range(1, bound + 1):
            total = 0
            for a in system.initial:
                for alpha in _terminal_types(system, n):
                    total += coeff(system, a, alpha)
            counts.append(total)
        return counts, "type-recurrence"
    full = series(bound)
    counts = [len(full.support_slice(n)) for n in range(1, bound + 1)]
    return counts, "support"


def lang_counting_series(system: BudSystem, bound: int):
    """a(n) = number of language elements of arity n, for n = 1..bound.

    Uses the type recurrence when an unambiguity probe (at arity
    min(bound, PROBE_BOUND)) passes, else falls back to counting the
    support of the full series.  Returns (counts, method)."""
    return _counting_series(system, bound, synchronous=False)


def sync_counting_series(system: BudSystem, bound: int):
    """Like lang_counting_series for the synchronous language."""
    return _counting_series(system, bound, synchronous=True)


# ---------------------------------------------------------------------------
# functional systems on truncated polynomials


def _truncate(expr, syms, bound: int):
    expr = sp.expand(expr)
    if not syms:
        return expr
    poly = sp.Poly(expr, *syms)
    kept = sp.Integer(0)
    for monom, c in poly.terms():
        if sum(monom) <= bound:
            term = c
            for s, e in zip(syms, monom):
                term *= s ** e
            kept += term
    return sp.expand(kept)


def _iteration_cap(system: BudSystem, bound: int) -> int:
    ok, chain = system.ff_check()
    if not ok:
        raise DivergenceError("arity-1 rules admit a color cycle")
    return degree_bound(bound, chain) + 2


def solve_synt_system(system: BudSystem, bound: int) -> dict:
    """Fixpoint of f_a = y_a + g_a(f_c1, .., f_ck), truncated at total
    degree `bound`.  f_a counts treelike expressions by leaf colors."""
    ys = y_symbols(system)
    syms = [ys[c] for c in system.colors]
    g = g_poly(system)
    cap = _iteration_cap(system, bound)
    f = {c: ys[c] for c in system.colors}
    for _ in range(cap):
        subs = [(ys[c], f[c]) for c in system.colors]
        nxt = {c: _truncate(ys[c] + g[c].subs(subs, simultaneous=True),
                            syms, bound)
               for c in system.colors}
        if nxt == f:
            return f
        f = nxt
    raise DivergenceError("functional system did not stabilize")


def sync_iterates(system: BudSystem, ell: int, bound: int) -> list:
    """Iterates f^(0)_a = y_a, f^(l)_a = y_a + f^(l-1)_a(g_c1, .., g_ck),
    each truncated at total degree `bound`."""
    ys = y_symbols(system)
    syms = [ys[c] for c in system.colors]
    g = g_poly(system)
    subs = [(ys[c], g[c]) for c in system.colors]
    f = {c: ys[c] for c in system.colors}
    out = [dict(f)]
    for _ in range(ell):
        f = {c: _truncate(ys[c] + f[c].subs(subs, simultaneous=True),
                          syms, bound)
             for c in system.colors}
        out.append(dict(f))
    return out

def solve_sync_system(system: BudSystem, bound: int) -> dict:
    """Fixpoint of f_a = y_a + f_a(g_c1, .., g_ck), truncated at total
    degree `bound`.  f_a counts perfect expressions by leaf colors."""
    cap = _iteration_cap(system, bound)
    iterates = sync_iterates(system, cap, bound)
    for prev, cur in zip(iterates, iterates[1:]):
        if prev == cur:
            return cur
    raise DivergenceError("functional system did not stabilize")


# ---------------------------------------------------------------------------
# refined counting of perfect trees, all arities at once


def refined_perfect(bound: int) -> dict:
    """Perfect-tree polynomials s_n in q_2..q_n: the coefficient of a
    monomial prod q_b^(d_b) counts perfect trees with n leaves built by
    repeatedly substituting, at every leaf at once, corollas whose last
    layer uses d_b corollas of arity b.  Returns {n: polynomial}."""
    q = {b: sp.Symbol("q_%d" % b) for b in range(2, bound + 1)}
    s = {1: sp.Integer(1)}

    def layer_vectors(n: int):
        # (d_b)_{b>=2} with sum b*d_b = n and d nonzero
        def go(b: int, remaining: int):
            if remaining == 0:
                yield {}
                return
            if b > remaining:
                return
            for d in range(remaining // b + 1):
                for rest in go(b + 1, remaining - b * d):
                    if d:
                        rest = dict(rest)
                        rest[b] = d
                    yield rest

        for vec in go(2, n):
            if vec:
                yield vec

    for n in range(2, bound + 1):
        total = sp.Integer(0)
        for vec in layer_vectors(n):
            m = sum(vec.values())
            term = sp.Integer(multiset_factorial(vec.values()))
            for b, d in vec.items():
                term *= q[b] ** d
            total += term * s[m]
        s[n] = sp.expand(total)
    return s


# ---------------------------------------------------------------------------
# hook coefficients of binary trees, by arity and left-subtree arity


def hook_triangle(n_max: int) -> list:
    """Rows t_n = [h(n, 0), .., h(n, n-1)] with h(n, a) = (2a - 1) *
    h(n-1, a-1) + (2n - 2a - 3) * h(n-1, a); h(n, a) sums the hook counts
    of the binary trees with n + 1 leaves whose left subtree has a + 1
    leaves."""
    if n_max < 1:
        return []
    rows = [[1]]
    for n in range(2, n_max + 1):
        prev = rows[-1]
        row = []
        for a in range(n):
            val = 0
            if 0 <= a - 1 < len(prev):
                val += (2 * a - 1) * prev[a - 1]
            if a < len(prev):
                val += (2 * n - 2 * a - 3) * prev[a]
            row.append(val)
        rows.append(row)
    return rows
