"""Concrete operads, free colored operads, and syntax-tree machinery.

Element serializations (the interchange format for JSON files and CLI
output): the associative operad prints its arity in decimal; binary and
Schroeder trees and free-operad elements print as terms `name(child,..)`
with `*` for leaves and `!c` for the unit leaf of color c; pluriassociative
words print as digit strings; Motzkin paths print as U/H/D step strings
(the empty string is the arity-1 path).
"""

from __future__ import annotations

import math
from itertools import product
from typing import Sequence

import networkx as nx

from .core import (
    MONO,
    AsOperad,
    BudgenError,
    DivergenceError,
    NotGeneratedError,
    Operad,
    PositionError,
    validate_color_token,
)

LEAF = "*"
UNIT_TAG = "!"


# ---------------------------------------------------------------------------
# term syntax shared by tree-shaped elements


def dumps_term(t) -> str:
    if t == LEAF:
        return LEAF
    if t[0] == UNIT_TAG:
        return UNIT_TAG + t[1]
    name = t[0]
    children = t[1:]
    if not children:
        return name
    return "%s(%s)" % (name, ",".join(dumps_term(c) for c in children))


def loads_term(text: str):
    pos = 0

    def parse():
        nonlocal pos
        if pos >= len(text):
            raise BudgenError("unexpected end of term %r" % text)
        if text[pos] == LEAF:
            pos += 1
            return LEAF
        if text[pos] == UNIT_TAG:
            pos += 1
            start = pos
            while pos < len(text) and text[pos] not in "(),":
                pos += 1
            if pos == start:
                raise BudgenError("missing color after %r" % UNIT_TAG)
            return (UNIT_TAG, text[start:pos])
        start = pos
        while pos < len(text) and text[pos] not in "(),":
            pos += 1
        name = text[start:pos]
        if not name:
            raise BudgenError("bad term syntax at %d in %r" % (pos, text))
        if pos < len(text) and text[pos] == "(":
            pos += 1
            children = [parse()]
            while pos < len(text) and text[pos] == ",":
                pos += 1
                children.append(parse())
            if pos >= len(text) or text[pos] != ")":
                raise BudgenError("unbalanced parentheses in %r" % text)
            pos += 1
            return tuple([name] + children)
        return (name,)

    t = parse()
    if pos != len(text):
        raise BudgenError("trailing characters in term %r" % text)
    return t


# ---------------------------------------------------------------------------
# magmatic operad: planar binary trees under leaf grafting


class MagOperad(Operad):
    """Binary trees; composition grafts a tree onto the i-th leaf."""

    NODE = "c"

    def arity(self, x) -> int:
        if x == LEAF:
            return 1
        return self.arity(x[1]) + self.arity(x[2])

    def unit(self, c: str):
        if c != MONO:
            raise BudgenError("unknown color %r" % c)
        return LEAF

    def compose(self, x, i: int, y):
        self._check_colors(x, i, y)
        return self._graft(x, i, y)

    def _graft(self, x, i, y):
        if x == LEAF:
            return y
        left_arity = self.arity(x[1])
        if i <= left_arity:
            return (self.NODE, self._graft(x[1], i, y), x[2])
        return (self.NODE, x[1], self._graft(x[2], i - left_arity, y))

    def corolla(self):
        return (self.NODE, LEAF, LEAF)

    def dumps(self, x) -> str:
        return dumps_term(x)

    def loads(self, text: str):
        t = loads_term(text)
        self._validate(t)
        return t

    def _validate(self, t):
        if t == LEAF:
            return
        if not (isinstance(t, tuple) and t[0] == self.NODE and len(t) == 3):
            raise BudgenError("not a binary tree: %r" % (t,))
        self._validate(t[1])
        self._validate(t[2])

    def elements(self, n: int):
        if n == 1:
            yield LEAF
            return
        for k in range(1, n):
            for left in self.elements(k):
                for right in self.elements(n - k):
                    yield (self.NODE, left, right)


# ---------------------------------------------------------------------------
# pluriassociative operads: words with exactly one 0


class DiasOperad(Operad):
    """Words over {0} u [gamma] with exactly one 0.

    u o_i v replaces the i-th letter of u by v', where v' replaces every
    letter a of v by max(a, u_i).
    """

    def __init__(self, gamma: int):
        if gamma < 0:
            raise BudgenError("gamma must be >= 0")
        self.gamma = gamma

    def arity(self, x: str) -> int:
        return len(x)

    def unit(self, c: str) -> str:
        if c != MONO:
            raise BudgenError("unknown color %r" % c)
        return "0"

    def compose(self, x: str, i: int, y: str) -> str:
        self._check_colors(x, i, y)
        pivot = int(x[i - 1])
        spliced = "".join(str(max(int(a), pivot)) for a in y)
        return x[:i - 1] + spliced + x[i:]

    def dumps(self, x: str) -> str:
        return x

    def loads(self, text: str) -> str:
        self.validate(text)
        return text

    def validate(self, word: str) -> None:
        if self.gamma > 9:
            raise BudgenError("text format supports gamma <= 9")
        if word.count("0") != 1:
            raise BudgenError("word must contain exactly one 0: %r" % word)
        for ch in word:
            if not ch.isdigit() or int(ch) > self.gamma:
                raise BudgenError("letter %r outside 0..%d" % (ch, self.gamma))

    def elements(self, n: int):
        letters = [str(a) for a in range(1, self.gamma + 1)]
        for pos in range(n):
            for rest in product(letters, repeat=n - 1):
                yield "".join(rest[:pos]) + "0" + "".join(rest[pos:])


# ---------------------------------------------------------------------------
# operad of Motzkin paths


class MotzOperad(Operad):
    """Motzkin paths as U/H/D step words; arity = number of points.

    a o_i b splices the steps of b at the i-th point of a (between steps
    i-1 and i).
    """

    def arity(self, x: str) -> int:
        return len(x) + 1

    def unit(self, c: str) -> str:
        if c != MONO:
            raise BudgenError("unknown color %r" % c)
        return ""

    def compose(self, x: str, i: int, y: str) -> str:
        self._check_colors(x, i, y)
        return x[:i - 1] + y + x[i - 1:]

    def dumps(self, x: str) -> str:
        return x

    def loads(self, text: str) -> str:
        self.validate(text)
        return text

    def validate(self, steps: str) -> None:
        height = 0
        for ch in steps:
            if ch == "U":
                height += 1
            elif ch == "D":
                height -= 1
            elif ch != "H":
                raise BudgenError("bad step %r" % ch)
            if height < 0:
                raise BudgenError("path goes below the axis: %r" % steps)
        if height != 0:
            raise BudgenError("path does not end on the axis: %r" % steps)

    def elements(self, n: int):
        def walk(prefix, height, remaining):
            if remaining == 0:
                if height == 0:
                    yield prefix
                return
            if height + remaining < 0 or height > remaining:
                return
            for step, dh in (("U", 1), ("H", 0), ("D", -1)):
                if height + dh >= 0:
                    yield from walk(prefix + step, height + dh, remaining - 1)

        if n >= 1:
            yield from walk("", 0, n - 1)


# ---------------------------------------------------------------------------
# operad of alternating Schroeder trees


class ASchrOperad(Operad):
    """Planar trees with internal arity >= 2, nodes labeled a or b, and no
    equal-label parent/child pair.  Grafting merges the grafted root into
    the parent node when their labels coincide.
    """

    LABELS = ("a", "b")

    def arity(self, x) -> int:
        if x == LEAF:
            return 1
        return sum(self.arity(c) for c in x[1:])

    def unit(self, c: str):
        if c != MONO:
            raise BudgenError("unknown color %r" % c)
        return LEAF

    def corolla(self, label: str, n: int = 2):
        return tuple([label] + [LEAF] * n)

    def compose(self, x, i: int, y):
        self._check_colors(x, i, y)
        if x == LEAF:
            return y
        return self._graft(x, i, y)

    def _graft(self, x, i, y):
        label = x[0]
        children = list(x[1:])
        offset = 0
        for j, child in enumerate(children):
            a = self.arity(child)
            if offset < i <= offset + a:
                if child == LEAF:
                    if y == LEAF:
                        return x
                    if y[0] == label:
                        # merge: splice the children of y in place of the leaf
                        new_children = children[:j] + list(y[1:]) + children[j + 1:]
                    else:
                        new_children = children[:j] + [y] + children[j + 1:]
                else:
                    new_children = (children[:j]
                                    + [self._graft(child, i - offset, y)]
                                    + children[j + 1:])
                return tuple([label] + new_children)
            offset += a
        raise PositionError("leaf %d not found" % i)  # pragma: no cover

    def dumps(self, x) -> str:
        return dumps_term(x)

    def loads(self, text: str):
        t = loads_term(text)
        self.validate(t)
        return t

    def validate(self, t, parent_label=None) -> None:
        if t == LEAF:
            return
        label = t[0]
        if label not in self.LABELS:
            raise BudgenError("bad node label %r" % label)
        if len(t) - 1 < 2:
            raise BudgenError("internal nodes need arity >= 2")
        if label == parent_label:
            raise BudgenError("equal-label parent/child pair")
        for child in t[1:]:
            self.validate(child, label)

    def elements(self, n: int):
        yield from self._elements(n, None)

    def _elements(self, n: int, parent_label):
        if n == 1:
            yield LEAF
            return
        for label in self.LABELS:
            if label == parent_label:
                continue
            for arity in range(2, n + 1):
                for split in _compositions(n, arity):
                    for children in _mixed_products(
                            [list(self._elements(m, label)) for m in split]):
                        yield tuple([label] + children)


def _compositions(n: int, parts: int):
    """All ways to write n as an ordered sum of `parts` positive integers."""
    if parts == 1:
        if n >= 1:
            yield (n,)
        return
    for first in range(1, n - parts + 2):
        for rest in _compositions(n - first, parts - 1):
            yield (first,) + rest


def _mixed_products(pools):
    if not pools:
        yield []
        return
    for head in pools[0]:
        for tail in _mixed_products(pools[1:]):
            yield [head] + tail


# ---------------------------------------------------------------------------
# free colored operads


class CollectionSpec:
    """A finite list of colored generators (name, output color, input colors)."""

    def __init__(self, generators: Sequence[tuple[str, str, Sequence[str]]],
                 colors: Sequence[str] | None = None):
        self.gens: dict[str, tuple[str, tuple[str, ...]]] = {}
        seen_colors: list[str] = []
        for name, out, ins in generators:
            if not name or any(ch in name for ch in "(),!*:"):
                raise BudgenError("invalid generator name %r" % name)
            if name in self.gens:
                raise BudgenError("duplicate generator name %r" % name)
            ins = tuple(ins)
            if len(ins) < 1:
                raise BudgenError("generator arity must be >= 1")
            self.gens[name] = (out, ins)
            for c in (out,) + ins:
                if c not in seen_colors:
                    seen_colors.append(c)
        if colors is None:
            colors = seen_colors or [MONO]
        for c in seen_colors:
            if c not in colors:
                raise BudgenError("generator color %r not declared" % c)
        for c in colors:
            validate_color_token(c)
        self.colors = tuple(colors)

    def out(self, name: str) -> str:
        return self.gens[name][0]

    def ins(self, name: str) -> tuple[str, ...]:
        return self.gens[name][1]

    def arity(self, name: str) -> int:
        return len(self.gens[name][1])


class FreeOperad(Operad):
    """Free colored operad over a CollectionSpec.

    Elements are syntax trees: the unit of color c is ('!', c); other
    elements are nested tuples (name, child, ...) whose children are
    either '*' leaves (color determined by the parent signature) or
    further nodes.
    """

    def __init__(self, spec: CollectionSpec):
        self.spec = spec
        self.colors = spec.colors

    def arity(self, x) -> int:
        if x[0] == UNIT_TAG:
            return 1
        return sum(1 if c == LEAF else self.arity(c) for c in x[1:])

    def out(self, x) -> str:
        if x[0] == UNIT_TAG:
            return x[1]
        return self.spec.out(x[0])

    def ins(self, x) -> tuple[str, ...]:
        if x[0] == UNIT_TAG:
            return (x[1],)
        result: list[str] = []
        self._collect_ins(x, result)
        return tuple(result)

    def _collect_ins(self, x, acc: list[str]) -> None:
        sig = self.spec.ins(x[0])
        for color, child in zip(sig, x[1:]):
            if child == LEAF:
                acc.append(color)
            else:
                self._collect_ins(child, acc)

    def unit(self, c: str):
        if c not in self.colors:
            raise BudgenError("unknown color %r" % c)
        return (UNIT_TAG, c)

    def corolla(self, name: str):
        return tuple([name] + [LEAF] * self.spec.arity(name))

    def compose(self, x, i: int, y):
        self._check_colors(x, i, y)
        if x[0] == UNIT_TAG:
            return y
        if y[0] == UNIT_TAG:
            return x
        return self._graft(x, i, y)

    def _graft(self, x, i, y):
        children = list(x[1:])
        offset = 0
        for j, child in enumerate(children):
            a = 1 if child == LEAF else self.arity(child)
            if offset < i <= offset + a:
                if child == LEAF:
                    children[j] = y
                else:
                    children[j] = self._graft(child, i - offset, y)
                return tuple([x[0]] + children)
            offset += a
        raise BudgenError("leaf %d not found" % i)  # pragma: no cover

    def degree(self, x) -> int:
        if x[0] == UNIT_TAG:
            return 0
        return 1 + sum(0 if c == LEAF else self.degree(c) for c in x[1:])

    def dumps(self, x) -> str:
        return dumps_term(x)

    def loads(self, text: str):
        t = loads_term(text)
        self.validate(t)
        return t

    def validate(self, t, expected_out: str | None = None) -> None:
        if t == LEAF:
            raise BudgenError("bare leaf is not an element")
        if t[0] == UNIT_TAG:
            if t[1] not in self.colors:
                raise BudgenError("unknown color %r" % t[1])
            if expected_out is not None and t[1] != expected_out:
                raise BudgenError("color mismatch at unit leaf")
            return
        name = t[0]
        if name not in self.spec.gens:
            raise BudgenError("unknown generator %r" % name)
        if len(t) - 1 != self.spec.arity(name):
            raise BudgenError("generator %r expects %d children"
                              % (name, self.spec.arity(name)))
        if expected_out is not None and self.spec.out(name) != expected_out:
            raise BudgenError("output color mismatch at %r" % name)
        for color, child in zip(self.spec.ins(name), t[1:]):
            if child == LEAF:
                continue
            self.validate(child, color)

    def elements(self, n: int):
        if any(self.spec.arity(name) == 1 for name in self.spec.gens):
            raise BudgenError(
                "per-arity enumeration needs a signature without arity-1 generators")
        for c in self.colors:
            yield from self._elements(n, c)

    def _elements(self, n: int, out_color: str):
        if n == 1:
            yield self.unit(out_color)
        for name, (out, ins) in self.spec.gens.items():
            if out != out_color or len(ins) > n:
                continue
            for split in _compositions(n, len(ins)):
                pools = []
                for m, c in zip(split, ins):
                    pool = [LEAF] if m == 1 else []
                    pool.extend(t for t in self._elements(m, c)
                                if t[0] != UNIT_TAG)
                    pools.append(pool)
                for children in _mixed_products(pools):
                    yield tuple([name] + children)


def capped_tree_operad(cap: int) -> FreeOperad:
    """Monochrome free operad with one generator per arity 1..cap."""
    if cap < 1:
        raise BudgenError("arity cap must be >= 1")
    gens = [("n%d" % k, MONO, (MONO,) * k) for k in range(1, cap + 1)]
    return FreeOperad(CollectionSpec(gens, colors=(MONO,)))


# ---------------------------------------------------------------------------
# syntax trees over an arbitrary operad (treelike expressions)

# tree nodes: ('!', color) unit leaf, or ('@', element, (children, ...))


def st_leaf(color: str):
    return (UNIT_TAG, color)


def st_node(elem, children):
    return ("@", elem, tuple(children))


def st_degree(t) -> int:
    if t[0] == UNIT_TAG:
        return 0
    return 1 + sum(st_degree(c) for c in t[2])


def st_arity(t) -> int:
    if t[0] == UNIT_TAG:
        return 1
    return sum(st_arity(c) for c in t[2])


def st_height(t) -> int:
    if t[0] == UNIT_TAG:
        return 0
    return 1 + max(st_height(c) for c in t[2])


def st_is_perfect(t) -> bool:
    """True when all root-to-leaf paths have the same length."""
    depths: set[int] = set()

    def walk(node, depth):
        if node[0] == UNIT_TAG:
            depths.add(depth)
        else:
            for c in node[2]:
                walk(c, depth + 1)

    walk(t, 0)
    return len(depths) <= 1


def st_eval(op: Operad, t):
    if t[0] == UNIT_TAG:
        return op.unit(t[1])
    return op.full_compose(t[1], [st_eval(op, c) for c in t[2]])


def st_labels(t):
    """Iterate over the internal-node labels of t."""
    if t[0] != UNIT_TAG:
        yield t[1]
        for c in t[2]:
            yield from st_labels(c)


def hook_count(t) -> int:
    """Number of linear extensions of t: deg(t)! / prod of subtree degrees."""
    degs: list[int] = []

    def walk(node) -> int:
        if node[0] == UNIT_TAG:
            return 0
        d = 1 + sum(walk(c) for c in node[2])
        degs.append(d)
        return d

    walk(t)
    num = math.factorial(len(degs))
    for d in degs:
        num, rem = divmod(num, d)
        assert rem == 0
    return num


def finitely_factorizing_check(op: Operad, s1) -> tuple[bool, int]:
    """Check that the arity-1 generators admit no color cycle.

    Builds the directed multigraph with an edge out(s) -> in_1(s) per
    arity-1 generator; returns (acyclic?, longest chain length).
    """
    graph = nx.MultiDiGraph()
    graph.add_nodes_from(op.colors)
    for s in s1:
        if op.arity(s) != 1:
            raise BudgenError("expected an arity-1 element")
        graph.add_edge(op.out(s), op.in_color(s, 1))
    if not nx.is_directed_acyclic_graph(graph):
        return (False, -1)
    if graph.number_of_edges() == 0:
        return (True, 0)
    return (True, nx.dag_longest_path_length(graph))


def degree_bound(n: int, k: int) -> int:
    """Maximum degree of a treelike expression of an arity-n element when
    the longest arity-1 generator chain has length k."""
    return (n - 1) + (2 * n - 1) * k


def all_treelike(op: Operad, gens, max_arity: int, max_degree: int):
    """All syntax trees over `gens` with arity <= max_arity and degree <=
    max_degree, grouped by evaluated element.  Returns dict elem -> [trees].
    """
    gens = list(gens)
    # by_degree[d]: dict elem -> list of trees of degree exactly d
    by_degree: list[dict] = [{}]
    for c in op.colors:
        by_degree[0].setdefault(op.unit(c), []).append(st_leaf(c))
    for d in range(1, max_degree + 1):
        level: dict = {}
        for g in gens:
            m = op.arity(g)
            ins = op.ins(g)
            for split in _compositions(d - 1 + m, m):
                # split[j] - 1 is the degree of child j; parts sum to d - 1
                child_degs = [s - 1 for s in split]
                pools = []
                ok = True
                for cd, color in zip(child_degs, ins):
                    pool = [(op.arity(e), e, t)
                            for e, trees in by_degree[cd].items()
                            if op.out(e) == color for t in trees]
                    if not pool:
                        ok = False
                        break
                    pools.append(pool)
                if not ok:
                    continue
                min_rest = [0] * (m + 1)
                for j in range(m - 1, -1, -1):
                    min_rest[j] = min_rest[j + 1] + min(
                        a for a, _, _ in pools[j])

                def assign(j, budget, picks):
                    if j == m:
                        value = op.full_compose(g, [p[1] for p in picks])
                        tree = st_node(g, [p[2] for p in picks])
                        level.setdefault(value, []).append(tree)
                        return
                    for entry in pools[j]:
                        if entry[0] + min_rest[j + 1] <= budget:
                            assign(j + 1, budget - entry[0], picks + [entry])

                assign(0, max_arity, [])
        by_degree.append(level)
    result: dict = {}
    for level in by_degree:
        for elem, trees in level.items():
            result.setdefault(elem, []).extend(trees)
    return result


def treelike_expressions(op: Operad, gens, x, max_degree: int | None = None):
    """All syntax trees over `gens` evaluating to x.

    Complete when the arity-1 generators are finitely factorizing and the
    degree bound is the certified one (the default).
    """
    gens = list(gens)
    if max_degree is None:
        ok, k = finitely_factorizing_check(op, [g for g in gens if op.arity(g) == 1])
        if not ok:
            raise DivergenceError("arity-1 generators admit a color cycle")
        max_degree = degree_bound(op.arity(x), k)
    table = all_treelike(op, gens, op.arity(x), max_degree)
    return table.get(x, [])


def left_expression_count(op: Operad, gens, x) -> int:
    """Number of left-nested composition sequences producing x: the sum of
    hook counts over all treelike expressions of x."""
    return sum(hook_count(t) for t in treelike_expressions(op, gens, x))


def s_degree(op: Operad, gens, x) -> int:
    """Maximum degree over the treelike expressions of x."""
    trees = treelike_expressions(op, gens, x)
    if not trees:
        raise NotGeneratedError("element %r is not generated" % (op.dumps(x),))
    return max(st_degree(t) for t in trees)
