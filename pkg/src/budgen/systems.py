"""Bud generating systems: rules, derivations, languages, and their series.

A system is (ground operad, colors, rules, initial colors, terminal
colors).  Rules are elements of the bud operad; derivation applies one
rule at one input, synchronous derivation applies one rule at every
input.  The three generating series are

    hook = i (.) r^{<-*} (.) t      (left-expression counts)
    synt = i (.) (u - r)^{(.)-1} (.) t   (treelike-expression counts)
    sync = i (.) r^{(.)*} (.) t     (perfect-expression counts)

whose supports are the language and the synchronous language.
"""

from __future__ import annotations

import json
from collections import Counter
from typing import Iterable, Sequence

from .core import MONO, BudgenError, BudOperad, Operad
from .operads import (
    ASchrOperad,
    AsOperad,
    CollectionSpec,
    DiasOperad,
    FreeOperad,
    MagOperad,
    MotzOperad,
    finitely_factorizing_check,
)
from . import series as S


class BudSystem:
    """A bud generating system over a monochrome ground operad."""

    def __init__(self, ground: Operad, colors: Sequence[str],
                 rules: Iterable, initial: Sequence[str],
                 terminal: Sequence[str], name: str | None = None):
        self.ground = ground
        self.bud = BudOperad(ground, colors)
        self.colors = self.bud.colors
        checked = []
        for out, g, ins in rules:
            checked.append(self.bud.element(out, g, ins))
        if len(set(checked)) != len(checked):
            raise BudgenError("duplicate rules")
        self.rules = tuple(checked)
        for c in tuple(initial) + tuple(terminal):
            if c not in self.colors:
                raise BudgenError("unknown color %r" % c)
        self.initial = tuple(dict.fromkeys(initial))
        self.terminal = tuple(dict.fromkeys(terminal))
        self.name = name
        self._cache: dict = {}

    @property
    def monochrome(self) -> bool:
        return (len(self.colors) == 1 and self.initial == self.colors
                and self.terminal == self.colors)

    def ff_check(self) -> tuple[bool, int]:
        """Acyclicity check and longest chain for the arity-1 rules."""
        s1 = [r for r in self.rules if self.bud.arity(r) == 1]
        return finitely_factorizing_check(self.bud, s1)

    # -- series ------------------------------------------------------------

    def rule_series(self, bound: int) -> S.Series:
        return S.characteristic(self.bud, self.rules, bound)

    def initial_series(self, bound: int) -> S.Series:
        return S.characteristic(self.bud, [self.bud.unit(c) for c in self.initial],
                                bound)

    def terminal_series(self, bound: int) -> S.Series:
        return S.characteristic(self.bud, [self.bud.unit(c) for c in self.terminal],
                                bound)

    def _filtered(self, middle: S.Series, bound: int) -> S.Series:
        left = S.compose_prod(self.initial_series(bound), middle)
        return S.compose_prod(left, self.terminal_series(bound))

    def hook_series(self, bound: int) -> S.Series:
        key = ("hook", bound)
        if key not in self._cache:
            star = S.pre_lie_star(self.rule_series(bound))
            self._cache[key] = self._filtered(star, bound)
        return self._cache[key]

    def synt_series(self, bound: int) -> S.Series:
        key = ("synt", bound)
        if key not in self._cache:
            u = S.units_series(self.bud, bound)
            inv = S.compose_inverse(S.sub(u, self.rule_series(bound)))
            self._cache[key] = self._filtered(inv, bound)
        return self._cache[key]

    def sync_series(self, bound: int) -> S.Series:
        key = ("sync", bound)
        if key not in self._cache:
            star = S.compose_star(self.rule_series(bound))
            self._cache[key] = self._filtered(star, bound)
        return self._cache[key]

    def language(self, bound: int) -> set:
        return self.synt_series(bound).support()

    def sync_language(self, bound: int) -> set:
        return self.sync_series(bound).support()

    # -- verdicts (certificates up to the bound only) ------------------------

    def is_unambiguous(self, bound: int) -> bool:
        return S.zero_one_coefficients(self.synt_series(bound))

    def is_sync_unambiguous(self, bound: int) -> bool:
        return S.zero_one_coefficients(self.sync_series(bound))

    def is_faithful(self, bound: int) -> bool:
        lang = S.characteristic(self.bud, self.language(bound), bound)
        return S.zero_one_coefficients(S.pru_series(lang))

    def is_sync_faithful(self, bound: int) -> bool:
        lang = S.characteristic(self.bud, self.sync_language(bound), bound)
        return S.zero_one_coefficients(S.pru_series(lang))

    # -- derivations ---------------------------------------------------------

    def successors(self, x) -> Counter:
        """One-step derivations x -> x o_i r, with multiplicities."""
        result: Counter = Counter()
        ins = self.bud.ins(x)
        for r in self.rules:
            out_r = self.bud.out(r)
            for i in range(1, len(ins) + 1):
                if ins[i - 1] == out_r:
                    result[self.bud.compose(x, i, r)] += 1
        return result

    def sync_successors(self, x) -> Counter:
        """One-step synchronous derivations x -> x o [r_1..r_n]."""
        ins = self.bud.ins(x)
        pools = []
        for c in ins:
            pool = [r for r in self.rules if self.bud.out(r) == c]
            if not pool:
                return Counter()
            pools.append(pool)
        result: Counter = Counter()

        def assign(j: int, picks: list) -> None:
            if j == len(pools):
                result[self.bud.full_compose(x, picks)] += 1
                return
            for r in pools[j]:
                picks.append(r)
                assign(j + 1, picks)
                picks.pop()

        assign(0, [])
        return result

    def derivation_graph(self, bound: int, synchronous: bool = False):
        """BFS closure from the initial units, restricted to arity <= bound."""
        step = self.sync_successors if synchronous else self.successors
        frontier = [self.bud.unit(c) for c in self.initial]
        vertices = set(frontier)
        edges: dict = {}
        while frontier:
            nxt = []
            for x in sorted(frontier, key=self.bud.key):
                for y, mult in step(x).items():
                    if self.bud.arity(y) > bound:
                        continue
                    edges[(x, y)] = edges.get((x, y), 0) + mult
                    if y not in vertices:
                        vertices.add(y)
                        nxt.append(y)
            frontier = nxt
        return DerivGraph(self, vertices, edges)


class DerivGraph:
    """Derivation multigraph; edge multiplicities count rule applications."""

    def __init__(self, system: BudSystem, vertices: set, edges: dict):
        self.system = system
        self.vertices = vertices
        self.edges = edges
        self._succ: dict = {}
        for (x, y), mult in edges.items():
            self._succ.setdefault(x, []).append((y, mult))

    def multipath_count(self, src, dst) -> int:
        """Directed paths from src to dst, counting edge multiplicities."""
        memo: dict = {}
        on_stack: set = set()

        def count(v) -> int:
            if v == dst:
                return 1
            if v in memo:
                return memo[v]
            if v in on_stack:
                raise BudgenError("derivation graph has a cycle")
            on_stack.add(v)
            total = 0
            for w, mult in self._succ.get(v, []):
                total += mult * count(w)
            on_stack.discard(v)
            memo[v] = total
            return total

        return count(src)

    def to_dot(self) -> str:
        op = self.system.bud
        lines = ["digraph derivations {"]
        for v in sorted(self.vertices, key=op.key):
            lines.append('  "%s";' % op.dumps(v))
        for (x, y) in sorted(self.edges, key=lambda e: (op.key(e[0]), op.key(e[1]))):
            for _ in range(self.edges[(x, y)]):
                lines.append('  "%s" -> "%s";' % (op.dumps(x), op.dumps(y)))
        lines.append("}")
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# JSON interchange


def ground_to_json(ground: Operad) -> dict:
    if isinstance(ground, AsOperad):
        return {"kind": "as", "params": {}}
    if isinstance(ground, MagOperad):
        return {"kind": "mag", "params": {}}
    if isinstance(ground, DiasOperad):
        return {"kind": "dias", "params": {"gamma": ground.gamma}}
    if isinstance(ground, MotzOperad):
        return {"kind": "motz", "params": {}}
    if isinstance(ground, ASchrOperad):
        return {"kind": "aschr", "params": {}}
    if isinstance(ground, FreeOperad):
        gens = [{"name": name, "arity": len(ins)}
                for name, (_, ins) in ground.spec.gens.items()]
        return {"kind": "free", "params": {"generators": gens}}
    raise BudgenError("unsupported ground operad")


def ground_from_json(data: dict) -> Operad:
    kind = data.get("kind")
    params = data.get("params", {})
    if kind == "as":
        return AsOperad()
    if kind == "mag":
        return MagOperad()
    if kind == "dias":
        return DiasOperad(int(params["gamma"]))
    if kind == "motz":
        return MotzOperad()
    if kind == "aschr":
        return ASchrOperad()
    if kind == "free":
        gens = [(g["name"], MONO, (MONO,) * int(g["arity"]))
                for g in params["generators"]]
        return FreeOperad(CollectionSpec(gens, colors=(MONO,)))
    raise BudgenError("unknown ground kind %r" % kind)


def system_to_json(system: BudSystem) -> dict:
    return {
        "ground": ground_to_json(system.ground),
        "colors": list(system.colors),
        "rules": [{"out": r[0], "elem": system.ground.dumps(r[1]),
                   "ins": list(r[2])} for r in system.rules],
        "initial": list(system.initial),
        "terminal": list(system.terminal),
    }


def system_from_json(data: dict) -> BudSystem:
    ground = ground_from_json(data["ground"])
    rules = [(r["out"], ground.loads(r["elem"]), tuple(r["ins"]))
             for r in data["rules"]]
    return BudSystem(ground, data["colors"], rules,
                     data["initial"], data["terminal"])


def system_dumps(system: BudSystem) -> str:
    return json.dumps(system_to_json(system), indent=2) + "\n"


def system_loads(text: str) -> BudSystem:
    return system_from_json(json.loads(text))


# ---------------------------------------------------------------------------
# presets


def _dias_system(gamma: int) -> BudSystem:
    ground = DiasOperad(gamma)
    rules = []
    for a in range(1, gamma + 1):
        rules.append((MONO, "0%d" % a, (MONO, MONO)))
        rules.append((MONO, "%d0" % a, (MONO, MONO)))
    return BudSystem(ground, (MONO,), rules, (MONO,), (MONO,), name="bdias")


def _motz_nohh_system() -> BudSystem:
    ground = MotzOperad()
    rules = [("1", "H", ("2", "2")), ("1", "UD", ("1", "1", "1"))]
    return BudSystem(ground, ("1", "2"), rules, ("1",), ("1", "2"),
                     name="motz-nohh")


def _aschr_catalan_system() -> BudSystem:
    ground = ASchrOperad()
    rules = [("1", ground.corolla("a"), ("1", "2")),
             ("2", ground.corolla("b"), ("1", "2"))]
    return BudSystem(ground, ("1", "2"), rules, ("1",), ("1", "2"),
                     name="aschr-catalan")


def _unary_binary_system() -> BudSystem:
    spec = CollectionSpec([("a", MONO, (MONO,)), ("b", MONO, (MONO,)),
                           ("c", MONO, (MONO, MONO))], colors=(MONO,))
    ground = FreeOperad(spec)
    rules = [("1", ground.corolla("a"), ("2",)),
             ("1", ground.corolla("b"), ("2",)),
             ("2", ground.corolla("c"), ("1", "1"))]
    return BudSystem(ground, ("1", "2"), rules, ("1",), ("2",),
                     name="unary-binary")


def _btree_system(arities: Sequence[int]) -> BudSystem:
    arities = sorted(set(int(n) for n in arities))
    if not arities or arities[0] < 1:
        raise BudgenError("arities must be positive integers")
    spec = CollectionSpec([("a%d" % n, MONO, (MONO,) * n) for n in arities],
                          colors=(MONO,))
    ground = FreeOperad(spec)
    rules = [(MONO, ground.corolla("a%d" % n), (MONO,) * n) for n in arities]
    return BudSystem(ground, (MONO,), rules, (MONO,), (MONO,), name="btree")


def _bbt_system() -> BudSystem:
    ground = MagOperad()
    c2 = ground.corolla()
    leaf = ground.unit(MONO)
    rules = [("1", c2, ("1", "1")), ("1", c2, ("1", "2")),
             ("1", c2, ("2", "1")), ("2", leaf, ("1",))]
    return BudSystem(ground, ("1", "2"), rules, ("1",), ("1",), name="bbt")


def _tamari_max_trees_system() -> BudSystem:
    ground = MagOperad()
    c2 = ground.corolla()
    leaf = ground.unit(MONO)
    rules = [("1", c2, ("1", "1")), ("1", c2, ("2", "1")),
             ("1", c2, ("3", "2")), ("2", leaf, ("1",)),
             ("3", c2, ("2", "1"))]
    return BudSystem(ground, ("1", "2", "3"), rules, ("1",), ("1",),
                     name="tamari-max-trees")


def _two_label_binary_ground() -> FreeOperad:
    spec = CollectionSpec([("a", MONO, (MONO, MONO)), ("b", MONO, (MONO, MONO))],
                          colors=(MONO,))
    return FreeOperad(spec)


def _tamari_balanced_intervals_system() -> BudSystem:
    ground = _two_label_binary_ground()
    a = ground.corolla("a")
    b = ground.corolla("b")
    unit = ground.unit(MONO)
    rules = [("1", a, ("1", "1")), ("1", a, ("1", "2")), ("1", a, ("2", "1")),
             ("1", b, ("3", "2")), ("2", unit, ("1",)),
             ("3", a, ("1", "1")), ("3", a, ("1", "2"))]
    return BudSystem(ground, ("1", "2", "3"), rules, ("1",), ("1",),
                     name="tamari-balanced-intervals")


def _tamari_max_intervals_system() -> BudSystem:
    ground = _two_label_binary_ground()
    a = ground.corolla("a")
    b = ground.corolla("b")
    unit = ground.unit(MONO)
    rules = [("1", a, ("1", "1")), ("1", a, ("2", "4")), ("1", a, ("5", "2")),
             ("1", b, ("3", "2")), ("2", unit, ("1",)),
             ("3", a, ("1", "1")), ("3", a, ("1", "2")),
             ("4", b, ("3", "2")), ("4", a, ("5", "2")),
             ("5", a, ("2", "4")), ("5", b, ("3", "2"))]
    return BudSystem(ground, ("1", "2", "3", "4", "5"), rules, ("1",), ("1",),
                     name="tamari-max-intervals")


def _hook_mag_system() -> BudSystem:
    ground = MagOperad()
    rules = [(MONO, ground.corolla(), (MONO, MONO))]
    return BudSystem(ground, (MONO,), rules, (MONO,), (MONO,), name="hook-mag")


def _hook_motz_system() -> BudSystem:
    ground = MotzOperad()
    rules = [(MONO, "H", (MONO, MONO)), (MONO, "UD", (MONO, MONO, MONO))]
    return BudSystem(ground, (MONO,), rules, (MONO,), (MONO,), name="hook-motz")


_BUILTIN_ALIASES = {
    "bp": "motz-nohh",
    "bs": "aschr-catalan",
    "bbu": "unary-binary",
    "b1": "tamari-max-trees",
    "b2": "tamari-balanced-intervals",
    "b3": "tamari-max-intervals",
    "bperfect": "btree",
}

BUILTIN_NAMES = ("bdias", "motz-nohh", "aschr-catalan", "unary-binary",
                 "btree", "bbt", "tamari-max-trees",
                 "tamari-balanced-intervals", "tamari-max-intervals",
                 "hook-mag", "hook-motz")


def builtin(name: str, gamma: int | None = None,
            arities: Sequence[int] | None = None) -> BudSystem:
    """Construct a named preset system."""
    name = _BUILTIN_ALIASES.get(name, name)
    if name == "bdias":
        if gamma is None:
            raise BudgenError("bdias needs --gamma")
        return _dias_system(gamma)
    if name == "motz-nohh":
        return _motz_nohh_system()
    if name == "aschr-catalan":
        return _aschr_catalan_system()
    if name == "unary-binary":
        return _unary_binary_system()
    if name == "btree":
        if not arities:
            raise BudgenError("btree needs --arities")
        return _btree_system(arities)
    if name == "bbt":
        return _bbt_system()
    if name == "tamari-max-trees":
        return _tamari_max_trees_system()
    if name == "tamari-balanced-intervals":
        return _tamari_balanced_intervals_system()
    if name == "tamari-max-intervals":
        return _tamari_max_intervals_system()
    if name == "hook-mag":
        return _hook_mag_system()
    if name == "hook-motz":
        return _hook_motz_system()
    raise BudgenError("unknown preset %r" % name)
