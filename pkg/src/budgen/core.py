"""Colored-operad contract, the bud construction, and the shared morphisms.

A colored operad is a graded set of elements, each with one output color
and a nonempty word of input colors.  The partial composition x o_i y is
defined exactly when the output color of y equals the i-th input color
of x.  All values here are immutable and hashable; element identity is
derived from a canonical string serialization.
"""

from __future__ import annotations

from typing import Iterable, Sequence

MONO = "1"  # color token used by every monochrome operad


class BudgenError(Exception):
    """Base class for all library errors."""


class PositionError(BudgenError):
    """Composition position out of range."""


class CompositionError(BudgenError):
    """Composition undefined: output/input color mismatch."""


class DivergenceError(BudgenError):
    """A fixpoint iteration exceeded its certified degree cap."""


class NotGeneratedError(BudgenError):
    """The element is not in the suboperad generated by the given set."""


class Operad:
    """Behavioral contract shared by every concrete operad.

    Subclasses define arity, output/input colors, units, partial
    composition, and a canonical serialization.  Elements are plain
    hashable Python values.
    """

    colors: tuple[str, ...] = (MONO,)

    def arity(self, x) -> int:
        raise NotImplementedError

    def out(self, x) -> str:
        return self.colors[0]

    def ins(self, x) -> tuple[str, ...]:
        return (self.colors[0],) * self.arity(x)

    def in_color(self, x, i: int) -> str:
        return self.ins(x)[i - 1]

    def unit(self, c: str):
        raise NotImplementedError

    def is_unit(self, x) -> bool:
        return self.arity(x) == 1 and x == self.unit(self.out(x))

    def compose(self, x, i: int, y):
        """Partial composition x o_i y (1-based position)."""
        raise NotImplementedError

    def composable(self, x, i: int, y) -> bool:
        if not 1 <= i <= self.arity(x):
            return False
        return self.in_color(x, i) == self.out(y)

    def full_compose(self, x, ys: Sequence):
        """Complete composition: substitute ys[j] at every input of x.

        Equals the right-to-left fold (..((x o_n y_n) o_{n-1} y_{n-1})..) o_1 y_1.
        """
        n = self.arity(x)
        if len(ys) != n:
            raise CompositionError(
                "complete composition needs %d arguments, got %d" % (n, len(ys)))
        result = x
        for i in range(n, 0, -1):
            result = self.compose(result, i, ys[i - 1])
        return result

    def dumps(self, x) -> str:
        raise NotImplementedError

    def loads(self, text: str):
        raise NotImplementedError

    def key(self, x) -> tuple[int, str]:
        """Sort key: (arity, canonical serialization)."""
        return (self.arity(x), self.dumps(x))

    def elements(self, n: int) -> Iterable:
        """Per-arity enumeration; only locally finite operads provide it."""
        raise NotImplementedError

    def _check_position(self, x, i: int) -> None:
        if not 1 <= i <= self.arity(x):
            raise PositionError(
                "position %d out of range 1..%d" % (i, self.arity(x)))

    def _check_colors(self, x, i: int, y) -> None:
        self._check_position(x, i)
        if self.in_color(x, i) != self.out(y):
            raise CompositionError(
                "input color %r at position %d does not match output color %r"
                % (self.in_color(x, i), i, self.out(y)))


class AsOperad(Operad):
    """The associative operad: one element per arity, composition adds arities."""

    def arity(self, x: int) -> int:
        return x

    def unit(self, c: str) -> int:
        if c != MONO:
            raise BudgenError("unknown color %r" % c)
        return 1

    def compose(self, x: int, i: int, y: int) -> int:
        self._check_colors(x, i, y)
        return x + y - 1

    def dumps(self, x: int) -> str:
        return str(x)

    def loads(self, text: str) -> int:
        n = int(text)
        if n < 1:
            raise BudgenError("arity must be >= 1")
        return n

    def elements(self, n: int):
        if n >= 1:
            yield n


def validate_color_token(c: str) -> str:
    if not c or ":" in c or "," in c:
        raise BudgenError("invalid color token %r" % c)
    return c


class BudOperad(Operad):
    """Bud construction over a monochrome ground operad.

    Elements are triples (out, ground element, input-color word); the
    composition acts on the ground and splices the input word.
    """

    def __init__(self, ground: Operad, colors: Sequence[str]):
        if len(ground.colors) != 1:
            raise BudgenError("bud construction requires a monochrome ground operad")
        if not colors:
            raise BudgenError("color set must be nonempty")
        for c in colors:
            validate_color_token(c)
        if len(set(colors)) != len(colors):
            raise BudgenError("duplicate color tokens")
        self.ground = ground
        self.colors = tuple(colors)
        self._colorset = frozenset(colors)

    def element(self, out: str, g, ins: Sequence[str]):
        if out not in self._colorset:
            raise BudgenError("unknown output color %r" % out)
        ins = tuple(ins)
        if len(ins) != self.ground.arity(g):
            raise BudgenError("input word length %d != ground arity %d"
                              % (len(ins), self.ground.arity(g)))
        for c in ins:
            if c not in self._colorset:
                raise BudgenError("unknown input color %r" % c)
        return (out, g, ins)

    def arity(self, x) -> int:
        return len(x[2])

    def out(self, x) -> str:
        return x[0]

    def ins(self, x) -> tuple[str, ...]:
        return x[2]

    def unit(self, c: str):
        if c not in self._colorset:
            raise BudgenError("unknown color %r" % c)
        return (c, self.ground.unit(MONO), (c,))

    def compose(self, x, i: int, y):
        self._check_colors(x, i, y)
        a, g, u = x
        _, h, v = y
        return (a, self.ground.compose(g, i, h), u[:i - 1] + v + u[i:])

    def dumps(self, x) -> str:
        a, g, u = x
        if len(self.colors) == 1:
            return self.ground.dumps(g)
        return "%s:%s:%s" % (a, self.ground.dumps(g), ",".join(u))

    def loads(self, text: str):
        if len(self.colors) == 1:
            c = self.colors[0]
            g = self.ground.loads(text)
            return self.element(c, g, (c,) * self.ground.arity(g))
        a, g_text, u_text = text.split(":")
        g = self.ground.loads(g_text)
        return self.element(a, g, tuple(u_text.split(",")) if u_text else ())

    def elements(self, n: int):
        from itertools import product
        for g in self.ground.elements(n):
            for a in self.colors:
                for u in product(self.colors, repeat=n):
                    yield (a, g, u)


def prune(op: BudOperad, x):
    """Forget the colors of a bud element: (a, g, u) -> g."""
    return x[1]


def colorize(op: BudOperad, x):
    """Keep only the colors of a bud element: (a, g, u) -> (a, *_n, u)."""
    return (x[0], op.arity(x), x[2])


def type_of(u: Sequence[str], colors: Sequence[str]) -> tuple[int, ...]:
    """Count each declared color in the word u, in declaration order."""
    counts = {c: 0 for c in colors}
    for c in u:
        if c not in counts:
            raise BudgenError("color %r not declared" % c)
        counts[c] += 1
    return tuple(counts[c] for c in colors)


def type_deg(alpha: Sequence[int]) -> int:
    return sum(alpha)


def type_add(alpha: Sequence[int], beta: Sequence[int]) -> tuple[int, ...]:
    return tuple(a + b for a, b in zip(alpha, beta))


def dumps_type(alpha: Sequence[int]) -> str:
    return ",".join(str(a) for a in alpha)
