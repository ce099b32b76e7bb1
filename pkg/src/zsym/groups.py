"""Finite abelian groups as products of cyclic factors, their characters and automorphisms.

``Z2xZ2`` is the featured instance; its elements are named ``e, a, b, c``
with ``a = (1, 0)``, ``b = (0, 1)``, ``c = ab = (1, 1)``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, reduce
from math import lcm, prod

from .exact import ONE, I, GaussianRational

__all__ = [
    "AbGroup",
    "GroupElt",
    "Character",
    "GroupAut",
    "UnsupportedFieldError",
    "Z2",
    "Z4",
    "Z2xZ2",
    "E",
    "A",
    "B",
    "C",
    "multiply",
    "characters",
    "automorphisms",
    "subgroup_generated",
    "z2z2",
]


class UnsupportedFieldError(ValueError):
    """Character values would leave Q(i) (group exponent does not divide 4)."""


@dataclass(frozen=True, slots=True)
class GroupElt:
    coords: tuple[int, ...]

    def __repr__(self):
        return f"GroupElt{self.coords}"


_Z2Z2_NAMES = {(0, 0): "e", (1, 0): "a", (0, 1): "b", (1, 1): "c"}
_Z2Z2_BY_NAME = {v: k for k, v in _Z2Z2_NAMES.items()}


@dataclass(frozen=True)
class AbGroup:
    cyclic_orders: tuple[int, ...]

    def __post_init__(self):
        orders = tuple(int(r) for r in self.cyclic_orders)
        if any(r < 1 for r in orders):
            raise ValueError(f"cyclic orders must be positive: {orders}")
        object.__setattr__(self, "cyclic_orders", orders)

    @property
    def rank(self) -> int:
        return len(self.cyclic_orders)

    @property
    def order(self) -> int:
        return prod(self.cyclic_orders)

    @property
    def exponent(self) -> int:
        return reduce(lcm, self.cyclic_orders, 1)

    @property
    def identity(self) -> GroupElt:
        return GroupElt((0,) * self.rank)

    @cached_property
    def elements(self) -> tuple[GroupElt, ...]:
        if self.is_z2z2():
            return tuple(GroupElt(_Z2Z2_BY_NAME[s]) for s in "eabc")
        return tuple(GroupElt(t) for t in itertools.product(*(range(r) for r in self.cyclic_orders)))

    def generators(self) -> tuple[GroupElt, ...]:
        return tuple(GroupElt(tuple(int(i == k) for i in range(self.rank))) for k in range(self.rank))

    def is_z2z2(self) -> bool:
        return self.cyclic_orders == (2, 2)

    def check(self, x: GroupElt) -> GroupElt:
        if len(x.coords) != self.rank:
            raise ValueError(f"element {x} has arity {len(x.coords)}, group has rank {self.rank}")
        if any(not 0 <= c < r for c, r in zip(x.coords, self.cyclic_orders)):
            raise ValueError(f"element {x} out of residue range {self.cyclic_orders}")
        return x

    def mul(self, x: GroupElt, y: GroupElt) -> GroupElt:
        return multiply(self, x, y)

    def inverse(self, x: GroupElt) -> GroupElt:
        return GroupElt(tuple((-c) % r for c, r in zip(x.coords, self.cyclic_orders)))

    def power(self, x: GroupElt, k: int) -> GroupElt:
        return GroupElt(tuple((c * k) % r for c, r in zip(x.coords, self.cyclic_orders)))

    def element_order(self, x: GroupElt) -> int:
        k = 1
        while self.power(x, k) != self.identity:
            k += 1
        return k

    def name(self, x: GroupElt) -> str:
        if self.is_z2z2():
            return _Z2Z2_NAMES[x.coords]
        return "(" + ",".join(str(c) for c in x.coords) + ")"

    def parse(self, s: str) -> GroupElt:
        if self.is_z2z2() and s in _Z2Z2_BY_NAME:
            return GroupElt(_Z2Z2_BY_NAME[s])
        body = s.strip().strip("()")
        coords = tuple(int(t) for t in body.split(",")) if body else ()
        return self.check(GroupElt(coords))

    def __repr__(self):
        return "AbGroup(" + "x".join(f"Z{r}" for r in self.cyclic_orders) + ")"


Z2 = AbGroup((2,))
Z4 = AbGroup((4,))
Z2xZ2 = AbGroup((2, 2))
E, A, B, C = (GroupElt(t) for t in ((0, 0), (1, 0), (0, 1), (1, 1)))


def z2z2(name: str) -> GroupElt:
    return GroupElt(_Z2Z2_BY_NAME[name])


def multiply(g: AbGroup, x: GroupElt, y: GroupElt) -> GroupElt:
    g.check(x)
    g.check(y)
    return GroupElt(tuple((p + q) % r for p, q, r in zip(x.coords, y.coords, g.cyclic_orders)))


# --------------------------------------------------------------------------
# characters

_ROOTS = {
    1: (ONE,),
    2: (ONE, -ONE),
    4: (ONE, I, -ONE, -I),
}


def _root(r: int, k: int) -> GaussianRational:
    try:
        return _ROOTS[r][k % r]
    except KeyError:
        raise UnsupportedFieldError(f"{r}-th roots of unity are not in Q(i)") from None


@dataclass(frozen=True)
class Character:
    """A homomorphism ``P -> C*`` given by its values on the cyclic generators."""

    values_on_generators: tuple[GaussianRational, ...]

    def __call__(self, x: GroupElt) -> GaussianRational:
        out = ONE
        for v, c in zip(self.values_on_generators, x.coords):
            out = out * v**c
        return out

    def is_trivial(self) -> bool:
        return all(v == ONE for v in self.values_on_generators)

    def __mul__(self, other: Character) -> Character:
        return Character(tuple(u * v for u, v in zip(self.values_on_generators, other.values_on_generators)))


def characters(g: AbGroup) -> list[Character]:
    """All ``|g|`` characters; the k-th character sends generator i to ``zeta_{r_i}^{k_i}``."""
    if 4 % g.exponent:
        raise UnsupportedFieldError(f"exponent {g.exponent} does not divide 4; characters leave Q(i)")
    out = []
    for ks in itertools.product(*(range(r) for r in g.cyclic_orders)):
        out.append(Character(tuple(_root(r, k) for r, k in zip(g.cyclic_orders, ks))))
    return out


# --------------------------------------------------------------------------
# automorphisms


@dataclass(frozen=True)
class GroupAut:
    """Endomorphism determined by the images of the cyclic generators."""

    group: AbGroup
    images_of_generators: tuple[GroupElt, ...]

    def __call__(self, x: GroupElt) -> GroupElt:
        g = self.group
        out = g.identity
        for img, c in zip(self.images_of_generators, x.coords):
            out = multiply(g, out, g.power(img, c))
        return out

    def is_well_defined(self) -> bool:
        g = self.group
        return all(g.power(img, r) == g.identity for img, r in zip(self.images_of_generators, g.cyclic_orders))

    def is_bijective(self) -> bool:
        return len({self(x) for x in self.group.elements}) == self.group.order

    def compose(self, other: GroupAut) -> GroupAut:
        """``self o other``."""
        return GroupAut(self.group, tuple(self(img) for img in other.images_of_generators))

    def inverse(self) -> GroupAut:
        table = {self(x): x for x in self.group.elements}
        return GroupAut(self.group, tuple(table[gen] for gen in self.group.generators()))

    @classmethod
    def identity(cls, g: AbGroup) -> GroupAut:
        return cls(g, g.generators())

    @classmethod
    def from_map(cls, g: AbGroup, mapping: dict) -> GroupAut:
        """Build from an element map, e.g. ``{"a": "c", "b": "a"}`` on Z2xZ2 (names allowed)."""
        m = {}
        for k, v in mapping.items():
            kk = g.parse(k) if isinstance(k, str) else k
            vv = g.parse(v) if isinstance(v, str) else v
            m[kk] = vv
        images = tuple(m.get(gen, gen) for gen in g.generators())
        aut = cls(g, images)
        for k, v in m.items():
            if aut(k) != v:
                raise ValueError(f"mapping {mapping} is not a homomorphism")
        if not (aut.is_well_defined() and aut.is_bijective()):
            raise ValueError(f"mapping {mapping} is not an automorphism")
        return aut

    def as_dict(self) -> dict[GroupElt, GroupElt]:
        return {x: self(x) for x in self.group.elements}

    def __eq__(self, other):
        if not isinstance(other, GroupAut):
            return NotImplemented
        return self.group == other.group and self.as_dict() == other.as_dict()

    def __hash__(self):
        return hash(tuple(sorted((x.coords, y.coords) for x, y in self.as_dict().items())))


def automorphisms(g: AbGroup) -> list[GroupAut]:
    """All automorphisms, by enumerating generator images (fine for ``|g| <= 16``)."""
    if g.order > 16:
        raise ValueError("automorphism enumeration is limited to groups of order <= 16")
    out = []
    for imgs in itertools.product(g.elements, repeat=g.rank):
        aut = GroupAut(g, tuple(imgs))
        if aut.is_well_defined() and aut.is_bijective():
            out.append(aut)
    return out


def subgroup_generated(g: AbGroup, elts) -> frozenset[GroupElt]:
    gens = [g.check(x) for x in elts]
    seen = {g.identity}
    frontier = [g.identity]
    while frontier:
        x = frontier.pop()
        for s in gens:
            y = multiply(g, x, s)
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return frozenset(seen)
