"""Finite group models, conjugacy classes and class power maps.

Four kinds of group are supported: symmetric and alternating groups (handled
through cycle types, never by enumerating the group), finite abelian groups
given by cyclic factors, and arbitrary groups given by a Cayley table.

Conventions
-----------
Permutations act on {0, ..., n-1} and compose as functions, ``(x * y)(i) =
x(y(i))``.  A split S_n class of A_n is labelled ``plus`` for the A_n class
containing the canonical representative (cycles filled with ascending
integers, longest cycle first) and ``minus`` for the other half.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from math import factorial, gcd, lcm, prod
from typing import Any, Callable, Hashable, Iterable, Sequence

import numpy as np

from .partitions import (
    Partition,
    SplitAction,
    is_split_type,
    make_partition,
    parity_is_even,
    partition_order,
    partition_power,
    partitions_of,
)

DEFAULT_CLASS_BOUND = 10**4
# l * L entries; beyond this the power table is not materialised
POWER_TABLE_LIMIT = 5 * 10**7


class GroupBoundError(ValueError):
    """Raised when a group is too large for the requested exhaustive step."""


# ---------------------------------------------------------------------------
# permutations


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"not a bijection: {self.images}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        """Build from 0-based cycles; unlisted points are fixed."""
        images = list(range(n))
        for cyc in cycles:
            for a, b in zip(cyc, tuple(cyc[1:]) + (cyc[0],)):
                images[a] = b
        return cls(tuple(images))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if self.n != other.n:
            raise ValueError("degree mismatch")
        return Permutation(tuple(self.images[j] for j in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def __pow__(self, k: int) -> "Permutation":
        if k < 0:
            return self.inverse() ** (-k)
        images = list(range(self.n))
        for cyc in self.cycles():
            length = len(cyc)
            for idx, a in enumerate(cyc):
                images[a] = cyc[(idx + k) % length]
        return Permutation(tuple(images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Cycles including fixed points, each rotated to start at its minimum."""
        seen = [False] * self.n
        out = []
        for start in range(self.n):
            if seen[start]:
                continue
            cyc = []
            i = start
            while not seen[i]:
                seen[i] = True
                cyc.append(i)
                i = self.images[i]
            out.append(tuple(cyc))
        return out

    def cycle_type(self) -> Partition:
        return make_partition(len(c) for c in self.cycles())

    def sign(self) -> int:
        return -1 if (self.n - len(self.cycles())) % 2 else 1

    def order(self) -> int:
        return partition_order(self.cycle_type())

    def __repr__(self) -> str:
        cyc = [c for c in self.cycles() if len(c) > 1]
        if not cyc:
            return f"Permutation(id, n={self.n})"
        body = "".join("(" + " ".join(str(i + 1) for i in c) + ")" for c in cyc)
        return f"Permutation({body}, n={self.n})"


def canonical_representative(p: Partition) -> Permutation:
    """Permutation of type p with cycles filled by ascending integers."""
    cycles = []
    start = 0
    for part in p:
        cycles.append(tuple(range(start, start + part)))
        start += part
    return Permutation.from_cycles(start, cycles)


def canonical_conjugator(x: Permutation, y: Permutation) -> Permutation | None:
    """A permutation tau with tau * x * tau**-1 == y, or None.

    Cycles of both permutations are matched longest first, ties broken by
    smallest element, and each cycle is read starting from its minimum.
    """
    if x.n != y.n:
        raise ValueError(f"degree mismatch: {x.n} vs {y.n}")

    def ordered(perm):
        return sorted(perm.cycles(), key=lambda c: (-len(c), c[0]))

    cx, cy = ordered(x), ordered(y)
    if [len(c) for c in cx] != [len(c) for c in cy]:
        return None
    tau = [0] * x.n
    for a, b in zip(cx, cy):
        for u, v in zip(a, b):
            tau[u] = v
    return Permutation(tuple(tau))


def conjugator_sign(x: Permutation, y: Permutation) -> int | None:
    tau = canonical_conjugator(x, y)
    return None if tau is None else tau.sign()


def an_split_test(p: Partition) -> bool:
    """Whether the even cycle type p has all parts odd and distinct."""
    return is_split_type(p)


@lru_cache(maxsize=None)
def an_power_action(p: Partition, exp: int) -> SplitAction:
    """How x -> x**exp permutes the two A_n halves of the split class p.

    Since the S_n-centralizer of a split element lies in A_n, every
    conjugator carrying x to x**exp has the same sign, so the canonical one
    decides.
    """
    p = make_partition(p)
    if not an_split_test(p):
        raise ValueError(f"{list(p)} does not split in A_n")
    if gcd(exp, partition_order(p)) != 1:
        raise ValueError(f"exponent {exp} is not coprime to {partition_order(p)}")
    x = canonical_representative(p)
    s = conjugator_sign(x, x ** exp)
    return SplitAction.IDENTITY if s == 1 else SplitAction.EXCHANGE


# ---------------------------------------------------------------------------
# group models


@dataclass(frozen=True)
class ConjClass:
    id: int
    descriptor: Any
    size: int
    order: int
    rep: Any = field(repr=False, compare=False, default=None)
    tag: str | None = None  # plus / minus / nonsplit for alternating groups
    members: tuple = field(repr=False, compare=False, default=())  # table groups only

    @property
    def partition(self) -> Partition | None:
        """Cycle type, for classes of symmetric and alternating groups."""
        if self.tag is not None:
            return self.descriptor[0]
        return self.descriptor if isinstance(self.rep, Permutation) else None

    def label(self) -> str:
        d = self.descriptor
        if self.tag is not None:
            p, tag = d
            return f"{list(p)}" + ("" if tag == "nonsplit" else ("+" if tag == "plus" else "-"))
        return str(list(d)) if isinstance(d, tuple) else str(d)

    def descriptor_json(self) -> Any:
        d = self.descriptor
        if self.tag is not None:
            return {"partition": list(d[0]), "split": d[1]}
        if isinstance(d, tuple):
            return list(d)
        return d


@dataclass(frozen=True)
class ClassPowerTable:
    """d[j, r] is the class of x_j**r, for 0 <= r < period."""

    d: np.ndarray
    orders: tuple[int, ...]

    @property
    def l(self) -> int:
        return self.d.shape[0]

    @property
    def period(self) -> int:
        return self.d.shape[1]

    def power(self, j: int, r: int) -> int:
        return int(self.d[j, r % self.period])


@dataclass(frozen=True, eq=False)
class FiniteGroupModel:
    kind: str
    n: int = 0
    factors: tuple[int, ...] = ()
    elements: tuple[Hashable, ...] = ()
    mul: tuple[tuple[int, ...], ...] = ()
    identity: int = 0
    name: str | None = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def symmetric(cls, n: int) -> "FiniteGroupModel":
        if n < 1:
            raise ValueError("symmetric group needs n >= 1")
        return cls("symmetric", n=n)

    @classmethod
    def alternating(cls, n: int) -> "FiniteGroupModel":
        if n < 1:
            raise ValueError("alternating group needs n >= 1")
        return cls("alternating", n=n)

    @classmethod
    def abelian(cls, factors: Iterable[int]) -> "FiniteGroupModel":
        factors = tuple(int(f) for f in factors)
        if any(f < 2 for f in factors):
            raise ValueError(f"abelian factors must be >= 2, got {list(factors)}")
        return cls("abelian", factors=factors)

    @classmethod
    def table(cls, elements: Sequence[Hashable], mul: Sequence[Sequence[Hashable]],
              identity: Hashable, name: str | None = None, check: bool = True) -> "FiniteGroupModel":
        """Group from a Cayley table whose entries are element ids."""
        elements = tuple(elements)
        index = {e: i for i, e in enumerate(elements)}
        if len(index) != len(elements):
            raise ValueError("duplicate element ids")
        try:
            table = tuple(tuple(index[v] for v in row) for row in mul)
            ident = index[identity]
        except KeyError as exc:
            raise ValueError(f"unknown element id {exc.args[0]!r}") from None
        g = cls("table", elements=elements, mul=table, identity=ident, name=name)
        if check:
            validate_table(g)
        return g

    def __eq__(self, other):
        if not isinstance(other, FiniteGroupModel):
            return NotImplemented
        return self.to_json() == other.to_json()

    def __hash__(self):
        return hash(json.dumps(self.to_json(), sort_keys=True))

    # -- serialisation ------------------------------------------------------

    def to_json(self) -> dict:
        if self.kind in ("symmetric", "alternating"):
            return {"type": self.kind, "n": self.n}
        if self.kind == "abelian":
            return {"type": "abelian", "factors": list(self.factors)}
        out = {
            "type": "table",
            "elements": list(self.elements),
            "mul": [[self.elements[v] for v in row] for row in self.mul],
            "identity": self.elements[self.identity],
        }
        if self.name:
            out["name"] = self.name
        return out

    @classmethod
    def from_json(cls, data: dict) -> "FiniteGroupModel":
        if not isinstance(data, dict) or "type" not in data:
            raise ValueError("group spec must be an object with a 'type' key")
        kind = data["type"]
        if kind == "symmetric":
            return cls.symmetric(int(data["n"]))
        if kind == "alternating":
            return cls.alternating(int(data["n"]))
        if kind == "abelian":
            return cls.abelian(data["factors"])
        if kind == "table":
            return cls.table(data["elements"], data["mul"], data["identity"], name=data.get("name"))
        raise ValueError(f"unknown group type {kind!r}")

    def describe(self) -> str:
        if self.kind == "symmetric":
            return f"S_{self.n}"
        if self.kind == "alternating":
            return f"A_{self.n}"
        if self.kind == "abelian":
            return " x ".join(f"Z/{f}" for f in self.factors) or "trivial"
        return self.name or f"table group of order {len(self.elements)}"

    # -- basic group structure ------------------------------------------------

    @cached_property
    def order(self) -> int:
        if self.kind == "symmetric":
            return factorial(self.n)
        if self.kind == "alternating":
            return max(1, factorial(self.n) // 2)
        if self.kind == "abelian":
            return prod(self.factors)
        return len(self.elements)

    def identity_element(self):
        if self.kind in ("symmetric", "alternating"):
            return Permutation.identity(self.n)
        if self.kind == "abelian":
            return (0,) * len(self.factors)
        return self.identity

    def multiply(self, a, b):
        if self.kind in ("symmetric", "alternating"):
            return a * b
        if self.kind == "abelian":
            return tuple((x + y) % f for x, y, f in zip(a, b, self.factors))
        return self.mul[a][b]

    def inverse(self, a):
        if self.kind in ("symmetric", "alternating"):
            return a.inverse()
        if self.kind == "abelian":
            return tuple((-x) % f for x, f in zip(a, self.factors))
        return self._inverses[a]

    @cached_property
    def _inverses(self) -> tuple[int, ...]:
        inv = [None] * len(self.elements)
        for a, row in enumerate(self.mul):
            inv[a] = row.index(self.identity)
        return tuple(inv)

    def power(self, a, k: int):
        if self.kind in ("symmetric", "alternating"):
            return a ** k
        if self.kind == "abelian":
            return tuple((k * x) % f for x, f in zip(a, self.factors))
        if k < 0:
            a, k = self.inverse(a), -k
        result, base = self.identity, a
        while k:
            if k & 1:
                result = self.mul[result][base]
            base = self.mul[base][base]
            k >>= 1
        return result

    def element_list(self, bound: int = 10**6) -> list:
        """All elements in a fixed order (refuses groups above bound)."""
        if self.order > bound:
            raise GroupBoundError(f"{self.describe()} has {self.order} elements > {bound}")
        if self.kind == "symmetric":
            return [Permutation(p) for p in itertools.permutations(range(self.n))]
        if self.kind == "alternating":
            perms = (Permutation(p) for p in itertools.permutations(range(self.n)))
            return [p for p in perms if p.sign() == 1]
        if self.kind == "abelian":
            return list(itertools.product(*(range(f) for f in self.factors)))
        return list(range(len(self.elements)))

    # -- cached class data ----------------------------------------------------

    @cached_property
    def classes(self) -> list[ConjClass]:
        return conjugacy_classes(self)

    @cached_property
    def power_table(self) -> ClassPowerTable:
        return class_power_table(self, self.classes)

    @cached_property
    def exponent(self) -> int:
        return lcm(*(c.order for c in self.classes))

    @cached_property
    def _class_lookup(self) -> dict:
        if self.kind == "symmetric":
            return {c.descriptor: c.id for c in self.classes}
        if self.kind == "alternating":
            return {c.descriptor: c.id for c in self.classes}
        out = {}
        if self.kind == "abelian":
            for c in self.classes:
                out[c.descriptor] = c.id
            return out
        for c in self.classes:
            for e in c.members:
                out[e] = c.id
        return out

    def class_of(self, element) -> int:
        """Class id of a group element."""
        if self.kind == "symmetric":
            return self._class_lookup[element.cycle_type()]
        if self.kind == "alternating":
            if element.sign() != 1:
                raise ValueError(f"{element} is not in A_{self.n}")
            p = element.cycle_type()
            if (p, "nonsplit") in self._class_lookup:
                return self._class_lookup[(p, "nonsplit")]
            s = conjugator_sign(canonical_representative(p), element)
            return self._class_lookup[(p, "plus" if s == 1 else "minus")]
        return self._class_lookup[element]

    def identity_class(self) -> int:
        return self.class_of(self.identity_element())


def validate_table(g: FiniteGroupModel) -> None:
    """Exhaustive group-axiom check of a Cayley table."""
    size = len(g.elements)
    m = np.array(g.mul, dtype=np.int64)
    if m.shape != (size, size):
        raise ValueError(f"mul must be {size}x{size}, got {m.shape}")
    if size == 0:
        raise ValueError("empty group")
    if m.min() < 0 or m.max() >= size:
        raise ValueError("mul entries out of range")
    e = g.identity
    ar = np.arange(size)
    if not (np.array_equal(m[e], ar) and np.array_equal(m[:, e], ar)):
        raise ValueError("identity element does not act trivially")
    for row in m:
        if len(set(row.tolist())) != size:
            raise ValueError("mul is not a Latin square (missing inverses)")
    for a in range(size):
        # (a b) c == a (b c) for all b, c
        if not np.array_equal(m[m[a]], m[a][m]):
            raise ValueError("mul is not associative")


# ---------------------------------------------------------------------------
# conjugacy classes


def _centralizer_order(p: Partition) -> int:
    from collections import Counter

    return prod(part**mult * factorial(mult) for part, mult in Counter(p).items())


def conjugacy_classes(g: FiniteGroupModel, bound: int = DEFAULT_CLASS_BOUND) -> list[ConjClass]:
    """Complete list of conjugacy classes; class 0 is always the identity."""
    if g.kind == "symmetric":
        n = g.n
        return [
            ConjClass(i, p, factorial(n) // _centralizer_order(p), partition_order(p),
                      rep=canonical_representative(p))
            for i, p in enumerate(partitions_of(n))
        ]
    if g.kind == "alternating":
        return _alternating_classes(g.n)
    if g.order > bound:
        raise GroupBoundError(f"{g.describe()} has order {g.order} > bound {bound}")
    if g.kind == "abelian":
        return [
            ConjClass(i, e, 1, lcm(*(f // gcd(x, f) for x, f in zip(e, g.factors))) if e else 1, rep=e)
            for i, e in enumerate(g.element_list())
        ]
    return _table_classes(g)


def _alternating_classes(n: int) -> list[ConjClass]:
    out = []
    for p in partitions_of(n):
        if not parity_is_even(p):
            continue
        size = factorial(n) // _centralizer_order(p)
        rep = canonical_representative(p)
        order = partition_order(p)
        if size > 1 and is_split_type(p):
            minus_rep = _odd_conjugate(rep)
            out.append(ConjClass(len(out), (p, "plus"), size // 2, order, rep=rep, tag="plus"))
            out.append(ConjClass(len(out), (p, "minus"), size // 2, order, rep=minus_rep, tag="minus"))
        else:
            out.append(ConjClass(len(out), (p, "nonsplit"), size, order, rep=rep, tag="nonsplit"))
    return out


def _odd_conjugate(x: Permutation) -> Permutation:
    t = Permutation.from_cycles(x.n, [(0, 1)])
    return t * x * t


def _table_classes(g: FiniteGroupModel) -> list[ConjClass]:
    size = len(g.elements)
    inv = g._inverses
    assigned = [-1] * size
    groups: list[list[int]] = []
    for x in range(size):
        if assigned[x] >= 0:
            continue
        members = sorted({g.mul[g.mul[h][x]][inv[h]] for h in range(size)})
        for m in members:
            assigned[m] = len(groups)
        groups.append(members)
    # identity class first, then by smallest member
    groups.sort(key=lambda ms: (g.identity not in ms, ms[0]))
    out = []
    for i, members in enumerate(groups):
        rep = members[0]
        out.append(ConjClass(i, rep, len(members), _table_element_order(g, rep),
                             rep=rep, members=tuple(members)))
    return out


def _table_element_order(g: FiniteGroupModel, x: int) -> int:
    k, y = 1, x
    while y != g.identity:
        y = g.mul[y][x]
        k += 1
    return k


def element_order(g: FiniteGroupModel, element) -> int:
    """Least k >= 1 with element**k == identity."""
    if g.kind in ("symmetric", "alternating"):
        return element.order()
    if g.kind == "abelian":
        return lcm(*(f // gcd(x, f) for x, f in zip(element, g.factors))) if element else 1
    return _table_element_order(g, element)


# ---------------------------------------------------------------------------
# power maps


def class_power_table(g: FiniteGroupModel, classes: Sequence[ConjClass] | None = None) -> ClassPowerTable:
    """Tabulate d[j, r] = class of x_j**r for r in 0..exponent-1."""
    classes = g.classes if classes is None else classes
    orders = tuple(c.order for c in classes)
    period = lcm(*orders)
    if len(classes) * period > POWER_TABLE_LIMIT:
        raise GroupBoundError(
            f"power table of {g.describe()} needs {len(classes)}x{period} entries")
    d = np.empty((len(classes), period), dtype=np.int64)
    if g.kind in ("symmetric", "alternating"):
        lookup = {c.descriptor: c.id for c in classes}
        for c in classes:
            row = [_cycle_type_power_class(g, c, r, lookup) for r in range(c.order)]
            d[c.id] = np.tile(row, period // c.order)
    else:
        for c in classes:
            row = []
            y = g.identity_element()
            for _ in range(c.order):
                row.append(g.class_of(y))
                y = g.multiply(y, c.rep)
            d[c.id] = np.tile(row, period // c.order)
    d.setflags(write=False)
    return ClassPowerTable(d, orders)


def _cycle_type_power_class(g, c: ConjClass, r: int, lookup: dict) -> int:
    if g.kind == "symmetric":
        return lookup[partition_power(c.descriptor, r)]
    p, tag = c.descriptor
    q = partition_power(p, r)
    if (q, "nonsplit") in lookup:
        return lookup[(q, "nonsplit")]
    # a split class only powers into a split class when r is coprime to
    # its order, and then back into the same S_n class
    assert q == p and gcd(r, c.order) == 1
    action = an_power_action(p, r % c.order)
    if action is SplitAction.IDENTITY:
        return c.id
    return lookup[(p, "minus" if tag == "plus" else "plus")]


def adams_pullback(g: FiniteGroupModel, f: Sequence, k: int) -> list:
    """(psi^k f)(class j) = f(class of x_j**k)."""
    table = g.power_table
    if len(f) != table.l:
        raise ValueError(f"class function has {len(f)} entries, group has {table.l} classes")
    if k < 0:
        raise ValueError("Adams operations are indexed by k >= 0")
    return [f[table.power(j, k)] for j in range(table.l)]


# ---------------------------------------------------------------------------
# builders for table groups


def table_from_operation(elements: Sequence, op: Callable, identity, name: str | None = None) -> FiniteGroupModel:
    """Cayley table of a finite set closed under op; ids are 0..len-1."""
    index = {e: i for i, e in enumerate(elements)}
    mul = [[index[op(a, b)] for b in elements] for a in elements]
    return FiniteGroupModel.table(list(range(len(elements))), mul, index[identity], name=name)


def permutation_group(generators: Sequence[Permutation], name: str | None = None) -> FiniteGroupModel:
    """Table model of the permutation group generated by the given permutations."""
    n = generators[0].n
    ident = Permutation.identity(n)
    seen = {ident: None}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for s in generators:
                y = s * x
                if y not in seen:
                    seen[y] = None
                    nxt.append(y)
        frontier = nxt
    elements = sorted(seen, key=lambda p: p.images)
    return table_from_operation(elements, lambda a, b: a * b, ident, name=name)


def cyclic_table(m: int) -> FiniteGroupModel:
    return table_from_operation(list(range(m)), lambda a, b: (a + b) % m, 0, name=f"Z/{m}")


def dihedral_table(m: int) -> FiniteGroupModel:
    """Dihedral group of order 2m as symmetries of an m-gon."""
    if m < 2:
        raise ValueError("dihedral group needs m >= 2")
    if m == 2:
        return to_table(FiniteGroupModel.abelian([2, 2]), name="D_2")
    rot = Permutation(tuple((i + 1) % m for i in range(m)))
    ref = Permutation(tuple((-i) % m for i in range(m)))
    return permutation_group([rot, ref], name=f"D_{m}")


def quaternion_table() -> FiniteGroupModel:
    # unit quaternions +-1, +-i, +-j, +-k as (sign, basis index)
    basis_mul = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }

    def op(a, b):
        s, c = basis_mul[(a[1], b[1])]
        return (a[0] * b[0] * s, c)

    elements = [(s, c) for c in range(4) for s in (1, -1)]
    return table_from_operation(elements, op, (1, 0), name="Q_8")


def to_table(g: FiniteGroupModel, name: str | None = None, bound: int = DEFAULT_CLASS_BOUND) -> FiniteGroupModel:
    """Re-express any model as a Cayley-table model."""
    elements = g.element_list(bound)
    return table_from_operation(elements, g.multiply, g.identity_element(), name=name or g.describe())


def direct_product(g: FiniteGroupModel, h: FiniteGroupModel, bound: int = DEFAULT_CLASS_BOUND) -> FiniteGroupModel:
    """Table model of g x h; element i * |h| + j is the pair (g_i, h_j)."""
    if g.order * h.order > bound:
        raise GroupBoundError(f"|G x H| = {g.order * h.order} exceeds {bound}")
    ge, he = g.element_list(), h.element_list()
    gi = {e: i for i, e in enumerate(ge)}
    hi = {e: i for i, e in enumerate(he)}
    nh = len(he)
    size = len(ge) * nh
    mul = []
    for a in range(size):
        a1, a2 = divmod(a, nh)
        row = []
        for b in range(size):
            b1, b2 = divmod(b, nh)
            row.append(gi[g.multiply(ge[a1], ge[b1])] * nh + hi[h.multiply(he[a2], he[b2])])
        mul.append(row)
    ident = gi[g.identity_element()] * nh + hi[h.identity_element()]
    return FiniteGroupModel.table(list(range(size)), mul, ident,
                                  name=f"{g.describe()} x {h.describe()}", check=False)
