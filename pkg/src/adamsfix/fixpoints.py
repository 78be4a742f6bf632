"""The group A(G) of power-compatible class functions.

A nonzero class function f with f(x**k) == f(x)**k for every x and k takes
values in the N-th roots of unity, N the exponent of G.  Writing
f(c_j) = exp(2 pi i e_j / N) turns the defining relations into the linear
congruences

    ord_j * e_j == 0            (mod N)
    e_{d[j][k]} == k * e_j      (mod N)   for 0 <= k < N

so A(G) is the kernel of an integer matrix modulo N.  ``solve_fixed_points``
computes that kernel exactly; ``brute_force_fixed_points`` enumerates it by
search and is kept independent of the lattice code so the two can be
compared.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd, lcm, prod
from typing import Callable, Iterable, Iterator, Mapping, Sequence

import numpy as np
from sympy import factorint

from .analytic import psi_series_coefficients
from .groups import FiniteGroupModel, GroupBoundError, direct_product
from .lattice import congruence_kernel

DEFAULT_GUARD = 10**7


@dataclass(frozen=True)
class CyclotomicClassFunction:
    """Class function with values exp(2 pi i * exps[j] / modulus)."""

    modulus: int
    exps: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "exps", tuple(int(e) % self.modulus for e in self.exps))

    @classmethod
    def one(cls, g: FiniteGroupModel) -> "CyclotomicClassFunction":
        return cls(g.exponent, (0,) * len(g.classes))

    def values(self) -> np.ndarray:
        return np.exp(2j * np.pi * np.array(self.exps, dtype=float) / self.modulus)

    def __mul__(self, other: "CyclotomicClassFunction") -> "CyclotomicClassFunction":
        if self.modulus != other.modulus or len(self.exps) != len(other.exps):
            raise ValueError("class functions live on different groups")
        return CyclotomicClassFunction(self.modulus, tuple(a + b for a, b in zip(self.exps, other.exps)))

    def __pow__(self, k: int) -> "CyclotomicClassFunction":
        return CyclotomicClassFunction(self.modulus, tuple(k * e for e in self.exps))

    def inverse(self) -> "CyclotomicClassFunction":
        return self ** -1

    def order(self) -> int:
        return self.modulus // gcd(self.modulus, *self.exps)

    def to_json(self) -> dict:
        return {"modulus": self.modulus, "exps": {str(j): e for j, e in enumerate(self.exps)}}

    @classmethod
    def from_json(cls, data: Mapping) -> "CyclotomicClassFunction":
        exps = data["exps"]
        if isinstance(exps, Mapping):
            size = 1 + max(int(k) for k in exps) if exps else 0
            vec = [0] * size
            for k, v in exps.items():
                vec[int(k)] = int(v)
            exps = vec
        return cls(int(data["modulus"]), tuple(exps))


@dataclass(frozen=True, eq=False)
class FixedPointGroup:
    group: FiniteGroupModel
    invariant_factors: tuple[int, ...]
    generators: tuple[CyclotomicClassFunction, ...]
    zero_solution: bool = field(default=True)

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)

    def elements(self, limit: int = 10**6) -> Iterator[CyclotomicClassFunction]:
        if self.order > limit:
            raise GroupBoundError(f"|A(G)| = {self.order} exceeds {limit}")
        one = CyclotomicClassFunction.one(self.group)
        for powers in itertools.product(*(range(d) for d in self.invariant_factors)):
            f = one
            for gen, k in zip(self.generators, powers):
                f = f * gen ** k
            yield f

    def to_json(self) -> dict:
        return {
            "group": self.group.to_json(),
            "classes": [c.descriptor_json() for c in self.group.classes],
            "invariant_factors": list(self.invariant_factors),
            "generators": [gen.to_json() for gen in self.generators],
            "zero_solution": self.zero_solution,
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "FixedPointGroup":
        g = FiniteGroupModel.from_json(data["group"])
        gens = tuple(CyclotomicClassFunction.from_json(x) for x in data["generators"])
        return cls(g, tuple(data["invariant_factors"]), gens, bool(data.get("zero_solution", True)))


# ---------------------------------------------------------------------------
# constraints and membership


def constraint_rows(g: FiniteGroupModel) -> Iterator[list[int]]:
    """Integer rows r with r . e == 0 (mod N) cutting out A(G)."""
    table = g.power_table
    l = table.l
    for c in g.classes:
        row = [0] * l
        row[c.id] = c.order
        yield row
    for j in range(l):
        for k in range(table.period):
            row = [0] * l
            row[table.power(j, k)] += 1
            row[j] -= k
            yield row


def membership_violations(g: FiniteGroupModel, f: CyclotomicClassFunction) -> list[tuple[int, int]]:
    """Pairs (class j, exponent k) where f(x_j**k) != f(x_j)**k."""
    table = g.power_table
    if len(f.exps) != table.l:
        raise ValueError("class function does not match the group's classes")
    N = f.modulus
    # d[j][k] has period L in k and k * e_j has period dividing N
    span = lcm(table.period, N)
    bad = []
    for j in range(table.l):
        for k in range(span):
            if (f.exps[table.power(j, k)] - k * f.exps[j]) % N:
                bad.append((j, k))
    return bad


def is_member(g: FiniteGroupModel, f: CyclotomicClassFunction) -> bool:
    return not membership_violations(g, f)


def series_defect(g: FiniteGroupModel, values: Sequence[complex], order: int) -> float:
    """max |Psi_t(f) - f| over classes and coefficients of t^0..t^order."""
    values = np.asarray(values, dtype=complex)
    worst = 0.0
    for j in range(len(g.classes)):
        psi = psi_series_coefficients(g, values, j, order)
        target = np.zeros(order + 1, dtype=complex)
        target[0] = values[j]
        worst = max(worst, float(np.max(np.abs(psi - target))))
    return worst


def is_fixed_point(g: FiniteGroupModel, f: CyclotomicClassFunction,
                   order: int = 30, tol: float = 1e-10) -> bool:
    """Both the congruence relations and the truncated series identity hold."""
    if order < 2:
        raise ValueError("order must be at least 2")
    return is_member(g, f) and series_defect(g, f.values(), order) <= tol


# ---------------------------------------------------------------------------
# exact solver


def solve_fixed_points(g: FiniteGroupModel) -> FixedPointGroup:
    N = g.exponent
    kernel = congruence_kernel(constraint_rows(g), N, len(g.classes))
    gens = tuple(CyclotomicClassFunction(N, v) for v in kernel.generators)
    return FixedPointGroup(g, kernel.orders, gens)


# ---------------------------------------------------------------------------
# brute-force oracle


def enumerate_members(g: FiniteGroupModel, guard: int = DEFAULT_GUARD) -> list[tuple[int, ...]]:
    """Every exponent vector in A(G), by exhaustive depth-first search.

    Candidates for class j are the ord_j-th roots of unity; a partial
    assignment is dropped as soon as some relation between two assigned
    classes fails.
    """
    classes = g.classes
    space = prod(c.order for c in classes)
    if space > guard:
        raise GroupBoundError(f"search space {space} exceeds guard {guard}")
    table = g.power_table
    N = g.exponent
    order = sorted(range(len(classes)), key=lambda j: (classes[j].order, j))
    position = {j: i for i, j in enumerate(order)}
    checks: list[list[tuple[int, int, int]]] = [[] for _ in order]
    for j in range(len(classes)):
        for k in range(classes[j].order):
            target = table.power(j, k)
            checks[max(position[j], position[target])].append((j, k, target))

    e = [0] * len(classes)
    out = []

    def dfs(i: int) -> None:
        if i == len(order):
            out.append(tuple(e))
            return
        j = order[i]
        step = N // classes[j].order
        for m in range(classes[j].order):
            e[j] = m * step
            if all((e[t] - k * e[s]) % N == 0 for s, k, t in checks[i]):
                dfs(i + 1)
        e[j] = 0

    dfs(0)
    return out


def abelian_structure(elements: Iterable[tuple[int, ...]], modulus: int) -> tuple[tuple[int, ...], tuple[tuple[int, ...], ...]]:
    """Invariant factors and a basis of a finite subgroup of (Z/modulus)^l.

    Factors come from counting p^k-torsion for each prime p; the basis is
    found by backtracking over elements, largest order first.
    """
    elems = sorted(set(tuple(x % modulus for x in v) for v in elements))
    size = len(elems)
    if size == 0:
        raise ValueError("empty set is not a group")

    def times(v, k):
        return tuple((k * x) % modulus for x in v)

    zero = (0,) * len(elems[0])
    primary: list[int] = []
    for p in factorint(size):
        prev, k, counts = 1, 0, []
        while prev < p ** factorint(size)[p]:
            k += 1
            c = sum(1 for v in elems if times(v, p**k) == zero)
            counts.append(round(np.log(c / prev) / np.log(p)))  # number of a_i >= k
            prev = c
        for kk, r in enumerate(counts, start=1):
            nxt = counts[kk] if kk < len(counts) else 0
            primary.extend([p**kk] * (r - nxt))
    factors = _primary_to_invariant(primary)

    def order_of(v):
        return modulus // gcd(modulus, *v)

    def span(gens):
        group = {zero}
        for gen in gens:
            cyc = [times(gen, k) for k in range(order_of(gen))]
            group = {tuple((a + b) % modulus for a, b in zip(x, y)) for x in group for y in cyc}
        return group

    by_order: dict[int, list] = {}
    for v in elems:
        by_order.setdefault(order_of(v), []).append(v)

    def search(remaining: list[int], chosen: list, current: set):
        if not remaining:
            return chosen
        d = remaining[-1]
        for v in by_order.get(d, []):
            if v in current:
                continue
            new = span(chosen + [v])
            if len(new) == len(current) * d:
                found = search(remaining[:-1], chosen + [v], new)
                if found is not None:
                    return found
        return None

    basis = search(list(factors), [], {zero})
    if basis is None:
        raise ArithmeticError("no basis found; element set is not a group")
    return tuple(factors), tuple(reversed(basis))


def _primary_to_invariant(primary: Sequence[int]) -> list[int]:
    """Combine prime-power cyclic orders into invariant factors d_1 | d_2 | ..."""
    by_prime: dict[int, list[int]] = {}
    for q in primary:
        if q > 1:
            (p,) = factorint(q).keys()
            by_prime.setdefault(p, []).append(q)
    for qs in by_prime.values():
        qs.sort(reverse=True)
    length = max((len(qs) for qs in by_prime.values()), default=0)
    out = []
    for i in range(length):
        out.append(prod(qs[i] for qs in by_prime.values() if i < len(qs)))
    return sorted(out)


def combine_invariant_factors(*factor_lists: Sequence[int]) -> tuple[int, ...]:
    """Invariant factors of a direct sum of finite abelian groups."""
    primary = []
    for factors in factor_lists:
        for d in factors:
            primary.extend(p**a for p, a in factorint(d).items())
    return tuple(_primary_to_invariant(primary))


def brute_force_fixed_points(g: FiniteGroupModel, guard: int = DEFAULT_GUARD) -> FixedPointGroup:
    members = enumerate_members(g, guard)
    N = g.exponent
    factors, basis = abelian_structure(members, N)
    gens = tuple(CyclotomicClassFunction(N, v) for v in basis)
    return FixedPointGroup(g, factors, gens)


# ---------------------------------------------------------------------------
# functoriality


def _rescale(e: int, src: int, dst: int) -> int:
    num = e * dst
    if num % src:
        raise ArithmeticError(f"value exp(2 pi i {e}/{src}) is not a {dst}-th root of unity")
    return (num // src) % dst


def pullback(g: FiniteGroupModel, h: FiniteGroupModel,
             hom: Callable | Mapping, a: CyclotomicClassFunction,
             check: bool = True) -> CyclotomicClassFunction:
    """The class function x -> a(hom(x)) on g, for a in A(h)."""
    F = hom if callable(hom) else hom.__getitem__
    if check:
        elems = g.element_list()
        images = {x: F(x) for x in elems}
        for x, y in itertools.product(elems, repeat=2):
            if images[g.multiply(x, y)] != h.multiply(images[x], images[y]):
                raise ValueError(f"map is not a homomorphism at ({x}, {y})")
    N = g.exponent
    exps = tuple(_rescale(a.exps[h.class_of(F(c.rep))], a.modulus, N) for c in g.classes)
    out = CyclotomicClassFunction(N, exps)
    if check and not is_member(g, out):
        raise ArithmeticError("pullback left A(G); the input was not in A(H)")
    return out


def product_split(g: FiniteGroupModel, h: FiniteGroupModel, a: CyclotomicClassFunction,
                  product: FiniteGroupModel | None = None
                  ) -> tuple[CyclotomicClassFunction, CyclotomicClassFunction]:
    """Split a in A(g x h) as a((x, y)) = a_1(x) * a_2(y) for coprime |g|, |h|."""
    if gcd(g.order, h.order) != 1:
        raise ValueError(f"|G| = {g.order} and |H| = {h.order} are not coprime")
    gh = direct_product(g, h) if product is None else product
    ge, he = g.element_list(), h.element_list()
    nh = len(he)
    gi = {e: i for i, e in enumerate(ge)}
    hi = {e: i for i, e in enumerate(he)}
    g1, h1 = gi[g.identity_element()], hi[h.identity_element()]

    def value(idx: int) -> int:
        return a.exps[gh.class_of(idx)]

    NG, NH = g.exponent, h.exponent
    a1 = CyclotomicClassFunction(NG, tuple(
        _rescale(value(gi[c.rep] * nh + h1), a.modulus, NG) for c in g.classes))
    a2 = CyclotomicClassFunction(NH, tuple(
        _rescale(value(g1 * nh + hi[c.rep]), a.modulus, NH) for c in h.classes))
    M = a.modulus
    for x, y in itertools.product(range(len(ge)), range(nh)):
        e1 = _rescale(a1.exps[g.class_of(ge[x])], NG, M)
        e2 = _rescale(a2.exps[h.class_of(he[y])], NH, M)
        if (value(x * nh + y) - e1 - e2) % M:
            raise ArithmeticError("a does not factor; it is not in A(G x H)")
    return a1, a2


def class_function_from_values(g: FiniteGroupModel, values: Sequence[complex],
                               tol: float = 1e-9) -> CyclotomicClassFunction:
    """Snap complex values that are N-th roots of unity to exponent form."""
    N = g.exponent
    exps = []
    for v in values:
        if abs(abs(v) - 1) > tol:
            raise ValueError(f"{v} is not a root of unity")
        e = np.angle(v) * N / (2 * np.pi)
        k = round(e)
        if abs(e - k) > tol * N:
            raise ValueError(f"{v} is not an {N}-th root of unity")
        exps.append(k % N)
    return CyclotomicClassFunction(N, tuple(exps))
