"""Exact combinatorics of finite reduced root systems.

Roots are integer tuples in the simple-root basis, weights are tuples of
``Fraction``.  Simple roots are labelled 1..rank wherever a label is part of
the interface (reflection words, Levi index sets); tuple positions are 0-based.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Root = tuple[int, ...]
Weight = tuple[Fraction, ...]
Matrix = tuple[tuple[int, ...], ...]

DEFAULT_ROOT_CAP = 1000
DEFAULT_WEYL_CAP = 1_000_000


class RootSystemError(ValueError):
    """Raised for invalid Cartan data or malformed root-system input."""


def as_weight(x: Iterable) -> Weight:
    return tuple(Fraction(c) for c in x)


def _add(x, y):
    return tuple(a + b for a, b in zip(x, y))


def _neg(x):
    return tuple(-a for a in x)


@dataclass(frozen=True)
class RootSystem:
    """A finite reduced root system together with root-space multiplicities.

    ``cartan[i][j] = 2(a_i, a_j)/(a_j, a_j)``.  The pairing on simple roots is
    ``(a_i, a_j) = cartan[i][j] * symmetrizer[j]``, so ``symmetrizer[j]`` is
    half the squared length of the j-th simple root.
    """

    cartan: Matrix
    symmetrizer: tuple[Fraction, ...]
    multiplicity_by_length: Mapping[Fraction, int]
    positive_roots: tuple[Root, ...]
    _root_set: frozenset = field(repr=False, compare=False, default=frozenset())
    _mult_of: Mapping = field(repr=False, compare=False, default_factory=dict)

    @property
    def rank(self) -> int:
        return len(self.cartan)

    @property
    def roots(self) -> frozenset[Root]:
        """All roots, positive and negative."""
        return self._root_set

    def simple_root(self, label: int) -> Root:
        return tuple(int(i == label - 1) for i in range(self.rank))

    def is_root(self, x: Sequence) -> bool:
        return tuple(x) in self._root_set

    def gram(self, i: int, j: int) -> Fraction:
        return self.cartan[i][j] * self.symmetrizer[j]

    def squared_length(self, x: Sequence) -> Fraction:
        return pairing(self, x, x)

    def multiplicity(self, root: Sequence) -> int:
        cached = self._mult_of.get(tuple(root))
        if cached is not None:
            return cached
        length = self.squared_length(root)
        try:
            return self.multiplicity_by_length[length]
        except KeyError:
            raise RootSystemError(
                f"no multiplicity recorded for squared length {length}"
            ) from None


def _validate_cartan(cartan: Matrix) -> None:
    n = len(cartan)
    if n == 0:
        raise RootSystemError("Cartan matrix must have positive rank")
    for i, row in enumerate(cartan):
        if len(row) != n:
            raise RootSystemError("Cartan matrix must be square")
        for j, a in enumerate(row):
            if i == j and a != 2:
                raise RootSystemError(f"diagonal entry ({i + 1},{j + 1}) is {a}, expected 2")
            if i != j and a > 0:
                raise RootSystemError(f"off-diagonal entry ({i + 1},{j + 1}) is positive")
            if i != j and (a == 0) != (cartan[j][i] == 0):
                raise RootSystemError(
                    f"entries ({i + 1},{j + 1}) and ({j + 1},{i + 1}) must vanish together"
                )


def _symmetrizer(cartan: Matrix) -> tuple[Fraction, ...]:
    # a_ij d_j = a_ji d_i  =>  d_j = d_i a_ji / a_ij along every edge
    n = len(cartan)
    d: list[Fraction | None] = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        component = [start]
        queue = deque([start])
        while queue:
            i = queue.popleft()
            for j in range(n):
                if j == i or cartan[i][j] == 0:
                    continue
                value = d[i] * Fraction(cartan[j][i], cartan[i][j])
                if d[j] is None:
                    d[j] = value
                    component.append(j)
                    queue.append(j)
                elif d[j] != value:
                    raise RootSystemError("Cartan matrix is not symmetrizable")
        # shortest simple root of each component gets d = 1
        least = min(d[k] for k in component)
        for k in component:
            d[k] = d[k] / least
    return tuple(d)


def _leading_minors_positive(gram: list[list[Fraction]]) -> bool:
    a = [row[:] for row in gram]
    n = len(a)
    for k in range(n):
        if a[k][k] <= 0:
            return False
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            for j in range(k, n):
                a[i][j] -= f * a[k][j]
    return True


def build_root_system(
    cartan: Sequence[Sequence[int]],
    multiplicity_by_length: Mapping | None = None,
    root_cap: int = DEFAULT_ROOT_CAP,
) -> RootSystem:
    """Generate the positive roots of a finite-type Cartan matrix.

    Uses root strings: ``g + a_i`` is a root iff ``p - <g, a_i^v> > 0`` where
    ``p`` is the length of the ``a_i``-string below ``g``.  Multiplicities are
    keyed by squared length; lengths missing from the map default to 1.
    """
    cartan = tuple(tuple(int(a) for a in row) for row in cartan)
    _validate_cartan(cartan)
    d = _symmetrizer(cartan)
    n = len(cartan)
    gram = [[cartan[i][j] * d[j] for j in range(n)] for i in range(n)]
    if not _leading_minors_positive(gram):
        raise RootSystemError("Cartan matrix is not of finite type")

    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    found = set(simple)
    ordered = list(simple)
    layer = list(simple)
    while layer:
        nxt = []
        for g in layer:
            for i in range(n):
                coroot = sum(g[k] * cartan[k][i] for k in range(n))
                p = 0
                down = list(g)
                while True:
                    down[i] -= 1
                    if tuple(down) in found:
                        p += 1
                    else:
                        break
                if p - coroot > 0:
                    up = list(g)
                    up[i] += 1
                    up = tuple(up)
                    if up not in found:
                        found.add(up)
                        ordered.append(up)
                        nxt.append(up)
                        if len(ordered) > root_cap:
                            raise RootSystemError(
                                f"more than {root_cap} positive roots; not of finite type"
                            )
        layer = nxt

    ordered.sort(key=lambda r: (sum(r), tuple(-c for c in r)))
    lengths = {2 * d[i] for i in range(n)}
    mult = {Fraction(k): int(v) for k, v in (multiplicity_by_length or {}).items()}
    for k, v in mult.items():
        if v < 1:
            raise RootSystemError(f"multiplicity for squared length {k} must be positive")
    for length in lengths:
        mult.setdefault(length, 1)
    all_roots = frozenset(ordered) | frozenset(_neg(r) for r in ordered)
    spec = RootSystem(cartan, d, mult, tuple(ordered), all_roots)
    for r in all_roots:
        spec._mult_of[r] = spec.multiplicity(r)
    return spec


def pairing(spec: RootSystem, x: Sequence, y: Sequence) -> Fraction:
    n = spec.rank
    total = Fraction(0)
    for i in range(n):
        if x[i] == 0:
            continue
        for j in range(n):
            if y[j]:
                total += x[i] * y[j] * spec.gram(i, j)
    return total


def is_positive(x: Sequence) -> bool:
    return any(c != 0 for c in x) and all(c >= 0 for c in x)


def irreducible_components_of_cartan(cartan: Matrix) -> list[list[int]]:
    n = len(cartan)
    seen: set[int] = set()
    out = []
    for s in range(n):
        if s in seen:
            continue
        comp, stack = [], [s]
        seen.add(s)
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(n):
                if j not in seen and cartan[i][j] != 0:
                    seen.add(j)
                    stack.append(j)
        out.append(sorted(comp))
    return out


def highest_root(spec: RootSystem) -> Root:
    """The unique positive root dominating every positive root coefficientwise."""
    if len(irreducible_components_of_cartan(spec.cartan)) != 1:
        raise RootSystemError("highest root requires an irreducible root system")
    for beta in reversed(spec.positive_roots):
        if all(all(b >= g for b, g in zip(beta, gamma)) for gamma in spec.positive_roots):
            return beta
    raise RootSystemError("no highest root found")


# -- Weyl group -------------------------------------------------------------


def reflection_matrix(spec: RootSystem, label: int) -> Matrix:
    """Matrix of s_label acting on coordinate column vectors."""
    n = spec.rank
    j = label - 1
    if not 0 <= j < n:
        raise RootSystemError(f"reflection index {label} out of range 1..{n}")
    # s_j(x) = x - (sum_i x_i a_ij) a_j
    return tuple(
        tuple(int(r == c) - (spec.cartan[c][j] if r == j else 0) for c in range(n))
        for r in range(n)
    )


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n)
    )


def _identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


@dataclass(frozen=True)
class WeylElement:
    """A Weyl group element given by a word in simple reflections.

    ``word = (i1, ..., ik)`` denotes ``s_i1 s_i2 ... s_ik``; the rightmost
    reflection acts first.
    """

    word: tuple[int, ...]
    matrix: Matrix

    def __len__(self) -> int:
        return len(self.word)

    def word_string(self) -> str:
        return " ".join(f"s{i}" for i in self.word) or "e"


def weyl_element(spec: RootSystem, word: Iterable[int]) -> WeylElement:
    word = tuple(int(i) for i in word)
    m = _identity(spec.rank)
    for label in word:
        m = _matmul(m, reflection_matrix(spec, label))
    return WeylElement(word, m)


def apply_weyl(spec: RootSystem, w: WeylElement, x: Sequence) -> tuple:
    n = spec.rank
    return tuple(sum(w.matrix[i][k] * x[k] for k in range(n)) for i in range(n))


def reflect(spec: RootSystem, label: int, x: Sequence) -> tuple:
    j = label - 1
    coroot = sum(x[i] * spec.cartan[i][j] for i in range(spec.rank))
    out = list(x)
    out[j] -= coroot
    return tuple(out)


def enumerate_weyl(spec: RootSystem, order_cap: int = DEFAULT_WEYL_CAP) -> list[WeylElement]:
    """All Weyl group elements, each with its lexicographically least reduced word.

    Breadth-first from the identity, extending words on the right in
    increasing generator order; the first word reaching a matrix is both
    reduced and lex-least.  The result is sorted by (length, word).
    """
    n = spec.rank
    gens = [reflection_matrix(spec, i + 1) for i in range(n)]
    start = WeylElement((), _identity(n))
    seen = {start.matrix}
    out = [start]
    layer = [start]
    while layer:
        nxt = []
        for w in layer:
            for i in range(n):
                m = _matmul(w.matrix, gens[i])
                if m in seen:
                    continue
                seen.add(m)
                el = WeylElement(w.word + (i + 1,), m)
                nxt.append(el)
                if len(seen) > order_cap:
                    raise RootSystemError(f"Weyl group order exceeds cap {order_cap}")
        out.extend(nxt)
        layer = nxt
    return out


# -- subsystems -------------------------------------------------------------


@dataclass(frozen=True)
class Subsystem:
    """A closed, negation-stable set of roots of an ambient system."""

    roots: frozenset[Root]
    positive_part: tuple[Root, ...]
    label: str | None = None

    def __len__(self) -> int:
        return len(self.roots)


def make_subsystem(spec: RootSystem, roots: Iterable[Sequence], label: str | None = None) -> Subsystem:
    rs = frozenset(tuple(r) for r in roots)
    rs = rs | frozenset(_neg(r) for r in rs)
    for r in rs:
        if r not in spec.roots:
            raise RootSystemError(f"{r} is not a root")
    pos = tuple(r for r in spec.positive_roots if r in rs)
    return Subsystem(rs, pos, label)


def check_closed(spec: RootSystem, s: Subsystem) -> None:
    for g in s.roots:
        for m in s.roots:
            t = _add(g, m)
            if t in spec.roots and t not in s.roots:
                raise RootSystemError(f"subsystem not closed: {g} + {m} = {t} is missing")


def full_subsystem(spec: RootSystem, label: str | None = None) -> Subsystem:
    return Subsystem(spec.roots, spec.positive_roots, label)


def span_subsystem(spec: RootSystem, labels: Iterable[int], label: str | None = None) -> Subsystem:
    """Roots supported on the given simple roots (a standard Levi subsystem)."""
    keep = {i - 1 for i in labels}
    pos = [r for r in spec.positive_roots if all(c == 0 or i in keep for i, c in enumerate(r))]
    return make_subsystem(spec, pos, label)


def orthogonal_subsystem(
    spec: RootSystem, x: Sequence, within: Subsystem | None = None, label: str | None = None
) -> Subsystem:
    pool = spec.roots if within is None else within.roots
    return make_subsystem(spec, (g for g in pool if pairing(spec, g, x) == 0), label)


def subsystem_simple_roots(spec: RootSystem, s: Subsystem) -> list[Root]:
    """Positive roots of ``s`` that are not a sum of two positive roots of ``s``."""
    pos = set(s.positive_part)
    decomposable = set()
    for g in s.positive_part:
        for m in s.positive_part:
            t = _add(g, m)
            if t in pos:
                decomposable.add(t)
    return [r for r in s.positive_part if r not in decomposable]


@dataclass(frozen=True)
class DynkinType:
    family: str
    rank: int

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"


@dataclass(frozen=True)
class Component:
    dynkin: DynkinType
    simple_roots: tuple[Root, ...]
    subsystem: Subsystem


def _cartan_of(spec: RootSystem, basis: Sequence[Root]) -> Matrix:
    return tuple(
        tuple(int(2 * pairing(spec, a, b) / pairing(spec, b, b)) for b in basis) for a in basis
    )


def dynkin_type(cartan: Matrix, lengths: Sequence[Fraction]) -> DynkinType:
    """Identify a connected finite-type Cartan matrix."""
    n = len(cartan)
    edges = {}
    for i in range(n):
        for j in range(i + 1, n):
            if cartan[i][j]:
                edges[(i, j)] = cartan[i][j] * cartan[j][i]
    degree = [0] * n
    for i, j in edges:
        degree[i] += 1
        degree[j] += 1
    if len(edges) != n - 1:
        raise RootSystemError("Dynkin diagram has a cycle")
    bonds = sorted(edges.values())
    if n == 1:
        return DynkinType("A", 1)
    if 3 in bonds:
        if n == 2:
            return DynkinType("G", 2)
        raise RootSystemError("triple bond in rank > 2")
    if 2 in bonds:
        if bonds.count(2) > 1 or max(degree) > 2:
            raise RootSystemError("not a finite-type diagram")
        if n == 4:
            (i, j), = [e for e, v in edges.items() if v == 2]
            if degree[i] == 2 and degree[j] == 2:
                return DynkinType("F", 4)
        longest = max(lengths)
        n_long = sum(1 for x in lengths if x == longest)
        if n == 2:
            return DynkinType("C", 2)
        if n_long == 1:
            return DynkinType("C", n)
        if n_long == n - 1:
            return DynkinType("B", n)
        raise RootSystemError("not a finite-type diagram")
    if max(degree) <= 2:
        return DynkinType("A", n)
    if max(degree) > 3 or degree.count(3) > 1:
        raise RootSystemError("not a finite-type diagram")
    center = degree.index(3)
    adj = {i: [] for i in range(n)}
    for i, j in edges:
        adj[i].append(j)
        adj[j].append(i)
    arms = []
    for start in adj[center]:
        length, prev, cur = 1, center, start
        while degree[cur] == 2:
            prev, cur = cur, next(k for k in adj[cur] if k != prev)
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return DynkinType("D", n)
    if arms[:2] == [1, 2] and arms[2] in (2, 3, 4):
        return DynkinType("E", n)
    raise RootSystemError("not a finite-type diagram")


def classify(spec: RootSystem, s: Subsystem) -> list[Component]:
    """Split a closed subsystem into irreducible components and name each."""
    simple = subsystem_simple_roots(spec, s)
    if not simple:
        return []
    cartan = _cartan_of(spec, simple)
    out = []
    for comp in irreducible_components_of_cartan(cartan):
        basis = tuple(simple[i] for i in comp)
        sub_cartan = tuple(tuple(cartan[i][j] for j in comp) for i in comp)
        lengths = [pairing(spec, b, b) for b in basis]
        dt = dynkin_type(sub_cartan, lengths)
        members = [g for g in s.roots if any(pairing(spec, g, b) != 0 for b in basis)]
        out.append(Component(dt, basis, make_subsystem(spec, members, str(dt))))
    out.sort(key=lambda c: max(c.simple_roots), reverse=True)
    return out


def subsystem_highest_root(spec: RootSystem, s: Subsystem) -> Root:
    """Highest root of an irreducible subsystem, relative to its own simple roots."""
    simple = subsystem_simple_roots(spec, s)
    tops = [g for g in s.positive_part if all(_add(g, a) not in s.roots for a in simple)]
    if len(tops) != 1:
        raise RootSystemError("subsystem is reducible or empty; no unique highest root")
    return tops[0]
