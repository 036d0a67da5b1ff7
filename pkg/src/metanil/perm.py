"""Permutations, stabilizer chains and permutation groups.

Points are ``0 .. n-1``. A permutation is stored as its image sequence, so
``p[i]`` is the image of ``i``. Products apply the LEFT factor first::

    compose(p, q)[i] == q[p[i]]

which makes ``i -> i^p`` a right action: ``i^(pq) = (i^p)^q``. Every
commutator and coset action in the package relies on this convention.

Groups are built with a deterministic Schreier-Sims procedure. Base points
are taken as the smallest point moved by the first generator that fixes the
current base, so chains are reproducible run to run.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import DegreeMismatch, InvalidSpec, NotMember, TooLarge

DEFAULT_CAP = 100_000


class Permutation(tuple):
    """An immutable bijection on ``range(degree)`` stored as an image tuple.

    Being a tuple subclass gives hashing and the canonical (lexicographic
    on images) ordering for free.
    """

    __slots__ = ()

    def __new__(cls, images: Iterable[int]):
        images = tuple(int(v) for v in images)
        if not images:
            raise InvalidSpec("permutation must have positive degree")
        if sorted(images) != list(range(len(images))):
            raise InvalidSpec(f"not a permutation of 0..{len(images) - 1}: {list(images)}")
        return tuple.__new__(cls, images)

    @classmethod
    def _raw(cls, images) -> "Permutation":
        # trusted construction for hot loops
        return tuple.__new__(cls, images)

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return tuple.__new__(cls, range(degree))

    @classmethod
    def from_cycles(cls, degree: int, *cycles: Sequence[int]) -> "Permutation":
        """Build from disjoint 0-based cycles, e.g. ``from_cycles(4, (0, 1), (2, 3))``."""
        images = list(range(degree))
        seen = set()
        for cyc in cycles:
            for a in cyc:
                if a in seen or not 0 <= a < degree:
                    raise InvalidSpec(f"bad cycle {tuple(cyc)} for degree {degree}")
                seen.add(a)
            for a, b in zip(cyc, tuple(cyc[1:]) + tuple(cyc[:1])):
                images[a] = b
        return cls._raw(images)

    @property
    def degree(self) -> int:
        return len(self)

    @property
    def images(self) -> tuple[int, ...]:
        return tuple(self)

    def is_identity(self) -> bool:
        return all(i == v for i, v in enumerate(self))

    def __mul__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return compose(self, other)

    def __invert__(self) -> "Permutation":
        return inverse(self)

    def __pow__(self, n: int) -> "Permutation":
        result = Permutation.identity(len(self))
        base = self if n >= 0 else inverse(self)
        n = abs(n)
        while n:
            if n & 1:
                result = compose(result, base)
            base = compose(base, base)
            n >>= 1
        return result

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its least point, sorted by that point."""
        seen = [False] * len(self)
        out = []
        for i in range(len(self)):
            if seen[i] or self[i] == i:
                continue
            cyc = [i]
            seen[i] = True
            j = self[i]
            while j != i:
                seen[j] = True
                cyc.append(j)
                j = self[j]
            out.append(tuple(cyc))
        return out

    def cycle_string(self) -> str:
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycs)

    def order(self) -> int:
        return element_order(self)

    def __repr__(self) -> str:
        return f"Permutation({self.cycle_string()}, degree={len(self)})"


def _check_degrees(p: Sequence[int], q: Sequence[int]) -> None:
    if len(p) != len(q):
        raise DegreeMismatch(f"degrees differ: {len(p)} != {len(q)}")


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Product ``p*q``: apply ``p`` then ``q``."""
    _check_degrees(p, q)
    return tuple.__new__(Permutation, [q[i] for i in p])


def inverse(p: Permutation) -> Permutation:
    inv = [0] * len(p)
    for i, v in enumerate(p):
        inv[v] = i
    return tuple.__new__(Permutation, inv)


def element_order(p: Sequence[int]) -> int:
    """Least m >= 1 with p^m = identity, as the lcm of the cycle lengths."""
    n = len(p)
    seen = [False] * n
    result = 1
    for i in range(n):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length > 1:
            result = math.lcm(result, length)
    return result


def commutator(x: Permutation, y: Permutation) -> Permutation:
    """``[x, y] = x^-1 y^-1 x y``."""
    _check_degrees(x, y)
    return _comm(x, y, inverse(x), inverse(y))


def _comm(x, y, xi, yi) -> Permutation:
    # x^-1 y^-1 x y, left factor applied first
    return tuple.__new__(Permutation, [y[x[yi[xi[i]]]] for i in range(len(x))])


def conjugate(x: Permutation, g: Permutation) -> Permutation:
    """``x^g = g^-1 x g``."""
    _check_degrees(x, g)
    gi = inverse(g)
    return tuple.__new__(Permutation, [g[x[gi[i]]] for i in range(len(x))])


class ElementSet:
    """A duplicate-free set of permutations kept in canonical (lexicographic) order."""

    __slots__ = ("_elements", "_lookup", "degree")

    def __init__(self, elements: Iterable[Permutation], degree: int | None = None):
        unique = sorted(set(elements))
        if degree is None:
            if not unique:
                raise ValueError("degree required for an empty ElementSet")
            degree = len(unique[0])
        for e in unique:
            if len(e) != degree:
                raise DegreeMismatch(f"element of degree {len(e)} in set of degree {degree}")
        self._elements = tuple(unique)
        self._lookup = frozenset(unique)
        self.degree = degree

    def __len__(self) -> int:
        return len(self._elements)

    def __iter__(self) -> Iterator[Permutation]:
        return iter(self._elements)

    def __getitem__(self, i):
        return self._elements[i]

    def __contains__(self, p) -> bool:
        return p in self._lookup

    def __eq__(self, other) -> bool:
        if isinstance(other, ElementSet):
            return self._elements == other._elements
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._elements)

    def __repr__(self) -> str:
        return f"ElementSet(size={len(self)}, degree={self.degree})"

    def as_frozenset(self) -> frozenset:
        return self._lookup


@dataclass(frozen=True)
class GroupSpec:
    name: str
    degree: int
    generators: tuple[Permutation, ...]

    def __post_init__(self):
        if not isinstance(self.degree, int) or self.degree < 1:
            raise InvalidSpec(f"degree must be a positive integer, got {self.degree!r}")
        if not self.generators:
            raise InvalidSpec("at least one generator is required")
        gens = []
        for idx, g in enumerate(self.generators):
            if not isinstance(g, Permutation):
                g = Permutation(g)
            if len(g) != self.degree:
                raise InvalidSpec(
                    f"generator {idx} has degree {len(g)}, expected {self.degree}"
                )
            gens.append(g)
        object.__setattr__(self, "generators", tuple(gens))


@dataclass
class _Level:
    point: int
    gens: list = field(default_factory=list)
    transversal: dict = field(default_factory=dict)  # orbit point -> u with point^u = orbit point
    inverses: dict = field(default_factory=dict)
    checked: set = field(default_factory=set)  # (orbit point, gen index) Schreier gens known to sift

    def extend_orbit(self) -> None:
        # transversal entries are never replaced, so previously sifted
        # Schreier generators stay valid
        queue = list(self.transversal)
        pos = 0
        while pos < len(queue):
            beta = queue[pos]
            pos += 1
            u = self.transversal[beta]
            for s in self.gens:
                gamma = s[beta]
                if gamma not in self.transversal:
                    w = compose(u, s)
                    self.transversal[gamma] = w
                    self.inverses[gamma] = inverse(w)
                    queue.append(gamma)


@dataclass(frozen=True)
class StabilizerChain:
    """Base, strong generators per level and transversals (read-only view)."""

    degree: int
    base: tuple[int, ...]
    strong_generators: tuple[tuple[Permutation, ...], ...]
    transversals: tuple[dict, ...]
    inverse_transversals: tuple[dict, ...]

    @property
    def order(self) -> int:
        return math.prod(len(t) for t in self.transversals)

    def sift(self, g: Permutation) -> tuple[Permutation, int]:
        """Strip ``g`` through the chain; return the residue and the level reached."""
        for level, point in enumerate(self.base):
            beta = g[point]
            inv = self.inverse_transversals[level].get(beta)
            if inv is None:
                return g, level
            g = tuple.__new__(Permutation, [inv[v] for v in g])
        return g, len(self.base)


class ChainBuilder:
    """Incremental deterministic Schreier-Sims.

    ``add(g)`` is a no-op for members, otherwise it extends the chain and
    re-completes it. After every call the chain is a valid BSGS for the group
    generated by everything added so far.
    """

    def __init__(self, degree: int):
        self.degree = degree
        self.identity = Permutation.identity(degree)
        self.levels: list[_Level] = []
        self.generators: list[Permutation] = []

    def _sift(self, g: Permutation, start: int = 0) -> tuple[Permutation, int]:
        for m in range(start, len(self.levels)):
            lvl = self.levels[m]
            inv = lvl.inverses.get(g[lvl.point])
            if inv is None:
                return g, m
            g = tuple.__new__(Permutation, [inv[v] for v in g])
        return g, len(self.levels)

    def contains(self, g: Permutation) -> bool:
        residue, _ = self._sift(g)
        return residue == self.identity

    def _new_level(self, g: Permutation) -> None:
        point = next(i for i, v in enumerate(g) if i != v)
        lvl = _Level(point)
        lvl.transversal[point] = self.identity
        lvl.inverses[point] = self.identity
        self.levels.append(lvl)

    def _insert(self, g: Permutation, first: int, last: int) -> None:
        # g fixes the base points of levels < last; it is a strong generator
        # for levels first..last
        if last == len(self.levels):
            self._new_level(g)
        for m in range(first, last + 1):
            self.levels[m].gens.append(g)
            self.levels[m].extend_orbit()

    def add(self, g: Permutation) -> bool:
        if len(g) != self.degree:
            raise DegreeMismatch(f"generator degree {len(g)} != {self.degree}")
        if g == self.identity:
            return False
        residue, depth = self._sift(g)
        if residue == self.identity:
            return False
        self.generators.append(g)
        first_moved = next(
            (m for m, lvl in enumerate(self.levels) if g[lvl.point] != lvl.point),
            len(self.levels),
        )
        self._insert(g, 0, first_moved)
        self._complete()
        return True

    def _complete(self) -> None:
        i = len(self.levels) - 1
        while i >= 0:
            lvl = self.levels[i]
            found = None
            for beta in list(lvl.transversal):
                u = lvl.transversal[beta]
                for si, s in enumerate(lvl.gens):
                    if (beta, si) in lvl.checked:
                        continue
                    # Schreier generator u_beta * s * u_{beta^s}^-1
                    h = compose(compose(u, s), lvl.inverses[s[beta]])
                    residue, depth = self._sift(h, i + 1)
                    if residue == self.identity:
                        lvl.checked.add((beta, si))
                        continue
                    found = (residue, depth)
                    break
                if found:
                    break
            if found is None:
                i -= 1
                continue
            residue, depth = found
            self._insert(residue, i + 1, depth)
            i = depth

    def chain(self) -> StabilizerChain:
        return StabilizerChain(
            degree=self.degree,
            base=tuple(l.point for l in self.levels),
            strong_generators=tuple(tuple(l.gens) for l in self.levels),
            transversals=tuple(dict(l.transversal) for l in self.levels),
            inverse_transversals=tuple(dict(l.inverses) for l in self.levels),
        )


class Group:
    """A permutation group: its generating spec plus a complete stabilizer chain.

    ``cap`` bounds element enumeration; every subgroup or quotient derived
    from this group inherits it.
    """

    def __init__(self, spec: GroupSpec, chain: StabilizerChain, cap: int = DEFAULT_CAP):
        self.spec = spec
        self.chain = chain
        self.order = chain.order
        self.cap = cap
        self.memo: dict = {}  # per-group cache of derived data (X_k sets, series, ...)

    @property
    def degree(self) -> int:
        return self.spec.degree

    @property
    def name(self) -> str:
        return self.spec.name

    @property
    def generators(self) -> tuple[Permutation, ...]:
        return self.spec.generators

    @cached_property
    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def __contains__(self, p) -> bool:
        return contains(self, p)

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"Group({self.name!r}, degree={self.degree}, order={self.order})"

    def is_trivial(self) -> bool:
        return self.order == 1

    def elements(self) -> ElementSet:
        return elements(self)

    def check_cap(self, size: int | None = None) -> None:
        size = self.order if size is None else size
        if size > self.cap:
            raise TooLarge(f"{self.name}: {size} elements exceeds enumeration cap {self.cap}")


def build_group(spec: GroupSpec, cap: int = DEFAULT_CAP) -> Group:
    builder = ChainBuilder(spec.degree)
    for g in spec.generators:
        builder.add(g)
    return Group(spec, builder.chain(), cap=cap)


def group_from_generators(
    name: str, degree: int, gens: Iterable[Permutation], cap: int = DEFAULT_CAP
) -> Group:
    """Build a group, keeping only generators that enlarge the group so far."""
    builder = ChainBuilder(degree)
    for g in gens:
        builder.add(g)
    kept = builder.generators or [builder.identity]
    return Group(GroupSpec(name, degree, tuple(kept)), builder.chain(), cap=cap)


def contains(G: Group, p: Permutation) -> bool:
    if len(p) != G.degree:
        raise DegreeMismatch(f"permutation degree {len(p)} != group degree {G.degree}")
    residue, _ = G.chain.sift(p)
    return residue == G.identity


def require_members(G: Group, perms: Iterable[Permutation]) -> list[Permutation]:
    perms = list(perms)
    for p in perms:
        if not contains(G, p):
            raise NotMember(f"{p.cycle_string()} is not in {G.name}")
    return perms


def elements(G: Group) -> ElementSet:
    """All elements as products of transversal representatives, canonically sorted."""
    cached = G.memo.get("elements")
    if cached is not None:
        return cached
    G.check_cap()
    current = [G.identity]
    for trans in reversed(G.chain.transversals):
        reps = list(trans.values())
        current = [tuple.__new__(Permutation, [u[v] for v in x]) for x in current for u in reps]
    result = ElementSet(current, G.degree)
    if len(result) != G.order:
        raise AssertionError("transversal enumeration produced duplicates")
    G.memo["elements"] = result
    return result


def naive_closure(gens: Sequence[Permutation], degree: int, limit: int = DEFAULT_CAP) -> set:
    """Breadth-first closure of ``gens`` under right multiplication.

    Independent of the stabilizer chain; used as an oracle in tests and when
    pinning corpus facts.
    """
    ident = Permutation.identity(degree)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        if len(seen) > limit:
            raise TooLarge(f"closure exceeds {limit} elements")
        frontier = nxt
    return seen
