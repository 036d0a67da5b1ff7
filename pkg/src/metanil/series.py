"""Word values, generated subgroups, central and derived series, quotients.

Subgroups carry their own stabilizer chain over the parent's degree. The
lower central term gamma_k(G) can be obtained three ways here:

* ``"values"``: the subgroup generated by the set X_k of gamma_k-values;
* ``"commutators"``: iterated [gamma_{k-1}(G), G] over all element pairs;
* ``"generators"``: normal closure of generator commutators (fast path).

The first two are cross-checked against each other in the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence, Union

from .errors import NotNormal, TooLarge
from .perm import (
    ChainBuilder,
    ElementSet,
    Group,
    GroupSpec,
    Permutation,
    _comm,
    compose,
    conjugate,
    contains,
    elements,
    group_from_generators,
    inverse,
    require_members,
)

QUOTIENT_INDEX_CAP = 10_000


@dataclass(frozen=True, eq=False)
class Subgroup:
    parent: Group
    group: Group
    generator_witness: tuple[Permutation, ...]

    @property
    def order(self) -> int:
        return self.group.order

    @property
    def degree(self) -> int:
        return self.group.degree

    def __contains__(self, p) -> bool:
        return contains(self.group, p)

    def elements(self) -> ElementSet:
        return elements(self.group)

    def is_trivial(self) -> bool:
        return self.group.order == 1

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order}, parent={self.parent.name!r})"


GroupLike = Union[Group, Subgroup]


def as_group(H: GroupLike) -> Group:
    return H.group if isinstance(H, Subgroup) else H


def whole(G: Group) -> Subgroup:
    return Subgroup(G, G, G.generators)


def _subgroup_from_builder(parent: Group, builder: ChainBuilder, name: str) -> Subgroup:
    kept = tuple(builder.generators) or (builder.identity,)
    grp = Group(GroupSpec(name, parent.degree, kept), builder.chain(), cap=parent.cap)
    return Subgroup(parent, grp, tuple(builder.generators))


def generated_subgroup(G: GroupLike, gens: Iterable[Permutation], name: str | None = None) -> Subgroup:
    """Smallest subgroup of ``G`` containing ``gens``."""
    G = as_group(G)
    gens = require_members(G, gens)
    builder = ChainBuilder(G.degree)
    for g in gens:
        if builder.add(g) and len(builder.generators) > 1:
            # stop early once the whole group is reached
            if math.prod(len(l.transversal) for l in builder.levels) == G.order:
                break
    return _subgroup_from_builder(G, builder, name or f"<{G.name} sub>")


def trivial_subgroup(G: GroupLike) -> Subgroup:
    return generated_subgroup(G, [], name="1")


def cyclic_subgroup(G: GroupLike, x: Permutation) -> Subgroup:
    return generated_subgroup(G, [x], name=f"<{x.cycle_string()}>")


def same_subgroup(A: GroupLike, B: GroupLike) -> bool:
    """Equal order plus containment of A's generators in B."""
    A, B = as_group(A), as_group(B)
    if A.order != B.order or A.degree != B.degree:
        return False
    return all(contains(B, g) for g in A.generators)


def is_subgroup(A: GroupLike, B: GroupLike) -> bool:
    A, B = as_group(A), as_group(B)
    return B.order % A.order == 0 and all(contains(B, g) for g in A.generators)


def normal_closure(G: GroupLike, seed: Iterable[Permutation], name: str | None = None) -> Subgroup:
    """Smallest normal subgroup of ``G`` containing ``seed``."""
    G = as_group(G)
    seed = require_members(G, seed)
    builder = ChainBuilder(G.degree)
    queue = [g for g in seed if builder.add(g)]
    pos = 0
    # conjugating every new generator by the generators of G closes the set
    while pos < len(queue):
        n = queue[pos]
        pos += 1
        for g in G.generators:
            c = conjugate(n, g)
            if builder.add(c):
                queue.append(c)
    return _subgroup_from_builder(G, builder, name or f"<<{G.name} seed>>")


def is_normal(G: GroupLike, N: GroupLike) -> bool:
    G, N = as_group(G), as_group(N)
    return all(contains(N, conjugate(n, g)) for n in N.generators for g in G.generators)


def gamma_values(G: GroupLike, k: int) -> ElementSet:
    """The set X_k of values of the left-normed commutator [x_1, ..., x_k].

    X_1 = G and X_{i+1} = {[c, g] : c in X_i, g in G}.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    G = as_group(G)
    elems = elements(G)
    memo = G.memo.setdefault("gamma_values", {1: elems})
    start = max(i for i in memo if i <= k)
    X = memo[start]
    if start < k:
        pairs = [(g, inverse(g)) for g in elems]
    for i in range(start + 1, k + 1):
        nxt = set()
        for c in X:
            ci = inverse(c)
            for g, gi in pairs:
                nxt.add(_comm(c, g, ci, gi))
        X = ElementSet(nxt, G.degree)
        memo[i] = X
    return X


def mutual_commutator(G: GroupLike, A: GroupLike, B: GroupLike) -> Subgroup:
    """[A, B] generated by [a, b] over all element pairs of A x B."""
    G = as_group(G)
    A_el, B_el = elements(as_group(A)), elements(as_group(B))
    B_pairs = [(b, inverse(b)) for b in B_el]
    values = set()
    for a in A_el:
        ai = inverse(a)
        for b, bi in B_pairs:
            values.add(_comm(a, b, ai, bi))
    values.discard(G.identity)
    return generated_subgroup(G, sorted(values), name="[A,B]")


def _commutator_subgroup_by_generators(G: Group, H: Group) -> Subgroup:
    # [H, G] for H normal in G: normal closure of generator commutators
    seed = []
    for h in H.generators:
        for g in G.generators:
            c = _comm(h, g, inverse(h), inverse(g))
            if c != G.identity:
                seed.append(c)
    return normal_closure(G, seed, name="[H,G]")


@dataclass(frozen=True)
class SeriesRecord:
    """Terms 1..stabilized_at of a descending series (terms[0] is the group).

    ``stabilized_at`` is the 1-based index s with term s == term s+1.
    """

    kind: str
    terms: tuple[Subgroup, ...]
    stabilized_at: int

    @property
    def orders(self) -> list[int]:
        return [t.order for t in self.terms]

    @property
    def last(self) -> Subgroup:
        return self.terms[-1]

    def term(self, k: int) -> Subgroup:
        """Term k (1-based); constant past stabilization."""
        return self.terms[min(k, self.stabilized_at) - 1]

    def reaches_trivial(self) -> bool:
        return self.terms[-1].order == 1


def _build_series(G: Group, kind: str, step: Callable[[int, Subgroup], Subgroup]) -> SeriesRecord:
    terms = [whole(G)]
    while True:
        nxt = step(len(terms) + 1, terms[-1])
        prev = terms[-1]
        if nxt.order == prev.order and same_subgroup(prev, nxt):
            return SeriesRecord(kind, tuple(terms), len(terms))
        if not is_subgroup(nxt, prev):
            raise AssertionError(f"{kind} series is not descending")
        terms.append(nxt)


def lower_central_series(G: GroupLike, method: str = "values") -> SeriesRecord:
    """gamma_1 >= gamma_2 >= ... until two consecutive terms coincide."""
    G = as_group(G)
    key = ("lcs", method)
    if key in G.memo:
        return G.memo[key]
    if method == "values":
        step = lambda k, prev: generated_subgroup(G, gamma_values(G, k), name=f"gamma_{k}")
    elif method == "commutators":
        step = lambda k, prev: mutual_commutator(G, prev, G)
    elif method == "generators":
        step = lambda k, prev: _commutator_subgroup_by_generators(G, prev.group)
    else:
        raise ValueError(f"unknown method {method!r}")
    record = _build_series(G, "lower_central", step)
    G.memo[key] = record
    return record


def gamma_subgroup(G: GroupLike, k: int, method: str = "generators") -> Subgroup:
    """The k-th lower central term gamma_k(G)."""
    return lower_central_series(G, method).term(k)


def derived_subgroup(H: GroupLike) -> Subgroup:
    H = as_group(H)
    return _commutator_subgroup_by_generators(H, H)


def derived_series(G: GroupLike) -> SeriesRecord:
    G = as_group(G)
    if "derived" not in G.memo:
        G.memo["derived"] = _build_series(
            G, "derived",
            lambda k, prev: _lift(G, derived_subgroup(prev.group)),
        )
    return G.memo["derived"]


def _lift(G: Group, S: Subgroup) -> Subgroup:
    # re-parent a subgroup of a subgroup onto G
    return Subgroup(G, S.group, S.generator_witness)


def is_soluble(G: GroupLike) -> bool:
    return derived_series(G).reaches_trivial()


def derived_length(G: GroupLike) -> int | None:
    """Number of steps to reach the trivial group, None if not soluble."""
    ds = derived_series(G)
    return ds.stabilized_at - 1 if ds.reaches_trivial() else None


def is_perfect(G: GroupLike) -> bool:
    G = as_group(G)
    return derived_subgroup(G).order == G.order


def is_nilpotent(H: GroupLike) -> bool:
    return lower_central_series(H, method="generators").reaches_trivial()


def nilpotency_class(H: GroupLike) -> int | None:
    lcs = lower_central_series(H, method="generators")
    return lcs.stabilized_at - 1 if lcs.reaches_trivial() else None


def is_abelian(H: GroupLike) -> bool:
    gens = as_group(H).generators
    return all(compose(a, b) == compose(b, a) for a in gens for b in gens)


def centralizer(G: GroupLike, x: Permutation | Sequence[Permutation]) -> Subgroup:
    """Elements of G commuting with x (or with every element of a list)."""
    G = as_group(G)
    xs = [x] if isinstance(x, Permutation) else list(x)
    comm = [g for g in elements(G) if all(compose(g, y) == compose(y, g) for y in xs)]
    return generated_subgroup(G, comm, name="C(x)")


def center(G: GroupLike) -> Subgroup:
    G = as_group(G)
    sub = centralizer(G, list(G.generators))
    return Subgroup(G, sub.group, sub.generator_witness)


def conjugacy_classes(G: GroupLike) -> list[tuple[Permutation, ...]]:
    """Classes as sorted tuples, listed by their least element."""
    G = as_group(G)
    if "classes" in G.memo:
        return G.memo["classes"]
    remaining = set(elements(G))
    classes = []
    for x in elements(G):
        if x not in remaining:
            continue
        orbit = {x}
        frontier = [x]
        while frontier:
            nxt = []
            for y in frontier:
                for g in G.generators:
                    z = conjugate(y, g)
                    if z not in orbit:
                        orbit.add(z)
                        nxt.append(z)
            frontier = nxt
        remaining -= orbit
        classes.append(tuple(sorted(orbit)))
    G.memo["classes"] = classes
    return classes


@dataclass(frozen=True, eq=False)
class QuotientGroup:
    """G/N realized as the action of G on the right cosets of N."""

    parent: Group
    group: Group
    kernel: Subgroup
    coset_of: dict  # element of G -> coset index
    representatives: tuple[Permutation, ...]

    def project(self, g: Permutation) -> Permutation:
        idx = self.coset_of
        reps = self.representatives
        return Permutation._raw([idx[compose(r, g)] for r in reps])

    def lift(self, image: Permutation) -> Permutation:
        """Some preimage of an element of the quotient (the coset rep of 0's image)."""
        return self.representatives[image[0]]

    @property
    def order(self) -> int:
        return self.group.order


def quotient(G: GroupLike, N: GroupLike) -> QuotientGroup:
    G = as_group(G)
    N_sub = N if isinstance(N, Subgroup) else Subgroup(G, N, N.generators)
    Ng = as_group(N)
    if not is_subgroup(Ng, G) or not is_normal(G, Ng):
        raise NotNormal(f"subgroup of order {Ng.order} is not normal in {G.name}")
    index = G.order // Ng.order
    if index > QUOTIENT_INDEX_CAP:
        raise TooLarge(f"quotient index {index} exceeds {QUOTIENT_INDEX_CAP}")
    n_elems = elements(Ng)
    coset_of = {}
    reps = []
    for g in elements(G):
        if g in coset_of:
            continue
        idx = len(reps)
        reps.append(g)  # canonical rep: least element of the coset N g
        for n in n_elems:
            coset_of[compose(n, g)] = idx
    degree = index
    images = []
    for g in G.generators:
        images.append(Permutation._raw([coset_of[compose(r, g)] for r in reps]))
    image = group_from_generators(f"{G.name}/N", degree, images, cap=G.cap)
    return QuotientGroup(G, image, N_sub, coset_of, tuple(reps))
