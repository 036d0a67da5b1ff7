"""Engel elements, the Fitting subgroup and Fitting height.

F(G) is computed as the set of Engel elements (Baer: in a finite group the
Engel elements are exactly F(G)). An independent route,
``fitting_subgroup_by_closures``, uses the fact that x lies in F(G) iff the
normal closure of x is nilpotent; the two are compared in the tests.

Metanilpotency is decided as ``h(G) <= 2``. This matches the definition
because F(G) contains every normal nilpotent N, so G/N nilpotent forces
G/F(G) nilpotent.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InternalInconsistency, NotSoluble
from .perm import Group, Permutation, _comm, conjugate, contains, element_order, inverse
from .series import (
    GroupLike,
    Subgroup,
    as_group,
    conjugacy_classes,
    elements,
    generated_subgroup,
    is_nilpotent,
    is_normal,
    is_soluble,
    mutual_commutator,
    normal_closure,
    quotient,
    same_subgroup,
)


def prime_factors(n: int) -> dict[int, int]:
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime_power(n: int) -> bool:
    return len(prime_factors(n)) == 1


def p_part(n: int, p: int) -> int:
    part = 1
    while n % p == 0:
        n //= p
        part *= p
    return part


@dataclass(frozen=True)
class PrimeSet:
    primes: tuple[int, ...] = ()

    def __post_init__(self):
        ps = tuple(sorted(set(self.primes)))
        for p in ps:
            if p < 2 or prime_factors(p) != {p: 1}:
                raise ValueError(f"{p} is not prime")
        object.__setattr__(self, "primes", ps)

    def __contains__(self, p) -> bool:
        return p in self.primes

    def __iter__(self):
        return iter(self.primes)

    def __len__(self) -> int:
        return len(self.primes)

    def complement_contains(self, n: int) -> bool:
        """True iff n is a pi'-number (no prime divisor in this set)."""
        return all(n % p for p in self.primes)


def prime_set(G: GroupLike) -> PrimeSet:
    return PrimeSet(tuple(prime_factors(as_group(G).order)))


def is_engel_element(G: GroupLike, y: Permutation) -> bool:
    """True iff every chain x, [x,y], [[x,y],y], ... reaches the identity.

    The map z -> [z, y] is a function on G with the identity as a fixed
    point, so y is Engel iff the identity is the only cycle of that map.
    """
    G = as_group(G)
    ident = G.identity
    yi = inverse(y)
    good = {ident}
    for x in elements(G):
        if x in good:
            continue
        path = []
        on_path = set()
        z = x
        while z not in good:
            if z in on_path:
                return False
            on_path.add(z)
            path.append(z)
            z = _comm(z, y, inverse(z), yi)
        good.update(path)
    return True


def engel_set(G: GroupLike) -> set[Permutation]:
    # Engel-ness is invariant under conjugation, so test one element per class
    G = as_group(G)
    out = set()
    for cls in conjugacy_classes(G):
        if is_engel_element(G, cls[0]):
            out.update(cls)
    return out


def _subgroup_from_set(G: Group, S: set, what: str) -> Subgroup:
    sub = generated_subgroup(G, sorted(S), name=what)
    if sub.order != len(S):
        raise InternalInconsistency(f"{what}: set of size {len(S)} generates order {sub.order}")
    return sub


def fitting_subgroup(G: GroupLike) -> Subgroup:
    G = as_group(G)
    if "fitting" in G.memo:
        return G.memo["fitting"]
    F = _subgroup_from_set(G, engel_set(G), "F")
    if not is_normal(G, F):
        raise InternalInconsistency("Engel set is not normal")
    if not is_nilpotent(F):
        raise InternalInconsistency("Engel set is not nilpotent")
    G.memo["fitting"] = F
    return F


def fitting_subgroup_by_closures(G: GroupLike) -> Subgroup:
    """F(G) as the union of classes whose normal closure is nilpotent."""
    G = as_group(G)
    members = set()
    for cls in conjugacy_classes(G):
        if is_nilpotent(normal_closure(G, [cls[0]])):
            members.update(cls)
    return _subgroup_from_set(G, members, "F (closures)")


def o_p(G: GroupLike, p: int) -> Subgroup:
    """O_p(G): the p-power-order elements of F(G)."""
    G = as_group(G)
    F = fitting_subgroup(G)
    part = {x for x in elements(F.group) if p_part(element_order(x), p) == element_order(x)}
    return _subgroup_from_set(G, part, f"O_{p}")


def o_pprime_of_fitting(G: GroupLike, p: int) -> Subgroup:
    """O_{p'}(F(G)): elements of F(G) of order prime to p."""
    G = as_group(G)
    F = fitting_subgroup(G)
    part = {x for x in elements(F.group) if element_order(x) % p}
    return _subgroup_from_set(G, part, f"O_{p}'(F)")


def fitting_height(G: GroupLike) -> int:
    G = as_group(G)
    if not is_soluble(G):
        raise NotSoluble(f"{G.name} is not soluble")
    height = 0
    current = G
    while current.order > 1:
        F = fitting_subgroup(current)
        if F.order == 1:
            raise InternalInconsistency("nontrivial soluble group with trivial Fitting subgroup")
        current = quotient(current, F).group
        height += 1
    return height


def is_metanilpotent(G: GroupLike) -> bool:
    G = as_group(G)
    return is_soluble(G) and fitting_height(G) <= 2


@dataclass(frozen=True)
class FittingData:
    fitting: Subgroup
    per_prime: dict = field(default_factory=dict)
    height: int | None = None
    metanilpotent: bool = False
    soluble: bool = False


def fitting_data(G: GroupLike) -> FittingData:
    G = as_group(G)
    F = fitting_subgroup(G)
    per_prime = {p: o_p(G, p) for p in prime_set(F.group)}
    soluble = is_soluble(G)
    height = fitting_height(G) if soluble else None
    return FittingData(
        fitting=F,
        per_prime=per_prime,
        height=height,
        metanilpotent=soluble and height <= 2,
        soluble=soluble,
    )


@dataclass(frozen=True)
class TowerCandidate:
    """Parts P_1 (top) .. P_h (bottom) and their primes p_1 .. p_h."""

    parts: tuple[Subgroup, ...]
    primes: tuple[int, ...]

    def __post_init__(self):
        if len(self.parts) != len(self.primes):
            raise ValueError("one prime per part required")

    @property
    def height(self) -> int:
        return len(self.parts)


def _normalizes(A: Subgroup, B: Subgroup) -> bool:
    return all(contains(B.group, conjugate(b, a)) for a in A.group.generators for b in B.group.generators)


def verify_tower(G: GroupLike, T: TowerCandidate) -> bool:
    """Check the three tower conditions.

    Parts must be nontrivial: with trivial parts the conditions hold
    vacuously for any height.
    """
    G = as_group(G)
    for P, p in zip(T.parts, T.primes):
        if P.order == 1 or p_part(P.order, p) != P.order:
            return False
    for i in range(len(T.parts) - 1):
        if T.primes[i] == T.primes[i + 1]:
            return False
    for i, Pi in enumerate(T.parts):
        for Pj in T.parts[i + 1:]:
            if not _normalizes(Pi, Pj):
                return False
    for i in range(1, len(T.parts)):
        comm = mutual_commutator(G, T.parts[i], T.parts[i - 1])
        if not same_subgroup(comm, T.parts[i]):
            return False
    return True


def has_normal_p_complement(G: GroupLike, p: int) -> bool:
    """True iff the p'-elements form a subgroup of order |G|_{p'}."""
    G = as_group(G)
    K = {x for x in elements(G) if element_order(x) % p}
    target = G.order // p_part(G.order, p)
    if len(K) != target:
        return False
    return all(a * b in K for a in K for b in K)


def normal_p_complement(G: GroupLike, p: int) -> Subgroup | None:
    G = as_group(G)
    if not has_normal_p_complement(G, p):
        return None
    K = {x for x in elements(G) if element_order(x) % p}
    return _subgroup_from_set(G, K, f"{p}'-complement")
