"""The coprime-order product condition on gamma_k-values and its checkers.

For a group G and k >= 1 let X_k be the set of gamma_k-values. The
condition is: |ab| = |a||b| for all a, b in X_k with gcd(|a|, |b|) = 1.
It holds exactly when gamma_k(G) is nilpotent; ``verify_theorem`` computes
both sides along separate code paths and reports whether they agree.

Pair scanning buckets X_k by element order and only visits coprime order
pairs. Pairs involving the identity are skipped since 1*b = b always
satisfies the condition.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .errors import HypothesisNotMet, NotCoprime, NotMetanilpotent, NotNormal, NotPerfect, NotSoluble
from .fitting import (
    fitting_subgroup,
    is_metanilpotent,
    is_prime_power,
    o_pprime_of_fitting,
    p_part,
    prime_set,
)
from .perm import Group, Permutation, compose, conjugate, contains, element_order, inverse
from .series import (
    GroupLike,
    Subgroup,
    as_group,
    cyclic_subgroup,
    elements,
    gamma_subgroup,
    gamma_values,
    generated_subgroup,
    is_abelian,
    is_nilpotent,
    is_perfect,
    is_soluble,
    lower_central_series,
    mutual_commutator,
    same_subgroup,
)

FAST = "fast"
CANONICAL = "canonical"


@dataclass(frozen=True)
class Witness:
    a: Permutation
    b: Permutation
    order_a: int
    order_b: int
    order_ab: int

    def to_dict(self) -> dict:
        return {
            "a": {"cycles": self.a.cycle_string(), "images": list(self.a), "order": self.order_a},
            "b": {"cycles": self.b.cycle_string(), "images": list(self.b), "order": self.order_b},
            "order_ab": self.order_ab,
        }


@dataclass(frozen=True)
class ConditionReport:
    k: int
    holds: bool
    witness: Witness | None
    pairs_checked: int
    x_size: int
    elapsed_ms: float | None = None
    mode: str = CANONICAL

    def to_dict(self, timing: bool = True) -> dict:
        return {
            "k": self.k,
            "holds": self.holds,
            "witness": self.witness.to_dict() if self.witness else None,
            "pairs_checked": self.pairs_checked,
            "x_size": self.x_size,
            "elapsed_ms": round(self.elapsed_ms, 3) if timing and self.elapsed_ms is not None else None,
        }


@dataclass(frozen=True)
class TheoremVerdict:
    k: int
    condition_holds: bool
    gamma_k_nilpotent: bool
    gamma_k_order: int
    consistent: bool = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "consistent", self.condition_holds == self.gamma_k_nilpotent)

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "condition_holds": self.condition_holds,
            "gamma_k_nilpotent": self.gamma_k_nilpotent,
            "consistent": self.consistent,
            "gamma_k_order": self.gamma_k_order,
        }


def _scan(X, orders, partners, lo, hi, stop_at_first):
    """Scan rows lo..hi-1; return (pairs checked, least violating (i, j) or None)."""
    checked = 0
    hit = None
    for i in range(lo, hi):
        a = X[i]
        oa = orders[i]
        for j in partners.get(oa, ()):
            checked += 1
            b = X[j]
            if element_order([b[v] for v in a]) != oa * orders[j]:
                if hit is None:
                    # rows ascend and j ascends within a row: first hit is least
                    hit = (i, j)
                if stop_at_first:
                    return checked, hit
    return checked, hit


_shared: tuple = ()


def _init_worker(X, orders, partners):
    global _shared
    _shared = (X, orders, partners)


def _scan_worker(args):
    lo, hi, stop_at_first = args
    return _scan(*_shared, lo, hi, stop_at_first)


def _partners(orders) -> dict[int, tuple[int, ...]]:
    distinct = sorted(set(orders) - {1})
    out = {}
    for o in distinct:
        out[o] = tuple(j for j, oj in enumerate(orders) if oj != 1 and math.gcd(o, oj) == 1)
    return out


def check_condition(G: GroupLike, k: int, mode: str = CANONICAL, jobs: int = 1) -> ConditionReport:
    """Decide the coprime-order product condition for gamma_k-values of G.

    ``canonical`` mode returns the least violating pair (a, b) in the
    lexicographic order of image tuples and counts every coprime pair.
    ``fast`` stops at the first violation it meets.
    """
    if mode not in (FAST, CANONICAL):
        raise ValueError(f"unknown mode {mode!r}")
    G = as_group(G)
    start = time.perf_counter()
    X = gamma_values(G, k)
    Xl = list(X)
    orders = [element_order(x) for x in Xl]
    partners = _partners(orders)
    stop_at_first = mode == FAST
    n = len(Xl)
    if jobs <= 1 or n < 64:
        checked, hit = _scan(Xl, orders, partners, 0, n, stop_at_first)
    else:
        bounds = [n * t // (jobs * 4) for t in range(jobs * 4 + 1)]
        tasks = [(lo, hi, stop_at_first) for lo, hi in zip(bounds, bounds[1:]) if hi > lo]
        with ProcessPoolExecutor(
            max_workers=jobs, initializer=_init_worker, initargs=(Xl, orders, partners)
        ) as pool:
            results = list(pool.map(_scan_worker, tasks))
        checked = sum(c for c, _ in results)
        hits = [h for _, h in results if h is not None]
        hit = min(hits) if hits else None
    witness = None
    if hit is not None:
        i, j = hit
        a, b = Xl[i], Xl[j]
        witness = Witness(a, b, orders[i], orders[j], element_order(compose(a, b)))
    elapsed = (time.perf_counter() - start) * 1000.0
    return ConditionReport(k, hit is None, witness, checked, n, elapsed, mode)


def verify_theorem(G: GroupLike, k: int, mode: str = CANONICAL, jobs: int = 1) -> TheoremVerdict:
    """Compare the condition with nilpotency of gamma_k(G).

    gamma_k(G) here comes from normal closures of generator commutators,
    not from X_k, so the two sides share no code beyond the chain.
    """
    return verdict_from_report(G, check_condition(G, k, mode=mode, jobs=jobs))


def verdict_from_report(G: GroupLike, report: ConditionReport) -> TheoremVerdict:
    gk = gamma_subgroup(G, report.k, method="generators")
    return TheoremVerdict(report.k, report.holds, is_nilpotent(gk), gk.order)


def baumslag_wiegold(G: GroupLike) -> TheoremVerdict:
    """The k = 1 instance: coprime-order elements multiply orders iff G nilpotent."""
    return verify_theorem(G, 1)


def default_k_max(G: GroupLike) -> int:
    return lower_central_series(G, method="generators").stabilized_at + 1


def minimal_k(G: GroupLike, k_max: int | None = None) -> int | None:
    """Least k <= k_max with gamma_k(G) nilpotent.

    The default k_max is one past the stabilization index of the lower
    central series; gamma_k is constant from there on.
    """
    if k_max is None:
        k_max = default_k_max(G)
    for k in range(1, k_max + 1):
        if is_nilpotent(gamma_subgroup(G, k)):
            return k
    return None


def minimal_condition_k(G: GroupLike, k_max: int | None = None) -> int | None:
    """Least k <= k_max at which the coprime-order condition holds."""
    if k_max is None:
        k_max = default_k_max(G)
    for k in range(1, k_max + 1):
        if check_condition(G, k, mode=FAST).holds:
            return k
    return None


@dataclass(frozen=True)
class CorollaryVerdict:
    metanilpotent: bool
    minimal_k: int | None
    condition_k: int | None
    consistent: bool

    def to_dict(self) -> dict:
        return {
            "metanilpotent": self.metanilpotent,
            "minimal_k": self.minimal_k,
            "condition_k": self.condition_k,
            "consistent": self.consistent,
        }


def verify_corollary(G: GroupLike) -> CorollaryVerdict:
    """Metanilpotent iff some gamma_k is nilpotent iff the condition holds for some k."""
    G = as_group(G)
    meta = is_metanilpotent(G)
    mk = minimal_k(G)
    ck = minimal_condition_k(G)
    consistent = meta == (mk is not None) and mk == ck
    return CorollaryVerdict(meta, mk, ck, consistent)


def _require_condition(G: Group, k: int) -> None:
    if not check_condition(G, k, mode=FAST).holds:
        raise HypothesisNotMet(f"condition fails for {G.name} at k={k}")


def check_lemma_bbb(G: GroupLike, k: int) -> list[tuple[Permutation, Permutation]]:
    """Pairs (x, y), x in X_k normalizing <y> of coprime order, with [y, x] != 1."""
    G = as_group(G)
    _require_condition(G, k)
    violations = []
    ys = []
    for y in elements(G):
        if y == G.identity:
            continue
        powers = {y}
        z = compose(y, y)
        while z != y:
            powers.add(z)
            z = compose(z, y)
        ys.append((y, element_order(y), powers))
    for x in gamma_values(G, k):
        ox = element_order(x)
        for y, oy, powers in ys:
            if math.gcd(ox, oy) != 1 or conjugate(y, x) not in powers:
                continue
            if compose(x, y) != compose(y, x):
                violations.append((x, y))
    return violations


def check_lemma_gamma(G: GroupLike, k: int, q: int) -> bool:
    """Do the gamma_k-values of p-power order, p != q, generate G?"""
    G = as_group(G)
    if not is_perfect(G):
        raise NotPerfect(f"{G.name} is not perfect")
    if q not in prime_set(G):
        raise ValueError(f"{q} does not divide |{G.name}| = {G.order}")
    gens = []
    for x in gamma_values(G, k):
        o = element_order(x)
        if o > 1 and is_prime_power(o) and o % q:
            gens.append(x)
    return generated_subgroup(G, gens).order == G.order


def check_lemma_meta(G: GroupLike) -> list[Permutation]:
    """p-elements centralizing O_{p'}(F(G)) that fall outside F(G)."""
    G = as_group(G)
    if not is_metanilpotent(G):
        raise NotMetanilpotent(f"{G.name} is not metanilpotent")
    F = fitting_subgroup(G)
    violations = []
    for p in prime_set(G):
        opp = o_pprime_of_fitting(G, p)
        for x in elements(G):
            o = element_order(x)
            if p_part(o, p) != o:
                continue
            if mutual_commutator(G, opp, cyclic_subgroup(G, x)).order != 1:
                continue
            if not contains(F.group, x):
                violations.append(x)
    return violations


def check_lemma_solu(G: GroupLike, k: int) -> bool:
    """For soluble G satisfying the condition at k: is gamma_k(G) nilpotent?"""
    G = as_group(G)
    if not is_soluble(G):
        raise NotSoluble(f"{G.name} is not soluble")
    _require_condition(G, k)
    return is_nilpotent(gamma_subgroup(G, k, method="values"))


@dataclass(frozen=True)
class CoprimeActionResult:
    invariance: bool       # [N,a] == [[N,a],a]
    decomposition: bool    # N abelian => N = [N,a] x C_N(a); True when N nonabelian
    quotient_fixed: bool   # C_{N/M}(a) == C_N(a)M/M for tested M

    @property
    def holds(self) -> bool:
        return self.invariance and self.decomposition and self.quotient_fixed

    def to_dict(self) -> dict:
        return {
            "invariance": self.invariance,
            "decomposition": self.decomposition,
            "quotient_fixed": self.quotient_fixed,
            "holds": self.holds,
        }


def commutator_with_element(G: GroupLike, N: GroupLike, a: Permutation) -> Subgroup:
    """[N, a]: generated by n^-1 n^a over all n in N."""
    G = as_group(G)
    gens = [compose(inverse(n), conjugate(n, a)) for n in elements(as_group(N))]
    return generated_subgroup(G, gens, name="[N,a]")


def check_coprime_action(G: GroupLike, N: GroupLike, a: Permutation) -> CoprimeActionResult:
    """Check the standard coprime-action identities for conjugation by ``a`` on N."""
    G = as_group(G)
    Ng = as_group(N)
    if not contains(G, a):
        raise ValueError("acting element must lie in G")
    if not all(contains(Ng, conjugate(n, a)) for n in Ng.generators):
        raise NotNormal("a does not normalize N")
    if math.gcd(Ng.order, element_order(a)) != 1:
        raise NotCoprime(f"gcd(|N|={Ng.order}, |a|={element_order(a)}) != 1")

    Na = commutator_with_element(G, Ng, a)
    Naa = commutator_with_element(G, Na, a)
    invariance = same_subgroup(Na, Naa)

    n_elems = elements(Ng)
    fixed = [n for n in n_elems if conjugate(n, a) == n]
    decomposition = True
    if is_abelian(Ng):
        fixed_set = set(fixed)
        meet = [x for x in elements(Na.group) if x in fixed_set]
        decomposition = Na.order * len(fixed) == Ng.order and len(meet) == 1

    # lower central terms are characteristic in N, hence a-invariant
    Ms = [t.group for t in lower_central_series(Ng, method="generators").terms]
    Ms.append(generated_subgroup(Ng, []).group)
    quotient_fixed = all(_fixed_cosets_match(Ng, M, a, fixed) for M in Ms)
    return CoprimeActionResult(invariance, decomposition, quotient_fixed)


def _fixed_cosets_match(N: Group, M: Group, a: Permutation, fixed: list) -> bool:
    # cosets Mn fixed by a are those with n^-1 n^a in M
    m_elems = list(elements(M))
    coset_of = {}
    for n in elements(N):
        if n in coset_of:
            continue
        for m in m_elems:
            coset_of[compose(m, n)] = n
    fixed_cosets = {
        rep for rep in set(coset_of.values()) if contains(M, compose(inverse(rep), conjugate(rep, a)))
    }
    image = {coset_of[c] for c in fixed}
    return fixed_cosets == image
