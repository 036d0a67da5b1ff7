"""Regenerate src/metanil/data/corpus.json.

Facts are computed here by the slower oracles (naive closure for orders,
normal-closure nilpotency for Fitting subgroups) and frozen into the
manifest. Towers and coprime-action cases are listed by hand below.

    python scripts/pin_corpus.py
"""

from pathlib import Path

from metanil.catalog import CorpusEntry, builtin, corpus_specs, save_manifest
from metanil.criterion import minimal_k
from metanil.fitting import fitting_height, fitting_subgroup_by_closures, verify_tower, TowerCandidate
from metanil.perm import Permutation, build_group, naive_closure
from metanil.series import (
    derived_length,
    generated_subgroup,
    is_soluble,
    lower_central_series,
    nilpotency_class,
)

OUT = Path(__file__).resolve().parents[1] / "src" / "metanil" / "data" / "corpus.json"


def cyc(n, *cycles):
    return Permutation.from_cycles(n, *cycles)


def gen(name, index):
    return builtin(name).generators[index]


def _q8_in(name):
    """The Fitting subgroup generators of SL(2,3) or GL(2,3) (a quaternion group)."""
    G = build_group(builtin(name))
    return tuple(fitting_subgroup_by_closures(G).group.generators)


def towers():
    v4 = (cyc(4, (0, 1), (2, 3)), cyc(4, (0, 2), (1, 3)))
    return {
        "S3": [(2, [cyc(3, (0, 1))]), (3, [cyc(3, (0, 1, 2))])],
        "D3": [(2, [gen("D3", 1)]), (3, [gen("D3", 0)])],
        "D5": [(2, [gen("D5", 1)]), (5, [gen("D5", 0)])],
        "S4": [(2, [cyc(4, (2, 3))]), (3, [cyc(4, (1, 2, 3))]), (2, list(v4))],
        "A4": [(3, [cyc(4, (1, 2, 3))]), (2, list(v4))],
        "F20": [(2, [gen("F20", 1)]), (5, [gen("F20", 0)])],
        "SL(2,3)": [(3, [gen("SL(2,3)", 0)]), (2, list(_q8_in("SL(2,3)")))],
        "GL(2,3)": [(2, [gen("GL(2,3)", 2)]), (3, [gen("GL(2,3)", 0)]), (2, list(_q8_in("GL(2,3)")))],
        "S3wrC2": [(2, [cyc(6, (0, 1))]), (3, [cyc(6, (0, 1, 2))])],
        "A4wrC2": [
            (2, [cyc(8, (0, 4), (1, 5), (2, 6), (3, 7))]),
            (3, [cyc(8, (1, 2, 3), (5, 7, 6))]),
            (2, [cyc(8, (0, 1), (2, 3)), cyc(8, (0, 2), (1, 3)),
                 cyc(8, (4, 5), (6, 7)), cyc(8, (4, 6), (5, 7))]),
        ],
        "S4xC3": [(2, [cyc(7, (2, 3))]), (3, [cyc(7, (1, 2, 3))]),
                  (2, [cyc(7, (0, 1), (2, 3)), cyc(7, (0, 2), (1, 3))])],
    }


def coprime_actions():
    v4 = [cyc(4, (0, 1), (2, 3)), cyc(4, (0, 2), (1, 3))]
    return {
        "S3": [([cyc(3, (0, 1, 2))], cyc(3, (0, 1))),
               ([cyc(3, (0, 1, 2))], Permutation.identity(3))],
        "S4": [(v4, cyc(4, (0, 1, 2)))],
        "A4": [(v4, cyc(4, (1, 2, 3)))],
        "A5": [([cyc(5, (0, 1), (2, 3)), cyc(5, (0, 2), (1, 3))], cyc(5, (0, 1, 2)))],
        "D5": [([gen("D5", 0)], gen("D5", 1))],
        "D6": [([gen("D6", 0) ** 2], gen("D6", 1))],
        "C6": [([gen("C6", 0) ** 2], gen("C6", 0) ** 3)],
        "F20": [([gen("F20", 0)], gen("F20", 1))],
        "SL(2,3)": [(list(_q8_in("SL(2,3)")), gen("SL(2,3)", 0))],
        "GL(2,3)": [(list(_q8_in("GL(2,3)")), gen("GL(2,3)", 0))],
        "S3xS3": [([cyc(6, (0, 1, 2)), cyc(6, (3, 4, 5))], cyc(6, (0, 1), (3, 4)))],
        "A4xC2": [([cyc(6, (0, 1), (2, 3)), cyc(6, (0, 2), (1, 3))], cyc(6, (1, 2, 3)))],
        "S4xC5": [([cyc(9, (4, 5, 6, 7, 8))], cyc(9, (0, 1, 2)))],
    }


def pinned_facts(G):
    order = len(naive_closure(G.generators, G.degree))
    soluble = is_soluble(G)
    height = fitting_height(G) if soluble else None
    return {
        "order": order,
        "soluble": soluble,
        "derived_length": derived_length(G),
        "nilpotency_class": nilpotency_class(G),
        "lcs_orders": lower_central_series(G, method="commutators").orders,
        "fitting_order": fitting_subgroup_by_closures(G).order,
        "fitting_height": height,
        "metanilpotent": soluble and height <= 2,
        "minimal_k": minimal_k(G),
    }


def main():
    tw = towers()
    ca = coprime_actions()
    entries = []
    for spec in corpus_specs():
        G = build_group(spec)
        tower = tuple((p, tuple(gs)) for p, gs in tw.get(spec.name, []))
        if tower:
            cand = TowerCandidate(
                tuple(generated_subgroup(G, gs) for _, gs in tower), tuple(p for p, _ in tower)
            )
            assert verify_tower(G, cand), spec.name
        actions = tuple((tuple(n), a) for n, a in ca.get(spec.name, []))
        entries.append(CorpusEntry(spec.name, spec, pinned_facts(G), tower, actions))
        print(f"pinned {spec.name}: {entries[-1].expected}")
    save_manifest(entries, OUT, provenance="derived by this repo's own oracles at pin time (scripts/pin_corpus.py)")


if __name__ == "__main__":
    main()
