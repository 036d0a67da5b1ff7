import json
from math import factorial

import pytest

from conftest import corpus_entries, group
from metanil.catalog import (
    CorpusEntry,
    alternating,
    builtin,
    corpus_specs,
    cyclic,
    dihedral,
    direct_product,
    frobenius20,
    gl2,
    load_manifest,
    load_spec,
    manifest_from_dict,
    quaternion8,
    save_manifest,
    save_spec,
    sl2,
    spec_from_dict,
    spec_to_dict,
    standard_corpus,
    symmetric,
    wreath_c2,
)
from metanil.criterion import minimal_k
from metanil.errors import InputError, InvalidSpec, ParseError, UnsupportedParameter
from metanil.fitting import fitting_height, fitting_subgroup
from metanil.perm import build_group
from metanil.series import derived_length, is_abelian, is_soluble, lower_central_series, nilpotency_class


def order(spec):
    return build_group(spec).order


class TestConstructors:
    @pytest.mark.parametrize("n", [1, 2, 5, 12])
    def test_cyclic(self, n):
        G = build_group(cyclic(n))
        assert G.order == n and is_abelian(G)

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 8])
    def test_dihedral(self, n):
        assert order(dihedral(n)) == 2 * n

    def test_d2_is_klein(self):
        assert is_abelian(build_group(dihedral(2)))

    @pytest.mark.parametrize("n", [1, 2, 3, 5])
    def test_symmetric(self, n):
        assert order(symmetric(n)) == factorial(n)

    @pytest.mark.parametrize("n,size", [(3, 3), (4, 12), (5, 60)])
    def test_alternating(self, n, size):
        assert order(alternating(n)) == size

    def test_small_groups(self):
        assert order(quaternion8()) == 8
        assert order(sl2(3)) == 24
        assert order(sl2(5)) == 120
        assert order(gl2(3)) == 48
        assert order(frobenius20()) == 20

    def test_q8_has_unique_involution(self):
        from metanil.perm import element_order, elements
        G = build_group(quaternion8())
        assert sum(1 for x in elements(G) if element_order(x) == 2) == 1

    def test_unsupported(self):
        with pytest.raises(UnsupportedParameter):
            cyclic(0)
        with pytest.raises(UnsupportedParameter):
            sl2(7)
        assert issubclass(UnsupportedParameter, InputError)

    def test_direct_product(self):
        spec = direct_product(symmetric(3), cyclic(5))
        assert spec.name == "S3xC5" and spec.degree == 8
        assert order(spec) == 30

    def test_product_examples(self):
        from metanil.fitting import is_metanilpotent
        c6 = build_group(direct_product(cyclic(2), cyclic(3)))
        assert c6.order == 6 and is_abelian(c6)
        s3s3 = build_group(direct_product(symmetric(3), symmetric(3)))
        assert s3s3.order == 36 and is_metanilpotent(s3s3)
        s4c5 = build_group(direct_product(symmetric(4), cyclic(5)))
        assert s4c5.order == 120 and not is_metanilpotent(s4c5)

    def test_wreath(self):
        assert order(wreath_c2(symmetric(3))) == 72
        assert order(wreath_c2(alternating(4))) == 288


class TestBuiltin:
    @pytest.mark.parametrize("name,size", [
        ("C7", 7), ("D6", 12), ("S4", 24), ("A5", 60), ("Q8", 8), ("SL(2,3)", 24),
        ("GL(2,3)", 48), ("F20", 20), ("S3xC5", 30), ("S3xS3xC2", 72),
        ("S3wrC2", 72),
    ])
    def test_names(self, name, size):
        spec = builtin(name)
        assert spec.name == name
        assert order(spec) == size

    def test_alias_gets_canonical_name(self):
        assert builtin("SL2_5").name == "SL(2,5)"
        assert builtin("GL2_3") == builtin("GL(2,3)")

    @pytest.mark.parametrize("name", ["", "Foo", "X9", "C"])
    def test_unknown(self, name):
        with pytest.raises(UnsupportedParameter):
            builtin(name)


class TestSpecFiles:
    def test_round_trip(self, tmp_path):
        path = tmp_path / "g.json"
        spec = builtin("SL(2,3)")
        save_spec(spec, path)
        assert load_spec(path) == spec
        assert json.loads(path.read_text())["degree"] == 8

    def test_dict_round_trip(self):
        spec = builtin("D4xS3")
        assert spec_from_dict(spec_to_dict(spec)) == spec

    @pytest.mark.parametrize("data,loc", [
        ([], "<root>"),
        ({"degree": 3, "generators": []}, "name"),
        ({"name": "x", "degree": "3", "generators": []}, "degree"),
        ({"name": "x", "degree": 3, "generators": {}}, "generators"),
        ({"name": "x", "degree": 3, "generators": [[0, 1, "2"]]}, "generators[0]"),
    ])
    def test_parse_errors(self, data, loc):
        with pytest.raises(ParseError) as info:
            spec_from_dict(data)
        assert info.value.location == loc

    @pytest.mark.parametrize("gens", [[[0, 1]], [[0, 0, 1]], [[0, 1, 3]]])
    def test_invalid(self, gens):
        with pytest.raises(InvalidSpec):
            spec_from_dict({"name": "x", "degree": 3, "generators": gens})

    def test_no_generators(self):
        with pytest.raises(InvalidSpec):
            spec_from_dict({"name": "x", "degree": 3, "generators": []})

    def test_bad_json(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"name": "x",\n "degree": }')
        with pytest.raises(ParseError) as info:
            load_spec(path)
        assert ":2:" in str(info.value)


class TestManifest:
    def test_round_trip(self, tmp_path):
        entries = standard_corpus()[:5]
        path = tmp_path / "m.json"
        save_manifest(entries, path)
        assert load_manifest(path) == entries

    def test_version(self):
        with pytest.raises(ParseError):
            manifest_from_dict({"version": 2, "entries": []})

    def test_missing_entries(self):
        with pytest.raises(ParseError):
            manifest_from_dict({"version": 1})

    def test_bad_entry_location(self):
        data = {"version": 1, "entries": [{"spec": {"name": "x", "degree": 2, "generators": [[1, "a"]]}}]}
        with pytest.raises(ParseError) as info:
            manifest_from_dict(data)
        assert info.value.location == "entries[0].spec.generators[0]"

    def test_entry_defaults(self):
        entry = CorpusEntry("C2", cyclic(2))
        assert entry.to_dict() == {"name": "C2", "spec": spec_to_dict(cyclic(2))}

    def test_standard_matches_constructors(self):
        assert [e.spec for e in standard_corpus()] == corpus_specs()


class TestCorpusCoverage:
    def test_size(self):
        assert len(corpus_entries()) >= 40
        names = {e.name for e in corpus_entries()}
        assert {f"C{n}" for n in range(1, 25)} <= names
        assert {f"D{n}" for n in range(1, 13)} <= names

    def test_required_names(self):
        names = {e.name for e in corpus_entries()}
        for required in ("C1", "C12", "Q8", "S3", "S4", "A4", "A5", "SL(2,3)", "SL(2,5)", "F20"):
            assert required in names

    def test_mix(self):
        entries = corpus_entries()
        meta = [e for e in entries if e.expected["metanilpotent"]]
        insoluble = [e for e in entries if not e.expected["soluble"]]
        tall = [e for e in entries if e.expected["soluble"] and e.expected["fitting_height"] >= 3]
        nilpotent = [e for e in entries if e.expected["nilpotency_class"] is not None]
        assert len(meta) >= 10 and len(insoluble) >= 4 and len(tall) >= 3 and len(nilpotent) >= 10
        assert any(e.expected["minimal_k"] == 3 for e in entries)

    def test_coprime_actions(self):
        assert sum(len(e.coprime_actions) for e in corpus_entries()) >= 10


@pytest.mark.parametrize("entry", corpus_entries(), ids=lambda e: e.name)
def test_pinned_facts(entry):
    G = group(entry.name)
    exp = entry.expected
    soluble = is_soluble(G)
    assert G.order == exp["order"]
    assert soluble == exp["soluble"]
    assert derived_length(G) == exp["derived_length"]
    assert nilpotency_class(G) == exp["nilpotency_class"]
    assert lower_central_series(G).orders == exp["lcs_orders"]
    assert fitting_subgroup(G).order == exp["fitting_order"]
    assert (fitting_height(G) if soluble else None) == exp["fitting_height"]
    assert minimal_k(G) == exp["minimal_k"]
