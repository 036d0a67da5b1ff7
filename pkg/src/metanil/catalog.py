"""Built-in groups, direct products, spec files and the corpus manifest.

Group-spec JSON::

    {"name": "S3", "degree": 3, "generators": [[1, 0, 2], [1, 2, 0]]}

Image arrays are 0-based and must be permutations of ``0..degree-1``.
The corpus manifest is ``{"version": 1, "entries": [...]}``; each entry
embeds a spec plus optional pinned facts, a tower and coprime-action cases.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .errors import InvalidSpec, ParseError, UnsupportedParameter
from .perm import GroupSpec, Permutation

MANIFEST_VERSION = 1


def _spec(name, degree, gens) -> GroupSpec:
    gens = [g for g in gens if not g.is_identity()] or [Permutation.identity(degree)]
    return GroupSpec(name, degree, tuple(gens))


def cyclic(n: int) -> GroupSpec:
    if n < 1:
        raise UnsupportedParameter("cyclic(n) needs n >= 1")
    return _spec(f"C{n}", n, [Permutation.from_cycles(n, tuple(range(n)))])


def dihedral(n: int) -> GroupSpec:
    """Dihedral group of order 2n (symmetries of an n-gon for n >= 3)."""
    if n < 1:
        raise UnsupportedParameter("dihedral(n) needs n >= 1")
    if n == 1:
        return _spec("D1", 2, [Permutation.from_cycles(2, (0, 1))])
    if n == 2:
        return _spec("D2", 4, [
            Permutation.from_cycles(4, (0, 1), (2, 3)),
            Permutation.from_cycles(4, (0, 2), (1, 3)),
        ])
    rotation = Permutation.from_cycles(n, tuple(range(n)))
    reflection = Permutation._raw([(-i) % n for i in range(n)])
    return _spec(f"D{n}", n, [rotation, reflection])


def symmetric(n: int) -> GroupSpec:
    if n < 1:
        raise UnsupportedParameter("symmetric(n) needs n >= 1")
    if n == 1:
        return _spec("S1", 1, [])
    return _spec(f"S{n}", n, [
        Permutation.from_cycles(n, (0, 1)),
        Permutation.from_cycles(n, tuple(range(n))),
    ])


def alternating(n: int) -> GroupSpec:
    if n < 1:
        raise UnsupportedParameter("alternating(n) needs n >= 1")
    gens = [Permutation.from_cycles(n, (0, 1, i)) for i in range(2, n)]
    return _spec(f"A{n}", n, gens)


def quaternion8() -> GroupSpec:
    """Q8 in its regular representation on 8 points."""
    # elements as (sign, unit) with unit in 1, i, j, k
    table = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
        ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
        ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
    }
    elems = [(s, u) for s in (1, -1) for u in "1ijk"]
    index = {e: n for n, e in enumerate(elems)}

    def right_mult(g):
        images = []
        for s, u in elems:
            sign, unit = table[(u, g)]
            images.append(index[(s * sign, unit)])
        return Permutation(images)

    return _spec("Q8", 8, [right_mult("i"), right_mult("j")])


def _nonzero_vectors(p: int) -> list[tuple[int, int]]:
    return [(x, y) for x in range(p) for y in range(p) if (x, y) != (0, 0)]


def _matrix_action(p: int, mats) -> list[Permutation]:
    vecs = _nonzero_vectors(p)
    index = {v: i for i, v in enumerate(vecs)}
    gens = []
    for (a, b), (c, d) in mats:
        # row vector times matrix
        gens.append(Permutation([index[((x * a + y * c) % p, (x * b + y * d) % p)] for x, y in vecs]))
    return gens


def sl2(p: int) -> GroupSpec:
    """SL(2, p) acting on the p^2 - 1 nonzero vectors of F_p^2."""
    if p not in (3, 5):
        raise UnsupportedParameter("sl2(p) supports p in {3, 5}")
    gens = _matrix_action(p, [((1, 1), (0, 1)), ((0, p - 1), (1, 0))])
    return _spec(f"SL(2,{p})", p * p - 1, gens)


def gl2(p: int) -> GroupSpec:
    """GL(2, p) acting on the nonzero vectors of F_p^2."""
    if p != 3:
        raise UnsupportedParameter("gl2(p) supports p = 3")
    gens = _matrix_action(p, [((1, 1), (0, 1)), ((0, p - 1), (1, 0)), ((p - 1, 0), (0, 1))])
    return _spec(f"GL(2,{p})", p * p - 1, gens)


def frobenius20() -> GroupSpec:
    """Affine maps x -> ax + b over F_5 on 5 points."""
    shift = Permutation([(x + 1) % 5 for x in range(5)])
    scale = Permutation([(2 * x) % 5 for x in range(5)])
    return _spec("F20", 5, [shift, scale])


def direct_product(a: GroupSpec, b: GroupSpec, name: str | None = None) -> GroupSpec:
    """a acts on points 0..deg(a)-1, b on the next deg(b) points."""
    da, db = a.degree, b.degree
    gens = [Permutation(tuple(g) + tuple(range(da, da + db))) for g in a.generators]
    gens += [Permutation(tuple(range(da)) + tuple(da + v for v in g)) for g in b.generators]
    return _spec(name or f"{a.name}x{b.name}", da + db, gens)


def wreath_c2(a: GroupSpec, name: str | None = None) -> GroupSpec:
    """a wr C2: two copies of a on disjoint blocks plus the block swap."""
    d = a.degree
    base = direct_product(a, a)
    swap = Permutation(tuple(range(d, 2 * d)) + tuple(range(d)))
    return _spec(name or f"{a.name}wrC2", 2 * d, list(base.generators) + [swap])


_BUILTIN_PATTERNS = [
    (re.compile(r"C(\d+)$"), lambda m: cyclic(int(m[1]))),
    (re.compile(r"D(\d+)$"), lambda m: dihedral(int(m[1]))),
    (re.compile(r"S(\d+)$"), lambda m: symmetric(int(m[1]))),
    (re.compile(r"A(\d+)$"), lambda m: alternating(int(m[1]))),
    (re.compile(r"Q8$"), lambda m: quaternion8()),
    (re.compile(r"SL\(2,(\d+)\)$|SL2_(\d+)$"), lambda m: sl2(int(m[1] or m[2]))),
    (re.compile(r"GL\(2,(\d+)\)$|GL2_(\d+)$"), lambda m: gl2(int(m[1] or m[2]))),
    (re.compile(r"F20$"), lambda m: frobenius20()),
    (re.compile(r"(.+)wrC2$"), lambda m: wreath_c2(builtin(m[1]))),
]


def builtin(name: str) -> GroupSpec:
    """Resolve names like ``S4``, ``C12``, ``SL(2,3)``, ``F20`` or products ``S3xC5``."""
    name = name.strip()
    if not name:
        raise UnsupportedParameter("empty group name")
    if "x" in name:
        parts = name.split("x")
        spec = builtin(parts[0])
        for part in parts[1:]:
            spec = direct_product(spec, builtin(part))
        return GroupSpec(name, spec.degree, spec.generators)
    for pattern, make in _BUILTIN_PATTERNS:
        m = pattern.match(name)
        if m:
            return make(m)
    raise UnsupportedParameter(f"unknown builtin group {name!r}")


# -- spec files -------------------------------------------------------------

def spec_to_dict(spec: GroupSpec) -> dict:
    return {"name": spec.name, "degree": spec.degree, "generators": [list(g) for g in spec.generators]}


def spec_from_dict(data, where: str = "") -> GroupSpec:
    prefix = f"{where}." if where else ""
    if not isinstance(data, dict):
        raise ParseError("expected an object", f"{where or '<root>'}")
    for key, typ in (("name", str), ("degree", int), ("generators", list)):
        if key not in data:
            raise ParseError("missing field", f"{prefix}{key}")
        if not isinstance(data[key], typ) or isinstance(data[key], bool):
            raise ParseError(f"expected {typ.__name__}", f"{prefix}{key}")
    degree = data["degree"]
    gens = []
    for i, g in enumerate(data["generators"]):
        loc = f"{prefix}generators[{i}]"
        if not isinstance(g, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in g):
            raise ParseError("expected a list of integers", loc)
        if len(g) != degree:
            raise InvalidSpec(f"{loc}: length {len(g)} does not match degree {degree}")
        if sorted(g) != list(range(degree)):
            raise InvalidSpec(f"{loc}: not a permutation of 0..{degree - 1}")
        gens.append(Permutation(g))
    return GroupSpec(data["name"], degree, tuple(gens))


def _read_json(path) -> object:
    text = Path(path).read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"{path}:{exc.lineno}:{exc.colno}") from None


def load_spec(path) -> GroupSpec:
    return spec_from_dict(_read_json(path))


def save_spec(spec: GroupSpec, path) -> None:
    Path(path).write_text(json.dumps(spec_to_dict(spec), indent=2) + "\n", encoding="utf-8")


# -- corpus manifest --------------------------------------------------------

@dataclass(frozen=True)
class CorpusEntry:
    name: str
    spec: GroupSpec
    expected: dict = field(default_factory=dict)
    tower: tuple = ()            # ((prime, (Permutation, ...)), ...), top to bottom
    coprime_actions: tuple = ()  # ((normal gens tuple, acting Permutation), ...)

    def to_dict(self) -> dict:
        out = {"name": self.name, "spec": spec_to_dict(self.spec)}
        if self.expected:
            out["expected"] = dict(self.expected)
        if self.tower:
            out["tower"] = [{"prime": p, "generators": [list(g) for g in gens]} for p, gens in self.tower]
        if self.coprime_actions:
            out["coprime_actions"] = [
                {"normal": [list(g) for g in gens], "element": list(a)} for gens, a in self.coprime_actions
            ]
        return out


def _perm_list(data, loc) -> tuple:
    if not isinstance(data, list):
        raise ParseError("expected a list of image arrays", loc)
    try:
        return tuple(Permutation(g) for g in data)
    except (TypeError, ValueError) as exc:
        raise ParseError(str(exc), loc) from None


def entry_from_dict(data, where: str) -> CorpusEntry:
    if not isinstance(data, dict) or "spec" not in data:
        raise ParseError("entry needs a 'spec' object", where)
    spec = spec_from_dict(data["spec"], f"{where}.spec")
    tower = tuple(
        (t["prime"], _perm_list(t["generators"], f"{where}.tower[{i}]"))
        for i, t in enumerate(data.get("tower", []))
    )
    actions = tuple(
        (_perm_list(c["normal"], f"{where}.coprime_actions[{i}]"), Permutation(c["element"]))
        for i, c in enumerate(data.get("coprime_actions", []))
    )
    return CorpusEntry(data.get("name", spec.name), spec, dict(data.get("expected", {})), tower, actions)


def manifest_from_dict(data, source: str = "<manifest>") -> list[CorpusEntry]:
    if not isinstance(data, dict):
        raise ParseError("manifest must be an object", source)
    if data.get("version") != MANIFEST_VERSION:
        raise ParseError(f"unsupported manifest version {data.get('version')!r}", f"{source}:version")
    entries = data.get("entries")
    if not isinstance(entries, list):
        raise ParseError("missing 'entries' list", f"{source}:entries")
    return [entry_from_dict(e, f"entries[{i}]") for i, e in enumerate(entries)]


def load_manifest(path) -> list[CorpusEntry]:
    return manifest_from_dict(_read_json(path), str(path))


def manifest_to_dict(entries, provenance: str | None = None) -> dict:
    out = {"version": MANIFEST_VERSION}
    if provenance:
        out["provenance"] = provenance
    out["entries"] = [e.to_dict() for e in entries]
    return out


def save_manifest(entries, path, provenance: str | None = None) -> None:
    text = json.dumps(manifest_to_dict(entries, provenance), indent=1) + "\n"
    Path(path).write_text(text, encoding="utf-8")


def standard_manifest_path():
    return resources.files("metanil") / "data" / "corpus.json"


def standard_corpus() -> list[CorpusEntry]:
    with resources.as_file(standard_manifest_path()) as path:
        return load_manifest(path)


def corpus_specs() -> list[GroupSpec]:
    """Specs of the standard corpus, built from constructors (no pinned data)."""
    specs = [cyclic(n) for n in range(1, 25)]
    specs += [dihedral(n) for n in range(1, 13)]
    specs += [
        quaternion8(), symmetric(3), symmetric(4), symmetric(5),
        alternating(4), alternating(5), sl2(3), sl2(5), gl2(3), frobenius20(),
    ]
    for a, b in (("S3", "S3"), ("A4", "C2"), ("S4", "C3"), ("S4", "C5"), ("Q8", "C3"),
                 ("S3", "C5"), ("A5", "C2"), ("D4", "S3"), ("SL(2,3)", "C5"), ("S4", "S3"),
                 ("S5", "C3")):
        specs.append(direct_product(builtin(a), builtin(b)))
    specs += [wreath_c2(symmetric(3)), wreath_c2(alternating(4))]
    return specs

