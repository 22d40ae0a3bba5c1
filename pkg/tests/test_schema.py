"""Structure parsing, cluster expansion, canonical serialization, schema checks."""

from __future__ import annotations

import json

import pytest

from reqont.errors import ParseError
from reqont.findings import (
    BAD_CARDINALITY,
    BAD_DEFAULT,
    BAD_VERSION,
    DANGLING_RELATION_TARGET,
    DUPLICATE_CHARACTERISTIC,
    DUPLICATE_CLUSTER_MEMBER,
    DUPLICATE_DIMENSION,
    DUPLICATE_RELATION,
    DUPLICATE_SCOPE_NOTE,
    DUPLICATE_TAXONOMY,
    SEVERITY_ERROR,
)
from reqont.schema import (
    UNBOUNDED,
    expand_clusters,
    parse_structure,
    serialize_structure,
    validate_schema,
)

from conftest import schema_from_dict, seed_structure


def minimal_structure() -> dict:
    return {
        "version": 1,
        "taxonomies": [
            {
                "name": "factor",
                "dimensions": [
                    {"name": "scope", "characteristics": ["word", "sentence"], "required": True}
                ],
                "dimension_clusters": [
                    {
                        "name": "aspect",
                        "members": ["ambiguity", "completeness"],
                        "characteristics": ["hit", "miss"],
                        "default": "miss",
                    }
                ],
                "scope_notes": [{"name": "name", "required": True}],
                "relations": [],
            },
            {
                "name": "description",
                "dimensions": [],
                "scope_notes": [{"name": "definition", "required": True}],
                "relations": [
                    {"name": "describes", "target": "factor", "min": 1, "max": 1},
                    {"name": "cites", "target": "factor", "min": 0, "max": "unbounded"},
                ],
            },
        ],
    }


def test_parse_minimal_structure():
    schema = schema_from_dict(minimal_structure())
    assert schema.version == 1
    assert schema.taxonomy_names() == ("factor", "description")
    factor = schema.taxonomy("factor")
    assert factor.dimensions[0].required is True
    cluster = factor.dimension_clusters[0]
    assert cluster.members == ("ambiguity", "completeness")
    describes = schema.taxonomy("description").relations[0]
    assert describes.min_cardinality == 1 and describes.max_cardinality == 1
    cites = schema.taxonomy("description").relations[1]
    assert cites.max_cardinality is UNBOUNDED


def test_cluster_expansion_names_and_flags():
    schema = schema_from_dict(minimal_structure())
    expanded = expand_clusters(schema.taxonomy("factor"))
    names = [d.name for d in expanded]
    assert names == ["scope", "aspect.ambiguity", "aspect.completeness"]
    for dim in expanded[1:]:
        assert dim.required is False
        assert dim.default == "miss"
        assert dim.characteristics == ("hit", "miss")


def test_round_trip_is_identity_on_canonical_form():
    raw = json.dumps(minimal_structure())
    schema = parse_structure(raw)
    once = serialize_structure(schema)
    again = serialize_structure(parse_structure(once))
    assert once == again
    # canonical form is indented JSON with sorted keys and a trailing newline
    assert once.endswith(b"\n")
    payload = json.loads(once.decode("utf-8"))
    assert payload["version"] == 1


def test_seed_structure_is_canonical_and_clean(seed_repo):
    raw = (seed_repo.layout.root / "structure.json").read_bytes()
    assert serialize_structure(seed_repo.schema) == raw
    findings = validate_schema(seed_repo.schema)
    assert findings == ()


@pytest.mark.parametrize(
    "mutate, message_part",
    [
        (lambda s: s.pop("version"), "version"),
        (lambda s: s.update(extra=1), "extra"),
        (lambda s: s.__setitem__("taxonomies", {}), "array"),
        (
            lambda s: s["taxonomies"][0]["dimensions"][0].__setitem__("characteristics", ["one"]),
            "characteristic",
        ),
        (
            lambda s: s["taxonomies"][1]["relations"][0].__setitem__("max", 0),
            "max",
        ),
        (
            lambda s: s["taxonomies"][1]["relations"][0].__setitem__("min", -1),
            "min",
        ),
        (
            lambda s: s["taxonomies"][1]["relations"][0].__setitem__("max", "several"),
            "max",
        ),
    ],
)
def test_parse_rejections(mutate, message_part):
    data = minimal_structure()
    mutate(data)
    with pytest.raises(ParseError) as exc:
        parse_structure(json.dumps(data))
    assert message_part in str(exc.value)


def test_parse_rejects_bad_json_with_location():
    with pytest.raises(ParseError) as exc:
        parse_structure('{"version": 1,', path="structure.json")
    assert "structure.json" in str(exc.value)


def _codes(findings):
    return sorted(f.code for f in findings)


def test_validate_duplicate_taxonomy():
    data = minimal_structure()
    data["taxonomies"].append(dict(data["taxonomies"][0]))
    findings = validate_schema(schema_from_dict(data))
    assert DUPLICATE_TAXONOMY in _codes(findings)


def test_validate_duplicate_dimension_across_cluster():
    data = minimal_structure()
    # plain dimension colliding with an expanded cluster member name
    data["taxonomies"][0]["dimensions"].append(
        {"name": "aspect.ambiguity", "characteristics": ["x", "y"]}
    )
    findings = validate_schema(schema_from_dict(data))
    assert DUPLICATE_DIMENSION in _codes(findings)


def test_validate_duplicate_characteristic():
    data = minimal_structure()
    data["taxonomies"][0]["dimensions"][0]["characteristics"] = ["word", "word"]
    findings = validate_schema(schema_from_dict(data))
    assert _codes(findings) == [DUPLICATE_CHARACTERISTIC]


def test_validate_bad_default():
    data = minimal_structure()
    data["taxonomies"][0]["dimensions"][0]["required"] = False
    data["taxonomies"][0]["dimensions"][0]["default"] = "nope"
    findings = validate_schema(schema_from_dict(data))
    assert _codes(findings) == [BAD_DEFAULT]


def test_validate_dangling_relation_target():
    data = minimal_structure()
    data["taxonomies"][1]["relations"][0]["target"] = "fact"
    findings = validate_schema(schema_from_dict(data))
    assert _codes(findings) == [DANGLING_RELATION_TARGET]


def test_validate_bad_cardinality():
    data = minimal_structure()
    data["taxonomies"][1]["relations"][0]["min"] = 2
    findings = validate_schema(schema_from_dict(data))
    assert _codes(findings) == [BAD_CARDINALITY]


def test_validate_bad_version():
    data = minimal_structure()
    data["version"] = 0
    findings = validate_schema(schema_from_dict(data))
    assert _codes(findings) == [BAD_VERSION]


def test_validate_duplicate_scope_note_and_relation():
    data = minimal_structure()
    data["taxonomies"][0]["scope_notes"].append({"name": "name"})
    data["taxonomies"][1]["relations"].append(
        {"name": "describes", "target": "factor", "min": 0, "max": 1}
    )
    codes = _codes(validate_schema(schema_from_dict(data)))
    assert DUPLICATE_SCOPE_NOTE in codes
    assert DUPLICATE_RELATION in codes


def test_validate_duplicate_cluster_member():
    data = minimal_structure()
    data["taxonomies"][0]["dimension_clusters"][0]["members"] = ["ambiguity", "ambiguity"]
    codes = _codes(validate_schema(schema_from_dict(data)))
    assert DUPLICATE_CLUSTER_MEMBER in codes


def test_findings_are_errors():
    data = minimal_structure()
    data["version"] = 0
    for finding in validate_schema(schema_from_dict(data)):
        assert finding.severity == SEVERITY_ERROR


def test_public_accessibility_extension_is_validated():
    data = minimal_structure()
    data["public_accessibility"] = {"nosuch": ["word"]}
    codes = _codes(validate_schema(schema_from_dict(data)))
    assert "unknown-taxonomy" in codes
    data = minimal_structure()
    data["public_accessibility"] = {"factor": ["not-a-characteristic"]}
    codes = _codes(validate_schema(schema_from_dict(data)))
    assert "unknown-characteristic" in codes


def test_seed_structure_vocabulary(seed_repo):
    # the four taxonomies and the aspect cluster members that the corpus uses
    assert seed_repo.schema.taxonomy_names() == ("factor", "description", "dataset", "approach")
    factor = seed_repo.schema.taxonomy("factor")
    expanded = {d.name for d in expand_clusters(factor)}
    assert "aspect.understandability" in expanded
    assert "aspect.verifiability" in expanded
