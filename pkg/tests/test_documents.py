"""Body document serialization: round trips, strict schema, canonicalization."""

import numpy as np
import pytest

from sphconvex import diameter, quarter_disk, thickness
from sphconvex.documents import (
    DocumentError,
    document_from_body,
    document_from_spec,
    parse,
    serialize,
)
from sphconvex.sphere import dist


class TestSpecDocuments:
    @pytest.mark.parametrize("kind,params", [
        ("disk", {"radius": 0.4}),
        ("quarter_disk", {"radius": 0.8}),
        ("regular_odd_gon", {"count": 5, "thickness": 0.7}),
        ("reuleaux_odd_gon", {"count": 3, "width": 1.8}),
        ("isosceles_triangle", {"arm": 1.7, "base": 1.0}),
    ])
    def test_round_trip_bit_exact(self, kind, params):
        doc = document_from_spec(kind, **params)
        text = serialize(doc)
        back = parse(text)
        assert back.spec.kind == kind
        assert back.spec.params == params
        assert serialize(back) == text

    def test_seventeen_digit_floats_survive(self):
        doc = document_from_spec("disk", radius=0.1 + 0.2)  # not exactly representable
        back = parse(serialize(doc))
        assert back.spec.params["radius"] == 0.1 + 0.2

    def test_metadata_round_trip(self):
        doc = document_from_spec("disk", metadata={"label": "test", "seed": 3}, radius=0.4)
        back = parse(serialize(doc))
        assert back.metadata == {"label": "test", "seed": 3}


class TestExplicitBodies:
    def test_round_trip_geometry(self):
        body = quarter_disk(0.9)
        text = serialize(document_from_body(body))
        rebuilt = parse(text).build()
        assert len(rebuilt.vertices) == len(body.vertices)
        for a, b in zip(body.vertices, rebuilt.vertices):
            assert dist(a, b) <= 1e-12
        assert thickness(rebuilt).value == pytest.approx(thickness(body).value, abs=1e-12)
        assert diameter(rebuilt).value == pytest.approx(diameter(body).value, abs=1e-12)

    def test_side_minus_one_canonicalized(self):
        # body-away-from-center form: the same circle described from the antipode
        import json
        body = quarter_disk(0.8)
        payload = json.loads(serialize(document_from_body(body)))
        for e in payload["body"]["edges"]:
            if e["kind"] == "circular":
                e["center"] = [-c for c in e["center"]]
                e["radius"] = np.pi - e["radius"]
                e["side"] = -1
        from sphconvex.documents import dumps
        doc = parse(dumps(payload))
        rebuilt = doc.build()
        assert thickness(rebuilt).value == pytest.approx(0.8, abs=1e-9)


class TestSchemaStrictness:
    def test_unknown_top_level_field(self):
        with pytest.raises(DocumentError):
            parse('{"version":1,"spec":{"kind":"disk","radius":0.4},"extra":1}')

    def test_unknown_spec_field(self):
        with pytest.raises(DocumentError):
            parse('{"version":1,"spec":{"kind":"disk","radius":0.4,"color":"red"}}')

    def test_missing_required_field(self):
        with pytest.raises(DocumentError):
            parse('{"version":1,"spec":{"kind":"disk"}}')

    def test_bad_version(self):
        with pytest.raises(DocumentError):
            parse('{"version":2,"spec":{"kind":"disk","radius":0.4}}')

    def test_spec_and_body_exclusive(self):
        with pytest.raises(DocumentError):
            parse('{"version":1,"spec":{"kind":"disk","radius":0.4},'
                  '"body":{"start":[1,0,0],"edges":[]}}')

    def test_invalid_json(self):
        with pytest.raises(DocumentError):
            parse("not json")

    def test_unknown_kind(self):
        with pytest.raises(DocumentError):
            parse('{"version":1,"spec":{"kind":"heptagram","radius":0.4}}')

    def test_bad_edge_kind(self):
        with pytest.raises(DocumentError):
            parse('{"version":1,"body":{"start":[1,0,0],'
                  '"edges":[{"kind":"spiral","to":[0,1,0]}]}}')

    def test_unknown_metadata_field(self):
        with pytest.raises(DocumentError):
            parse('{"version":1,"spec":{"kind":"disk","radius":0.4},'
                  '"metadata":{"author":"x"}}')
