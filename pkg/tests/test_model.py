import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from doclabeler.errors import ProjectLoadError
from doclabeler.model import (
    Provenance,
    Quad,
    load_project,
    projects_equivalent,
    save_project,
    validate_project,
)

from conftest import make_page, make_project, make_segment, random_project


class TestQuad:
    def test_from_bbox_is_axis_aligned(self):
        q = Quad.from_bbox(10, 20, 60, 35)
        assert q.is_axis_aligned()
        assert q.bbox() == (10, 20, 60, 35)
        assert q.flat() == [10, 20, 60, 20, 60, 35, 10, 35]

    def test_rotated_quad_hull(self):
        q = Quad(((12, 10), (50, 14), (48, 30), (10, 26)))
        assert not q.is_axis_aligned()
        assert q.hull().bbox() == (10, 10, 50, 30)

    def test_rejects_wrong_arity(self):
        with pytest.raises(ValueError):
            Quad.from_flat([1, 2, 3])


class TestValidate:
    def test_well_formed_project_has_no_violations(self, schema):
        page = make_page(segments=[make_segment(label="Title")])
        assert validate_project(make_project([page], schema)) == []

    def test_unknown_label_is_reported(self, schema):
        page = make_page(segments=[make_segment(seg_id=7, label="Foo")])
        violations = validate_project(make_project([page], schema))
        assert len(violations) == 1
        v = violations[0]
        assert v.page_id == "page_0001" and v.segment_id == 7
        assert "label" in v.rule

    def test_negative_coordinate_is_reported(self, schema):
        seg = make_segment(seg_id=3)
        seg.quad = Quad.from_bbox(-3, 10, 50, 20)
        violations = validate_project(make_project([make_page(segments=[seg])], schema))
        assert any(v.rule == "coordinate out of range" and v.segment_id == 3 for v in violations)

    @pytest.mark.parametrize(
        "mutate",
        [
            lambda s: setattr(s, "confidence", 1.5),
            lambda s: setattr(s, "confidence", -0.1),
            lambda s: setattr(s, "label", "NotASchemaLabel"),
            lambda s: setattr(s, "quad", Quad.from_bbox(5, 5, 5, 25)),
            lambda s: setattr(s, "quad", Quad.from_bbox(0, 0, 2000, 20)),
        ],
    )
    def test_single_field_corruption_is_caught(self, schema, mutate):
        seg = make_segment(label="Table")
        mutate(seg)
        assert validate_project(make_project([make_page(segments=[seg])], schema))

    def test_manual_confidence_must_be_one(self, schema):
        seg = make_segment(label="Table", provenance=Provenance.MANUAL, confidence=0.4)
        violations = validate_project(make_project([make_page(segments=[seg])], schema))
        assert any("manual" in v.rule for v in violations)

    def test_duplicate_segment_ids(self, schema):
        page = make_page(segments=[make_segment(seg_id=1), make_segment(seg_id=1)])
        assert any(
            v.rule == "segment ids unique"
            for v in validate_project(make_project([page], schema))
        )


class TestPersistence:
    def test_empty_project_round_trip(self, tmp_path, schema):
        project = make_project([], schema)
        save_project(project, tmp_path)
        assert projects_equivalent(load_project(tmp_path), project)

    def test_two_pages_five_segments_round_trip(self, tmp_path, schema):
        pages = [
            make_page(
                page_id=f"page_{i}",
                segments=[
                    make_segment(seg_id=j, box=(j * 10, 5, j * 10 + 8, 15), label="Table")
                    for j in range(1, 6)
                ],
            )
            for i in range(2)
        ]
        project = make_project(pages, schema)
        save_project(project, tmp_path)
        loaded = load_project(tmp_path)
        assert projects_equivalent(loaded, project)
        assert loaded.pages[0].segments[2].quad == pages[0].segments[2].quad

    def test_unknown_manifest_field_survives_round_trip(self, tmp_path, schema):
        save_project(make_project([make_page()], schema), tmp_path)
        manifest_path = tmp_path / "project.json"
        manifest = json.loads(manifest_path.read_text())
        manifest["future_field"] = {"nested": [1, 2, 3]}
        manifest_path.write_text(json.dumps(manifest))

        loaded = load_project(tmp_path)
        assert loaded.extras["future_field"] == {"nested": [1, 2, 3]}

        out = tmp_path / "resaved"
        save_project(loaded, out)
        resaved = json.loads((out / "project.json").read_text())
        assert resaved["future_field"] == {"nested": [1, 2, 3]}

    def test_unknown_page_field_survives(self, tmp_path, schema):
        save_project(make_project([make_page()], schema), tmp_path)
        page_path = tmp_path / "pages" / "page_0001.json"
        record = json.loads(page_path.read_text())
        record["vendor_hint"] = "misumi"
        page_path.write_text(json.dumps(record))
        loaded = load_project(tmp_path)
        assert loaded.pages[0].extras["vendor_hint"] == "misumi"

    def test_missing_manifest_is_structured_error(self, tmp_path):
        with pytest.raises(ProjectLoadError) as err:
            load_project(tmp_path / "nowhere")
        assert err.value.path and "project.json" in err.value.path

    def test_corrupt_manifest_is_structured_error(self, tmp_path):
        (tmp_path / "project.json").write_text("{not json")
        with pytest.raises(ProjectLoadError) as err:
            load_project(tmp_path)
        assert err.value.path and "project.json" in err.value.path

    def test_missing_page_file_is_structured_error(self, tmp_path, schema):
        save_project(make_project([make_page()], schema), tmp_path)
        (tmp_path / "pages" / "page_0001.json").unlink()
        with pytest.raises(ProjectLoadError) as err:
            load_project(tmp_path)
        assert "page_0001.json" in str(err.value)

    @settings(max_examples=25, deadline=None)
    @given(seed=st.integers(0, 10_000))
    def test_random_project_round_trip(self, tmp_path_factory, seed):
        project = random_project(random.Random(seed), rotated=True)
        root = tmp_path_factory.mktemp("proj")
        save_project(project, root)
        assert projects_equivalent(load_project(root), project)
