"""FUNSD dialect: per-page JSON under annotations/, images under images/.

Record shape: {"form": [{"id", "text", "box": [x0,y0,x1,y1], "label",
"words": [{"text", "box"}], "linking": []}]}. Linking pairs and non-trivial
word lists are carried opaquely through Segment.extras and re-emitted verbatim.
"""

from __future__ import annotations

import json
from collections import Counter
from pathlib import Path

from ..errors import FormatError
from ..model import Page, Project, Provenance, Quad, Segment
from . import common


def export_pages(
    project: Project,
    root: Path,
    include_unlabeled: bool,
    image_sources: dict[str, Path],
) -> list[Path]:
    ann_dir = root / "annotations"
    img_dir = root / "images"
    ann_dir.mkdir(parents=True, exist_ok=True)
    img_dir.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []
    for page in common.sorted_pages(project):
        form = [
            _entry(seg) for seg in common.exportable_segments(page, include_unlabeled)
        ]
        ann_path = ann_dir / f"{page.page_id}.json"
        ann_path.write_text(
            json.dumps({"form": form}, ensure_ascii=False, indent=1) + "\n",
            encoding="utf-8",
        )
        img_path = img_dir / f"{page.page_id}.png"
        common.write_page_image(page, img_path, image_sources.get(page.page_id))
        written.extend([ann_path, img_path])
    return written


def _entry(seg: Segment) -> dict:
    x0, y0, x1, y1 = common.axis_quad(seg)
    box = [_n(x0), _n(y0), _n(x1), _n(y1)]
    words = seg.extras.get("funsd_words")
    if words is None:
        words = [{"text": seg.text, "box": box}]
    return {
        "id": seg.id,
        "text": seg.text,
        "box": box,
        "label": common.export_label(seg),
        "words": words,
        "linking": seg.extras.get("funsd_linking", []),
    }


def import_pages(
    root: Path, schema, unknown: Counter, warnings: list[str]
) -> tuple[list[Page], dict[str, Path]]:
    ann_dir = root / "annotations"
    if not ann_dir.is_dir():
        return [], {}  # empty annotation set imports as zero pages
    pages: list[Page] = []
    sources: dict[str, Path] = {}
    for ann_path in sorted(ann_dir.glob("*.json")):
        page_id = ann_path.stem
        img_path = root / "images" / f"{page_id}.png"
        common.require_image(img_path, ann_path)
        width, height = common.image_dimensions(img_path)
        try:
            record = json.loads(ann_path.read_text(encoding="utf-8"))
            entries = record["form"]
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise FormatError(f"malformed FUNSD record {ann_path}: {exc}", path=ann_path) from exc
        segments = []
        for idx, entry in enumerate(entries):
            segments.append(_segment(entry, idx, ann_path, schema, unknown))
        pages.append(
            Page(
                page_id=page_id,
                image_ref=f"images/{page_id}.png",
                width=width,
                height=height,
                segments=segments,
            )
        )
        sources[page_id] = img_path
    return pages, sources


def _segment(entry: dict, idx: int, path: Path, schema, unknown: Counter) -> Segment:
    try:
        x0, y0, x1, y1 = entry["box"]
        text = entry["text"]
        seg_id = int(entry.get("id", idx + 1))
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(
            f"malformed FUNSD entry {idx} in {path}: {exc}", path=path, record=idx
        ) from exc
    extras = {}
    linking = entry.get("linking") or []
    if linking:
        extras["funsd_linking"] = linking
    words = entry.get("words")
    if words is not None and words != [{"text": text, "box": entry["box"]}]:
        extras["funsd_words"] = words
    return Segment(
        id=seg_id,
        quad=Quad.from_bbox(x0, y0, x1, y1),
        text=text,
        label=common.map_label(entry.get("label"), schema, unknown),
        provenance=Provenance.IMPORTED,
        extras=extras,
    )


def _n(v: float):
    f = float(v)
    return int(f) if f.is_integer() else f
