"""XFUND dialect: one JSON per split plus an images/ directory.

File shape: {"lang": "en", "documents": [{"id", "img": {"fname", "width",
"height"}, "document": [FUNSD-style entries]}]}. Split membership is encoded
in the filename (<lang>.<split>.json) and restored on import.
"""

from __future__ import annotations

import json
from collections import Counter
from pathlib import Path

from ..errors import FormatError
from ..model import Page, Project, Split
from . import common, funsd

_SPLIT_NAMES = {
    Split.TRAIN: "train",
    Split.VAL: "val",
    Split.TEST: "test",
    Split.UNASSIGNED: "unassigned",
}
_NAME_SPLITS = {v: k for k, v in _SPLIT_NAMES.items()}


def export_pages(
    project: Project,
    root: Path,
    include_unlabeled: bool,
    image_sources: dict[str, Path],
) -> list[Path]:
    root.mkdir(parents=True, exist_ok=True)
    img_dir = root / "images"
    img_dir.mkdir(exist_ok=True)
    lang = project.extras.get("xfund_lang", "en")
    written: list[Path] = []
    by_split: dict[Split, list] = {}
    for page in common.sorted_pages(project):
        by_split.setdefault(page.split, []).append(page)
    for split in _SPLIT_NAMES:
        pages = by_split.get(split)
        if not pages:
            continue
        documents = []
        for page in pages:
            fname = f"{page.page_id}.png"
            common.write_page_image(page, img_dir / fname, image_sources.get(page.page_id))
            written.append(img_dir / fname)
            entries = [
                funsd._entry(seg)
                for seg in common.exportable_segments(page, include_unlabeled)
            ]
            documents.append(
                {
                    "id": page.page_id,
                    "img": {"fname": fname, "width": page.width, "height": page.height},
                    "document": entries,
                }
            )
        path = root / f"{lang}.{_SPLIT_NAMES[split]}.json"
        path.write_text(
            json.dumps({"lang": lang, "documents": documents}, ensure_ascii=False, indent=1)
            + "\n",
            encoding="utf-8",
        )
        written.append(path)
    return written


def import_pages(
    root: Path, schema, unknown: Counter, warnings: list[str]
) -> tuple[list[Page], dict[str, Path], str]:
    split_files = sorted(root.glob("*.*.json"))
    if not split_files:
        return [], {}, "en"  # empty annotation set imports as zero pages
    pages: list[Page] = []
    sources: dict[str, Path] = {}
    lang = "en"
    for path in split_files:
        lang_part, split_part = path.name.split(".")[:2]
        split = _NAME_SPLITS.get(split_part, Split.UNASSIGNED)
        try:
            record = json.loads(path.read_text(encoding="utf-8"))
            lang = record.get("lang", lang_part)
            documents = record["documents"]
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise FormatError(f"malformed XFUND file {path}: {exc}", path=path) from exc
        for d_idx, doc in enumerate(documents):
            try:
                page_id = str(doc["id"])
                img = doc["img"]
                fname = img["fname"]
                entries = doc["document"]
            except (KeyError, TypeError) as exc:
                raise FormatError(
                    f"malformed XFUND document {d_idx} in {path}: {exc}",
                    path=path,
                    record=d_idx,
                ) from exc
            img_path = root / "images" / fname
            common.require_image(img_path, path)
            width = int(img.get("width") or 0)
            height = int(img.get("height") or 0)
            if width <= 0 or height <= 0:
                width, height = common.image_dimensions(img_path)
            segments = [
                funsd._segment(entry, idx, path, schema, unknown)
                for idx, entry in enumerate(entries)
            ]
            pages.append(
                Page(
                    page_id=page_id,
                    image_ref=f"images/{page_id}.png",
                    width=width,
                    height=height,
                    segments=segments,
                    split=split,
                )
            )
            sources[page_id] = img_path
    pages.sort(key=lambda p: p.page_id)
    return pages, sources, lang
