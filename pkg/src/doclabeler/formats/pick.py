"""PICK dialect: boxes_and_transcripts/ TSVs, images/, train_samples_list.csv.

TSV line shape: index,x1,y1,x2,y2,x3,y3,x4,y4,transcript,label with the full
8-coordinate quad, so rotated regions survive exactly. Transcripts and labels
are escaped with the \\uXXXX scheme for comma/CR/LF/backslash. The samples
list rows are index,document_type,file_name.
"""

from __future__ import annotations

from collections import Counter
from pathlib import Path

from ..errors import FormatError
from ..model import Page, Project, Provenance, Quad, Segment
from . import common
from ._escape import escape, unescape

_DELIMS = ",\r\n"


def export_pages(
    project: Project,
    root: Path,
    include_unlabeled: bool,
    image_sources: dict[str, Path],
) -> list[Path]:
    tsv_dir = root / "boxes_and_transcripts"
    img_dir = root / "images"
    tsv_dir.mkdir(parents=True, exist_ok=True)
    img_dir.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []
    samples: list[str] = []
    doc_type = escape(project.name or "document", _DELIMS)
    for row, page in enumerate(common.sorted_pages(project), 1):
        lines = []
        for seg in common.exportable_segments(page, include_unlabeled):
            coords = ",".join(common.fmt_num(v) for v in seg.quad.flat())
            transcript = escape(seg.text, _DELIMS)
            label = escape(common.export_label(seg), _DELIMS)
            lines.append(f"{seg.id},{coords},{transcript},{label}")
        tsv_path = tsv_dir / f"{page.page_id}.tsv"
        tsv_path.write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")
        img_path = img_dir / f"{page.page_id}.png"
        common.write_page_image(page, img_path, image_sources.get(page.page_id))
        written.extend([tsv_path, img_path])
        samples.append(f"{row},{doc_type},{escape(page.page_id, _DELIMS)}.png")
    samples_path = root / "train_samples_list.csv"
    samples_path.write_text("\n".join(samples) + ("\n" if samples else ""), encoding="utf-8")
    written.append(samples_path)
    return written


def import_pages(
    root: Path, schema, unknown: Counter, warnings: list[str]
) -> tuple[list[Page], dict[str, Path]]:
    samples_path = root / "train_samples_list.csv"
    if not samples_path.is_file():
        return [], {}  # empty annotation set imports as zero pages
    pages: list[Page] = []
    sources: dict[str, Path] = {}
    for lineno, line in enumerate(samples_path.read_text(encoding="utf-8").splitlines(), 1):
        if not line:
            continue
        fields = line.split(",")
        if len(fields) != 3:
            raise FormatError(
                f"malformed samples row {samples_path}:{lineno}: "
                f"expected 3 fields, got {len(fields)}",
                path=samples_path,
                record=lineno,
            )
        file_name = unescape(fields[2], _DELIMS)
        page_id = Path(file_name).stem
        img_path = root / "images" / file_name
        tsv_path = root / "boxes_and_transcripts" / f"{page_id}.tsv"
        common.require_image(img_path, samples_path)
        if not tsv_path.is_file():
            raise FormatError(f"missing transcript file: {tsv_path}", path=tsv_path)
        width, height = common.image_dimensions(img_path)
        pages.append(
            Page(
                page_id=page_id,
                image_ref=f"images/{page_id}.png",
                width=width,
                height=height,
                segments=_read_tsv(tsv_path, schema, unknown),
            )
        )
        sources[page_id] = img_path
    return pages, sources


def _read_tsv(tsv_path: Path, schema, unknown: Counter) -> list[Segment]:
    segments: list[Segment] = []
    for lineno, line in enumerate(tsv_path.read_text(encoding="utf-8").splitlines(), 1):
        if not line:
            continue
        fields = line.split(",")
        if len(fields) != 11:
            raise FormatError(
                f"malformed PICK line {tsv_path}:{lineno}: "
                f"expected 11 fields, got {len(fields)}",
                path=tsv_path,
                record=lineno,
            )
        try:
            seg_id = int(fields[0])
            coords = [float(v) for v in fields[1:9]]
        except ValueError as exc:
            raise FormatError(
                f"malformed PICK line {tsv_path}:{lineno}: {exc}",
                path=tsv_path,
                record=lineno,
            ) from exc
        segments.append(
            Segment(
                id=seg_id,
                quad=Quad.from_flat(coords),
                text=unescape(fields[9], _DELIMS),
                label=common.map_label(unescape(fields[10], _DELIMS), schema, unknown),
                provenance=Provenance.IMPORTED,
            )
        )
    return segments
