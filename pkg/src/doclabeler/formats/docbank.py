"""DocBank dialect: per-page token file beside a same-stem PNG.

Line shape (tab separated): token x0 y0 x1 y1 R G B fontname label, with
coordinates normalized to [0, 1000] of the page dimensions. Color and
fontname are written as 0 0 0 / "unknown" and ignored on import. Tokens are
escaped with the \\uXXXX scheme for tab/CR/LF/backslash.
"""

from __future__ import annotations

from collections import Counter
from pathlib import Path

from ..errors import FormatError
from ..model import Page, Project, Provenance, Quad, Segment
from . import common
from ._escape import escape, unescape

_DELIMS = "\t\r\n"


def export_pages(
    project: Project,
    root: Path,
    include_unlabeled: bool,
    image_sources: dict[str, Path],
) -> list[Path]:
    root.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []
    for page in common.sorted_pages(project):
        lines = []
        for seg in common.exportable_segments(page, include_unlabeled):
            x0, y0, x1, y1 = common.axis_quad(seg)
            nx0 = _norm(x0, page.width)
            ny0 = _norm(y0, page.height)
            nx1 = _norm(x1, page.width)
            ny1 = _norm(y1, page.height)
            token = escape(seg.text, _DELIMS)
            label = escape(common.export_label(seg), _DELIMS)
            lines.append(f"{token}\t{nx0}\t{ny0}\t{nx1}\t{ny1}\t0\t0\t0\tunknown\t{label}")
        txt_path = root / f"{page.page_id}.txt"
        txt_path.write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")
        img_path = root / f"{page.page_id}.png"
        common.write_page_image(page, img_path, image_sources.get(page.page_id))
        written.extend([txt_path, img_path])
    return written


def import_pages(
    root: Path, schema, unknown: Counter, warnings: list[str]
) -> tuple[list[Page], dict[str, Path]]:
    txt_files = sorted(root.glob("*.txt"))
    if not txt_files:
        return [], {}  # empty annotation set imports as zero pages
    pages: list[Page] = []
    sources: dict[str, Path] = {}
    for txt_path in txt_files:
        page_id = txt_path.stem
        img_path = root / f"{page_id}.png"
        common.require_image(img_path, txt_path)
        width, height = common.image_dimensions(img_path)
        segments: list[Segment] = []
        for lineno, line in enumerate(txt_path.read_text(encoding="utf-8").splitlines(), 1):
            if not line:
                continue
            fields = line.split("\t")
            if len(fields) != 10:
                raise FormatError(
                    f"malformed DocBank line {txt_path}:{lineno}: "
                    f"expected 10 fields, got {len(fields)}",
                    path=txt_path,
                    record=lineno,
                )
            token, sx0, sy0, sx1, sy1 = fields[0], *fields[1:5]
            label_raw = unescape(fields[9], _DELIMS)
            try:
                nx0, ny0, nx1, ny1 = float(sx0), float(sy0), float(sx1), float(sy1)
            except ValueError as exc:
                raise FormatError(
                    f"malformed DocBank line {txt_path}:{lineno}: {exc}",
                    path=txt_path,
                    record=lineno,
                ) from exc
            segments.append(
                Segment(
                    id=len(segments) + 1,
                    quad=Quad.from_bbox(
                        nx0 * width / 1000,
                        ny0 * height / 1000,
                        nx1 * width / 1000,
                        ny1 * height / 1000,
                    ),
                    text=unescape(token, _DELIMS),
                    label=common.map_label(label_raw, schema, unknown),
                    provenance=Provenance.IMPORTED,
                )
            )
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


def _norm(v: float, dim: int) -> int:
    n = round(v * 1000 / dim)
    return max(0, min(1000, n))
