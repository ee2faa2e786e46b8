"""Helpers shared by the four dataset dialects."""

from __future__ import annotations

import io
import shutil
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

from PIL import Image

from ..errors import FormatError
from ..model import LabelSchema, Page, Project, Quad, Segment, UNLABELED

DEFAULT_EXPORT_LABEL = "other"


@dataclass
class ImportResult:
    """Imported project plus the unknown-label report required by the contract."""

    project: Project
    unknown_labels: Counter = field(default_factory=Counter)
    warnings: list[str] = field(default_factory=list)
    image_sources: dict[str, Path] = field(default_factory=dict)


@dataclass(frozen=True)
class Discrepancy:
    page_id: str
    segment_id: int | None
    field: str
    detail: str

    def __str__(self) -> str:
        seg = f" segment {self.segment_id}" if self.segment_id is not None else ""
        return f"{self.page_id}{seg}: {self.field}: {self.detail}"


def map_label(raw: str | None, schema: LabelSchema, unknown: Counter) -> str | None:
    """Exact-name mapping; unknown names are reported and become UNLABELED."""
    if raw is None or raw == "":
        return UNLABELED
    if raw in schema:
        return raw
    unknown[raw] += 1
    return UNLABELED


def export_label(segment: Segment) -> str:
    return DEFAULT_EXPORT_LABEL if segment.label is UNLABELED else segment.label


def exportable_segments(page: Page, include_unlabeled: bool) -> list[Segment]:
    segs = sorted(page.segments, key=lambda s: s.id)
    if include_unlabeled:
        return segs
    return [s for s in segs if s.label is not UNLABELED]


def sorted_pages(project: Project) -> list[Page]:
    return sorted(project.pages, key=lambda p: p.page_id)


def fmt_num(v: float) -> str:
    """Exact, compact textual form: ints stay ints, floats use repr."""
    f = float(v)
    return str(int(f)) if f.is_integer() else repr(f)


def image_dimensions(path: Path) -> tuple[int, int]:
    with Image.open(path) as im:
        return im.width, im.height


def write_page_image(page: Page, dest: Path, source: Path | None) -> None:
    """Copy the page raster, or synthesize a white one at the page's size."""
    dest.parent.mkdir(parents=True, exist_ok=True)
    if source is not None and Path(source).is_file():
        shutil.copyfile(source, dest)
        return
    buf = io.BytesIO()
    Image.new("L", (page.width, page.height), color=255).save(buf, format="PNG")
    dest.write_bytes(buf.getvalue())


def require_image(path: Path, referenced_by: Path) -> None:
    if not path.is_file():
        raise FormatError(
            f"missing image {path} referenced by {referenced_by}", path=path
        )


def axis_quad(seg: Segment) -> tuple[float, float, float, float]:
    """Axis-aligned bbox used by the 4-number formats (hull for rotated quads)."""
    return seg.quad.bbox()


def quad_is_rect(quad: Quad) -> bool:
    return quad.is_axis_aligned()
