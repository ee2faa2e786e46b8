"""Import/export for the four interchange dialects: PICK, DocBank, XFUND, FUNSD.

Import maps every source record to an IMPORTED segment, resolving labels by
exact name (unknown names are reported and become UNLABELED, never dropped).
Export writes a deterministic layout ordered by page id then segment id and
returns the manifest of written files. roundtrip_check verifies the pair.
"""

from __future__ import annotations

import tempfile
from collections import Counter
from enum import Enum
from pathlib import Path

from ..errors import FormatError
from ..model import LabelSchema, Project, Quad
from . import docbank, funsd, pick, xfund
from .common import Discrepancy, ImportResult

__all__ = [
    "FormatKind",
    "ImportResult",
    "Discrepancy",
    "import_dataset",
    "export_dataset",
    "roundtrip_check",
]


class FormatKind(str, Enum):
    PICK = "PICK"
    DOCBANK = "DOCBANK"
    XFUND = "XFUND"
    FUNSD = "FUNSD"


def import_dataset(
    kind: FormatKind,
    root: str | Path,
    schema: LabelSchema,
    name: str | None = None,
) -> ImportResult:
    """Read a dataset tree into a Project; see ImportResult for the side reports."""
    kind = FormatKind(kind)
    root = Path(root)
    if not root.is_dir():
        raise FormatError(f"dataset root does not exist: {root}", path=root)
    unknown: Counter = Counter()
    warnings: list[str] = []
    extras: dict = {}
    if kind is FormatKind.FUNSD:
        pages, sources = funsd.import_pages(root, schema, unknown, warnings)
    elif kind is FormatKind.XFUND:
        pages, sources, lang = xfund.import_pages(root, schema, unknown, warnings)
        extras["xfund_lang"] = lang
    elif kind is FormatKind.DOCBANK:
        pages, sources = docbank.import_pages(root, schema, unknown, warnings)
    else:
        pages, sources = pick.import_pages(root, schema, unknown, warnings)
    project = Project(
        name=name or root.name,
        schema=schema,
        pages=pages,
        source=f"{kind.value} import: {root}",
        extras=extras,
    )
    return ImportResult(
        project=project, unknown_labels=unknown, warnings=warnings, image_sources=sources
    )


def export_dataset(
    project: Project,
    kind: FormatKind,
    root: str | Path,
    include_unlabeled: bool = True,
    image_sources: dict[str, Path] | None = None,
) -> list[Path]:
    """Write the project in the given dialect; returns the written files."""
    kind = FormatKind(kind)
    root = Path(root)
    root.mkdir(parents=True, exist_ok=True)
    if not project.pages:
        return []
    sources = image_sources or {}
    if kind is FormatKind.FUNSD:
        return funsd.export_pages(project, root, include_unlabeled, sources)
    if kind is FormatKind.XFUND:
        return xfund.export_pages(project, root, include_unlabeled, sources)
    if kind is FormatKind.DOCBANK:
        return docbank.export_pages(project, root, include_unlabeled, sources)
    return pick.export_pages(project, root, include_unlabeled, sources)


def coordinate_tolerance(kind: FormatKind, width: int, height: int) -> tuple[float, float]:
    """Permitted per-axis quantization error for the dialect."""
    if FormatKind(kind) is FormatKind.DOCBANK:
        return 0.5 * width / 1000, 0.5 * height / 1000
    return 0.0, 0.0


def roundtrip_check(
    project: Project,
    kind: FormatKind,
    workdir: str | Path | None = None,
) -> list[Discrepancy]:
    """Export then re-import, comparing segment by segment.

    Text and label must match exactly; coordinates must match within the
    dialect's quantization. Rotated quads pushed through an axis-aligned
    dialect are flagged as hull substitutions.
    """
    kind = FormatKind(kind)
    with tempfile.TemporaryDirectory(dir=workdir) as tmp:
        export_dataset(project, kind, tmp, include_unlabeled=True)
        result = import_dataset(kind, tmp, project.schema, name=project.name)
    report: list[Discrepancy] = []
    imported = {p.page_id: p for p in result.project.pages}
    for page in project.pages:
        other = imported.pop(page.page_id, None)
        if other is None:
            report.append(Discrepancy(page.page_id, None, "page", "missing after round-trip"))
            continue
        originals = sorted(page.segments, key=lambda s: s.id)
        if len(originals) != len(other.segments):
            report.append(
                Discrepancy(
                    page.page_id, None, "segment count",
                    f"expected {len(originals)}, got {len(other.segments)}",
                )
            )
            continue
        tol_x, tol_y = coordinate_tolerance(kind, page.width, page.height)
        for orig, back in zip(originals, other.segments):
            if orig.text != back.text:
                report.append(
                    Discrepancy(page.page_id, orig.id, "text", f"{orig.text!r} != {back.text!r}")
                )
            if orig.label != back.label:
                report.append(
                    Discrepancy(page.page_id, orig.id, "label", f"{orig.label!r} != {back.label!r}")
                )
            expected = orig.quad
            if kind is not FormatKind.PICK and not orig.quad.is_axis_aligned():
                expected = orig.quad.hull()
                report.append(
                    Discrepancy(
                        page.page_id, orig.id, "quad",
                        "axis-aligned hull substituted for rotated quad",
                    )
                )
            delta = _quad_delta(expected, back.quad)
            if delta[0] > tol_x or delta[1] > tol_y:
                report.append(
                    Discrepancy(
                        page.page_id, orig.id, "coordinates",
                        f"delta ({delta[0]:.4g}, {delta[1]:.4g}) exceeds "
                        f"tolerance ({tol_x:.4g}, {tol_y:.4g})",
                    )
                )
    for page_id in imported:
        report.append(Discrepancy(page_id, None, "page", "unexpected extra page"))
    return report


def _quad_delta(a: Quad, b: Quad) -> tuple[float, float]:
    dx = max(abs(pa[0] - pb[0]) for pa, pb in zip(a.points, b.points))
    dy = max(abs(pa[1] - pb[1]) for pa, pb in zip(a.points, b.points))
    return dx, dy
