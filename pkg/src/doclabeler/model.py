"""Canonical in-memory and on-disk data model.

A Project is a set of Pages plus a label schema; a Page owns an ordered list
of Segments (quadrilateral + transcript + label). Everything here is value
semantic: operations elsewhere take pages in and hand new pages back.

On disk a project is one manifest plus one JSON file per page:

    project.json           # name, schema, source, page index
    pages/<page_id>.json   # page record incl. segments
    images/<page_id>.png   # rasterized page
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from enum import Enum
from pathlib import Path

from .errors import ProjectLoadError

UNLABELED = None  # label sentinel; encoded as JSON null

_ID_SAFE = re.compile(r"^[A-Za-z0-9._-]+$")


class Provenance(str, Enum):
    IMPORTED = "IMPORTED"
    MANUAL = "MANUAL"
    AUTO = "AUTO"


class Split(str, Enum):
    TRAIN = "TRAIN"
    VAL = "VAL"
    TEST = "TEST"
    UNASSIGNED = "UNASSIGNED"


@dataclass(frozen=True)
class Quad:
    """Four (x, y) vertices in page pixels, clockwise from top-left."""

    points: tuple[tuple[float, float], ...]

    def __post_init__(self):
        if len(self.points) != 4:
            raise ValueError("quad needs exactly 4 vertices")
        object.__setattr__(
            self, "points", tuple((float(x), float(y)) for x, y in self.points)
        )

    @classmethod
    def from_flat(cls, values) -> Quad:
        vals = [float(v) for v in values]
        if len(vals) != 8:
            raise ValueError("flat quad needs exactly 8 numbers")
        return cls(tuple((vals[i], vals[i + 1]) for i in range(0, 8, 2)))

    @classmethod
    def from_bbox(cls, x0, y0, x1, y1) -> Quad:
        return cls(((x0, y0), (x1, y0), (x1, y1), (x0, y1)))

    def flat(self) -> list[float]:
        return [v for p in self.points for v in p]

    def bbox(self) -> tuple[float, float, float, float]:
        xs = [p[0] for p in self.points]
        ys = [p[1] for p in self.points]
        return min(xs), min(ys), max(xs), max(ys)

    @property
    def width(self) -> float:
        x0, _, x1, _ = self.bbox()
        return x1 - x0

    @property
    def height(self) -> float:
        _, y0, _, y1 = self.bbox()
        return y1 - y0

    def is_axis_aligned(self) -> bool:
        x0, y0, x1, y1 = self.bbox()
        return self.points == ((x0, y0), (x1, y0), (x1, y1), (x0, y1))

    def hull(self) -> Quad:
        """Axis-aligned bounding rectangle as a quad."""
        return Quad.from_bbox(*self.bbox())


@dataclass
class Segment:
    """One annotatable unit on a page."""

    id: int
    quad: Quad
    text: str = ""
    label: str | None = UNLABELED
    provenance: Provenance = Provenance.IMPORTED
    confidence: float = 1.0
    extras: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        rec = {
            "id": self.id,
            "quad": [_num(v) for v in self.quad.flat()],
            "text": self.text,
            "label": self.label,
            "provenance": self.provenance.value,
            "confidence": self.confidence,
        }
        if self.extras:
            rec["extras"] = self.extras
        return rec

    @classmethod
    def from_json(cls, rec: dict) -> Segment:
        return cls(
            id=int(rec["id"]),
            quad=Quad.from_flat(rec["quad"]),
            text=rec.get("text", ""),
            label=rec.get("label"),
            provenance=Provenance(rec.get("provenance", "IMPORTED")),
            confidence=float(rec.get("confidence", 1.0)),
            extras=dict(rec.get("extras", {})),
        )


@dataclass
class Page:
    """A rasterized page image plus its ordered segments."""

    page_id: str
    image_ref: str
    width: int
    height: int
    dpi: float = 150.0
    segments: list[Segment] = field(default_factory=list)
    version: int = 1
    split: Split = Split.UNASSIGNED
    extras: dict = field(default_factory=dict)

    _KNOWN = frozenset(
        {"page_id", "image_ref", "width", "height", "dpi", "segments", "version", "split"}
    )

    def segment_by_id(self, seg_id: int) -> Segment | None:
        for seg in self.segments:
            if seg.id == seg_id:
                return seg
        return None

    def next_segment_id(self) -> int:
        return max((s.id for s in self.segments), default=0) + 1

    def to_json(self) -> dict:
        rec = {
            "page_id": self.page_id,
            "image_ref": self.image_ref,
            "width": self.width,
            "height": self.height,
            "dpi": self.dpi,
            "version": self.version,
            "split": self.split.value,
            "segments": [s.to_json() for s in self.segments],
        }
        rec.update(self.extras)
        return rec

    @classmethod
    def from_json(cls, rec: dict) -> Page:
        extras = {k: v for k, v in rec.items() if k not in cls._KNOWN}
        return cls(
            page_id=rec["page_id"],
            image_ref=rec["image_ref"],
            width=int(rec["width"]),
            height=int(rec["height"]),
            dpi=float(rec.get("dpi", 150.0)),
            segments=[Segment.from_json(s) for s in rec.get("segments", [])],
            version=int(rec.get("version", 1)),
            split=Split(rec.get("split", "UNASSIGNED")),
            extras=extras,
        )


@dataclass(frozen=True)
class SchemaLabel:
    name: str
    color: tuple[int, int, int]
    shortcut: str | None = None


@dataclass
class LabelSchema:
    """Closed set of entity types with display colors and keyboard shortcuts."""

    labels: list[SchemaLabel]
    version: str = "1"

    def names(self) -> list[str]:
        return [lab.name for lab in self.labels]

    def __contains__(self, name: object) -> bool:
        return any(lab.name == name for lab in self.labels)

    def get(self, name: str) -> SchemaLabel | None:
        for lab in self.labels:
            if lab.name == name:
                return lab
        return None

    def to_json(self) -> dict:
        return {
            "version": self.version,
            "labels": [
                {"name": lab.name, "color": list(lab.color), "shortcut": lab.shortcut}
                for lab in self.labels
            ],
        }

    @classmethod
    def from_json(cls, rec: dict) -> LabelSchema:
        return cls(
            labels=[
                SchemaLabel(
                    name=lab["name"],
                    color=tuple(lab.get("color", (128, 128, 128))),
                    shortcut=lab.get("shortcut"),
                )
                for lab in rec.get("labels", [])
            ],
            version=str(rec.get("version", "1")),
        )


def default_schema() -> LabelSchema:
    """The 12 catalog element types used throughout the docs and tests."""
    entries = [
        ("Image", (31, 119, 180), "i"),
        ("SubsubCategories", (174, 199, 232), "x"),
        ("Categories", (255, 127, 14), "c"),
        ("PageNumber", (255, 187, 120), "n"),
        ("Description", (44, 160, 44), "d"),
        ("TableTitle", (152, 223, 138), "b"),
        ("SubCategories", (214, 39, 40), "s"),
        ("Table", (255, 152, 150), "a"),
        ("Title", (148, 103, 189), "t"),
        ("SubTitle", (197, 176, 213), "u"),
        ("List", (140, 86, 75), "l"),
        ("SubsubTitle", (196, 156, 148), "v"),
    ]
    return LabelSchema([SchemaLabel(n, c, s) for n, c, s in entries])


@dataclass
class Project:
    """A set of pages plus a label schema and provenance metadata."""

    name: str
    schema: LabelSchema
    pages: list[Page] = field(default_factory=list)
    source: str = ""
    created: str = ""
    modified: str = ""
    extras: dict = field(default_factory=dict)

    _KNOWN = frozenset({"name", "schema", "source", "created", "modified", "pages"})

    def __post_init__(self):
        now = _utcnow()
        if not self.created:
            self.created = now
        if not self.modified:
            self.modified = now

    def page_by_id(self, page_id: str) -> Page | None:
        for page in self.pages:
            if page.page_id == page_id:
                return page
        return None


@dataclass(frozen=True)
class TypeMetrics:
    """One metrics row: precision/recall/F1/accuracy plus support."""

    mep: float
    mer: float
    mef: float
    mea: float
    support: int


@dataclass
class EvalReport:
    """Per-entity-type and overall metric values."""

    per_type: dict[str, TypeMetrics]
    overall: TypeMetrics

    def to_csv(self) -> str:
        lines = ["type,mEP,mER,mEF,mEA,support"]
        for name, row in self.per_type.items():
            lines.append(_csv_row(name, row))
        lines.append(_csv_row("Overall", self.overall))
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        def enc(row: TypeMetrics) -> dict:
            return {
                "mEP": row.mep,
                "mER": row.mer,
                "mEF": row.mef,
                "mEA": row.mea,
                "support": row.support,
            }

        return {
            "per_type": {name: enc(row) for name, row in self.per_type.items()},
            "overall": enc(self.overall),
        }


def _csv_row(name: str, row: TypeMetrics) -> str:
    return (
        f"{name},{row.mep:.6f},{row.mer:.6f},{row.mef:.6f},{row.mea:.6f},{row.support}"
    )


@dataclass(frozen=True)
class Violation:
    """One invariant violation found by validate_project."""

    page_id: str | None
    segment_id: int | None
    rule: str
    detail: str

    def __str__(self) -> str:
        where = self.page_id or "<project>"
        if self.segment_id is not None:
            where += f"/segment {self.segment_id}"
        return f"{where}: {self.rule}: {self.detail}"


def validate_project(project: Project) -> list[Violation]:
    """Check every type invariant; violations are data, not errors."""
    out: list[Violation] = []

    names = project.schema.names()
    if len(set(names)) != len(names):
        out.append(Violation(None, None, "schema label names unique", f"duplicates in {names}"))
    for lab in project.schema.labels:
        if not lab.name:
            out.append(Violation(None, None, "schema label names non-empty", "empty name"))
    shortcuts = [lab.shortcut for lab in project.schema.labels if lab.shortcut]
    if len(set(shortcuts)) != len(shortcuts):
        out.append(Violation(None, None, "schema shortcuts unique", f"duplicates in {shortcuts}"))
    for lab in project.schema.labels:
        if lab.shortcut is not None and len(lab.shortcut) != 1:
            out.append(
                Violation(None, None, "schema shortcut single key", f"{lab.name!r}: {lab.shortcut!r}")
            )

    page_ids = [p.page_id for p in project.pages]
    if len(set(page_ids)) != len(page_ids):
        dupes = sorted({i for i in page_ids if page_ids.count(i) > 1})
        out.append(Violation(None, None, "page ids unique", f"duplicates: {dupes}"))

    known = set(names)
    for page in project.pages:
        seg_ids = [s.id for s in page.segments]
        if len(set(seg_ids)) != len(seg_ids):
            dupes = sorted({i for i in seg_ids if seg_ids.count(i) > 1})
            out.append(Violation(page.page_id, None, "segment ids unique", f"duplicates: {dupes}"))
        if page.width <= 0 or page.height <= 0:
            out.append(
                Violation(page.page_id, None, "page dimensions positive", f"{page.width}x{page.height}")
            )
        for seg in page.segments:
            for x, y in seg.quad.points:
                if not (0 <= x <= page.width) or not (0 <= y <= page.height):
                    out.append(
                        Violation(page.page_id, seg.id, "coordinate out of range", f"({x}, {y})")
                    )
                    break
            if seg.quad.width <= 0 or seg.quad.height <= 0:
                out.append(
                    Violation(
                        page.page_id, seg.id, "bounding box not strictly positive",
                        f"{seg.quad.width}x{seg.quad.height}",
                    )
                )
            if seg.label is not UNLABELED and seg.label not in known:
                out.append(
                    Violation(page.page_id, seg.id, "label not in schema", repr(seg.label))
                )
            if not (0.0 <= seg.confidence <= 1.0) or math.isnan(seg.confidence):
                out.append(
                    Violation(page.page_id, seg.id, "confidence out of range", str(seg.confidence))
                )
            elif seg.provenance is Provenance.MANUAL and seg.confidence != 1.0:
                out.append(
                    Violation(
                        page.page_id, seg.id, "manual segment confidence must be 1.0",
                        str(seg.confidence),
                    )
                )
    return out


def save_project(project: Project, directory: str | Path) -> None:
    """Write manifest + page records; images/ is populated by ingest or import."""
    root = Path(directory)
    (root / "pages").mkdir(parents=True, exist_ok=True)
    (root / "images").mkdir(parents=True, exist_ok=True)
    project.modified = _utcnow()
    for page in project.pages:
        if not _ID_SAFE.match(page.page_id):
            raise ProjectLoadError(f"page id not filesystem safe: {page.page_id!r}", root)
        save_page(page, root)
    manifest = {
        "name": project.name,
        "schema": project.schema.to_json(),
        "source": project.source,
        "created": project.created,
        "modified": project.modified,
        "pages": [p.page_id for p in project.pages],
    }
    manifest.update(project.extras)
    _write_atomic(root / "project.json", _dumps(manifest))


def save_page(page: Page, project_dir: str | Path) -> Path:
    """Persist one page record atomically (temp file + rename)."""
    path = Path(project_dir) / "pages" / f"{page.page_id}.json"
    _write_atomic(path, _dumps(page.to_json()))
    return path


def load_project(directory: str | Path) -> Project:
    root = Path(directory)
    manifest_path = root / "project.json"
    if not manifest_path.is_file():
        raise ProjectLoadError(f"missing manifest: {manifest_path}", manifest_path)
    try:
        manifest = json.loads(manifest_path.read_text(encoding="utf-8"))
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise ProjectLoadError(f"corrupt manifest {manifest_path}: {exc}", manifest_path) from exc
    if not isinstance(manifest, dict) or "name" not in manifest:
        raise ProjectLoadError(f"corrupt manifest {manifest_path}: no project record", manifest_path)

    pages = []
    for page_id in manifest.get("pages", []):
        page_path = root / "pages" / f"{page_id}.json"
        if not page_path.is_file():
            raise ProjectLoadError(f"missing page file: {page_path}", page_path)
        try:
            pages.append(Page.from_json(json.loads(page_path.read_text(encoding="utf-8"))))
        except (json.JSONDecodeError, KeyError, ValueError) as exc:
            raise ProjectLoadError(f"corrupt page file {page_path}: {exc}", page_path) from exc

    extras = {k: v for k, v in manifest.items() if k not in Project._KNOWN}
    return Project(
        name=manifest["name"],
        schema=LabelSchema.from_json(manifest.get("schema", {})),
        pages=pages,
        source=manifest.get("source", ""),
        created=manifest.get("created", ""),
        modified=manifest.get("modified", ""),
        extras=extras,
    )


def projects_equivalent(a: Project, b: Project) -> bool:
    """Structural equality modulo timestamps."""
    return (
        a.name == b.name
        and a.schema == b.schema
        and a.source == b.source
        and a.pages == b.pages
        and a.extras == b.extras
    )


def bump(page: Page, segments: list[Segment] | None = None, **changes) -> Page:
    """Copy a page with version + 1; used by every mutating operation."""
    if segments is not None:
        changes["segments"] = segments
    return replace(page, version=page.version + 1, **changes)


def _num(v: float):
    return int(v) if float(v).is_integer() else v


def _utcnow() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def _dumps(obj) -> str:
    return json.dumps(obj, ensure_ascii=False, indent=2) + "\n"


def _write_atomic(path: Path, text: str) -> None:
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text, encoding="utf-8")
    tmp.replace(path)
