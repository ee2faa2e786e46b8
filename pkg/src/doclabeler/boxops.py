"""Manual cleaning algebra: merge, group, delete, relabel, reading order.

All operations are pure page-in/page-out transforms. They validate first and
raise OperationError before building anything, so a failed call leaves the
input page untouched; every successful call returns a page with version + 1.
"""

from __future__ import annotations

from dataclasses import replace
from typing import Sequence

from .errors import OperationError
from .model import LabelSchema, Page, Provenance, Quad, Segment, UNLABELED, bump


def reading_order(segments: Sequence[Segment]) -> list[int]:
    """Permutation of indices in line-major, left-to-right order.

    Two segments share a line iff the vertical overlap of their hulls is at
    least half the smaller hull height (taken transitively); lines are ordered
    by top edge, members by left edge, ties stay in input order.
    """
    n = len(segments)
    if n == 0:
        return []
    boxes = [seg.quad.bbox() for seg in segments]

    parent = list(range(n))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        x0i, top_i, x1i, bot_i = boxes[i]
        for j in range(i + 1, n):
            x0j, top_j, x1j, bot_j = boxes[j]
            overlap = min(bot_i, bot_j) - max(top_i, top_j)
            smaller = min(bot_i - top_i, bot_j - top_j)
            if overlap >= 0.5 * smaller:
                parent[find(i)] = find(j)

    lines: dict[int, list[int]] = {}
    for i in range(n):
        lines.setdefault(find(i), []).append(i)

    ordered_lines = sorted(lines.values(), key=lambda ids: min(boxes[i][1] for i in ids))
    out: list[int] = []
    for ids in ordered_lines:
        out.extend(sorted(ids, key=lambda i: boxes[i][0]))
    return out


def merge_segments(page: Page, ids: Sequence[int], joiner: str = " ") -> Page:
    """Replace the named segments with one covering their bounding hull.

    Texts are joined in reading order (empty texts skipped); the merged label
    is the common label if all agree, UNLABELED otherwise. A single-id merge
    keeps the segment as-is apart from MANUAL provenance.
    """
    picked, order = _select(page, ids)
    if len(picked) == 1:
        seg = picked[0]
        new_seg = replace(seg, provenance=Provenance.MANUAL, confidence=1.0)
        return bump(page, [new_seg if s.id == seg.id else s for s in page.segments])
    merged = _merged_segment(picked, joiner)
    return bump(page, _splice(page.segments, {s.id for s in picked}, order[0], merged))


def group_segments(page: Page, ids: Sequence[int], group_label: str, schema: LabelSchema) -> Page:
    """Merge the named segments into one segment carrying group_label."""
    if group_label not in schema:
        raise OperationError(f"unknown label: {group_label!r}")
    picked, order = _select(page, ids)
    if len(picked) == 1:
        seg = picked[0]
        new_seg = replace(
            seg, label=group_label, provenance=Provenance.MANUAL, confidence=1.0
        )
        return bump(page, [new_seg if s.id == seg.id else s for s in page.segments])
    merged = replace(_merged_segment(picked, " "), label=group_label)
    return bump(page, _splice(page.segments, {s.id for s in picked}, order[0], merged))


def delete_segments(page: Page, ids: Sequence[int]) -> Page:
    """Remove the named segments; survivors keep their ids."""
    picked, _ = _select(page, ids)
    gone = {s.id for s in picked}
    return bump(page, [s for s in page.segments if s.id not in gone])


def set_label(page: Page, ids: Sequence[int], label: str | None, schema: LabelSchema) -> Page:
    """Assign label (or UNLABELED) to the named segments as a manual action."""
    if label is not UNLABELED and label not in schema:
        raise OperationError(f"unknown label: {label!r}")
    picked, _ = _select(page, ids)
    chosen = {s.id for s in picked}
    segments = [
        replace(s, label=label, provenance=Provenance.MANUAL, confidence=1.0)
        if s.id in chosen
        else s
        for s in page.segments
    ]
    return bump(page, segments)


def _select(page: Page, ids: Sequence[int]) -> tuple[list[Segment], list[int]]:
    """Resolve ids (deduplicated, order kept) to segments + page positions."""
    seen: list[int] = []
    for sid in ids:
        if sid not in seen:
            seen.append(sid)
    if not seen:
        raise OperationError("empty selection")
    by_id = {s.id: i for i, s in enumerate(page.segments)}
    missing = [sid for sid in seen if sid not in by_id]
    if missing:
        raise OperationError(f"unknown segment ids: {missing}")
    positions = sorted(by_id[sid] for sid in seen)
    return [page.segments[i] for i in positions], positions


def _merged_segment(picked: list[Segment], joiner: str) -> Segment:
    x0 = min(s.quad.bbox()[0] for s in picked)
    y0 = min(s.quad.bbox()[1] for s in picked)
    x1 = max(s.quad.bbox()[2] for s in picked)
    y1 = max(s.quad.bbox()[3] for s in picked)
    order = reading_order(picked)
    text = joiner.join(t for t in (picked[i].text for i in order) if t)
    labels = {s.label for s in picked}
    label = labels.pop() if len(labels) == 1 else UNLABELED
    return Segment(
        id=min(s.id for s in picked),
        quad=Quad.from_bbox(x0, y0, x1, y1),
        text=text,
        label=label,
        provenance=Provenance.MANUAL,
        confidence=1.0,
    )


def _splice(segments: list[Segment], gone: set[int], first_pos: int, merged: Segment) -> list[Segment]:
    out: list[Segment] = []
    for i, seg in enumerate(segments):
        if i == first_pos:
            out.append(merged)
        elif seg.id not in gone:
            out.append(seg)
    return out
