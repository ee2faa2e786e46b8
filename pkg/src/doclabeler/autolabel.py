"""Semi-automatic labeling: built-in heuristic labeler + remote model protocol.

The heuristic labeler is a deterministic stand-in so the propose/review/apply
loop works without any model. Remote labelers speak a single stateless HTTP
request per page (see INFERENCE_REQUEST_DOC below); proposals then flow into
apply_proposals under an overwrite policy that protects manual work.
"""

from __future__ import annotations

import base64
import logging
import re
from dataclasses import dataclass, replace
from enum import Enum
from typing import Sequence

import httpx

from .errors import LabelerError, OperationError
from .model import LabelSchema, Page, Provenance, Segment, UNLABELED, bump

logger = logging.getLogger(__name__)

HEURISTIC_CONFIDENCE = 0.5
_DIGITS = re.compile(r"^[0-9]+$")

INFERENCE_REQUEST_DOC = """\
POST <endpoint> with JSON
  {"page_id": str, "width": int, "height": int, "image_png_base64": str,
   "segments": [{"id": int, "quad": [8 numbers], "text": str}]}
expects JSON
  {"proposals": [{"id": int, "label": str, "confidence": float}]}
"""


@dataclass(frozen=True)
class LabelProposal:
    segment_id: int
    label: str
    confidence: float


class LabelerKind(str, Enum):
    HEURISTIC = "HEURISTIC"
    REMOTE = "REMOTE"


@dataclass(frozen=True)
class LabelerBinding:
    kind: LabelerKind = LabelerKind.HEURISTIC
    endpoint: str | None = None
    timeout: float = 30.0

    def __post_init__(self):
        if self.kind is LabelerKind.REMOTE and not self.endpoint:
            raise LabelerError("REMOTE binding requires an endpoint")


class ApplyPolicy(str, Enum):
    FILL_UNLABELED = "FILL_UNLABELED"
    OVERWRITE_AUTO = "OVERWRITE_AUTO"
    OVERWRITE_ALL = "OVERWRITE_ALL"


_RULE_LABELS = ("PageNumber", "Image", "Title", "Table", "Description")


def heuristic_label(page: Page, schema: LabelSchema) -> list[LabelProposal]:
    """One proposal per segment from a fixed rule table (first match wins).

    1. all-digit text whose hull sits in the bottom 5% of the page -> PageNumber
    2. empty text -> Image
    3. top edge in the top 8% and width >= 30% of the page -> Title
    4. left edge aligned (+/-2 px) with at least 3 other segments -> Table
    5. anything else -> Description
    """
    missing = [name for name in _RULE_LABELS if name not in schema]
    if missing:
        raise LabelerError(f"schema missing labels required by heuristics: {missing}")
    lefts = [seg.quad.bbox()[0] for seg in page.segments]
    proposals = []
    for i, seg in enumerate(page.segments):
        x0, y0, x1, y1 = seg.quad.bbox()
        if _DIGITS.match(seg.text) and y0 >= 0.95 * page.height:
            label = "PageNumber"
        elif seg.text == "":
            label = "Image"
        elif y0 <= 0.08 * page.height and (x1 - x0) >= 0.30 * page.width:
            label = "Title"
        elif sum(1 for j, lx in enumerate(lefts) if j != i and abs(lx - x0) <= 2) >= 3:
            label = "Table"
        else:
            label = "Description"
        proposals.append(LabelProposal(seg.id, label, HEURISTIC_CONFIDENCE))
    return proposals


def remote_label(
    page: Page,
    binding: LabelerBinding,
    schema: LabelSchema,
    image_png: bytes | None = None,
) -> list[LabelProposal]:
    """Ask a model server for proposals; out-of-schema labels are dropped."""
    if binding.kind is not LabelerKind.REMOTE:
        raise LabelerError("remote_label needs a REMOTE binding")
    request = {
        "page_id": page.page_id,
        "width": page.width,
        "height": page.height,
        "image_png_base64": base64.b64encode(image_png or b"").decode("ascii"),
        "segments": [
            {"id": s.id, "quad": s.quad.flat(), "text": s.text} for s in page.segments
        ],
    }
    try:
        response = httpx.post(binding.endpoint, json=request, timeout=binding.timeout)
        response.raise_for_status()
        payload = response.json()
    except httpx.TimeoutException as exc:
        raise LabelerError("labeler timeout") from exc
    except httpx.HTTPError as exc:
        raise LabelerError(f"labeler request failed: {exc}") from exc
    except ValueError as exc:
        raise LabelerError(f"labeler returned non-JSON body: {exc}") from exc
    return parse_proposals(payload, page, schema)


def parse_proposals(payload, page: Page, schema: LabelSchema) -> list[LabelProposal]:
    if not isinstance(payload, dict) or not isinstance(payload.get("proposals"), list):
        raise LabelerError("malformed response: missing 'proposals' list")
    known_ids = {s.id for s in page.segments}
    proposals: list[LabelProposal] = []
    dropped_labels: list[str] = []
    dropped_ids: list[int] = []
    for i, item in enumerate(payload["proposals"]):
        if not isinstance(item, dict):
            raise LabelerError(f"malformed response: proposals[{i}] is not an object")
        try:
            seg_id = int(item["id"])
            label = item["label"]
            confidence = float(item["confidence"])
        except (KeyError, TypeError, ValueError) as exc:
            raise LabelerError(f"malformed response: proposals[{i}]: {exc}") from exc
        if not isinstance(label, str):
            raise LabelerError(f"malformed response: proposals[{i}].label is not a string")
        if not 0.0 <= confidence <= 1.0:
            raise LabelerError(
                f"malformed response: proposals[{i}].confidence out of [0,1]: {confidence}"
            )
        if label not in schema:
            dropped_labels.append(label)
            continue
        if seg_id not in known_ids:
            dropped_ids.append(seg_id)
            continue
        proposals.append(LabelProposal(seg_id, label, confidence))
    if dropped_labels:
        logger.warning(
            "dropped %d proposal(s) with labels outside the schema: %s",
            len(dropped_labels), sorted(set(dropped_labels)),
        )
    if dropped_ids:
        logger.warning(
            "dropped %d proposal(s) for unknown segment ids: %s",
            len(dropped_ids), sorted(set(dropped_ids)),
        )
    return proposals


def apply_proposals(
    page: Page, proposals: Sequence[LabelProposal], policy: ApplyPolicy
) -> Page:
    """Apply proposals under the policy; MANUAL labels survive everything
    except OVERWRITE_ALL. Returns the page with version + 1."""
    policy = ApplyPolicy(policy)
    by_id = {s.id: s for s in page.segments}
    missing = sorted({p.segment_id for p in proposals} - set(by_id))
    if missing:
        raise OperationError(f"unknown segment ids: {missing}")
    chosen: dict[int, LabelProposal] = {p.segment_id: p for p in proposals}
    segments = []
    for seg in page.segments:
        prop = chosen.get(seg.id)
        if prop is None or not _eligible(seg, policy):
            segments.append(seg)
        else:
            segments.append(
                replace(
                    seg,
                    label=prop.label,
                    provenance=Provenance.AUTO,
                    confidence=prop.confidence,
                )
            )
    return bump(page, segments)


def _eligible(seg: Segment, policy: ApplyPolicy) -> bool:
    if policy is ApplyPolicy.OVERWRITE_ALL:
        return True
    if seg.provenance is Provenance.MANUAL:
        return False
    if policy is ApplyPolicy.FILL_UNLABELED:
        return seg.label is UNLABELED
    return seg.label is UNLABELED or seg.provenance is Provenance.AUTO
