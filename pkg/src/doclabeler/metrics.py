"""Entity-level evaluation and the train/validation split protocol.

An entity pair is (predicted, target), either side possibly null. Matches are
exact string equality; a pair with both sides null never counts as a match
but still counts toward the accuracy denominator.

    mEP = matches / |predicted non-null|
    mER = matches / |target non-null|
    mEA = matches / |pairs|
    mEF = harmonic mean of mEP and mER

Any 0/0 denominator yields 0 so reports stay total.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DocLabelerError
from .model import EvalReport, Page, Project, Split, TypeMetrics, bump


@dataclass(frozen=True)
class EntityPair:
    predicted: str | None
    target: str | None


@dataclass(frozen=True)
class Metrics:
    mep: float
    mer: float
    mef: float
    mea: float


def _as_pair(item) -> tuple[str | None, str | None]:
    if isinstance(item, EntityPair):
        return item.predicted, item.target
    predicted, target = item
    return predicted, target


def harmonic_mean(mep: float, mer: float) -> float:
    if mep + mer == 0:
        return 0.0
    return 2.0 * mep * mer / (mep + mer)


def evaluate(pairs: Iterable[EntityPair | tuple]) -> Metrics:
    """Compute (mEP, mER, mEF, mEA) over entity pairs."""
    items = [_as_pair(p) for p in pairs]
    if not items:
        raise DocLabelerError("no entity pairs to evaluate")
    matches = sum(1 for y, g in items if y is not None and y == g)
    n_pred = sum(1 for y, _ in items if y is not None)
    n_target = sum(1 for _, g in items if g is not None)
    mep = matches / n_pred if n_pred else 0.0
    mer = matches / n_target if n_target else 0.0
    mea = matches / len(items)
    return Metrics(mep=mep, mer=mer, mef=harmonic_mean(mep, mer), mea=mea)


def evaluate_by_type(ground: Project, predicted: Project) -> EvalReport:
    """Per-label breakdown over identical segment ids, plus an Overall row.

    A pair lands in label L's row iff its target is L (recall side) or its
    prediction is L (precision side); support counts target entities of L.
    """
    pairs = _paired_labels(ground, predicted)
    per_type: dict[str, TypeMetrics] = {}
    for name in ground.schema.names():
        pred_l = [(y, g) for y, g in pairs if y == name]
        targ_l = [(y, g) for y, g in pairs if g == name]
        union_l = [(y, g) for y, g in pairs if y == name or g == name]
        matches_pred = sum(1 for y, g in pred_l if y == g)
        matches_targ = sum(1 for y, g in targ_l if y == g)
        mep = matches_pred / len(pred_l) if pred_l else 0.0
        mer = matches_targ / len(targ_l) if targ_l else 0.0
        mea = (sum(1 for y, g in union_l if y == g) / len(union_l)) if union_l else 0.0
        per_type[name] = TypeMetrics(
            mep=mep, mer=mer, mef=harmonic_mean(mep, mer), mea=mea, support=len(targ_l)
        )
    overall = evaluate(pairs)
    overall_row = TypeMetrics(
        mep=overall.mep,
        mer=overall.mer,
        mef=overall.mef,
        mea=overall.mea,
        support=sum(1 for _, g in pairs if g is not None),
    )
    return EvalReport(per_type=per_type, overall=overall_row)


def _paired_labels(ground: Project, predicted: Project) -> list[tuple[str | None, str | None]]:
    ground_pages = {p.page_id: p for p in ground.pages}
    pred_pages = {p.page_id: p for p in predicted.pages}
    missing = sorted(set(ground_pages) ^ set(pred_pages))
    if missing:
        raise DocLabelerError(f"page ids differ between projects: {missing}")
    pairs: list[tuple[str | None, str | None]] = []
    for page_id in ground_pages:
        g_segs = {s.id: s for s in ground_pages[page_id].segments}
        p_segs = {s.id: s for s in pred_pages[page_id].segments}
        mismatched = sorted(set(g_segs) ^ set(p_segs))
        if mismatched:
            raise DocLabelerError(
                f"segment ids differ on page {page_id}: {mismatched}"
            )
        for sid in g_segs:
            pairs.append((p_segs[sid].label, g_segs[sid].label))
    return pairs


def split_dataset(
    pages: Sequence[Page],
    ratio: tuple[int, int],
    shuffle: bool = False,
    seed: int = 0,
) -> dict[str, Split]:
    """Assign TRAIN/VAL by ratio; the remainder goes to TRAIN.

    Order is preserved when shuffle is false; with shuffle, the permutation is
    drawn deterministically from seed.
    """
    train_parts, val_parts = ratio
    if train_parts <= 0 or val_parts <= 0:
        raise DocLabelerError(f"ratio parts must be positive: {ratio}")
    n = len(pages)
    if n < train_parts + val_parts:
        raise DocLabelerError(
            f"{n} pages cannot be split {train_parts}:{val_parts}"
        )
    order = list(range(n))
    if shuffle:
        random.Random(seed).shuffle(order)
    n_val = (n * val_parts) // (train_parts + val_parts)
    n_train = n - n_val
    assignment: dict[str, Split] = {}
    for rank, idx in enumerate(order):
        assignment[pages[idx].page_id] = Split.TRAIN if rank < n_train else Split.VAL
    return assignment


def apply_split(project: Project, assignment: dict[str, Split]) -> None:
    """Set Page.split per the assignment, bumping each assigned page's version."""
    for i, page in enumerate(project.pages):
        if page.page_id in assignment:
            project.pages[i] = bump(page, split=assignment[page.page_id])
