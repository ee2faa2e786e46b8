"""Shared fixtures and builders for the test suite."""

from __future__ import annotations

import random

import pytest

from doclabeler.model import (
    LabelSchema,
    Page,
    Project,
    Provenance,
    Quad,
    SchemaLabel,
    Segment,
    default_schema,
)


def make_segment(seg_id=1, box=(10, 10, 50, 20), text="word", label=None,
                 provenance=Provenance.IMPORTED, confidence=1.0) -> Segment:
    return Segment(
        id=seg_id,
        quad=Quad.from_bbox(*box),
        text=text,
        label=label,
        provenance=provenance,
        confidence=confidence,
    )


def make_page(page_id="page_0001", segments=None, width=1000, height=1400, **kw) -> Page:
    return Page(
        page_id=page_id,
        image_ref=f"images/{page_id}.png",
        width=width,
        height=height,
        segments=list(segments or []),
        **kw,
    )


def make_project(pages=None, schema=None, name="proj") -> Project:
    return Project(name=name, schema=schema or default_schema(), pages=list(pages or []))


def random_project(rng: random.Random, max_pages=4, max_segments=30,
                   rotated=False, schema=None) -> Project:
    """Randomized well-formed project for round-trip style tests."""
    schema = schema or default_schema()
    names = schema.names()
    texts = [
        "Bolt", "M6 x 20", "stainless", "Ünïcode", "a,b", "tab\there",
        "line\nbreak", "back\\slash", "\\u002C literal", "", "100", "€9.99",
        "右左", "payload,with,commas", "  spaced  ",
    ]
    pages = []
    for p in range(rng.randint(0, max_pages)):
        width = rng.randint(300, 2400)
        height = rng.randint(300, 2400)
        segments = []
        for i in range(rng.randint(0, max_segments)):
            x0 = round(rng.uniform(0, width - 12), 2)
            y0 = round(rng.uniform(0, height - 12), 2)
            w = round(rng.uniform(2, min(200, width - x0 - 1)), 2)
            h = round(rng.uniform(2, min(60, height - y0 - 1)), 2)
            if rotated and rng.random() < 0.2:
                quad = Quad(
                    (
                        (x0 + 2, y0),
                        (x0 + w, y0 + 1),
                        (x0 + w - 2, y0 + h),
                        (x0, y0 + h - 1),
                    )
                )
            else:
                quad = Quad.from_bbox(x0, y0, x0 + w, y0 + h)
            label = rng.choice(names + [None])
            provenance = rng.choice(list(Provenance))
            segments.append(
                Segment(
                    id=i + 1,
                    quad=quad,
                    text=rng.choice(texts),
                    label=label,
                    provenance=provenance,
                    confidence=1.0 if provenance is Provenance.MANUAL else round(rng.random(), 3),
                )
            )
        pages.append(
            Page(
                page_id=f"page_{p:04d}",
                image_ref=f"images/page_{p:04d}.png",
                width=width,
                height=height,
                segments=segments,
            )
        )
    return Project(name="random", schema=schema, pages=pages)


@pytest.fixture
def schema() -> LabelSchema:
    return default_schema()


@pytest.fixture
def tiny_schema() -> LabelSchema:
    return LabelSchema(
        labels=[
            SchemaLabel("header", (200, 0, 0), "h"),
            SchemaLabel("answer", (0, 200, 0), "a"),
        ]
    )
