"""Text file formats and chart rendering.

All encoders produce canonical bytes (LF line endings, single spaces, no
trailing whitespace); decoders reject anything that would not re-encode to
the same bytes.
"""

from __future__ import annotations

import re

from .core import Collection
from .errors import FormatError, InsufficientData, InvalidDocument
from .experiments import CurveData
from .index import PrefixIndex

_COLLECTION_HEADER = re.compile(
    r"maxint-collection v1 model=(zipf|hier|external) "
    r"n=(0|[1-9]\d*) m=(0|[1-9]\d*) k=(0|[1-9]\d*) seed=(0|[1-9]\d*)"
)
_INDEX_HEADER = re.compile(r"maxint-index v1 n=(0|[1-9]\d*)")
_RANK = re.compile(r"[1-9]\d*")

CSV_HEADER = "q,p_any,p_prefix_containment,p_prefix_literal,trials"


def _lines(data: bytes) -> list[str]:
    try:
        text = data.decode("ascii")
    except UnicodeDecodeError as e:
        raise FormatError("file is not ASCII") from e
    if not text.endswith("\n"):
        raise FormatError("file must end with a newline")
    return text[:-1].split("\n")


def encode_collection(c: Collection) -> bytes:
    out = [
        f"maxint-collection v1 model={c.model} n={c.n} m={c.m} k={c.k} seed={c.seed}"
    ]
    out.extend(" ".join(map(str, d)) for d in c.docs)
    return ("\n".join(out) + "\n").encode("ascii")


def decode_collection(data: bytes) -> Collection:
    lines = _lines(data)
    head = _COLLECTION_HEADER.fullmatch(lines[0])
    if head is None:
        raise FormatError(f"malformed collection header: {lines[0]!r}")
    model = head.group(1)
    n, m, k, seed = (int(head.group(i)) for i in range(2, 6))
    body = lines[1:]
    if len(body) != n:
        raise FormatError(f"header announces {n} documents, found {len(body)}")
    docs = []
    for lineno, line in enumerate(body, start=2):
        tokens = line.split(" ") if line else []
        if not all(_RANK.fullmatch(t) for t in tokens):
            raise InvalidDocument(f"line {lineno}: malformed rank list {line!r}")
        doc = tuple(int(t) for t in tokens)
        if any(a >= b for a, b in zip(doc, doc[1:])):
            raise InvalidDocument(f"line {lineno}: ranks not strictly increasing")
        if m and doc and doc[-1] > m:
            raise InvalidDocument(f"line {lineno}: rank {doc[-1]} exceeds m={m}")
        docs.append(doc)
    return Collection(docs, model=model, m=m, k=k, seed=seed)


def encode_index(idx: PrefixIndex) -> bytes:
    out = [f"maxint-index v1 n={len(idx.order)}"]
    out.extend(str(i) for i in idx.order)
    return ("\n".join(out) + "\n").encode("ascii")


def decode_index(data: bytes, c: Collection) -> PrefixIndex:
    """Read an index file and check it against the collection it indexes."""
    lines = _lines(data)
    head = _INDEX_HEADER.fullmatch(lines[0])
    if head is None:
        raise FormatError(f"malformed index header: {lines[0]!r}")
    n = int(head.group(1))
    body = lines[1:]
    if len(body) != n or n != c.n:
        raise FormatError(
            f"index lists {len(body)} entries (header {n}) for {c.n} documents"
        )
    if not all(re.fullmatch(r"0|[1-9]\d*", s) for s in body):
        raise FormatError("index entries must be decimal document indices")
    order = tuple(int(s) for s in body)
    if sorted(order) != list(range(n)):
        raise FormatError("index is not a permutation of the document indices")
    docs = c.docs
    if any(docs[a] > docs[b] for a, b in zip(order, order[1:])):
        raise FormatError("index order is not lexicographically sorted")
    return PrefixIndex(c, order)


def write_curve_csv(cd: CurveData) -> bytes:
    rows = [CSV_HEADER]
    for q, a, p, l in zip(cd.q_values, cd.p_any, cd.p_prefix, cd.p_lcp):
        rows.append(f"{q},{a:.6f},{p:.6f},{l:.6f},{cd.trials}")
    return ("\n".join(rows) + "\n").encode("ascii")


# SVG geometry: 800x600 canvas, plot box inside fixed margins.
_W, _H = 800, 600
_LEFT, _RIGHT, _TOP, _BOTTOM = 80, 40, 50, 70


def render_curve_svg(cd: CurveData, title: str | None = None) -> bytes:
    """Line chart of p_any (solid) and p_prefix_containment (dashed) over q."""
    qs = cd.q_values
    if len(qs) < 2:
        raise InsufficientData("a curve needs at least two q values")
    x0, x1 = _LEFT, _W - _RIGHT
    y0, y1 = _H - _BOTTOM, _TOP
    qmin, qmax = qs[0], qs[-1]

    def x(q):
        return x0 + (q - qmin) * (x1 - x0) / (qmax - qmin)

    def y(p):
        return y0 + p * (y1 - y0)

    def points(ps):
        return " ".join(f"{x(q):.2f},{y(p):.2f}" for q, p in zip(qs, ps))

    if title is None:
        cfg = cd.config
        title = f"{cfg.model} n={cfg.n} m={cfg.m} k={cfg.k} trials={cd.trials} mode={cd.mode}"

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
        f'viewBox="0 0 {_W} {_H}" font-family="sans-serif" font-size="14">',
        f'<rect x="0" y="0" width="{_W}" height="{_H}" fill="white"/>',
        f'<text x="{_W / 2:.2f}" y="30" text-anchor="middle">{_escape(title)}</text>',
        f'<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}" stroke="black"/>',
        f'<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}" stroke="black"/>',
    ]
    step = max(1, -(-(qmax - qmin) // 20))
    for q in range(qmin, qmax + 1, step):
        parts.append(
            f'<line x1="{x(q):.2f}" y1="{y0}" x2="{x(q):.2f}" y2="{y0 + 6}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{x(q):.2f}" y="{y0 + 22}" text-anchor="middle">{q}</text>'
        )
    for i in range(6):
        p = i / 5
        parts.append(
            f'<line x1="{x0 - 6}" y1="{y(p):.2f}" x2="{x0}" y2="{y(p):.2f}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{x0 - 10}" y="{y(p) + 5:.2f}" text-anchor="end">{p:.1f}</text>'
        )
    parts += [
        f'<text x="{(x0 + x1) / 2:.2f}" y="{_H - 20}" text-anchor="middle">q</text>',
        f'<text x="20" y="{(y0 + y1) / 2:.2f}" text-anchor="middle" '
        f'transform="rotate(-90 20 {(y0 + y1) / 2:.2f})">probability</text>',
        f'<polyline fill="none" stroke="black" stroke-width="2" points="{points(cd.p_any)}"/>',
        f'<polyline fill="none" stroke="black" stroke-width="2" stroke-dasharray="8,5" '
        f'points="{points(cd.p_prefix)}"/>',
        f'<line x1="{x1 - 220}" y1="{y1 + 20}" x2="{x1 - 180}" y2="{y1 + 20}" '
        f'stroke="black" stroke-width="2"/>',
        f'<text x="{x1 - 170}" y="{y1 + 25}">any q-match</text>',
        f'<line x1="{x1 - 220}" y1="{y1 + 45}" x2="{x1 - 180}" y2="{y1 + 45}" '
        f'stroke="black" stroke-width="2" stroke-dasharray="8,5"/>',
        f'<text x="{x1 - 170}" y="{y1 + 50}">prefix q-match</text>',
        "</svg>",
    ]
    return ("\n".join(parts) + "\n").encode("utf-8")


def _escape(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
