"""Module I: pivot/segment partitioning, candidate search, and pivot selection.

Alice tiles her sequence as ``seg, piv, seg, ..., piv, seg`` and transmits the
pivots.  Bob gathers every feasible occurrence of each pivot in his sequence
and picks a maximum-cardinality chain of matches that could have arisen from
deletions alone; the selected pivots cut both sequences into aligned sections.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import BitSeq, InvalidConfig, pivot_length

__all__ = [
    "EncoderLayout",
    "PivotMatch",
    "SectionPair",
    "find_candidates",
    "form_sections",
    "partition_encoder",
    "pivot_length",
    "select_pivots",
]


@dataclass(frozen=True)
class EncoderLayout:
    """Deterministic tiling of [0, n): seg_1, piv_1, ..., piv_{k-1}, seg_k."""

    n: int
    k: int
    seg_len: int
    piv_len: int
    pivot_spans: tuple[tuple[int, int], ...]
    segment_spans: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class PivotMatch:
    pivot_index: int  # 1-based, matches EncoderLayout ordering
    y_start: int
    x_start: int


@dataclass(frozen=True)
class SectionPair:
    """Aligned span of X and Y between two consecutively selected pivots.

    ``t`` is negative only when a false pivot left Y with more bits than X in
    this span; such sections are emitted anyway and repaired downstream.
    """

    section_id: int
    x_span: tuple[int, int]
    y_span: tuple[int, int]
    t: int


def partition_encoder(n: int, seg_len: int, piv_len: int) -> EncoderLayout:
    """Tile [0, n) into k segments and k-1 pivots; the last segment absorbs the remainder."""
    if piv_len >= seg_len:
        raise InvalidConfig(f"pivot length {piv_len} must be < segment length {seg_len}")
    if n < seg_len:
        raise InvalidConfig(f"n={n} shorter than one segment; run as a single section")
    k = (n + piv_len) // (seg_len + piv_len)
    period = seg_len + piv_len
    pivots = tuple((i * period - piv_len, i * period) for i in range(1, k))
    segs = [(i * period, i * period + seg_len) for i in range(k - 1)]
    segs.append(((k - 1) * period, n))
    return EncoderLayout(n, k, seg_len, piv_len, pivots, tuple(segs))


def find_candidates(y: BitSeq, pivot: BitSeq, x_start: int) -> list[int]:
    """Every start position of ``pivot`` in ``y`` at or left of ``x_start``.

    Deletions only shift content left, so occurrences past the pivot's own
    encoder position cannot be real; overlapping occurrences all count.
    """
    out = []
    p = y.find(pivot)
    while 0 <= p <= x_start:
        out.append(p)
        p = y.find(pivot, p + 1)
    return out


def select_pivots(candidates: list[list[int]], layout: EncoderLayout) -> list[PivotMatch]:
    """Maximum-cardinality chain of pivot matches consistent with deletions.

    A chain visits strictly increasing pivot indices; consecutive selections
    may not overlap in Y (gap >= pivot length) and their Y-gap may not exceed
    their X-gap.  Ties in cardinality are broken toward the lexicographically
    smallest vector of Y positions (then smallest pivot index).
    """
    piv_len = layout.piv_len
    nodes: list[tuple[int, int, int]] = []  # (pivot_index, y_start, x_start)
    for idx, occ in enumerate(candidates, start=1):
        x_start = layout.pivot_spans[idx - 1][0]
        for p in occ:
            nodes.append((idx, p, x_start))
    if not nodes:
        return []
    nodes.sort(key=lambda t: (t[0], t[1]))
    m = len(nodes)

    def compatible(a: tuple[int, int, int], b: tuple[int, int, int]) -> bool:
        # a before b in the chain
        return (
            a[0] < b[0]
            and b[1] >= a[1] + piv_len
            and (b[1] - a[1]) <= (b[2] - a[2])
        )

    # Longest chain starting at each node, scanning right to left.
    best_after = [1] * m
    for i in range(m - 1, -1, -1):
        for j in range(i + 1, m):
            if compatible(nodes[i], nodes[j]) and best_after[j] + 1 > best_after[i]:
                best_after[i] = best_after[j] + 1

    target = max(best_after)
    chain: list[tuple[int, int, int]] = []
    prev: tuple[int, int, int] | None = None
    for length in range(target, 0, -1):
        pick = None
        for i in range(m):
            if best_after[i] != length:
                continue
            if prev is not None and not compatible(prev, nodes[i]):
                continue
            key = (nodes[i][1], nodes[i][0])
            if pick is None or key < (nodes[pick][1], nodes[pick][0]):
                pick = i
        chain.append(nodes[pick])
        prev = nodes[pick]
    return [PivotMatch(i, y, x) for i, y, x in chain]


def form_sections(
    selection: list[PivotMatch], layout: EncoderLayout, y_len: int
) -> list[SectionPair]:
    """Cut X and Y into aligned sections at the selected pivots.

    Unselected pivots fall inside sections on the X side; their bits are
    recovered along with the segment bits.
    """
    piv_len = layout.piv_len
    sections = []
    x_prev, y_prev = 0, 0
    for sel in selection:
        x_cut = sel.x_start
        y_cut = sel.y_start
        t = (x_cut - x_prev) - (y_cut - y_prev)
        sections.append(SectionPair(len(sections), (x_prev, x_cut), (y_prev, y_cut), t))
        x_prev = x_cut + piv_len
        y_prev = y_cut + piv_len
    t = (layout.n - x_prev) - (y_len - y_prev)
    sections.append(SectionPair(len(sections), (x_prev, layout.n), (y_prev, y_len), t))
    return sections
