import itertools
import random

import pytest

from delsync.core import BitSeq, InvalidConfig, apply_deletion_channel, random_bits, substream
from delsync.matching import (
    EncoderLayout,
    PivotMatch,
    find_candidates,
    form_sections,
    partition_encoder,
    pivot_length,
    select_pivots,
)


class TestPivotLength:
    def test_examples(self):
        assert pivot_length(1, 0.01) == 25  # 11 + 2*log2(100) = 24.29
        assert pivot_length(2, 0.001) == 34  # 14 + 2*log2(1000) = 33.93
        assert pivot_length(1, 0.5) == 13  # 11 + 2

    def test_rejects_bad_args(self):
        with pytest.raises(InvalidConfig):
            pivot_length(0, 0.01)
        with pytest.raises(InvalidConfig):
            pivot_length(1, 0.7)


class TestPartitionEncoder:
    def test_tiling_example(self):
        layout = partition_encoder(10_000, 100, 25)
        assert layout.k == 80
        assert len(layout.pivot_spans) == 79
        last = layout.segment_spans[-1]
        assert last[1] - last[0] == 125

    def test_single_segment_boundary(self):
        layout = partition_encoder(125, 100, 25)
        assert layout.k == 1
        assert layout.pivot_spans == ()
        assert layout.segment_spans == ((0, 125),)

    def test_paper_scale_counts(self):
        layout = partition_encoder(50_000, 200, 27)
        assert layout.k == 220  # floor(50027 / 227)

    def test_spans_tile_exactly(self):
        for n, seg, piv in ((10_000, 100, 25), (997, 40, 7), (5000, 137, 19)):
            layout = partition_encoder(n, seg, piv)
            spans = sorted(layout.segment_spans + layout.pivot_spans)
            cursor = 0
            for a, b in spans:
                assert a == cursor
                cursor = b
            assert cursor == n
            for a, b in layout.pivot_spans:
                assert b - a == piv
            for a, b in layout.segment_spans[:-1]:
                assert b - a == seg

    def test_last_segment_absorbs_remainder(self):
        layout = partition_encoder(1040, 100, 20)
        a, b = layout.segment_spans[-1]
        assert 100 <= b - a < 2 * 100 + 20

    def test_rejects_degenerate(self):
        with pytest.raises(InvalidConfig):
            partition_encoder(99, 100, 25)
        with pytest.raises(InvalidConfig):
            partition_encoder(1000, 25, 25)


class TestFindCandidates:
    def test_absent_pivot(self):
        assert find_candidates(BitSeq("000000"), BitSeq("111"), 5) == []

    def test_all_positions_in_uniform_run(self):
        y = BitSeq("0" * 10)
        piv = BitSeq("0" * 4)
        assert find_candidates(y, piv, 9) == list(range(7))

    def test_feasibility_cutoff(self):
        y = BitSeq("0" * 10)
        piv = BitSeq("0" * 4)
        assert find_candidates(y, piv, 3) == [0, 1, 2, 3]

    def test_true_and_false_occurrence(self):
        y = BitSeq("00110101101")
        piv = BitSeq("1101")
        assert find_candidates(y, piv, 6) == [2]
        # both a false early copy and the true copy are returned
        y2 = BitSeq("00110111010")
        assert find_candidates(y2, piv, 8) == [2, 6]


def brute_force_select(candidates, layout):
    """Exhaustive oracle over every feasible chain; same tie-break as the DP."""
    nodes = []
    for idx, occ in enumerate(candidates, start=1):
        for p in occ:
            nodes.append((idx, p, layout.pivot_spans[idx - 1][0]))

    best = []
    best_key = None

    def ok_pair(a, b):
        return (
            a[0] < b[0]
            and b[1] >= a[1] + layout.piv_len
            and (b[1] - a[1]) <= (b[2] - a[2])
        )

    def extend(chain, rest):
        nonlocal best, best_key
        key = (-len(chain), [(n[1], n[0]) for n in chain])
        if best_key is None or key < best_key:
            best, best_key = list(chain), key
        for i, node in enumerate(rest):
            if not chain or ok_pair(chain[-1], node):
                chain.append(node)
                extend(chain, rest[i + 1 :])
                chain.pop()

    extend([], nodes)
    return [PivotMatch(i, y, x) for i, y, x in best]


class TestSelectPivots:
    def make_layout(self, k, seg=100, piv=10):
        n = k * seg + (k - 1) * piv
        return partition_encoder(n, seg, piv)

    def test_no_deletions_selects_all(self):
        layout = self.make_layout(5)
        candidates = [[layout.pivot_spans[i][0]] for i in range(4)]
        sel = select_pivots(candidates, layout)
        assert len(sel) == 4
        assert [m.pivot_index for m in sel] == [1, 2, 3, 4]

    def test_empty_candidates(self):
        layout = self.make_layout(4)
        assert select_pivots([[], [], []], layout) == []

    def test_gap_constraint_rejects_false_pivot(self):
        layout = self.make_layout(4)
        # pivot 2's only occurrence is far left of pivot 1's, violating order
        x1 = layout.pivot_spans[0][0]
        candidates = [[x1], [x1 - 50], [layout.pivot_spans[2][0] - 1]]
        sel = select_pivots(candidates, layout)
        oracle = brute_force_select(candidates, layout)
        assert [(m.pivot_index, m.y_start) for m in sel] == [
            (m.pivot_index, m.y_start) for m in oracle
        ]

    def test_matches_exhaustive_oracle_randomized(self):
        rng = random.Random(123)
        for trial in range(150):
            k = rng.randint(2, 8)
            layout = self.make_layout(k)
            candidates = []
            for i in range(k - 1):
                x_start = layout.pivot_spans[i][0]
                occ = sorted(
                    rng.sample(range(0, x_start + 1), min(rng.randint(0, 4), x_start + 1))
                )
                candidates.append(occ)
            sel = select_pivots(candidates, layout)
            oracle = brute_force_select(candidates, layout)
            assert len(sel) == len(oracle), (trial, candidates)
            assert [(m.pivot_index, m.y_start) for m in sel] == [
                (m.pivot_index, m.y_start) for m in oracle
            ], (trial, candidates)

    def test_selection_feasible_on_channel_runs(self):
        for seed in range(5):
            x = random_bits(4000, substream(seed, "source"))
            out = apply_deletion_channel(x, 0.01, substream(seed, "channel"))
            layout = partition_encoder(4000, 100, 25)
            cands = [
                find_candidates(out.y, x[a:b], a) for a, b in layout.pivot_spans
            ]
            sel = select_pivots(cands, layout)
            for m in sel:
                assert m.y_start <= m.x_start
            for a, b in zip(sel, sel[1:]):
                assert b.y_start >= a.y_start + layout.piv_len
                assert (b.y_start - a.y_start) <= (b.x_start - a.x_start)


class TestFormSections:
    def test_two_pivots_three_sections(self):
        layout = partition_encoder(320, 100, 10)
        sel = [PivotMatch(1, 98, 100), PivotMatch(2, 207, 210)]
        secs = form_sections(sel, layout, 315)
        assert len(secs) == 3
        assert secs[0].x_span == (0, 100) and secs[0].y_span == (0, 98)
        assert secs[1].x_span == (110, 210) and secs[1].y_span == (108, 207)
        assert secs[2].x_span == (220, 320) and secs[2].y_span == (217, 315)
        assert [s.t for s in secs] == [2, 1, 2]

    def test_beta_zero_all_t_zero(self):
        layout = partition_encoder(320, 100, 10)
        sel = [PivotMatch(1, 100, 100), PivotMatch(2, 210, 210)]
        secs = form_sections(sel, layout, 320)
        assert all(s.t == 0 for s in secs)

    def test_deletion_totals_conserved(self):
        rng = random.Random(7)
        for _ in range(20):
            x = random_bits(3000, substream(rng.randrange(2**30), "source"))
            out = apply_deletion_channel(x, 0.02, substream(rng.randrange(2**30), "channel"))
            layout = partition_encoder(3000, 150, 28)
            cands = [find_candidates(out.y, x[a:b], a) for a, b in layout.pivot_spans]
            sel = select_pivots(cands, layout)
            secs = form_sections(sel, layout, len(out.y))
            assert sum(s.t for s in secs) == len(out.deleted_positions)
            # tiling of both strings
            x_cursor = 0
            y_cursor = 0
            for i, s in enumerate(secs):
                assert s.x_span[0] == x_cursor and s.y_span[0] == y_cursor
                x_cursor = s.x_span[1] + (layout.piv_len if i < len(sel) else 0)
                y_cursor = s.y_span[1] + (layout.piv_len if i < len(sel) else 0)
            assert x_cursor == 3000 and y_cursor == len(out.y)

    def test_unselected_pivots_absorbed(self):
        layout = partition_encoder(320, 100, 10)
        sel = [PivotMatch(2, 205, 210)]  # pivot 1 unselected
        secs = form_sections(sel, layout, 315)
        assert len(secs) == 2
        assert secs[0].x_span == (0, 210)  # includes pivot 1's bits
