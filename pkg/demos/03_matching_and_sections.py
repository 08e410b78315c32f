"""
Module I: pivots, candidate matches, and section formation
==========================================================

Alice tiles X into segments separated by short pivots and ships Bob the
pivots.  Bob gathers every occurrence that deletions could explain, picks the
best chain, and both sides cut their sequences into aligned sections.
"""

from delsync import (
    apply_deletion_channel,
    find_candidates,
    form_sections,
    partition_encoder,
    pivot_length,
    random_bits,
    select_pivots,
    substream,
)

beta, s = 0.02, 2.0
seg_len = round(s / beta)          # 100 bits per segment
piv_len = pivot_length(s, beta)    # long enough to keep false matches at o(beta)
print(f"segment length {seg_len}, pivot length {piv_len}")

n = 2000
x = random_bits(n, substream(3, "source"))
out = apply_deletion_channel(x, beta, substream(3, "channel"))
print(f"|x| = {n}, |y| = {len(out.y)}, {len(out.deleted_positions)} deletions")

layout = partition_encoder(n, seg_len, piv_len)
print(f"k = {layout.k} segments, {layout.k - 1} pivots "
      f"-> Module I costs (k-1)(L_P + 1) = {(layout.k - 1) * (piv_len + 1)} bits")

# Bob's side: all feasible occurrences of each pivot (an occurrence right of
# the pivot's own position cannot be real, deletions only shift left).
candidates = [
    find_candidates(out.y, x[a:b], a) for a, b in layout.pivot_spans
]
print("candidate counts per pivot:", [len(c) for c in candidates])

selection = select_pivots(candidates, layout)
print(f"selected {len(selection)} of {layout.k - 1} pivots")

sections = form_sections(selection, layout, len(out.y))
print("sections (x-len, y-len, deletions):")
for sec in sections:
    print(f"  #{sec.section_id}: {sec.x_span[1] - sec.x_span[0]:4d} "
          f"{sec.y_span[1] - sec.y_span[0]:4d}  t={sec.t}")
assert sum(sec.t for sec in sections) == len(out.deleted_positions)
print("per-section deletion counts add up to the channel total")
