"""
Module II: recovering one section interactively
===============================================

A section with more deletions than the codes can absorb is split by
delimiters: Alice sends the bits around the center, Bob reports where he
found them plus each half's deletion count, and the halves recurse until
syndromes suffice.  The transcript below shows one such conversation.
"""

import random

from delsync import CodeSpec, BitSeq, RecoveryTask, SectionPair, Transcript, recover_section

rng = random.Random(11)
n_s = 600
x = BitSeq([rng.randint(0, 1) for _ in range(n_s)])
deleted = sorted(rng.sample(range(n_s), 5))
y = x.delete(deleted)
print(f"section of {n_s} bits, deletions at {deleted}")

spec = CodeSpec.from_seed(w=2, a=(1.0, 3.5), seed=99)
transcript = Transcript()
task = RecoveryTask(SectionPair(0, (0, n_s), (0, len(y)), 5), x, y, depth=0, c=3.0)
estimate, clean = recover_section(task, spec, transcript)

print(f"\nrecovered exactly: {estimate == x} (clean={clean})")
print("conversation:")
for msg in transcript.entries:
    arrow = "Alice->Bob" if msg.direction == "A2B" else "Bob->Alice"
    print(f"  {arrow:10s} {msg.kind:12s} {msg.bits:4d} bits")
print(f"Module II total: {transcript.total_bits('II')} bits "
      f"(the raw section is {n_s})")
