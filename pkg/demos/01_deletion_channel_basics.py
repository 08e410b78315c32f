"""
Bit sequences and the deletion channel
======================================

Alice holds a binary file X; Bob holds Y, a copy of X with each bit
independently deleted with probability beta.  Everything downstream works on
these two sequences.
"""

from delsync import BitSeq, apply_deletion_channel, random_bits, substream

# A BitSeq is an immutable bit string; build one from a literal or an iterable.
x = BitSeq("1011001110")
print("x        =", x.to01())
print("x[2:7]   =", x[2:7].to01())
print("x + x    =", (x + x).to01())

# All randomness flows from one seed through labeled sub-streams, so the
# source and the channel never perturb each other.
seed = 7
x = random_bits(40, substream(seed, "source"))
out = apply_deletion_channel(x, 0.15, substream(seed, "channel"))

print("\nx =", x.to01())
print("y =", out.y.to01())
print("deleted positions:", out.deleted_positions)

# The channel outcome is self-consistent: removing those positions from x
# reproduces y exactly.
assert x.delete(out.deleted_positions) == out.y
print("outcome invariant holds")

# Replaying with the same seed gives the identical realization.
again = apply_deletion_channel(x, 0.15, substream(seed, "channel"))
assert again.y == out.y and again.deleted_positions == out.deleted_positions
print("channel is reproducible from the seed")
