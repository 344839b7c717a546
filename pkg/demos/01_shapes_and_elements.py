"""Shapes, elements, and height structure.

A finite abelian p-group is described by its prime and ascending exponent
partition; this walk-through builds a couple of shapes and pokes at the
element-level invariants everything else is built on.
"""

from pgroups import (
    element,
    element_order,
    format_shape,
    height,
    make_shape,
    parse_shape,
    ulm_invariants,
    ulm_sequence,
)

s = make_shape(2, [1, 3])
print(f"shape {format_shape(s)}: order {s.order}, rank {s.rank}")
print(f"round trip through text: {parse_shape(format_shape(s)) == s}")

# the two canonical generators: a of order 2, b of order 8
a = element(s, (1, 0))
b = element(s, (0, 1))
print(f"|a| = {element_order(a)}, |b| = {element_order(b)}")

# height counts how deep an element sits in the chain G > 2G > 4G > ...
for coords in [(1, 0), (0, 1), (0, 2), (1, 2), (0, 4)]:
    x = element(s, coords)
    seq = ulm_sequence(x)
    print(f"x = {coords}: height {height(x)}, ulm sequence {seq.heights}")

# the invariant tuple counts cyclic summands by exponent
t = make_shape(2, [1, 1, 3])
print(f"{format_shape(t)} has ulm invariants {ulm_invariants(t)}")
