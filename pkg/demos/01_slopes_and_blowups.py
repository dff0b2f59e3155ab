"""Slopes, mediants, and chains of rational curves.

The fiber we care about is a chain of projective lines.  Each line is
labeled by a reduced slope a/b, the chain always starts at 0/1 and ends
at 1/0, and blowing up the intersection of two neighbours inserts their
mediant between them.  This script walks through that calculus.
"""

from nodalwitness.farey import INF, Slope, ZERO, farey_path, mediant
from nodalwitness.surface import NodalSurface, line_label

print("== mediants ==")
half = mediant(ZERO, Slope(1, 1))
print(f"mediant(0, 1) = {half}")
print(f"mediant(1/2, 1) = {mediant(half, Slope(1, 1))}")
print(f"mediant(0, 1/0) = {mediant(ZERO, INF)}  (the first blowup of P1 x P1)")
print()

# Slopes reduce themselves and compare by value.
assert Slope(2, 4) == half
assert ZERO < half < Slope(1, 1) < INF

print("== growing a chain ==")
X = NodalSurface.p1()
print("start:", [str(s) for s in X.lines])
for node in (0, 1, 1):
    X = X.blowup_node(node)
    print(f"blow up node {node}:", [str(s) for s in X.lines])
print()

# Neighbouring labels in any reachable chain are unimodular: the 2x2
# determinant of their numerators and denominators is +-1.  That is what
# makes each intersection an honest node.
for left, right in zip(X.lines, X.lines[1:]):
    det = left.a * right.b - left.b * right.a
    assert abs(det) == 1

print("== the path down to a target slope ==")
target = Slope(3, 7)
path = farey_path(target)
print(f"farey_path({target}) = {[str(s) for s in path]}")
print("each new entry is the mediant of two earlier neighbours,")
print("so this doubles as the blowup schedule that makes 3/7 a line.")
print()

print("== labels used everywhere else ==")
print([line_label(s) for s in X.lines])
print()
print("dual graph in DOT form:")
print(X.to_dot())
