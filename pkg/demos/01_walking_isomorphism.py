"""
The walking 2-isomorphism
=========================

Two parallel 1-cells u, v: 0 -> 1 and an invertible 2-cell between them.
It is the smallest 2-category that is not gaunt, so most of the
constructions in the library behave differently on it.
"""

from finite2cat import (classify_cells, discrete, enumerate_two_functors, is_gaunt, ordinal,
                        triangles, walking_2cell, walking_2iso)
from finite2cat.nps import enumerate_nps

SI = walking_2iso()
print(SI.name, "objects:", SI.n, "1-cells:", len(SI.cells1()), "2-cells:", len(SI.cells2()))
print("gaunt?", is_gaunt(SI))

# every 2-cell is invertible, so all of them show up as 2-isomorphisms
cells = classify_cells(SI)
print("2-isomorphisms:", len(cells["two_isomorphisms"]))
print("1-equivalences:", cells["one_equivalences"])

# no 1-cell points from 1 back to 0, hence no adjoint completion of u
print("adjoint completions:", {f: len(c) for f, c in cells["adjoint_completions"].items()})

# triangles: (f, g, h, phi) with an invertible phi: h => f then g
print("triangles in S(~[1]):", len(triangles(SI)))
print("triangles in S([1]):", len(triangles(walking_2cell())))

# out of the chain 0 -> 1 -> 2, strict 2-functors see only part of the picture
chain = discrete(ordinal(2))
strict = enumerate_two_functors(chain, SI)
normal = enumerate_nps(chain, SI)
print(f"strict 2-functors: {len(strict)}, normal pseudofunctors: {len(normal)}")
for F in normal:
    if not F.is_strict():
        f, g = (0, 1, 0), (1, 2, 0)
        print("  non-strict example, compositor:", F.compositor(f, g))
        break
