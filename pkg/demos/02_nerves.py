"""
Nerves, level by level
======================

Each nerve is a LevelProvider: finite levels plus the action of
simplicial operators.  Here we look at the Duskin nerve, its two marked
variants and the precategory nerve of the walking retract.
"""

from finite2cat import ch_star, walking_2cell, walking_2iso, walking_retract
from finite2cat.nerves import (DuskinNerve, PrecatNerve, check_coskeletal, check_segal,
                               check_simplicial_identities, check_within_simplicial,
                               scaled_nerve_level, tdelta_nerve_level)

D = walking_2cell()
P = DuskinNerve(D)
for n in range(4):
    print(f"Duskin level {n} of {D.name}: {len(P.level((n,)))} simplices")

# a 2-simplex is (objects, (e01, e02, e12), (phi_012,))
x = P.level((2,))[3]
print("a 2-simplex:", x)
print("its faces:", [P.face((2,), 0, r, x) for r in range(3)])
print("simplicial identity failures:", check_simplicial_identities(P, [(n,) for n in range(4)]))
print("coskeletal at 4:", check_coskeletal(D, 4)["pass"])

# markings: tDelta counts witnesses, the scaled nerve only flags 2-simplices
SI = walking_2iso()
marked = sum(bool(w) for _, w in tdelta_nerve_level(SI, 2))
scaled = sum(m for _, m in scaled_nerve_level(SI, 2))
print(f"{SI.name}: {marked} marked and {scaled} scaled 2-simplices")
print("scaled = reflected tDelta through dim 4:", check_within_simplicial(SI, 4))

# the precategory nerve satisfies the Segal condition on the nose
R = ch_star(walking_retract())
PN = PrecatNerve(R)
print(f"{R.name}: level (2,1,0) has {len(PN.level((2, 1, 0)))} chains")
print("Segal at (3,1,1):", check_segal(R, 3, 1, 1, provider=PN))
