"""
Lifting against complicial generators
=====================================

Build a few generator inclusions, then check which nerves lift against
them.  Dropping one marking rule from the tDelta nerve breaks fibrancy,
and the report says where.
"""

from finite2cat import ch_star, discrete, ordinal, walking_2cell, walking_retract
from finite2cat.complicial import build_generator, fibrancy_report, knockout_report

g = build_generator("inner_horn", 3, 1)
print(g.name, "adds", sorted(g.codomain.simplices - g.domain.simplices))
print("marked in the codomain:", sorted(g.codomain.marked))

sat = build_generator("saturation", -1)
print(sat.name, "newly marked edges:", sorted(sat.codomain.marked - sat.domain.marked))

R = ch_star(walking_retract())
for mode in ("tdelta", "scaled"):
    rec = fibrancy_report(R, 3, mode)
    print(f"{R.name} [{mode}]:", "all lift" if all(r["pass"] for r in rec) else "FAILS")
    for r in rec[:3]:
        print(f"   {r['generator']}: {r['maps']} maps from the domain")

members = [walking_2cell(), discrete(ordinal(3)), R]
for rule, hit in knockout_report(members, 3).items():
    print(f"without '{rule}':", hit and f"{hit['member']} fails {hit['generator']}")
