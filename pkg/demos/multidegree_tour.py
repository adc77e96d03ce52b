#!/usr/bin/env python3
"""Twisting multidegrees on the complete graph K_4.

Reproduces the descending-degree family: one twist per step, each member
concentrated on its own vertex, the compatibility set exactly the family,
and the twist vectors forming a chain.
"""

from linkedgrass import multidegree as md

n = 4
report = md.kn_instance(n)
print(f"K_{n} with initial multidegree {report.w0}")
for j, w in enumerate(report.multidegrees):
    ok, order = md.is_concentrated(report.graph, w, j)
    print(f"  w_{j} = {w}   concentrated on v_{j}: {ok} (ordering {order})")

print("\ntwist vectors from w_0 (zero at the last vertex):")
for j, counts in enumerate(report.twist_vectors, start=1):
    print(f"  w_0 -> w_{j}: {counts}")
print("they form a chain under the coordinatewise order:", report.nested_chain)

vbar = md.vbar_set(report.graph, report.w0, {j: report.multidegrees[j] for j in range(n)})
print(f"\ncompatibility set has {len(vbar)} members, equal to the family:",
      sorted(vbar) == sorted(report.multidegrees))
