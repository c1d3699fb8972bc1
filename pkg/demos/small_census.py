"""
A small stability census
========================

Every graph on 2..5 vertices against K2 and C3. Most unstable pairs
have an obvious cause such as a disconnected factor or twin vertices.
The rest are the interesting ones.
"""

import collections

from gpstab import complete_graph, cycle_graph
from gpstab.census import census_summary, run_census

records = run_census(5, [complete_graph(2), cycle_graph(3)])
summary = census_summary(records)
print(summary["records"], "pairs")
for name, count in summary["classifications"].items():
    print(f"  {name:22s} {count}")

causes = collections.Counter(reason for r in records for reason in r.reasons)
print("causes of trivial instability:")
for reason, count in causes.most_common():
    print(f"  {reason:24s} {count}")

odd = [r for r in records if r.classification == "NontriviallyUnstable"]
print("nontrivially unstable:", [(r.gammaCanonical, r.sigmaCanonical) for r in odd])
