"""
Regularity of m^k I before stabilization
========================================

For k >= c_I the regularity of m^k I grows by one per power.  Below c_I
one might expect it to equal the stable value max{j : (W_{c_I})_j != 0}.
This script scans a seeded batch of random monomial ideals and prints the
ideals where that expectation fails.
"""

import sys

from bettishape import conjecture_check, parse_ideal, render_betti, verify_counterexample
from bettishape.asymptotics import family
from bettishape.experiments import corpus

seed = int(sys.argv[1]) if len(sys.argv) > 1 else 5
ideals = corpus(seed, 100, max_n=4, max_deg=5)

flagged = 0
for I in ideals:
    report = conjecture_check(I)
    if report.conjecture_holds:
        continue
    flagged += 1
    print(report.ideal)
    print("  ", report.summary())
    print("   regularities:", report.regularities)
    for ce in report.counterexamples:
        print("   recomputed:", verify_counterexample(ce), ce.as_dict())

print(f"{flagged} of {len(ideals)} ideals disagree with the expected regularity")

# the smallest one, in three variables
J = parse_ideal("ring x1,x2,x3; I = (x1^4, x1*x2^2*x3, x1*x3^3, x1^2*x2*x3^2)").monomial
fam = family(J)
for k in range(4):
    print(f"m^{k} I  (componentwise linear: {fam.cwl(k)})")
    print(render_betti(fam.table(k)))
