"""
Betti diagrams of m^k I
=======================

Follow one graded ideal through the first few powers of the maximal
ideal and watch the diagram settle into a fixed shape.
"""

from bettishape import parse_ideal, render_betti, stabilization_index, strand_report
from bettishape.asymptotics import family

expr = parse_ideal("ring x1..x4; I = (x1*x2^3 + x3^4, x1 + x2 + x4, x2^3)")
I = expr.ideal
fam = family(I)

# the diagrams for k = 0..3
for k in range(4):
    print(f"m^{k} I")
    print(render_betti(fam.table(k)))

# componentwise linearity switches on at k = 2 and stays on
print("componentwise linear:", [fam.cwl(k) for k in range(5)])
c = stabilization_index(I)
print("c_I =", c)

# from c_I on, every nonzero strand is full and the strands move up by one per power
for k in range(c, c + 3):
    rep = strand_report(I, k)
    print(k, rep.strands, "all full" if rep.all_full else rep.fullness)
