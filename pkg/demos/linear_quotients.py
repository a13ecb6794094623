"""
Linear quotients after multiplying by m
=======================================

(x^3, x^2y^2, y^3) has no admissible order, but m^t I does for t large.
The order construction lowers the largest lambda value at every step.
"""

from bettishape import MonomialIdeal, find_linear_quotients_power, has_linear_quotients
from bettishape.monomial_ideals import canonical_order, lambda_invariant
from bettishape.polynomial import format_monomial

names = ("x", "y")
I = MonomialIdeal(2, ((3, 0), (2, 2), (0, 3)))
print("admissible order of G(I):", has_linear_quotients(I))

O = canonical_order(I)
print("lambda along", [format_monomial(u, names) for u in O], "=", lambda_invariant(I, O).values)

res = find_linear_quotients_power(I)
for step, order in enumerate(res.orders):
    print(f"O_{step}:", ", ".join(format_monomial(u, names) for u in order),
          f"(max lambda {res.lambda_trajectory[step]})")
print("t =", res.t)
