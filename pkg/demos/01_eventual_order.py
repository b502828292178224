"""How exact polynomials are compared: the order at large arguments.

Two Hilbert-style polynomials are ranked by which one is larger at every
sufficiently large integer.  With exact rational coefficients that reduces
to comparing coefficients from the top degree down, and the crossover point
can be computed exactly.
"""

from fractions import Fraction

from higgs_lab import HilbertPolynomial

p = HilbertPolynomial([0, -100, 1])  # k^2 - 100k
q = HilbertPolynomial([0, 1])        # k

print(f"p = {p}")
print(f"q = {q}")
print(f"comparison: p {p.compare_eventual(q).value} q")

# p loses to q for small k but dominates once k clears both roots
threshold = p.stabilization_threshold(q)
print(f"sign of p - q settles at k = {threshold}")
for k in (0, 50, threshold - 1, threshold, threshold + 50):
    print(f"  p({k}) - q({k}) = {p.evaluate(k) - q.evaluate(k)}")

# rational coefficients stay exact; equality means equal polynomials
half = HilbertPolynomial([Fraction(-1, 2), 0, Fraction(1, 2)])
print(f"{half} at k=3 is exactly {half.evaluate(3)}")
print(f"serialized: {half.to_strings()}")
