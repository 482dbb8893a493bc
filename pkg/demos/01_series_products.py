"""Tour of the series engine: the two coefficientwise products.

The Hadamard product multiplies power series coefficientwise; the exponential
ene product is its weighted twin (-n A_n B_n) and, conjugated through exp/log,
multiplies the roots of polynomials.
"""

from fractions import Fraction

from hadene.series import (
    TruncatedSeries,
    ene,
    ene_exp,
    hadamard,
    koebe,
    poly_from_roots,
    polylog_series,
)

# Hadamard product: geometric series is the identity
geo = TruncatedSeries.geometric(8)
f = TruncatedSeries([Fraction(n * n - 3, n + 1) for n in range(9)])
print("f              ", list(f.coeffs))
print("f (.) geometric", list(hadamard(f, geo).coeffs))

# the polylog ladder is generated by Hadamard products of Li_1
li1 = polylog_series(1, 8)
print("\nLi_1 (.) Li_1 =", list(hadamard(li1, li1).coeffs), "  (the 1/n^2 ladder step)")

# the Koebe function z/(1-z)^2 converts between the two products:
#   ene_exp(F, G) = -koebe (.) F (.) G
k0 = koebe(8)
lhs = ene_exp(f, geo)
rhs = -hadamard(k0, hadamard(f, geo))
print("\nkoebe relation holds exactly:", lhs == rhs)

# the multiplicative form multiplies roots: here (1 - z/2)(1 - z/3) against
# (1 - z/4) gives roots {8, 12}
p = poly_from_roots([Fraction(2), Fraction(3)], 12)
q = poly_from_roots([Fraction(4)], 12)
product = ene(p, q)
expected = poly_from_roots([Fraction(8), Fraction(12)], 12)
print("\nene(p, q)      ", list(product.coeffs)[:4], "...")
print("root product   ", list(expected.coeffs)[:4], "...")
print("roots multiply exactly:", product == expected)

# and with integer coefficients the product coefficients stay integers
a = TruncatedSeries([Fraction(1), Fraction(3), Fraction(-2), Fraction(5)] + [Fraction(0)] * 8)
print("\ninteger inputs give integer ene coefficients:",
      [c.denominator for c in ene(a, a).coeffs] == [1] * 12)
