"""Similarity dimension of self-similar sets, plain and star-matrix forms."""
from fractions import Fraction as F

from lydim import SimilarityIFS, code_point, moran_root, moran_root_star, validate_ifs

cantor = SimilarityIFS.middle_thirds()
print(validate_ifs(cantor))
root = moran_root(cantor.ratios)
print(f"middle thirds: p = {root.p:.12f} after {root.iterations} bisection steps")
print(f"  Li-Yorke pairs live in a set of dimension {root.ly_dimension:.12f}")

print("cylinder [1,2,2]:", code_point(cantor, (1, 2, 2)))

print("unequal ratios 1/2, 1/4:", moran_root([F(1, 2), F(1, 4)]).p)

# star maps reduce to ratios 1/l1 and 1/(l1*li)
for lambdas in ([3, 3, 3], [F(20, 9), 2], [2, 4, 4]):
    print("star", [str(x) for x in lambdas], "->", round(moran_root_star(lambdas).p, 12))
