# coding: utf-8

# # A worked norm ball: the hexagon
#
# X has columns (1,0,-1) and (0,1,-1). The ball {y : ||Xy||_1 <= 1} is a
# hexagon; its polar is a zonotope whose area is 2^L times the wedge norm.

# In[1]:

from math import factorial
from pathlib import Path

from wedgeheights.lattice_geometry import (
    NormBallSpec,
    dual_volume,
    primal_volume,
    primal_volume_estimate,
    reisner_minkowski_report,
    successive_minima,
)
from wedgeheights.linalg_core import read_matrix, wedge_l1

HERE = Path(__file__).resolve().parent
spec = NormBallSpec(read_matrix(HERE / "data" / "hexagon.txt"))
print("wedge l1:", wedge_l1(spec.x))
print("area of B_X:", primal_volume(spec), " area of the polar:", dual_volume(spec))
print("Monte Carlo check:", float(primal_volume_estimate(spec, samples=200_000, seed=1)))


# ## Successive minima
#
# Exact enumeration with a certified search box.

# In[2]:

res = successive_minima(spec)
print("lambdas:", [str(v) for v in res.lambdas], " minimizers:", res.minimizers, " index:", res.index)
print("prod lambda =", res.lambda_product, "<= L! * wedge =", factorial(spec.l) * res.wedge_l1)


# ## The sandwich
#
# Mahler product against 4^L/L!, and the Minkowski product in [2^L/L!, 2^L].

# In[3]:

vr = reisner_minkowski_report(spec)
print("Mahler product", vr.mahler_product, ">=", vr.reisner_lhs, vr.reisner_ok)
print("Minkowski product", vr.minkowski_product, "in", [str(vr.minkowski_low), str(vr.minkowski_high)], vr.minkowski_ok)
