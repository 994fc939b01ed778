# coding: utf-8

# # Regulators and heights from a log-embedding table
#
# For Q(sqrt 2) the unit group has rank r = 1 and the table stores
# d_v * log|eps|_v at both real places. The wedge norm of r unit vectors is
# (r + 1) times the regulator.

# In[1]:

import math
from pathlib import Path

from wedgeheights.lattice_geometry import theorem_1_2
from wedgeheights.sunit_io import conjecture_report, height, load_embedding, regulator_from_basis, subgroup_index

HERE = Path(__file__).resolve().parent
table = load_embedding(HERE / "data" / "qsqrt2.txt")
res = regulator_from_basis(table, ["eps"])
print("Reg =", res.reg, " ln(1+sqrt2) =", math.log(1 + math.sqrt(2)))
print("h(eps) =", height(table.unit("eps"), table.global_degree))


# Squaring the unit passes to an index-2 subgroup and doubles the regulator.

# In[2]:

print("Reg(eps^2) =", regulator_from_basis(table, ["eps2"]).reg, " index:", subgroup_index([[2]]))


# ## Wedge norm against the product of norms
#
# For diagonal vectors the wedge norm never exceeds the product of l1 norms;
# the report gives the ratio without claiming anything about lower bounds.

# In[3]:

rep = conjecture_report([[2, -1, -1, 0], [0, 1, 1, -2]])
print("wedge", rep.wedge_l1, " product", rep.norm_product, " sandwich", rep.sandwich, " ratio", rep.ratio)


# A reduced basis for the subgroup spanned by those vectors.

# In[4]:

red = theorem_1_2([[2, -1, -1, 0], [0, 1, 1, -2]])
print("reduced:", [list(map(str, b)) for b in red.reduced], " index", red.index)
