# coding: utf-8

# # The Schinzel norm and the extremal constants mu_{L,N}
#
# delta(x) = max(sum of positive parts, sum of negative parts). Its unit ball
# K_N has N^2 + N extreme points, +-e_m and e_m - e_n, so the best constant in
#
#     ||x_1 ^ ... ^ x_L||_1 <= mu_{L,N} * delta(x_1) ... delta(x_L)
#
# is a maximum over finitely many tuples of extreme points.

# In[1]:

from fractions import Fraction

from wedgeheights.extreme_points import convex_decompose, enumerate_extreme, render
from wedgeheights.linalg_core import schinzel_norm
from wedgeheights.mu_search import equality_construction, mu_exact, verify_theorem_2_1

print(schinzel_norm([3, 1, -1]), schinzel_norm([Fraction(1, 2), Fraction(1, 2), -1]))


# The extreme points of K_3, in canonical order:

# In[2]:

print(" ".join(render(p) for p in enumerate_extreme(3)))


# Any point on the unit sphere is an explicit convex combination of them.

# In[3]:

cc = convex_decompose([Fraction(2, 3), Fraction(1, 3), Fraction(-1, 2)])
for c, p in cc.terms:
    print(f"{c}  {render(p)}")
print("sum of weights:", cc.total())


# ## The mu table at desk scale
#
# Full grade gives 1 (the determinant inequality), grade N-1 gives N, and for
# 2L <= N the value is 2^L, attained by orthogonal differences.

# In[4]:

print(" L  N   mu  witness")
for n in range(2, 7):
    for l in range(1, n + 1):
        res = mu_exact(l, n)
        print(f"{l:2d} {n:2d} {res.value:4d}  {res.render_witness()}")


# The orthogonal-difference construction makes the inequality an equality.

# In[5]:

rep = verify_theorem_2_1(equality_construction(3, 6).columns)
print(rep.lhs, "<=", rep.rhs, "tight:", rep.tight)
