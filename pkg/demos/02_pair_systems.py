# coding: utf-8

# # Pair systems and minimal fixed sets
#
# A family of difference vectors e_a - e_b is a list of pairs {a, b}. The map
# eta sends a set A to the union of all pairs meeting it. Sets fixed by eta are
# exactly the index sets whose rows sum to zero, and the minimal ones
# partition {1..N}.

# In[1]:

from pathlib import Path

from wedgeheights.subset_structure import (
    amgm_bound,
    is_fixed,
    mask_of,
    members,
    minimal_partition,
    rank_relation,
    read_pair_system,
    system_matrix,
)

HERE = Path(__file__).resolve().parent
sys_ = read_pair_system(HERE / "data" / "pairs.txt")
print("pairs:", sys_.pairs)


# In[2]:

part = minimal_partition(sys_)
print("minimal blocks:", part.as_sets())
print("{1,2,3} fixed:", is_fixed(sys_, mask_of([1, 2, 3])), " {1,2} fixed:", is_fixed(sys_, mask_of([1, 2])))


# For independent columns the block count is exactly N - L, and the block
# sizes obey the AM-GM bound that drives the (N/(N-L))^(N-L) constant.

# In[3]:

y = system_matrix(sys_)
rel = rank_relation(y)
print("r =", rel.r, " N - L =", rel.n_minus_l, " full rank:", rel.full_rank)
prod_, bound = amgm_bound(part, sys_.l)
print("prod |A_j| =", prod_, "<=", bound)
print("block members:", [members(b) for b in part.blocks])
