"""Deformed Izergin determinants and their law suite.

One determinant, four printed representations (two sizes, plain and
conjugated), a sum-over-partitions expansion, and a web of exact laws tying
them together: shift transfer, conjugation by negating c, transposition,
inversion, reduction of a shifted pair, convolution, and the residue at an
argument collision extracted by exact rational interpolation.
"""

from mbethe import (Rat, SpectralSet, conj_mod_izergin, izergin_convolution,
                    izergin_deformation_sum, izergin_partition_sum,
                    mod_izergin, ordinary_izergin, rat_str, residue_check,
                    sample_generic, set_product)
from mbethe.scalars import with_shifts

c = Rat(1)
us = sample_generic(2, seed=5, c=c, bound=20, label="u")
vs = sample_generic(3, context=with_shifts(c, us), seed=6, c=c, bound=20,
                    label="v")
z = Rat(5, 3)

print("== one value, two determinant representations ==")
v_side = mod_izergin(z, us, vs, c, variant="v-side")
u_side = mod_izergin(z, us, vs, c, variant="u-side")
print(f"size-3 determinant: {rat_str(v_side)}")
print(f"size-2 determinant: {rat_str(u_side)}  (equal: {v_side == u_side})")

print("\n== the conjugated determinant is the c -> -c image ==")
print(conj_mod_izergin(z, us, vs, c) == mod_izergin(z, us, vs, -c))

print("\n== partition-sum expansion reproduces the determinant ==")
expansion = izergin_partition_sum(z, us, vs, c)
print(f"sum over 2^3 splits of v: {rat_str(expansion)}  "
      f"(equal: {expansion == v_side})")

print("\n== selected laws ==")
print("shift transfer   :",
      mod_izergin(z, us.shifted(-c), vs, c) == mod_izergin(z, us, vs.shifted(c), c))
print("negation         :",
      mod_izergin(z, us.negated(), vs.negated(), c) == conj_mod_izergin(z, us, vs, c))
print("transposition    :",
      conj_mod_izergin(z, us, vs, c)
      == (1 - z) ** (len(vs) - len(us)) * mod_izergin(z, vs, us, c))
print("unit-z vanishing :", mod_izergin(1, us, vs, c) == 0, " (fewer left args)")
print("ordinary limit   :",
      ordinary_izergin(us, SpectralSet(vs.values[:2]), c)
      == mod_izergin(1, us, SpectralSet(vs.values[:2]), c))

print("\n== convolution and deformation shifting ==")
xs = sample_generic(3, context=with_shifts(c, us, vs), seed=7, c=c, bound=20,
                    label="xi")
z1, z2 = Rat(2), Rat(5, 3)
print("convolution merges left sets  :",
      izergin_convolution(z1, z2, us, vs, xs, c)
      == mod_izergin(z1 * z2, us.union(vs), xs, c))
print("weighted sum shifts deformation:",
      izergin_deformation_sum(z1, z2, us, xs, c)
      == mod_izergin(z2 - z1, us, xs, c))
print("z1 = z2 collapses to a product :",
      izergin_deformation_sum(z1, z1, us, xs, c) == set_product("f", us, xs, c))

print("\n== residue at an argument collision ==")
limit, predicted = residue_check(z, us, vs, c)
print(f"interpolated limit : {rat_str(limit)}")
print(f"predicted residue  : {rat_str(predicted)}  (equal: {limit == predicted})")
