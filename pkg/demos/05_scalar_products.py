"""Closed scalar-product formulas, plain and twisted.

The plain-family scalar product has two printed partition sums (merged-set
and independent-set); the twisted family replaces the undeformed determinants
with mu-deformed ones and drops every cardinality restriction. All four forms
are checked against the brute-force pairing here.
"""

from mbethe import (ChainSpec, ModelParams, Rat, SpectralSet, TwistData,
                    WeightOracle, direct_scalar, eval_scalar,
                    eval_vacuum_average, rat_str, sample_generic)
from mbethe.scalars import with_shifts

c = Rat(1)
theta = sample_generic(3, seed=31, c=c, bound=20, label="theta")
spec = ChainSpec(3, theta, c)
oracle = WeightOracle.fundamental(spec)
params = ModelParams(c, Rat(1, 2), Rat(2, 3), Rat(3), Rat(5, 2))

us = sample_generic(2, context=with_shifts(c, theta), seed=32, c=c, bound=20,
                    label="u")
vs = sample_generic(2, context=with_shifts(c, theta, us), seed=33, c=c,
                    bound=20, label="v")

print("== plain family (equal cardinalities) ==")
want = direct_scalar(spec, None, "t21", us, "t12", vs)
sce = eval_scalar("SCe", us, vs, oracle, None, c)
scbe = eval_scalar("SCbe", us, vs, oracle, None, c)
print(f"merged-set sum      : {rat_str(sce)}")
print(f"independent-set sum : {rat_str(scbe)}")
print(f"oracle              : {rat_str(want)}  (all equal: {sce == scbe == want})")

print("\n== twisted family (no cardinality restriction) ==")
vs3 = sample_generic(3, context=with_shifts(c, theta, us), seed=34, c=c,
                     bound=20, label="v")
want = direct_scalar(spec, params, "nu21", us, "nu12", vs3)
spfin = eval_scalar("SPfin", us, vs3, oracle, params, c)
spik = eval_scalar("SPfinIK", us, vs3, oracle, params, c)
print(f"n = 2, m = 3 is allowed now")
print(f"merged-set sum      : {rat_str(spfin)}")
print(f"independent-set sum : {rat_str(spik)}")
print(f"oracle              : {rat_str(want)}  (all equal: "
      f"{spfin == spik == want})")

print("\n== vacuum average of twisted creation operators ==")
avg = eval_vacuum_average(vs3, oracle, params, c)
want = direct_scalar(spec, params, "nu12", vs3, "nu12", SpectralSet(()))
print(f"closed sum = {rat_str(avg)}  (oracle agrees: {avg == want})")
print("this is also the twisted scalar product with an empty left set:",
      avg == eval_scalar("SPfin", SpectralSet((), "u"), vs3, oracle, params, c))

print("\n== the untwisted limit, formula level ==")
twist = TwistData(beta1=Rat(3, 4), beta2=Rat(-2, 5), mu=Rat(1))
collapsed = eval_scalar("SPfin", us, vs, oracle, twist, c)
print("at mu = 1 with equal cardinalities the twisted sum collapses to the")
print("plain one (the surviving terms carry no twist powers):",
      collapsed == eval_scalar("SCe", us, vs, oracle, None, c))
