"""Rational kernels and the product conventions.

Everything in this package runs over exact rationals. The three kernels
g, f, h are ratios of the argument difference shifted by the constant c, and
the shorthand products over parameter sets (with the empty-set convention)
drive every partition-sum formula downstream.
"""

from mbethe import (Rat, SpectralSet, kernel_f, kernel_g, kernel_h, rat_str,
                    sample_generic, set_product)
from mbethe.scalars import with_shifts

c = Rat(1)

print("== kernel values at c = 1 ==")
print(f"g(3, 1) = {rat_str(kernel_g(3, 1, c))}")
print(f"f(2, 1) = {rat_str(kernel_f(2, 1, c))}   (f = 1 + g)")
print(f"h(2, 1) = {rat_str(kernel_h(2, 1, c))}   (h = f / g, total)")

print("\n== shift and negation symmetries ==")
u, v = Rat(7, 3), Rat(-2, 5)
print(f"f(-u, -v) == f(v, u): {kernel_f(-u, -v, c) == kernel_f(v, u, c)}")
print(f"f(u - c, v) == f(u, v + c): "
      f"{kernel_f(u - c, v, c) == kernel_f(u, v + c, c)}")
print(f"negating c swaps arguments: "
      f"{kernel_f(u, v, -c) == kernel_f(v, u, c)}")

print("\n== set products and the empty-set convention ==")
left = SpectralSet([3, 5], "u")
print(f"f({{3,5}}, {{0}}) = {rat_str(set_product('f', left, (0,), c))}")
print(f"f(z, empty)    = {rat_str(set_product('f', 7, (), c))}")

bar_u = SpectralSet([1, 2, 4], "u")
rest = bar_u.without(1)
print(f"complement product f(u-rest, u_2) = "
      f"{rat_str(set_product('f', rest, bar_u[1], c))}  (vanishes: f(1,2) = 0)")

print("\n== generic sampling ==")
theta = sample_generic(3, seed=11, c=c, bound=20, label="theta")
more = sample_generic(4, context=with_shifts(c, theta), seed=12, c=c, bound=20)
print(f"theta     = {[rat_str(x) for x in theta]}")
print(f"joint set = {[rat_str(x) for x in more]}")
print("no two parameters across both sets differ by 0, +c, or -c,")
print("so every kernel evaluation any formula needs is finite.")
