"""Deformed Izergin determinants, their partition-sum expansions, and the
residue machinery.

Each determinant K^(z)(u|v) exists in two printed representations: one of
size #v (total in z) and one of size #u carrying a (1-z)^(m-n) prefactor that
is undefined at z = 1 unless the cardinalities match. The conjugated variant
equals the plain one with c negated but is computed from its own determinant,
so the two routes stay independent and can be checked against each other.
"""

from __future__ import annotations

from .errors import CardinalityError, DegenerateError, PoleError, VariantUndefined
from .linalg import det
from .partitions import bits_of, enumerate_splits, mask_values
from .ratfunc import rational_interpolate
from .scalars import Rat, SpectralSet, is_generic, kernel_f, kernel_h, set_product

__all__ = [
    "mod_izergin", "conj_mod_izergin", "ordinary_izergin",
    "izergin_partition_sum", "izergin_convolution", "izergin_deformation_sum",
    "residue_check", "rational_interpolate", "rat_pow", "DetTables",
]


def rat_pow(base, exp: int) -> Rat:
    """base**exp for integer exp; 0**0 = 1, negative powers of 0 raise."""
    base = Rat(base)
    if exp == 0:
        return Rat(1)
    if base == 0 and exp < 0:
        raise ZeroDivisionError("negative power of zero")
    return base ** exp


def _inv_h(a, b, c) -> Rat:
    hv = kernel_h(a, b, c)
    if hv == 0:
        raise PoleError("1/h", a, b)
    return 1 / hv


def mod_izergin(z, u_set: SpectralSet, v_set: SpectralSet, c,
                variant: str = "v-side") -> Rat:
    """Deformed Izergin determinant K^(z)(u_set | v_set).

    variant 'v-side' is the #v-sized determinant, defined for every z;
    'u-side' is the #u-sized determinant with the (1-z)^(m-n) prefactor and
    raises VariantUndefined at z = 1 when the cardinalities differ.
    """
    z, c = Rat(z), Rat(c)
    u, v = u_set.values, v_set.values
    n, m = len(u), len(v)
    if variant == "v-side":
        rows = []
        for j in range(m):
            base = Rat(1)
            for ui in u:
                base *= kernel_f(ui, v[j], c)
            for t in range(m):
                if t != j:
                    base *= kernel_f(v[j], v[t], c)
            rows.append([(-z if j == k else Rat(0)) + base * _inv_h(v[j], v[k], c)
                         for k in range(m)])
        return det(rows)
    if variant == "u-side":
        if z == 1 and m != n:
            raise VariantUndefined(
                "u-side representation carries (1-z)^(m-n) and is undefined "
                f"at z=1 with m={m}, n={n}; use the v-side")
        rows = []
        for j in range(n):
            diag = Rat(1)
            for vk in v:
                diag *= kernel_f(u[j], vk, c)
            off = z
            for t in range(n):
                if t != j:
                    off *= kernel_f(u[j], u[t], c)
            rows.append([(diag if j == k else Rat(0)) - off * _inv_h(u[j], u[k], c)
                         for k in range(n)])
        return rat_pow(1 - z, m - n) * det(rows)
    raise ValueError(f"unknown variant {variant!r}")


def conj_mod_izergin(z, u_set: SpectralSet, v_set: SpectralSet, c,
                     variant: str = "v-side") -> Rat:
    """Conjugated deformed Izergin determinant (equals mod_izergin with c -> -c).

    Computed from its own determinant representation rather than by negating
    c, so the defining relation stays a checkable identity.
    """
    z, c = Rat(z), Rat(c)
    u, v = u_set.values, v_set.values
    n, m = len(u), len(v)
    if variant == "v-side":
        rows = []
        for j in range(m):
            base = Rat(1)
            for ui in u:
                base *= kernel_f(v[j], ui, c)
            for t in range(m):
                if t != j:
                    base *= kernel_f(v[t], v[j], c)
            rows.append([(-z if j == k else Rat(0)) + base * _inv_h(v[k], v[j], c)
                         for k in range(m)])
        return det(rows)
    if variant == "u-side":
        if z == 1 and m != n:
            raise VariantUndefined(
                "u-side representation carries (1-z)^(m-n) and is undefined "
                f"at z=1 with m={m}, n={n}; use the v-side")
        rows = []
        for j in range(n):
            diag = Rat(1)
            for vk in v:
                diag *= kernel_f(vk, u[j], c)
            off = z
            for t in range(n):
                if t != j:
                    off *= kernel_f(u[t], u[j], c)
            rows.append([(diag if j == k else Rat(0)) - off * _inv_h(u[k], u[j], c)
                         for k in range(n)])
        return rat_pow(1 - z, m - n) * det(rows)
    raise ValueError(f"unknown variant {variant!r}")


def ordinary_izergin(u_set: SpectralSet, v_set: SpectralSet, c,
                     conjugated: bool = False) -> Rat:
    """Undeformed Izergin determinant; requires equal cardinalities."""
    if len(u_set) != len(v_set):
        raise CardinalityError(
            f"ordinary determinant needs #u = #v, got {len(u_set)} and {len(v_set)}")
    fn = conj_mod_izergin if conjugated else mod_izergin
    return fn(Rat(1), u_set, v_set, c, variant="v-side")


def izergin_partition_sum(z, u_set: SpectralSet, v_set: SpectralSet, c,
                          side: str = "v-partitions",
                          conjugated: bool = False) -> Rat:
    """Sum-over-partitions expansion equal to the corresponding determinant.

    'v-partitions' splits v_set; 'u-partitions' splits u_set and carries the
    (1-z)^(m-n) prefactor (undefined at z=1 when cardinalities differ, like
    the u-side determinant).
    """
    z, c = Rat(z), Rat(c)
    n, m = len(u_set), len(v_set)
    if side == "v-partitions":
        total = Rat(0)
        for mask1, mask2 in enumerate_splits(m, 2):
            v1 = mask_values(v_set.values, mask1)
            v2 = mask_values(v_set.values, mask2)
            term = rat_pow(-z, len(v2))
            if conjugated:
                term *= set_product("f", v1, u_set, c) * set_product("f", v2, v1, c)
            else:
                term *= set_product("f", u_set, v1, c) * set_product("f", v1, v2, c)
            total += term
        return total
    if side == "u-partitions":
        if z == 1 and m != n:
            raise VariantUndefined(
                "u-partition expansion carries (1-z)^(m-n) and is undefined "
                f"at z=1 with m={m}, n={n}")
        total = Rat(0)
        for mask1, mask2 in enumerate_splits(n, 2):
            u1 = mask_values(u_set.values, mask1)
            u2 = mask_values(u_set.values, mask2)
            term = rat_pow(-z, len(u1))
            if conjugated:
                term *= set_product("f", v_set, u2, c) * set_product("f", u2, u1, c)
            else:
                term *= set_product("f", u2, v_set, c) * set_product("f", u1, u2, c)
            total += term
        return rat_pow(1 - z, m - n) * total
    raise ValueError(f"unknown side {side!r}")


def izergin_convolution(z1, z2, u_set: SpectralSet, v_set: SpectralSet,
                        xi_set: SpectralSet, c, conjugated: bool = False) -> Rat:
    """Convolution sum over splits of xi_set pairing two determinants.

    Contract: equals the single determinant at deformation z1*z2 on the merged
    left set {u_set, v_set}.
    """
    z2 = Rat(z2)
    fn = conj_mod_izergin if conjugated else mod_izergin
    total = Rat(0)
    for mask1, mask2 in enumerate_splits(len(xi_set), 2):
        x1 = SpectralSet(mask_values(xi_set.values, mask1))
        x2 = SpectralSet(mask_values(xi_set.values, mask2))
        term = rat_pow(z2, len(x1))
        term *= fn(z1, u_set, x1, c) * fn(z2, v_set, x2, c)
        if conjugated:
            term *= set_product("f", x1, x2, c) * set_product("f", x2, u_set, c)
        else:
            term *= set_product("f", x2, x1, c) * set_product("f", u_set, x2, c)
        total += term
    return total


def izergin_deformation_sum(z1, z2, u_set: SpectralSet, v_set: SpectralSet,
                            c, conjugated: bool = False) -> Rat:
    """Deformation-shifting sum over splits of v_set.

    Contract: equals the determinant at deformation z2 - z1.
    """
    z1 = Rat(z1)
    fn = conj_mod_izergin if conjugated else mod_izergin
    total = Rat(0)
    for mask1, mask2 in enumerate_splits(len(v_set), 2):
        v1 = SpectralSet(mask_values(v_set.values, mask1))
        v2 = mask_values(v_set.values, mask2)
        term = rat_pow(z1, len(v2)) * fn(z2, u_set, v1, c)
        if conjugated:
            term *= set_product("f", v2, v1, c)
        else:
            term *= set_product("f", v1, v2, c)
        total += term
    return total


def residue_check(z, u_set: SpectralSet, v_set: SpectralSet, c,
                  conjugated: bool = False):
    """Exactly extract the residue of K^(z) at the collision u_n -> v_m.

    Sets u_n = v_m + eps, interpolates eps -> (eps/c) * K^(z) (analytic at 0
    for a simple pole), evaluates the interpolant at 0, and compares with the
    predicted product f(u-rest, v_m) * f(v_m, v-rest) * K^(z) on the reduced
    sets. Returns (limit_value, predicted_value); equality is the test.

    The conjugated flag runs the identical procedure with c negated, which is
    the conjugated-determinant residue statement.
    """
    n, m = len(u_set), len(v_set)
    if n < 1 or m < 1:
        raise CardinalityError("residue check needs nonempty sets on both sides")
    c_eff = -Rat(c) if conjugated else Rat(c)
    u_rest = SpectralSet(u_set.values[:-1], u_set.label)
    v_m = v_set[m - 1]
    v_rest = v_set.without(m - 1)

    degree = 2 * (n + m)
    fit_count, holdout_count = 4 * (n + m) + 3, 3
    samples = []
    t = 0
    while len(samples) < fit_count + holdout_count:
        t += 1
        if t > 40 * (fit_count + holdout_count):
            raise DegenerateError("could not find enough generic sample offsets")
        eps = Rat(1, 997 + t)
        u_probe = (v_m + eps,)
        if not is_generic(c_eff, u_rest, u_probe, v_set):
            continue
        u_full = SpectralSet(u_rest.values + u_probe)
        samples.append((eps, eps / c_eff * mod_izergin(z, u_full, v_set, c_eff)))

    fn = rational_interpolate(samples[:fit_count], degree)
    for x, y in samples[fit_count:]:
        if fn(x) != y:
            raise DegenerateError("held-out sample not reproduced by the interpolant")
    try:
        limit_value = fn(0)
    except PoleError as exc:
        raise DegenerateError(
            "interpolant has a pole at 0; the collision is not a simple pole "
            "(remaining parameters are non-generic)") from exc

    predicted = (set_product("f", u_rest, v_m, c_eff)
                 * set_product("f", v_m, v_rest, c_eff)
                 * mod_izergin(z, u_rest, v_rest, c_eff))
    return limit_value, predicted


class DetTables:
    """Cached pairwise kernels for repeated determinant evaluation on subsets.

    Fixes a left set u and a ground list of values xi once, then evaluates
    K^(z)(u | xi_S + c) and its conjugate K-bar^(z)(u | xi_S - c) for many
    subsets S without recomputing pairwise kernels. The kernels of shifted
    pairs reduce to unshifted ones because f and h depend only on argument
    differences.
    """

    def __init__(self, u_values, ground_values, c):
        self.c = Rat(c)
        u = [Rat(x) for x in u_values]
        g = [Rat(x) for x in ground_values]
        self.size = len(g)
        self.n_left = len(u)
        c = self.c
        # f(u_i, xi_j + c) and f(xi_j - c, u_i) for every pair
        self.fu_plus = [[kernel_f(ui, gj + c, c) for gj in g] for ui in u]
        self.fu_minus = [[kernel_f(gj - c, ui, c) for ui in u] for gj in g]
        self.row_plus = []   # f(u-set, xi_j + c), one per ground element
        self.row_minus = []  # f(xi_j - c, u-set)
        for j in range(len(g)):
            rp = rm = Rat(1)
            for i in range(len(u)):
                rp *= self.fu_plus[i][j]
                rm *= self.fu_minus[j][i]
            self.row_plus.append(rp)
            self.row_minus.append(rm)
        self.fpair = [[kernel_f(a, b, c) if i != j else None
                       for j, b in enumerate(g)] for i, a in enumerate(g)]
        self.hinv = [[_inv_h(a, b, c) for b in g] for a in g]
        # split-independent off-diagonal parts of the u-indexed representation
        uoff_plus = []
        uoff_minus = []
        for j, uj in enumerate(u):
            comp_p = comp_m = Rat(1)
            for t, ut in enumerate(u):
                if t != j:
                    comp_p *= kernel_f(uj, ut, c)
                    comp_m *= kernel_f(ut, uj, c)
            uoff_plus.append([comp_p * _inv_h(uj, uk, c) for uk in u])
            uoff_minus.append([comp_m * _inv_h(uk, uj, c) for uk in u])
        self.uoff_plus = uoff_plus
        self.uoff_minus = uoff_minus
        self._zcache: dict = {}

    def _scaled_off(self, z):
        """(-z, z*uoff_plus, z*uoff_minus), cached per deformation value."""
        key = (z.numerator, z.denominator)
        hit = self._zcache.get(key)
        if hit is None:
            hit = (-z,
                   [[z * x for x in row] for row in self.uoff_plus],
                   [[z * x for x in row] for row in self.uoff_minus])
            self._zcache[key] = hit
        return hit

    def k_plus(self, z, mask: int, idx=None) -> Rat:
        """K^(z)(u | xi_S + c) for the subset S given as a bitmask."""
        if idx is None:
            idx = list(bits_of(mask))
        z = Rat(z)
        n = self.n_left
        neg_z, zoff, _ = self._scaled_off(z)
        if len(idx) > n and z != 1:
            # u-indexed representation: fixed size n, cheaper for large S
            rows = []
            for j in range(n):
                d = Rat(1)
                frow = self.fu_plus[j]
                for t in idx:
                    d *= frow[t]
                zrow = zoff[j]
                rows.append([(d - zrow[j] if j == k else -zrow[k])
                             for k in range(n)])
            return rat_pow(1 - z, len(idx) - n) * det(rows)
        rows = []
        for j in idx:
            base = self.row_plus[j]
            frow = self.fpair[j]
            for t in idx:
                if t != j:
                    base *= frow[t]
            hrow = self.hinv[j]
            rows.append([(neg_z if j == k else Rat(0)) + base * hrow[k]
                         for k in idx])
        return det(rows)

    def k_minus_conj(self, z, mask: int, idx=None) -> Rat:
        """Conjugated K-bar^(z)(u | xi_S - c) for the subset S."""
        if idx is None:
            idx = list(bits_of(mask))
        z = Rat(z)
        n = self.n_left
        neg_z, _, zoff = self._scaled_off(z)
        if len(idx) > n and z != 1:
            rows = []
            for j in range(n):
                d = Rat(1)
                for t in idx:
                    d *= self.fu_minus[t][j]
                zrow = zoff[j]
                rows.append([(d - zrow[j] if j == k else -zrow[k])
                             for k in range(n)])
            return rat_pow(1 - z, len(idx) - n) * det(rows)
        rows = []
        for j in idx:
            base = self.row_minus[j]
            for t in idx:
                if t != j:
                    base *= self.fpair[t][j]
            rows.append([(neg_z if j == k else Rat(0)) + base * self.hinv[k][j]
                         for k in idx])
        return det(rows)

    def f_between(self, mask_left: int, mask_right: int,
                  idx_left=None, idx_right=None) -> Rat:
        """f(xi_L, xi_R) for two disjoint subset masks (shift-invariant)."""
        if idx_left is None:
            idx_left = list(bits_of(mask_left))
        if idx_right is None:
            idx_right = list(bits_of(mask_right))
        out = Rat(1)
        for i in idx_left:
            row = self.fpair[i]
            for j in idx_right:
                out *= row[j]
        return out
