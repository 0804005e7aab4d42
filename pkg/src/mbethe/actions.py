"""Partition-sum evaluators for the multiple-action and scalar-product
formulas, plus the diagonal-transposition symmetry on evaluation requests.

Evaluators return coefficient maps over surviving subsets (or plain scalars),
so formula-to-formula comparisons never pay the 2^N materialization cost;
materializing against the chain oracle is an explicit separate step.
"""

from __future__ import annotations

import hashlib
import multiprocessing
from dataclasses import dataclass
from typing import Callable, Optional

from .chain import ChainSpec, apply_entry_product, vacuum_state
from .errors import CapabilityError, CardinalityError, DomainError
from .izergin import DetTables, conj_mod_izergin, mod_izergin, rat_pow
from .partitions import (CoefficientMap, GroundSet, bits_of, enumerate_splits,
                         mask_values)
from .scalars import (ModelParams, Rat, SpectralSet, TwistData, kernel_h,
                      prod_over, rat_str, set_product)

DIAGONAL_TRANSPOSE = {
    "t11": "t22", "t22": "t11", "t12": "t12", "t21": "t21",
    "nu11": "nu22", "nu22": "nu11", "nu12": "nu12", "nu21": "nu21",
}


# ---------------------------------------------------------------------------
# Weight oracles (all callables are picklable classes, safe for workers)
# ---------------------------------------------------------------------------

class FundamentalWeight:
    """Closed-form vacuum weight of the inhomogeneous fundamental chain."""

    def __init__(self, theta, c, kind: str):
        self.theta = tuple(Rat(t) for t in theta)
        self.c = Rat(c)
        self.kind = kind

    def __call__(self, u) -> Rat:
        u = Rat(u)
        out = Rat(1)
        for th in self.theta:
            if self.kind in ("lam1", "product"):
                out *= kernel_h(u, th, self.c)
            if self.kind in ("lam2", "product"):
                out *= (u - th) / self.c
        return out


class HashRational:
    """Pure pseudo-random nonzero rational of a spectral point.

    Deterministic across processes and sessions (keyed hashing, not Python's
    salted hash), so formula-level tests can use independent weight values at
    every spectral point without storing a table.
    """

    def __init__(self, seed: int, salt: str, bound: int = 40):
        self.seed = seed
        self.salt = salt
        self.bound = bound

    def __call__(self, u) -> Rat:
        u = Rat(u)
        digest = hashlib.sha256(
            f"{self.seed}|{self.salt}|{u.numerator}|{u.denominator}".encode()
        ).digest()
        big = int.from_bytes(digest, "big")
        num = 1 + big % self.bound
        den = 1 + (big >> 64) % self.bound
        sign = -1 if (big >> 128) & 1 else 1
        return Rat(sign * num, den)


class NegatedArgWeight:
    """w(-u) for a wrapped weight function; involutive."""

    def __init__(self, inner: Callable):
        self.inner = inner

    def __call__(self, u) -> Rat:
        return self.inner(-Rat(u))


@dataclass(frozen=True)
class WeightOracle:
    """Vacuum weight functions, with optional creation-reduction data.

    reduction_weight and reduction_order are only needed for the repeated
    creation-operator formula; for the fundamental representation the weight
    is the product of the two vacuum weights and the order is the site count
    (checked at construction).
    """

    lambda1: Callable
    lambda2: Callable
    reduction_weight: Optional[Callable] = None
    reduction_order: Optional[int] = None

    @classmethod
    def fundamental(cls, spec: ChainSpec) -> "WeightOracle":
        oracle = cls(FundamentalWeight(spec.theta, spec.c, "lam1"),
                     FundamentalWeight(spec.theta, spec.c, "lam2"),
                     FundamentalWeight(spec.theta, spec.c, "product"),
                     spec.sites)
        for probe in (Rat(1, 3), Rat(5, 7)):
            expected = oracle.lambda1(probe) * oracle.lambda2(probe)
            if oracle.reduction_weight(probe) != expected:
                raise CapabilityError("fundamental reduction weight must equal "
                                      "the product of the vacuum weights")
        return oracle

    @classmethod
    def random_seeded(cls, seed: int, bound: int = 40) -> "WeightOracle":
        return cls(HashRational(seed, "lam1", bound),
                   HashRational(seed, "lam2", bound))

    def transposed(self) -> "WeightOracle":
        """Swap the two weights and negate their arguments (involutive)."""
        new_red = (NegatedArgWeight(self.reduction_weight)
                   if self.reduction_weight is not None else None)
        return WeightOracle(NegatedArgWeight(self.lambda2),
                            NegatedArgWeight(self.lambda1),
                            new_red, self.reduction_order)


def _twist_of(params) -> Optional[TwistData]:
    if params is None:
        return None
    if isinstance(params, TwistData):
        return params
    if isinstance(params, ModelParams):
        return params.twist()
    raise DomainError(f"unsupported twist parameter object {type(params)!r}")


# ---------------------------------------------------------------------------
# Evaluation requests and results
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ActionRequest:
    kind: str
    u_set: SpectralSet
    v_set: SpectralSet
    oracle: WeightOracle
    twist: Optional[TwistData]
    c: Rat


@dataclass(frozen=True)
class ActionResult:
    """Coefficients over surviving subsets of the ground set {u_set, v_set}."""

    kind: str
    coefficients: CoefficientMap
    ground: GroundSet
    values: tuple
    c: Rat

    def survivor_family(self) -> str:
        return "t12" if self.kind.startswith("t") else "nu12"

    def coeff_table(self) -> list:
        """Coefficients keyed by sorted origin tags, the report serialization."""
        return [(self.ground.tags(mask), rat_str(value))
                for mask, value in self.coefficients.items()]

    def materialize(self, spec: ChainSpec, params: Optional[ModelParams]) -> list:
        """Apply the surviving creation products to the vacuum and sum."""
        out = [Rat(0)] * spec.dim
        family = self.survivor_family()
        for mask, coeff in self.coefficients.items():
            args = SpectralSet(mask_values(self.values, mask))
            state = apply_entry_product(spec, params, family, args,
                                        vacuum_state(spec))
            for i, x in enumerate(state):
                if x != 0:
                    out[i] += coeff * x
        return out


def phi_transform(request: ActionRequest) -> ActionRequest:
    """Diagonal-transposition symmetry composed with spectral negation.

    Swaps the diagonal kinds (and the two weights / the two twist scalars) and
    negates all spectral parameters. Applying it twice returns the original
    request, and evaluation commutes with it coefficient-by-coefficient.
    """
    return ActionRequest(
        kind=DIAGONAL_TRANSPOSE[request.kind],
        u_set=request.u_set.negated(),
        v_set=request.v_set.negated(),
        oracle=request.oracle.transposed(),
        twist=request.twist.swapped() if request.twist is not None else None,
        c=request.c,
    )


def eval_request(request: ActionRequest) -> ActionResult:
    return eval_action(request.kind, request.u_set, request.v_set,
                       request.oracle, request.twist, request.c)


def eval_action(kind: str, u_set: SpectralSet, v_set: SpectralSet,
                oracle: WeightOracle, params, c) -> ActionResult:
    """Coefficient map of one multiple-action formula.

    kinds t11/t22/t21 are the plain-family actions (cardinality-constrained
    splits, undeformed determinants); nu11/nu22/nu21 are their twisted
    counterparts (unconstrained splits, unit-deformation determinants with
    twist-power weights); nu12 is the creation-reduction formula and needs the
    oracle's reduction data.
    """
    c = Rat(c)
    twist = _twist_of(params)
    u_set = SpectralSet(u_set.values, "u")
    v_set = SpectralSet(v_set.values, "v")
    ground = GroundSet.from_sets(u_set, v_set)
    values = u_set.values + v_set.values
    n, m = len(u_set), len(v_set)
    p = n + m
    lam1 = [oracle.lambda1(x) for x in values]
    lam2 = [oracle.lambda2(x) for x in values]
    coeffs = CoefficientMap()

    def fprod(mask_a, mask_b):
        return tables.f_between(mask_a, mask_b)

    if kind in ("t11", "t22", "nu11", "nu22"):
        tables = DetTables(u_set.values, values, c)
        if kind in ("nu11", "nu22"):
            if twist is None:
                raise DomainError(f"{kind} requires twist parameters")
            beta = twist.beta2 if kind == "nu11" else twist.beta1
            if beta == 0:
                raise DomainError(f"{kind} needs a nonzero "
                                  f"{'beta2' if kind == 'nu11' else 'beta1'}")
            splits = enumerate_splits(p, 2)
        else:
            splits = enumerate_splits(p, 2, cards=(n, p - n))
        for mask1, mask2 in splits:
            l = bin(mask1).count("1")
            if kind == "t11":
                term = rat_pow(-1, n) * tables.k_minus_conj(1, mask1)
                term *= fprod(mask2, mask1)
                wvals = lam1
            elif kind == "t22":
                term = rat_pow(-1, n) * tables.k_plus(1, mask1)
                term *= fprod(mask1, mask2)
                wvals = lam2
            elif kind == "nu11":
                term = rat_pow(beta, n) * rat_pow(-beta, -l)
                term *= tables.k_minus_conj(1, mask1) * fprod(mask2, mask1)
                wvals = lam1
            else:  # nu22
                term = rat_pow(beta, n) * rat_pow(-beta, -l)
                term *= tables.k_plus(1, mask1) * fprod(mask1, mask2)
                wvals = lam2
            for i in bits_of(mask1):
                term *= wvals[i]
            coeffs.add(mask2, term)
        return ActionResult(kind, coeffs, ground, values, c)

    if kind in ("t21", "nu21"):
        tables = DetTables(u_set.values, values, c)
        if kind == "nu21":
            if twist is None:
                raise DomainError("nu21 requires twist parameters")
            if twist.beta1 == 0 or twist.beta2 == 0:
                raise DomainError("nu21 needs nonzero beta1 and beta2")
            splits = enumerate_splits(p, 3)
        else:
            if m < n:
                return ActionResult(kind, coeffs, ground, values, c)
            splits = enumerate_splits(p, 3, cards=(n, n, p - 2 * n))
        for mask1, mask2, mask3 in splits:
            l1 = bin(mask1).count("1")
            l2 = bin(mask2).count("1")
            term = tables.k_plus(1, mask1) * tables.k_minus_conj(1, mask2)
            term *= fprod(mask1, mask2) * fprod(mask1, mask3) * fprod(mask3, mask2)
            if kind == "nu21":
                term *= rat_pow(-twist.beta1, n - l1) * rat_pow(-twist.beta2, n - l2)
            for i in bits_of(mask1):
                term *= lam2[i]
            for i in bits_of(mask2):
                term *= lam1[i]
            coeffs.add(mask3, term)
        return ActionResult(kind, coeffs, ground, values, c)

    if kind == "nu12":
        if twist is None:
            raise DomainError("nu12 requires twist parameters")
        if oracle.reduction_weight is None or oracle.reduction_order is None:
            raise CapabilityError(
                "nu12 needs the oracle's reduction weight and reduction order")
        if twist.beta1 == 0 or twist.beta2 == 0:
            raise DomainError("nu12 needs nonzero beta1 and beta2")
        order = oracle.reduction_order
        if p < order:
            raise DomainError(
                f"nu12 reduction applies only when #u + #v >= {order}, got {p}")
        red = [oracle.reduction_weight(x) for x in values]
        prefactor = rat_pow(
            (twist.mu - 1) * (twist.beta1 + twist.beta2)
            / (twist.beta1 * twist.beta2), p - order)
        for mask1, mask2 in enumerate_splits(p, 2, cards=(p - order, order)):
            term = prefactor
            for i in bits_of(mask1):
                term *= red[i]
            term *= set_product("g", mask_values(values, mask1),
                                mask_values(values, mask2), c)
            coeffs.add(mask2, term)
        return ActionResult(kind, coeffs, ground, values, c)

    raise ValueError(f"unknown action kind {kind!r}")


# ---------------------------------------------------------------------------
# Scalar products
# ---------------------------------------------------------------------------

def eval_scalar(form: str, u_set: SpectralSet, v_set: SpectralSet,
                oracle: WeightOracle, params, c, jobs: int = 1) -> Rat:
    """Closed scalar-product formulas as exact partition sums.

    SCe / SCbe are the plain-family forms (equal cardinalities); SPfin is the
    twisted form over unconstrained splits of the merged set; SPfinIK is its
    rearrangement over independent splits of the two sets. Only SPfin honors
    `jobs` (its split count is 2^(n+m); the others stay serial).
    """
    c = Rat(c)
    twist = _twist_of(params)
    n, m = len(u_set), len(v_set)
    lam1 = oracle.lambda1
    lam2 = oracle.lambda2

    if form in ("SCe", "SCbe"):
        if n != m:
            raise CardinalityError(f"{form} needs #u = #v, got {n} and {m}")
    if form == "SCe":
        values = u_set.values + v_set.values
        tables = DetTables(u_set.values, values, c)
        l1v = [lam1(x) for x in values]
        l2v = [lam2(x) for x in values]
        total = Rat(0)
        for mask1, mask2 in enumerate_splits(2 * n, 2, cards=(n, n)):
            term = tables.k_plus(1, mask1) * tables.k_minus_conj(1, mask2)
            term *= tables.f_between(mask1, mask2)
            for i in bits_of(mask1):
                term *= l2v[i]
            for i in bits_of(mask2):
                term *= l1v[i]
            total += term
        return total

    if form == "SCbe":
        total = Rat(0)
        for mu1, mu2 in enumerate_splits(n, 2):
            n1 = bin(mu1).count("1")
            usub1 = SpectralSet(mask_values(u_set.values, mu1))
            usub2 = SpectralSet(mask_values(u_set.values, mu2))
            for mv1, mv2 in enumerate_splits(m, 2, cards=(n1, m - n1)):
                vsub1 = SpectralSet(mask_values(v_set.values, mv1))
                vsub2 = SpectralSet(mask_values(v_set.values, mv2))
                term = mod_izergin(1, vsub2, usub2, c)
                term *= conj_mod_izergin(1, vsub1, usub1, c)
                term *= set_product("f", usub1, usub2, c)
                term *= set_product("f", vsub2, vsub1, c)
                term *= prod_over(lam2, usub1) * prod_over(lam2, vsub2)
                term *= prod_over(lam1, usub2) * prod_over(lam1, vsub1)
                total += term
        return total

    if form == "SPfin":
        if twist is None:
            raise DomainError("SPfin requires twist parameters")
        if twist.beta1 == 0 or twist.beta2 == 0:
            raise DomainError("SPfin needs nonzero beta1 and beta2")
        values = u_set.values + v_set.values
        payload = _SPfinPayload(
            u_values=u_set.values,
            values=values,
            c=c,
            mu=twist.mu,
            beta1=twist.beta1,
            beta2=twist.beta2,
            n=n,
            lam1=[lam1(x) for x in values],
            lam2=[lam2(x) for x in values],
        )
        count = 1 << len(values)
        if jobs <= 1 or count < 64:
            return _spfin_range(payload, 0, count)
        jobs = min(jobs, count)
        bounds = [count * k // jobs for k in range(jobs + 1)]
        chunks = [(payload, bounds[k], bounds[k + 1]) for k in range(jobs)]
        with multiprocessing.Pool(jobs) as pool:
            partials = pool.starmap(_spfin_range, chunks)
        total = Rat(0)
        for part in partials:
            total += part
        return total

    if form == "SPfinIK":
        if twist is None:
            raise DomainError("SPfinIK requires twist parameters")
        mu = twist.mu
        if mu == 0:
            raise DomainError("SPfinIK needs mu != 0 (it deforms by 1/mu)")
        if mu == 1 and m != n:
            raise DomainError(
                "SPfinIK carries the prefactor (1-mu)^(m-n), which is 0 or "
                f"singular at mu=1 with n={n}, m={m}; use SPfin instead")
        if twist.beta1 == 0 or twist.beta2 == 0:
            raise DomainError("SPfinIK needs nonzero beta1 and beta2")
        inv_mu = 1 / mu
        prefactor = rat_pow(mu, 2 * n) * rat_pow(1 - mu, m - n)
        total = Rat(0)
        for mu1, mu2 in enumerate_splits(n, 2):
            n1 = bin(mu1).count("1")
            n2 = n - n1
            usub1 = SpectralSet(mask_values(u_set.values, mu1))
            usub2 = SpectralSet(mask_values(u_set.values, mu2))
            fu = set_product("f", usub1, usub2, c)
            wu = prod_over(lam2, usub1) * prod_over(lam1, usub2)
            for mv1, mv2 in enumerate_splits(m, 2):
                m1 = bin(mv1).count("1")
                m2 = m - m1
                vsub1 = SpectralSet(mask_values(v_set.values, mv1))
                vsub2 = SpectralSet(mask_values(v_set.values, mv2))
                term = rat_pow(-twist.beta1, n2 - m2) * rat_pow(-twist.beta2, n1 - m1)
                term *= wu * prod_over(lam2, vsub2) * prod_over(lam1, vsub1)
                term *= fu * set_product("f", vsub2, vsub1, c)
                term *= mod_izergin(inv_mu, vsub2, usub2, c)
                term *= conj_mod_izergin(inv_mu, vsub1, usub1, c)
                total += term
        return prefactor * total

    raise ValueError(f"unknown scalar form {form!r}")


@dataclass(frozen=True)
class _SPfinPayload:
    u_values: tuple
    values: tuple
    c: Rat
    mu: Rat
    beta1: Rat
    beta2: Rat
    n: int
    lam1: list
    lam2: list


def _spfin_range(payload: _SPfinPayload, lo: int, hi: int) -> Rat:
    """Partial twisted-scalar-product sum over split ranks [lo, hi).

    The rank of a split is the bitmask of its second part, matching the
    engine's enumeration order; exact addition makes any range partition
    reduce to the identical total.
    """
    tables = DetTables(payload.u_values, payload.values, payload.c)
    p = len(payload.values)
    full = (1 << p) - 1
    n = payload.n
    beta_pow1 = {l: rat_pow(-payload.beta1, n - l) for l in range(p + 1)}
    beta_pow2 = {l: rat_pow(-payload.beta2, n - l) for l in range(p + 1)}
    total = Rat(0)
    for mask2 in range(lo, hi):
        mask1 = full ^ mask2
        idx1 = list(bits_of(mask1))
        idx2 = list(bits_of(mask2))
        term = beta_pow1[len(idx1)] * beta_pow2[len(idx2)]
        for i in idx1:
            term *= payload.lam2[i]
        for i in idx2:
            term *= payload.lam1[i]
        term *= tables.f_between(mask1, mask2, idx1, idx2)
        term *= tables.k_plus(payload.mu, mask1, idx1)
        term *= tables.k_minus_conj(payload.mu, mask2, idx2)
        total += term
    return total


def eval_vacuum_average(w_set: SpectralSet, oracle: WeightOracle,
                        params, c) -> Rat:
    """Vacuum expectation of a product of twisted creation operators."""
    twist = _twist_of(params)
    if twist is None:
        raise DomainError("the vacuum average requires twist parameters")
    if twist.beta1 == 0 or twist.beta2 == 0:
        raise DomainError("the vacuum average needs nonzero beta1 and beta2")
    c = Rat(c)
    p = len(w_set)
    values = w_set.values
    lam1 = [oracle.lambda1(x) for x in values]
    lam2 = [oracle.lambda2(x) for x in values]
    total = Rat(0)
    for mask1, mask2 in enumerate_splits(p, 2):
        l1 = bin(mask1).count("1")
        l2 = bin(mask2).count("1")
        term = rat_pow(-twist.beta2, -l2) * rat_pow(-twist.beta1, -l1)
        for i in bits_of(mask1):
            term *= lam2[i]
        for i in bits_of(mask2):
            term *= lam1[i]
        term *= set_product("f", mask_values(values, mask1),
                            mask_values(values, mask2), c)
        total += term
    return rat_pow(1 - twist.mu, p) * total
