"""Exact rational scalars, the g/f/h kernels, and generic parameter sampling.

Everything downstream works over the rational field: every identity in this
package is an identity of rational functions, so exact equality at generic
rational sample points is the verification contract. Floating point is never
used.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence, Union

try:
    from gmpy2 import mpq as Rat
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    from fractions import Fraction as Rat

from .errors import DomainError, ExhaustionError, PoleError

RatLike = Union[int, str, "Rat"]

ZERO = Rat(0)
ONE = Rat(1)


def rat(value: RatLike, den: int | None = None) -> Rat:
    """Coerce ints, 'p/q' strings, Fractions, or (p, q) pairs to an exact rational."""
    if den is not None:
        return Rat(value, den)
    return Rat(value)


def rat_str(value) -> str:
    """Serialize a rational as 'p/q', omitting '/q' when the denominator is 1."""
    value = Rat(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


# ---------------------------------------------------------------------------
# Rational kernels
# ---------------------------------------------------------------------------

def kernel_g(u, v, c) -> Rat:
    """c / (u - v); raises PoleError when u = v."""
    d = Rat(u) - Rat(v)
    if d == 0:
        raise PoleError("g", u, v)
    return Rat(c) / d


def kernel_f(u, v, c) -> Rat:
    """(u - v + c) / (u - v); raises PoleError when u = v."""
    d = Rat(u) - Rat(v)
    if d == 0:
        raise PoleError("f", u, v)
    return (d + Rat(c)) / d


def kernel_h(u, v, c) -> Rat:
    """(u - v + c) / c; total (no pole in u, v)."""
    return (Rat(u) - Rat(v) + Rat(c)) / Rat(c)


_KERNELS: dict[str, Callable] = {"g": kernel_g, "f": kernel_f, "h": kernel_h}


# ---------------------------------------------------------------------------
# Spectral sets and product conventions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SpectralSet:
    """Ordered finite set of rational spectral parameters.

    Element order matters only for indexing; every set-level product computed
    from a SpectralSet is invariant under permutations of the elements.
    """

    values: tuple = ()
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(Rat(v) for v in self.values))

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def without(self, index: int) -> "SpectralSet":
        """Complement of the element at ``index`` within this set."""
        vals = self.values[:index] + self.values[index + 1:]
        return SpectralSet(vals, self.label)

    def shifted(self, delta) -> "SpectralSet":
        return SpectralSet(tuple(v + Rat(delta) for v in self.values), self.label)

    def negated(self) -> "SpectralSet":
        return SpectralSet(tuple(-v for v in self.values), self.label)

    def union(self, other: "SpectralSet", label: str = "") -> "SpectralSet":
        return SpectralSet(self.values + other.values, label or self.label)

    def subset(self, indices: Iterable[int], label: str = "") -> "SpectralSet":
        return SpectralSet(tuple(self.values[i] for i in indices), label or self.label)

    @classmethod
    def generic(cls, values, c, context=(), label: str = "") -> "SpectralSet":
        """Construct with the genericity guarantee against a context.

        Raises DomainError if any two parameters across the new set and the
        context differ by 0, +c, or -c.
        """
        out = cls(tuple(values), label)
        if not is_generic(c, out, *(context if isinstance(context, (tuple, list))
                                    else (context,))):
            raise DomainError(
                f"values {out.values} are not generic against the context")
        return out


def _as_values(side) -> tuple:
    if side is None:
        return ()
    if isinstance(side, SpectralSet):
        return side.values
    if isinstance(side, (tuple, list)):
        return tuple(Rat(v) for v in side)
    return (Rat(side),)


def set_product(kind: str, left, right, c) -> Rat:
    """Product of a rational kernel over all pairs drawn from two sides.

    Either side may be a scalar, a SpectralSet, a tuple, or None/empty. The
    product over an empty side is 1 (so a double product with one empty set is
    1). A PoleError raised by the kernel identifies the offending pair.

    Kinds 'lambda1' and 'lambda2' evaluate a vacuum-weight product over `left`
    (`right` must be empty); `c` then carries the weight oracle instead of the
    kernel constant. Products of operator entries over a set live with the
    chain module (apply_entry_product), which extends the same convention.
    """
    if kind in ("lambda1", "lambda2"):
        if _as_values(right):
            raise DomainError("weight products take a single set")
        return prod_over(getattr(c, kind), left)
    fn = _KERNELS[kind]
    out = ONE
    for a in _as_values(left):
        for b in _as_values(right):
            out *= fn(a, b, c)
    return out


def prod_over(fn: Callable, values) -> Rat:
    """Product of a one-argument function over a set; empty set gives 1."""
    out = ONE
    for v in _as_values(values):
        out *= fn(v)
    return out


# ---------------------------------------------------------------------------
# Twist parameters
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TwistData:
    """The three scalars every twisted formula actually consumes.

    Use ModelParams for a consistent parametrization; TwistData also allows
    formula-level evaluation at points that no ModelParams can reach (for
    example mu = 1 with both betas nonzero).
    """

    beta1: Rat
    beta2: Rat
    mu: Rat

    def __post_init__(self):
        object.__setattr__(self, "beta1", Rat(self.beta1))
        object.__setattr__(self, "beta2", Rat(self.beta2))
        object.__setattr__(self, "mu", Rat(self.mu))

    def swapped(self) -> "TwistData":
        return TwistData(self.beta2, self.beta1, self.mu)


@dataclass(frozen=True)
class ModelParams:
    """Twist data (c, rho1, rho2, kappa_plus, kappa_minus) with derived scalars.

    beta1, beta2, mu are always recomputed from the stored fields, never
    cached, so they cannot drift out of sync.
    """

    c: Rat
    rho1: Rat = ZERO
    rho2: Rat = ZERO
    kappa_plus: Rat = ONE
    kappa_minus: Rat = ONE

    def __post_init__(self):
        for name in ("c", "rho1", "rho2", "kappa_plus", "kappa_minus"):
            object.__setattr__(self, name, Rat(getattr(self, name)))
        if self.c == 0:
            raise DomainError("c must be nonzero")
        if self.kappa_plus == 0 or self.kappa_minus == 0:
            raise DomainError("kappa_plus and kappa_minus must be nonzero")
        if self.rho1 * self.rho2 == self.kappa_plus * self.kappa_minus:
            raise DomainError("rho1*rho2 = kappa_plus*kappa_minus makes mu singular")

    @property
    def beta1(self) -> Rat:
        return self.rho1 / self.kappa_plus

    @property
    def beta2(self) -> Rat:
        return self.rho2 / self.kappa_plus

    @property
    def mu(self) -> Rat:
        return 1 / (1 - self.rho1 * self.rho2 / (self.kappa_plus * self.kappa_minus))

    def twist(self) -> TwistData:
        return TwistData(self.beta1, self.beta2, self.mu)

    def swapped(self) -> "ModelParams":
        """Exchange rho1 and rho2 (hence beta1 and beta2); mu is unchanged."""
        return ModelParams(self.c, self.rho2, self.rho1,
                           self.kappa_plus, self.kappa_minus)


# ---------------------------------------------------------------------------
# Genericity and sampling
# ---------------------------------------------------------------------------

def _flatten_context(context) -> list:
    out = []
    if context is None:
        return out
    for item in (context if isinstance(context, (tuple, list)) else [context]):
        out.extend(_as_values(item))
    return out


def is_generic(c, *sets) -> bool:
    """True when no two parameters across all sets differ by 0, +c, or -c."""
    vals = []
    for s in sets:
        vals.extend(_as_values(s))
    c = Rat(c)
    bad = {ZERO, c, -c}
    for i in range(len(vals)):
        for j in range(i + 1, len(vals)):
            if vals[i] - vals[j] in bad:
                return False
    return True


def with_shifts(c, *sets) -> tuple:
    """Context enlarged with +c and -c copies of every set.

    Formulas that feed shifted sets into the kernels enlarge the genericity
    context this way, so that a 'difference not in {0, +-c}' scan against the
    enlarged context also excludes differences of +-2c between originals.
    """
    c = Rat(c)
    out = []
    for s in sets:
        vals = _as_values(s)
        out.append(vals)
        out.append(tuple(v + c for v in vals))
        out.append(tuple(v - c for v in vals))
    return tuple(out)


_RETRY_BUDGET = 2000


def sample_generic(count: int, context=None, seed: int = 0,
                   bound: int = 50, c=1, label: str = "") -> SpectralSet:
    """Draw `count` rationals, generic against `context` and each other.

    Numerators and denominators are bounded by `bound`; the draw is
    deterministic for a fixed seed. Raises ExhaustionError if the genericity
    requirement cannot be met within a fixed retry budget.
    """
    if bound < 1:
        raise DomainError("bound must be >= 1")
    c = Rat(c)
    rng = random.Random(seed)
    ctx = _flatten_context(context)
    bad = {ZERO, c, -c}
    picked: list = []
    attempts = 0
    while len(picked) < count:
        if attempts >= _RETRY_BUDGET:
            raise ExhaustionError(
                f"could not sample {count} generic rationals within "
                f"{_RETRY_BUDGET} attempts (bound={bound})")
        attempts += 1
        cand = Rat(rng.randint(-bound, bound), rng.randint(1, bound))
        if all(cand - other not in bad for other in ctx + picked):
            picked.append(cand)
    return SpectralSet(tuple(picked), label)


def sample_nonzero(seed: int, bound: int = 50, exclude: Sequence = ()) -> Rat:
    """One nonzero bounded rational avoiding the `exclude` values; deterministic."""
    rng = random.Random(seed)
    banned = {Rat(x) for x in exclude} | {ZERO}
    for _ in range(_RETRY_BUDGET):
        cand = Rat(rng.randint(-bound, bound), rng.randint(1, bound))
        if cand not in banned:
            return cand
    raise ExhaustionError("could not sample a nonzero rational")
