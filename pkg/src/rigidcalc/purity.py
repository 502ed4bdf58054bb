"""Weil-number checks for Frobenius characteristic polynomials.

A candidate is a monic polynomial Q over Q(zeta_N) together with a prime
power q and an integer weight w.  Purity of weight w demands that every root
alpha, under every complex embedding, satisfies |alpha|^2 = q^w.  Two checks
approximate this from both sides:

* the exact functional equation conj(Q)(X) = X^n Q(q^w / X) / Q(0),
  a necessary condition that costs no floating point at all;
* a numerical magnitude check on all roots under all embeddings, run at
  high precision with a certified error margin and automatic precision
  doubling (up to 4096 bits) when a root cannot be decided.

The overall verdict passes only when both agree.
"""
from __future__ import annotations

import enum
import math
import os
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .cyclotomic import CycNumber
from .errors import RootFindingFailure, ZeroConstantTerm

#: default working precision (bits) for the magnitude check
DEFAULT_PRECISION_BITS = 256
_PRECISION_CAP = 4096

#: environment variable overriding the working precision
PRECISION_ENV_VAR = "RIGIDCALC_PRECISION_BITS"


def working_precision() -> int:
    """Precision in bits for numeric purity work, honoring the env override."""
    raw = os.environ.get(PRECISION_ENV_VAR)
    if raw is None:
        return DEFAULT_PRECISION_BITS
    try:
        bits = int(raw)
    except ValueError as exc:
        raise ValueError(f"{PRECISION_ENV_VAR} must be an integer, got {raw!r}") from exc
    return max(64, bits)


def _is_prime_power(q: int) -> bool:
    if q < 2:
        return False
    p = None
    m = q
    for candidate in range(2, q + 1):
        if candidate * candidate > m:
            p = m
            break
        if m % candidate == 0:
            p = candidate
            break
    while m % p == 0:
        m //= p
    return m == 1


class WeilVerdict(enum.Enum):
    PASS = "Pass"
    FAIL_FUNCTIONAL_EQUATION = "FailFunctionalEquation"
    FAIL_MAGNITUDE = "FailMagnitude"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class WeilPolynomial:
    """Monic polynomial over Q(zeta_N) with residue size q and weight w."""

    coeffs: tuple[CycNumber, ...]  # constant term first
    q: int
    w: int

    def __init__(self, coeffs, q: int, w: int):
        values = tuple(CycNumber.coerce(c) for c in coeffs)
        if len(values) < 2:
            raise ValueError("a Weil polynomial must have degree >= 1")
        common = 1
        for v in values:
            common = math.lcm(common, v.order)
        values = tuple(v.lift(common) for v in values)
        if not values[-1].is_one():
            raise ValueError("Weil polynomial must be monic")
        if values[0].is_zero():
            raise ZeroConstantTerm("Q(0) = 0 is not allowed")
        if not _is_prime_power(q):
            raise ValueError(f"q must be a prime power >= 2, got {q}")
        object.__setattr__(self, "coeffs", values)
        object.__setattr__(self, "q", int(q))
        object.__setattr__(self, "w", int(w))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def order(self) -> int:
        return self.coeffs[0].order

    def __str__(self):
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c.is_zero():
                continue
            if k == 0:
                body = str(c)
            else:
                x = "X" if k == 1 else f"X^{k}"
                if c.is_one():
                    body = x
                elif c == -1:
                    body = f"-{x}"
                elif c.is_rational():
                    body = f"{c.as_rational()}{x}"
                else:
                    body = f"({c})*{x}"
            if terms and not body.startswith("-"):
                body = "+" + body
            terms.append(body)
        return "".join(terms) or "0"


def functional_equation_check(p: WeilPolynomial) -> bool:
    """Exact test of conj(Q)(X) = X^n Q(q^w / X) / Q(0)."""
    if p.coeffs[0].is_zero():  # unreachable through the constructor
        raise ZeroConstantTerm("Q(0) = 0 is not allowed")
    n = p.degree
    scale = Fraction(p.q) ** p.w
    c0 = p.coeffs[0]
    for k in range(n + 1):
        left = p.coeffs[k].conjugate() * c0
        right = p.coeffs[n - k] * (scale ** (n - k))
        if left != right:
            return False
    return True


def _poly_trim(coeffs: list[CycNumber]) -> list[CycNumber]:
    out = list(coeffs)
    while out and out[-1].is_zero():
        out.pop()
    return out


def _poly_derivative(coeffs: list[CycNumber]) -> list[CycNumber]:
    return [c * k for k, c in enumerate(coeffs)][1:]


def _poly_mod(num: list[CycNumber], den: list[CycNumber]) -> list[CycNumber]:
    num = list(num)
    lead = den[-1]
    while len(num) >= len(den):
        factor = num[-1] / lead
        shift = len(num) - len(den)
        for j, d in enumerate(den):
            num[shift + j] = num[shift + j] - factor * d
        num.pop()
        num = _poly_trim(num)
        if not num:
            break
    return num


def _poly_div_exact(num: list[CycNumber], den: list[CycNumber]) -> list[CycNumber]:
    num = list(num)
    lead = den[-1]
    out = [CycNumber.zero()] * (len(num) - len(den) + 1)
    for k in range(len(num) - len(den), -1, -1):
        factor = num[k + len(den) - 1] / lead
        out[k] = factor
        for j, d in enumerate(den):
            num[k + j] = num[k + j] - factor * d
    return out


def _squarefree_part(coeffs) -> tuple[CycNumber, ...]:
    """Monic polynomial with the same roots, all simple: f / gcd(f, f')."""
    f = _poly_trim(list(coeffs))
    a, b = f, _poly_trim(_poly_derivative(f))
    while b:
        a, b = b, _poly_mod(a, b)
    gcd = [c / a[-1] for c in a]
    if len(gcd) == 1:
        return tuple(f)
    return tuple(_poly_div_exact(f, gcd))


def _embedded_coeffs(coeffs, a: int, prec: int):
    # Leading coefficient first, as mpmath.polyroots expects.
    return [c.embed(a, prec=prec) for c in reversed(coeffs)]


def _decide_roots(squarefree, a: int, target_q: int, target_w: int, tolerance, prec: int):
    """Return True/False when every root is certified, else None."""
    n = len(squarefree) - 1
    with mpmath.workprec(prec):
        coeffs = _embedded_coeffs(squarefree, a, prec)
        try:
            roots = mpmath.polyroots(coeffs, maxsteps=200, extraprec=prec // 2)
        except mpmath.mp.NoConvergence:
            return None
        target = mpmath.mpf(target_q) ** target_w
        allowed = mpmath.mpf(tolerance) * target
        eps = mpmath.mpf(2) ** (4 - prec)
        verdict = True
        for root in roots:
            residual = abs(mpmath.polyval(coeffs, root))
            # The floating residual, plus a first-order bound on the
            # rounding error of the evaluation itself and of the embedded
            # coefficients.
            magnitude_sum = mpmath.mpf(0)
            for c in coeffs:
                magnitude_sum = magnitude_sum * abs(root) + abs(c)
            certified = residual + (2 * n) * eps * magnitude_sum
            # Every monic polynomial has a root within certified**(1/n) of
            # the evaluation point, so the true root is inside this margin.
            distance = certified ** (mpmath.mpf(1) / n)
            margin = distance * (2 * abs(root) + distance)
            value = abs(root) ** 2
            deviation = abs(value - target)
            if deviation > allowed + margin:
                verdict = False
            elif deviation > allowed - margin:
                return None  # undecided at this precision
        return verdict


def magnitude_check(p: WeilPolynomial, tolerance=1e-20) -> bool:
    """True iff | |alpha|^2 - q^w | <= tolerance * q^w for every root alpha
    of every complex embedding of Q, certified numerically.
    """
    if not tolerance > 0:
        raise ValueError("tolerance must be positive")
    squarefree = _squarefree_part(p.coeffs)
    n_field = p.order
    embeddings = [a for a in range(1, n_field + 1) if math.gcd(a, n_field) == 1]
    for a in embeddings:
        prec = min(working_precision(), _PRECISION_CAP)
        decided = None
        while prec <= _PRECISION_CAP:
            decided = _decide_roots(squarefree, a, p.q, p.w, tolerance, prec)
            if decided is not None:
                break
            prec *= 2
        if decided is None:
            raise RootFindingFailure(
                f"could not certify roots of {p} at embedding {a} within "
                f"{_PRECISION_CAP} bits"
            )
        if not decided:
            return False
    return True


def weil_check(p: WeilPolynomial, tolerance=1e-20) -> WeilVerdict:
    """Both checks in order; reports the first failing stage."""
    if not functional_equation_check(p):
        return WeilVerdict.FAIL_FUNCTIONAL_EQUATION
    if not magnitude_check(p, tolerance):
        return WeilVerdict.FAIL_MAGNITUDE
    return WeilVerdict.PASS


@dataclass(frozen=True)
class HodgeMultiset:
    """Multiset of Hodge numbers with an attached weight."""

    values: tuple[int, ...]
    w: int

    def __init__(self, values, w: int):
        values = tuple(sorted(int(v) for v in values))
        if not values:
            raise ValueError("a Hodge multiset must be nonempty")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "w", int(w))

    def __len__(self):
        return len(self.values)


def hodge_conjugate_dual(h: HodgeMultiset) -> HodgeMultiset:
    """{w - x : x in values}, with the same weight; an involution."""
    return HodgeMultiset([h.w - x for x in h.values], h.w)


def hodge_is_regular(h: HodgeMultiset) -> bool:
    """True iff every element has multiplicity 1."""
    return len(set(h.values)) == len(h.values)
