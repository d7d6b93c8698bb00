"""Exact simulator of the retraction flow on the basic two-component model.

The model is Spec R[T1, T2]/(T1^N1 * T2^N2 - t): two components E1, E2 of
multiplicities N1, N2 meeting in a single stratum O, with dual complex a
1-simplex.  Writing c = gcd(N1, N2) and M_i = N_i / c, the flow moves a
point x = (x1, x2) along the one-parameter family

    T1 |-> x1 * V^{M2},    T2 |-> x2 * V^{-M1}

and evaluates a polynomial f at flow time s through the Taylor expansion of
the resulting one-variable Laurent polynomial around V = 1: after clearing
the V-denominator,

    value(f, s) = min_i ( v(c_i) + i * s )

over the nonzero Taylor coefficients c_i.  Flow time is parametrized
additively, s = -log of the classical disc radius, so s = +infinity is the
identity end (only c_0 = f(x1, x2) survives) and s = 0 is the retraction
end (the Gauss value of the expansion).  The reparametrization is strictly
monotone, so every order-theoretic statement transfers.

Two kinds of points are supported.  Rigid points have coordinates in the
base field subject to x1^N1 * x2^N2 = t with nonnegative valuations; their
expansion coefficients are concrete field elements and all cancellation is
exact.  Monomial points on the edge carry weights (a1, a2); their
coordinates satisfy no relation beyond x1^N1 * x2^N2 = t, so coefficients
live in a twisted monomial ring with that relation rewritten into a normal
form 0 <= p < N1.  Distinct normal-form monomials are independent, making
term valuations v_K(d) + p*a1 + q*a2 exact with no cross-term cancellation,
while coefficients inside one normal form cancel exactly; an expression that
is actually zero is therefore detected as zero rather than reported with a
finite valuation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .dualcomplex import ModelDescription, MonomialPointData
from .errors import ValidationError
from .field import INFINITY, BaseElement, uniformizer
from .monoval import MultivariatePoly


def _bezout(a: int, b: int) -> tuple[int, int]:
    """Coefficients (x, y) with a*x + b*y = gcd(a, b)."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_s, old_t


@dataclass(frozen=True)
class BasicModel:
    """The model T1^N1 * T2^N2 = t with its derived flow constants."""

    n1: int
    n2: int

    def __post_init__(self):
        for n in (self.n1, self.n2):
            if not isinstance(n, int) or n < 1:
                raise ValidationError("multiplicities must be positive integers")

    @property
    def c(self) -> int:
        return math.gcd(self.n1, self.n2)

    @property
    def m1(self) -> int:
        return self.n1 // self.c

    @property
    def m2(self) -> int:
        return self.n2 // self.c

    @property
    def bezout(self) -> tuple[int, int]:
        """(a1, a2) with a1*M1 + a2*M2 = 1."""
        a1, a2 = _bezout(self.m1, self.m2)
        assert a1 * self.m1 + a2 * self.m2 == 1
        return a1, a2

    def model_description(self) -> ModelDescription:
        """The two-component model: vertices E1, E2 and the edge stratum O."""
        return ModelDescription(
            [("E1", self.n1), ("E2", self.n2)],
            [("O", ("E1", "E2"), None)],
        )

    def rigid_point(self, x1: BaseElement, x2: BaseElement) -> RigidPoint:
        """Validated point with coordinates in the base field.

        The point must satisfy x1^N1 * x2^N2 = t exactly and have
        nonnegative coordinate valuations (it lies where both |T_i| <= 1).
        """
        problems = []
        if x1.valuation() < 0:
            problems.append("rigid point: x1 has negative valuation")
        if x2.valuation() < 0:
            problems.append("rigid point: x2 has negative valuation")
        if x1**self.n1 * x2**self.n2 != uniformizer():
            problems.append(
                f"rigid point: x1^{self.n1} * x2^{self.n2} must equal t"
            )
        if problems:
            raise ValidationError(problems)
        return RigidPoint(x1, x2)

    def monomial_point(self, a1, a2) -> MonomialPointData:
        """Monomial point on the edge stratum with weights (a1, a2)."""
        data = MonomialPointData("O", {"E1": a1, "E2": a2})
        self._edge_weights(data)
        return data

    def _edge_weights(self, data: MonomialPointData) -> tuple[Fraction, Fraction]:
        if data.stratum != "O" or set(data.alpha) != {"E1", "E2"}:
            raise ValidationError(
                "monomial data must live on the edge stratum O with weights"
                " for E1 and E2"
            )
        a1, a2 = data.alpha["E1"], data.alpha["E2"]
        if a1 * self.n1 + a2 * self.n2 != 1:
            raise ValidationError(
                f"weights must satisfy a1*{self.n1} + a2*{self.n2} = 1,"
                f" got {a1 * self.n1 + a2 * self.n2}"
            )
        return a1, a2


@dataclass(frozen=True)
class RigidPoint:
    """Coordinates of a rigid point; build through BasicModel.rigid_point."""

    x1: BaseElement
    x2: BaseElement


def _check_flow_time(s):
    if s == INFINITY:
        return INFINITY
    if isinstance(s, float):
        raise ValidationError("flow time must be an exact rational or INFINITY")
    s = Fraction(s)
    if s < 0:
        raise ValidationError("flow time must be nonnegative")
    return s


def _as_pair_poly(f: MultivariatePoly) -> MultivariatePoly:
    if f.arity > 2:
        raise ValidationError("flow evaluation needs a polynomial in T1, T2")
    return f.with_arity(2)


def _taylor_at_one(by_exp: Mapping[int, object], zero):
    """Taylor coefficients around V = 1 after clearing the V-denominator.

    Takes a Laurent polynomial sum a_k V^k with coefficients in any exact
    ring, multiplies by the minimal power of V making it a polynomial, and
    returns the coefficients c_i of (V - 1)^i via the binomial transform
    c_i = sum_k C(k, i) a_k.
    """
    if not by_exp:
        return {}
    shift = max(0, -min(by_exp))
    dense = {k + shift: v for k, v in by_exp.items()}
    top = max(dense)
    out = {}
    for i in range(top + 1):
        acc = zero
        for k, coeff in dense.items():
            if k >= i:
                acc = acc + coeff * math.comb(k, i)
        if acc:
            out[i] = acc
    return out


def _min_term_value(values: Mapping[int, object], s):
    """min_i (v_i + i*s), treating the i = 0 slope specially so s = inf works."""
    best = INFINITY
    for i, v in values.items():
        term = v if i == 0 else v + i * s
        if term < best:
            best = term
    return best


# -- rigid points -------------------------------------------------------------


def flow_expansion(bm: BasicModel, x: RigidPoint, f: MultivariatePoly):
    """Nonzero Taylor coefficients c_i of the flow of f through a rigid point."""
    f = _as_pair_poly(f)
    by_exp: dict[int, BaseElement] = {}
    for (i, j), coeff in f.terms.items():
        k = i * bm.m2 - j * bm.m1
        term = coeff * x.x1**i * x.x2**j
        acc = by_exp.get(k)
        acc = term if acc is None else acc + term
        if acc:
            by_exp[k] = acc
        else:
            by_exp.pop(k, None)
    return _taylor_at_one(by_exp, BaseElement(0))


def flow_value(bm: BasicModel, x: RigidPoint, s, f: MultivariatePoly):
    """Valuation of f along the flow of a rigid point at flow time s.

    Returns min_i (v(c_i) + i*s) over the expansion; at s = INFINITY only
    the constant coefficient c_0 = f(x1, x2) contributes.  INFINITY is
    returned exactly when the expansion vanishes identically.
    """
    s = _check_flow_time(s)
    expansion = flow_expansion(bm, x, f)
    return _min_term_value({i: c.valuation() for i, c in expansion.items()}, s)


def retract_point(bm: BasicModel, x: RigidPoint) -> MonomialPointData:
    """Monomial data of the retraction of a rigid point.

    The image is the monomial point on the edge with weights
    (v(x1), v(x2)); the normalization sum(alpha * N) = 1 holds automatically
    because x1^N1 * x2^N2 = t.
    """
    return bm.monomial_point(Fraction(x.x1.valuation()), Fraction(x.x2.valuation()))


# -- monomial points ----------------------------------------------------------


class TwistedElement:
    """Element of the monomial ring K[x1, x2] with x1^N1 * x2^N2 = t.

    Terms are stored by exponent pairs (p, q) in the normal form
    0 <= p < N1, obtained by absorbing powers of the relation into the
    base-field coefficient.  Distinct normal forms are linearly independent
    over the base field, so the valuation at edge weights (a1, a2) is the
    exact minimum of v_K(d) + p*a1 + q*a2 over the stored terms.
    """

    __slots__ = ("model", "terms")

    def __init__(self, model: BasicModel, terms: Mapping[tuple[int, int], BaseElement] = ()):
        clean: dict[tuple[int, int], BaseElement] = {}
        for (p, q), coeff in dict(terms).items():
            if not 0 <= p < model.n1:
                raise ValidationError(
                    f"exponent pair ({p}, {q}) is not in normal form"
                )
            if coeff:
                clean[(p, q)] = coeff
        object.__setattr__(self, "model", model)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("TwistedElement is immutable")

    @classmethod
    def monomial(cls, model: BasicModel, p: int, q: int, coeff) -> TwistedElement:
        """d * x1^p * x2^q, reduced to normal form.

        Exponents shift by multiples of (N1, N2) against powers of t:
        x1^p x2^q = t^k * x1^(p - k*N1) * x2^(q - k*N2) with k = floor(p/N1).
        """
        if not isinstance(coeff, BaseElement):
            coeff = BaseElement(coeff)
        k = p // model.n1
        if k:
            coeff = coeff * uniformizer() ** k
            p -= k * model.n1
            q -= k * model.n2
        return cls(model, {(p, q): coeff})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other):
        if not isinstance(other, TwistedElement):
            return NotImplemented
        terms = dict(self.terms)
        for pq, coeff in other.terms.items():
            acc = terms.get(pq)
            acc = coeff if acc is None else acc + coeff
            if acc:
                terms[pq] = acc
            else:
                terms.pop(pq, None)
        return TwistedElement(self.model, terms)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, BaseElement)):
            return TwistedElement(
                self.model, {pq: c * other for pq, c in self.terms.items()}
            )
        if not isinstance(other, TwistedElement):
            return NotImplemented
        out = TwistedElement(self.model, {})
        for (p1, q1), c1 in self.terms.items():
            for (p2, q2), c2 in other.terms.items():
                out = out + TwistedElement.monomial(
                    self.model, p1 + p2, q1 + q2, c1 * c2
                )
        return out

    __rmul__ = __mul__

    def valuation(self, a1: Fraction, a2: Fraction):
        """min(v_K(d) + p*a1 + q*a2) over the terms; INFINITY for zero."""
        best = INFINITY
        for (p, q), coeff in self.terms.items():
            v = coeff.valuation() + p * a1 + q * a2
            if v < best:
                best = v
        return best

    def __eq__(self, other):
        if not isinstance(other, TwistedElement):
            return NotImplemented
        return self.model == other.model and self.terms == other.terms

    def __repr__(self) -> str:
        if not self.terms:
            return "TwistedElement(0)"
        parts = [
            f"({coeff})*x1^{p}*x2^{q}" for (p, q), coeff in sorted(self.terms.items())
        ]
        return f"TwistedElement({' + '.join(parts)})"


def twisted_expansion(bm: BasicModel, f: MultivariatePoly):
    """Taylor coefficients of the flow of f with twisted-ring coefficients."""
    f = _as_pair_poly(f)
    by_exp: dict[int, TwistedElement] = {}
    for (i, j), coeff in f.terms.items():
        k = i * bm.m2 - j * bm.m1
        term = TwistedElement.monomial(bm, i, j, coeff)
        acc = by_exp.get(k)
        acc = term if acc is None else acc + term
        if acc:
            by_exp[k] = acc
        else:
            by_exp.pop(k, None)
    return _taylor_at_one(by_exp, TwistedElement(bm, {}))


def flow_value_monomial(bm: BasicModel, data: MonomialPointData, s, f: MultivariatePoly):
    """Valuation of f along the flow of a monomial (skeleton) point.

    Skeleton points are fixed by the flow: the value is independent of the
    flow time and agrees with the monomial valuation of f at the weights.
    That property is asserted by the test suite, not assumed here: the
    computation below goes through the twisted expansion.
    """
    s = _check_flow_time(s)
    a1, a2 = bm._edge_weights(data)
    expansion = twisted_expansion(bm, f)
    return _min_term_value(
        {i: c.valuation(a1, a2) for i, c in expansion.items()}, s
    )
