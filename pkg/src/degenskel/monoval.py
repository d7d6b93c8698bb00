"""Monomial (generalized Gauss) valuations on multivariate polynomials.

A weight tuple alpha = (alpha_1, ..., alpha_r) of nonnegative rationals
determines a valuation on the polynomial ring K[T_1, ..., T_r] over the base
field K = Q(t):

    v(f) = min over the terms d * T^beta of f of ( v_K(d) + alpha . beta )

with v(0) = +infinity.  When the weights come from a normal crossings model
(each T_i cutting out a component of multiplicity N_i), the normalization
sum(alpha_i * N_i) = 1 makes v extend the t-adic valuation of K; the tuple of
multiplicities can be attached to the weights to enforce that constraint.

The variables are treated as algebraically independent: v is evaluated on
the polynomial as presented.  Quotient-ring arithmetic, where products of
the T_i can collapse into the uniformizer, lives in the flow module.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import ValidationError
from .field import INFINITY, BaseElement


def _coerce_coeff(value) -> BaseElement:
    if isinstance(value, BaseElement):
        return value
    return BaseElement(value)


class MultivariatePoly:
    """Polynomial in T_1..T_r with coefficients in the base field.

    Stored sparsely as a map from exponent tuples (length r, nonnegative
    integers) to nonzero coefficients.  Immutable by convention.
    """

    __slots__ = ("arity", "terms")

    def __init__(self, arity: int, terms: Mapping[tuple[int, ...], object] = ()):
        if not isinstance(arity, int) or arity < 0:
            raise ValidationError("polynomial arity must be a nonnegative integer")
        clean: dict[tuple[int, ...], BaseElement] = {}
        for exps, coeff in dict(terms).items():
            exps = tuple(exps)
            if len(exps) != arity or any(
                not isinstance(e, int) or e < 0 for e in exps
            ):
                raise ValidationError(
                    f"exponent tuple {exps} is not a length-{arity} tuple of"
                    " nonnegative integers"
                )
            c = _coerce_coeff(coeff)
            if c:
                clean[exps] = c
        object.__setattr__(self, "arity", arity)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("MultivariatePoly is immutable")

    @classmethod
    def constant(cls, arity: int, value) -> MultivariatePoly:
        return cls(arity, {(0,) * arity: _coerce_coeff(value)})

    @classmethod
    def variable(cls, index: int, arity: int) -> MultivariatePoly:
        """The variable T_index (1-based, matching the text syntax T1..Tr)."""
        if not 1 <= index <= arity:
            raise ValidationError(f"variable T{index} out of range for arity {arity}")
        exps = tuple(1 if i == index - 1 else 0 for i in range(arity))
        return cls(arity, {exps: 1})

    @classmethod
    def monomial(cls, arity: int, exps: Sequence[int], coeff=1) -> MultivariatePoly:
        return cls(arity, {tuple(exps): coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def _check_arity(self, other: MultivariatePoly):
        if self.arity != other.arity:
            raise ValidationError(
                f"arity mismatch: {self.arity} versus {other.arity}"
            )

    def __add__(self, other):
        if not isinstance(other, MultivariatePoly):
            return NotImplemented
        self._check_arity(other)
        terms = dict(self.terms)
        for exps, c in other.terms.items():
            s = terms.get(exps)
            s = c if s is None else s + c
            if s:
                terms[exps] = s
            else:
                terms.pop(exps, None)
        return MultivariatePoly(self.arity, terms)

    def __neg__(self):
        return MultivariatePoly(self.arity, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, MultivariatePoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, BaseElement)):
            c = _coerce_coeff(other)
            return MultivariatePoly(
                self.arity, {e: v * c for e, v in self.terms.items()}
            )
        if not isinstance(other, MultivariatePoly):
            return NotImplemented
        self._check_arity(other)
        out: dict[tuple[int, ...], BaseElement] = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                s = out.get(e)
                p = ca * cb
                s = p if s is None else s + p
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return MultivariatePoly(self.arity, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValidationError("polynomial powers must be nonnegative integers")
        result = MultivariatePoly.constant(self.arity, 1)
        for _ in range(n):
            result = result * self
        return result

    def evaluate(self, values: Sequence[BaseElement]) -> BaseElement:
        """Substitute base-field values for the variables."""
        if len(values) != self.arity:
            raise ValidationError(
                f"arity mismatch: expected {self.arity} values, got {len(values)}"
            )
        total = BaseElement(0)
        for exps, coeff in self.terms.items():
            term = coeff
            for v, e in zip(values, exps):
                if e:
                    term = term * v**e
            total = total + term
        return total

    def with_arity(self, arity: int) -> MultivariatePoly:
        """Pad with unused trailing variables up to the requested arity."""
        if arity < self.arity:
            raise ValidationError(
                f"cannot shrink arity from {self.arity} to {arity}"
            )
        if arity == self.arity:
            return self
        pad = (0,) * (arity - self.arity)
        return MultivariatePoly(arity, {e + pad: c for e, c in self.terms.items()})

    def restrict(self, keep: Sequence[int]) -> MultivariatePoly:
        """Project onto the variables at the given (0-based) positions.

        The polynomial must not involve any dropped variable.
        """
        keep = tuple(keep)
        dropped = [i for i in range(self.arity) if i not in keep]
        terms = {}
        for exps, c in self.terms.items():
            bad = [i for i in dropped if exps[i] != 0]
            if bad:
                raise ValidationError(
                    f"polynomial involves dropped variable T{bad[0] + 1}"
                )
            terms[tuple(exps[i] for i in keep)] = c
        return MultivariatePoly(len(keep), terms)

    def __eq__(self, other):
        if not isinstance(other, MultivariatePoly):
            return NotImplemented
        return self.arity == other.arity and self.terms == other.terms

    def __repr__(self) -> str:
        if not self.terms:
            return "MultivariatePoly(0)"
        parts = []
        for exps in sorted(self.terms):
            mono = "*".join(
                f"T{i + 1}" if e == 1 else f"T{i + 1}^{e}"
                for i, e in enumerate(exps)
                if e
            )
            c = str(self.terms[exps])
            if "+" in c or "-" in c[1:]:
                c = f"({c})"
            parts.append(f"{c}*{mono}" if mono else c)
        return f"MultivariatePoly({' + '.join(parts)})"


def _as_fraction(value) -> Fraction:
    if isinstance(value, float):
        raise ValidationError("weights must be exact rationals, not floats")
    return Fraction(value)


@dataclass(frozen=True)
class MonomialWeights:
    """Weight tuple alpha, optionally tied to component multiplicities N.

    Invariants: every alpha_i is a nonnegative rational; when multiplicities
    are attached, sum(alpha_i * N_i) = 1 (the model-normalized case).
    """

    alpha: tuple[Fraction, ...]
    multiplicities: tuple[int, ...] | None = None

    def __post_init__(self):
        alpha = tuple(_as_fraction(a) for a in self.alpha)
        object.__setattr__(self, "alpha", alpha)
        if any(a < 0 for a in alpha):
            raise ValidationError("weights must be nonnegative")
        if self.multiplicities is not None:
            mult = tuple(self.multiplicities)
            object.__setattr__(self, "multiplicities", mult)
            if len(mult) != len(alpha):
                raise ValidationError("one multiplicity per weight is required")
            if any(not isinstance(n, int) or n < 1 for n in mult):
                raise ValidationError("multiplicities must be positive integers")
            total = sum(a * n for a, n in zip(alpha, mult))
            if total != 1:
                raise ValidationError(
                    f"normalized weights must satisfy sum(alpha*N) = 1, got {total}"
                )

    @property
    def arity(self) -> int:
        return len(self.alpha)

    @property
    def support(self) -> tuple[int, ...]:
        """0-based positions of the strictly positive weights."""
        return tuple(i for i, a in enumerate(self.alpha) if a > 0)

    def is_divisorial(self) -> bool:
        """Whether the weights define a divisorial valuation.

        That is the case exactly when every alpha_i is rational; the data
        model only represents rationals, so this is always true.  The method
        documents the representable subset rather than performing a check.
        """
        return True

    def restrict_to_support(self) -> MonomialWeights:
        """Drop the zero weights, lowering the arity.

        Evaluating any polynomial that does not involve the dropped
        variables is unchanged: the removed coordinates contribute
        alpha_i * beta_i = 0 to every term.
        """
        keep = self.support
        mult = self.multiplicities
        return MonomialWeights(
            tuple(self.alpha[i] for i in keep),
            None if mult is None else tuple(mult[i] for i in keep),
        )


def monomial_valuation(weights: MonomialWeights, f: MultivariatePoly):
    """Value of the monomial valuation at f: min(v_K(d) + alpha.beta).

    Returns a Fraction, or INFINITY exactly when f is the zero polynomial.
    """
    if weights.arity != f.arity:
        raise ValidationError(
            f"arity mismatch: weights have arity {weights.arity},"
            f" polynomial has arity {f.arity}"
        )
    best = INFINITY
    alpha = weights.alpha
    for exps, coeff in f.terms.items():
        v = coeff.valuation() + sum(a * e for a, e in zip(alpha, exps) if e)
        if v < best:
            best = v
    return best if best == INFINITY else Fraction(best)
