"""Weight functions of pluricanonical forms and the skeleta they cut out.

A pluricanonical form of level m is recorded on a model by the multiplicity
nu_i of each component in its divisor on the model, together with flags
marking the strata contained in the Zariski closure of the horizontal part
of its divisor.  The weight of the divisorial point of a component is
(nu + m)/N; on a face of the dual complex the weight function interpolates
affinely through beta |-> sum beta_j (nu_j + m)/N_j, except on flagged faces
where that affine value is only a strict lower bound for the true weight
(the exact value there would need a local equation the data does not carry).

A face is essential for the form when every one of its components attains
the minimal divisorial weight and the face is not flagged; the union of the
essential faces, always face-closed, is the Kontsevich-Soibelman skeleton of
the form.  The essential skeleton is the union of these over a supplied
family of forms; with finitely many forms it is a subcomplex of (possibly
equal to) the full essential skeleton, whose defining union runs over all
nonzero pluricanonical forms.

Connectivity and the closed-pseudo-manifold property are implemented as
checkable passes on computed subcomplexes, not as theorems.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .dualcomplex import (
    DualComplex,
    ModelDescription,
    SkeletonPoint,
    _check_keys,
    _resolve_zeros,
    build_complex,
    connected_components,
)
from .errors import ValidationError


@dataclass(frozen=True)
class PluricanonicalForm:
    """Level m, vertical multiplicities nu_i, and horizontal stratum flags."""

    m: int
    vertical: Mapping[str, int]
    horizontal: frozenset[str] = frozenset()

    def __post_init__(self):
        if not isinstance(self.m, int) or self.m < 1:
            raise ValidationError("pluricanonical level m must be a positive integer")
        vertical = {str(k): v for k, v in dict(self.vertical).items()}
        for cid, nu in vertical.items():
            if not isinstance(nu, int) or isinstance(nu, bool):
                raise ValidationError(
                    f"component {cid}: vertical multiplicity must be an integer"
                )
        object.__setattr__(self, "vertical", vertical)
        object.__setattr__(self, "horizontal", frozenset(self.horizontal))

    @classmethod
    def from_dict(cls, data) -> PluricanonicalForm:
        if not isinstance(data, dict) or "m" not in data or "vertical" not in data:
            raise ValidationError(
                "form must be a JSON object with 'm' and 'vertical' entries"
            )
        return cls(data["m"], data["vertical"], frozenset(data.get("horizontal", [])))

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "vertical": dict(sorted(self.vertical.items())),
            "horizontal": sorted(self.horizontal),
        }


def form_problems(model: ModelDescription, form: PluricanonicalForm) -> list[str]:
    """Every violation of the form invariants relative to the model."""
    problems = []
    for c in model.components:
        if c.id not in form.vertical:
            problems.append(f"component {c.id}: no vertical multiplicity")
    for cid in sorted(form.vertical):
        if cid not in {c.id for c in model.components}:
            problems.append(f"vertical multiplicity for unknown component {cid}")

    known = {s.id for s in model.strata}
    for sid in sorted(form.horizontal):
        if sid not in known:
            problems.append(f"horizontal flag on unknown stratum {sid}")
    flagged = form.horizontal & known
    for sid in sorted(flagged):
        if model.stratum(sid).dimension == 0:
            problems.append(
                f"stratum {sid}: vertex strata cannot carry a horizontal flag"
            )
    # downward closure: a stratum contained in a flagged one is flagged too
    cx = build_complex(model)
    for s in model.strata:
        if s.id in flagged:
            continue
        hit = sorted(cx.face_closure(s.id) & flagged)
        if hit:
            problems.append(
                f"stratum {s.id}: contains flagged stratum {hit[0]}"
                " but is not flagged itself"
            )
    return problems


def _require_valid(model: ModelDescription, form: PluricanonicalForm):
    problems = form_problems(model, form)
    if problems:
        raise ValidationError(problems)


def divisorial_weight(multiplicity: int, vertical_multiplicity: int, m: int) -> Fraction:
    """Weight (nu + m)/N of the divisorial point of a component."""
    if not isinstance(multiplicity, int) or multiplicity < 1:
        raise ValidationError("component multiplicity must be a positive integer")
    if not isinstance(m, int) or m < 1:
        raise ValidationError("pluricanonical level m must be a positive integer")
    return Fraction(vertical_multiplicity + m, multiplicity)


def global_weight(model: ModelDescription, form: PluricanonicalForm) -> Fraction:
    """Minimal divisorial weight over all components of the model."""
    _require_valid(model, form)
    return min(
        divisorial_weight(c.multiplicity, form.vertical[c.id], form.m)
        for c in model.components
    )


@dataclass(frozen=True)
class WeightValue:
    """Weight at a skeleton point.

    When the face the point lands on is horizontal-flagged, the affine value
    is only a strict lower bound for the true weight on the face interior,
    and lower_bound_only is set.
    """

    value: Fraction
    lower_bound_only: bool
    stratum: str


def weight_at(
    model: ModelDescription, form: PluricanonicalForm, point: SkeletonPoint
) -> WeightValue:
    """Weight of the form at a skeleton point.

    Zero coordinates are first resolved through the face map, then the
    affine interpolation sum(beta_j * (nu_j + m)/N_j) is evaluated on the
    resulting face.
    """
    _require_valid(model, form)
    _check_keys(model, point.stratum, point.barycentric)
    s, beta = _resolve_zeros(model, point.stratum, point.barycentric)
    value = sum(
        beta[j] * divisorial_weight(model.multiplicity(j), form.vertical[j], form.m)
        for j in s.components
    )
    return WeightValue(Fraction(value), s.id in form.horizontal, s.id)


class Subcomplex:
    """A face-closed set of strata of a dual complex."""

    def __init__(self, complex: DualComplex, strata: Iterable[str]):
        ids = frozenset(strata)
        problems = []
        for sid in sorted(ids):
            if sid not in complex.model._strata:
                problems.append(f"unknown stratum {sid}")
                continue
            missing = sorted(complex.face_closure(sid) - ids)
            if missing:
                problems.append(
                    f"stratum {sid}: face {missing[0]} is missing from the subcomplex"
                )
        if problems:
            raise ValidationError(problems)
        self.complex = complex
        self.strata = ids

    def is_empty(self) -> bool:
        return not self.strata

    @property
    def dimension(self) -> int:
        if not self.strata:
            return -1
        return max(self.complex.dimension(sid) for sid in self.strata)

    def __eq__(self, other):
        if not isinstance(other, Subcomplex):
            return NotImplemented
        return self.complex == other.complex and self.strata == other.strata

    def __repr__(self) -> str:
        return f"Subcomplex({sorted(self.strata)})"


def ks_skeleton(model: ModelDescription, form: PluricanonicalForm) -> Subcomplex:
    """Union of the essential faces of the form: the Kontsevich-Soibelman skeleton.

    A stratum qualifies when (nu_j + m)/N_j attains the global weight for
    every component j through it and the stratum is not horizontal-flagged.
    The result is face-closed by construction of the criterion; this is
    asserted, not re-derived.
    """
    _require_valid(model, form)
    minimal = global_weight(model, form)
    chosen = set()
    for s in model.strata:
        if s.id in form.horizontal:
            continue
        if all(
            divisorial_weight(model.multiplicity(j), form.vertical[j], form.m)
            == minimal
            for j in s.components
        ):
            chosen.add(s.id)
    cx = build_complex(model)
    for sid in chosen:
        assert cx.face_closure(sid) <= chosen, "essential faces must be face-closed"
    return Subcomplex(cx, chosen)


def essential_skeleton(
    model: ModelDescription, forms: Iterable[PluricanonicalForm]
) -> Subcomplex:
    """Union of the Kontsevich-Soibelman skeleta of the supplied forms.

    The defining union runs over all nonzero pluricanonical forms; with a
    finite family the result is a subcomplex of (possibly equal to) the full
    essential skeleton.  Whether a family generates the whole skeleton is
    not decidable from this data.
    """
    forms = list(forms)
    if not forms:
        raise ValueError("at least one pluricanonical form is required")
    strata: set[str] = set()
    cx = None
    for form in forms:
        sub = ks_skeleton(model, form)
        strata |= sub.strata
        cx = sub.complex
    return Subcomplex(cx, strata)


def is_connected(sub: Subcomplex) -> bool:
    """Whether the subcomplex has at most one connected component.

    The empty subcomplex counts as (vacuously) connected; callers that care
    should treat that case as degenerate.
    """
    return len(connected_components(sub)) <= 1


def is_closed_pseudomanifold(sub: Subcomplex) -> bool:
    """Closed-pseudo-manifold test for a nonempty subcomplex.

    True when the subcomplex is pure of its top dimension d, every
    (d-1)-face lies in exactly two d-faces, and the d-faces are connected
    through (d-1)-faces.  In dimension zero this reduces to being a single
    vertex.
    """
    if sub.is_empty():
        raise ValidationError("pseudo-manifold test requires a nonempty subcomplex")
    cx = sub.complex
    d = sub.dimension

    maximal = [
        sid
        for sid in sub.strata
        if not any(
            sid in cx.face_closure(other) and other != sid for other in sub.strata
        )
    ]
    if any(cx.dimension(sid) != d for sid in maximal):
        return False

    top = [sid for sid in sub.strata if cx.dimension(sid) == d]
    if d == 0:
        return len(top) == 1

    ridge_count: dict[str, list[str]] = {}
    for sid in top:
        for facet in cx.direct_faces(sid):
            ridge_count.setdefault(facet, []).append(sid)
    ridges = [sid for sid in sub.strata if cx.dimension(sid) == d - 1]
    if any(len(ridge_count.get(r, [])) != 2 for r in ridges):
        return False

    parent = {sid: sid for sid in top}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for pair in ridge_count.values():
        a, b = pair
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    return len({find(sid) for sid in top}) == 1
