"""Combinatorial sncd models and their dual intersection complexes.

A model is described purely combinatorially: a set of components E_i with
multiplicities N_i, and a set of strata.  A stratum stands for a connected
component of an intersection E_J = cap_{j in J} E_j and is recorded as an id,
the component set J, and a face map sending each j in J to the stratum over
J - {j} whose closure contains it.  The dual complex has one simplex of
dimension |J| - 1 per stratum; several strata may share the same component
set (parallel edges and the like), so the complex is a finite simplicial set
rather than a strict simplicial complex.

Rational points of the complex are identified with monomial-valuation data:
a point with barycentric coordinates beta on the face of a stratum with
multiplicities N corresponds to the monomial valuation with weights
alpha_j = beta_j / N_j at that stratum, and conversely beta_j = alpha_j * N_j.
Zero coordinates are resolved through the face map before converting, so
boundary points land on the correct smaller face.  The combinatorial
retraction sends extracted (stratum, alpha) data to the skeleton point with
the same weights.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import ValidationError


@dataclass(frozen=True)
class Component:
    id: str
    multiplicity: int


@dataclass(frozen=True)
class Stratum:
    id: str
    components: frozenset[str]
    faces: Mapping[str, str] = field(default_factory=dict)

    @property
    def dimension(self) -> int:
        return len(self.components) - 1


def _normalize_components(components) -> list[Component]:
    out = []
    for item in components:
        if isinstance(item, Component):
            out.append(item)
        else:
            cid, mult = item
            out.append(Component(str(cid), mult))
    return out


def _normalize_strata(strata) -> list[Stratum]:
    out = []
    for item in strata:
        if isinstance(item, Stratum):
            out.append(item)
        else:
            sid, comps, faces = item
            out.append(Stratum(str(sid), frozenset(comps), dict(faces or {})))
    return out


def _synthesize(components: list[Component], strata: list[Stratum]) -> list[Stratum]:
    """Fill in vertex strata and unambiguous face entries.

    Components without a declared vertex stratum get one whose id is the
    component id.  A missing face entry is filled exactly when a unique
    stratum over the reduced component set exists; anything else is left for
    validation to report.
    """
    stratum_ids = {s.id for s in strata}
    covered = {next(iter(s.components)) for s in strata if len(s.components) == 1}
    full = list(strata)
    for comp in components:
        if comp.id not in covered and comp.id not in stratum_ids:
            full.append(Stratum(comp.id, frozenset([comp.id]), {}))
            stratum_ids.add(comp.id)

    by_components: dict[frozenset[str], list[str]] = {}
    for s in full:
        by_components.setdefault(s.components, []).append(s.id)

    completed = []
    for s in full:
        if len(s.components) < 2:
            completed.append(s)
            continue
        faces = dict(s.faces)
        for j in s.components:
            if j in faces:
                continue
            candidates = by_components.get(s.components - {j}, [])
            if len(candidates) == 1:
                faces[j] = candidates[0]
        completed.append(Stratum(s.id, s.components, faces))
    return completed


def _model_problems(components: list[Component], strata: list[Stratum]) -> list[str]:
    problems = []

    comp_ids = set()
    for c in components:
        if c.id in comp_ids:
            problems.append(f"component {c.id}: duplicate component id")
        comp_ids.add(c.id)
        if not isinstance(c.multiplicity, int) or c.multiplicity < 1:
            problems.append(
                f"component {c.id}: multiplicity must be a positive integer"
            )

    by_id: dict[str, Stratum] = {}
    for s in strata:
        if s.id in by_id:
            problems.append(f"stratum {s.id}: duplicate stratum id")
        by_id[s.id] = s
        if not s.components:
            problems.append(f"stratum {s.id}: empty component set")
        for c in s.components:
            if c not in comp_ids:
                problems.append(f"stratum {s.id}: unknown component {c}")

    vertex_of: dict[str, list[str]] = {}
    for s in strata:
        if len(s.components) == 1:
            vertex_of.setdefault(next(iter(s.components)), []).append(s.id)
    for cid in sorted(comp_ids):
        hits = vertex_of.get(cid, [])
        if not hits:
            problems.append(f"component {cid}: no vertex stratum")
        elif len(hits) > 1:
            problems.append(
                f"component {cid}: multiple vertex strata ({', '.join(sorted(hits))})"
            )

    # face-map structure
    for s in strata:
        if len(s.components) == 1:
            if s.faces:
                problems.append(
                    f"stratum {s.id}: vertex stratum cannot have face entries"
                )
            continue
        for j in sorted(s.components):
            if j not in s.faces:
                problems.append(
                    f"stratum {s.id}: missing face entry for {j}"
                    " (no unique stratum over the reduced component set)"
                )
        for j, target in sorted(s.faces.items()):
            if j not in s.components:
                problems.append(
                    f"stratum {s.id}: face entry for {j},"
                    " which is not a component of the stratum"
                )
                continue
            parent = by_id.get(target)
            if parent is None:
                problems.append(
                    f"stratum {s.id}: face for {j} targets unknown stratum {target}"
                )
            elif parent.components != s.components - {j}:
                expect = ",".join(sorted(s.components - {j}))
                got = ",".join(sorted(parent.components))
                problems.append(
                    f"stratum {s.id}: face for {j} must lie over {{{expect}}},"
                    f" but {target} lies over {{{got}}}"
                )

    # simplicial compatibility: removing j then k agrees with k then j
    def _face(stratum: Stratum, j: str) -> Stratum | None:
        target = stratum.faces.get(j)
        parent = by_id.get(target) if target is not None else None
        if parent is None or parent.components != stratum.components - {j}:
            return None
        return parent

    for s in strata:
        if len(s.components) < 3:
            continue
        comps = sorted(s.components)
        for a_index, a in enumerate(comps):
            for b in comps[a_index + 1 :]:
                via_a = _face(s, a)
                via_b = _face(s, b)
                if via_a is None or via_b is None:
                    continue
                ab = _face(via_a, b)
                ba = _face(via_b, a)
                if ab is None or ba is None:
                    continue
                if ab.id != ba.id:
                    problems.append(
                        f"stratum {s.id}: incompatible face maps:"
                        f" removing {a} then {b} gives {ab.id},"
                        f" removing {b} then {a} gives {ba.id}"
                    )
    return problems


class ModelDescription:
    """Validated combinatorial description of an sncd model.

    Vertex strata and unambiguous face entries may be omitted from the
    input; they are synthesized before validation (a synthesized vertex
    stratum reuses the component id).  Construction raises ValidationError
    listing every violation when the data is inconsistent.
    """

    def __init__(self, components: Iterable, strata: Iterable = ()):
        comps = _normalize_components(components)
        full = _synthesize(comps, _normalize_strata(strata))
        problems = _model_problems(comps, full)
        if problems:
            raise ValidationError(problems)
        self.components = tuple(sorted(comps, key=lambda c: c.id))
        self.strata = tuple(sorted(full, key=lambda s: s.id))
        self._components = {c.id: c for c in self.components}
        self._strata = {s.id: s for s in self.strata}
        self._vertex_of = {
            next(iter(s.components)): s.id
            for s in self.strata
            if len(s.components) == 1
        }

    def component(self, cid: str) -> Component:
        try:
            return self._components[cid]
        except KeyError:
            raise ValidationError(f"unknown component {cid}") from None

    def stratum(self, sid: str) -> Stratum:
        try:
            return self._strata[sid]
        except KeyError:
            raise ValidationError(f"unknown stratum {sid}") from None

    def multiplicity(self, cid: str) -> int:
        return self.component(cid).multiplicity

    def vertex_stratum(self, cid: str) -> str:
        """Id of the unique vertex stratum of a component."""
        self.component(cid)
        return self._vertex_of[cid]

    def __eq__(self, other):
        if not isinstance(other, ModelDescription):
            return NotImplemented
        return self.components == other.components and self.strata == other.strata

    def __repr__(self) -> str:
        return (
            f"ModelDescription({len(self.components)} components,"
            f" {len(self.strata)} strata)"
        )

    # -- JSON schema ----------------------------------------------------------

    @classmethod
    def from_dict(cls, data) -> ModelDescription:
        problems = []
        if not isinstance(data, dict):
            raise ValidationError("model must be a JSON object")
        comps = []
        for entry in data.get("components", []):
            if not isinstance(entry, dict) or "id" not in entry:
                problems.append(f"malformed component entry {entry!r}")
                continue
            comps.append((entry["id"], entry.get("multiplicity", 1)))
        strata = []
        for entry in data.get("strata", []):
            if (
                not isinstance(entry, dict)
                or "id" not in entry
                or "components" not in entry
            ):
                problems.append(f"malformed stratum entry {entry!r}")
                continue
            strata.append((entry["id"], entry["components"], entry.get("faces")))
        if problems:
            raise ValidationError(problems)
        return cls(comps, strata)

    def to_dict(self) -> dict:
        return {
            "components": [
                {"id": c.id, "multiplicity": c.multiplicity} for c in self.components
            ],
            "strata": [
                {"id": s.id, "components": sorted(s.components)}
                if len(s.components) == 1
                else {
                    "id": s.id,
                    "components": sorted(s.components),
                    "faces": dict(sorted(s.faces.items())),
                }
                for s in self.strata
            ],
        }


class DualComplex:
    """The dual intersection complex of a model, with face-closure tables."""

    def __init__(self, model: ModelDescription):
        self.model = model
        closure: dict[str, frozenset[str]] = {}

        def closure_of(sid: str) -> frozenset[str]:
            cached = closure.get(sid)
            if cached is not None:
                return cached
            s = model.stratum(sid)
            acc = {sid}
            for parent in s.faces.values():
                acc.update(closure_of(parent))
            closure[sid] = frozenset(acc)
            return closure[sid]

        for s in model.strata:
            closure_of(s.id)
        self._closure = closure

    def dimension(self, sid: str) -> int:
        return self.model.stratum(sid).dimension

    @property
    def top_dimension(self) -> int:
        return max(s.dimension for s in self.model.strata)

    def face_closure(self, sid: str) -> frozenset[str]:
        """The stratum together with all its iterated faces."""
        return self._closure[sid]

    def direct_faces(self, sid: str) -> tuple[str, ...]:
        s = self.model.stratum(sid)
        return tuple(s.faces[j] for j in sorted(s.components) if j in s.faces)

    def strata_of_dimension(self, d: int) -> list[str]:
        return [s.id for s in self.model.strata if s.dimension == d]

    def vertices(self) -> list[str]:
        return self.strata_of_dimension(0)

    def counts(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for s in self.model.strata:
            out[s.dimension] = out.get(s.dimension, 0) + 1
        return out

    def __eq__(self, other):
        if not isinstance(other, DualComplex):
            return NotImplemented
        return self.model == other.model

    def to_dot(self) -> str:
        """Graphviz rendering of the 1-skeleton; higher faces as comments."""
        lines = ["graph dual_complex {"]
        for c in self.model.components:
            vid = self.model.vertex_stratum(c.id)
            lines.append(f'  "{vid}" [label="{c.id} (N={c.multiplicity})"];')
        for s in self.model.strata:
            if s.dimension == 1:
                a, b = sorted(s.components)
                va = self.model.vertex_stratum(a)
                vb = self.model.vertex_stratum(b)
                lines.append(f'  "{va}" -- "{vb}" [label="{s.id}"];')
        for s in self.model.strata:
            if s.dimension >= 2:
                comps = ", ".join(sorted(s.components))
                lines.append(f"  // {s.dimension}-face {s.id}: {comps}")
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_complex(model: ModelDescription) -> DualComplex:
    """One simplex of dimension |J| - 1 per stratum, faces from the face map.

    Models are immutable once validated, so the complex is memoized on the
    model.
    """
    cached = getattr(model, "_dual_complex", None)
    if cached is None:
        cached = DualComplex(model)
        model._dual_complex = cached
    return cached


def connected_components(cx, strata: Iterable[str] | None = None) -> list[frozenset[str]]:
    """Partition of a face-closed set of strata into connected pieces.

    Accepts either a DualComplex (optionally restricted to a set of strata)
    or any object exposing .complex and .strata, such as a Subcomplex.
    Connectivity is generated by direct face incidence, which for
    face-closed sets agrees with connectivity of the 1-skeleton.
    """
    if strata is None and hasattr(cx, "complex") and hasattr(cx, "strata"):
        strata = cx.strata
        cx = cx.complex
    ids = set(cx.model._strata) if strata is None else set(strata)
    for sid in ids:
        cx.model.stratum(sid)

    parent = {sid: sid for sid in ids}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for sid in ids:
        for f in cx.direct_faces(sid):
            if f in ids:
                ra, rb = find(sid), find(f)
                if ra != rb:
                    parent[ra] = rb

    groups: dict[str, set[str]] = {}
    for sid in ids:
        groups.setdefault(find(sid), set()).add(sid)
    return sorted((frozenset(g) for g in groups.values()), key=min)


# -- skeleton points and monomial data ---------------------------------------


def _as_fraction_map(values: Mapping) -> dict[str, Fraction]:
    out = {}
    for key, value in values.items():
        if isinstance(value, float):
            raise ValidationError("coordinates must be exact rationals, not floats")
        out[str(key)] = Fraction(value)
    return out


@dataclass(frozen=True)
class SkeletonPoint:
    """A face of the dual complex plus rational barycentric coordinates."""

    stratum: str
    barycentric: Mapping[str, Fraction]

    def __post_init__(self):
        coords = _as_fraction_map(self.barycentric)
        object.__setattr__(self, "barycentric", coords)
        if any(b < 0 for b in coords.values()):
            raise ValidationError("barycentric coordinates must be nonnegative")
        total = sum(coords.values())
        if total != 1:
            raise ValidationError(
                f"barycentric coordinates must sum to 1, got {total}"
            )


@dataclass(frozen=True)
class MonomialPointData:
    """A stratum plus the weights alpha of a monomial valuation at it."""

    stratum: str
    alpha: Mapping[str, Fraction]

    def __post_init__(self):
        alpha = _as_fraction_map(self.alpha)
        object.__setattr__(self, "alpha", alpha)
        if any(a < 0 for a in alpha.values()):
            raise ValidationError("weights must be nonnegative")


def _check_keys(model: ModelDescription, stratum_id: str, coords: Mapping[str, Fraction]):
    s = model.stratum(stratum_id)
    if set(coords) != set(s.components):
        expect = ",".join(sorted(s.components))
        got = ",".join(sorted(coords))
        raise ValidationError(
            f"stratum {stratum_id}: coordinates must cover exactly"
            f" {{{expect}}}, got {{{got}}}"
        )
    return s


def _resolve_zeros(model: ModelDescription, stratum_id: str, coords):
    """Walk the face map along zero coordinates; order does not matter."""
    s = model.stratum(stratum_id)
    for j in sorted(coords):
        if coords[j] == 0:
            s = model.stratum(s.faces[j])
    return s, {j: coords[j] for j in s.components}


def barycentric_to_monomial(
    model: ModelDescription, point: SkeletonPoint
) -> MonomialPointData:
    """Coordinates of a skeleton point as monomial-valuation data.

    Interior points stay on their stratum with alpha_j = beta_j / N_j; zero
    coordinates first push the point to the face the boundary rule selects.
    A vertex maps to the divisorial datum alpha = 1/N.
    """
    _check_keys(model, point.stratum, point.barycentric)
    s, beta = _resolve_zeros(model, point.stratum, point.barycentric)
    alpha = {j: beta[j] / model.multiplicity(j) for j in s.components}
    return MonomialPointData(s.id, alpha)


def monomial_to_barycentric(
    model: ModelDescription, data: MonomialPointData
) -> SkeletonPoint:
    """Inverse coordinate map: beta_j = alpha_j * N_j, zeros stripped first."""
    s = _check_keys(model, data.stratum, data.alpha)
    total = sum(data.alpha[j] * model.multiplicity(j) for j in s.components)
    if total != 1:
        raise ValidationError(
            f"stratum {data.stratum}: weights must satisfy sum(alpha*N) = 1,"
            f" got {total}"
        )
    s, alpha = _resolve_zeros(model, data.stratum, data.alpha)
    beta = {j: alpha[j] * model.multiplicity(j) for j in s.components}
    return SkeletonPoint(s.id, beta)


def retract_to_skeleton(
    model: ModelDescription, center_stratum: str, alpha: Mapping
) -> SkeletonPoint:
    """Skeleton point of the retraction, from extracted (center, alpha) data.

    The data records the valuations of local equations of the components
    through the center of a point; the retraction keeps exactly this
    information, so the image is the skeleton point with coordinates
    beta_j = alpha_j * N_j on the center's stratum.  All weights must be
    positive here (a component through the center has positive valuation).
    """
    coords = _as_fraction_map(alpha)
    s = _check_keys(model, center_stratum, coords)
    if any(a <= 0 for a in coords.values()):
        raise ValidationError(
            f"stratum {center_stratum}: retraction weights must be positive"
        )
    total = sum(coords[j] * model.multiplicity(j) for j in s.components)
    if total != 1:
        raise ValidationError(
            f"stratum {center_stratum}: weights must satisfy sum(alpha*N) = 1,"
            f" got {total}"
        )
    return SkeletonPoint(s.id, {j: coords[j] * model.multiplicity(j) for j in s.components})
