"""Shared fixture loading and seeded random generators for the test suite."""
from __future__ import annotations

import itertools
import json
from fractions import Fraction
from pathlib import Path

from degenskel import (
    BaseElement,
    BasicModel,
    ModelDescription,
    MonomialWeights,
    MultivariatePoly,
    PluricanonicalForm,
    SkeletonPoint,
    build_complex,
    uniformizer,
    weight_at,
)

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def load_model(name: str) -> ModelDescription:
    return ModelDescription.from_dict(json.loads((FIXTURES / name).read_text()))


def load_form(name: str) -> PluricanonicalForm:
    return PluricanonicalForm.from_dict(json.loads((FIXTURES / name).read_text()))


# -- random base-field elements ------------------------------------------------


def random_poly_t(rng, max_deg=2, nonzero_const=False) -> dict:
    while True:
        coeffs = {}
        for e in range(max_deg + 1):
            if rng.random() < 0.6:
                num = rng.randint(-4, 4)
                if num:
                    coeffs[e] = Fraction(num, rng.randint(1, 3))
        if nonzero_const and 0 not in coeffs:
            continue
        if coeffs:
            return coeffs


def random_element(rng, allow_zero=False) -> BaseElement:
    if allow_zero and rng.random() < 0.05:
        return BaseElement(0)
    shift = rng.randint(-2, 3)
    num = {e + shift: c for e, c in random_poly_t(rng).items()}
    return BaseElement(num, random_poly_t(rng))


def random_unit(rng) -> BaseElement:
    return BaseElement(
        random_poly_t(rng, nonzero_const=True),
        random_poly_t(rng, nonzero_const=True),
    )


def random_poly(rng, arity, max_terms=4, max_exp=3) -> MultivariatePoly:
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        exps = tuple(rng.randint(0, max_exp) for _ in range(arity))
        terms[exps] = random_element(rng)
    return MultivariatePoly(arity, terms)


def random_weights(rng, arity, allow_zero=True) -> MonomialWeights:
    lo = 0 if allow_zero else 1
    return MonomialWeights(
        tuple(Fraction(rng.randint(lo, 8), rng.randint(1, 6)) for _ in range(arity))
    )


# -- random models and forms ----------------------------------------------------


def random_model(rng) -> ModelDescription:
    n = rng.randint(1, 6)
    comps = [(f"E{i}", rng.randint(1, 4)) for i in range(1, n + 1)]
    ids = [c[0] for c in comps]
    strata = []
    edges_by_pair: dict[frozenset, list[str]] = {}
    budget = 15 - n
    if n >= 2 and budget > 0:
        for k in range(rng.randint(0, min(6, budget))):
            a, b = sorted(rng.sample(ids, 2))
            sid = f"C{a[1:]}{b[1:]}x{k}"
            strata.append((sid, (a, b), None))
            edges_by_pair.setdefault(frozenset((a, b)), []).append(sid)
    budget = 15 - n - len(strata)
    if n >= 3 and budget > 0:
        for k in range(rng.randint(0, min(3, budget))):
            tri = sorted(rng.sample(ids, 3))
            pairs = [frozenset(p) for p in itertools.combinations(tri, 2)]
            if not all(p in edges_by_pair for p in pairs):
                continue
            faces = {
                removed: rng.choice(edges_by_pair[frozenset(set(tri) - {removed})])
                for removed in tri
            }
            strata.append((f"T{''.join(x[1:] for x in tri)}x{k}", tuple(tri), faces))
    return ModelDescription(comps, strata)


def random_form(rng, model: ModelDescription) -> PluricanonicalForm:
    m = rng.choice([1, 1, 2, 3])
    comps = model.components
    if rng.random() < 0.65:
        # force ties so the essential set is interesting
        w0 = rng.choice([1, 2])
        tied = set(rng.sample([c.id for c in comps], rng.randint(1, len(comps))))
        vertical = {
            c.id: w0 * c.multiplicity - m
            + (0 if c.id in tied else rng.randint(1, 3))
            for c in comps
        }
    else:
        vertical = {c.id: rng.randint(-1, 4) for c in comps}
    cx = build_complex(model)
    non_vertex = [s.id for s in model.strata if s.dimension >= 1]
    seeds = {sid for sid in non_vertex if rng.random() < 0.25}
    horizontal = {s.id for s in model.strata if cx.face_closure(s.id) & seeds}
    return PluricanonicalForm(m, vertical, frozenset(horizontal))


def random_rigid_point(rng, bm: BasicModel):
    """A random valid rigid point; only possible when N1 = 1 or N2 = 1."""
    profiles = []
    if bm.n1 == 1:
        profiles.append((1, 0))
    if bm.n2 == 1:
        profiles.append((0, 1))
    if not profiles:
        raise ValueError(
            f"no rigid points with coordinates in Q(t) for N = ({bm.n1}, {bm.n2})"
        )
    a1, a2 = rng.choice(profiles)
    u = random_unit(rng)
    t = uniformizer()
    return bm.rigid_point(t**a1 * u**bm.n2, t**a2 * u ** (-bm.n1))


def random_interior_point(rng, model: ModelDescription, stratum=None) -> SkeletonPoint:
    s = stratum if stratum is not None else rng.choice(model.strata)
    comps = sorted(s.components)
    parts = [rng.randint(1, 9) for _ in comps]
    total = sum(parts)
    return SkeletonPoint(s.id, {c: Fraction(p, total) for c, p in zip(comps, parts)})


# -- brute-force argmin oracle ---------------------------------------------------


def compositions(total: int, parts: int):
    """All ways to write total as an ordered sum of `parts` positive integers."""
    for cuts in itertools.combinations(range(1, total), parts - 1):
        prev = 0
        out = []
        for c in cuts + (total,):
            out.append(c - prev)
            prev = c
        yield tuple(out)


def interior_grid(arity: int, max_den: int) -> list[tuple[Fraction, ...]]:
    points = set()
    for den in range(arity, max_den + 1):
        for parts in compositions(den, arity):
            points.add(tuple(Fraction(p, den) for p in parts))
    return sorted(points)


def brute_force_ks(model: ModelDescription, form: PluricanonicalForm, max_den=12):
    """Argmin scan of weight_at over a dense rational grid on every face.

    Independent of the vertex criterion: a face belongs to the skeleton
    exactly when every sampled interior point attains the overall minimum
    with an untagged value.
    """
    per_face = {}
    overall = None
    for s in model.strata:
        comps = sorted(s.components)
        values = []
        for beta in interior_grid(len(comps), max_den):
            point = SkeletonPoint(s.id, dict(zip(comps, beta)))
            wv = weight_at(model, form, point)
            values.append(wv)
            if not wv.lower_bound_only and (overall is None or wv.value < overall):
                overall = wv.value
        per_face[s.id] = values
    return {
        sid
        for sid, values in per_face.items()
        if all(not v.lower_bound_only and v.value == overall for v in values)
    }
