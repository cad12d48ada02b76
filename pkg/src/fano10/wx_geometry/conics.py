"""Conics in G(2,V5), stored by their plane and a quadratic form on it."""

from __future__ import annotations

from dataclasses import dataclass, replace

from ..scalars import FieldDescriptor, Matrix, coordinates_in, intersect_spans, normalize, span_basis, spans_equal
from .core import (
    WModel,
    binary_roots,
    contract,
    forms_proportional,
    quad_value,
    restrict_form,
    support,
    vcomb,
    wedge3,
)

TAGS = ("tau", "sigma", "rho", "undetermined")


class EnlargeField(ValueError):
    """Not enough points on the conic even over the quadratic extension."""


@dataclass(frozen=True)
class ConicRecord:
    plane: tuple  # three vectors of ∧²V5
    form: Matrix  # 3x3 Gram in the plane basis
    tag: str = "undetermined"
    v4: tuple | None = None  # functional with c ⊂ G(2, ker v4)

    def __post_init__(self):
        if self.form.is_zero():
            raise ValueError("a conic needs a nonzero quadratic form")
        if self.tag not in TAGS:
            raise ValueError(f"unknown conic type {self.tag!r}")

    @property
    def field(self) -> FieldDescriptor:
        return self.form.field

    def point(self, coords) -> tuple:
        return vcomb(self.field, list(coords), list(self.plane))

    def contains(self, omega) -> bool:
        c = coordinates_in(self.field, list(self.plane), omega)
        return c is not None and quad_value(self.form, c) == 0

    def map_field(self, F: FieldDescriptor) -> "ConicRecord":
        plane = tuple(tuple(F(x) for x in v) for v in self.plane)
        return replace(self, plane=plane, form=self.form.map_field(F),
                       v4=None if self.v4 is None else tuple(F(x) for x in self.v4))

    def with_tag(self, tag: str, v4=None) -> "ConicRecord":
        return replace(self, tag=tag, v4=v4)


def conic_from_plane(plane, form: Matrix, **kw) -> ConicRecord:
    return ConicRecord(tuple(tuple(v) for v in plane), form, **kw)


def same_conic(a: ConicRecord, b: ConicRecord) -> bool:
    """Equal planes and proportional forms once expressed in a common basis."""
    F = a.field
    if not spans_equal(F, list(a.plane), list(b.plane)):
        return False
    # b.plane_j = Σ_i T_ij a.plane_i, so q_b = Tᵀ q_a T up to scalar
    cols = [coordinates_in(F, list(a.plane), v) for v in b.plane]
    t = Matrix.from_columns(F, cols)
    return forms_proportional(t.T @ a.form @ t, b.form)


def conic_points(c: ConicRecord, rng, want: int = 3, tries: int = 400) -> tuple[list[tuple], FieldDescriptor]:
    """Distinct points from random secant lines, over the base field or its quadratic extension."""
    F = c.field
    pts = _points_over(c, rng, want, tries)
    if len(pts) >= want:
        return pts, F
    if F.is_prime:
        E = F.extension()
        pts = _points_over(c.map_field(E), rng, want, tries)
        if len(pts) >= want:
            return pts, E
    raise EnlargeField(f"fewer than {want} points on the conic over {F} and its quadratic extension")


def _points_over(c: ConicRecord, rng, want, tries):
    F = c.field
    seen: dict = {}
    for _ in range(tries):
        x = tuple(F.random(rng) for _ in range(3))
        y = tuple(F.random(rng) for _ in range(3))
        if Matrix(F, [x, y]).rank() < 2:
            continue
        g = restrict_form(c.form, [x, y])
        roots = binary_roots(F, g[0, 0], g[0, 1], g[1, 1])
        if roots.kind == "zero":
            continue
        for s, t in roots.roots:
            p = c.point(tuple(s * a + t * b for a, b in zip(x, y)))
            if any(v != 0 for v in p):
                seen.setdefault(normalize(p), p)
        if len(seen) >= want:
            break
    return list(seen.values())


def descend(F: FieldDescriptor, v) -> tuple:
    """Normalize a vector found over an extension and bring it back to F."""
    return tuple(F(x) for x in normalize(v))


@dataclass(frozen=True)
class Classification:
    tag: str
    v4: tuple | None
    vertex: tuple | None
    v3: tuple | None
    points_field: str


def plane_in_grassmannian(W: WModel, plane) -> bool:
    return all(restrict_form(g, list(plane)).is_zero() for g in W.plucker)


def hyperplanes_containing(F: FieldDescriptor, plane) -> list[tuple]:
    """Basis of {f : P(plane) ⊂ G(2, ker f)} via ι_f ω = 0 for every ω of the plane."""
    rows = []
    for omega in plane:
        for k in range(5):
            # coefficient of e_k in ι_f ω as a linear form in f
            row = [F(0)] * 5
            for i in range(5):
                unit = tuple(F(1) if t == i else F(0) for t in range(5))
                row[i] = contract(unit, omega)[k]
            rows.append(row)
    return Matrix(F, rows).kernel_basis()


def annihilating_vectors(F: FieldDescriptor, plane) -> list[tuple]:
    """Basis of {v ∈ V5 : v∧ω = 0 for every ω of the plane}."""
    units = [tuple(F(1) if t == i else F(0) for t in range(5)) for i in range(5)]
    rows = []
    for omega in plane:
        cols = [wedge3(omega, u) for u in units]
        rows.extend(zip(*cols))
    return Matrix(F, rows).kernel_basis()


def classify_conic(c: ConicRecord, W: WModel, rng) -> Classification:
    """Type of a conic from linear algebra on its plane, cross-checked on points when they exist.

    Over the rationals a conic may have no points over Q or a quadratic
    extension we can name; the cross-check is then skipped and
    ``points_field`` is "none".
    """
    F = c.field
    plane = list(c.plane)
    hyper = hyperplanes_containing(F, plane)
    if not plane_in_grassmannian(W, plane):
        if len(hyper) != 1:
            raise ValueError("τ-conic is not contained in a unique G(2,V4)")
        cl = Classification("tau", normalize(hyper[0]), None, None, "")
    else:
        ann = annihilating_vectors(F, plane)
        if len(ann) == 1 and len(hyper) == 1:
            v = normalize(ann[0])
            A, B = W.pencil.A, W.pencil.B
            orth = Matrix(F, [A @ v, B @ v])
            if orth.rank() != 1 or not spans_equal(F, list(orth.rows), hyper):
                raise ValueError("vertex of the α-plane is not on the kernel conic")
            cl = Classification("sigma", normalize(hyper[0]), v, None, "")
        elif not ann and len(hyper) == 2:
            v3 = Matrix(F, hyper).kernel_basis()
            cl = Classification("rho", None, None, tuple(v3), "")
        else:
            raise ValueError("plane in G(2,V5) is neither an α- nor a β-plane")
    try:
        pts, E = conic_points(c, rng)
    except EnlargeField:
        if F.is_finite:
            raise
        return replace(cl, points_field="none")
    _cross_check(cl, pts[:3], E)
    return replace(cl, points_field=str(E))


def _cross_check(cl: Classification, pts, E: FieldDescriptor) -> None:
    supports = [support(E, p) for p in pts]
    span = span_basis(E, [v for s in supports for v in s])
    if cl.tag == "rho":
        ok = len(span) == 3 and spans_equal(E, span, [tuple(E(x) for x in v) for v in cl.v3])
    else:
        ok = len(span) == 4 and spans_equal(E, Matrix(E, span).kernel_basis(), [tuple(E(x) for x in cl.v4)])
        if ok and cl.tag == "sigma":
            common = supports[0]
            for sp in supports[1:]:
                common = intersect_spans(E, common, sp)
            ok = len(common) == 1 and spans_equal(E, common, [tuple(E(x) for x in cl.vertex)])
    if not ok:
        raise ValueError(f"points of the {cl.tag}-conic disagree with its plane")


def classify(c: ConicRecord, W: WModel, rng) -> ConicRecord:
    cl = classify_conic(c, W, rng)
    return c.with_tag(cl.tag, cl.v4)


@dataclass(frozen=True)
class Intersection:
    kind: str  # empty, point, split, double, inert, partial, line, same-plane
    length: int
    meet_dim: int


def intersection_length(a: ConicRecord, b: ConicRecord) -> Intersection:
    """|a ∩ b| when the planes meet in a line or a point (lengths counted over the quadratic extension)."""
    F = a.field
    meet = intersect_spans(F, list(a.plane), list(b.plane))
    if len(meet) == 0:
        return Intersection("empty", 0, 0)
    if len(meet) == 1:
        on = a.contains(meet[0]) and b.contains(meet[0])
        return Intersection("point" if on else "empty", int(on), 1)
    if len(meet) == 2:
        ca = [coordinates_in(F, list(a.plane), v) for v in meet]
        cb = [coordinates_in(F, list(b.plane), v) for v in meet]
        ga, gb = restrict_form(a.form, ca), restrict_form(b.form, cb)
        if ga.is_zero() or gb.is_zero():
            return Intersection("line", -1, 2)
        if not forms_proportional(ga, gb):
            # the two binary quadrics share at most one root
            common = _common_roots(F, ga, gb)
            return Intersection("partial", common, 2)
        r = binary_roots(F, ga[0, 0], ga[0, 1], ga[1, 1])
        return Intersection(r.kind, 2, 2)
    return Intersection("same-plane", -1, 3)


def _common_roots(F, ga, gb) -> int:
    r = binary_roots(F, ga[0, 0], ga[0, 1], ga[1, 1])
    return sum(quad_value(gb, st) == 0 for st in r.roots)
