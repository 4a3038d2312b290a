"""Exact rational polyhedral cones, wall sets, and their restrictions.

Cones are stored by primitive integer generators together with a derived
facet description, both computed by the same small double-description
kernel: the dual of a list of vectors is found by splitting off the
lineality space and enumerating extreme rays of the pointed part through
maximal-rank subsets.  Everything is exact and ambient ranks stay at most
five, so brute force is the right tool.

Wall sets bundle a bounding cone with a list of wall functionals; the
operations on them mirror how base-locus decompositions restrict to a
subspace and transport across the Hirzebruch roof.  Known wall data ships
as JSON fixtures, since base loci themselves are not computed here.

A deterministic SVG renderer draws rank-two fans directly and rank-three
cones through an affine cross-section.
"""

from __future__ import annotations

import functools
import itertools
import json
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import _linalg as la
from . import hilbpic as hp
from . import nslattice as ns

IntVec = tuple[int, ...]


def dual_description(rows: list, dim: int) -> tuple[list[IntVec], list[IntVec]]:
    """Extreme rays and lineality of {x : r.x >= 0 for r in rows}.

    The lineality space is the kernel of the rows.  The pointed quotient is
    taken in coordinates given by standard basis vectors completing that
    kernel; there every extreme ray is the kernel of some spanning subset of
    the constraints of corank one, so enumerating those subsets is complete.
    """
    rows = [tuple(Fraction(x) for x in r) for r in rows]
    lineality = sorted(la.primitive(v) for v in la.nullspace(rows, dim))
    lindim = len(lineality)
    ddim = dim - lindim
    if ddim == 0:
        return [], lineality

    # complete the lineality space by standard basis vectors
    comp: list[tuple[Fraction, ...]] = []
    span = [tuple(Fraction(x) for x in v) for v in lineality]
    for i in range(dim):
        e = tuple(Fraction(1 if j == i else 0) for j in range(dim))
        if la.rank(span + comp + [e], dim) > lindim + len(comp):
            comp.append(e)
    assert len(comp) == ddim

    reduced = [tuple(la.dot(r, c) for c in comp) for r in rows]
    rays: set[IntVec] = set()
    for subset in itertools.combinations(range(len(reduced)), ddim - 1):
        sub = [reduced[i] for i in subset]
        if la.rank(sub, ddim) != ddim - 1:
            continue
        kernel = la.nullspace(sub, ddim)
        if len(kernel) != 1:
            continue
        u = kernel[0]
        vals = [la.dot(r, u) for r in reduced]
        if all(v >= 0 for v in vals):
            pass
        elif all(v <= 0 for v in vals):
            u = tuple(-x for x in u)
        else:
            continue
        ray = tuple(sum(u[j] * comp[j][i] for j in range(ddim)) for i in range(dim))
        rays.add(la.primitive_keep_sign(ray))
    if ddim == 1:
        # no proper subsets to enumerate; the single coordinate direction works
        for sign in (1, -1):
            u = (Fraction(sign),)
            if all(la.dot(r, u) >= 0 for r in reduced):
                ray = tuple(u[0] * comp[0][i] for i in range(dim))
                rays.add(la.primitive_keep_sign(ray))
    return sorted(rays), lineality


@dataclass(frozen=True)
class Cone:
    """A rational polyhedral cone with both generator and facet descriptions.

    rays and lineality are canonical (primitive, sorted), so equal cones
    compare equal; facets hold the irredundant inequalities and equations
    the equality constraints cutting out the cone's span.
    """

    dim: int
    rays: tuple[IntVec, ...]
    lineality: tuple[IntVec, ...]
    facets: tuple[IntVec, ...]
    equations: tuple[IntVec, ...]


def cone_from_generators(vectors, dim: int | None = None) -> Cone:
    vecs = [tuple(Fraction(x) for x in v) for v in vectors]
    if dim is None:
        if not vecs:
            raise ValueError("cannot infer ambient dimension from no generators")
        dim = len(vecs[0])
    if any(len(v) != dim for v in vecs):
        raise ValueError("generators of mixed dimensions")
    if any(all(x == 0 for x in v) for v in vecs):
        raise ValueError("zero vector is not a generator")
    facets, equations = dual_description(vecs, dim)
    constraint_rows = list(facets) + list(equations) + [tuple(-x for x in e) for e in equations]
    rays, lineality = dual_description(constraint_rows, dim)
    return Cone(dim, tuple(rays), tuple(lineality),
                tuple(facets), tuple(equations))


def contains(C: Cone, v) -> bool:
    v = tuple(Fraction(x) for x in v)
    if len(v) != C.dim:
        raise ValueError("point dimension does not match the cone")
    return (all(la.dot(e, v) == 0 for e in C.equations)
            and all(la.dot(f, v) >= 0 for f in C.facets))


def contains_interior(C: Cone, v) -> bool:
    """Relative interior membership: equations tight, every facet strict."""
    v = tuple(Fraction(x) for x in v)
    if len(v) != C.dim:
        raise ValueError("point dimension does not match the cone")
    return (all(la.dot(e, v) == 0 for e in C.equations)
            and all(la.dot(f, v) > 0 for f in C.facets))


def intersect_subspace(C: Cone, basis) -> Cone:
    """The cone {v in span(basis) : v in C}, written in basis coordinates."""
    basis = [tuple(Fraction(x) for x in b) for b in basis]
    k = len(basis)
    if la.rank(basis, C.dim) != k:
        raise ValueError("subspace basis must be linearly independent")
    ineq = [tuple(la.dot(f, b) for b in basis) for f in C.facets]
    eq = [tuple(la.dot(e, b) for b in basis) for e in C.equations]
    rows = ineq + eq + [tuple(-x for x in r) for r in eq]
    rays, lineality = dual_description(rows, k)
    gens = list(rays) + list(lineality) + [tuple(-x for x in l) for l in lineality]
    if not gens:
        # the zero cone; keep facet data consistent by using the equations x=0
        zero_eqs = tuple(tuple(1 if j == i else 0 for j in range(k)) for i in range(k))
        return Cone(k, (), (), (), zero_eqs)
    return cone_from_generators(gens, k)


def fm_member(C: Cone, v) -> bool:
    """Membership test that never looks at facets.

    Asks whether v is a nonnegative combination of the generators by
    Fourier-Motzkin elimination, so it cross-checks the dual description.
    """
    gens = list(C.rays) + list(C.lineality) + [tuple(-x for x in l) for l in C.lineality]
    return fm_feasible(gens, tuple(Fraction(x) for x in v))


def fm_feasible(rows, rhs) -> bool:
    """Fourier-Motzkin check for {x >= 0 : rows^T x = rhs} being nonempty.

    rows are the generators (one per variable); rhs the target vector.  Used
    as an independent membership oracle against the facet route.  Constraints
    are integer tuples (coefficients..., constant) meaning c.x + const >= 0;
    gcd reduction and a set keep the combinatorial growth tame.
    """
    m = len(rows)
    dim = len(rhs)

    def norm(vec: tuple[int, ...]) -> tuple[int, ...]:
        g = 0
        for x in vec:
            g = math.gcd(g, x)
        return vec if g in (0, 1) else tuple(x // g for x in vec)

    cons: set[tuple[int, ...]] = set()
    for i in range(m):
        cons.add(tuple(1 if j == i else 0 for j in range(m)) + (0,))
    for d in range(dim):
        col = [Fraction(rows[i][d]) for i in range(m)] + [-Fraction(rhs[d])]
        mult = math.lcm(*(x.denominator for x in col))
        ints = tuple(int(x * mult) for x in col)
        cons.add(norm(ints))
        cons.add(norm(tuple(-x for x in ints)))
    for var in range(m):
        pos = [c for c in cons if c[var] > 0]
        neg = [c for c in cons if c[var] < 0]
        new = {c for c in cons if c[var] == 0}
        for p in pos:
            for q in neg:
                sp, sq = -q[var], p[var]
                comb = tuple(sp * a + sq * b for a, b in zip(p, q))
                if any(comb):
                    new.add(norm(comb))
        cons = new
    return all(c[m] >= 0 for c in cons)


@dataclass(frozen=True)
class Wall:
    """A hyperplane through the origin, stored by a defining functional."""

    functional: IntVec
    label: str = ""
    side_data: str = ""

    def __post_init__(self):
        if all(x == 0 for x in self.functional):
            raise ValueError("a wall needs a nonzero functional")


@dataclass(frozen=True)
class WallSet:
    """Wall functionals decomposing a bounding cone, with labels for the basis."""

    basis_labels: tuple[str, ...]
    n: int
    bounding_cone: Cone
    walls: tuple[Wall, ...]
    surface_kind: str = ""
    surface_r: int | None = None


def restrict_walls(ws: WallSet, basis, labels=None) -> tuple[WallSet, list[Wall]]:
    """Restrict every wall functional to a subspace.

    Functionals vanishing identically on the subspace carry no information
    there and are returned separately as dropped; the rest are rewritten in
    subspace coordinates and deduplicated up to positive scaling.  The
    bounding cone is intersected with the subspace.
    """
    basis = [tuple(Fraction(x) for x in b) for b in basis]
    k = len(basis)
    labels = tuple(labels) if labels else tuple(f"v{i+1}" for i in range(k))
    kept: list[Wall] = []
    seen: set[IntVec] = set()
    dropped: list[Wall] = []
    for w in ws.walls:
        restricted = tuple(la.dot(w.functional, b) for b in basis)
        if all(x == 0 for x in restricted):
            dropped.append(w)
            continue
        prim = la.primitive_keep_sign(restricted)
        if prim in seen:
            continue
        seen.add(prim)
        kept.append(Wall(prim, w.label, w.side_data))
    bc = intersect_subspace(ws.bounding_cone, basis)
    return WallSet(labels, ws.n, bc, tuple(kept)), dropped


def transport_wallset_down(ws: WallSet) -> WallSet:
    """Carry a wall set on F_{r+1}^[n] to F_r^[n] through the roof.

    Functionals transport by precomposing with the upward class map, so the
    pairing of a transported wall with a class downstairs equals the pairing
    of the original wall with the transported class.  What comes out is a
    hyperplane; whether it is an honest wall is not decidable here, and the
    result says so on every wall.
    """
    if ws.surface_kind != "hirzebruch" or ws.surface_r is None:
        raise ValueError("wall transport needs a Hirzebruch wall set")
    if ws.surface_r < 1:
        raise ValueError("no Hirzebruch surface below F_0")
    r = ws.surface_r - 1
    fr = ns.make_hirzebruch(r)
    n = ws.n
    basis_up = [hp.transport_up(hp.lift_divisor(fr, ns.basis_class(fr, lab), n))
                for lab in ("E", "F")]
    basis_up.append(hp.transport_up(hp.exceptional(fr, n)))

    def adjoint(phi: IntVec) -> IntVec:
        vals = []
        for up in basis_up:
            coords = tuple(up.surface_part.coeffs) + (up.b_coeff,)
            vals.append(la.dot(phi, coords))
        return la.primitive_keep_sign(vals)

    walls = tuple(
        Wall(adjoint(w.functional), w.label,
             "transported hyperplane; wall-hood not verified")
        for w in ws.walls
    )
    down_rays = []
    for ray in ws.bounding_cone.rays:
        d = hp.transport_down(hp.hilb_class(ns.make_hirzebruch(ws.surface_r),
                                            ray[:2], ray[2], n))
        down_rays.append(tuple(d.surface_part.coeffs) + (d.b_coeff,))
    bc = cone_from_generators(down_rays, 3) if down_rays else ws.bounding_cone
    return WallSet(ws.basis_labels, n, bc, walls, "hirzebruch", r)


def locate(ws: WallSet, v) -> tuple[int, ...]:
    """Sign vector of the wall functionals at a class inside the bounding cone."""
    v = tuple(Fraction(x) for x in v)
    if not contains(ws.bounding_cone, v):
        raise ValueError("class lies outside the bounding cone")
    out = []
    for w in ws.walls:
        val = la.dot(w.functional, v)
        out.append(0 if val == 0 else (1 if val > 0 else -1))
    return tuple(out)


# -- fixtures ---------------------------------------------------------------

_FIXTURE_DIR = Path(__file__).parent / "fixtures"


@dataclass(frozen=True)
class Fixture:
    wallset: WallSet
    marks: tuple[tuple[IntVec, str], ...]
    raw: dict


def fixture_path(name: str) -> Path:
    p = Path(name)
    if p.exists():
        return p
    env = os.environ.get("HILBCONE_FIXTURES")
    if env:
        q = Path(env) / name
        if q.exists():
            return q
    q = _FIXTURE_DIR / name
    if q.exists():
        return q
    raise FileNotFoundError(f"no fixture named {name!r}")


def load_fixture(name: str) -> Fixture:
    raw = json.loads(fixture_path(name).read_text())
    surface = raw.get("surface", {})
    ws = WallSet(
        basis_labels=tuple(raw["basis"]),
        n=raw["n"],
        bounding_cone=cone_from_generators(raw["bounding_cone"]),
        walls=tuple(
            Wall(tuple(w["functional"]), w.get("label", ""), w.get("cite", ""))
            for w in raw["walls"]
        ),
        surface_kind=surface.get("kind", ""),
        surface_r=surface.get("r"),
    )
    marks = tuple((tuple(m["class"]), m["label"]) for m in raw.get("labels", []))
    return Fixture(ws, marks, raw)


def wallset_to_json(ws: WallSet) -> dict:
    out = {
        "surface": {"kind": ws.surface_kind},
        "basis": list(ws.basis_labels),
        "n": ws.n,
        "bounding_cone": [list(r) for r in ws.bounding_cone.rays],
        "walls": [
            {"functional": list(w.functional), "label": w.label, "cite": w.side_data}
            for w in ws.walls
        ],
    }
    if ws.surface_r is not None:
        out["surface"]["r"] = ws.surface_r
    return out


# -- SVG rendering ----------------------------------------------------------

_CANVAS = 600
_MARGIN = 50


def _fmt1(x: Fraction) -> str:
    """Fixed one-decimal formatting after exact rounding (ties to even)."""
    q = round(10 * Fraction(x))
    sign = "-" if q < 0 else ""
    q = abs(q)
    return f"{sign}{q // 10}.{q % 10}"


def _angular_sort(points):
    """Counterclockwise order around the centroid, decided exactly."""
    cx = sum(p[0] for p in points) / len(points)
    cy = sum(p[1] for p in points) / len(points)

    def half(p):
        dx, dy = p[0] - cx, p[1] - cy
        return 0 if (dy > 0 or (dy == 0 and dx > 0)) else 1

    def cmp(p, q):
        hp_, hq = half(p), half(q)
        if hp_ != hq:
            return -1 if hp_ < hq else 1
        cross = (p[0] - cx) * (q[1] - cy) - (p[1] - cy) * (q[0] - cx)
        if cross > 0:
            return -1
        if cross < 0:
            return 1
        return 0

    return sorted(points, key=functools.cmp_to_key(cmp))


def _svg_doc(body: list[str]) -> str:
    head = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_CANVAS}" '
        f'height="{_CANVAS}" viewBox="0 0 {_CANVAS} {_CANVAS}">'
    )
    style = (
        '<style>line.ray{stroke:#333;stroke-width:2}line.wall{stroke:#888;'
        'stroke-width:1;stroke-dasharray:6 3}polygon.cone{fill:#d8e4f0;'
        'stroke:#333;stroke-width:2}text{font-family:serif;font-size:16px;'
        'text-anchor:middle}</style>'
    )
    return "\n".join([head, style] + body + ["</svg>"]) + "\n"


def _render_rank2(ws: WallSet, marks) -> str:
    cx = cy = Fraction(_CANVAS, 2)
    reach = Fraction(_CANVAS, 2) - _MARGIN

    def endpoint(vec) -> tuple[Fraction, Fraction]:
        mx = max(abs(Fraction(x)) for x in vec)
        sx = Fraction(vec[0]) * reach / mx
        sy = Fraction(vec[1]) * reach / mx
        return cx + sx, cy - sy

    body = []
    ray_pts = [endpoint(r) for r in ws.bounding_cone.rays]
    if len(ray_pts) == 2:
        pts = f"{_fmt1(cx)},{_fmt1(cy)} " + " ".join(
            f"{_fmt1(x)},{_fmt1(y)}" for x, y in ray_pts)
        body.append(f'<polygon class="cone" points="{pts}"/>')
    for x, y in ray_pts:
        body.append(f'<line class="ray" x1="{_fmt1(cx)}" y1="{_fmt1(cy)}" '
                    f'x2="{_fmt1(x)}" y2="{_fmt1(y)}"/>')
    for w in ws.walls:
        # the ray inside the hyperplane: rotate the functional
        a, b = w.functional
        direction = (Fraction(b), Fraction(-a))
        if not contains(ws.bounding_cone, direction):
            direction = (-direction[0], -direction[1])
        if not contains(ws.bounding_cone, direction):
            continue
        x, y = endpoint(direction)
        body.append(f'<line class="wall" x1="{_fmt1(cx)}" y1="{_fmt1(cy)}" '
                    f'x2="{_fmt1(x)}" y2="{_fmt1(y)}"/>')
    for vec, label in marks:
        ex, ey = endpoint(vec)
        lx = cx + (ex - cx) * Fraction(11, 10)
        ly = cy + (ey - cy) * Fraction(11, 10)
        body.append(f'<text x="{_fmt1(lx)}" y="{_fmt1(ly)}">{label}</text>')
    return _svg_doc(body)


def _section_point(vec, section) -> tuple[Fraction, Fraction]:
    s = la.dot(section, vec)
    if s <= 0:
        raise ValueError("ray misses the section plane")
    v = [Fraction(x) / s for x in vec]
    return v[0], v[1]


def _render_rank3(ws: WallSet, marks, section) -> str:
    verts = [_section_point(r, section) for r in ws.bounding_cone.rays]
    verts = _angular_sort(verts)
    mark_pts = [(_section_point(v, section), lab) for v, lab in marks]

    # wall chords: clip each wall plane against the section polygon
    chords = []
    for w in ws.walls:
        f = w.functional
        vals = [la.dot(f, _chart_lift(p, section)) for p in verts]
        pts = []
        m = len(verts)
        for i in range(m):
            j = (i + 1) % m
            vi, vj = vals[i], vals[j]
            if vi == 0:
                pts.append(verts[i])
            if vi * vj < 0:
                t = vi / (vi - vj)
                pts.append((verts[i][0] + t * (verts[j][0] - verts[i][0]),
                            verts[i][1] + t * (verts[j][1] - verts[i][1])))
        uniq = sorted(set(pts))
        if len(uniq) >= 2:
            chords.append((uniq[0], uniq[-1]))

    everything = verts + [p for p, _ in mark_pts] + [p for c in chords for p in c]
    minx = min(p[0] for p in everything)
    maxx = max(p[0] for p in everything)
    miny = min(p[1] for p in everything)
    maxy = max(p[1] for p in everything)
    spread = max(maxx - minx, maxy - miny)
    if spread == 0:
        spread = Fraction(1)
    scale = Fraction(_CANVAS - 2 * _MARGIN) / spread
    ox, oy = (minx + maxx) / 2, (miny + maxy) / 2

    def to_canvas(p) -> tuple[Fraction, Fraction]:
        return (Fraction(_CANVAS, 2) + scale * (p[0] - ox),
                Fraction(_CANVAS, 2) - scale * (p[1] - oy))

    body = []
    pts = " ".join(f"{_fmt1(x)},{_fmt1(y)}" for x, y in map(to_canvas, verts))
    body.append(f'<polygon class="cone" points="{pts}"/>')
    for (p, q) in chords:
        (x1, y1), (x2, y2) = to_canvas(p), to_canvas(q)
        body.append(f'<line class="wall" x1="{_fmt1(x1)}" y1="{_fmt1(y1)}" '
                    f'x2="{_fmt1(x2)}" y2="{_fmt1(y2)}"/>')
    for p, label in mark_pts:
        x, y = to_canvas(p)
        body.append(f'<text x="{_fmt1(x)}" y="{_fmt1(y - 8)}">{label}</text>')
    return _svg_doc(body)


def _chart_lift(p, section):
    """Inverse of the chart (x, y) -> point of the section plane."""
    a, b, c = (Fraction(x) for x in section)
    if c == 0:
        raise ValueError("section plane must meet the third axis")
    x, y = p
    return (x, y, (1 - a * x - b * y) / c)


def cross_section_svg(ws: WallSet, marks=(), section=None) -> str:
    """Deterministic SVG for a rank-2 fan or a rank-3 cone cross-section.

    marks is a list of (class vector, text) pairs; rank-3 cones are cut by
    the affine plane sum(coords) = 1 unless a section covector is given.
    """
    dim = ws.bounding_cone.dim
    if dim == 2:
        return _render_rank2(ws, tuple(marks))
    if dim == 3:
        section = tuple(Fraction(x) for x in (section or (1, 1, 1)))
        return _render_rank3(ws, tuple(marks), section)
    raise ValueError("rendering supports rank 2 and 3 only")
