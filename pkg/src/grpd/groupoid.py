"""Finite groupoids with explicit multiplication tables.

A finite groupoid is stored as plain string-id tables: ``src``/``dst`` anchor
maps, a ``unit`` arrow per object, an ``inv`` map, and a composition table
``comp`` defined on *exactly* the composable pairs (src(g) == dst(h) for the
product g*h).  Every constructor routes through :func:`make_groupoid`, which
checks all axioms exhaustively and raises :class:`AxiomViolation` with a
minimal witness on the first failure.

Conventions: an arrow g runs src(g) -> dst(g); what operator algebraists
call the range map is ``dst`` and the source map is ``src``.  Object and
arrow ids are sorted lexicographically on construction so every iteration
order in the package is canonical.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .errors import AxiomViolation, InputError, NotAnAction


@dataclass(frozen=True)
class FiniteGroupoid:
    objects: tuple
    arrows: tuple
    src: dict
    dst: dict
    unit: dict
    inv: dict
    comp: dict
    by_src: dict = field(compare=False, default_factory=dict)
    by_dst: dict = field(compare=False, default_factory=dict)

    # -- arrow calculus -------------------------------------------------

    def r(self, g):
        """Range (target) object of an arrow."""
        return self.dst[g]

    def s(self, g):
        """Source object of an arrow."""
        return self.src[g]

    def mul(self, g, h):
        """g*h, defined iff src(g) == dst(h)."""
        return self.comp[(g, h)]

    def composable(self, g, h):
        return self.src[g] == self.dst[h]

    def inverse(self, g):
        return self.inv[g]

    def unit_at(self, x):
        return self.unit[x]

    def source_fiber(self, x):
        """All arrows with src == x (the basis of the regular block at x)."""
        return self.by_src.get(x, ())

    def range_fiber(self, x):
        """All arrows with dst == x."""
        return self.by_dst.get(x, ())

    def is_unit(self, g):
        return self.unit[self.src[g]] == g

    def is_space(self):
        """True when every arrow is a unit."""
        return len(self.arrows) == len(self.objects) and all(
            self.is_unit(g) for g in self.arrows)

    def __repr__(self):
        return (f"FiniteGroupoid({len(self.objects)} objects, "
                f"{len(self.arrows)} arrows)")


def make_groupoid(objects, arrows, src, dst, unit, inv, comp) -> FiniteGroupoid:
    """Build and exhaustively validate a finite groupoid.

    ``comp`` must contain an entry for every composable pair and nothing
    else.  The empty groupoid (no objects, no arrows) is legal.
    """
    objects = tuple(sorted(objects))
    arrows = tuple(sorted(arrows))
    if len(set(objects)) != len(objects):
        raise AxiomViolation("duplicate-object", objects)
    if len(set(arrows)) != len(arrows):
        raise AxiomViolation("duplicate-arrow", arrows)
    obj_set, arr_set = set(objects), set(arrows)

    src = dict(src)
    dst = dict(dst)
    unit = dict(unit)
    inv = dict(inv)
    comp = dict(comp)

    for g in arrows:
        if g not in src or src[g] not in obj_set:
            raise AxiomViolation("src-total", g)
        if g not in dst or dst[g] not in obj_set:
            raise AxiomViolation("dst-total", g)
    for table, kind in ((src, "src"), (dst, "dst")):
        for g in table:
            if g not in arr_set:
                raise AxiomViolation(f"{kind}-unknown-arrow", g)

    for x in objects:
        if x not in unit or unit[x] not in arr_set:
            raise AxiomViolation("unit-total", x)
        e = unit[x]
        if src[e] != x or dst[e] != x:
            raise AxiomViolation("unit-endpoints", (x, e))
    for x in unit:
        if x not in obj_set:
            raise AxiomViolation("unit-unknown-object", x)

    for g in arrows:
        if g not in inv or inv[g] not in arr_set:
            raise AxiomViolation("inv-total", g)
        if src[inv[g]] != dst[g] or dst[inv[g]] != src[g]:
            raise AxiomViolation("inverse-endpoints", (g, inv[g]))
    for g in inv:
        if g not in arr_set:
            raise AxiomViolation("inv-unknown-arrow", g)

    # composition domain is exactly the composable pairs
    for (g, h), gh in comp.items():
        if g not in arr_set or h not in arr_set:
            raise AxiomViolation("comp-unknown-arrow", (g, h))
        if src[g] != dst[h]:
            raise AxiomViolation("comp-extra-pair", (g, h))
        if gh not in arr_set:
            raise AxiomViolation("comp-unknown-result", (g, h, gh))
        if src[gh] != src[h] or dst[gh] != dst[g]:
            raise AxiomViolation("comp-endpoints", (g, h, gh))
    for g in arrows:
        for h in arrows:
            if src[g] == dst[h] and (g, h) not in comp:
                raise AxiomViolation("comp-missing-pair", (g, h))

    for g in arrows:
        if comp[(unit[dst[g]], g)] != g:
            raise AxiomViolation("unit-left", g)
        if comp[(g, unit[src[g]])] != g:
            raise AxiomViolation("unit-right", g)
        if comp[(inv[g], g)] != unit[src[g]]:
            raise AxiomViolation("inverse-left", g)
        if comp[(g, inv[g])] != unit[dst[g]]:
            raise AxiomViolation("inverse-right", g)

    by_dst = {x: [] for x in objects}
    for g in arrows:
        by_dst[dst[g]].append(g)
    for g in arrows:
        for h in by_dst[src[g]]:
            gh = comp[(g, h)]
            for k in by_dst[src[h]]:
                if comp[(gh, k)] != comp[(g, comp[(h, k)])]:
                    raise AxiomViolation("associativity", (g, h, k))

    by_src = {x: [] for x in objects}
    for g in arrows:
        by_src[src[g]].append(g)

    return FiniteGroupoid(
        objects, arrows, src, dst, unit, inv, comp,
        by_src={x: tuple(v) for x, v in by_src.items()},
        by_dst={x: tuple(v) for x, v in by_dst.items()},
    )


# -- constructors ---------------------------------------------------------


def space_as_groupoid(points) -> FiniteGroupoid:
    """The discrete groupoid with only unit arrows; arrow ids reuse point ids."""
    points = sorted(points)
    return make_groupoid(
        objects=points,
        arrows=points,
        src={p: p for p in points},
        dst={p: p for p in points},
        unit={p: p for p in points},
        inv={p: p for p in points},
        comp={(p, p): p for p in points},
    )


def group_as_groupoid(table: Mapping, object_name: str = "*") -> FiniteGroupoid:
    """One-object groupoid from a finite group multiplication table.

    ``table`` maps element pairs (a, b) -> a*b.  The group axioms (closure,
    totality, associativity, identity, inverses) are checked exhaustively.
    """
    elements = sorted({a for pair in table for a in pair})
    elems = set(elements)
    table = dict(table)
    for a in elements:
        for b in elements:
            if (a, b) not in table:
                raise AxiomViolation("group-not-total", (a, b))
            if table[(a, b)] not in elems:
                raise AxiomViolation("group-not-closed", (a, b, table[(a, b)]))
    for (a, b) in table:
        if a not in elems or b not in elems:
            raise AxiomViolation("group-unknown-element", (a, b))
    for a in elements:
        for b in elements:
            for c in elements:
                if table[(table[(a, b)], c)] != table[(a, table[(b, c)])]:
                    raise AxiomViolation("group-associativity", (a, b, c))
    identity = None
    for e in elements:
        if all(table[(e, a)] == a and table[(a, e)] == a for a in elements):
            identity = e
            break
    if identity is None:
        raise AxiomViolation("group-no-identity", tuple(elements))
    inverse = {}
    for a in elements:
        for b in elements:
            if table[(a, b)] == identity and table[(b, a)] == identity:
                inverse[a] = b
                break
        else:
            raise AxiomViolation("group-no-inverse", a)

    return make_groupoid(
        objects=[object_name],
        arrows=elements,
        src={a: object_name for a in elements},
        dst={a: object_name for a in elements},
        unit={object_name: identity},
        inv=inverse,
        comp={(a, b): table[(a, b)] for a in elements for b in elements},
    )


def group_identity(group: FiniteGroupoid) -> str:
    """Identity element of a one-object groupoid."""
    if len(group.objects) != 1:
        raise AxiomViolation("not-a-group", group.objects)
    return group.unit[group.objects[0]]


def pair_arrow_id(g, v) -> str:
    return f"({g},{v})"


def transformation_groupoid(group: FiniteGroupoid, action: Mapping,
                            points) -> FiniteGroupoid:
    """Action groupoid of a finite group acting on a finite set.

    ``group`` is a one-object groupoid; ``action`` maps (element, point) ->
    point.  Arrows are pairs (g, v): v -> g.v with
    (g, h.v)*(h, v) = (g*h, v).  Raises NotAnAction when the unit or
    multiplicativity law fails.
    """
    if len(group.objects) != 1:
        raise AxiomViolation("not-a-group", group.objects)
    points = sorted(points)
    e = group_identity(group)
    act = dict(action)
    for g in group.arrows:
        for v in points:
            if (g, v) not in act:
                raise NotAnAction((g, v), f"action undefined at ({g!r}, {v!r})")
            if act[(g, v)] not in points:
                raise NotAnAction((g, v, act[(g, v)]),
                                  f"action leaves the point set at ({g!r}, {v!r})")
    for v in points:
        if act[(e, v)] != v:
            raise NotAnAction((e, v), f"unit moves the point {v!r}")
    for g in group.arrows:
        for h in group.arrows:
            gh = group.mul(g, h)
            for v in points:
                if act[(gh, v)] != act[(g, act[(h, v)])]:
                    raise NotAnAction((g, h, v))

    arrows = [pair_arrow_id(g, v) for g in group.arrows for v in points]
    src = {}
    dst = {}
    parts = {}
    for g in group.arrows:
        for v in points:
            a = pair_arrow_id(g, v)
            parts[a] = (g, v)
            src[a] = v
            dst[a] = act[(g, v)]
    comp = {}
    for g in group.arrows:
        for h in group.arrows:
            gh = group.mul(g, h)
            for v in points:
                # (g, h.v) * (h, v) = (g*h, v)
                comp[(pair_arrow_id(g, act[(h, v)]), pair_arrow_id(h, v))] = \
                    pair_arrow_id(gh, v)
    return make_groupoid(
        objects=points,
        arrows=arrows,
        src=src,
        dst=dst,
        unit={v: pair_arrow_id(e, v) for v in points},
        inv={pair_arrow_id(g, v): pair_arrow_id(group.inverse(g), act[(g, v)])
             for g in group.arrows for v in points},
        comp=comp,
    )


# -- slices ----------------------------------------------------------------


def disjoint_union(G: FiniteGroupoid, H: FiniteGroupoid) -> FiniteGroupoid:
    """Side-by-side union; object and arrow ids must not collide."""
    if set(G.objects) & set(H.objects):
        raise InputError("object ids collide: "
                         f"{sorted(set(G.objects) & set(H.objects))}")
    if set(G.arrows) & set(H.arrows):
        raise InputError("arrow ids collide: "
                         f"{sorted(set(G.arrows) & set(H.arrows))}")
    return make_groupoid(
        objects=list(G.objects) + list(H.objects),
        arrows=list(G.arrows) + list(H.arrows),
        src={**G.src, **H.src},
        dst={**G.dst, **H.dst},
        unit={**G.unit, **H.unit},
        inv={**G.inv, **H.inv},
        comp={**G.comp, **H.comp},
    )


def is_slice(G: FiniteGroupoid, subset) -> bool:
    """A subset of arrows is a slice when src and dst are injective on it."""
    subset = set(subset)
    for g in subset:
        if g not in G.src:
            raise AxiomViolation("unknown-arrow", g)
    srcs = {G.src[g] for g in subset}
    dsts = {G.dst[g] for g in subset}
    return len(srcs) == len(subset) and len(dsts) == len(subset)


def slice_product(G: FiniteGroupoid, V, W) -> frozenset:
    """V*W = {g*h : g in V, h in W composable}; slices are closed under it."""
    return frozenset(G.mul(g, h) for g in V for h in W if G.composable(g, h))


def slice_star(G: FiniteGroupoid, V) -> frozenset:
    """V* = pointwise inverses; slices are closed under it."""
    return frozenset(G.inverse(g) for g in V)


def unit_slice(G: FiniteGroupoid) -> frozenset:
    """The set of all unit arrows (always a slice)."""
    return frozenset(G.unit.values())
