"""Groupoid correspondences: bi-actions with a free right leg.

A correspondence X: H <- G is a finite carrier set with anchor maps
rmap: X -> H^0 and smap: X -> G^0, a left H-action defined exactly on
{(h, x) : src(h) = rmap(x)} and a right G-action defined exactly on
{(x, g) : smap(x) = dst(g)}.  The right action must be free; at finite scale
every correspondence is automatically proper, and it is *tight* when the
induced map (right orbits) -> H^0 is a bijection.

The bracket <x1|x2> is the unique right arrow g with x2 = x1*g; it exists iff
x1 and x2 share a right orbit and is the entire inner-product calculus of the
module layer in miniature.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .errors import (AxiomViolation, CocycleViolation, CompatibilityViolation,
                     NotAnAction, NotFree, NotSameOrbit)
from .groupoid import (FiniteGroupoid, group_identity, make_groupoid,
                       pair_arrow_id, transformation_groupoid)


@dataclass(frozen=True)
class Correspondence:
    left: FiniteGroupoid
    right: FiniteGroupoid
    carrier: tuple
    rmap: dict
    smap: dict
    lact: dict
    ract: dict
    by_smap: dict = field(compare=False, default_factory=dict)

    def r(self, x):
        return self.rmap[x]

    def s(self, x):
        return self.smap[x]

    def act_left(self, h, x):
        return self.lact[(h, x)]

    def act_right(self, x, g):
        return self.ract[(x, g)]

    def points_with_s(self, obj):
        """Carrier points whose right anchor is the given G-object."""
        return self.by_smap.get(obj, ())

    def __repr__(self):
        return (f"Correspondence({len(self.carrier)} points: "
                f"{len(self.left.objects)}-object left <- "
                f"{len(self.right.objects)}-object right)")


def make_correspondence(left, right, carrier, rmap, smap, lact, ract) -> Correspondence:
    """Build a correspondence, checking every action law exhaustively.

    Raises AxiomViolation (or NotFree) with a witness on the first failure;
    in particular partial tables — a missing entry on the stated domain or a
    stray entry off it — are rejected.
    """
    carrier = tuple(sorted(carrier))
    if len(set(carrier)) != len(carrier):
        raise AxiomViolation("duplicate-point", carrier)
    pts = set(carrier)
    rmap, smap, lact, ract = dict(rmap), dict(smap), dict(lact), dict(ract)

    for x in carrier:
        if x not in rmap or rmap[x] not in set(left.objects):
            raise AxiomViolation("rmap-total", x)
        if x not in smap or smap[x] not in set(right.objects):
            raise AxiomViolation("smap-total", x)
    for table, kind in ((rmap, "rmap"), (smap, "smap")):
        for x in table:
            if x not in pts:
                raise AxiomViolation(f"{kind}-unknown-point", x)

    # exact domains
    for (x, g), y in ract.items():
        if x not in pts or g not in set(right.arrows) or y not in pts:
            raise AxiomViolation("ract-unknown", (x, g, y))
        if smap[x] != right.dst[g]:
            raise AxiomViolation("ract-extra-pair", (x, g))
    for x in carrier:
        for g in right.arrows:
            if smap[x] == right.dst[g] and (x, g) not in ract:
                raise AxiomViolation("ract-missing-pair", (x, g))
    for (h, x), y in lact.items():
        if x not in pts or h not in set(left.arrows) or y not in pts:
            raise AxiomViolation("lact-unknown", (h, x, y))
        if left.src[h] != rmap[x]:
            raise AxiomViolation("lact-extra-pair", (h, x))
    for x in carrier:
        for h in left.arrows:
            if left.src[h] == rmap[x] and (h, x) not in lact:
                raise AxiomViolation("lact-missing-pair", (h, x))

    # right action laws: unit, associativity, anchors s(x*g) = s(g), r(x*g) = r(x)
    for x in carrier:
        if ract[(x, right.unit[smap[x]])] != x:
            raise AxiomViolation("right-unit", x)
    for (x, g), y in ract.items():
        if smap[y] != right.src[g]:
            raise AxiomViolation("right-anchor", (x, g))
        if rmap[y] != rmap[x]:
            raise AxiomViolation("right-preserves-r", (x, g))
        for g2 in right.arrows:
            if right.composable(g, g2):
                if ract[(y, g2)] != ract[(x, right.mul(g, g2))]:
                    raise AxiomViolation("right-associativity", (x, g, g2))

    # left action laws
    for x in carrier:
        if lact[(left.unit[rmap[x]], x)] != x:
            raise AxiomViolation("left-unit", x)
    for (h, x), y in lact.items():
        if rmap[y] != left.dst[h]:
            raise AxiomViolation("left-anchor", (h, x))
        if smap[y] != smap[x]:
            raise AxiomViolation("left-preserves-s", (h, x))
        for h2 in left.arrows:
            if left.composable(h2, h):
                if lact[(h2, y)] != lact[(left.mul(h2, h), x)]:
                    raise AxiomViolation("left-associativity", (h2, h, x))

    # the two actions commute
    for (h, x), y in lact.items():
        for g in right.arrows:
            if smap[x] == right.dst[g]:
                if ract[(y, g)] != lact[(h, ract[(x, g)])]:
                    raise AxiomViolation("actions-commute", (h, x, g))

    # freeness of the right action
    for (x, g), y in ract.items():
        if y == x and g != right.unit[smap[x]]:
            raise NotFree(x, g)

    by_smap = {}
    for x in carrier:
        by_smap.setdefault(smap[x], []).append(x)

    return Correspondence(left, right, carrier, rmap, smap, lact, ract,
                          by_smap={k: tuple(v) for k, v in by_smap.items()})


def validate_correspondence(X: Correspondence) -> Correspondence:
    """Re-run the full validation on an existing instance."""
    return make_correspondence(X.left, X.right, X.carrier, X.rmap, X.smap,
                               X.lact, X.ract)


# -- right orbits ----------------------------------------------------------


@dataclass(frozen=True)
class OrbitDecomposition:
    classes: tuple      # tuple of tuples, each sorted; classes sorted by rep
    reps: tuple         # lexicographically least member of each class
    class_of: dict      # point -> class index

    def __len__(self):
        return len(self.classes)


def orbit_decomposition(X: Correspondence) -> OrbitDecomposition:
    """Partition the carrier into right-G-orbits.

    The representative of each class is its lexicographically least point and
    classes are sorted by representative, so indices are canonical.
    """
    seen = {}
    classes = []
    for x in X.carrier:
        if x in seen:
            continue
        todo = [x]
        members = {x}
        seen[x] = True
        while todo:
            y = todo.pop()
            for g in X.right.range_fiber(X.smap[y]):
                z = X.ract[(y, g)]
                if z not in members:
                    members.add(z)
                    seen[z] = True
                    todo.append(z)
        classes.append(tuple(sorted(members)))
    classes.sort(key=lambda c: c[0])
    class_of = {}
    for i, cls in enumerate(classes):
        for x in cls:
            class_of[x] = i
    return OrbitDecomposition(tuple(classes), tuple(c[0] for c in classes),
                              class_of)


def bracket(X: Correspondence, x1, x2):
    """<x1|x2>: the unique right arrow g with x2 = x1*g.

    Raises NotSameOrbit when no such arrow exists.  Uniqueness is forced by
    freeness of the right action.
    """
    if x1 not in X.smap or x2 not in X.smap:
        raise AxiomViolation("unknown-point", (x1, x2))
    for g in X.right.range_fiber(X.smap[x1]):
        if X.ract[(x1, g)] == x2:
            return g
    raise NotSameOrbit(x1, x2)


# -- classification ----------------------------------------------------------


@dataclass(frozen=True)
class CorrespondenceClass:
    proper: bool
    tight: bool
    orbit_count: int

    def as_dict(self):
        return {"proper": self.proper, "tight": self.tight,
                "orbit_count": self.orbit_count}


def classify(X: Correspondence) -> CorrespondenceClass:
    """Properness/tightness flags.

    Every finite correspondence is proper.  It is tight when the map
    (right orbit) -> H^0 induced by rmap is a bijection.
    """
    orbits = orbit_decomposition(X)
    images = [X.rmap[rep] for rep in orbits.reps]
    tight = (len(set(images)) == len(images)
             and set(images) == set(X.left.objects))
    return CorrespondenceClass(proper=True, tight=tight,
                               orbit_count=len(orbits))


# -- builders ----------------------------------------------------------------


def identity_correspondence(G: FiniteGroupoid) -> Correspondence:
    """The arrow space of G as a correspondence G <- G (the unit 1_G)."""
    return make_correspondence(
        left=G, right=G,
        carrier=G.arrows,
        rmap=dict(G.dst),
        smap=dict(G.src),
        lact={(h, x): G.mul(h, x)
              for h in G.arrows for x in G.arrows if G.composable(h, x)},
        ract={(x, g): G.mul(x, g)
              for x in G.arrows for g in G.arrows if G.composable(x, g)},
    )


def point_id(a, g) -> str:
    return f"({a},{g})"


def check_group_action(group: FiniteGroupoid, pi: Mapping, letters):
    """Validate pi: (element, letter) -> letter as a left group action."""
    e = group_identity(group)
    letters = list(letters)
    for g in group.arrows:
        for a in letters:
            if (g, a) not in pi or pi[(g, a)] not in set(letters):
                raise NotAnAction((g, a))
    for a in letters:
        if pi[(e, a)] != a:
            raise NotAnAction((e, a), f"unit moves letter {a!r}")
    for g in group.arrows:
        for h in group.arrows:
            gh = group.mul(g, h)
            for a in letters:
                if pi[(gh, a)] != pi[(g, pi[(h, a)])]:
                    raise NotAnAction((g, h, a))


def check_cocycle_table(group: FiniteGroupoid, target: FiniteGroupoid,
                        pi: Mapping, phi: Mapping, letters):
    """Validate phi: (element, letter) -> target-element against

        (h1*h2)|_x = h1|_{h2.x} * h2|_x

    for all pairs and letters.  ``target`` may differ from ``group``.
    """
    for g in group.arrows:
        for a in letters:
            if (g, a) not in phi or phi[(g, a)] not in set(target.arrows):
                raise AxiomViolation("cocycle-total", (g, a))
    for h1 in group.arrows:
        for h2 in group.arrows:
            h12 = group.mul(h1, h2)
            for a in letters:
                lhs = phi[(h12, a)]
                rhs = target.mul(phi[(h1, pi[(h2, a)])], phi[(h2, a)])
                if lhs != rhs:
                    raise CocycleViolation(h1, h2, a, lhs, rhs)


def self_similar_group_correspondence(group: FiniteGroupoid, alphabet,
                                      pi: Mapping, phi: Mapping) -> Correspondence:
    """The correspondence of a self-similar action of a finite group.

    Carrier A x G over the one-object groupoid of ``group`` on both sides:

        h.(x, g) = (pi(h, x), phi(h, x)*g)        (x, g).g2 = (x, g*g2)

    ``pi`` must be an action on the alphabet and ``phi`` a cocycle for it.
    The result is tight iff the alphabet is a single letter.
    """
    alphabet = sorted(alphabet)
    check_group_action(group, pi, alphabet)
    check_cocycle_table(group, group, pi, phi, alphabet)
    star = group.objects[0]
    carrier = [point_id(a, g) for a in alphabet for g in group.arrows]
    parts = {point_id(a, g): (a, g) for a in alphabet for g in group.arrows}
    ract = {}
    lact = {}
    for x, (a, g) in parts.items():
        for g2 in group.arrows:
            ract[(x, g2)] = point_id(a, group.mul(g, g2))
        for h in group.arrows:
            lact[(h, x)] = point_id(pi[(h, a)], group.mul(phi[(h, a)], g))
    return make_correspondence(
        left=group, right=group,
        carrier=carrier,
        rmap={x: star for x in carrier},
        smap={x: star for x in carrier},
        lact=lact,
        ract=ract,
    )


def cocycle_gauge(group: FiniteGroupoid, target: FiniteGroupoid, pi: Mapping,
                  phi: Mapping, psi: Mapping, letters) -> dict:
    """Gauge transform phi^psi(h, x) = psi(pi_h(x))^-1 * phi(h, x) * psi(x).

    ``psi`` maps letters to target-group elements.  Gauge transforms of
    cocycles are cocycles; the output is re-validated before being returned.
    """
    letters = sorted(letters)
    for a in letters:
        if a not in psi or psi[a] not in set(target.arrows):
            raise AxiomViolation("gauge-total", a)
    out = {}
    for h in group.arrows:
        for a in letters:
            out[(h, a)] = target.mul(
                target.mul(target.inverse(psi[pi[(h, a)]]), phi[(h, a)]),
                psi[a])
    check_cocycle_table(group, target, pi, out, letters)
    return out


def self_similar_graph_correspondence(group: FiniteGroupoid, vertices,
                                      act_v: Mapping, edges, redge: Mapping,
                                      sedge: Mapping, act_e: Mapping,
                                      phi: Mapping) -> Correspondence:
    """Correspondence of a self-similar action of a group on a finite graph.

    Both legs are the transformation groupoid Gamma x| V.  The carrier is
    E x Gamma with

        r(e, g) = r(e)              s(e, g) = g^-1 . s(e)
        (e, g).(g2, v) = (e, g*g2)  (h, v).(e, g) = (h.e, phi(h, e)*g)

    Preconditions checked: act_v and act_e are actions, phi is a cocycle for
    act_e, and the anchors are compatible with the action:

        s(h.e) = phi(h, e).s(e)     r(h.e) = h.r(e)

    (CompatibilityViolation("source"/"range") on failure).
    """
    vertices = sorted(vertices)
    edges = sorted(edges)
    check_group_action(group, act_v, vertices)
    check_group_action(group, act_e, edges)
    check_cocycle_table(group, group, act_e, phi, edges)
    for e in edges:
        if redge.get(e) not in set(vertices) or sedge.get(e) not in set(vertices):
            raise AxiomViolation("edge-anchor-total", e)
    for h in group.arrows:
        for e in edges:
            if sedge[act_e[(h, e)]] != act_v[(phi[(h, e)], sedge[e])]:
                raise CompatibilityViolation("source", (h, e))
            if redge[act_e[(h, e)]] != act_v[(h, redge[e])]:
                raise CompatibilityViolation("range", (h, e))

    tg = transformation_groupoid(group, act_v, vertices)
    carrier = [point_id(e, g) for e in edges for g in group.arrows]
    parts = {point_id(e, g): (e, g) for e in edges for g in group.arrows}
    rmap = {}
    smap = {}
    for x, (e, g) in parts.items():
        rmap[x] = redge[e]
        smap[x] = act_v[(group.inverse(g), sedge[e])]
    ract = {}
    lact = {}
    for x, (e, g) in parts.items():
        # right: arrows (g2, v) of the transformation groupoid with
        # dst = g2.v equal to smap[x]; the result is (e, g*g2).
        for g2 in group.arrows:
            for v in vertices:
                if act_v[(g2, v)] == smap[x]:
                    ract[(x, pair_arrow_id(g2, v))] = point_id(e, group.mul(g, g2))
        # left: arrows (h, v) with src = v equal to rmap[x] = r(e).
        for h in group.arrows:
            lact[(pair_arrow_id(h, rmap[x]), x)] = \
                point_id(act_e[(h, e)], group.mul(phi[(h, e)], g))
    return make_correspondence(
        left=tg, right=tg,
        carrier=carrier,
        rmap=rmap,
        smap=smap,
        lact=lact,
        ract=ract,
    )
