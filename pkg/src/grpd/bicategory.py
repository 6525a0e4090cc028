"""Composition of correspondences and the coherence data of the bicategory.

compose(X, Y) for X: H <- G and Y: G <- K is the orbit space of the diagonal
G-action g.(x, y) = (x*g^-1, g*y) on the fibre product
{(x, y) : s(x) = r(y)}, with anchors r[x,y] = r(x), s[x,y] = s(y) and actions
on representatives h.[x,y] = [h.x, y], [x,y].k = [x, y.k].

2-arrows are injective, anchor-preserving, biequivariant carrier maps.  The
unitors, the associator, and the triangle/pentagon identities are all checked
pointwise on classes - at finite scale coherence is a computation, not a
theorem to trust.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .correspondence import (Correspondence, identity_correspondence,
                             make_correspondence)
from .errors import AxiomViolation, EndpointMismatch


def class_id(x, y) -> str:
    # JSON-encoding keeps ids collision-free even when point ids contain
    # separator characters (composed points nest).
    return json.dumps([x, y], separators=(",", ":"))


@dataclass(frozen=True)
class Composition:
    """A composed correspondence together with its quotient bookkeeping."""

    correspondence: Correspondence
    class_of: dict      # fibre pair (x, y) -> class id
    rep: dict           # class id -> lexicographically least pair

    @property
    def carrier(self):
        return self.correspondence.carrier


def compose(X: Correspondence, Y: Correspondence) -> Composition:
    """X o_G Y.  Raises EndpointMismatch unless X.right == Y.left."""
    if X.right != Y.left:
        raise EndpointMismatch(
            "right groupoid of the first factor differs from left groupoid "
            "of the second")
    G = X.right
    pairs = [(x, y) for x in X.carrier for y in Y.carrier
             if X.smap[x] == Y.rmap[y]]
    pair_set = set(pairs)
    class_of = {}
    rep = {}
    for p in pairs:
        if p in class_of:
            continue
        todo = [p]
        members = {p}
        while todo:
            (x, y) = todo.pop()
            # g ranges over arrows with s(g) = s(x) = r(y)
            for g in G.arrows:
                if G.src[g] != X.smap[x]:
                    continue
                q = (X.ract[(x, G.inverse(g))], Y.lact[(g, y)])
                if q not in members:
                    if q not in pair_set:
                        raise AxiomViolation("diagonal-action-escape", q)
                    members.add(q)
                    todo.append(q)
        least = min(members)
        cid = class_id(*least)
        rep[cid] = least
        for q in members:
            class_of[q] = cid

    carrier = sorted(rep)
    rmap = {}
    smap = {}
    for cid in carrier:
        (x, y) = rep[cid]
        rmap[cid] = X.rmap[x]
        smap[cid] = Y.smap[y]
    lact = {}
    ract = {}
    for cid in carrier:
        (x, y) = rep[cid]
        for h in X.left.arrows:
            if X.left.src[h] == rmap[cid]:
                lact[(h, cid)] = class_of[(X.lact[(h, x)], y)]
        for k in Y.right.arrows:
            if Y.right.dst[k] == smap[cid]:
                ract[(cid, k)] = class_of[(x, Y.ract[(y, k)])]
    corr = make_correspondence(X.left, Y.right, carrier, rmap, smap, lact, ract)
    return Composition(corr, class_of, rep)


# -- 2-arrows ----------------------------------------------------------------


@dataclass(frozen=True)
class TwoArrow:
    source: Correspondence
    target: Correspondence
    mapping: dict

    def __call__(self, x):
        return self.mapping[x]


def make_two_arrow(source: Correspondence, target: Correspondence,
                   mapping) -> TwoArrow:
    """Validate an injective biequivariant map of correspondences."""
    if source.left != target.left or source.right != target.right:
        raise EndpointMismatch("2-arrow endpoints do not share their legs")
    mapping = dict(mapping)
    for x in source.carrier:
        if x not in mapping:
            raise AxiomViolation("two-arrow-total", x)
        if mapping[x] not in set(target.carrier):
            raise AxiomViolation("two-arrow-range", (x, mapping[x]))
    for x in mapping:
        if x not in set(source.carrier):
            raise AxiomViolation("two-arrow-unknown-point", x)
    if len(set(mapping.values())) != len(source.carrier):
        raise AxiomViolation("two-arrow-injective", mapping)
    for x in source.carrier:
        if target.rmap[mapping[x]] != source.rmap[x] \
                or target.smap[mapping[x]] != source.smap[x]:
            raise AxiomViolation("two-arrow-anchors", x)
    for (h, x), y in source.lact.items():
        if mapping[y] != target.lact[(h, mapping[x])]:
            raise AxiomViolation("two-arrow-left-equivariance", (h, x))
    for (x, g), y in source.ract.items():
        if mapping[y] != target.ract[(mapping[x], g)]:
            raise AxiomViolation("two-arrow-right-equivariance", (x, g))
    return TwoArrow(source, target, mapping)


def identity_two_arrow(X: Correspondence) -> TwoArrow:
    return TwoArrow(X, X, {x: x for x in X.carrier})


def is_bijective(alpha: TwoArrow) -> bool:
    return len(alpha.source.carrier) == len(alpha.target.carrier)


def vertical_compose(beta: TwoArrow, alpha: TwoArrow) -> TwoArrow:
    """beta after alpha (both validated on construction, so just compose)."""
    if alpha.target != beta.source:
        raise EndpointMismatch("vertical composition endpoints do not match")
    return TwoArrow(alpha.source, beta.target,
                    {x: beta.mapping[alpha.mapping[x]] for x in alpha.source.carrier})


def horizontal_compose(alpha: TwoArrow, beta: TwoArrow,
                       comp_src: Composition | None = None,
                       comp_dst: Composition | None = None) -> TwoArrow:
    """alpha o beta on composites: [x, y] -> [alpha(x), beta(y)]."""
    if comp_src is None:
        comp_src = compose(alpha.source, beta.source)
    if comp_dst is None:
        comp_dst = compose(alpha.target, beta.target)
    mapping = {}
    for cid in comp_src.carrier:
        (x, y) = comp_src.rep[cid]
        mapping[cid] = comp_dst.class_of[(alpha.mapping[x], beta.mapping[y])]
    return make_two_arrow(comp_src.correspondence, comp_dst.correspondence,
                          mapping)


def unitor_left(X: Correspondence, comp=None) -> TwoArrow:
    """1_H o X -> X, [h, x] -> h.x."""
    if comp is None:
        comp = compose(identity_correspondence(X.left), X)
    mapping = {}
    for cid in comp.carrier:
        (h, x) = comp.rep[cid]
        mapping[cid] = X.lact[(h, x)]
    return make_two_arrow(comp.correspondence, X, mapping)


def unitor_right(X: Correspondence, comp=None) -> TwoArrow:
    """X o 1_G -> X, [x, g] -> x.g."""
    if comp is None:
        comp = compose(X, identity_correspondence(X.right))
    mapping = {}
    for cid in comp.carrier:
        (x, g) = comp.rep[cid]
        mapping[cid] = X.ract[(x, g)]
    return make_two_arrow(comp.correspondence, X, mapping)


def associator(X1: Correspondence, X2: Correspondence,
               X3: Correspondence) -> TwoArrow:
    """X1 o (X2 o X3) -> (X1 o X2) o X3, [x1, [x2, x3]] -> [[x1, x2], x3]."""
    c23 = compose(X2, X3)
    lhs = compose(X1, c23.correspondence)
    c12 = compose(X1, X2)
    rhs = compose(c12.correspondence, X3)
    mapping = {}
    for cid in lhs.carrier:
        (x1, c23id) = lhs.rep[cid]
        (x2, x3) = c23.rep[c23id]
        mapping[cid] = rhs.class_of[(c12.class_of[(x1, x2)], x3)]
    return make_two_arrow(lhs.correspondence, rhs.correspondence, mapping)


# -- coherence ---------------------------------------------------------------


@dataclass
class CoherenceReport:
    checks: list
    failures: list

    @property
    def passed(self):
        return not self.failures

    def record(self, name, ok, witness=None):
        self.checks.append((name, bool(ok)))
        if not ok:
            self.failures.append((name, witness))


def _maps_equal(a: TwoArrow, b: TwoArrow):
    """Pointwise equality of two 2-arrows with the same source."""
    for x in a.source.carrier:
        if a.mapping[x] != b.mapping[x]:
            return False, (x, a.mapping[x], b.mapping[x])
    return True, None


def triangle_identity(X: Correspondence, Y: Correspondence,
                      report: CoherenceReport | None = None,
                      name: str = "triangle") -> CoherenceReport:
    """(unitor_right(X) o 1_Y) after associator == 1_X o unitor_left(Y)

    as maps X o (1_G o Y) -> X o Y.
    """
    if report is None:
        report = CoherenceReport([], [])
    one = identity_correspondence(X.right)
    assoc = associator(X, one, Y)
    route_a = vertical_compose(
        horizontal_compose(unitor_right(X), identity_two_arrow(Y),
                           comp_src=None, comp_dst=None),
        assoc)
    route_b = horizontal_compose(identity_two_arrow(X), unitor_left(Y))
    ok, witness = _maps_equal(route_a, route_b)
    report.record(name, ok, witness)
    return report


def pentagon_identity(X1, X2, X3, X4,
                      report: CoherenceReport | None = None) -> CoherenceReport:
    """Both associator routes X1 o (X2 o (X3 o X4)) -> ((X1 o X2) o X3) o X4."""
    if report is None:
        report = CoherenceReport([], [])
    c34 = compose(X3, X4)
    c234 = compose(X2, c34.correspondence)
    c12 = compose(X1, X2)
    c123 = compose(c12.correspondence, X3)

    # route A: two associators
    a1 = associator(X1, X2, c34.correspondence)
    a2 = associator(c12.correspondence, X3, X4)
    route_a = vertical_compose(a2, a1)

    # route B: 1 o assoc, middle assoc, assoc o 1
    c23 = compose(X2, X3)
    b1 = horizontal_compose(identity_two_arrow(X1), associator(X2, X3, X4))
    b2 = associator(X1, c23.correspondence, X4)
    b3 = horizontal_compose(associator(X1, X2, X3), identity_two_arrow(X4))
    route_b = vertical_compose(b3, vertical_compose(b2, b1))

    if route_a.source != route_b.source or route_a.target != route_b.target:
        report.record("pentagon-endpoints", False,
                      (route_a.target.carrier, route_b.target.carrier))
        return report
    ok, witness = _maps_equal(route_a, route_b)
    report.record("pentagon", ok, witness)
    return report


def naturality_squares(alpha: TwoArrow, beta: TwoArrow | None = None,
                       gamma: TwoArrow | None = None,
                       report: CoherenceReport | None = None) -> CoherenceReport:
    """Naturality of the unitors in ``alpha`` and, when ``beta`` and
    ``gamma`` make a horizontally composable triple, of the associator."""
    if report is None:
        report = CoherenceReport([], [])
    X, Xp = alpha.source, alpha.target
    one_h = identity_two_arrow(identity_correspondence(X.left))
    one_g = identity_two_arrow(identity_correspondence(X.right))

    lhs = vertical_compose(alpha, unitor_left(X))
    rhs = vertical_compose(unitor_left(Xp), horizontal_compose(one_h, alpha))
    ok, witness = _maps_equal(lhs, rhs)
    report.record("unitor-left-natural", ok, witness)

    lhs = vertical_compose(alpha, unitor_right(X))
    rhs = vertical_compose(unitor_right(Xp), horizontal_compose(alpha, one_g))
    ok, witness = _maps_equal(lhs, rhs)
    report.record("unitor-right-natural", ok, witness)

    if beta is not None and gamma is not None:
        lhs = vertical_compose(
            associator(alpha.target, beta.target, gamma.target),
            horizontal_compose(alpha, horizontal_compose(beta, gamma)))
        rhs = vertical_compose(
            horizontal_compose(horizontal_compose(alpha, beta), gamma),
            associator(alpha.source, beta.source, gamma.source))
        ok, witness = _maps_equal(lhs, rhs)
        report.record("associator-natural", ok, witness)
    return report


def check_coherence(X1, X2, X3=None, X4=None) -> CoherenceReport:
    """Unitor/associator bijectivity plus triangle (and pentagon, given four
    composable correspondences) on a chain X1: G0 <- G1, X2: G1 <- G2, ...
    """
    report = CoherenceReport([], [])
    chain = [X for X in (X1, X2, X3, X4) if X is not None]
    for i, X in enumerate(chain):
        report.record(f"unitor-left-bijective[{i}]", is_bijective(unitor_left(X)))
        report.record(f"unitor-right-bijective[{i}]", is_bijective(unitor_right(X)))
    for i in range(len(chain) - 1):
        triangle_identity(chain[i], chain[i + 1], report, name=f"triangle[{i}]")
    for i in range(len(chain) - 2):
        report.record(f"associator-bijective[{i}]",
                      is_bijective(associator(chain[i], chain[i + 1], chain[i + 2])))
    if len(chain) == 4:
        pentagon_identity(X1, X2, X3, X4, report)
    return report
