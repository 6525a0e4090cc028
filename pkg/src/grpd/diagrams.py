"""Diagrams of correspondences indexed by a category or a monoid.

A diagram assigns a groupoid to each index object, a correspondence X_w to
each index morphism/word w it covers, and a bijective two-arrow

    sigma[(u, v)] : X_u o X_v  ->  X_{uv}

to each covered composable pair.  ``validate_diagram`` re-derives every
composition, re-checks every sigma, and tests the coherence square

    sigma_{uv,w} . (sigma_{u,v} o 1) . assoc  =  sigma_{u,vw} . (1 o sigma_{v,w})

on every triple for which all the data is present.  Indexing by a
``MonoidIndex`` (a free or free abelian monoid on named generators) lets an
infinite index shape be represented by finitely many low-degree words, which
is how truncated path spaces of graphs enter.

A diagram over a category whose node groupoids are all *spaces* is the same
thing as a discrete Conduche fibration: ``diagram_to_fibration`` glues the
carriers into a total category (composition read off through the sigmas) and
``fibration_to_diagram`` slices a fibration back into fibre correspondences.
The two constructions are mutually inverse up to the chosen identifications,
and the fibration side is where Cuntz-Pimsner presentations are emitted.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bicategory import (associator, compose, horizontal_compose,
                         identity_two_arrow, is_bijective, make_two_arrow,
                         vertical_compose)
from .category import (FibrationFunctor, FiniteCategory, check_conduche,
                       make_category, make_functor)
from .correspondence import Correspondence, make_correspondence
from .errors import (AxiomViolation, CoherenceViolation, CorrespondenceMismatch,
                     InputError, NodeNotDiscrete, NotConduche, UnknownWord)
from .groupoid import space_as_groupoid
from .module import ModuleElement, mu, two_arrow_isometry


@dataclass(frozen=True)
class MonoidIndex:
    """Free monoid on ``generators``; free abelian if ``commuting``."""

    generators: tuple
    commuting: bool = True

    def normal(self, word) -> tuple:
        word = tuple(word)
        for g in word:
            if g not in self.generators:
                raise UnknownWord(g)
        return tuple(sorted(word)) if self.commuting else word

    def compose(self, u, v) -> tuple:
        return self.normal(tuple(u) + tuple(v))

    def unit(self) -> tuple:
        return ()


def word_id(w) -> str:
    """Printable name of a monoid word."""
    if isinstance(w, tuple):
        return ".".join(w) if w else "1"
    return str(w)


@dataclass(frozen=True)
class Diagram:
    index: object               # FiniteCategory | MonoidIndex
    nodes: dict                 # index object -> FiniteGroupoid
    words: dict                 # morphism id / word tuple -> Correspondence
    sigma: dict                 # (u, v) -> TwoArrow onto words[uv]

    def has_word(self, w) -> bool:
        try:
            return _normal(self, w) in self.words
        except UnknownWord:
            return False


def _normal(d: Diagram, w):
    if isinstance(d.index, MonoidIndex):
        if isinstance(w, (tuple, list)):
            return d.index.normal(w)
        if w in d.index.generators:
            return (w,)
        raise UnknownWord(w)
    return w


def _word_endpoints(d: Diagram, w):
    """(left node key, right node key) of the word w."""
    if isinstance(d.index, MonoidIndex):
        return "*", "*"
    return d.index.dst[w], d.index.src[w]


def _index_compose(d: Diagram, u, v):
    """The index composite uv, or None when the index does not provide it."""
    if isinstance(d.index, MonoidIndex):
        return d.index.compose(u, v)
    return d.index.comp.get((u, v))


def fiber(d: Diagram, w) -> Correspondence:
    key = _normal(d, w)
    if key not in d.words:
        raise UnknownWord(w)
    return d.words[key]


def multiply(d: Diagram, u, xi: ModuleElement, v, eta: ModuleElement) -> ModuleElement:
    """Product-system multiplication X_u x X_v -> X_{uv}: the composition
    pairing followed by the structure isomorphism sigma."""
    u, v = _normal(d, u), _normal(d, v)
    if u not in d.words or v not in d.words:
        raise UnknownWord(u if u not in d.words else v)
    if (u, v) not in d.sigma:
        raise UnknownWord((u, v))
    if xi.correspondence != d.words[u]:
        raise CorrespondenceMismatch("first factor lives on the wrong fibre")
    if eta.correspondence != d.words[v]:
        raise CorrespondenceMismatch("second factor lives on the wrong fibre")
    comp = compose(d.words[u], d.words[v])
    return two_arrow_isometry(d.sigma[(u, v)], mu(comp, [(xi, eta)]))


def _check_square(d: Diagram, p, q, t):
    Xp, Xq, Xt = d.words[p], d.words[q], d.words[t]
    pq = _index_compose(d, p, q)
    qt = _index_compose(d, q, t)
    Xpq, Xqt = d.words[pq], d.words[qt]
    c_pq = compose(Xp, Xq)
    c_qt = compose(Xq, Xt)
    c_pq_t = compose(c_pq.correspondence, Xt)
    c_p_qt = compose(Xp, c_qt.correspondence)
    c_Xpq_t = compose(Xpq, Xt)
    c_p_Xqt = compose(Xp, Xqt)

    route1 = vertical_compose(
        d.sigma[(pq, t)],
        vertical_compose(
            horizontal_compose(d.sigma[(p, q)], identity_two_arrow(Xt),
                               comp_src=c_pq_t, comp_dst=c_Xpq_t),
            associator(Xp, Xq, Xt)))
    route2 = vertical_compose(
        d.sigma[(p, qt)],
        horizontal_compose(identity_two_arrow(Xp), d.sigma[(q, t)],
                           comp_src=c_p_qt, comp_dst=c_p_Xqt))
    for z in c_p_qt.carrier:
        if route1.mapping[z] != route2.mapping[z]:
            raise CoherenceViolation(
                (p, q, t), (z, route1.mapping[z], route2.mapping[z]))


def validate_diagram(d: Diagram) -> dict:
    """Re-derive and re-check all diagram data; returns check counts."""
    if isinstance(d.index, MonoidIndex):
        if set(d.nodes) != {"*"}:
            raise AxiomViolation("monoid-diagram-nodes", sorted(d.nodes))
        for w in d.words:
            if d.index.normal(w) != w:
                raise AxiomViolation("word-not-normal", w)
    elif isinstance(d.index, FiniteCategory):
        if set(d.nodes) != set(d.index.objects):
            raise AxiomViolation("node-mapping-not-total", sorted(d.nodes))
        for w in d.words:
            if w not in set(d.index.morphisms):
                raise UnknownWord(w)
    else:
        raise InputError(f"unsupported diagram index {type(d.index).__name__}")

    for w, X in d.words.items():
        lk, rk = _word_endpoints(d, w)
        if X.left != d.nodes[lk] or X.right != d.nodes[rk]:
            raise AxiomViolation("word-endpoints", w)

    squares = 0
    for (u, v), alpha in d.sigma.items():
        if u not in d.words or v not in d.words:
            raise UnknownWord(u if u not in d.words else v)
        uv = _index_compose(d, u, v)
        if uv is None or uv not in d.words:
            raise AxiomViolation("sigma-target-missing", (u, v))
        comp = compose(d.words[u], d.words[v])
        if alpha.source != comp.correspondence or alpha.target != d.words[uv]:
            raise AxiomViolation("sigma-legs", (u, v))
        checked = make_two_arrow(alpha.source, alpha.target, alpha.mapping)
        if not is_bijective(checked):
            raise AxiomViolation("sigma-not-bijective", (u, v))

    for (p, q) in d.sigma:
        for (q2, t) in d.sigma:
            if q2 != q:
                continue
            pq = _index_compose(d, p, q)
            qt = _index_compose(d, q, t)
            if pq not in d.words or qt not in d.words:
                continue
            if (pq, t) not in d.sigma or (p, qt) not in d.sigma:
                continue
            _check_square(d, p, q, t)
            squares += 1
    return {"words": len(d.words), "sigmas": len(d.sigma), "squares": squares}


# -- fibrations <-> diagrams ---------------------------------------------------


def fibration_to_diagram(F: FibrationFunctor) -> Diagram:
    """Slice a discrete Conduche fibration into fibre correspondences.

    Node at x: the set F^{-1}(x) of objects over x, as a space groupoid.
    Word at g: x -> y: the morphisms over g, anchored by their endpoints.
    sigma for a defined base composite reads composition upstairs.
    """
    ok, witness = check_conduche(F)
    if not ok:
        raise NotConduche(witness)
    E, C = F.total, F.base

    nodes = {}
    over_obj = {x: [X for X in E.objects if F.on_objects[X] == x]
                for x in C.objects}
    for x in C.objects:
        nodes[x] = space_as_groupoid(over_obj[x])

    words = {}
    for g in C.morphisms:
        carrier = [a for a in E.morphisms if F.on_morphisms[a] == g]
        # space groupoids act trivially: the only arrow at an object is the
        # object itself
        words[g] = make_correspondence(
            left=nodes[C.dst[g]], right=nodes[C.src[g]], carrier=carrier,
            rmap={a: E.dst[a] for a in carrier},
            smap={a: E.src[a] for a in carrier},
            lact={(E.dst[a], a): a for a in carrier},
            ract={(a, E.src[a]): a for a in carrier},
        )

    sigma = {}
    for (g, h), gh in C.comp.items():
        comp = compose(words[g], words[h])
        mapping = {}
        for cid in comp.carrier:
            a, b = comp.rep[cid]
            if (a, b) not in E.comp:
                raise AxiomViolation("fibration-composition-undefined", (a, b))
            mapping[cid] = E.comp[(a, b)]
        sigma[(g, h)] = make_two_arrow(comp.correspondence, words[gh], mapping)
    return Diagram(index=C, nodes=nodes, words=words, sigma=sigma)


def diagram_to_fibration(d: Diagram) -> FibrationFunctor:
    """Glue a category-indexed diagram of spaces into a fibration.

    Every node groupoid must be a space (NodeNotDiscrete otherwise), every
    identity word must be the identity correspondence of its node up to the
    canonical anchoring, and a sigma must be present for each defined base
    composite.  Uniqueness of factorisation lifting falls out of the sigmas
    being bijections, because the middle groupoids are spaces and orbit
    classes are singleton pairs.
    """
    if not isinstance(d.index, FiniteCategory):
        raise InputError("only category-indexed diagrams glue to fibrations")
    C = d.index
    for x, G in d.nodes.items():
        if not G.is_space():
            raise NodeNotDiscrete(x)
    for g in C.morphisms:
        if g not in d.words:
            raise UnknownWord(g)

    objects, on_objects = [], {}
    for x in C.objects:
        for v in d.nodes[x].objects:
            if v in on_objects:
                raise AxiomViolation("node-object-collision", v)
            on_objects[v] = x
            objects.append(v)

    morphisms, on_morphisms, src, dst = [], {}, {}, {}
    for g in C.morphisms:
        X = d.words[g]
        for a in X.carrier:
            if a in on_morphisms:
                raise AxiomViolation("word-carrier-collision", a)
            on_morphisms[a] = g
            morphisms.append(a)
            src[a] = X.smap[a]
            dst[a] = X.rmap[a]

    identity = {}
    for x in C.objects:
        X = d.words[C.identity[x]]
        for a in X.carrier:
            if X.rmap[a] != X.smap[a]:
                raise AxiomViolation("unit-word-not-identity", a)
            if X.rmap[a] in identity:
                raise AxiomViolation("unit-word-not-identity", a)
            identity[X.rmap[a]] = a
        for v in d.nodes[x].objects:
            if v not in identity:
                raise AxiomViolation("unit-word-not-identity", v)

    comp = {}
    for (g, h), gh in C.comp.items():
        if (g, h) not in d.sigma:
            raise AxiomViolation("missing-sigma", (g, h))
        alpha = d.sigma[(g, h)]
        cmp_gh = compose(d.words[g], d.words[h])
        if alpha.source != cmp_gh.correspondence or alpha.target != d.words[gh]:
            raise AxiomViolation("sigma-legs", (g, h))
        for (a, b), cid in cmp_gh.class_of.items():
            comp[(a, b)] = alpha.mapping[cid]

    E = make_category(objects, morphisms, src, dst, identity, comp)
    return make_functor(E, C, on_objects, on_morphisms)
