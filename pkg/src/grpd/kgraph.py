"""Higher-rank graphs from colored skeletons, and their groupoid diagrams.

A rank-k graph is presented by a skeleton - vertices plus one edge set per
color - together with factorisation squares.  Colors are ordered by name, a
path word is *canonical* when its colors ascend left to right (composition
order: word (w1, ..., wn) means w1 o w2 o ... o wn with s(w_t) = r(w_{t+1})),
and ``factor`` rewrites each composable ascending pair b o c into its unique
descending form c' o b'.  Requiring that rewrite to be a bijection between
the two kinds of pairs is exactly the unique-factorisation property in
degrees e_i + e_j; for k >= 3 an extra hexagon condition (the two ways of
reversing a three-color word agree) makes degree-wise factorisation globally
consistent, and it is checked square by square.

Two consumers are built on top:

* ``kgraph_fibration`` - the path category truncated at a degree bound,
  fibred over the truncated free abelian monoid N^k.  This is the route that
  feeds Cuntz-Pimsner presentation emission.
* ``diagram_from_kgraph`` - the degree-d truncated path spaces as a diagram
  of correspondences over a MonoidIndex, with concatenate-then-normalize
  structure maps.  An optional group block (a self-similar action on the
  skeleton) twists this route: paths acquire group decorations and the
  structure maps interleave the action and its restriction cocycle.

Both routes validate against the same bicategory machinery, so agreement
between them is a real cross-check rather than a tautology.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bicategory import compose, make_two_arrow, unitor_left, unitor_right
from .category import FibrationFunctor, make_category, make_functor
from .correspondence import (check_cocycle_table, check_group_action,
                             identity_correspondence, make_correspondence,
                             point_id, self_similar_graph_correspondence)
from .diagrams import Diagram, MonoidIndex
from .errors import (AxiomViolation, CompatibilityViolation,
                     FactorizationNotBijective, HexagonViolation, InputError)
from .groupoid import space_as_groupoid, transformation_groupoid


@dataclass(frozen=True)
class KGraphGroup:
    """Self-similar group data on a skeleton: a group groupoid acting on
    vertices and edges with a restriction cocycle phi: (g, e) -> g|_e."""

    group: object            # FiniteGroupoid with a single object
    act_v: dict              # (g, v) -> v
    act_e: dict              # (g, e) -> e
    phi: dict                # (g, e) -> group element


@dataclass(frozen=True)
class KGraph:
    vertices: tuple
    colors: tuple
    edges: dict              # color -> tuple of edge ids
    redge: dict
    sedge: dict
    factor: dict             # (b, c) ascending -> (c2, b2) descending
    factor_rev: dict
    color_of: dict
    group: KGraphGroup | None = None

    @property
    def rank(self) -> int:
        return len(self.colors)

    def all_edges(self):
        for c in self.colors:
            yield from self.edges[c]


def make_kgraph(vertices, edges, redge, sedge, factor=(), group=None) -> KGraph:
    vertices = tuple(sorted(vertices))
    if len(set(vertices)) != len(vertices):
        raise AxiomViolation("duplicate-vertex", vertices)
    colors = tuple(sorted(edges))
    edges = {c: tuple(sorted(edges[c])) for c in colors}
    color_of = {}
    for c in colors:
        for e in edges[c]:
            if e in color_of:
                raise AxiomViolation("duplicate-edge", e)
            color_of[e] = c
    redge, sedge = dict(redge), dict(sedge)
    for e in color_of:
        if redge.get(e) not in set(vertices):
            raise AxiomViolation("redge-total", e)
        if sedge.get(e) not in set(vertices):
            raise AxiomViolation("sedge-total", e)
    for table, kind in ((redge, "redge"), (sedge, "sedge")):
        for e in table:
            if e not in color_of:
                raise AxiomViolation(f"{kind}-unknown-edge", e)

    factor = dict(factor)
    factor_rev = {}
    for (b, c), (c2, b2) in factor.items():
        for e in (b, c, c2, b2):
            if e not in color_of:
                raise FactorizationNotBijective(f"unknown edge {e!r}")
        if not (color_of[b] < color_of[c]):
            raise FactorizationNotBijective(
                f"key ({b!r}, {c!r}) is not color-ascending")
        if color_of[b] != color_of[b2] or color_of[c] != color_of[c2]:
            raise FactorizationNotBijective(
                f"square ({b!r}, {c!r}) does not preserve colors")
        if sedge[b] != redge[c] or sedge[c2] != redge[b2]:
            raise FactorizationNotBijective(
                f"square ({b!r}, {c!r}) is not composable")
        if redge[b] != redge[c2] or sedge[c] != sedge[b2]:
            raise FactorizationNotBijective(
                f"square ({b!r}, {c!r}) moves the endpoints")
        if (c2, b2) in factor_rev:
            raise FactorizationNotBijective(
                f"descending pair ({c2!r}, {b2!r}) hit twice")
        factor_rev[(c2, b2)] = (b, c)
    for i, ci in enumerate(colors):
        for cj in colors[i + 1:]:
            for b in edges[ci]:
                for c in edges[cj]:
                    if sedge[b] == redge[c] and (b, c) not in factor:
                        raise FactorizationNotBijective(
                            f"ascending pair ({b!r}, {c!r}) has no square")
            for c2 in edges[cj]:
                for b2 in edges[ci]:
                    if sedge[c2] == redge[b2] and (c2, b2) not in factor_rev:
                        raise FactorizationNotBijective(
                            f"descending pair ({c2!r}, {b2!r}) is not hit")

    kg = KGraph(vertices, colors, edges, redge, sedge, factor, factor_rev,
                color_of, None)
    if kg.rank >= 3:
        _check_hexagons(kg)
    if group is not None:
        kg = KGraph(vertices, colors, edges, redge, sedge, factor, factor_rev,
                    color_of, _check_group(kg, group))
    return kg


def _check_hexagons(kg: KGraph):
    """Reverse each strictly-ascending three-color word two ways; the results
    must agree edge for edge."""
    def swap(u, v):
        return kg.factor[(u, v)]

    for i, ci in enumerate(kg.colors):
        for j in range(i + 1, len(kg.colors)):
            for l in range(j + 1, len(kg.colors)):
                cj, cl = kg.colors[j], kg.colors[l]
                for x in kg.edges[ci]:
                    for y in kg.edges[cj]:
                        if kg.sedge[x] != kg.redge[y]:
                            continue
                        for z in kg.edges[cl]:
                            if kg.sedge[y] != kg.redge[z]:
                                continue
                            z1, y1 = swap(y, z)
                            z2, x1 = swap(x, z1)
                            y2, x2 = swap(x1, y1)
                            y3, x3 = swap(x, y)
                            z3, x4 = swap(x3, z)
                            z4, y4 = swap(y3, z3)
                            if (z2, y2, x2) != (z4, y4, x4):
                                raise HexagonViolation((x, y, z))


def _check_group(kg: KGraph, group: KGraphGroup) -> KGraphGroup:
    G = group.group
    if len(G.objects) != 1:
        raise AxiomViolation("not-a-group", G.objects)
    check_group_action(G, group.act_v, kg.vertices)
    all_edges = tuple(kg.all_edges())
    check_group_action(G, group.act_e, all_edges)
    for g in G.arrows:
        for e in all_edges:
            ge = group.act_e[(g, e)]
            if kg.color_of[ge] != kg.color_of[e]:
                raise CompatibilityViolation("color", (g, e))
            if kg.redge[ge] != group.act_v[(g, kg.redge[e])]:
                raise CompatibilityViolation("range", (g, e))
            if (g, e) not in group.phi:
                raise CompatibilityViolation("cocycle-total", (g, e))
            if kg.sedge[ge] != group.act_v[(group.phi[(g, e)], kg.sedge[e])]:
                raise CompatibilityViolation("source", (g, e))
    check_cocycle_table(G, G, group.act_e, group.phi, all_edges)
    for (b, c), (c2, b2) in kg.factor.items():
        for g in G.arrows:
            gb = group.act_e[(g, b)]
            gc = group.act_e[(group.phi[(g, b)], c)]
            want = (group.act_e[(g, c2)],
                    group.act_e[(group.phi[(g, c2)], b2)])
            if kg.factor.get((gb, gc)) != want:
                raise CompatibilityViolation("factorization", (g, b, c))
    return group


# -- canonical path words ------------------------------------------------------


def normalize_word(kg: KGraph, seq) -> tuple:
    """Bubble a composable edge word into its canonical color-ascending form
    using the factorisation squares.  Each adjacent descending pair is one
    rewrite, and the inversion count drops by one per rewrite."""
    w = list(seq)
    for t in range(len(w) - 1):
        if kg.sedge[w[t]] != kg.redge[w[t + 1]]:
            raise InputError(f"word is not composable at position {t}")
    changed = True
    while changed:
        changed = False
        for t in range(len(w) - 1):
            if kg.color_of[w[t]] > kg.color_of[w[t + 1]]:
                w[t], w[t + 1] = kg.factor_rev[(w[t], w[t + 1])]
                changed = True
    return tuple(w)


def word_degree(kg: KGraph, word) -> tuple:
    return tuple(sum(1 for e in word if kg.color_of[e] == c)
                 for c in kg.colors)


def canonical_words(kg: KGraph, max_degree) -> dict:
    """All canonical words of each degree <= max_degree (componentwise),
    keyed by degree tuple.  Degree zero is represented per-vertex as ()."""
    if len(max_degree) != kg.rank:
        raise InputError("max_degree must have one entry per color")
    words = {(0,) * kg.rank: [()]}
    frontier = [()]
    while frontier:
        nxt = []
        for w in frontier:
            last_color = kg.color_of[w[-1]] if w else kg.colors[0]
            tail = kg.sedge[w[-1]] if w else None
            for c in kg.colors:
                if w and c < last_color:
                    continue
                deg = word_degree(kg, w)
                idx = kg.colors.index(c)
                if deg[idx] + 1 > max_degree[idx]:
                    continue
                for e in kg.edges[c]:
                    if w and kg.redge[e] != tail:
                        continue
                    w2 = w + (e,)
                    words.setdefault(word_degree(kg, w2), []).append(w2)
                    nxt.append(w2)
        frontier = nxt
    return {d: sorted(ws) for d, ws in words.items()}


def path_name(word, vertex=None) -> str:
    if word:
        return ".".join(word)
    return f"id_{vertex}"


def degree_name(kg: KGraph, d) -> str:
    parts = []
    for c, n in zip(kg.colors, d):
        parts.extend([c] * n)
    return ".".join(parts) if parts else "1"


def _word_dst(kg: KGraph, word, vertex=None):
    return kg.redge[word[0]] if word else vertex


def _word_src(kg: KGraph, word, vertex=None):
    return kg.sedge[word[-1]] if word else vertex


def kgraph_fibration(kg: KGraph, max_degree=None) -> FibrationFunctor:
    """Truncated path category of the skeleton, fibred over truncated N^k by
    degree.  A group block, if any, is ignored: this is the plain route."""
    if max_degree is None:
        max_degree = (3,) if kg.rank == 1 else (2,) * kg.rank
    words = canonical_words(kg, max_degree)
    degrees = sorted(words)

    base_obj = ["*"]
    base_id = {d: degree_name(kg, d) for d in degrees}
    zero = (0,) * kg.rank
    base_comp = {}
    for d1 in degrees:
        for d2 in degrees:
            d = tuple(a + b for a, b in zip(d1, d2))
            if d in base_id:
                base_comp[(base_id[d1], base_id[d2])] = base_id[d]
    base = make_category(base_obj, [base_id[d] for d in degrees],
                         {base_id[d]: "*" for d in degrees},
                         {base_id[d]: "*" for d in degrees},
                         {"*": base_id[zero]}, base_comp)

    mor = {}           # id -> (word, anchor vertex or None)
    for d in degrees:
        for w in words[d]:
            if w:
                mor[path_name(w)] = (w, None)
    for v in kg.vertices:
        mor[path_name((), v)] = ((), v)
    src = {m: _word_src(kg, w, v) for m, (w, v) in mor.items()}
    dst = {m: _word_dst(kg, w, v) for m, (w, v) in mor.items()}
    identity = {v: path_name((), v) for v in kg.vertices}
    comp = {}
    for m1, (w1, v1) in mor.items():
        for m2, (w2, v2) in mor.items():
            if src[m1] != dst[m2]:
                continue
            d = tuple(a + b for a, b in
                      zip(word_degree(kg, w1), word_degree(kg, w2)))
            if d not in base_id:
                continue
            w = normalize_word(kg, w1 + w2)
            comp[(m1, m2)] = path_name(w, v1 if not w else None)
    E = make_category(kg.vertices, list(mor), src, dst, identity, comp)
    on_obj = {v: "*" for v in kg.vertices}
    on_mor = {m: base_id[word_degree(kg, w)] for m, (w, v) in mor.items()}
    return make_functor(E, base, on_obj, on_mor)


# -- diagrams of truncated path spaces -----------------------------------------


def diagram_from_kgraph(kg: KGraph, max_degree=None) -> Diagram:
    """Degree-d path spaces as a diagram over the free abelian monoid on the
    colors, twisted by the group block when present."""
    if max_degree is None:
        max_degree = (3,) if kg.rank == 1 else (2,) * kg.rank
    words = canonical_words(kg, max_degree)
    degrees = sorted(words)
    zero = (0,) * kg.rank
    index = MonoidIndex(kg.colors, commuting=True)

    def key_of(d) -> tuple:
        out = []
        for c, n in zip(kg.colors, d):
            out.extend([c] * n)
        return tuple(out)

    names = {d: {path_name(w): w for w in words[d]}
             for d in degrees if d != zero}

    if kg.group is None:
        node = space_as_groupoid(kg.vertices)
        fibres = {}
        for d in degrees:
            if d == zero:
                fibres[zero] = identity_correspondence(node)
                continue
            carrier = names[d]
            fibres[d] = make_correspondence(
                left=node, right=node, carrier=carrier,
                rmap={m: _word_dst(kg, w) for m, w in carrier.items()},
                smap={m: _word_src(kg, w) for m, w in carrier.items()},
                lact={(_word_dst(kg, w), m): m for m, w in carrier.items()},
                ract={(m, _word_src(kg, w)): m for m, w in carrier.items()},
            )
    else:
        gb = kg.group
        G = gb.group
        node = transformation_groupoid(G, gb.act_v, kg.vertices)

        def act_path(g, w):
            out, cur = [], g
            for e in w:
                out.append(gb.act_e[(cur, e)])
                cur = gb.phi[(cur, e)]
            return tuple(out), cur

        fibres = {}
        split = {}      # (degree, carrier point id) -> (path id, group el)
        for d in degrees:
            if d == zero:
                fibres[zero] = identity_correspondence(node)
                continue
            act_e, phi = {}, {}
            for g in G.arrows:
                for m, w in names[d].items():
                    gw, rest = act_path(g, w)
                    act_e[(g, m)] = path_name(gw)
                    phi[(g, m)] = rest
                    split[(d, point_id(m, g))] = (m, g)
            fibres[d] = self_similar_graph_correspondence(
                G, kg.vertices, gb.act_v, list(names[d]),
                {m: _word_dst(kg, w) for m, w in names[d].items()},
                {m: _word_src(kg, w) for m, w in names[d].items()},
                act_e, phi)

    diagram_words = {key_of(d): fibres[d] for d in degrees}
    sigma = {}
    for d1 in degrees:
        for d2 in degrees:
            d = tuple(a + b for a, b in zip(d1, d2))
            if d not in fibres:
                continue
            u, v = key_of(d1), key_of(d2)
            if d1 == zero:
                sigma[(u, v)] = unitor_left(fibres[d2])
                continue
            if d2 == zero:
                sigma[(u, v)] = unitor_right(fibres[d1])
                continue
            cmp_ = compose(fibres[d1], fibres[d2])
            mapping = {}
            for cid in cmp_.carrier:
                x, y = cmp_.rep[cid]
                if kg.group is None:
                    mapping[cid] = path_name(
                        normalize_word(kg, names[d1][x] + names[d2][y]))
                else:
                    p1, g1 = split[(d1, x)]
                    p2, g2 = split[(d2, y)]
                    gw2, rest = act_path(g1, names[d2][p2])
                    nid = path_name(normalize_word(kg, names[d1][p1] + gw2))
                    mapping[cid] = point_id(nid, G.mul(rest, g2))
            sigma[(u, v)] = make_two_arrow(cmp_.correspondence, fibres[d],
                                           mapping)
    return Diagram(index=index, nodes={"*": node}, words=diagram_words,
                   sigma=sigma)
