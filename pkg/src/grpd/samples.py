"""Named example objects and seeded random generators.

The named fixtures are the recurring small cases: the point, cyclic groups,
pair groupoids, the two-loop graph, the swap action of Z/2, and the familiar
rank-2 graphs with one red loop and two blue loops.  The random generators
produce structures that are *always* lawful - correspondences come out of
free-bimodule cells or twisted group constructions whose laws hold by
design - so property tests can range over them without filtering.
"""

from __future__ import annotations

import random

from .bicategory import make_two_arrow
from .category import FibrationFunctor, make_category, make_functor
from .correspondence import (Correspondence, make_correspondence,
                             identity_correspondence, point_id,
                             self_similar_graph_correspondence,
                             self_similar_group_correspondence)
from .groupoid import (FiniteGroupoid, disjoint_union, group_as_groupoid,
                       group_identity, make_groupoid, space_as_groupoid,
                       transformation_groupoid)
from .kgraph import KGraph, KGraphGroup, make_kgraph
from .selfsimilar import (SelfSimilarAction, automaton_self_similar_action,
                          finite_self_similar_action)


# -- groupoids -------------------------------------------------------------


def pt() -> FiniteGroupoid:
    return space_as_groupoid(["*"])


def space(points) -> FiniteGroupoid:
    return space_as_groupoid(points)


def cyclic(n: int) -> FiniteGroupoid:
    """Z/n with elements e, a, a2, ..."""
    names = ["e"] + [f"a{i}" if i > 1 else "a" for i in range(1, n)]
    table = {(names[i], names[j]): names[(i + j) % n]
             for i in range(n) for j in range(n)}
    return group_as_groupoid(table)


def z2() -> FiniteGroupoid:
    return cyclic(2)


def z3() -> FiniteGroupoid:
    return cyclic(3)


def pair(n: int) -> FiniteGroupoid:
    """Pair groupoid on n points: one arrow (i,j): j -> i per ordered pair."""
    pts = [str(i) for i in range(1, n + 1)]
    arrows = [f"({i},{j})" for i in pts for j in pts]
    return make_groupoid(
        objects=pts,
        arrows=arrows,
        src={f"({i},{j})": j for i in pts for j in pts},
        dst={f"({i},{j})": i for i in pts for j in pts},
        unit={i: f"({i},{i})" for i in pts},
        inv={f"({i},{j})": f"({j},{i})" for i in pts for j in pts},
        comp={(f"({i},{j})", f"({j},{k})"): f"({i},{k})"
              for i in pts for j in pts for k in pts},
    )


def swap_groupoid() -> FiniteGroupoid:
    """Transformation groupoid of Z/2 swapping two points."""
    G = z2()
    action = {("e", "1"): "1", ("e", "2"): "2",
              ("a", "1"): "2", ("a", "2"): "1"}
    return transformation_groupoid(G, action, ["1", "2"])


def mixed6() -> FiniteGroupoid:
    """Z/2 next to the pair groupoid on two points: six arrows, two kinds of
    isotropy."""
    return disjoint_union(z2(), pair(2))


# -- correspondences -------------------------------------------------------


def graph_correspondence(vertices, edges, redge, sedge) -> Correspondence:
    """Edges of a finite graph as a correspondence over its vertex space."""
    node = space_as_groupoid(vertices)
    return make_correspondence(
        left=node, right=node, carrier=edges,
        rmap=dict(redge), smap=dict(sedge),
        lact={(redge[e], e): e for e in edges},
        ract={(e, sedge[e]): e for e in edges},
    )


def o2x() -> Correspondence:
    """Two loops on one vertex - the graph whose algebra is O_2."""
    return graph_correspondence(["v"], ["e1", "e2"],
                                {"e1": "v", "e2": "v"},
                                {"e1": "v", "e2": "v"})


def z2_identity() -> Correspondence:
    return identity_correspondence(z2())


def ss_z2() -> Correspondence:
    """Self-similar Z/2 on two letters: swap with constant cocycle a."""
    G = z2()
    pi = {("e", "0"): "0", ("e", "1"): "1",
          ("a", "0"): "1", ("a", "1"): "0"}
    phi = {("e", "0"): "e", ("e", "1"): "e",
           ("a", "0"): "a", ("a", "1"): "a"}
    return self_similar_group_correspondence(G, ["0", "1"], pi, phi)


def exel_pardo() -> Correspondence:
    """Z/2 acting on the two-loop graph by swapping the loops, restriction
    constant a."""
    G = z2()
    act_v = {("e", "v"): "v", ("a", "v"): "v"}
    act_e = {("e", "e1"): "e1", ("e", "e2"): "e2",
             ("a", "e1"): "e2", ("a", "e2"): "e1"}
    phi = {("e", "e1"): "e", ("e", "e2"): "e",
           ("a", "e1"): "a", ("a", "e2"): "a"}
    return self_similar_graph_correspondence(
        G, ["v"], act_v, ["e1", "e2"],
        {"e1": "v", "e2": "v"}, {"e1": "v", "e2": "v"}, act_e, phi)


def free_bimodule(H: FiniteGroupoid, G: FiniteGroupoid, cells) -> Correspondence:
    """Correspondence freely generated by ``cells`` = [(u, v), ...] with u an
    object of H and v an object of G: points (h; c; g) for src(h) = u_c,
    dst(g) = v_c, actions by outer translation.  Always lawful and free."""
    carrier, rmap, smap, lact, ract = [], {}, {}, {}, {}
    for c, (u, v) in enumerate(cells):
        for h in H.arrows:
            if H.src[h] != u:
                continue
            for g in G.arrows:
                if G.dst[g] != v:
                    continue
                x = f"({h};{c};{g})"
                carrier.append(x)
                rmap[x] = H.dst[h]
                smap[x] = G.src[g]
    for x in carrier:
        h, c, g = _split_cell(x)
        for h2 in H.arrows:
            if H.composable(h2, h):
                lact[(h2, x)] = f"({H.mul(h2, h)};{c};{g})"
        for g2 in G.arrows:
            if G.composable(g, g2):
                ract[(x, g2)] = f"({h};{c};{G.mul(g, g2)})"
    return make_correspondence(H, G, carrier, rmap, smap, lact, ract)


def _split_cell(x: str):
    h, c, g = x[1:-1].split(";")
    return h, c, g


# -- k-graphs ---------------------------------------------------------------


def o2x_kgraph() -> KGraph:
    return make_kgraph(["v"], {"p": ["e1", "e2"]},
                       {"e1": "v", "e2": "v"}, {"e1": "v", "e2": "v"})


def o2x_selfsimilar_kgraph() -> KGraph:
    """The two-loop graph carrying the swap action of Z/2."""
    G = z2()
    group = KGraphGroup(
        group=G,
        act_v={("e", "v"): "v", ("a", "v"): "v"},
        act_e={("e", "e1"): "e1", ("e", "e2"): "e2",
               ("a", "e1"): "e2", ("a", "e2"): "e1"},
        phi={("e", "e1"): "e", ("e", "e2"): "e",
             ("a", "e1"): "a", ("a", "e2"): "a"},
    )
    return make_kgraph(["v"], {"p": ["e1", "e2"]},
                       {"e1": "v", "e2": "v"}, {"e1": "v", "e2": "v"},
                       group=group)


def kg21(theta: str = "id") -> KGraph:
    """Rank-2 graph on one vertex with blue loops b1, b2 and red loop c1;
    the factorisation permutes the blue loops by ``theta``."""
    perm = {"id": {"b1": "b1", "b2": "b2"},
            "swap": {"b1": "b2", "b2": "b1"}}[theta]
    anchors = {e: "v" for e in ("b1", "b2", "c1")}
    factor = {("b1", "c1"): ("c1", perm["b1"]),
              ("b2", "c1"): ("c1", perm["b2"])}
    return make_kgraph(["v"], {"blue": ["b1", "b2"], "red": ["c1"]},
                       anchors, dict(anchors), factor)


def kgraph3(valid: bool = True):
    """Rank-3 graph on one vertex: three x-loops, one y-loop, one z-loop.
    The x<->y square transposes x1,x2 and the x<->z square cycles all three;
    those permutations commute exactly when both are read in the same order,
    so flipping the x<->y square to a transposition that does not commute
    with the 3-cycle (valid=False) breaks the hexagon."""
    xs = ["x1", "x2", "x3"]
    anchors = {e: "v" for e in xs + ["y1", "z1"]}
    sigma = {"x1": "x2", "x2": "x1", "x3": "x3"}     # transposition (x1 x2)
    tau = {"x1": "x2", "x2": "x3", "x3": "x1"}       # 3-cycle
    if valid:
        tau = dict(sigma)                            # equal permutations commute
    factor = {}
    for e in xs:
        factor[(e, "y1")] = ("y1", sigma[e])
        factor[(e, "z1")] = ("z1", tau[e])
    factor[("y1", "z1")] = ("z1", "y1")
    return make_kgraph(["v"], {"x": xs, "y": ["y1"], "z": ["z1"]},
                       anchors, dict(anchors), factor)


# -- categories and fibrations ----------------------------------------------


def arrow_fibration() -> FibrationFunctor:
    """Two parallel lifts of a single base arrow; unique factorisation
    lifting holds trivially."""
    base = make_category(
        ["x", "y"], ["idx", "idy", "f"],
        {"idx": "x", "idy": "y", "f": "x"},
        {"idx": "x", "idy": "y", "f": "y"},
        {"x": "idx", "y": "idy"},
        {("idx", "idx"): "idx", ("idy", "idy"): "idy",
         ("f", "idx"): "f", ("idy", "f"): "f"},
    )
    E = make_category(
        ["X1", "Y1", "Y2"], ["iX1", "iY1", "iY2", "a1", "a2"],
        {"iX1": "X1", "iY1": "Y1", "iY2": "Y2", "a1": "X1", "a2": "X1"},
        {"iX1": "X1", "iY1": "Y1", "iY2": "Y2", "a1": "Y1", "a2": "Y2"},
        {"X1": "iX1", "Y1": "iY1", "Y2": "iY2"},
        {("iX1", "iX1"): "iX1", ("iY1", "iY1"): "iY1", ("iY2", "iY2"): "iY2",
         ("a1", "iX1"): "a1", ("iY1", "a1"): "a1",
         ("a2", "iX1"): "a2", ("iY2", "a2"): "a2"},
    )
    return make_functor(E, base,
                        {"X1": "x", "Y1": "y", "Y2": "y"},
                        {"iX1": "idx", "iY1": "idy", "iY2": "idy",
                         "a1": "f", "a2": "f"})


def broken_conduche_fibration() -> FibrationFunctor:
    """A composite base arrow whose lift does not factor: the factorisation
    h o g of the image of psi has no lift at all (count 0)."""
    base = make_category(
        ["u", "v", "w"], ["idu", "idv", "idw", "g", "h", "hg"],
        {"idu": "u", "idv": "v", "idw": "w", "g": "u", "h": "v", "hg": "u"},
        {"idu": "u", "idv": "v", "idw": "w", "g": "v", "h": "w", "hg": "w"},
        {"u": "idu", "v": "idv", "w": "idw"},
        {("idu", "idu"): "idu", ("idv", "idv"): "idv", ("idw", "idw"): "idw",
         ("g", "idu"): "g", ("idv", "g"): "g",
         ("h", "idv"): "h", ("idw", "h"): "h",
         ("hg", "idu"): "hg", ("idw", "hg"): "hg",
         ("h", "g"): "hg"},
    )
    E = make_category(
        ["U", "V", "W"], ["iU", "iV", "iW", "psi"],
        {"iU": "U", "iV": "V", "iW": "W", "psi": "U"},
        {"iU": "U", "iV": "V", "iW": "W", "psi": "W"},
        {"U": "iU", "V": "iV", "W": "iW"},
        {("iU", "iU"): "iU", ("iV", "iV"): "iV", ("iW", "iW"): "iW",
         ("psi", "iU"): "psi", ("iW", "psi"): "psi"},
    )
    return make_functor(E, base,
                        {"U": "u", "V": "v", "W": "w"},
                        {"iU": "idu", "iV": "idv", "iW": "idw", "psi": "hg"})


# -- self-similar actions -----------------------------------------------------


def adding_machine() -> SelfSimilarAction:
    """Binary odometer: a swaps the first bit and carries into the tail."""
    return automaton_self_similar_action(
        alphabet=["0", "1"], generators=["a"],
        perm={("a", "0"): "1", ("a", "1"): "0"},
        restrict={("a", "0"): (), ("a", "1"): ("a",)},
    )


def z2_table_action(good: bool = True) -> SelfSimilarAction:
    """Swap action of Z/2 on two letters.  The good restriction table is the
    constant cocycle a; the bad one borrows the adding machine's restriction
    (carry on 1 only), which no order-two element can support."""
    G = z2()
    pi = {("e", "0"): "0", ("e", "1"): "1",
          ("a", "0"): "1", ("a", "1"): "0"}
    if good:
        phi = {("e", "0"): "e", ("e", "1"): "e",
               ("a", "0"): "a", ("a", "1"): "a"}
    else:
        phi = {("e", "0"): "e", ("e", "1"): "e",
               ("a", "0"): "e", ("a", "1"): "a"}
    return finite_self_similar_action(G, ["0", "1"], pi, phi)


# -- seeded random generators --------------------------------------------------


GROUPOID_FAMILIES = ("space1", "space2", "space3", "z2", "z3", "z4",
                     "pair2", "pair3", "swap", "mixed6")


def random_groupoid(rng: random.Random) -> FiniteGroupoid:
    name = rng.choice(GROUPOID_FAMILIES)
    if name.startswith("space"):
        n = int(name[-1])
        return space_as_groupoid([f"p{i}" for i in range(n)])
    if name.startswith("z"):
        return cyclic(int(name[1]))
    if name.startswith("pair"):
        return pair(int(name[-1]))
    if name == "swap":
        return swap_groupoid()
    return mixed6()


def random_correspondence(rng: random.Random,
                          left: FiniteGroupoid | None = None,
                          right: FiniteGroupoid | None = None) -> Correspondence:
    """A lawful random correspondence between the given (or random) legs,
    built from 1-3 free-bimodule cells."""
    left = left if left is not None else random_groupoid(rng)
    right = right if right is not None else random_groupoid(rng)
    ncells = rng.randint(1, 3)
    cells = [(rng.choice(left.objects), rng.choice(right.objects))
             for _ in range(ncells)]
    return free_bimodule(left, right, cells)


def random_tight_correspondence(rng: random.Random,
                                left: FiniteGroupoid | None = None
                                ) -> Correspondence:
    """A random tight correspondence, optionally over a prescribed left leg.

    With ``left`` given the output composes on the right of anything whose
    right leg equals ``left``; the available kinds narrow to those that can
    live over that groupoid (identity always can).
    """
    if left is None:
        kind = rng.choice(["identity", "permutation", "one-letter"])
    elif len(left.arrows) == len(left.objects):
        kind = rng.choice(["identity", "permutation"])
    elif len(left.objects) == 1:
        kind = rng.choice(["identity", "one-letter"])
    else:
        kind = "identity"
    if kind == "identity":
        return identity_correspondence(left if left is not None
                                       else random_groupoid(rng))
    if kind == "permutation":
        pts = (sorted(left.objects) if left is not None
               else [f"p{i}" for i in range(rng.randint(2, 4))])
        n = len(pts)
        img = pts[:]
        rng.shuffle(img)
        return graph_correspondence(pts, [f"e{i}" for i in range(n)],
                                    {f"e{i}": img[i] for i in range(n)},
                                    {f"e{i}": pts[i] for i in range(n)})
    G = left if left is not None else cyclic(rng.randint(2, 3))
    e = group_identity(G)
    pi = {(g, "0"): "0" for g in G.arrows}
    psi = {"0": rng.choice(sorted(G.arrows))}
    phi = {(g, "0"): G.mul(G.inverse(psi["0"]), G.mul(g, psi["0"]))
           for g in G.arrows}
    assert phi[(e, "0")] == e
    return self_similar_group_correspondence(G, ["0"], pi, phi)


def random_chain(rng: random.Random, length: int):
    """Composable correspondences X1: G0 <- G1, X2: G1 <- G2, ..."""
    legs = [random_groupoid(rng) for _ in range(length + 1)]
    return [random_correspondence(rng, legs[i], legs[i + 1])
            for i in range(length)]


def random_self_similar_correspondence(rng: random.Random) -> Correspondence:
    """Twisted group correspondence: a cyclic group acting on letters with a
    gauge-of-homomorphism cocycle, lawful by construction."""
    n = rng.randint(2, 3)
    G = cyclic(n)
    e = group_identity(G)
    letters = [str(i) for i in range(rng.randint(1, 2))]
    # the generator rotates the letters only if their count divides n
    if len(letters) == 2 and n == 2:
        images = {letters[0]: letters[1], letters[1]: letters[0]}
    else:
        images = {x: x for x in letters}
    pi = {}
    for x in letters:
        pi[(e, x)] = x
        cur = x
        for k in range(1, n):
            cur = images[cur]
            g = "a" if k == 1 else f"a{k}"
            pi[(g, x)] = cur
    k = rng.randrange(n)
    rho = {}
    for i in range(n):
        gi = "e" if i == 0 else ("a" if i == 1 else f"a{i}")
        j = (i * k) % n
        rho[gi] = "e" if j == 0 else ("a" if j == 1 else f"a{j}")
    psi = {x: rng.choice(G.arrows) for x in letters}
    phi = {(g, x): G.mul(G.inverse(psi[pi[(g, x)]]), G.mul(rho[g], psi[x]))
           for g in G.arrows for x in letters}
    return self_similar_group_correspondence(G, letters, pi, phi)


def random_element_support(rng: random.Random, items, size: int):
    items = list(items)
    rng.shuffle(items)
    return items[:max(1, min(size, len(items)))]


def random_scalar(rng: random.Random):
    from .scalars import scalar
    from fractions import Fraction
    return scalar(Fraction(rng.randint(-3, 3), rng.randint(1, 3)),
                  Fraction(rng.randint(-3, 3), rng.randint(1, 3)))


def random_algebra_element(rng: random.Random, G: FiniteGroupoid, size: int = 3):
    from .algebra import make_element
    support = random_element_support(rng, G.arrows, size)
    return make_element(G, {g: random_scalar(rng) for g in support})


def random_module_element(rng: random.Random, X: Correspondence, size: int = 3):
    from .module import make_module_element
    support = random_element_support(rng, X.carrier, size)
    return make_module_element(X, {x: random_scalar(rng) for x in support})


def cell_swap_two_arrow(rng: random.Random, X: Correspondence):
    """An automorphism of a free-bimodule correspondence permuting cells with
    equal anchors; identity when no two cells match."""
    cells = {}
    for x in X.carrier:
        h, c, g = _split_cell(x)
        cells.setdefault(c, (X.left.src[h], X.right.dst[g]))
    groups = {}
    for c, anchors in cells.items():
        groups.setdefault(anchors, []).append(c)
    mapping_cells = {c: c for c in cells}
    swappable = [cs for cs in groups.values() if len(cs) >= 2]
    if swappable:
        cs = rng.choice(swappable)
        i, j = rng.sample(range(len(cs)), 2)
        mapping_cells[cs[i]], mapping_cells[cs[j]] = cs[j], cs[i]
    mapping = {}
    for x in X.carrier:
        h, c, g = _split_cell(x)
        mapping[x] = f"({h};{mapping_cells[c]};{g})"
    return make_two_arrow(X, X, mapping)
