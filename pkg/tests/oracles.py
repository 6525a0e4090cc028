"""Brute-force reference implementations the tests cross-check against.

Everything here is written from the definitions, independently of the
library's own algorithms: convolution by a full double loop, brackets by
exhaustive search, orbits by union-find, operator norms through dense
numpy matrices, and the adding machine through integer arithmetic.
"""

import numpy as np

from grpd.scalars import Scalar, scalar


ZERO = scalar(0)


def conv_bf(G, a_coeffs, b_coeffs):
    """Convolution as a double loop over all composable arrow pairs."""
    out = {}
    for h, ah in a_coeffs.items():
        for k, bk in b_coeffs.items():
            if G.src[h] == G.dst[k]:
                g = G.comp[(h, k)]
                out[g] = out.get(g, ZERO) + ah * bk
    return {g: z for g, z in out.items() if not z.is_zero()}


def star_bf(G, a_coeffs):
    """Involution from the definition: a*(g) = conj(a(g^-1))."""
    return {G.inv[g]: z.conjugate() for g, z in a_coeffs.items()
            if not z.is_zero()}


def regular_blocks_bf(G, a_coeffs):
    """One dense complex matrix per object: the action of ``a`` on the
    delta basis of arrows with a fixed source."""
    blocks = []
    for u in G.objects:
        basis = [g for g in G.arrows if G.src[g] == u]
        index = {g: i for i, g in enumerate(basis)}
        m = np.zeros((len(basis), len(basis)), dtype=complex)
        for h, z in a_coeffs.items():
            for k in basis:
                if G.src[h] == G.dst[k]:
                    m[index[G.comp[(h, k)]], index[k]] += z.to_complex()
        blocks.append(m)
    return blocks


def operator_norm_bf(G, a_coeffs) -> float:
    """Largest singular value over all regular-representation blocks."""
    norms = [np.linalg.norm(m, 2) for m in regular_blocks_bf(G, a_coeffs)
             if m.size]
    return float(max(norms, default=0.0))


def min_eigenvalue_bf(G, a_coeffs) -> float:
    """Smallest eigenvalue over the (assumed Hermitian) blocks of ``a``."""
    vals = [np.linalg.eigvalsh((m + m.conj().T) / 2).min()
            for m in regular_blocks_bf(G, a_coeffs) if m.size]
    return float(min(vals, default=0.0))


def bracket_bf(X, x1, x2):
    """The unique g with x1 . g = x2, by exhaustive search (None if absent)."""
    found = None
    for g in X.right.arrows:
        if (x1, g) in X.ract and X.ract[(x1, g)] == x2:
            assert found is None, "right action is not free"
            found = g
    return found


def orbits_bf(X):
    """Right-orbit partition via union-find, as a frozenset of frozensets."""
    parent = {x: x for x in X.carrier}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (x, _g), y in X.ract.items():
        parent[find(x)] = find(y)
    groups = {}
    for x in X.carrier:
        groups.setdefault(find(x), set()).add(x)
    return frozenset(frozenset(s) for s in groups.values())


def fibre_pairs_bf(X, Y):
    """All (x, y) with s_X(x) = r_Y(y)."""
    return [(x, y) for x in X.carrier for y in Y.carrier
            if X.smap[x] == Y.rmap[y]]


def composition_classes_bf(X, Y):
    """Orbit classes of the diagonal middle action on the fibre product,
    again via union-find on explicitly enumerated moves."""
    pairs = fibre_pairs_bf(X, Y)
    parent = {p: p for p in pairs}

    def find(p):
        while parent[p] != p:
            parent[p] = parent[parent[p]]
            p = parent[p]
        return p

    G = X.right
    for (x, y) in pairs:
        for g in G.arrows:
            if X.smap[x] == G.src[g] and (g, y) in Y.lact:
                moved = (X.ract[(x, G.inv[g])], Y.lact[(g, y)])
                parent[find((x, y))] = find(moved)
    groups = {}
    for p in pairs:
        groups.setdefault(find(p), set()).add(p)
    return frozenset(frozenset(s) for s in groups.values())


def inner_bf(X, xi_coeffs, eta_coeffs):
    """<xi|eta> = sum over same-orbit pairs of conj(xi(x1)) eta(x2) at the
    searched bracket arrow."""
    out = {}
    for x1, z1 in xi_coeffs.items():
        for x2, z2 in eta_coeffs.items():
            g = bracket_bf(X, x1, x2)
            if g is not None:
                out[g] = out.get(g, ZERO) + z1.conjugate() * z2
    return {g: z for g, z in out.items() if not z.is_zero()}


def binary_increment(word: str, k: int = 1) -> str:
    """Little-endian binary addition of ``k`` modulo 2**len(word)."""
    n = len(word)
    if n == 0:
        return word
    value = sum(int(c) << i for i, c in enumerate(word))
    value = (value + k) % (1 << n)
    return "".join(str((value >> i) & 1) for i in range(n))


def scalars_to_complex(coeffs):
    return {k: z.to_complex() for k, z in coeffs.items()}


def same_coeffs(a, b) -> bool:
    """Exact equality of two scalar-coefficient dicts (zeroes dropped)."""
    a = {k: z for k, z in a.items() if not z.is_zero()}
    b = {k: z for k, z in b.items() if not z.is_zero()}
    return a == b
