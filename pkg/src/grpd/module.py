"""Finitely supported sections of a correspondence as a Hilbert bimodule.

For X: H <- G the space S(X) of functions X -> Gaussian rationals carries

    right action   (xi * gamma)(x) = sum_{r(g) = s(x)} xi(x.g) gamma(g^-1)
    inner product  <xi|eta>(g)     = sum_{s(x) = r(g)} conj(xi(x)) eta(x.g)
    left action    (zeta * xi)(x)  = sum_{r(h) = r(x)} zeta(h) xi(h^-1.x)

with values/coefficients in the convolution algebras of G and H.  All three
are computed exactly by support-pair enumeration; the bracket <x|y> of the
carrier is the combinatorial core of the inner product.

Positivity of <xi|xi> is witnessed constructively: a transversal of the
orbits meeting supp(xi) is greedily split into slices T_i (both s- and
orbit-injective), and with phi_i the indicator of T_i and a_i = <xi|phi_i>
the exact identity <xi|xi> = sum_i a_i * a_i^* holds and is re-verified by
convolution before the witness is returned.

mu realises S(X) (x)_{S(G)} S(Y) ~= S(X o Y):

    mu(f1 (x) f2)([x, y]) = sum_{r(h) = s(x)} f1(x.h) f2(h^-1.y),

summing over arrows h of the middle groupoid; on deltas it sends
delta_x (x) delta_y to delta_{[x,y]} with coefficient 1, and it is isometric
for the tensor inner product <f1 (x) f2|f3 (x) f4> = <f2|<f1|f3> * f4>.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import AlgebraElement, make_element, matrix_operator_norm
from .bicategory import Composition, TwoArrow
from .correspondence import (Correspondence, bracket, orbit_decomposition)
from .errors import (AxiomViolation, CorrespondenceMismatch, GroupoidMismatch)
from .scalars import ONE, ZERO, Scalar


@dataclass(frozen=True)
class ModuleElement:
    correspondence: Correspondence
    coeffs: dict  # carrier point -> Scalar, no stored zeros

    def __call__(self, x) -> Scalar:
        return self.coeffs.get(x, ZERO)

    def support(self):
        return sorted(self.coeffs)

    def is_zero(self):
        return not self.coeffs

    def __add__(self, other):
        _same_correspondence(self, other)
        out = dict(self.coeffs)
        for x, c in other.coeffs.items():
            out[x] = out.get(x, ZERO) + c
        return make_module_element(self.correspondence, out)

    def __sub__(self, other):
        _same_correspondence(self, other)
        out = dict(self.coeffs)
        for x, c in other.coeffs.items():
            out[x] = out.get(x, ZERO) - c
        return make_module_element(self.correspondence, out)

    def scale(self, z: Scalar):
        return make_module_element(
            self.correspondence, {x: z * c for x, c in self.coeffs.items()})

    def __repr__(self):
        if not self.coeffs:
            return "ModuleElement(0)"
        terms = " + ".join(f"({c})d[{x}]" for x, c in sorted(self.coeffs.items()))
        return f"ModuleElement({terms})"


def _same_correspondence(a: ModuleElement, b: ModuleElement):
    if a.correspondence != b.correspondence:
        raise CorrespondenceMismatch(
            "module elements live over different correspondences")


def make_module_element(X: Correspondence, coeffs) -> ModuleElement:
    pts = set(X.carrier)
    clean = {}
    for x, c in coeffs.items():
        if x not in pts:
            raise AxiomViolation("element-unknown-point", x)
        if not isinstance(c, Scalar):
            raise AxiomViolation("element-not-scalar", (x, c))
        if not c.is_zero():
            clean[x] = c
    return ModuleElement(X, clean)


def zero_module_element(X: Correspondence) -> ModuleElement:
    return ModuleElement(X, {})


def delta_point(X: Correspondence, x, coefficient: Scalar = ONE) -> ModuleElement:
    return make_module_element(X, {x: coefficient})


def indicator_points(X: Correspondence, subset) -> ModuleElement:
    return make_module_element(X, {x: ONE for x in subset})


# -- the three bilinear operations ------------------------------------------


def right_action(xi: ModuleElement, gamma: AlgebraElement) -> ModuleElement:
    """xi * gamma.  Support form: xi(y) gamma(k) contributes at y.k."""
    X = xi.correspondence
    if gamma.groupoid != X.right:
        raise GroupoidMismatch("coefficient algebra is not the right leg")
    out = {}
    for y, c1 in xi.coeffs.items():
        for k, c2 in gamma.coeffs.items():
            if X.smap[y] == X.right.dst[k]:
                z = X.ract[(y, k)]
                out[z] = out.get(z, ZERO) + c1 * c2
    return make_module_element(X, out)


def left_action(zeta: AlgebraElement, xi: ModuleElement) -> ModuleElement:
    """zeta * xi.  Support form: zeta(h) xi(y) contributes at h.y."""
    X = xi.correspondence
    if zeta.groupoid != X.left:
        raise GroupoidMismatch("coefficient algebra is not the left leg")
    out = {}
    for h, c1 in zeta.coeffs.items():
        for y, c2 in xi.coeffs.items():
            if X.left.src[h] == X.rmap[y]:
                z = X.lact[(h, y)]
                out[z] = out.get(z, ZERO) + c1 * c2
    return make_module_element(X, out)


def inner(xi: ModuleElement, eta: ModuleElement) -> AlgebraElement:
    """<xi|eta> in the algebra of the right leg.

    Each same-orbit support pair (x, y) contributes conj(xi(x)) eta(y) at the
    bracket <x|y>; pairs in different orbits contribute nothing.
    """
    _same_correspondence(xi, eta)
    X = xi.correspondence
    orbits = orbit_decomposition(X)
    out = {}
    for x, c1 in xi.coeffs.items():
        for y, c2 in eta.coeffs.items():
            if orbits.class_of[x] != orbits.class_of[y]:
                continue
            g = bracket(X, x, y)
            out[g] = out.get(g, ZERO) + c1.conjugate() * c2
    return make_element(X.right, out)


def module_norm(xi: ModuleElement) -> float:
    """||xi|| = ||<xi|xi>||^(1/2)."""
    from .algebra import operator_norm
    return operator_norm(inner(xi, xi)) ** 0.5


# -- positivity --------------------------------------------------------------


@dataclass(frozen=True)
class PositivityWitness:
    slices: tuple         # tuple of tuples of carrier points
    indicators: tuple     # phi_i = indicator of slices[i], as ModuleElements
    coefficients: tuple   # a_i = <xi|phi_i>, AlgebraElements over the right leg


def _is_module_slice(X, orbits, points):
    smaps = {X.smap[t] for t in points}
    classes = {orbits.class_of[t] for t in points}
    return len(smaps) == len(points) and len(classes) == len(points)


def positivity_witness(xi: ModuleElement) -> PositivityWitness:
    """Constructive positivity of <xi|xi>.

    Takes the canonical transversal of orbits meeting supp(xi) (each class
    representative), splits it greedily into s-injective, orbit-injective
    slices T_i in first-fit order, and returns phi_i = indicator(T_i),
    a_i = <xi|phi_i>.  The exact identity

        <xi|xi> = sum_i a_i * a_i^*

    is verified by convolution before returning.
    """
    X = xi.correspondence
    orbits = orbit_decomposition(X)
    touched = sorted({orbits.class_of[x] for x in xi.coeffs})
    transversal = [orbits.reps[i] for i in touched]

    slices: list[list] = []
    for t in transversal:
        for sl in slices:
            if _is_module_slice(X, orbits, sl + [t]):
                sl.append(t)
                break
        else:
            slices.append([t])

    indicators = [indicator_points(X, sl) for sl in slices]
    coefficients = [inner(xi, phi) for phi in indicators]

    total = make_element(X.right, {})
    for a in coefficients:
        total = total + (a * a.star())
    if total != inner(xi, xi):
        raise AxiomViolation("positivity-witness-mismatch",
                             (xi.support(), total.support()))
    return PositivityWitness(tuple(tuple(sl) for sl in slices),
                             tuple(indicators), tuple(coefficients))


# -- rank-one operators -------------------------------------------------------


def theta(a: ModuleElement, b: ModuleElement, v: ModuleElement) -> ModuleElement:
    """theta_{a,b}(v) = a * <b|v>."""
    return right_action(a, inner(b, v))


def left_multiplier_rank_ones(X: Correspondence, f) -> list:
    """Pointwise multiplication by f(orbit class) as a finite sum of
    rank-ones.

    ``f`` maps class representatives to Scalars (absent classes act as 0).
    Returns pairs (a_c, b_c) with sum_c theta_{a_c, b_c} equal to the
    multiplier, verified exactly on every delta basis vector.
    """
    orbits = orbit_decomposition(X)
    reps = set(orbits.reps)
    f = dict(f)
    for c in f:
        if c not in reps:
            raise AxiomViolation("not-a-class-representative", c)
    pairs = []
    for rep_pt in orbits.reps:
        value = f.get(rep_pt, ZERO)
        if isinstance(value, Scalar) and value.is_zero():
            continue
        if not isinstance(value, Scalar):
            raise AxiomViolation("element-not-scalar", (rep_pt, value))
        pairs.append((delta_point(X, rep_pt, value), delta_point(X, rep_pt)))

    # verification on the delta basis
    for x in X.carrier:
        expected = f.get(orbits.reps[orbits.class_of[x]], ZERO)
        got = zero_module_element(X)
        for a, b in pairs:
            got = got + theta(a, b, delta_point(X, x))
        if got != delta_point(X, x, expected) and not (
                expected.is_zero() and got.is_zero()):
            raise AxiomViolation("rank-one-multiplier-mismatch", x)
    return pairs


# -- the composition isomorphism ----------------------------------------------


def mu(comp: Composition, pairs) -> ModuleElement:
    """mu(sum_i f_i (x) g_i) on S(X o Y).

    ``pairs`` is a list of (ModuleElement over X, ModuleElement over Y).
    Evaluated on the canonical representative of each class by summing over
    arrows h of the middle groupoid with r(h) = s(x):

        value([x, y]) = sum_i sum_h f_i(x.h) g_i(h^-1.y)
    """
    Z = comp.correspondence
    pairs = list(pairs)
    for f1, f2 in pairs:
        if f1.correspondence.right != f2.correspondence.left:
            raise GroupoidMismatch("tensor legs do not share the middle groupoid")
    out = {}
    for cid in Z.carrier:
        (x0, y0) = comp.rep[cid]
        acc = ZERO
        for f1, f2 in pairs:
            X, Y = f1.correspondence, f2.correspondence
            mid = X.right
            for h in mid.arrows:
                if mid.dst[h] != X.smap[x0]:
                    continue
                c1 = f1(X.ract[(x0, h)])
                if c1.is_zero():
                    continue
                c2 = f2(Y.lact[(mid.inverse(h), y0)])
                if c2.is_zero():
                    continue
                acc = acc + c1 * c2
        if not acc.is_zero():
            out[cid] = acc
    return make_module_element(Z, out)


def tensor_inner(pairs1, pairs2) -> AlgebraElement:
    """<sum f1 (x) f2 | sum f3 (x) f4> = sum <f2|<f1|f3> * f4>."""
    if not pairs1 and not pairs2:
        raise AxiomViolation("empty-tensor", None)
    first = pairs1[0][1] if pairs1 else pairs2[0][1]
    K = first.correspondence.right
    total = make_element(K, {})
    for f1, f2 in pairs1:
        for f3, f4 in pairs2:
            total = total + inner(f2, left_action(inner(f1, f3), f4))
    return total


def two_arrow_isometry(alpha: TwoArrow, xi: ModuleElement) -> ModuleElement:
    """Push a section forward along a 2-arrow (extension by zero).

    Injectivity of alpha makes this an inner-product-preserving map
    S(source) -> S(target).
    """
    if xi.correspondence != alpha.source:
        raise CorrespondenceMismatch("section does not live over the 2-arrow source")
    return make_module_element(
        alpha.target, {alpha.mapping[x]: c for x, c in xi.coeffs.items()})


# -- exact operator norm of the left action ----------------------------------


def left_action_blocks(zeta: AlgebraElement, X: Correspondence):
    """Matrix of xi -> zeta * xi on each s-fibre block of the carrier.

    l^2(carrier) is unitarily the module localised at the regular
    representation, so the norm of these blocks *is* the module operator norm
    of the left action.
    """
    if zeta.groupoid != X.left:
        raise GroupoidMismatch("coefficient algebra is not the left leg")
    blocks = {}
    for v in X.right.objects:
        basis = X.points_with_s(v)
        index = {x: i for i, x in enumerate(basis)}
        rows = [[ZERO] * len(basis) for _ in basis]
        for h, c in zeta.coeffs.items():
            for x in basis:
                if X.left.src[h] == X.rmap[x]:
                    y = X.lact[(h, x)]
                    rows[index[y]][index[x]] = rows[index[y]][index[x]] + c
        blocks[v] = rows
    return blocks


def left_action_operator_norm(zeta: AlgebraElement, X: Correspondence) -> float:
    return max((matrix_operator_norm(rows)
                for rows in left_action_blocks(zeta, X).values()), default=0.0)
