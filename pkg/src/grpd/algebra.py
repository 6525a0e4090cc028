"""The convolution *-algebra of a finite groupoid, with exact coefficients.

Elements are finitely supported functions arrows -> Gaussian rationals.
Products are convolutions

    (xi * eta)(g) = sum over h with r(h) = r(g) of xi(h) * eta(h^-1 g),

computed here by the equivalent support-pair enumeration xi(h) eta(k) -> h*k.
The involution is xi*(g) = conj(xi(g^-1)).

The regular representation decomposes into one block per object x, acting on
the basis {delta_k : src(k) = x}; left convolution by xi has the exact matrix
M[j, k] = xi(j * k^-1).  It is faithful, *-preserving and multiplicative, and
the operator norm of an element is the largest singular value over blocks,
estimated by an iterated power method on M*M (iteration cap 10_000,
convergence tolerance 1e-13) after assembling M*M exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import AxiomViolation, GroupoidMismatch
from .groupoid import FiniteGroupoid
from .scalars import ONE, ZERO, Scalar


@dataclass(frozen=True)
class AlgebraElement:
    groupoid: FiniteGroupoid
    coeffs: dict  # arrow -> Scalar, zero coefficients never stored

    def __call__(self, g) -> Scalar:
        return self.coeffs.get(g, ZERO)

    def support(self):
        return sorted(self.coeffs)

    def is_zero(self):
        return not self.coeffs

    def __add__(self, other):
        _same_groupoid(self, other)
        out = dict(self.coeffs)
        for g, c in other.coeffs.items():
            out[g] = out.get(g, ZERO) + c
        return make_element(self.groupoid, out)

    def __sub__(self, other):
        _same_groupoid(self, other)
        out = dict(self.coeffs)
        for g, c in other.coeffs.items():
            out[g] = out.get(g, ZERO) - c
        return make_element(self.groupoid, out)

    def __neg__(self):
        return make_element(self.groupoid, {g: -c for g, c in self.coeffs.items()})

    def scale(self, z: Scalar):
        return make_element(self.groupoid,
                            {g: z * c for g, c in self.coeffs.items()})

    def __mul__(self, other):
        return convolve(self, other)

    def star(self):
        return involute(self)

    def __repr__(self):
        if not self.coeffs:
            return "AlgebraElement(0)"
        terms = " + ".join(f"({c})d[{g}]" for g, c in sorted(self.coeffs.items()))
        return f"AlgebraElement({terms})"


def _same_groupoid(a: AlgebraElement, b: AlgebraElement):
    if a.groupoid != b.groupoid:
        raise GroupoidMismatch("elements live over different groupoids")


def make_element(G: FiniteGroupoid, coeffs) -> AlgebraElement:
    arrows = set(G.arrows)
    clean = {}
    for g, c in coeffs.items():
        if g not in arrows:
            raise AxiomViolation("element-unknown-arrow", g)
        if not isinstance(c, Scalar):
            raise AxiomViolation("element-not-scalar", (g, c))
        if not c.is_zero():
            clean[g] = c
    return AlgebraElement(G, clean)


def zero_element(G: FiniteGroupoid) -> AlgebraElement:
    return AlgebraElement(G, {})


def delta(G: FiniteGroupoid, g, coefficient: Scalar = ONE) -> AlgebraElement:
    return make_element(G, {g: coefficient})


def indicator(G: FiniteGroupoid, subset) -> AlgebraElement:
    return make_element(G, {g: ONE for g in subset})


def convolve(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    _same_groupoid(a, b)
    G = a.groupoid
    out = {}
    for h, c1 in a.coeffs.items():
        for k, c2 in b.coeffs.items():
            if G.composable(h, k):
                g = G.mul(h, k)
                out[g] = out.get(g, ZERO) + c1 * c2
    return make_element(G, out)


def involute(a: AlgebraElement) -> AlgebraElement:
    G = a.groupoid
    return make_element(
        G, {G.inverse(g): c.conjugate() for g, c in a.coeffs.items()})


def sup_norm(a: AlgebraElement) -> float:
    """max |coefficient| (the slice-wise bound on the operator norm)."""
    if not a.coeffs:
        return 0.0
    return max(math.sqrt(float(c.abs2())) for c in a.coeffs.values())


# -- regular representation --------------------------------------------------


class RegularRepresentation:
    """Block decomposition of left convolution over the source fibres.

    For each object x the block basis is the source fibre {k : src(k) = x};
    delta_g acts by delta_k -> delta_{g*k} whenever composable, giving the
    exact matrix M[j, k] = xi(j * k^-1).  Faithfulness is asserted on the
    delta basis at construction time.
    """

    def __init__(self, G: FiniteGroupoid, check: bool = True):
        self.groupoid = G
        self.bases = {x: tuple(G.source_fiber(x)) for x in G.objects}
        # j * k^-1 for j, k in the same source fibre, precomputed
        self._quot = {}
        for x, basis in self.bases.items():
            for j in basis:
                for k in basis:
                    self._quot[(j, k)] = G.mul(j, G.inverse(k))
        if check:
            self._check_faithful()

    def block(self, a: AlgebraElement, x):
        basis = self.bases[x]
        return [[a(self._quot[(j, k)]) for k in basis] for j in basis]

    def blocks(self, a: AlgebraElement):
        if a.groupoid != self.groupoid:
            raise GroupoidMismatch("element is over a different groupoid")
        return {x: self.block(a, x) for x in self.groupoid.objects}

    def _check_faithful(self):
        from .scalars import ONE
        for g in self.groupoid.arrows:
            a = AlgebraElement(self.groupoid, {g: ONE})
            if all(all(all(c.is_zero() for c in row) for row in self.block(a, x))
                   for x in self.groupoid.objects):
                raise AxiomViolation("regular-representation-kernel", g)


# -- operator norms ----------------------------------------------------------

POWER_ITERATION_CAP = 10_000
POWER_TOLERANCE = 1e-13


def _hermitian_square(rows):
    """M* M assembled exactly from a Scalar matrix, returned as complex."""
    n = len(rows)
    cols = len(rows[0]) if rows else 0
    out = []
    for i in range(cols):
        line = []
        for j in range(cols):
            acc = ZERO
            for k in range(n):
                acc = acc + rows[k][i].conjugate() * rows[k][j]
            line.append(acc.to_complex())
        out.append(line)
    return out


def _power_max_eigenvalue(A):
    """Largest eigenvalue of a Hermitian PSD complex matrix.

    Runs the power iteration from the all-ones start and from every standard
    basis vector (any dominant eigenvector has a nonzero coordinate, so some
    start is guaranteed to overlap the top eigenspace) and keeps the largest
    Rayleigh limit.
    """
    n = len(A)
    if n == 0:
        return 0.0
    starts = [[1.0 + (i + 1.0) / (3.0 * n) for i in range(n)]]
    for i in range(n):
        e = [0.0] * n
        e[i] = 1.0
        starts.append(e)
    best = 0.0
    for v in starts:
        norm = math.sqrt(sum(abs(c) ** 2 for c in v))
        v = [c / norm for c in v]
        lam = 0.0
        for _ in range(POWER_ITERATION_CAP):
            w = [sum(A[i][j] * v[j] for j in range(n)) for i in range(n)]
            lam_new = sum(v[i].conjugate() * w[i] for i in range(n)).real
            wnorm = math.sqrt(sum(abs(c) ** 2 for c in w))
            if wnorm <= 1e-300:
                lam_new = 0.0
                lam = lam_new
                break
            v = [c / wnorm for c in w]
            if abs(lam_new - lam) <= POWER_TOLERANCE * max(1.0, abs(lam_new)):
                lam = lam_new
                break
            lam = lam_new
        best = max(best, lam)
    return max(best, 0.0)


def matrix_operator_norm(rows) -> float:
    """Largest singular value of a Scalar matrix via power method on M*M."""
    if not rows or not rows[0]:
        return 0.0
    return math.sqrt(_power_max_eigenvalue(_hermitian_square(rows)))


def operator_norm(a: AlgebraElement, rep: RegularRepresentation | None = None) -> float:
    """C*-norm of an algebra element: max singular value over regular blocks."""
    if rep is None:
        rep = RegularRepresentation(a.groupoid, check=False)
    best = 0.0
    for x in a.groupoid.objects:
        rows = rep.block(a, x)
        best = max(best, matrix_operator_norm(rows))
    return best
