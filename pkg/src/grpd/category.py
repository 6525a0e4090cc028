"""Finite categories, functors, and discrete Conduche fibrations.

``comp`` maps (f, g) -> f o g (f after g, needing src(f) == dst(g)).  A
category may be *partial*: the composition table lists only some composable
pairs.  This is what a degree-truncated path category looks like - composites
are defined exactly while the degree stays under the bound - and it is the
device that lets infinite bases (free monoids, N^k) be checked at finite
scale without being enumerated.  Identity composites must always be present,
endpoint laws hold for every listed entry, and associativity is enforced in
the partial sense: whenever (f o g) o h and f o (g o h) are both reachable
through defined entries they must agree, and if one side is defined the other
must be too.

A functor F: E -> C has *unique factorisation lifting* when for every
morphism phi of E and every defined factorisation F(phi) = rho o lam in C
there is exactly one pair (rho~, lam~) in E with rho~ o lam~ = phi over
(rho, lam).  check_conduche quantifies over exactly the defined data, so on
total categories it is the full condition.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import AxiomViolation, InputError, NotAFunctor


@dataclass(frozen=True)
class FiniteCategory:
    objects: tuple
    morphisms: tuple
    src: dict
    dst: dict
    identity: dict
    comp: dict
    total: bool = True

    def is_identity(self, f):
        return self.identity[self.src[f]] == f

    def defined(self, f, g):
        return (f, g) in self.comp

    def __repr__(self):
        kind = "total" if self.total else "partial"
        return (f"FiniteCategory({len(self.objects)} objects, "
                f"{len(self.morphisms)} morphisms, {kind})")


def make_category(objects, morphisms, src, dst, identity, comp,
                  require_total: bool = False) -> FiniteCategory:
    objects = tuple(sorted(objects))
    morphisms = tuple(sorted(morphisms))
    if len(set(objects)) != len(objects):
        raise AxiomViolation("duplicate-object", objects)
    if len(set(morphisms)) != len(morphisms):
        raise AxiomViolation("duplicate-morphism", morphisms)
    obj_set, mor_set = set(objects), set(morphisms)
    src, dst, identity, comp = dict(src), dict(dst), dict(identity), dict(comp)

    for f in morphisms:
        if src.get(f) not in obj_set:
            raise AxiomViolation("src-total", f)
        if dst.get(f) not in obj_set:
            raise AxiomViolation("dst-total", f)
    for x in objects:
        e = identity.get(x)
        if e not in mor_set:
            raise AxiomViolation("identity-total", x)
        if src[e] != x or dst[e] != x:
            raise AxiomViolation("identity-endpoints", (x, e))

    for (f, g), fg in comp.items():
        if f not in mor_set or g not in mor_set or fg not in mor_set:
            raise AxiomViolation("comp-unknown-morphism", (f, g, fg))
        if src[f] != dst[g]:
            raise AxiomViolation("comp-extra-pair", (f, g))
        if src[fg] != src[g] or dst[fg] != dst[f]:
            raise AxiomViolation("comp-endpoints", (f, g, fg))

    # identity composites must exist and satisfy the unit laws
    for f in morphisms:
        if comp.get((f, identity[src[f]])) != f:
            raise AxiomViolation("unit-right", f)
        if comp.get((identity[dst[f]], f)) != f:
            raise AxiomViolation("unit-left", f)

    # partial associativity: a fully defined route forces the other route to
    # be defined as well, and the two agree
    by_dst = {}
    for f in morphisms:
        by_dst.setdefault(dst[f], []).append(f)
    for (g, h), gh in comp.items():
        for f in by_dst.get(dst[g], ()):
            fg = comp.get((f, g))
            left = comp.get((fg, h)) if fg is not None else None
            right = comp.get((f, gh))
            if left is None and right is None:
                continue
            if left is None or right is None:
                raise AxiomViolation("associativity-domain", (f, g, h))
            if left != right:
                raise AxiomViolation("associativity", (f, g, h))
    for (f, g), fg in comp.items():
        for h in by_dst.get(src[g], ()):
            if (fg, h) in comp and (g, h) not in comp:
                raise AxiomViolation("associativity-domain", (f, g, h))

    total = all((f, g) in comp
                for f in morphisms for g in morphisms if src[f] == dst[g])
    if require_total and not total:
        missing = next((f, g) for f in morphisms for g in morphisms
                       if src[f] == dst[g] and (f, g) not in comp)
        raise AxiomViolation("comp-missing-pair", missing)
    return FiniteCategory(objects, morphisms, src, dst, identity, comp, total)


@dataclass(frozen=True)
class FibrationFunctor:
    total: FiniteCategory   # E
    base: FiniteCategory    # C
    on_objects: dict
    on_morphisms: dict

    def obj(self, X):
        return self.on_objects[X]

    def mor(self, alpha):
        return self.on_morphisms[alpha]


def make_functor(E: FiniteCategory, C: FiniteCategory, on_objects,
                 on_morphisms) -> FibrationFunctor:
    on_objects, on_morphisms = dict(on_objects), dict(on_morphisms)
    for X in E.objects:
        if on_objects.get(X) not in set(C.objects):
            raise NotAFunctor(X, f"object {X!r} has no image")
    for a in E.morphisms:
        fa = on_morphisms.get(a)
        if fa not in set(C.morphisms):
            raise NotAFunctor(a, f"morphism {a!r} has no image")
        if C.src[fa] != on_objects[E.src[a]] or C.dst[fa] != on_objects[E.dst[a]]:
            raise NotAFunctor(a, f"image of {a!r} has wrong endpoints")
    for X in E.objects:
        if on_morphisms[E.identity[X]] != C.identity[on_objects[X]]:
            raise NotAFunctor(X, f"identity of {X!r} not sent to an identity")
    for (a, b), ab in E.comp.items():
        fa, fb = on_morphisms[a], on_morphisms[b]
        if (fa, fb) not in C.comp:
            raise NotAFunctor((a, b),
                              "composite defined upstairs but not downstairs")
        if C.comp[(fa, fb)] != on_morphisms[ab]:
            raise NotAFunctor((a, b), "functor does not preserve composition")
    return FibrationFunctor(E, C, on_objects, on_morphisms)


def lifts_of(F: FibrationFunctor, phi, lam, rho):
    """All pairs (lam~, rho~) over (lam, rho) with rho~ o lam~ = phi."""
    E = F.total
    out = []
    for lam_t in E.morphisms:
        if F.on_morphisms[lam_t] != lam or E.src[lam_t] != E.src[phi]:
            continue
        for rho_t in E.morphisms:
            if F.on_morphisms[rho_t] != rho:
                continue
            if E.comp.get((rho_t, lam_t)) == phi:
                out.append((lam_t, rho_t))
    return out


def check_conduche(F: FibrationFunctor):
    """(ok, witness): unique factorisation lifting over every defined base
    factorisation.  witness = (phi, lam, rho, lift_count) on failure."""
    C = F.base
    for phi in F.total.morphisms:
        image = F.on_morphisms[phi]
        for (rho, lam), comp in C.comp.items():
            if comp != image:
                continue
            n = len(lifts_of(F, phi, lam, rho))
            if n != 1:
                return False, (phi, lam, rho, n)
    return True, None


def is_row_finite(F: FibrationFunctor):
    """Always true at finite scale; returns the lift counts per (object X of
    E, base morphism beta into F(X)) used by the gauge-invariant relations."""
    counts = {}
    for X in F.total.objects:
        for beta in F.base.morphisms:
            if F.base.dst[beta] != F.on_objects[X]:
                continue
            counts[(X, beta)] = sum(
                1 for a in F.total.morphisms
                if F.total.dst[a] == X and F.on_morphisms[a] == beta)
    return True, counts


# -- Cuntz-Pimsner presentation ------------------------------------------------


@dataclass(frozen=True)
class Relation:
    family: int
    index: tuple
    text: str


@dataclass(frozen=True)
class Presentation:
    projections: tuple
    isometries: tuple
    relations: dict   # family number -> tuple of Relation

    def render(self) -> str:
        lines = ["GENERATORS"]
        lines += [f"P({x})" for x in self.projections]
        lines += [f"S({a})" for a in self.isometries]
        for fam in range(1, 7):
            lines.append(f"RELATIONS({fam})")
            lines += [rel.text for rel in self.relations.get(fam, ())]
        return "\n".join(lines) + "\n"


def cuntz_pimsner_presentation(F: FibrationFunctor) -> Presentation:
    """Generators and relations of the algebra presented by a row-finite
    discrete Conduche fibration.

    Generators: a projection P(X) per object of E and an isometry S(alpha)
    per non-identity morphism; S(id_X) is identified with P(X) by the
    relation-(3) lines, and relations that reduce to projection bookkeeping
    (P = P P, S = S P_src, P = P P*) are dropped.  Families:

      (1) P(X) P(Y) = 0 for distinct objects,
      (2) S(ab) = S(a) S(b) for defined composites of non-identities,
      (3) P(X) = S(id_X),
      (4) S(a)* S(a) = P(src a),
      (5) S(b)* S(a) = 0 for distinct parallel lifts (same base image),
      (6) P(X) = sum of S(a) S(a)* over {a : F(a) = g, dst(a) = X}, one line
          per (X, non-identity base g into F(X)), empty sums emitted as
          P(X) = 0.

    Everything is sorted, so the rendering is canonical.
    """
    from .errors import NotConduche
    ok, witness = check_conduche(F)
    if not ok:
        raise NotConduche(witness)
    E = F.total
    identities = set(E.identity.values())

    def term(a):
        if a in identities:
            return f"P({E.src[a]})"
        return f"S({a})"

    rels = {fam: [] for fam in range(1, 7)}
    for x in E.objects:
        for y in E.objects:
            if x < y:
                rels[1].append(Relation(1, (x, y), f"P({x}) P({y}) = 0"))
    for (a, b), ab in sorted(E.comp.items()):
        if a in identities or b in identities:
            continue
        rels[2].append(Relation(2, (a, b), f"{term(ab)} = S({a}) S({b})"))
    for x in E.objects:
        rels[3].append(Relation(3, (x,), f"P({x}) = S({E.identity[x]})"))
    for a in E.morphisms:
        if a in identities:
            continue
        rels[4].append(Relation(4, (a,), f"S({a})* S({a}) = P({E.src[a]})"))
    by_image = {}
    for a in E.morphisms:
        by_image.setdefault(F.on_morphisms[a], []).append(a)
    for g in sorted(by_image):
        group = sorted(by_image[g])
        for a in group:
            for b in group:
                if a == b or a in identities or b in identities:
                    continue
                rels[5].append(Relation(5, (a, b), f"S({b})* S({a}) = 0"))
    base_identities = set(F.base.identity.values())
    _, counts = is_row_finite(F)
    for (X, g) in sorted(counts):
        if g in base_identities:
            continue
        alphas = sorted(a for a in E.morphisms
                        if E.dst[a] == X and F.on_morphisms[a] == g)
        if alphas:
            body = " + ".join(f"S({a}) S({a})*" for a in alphas)
        else:
            body = "0"
        rels[6].append(Relation(6, (X, g), f"P({X}) = {body}  [g={g}]"))

    for fam in rels:
        rels[fam].sort(key=lambda rel: rel.text)
    return Presentation(
        projections=tuple(E.objects),
        isometries=tuple(a for a in E.morphisms if a not in identities),
        relations={fam: tuple(v) for fam, v in rels.items()},
    )
