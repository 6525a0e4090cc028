"""Exception taxonomy shared by every layer of the package.

All structural failures carry a machine-readable ``witness`` so callers (and
the CLI) can report *which* law failed on *which* elements instead of a bare
boolean.
"""

from __future__ import annotations


class GrpdError(Exception):
    """Base class for every error raised by this package."""


class InputError(GrpdError):
    """Malformed or unreadable input data (files, tables, schemas)."""


class AxiomViolation(GrpdError):
    """A structural law failed.

    ``kind`` is a short slug naming the law ("associativity",
    "unit-left", "right-action-free", ...); ``witness`` is a tuple of the
    offending elements.
    """

    def __init__(self, kind, witness=None, message=None):
        self.kind = kind
        self.witness = witness
        text = message or f"axiom violated: {kind}"
        if witness is not None:
            text += f" witness={witness!r}"
        super().__init__(text)


class NotFree(AxiomViolation):
    """The right action fixed a point with a non-unit arrow."""

    def __init__(self, point, arrow):
        self.point = point
        self.arrow = arrow
        super().__init__("right-action-free", (point, arrow),
                         f"right action is not free: {point!r}*{arrow!r} = {point!r}")


class NotAnAction(AxiomViolation):
    def __init__(self, witness, message=None):
        super().__init__("not-an-action", witness, message)


class CocycleViolation(AxiomViolation):
    """(h1*h2)|_x differs from h1|_{h2.x} * h2|_x."""

    def __init__(self, h1, h2, x, lhs=None, rhs=None):
        self.h1, self.h2, self.x = h1, h2, x
        self.lhs, self.rhs = lhs, rhs
        super().__init__("cocycle", (h1, h2, x),
                         f"cocycle identity fails at ({h1!r}, {h2!r}, {x!r}): "
                         f"{lhs!r} != {rhs!r}")


class CompatibilityViolation(AxiomViolation):
    """A source/range compatibility equation of a self-similar graph failed."""

    def __init__(self, which, witness):
        self.which = which
        super().__init__(f"compatibility-{which}", witness)


class NotSameOrbit(GrpdError):
    def __init__(self, x1, x2):
        self.x1, self.x2 = x1, x2
        super().__init__(f"{x1!r} and {x2!r} lie in different right orbits")


class EndpointMismatch(GrpdError):
    """Composition was attempted along unequal groupoids."""


class GroupoidMismatch(GrpdError):
    """An element belongs to the algebra of a different groupoid."""


class CorrespondenceMismatch(GrpdError):
    """A module element belongs to a different correspondence."""


class CoherenceViolation(GrpdError):
    def __init__(self, indices, witness):
        self.indices = indices
        self.witness = witness
        super().__init__(f"coherence square fails at {indices!r}: {witness!r}")


class NotAFunctor(GrpdError):
    def __init__(self, witness, message=None):
        self.witness = witness
        super().__init__(message or f"not a functor: {witness!r}")


class NotConduche(GrpdError):
    """Unique factorisation lifting failed; witness = (morphism, lam, rho, count)."""

    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"unique factorisation lifting fails: {witness!r}")


class NodeNotDiscrete(GrpdError):
    """diagram->fibration needs every node groupoid to be a space."""


class FactorizationNotBijective(GrpdError):
    def __init__(self, witness, message=None):
        self.witness = witness
        super().__init__(message or f"factorisation rule is not bijective: {witness!r}")


class HexagonViolation(GrpdError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"degree-3 factorisation associativity fails: {witness!r}")


class UnknownWord(GrpdError):
    """The diagram carries no correspondence for the requested index word."""


class UnknownLetter(GrpdError):
    """A word contains a letter outside the action's alphabet."""


class InfiniteGroup(GrpdError):
    """The operation needs a finite group but got an automaton presentation."""
