"""Self-similar actions on a finite alphabet, by table or by automaton.

A self-similar action is a group acting on finite words so that

    g . (x w) = (g . x) ((g|_x) . w)

for a single letter x and a tail w, where g|_x is the *restriction* of g at
x.  Two presentations are supported and deliberately kept distinct:

* **table** - the group is a finite multiplication table and both the letter
  permutation pi(g, x) and the restriction phi(g, x) are total tables.  Here
  the cocycle law (g h)|_x = g|_{h.x} h|_x is a real, exhaustively checkable
  condition, and the kernel of the action can be computed exactly by a
  fixpoint, so faithfulness is decidable.

* **automaton** - only generators are tabulated and restrictions are words
  in the generators, so the generated group may be infinite (the adding
  machine generates Z).  The action of arbitrary signed generator words is
  evaluated by the recursion above, with inverse generators handled through
  g^-1|_x = (g|_{g^-1 . x})^-1.  For this presentation the cocycle law is
  definitional, so ``check_cocycle`` instead cross-validates the two code
  paths - product word versus sequential application - on all words up to a
  stated depth, and reports that depth rather than claiming a proof.

Tokens of group words are generator names, with ``name^-1`` for inverses;
``act_on_word`` accepts a token tuple or a comma-separated string.
"""

from __future__ import annotations

from dataclasses import dataclass

from .correspondence import (Correspondence, check_cocycle_table,
                             check_group_action,
                             self_similar_group_correspondence)
from .errors import (CocycleViolation, InfiniteGroup, InputError,
                     UnknownLetter)
from .groupoid import FiniteGroupoid, group_identity


@dataclass(frozen=True)
class SelfSimilarAction:
    alphabet: tuple
    generators: tuple
    mode: str                   # "table" | "automaton"
    perm: dict                  # (gen, letter) -> letter
    restrict: dict              # table: -> element; automaton: -> token tuple
    group: FiniteGroupoid | None = None
    depth_bound: int = 8

    def __repr__(self):
        return (f"SelfSimilarAction({self.mode}, |A|={len(self.alphabet)}, "
                f"generators={list(self.generators)})")


def finite_self_similar_action(group: FiniteGroupoid, alphabet, pi,
                               restrict) -> SelfSimilarAction:
    """Tabulated action of a finite group.  The permutation laws are checked
    here; the cocycle law is *not* - run ``check_cocycle`` for that, so that
    a broken restriction table can be constructed and then diagnosed."""
    alphabet = tuple(alphabet)
    if len(group.objects) != 1:
        raise InputError("table mode needs a group, not a groupoid")
    check_group_action(group, dict(pi), alphabet)
    restrict = dict(restrict)
    for g in group.arrows:
        for x in alphabet:
            if (g, x) not in restrict or restrict[(g, x)] not in set(group.arrows):
                raise InputError(f"restriction missing at ({g!r}, {x!r})")
    return SelfSimilarAction(alphabet, tuple(group.arrows), "table",
                             dict(pi), restrict, group)


def automaton_self_similar_action(alphabet, generators, perm, restrict,
                                  depth_bound: int = 8) -> SelfSimilarAction:
    """Automaton presentation: one permutation of the alphabet and one
    restriction word per generator and letter."""
    alphabet, generators = tuple(alphabet), tuple(generators)
    if len(set(alphabet)) != len(alphabet) or len(set(generators)) != len(generators):
        raise InputError("duplicate alphabet letter or generator")
    for g in generators:
        if g.endswith("^-1"):
            raise InputError(f"generator name {g!r} clashes with inverses")
        seen = set()
        for x in alphabet:
            if (g, x) not in perm:
                raise InputError(f"permutation missing at ({g!r}, {x!r})")
            y = perm[(g, x)]
            if y not in set(alphabet) or y in seen:
                raise InputError(f"perm of {g!r} is not a bijection")
            seen.add(y)
            if (g, x) not in restrict:
                raise InputError(f"restriction missing at ({g!r}, {x!r})")
            for t in restrict[(g, x)]:
                if _base(t)[0] not in set(generators):
                    raise InputError(f"restriction at ({g!r}, {x!r}) uses "
                                     f"unknown generator {t!r}")
    restrict = {k: tuple(v) for k, v in restrict.items()}
    return SelfSimilarAction(alphabet, generators, "automaton", dict(perm),
                             restrict, None, depth_bound)


def _base(token: str):
    if token.endswith("^-1"):
        return token[:-3], True
    return token, False


def _invert(word) -> tuple:
    out = []
    for t in reversed(word):
        base, inv = _base(t)
        out.append(base if inv else base + "^-1")
    return tuple(out)


def free_reduce(word) -> tuple:
    stack = []
    for t in word:
        if stack and _base(stack[-1])[0] == _base(t)[0] \
                and _base(stack[-1])[1] != _base(t)[1]:
            stack.pop()
        else:
            stack.append(t)
    return tuple(stack)


def parse_group_word(s) -> tuple:
    if isinstance(s, (tuple, list)):
        return tuple(s)
    s = s.strip()
    if not s or s == "1":
        return ()
    return tuple(tok.strip() for tok in s.split(","))


class _Automaton:
    """Evaluation engine for one automaton action."""

    def __init__(self, act: SelfSimilarAction):
        self.act = act
        self.inv_perm = {}
        for g in act.generators:
            for x in act.alphabet:
                self.inv_perm[(g, act.perm[(g, x)])] = x

    def act_token(self, t, x):
        if x not in set(self.act.alphabet):
            raise UnknownLetter(x)
        base, inv = _base(t)
        if base not in set(self.act.generators):
            raise InputError(f"unknown generator {t!r}")
        return self.inv_perm[(base, x)] if inv else self.act.perm[(base, x)]

    def restrict_token(self, t, x) -> tuple:
        base, inv = _base(t)
        if not inv:
            return self.act.restrict[(base, x)]
        y = self.act_token(t, x)          # y = g^-1 . x
        return _invert(self.act.restrict[(base, y)])

    def act_word(self, word, w) -> tuple:
        word = free_reduce(word)
        w = tuple(w)
        if not w or not word:
            return w
        cur = w[0]
        acc: tuple = ()
        for t in reversed(word):
            acc = self.restrict_token(t, cur) + acc
            cur = self.act_token(t, cur)
        return (cur,) + self.act_word(free_reduce(acc), w[1:])


def split_letter_word(act: SelfSimilarAction, w) -> tuple:
    """Split ``w`` into alphabet letters.

    Accepts a tuple/list of letters, a comma-separated string, a single
    letter, or (for one-character alphabets) a plain string of characters.
    """
    if isinstance(w, (tuple, list)):
        parts = tuple(w)
    else:
        s = w.strip()
        if not s:
            parts = ()
        elif "," in s:
            parts = tuple(tok.strip() for tok in s.split(","))
        elif s in set(act.alphabet):
            parts = (s,)
        else:
            parts = tuple(s)
    for x in parts:
        if x not in set(act.alphabet):
            raise UnknownLetter(x)
    return parts


def act_on_word(act: SelfSimilarAction, g, w) -> str:
    """Image of the letter word ``w`` under the group word (automaton mode)
    or group element (table mode) ``g``."""
    parts = split_letter_word(act, w)
    if act.mode == "table":
        if g not in set(act.group.arrows):
            raise InputError(f"unknown group element {g!r}")
        out = []
        cur = g
        for x in parts:
            out.append(act.perm[(cur, x)])
            cur = act.restrict[(cur, x)]
    else:
        out = list(_Automaton(act).act_word(parse_group_word(g), parts))
    sep = "," if (isinstance(w, str) and "," in w) \
        or any(len(x) > 1 for x in act.alphabet) else ""
    return sep.join(out)


@dataclass(frozen=True)
class CocycleReport:
    ok: bool
    mode: str                   # "exact" | "cross-validated"
    depth: int | None
    witness: tuple | None = None

    def as_dict(self):
        return {"ok": self.ok, "mode": self.mode, "depth": self.depth,
                "witness": list(self.witness) if self.witness else None}


def check_cocycle(act: SelfSimilarAction, depth: int | None = None) -> CocycleReport:
    """Table mode: exhaustively check (g h)|_x = g|_{h.x} h|_x.  Automaton
    mode: the law is built in, so cross-validate the product-word evaluation
    against sequential evaluation on every letter word up to ``depth``."""
    if act.mode == "table":
        try:
            check_cocycle_table(act.group, act.group, act.perm, act.restrict,
                                act.alphabet)
        except CocycleViolation as err:
            return CocycleReport(False, "exact", None,
                                 (err.h1, err.h2, err.x, err.lhs, err.rhs))
        return CocycleReport(True, "exact", None)

    depth = act.depth_bound if depth is None else depth
    eng = _Automaton(act)
    tokens = list(act.generators) + [g + "^-1" for g in act.generators]
    words = [()]
    for _ in range(depth):
        words = [w + (x,) for w in words for x in act.alphabet]
        for t1 in tokens:
            for t2 in tokens:
                for w in words:
                    combined = eng.act_word((t1, t2), w)
                    stepwise = eng.act_word((t1,), eng.act_word((t2,), w))
                    if combined != stepwise:
                        return CocycleReport(
                            False, "cross-validated", len(w),
                            (t1, t2, w, combined, stepwise))
    return CocycleReport(True, "cross-validated", depth)


@dataclass(frozen=True)
class FaithfulnessReport:
    exhaustive: bool
    depth: int | None
    trivial: tuple              # non-identity words/elements acting trivially

    @property
    def faithful_so_far(self) -> bool:
        return not self.trivial


def faithfulness_report(act: SelfSimilarAction, max_word_len: int = 4,
                        depth: int | None = None) -> FaithfulnessReport:
    """Which group words act trivially?

    Table mode computes the kernel exactly: K is the largest subset fixing
    every letter and closed under restriction, found by shrinking to a
    fixpoint.  Automaton mode is a bounded diagnostic: reduced signed words
    up to ``max_word_len`` are tested on all letter words up to ``depth``.
    """
    if act.mode == "table":
        e = group_identity(act.group)
        kernel = {g for g in act.group.arrows
                  if all(act.perm[(g, x)] == x for x in act.alphabet)}
        while True:
            smaller = {g for g in kernel
                       if all(act.restrict[(g, x)] in kernel
                              for x in act.alphabet)}
            if smaller == kernel:
                break
            kernel = smaller
        return FaithfulnessReport(True, None,
                                  tuple(sorted(kernel - {e})))

    depth = act.depth_bound if depth is None else depth
    eng = _Automaton(act)
    tokens = list(act.generators) + [g + "^-1" for g in act.generators]
    tests = [()]
    for _ in range(depth):
        tests = [w + (x,) for w in tests for x in act.alphabet]
    trivial = []
    frontier = [()]
    for _ in range(max_word_len):
        frontier = [w + (t,) for w in frontier for t in tokens
                    if free_reduce(w + (t,)) == w + (t,)]
        for word in frontier:
            if all(eng.act_word(word, w) == w for w in tests):
                trivial.append(",".join(word))
    return FaithfulnessReport(False, depth, tuple(trivial))


def to_correspondence(act: SelfSimilarAction) -> Correspondence:
    """The bimodule of the action: carrier A x G.  Only a finite group has a
    finite carrier, so automaton presentations are refused rather than
    silently truncated."""
    if act.mode != "table":
        raise InfiniteGroup(
            "automaton presentations may generate infinite groups; "
            "tabulate the group to build its correspondence")
    return self_similar_group_correspondence(act.group, act.alphabet,
                                             act.perm, act.restrict)
