"""Command line front end.

Exit codes: 0 all checks passed, 1 a structural law or expected property
failed, 2 the input itself was unusable (bad file, bad JSON, unknown ids,
mismatched endpoints).  ``--json`` prints a deterministic machine-readable
report (no timing, sorted keys); the human format adds a wall-clock line.

The ``suite`` command scans a directory, picks up files by their double
extension (.groupoid.json, .corr.json, .cat.json, .fib.json, .kgraph.json,
.selfsim.json), validates each one, and spot-checks the algebraic laws with
a seeded generator (``--seed`` or GRPD_SEED, default 42).
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time

from . import io as gio
from .algebra import RegularRepresentation, operator_norm, sup_norm
from .bicategory import check_coherence, compose
from .category import check_conduche, cuntz_pimsner_presentation, is_row_finite
from .correspondence import bracket, classify, orbit_decomposition
from .diagrams import (diagram_to_fibration, fibration_to_diagram,
                       validate_diagram)
from .errors import (EndpointMismatch, GrpdError, InputError, NotSameOrbit,
                     UnknownLetter, UnknownWord)
from .kgraph import diagram_from_kgraph, kgraph_fibration
from .module import inner, mu, positivity_witness
from .selfsimilar import act_on_word, check_cocycle, faithfulness_report

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class _Run:
    def __init__(self):
        self.checks = []
        self.result = {}
        self.ok = True

    def record(self, name, ok, error=None):
        entry = {"name": name, "ok": bool(ok)}
        if error is not None:
            entry["error"] = str(error)
        self.checks.append(entry)
        if not ok:
            self.ok = False

    def check(self, name, fn):
        """Run fn, recording success or a structural failure; input errors
        propagate."""
        try:
            value = fn()
        except (InputError, EndpointMismatch, UnknownWord, UnknownLetter):
            raise
        except GrpdError as err:
            self.record(name, False, err)
            return None
        self.record(name, True)
        return value


def _emit(run: _Run, command: str, json_mode: bool, started: float) -> int:
    if json_mode:
        payload = {"command": command, "ok": run.ok,
                   "checks": run.checks, "result": run.result}
        sys.stdout.write(gio.dumps(payload))
    else:
        for c in run.checks:
            line = f"ok   {c['name']}" if c["ok"] else \
                f"FAIL {c['name']}: {c.get('error', '')}"
            print(line)
        for key in sorted(run.result):
            if key == "text":
                print(run.result[key], end="")
            else:
                print(f"{key}: {json.dumps(run.result[key], sort_keys=True)}")
        print(f"time: {time.perf_counter() - started:.3f}s")
    return EXIT_OK if run.ok else EXIT_FAIL


# -- handlers ------------------------------------------------------------------


def _cmd_groupoid_validate(args, run):
    G = run.check("groupoid-axioms", lambda: gio.load_groupoid(args.file))
    if G is not None:
        run.result.update(objects=len(G.objects), arrows=len(G.arrows))


def _cmd_corr_validate(args, run):
    X = run.check("correspondence-laws",
                  lambda: gio.load_correspondence(args.file))
    if X is not None:
        dec = orbit_decomposition(X)
        run.result.update(carrier=len(X.carrier), orbits=len(dec.classes))


def _cmd_corr_bracket(args, run):
    X = gio.load_correspondence(args.file)
    for x in (args.x1, args.x2):
        if x not in set(X.carrier):
            raise InputError(f"unknown carrier point {x!r}")
    try:
        g = bracket(X, args.x1, args.x2)
        run.result.update(bracket=g, same_orbit=True)
    except NotSameOrbit:
        run.result.update(bracket=None, same_orbit=False)
    run.record("bracket", True)


def _cmd_corr_classify(args, run):
    X = gio.load_correspondence(args.file)
    cls = run.check("classify", lambda: classify(X))
    if cls is not None:
        run.result.update(cls.as_dict())


def _cmd_compose(args, run):
    X = gio.load_correspondence(args.x)
    Y = gio.load_correspondence(args.y)
    comp = run.check("compose", lambda: compose(X, Y))
    if comp is None:
        return
    run.result.update(classes=len(comp.carrier),
                      pairs=len(comp.class_of))
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(gio.dumps(gio.save_correspondence(comp.correspondence)))
        run.result["written"] = args.output


def _cmd_coherence(args, run):
    if not 2 <= len(args.files) <= 4:
        raise InputError("coherence takes two to four correspondence files")
    chain = [gio.load_correspondence(f) for f in args.files]
    report = check_coherence(*chain)
    failures = dict(report.failures)
    for name, ok in report.checks:
        run.record(name, ok, failures.get(name))
    run.result["checks"] = len(report.checks)


def _cmd_algebra_norm(args, run):
    G = gio.load_groupoid(args.groupoid)
    a = gio.load_algebra_element(G, args.element)
    rep = RegularRepresentation(G)
    run.record("regular-representation-faithful", True)
    run.result.update({"operator-norm": operator_norm(a, rep),
                       "sup-norm": sup_norm(a)})


def _cmd_algebra_table(args, run):
    from .algebra import delta
    G = gio.load_groupoid(args.groupoid)
    rows = []
    for g in G.arrows:
        for h in G.arrows:
            prod = delta(G, g) * delta(G, h)
            value = "0" if prod.is_zero() else next(iter(prod.support()))
            rows.append([g, h, value])
    run.record("delta-products", True)
    run.result["table"] = rows


def _cmd_module_inner(args, run):
    X = gio.load_correspondence(args.correspondence)
    xi = gio.load_module_element(X, args.xi)
    eta = gio.load_module_element(X, args.eta)
    a = inner(xi, eta)
    run.record("inner-product", True)
    run.result["coefficients"] = gio.save_coeffs(a)
    run.result["norm"] = operator_norm(a)


def _cmd_module_positivity(args, run):
    X = gio.load_correspondence(args.correspondence)
    xi = gio.load_module_element(X, args.xi)
    witness = run.check("positivity-witness", lambda: positivity_witness(xi))
    if witness is not None:
        run.result.update(slices=len(witness.slices),
                          terms=len(witness.coefficients))


def _cmd_module_mu(args, run):
    X = gio.load_correspondence(args.x)
    Y = gio.load_correspondence(args.y)
    pairs = gio.load_tensor_pairs(X, Y, args.tensor)
    comp = compose(X, Y)
    image = run.check("mu", lambda: mu(comp, pairs))
    if image is not None:
        run.result["coefficients"] = gio.save_coeffs(image)


def _cmd_conduche_check(args, run):
    F = gio.load_fibration(args.file)

    def _check():
        ok, witness = check_conduche(F)
        if not ok:
            from .errors import NotConduche
            raise NotConduche(witness)
        return True

    run.check("unique-factorisation-lifting", _check)
    _, counts = is_row_finite(F)
    run.record("row-finite", True)
    run.result["lift-counts"] = [[x, beta, n]
                                 for (x, beta), n in sorted(counts.items())]


def _cmd_conduche_present(args, run):
    F = gio.load_fibration(args.file)
    pres = run.check("presentation", lambda: cuntz_pimsner_presentation(F))
    if pres is not None:
        run.result["projections"] = len(pres.projections)
        run.result["isometries"] = len(pres.isometries)
        run.result["text"] = pres.render()


def _cmd_kgraph_check(args, run):
    kg = run.check("skeleton-and-factorisation",
                   lambda: gio.load_kgraph(args.file))
    if kg is None:
        return
    max_degree = gio.kgraph_max_degree(args.file)

    def _diagram():
        d = diagram_from_kgraph(kg, max_degree)
        return validate_diagram(d)

    report = run.check("diagram-coherence", _diagram)
    if report is not None:
        run.result.update(report)

    def _fibration():
        F = kgraph_fibration(kg, max_degree)
        ok, witness = check_conduche(F)
        if not ok:
            from .errors import NotConduche
            raise NotConduche(witness)
        return len(F.total.morphisms)

    size = run.check("path-fibration-conduche", _fibration)
    if size is not None:
        run.result["paths"] = size


def _cmd_kgraph_present(args, run):
    kg = gio.load_kgraph(args.file)
    F = kgraph_fibration(kg, gio.kgraph_max_degree(args.file))
    pres = run.check("presentation", lambda: cuntz_pimsner_presentation(F))
    if pres is not None:
        run.result["projections"] = len(pres.projections)
        run.result["isometries"] = len(pres.isometries)
        run.result["text"] = pres.render()


def _cmd_selfsim_act(args, run):
    act = gio.load_selfsimilar(args.file)
    image = act_on_word(act, args.word, args.letters)
    run.record("act", True)
    run.result.update(word=args.word, letters=args.letters, image=image)


def _cmd_selfsim_cocycle(args, run):
    act = gio.load_selfsimilar(args.file)
    report = check_cocycle(act, depth=args.depth)
    run.record(f"cocycle[{report.mode}]", report.ok,
               None if report.ok else report.witness)
    run.result.update(report.as_dict())


def _cmd_selfsim_faithful(args, run):
    act = gio.load_selfsimilar(args.file)
    report = faithfulness_report(act, max_word_len=args.max_len,
                                 depth=args.depth)
    run.record("faithfulness-diagnostic", True)
    run.result.update(exhaustive=report.exhaustive, depth=report.depth,
                      trivial=list(report.trivial),
                      faithful_so_far=report.faithful_so_far)


# -- suite ---------------------------------------------------------------------


def _suite_groupoid(run, path, rng):
    from .samples import random_algebra_element
    G = run.check(f"{os.path.basename(path)}: groupoid-axioms",
                  lambda: gio.load_groupoid(path))
    if G is None:
        return
    name = os.path.basename(path)
    a = random_algebra_element(rng, G)
    b = random_algebra_element(rng, G)
    c = random_algebra_element(rng, G)
    run.record(f"{name}: convolution-associative",
               (a * b) * c == a * (b * c))
    run.record(f"{name}: involution-antimultiplicative",
               (a * b).star() == b.star() * a.star())
    rep = RegularRepresentation(G)
    gap = abs(operator_norm(a.star() * a, rep) - operator_norm(a, rep) ** 2)
    run.record(f"{name}: cstar-identity", gap <= 1e-9,
               None if gap <= 1e-9 else f"gap={gap:.2e}")


def _suite_correspondence(run, path, rng):
    from .samples import random_module_element
    X = run.check(f"{os.path.basename(path)}: correspondence-laws",
                  lambda: gio.load_correspondence(path))
    if X is None:
        return
    name = os.path.basename(path)
    xi = random_module_element(rng, X)
    eta = random_module_element(rng, X)
    run.record(f"{name}: inner-adjoint",
               inner(xi, eta).star() == inner(eta, xi))
    run.check(f"{name}: positivity-witness",
              lambda: positivity_witness(xi))
    x = rng.choice(X.carrier)
    fibre = [g for g in X.right.arrows if X.right.dst[g] == X.smap[x]]
    g = rng.choice(fibre)
    run.record(f"{name}: bracket-recovers-arrow",
               bracket(X, x, X.ract[(x, g)]) == g)
    run.check(f"{name}: classify", lambda: classify(X))


def _suite_category(run, path, rng):
    run.check(f"{os.path.basename(path)}: category-laws",
              lambda: gio.load_category(path))


def _suite_fibration(run, path, rng):
    name = os.path.basename(path)
    F = run.check(f"{name}: functor-laws", lambda: gio.load_fibration(path))
    if F is None:
        return
    ok, witness = check_conduche(F)
    run.record(f"{name}: unique-factorisation-lifting", ok, witness)
    if not ok:
        return

    def _round_trip():
        d = fibration_to_diagram(F)
        validate_diagram(d)
        F2 = diagram_to_fibration(d)
        if F2 != F:
            from .errors import AxiomViolation
            raise AxiomViolation("round-trip", (path,))
        return True

    run.check(f"{name}: diagram-round-trip", _round_trip)


def _suite_kgraph(run, path, rng):
    name = os.path.basename(path)
    kg = run.check(f"{name}: skeleton-and-factorisation",
                   lambda: gio.load_kgraph(path))
    if kg is None:
        return
    max_degree = gio.kgraph_max_degree(path)
    run.check(f"{name}: diagram-coherence",
              lambda: validate_diagram(diagram_from_kgraph(kg, max_degree)))


def _suite_selfsim(run, path, rng):
    name = os.path.basename(path)
    act = run.check(f"{name}: well-formed", lambda: gio.load_selfsimilar(path))
    if act is None:
        return
    report = check_cocycle(act)
    run.record(f"{name}: cocycle[{report.mode}]", report.ok,
               None if report.ok else report.witness)


_SUITE_HANDLERS = {
    ".groupoid.json": _suite_groupoid,
    ".corr.json": _suite_correspondence,
    ".cat.json": _suite_category,
    ".fib.json": _suite_fibration,
    ".kgraph.json": _suite_kgraph,
    ".selfsim.json": _suite_selfsim,
}


def _cmd_suite(args, run):
    seed = args.seed
    if seed is None:
        seed = int(os.environ.get("GRPD_SEED", "42"))
    if not os.path.isdir(args.directory):
        raise InputError(f"not a directory: {args.directory!r}")
    matched = 0
    for fname in sorted(os.listdir(args.directory)):
        for suffix, handler in _SUITE_HANDLERS.items():
            if fname.endswith(suffix):
                rng = random.Random(f"{seed}:{fname}")
                try:
                    handler(run, os.path.join(args.directory, fname), rng)
                except (InputError, EndpointMismatch, UnknownWord,
                        UnknownLetter) as err:
                    run.record(f"{fname}: readable", False, err)
                matched += 1
                break
    if matched == 0:
        raise InputError(f"no fixture files found in {args.directory!r}")
    run.result.update(files=matched, seed=seed,
                      checks=len(run.checks),
                      failures=sum(1 for c in run.checks if not c["ok"]))


# -- parser --------------------------------------------------------------------


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="grpd",
        description="validate and compute with finite groupoid "
                    "correspondences")
    sub = parser.add_subparsers(dest="command", required=True)
    _groups: dict = {}

    def add(path, func, configure):
        parts = path.split()
        if len(parts) == 1:
            p = sub.add_parser(parts[0])
        else:
            if parts[0] not in _groups:
                _groups[parts[0]] = sub.add_parser(parts[0]).add_subparsers(
                    dest="subcommand", required=True)
            p = _groups[parts[0]].add_parser(parts[1])
        configure(p)
        p.add_argument("--json", action="store_true",
                       help="deterministic JSON output")
        p.set_defaults(func=func, command_path=path)

    add("groupoid validate", _cmd_groupoid_validate,
        lambda p: p.add_argument("file"))
    add("corr validate", _cmd_corr_validate, lambda p: p.add_argument("file"))

    def _bracket_args(p):
        p.add_argument("file")
        p.add_argument("x1")
        p.add_argument("x2")
    add("corr bracket", _cmd_corr_bracket, _bracket_args)
    add("corr classify", _cmd_corr_classify, lambda p: p.add_argument("file"))

    def _compose_args(p):
        p.add_argument("x")
        p.add_argument("y")
        p.add_argument("-o", "--output")
    add("compose", _cmd_compose, _compose_args)

    add("coherence", _cmd_coherence,
        lambda p: p.add_argument("files", nargs="+"))

    def _norm_args(p):
        p.add_argument("groupoid")
        p.add_argument("element")
    add("algebra norm", _cmd_algebra_norm, _norm_args)
    add("algebra table", _cmd_algebra_table,
        lambda p: p.add_argument("groupoid"))

    def _inner_args(p):
        p.add_argument("correspondence")
        p.add_argument("xi")
        p.add_argument("eta")
    add("module inner", _cmd_module_inner, _inner_args)

    def _pos_args(p):
        p.add_argument("correspondence")
        p.add_argument("xi")
    add("module positivity", _cmd_module_positivity, _pos_args)

    def _mu_args(p):
        p.add_argument("x")
        p.add_argument("y")
        p.add_argument("tensor")
    add("module mu", _cmd_module_mu, _mu_args)

    add("conduche check", _cmd_conduche_check,
        lambda p: p.add_argument("file"))
    add("conduche present", _cmd_conduche_present,
        lambda p: p.add_argument("file"))
    add("kgraph check", _cmd_kgraph_check, lambda p: p.add_argument("file"))
    add("kgraph present", _cmd_kgraph_present,
        lambda p: p.add_argument("file"))

    def _act_args(p):
        p.add_argument("file")
        p.add_argument("word")
        p.add_argument("letters")
    add("selfsim act", _cmd_selfsim_act, _act_args)

    def _cocycle_args(p):
        p.add_argument("file")
        p.add_argument("--depth", type=int, default=None)
    add("selfsim cocycle", _cmd_selfsim_cocycle, _cocycle_args)

    def _faithful_args(p):
        p.add_argument("file")
        p.add_argument("--max-len", type=int, default=4)
        p.add_argument("--depth", type=int, default=None)
    add("selfsim faithful", _cmd_selfsim_faithful, _faithful_args)

    def _suite_args(p):
        p.add_argument("directory")
        p.add_argument("--seed", type=int, default=None)
    add("suite", _cmd_suite, _suite_args)
    return parser


def main(argv=None) -> int:
    started = time.perf_counter()
    parser = _parser()
    args = parser.parse_args(argv)
    run = _Run()
    try:
        args.func(args, run)
    except (InputError, EndpointMismatch, UnknownWord, UnknownLetter,
            OSError) as err:
        print(f"input error: {err}", file=sys.stderr)
        return EXIT_INPUT
    except GrpdError as err:
        run.record("error", False, err)
    return _emit(run, args.command_path, args.json, started)


if __name__ == "__main__":
    sys.exit(main())
