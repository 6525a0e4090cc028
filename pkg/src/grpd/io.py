"""JSON readers and writers for every object the CLI touches.

Schemas are strict: required keys must all be present and unknown keys are
rejected, so a typo fails loudly instead of silently validating a smaller
object.  Scalars are exact Gaussian rationals serialized as four integers
[re_num, re_den, im_num, im_den].

Correspondence files may inline their ``left``/``right`` groupoids or point
at sibling files by relative path.
"""

from __future__ import annotations

import json
import os

from .category import FibrationFunctor, FiniteCategory, make_category, make_functor
from .correspondence import Correspondence, make_correspondence
from .errors import InputError
from .groupoid import FiniteGroupoid, make_groupoid
from .kgraph import KGraph, KGraphGroup, make_kgraph
from .scalars import Scalar
from .selfsimilar import (SelfSimilarAction, automaton_self_similar_action,
                          finite_self_similar_action)


def _read(source):
    """Accept a dict, JSON text, or a path; return (data, base_dir)."""
    if isinstance(source, dict):
        return source, "."
    if not isinstance(source, str):
        raise InputError(f"cannot read input of type {type(source).__name__}")
    if source.lstrip().startswith("{"):
        try:
            return json.loads(source), "."
        except json.JSONDecodeError as err:
            raise InputError(f"bad JSON: {err}") from err
    try:
        with open(source) as fh:
            data = json.load(fh)
    except OSError as err:
        raise InputError(f"cannot read {source!r}: {err}") from err
    except json.JSONDecodeError as err:
        raise InputError(f"bad JSON in {source!r}: {err}") from err
    return data, os.path.dirname(source) or "."


def _expect_keys(data, required, optional=(), what="object"):
    if not isinstance(data, dict):
        raise InputError(f"{what}: expected a JSON object")
    missing = set(required) - set(data)
    if missing:
        raise InputError(f"{what}: missing keys {sorted(missing)}")
    unknown = set(data) - set(required) - set(optional)
    if unknown:
        raise InputError(f"{what}: unknown keys {sorted(unknown)}")


def _triples(entries, what):
    out = {}
    for row in entries:
        if not isinstance(row, list) or len(row) != 3:
            raise InputError(f"{what}: entries must be [a, b, c] triples")
        key = (row[0], row[1])
        if key in out:
            raise InputError(f"{what}: duplicate entry for {key!r}")
        out[key] = row[2]
    return out


def load_groupoid(source) -> FiniteGroupoid:
    data, _ = _read(source)
    _expect_keys(data, ("objects", "arrows", "unit", "inv", "comp"),
                 what="groupoid")
    src, dst = {}, {}
    ids = []
    for row in data["arrows"]:
        _expect_keys(row, ("id", "src", "dst"), what="arrow")
        ids.append(row["id"])
        src[row["id"]] = row["src"]
        dst[row["id"]] = row["dst"]
    return make_groupoid(data["objects"], ids, src, dst, data["unit"],
                         data["inv"], _triples(data["comp"], "comp"))


def save_groupoid(G: FiniteGroupoid) -> dict:
    return {
        "objects": list(G.objects),
        "arrows": [{"id": a, "src": G.src[a], "dst": G.dst[a]}
                   for a in G.arrows],
        "unit": dict(G.unit),
        "inv": dict(G.inv),
        "comp": [[g, h, gh] for (g, h), gh in sorted(G.comp.items())],
    }


def _leg(value, base_dir, what):
    if isinstance(value, str) and not value.lstrip().startswith("{"):
        return load_groupoid(os.path.join(base_dir, value))
    if isinstance(value, (dict, str)):
        return load_groupoid(value)
    raise InputError(f"{what}: expected an inline groupoid or a file path")


def load_correspondence(source) -> Correspondence:
    data, base_dir = _read(source)
    _expect_keys(data, ("left", "right", "carrier", "r", "s", "lact", "ract"),
                 what="correspondence")
    return make_correspondence(
        left=_leg(data["left"], base_dir, "left"),
        right=_leg(data["right"], base_dir, "right"),
        carrier=data["carrier"],
        rmap=data["r"], smap=data["s"],
        lact=_triples(data["lact"], "lact"),
        ract=_triples(data["ract"], "ract"),
    )


def save_correspondence(X: Correspondence) -> dict:
    return {
        "left": save_groupoid(X.left),
        "right": save_groupoid(X.right),
        "carrier": list(X.carrier),
        "r": dict(X.rmap),
        "s": dict(X.smap),
        "lact": [[h, x, y] for (h, x), y in sorted(X.lact.items())],
        "ract": [[x, g, y] for (x, g), y in sorted(X.ract.items())],
    }


def _coeffs(data, what):
    if not isinstance(data, dict):
        raise InputError(f"{what}: expected an object of quads")
    out = {}
    for key, quad in data.items():
        if not isinstance(quad, list) or len(quad) != 4 \
                or not all(isinstance(n, int) for n in quad):
            raise InputError(f"{what}: value at {key!r} must be "
                             "[re_num, re_den, im_num, im_den]")
        out[key] = Scalar.from_quad(quad)
    return out


def load_algebra_element(G: FiniteGroupoid, source):
    from .algebra import make_element
    data, _ = _read(source)
    coeffs = _coeffs(data, "algebra element")
    unknown = sorted(set(coeffs) - set(G.arrows))
    if unknown:
        raise InputError(f"algebra element: unknown arrows {unknown}")
    return make_element(G, coeffs)


def load_module_element(X: Correspondence, source):
    from .module import make_module_element
    data, _ = _read(source)
    coeffs = _coeffs(data, "module element")
    unknown = sorted(set(coeffs) - set(X.carrier))
    if unknown:
        raise InputError(f"module element: unknown carrier points {unknown}")
    return make_module_element(X, coeffs)


def save_coeffs(element) -> dict:
    return {key: list(element.coeffs[key].to_quad())
            for key in sorted(element.coeffs)}


def load_tensor_pairs(X: Correspondence, Y: Correspondence, source) -> list:
    """[(xi over X, eta over Y), ...] from {"pairs": [[coeffs, coeffs], ...]}."""
    from .module import make_module_element
    data, _ = _read(source)
    _expect_keys(data, ("pairs",), what="tensor")
    out = []
    for row in data["pairs"]:
        if not isinstance(row, list) or len(row) != 2:
            raise InputError("tensor: each pair must be [xi, eta]")
        out.append((make_module_element(X, _coeffs(row[0], "xi")),
                    make_module_element(Y, _coeffs(row[1], "eta"))))
    return out


def load_category(source) -> FiniteCategory:
    data, _ = _read(source)
    _expect_keys(data, ("objects", "morphisms", "identity", "comp"),
                 what="category")
    src, dst, ids = {}, {}, []
    for row in data["morphisms"]:
        _expect_keys(row, ("id", "src", "dst"), what="morphism")
        ids.append(row["id"])
        src[row["id"]] = row["src"]
        dst[row["id"]] = row["dst"]
    return make_category(data["objects"], ids, src, dst, data["identity"],
                         _triples(data["comp"], "comp"))


def save_category(C: FiniteCategory) -> dict:
    return {
        "objects": list(C.objects),
        "morphisms": [{"id": m, "src": C.src[m], "dst": C.dst[m]}
                      for m in C.morphisms],
        "identity": dict(C.identity),
        "comp": [[f, g, fg] for (f, g), fg in sorted(C.comp.items())],
    }


def load_fibration(source) -> FibrationFunctor:
    data, base_dir = _read(source)
    _expect_keys(data, ("total", "base", "on_objects", "on_morphisms"),
                 what="fibration")

    def cat(value):
        if isinstance(value, str) and not value.lstrip().startswith("{"):
            return load_category(os.path.join(base_dir, value))
        return load_category(value)

    return make_functor(cat(data["total"]), cat(data["base"]),
                        data["on_objects"], data["on_morphisms"])


def _nested(data, what):
    """{"a": {"x": v}} -> {("a", "x"): v}."""
    if not isinstance(data, dict):
        raise InputError(f"{what}: expected an object of objects")
    out = {}
    for g, row in data.items():
        if not isinstance(row, dict):
            raise InputError(f"{what}: value at {g!r} must be an object")
        for x, v in row.items():
            out[(g, x)] = v
    return out


def load_kgraph(source) -> KGraph:
    data, _ = _read(source)
    _expect_keys(data, ("vertices", "edges"),
                 optional=("factorization", "group", "max_degree"),
                 what="kgraph")
    edges, redge, sedge = {}, {}, {}
    for color, rows in data["edges"].items():
        ids = []
        for row in rows:
            _expect_keys(row, ("id", "r", "s"), what="edge")
            ids.append(row["id"])
            redge[row["id"]] = row["r"]
            sedge[row["id"]] = row["s"]
        edges[color] = ids
    factor = {}
    for row in data.get("factorization", []):
        if (not isinstance(row, list) or len(row) != 2
                or any(len(p) != 2 for p in row)):
            raise InputError("factorization: entries must be [[b,c],[c2,b2]]")
        key = (row[0][0], row[0][1])
        if key in factor:
            raise InputError(f"factorization: duplicate square for {key!r}")
        factor[key] = (row[1][0], row[1][1])
    group = None
    if "group" in data:
        block = data["group"]
        _expect_keys(block, ("table", "act_v", "act_e", "phi"), what="group")
        from .groupoid import group_as_groupoid
        group = KGraphGroup(
            group=group_as_groupoid(_triples(block["table"], "table")),
            act_v=_nested(block["act_v"], "act_v"),
            act_e=_nested(block["act_e"], "act_e"),
            phi=_nested(block["phi"], "phi"),
        )
    return make_kgraph(data["vertices"], edges, redge, sedge, factor, group)


def kgraph_max_degree(source):
    """The optional max_degree field of a kgraph file, as a tuple or None."""
    data, _ = _read(source)
    if isinstance(data, dict) and "max_degree" in data:
        return tuple(data["max_degree"])
    return None


def load_selfsimilar(source) -> SelfSimilarAction:
    data, _ = _read(source)
    if not isinstance(data, dict) or "kind" not in data:
        raise InputError("self-similar action: missing 'kind'")
    if data["kind"] == "automaton":
        _expect_keys(data, ("kind", "alphabet", "generators", "perm",
                            "restrict"), optional=("depth_bound",),
                     what="automaton action")
        restrict = {k: tuple(v) for k, v in
                    _nested(data["restrict"], "restrict").items()}
        return automaton_self_similar_action(
            data["alphabet"], data["generators"],
            _nested(data["perm"], "perm"), restrict,
            depth_bound=data.get("depth_bound", 8))
    if data["kind"] == "table":
        _expect_keys(data, ("kind", "table", "alphabet", "perm", "restrict"),
                     what="table action")
        from .groupoid import group_as_groupoid
        group = group_as_groupoid(_triples(data["table"], "table"))
        return finite_self_similar_action(
            group, data["alphabet"], _nested(data["perm"], "perm"),
            _nested(data["restrict"], "restrict"))
    raise InputError(f"self-similar action: unknown kind {data['kind']!r}")


def dumps(data) -> str:
    """Canonical JSON rendering used by the CLI: sorted keys, no wiggle."""
    return json.dumps(data, sort_keys=True, indent=2) + "\n"
