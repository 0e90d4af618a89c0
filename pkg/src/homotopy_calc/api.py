"""Request handling shared by the CLI and the HTTP service.

Parses input documents (plain dicts deserialized from JSON) into space
descriptors, dispatches to the computation layer, and assembles output
documents.  All functions are pure: no I/O, no clocks, so identical inputs
produce identical documents.
"""

from __future__ import annotations

import json
from typing import Any

from . import catalog
from .extcplx import (
    TorsionInDegreeZero,
    TwoTermComplex,
    ext0_fiber_product,
    ext0_resolution,
)
from .fgab import FgAbGroup, FgAbMap, IllFormedMap, InvariantFactors, invariants
from .homotopy import (
    CrossCheckError,
    GateError,
    SpaceDescriptor,
    compute_all,
    pi1_thm_main,
    pi1_thm_pi2,
    pi2,
)
from .intlat import IntMatrix
from .rootdata import (
    EmbeddingDescriptor,
    GroupDescriptor,
    NotAnEmbedding,
    NotApplicable,
    RootDatum,
    pi1_alg,
    pic_group,
    root_datum_violations,
)

COMMANDS = ("pi1", "pi2", "pic", "pi1alg", "ext0", "all", "catalog-list")
METHODS = ("auto", "thm-main", "thm-pi2", "both")

EXIT_CODES = {"ok": 0, "gate": 2, "invalid": 3, "crosscheck": 4}

_INT_STRING_LIMIT = 2**53


class InputError(ValueError):
    """Invalid input document, with the offending field path."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


def _as_int(value: Any, path: str) -> int:
    if isinstance(value, bool):
        raise InputError(path, "expected an integer, got a boolean")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        try:
            return int(value, 10)
        except ValueError:
            raise InputError(path, f"not an integer: {value!r}") from None
    raise InputError(path, f"expected an integer, got {type(value).__name__}")


def _as_matrix(obj: Any, path: str, rows: int | None = None, cols: int | None = None) -> IntMatrix:
    if not isinstance(obj, list):
        raise InputError(path, "expected a list of rows")
    grid = []
    width = cols
    for i, row in enumerate(obj):
        if not isinstance(row, list):
            raise InputError(f"{path}[{i}]", "expected a list of integers")
        parsed = [_as_int(x, f"{path}[{i}][{j}]") for j, x in enumerate(row)]
        if width is None:
            width = len(parsed)
        elif len(parsed) != width:
            raise InputError(f"{path}[{i}]", f"expected {width} entries, got {len(parsed)}")
        grid.append(parsed)
    if not grid and rows:
        # an empty list means "no columns" for a matrix with known row count
        return IntMatrix.zeros(rows, 0)
    matrix = IntMatrix.from_rows(grid, cols=width or 0)
    if rows is not None and matrix.rows != rows:
        raise InputError(path, f"expected {rows} rows, got {matrix.rows}")
    return matrix


def _parse_presentation(obj: Any, path: str) -> FgAbGroup:
    if not isinstance(obj, dict):
        raise InputError(path, "expected an object with generators/relations")
    gens = _as_int(obj.get("generators"), f"{path}.generators")
    if gens < 0:
        raise InputError(f"{path}.generators", "must be nonnegative")
    rels = _as_matrix(obj.get("relations", []), f"{path}.relations", rows=gens)
    return FgAbGroup(gens, rels)


def parse_group(obj: Any, path: str) -> GroupDescriptor:
    if not isinstance(obj, dict):
        raise InputError(path, "expected a group object")
    kinds = [k for k in ("catalog", "root_datum", "multiplicative") if k in obj]
    if len(kinds) != 1:
        raise InputError(path, "need exactly one of catalog / root_datum / multiplicative")
    kind = kinds[0]
    if kind == "catalog":
        name = obj["catalog"]
        if name == "Product":
            factors = obj.get("factors")
            if not isinstance(factors, list) or len(factors) != 2:
                raise InputError(f"{path}.factors", "Product needs exactly two factors")
            try:
                return catalog.product(
                    parse_group(factors[0], f"{path}.factors[0]"),
                    parse_group(factors[1], f"{path}.factors[1]"),
                )
            except catalog.BadParams as exc:
                raise InputError(path, str(exc)) from None
        try:
            return catalog.make_group(name, obj.get("n"))
        except (catalog.UnknownName, catalog.BadParams) as exc:
            raise InputError(path, str(exc)) from None
    if kind == "root_datum":
        spec = obj["root_datum"]
        if not isinstance(spec, dict):
            raise InputError(f"{path}.root_datum", "expected an object")
        rank = _as_int(spec.get("rank"), f"{path}.root_datum.rank")
        roots = _as_matrix(spec.get("roots", []), f"{path}.root_datum.roots", cols=rank)
        coroots = _as_matrix(spec.get("coroots", []), f"{path}.root_datum.coroots", cols=rank)
        try:
            datum = RootDatum(rank, tuple(roots.entries), tuple(coroots.entries))
        except ValueError as exc:
            raise InputError(f"{path}.root_datum", str(exc)) from None
        problems = root_datum_violations(datum)
        if problems:
            raise InputError(f"{path}.root_datum", "; ".join(problems))
        return GroupDescriptor.reductive(datum)
    return GroupDescriptor.multiplicative(
        _parse_presentation(obj["multiplicative"], f"{path}.multiplicative")
    )


def _forced_h_connected(h: GroupDescriptor) -> bool:
    if h.is_reductive:
        return True
    return not invariants(h.char_lattice).torsion


def parse_space(doc: Any) -> SpaceDescriptor:
    if not isinstance(doc, dict):
        raise InputError("$", "expected a JSON object")
    emb = doc.get("embedding")
    if not isinstance(emb, dict):
        raise InputError("embedding", "missing embedding object")
    emb_kinds = [k for k in ("cochar_matrix", "char_map", "catalog_embedding") if k in emb]
    if len(emb_kinds) != 1:
        raise InputError(
            "embedding", "need exactly one of cochar_matrix / char_map / catalog_embedding"
        )
    if emb_kinds[0] == "catalog_embedding":
        if "g" in doc or "h" in doc:
            raise InputError("embedding.catalog_embedding", "g and h come from the catalog here")
        spec = emb["catalog_embedding"]
        if not isinstance(spec, dict) or "kind" not in spec:
            raise InputError("embedding.catalog_embedding", "expected an object with a kind")
        params = {k: v for k, v in spec.items() if k != "kind"}
        try:
            g, h, base = catalog.make_embedding(spec["kind"], **params)
        except (catalog.UnknownName, catalog.BadParams) as exc:
            raise InputError("embedding.catalog_embedding", str(exc)) from None
    else:
        if "g" not in doc or "h" not in doc:
            raise InputError("$", "need both g and h")
        g = parse_group(doc["g"], "g")
        h = parse_group(doc["h"], "h")
        if emb_kinds[0] == "cochar_matrix":
            matrix = _as_matrix(emb["cochar_matrix"], "embedding.cochar_matrix")
            base = EmbeddingDescriptor(cochar_matrix=matrix)
        else:
            n_h = h.char_lattice.generators if h.is_multiplicative else None
            if n_h is None:
                raise InputError("embedding.char_map", "char_map embeddings need multiplicative h")
            matrix = _as_matrix(emb["char_map"], "embedding.char_map", rows=n_h)
            base = EmbeddingDescriptor(char_map=matrix)
    h_connected = _forced_h_connected(h) and base.h_connected
    h_ker_char = base.h_ker_char_connected
    flags = doc.get("flags", {})
    if flags:
        if not isinstance(flags, dict):
            raise InputError("flags", "expected an object")
        if "h_connected" in flags:
            asked = bool(flags["h_connected"])
            if asked and not _forced_h_connected(h):
                raise InputError(
                    "flags.h_connected",
                    "a multiplicative group with torsion characters is disconnected",
                )
            h_connected = asked
        if "h_ker_char_connected" in flags:
            h_ker_char = bool(flags["h_ker_char_connected"])
    e = EmbeddingDescriptor(
        cochar_matrix=base.cochar_matrix,
        char_map=base.char_map,
        h_connected=h_connected,
        h_ker_char_connected=h_ker_char,
    )
    try:
        return SpaceDescriptor(g, h, e)
    except ValueError as exc:
        raise InputError("g", str(exc)) from None


def parse_complex(doc: Any) -> TwoTermComplex:
    if not isinstance(doc, dict):
        raise InputError("$", "expected a JSON object")
    for key in ("a0", "a1", "alpha"):
        if key not in doc:
            raise InputError(key, "missing")
    a0 = _parse_presentation(doc["a0"], "a0")
    a1 = _parse_presentation(doc["a1"], "a1")
    alpha = _as_matrix(doc["alpha"], "alpha", rows=a1.generators, cols=a0.generators)
    try:
        return TwoTermComplex(FgAbMap(a0, a1, alpha))
    except IllFormedMap as exc:
        raise InputError("alpha", str(exc)) from None


def group_payload(inv: InvariantFactors) -> dict:
    return {"rank": inv.rank, "torsion": list(inv.torsion), "pretty": str(inv)}


def _result_payload(result) -> dict:
    return {
        "method": result.method,
        "gates": {name: outcome for name, outcome in result.gates},
        "result": group_payload(result.group),
    }


def _pick_route(space: SpaceDescriptor, method: str):
    if method == "thm-main":
        return "thm_main"
    if method == "thm-pi2":
        return "thm_pi2"
    h = space.h
    connected_reductive = h.is_reductive and space.e.h_connected
    trivial = h.is_multiplicative and invariants(h.char_lattice).is_trivial
    return "thm_pi2" if (connected_reductive or trivial) else "thm_main"


def run_command(command: str, doc: Any, method: str = "auto", oracle: bool = False):
    """Execute one command; returns (output document, status class)."""
    if command not in COMMANDS:
        raise ValueError(f"unknown command {command!r}")
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}")
    out: dict[str, Any] = {"command": command}
    try:
        if command == "catalog-list":
            out["groups"] = [
                {"name": name, "params": "n"} for name in catalog.GROUP_NAMES
            ] + [{"name": "Product", "params": "factors: [group, group]"}]
            out["embeddings"] = list(catalog.EMBEDDING_KINDS)
            return out, "ok"
        if command == "ext0":
            complex_ = parse_complex(doc)
            torsion_free_a0 = not invariants(complex_.a0).torsion
            if torsion_free_a0:
                result = invariants(ext0_fiber_product(complex_))
                route = "fiber_product"
            else:
                result = invariants(ext0_resolution(complex_))
                route = "resolution"
            out["route"] = route
            if oracle:
                other = invariants(ext0_resolution(complex_))
                if other != result:
                    raise CrossCheckError(
                        f"ext0 routes disagree: {result} vs {other}"
                    )
                out["oracle"] = {
                    "agree": True,
                    "routes": sorted({route, "resolution"}),
                }
            out["result"] = group_payload(result)
            return out, "ok"
        if command == "pic":
            g = parse_group(_require_g(doc), "g")
            out["result"] = group_payload(invariants(pic_group(g)))
            if g.is_multiplicative:
                out["note"] = "groups of multiplicative type have trivial Picard group"
            return out, "ok"
        if command == "pi1alg":
            g = parse_group(_require_g(doc), "g")
            out["result"] = group_payload(invariants(pi1_alg(g)))
            return out, "ok"
        space = parse_space(doc)
        if command == "pi2":
            out.update(_result_payload(pi2(space)))
            return out, "ok"
        if command == "pi1":
            if method == "both":
                first = pi1_thm_main(space)
                second = pi1_thm_pi2(space)
                if first.group != second.group:
                    raise CrossCheckError(
                        f"theorem routes disagree: {first.group} vs {second.group}"
                    )
                merged = first.gates + second.gates
                out.update(
                    {
                        "method": "both",
                        "gates": {name: outcome for name, outcome in merged},
                        "result": group_payload(first.group),
                    }
                )
                return out, "ok"
            route = _pick_route(space, method)
            result = pi1_thm_main(space) if route == "thm_main" else pi1_thm_pi2(space)
            out.update(_result_payload(result))
            return out, "ok"
        # command == "all"
        results = compute_all(space)
        payload: dict[str, Any] = {}
        if results.pi1 is not None:
            payload["pi1"] = _result_payload(results.pi1)
        if results.pi2 is not None:
            payload["pi2"] = _result_payload(results.pi2)
        out["results"] = payload
        out["failures"] = {name: message for name, message in results.failures}
        return out, "ok"
    except GateError as exc:
        out["error"] = {"code": exc.code, "message": str(exc)}
        return out, "gate"
    except CrossCheckError as exc:
        out["error"] = {"code": "CrossCheckDisagreement", "message": str(exc)}
        return out, "crosscheck"
    except InputError as exc:
        out["error"] = {"code": "InvalidInput", "message": str(exc), "path": exc.path}
        return out, "invalid"
    except (NotAnEmbedding, NotApplicable, IllFormedMap, TorsionInDegreeZero) as exc:
        out["error"] = {"code": type(exc).__name__, "message": str(exc)}
        return out, "invalid"


def _require_g(doc: Any) -> Any:
    if not isinstance(doc, dict) or "g" not in doc:
        raise InputError("g", "missing group")
    return doc["g"]


def _stringify_big_ints(value: Any) -> Any:
    if isinstance(value, bool):
        return value
    if isinstance(value, int):
        return str(value) if abs(value) > _INT_STRING_LIMIT else value
    if isinstance(value, list):
        return [_stringify_big_ints(v) for v in value]
    if isinstance(value, dict):
        return {k: _stringify_big_ints(v) for k, v in value.items()}
    return value


def render_json(out: dict, stable: bool = False) -> str:
    doc = {k: v for k, v in out.items() if not (stable and k == "timing_ms")}
    return json.dumps(_stringify_big_ints(doc), sort_keys=True, indent=2, ensure_ascii=True)


def render_pretty(out: dict) -> str:
    lines: list[str] = []
    if "error" in out:
        err = out["error"]
        lines.append(f"{err['code']}: {err['message']}")
    elif out["command"] == "all":
        for name in ("pi1", "pi2"):
            if name in out["results"]:
                entry = out["results"][name]
                lines.append(f"{name} = {entry['result']['pretty']}  [{entry['method']}]")
        for name, message in sorted(out.get("failures", {}).items()):
            lines.append(f"{name} skipped: {message}")
    elif out["command"] == "catalog-list":
        lines.append("groups: " + ", ".join(g["name"] for g in out["groups"]))
        lines.append("embeddings: " + ", ".join(out["embeddings"]))
    else:
        lines.append(out["result"]["pretty"])
    return "\n".join(lines)
