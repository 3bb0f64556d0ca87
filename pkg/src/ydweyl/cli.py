"""Command line interface: parse tuple files, run the pipelines, print reports.

Tuple files are TOML::

    char = 0

    [group]
    constructor = "epsilon_twisted"   # or gamma_quotient, cyclic, product, table, symmetric_three
    theta = 2
    commutation = [[0, 1], [1, 0]]

    [[module]]
    degree = "s1"
    character = { "s1" = "-1", "eps" = "-1" }   # values on generators of the centralizer

    [caps]
    adjoint = 8
    objects = 1024
    roots = 10000
    oracle_degree = 4
    oracle_budget = 200000

Scalar literals are ``1``, ``-1`` or ``zeta(n,k)``.  Exit codes: 0 completed,
2 inconclusive (a cap was hit), 1 invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

import tomli_w

from .cartan import (
    CartanError,
    classify_gcm,
    column_property_violations,
    explore,
    finite_type_name,
    finite_type_witness,
    rank3_catalog_match,
    weyl_orbits,
)
from .groups import GroupError, LinearCharacter, build_group, centralizer
from .nichols import (
    SYMMETRIZER_BUDGET,
    BudgetExceeded,
    format_factorization,
    hilbert_oracle_crosscheck,
    hilbert_series,
    symmetrizer_graded_dim,
)
from .scalars import ScalarError, check_char, parse_scalar
from .skeleton import (
    SkeletonError,
    classify_tuple,
    match_skeleton,
    realize_skeleton,
)
from .ydmod import EXCEEDS_CAP, CapExceeded, InducedModule, YDError, YDTuple, cartan_matrix

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_INCONCLUSIVE = 2

DEFAULT_CAPS = {
    "adjoint": 8,
    "objects": 1024,
    "roots": 10000,
    "oracle_degree": 4,
    "oracle_budget": SYMMETRIZER_BUDGET,
}

TYPE_ALIASES = {
    "alpha": "alpha",
    "beta": "beta",
    "beta'": "beta'",
    "betaprime": "beta'",
    "beta1": "beta'",
    "beta''": "beta''",
    "betadoubleprime": "beta''",
    "beta2": "beta''",
    "gamma": "gamma",
    "delta": "delta",
    "epsilon": "epsilon",
    "phi": "phi",
}


class InputError(ValueError):
    """Malformed tuple file or arguments."""


@dataclass
class TupleSpec:
    char: int
    group_spec: dict
    modules: list[dict]
    caps: dict = field(default_factory=lambda: dict(DEFAULT_CAPS))
    tuple: YDTuple | None = None


# ---------------------------------------------------------------------------
# Parsing and serialization


def parse_tuple_text(text: str, char_override: int | None = None) -> TupleSpec:
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise InputError(f"TOML: {exc}") from exc
    return parse_tuple_data(data, char_override)


def parse_tuple_data(data: dict, char_override: int | None = None) -> TupleSpec:
    char = int(data.get("char", 0)) if char_override is None else char_override
    try:
        check_char(char)
    except ScalarError as exc:
        raise InputError(str(exc)) from exc
    if "group" not in data:
        raise InputError("missing [group] table")
    mods = data.get("module") or []
    if not mods:
        raise InputError("need at least one [[module]]")
    caps = dict(DEFAULT_CAPS)
    for k, v in (data.get("caps") or {}).items():
        if k not in caps:
            raise InputError(f"unknown cap {k!r}")
        caps[k] = int(v)
    try:
        G = build_group(data["group"])
    except (GroupError, KeyError, TypeError, ValueError) as exc:
        raise InputError(f"group: {exc}") from exc
    modules = []
    for n, m in enumerate(mods, start=1):
        try:
            g = G.parse_word(m["degree"])
            H = centralizer(G, g)
            assignment = {G.parse_word(w): parse_scalar(str(v), char) for w, v in (m.get("character") or {}).items()}
            if not assignment:
                raise InputError("character assignment is empty")
            chi = LinearCharacter.from_generators(H, assignment)
            modules.append(InducedModule(G, g, chi))
        except KeyError as exc:
            raise InputError(f"module {n}: missing field {exc}") from exc
        except (GroupError, ScalarError, YDError) as exc:
            raise InputError(f"module {n}: {exc}") from exc
    try:
        M = YDTuple(G, modules, char)
    except (YDError, ScalarError) as exc:
        raise InputError(f"tuple: {exc}") from exc
    return TupleSpec(char, dict(data["group"]), list(mods), caps, M)


def tuple_to_data(M: YDTuple) -> dict:
    """Tuple file contents for a tuple over a group built by build_group."""
    G = M.group
    spec = getattr(G, "spec", None)
    if spec is None:
        raise InputError("group has no declarative description")
    mods = []
    for N in M.modules:
        H = N.centralizer
        mods.append({
            "degree": G.word(N.g),
            "character": {G.word(h): N.chi(h).literal() for h in H.generators},
        })
    return {"char": M.char, "group": spec, "module": mods}


def tuple_to_toml(M: YDTuple) -> str:
    return tomli_w.dumps(tuple_to_data(M))


# ---------------------------------------------------------------------------
# Reports


def _matrix(A) -> list[list[int]] | str:
    if A == EXCEEDS_CAP:
        return EXCEEDS_CAP
    return [list(r) for r in A]


def _root(v) -> str:
    parts = []
    for k, c in enumerate(v):
        if c == 1:
            parts.append(f"a{k + 1}")
        elif c:
            parts.append(f"{c}a{k + 1}")
    return "+".join(parts) if parts else "0"


def _dimension(n: int | None) -> dict | None:
    if n is None:
        return None
    return {"decimal": str(n), "factored": format_factorization(n)}


def _graph_stats(res) -> dict:
    out = {
        "status": res.status,
        "objects": len(res.graph),
        "reduced_objects": len(res.reduced),
        "finite": res.flags.is_finite,
        "cartan_graph": res.flags.is_cartan_graph,
        "standard": res.flags.is_standard,
        "indecomposable": res.flags.is_indecomposable,
        "admits_all_reflections": res.flags.admits_all_reflections_up_to_cap,
        "diagnostics": list(res.diagnostics),
    }
    if res.status == "ok" and res.flags.is_finite:
        pos = res.roots_of(0).sorted_positive()
        out["positive_roots"] = len(pos)
        out["roots"] = [_root(v) for v in pos]
        out["reduced_matrices"] = [_matrix(m.rows) for m in res.reduced.matrices()]
        out["orbit_sizes"] = sorted((len(o) for o in weyl_orbits(res, 0)), reverse=True)
        if res.graph.theta == 3 and res.flags.is_indecomposable:
            out["catalog_case"] = rank3_catalog_match(res)
            out["column_property_violations"] = column_property_violations(res.graph)
        if res.flags.is_cartan_graph and res.flags.is_indecomposable:
            out["finite_type_witness"] = finite_type_witness(res)
    return out


def run_classify(spec: TupleSpec, crosscheck: bool = True) -> tuple[dict, int]:
    M, caps = spec.tuple, spec.caps
    rep = classify_tuple(M, caps["objects"], caps["roots"], caps["adjoint"], caps["oracle_budget"])
    skel = None
    if rep.skeleton is not None:
        found = match_skeleton(rep.skeleton, M.char)
        shown = found[0].shown_ratios(found[1]) if found else set()
        skel = rep.skeleton.format(shown)
    finite_evidence = None
    if rep.nichols_status == "ok":
        finite_evidence = "verified-up-to-cap"
    elif rep.skeleton_type.finite_type and M.theta >= 3:
        finite_evidence = "proved-by-closed-form"
    out = {
        "char": M.char,
        "theta": M.theta,
        "group_order": M.group.order,
        "module_dims": [N.dim for N in M.modules],
        "support_generates": rep.in_E,
        "braid_indecomposable": rep.braid_indecomposable,
        "cartan_matrix": _matrix(rep.cartan),
        "skeleton": skel,
        "skeleton_note": rep.skeleton_note,
        "skeleton_type": str(rep.skeleton_type),
        "skeleton_finite_type": rep.skeleton_type.finite_type,
        "graph": _graph_stats(rep.exploration),
        "nichols_status": rep.nichols_status,
        "finite_dimensional": {"ok": True, "infinite": False}.get(rep.nichols_status),
        "finite_evidence": finite_evidence,
        "hilbert_series": rep.series.format() if rep.series else None,
        "dimension": _dimension(rep.dimension),
        "warnings": rep.warnings,
        "inconsistencies": rep.inconsistencies,
    }
    if crosscheck and rep.series is not None:
        out["crosscheck"] = _crosscheck(M, rep.series, caps)
    code = EXIT_INCONCLUSIVE if rep.nichols_status == "inconclusive" else EXIT_OK
    return out, code


def _crosscheck(M, series, caps) -> dict:
    try:
        cc = hilbert_oracle_crosscheck(M, series, caps["oracle_degree"], caps["oracle_budget"])
    except BudgetExceeded as exc:
        return {"status": "skipped", "reason": str(exc)}
    return {
        "status": "agree" if cc.agree else "disagree",
        "max_degree": cc.max_degree,
        "checked": cc.checked,
        "mismatches": [[list(k), p, g] for k, p, g in cc.mismatches],
    }


def run_cartan(spec: TupleSpec) -> tuple[dict, int]:
    M = spec.tuple
    A = cartan_matrix(M, spec.caps["adjoint"])
    out = {"char": M.char, "theta": M.theta, "cartan_matrix": _matrix(A)}
    if A == EXCEEDS_CAP:
        return out, EXIT_INCONCLUSIVE
    try:
        out["gcm_type"] = classify_gcm(A).value
    except CartanError:
        out["gcm_type"] = "decomposable"
    out["finite_type_name"] = finite_type_name(A)
    return out, EXIT_OK


def run_explore(spec: TupleSpec) -> tuple[dict, int]:
    caps = spec.caps
    res = explore(spec.tuple, caps["objects"], caps["roots"], caps["adjoint"])
    out = _graph_stats(res)
    return out, EXIT_OK if res.status == "ok" else EXIT_INCONCLUSIVE


def run_hilbert(spec: TupleSpec, single: bool, crosscheck: int | None) -> tuple[dict, int]:
    caps = spec.caps
    res = hilbert_series(spec.tuple, caps["objects"], caps["roots"], caps["adjoint"], caps["oracle_budget"])
    out = {"status": res.status, "diagnostics": res.diagnostics}
    if res.series is not None:
        s = res.series
        out["series"] = s.format(single=single)
        out["dimension"] = _dimension(s.dimension())
        if single:
            out["coefficients"] = s.single_t()
        else:
            out["factors"] = [{"root": _root(f.beta), "dims": f.dims} for f in s.factors]
        if crosscheck is not None:
            out["crosscheck"] = _crosscheck(spec.tuple, s, dict(caps, oracle_degree=crosscheck))
    code = {"ok": EXIT_OK, "infinite": EXIT_OK}.get(res.status, EXIT_INCONCLUSIVE)
    return out, code


def run_oracle(spec: TupleSpec, max_degree: int) -> tuple[dict, int]:
    M = spec.tuple
    dims = []
    try:
        for n in range(max_degree + 1):
            graded = symmetrizer_graded_dim(list(M.modules), M.char, n, spec.caps["oracle_budget"])
            dims.append({
                "degree": n,
                "total": sum(graded.values()),
                "graded": {_root(k): v for k, v in sorted(graded.items())},
            })
    except BudgetExceeded as exc:
        return {"graded_dims": dims, "status": "inconclusive", "reason": str(exc)}, EXIT_INCONCLUSIVE
    return {"graded_dims": dims, "status": "ok"}, EXIT_OK


def run_realize(name: str, theta: int, char: int) -> str:
    key = TYPE_ALIASES.get(name.strip().lower().replace("_", "").replace("′", "'"))
    if key is None:
        raise InputError(f"unknown skeleton type {name!r}")
    M = realize_skeleton(key, theta, char)
    return tuple_to_toml(M)


def run_catalog_rank3(spec: TupleSpec) -> tuple[dict, int]:
    caps = spec.caps
    if spec.tuple.theta != 3:
        raise InputError("catalog-rank3 needs three modules")
    res = explore(spec.tuple, caps["objects"], caps["roots"], caps["adjoint"])
    if res.status != "ok":
        return {"status": res.status, "diagnostics": res.diagnostics}, EXIT_INCONCLUSIVE
    out = _graph_stats(res)
    if "catalog_case" not in out:
        out["catalog_case"] = "none"
    return out, EXIT_OK


# ---------------------------------------------------------------------------
# Output


def _emit_text(data, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    for k, v in data.items():
        if isinstance(v, dict):
            lines.append(f"{pad}{k}:")
            lines.extend(_emit_text(v, indent + 1))
        elif isinstance(v, str) and "\n" in v:
            lines.append(f"{pad}{k}:")
            lines.extend(f"{pad}  {line}" for line in v.splitlines())
        elif isinstance(v, list) and v and all(isinstance(x, dict) for x in v):
            lines.append(f"{pad}{k}:")
            for x in v:
                sub = _emit_text(x, indent + 2)
                sub[0] = f"{pad}  - " + sub[0].lstrip()
                lines.extend(sub)
        else:
            lines.append(f"{pad}{k}: {_scalar_text(v)}")
    return lines


def _scalar_text(v) -> str:
    if v is None:
        return "none"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, list):
        return json.dumps(v)
    return str(v)


def emit(data: dict, as_json: bool, out=None) -> None:
    out = out or sys.stdout
    if as_json:
        out.write(json.dumps(data, indent=2, sort_keys=True) + "\n")
    else:
        out.write("\n".join(_emit_text(data)) + "\n")


# ---------------------------------------------------------------------------
# Entry point


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap-adjoint", type=int)
    common.add_argument("--cap-objects", type=int)
    common.add_argument("--cap-roots", type=int)
    common.add_argument("--oracle-max-degree", type=int)
    common.add_argument("--char", type=int)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--timing", action="store_true", help="report wall time on stderr")

    p = argparse.ArgumentParser(prog="ydweyl", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    for name, helptext in (
        ("classify", "full report: skeleton, Cartan graph, Nichols dimension"),
        ("cartan", "Cartan matrix of the tuple"),
        ("explore", "explore the Cartan graph"),
        ("oracle", "graded dimensions from the brute-force symmetrizer"),
        ("catalog-rank3", "match a rank-three Cartan graph against the catalog"),
    ):
        sp = sub.add_parser(name, parents=[common], help=helptext)
        sp.add_argument("file")
        if name == "classify":
            sp.add_argument("--no-crosscheck", action="store_true")
    hp = sub.add_parser("hilbert", parents=[common], help="Hilbert series")
    hp.add_argument("file")
    mode = hp.add_mutually_exclusive_group()
    mode.add_argument("--multivariate", action="store_true", default=True)
    mode.add_argument("--single-t", action="store_true")
    hp.add_argument("--crosscheck", type=int, metavar="D")
    rp = sub.add_parser("realize", parents=[common], help="tuple file with a skeleton of a given type")
    rp.add_argument("--type", required=True)
    rp.add_argument("--theta", type=int, required=True)
    rp.add_argument("-o", "--output")
    return p


def _load(args) -> TupleSpec:
    try:
        with open(args.file, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(str(exc)) from exc
    spec = parse_tuple_text(text, args.char)
    for flag, key in (
        ("cap_adjoint", "adjoint"),
        ("cap_objects", "objects"),
        ("cap_roots", "roots"),
        ("oracle_max_degree", "oracle_degree"),
    ):
        v = getattr(args, flag)
        if v is not None:
            spec.caps[key] = v
    return spec


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    start = time.perf_counter()
    try:
        if args.command == "realize":
            text = run_realize(args.type, args.theta, args.char or 0)
            if args.output:
                with open(args.output, "w", encoding="utf-8") as fh:
                    fh.write(text)
            else:
                sys.stdout.write(text)
            code = EXIT_OK
        else:
            spec = _load(args)
            if args.command == "classify":
                data, code = run_classify(spec, not args.no_crosscheck)
            elif args.command == "cartan":
                data, code = run_cartan(spec)
            elif args.command == "explore":
                data, code = run_explore(spec)
            elif args.command == "hilbert":
                data, code = run_hilbert(spec, args.single_t, args.crosscheck)
            elif args.command == "oracle":
                data, code = run_oracle(spec, spec.caps["oracle_degree"])
            else:
                data, code = run_catalog_rank3(spec)
            emit(data, args.json)
    except CapExceeded as exc:
        sys.stderr.write(f"inconclusive: {exc}\n")
        return EXIT_INCONCLUSIVE
    except (InputError, SkeletonError, YDError, GroupError, ScalarError, CartanError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INVALID
    if args.timing:
        sys.stderr.write(f"elapsed: {time.perf_counter() - start:.3f}s\n")
    return code


if __name__ == "__main__":
    raise SystemExit(main())
