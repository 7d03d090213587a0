"""Command-line interface.

Exit codes: 0 success, 2 parse/precondition error, 3 size cap exceeded,
4 external data required, 5 internal invariant violation (a bug).
Data goes to stdout; progress and diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional

from . import catalog as cat
from .cache import JsonCache, cache_key, resolve_cache_dir
from .cellularity import (
    cellularity_report,
    fusion_invariance_certificate,
    hyperfocal_subgroup,
    min_cellular_exponent,
    omega_subgroup,
    strong_closure,
)
from .errors import (
    ExternalDataRequired,
    FusioncellError,
    InternalInvariantError,
    InvalidInput,
    InvalidSpec,
    OrderCapExceeded,
    RelationCheckFailed,
    SubgroupMismatch,
)
from .fusion import (
    FusionSystem,
    fusion_attach_tables,
    fusion_axiomatized,
    fusion_from_group,
    fusion_generated,
    fusion_to_tables_json,
    is_saturated,
    strongly_closed_subgroups,
)
from .groups import (
    DEFAULT_BUILD_CAP,
    DEFAULT_SUBGROUP_CAP,
    FiniteGroup,
    GroupHom,
    Subgroup,
    all_subgroups,
    center,
    full_subgroup,
)
from .specs import expand_shorthand, group_from_json, parse_group_spec, spec_to_json

EXIT_PARSE = 2
EXIT_CAP = 3
EXIT_EXTERNAL = 4
EXIT_INTERNAL = 5


def _emit(data: dict, as_json: bool, human: str) -> None:
    if as_json:
        sys.stdout.write(json.dumps(data, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(human + "\n")


def _load_json_arg(value: str) -> dict:
    """Inline JSON object or a path to a JSON file."""
    value = value.strip()
    if value.startswith("{"):
        return json.loads(value)
    path = Path(value)
    if not path.exists():
        raise InvalidSpec(f"no such file: {value}")
    return json.loads(path.read_text())


def _canonical_group_spec(value) -> dict:
    if isinstance(value, str):
        stripped = value.strip()
        if stripped.startswith("{"):
            value = json.loads(stripped)
        else:
            value = expand_shorthand(stripped)
    return spec_to_json(parse_group_spec(value))


def _canonical_fusion_spec(data: dict) -> dict:
    kind = data.get("kind")
    if kind == "group-induced":
        return {
            "kind": kind,
            "ambient": _canonical_group_spec(data["ambient"]),
            "p": int(data["p"]),
        }
    if kind == "generated":
        return {
            "kind": kind,
            "S": _canonical_group_spec(data["S"]),
            "p": int(data["p"]),
            "seeds": [
                {
                    "domain": sorted(int(x) for x in seed["domain"]),
                    "map": {str(int(k)): int(v) for k, v in seed["map"].items()},
                }
                for seed in data.get("seeds", [])
            ],
        }
    if kind == "axiomatized":
        return {
            "kind": kind,
            "S": _canonical_group_spec(data["S"]),
            "p": int(data["p"]),
            "strongly_closed": [
                sorted(int(x) for x in k) for k in data.get("strongly_closed", [])
            ],
        }
    raise InvalidSpec(f"unknown fusion spec kind {kind!r}")


def _parse_seed_homs(S: FiniteGroup, seeds: list[dict]) -> list[GroupHom]:
    out = []
    for seed in seeds:
        members = sorted(int(x) for x in seed["domain"])
        dom = Subgroup(S, members)
        mapping = {int(k): int(v) for k, v in seed["map"].items()}
        if set(mapping) != set(members):
            raise InvalidSpec("seed map keys must be exactly the domain members")
        out.append(GroupHom(dom, S, tuple(mapping[x] for x in members)))
    return out


def build_fusion(
    data: dict,
    build_cap: int = DEFAULT_BUILD_CAP,
    sub_cap: int = DEFAULT_SUBGROUP_CAP,
    cache_dir: Optional[Path] = None,
) -> FusionSystem:
    """Build a fusion system from its canonical JSON, with table caching."""
    spec = _canonical_fusion_spec(data)
    caps = {"build": build_cap, "enumerate": sub_cap}
    cache = JsonCache(cache_dir) if cache_dir else None
    key = cache_key("fusion", spec, caps)
    if spec["kind"] == "group-induced":
        G = group_from_json(spec["ambient"], cap=build_cap)
        F = fusion_from_group(G, spec["p"], cap=sub_cap, spec_json=spec)
    elif spec["kind"] == "generated":
        S = group_from_json(spec["S"], cap=build_cap)
        seeds = _parse_seed_homs(S, spec["seeds"])
        F = fusion_generated(S, spec["p"], seeds, cap=sub_cap, spec_json=spec)
    else:
        S = group_from_json(spec["S"], cap=build_cap)
        declared = [Subgroup(S, members) for members in spec["strongly_closed"]]
        F = fusion_axiomatized(S, spec["p"], declared, spec_json=spec)
        return F
    if cache is not None:
        hit = cache.read(key)
        if hit is not None:
            fusion_attach_tables(F, hit)
        else:
            F.materialize(cap=sub_cap)
            cache.write(key, fusion_to_tables_json(F))
    return F


def _fusion_from_args(args) -> FusionSystem:
    data = _load_json_arg(args.fusion)
    return build_fusion(
        data,
        build_cap=args.cap or DEFAULT_BUILD_CAP,
        sub_cap=min(args.cap or DEFAULT_SUBGROUP_CAP, DEFAULT_SUBGROUP_CAP)
        if args.cap
        else DEFAULT_SUBGROUP_CAP,
        cache_dir=resolve_cache_dir(args.cache_dir),
    )


def _group_from_args(value: str, cap: Optional[int]) -> FiniteGroup:
    return group_from_json(_canonical_group_spec(value), cap=cap or DEFAULT_BUILD_CAP)


# ---------------------------------------------------------------------------
# subcommands


def _cmd_group(args) -> int:
    G = _group_from_args(args.spec, args.cap)
    data = {
        "order": G.order,
        "identity": G.identity,
        "label": G.label,
        "center": list(center(G).members),
        "spec": G.spec,
    }
    _emit(data, args.json, f"group {G.label}: order {G.order}, |center| {center(G).order}")
    return 0


def _cmd_subgroups(args) -> int:
    G = _group_from_args(args.spec, args.cap)
    subs = all_subgroups(G, cap=args.cap or DEFAULT_SUBGROUP_CAP)
    data = {"count": len(subs), "subgroups": [list(H.members) for H in subs]}
    _emit(data, args.json, f"{len(subs)} subgroups of a group of order {G.order}")
    return 0


def _cmd_fusion(args) -> int:
    F = _fusion_from_args(args)
    data = {
        "S_order": F.S.order,
        "p": F.p,
        "provenance": type(F.provenance).__name__,
        "spec": F.spec_json,
    }
    _emit(
        data,
        args.json,
        f"fusion system over S of order {F.S.order} at p={F.p} "
        f"({type(F.provenance).__name__})",
    )
    return 0


def _cmd_saturated(args) -> int:
    F = _fusion_from_args(args)
    report = is_saturated(F)
    data = {
        "saturated": report.saturated,
        "witnesses": [
            {"axiom": w.axiom, "subgroup": list(w.subgroup), "detail": w.detail}
            for w in report.witnesses
        ],
    }
    _emit(
        data,
        args.json,
        "saturated" if report.saturated else f"NOT saturated ({len(report.witnesses)} witnesses)",
    )
    return 0


def _cmd_closure(args) -> int:
    F = _fusion_from_args(args)
    P = _group_from_args(args.P, args.cap)
    K = strong_closure(F, P)
    data = {"closure": list(K.members), "closure_order": K.order}
    _emit(data, args.json, f"closure has order {K.order} of {F.S.order}")
    return 0


def _cmd_cellular(args) -> int:
    F = _fusion_from_args(args)
    P = _group_from_args(args.P, args.cap)
    report = cellularity_report(F, P)
    _emit(report.to_json(), args.json, report.verdict_text)
    return 0


def _cmd_omega(args) -> int:
    G = _group_from_args(args.spec, args.cap)
    H = omega_subgroup(G, args.p, args.m)
    data = {"members": list(H.members), "order": H.order}
    _emit(data, args.json, f"omega subgroup of exponent {args.p}^{args.m}: order {H.order}")
    return 0


def _cmd_m0(args) -> int:
    F = _fusion_from_args(args)
    m0 = min_cellular_exponent(F)
    _emit({"m0": m0}, args.json, f"minimal cellular exponent: {m0}")
    return 0


def _cmd_hyperfocal(args) -> int:
    F = _fusion_from_args(args)
    res = hyperfocal_subgroup(F)
    data = {
        "hyperfocal": list(res.hyperfocal.members),
        "hyperfocal_order": res.hyperfocal.order,
        "pi1_order": res.pi1.order,
        "projection": list(res.projection.images),
    }
    _emit(
        data,
        args.json,
        f"hyperfocal order {res.hyperfocal.order}; fundamental group order {res.pi1.order}",
    )
    return 0


def _cmd_pi1(args) -> int:
    F = _fusion_from_args(args)
    res = hyperfocal_subgroup(F)
    _emit(
        {"pi1_order": res.pi1.order},
        args.json,
        f"fundamental group order {res.pi1.order}",
    )
    return 0


def _cmd_certificate(args) -> int:
    F = _fusion_from_args(args)
    members = [int(x) for x in args.K.split(",") if x != ""]
    K = Subgroup(F.S, members)
    cert = fusion_invariance_certificate(F, K)
    data = {
        "K": list(cert.K.members),
        "degree": cert.rho_target_degree,
        "checked_pairs": cert.checked_pairs,
        "violations": len(cert.violations),
        "kernel_is_K": True,
    }
    _emit(
        data,
        args.json,
        f"degree {cert.rho_target_degree}, {cert.checked_pairs} pairs checked, "
        f"{len(cert.violations)} violations",
    )
    return 0


def _cmd_report(args) -> int:
    F = _fusion_from_args(args)
    P = _group_from_args(args.P, args.cap)
    rep = cellularity_report(F, P)
    hyp = hyperfocal_subgroup(F)
    closed = strongly_closed_subgroups(F)
    data = {
        "cellularity": rep.to_json(),
        "m0": min_cellular_exponent(F),
        "pi1_order": hyp.pi1.order,
        "hyperfocal_order": hyp.hyperfocal.order,
        "strongly_closed_orders": [K.order for K in closed],
    }
    _emit(
        data,
        args.json,
        rep.verdict_text
        + f"; m0={data['m0']}, |pi1|={data['pi1_order']}, "
        f"{len(closed)} strongly closed subgroups",
    )
    return 0


def _load_seeds_for_b3r(g: cat.B3rGroup, args) -> list[GroupHom]:
    if args.standard_seeds:
        return cat.standard_exotic_seeds(g)
    if args.seed_file:
        payload = json.loads(Path(args.seed_file).read_text())
        return _parse_seed_homs(g.group, payload.get("seeds", []))
    return []


def _cmd_catalog(args) -> int:
    if args.family == "b3r":
        g = cat.build_b3r(args.r, args.gamma)
        data: dict = {
            "r": g.r,
            "gamma": g.gamma,
            "order": g.group.order,
            "named": dict(g.named_elements),
            "N": list(g.N.members),
        }
        human = [f"B(3,{g.r};0,{g.gamma},0): order {g.group.order}, [S:N]=3"]
        if args.census:
            census = cat.order_census(g, args.l)
            data["census"] = {
                "l": census.l,
                "exists_outside_N": census.exists_outside_N,
                "witness": census.witness,
            }
            human.append(
                f"census l={census.l}: exists_outside_N={census.exists_outside_N}"
            )
        if args.verdict:
            rep = cat.exotic_cellularity_verdict(g, args.l)
            data["verdict"] = rep.to_json()
            human.append(rep.verdict_text)
        if args.pi1_check:
            seeds = _load_seeds_for_b3r(g, args)
            data["pi1_check"] = cat.exotic_pi1_check(g, seeds)
            human.append(f"hyperfocal-generates-S check: {data['pi1_check']}")
        _emit(data, args.json, "; ".join(human))
        return 0
    if args.family == "wreath":
        G = cat.build_wreath(args.p, args.n, args.q)
        data = {"order": G.order, "sylow_order": G.order // args.q, "spec": G.spec}
        _emit(data, args.json, f"wreath product of order {G.order}")
        return 0
    if args.family == "sz8":
        sys.stderr.write("building Sz(8); this closes 29120 matrices\n")
        G = cat.build_suzuki_8()
        data = {"order": G.order}
        if args.sylow:
            from .groups import sylow_subgroup

            syl = sylow_subgroup(G, 2)
            data["sylow2_order"] = syl.order
        _emit(data, args.json, f"Sz(8): order {G.order}")
        return 0
    if args.family == "sigma3":
        G = cat.symmetric_group(3)
        _emit({"order": G.order, "spec": G.spec}, args.json, "Sym3: order 6")
        return 0
    raise InvalidSpec(f"unknown catalog family {args.family!r}")


# ---------------------------------------------------------------------------
# argument wiring


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--json", action="store_true", help="emit JSON to stdout")
    sub.add_argument("--cache-dir", default=None, help="cache directory")
    sub.add_argument("--cap", type=int, default=None, help="size cap override")
    sub.add_argument("--seed-file", default=None, help="JSON file with morphism seeds")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fusioncell",
        description="cellularity of classifying spaces of saturated fusion systems",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    sp = subs.add_parser("group", help="build a group and report basic facts")
    sp.add_argument("--spec", required=True)
    _add_common(sp)
    sp.set_defaults(fn=_cmd_group)

    sp = subs.add_parser("subgroups", help="enumerate all subgroups")
    sp.add_argument("--spec", required=True)
    _add_common(sp)
    sp.set_defaults(fn=_cmd_subgroups)

    sp = subs.add_parser("fusion", help="build a fusion system")
    sp.add_argument("--fusion", required=True)
    _add_common(sp)
    sp.set_defaults(fn=_cmd_fusion)

    sp = subs.add_parser("saturated", help="check the saturation axioms")
    sp.add_argument("--fusion", required=True)
    _add_common(sp)
    sp.set_defaults(fn=_cmd_saturated)

    sp = subs.add_parser("closure", help="smallest strongly closed cover")
    sp.add_argument("--fusion", required=True)
    sp.add_argument("--P", required=True, help="test p-group spec or shorthand")
    _add_common(sp)
    sp.set_defaults(fn=_cmd_closure)

    sp = subs.add_parser("cellular", help="cellularity verdict")
    sp.add_argument("--fusion", required=True)
    sp.add_argument("--P", required=True)
    _add_common(sp)
    sp.set_defaults(fn=_cmd_cellular)

    sp = subs.add_parser("omega", help="subgroup generated by small-order elements")
    sp.add_argument("--spec", required=True)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    _add_common(sp)
    sp.set_defaults(fn=_cmd_omega)

    sp = subs.add_parser("m0", help="minimal cellular exponent")
    sp.add_argument("--fusion", required=True)
    _add_common(sp)
    sp.set_defaults(fn=_cmd_m0)

    sp = subs.add_parser("hyperfocal", help="hyperfocal subgroup and pi1")
    sp.add_argument("--fusion", required=True)
    _add_common(sp)
    sp.set_defaults(fn=_cmd_hyperfocal)

    sp = subs.add_parser("pi1", help="fundamental group order")
    sp.add_argument("--fusion", required=True)
    _add_common(sp)
    sp.set_defaults(fn=_cmd_pi1)

    sp = subs.add_parser("certificate", help="fusion-invariance certificate")
    sp.add_argument("--fusion", required=True)
    sp.add_argument("--K", required=True, help="comma-separated member indices")
    _add_common(sp)
    sp.set_defaults(fn=_cmd_certificate)

    sp = subs.add_parser("report", help="combined cellularity report")
    sp.add_argument("--fusion", required=True)
    sp.add_argument("--P", required=True)
    _add_common(sp)
    sp.set_defaults(fn=_cmd_report)

    sp = subs.add_parser("catalog", help="showcase groups and their checks")
    sp.add_argument("family", choices=["b3r", "wreath", "sz8", "sigma3"])
    sp.add_argument("--r", type=int, default=4)
    sp.add_argument("--gamma", type=int, default=0)
    sp.add_argument("--l", type=int, default=1)
    sp.add_argument("--census", action="store_true")
    sp.add_argument("--verdict", action="store_true")
    sp.add_argument("--pi1-check", dest="pi1_check", action="store_true")
    sp.add_argument("--standard-seeds", dest="standard_seeds", action="store_true")
    sp.add_argument("--p", type=int, default=3)
    sp.add_argument("--n", type=int, default=2)
    sp.add_argument("--q", type=int, default=2)
    sp.add_argument("--sylow", action="store_true")
    _add_common(sp)
    sp.set_defaults(fn=_cmd_catalog)

    return parser


def run(argv: Optional[list[str]] = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse errors exit 2 already
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except (InvalidSpec, InvalidInput, SubgroupMismatch, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PARSE
    except OrderCapExceeded as exc:
        sys.stderr.write(f"cap exceeded: {exc}\n")
        return EXIT_CAP
    except ExternalDataRequired as exc:
        sys.stderr.write(f"external data required: {exc}\n")
        return EXIT_EXTERNAL
    except (RelationCheckFailed, InternalInvariantError, FusioncellError) as exc:
        sys.stderr.write(f"internal invariant violation: {exc}\n")
        return EXIT_INTERNAL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
