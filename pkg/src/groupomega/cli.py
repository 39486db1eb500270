"""Command-line interface.

Exit codes: 0 success or true verdict, 1 false verdict, 2 usage or parse
error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import bounds, jennings, matchings, tensors, tpp, young
from .algebra import ideal_powers
from .arith import exact_log
from .budget import BudgetExceeded
from .fields import Subspace
from .groups import (
    GroupSpecError,
    conjugacy_class_count,
    is_p_group,
    parse_group_spec,
    quotient,
    subgroup_closure,
)

SCHEMA = 1
EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
BIG = 2**53
GLOBAL_DEFAULTS = {"json": False, "budget": None, "verbose": False}

log = logging.getLogger("groupomega")


class UsageError(Exception):
    pass


def _jsonable(x):
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, (int, np.integer)):
        x = int(x)
        return str(x) if abs(x) >= BIG else x
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (float, np.floating)):
        return float(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, Subspace):
        return {"p": x.p, "ambient": x.ambient, "dim": x.dim, "basis": x.basis.tolist()}
    raise TypeError(f"cannot serialize {type(x).__name__}")


def _text(payload: dict, indent: int = 0) -> str:
    lines = []
    pad = "  " * indent
    for k, v in payload.items():
        if isinstance(v, dict):
            lines.append(f"{pad}{k}:")
            lines.append(_text(v, indent + 1))
        elif isinstance(v, Subspace):
            rows = " ".join("".join(str(int(c)) for c in r) for r in v.basis) or "(zero)"
            lines.append(f"{pad}{k}: dim {v.dim} of {v.ambient}: {rows}")
        elif isinstance(v, (list, tuple)) and v and isinstance(v[0], dict):
            lines.append(f"{pad}{k}:")
            for item in v:
                lines.append(pad + "  - " + ", ".join(f"{a}={b}" for a, b in item.items()))
        elif isinstance(v, (list, tuple)):
            lines.append(f"{pad}{k}: " + ", ".join(str(x) for x in v))
        else:
            lines.append(f"{pad}{k}: {v}")
    return "\n".join(lines)


def _group(text: str):
    return parse_group_spec(text)


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from e


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as e:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from e


def _range(text: str) -> list[int]:
    """``a..b`` (inclusive) or ``a,b,c``."""
    if ".." in text:
        lo, _, hi = text.partition("..")
        try:
            return list(range(int(lo), int(hi) + 1))
        except ValueError as e:
            raise UsageError(f"bad range {text!r}") from e
    return _int_list(text)


def _verdict(v: tpp.Verdict) -> dict:
    out = {"verdict": v.ok}
    if not v.ok:
        out["counterexample"] = list(v.counterexample)
        out["detail"] = v.detail
    return out


# --------------------------------------------------------------------------
# handlers: each returns (payload, exit code)


def cmd_group_info(a):
    G = _group(a.group)
    return {
        "group": G.spec,
        "order": G.order,
        "abelian": G.is_abelian(),
        "exponent": G.exponent(),
        "classes": conjugacy_class_count(G),
        "center_order": G.center().order,
        "generators": list(G.generators()),
    }, EXIT_OK


def cmd_jennings(a):
    G = _group(a.group)
    series = jennings.p_lower_central_series(G, a.p)
    r = jennings.degrees_of_series(series)
    return {
        "group": G.spec,
        "p": a.p,
        "term_orders": [t.order for t in series.terms],
        "pDegrees": list(r.r),
        "n": r.n,
        "length": r.length,
    }, EXIT_OK


def cmd_ideal_dims(a):
    G = _group(a.group)
    powers = ideal_powers(G, a.p)
    dims = [S.dim for S in powers]
    out = {"group": G.spec, "p": a.p, "dims": dims}
    if a.dump_basis:
        folder = Path(a.dump_basis)
        folder.mkdir(parents=True, exist_ok=True)
        for k, S in enumerate(powers):
            (folder / f"I{k}.txt").write_text(S.to_text())
        out["basisFiles"] = [str(folder / f"I{k}.txt") for k in range(len(powers))]
    if G.order > 1 and is_p_group(G, a.p):
        out["jennings_dims"] = jennings.jennings_ideal_dims(jennings.p_degrees(G, a.p))
    return out, EXIT_OK


def cmd_slice_bound(a):
    G = _group(a.group)
    rep = bounds.ideal_bound(G, a.p)
    out = {
        "group": G.spec,
        "order": rep.order,
        "p": rep.p,
        "dims": rep.dims,
        "idealExact": rep.ideal_exact,
        "argmin": list(rep.argmin),
        "trivial": rep.trivial,
        "semisimple": rep.semisimple,
    }
    if rep.p_degrees is not None:
        out["pDegrees"] = list(rep.p_degrees.r)
        out["deltaG"] = rep.delta.delta_g
        out["deltaPrimeG"] = rep.delta.delta_prime
        out["hoeffding"] = rep.hoeffding
    return out, EXIT_OK


def cmd_nilpotent_bound(a):
    G = _group(a.group)
    table = bounds.nilpotent_bound_table(G)
    best, prime = bounds.nilpotent_bound(G)
    return {"group": G.spec, "order": G.order, "perPrime": table, "bound": best, "prime": prime}, EXIT_OK


def _load_tensor(path: str) -> tensors.Tensor3:
    try:
        return tensors.Tensor3.from_text(_read(path))
    except ValueError as e:
        raise UsageError(f"bad tensor file {path}: {e}") from e


def cmd_tensor_slicerank(a):
    t = _load_tensor(a.file)
    cert = tensors.slice_rank_exact(t)
    A, B, C = cert.subspaces
    return {"dims": list(t.dims), "p": t.p, "sliceRank": cert.value, "witness": {"A": A, "B": B, "C": C}}, EXIT_OK


def cmd_tensor_flatrank(a):
    t = _load_tensor(a.file)
    cert = tensors.flat_rank_exact(t)
    (V,) = cert.subspaces
    return {"dims": list(t.dims), "p": t.p, "flatRank": cert.value, "r": cert.r, "c": cert.c, "witness": {"V": V}}, EXIT_OK


def cmd_tensor_build(a):
    if a.mult:
        t = tensors.mult_tensor(_group(a.mult), a.p)
    elif a.matmul:
        t = tensors.matmul_tensor(a.matmul, a.p)
    else:
        t = tensors.diagonal_tensor(a.diagonal, a.p)
    return {"tensor": t.to_text()}, EXIT_OK


def _load_stpp(path: str) -> tpp.STPPInstance:
    try:
        return tpp.load_instance(_read(path))
    except (KeyError, TypeError, json.JSONDecodeError) as e:
        raise UsageError(f"bad instance file {path}: {e}") from e


def cmd_tpp_verify(a):
    inst = _load_stpp(a.file)
    if len(inst.triples) != 1:
        raise UsageError("tpp verify takes exactly one triple; use stpp verify")
    t = inst.tpp(0)
    v = tpp.verify_tpp(t, a.budget)
    nec = tpp.nec_tpp_check_instance(t)
    out = {"group": inst.group.spec, "sizes": list(t.sizes), **_verdict(v)}
    out["necessary"] = {"ratio": nec.ratio, "classes": nec.classes, "vacuous": nec.vacuous}
    return out, EXIT_OK if v else EXIT_FALSE


def cmd_stpp_verify(a):
    inst = _load_stpp(a.file)
    v = tpp.verify_stpp(inst, a.budget)
    pk = tpp.packing_check(inst)
    out = {"group": inst.group.spec, "triples": len(inst.triples), **_verdict(v)}
    out["packing"] = {"sums": list(pk.sums), "ratios": list(pk.ratios), "withinBound": pk.within_bound}
    return out, EXIT_OK if v else EXIT_FALSE


def cmd_omega(a):
    inst = _load_stpp(a.file)
    sizes = [tuple(len(X) for X in tr) for tr in inst.triples]
    given = tpp.DegreeMultiset.parse(a.degrees) if a.degrees else None
    degrees = tpp.char_degrees(inst.group, given)
    res = tpp.omega_solve(sizes, degrees)
    return {
        "group": inst.group.spec,
        "sizes": sizes,
        "omegaStar": res.omega_star,
        "bound": res.has_bound,
        "monotone": res.monotone,
        "signChanges": list(res.sign_changes),
        "infeasible": res.infeasible,
    }, EXIT_OK


def _matching_payload(m: matchings.Matching, v: tpp.Verdict) -> dict:
    out = {"group": m.group.spec, "border": m.border, "cardinality": len(m), **_verdict(v)}
    return out


def cmd_matching_verify(a):
    try:
        m = matchings.load_matching(_read(a.file))
    except (KeyError, TypeError, json.JSONDecodeError) as e:
        raise UsageError(f"bad matching file {a.file}: {e}") from e
    v = matchings.verify_any(m, a.budget)
    return _matching_payload(m, v), EXIT_OK if v else EXIT_FALSE


def _emit_matching(m, a, spec=None) -> dict:
    v = matchings.verify_any(m, a.budget)
    out = _matching_payload(m, v)
    if spec:
        out["group"] = spec
    if a.out:
        Path(a.out).write_text(matchings.dump_matching(m, spec) + "\n")
        out["written"] = a.out
    return out


def cmd_matching_cyclic(a):
    if a.m < 1:
        raise UsageError("-m must be positive")
    m = matchings.cyclic_border(a.m)
    out = _emit_matching(m, a)
    return out, EXIT_OK if out["verdict"] else EXIT_FALSE


def cmd_matching_chain(a):
    G = _group(a.group)
    m = matchings.pgroup_chain_border(G, a.p)
    out = _emit_matching(m, a, a.group)
    out["bound"] = Fraction(a.p, 2) ** exact_log(G.order, a.p)
    return out, EXIT_OK if out["verdict"] else EXIT_FALSE


def cmd_matching_extend(a):
    """Inner elements are indices of G inside N; outer elements are any
    representatives in G of the quotient elements."""
    G = _group(a.group)
    N = subgroup_closure(G, _int_list(a.normal_gens))
    q = quotient(G, N)
    NG, embed = q.normal_group
    pos = {g: i for i, g in enumerate(embed)}
    try:
        inner_g = matchings.load_matching(_read(a.inner), G)
        outer_g = matchings.load_matching(_read(a.outer), G)
    except (KeyError, TypeError, json.JSONDecodeError) as e:
        raise UsageError(f"bad matching file: {e}") from e
    bad = [x for x in inner_g.s + inner_g.t + inner_g.u if x not in pos]
    if bad:
        raise UsageError(f"inner matching element {bad[0]} is not in N")
    inner = matchings.transport(inner_g, NG, [pos.get(g, -1) for g in range(G.order)])
    outer = matchings.transport(outer_g, q.quotient, [q.project(g) for g in range(G.order)])
    m = matchings.extend_matching(q, inner, outer)
    out = _emit_matching(m, a, a.group)
    out["inner"] = len(inner)
    out["outer"] = len(outer)
    return out, EXIT_OK if out["verdict"] else EXIT_FALSE


def _shape_payload(sh: young.LatticeShape) -> dict:
    r = young.shape_ratio(sh)
    return {
        "kind": sh.kind,
        "size": sh.size,
        "n": sh.n,
        "lineSizes": [[len(b) for b in p.blocks] for p in sh.partitions],
        "subgroupOrders": list(r.orders),
        "logRatio": r.log_ratio,
    }


def cmd_young_triangle(a):
    return _shape_payload(young.triangle_shape(a.m)), EXIT_OK


def cmd_young_hexagon(a):
    return _shape_payload(young.hexagon_shape(a.s)), EXIT_OK


def cmd_young_ratio(a):
    if a.shape:
        try:
            sh = young.shape_from_text(a.shape)
        except ValueError as e:
            raise UsageError(str(e)) from e
        return _shape_payload(sh), EXIT_OK
    if a.hexagon is None or a.triangle is None:
        raise UsageError("give --shape, or both --hexagon and --triangle")
    hexa, tri = young.hexagon_shape(a.hexagon), young.triangle_shape(a.triangle)
    ratio = young.direction_order_ratio(hexa, tri)
    return {
        "hexagonPoints": hexa.n,
        "trianglePoints": tri.n,
        "ratio": ratio,
        "ratioFloat": float(ratio),
    }, EXIT_OK


def cmd_young_scan(a):
    shapes = []
    for spec in a.shapes:
        kind, _, rng = spec.partition(":")
        try:
            shapes += [young.shape_from_text(f"{kind}:{k}") for k in _range(rng)]
        except ValueError as e:
            raise UsageError(str(e)) from e
    rows = young.theorem_young_scan(shapes, a.c, a.d)
    table = [
        {"kind": r.kind, "size": r.size, "n": r.n, "logRatio": round(r.log_ratio, 6), "margin": round(r.margin, 6), "ok": r.ok}
        for r in rows
    ]
    ok = all(r.ok for r in rows)
    return {"c": a.c, "d": a.d, "allPass": ok, "rows": table}, EXIT_OK if ok else EXIT_FALSE


def cmd_explore_delta_prime(a):
    ells = [2**k for k in _range(a.exponents)]
    scan = bounds.synthetic_delta_scan(ells, a.c)
    rows = [{"ell": ell, "deltaPrime": dp, "normalized": dp / bounds.delta_prime_trend(a.c, ell)} for ell, dp in scan]
    norm = [r["normalized"] for r in rows]
    return {"c": a.c, "rows": rows, "bandRatio": max(norm) / min(norm)}, EXIT_OK


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
    common.add_argument("--budget", type=int, default=argparse.SUPPRESS, help="brute-force operation budget")
    common.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(prog="groupomega", description=__doc__.split("\n")[0], parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)

    def leaf(subparsers, name, func, help_text):
        p = subparsers.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    def nested(name, help_text):
        p = sub.add_parser(name, help=help_text)
        return p.add_subparsers(dest="action", required=True)

    g = nested("group", "group facts")
    leaf(g, "info", cmd_group_info, "order, exponent, class count").add_argument("group")

    p = leaf(sub, "jennings", cmd_jennings, "p-lower central series and p-degrees")
    p.add_argument("group")
    p.add_argument("-p", type=int, required=True)

    p = leaf(sub, "ideal-dims", cmd_ideal_dims, "dimensions of augmentation ideal powers")
    p.add_argument("group")
    p.add_argument("-p", type=int, required=True)
    p.add_argument("--dump-basis", metavar="DIR", help="write each power's reduced basis to DIR/I<k>.txt")

    p = leaf(sub, "slice-bound", cmd_slice_bound, "ideal-power slice-rank bound and delta")
    p.add_argument("group")
    p.add_argument("-p", type=int, required=True)

    p = leaf(sub, "nilpotent-bound", cmd_nilpotent_bound, "Sylow-extension bound")
    p.add_argument("group")

    t = nested("tensor", "exact tensor ranks")
    leaf(t, "slicerank", cmd_tensor_slicerank, "exact slice rank").add_argument("file")
    leaf(t, "flatrank", cmd_tensor_flatrank, "exact flat rank").add_argument("file")
    p = leaf(t, "build", cmd_tensor_build, "print a tensor file")
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--mult", metavar="GROUP")
    which.add_argument("--matmul", type=int, metavar="N")
    which.add_argument("--diagonal", type=int, metavar="M")
    p.add_argument("-p", type=int, default=2)

    t = nested("tpp", "triple product property")
    leaf(t, "verify", cmd_tpp_verify, "brute-force TPP check").add_argument("file")
    t = nested("stpp", "simultaneous triple product property")
    leaf(t, "verify", cmd_stpp_verify, "brute-force STPP check").add_argument("file")

    p = leaf(sub, "omega", cmd_omega, "solve the omega inequality")
    p.add_argument("file")
    p.add_argument("--degrees", help="comma-separated irreducible degrees")

    m = nested("matching", "multiplicative matchings")
    leaf(m, "verify", cmd_matching_verify, "verify a matching file").add_argument("file")
    p = leaf(m, "cyclic", cmd_matching_cyclic, "border matching in Z/m")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("--out")
    p = leaf(m, "chain", cmd_matching_chain, "border matching in a p-group")
    p.add_argument("group")
    p.add_argument("-p", type=int, required=True)
    p.add_argument("--out")
    p = leaf(m, "extend", cmd_matching_extend, "combine matchings in N and G/N")
    p.add_argument("group")
    p.add_argument("--normal-gens", required=True, help="comma-separated generators of N")
    p.add_argument("--inner", required=True, help="matching file in N (indices of G)")
    p.add_argument("--outer", required=True, help="matching file in G/N (representatives in G)")
    p.add_argument("--out")

    y = nested("young", "Young subgroups of S_n")
    leaf(y, "triangle", cmd_young_triangle, "triangular array").add_argument("-m", type=int, required=True)
    leaf(y, "hexagon", cmd_young_hexagon, "hexagonal array").add_argument("-s", type=int, required=True)
    p = leaf(y, "ratio", cmd_young_ratio, "subgroup-order ratios")
    p.add_argument("--shape", help="triangle:m or hexagon:s")
    p.add_argument("--hexagon", type=int)
    p.add_argument("--triangle", type=int)
    p = leaf(y, "scan", cmd_young_scan, "check the exponential lower bound on shapes")
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--d", type=float, required=True)
    p.add_argument("--shapes", nargs="+", required=True, help="e.g. triangle:2..13 hexagon:2..6")

    e = nested("explore", "exploratory scans")
    p = leaf(e, "delta-prime", cmd_explore_delta_prime, "delta' for weights r_i = i^c")
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--exponents", default="4..16", help="log2 of the lengths, e.g. 4..16")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    # filled in here rather than with set_defaults, which would also change
    # the actions shared with every subcommand and clobber a leading flag
    for key, value in GLOBAL_DEFAULTS.items():
        if not hasattr(args, key):
            setattr(args, key, value)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    if args.budget is not None and args.budget <= 0:
        print("error: --budget must be positive", file=sys.stderr)
        return EXIT_USAGE
    name = " ".join(x for x in (args.command, getattr(args, "action", None)) if x)
    try:
        payload, code = args.func(args)
    except BudgetExceeded as e:
        print(f"budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, GroupSpecError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    if args.json:
        print(json.dumps({"schema": SCHEMA, "command": name, **_jsonable(payload)}))
    elif "tensor" in payload and len(payload) == 1:
        sys.stdout.write(payload["tensor"])
    else:
        print(_text(payload))
    return code


if __name__ == "__main__":
    sys.exit(main())
