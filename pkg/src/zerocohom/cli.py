"""Command-line workbench.

One structured JSON report per invocation on stdout (byte-stable for
identical inputs: no timestamps in the payload; timing goes to stderr).
Exit codes: 0 success, 1 oracle mismatch, 2 input error, 3 cap exceeded.
"""

import argparse
import hashlib
import json
import sys
import time

from . import __version__
from .abgroups import FinAbGroup, IntMatrix
from .catalog import named_group
from .cohomology import brute_cohomology, cohomology_group
from .errors import CapExceeded, ZerocohomError
from .modules import Bimodule, ZeroModule, trivial_module
from .presentations import (
    Truncated,
    enumerate_presentation,
    format_presentation,
    gown_presentation,
    gown_sequences,
    parse_presentation,
)
from .semigroups import from_named_table, ideals, predicates


def _digest(path):
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()[:16]


def load_semigroup(path):
    with open(path) as fh:
        doc = json.load(fh)
    return from_named_table(doc["elements"], doc["table"], doc.get("zero"))


def load_coefficients(path):
    with open(path) as fh:
        doc = json.load(fh)
    return FinAbGroup(doc["invariant_factors"])


def load_module(path, S):
    with open(path) as fh:
        doc = json.load(fh)
    A = FinAbGroup(doc["invariant_factors"])
    if "action" not in doc:
        return trivial_module(S, A)
    def read_action(field):
        return {
            S.index(name): IntMatrix.from_rows(rows, A.rank)
            for name, rows in doc[field].items()
        }
    left = read_action("action")
    if "right_action" in doc:
        return Bimodule(S, A, left, read_action("right_action"))
    return ZeroModule(S, A, left)


def dump_semigroup(S):
    return {
        "elements": list(S.elements),
        "zero": S.elements[S.zero] if S.zero is not None else None,
        "table": [[S.elements[x] for x in row] for row in S.table],
    }


def group_payload(G):
    return {"invariant_factors": list(G.invariants()), "pretty": str(G)}


def cochain_payload(S, f):
    return {
        "/".join(S.elements[i] for i in t): list(v) for t, v in sorted(f.values.items())
    }


def _semilattice_payload(sl, key_name):
    payload = {"component_count": len(sl.indices), "components": [], "links_compose": True}
    for k in sl.indices:
        payload["components"].append(
            {
                key_name: sorted(k) if isinstance(k, frozenset) else k,
                "group": group_payload(sl.components[k]),
            }
        )
    payload["links_compose"] = sl.check_links_compose() is None
    return payload


def cmd_validate(args, inputs):
    S = load_semigroup(args.semigroup)
    inputs[args.semigroup] = _digest(args.semigroup)
    p = predicates(S)
    return {
        "order": S.order,
        "has_zero": p.has_zero,
        "is_monoid": p.is_monoid,
        "categorical_at_zero": p.categorical_at_zero,
        "zero_cancellative": p.zero_cancellative,
        "ideal_count": len(ideals(S)),
    }


def cmd_cohom(args, inputs):
    S = load_semigroup(args.semigroup)
    inputs[args.semigroup] = _digest(args.semigroup)
    M = load_module(args.module, S)
    inputs[args.module] = _digest(args.module)
    H = cohomology_group(S, M, args.degree, args.variant)
    result = {
        "degree": args.degree,
        "variant": args.variant,
        "group": group_payload(H.group),
        "witnesses": [cochain_payload(S, w) for w in H.witnesses],
    }
    if args.oracle:
        slow = brute_cohomology(S, M, args.degree, args.variant)
        result["oracle"] = group_payload(slow)
        result["oracle_match"] = slow.invariants() == H.group.invariants()
    return result


def cmd_schur(args, inputs):
    from .schur import brute_multiplier, multipliers_agree, schur_multiplier

    S = load_semigroup(args.semigroup)
    inputs[args.semigroup] = _digest(args.semigroup)
    A = load_coefficients(args.module)
    inputs[args.module] = _digest(args.module)
    sl = schur_multiplier(S, A)
    result = _semilattice_payload(sl, "ideal")
    for entry, I in zip(result["components"], sl.indices):
        entry["ideal"] = sorted(S.elements[i] for i in I)
    if args.oracle:
        br = brute_multiplier(S, A)
        rep = multipliers_agree(sl, br)
        result["oracle_match"] = rep["ok"]
    return result


def cmd_brauer(args, inputs):
    from .brauer import brauer_class_count_bridge, brauer_monoid

    sl = brauer_monoid(args.q, args.n)
    result = _semilattice_payload(sl, "zero_pattern")
    if args.oracle:
        bridge = brauer_class_count_bridge(args.q, args.n)
        result["oracle_match"] = all(c == h for c, h in bridge.values())
        result["oracle_classes"] = {
            str(sorted(p)): {"weak_cocycle_classes": c, "h2_order": h}
            for p, (c, h) in sorted(bridge.items(), key=lambda kv: sorted(kv[0]))
        }
    return result


def cmd_modifications(args, inputs):
    from .brauer import enumerate_modifications, modification_structure

    G = named_group(args.group)
    mods = enumerate_modifications(G)
    out = []
    for m in mods:
        units, non_units, nil_class, zero_canc = modification_structure(m)
        out.append(
            {
                "zero_pattern": sorted([list(G.elements[x] for x in p) for p in m.pattern]),
                "units": sorted(G.elements[u] for u in units),
                "nilpotent_class": nil_class,
                "zero_cancellative": zero_canc,
            }
        )
    return {"group": args.group, "count": len(mods), "modifications": out}


def cmd_gown(args, inputs):
    if args.presentation:
        with open(args.presentation) as fh:
            P = parse_presentation(fh.read())
        inputs[args.presentation] = _digest(args.presentation)
        G = gown_presentation(P, bound=args.bound)
        return {"gown_presentation": format_presentation(G)}
    if not args.semigroup:
        raise ValueError("gown needs --presentation or --semigroup")
    S = load_semigroup(args.semigroup)
    inputs[args.semigroup] = _digest(args.semigroup)
    classes = gown_sequences(S, args.bound)
    return {
        "length_bound": args.bound,
        "class_count": len(classes.classes),
        "classes": [
            sorted("/".join(S.elements[i] for i in seq) for seq in c)
            for c in classes.classes
        ],
    }


def cmd_enumerate(args, inputs):
    with open(args.presentation) as fh:
        P = parse_presentation(fh.read())
    inputs[args.presentation] = _digest(args.presentation)
    E = enumerate_presentation(P, args.bound, args.mode)
    if isinstance(E, Truncated):
        raise CapExceeded(
            f"presentation has more than {args.bound} elements; "
            f"discovered so far: {', '.join(E.discovered[:20])}"
        )
    return {
        "order": E.semigroup.order,
        "semigroup": dump_semigroup(E.semigroup),
        "normal_forms": list(E.semigroup.elements),
    }


def cmd_tsubsets(args, inputs):
    from .partial import enumerate_t_subsets

    G = named_group(args.group)
    subsets = enumerate_t_subsets(G)
    return {
        "group": args.group,
        "count": len(subsets),
        "subsets": [
            sorted(f"({G.elements[x]},{G.elements[y]})" for x, y in s) for s in subsets
        ],
    }


def cmd_tsemigroup(args, inputs):
    from .partial import build_t_semigroup

    data = build_t_semigroup()
    dec = data.decomposition
    return {
        "order": data.semigroup.order,
        "unit_group_order": len(data.unit_indices),
        "unit_group_abelian": False,
        "ideal_size": len(data.ideal_indices),
        "rees": {
            "group_order": dec.group.order,
            "rows": dec.rows,
            "cols": dec.cols,
            "sandwich": [
                ["0" if x is None else dec.group.elements[x] for x in row]
                for row in dec.sandwich
            ],
        },
    }


def cmd_natsys(args, inputs):
    from .natsys import from_zero_module, natsys_cohomology, trivial_Z

    S = load_semigroup(args.semigroup)
    inputs[args.semigroup] = _digest(args.semigroup)
    if args.module:
        M = load_module(args.module, S)
        inputs[args.module] = _digest(args.module)
        D = from_zero_module(M)
        coefficients = "zero-module"
    else:
        D = trivial_Z(S)
        coefficients = "trivial-Z"
    H = natsys_cohomology(S, D, args.degree)
    return {"degree": args.degree, "coefficients": coefficients, "group": group_payload(H)}


def cmd_compare_thm14(args, inputs):
    from .natsys import from_zero_module, hom_complex_compare, trivial_Z

    S = load_semigroup(args.semigroup)
    inputs[args.semigroup] = _digest(args.semigroup)
    if args.module:
        M = load_module(args.module, S)
        inputs[args.module] = _digest(args.module)
        D = from_zero_module(M)
    else:
        D = trivial_Z(S)
    report = hom_complex_compare(S, D, args.degree)
    result = {
        "forcing": report["forcing"],
        "naturality": report["naturality"],
        "differentials_equal": report["differentials"],
        "groups": [
            {"degree": i, "hom_side": list(h), "cochain_side": list(c)}
            for i, (h, c) in enumerate(report["groups"])
        ],
        "match": report["ok"],
    }
    if not report["ok"]:
        raise OracleMismatch(result)
    return result


class OracleMismatch(Exception):
    def __init__(self, payload):
        self.payload = payload
        super().__init__("oracle mismatch")


def build_parser():
    ap = argparse.ArgumentParser(prog="zerocohom", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, **arguments):
        p = sub.add_parser(name)
        p.set_defaults(fn=fn)
        for flag, kw in arguments.items():
            p.add_argument(flag, **kw)
        return p

    add("validate", cmd_validate, **{"--semigroup": dict(required=True)})
    add(
        "cohom",
        cmd_cohom,
        **{
            "--semigroup": dict(required=True),
            "--module": dict(required=True),
            "--degree": dict(type=int, required=True),
            "--variant": dict(choices=["zero", "em", "bimodule"], default="zero"),
            "--oracle": dict(action="store_true"),
        },
    )
    add(
        "schur",
        cmd_schur,
        **{
            "--semigroup": dict(required=True),
            "--module": dict(required=True),
            "--oracle": dict(action="store_true"),
        },
    )
    add(
        "brauer",
        cmd_brauer,
        **{
            "--q": dict(type=int, required=True),
            "--n": dict(type=int, required=True),
            "--oracle": dict(action="store_true"),
        },
    )
    add("modifications", cmd_modifications, **{"--group": dict(required=True)})
    add(
        "gown",
        cmd_gown,
        **{
            "--presentation": dict(),
            "--semigroup": dict(),
            "--bound": dict(type=int, default=4),
        },
    )
    add(
        "enumerate",
        cmd_enumerate,
        **{
            "--presentation": dict(required=True),
            "--bound": dict(type=int, default=64),
            "--mode": dict(choices=["semigroup", "monoid"], default="semigroup"),
        },
    )
    add("tsubsets", cmd_tsubsets, **{"--group": dict(required=True)})
    add("tsemigroup", cmd_tsemigroup)
    add(
        "natsys",
        cmd_natsys,
        **{
            "--semigroup": dict(required=True),
            "--module": dict(),
            "--degree": dict(type=int, required=True),
        },
    )
    add(
        "compare-thm14",
        cmd_compare_thm14,
        **{
            "--semigroup": dict(required=True),
            "--module": dict(),
            "--degree": dict(type=int, default=2),
        },
    )
    oracle = sub.add_parser("oracle")
    osub = oracle.add_subparsers(dest="oracle_command", required=True)
    for name, fn in (("cohom", cmd_cohom), ("schur", cmd_schur), ("brauer", cmd_brauer)):
        p = osub.add_parser(name)
        p.set_defaults(fn=fn, force_oracle=True)
        if name == "cohom":
            p.add_argument("--semigroup", required=True)
            p.add_argument("--module", required=True)
            p.add_argument("--degree", type=int, required=True)
            p.add_argument("--variant", choices=["zero", "em", "bimodule"], default="zero")
        elif name == "schur":
            p.add_argument("--semigroup", required=True)
            p.add_argument("--module", required=True)
        else:
            p.add_argument("--q", type=int, required=True)
            p.add_argument("--n", type=int, required=True)
    return ap


def execute(argv):
    ap = build_parser()
    args = ap.parse_args(argv)
    if getattr(args, "force_oracle", False):
        args.oracle = True
    started = time.monotonic()
    inputs = {}
    command = args.command if args.command != "oracle" else f"oracle {args.oracle_command}"
    try:
        result = args.fn(args, inputs)
    except OracleMismatch as exc:
        _emit(command, argv, inputs, exc.payload)
        print("oracle mismatch", file=sys.stderr)
        return 1
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return 3
    except (ZerocohomError, OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    if getattr(args, "oracle", False) and result.get("oracle_match") is False:
        _emit(command, argv, inputs, result)
        print("oracle mismatch", file=sys.stderr)
        return 1
    _emit(command, argv, inputs, result)
    print(f"elapsed: {time.monotonic() - started:.3f}s", file=sys.stderr)
    return 0


def _emit(command, argv, inputs, result):
    witnesses = result.pop("witnesses", None) if isinstance(result, dict) else None
    report = {
        "command": command,
        "argv": list(argv),
        "inputs": inputs,
        "result": result,
        "witnesses": witnesses,
        "version": __version__,
    }
    print(json.dumps(report, sort_keys=True, indent=2))


def main():
    sys.exit(execute(sys.argv[1:]))


if __name__ == "__main__":
    main()
