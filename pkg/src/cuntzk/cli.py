"""Command-line front end.

One binary, four subcommands (chartable, kgroups, decide-gr, verify); all
input comes from files or flags, machine-readable JSON goes to stdout and a
one-line human summary to stderr.  Exit codes: 0 success, 2 parse error,
3 validation error, 4 hypothesis violation, 5 internal invariant failure.
"""

import argparse
import hashlib
import json
import sys
import time

import numpy as np

from . import __version__, errors
from .characters import DEFAULT_SEED, character_table, irrep_matrices, lambda_expansion_check
from .fock import (
    covariance_check,
    creation_ops,
    degree1_matrix_unit_check,
    fock_rep,
    toeplitz_relations_check,
    truncated_fock_space,
    vacuum_projection,
)
from .groups import builtin_group, group_from_table
from .ktheory import (
    action_spec,
    gr_criterion,
    k_groups_crossed_product,
    k_groups_fixed_point,
)
from .repring import RepRingElement, class_of

EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_HYPOTHESIS = 4
EXIT_INTERNAL = 5


def _fingerprint(obj):
    return hashlib.sha256(json.dumps(obj, sort_keys=True).encode()).hexdigest()[:16]


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise errors.ParseError(f"cannot read {path}: {e}") from e


def _group_from_spec(data):
    if "family" in data:
        params = data.get("params", [])
        if data["family"] == "direct_product":
            params = [(p["family"], *p.get("params", [])) for p in params]
        return builtin_group(data["family"], *params)
    if "table" in data:
        return group_from_table(data["table"], data.get("labels"))
    raise errors.ParseError("group spec needs a 'family' or a 'table' key")


def _group_from_args(args):
    if args.spec:
        return _group_from_spec(_load_json(args.spec))
    if args.family:
        if args.family == "direct_product":
            raise errors.ParseError("direct products need a spec file")
        return builtin_group(args.family, args.n)
    raise errors.ParseError("give either a spec file or --family/--n")


def _action_from_spec(data, seed):
    G = _group_from_spec(data["group"])
    table = character_table(G, seed=seed)
    rep = {int(k): int(v) for k, v in data["rep"].items()}
    return table, action_spec(table, rep)


def _k_result_payload(result):
    return {
        "K0": {
            "invariant_factors": list(result.k0.torsion),
            "free_rank": result.k0.free_rank,
            "description": result.k0.describe(),
        },
        "K1": {
            "rank": result.k1_rank,
            "basis": [list(v) for v in result.k1_basis],
        },
        "defining_matrix": [list(row) for row in result.defining_matrix],
        "generator_labels": list(result.generator_labels),
        "flavor": result.flavor,
        "snf_certificate": {
            "U": result.snf.U,
            "D": result.snf.D,
            "V": result.snf.V,
        },
    }


def _emit(args, command, inputs, payload, start):
    report = {
        "command": command,
        "version": __version__,
        "inputs_fingerprint": _fingerprint(inputs),
        "payload": payload,
        "wall_time_s": round(time.monotonic() - start, 6),
    }
    if args.format == "json":
        json.dump(report, sys.stdout, sort_keys=True)
        sys.stdout.write("\n")
    else:
        sys.stdout.write(_text_summary(command, payload) + "\n")
    sys.stderr.write(_text_summary(command, payload) + "\n")


def _text_summary(command, payload):
    if command == "chartable":
        return (
            f"chartable: order {payload['order']}, dims {payload['dims']}, "
            f"max orthogonality residual {payload['orthogonality_residual']:.2e}"
        )
    if command == "kgroups":
        k0 = payload["K0"]["description"]
        k1 = payload["K1"]["rank"]
        return f"kgroups ({payload['flavor']}): K0 = {k0}, K1 = Z^{k1}"
    if command == "decide-gr":
        return f"decide-gr: holds = {payload['holds']}"
    if command == "verify":
        return f"verify: passed = {payload['passed']}"
    return command


def cmd_chartable(args):
    start = time.monotonic()
    G = _group_from_args(args)
    table = character_table(G, seed=args.seed)
    k = table.num_irreps
    sizes = np.array(table.classes.sizes, dtype=float)
    gram = (table.values * (sizes / G.order)) @ table.values.conj().T
    row_resid = float(np.max(np.abs(gram - np.eye(k))))
    col = table.values.conj().T @ table.values - np.diag(G.order / sizes)
    col_resid = float(np.max(np.abs(col)))
    payload = {
        "order": G.order,
        "class_sizes": list(table.classes.sizes),
        "dims": list(table.dims),
        "values": [[[round(v.real, 12), round(v.imag, 12)] for v in row] for row in table.values],
        "conj_map": list(table.conj_map),
        "orthogonality_residual": max(row_resid, col_resid),
    }
    if args.plot_dir:
        from .plots import render_character_table

        payload["artifacts"] = render_character_table(table, args.plot_dir)
    _emit(args, "chartable", {"order": G.order, "mul": [list(r) for r in G.mul]}, payload, start)
    return 0


def cmd_kgroups(args):
    start = time.monotonic()
    data = _load_json(args.spec)
    table, spec = _action_from_spec(data, args.seed)
    result = k_groups_fixed_point(spec) if args.fixed_point else k_groups_crossed_product(spec)
    payload = _k_result_payload(result)
    payload["n"] = spec.n
    payload["faithful"] = spec.faithful
    if args.plot_dir:
        from .plots import render_k_groups

        payload["artifacts"] = render_k_groups(result, args.plot_dir)
    _emit(args, "kgroups", data, payload, start)
    return 0


def cmd_decide_gr(args):
    start = time.monotonic()
    data = _load_json(args.spec)
    table, spec = _action_from_spec(data, args.seed)
    result = k_groups_crossed_product(spec)
    src = json.loads(args.source_class)
    if isinstance(src, dict):
        source = class_of(table, {int(k): int(v) for k, v in src.items()})
    else:
        source = RepRingElement(table, src)
    k1_class = json.loads(args.k1_class)
    decision = gr_criterion(result, source, k1_class)
    payload = {
        "holds": decision.holds,
        "witness": list(decision.witness) if decision.witness is not None else None,
        "refutation": list(decision.refutation) if decision.refutation is not None else None,
        "k1_rank": result.k1_rank,
    }
    _emit(args, "decide-gr", {"spec": data, "source": src, "class": k1_class}, payload, start)
    return 0


_FOCK_ACTIONS = ("z2-swap", "cyclic-diagonal", "trivial")


def _fock_action(name, n):
    """Built-in test actions: the alphabet swap for Z/2 and the diagonal
    root-of-unity action of the cyclic group of order n."""
    if name == "z2-swap":
        if n != 2:
            raise errors.UnsupportedParameter("z2-swap needs --n 2")
        G = builtin_group("cyclic", 2)
        swap = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
        return G, {0: np.eye(2, dtype=complex), 1: swap}
    if name == "cyclic-diagonal":
        G = builtin_group("cyclic", n)
        zeta = np.exp(2j * np.pi / n)
        return G, {g: np.diag([zeta ** (g * i) for i in range(n)]) for g in range(n)}
    if name == "trivial":
        G = builtin_group("cyclic", 1)
        return G, {0: np.eye(n, dtype=complex)}
    raise errors.UnsupportedParameter(f"unknown action {name!r}; choose from {_FOCK_ACTIONS}")


def cmd_verify(args):
    start = time.monotonic()
    if args.what == "fock":
        if args.depth < 1:
            raise errors.UnsupportedParameter("depth must be >= 1")
        if not (1 <= args.n <= 4 and args.depth <= 5):
            raise errors.UnsupportedParameter("desk scale is n <= 4, depth <= 5")
        space = truncated_fock_space(args.n, args.depth)
        ops = creation_ops(space)
        G, unitaries = _fock_action(args.action, args.n)
        rep = fock_rep(space, unitaries, G)
        p = vacuum_projection(space, ops)
        checks = {
            "toeplitz_relations": toeplitz_relations_check(space, ops),
            "vacuum_rank_one": {
                "max_deviation": float(abs(p.sum() - 1.0)),
                "passed": bool(p.nnz == 1 and p[0, 0] == 1.0),
            },
            "covariance": covariance_check(space, ops, rep, unitaries, G),
        }
        if args.depth >= 2:
            checks["degree1_matrix_unit"] = degree1_matrix_unit_check(space, ops, rep, unitaries, G)
        payload = {
            "dimension": space.dim,
            "depth": args.depth,
            "n": args.n,
            "checks": {k: v for k, v in checks.items()},
            "passed": all(v["passed"] for v in checks.values()),
        }
        inputs = {"what": "fock", "n": args.n, "depth": args.depth, "action": args.action}
    elif args.what == "matrix-units":
        G = builtin_group(args.family, args.n)
        table = character_table(G, seed=args.seed)
        mats = [irrep_matrices(table, pi) for pi in range(table.num_irreps)]
        report = lambda_expansion_check(table, mats)
        payload = {
            "order": G.order,
            "num_irreps": table.num_irreps,
            "lambda_expansion": report,
            "passed": report["passed"],
        }
        inputs = {"what": "matrix-units", "family": args.family, "n": args.n}
    else:
        raise errors.ParseError(f"unknown verify target {args.what!r}")
    _emit(args, "verify", inputs, payload, start)
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="cuntzk", description=__doc__)
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="cmd", required=True)

    def common(sp):
        sp.add_argument("--format", choices=["json", "text"], default="json")
        sp.add_argument("--seed", type=int, default=DEFAULT_SEED,
                        help="seed for the character-table eigenvector randomization")

    sp = sub.add_parser("chartable", help="character table of a group")
    sp.add_argument("spec", nargs="?", help="group spec JSON file")
    sp.add_argument("--family", choices=["cyclic", "dihedral", "symmetric"])
    sp.add_argument("--n", type=int)
    sp.add_argument("--plot-dir", help="write a PNG heatmap and CSV dump here")
    common(sp)
    sp.set_defaults(func=cmd_chartable)

    sp = sub.add_parser("kgroups", help="K-groups of a quasi-free action")
    sp.add_argument("spec", help="action spec JSON file")
    sp.add_argument("--fixed-point", action="store_true",
                    help="report the fixed-point algebra's K-theory")
    sp.add_argument("--plot-dir", help="write a PNG bar chart and CSV dump here")
    common(sp)
    sp.set_defaults(func=cmd_kgroups)

    sp = sub.add_parser("decide-gr", help="image-membership criterion on K1")
    sp.add_argument("spec", help="target action spec JSON file")
    sp.add_argument("--source-class", required=True,
                    help="JSON: irrep->multiplicity dict or coefficient list")
    sp.add_argument("--k1-class", required=True, help="JSON integer vector in the K1 basis")
    common(sp)
    sp.set_defaults(func=cmd_decide_gr)

    sp = sub.add_parser("verify", help="operator-identity verification suites")
    sp.add_argument("what", choices=["fock", "matrix-units"])
    sp.add_argument("--n", type=int, default=2)
    sp.add_argument("--depth", type=int, default=3)
    sp.add_argument("--action", default="z2-swap", help=f"one of {_FOCK_ACTIONS}")
    sp.add_argument("--family", default="dihedral", choices=["cyclic", "dihedral", "symmetric"])
    common(sp)
    sp.set_defaults(func=cmd_verify)

    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except errors.ParseError as e:
        sys.stderr.write(f"parse error: {e}\n")
        return EXIT_PARSE
    except errors.NotFaithful as e:
        sys.stderr.write(f"hypothesis violation: {e}\n")
        return EXIT_HYPOTHESIS
    except errors.InternalInvariantError as e:
        sys.stderr.write(f"internal invariant failure: {e}\n")
        return EXIT_INTERNAL
    except errors.CuntzkError as e:
        sys.stderr.write(f"validation error: {e}\n")
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
