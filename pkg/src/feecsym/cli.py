"""Command-line front end.

Subcommands: dims, basis, invariant-table, decomposability, rep-decompose,
stiffness-orbits, duality-check, geodecomp-check.  Output is JSON by
default; tabular commands also accept --format csv or --format md.  All
arithmetic is exact, so repeated runs are byte-identical.

Exit codes: 0 success (or basis exists), 2 obstruction / failed check,
1 usage or range error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .bases import (ConstructionError, construct_invariant_basis,
                    geometric_decomposability, monomial_basis_scalar)
from .duality import DualityError, ExceptionalCaseError, duality_map, \
    verify_sign_equivariance
from .forms import PolyForm, monomial_exponents
from .geodecomp import decomposition_map
from .rat import Q, qstr
from .spaces import SpaceError, build_space
from .symmetry import (SymmetricGroup, character, irreducible_multiplicities,
                       monomial_cone_test, z3_decompose)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_OBSTRUCTION = 2


class _Parser(argparse.ArgumentParser):
    """Argument parser whose usage errors exit with code 1, not 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


class RangeError(ValueError):
    pass


def _check_range(n, k=None, r=None):
    if not 0 <= n <= 3:
        raise RangeError(f"dimension n={n} out of supported range 0..3")
    if k is not None and not 0 <= k <= n:
        raise RangeError(f"form degree k={k} out of range for n={n}")
    if r is not None and r > 12:
        raise RangeError(f"degree r={r} above the supported cap 12")


# ---------------------------------------------------------------------------
# output plumbing


def _emit(payload, fmt, out_path, rows=None, header=None):
    """Print payload as JSON, or rows as csv/md when a table is available."""
    if fmt == "json" or rows is None:
        text = json.dumps(payload, indent=2)
    elif fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        text = buf.getvalue().rstrip("\n")
    else:  # md
        lines = ["| " + " | ".join(str(h) for h in header) + " |",
                 "| " + " | ".join("---" for _ in header) + " |"]
        for row in rows:
            lines.append("| " + " | ".join(str(x) for x in row) + " |")
        text = "\n".join(lines)
    print(text)
    if out_path:
        with open(out_path, "w") as f:
            json.dump(payload, f, indent=2)
            f.write("\n")


def _form_str(form):
    """Compact deterministic rendering of a canonical form."""
    c = form.canon()
    if not c.terms:
        return "0"
    parts = []
    for (exps, alt), coeff in sorted(c.terms.items(), key=lambda t: (t[0][1], t[0][0])):
        factors = []
        for i, e in enumerate(exps):
            if e:
                factors.append(f"l{i}" + (f"^{e}" if e > 1 else ""))
        factors.extend(f"dl{j}" for j in alt)
        body = "*".join(factors) if factors else "1"
        parts.append(f"{qstr(coeff)}*{body}")
    return " + ".join(parts)


# ---------------------------------------------------------------------------
# subcommands


def cmd_dims(args):
    _check_range(args.n, r=None if args.r_max is not None else args.r)
    entries = []
    if args.r_max is not None:
        grid = [(r, k) for r in range(args.r_max + 1) for k in range(args.n + 1)]
    else:
        if args.k is None:
            raise RangeError("either --k or --r-max is required")
        _check_range(args.n, k=args.k)
        grid = [(args.r, args.k)]
    for r, k in grid:
        V = build_space(args.family, r, k, args.n, trace_free=args.trace_free)
        entries.append({"family": args.family, "r": r, "k": k, "n": args.n,
                        "trace_free": args.trace_free, "dim": V.dim})
    payload = entries[0] if len(entries) == 1 else {"dims": entries}
    rows = [[e["family"], e["r"], e["k"], e["n"], e["trace_free"], e["dim"]]
            for e in entries]
    _emit(payload, args.format, args.output, rows,
          ["family", "r", "k", "n", "trace_free", "dim"])
    return EXIT_OK


def cmd_basis(args):
    _check_range(args.n, k=args.k, r=args.r)
    v = construct_invariant_basis(args.family, args.r, args.k, args.n,
                                  trace_free=args.trace_free)
    payload = v.to_record(include_transcript=True)
    if v.exists:
        payload["basis_pretty"] = [_form_str(b) for b in v.basis]
    _emit(payload, "json", args.output)
    return EXIT_OK if v.exists else EXIT_OBSTRUCTION


_T2_ROWS = [("P", False, 1), ("Pminus", False, 1),
            ("P", True, 1), ("Pminus", True, 1)]
_T3_ROWS = [("P", False, 1), ("P", False, 2),
            ("Pminus", False, 1), ("Pminus", False, 2),
            ("P", True, 1), ("P", True, 2),
            ("Pminus", True, 1), ("Pminus", True, 2)]


def predicted_existence(family, trace_free, r, k, n, dim):
    """Closed-form existence conditions (trivially true for zero spaces)."""
    if dim == 0:
        return True
    if n == 2 and k == 1:
        if family == "P" and not trace_free:
            return r % 3 != 0
        if family == "Pminus" and not trace_free:
            return r % 3 != 2
        if family == "P" and trace_free:
            return not (r > 0 and r % 3 == 0)
        return r % 3 != 2
    if n == 3:
        if family == "Pminus" and not trace_free and k == 1:
            return r % 3 != 2
        if family == "P" and trace_free and k == 2:
            return not (r > 0 and r % 3 == 0)
        return True
    return True


def predicted_decomposability(family, r, k, n):
    """Closed-form conditions for a decomposition-compatible basis (n = 3)."""
    if n == 3 and k == 1 and family == "P":
        return r % 3 != 0
    if n == 3 and k == 1 and family == "Pminus":
        return r % 3 != 2
    if n == 3 and k == 2 and family == "P":
        return r % 3 != 0
    return True


def cmd_invariant_table(args):
    if args.n not in (2, 3):
        raise RangeError("invariant-table supports n = 2 or 3")
    _check_range(args.n, r=args.r_max)
    row_defs = _T2_ROWS if args.n == 2 else _T3_ROWS
    rows_out = []
    table_rows = []
    agree = True
    for family, tf, k in row_defs:
        cells = []
        for r in range(args.r_max + 1):
            v = construct_invariant_basis(family, r, k, args.n, trace_free=tf)
            pred = predicted_existence(family, tf, r, k, args.n, v.dim)
            ok = (v.exists == pred)
            agree = agree and ok
            cells.append({"r": r, "dim": v.dim, "computed": v.exists,
                          "predicted": pred, "agree": ok})
        rows_out.append({"family": family, "trace_free": tf, "k": k,
                         "cells": cells})
        label = ("P0" if tf else "P") + ("minus" if family == "Pminus" else "")
        table_rows.append([label, k] + [int(c["computed"]) for c in cells])
    payload = {"n": args.n, "r_max": args.r_max, "agree": agree,
               "rows": rows_out}
    _emit(payload, args.format, args.output, table_rows,
          ["family", "k"] + [f"r={r}" for r in range(args.r_max + 1)])
    return EXIT_OK if agree else EXIT_OBSTRUCTION


def cmd_decomposability(args):
    _check_range(args.n, k=args.k, r=args.r)
    if args.r < 1:
        raise RangeError("decomposability requires r >= 1")
    flag, verdicts = geometric_decomposability(args.family, args.r, args.k,
                                               args.n)
    payload = {
        "family": args.family, "r": args.r, "k": args.k, "n": args.n,
        "decomposable": flag,
        "predicted": predicted_decomposability(args.family, args.r, args.k,
                                               args.n),
        "blocks": [{"face_dim": d, "exists": v.exists, "dim": v.dim,
                    "method": v.method}
                   for d, v in sorted(verdicts.items())],
    }
    rows = [[b["face_dim"], b["exists"], b["dim"], b["method"]]
            for b in payload["blocks"]]
    _emit(payload, args.format, args.output, rows,
          ["face_dim", "exists", "dim", "method"])
    return EXIT_OK if flag else EXIT_OBSTRUCTION


def cmd_rep_decompose(args):
    _check_range(args.n, k=args.k, r=args.r)
    V = build_space(args.family, args.r, args.k, args.n,
                    trace_free=args.trace_free)
    group = SymmetricGroup(args.n)
    dec = z3_decompose(V)
    chi = character(V, group)
    mults = irreducible_multiplicities(chi, group)
    cone = monomial_cone_test(chi, group)
    payload = {
        "family": args.family, "r": args.r, "k": args.k, "n": args.n,
        "trace_free": args.trace_free, "dim": V.dim,
        "z3": {"m": dec.m, "n2": dec.n2,
               "invariant_basis_over_z3": dec.m >= dec.n2},
        "irreducible_multiplicities": list(mults),
        "cone": cone.to_record(),
    }
    _emit(payload, "json", args.output)
    return EXIT_OK if cone.exists else EXIT_OBSTRUCTION


def _grad(f):
    """Differential of a scalar form in canonical coordinates."""
    c = f.canon()
    out = {}
    for (exps, _alt), coeff in c.terms.items():
        for i in range(1, c.n + 1):
            e = exps[i]
            if e:
                nxt = tuple(v - 1 if j == i else v for j, v in enumerate(exps))
                key = (nxt, (i,))
                out[key] = out.get(key, Q(0)) + coeff * e
    return PolyForm(c.n, 1, out).canon()


def stiffness_orbit_report(r, n):
    """Entries of the stiffness matrix over the degree-r monomial basis,
    grouped into orbits of the simultaneous vertex-permutation action."""
    exps_list = list(monomial_exponents(r, n + 1))
    basis = monomial_basis_scalar(r, n)
    grads = [_grad(b) for b in basis]
    m = len(basis)
    values = {}
    for i in range(m):
        for j in range(i, m):
            values[(i, j)] = grads[i].inner(grads[j])
    index = {e: i for i, e in enumerate(exps_list)}
    group = SymmetricGroup(n)
    seen = set()
    orbits = []
    for i in range(m):
        for j in range(i, m):
            if (i, j) in seen:
                continue
            orbit = set()
            for p in group.elements:
                a = index[tuple(exps_list[i][p[t]] for t in range(n + 1))]
                b = index[tuple(exps_list[j][p[t]] for t in range(n + 1))]
                orbit.add((min(a, b), max(a, b)))
            seen |= orbit
            vals = {values[pair] for pair in orbit}
            orbits.append({
                "representative": [list(exps_list[i]), list(exps_list[j])],
                "size": len(orbit),
                "value": qstr(values[(i, j)]),
                "constant_on_orbit": len(vals) == 1,
            })
    return {"r": r, "n": n, "basis_size": m,
            "entries": m * (m + 1) // 2, "orbit_count": len(orbits),
            "orbits": orbits}


def cmd_stiffness_orbits(args):
    _check_range(args.n, r=args.r)
    payload = stiffness_orbit_report(args.r, args.n)
    rows = [[o["representative"][0], o["representative"][1], o["size"],
             o["value"], o["constant_on_orbit"]] for o in payload["orbits"]]
    _emit(payload, args.format, args.output, rows,
          ["monomial_a", "monomial_b", "orbit_size", "value", "constant"])
    return EXIT_OK


def cmd_duality_check(args):
    _check_range(args.n, k=args.k, r=args.r)
    V = build_space(args.family, args.r, args.k, args.n)
    D = duality_map(V)
    payload = D.to_record()
    payload["sign_equivariant"] = verify_sign_equivariance(D)
    _emit(payload, "json", args.output)
    ok = payload["bijection"] and payload["sign_equivariant"]
    return EXIT_OK if ok else EXIT_OBSTRUCTION


def cmd_geodecomp_check(args):
    _check_range(args.n, k=args.k, r=args.r)
    V = build_space(args.family, args.r, args.k, args.n)
    D = decomposition_map(V)
    payload = D.to_record()
    group = SymmetricGroup(args.n)
    equivariant = True
    for p in group.generators():
        for b in V.basis:
            lhs = D.block_action(p, D.apply(b))
            rhs = D.apply(b.pullback(p))
            if lhs != rhs:
                equivariant = False
    payload["equivariant"] = equivariant
    _emit(payload, "json", args.output)
    ok = payload["injective"] and equivariant
    return EXIT_OK if ok else EXIT_OBSTRUCTION


# ---------------------------------------------------------------------------
# argument wiring


def _add_space_args(p, need_k=True, trace_free=True):
    p.add_argument("--family", choices=["P", "Pminus"], required=True)
    p.add_argument("--r", type=int, required=True)
    if need_k:
        p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    if trace_free:
        p.add_argument("--trace-free", dest="trace_free",
                       type=_parse_bool, default=False, nargs="?", const=True)


def _parse_bool(text):
    low = str(text).strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise argparse.ArgumentTypeError(f"not a boolean: {text!r}")


def _add_output_args(p, formats=True):
    if formats:
        p.add_argument("--format", choices=["json", "csv", "md"],
                       default="json")
    p.add_argument("--output", default=None)


def build_parser():
    parser = _Parser(prog="feecsym",
                     description="Exact symmetric bases for simplicial "
                                 "polynomial differential form spaces")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("dims", help="dimensions of the form spaces")
    p.add_argument("--family", choices=["P", "Pminus"], required=True)
    p.add_argument("--r", type=int, default=0)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r-max", dest="r_max", type=int, default=None)
    p.add_argument("--trace-free", dest="trace_free", type=_parse_bool,
                   default=False, nargs="?", const=True)
    _add_output_args(p)
    p.set_defaults(func=cmd_dims)

    p = sub.add_parser("basis", help="construct and verify an invariant basis")
    _add_space_args(p)
    _add_output_args(p, formats=False)
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("invariant-table",
                       help="computed vs predicted existence table")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r-max", dest="r_max", type=int, required=True)
    _add_output_args(p)
    p.set_defaults(func=cmd_invariant_table)

    p = sub.add_parser("decomposability",
                       help="per-face-dimension block verdicts")
    _add_space_args(p, trace_free=False)
    _add_output_args(p)
    p.set_defaults(func=cmd_decomposability)

    p = sub.add_parser("rep-decompose",
                       help="Z/3 multiplicities and cone certificate")
    _add_space_args(p)
    _add_output_args(p, formats=False)
    p.set_defaults(func=cmd_rep_decompose)

    p = sub.add_parser("stiffness-orbits",
                       help="orbit structure of the scalar stiffness matrix")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    _add_output_args(p)
    p.set_defaults(func=cmd_stiffness_orbits)

    p = sub.add_parser("duality-check",
                       help="bijectivity and sign-equivariance of duality")
    _add_space_args(p, trace_free=False)
    _add_output_args(p, formats=False)
    p.set_defaults(func=cmd_duality_check)

    p = sub.add_parser("geodecomp-check",
                       help="injectivity and equivariance of the "
                            "decomposition map")
    _add_space_args(p, trace_free=False)
    _add_output_args(p, formats=False)
    p.set_defaults(func=cmd_geodecomp_check)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (RangeError, SpaceError, ConstructionError, ExceptionalCaseError,
            DualityError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
