"""Command-line entry point ``epw-lab``.

Exit codes: 0 success, 1 a check failed, 2 a random search was exhausted,
3 the input was degenerate.
"""
from __future__ import annotations

import argparse
import json
import re
import sys

from . import checks, dcover, epw, exactnum, k3, lagrangian, polyring
from .errors import EPWLabError, SearchExhausted
from .exactnum import SeededRng, format_rational, parse_rational
from .lagrangian import Decomposition, DeltaCertificate, Lagrangian, ThetaCertificate

EXIT_OK, EXIT_FAIL, EXIT_SEARCH, EXIT_DEGENERATE = 0, 1, 2, 3
FILE_FORMAT = "epwlab.lagrangian/1"


class UsageError(Exception):
    pass


# --- input helpers ----------------------------------------------------------

def parse_vector(text: str, n: int = 6) -> list:
    """'e3' or a comma-separated list of rationals, optionally in brackets."""
    text = text.strip().strip("[]() ")
    m = re.fullmatch(r"e(\d+)", text)
    if m:
        i = int(m.group(1))
        if i >= n:
            raise UsageError(f"{text} is not a basis vector of Q^{n}")
        return [1 if j == i else 0 for j in range(n)]
    vals = [parse_rational(x) for x in text.split(",")]
    if len(vals) != n:
        raise UsageError(f"expected {n} coordinates, got {len(vals)}")
    return vals


def parse_matrix_text(text: str):
    """'x,y;y,z' -> rows of entry strings."""
    return [[e.strip() for e in row.split(",")] for row in text.split(";")]


def infer_vars(rows) -> tuple:
    names = set()
    for row in rows:
        for e in row:
            names.update(re.findall(r"[A-Za-z_][A-Za-z_0-9]*", e))
    return tuple(sorted(names))


def lagrangian_document(kind: str, A: Lagrangian, cert, seed: int, height: int) -> dict:
    return {"format": FILE_FORMAT, "kind": kind, "seed": seed, "height": height,
            "lagrangian": A.to_json(), "sha256": A.sha256(),
            "certificate": None if cert is None else cert.to_json()}


def load_certificate(obj):
    if obj is None:
        return None
    if obj.get("type") == "delta":
        return DeltaCertificate.from_json(obj)
    if obj.get("type") == "theta":
        return ThetaCertificate.from_json(obj)
    raise UsageError(f"unknown certificate type {obj.get('type')!r}")


def load_lagrangian(path: str):
    with open(path) as fh:
        doc = json.load(fh)
    if "lagrangian" not in doc:
        raise UsageError(f"{path} does not contain a Lagrangian")
    return Lagrangian.from_json(doc["lagrangian"]), load_certificate(doc.get("certificate")), doc


def decomposition_for(cert, v0_text: str | None, seed: int, height: int) -> Decomposition:
    """The certificate's decomposition, the standard one at e0, or a seeded random complement."""
    if v0_text is None:
        if isinstance(cert, DeltaCertificate) and cert.D is not None:
            return cert.D
        return Decomposition.standard()
    v0 = parse_vector(v0_text)
    if v0 == [1, 0, 0, 0, 0, 0]:
        return Decomposition.standard()
    return lagrangian.random_decomposition(SeededRng(seed), height, v0=v0)


# --- output -------------------------------------------------------------------

def dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def emit(args, obj, text: str | None = None):
    out = dump_json(obj) if args.format == "json" or text is None else text.rstrip("\n") + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


# --- commands -------------------------------------------------------------------

def cmd_gen(args):
    rng = SeededRng(args.seed)
    cert = None
    if args.kind == "random":
        A = lagrangian.random_lagrangian(rng, args.height)
    elif args.kind == "delta":
        A, cert = lagrangian.build_delta_lagrangian(rng, args.height, dmax=args.dmax)
    elif args.kind == "sigma":
        A, cert = lagrangian.build_sigma_lagrangian(rng, args.height)
    else:
        A = lagrangian.pathological(parse_vector(args.v0 or "e0"))
    doc = lagrangian_document(args.kind, A, cert, args.seed, args.height)
    emit(args, doc, f"{args.kind} Lagrangian {A.sha256()}")
    return EXIT_OK


def cmd_sextic(args):
    A, _, _ = load_lagrangian(args.input)
    if args.all_charts:
        results, agree = epw.sextic_all_charts(A)
        doc = {"sextic": results[0].to_json(), "charts": list(range(6)), "charts_agree": agree}
        emit(args, doc, f"{results[0].poly}\ncharts agree: {agree}")
        return EXIT_OK if agree else EXIT_FAIL
    S = epw.sextic(A, args.chart)
    emit(args, {"sextic": S.to_json()}, str(S.poly))
    return EXIT_OK


def certificate_points(A: Lagrangian, cert) -> list:
    if isinstance(cert, DeltaCertificate):
        return [list(cert.v0)]
    if isinstance(cert, ThetaCertificate):
        return [list(cert.W.row(i)) for i in range(3)]
    return []


def cmd_strata(args):
    A, cert, _ = load_lagrangian(args.input)
    pts = certificate_points(A, cert) + [parse_vector(p) for p in args.point or []]
    if not pts:
        raise UsageError("no points: the file has no certificate and no --point was given")
    entries = []
    for p in pts:
        k = epw.corank_at(A, p)
        on = epw.sextic_value_at(A, p) == 0
        entries.append({"point": [format_rational(x) for x in p], "corank": k, "on_sextic": on})
    text = "\n".join(f"{','.join(e['point'])}: corank {e['corank']}, on sextic {e['on_sextic']}" for e in entries)
    emit(args, {"points": entries}, text)
    return EXIT_OK


def cmd_tau(args):
    A, cert, _ = load_lagrangian(args.input)
    D = decomposition_for(cert, args.v0, args.seed, args.height)
    tau = epw.tau_map(A, D)
    res = epw.aloha_classify(A, D)
    tangent = epw.delta_tangent(A, D).rows
    doc = {"tau": tau.to_json(), "rank": exactnum.rank(tau.matrix), "orbit": str(res),
           "delta_tangent_dim": tangent}
    emit(args, doc, f"tau rank {doc['rank']}, {res}, tangent kernel dimension {tangent}")
    return EXIT_OK


def cmd_cover(args):
    rows = parse_matrix_text(args.matrix)
    vars = tuple(args.vars.split(",")) if args.vars else infer_vars(rows)
    cov = dcover.cover_ideal(dcover.SymDet.parse(vars, rows))
    emit(args, cov.to_json(), "\n".join(str(g) for g in cov.ideal.gens))
    return EXIT_OK


def cmd_k3(args):
    path = args.lagrangian or args.input
    if not path:
        raise UsageError("k3 needs a Lagrangian file")
    A, cert, _ = load_lagrangian(path)
    D = decomposition_for(cert, args.v0, args.seed, args.height)
    data = k3.k3_data(A, D)
    doc = data.to_json()
    lines = [f"W_K: {len(data.wk_ideal.gens)} quadrics; S: {len(data.s_ideal.gens)} quadrics"]
    if args.hilbert:
        wk = polyring.hilbert_profile(data.wk_ideal)
        s = polyring.hilbert_profile(data.s_ideal)
        doc["hilbert"] = {
            "wk": {"values": wk.values, "dim": wk.fitted_dim, "degree": wk.fitted_degree},
            "s": {"values": s.values, "dim": s.fitted_dim, "degree": s.fitted_degree}}
        lines.append(f"W_K fit (dim {wk.fitted_dim}, degree {wk.fitted_degree}); "
                     f"S fit (dim {s.fitted_dim}, degree {s.fitted_degree})")
    emit(args, doc, "\n".join(lines))
    return EXIT_OK


def cmd_verify(args):
    report = checks.run_suite(args.suite, args.seed)
    emit(args, report.to_json(), report.to_text())
    return EXIT_OK if report.ok else EXIT_FAIL


# --- parser -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for all randomness (default 0)")
    common.add_argument("--height", type=int, default=10, help="bound for sampled integers")
    common.add_argument("--dmax", type=int, default=6, help="largest degree for emptiness certificates")
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--format", choices=("json", "text"), default="json")

    p = argparse.ArgumentParser(prog="epw-lab", description="Exact computations with EPW sextics.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", parents=[common], help="generate a Lagrangian")
    g.add_argument("kind", choices=("random", "delta", "sigma", "pathological"))
    g.add_argument("--v0", help="point for the pathological Lagrangian F_v0 (default e0)")
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("sextic", parents=[common], help="the sextic of a Lagrangian file")
    s.add_argument("input")
    s.add_argument("--chart", type=int, default=0, choices=range(6))
    s.add_argument("--all-charts", action="store_true", help="compute in every chart and compare")
    s.set_defaults(func=cmd_sextic)

    st = sub.add_parser("strata", parents=[common], help="corank at certificate and given points")
    st.add_argument("input")
    st.add_argument("--point", action="append", help="extra point, e.g. e0 or 1,2,0,0,0,1")
    st.set_defaults(func=cmd_strata)

    t = sub.add_parser("tau", parents=[common], help="tau map and orbit type at a corank-3 point")
    t.add_argument("input")
    t.add_argument("--v0", help="the corank-3 point (default: from the certificate)")
    t.set_defaults(func=cmd_tau)

    c = sub.add_parser("cover", parents=[common], help="double cover ideal of a symmetric matrix")
    c.add_argument("--matrix", required=True, help="rows separated by ';', entries by ','")
    c.add_argument("--vars", help="comma-separated variable names (default: inferred)")
    c.set_defaults(func=cmd_cover)

    k = sub.add_parser("k3", parents=[common], help="K3 data at a corank-3 point")
    k.add_argument("input", nargs="?", help="Lagrangian file (or use --lagrangian)")
    k.add_argument("--lagrangian", help="Lagrangian file")
    k.add_argument("--v0", help="the corank-3 point (default: from the certificate)")
    k.add_argument("--hilbert", action="store_true", help="also compute Hilbert functions (slow)")
    k.set_defaults(func=cmd_k3)

    v = sub.add_parser("verify", parents=[common], help="run the verification battery")
    v.add_argument("--suite", choices=checks.SUITES, default="all")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SearchExhausted as e:
        print(f"search exhausted: {e}", file=sys.stderr)
        return EXIT_SEARCH
    except (EPWLabError, UsageError) as e:
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_DEGENERATE


if __name__ == "__main__":
    sys.exit(main())
