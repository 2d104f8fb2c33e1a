"""Batch command-line interface: one JSON document in, one JSON certificate out.

Exit status 0 means a positive result, 2 a verified negative verdict (with a
witness in the output) and 1 a failure to compute (bad input, precision).
Output is sorted JSON without timestamps, so a fixed seed gives identical bytes.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from importlib import resources

import jsonschema

from .core import is_prime

EXIT_OK, EXIT_ERROR, EXIT_NEGATIVE = 0, 1, 2

COMMANDS = [
    "orthogonalize", "gns", "ultra", "certify-qc", "standardize", "represent", "tate-demo",
    "commutant", "bicommutant", "center", "factor", "class-sums", "simplicity", "selftest",
]


class CliError(Exception):
    def __init__(self, payload: dict):
        super().__init__(payload.get("message", ""))
        self.payload = payload


def load_schema(name: str) -> dict:
    return json.loads(resources.files("padic_lab.schemas").joinpath(f"{name}.json").read_text())


def _pointer(path) -> str:
    return "/" + "/".join(str(p).replace("~", "~0").replace("/", "~1") for p in path) if path else ""


def _deepest(e):
    # oneOf/anyOf failures keep the useful message in their context
    while e.context:
        e = max(e.context, key=lambda c: (len(c.absolute_path), -len(c.context)))
    return e


def check_schema(name: str, obj) -> None:
    v = jsonschema.Draft202012Validator(load_schema(name))
    errors = sorted((_deepest(e) for e in v.iter_errors(obj)),
                    key=lambda e: (list(map(str, e.absolute_path)), e.message))
    if errors:
        raise CliError({
            "error": "schema",
            "message": f"{len(errors)} schema violation(s)",
            "violations": [{"path": _pointer(e.absolute_path), "message": e.message} for e in errors],
        })


# ---------------------------------------------------------------------------
# input resolution


def _ring(obj: dict, args) -> tuple[int, int]:
    p = args.prime if args.prime is not None else obj.get("p")
    N = args.precision if args.precision is not None else obj.get("N", 16)
    if p is None:
        raise CliError({"error": "input", "message": "no prime given (use --prime or a 'p' field)"})
    p, N = int(p), int(N)
    if not is_prime(p):
        raise CliError({"error": "input", "message": f"{p} is not prime"})
    if N < 2:
        raise CliError({"error": "input", "message": "precision must be at least 2"})
    return p, N


def _matrix(rows, p: int, N: int):
    from .linalg import PadicMatrix

    q = p**N
    return PadicMatrix(p, N, [[int(v) % q for v in row] for row in rows])


def resolve_group(spec):
    from .groupoid import (FiniteGroup, cyclic_group, dihedral_group, quaternion_group,
                           symmetric_group, trivial_group)

    if isinstance(spec, dict):
        return FiniteGroup.from_json(spec)
    m = re.fullmatch(r"([CSD])(\d+)", spec)
    if m:
        k = int(m.group(2))
        return {"C": cyclic_group, "S": symmetric_group, "D": dihedral_group}[m.group(1)](k)
    if spec == "Q8":
        return quaternion_group()
    if spec == "trivial":
        return trivial_group()
    raise CliError({"error": "input", "message": f"unknown group {spec!r}"})


def resolve_groupoid(spec):
    from .groupoid import FiniteGroupoid, disjoint_union, group_groupoid, pair_groupoid

    if isinstance(spec, dict):
        if "union" in spec:
            return disjoint_union(*[resolve_groupoid(s) for s in spec["union"]])
        return FiniteGroupoid.from_json(spec)
    kind, _, arg = spec.partition(":")
    if kind == "pair" and arg.isdigit():
        return pair_groupoid(int(arg))
    if kind == "group" and arg:
        return group_groupoid(resolve_group(arg))
    raise CliError({"error": "input", "message": f"unknown groupoid {spec!r}"})


def resolve_algebra(spec, p: int, N: int):
    from . import corpus
    from .groupoid import group_algebra
    from .standard import full_matrix_algebra, quad_ext, tate_truncation, twisted_m2
    from .star import StarAlgebra, unitize

    if isinstance(spec, dict):
        return StarAlgebra.from_json({**spec, "p": p, "N": N})
    kind, _, arg = spec.partition(":")
    named = {
        "nilpotent_2x2": lambda: corpus.nilpotent_2x2(p, N),
        "antisymmetric_4x4": lambda: corpus.antisymmetric_4x4(p, N),
        "twisted_m2": lambda: twisted_m2(p, N),
        "quad_ext": lambda: quad_ext(p, N),
        "scalars": lambda: corpus.scalars_algebra(p, N),
    }
    if kind in named and not arg:
        return named[kind]()
    if kind == "matrix" and arg.isdigit():
        return full_matrix_algebra(int(arg), p, N)
    if kind == "group" and arg:
        return group_algebra(resolve_group(arg), p, N)[0]
    if kind == "zero_mult" and arg.isdigit():
        return unitize(corpus.zero_mult(int(arg), p, N))
    if kind == "tate" and arg.isdigit():
        return tate_truncation(int(arg), p, N)
    raise CliError({"error": "input", "message": f"unknown algebra {spec!r}"})


def resolve_subalgebra(spec: dict, p: int, N: int):
    from .vn import MatrixSubalgebra, compacts, group_subalgebra, scalars

    if "group" in spec:
        return group_subalgebra(resolve_group(spec["group"]), p, N)
    if "compacts" in spec:
        return compacts(int(spec["compacts"]), p, N)
    if "scalars" in spec:
        return scalars(int(spec["scalars"]), p, N)
    gens = [_matrix(g, p, N) for g in spec["generators"]]
    return MatrixSubalgebra.from_generators(gens, p, N, closure=spec.get("closure", True),
                                            unital=spec.get("unital", False))


# ---------------------------------------------------------------------------
# subcommands: each returns (status, result dict)


def cmd_orthogonalize(obj, args):
    from .hilbert import QuasiHilbert, normalize_square_classes, orthogonal_basis, validate

    p, N = _ring(obj, args)
    H = QuasiHilbert(_matrix(obj["gram"], p, N))
    rep = validate(H)
    if not rep.valid:
        return EXIT_NEGATIVE, {"valid": False, "report": rep.to_json()}
    ob = orthogonal_basis(H)
    nb = normalize_square_classes(H, obj.get("u") and int(obj["u"]))
    D = nb.U.T @ H.gram @ nb.U
    return EXIT_OK, {
        "valid": True,
        "orthogonal": ob.to_json(),
        "normalized": nb.to_json(),
        "checks": {"UtGU_diagonal": "pass" if D == nb.D else "fail"},
    }


def _state(A, spec):
    from .star import QuasiState, coordinate_quasi_states

    if isinstance(spec, int):
        states = coordinate_quasi_states(A)
        labels = {s.label: s for s in states}
        key = f"phi_{spec}"
        if key not in labels:
            raise CliError({"error": "input", "message": f"coordinate quasi-state {key} is not valid"})
        return labels[key]
    return QuasiState(A.vec(spec), label="input")


def cmd_gns(obj, args):
    from .star import gns, validate_quasi_state

    p, N = _ring(obj, args)
    A = resolve_algebra(obj["algebra"], p, N)
    phi = _state(A, obj["state"])
    rep = validate_quasi_state(A, phi)
    if not rep.valid:
        return EXIT_NEGATIVE, {"quasi_state": rep.to_json()}
    g = gns(A, phi, strict=obj.get("strict", True))
    return EXIT_OK if g.checks.valid else EXIT_NEGATIVE, {
        "hilbert": g.hilbert.to_json(),
        "images": [[[str(v) for v in row] for row in M.tolist()] for M in g.rep.images],
        "xi": [str(v) for v in g.xi],
        "quotient_columns": g.quotient_columns,
        "null_basis": [[str(v) for v in row] for row in g.null_basis],
        "checks": g.checks.to_json(),
    }


def cmd_ultra(obj, args):
    from .star import ultra_antisymmetric_space

    p, N = _ring(obj, args)
    A = resolve_algebra(obj["algebra"], p, N)
    S = ultra_antisymmetric_space(A)
    return EXIT_OK, {
        "dimension": len(S),
        "space": [[int(v) for v in row] for row in S],
        "labels": list(A.labels),
        "nontrivial": bool(len(S)),
    }


def cmd_certify_qc(obj, args):
    from .star import quasi_cstar_certify

    p, N = _ring(obj, args)
    A = resolve_algebra(obj["algebra"], p, N)
    c = quasi_cstar_certify(A, probes=obj.get("probes", 100), seed=args.seed)
    return (EXIT_OK if c.certified else EXIT_NEGATIVE), c.to_json()


def cmd_standardize(obj, args):
    from .hilbert import QuasiHilbert
    from .standard import standardize

    p, N = _ring(obj, args)
    H = QuasiHilbert(_matrix(obj["gram"], p, N))
    E = standardize(H, obj.get("u") and int(obj["u"]), probes=obj.get("probes", 100), seed=args.seed)
    return (EXIT_OK if E.certified else EXIT_NEGATIVE), E.to_json(obj.get("include_images", True))


def cmd_represent(obj, args):
    from .standard import represent_star_algebra

    p, N = _ring(obj, args)
    A = resolve_algebra(obj["algebra"], p, N)
    E = represent_star_algebra(A, probes=obj.get("probes", 100), seed=args.seed)
    return (EXIT_OK if E.certified else EXIT_NEGATIVE), E.to_json(obj.get("include_images", True))


def cmd_tate_demo(obj, args):
    from .standard import tate_truncation_demo

    p = args.prime if args.prime is not None else obj.get("p", 5)
    N = args.precision if args.precision is not None else obj.get("N", 16)
    T = tate_truncation_demo(int(obj.get("n", 2)), int(p), int(N))
    ok = T.norms_preserved and T.adjoint_ok
    return (EXIT_OK if ok else EXIT_NEGATIVE), T.to_json()


def _sub(obj, args):
    p, N = _ring({**obj["subalgebra"], **{k: v for k, v in obj.items() if k in ("p", "N")}}, args)
    return resolve_subalgebra(obj["subalgebra"], p, N)


def cmd_commutant(obj, args):
    from .vn import commutant

    S = _sub(obj, args)
    C = commutant(S)
    return EXIT_OK, {"input_rank": S.rank, "commutant": C.to_json()}


def cmd_bicommutant(obj, args):
    from .vn import bicommutant_check

    b = bicommutant_check(_sub(obj, args))
    return (EXIT_OK if b.is_vn else EXIT_NEGATIVE), b.to_json()


def cmd_center(obj, args):
    from .vn import center

    Z = center(_sub(obj, args))
    return EXIT_OK, {"center": Z.to_json(), "rank": Z.rank}


def cmd_factor(obj, args):
    from .vn import center

    Z = center(_sub(obj, args))
    factor = Z.rank == 1
    out = {"factor": factor, "center_rank": Z.rank}
    if not factor:
        out["witness"] = Z.to_json()["basis"][-1]
    return (EXIT_OK if factor else EXIT_NEGATIVE), out


def cmd_class_sums(obj, args):
    from .groupoid import class_sums

    G = resolve_group(obj["group"])
    classes = G.conjugacy_classes()
    return EXIT_OK, {
        "order": G.order,
        "classes": classes,
        "sizes": [len(c) for c in classes],
        "class_sums": [[int(v) for v in chi] for chi in class_sums(G)],
    }


def cmd_simplicity(obj, args):
    from .groupoid import p_simplicity

    p = args.prime if args.prime is not None else obj.get("p")
    if p is None or not is_prime(int(p)):
        raise CliError({"error": "input", "message": "simplicity needs a prime (--prime or 'p')"})
    G = resolve_groupoid(obj["groupoid"])
    r = p_simplicity(G, int(p), seed=args.seed)
    return (EXIT_OK if r.simple.simple else EXIT_NEGATIVE), r.to_json()


def cmd_selftest(obj, args):
    from .acceptance import run_all

    outs = run_all(obj.get("criteria"), seed=args.seed)
    ok = all(o.passed for o in outs)
    return (EXIT_OK if ok else EXIT_ERROR), {"criteria": [o.to_json() for o in outs], "all_passed": ok}


HANDLERS = {name: globals()["cmd_" + name.replace("-", "_")] for name in COMMANDS}


# ---------------------------------------------------------------------------
# driver


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="padic-lab", description=__doc__.splitlines()[0])
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--prime", type=int)
    ap.add_argument("--precision", type=int)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--in", dest="input", help="input JSON file (default: stdin)")
    ap.add_argument("--out", dest="output", help="output file (default: stdout)")
    ap.add_argument("--format", choices=["json", "text"], default="json")
    return ap


def _render(doc: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"
    lines = [f"command: {doc['command']}", f"status: {doc['status']}", f"seed: {doc['seed']}"]
    for k, v in sorted(doc.get("result", doc.get("error", {})).items()):
        lines.append(f"{k}: {json.dumps(v, sort_keys=True)}")
    return "\n".join(lines) + "\n"


def execute(argv, stdin_obj=None, stdin=None) -> tuple[int, str]:
    """Run one subcommand; returns (exit status, rendered output)."""
    args = build_parser().parse_args(argv)
    doc = {"command": args.command, "seed": args.seed}
    try:
        if stdin_obj is not None:
            obj = stdin_obj
        elif args.input:
            with open(args.input) as fh:
                obj = json.load(fh)
        else:
            text = (stdin or sys.stdin).read()
            obj = json.loads(text) if text.strip() else {}
        check_schema(args.command, obj)
        if args.prime is not None and not is_prime(args.prime):
            raise CliError({"error": "input", "message": f"{args.prime} is not prime"})
        status, result = HANDLERS[args.command](obj, args)
        doc.update({"status": {0: "ok", 2: "negative"}.get(status, "error"), "result": result})
        if args.prime is not None:
            doc["p"] = args.prime
        if args.precision is not None:
            doc["N"] = args.precision
    except CliError as e:
        status = EXIT_ERROR
        doc.update({"status": "error", "error": e.payload})
    except json.JSONDecodeError as e:
        status = EXIT_ERROR
        doc.update({"status": "error", "error": {"error": "json", "message": str(e)}})
    except Exception as e:  # noqa: BLE001 - every failure maps to exit 1
        status = EXIT_ERROR
        doc.update({"status": "error", "error": {"error": type(e).__name__, "message": str(e)}})
    return status, _render(doc, args.format)


def run(argv, stdin_obj=None) -> str:
    """Rendered output only; handy for determinism checks."""
    return execute(argv, stdin_obj=stdin_obj)[1]


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    status, text = execute(argv)
    args = build_parser().parse_args(argv)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status

