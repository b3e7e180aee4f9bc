"""Command-line entry point: ``godel <command> ...``.

Exit status: 0 on success, 1 on domain errors (error JSON on stdout),
2 on usage errors (bad flags, unreadable or malformed JSON input).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import examples as examples_mod
from .algebra import hu_dual, variety_index
from .constructions import (admits_amalgamation, coproduct_bound, coproduct_stages, free_algebra,
                            fullness_report)
from .dot import emit_dot
from .errors import GodelError, InputError
from .io import UsageError, algebra_from_json, algebra_to_json, load_json, vformation_from_json
from .natural import DualStructure, SigmaSignature, check_duality, dual_space
from .poset import Forest
from .serialize import label_str
from .translation import F_sigma, G_sigma


def _write(args, name, obj):
    if args.dot:
        os.makedirs(args.dot, exist_ok=True)
        with open(os.path.join(args.dot, f"{name}.dot"), "w") as fh:
            fh.write(emit_dot(obj, name))
    if getattr(args, "figures", None) and not isinstance(obj, tuple):
        from .plotting import save_figure

        save_figure(obj, os.path.join(args.figures, f"{name}.png"), title=name)


def _emit(args, payload, dot_obj=None):
    if args.format == "dot" and dot_obj is not None:
        sys.stdout.write(emit_dot(dot_obj))
    else:
        print(json.dumps(payload, indent=None if args.compact else 2, sort_keys=False))


def _sigma(args, n):
    if args.sigma is None:
        return SigmaSignature.full(n)
    return SigmaSignature.parse(args.sigma, n)


def cmd_dual(args):
    A = algebra_from_json(load_json(args.input))
    F = hu_dual(A)
    _write(args, "dual", F)
    _emit(args, F.to_json(), F)


def cmd_esakia(args):
    from .algebra import vk_algebra

    F = Forest.from_json(load_json(args.input))
    A = vk_algebra(F)
    _write(args, "forest", F)
    _emit(args, algebra_to_json(A))


def cmd_translate(args):
    data = load_json(args.input)
    if args.dir == "natural-to-esakia":
        if isinstance(data, dict) and "points" in data:
            X = DualStructure.from_json(data)
            if args.sigma and SigmaSignature.parse(args.sigma, X.n) != X.sigma:
                raise InputError("--sigma disagrees with the structure's signature")
        else:
            A = algebra_from_json(data)
            n = args.n or variety_index(A)
            X = dual_space(A, _sigma(args, max(n, 2)))
        F = F_sigma(X)
        _write(args, "natural", X)
        _write(args, "esakia", F)
        _write(args, "translation", (X, F))
        _emit(args, F.to_json(), (X, F))
    else:
        F = Forest.from_json(data)
        n = args.n or (SigmaSignature.parse(args.sigma).n if args.sigma else max(2, F.depth() + 2))
        X = G_sigma(F, n, _sigma(args, n))
        _write(args, "esakia", F)
        _write(args, "natural", X)
        _emit(args, X.to_json(), X)


def cmd_coproduct(args):
    K = [algebra_from_json(load_json(p)) for p in args.inputs]
    n = coproduct_bound(K) if args.auto else args.variety
    if n is None:
        raise UsageError("coproduct needs --variety N or --auto")
    n = max(n, 2)
    sigma = SigmaSignature.default_coproduct(n) if args.sigma is None else SigmaSignature.parse(args.sigma, n)
    st = coproduct_stages(K, n, sigma)
    for k, (Y, X) in enumerate(zip(st["forests"], st["duals"])):
        _write(args, f"step1-forest{k}", Y)
        _write(args, f"step2-dual{k}", X)
    _write(args, "step3-product", st["product"])
    _write(args, "step4-quotient", st["quotient"])
    if args.count:
        print(st["size"])
        return
    _emit(args, {"variety": n, "sigma": str(sigma), "size": st["size"],
                 "forest": st["quotient"].to_json()}, st["quotient"])


def cmd_amalgamate(args):
    V = vformation_from_json(load_json(args.input))
    n = args.n or max(2, *(variety_index(X) for X in (V.A, V.B, V.C)))
    cert = admits_amalgamation(V, n)
    if not cert.verify():
        raise GodelError("certificate failed re-verification")
    _emit(args, cert.to_json())


def cmd_free(args):
    A = free_algebra(args.n, args.gens)
    _write(args, "free-dual", A.dual_forest)
    _emit(args, {"n": args.n, "generators": [label_str(A.elements[g]) for g in A.generators],
                 "size": A.size, "forest": A.dual_forest.to_json()}, A.dual_forest)


def cmd_check_duality(args):
    A = algebra_from_json(load_json(args.input))
    sigma = _sigma(args, args.n)
    check_duality(A, sigma, method=args.method)
    _write(args, "dual", dual_space(A, sigma))
    print("ok")


def cmd_fullness(args):
    rep = fullness_report(args.n, _sigma(args, args.n), samples=args.samples, seed=args.seed)
    if rep.witness is None:
        print("full")
        return
    _write(args, "witness", rep.witness)
    _emit(args, {"sigma": str(rep.sigma), "case": rep.case, "witness": rep.witness.to_json()}, rep.witness)


def cmd_examples(args):
    unknown = [n for n in args.names if n not in examples_mod.REGISTRY]
    if unknown:
        raise UsageError(f"unknown example(s) {unknown}; choose from {list(examples_mod.REGISTRY)}")
    failures = examples_mod.run(args.names or None, figures=args.figures)
    print(f"# failing claims: {failures}")
    if args.strict and failures:
        return 1


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--dot", metavar="DIR", help="write DOT diagrams of each stage into DIR")
    common.add_argument("--figures", metavar="DIR", help="render PNG figures into DIR")
    common.add_argument("--format", choices=("json", "dot"), default="json")
    common.add_argument("--compact", action="store_true", help="single-line JSON")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--cap", type=int, help="enumeration cap (overrides GODEL_CAP)")

    p = argparse.ArgumentParser(prog="godel", description="Finite Godel algebras and their duals.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("dual", parents=[common], help="Esakia forest of an algebra")
    s.add_argument("input")
    s.set_defaults(func=cmd_dual)

    s = sub.add_parser("esakia", parents=[common], help="algebra of up-sets of a forest")
    s.add_argument("input")
    s.set_defaults(func=cmd_esakia)

    s = sub.add_parser("translate", parents=[common], help="natural dual <-> Esakia forest")
    s.add_argument("--dir", choices=("natural-to-esakia", "esakia-to-natural"), required=True)
    s.add_argument("--sigma")
    s.add_argument("--n", type=int)
    s.add_argument("input")
    s.set_defaults(func=cmd_translate)

    s = sub.add_parser("coproduct", parents=[common], help="coproduct of algebras in G_n")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--variety", type=int)
    g.add_argument("--auto", action="store_true", help="use m = 2 + sum(k_A - 2)")
    s.add_argument("--sigma")
    s.add_argument("--count", action="store_true", help="print only the size")
    s.add_argument("inputs", nargs="+")
    s.set_defaults(func=cmd_coproduct)

    s = sub.add_parser("amalgamate", parents=[common], help="decide amalgamation of a V-formation")
    s.add_argument("--n", type=int)
    s.add_argument("input")
    s.set_defaults(func=cmd_amalgamate)

    s = sub.add_parser("free", parents=[common], help="free algebra of G_n")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--gens", type=int, required=True)
    s.set_defaults(func=cmd_free)

    s = sub.add_parser("check-duality", parents=[common], help="verify A ~ E(D(A))")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--sigma")
    s.add_argument("--method", choices=("search", "translation", "auto"), default="search")
    s.add_argument("input")
    s.set_defaults(func=cmd_check_duality)

    s = sub.add_parser("fullness", parents=[common], help="fullness witness for a signature")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--sigma")
    s.add_argument("--samples", type=int, default=100)
    s.set_defaults(func=cmd_fullness)

    s = sub.add_parser("examples", parents=[common], help="reproduce the worked examples")
    s.add_argument("names", nargs="*", metavar="NAME", help=", ".join(examples_mod.REGISTRY))
    s.add_argument("--strict", action="store_true", help="exit 1 if any claim fails")
    s.set_defaults(func=cmd_examples)
    return p


def run(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.cap is not None:
        os.environ["GODEL_CAP"] = str(args.cap)
    try:
        return args.func(args) or 0
    except UsageError as exc:
        print(f"godel {args.command}: {exc}", file=sys.stderr)
        return 2
    except GodelError as exc:
        print(json.dumps(exc.to_json()))
        return 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
