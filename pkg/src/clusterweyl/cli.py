"""Command line interface: build, mutate, run, verify, export, serve.

Exit codes: 0 success, 1 verification failure, 2 usage error.  All errors go
to standard error with the machine-parsable prefix ``error:``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional

from .constructions import (
    build_D,
    build_D_A1_power,
    build_D_symmetric,
    build_Qm,
    build_tildeQ,
    coxeter_quiver,
    seq_DT,
    seq_M_DtoQ,
    seq_R,
    seq_R_word,
    seq_RD,
    seq_T_pipeline,
    word_quiver,
)
from .quiver import WeightedQuiver
from .rootdata import cartan_matrix
from .seeds import MutationSequence, Seed
from .verify import CHECKS


class UsageError(ValueError):
    pass


def _load_quiver(path: str) -> WeightedQuiver:
    with open(path) as fh:
        return WeightedQuiver.from_json(json.load(fh))


def _emit(data, out: Optional[str]) -> None:
    text = json.dumps(data, indent=2)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _build(args) -> dict:
    kind = args.what
    if kind == "coxeter":
        q = coxeter_quiver(cartan_matrix(args.type, args.n))
    elif kind == "qm":
        if args.m is None or args.m < 2:
            raise UsageError("qm needs --m >= 2")
        q = build_Qm(cartan_matrix(args.type, args.n), args.m)
    elif kind == "word":
        if not args.word:
            raise UsageError("word builder needs --word")
        q, _ = word_quiver(cartan_matrix(args.type, args.n), tuple(args.word.split()))
    elif kind == "tilde":
        q = build_tildeQ(args.type, args.n, args.k)
    elif kind == "d":
        if args.symmetric:
            if args.type.upper() != "A":
                raise UsageError("the symmetric disk gluing exists for the A series only")
            q, _ = build_D_symmetric(args.n)
        elif args.power > 1:
            if (args.type.upper(), args.n) != ("A", 1):
                raise UsageError("multi-puncture gluing ships for A/n=1 only")
            q = build_D_A1_power(args.power)
        else:
            q = build_D(args.type, args.n)
    else:
        raise UsageError(f"unknown builder {kind!r}")
    return q.to_json()


def _named_sequence(name: str, params: dict, type_name=None, n=None, m=None) -> MutationSequence:
    if name == "R":
        return seq_R(str(params["s"]), int(params.get("i", 1)), int(m))
    if name == "RD":
        return seq_RD(str(params["s"]), int(params.get("i", 1)), int(n))
    if name == "Rword":
        return seq_R_word([str(x) for x in params["word"]], int(m))
    if name == "T":
        return seq_T_pipeline(int(n))
    if name == "DT":
        return seq_DT(type_name, int(n), int(m))
    if name == "MDQ":
        return seq_M_DtoQ(type_name, int(n))[0]
    raise UsageError(f"unknown named sequence {name!r}")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="clusterweyl")
    sub = parser.add_subparsers(dest="command")

    p_build = sub.add_parser("build", help="construct a named quiver")
    p_build.add_argument("what", choices=["coxeter", "qm", "word", "tilde", "d"])
    p_build.add_argument("--type", required=True)
    p_build.add_argument("--n", type=int, required=True)
    p_build.add_argument("--m", type=int)
    p_build.add_argument("--k", type=int, default=1)
    p_build.add_argument("--power", type=int, default=1)
    p_build.add_argument("--word")
    p_build.add_argument("--symmetric", action="store_true")
    p_build.add_argument("--out")

    p_mut = sub.add_parser("mutate", help="single mutation of a quiver file")
    p_mut.add_argument("--quiver", required=True)
    p_mut.add_argument("--at", required=True)
    p_mut.add_argument("--out")

    p_run = sub.add_parser("run", help="apply a sequence file to a quiver file")
    p_run.add_argument("--quiver", required=True)
    p_run.add_argument("--seq", required=True)
    p_run.add_argument("--track", default="", help="comma list from A,X,coeffs")
    p_run.add_argument("--out")

    p_ver = sub.add_parser("verify", help="run an executable check")
    p_ver.add_argument("check", choices=sorted(CHECKS))
    p_ver.add_argument("--type", default="A")
    p_ver.add_argument("--n", type=int, default=2)
    p_ver.add_argument("--m", type=int, default=2)
    p_ver.add_argument("--mode", default=None)
    p_ver.add_argument("--word", default=None)
    p_ver.add_argument("--runs", type=int, default=20)
    p_ver.add_argument("--out")

    p_exp = sub.add_parser("export", help="export a quiver file")
    p_exp.add_argument("--quiver", required=True)
    group = p_exp.add_mutually_exclusive_group(required=True)
    group.add_argument("--dot", metavar="PATH")
    group.add_argument("--json", metavar="PATH")

    p_srv = sub.add_parser("serve", help="start the JSON service")
    p_srv.add_argument(
        "--port", type=int, default=int(os.environ.get("CLUSTERWEYL_PORT", "8776"))
    )
    p_srv.add_argument("--host", default="127.0.0.1")
    p_srv.add_argument("--journal", default=None)

    try:
        args = parser.parse_args(argv)
        if args.command is None:
            parser.print_help()
            return 2
        if args.command == "build":
            _emit(_build(args), args.out)
            return 0
        if args.command == "mutate":
            q = _load_quiver(args.quiver).mutate(args.at)
            _emit(q.to_json(), args.out)
            return 0
        if args.command == "run":
            q = _load_quiver(args.quiver)
            with open(args.seq) as fh:
                seq = MutationSequence.from_json(json.load(fh))
            tracks = {t.strip() for t in args.track.split(",") if t.strip()}
            seed = Seed.initial(
                q,
                track_A="A" in tracks,
                track_X="X" in tracks,
                coeffs="principal" if "coeffs" in tracks else "none",
            ).apply(seq)
            _emit(seed.dump(), args.out)
            return 0
        if args.command == "verify":
            cert = _dispatch_check(args)
            _emit(cert.to_json(), args.out)
            return 0 if cert.ok() else 1
        if args.command == "export":
            q = _load_quiver(args.quiver)
            if args.dot:
                with open(args.dot, "w") as fh:
                    fh.write(q.to_dot() + "\n")
            else:
                with open(args.json, "w") as fh:
                    json.dump(q.to_json(), fh, indent=2)
            return 0
        if args.command == "serve":
            from .service import run_server

            run_server(host=args.host, port=args.port, journal_dir=args.journal)
            return 0
        return 2
    except SystemExit as exc:  # argparse errors
        return 2 if exc.code not in (0, None) else 0
    except UsageError as exc:
        print(f"error: usage: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: io: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


def _dispatch_check(args):
    name = args.check
    fn = CHECKS[name]
    if name == "quiver":
        return fn(args.type, args.n, args.m)
    if name == "closed-forms":
        return fn(args.type, args.n, args.m, args.mode or "A")
    if name == "braid":
        return fn(args.type, args.n, args.m, symbolic=(args.mode == "symbolic"))
    if name == "peripheral":
        return fn(args.type, args.n, args.m)
    if name == "green-dt":
        word = tuple(args.word.split()) if args.word else None
        return fn(args.type, args.n, args.m, word)
    if name == "pins":
        return fn()
    if name == "equivalences":
        return fn()
    if name == "braid-weyl-disk":
        return fn()
    if name == "f-identity":
        return fn(args.type, args.n, args.m)
    if name == "separation":
        return fn(args.type, args.n, args.m, runs=args.runs)
    raise UsageError(f"unknown check {name!r}")


if __name__ == "__main__":
    sys.exit(main())
