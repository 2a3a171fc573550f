"""Command-line front end.

Exit codes: 0 success, 1 a verification check failed, 2 configuration or
parse error, 3 window/truncation error.  All payloads are canonical JSON.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import Any, Sequence

from . import _kernels
from .coxeter import ConfigError, WindowError
from .hecke import HeckeAlgebra, HeckeElt
from .parabolic import ParabolicModule
from .realization import Realization, RealizationError, standard_realization
from . import sections as S
from . import verify as V

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_WINDOW = 0, 1, 2, 3


def _dump(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=1, ensure_ascii=True) + "\n"


def _emit(obj: Any, output: str | None) -> None:
    text = _dump(obj)
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _realization(args) -> Realization:
    if args.config:
        try:
            cfg = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from None
        return Realization.from_config(cfg, field_override=args.field, length_cap=args.length_cap)
    kind = args.type[0] if isinstance(args.type, list) else (args.type or "A2")
    return standard_realization(kind, args.field or "Q", args.length_cap)


# ---------------------------------------------------------------- hecke


def _operand(H: HeckeAlgebra, text: str) -> HeckeElt:
    """``s1s2`` or ``H:s1s2`` is a standard basis element, ``b:s1s2`` a KL element."""
    if text.startswith("b:"):
        return H.kl(H.W.element(H.W.parse_word(text[2:])))
    if text.startswith("H:"):
        text = text[2:]
    return H.parse(text)


def cmd_hecke(args) -> int:
    real = _realization(args)
    W = real.W
    H = HeckeAlgebra.of(W)
    op = args.op
    S0 = W.parse_subset(args.S0)
    xs = args.operands
    need = {"mul": 2, "pairing": 2, "bar": 1, "kl": 1, "triv": 1}[op]
    if len(xs) != need:
        raise ConfigError(f"hecke {op} takes {need} operand(s)")
    if S0 and op in ("kl", "bar", "pairing"):
        PM = ParabolicModule.of(H, S0)
        if op == "kl":
            out: Any = PM.kl(W.coset_rep(W.element(W.parse_word(xs[0])), S0)).to_named_json()
        elif op == "bar":
            out = PM.bar(PM.p_map(_operand(H, xs[0]))).to_named_json()
        else:
            out = PM.pairing(PM.p_map(_operand(H, xs[0])), PM.p_map(_operand(H, xs[1]))).to_json()
    elif op == "mul":
        out = H.mul(_operand(H, xs[0]), _operand(H, xs[1])).to_named_json()
    elif op == "bar":
        out = H.bar(_operand(H, xs[0])).to_named_json()
    elif op == "kl":
        out = H.kl(W.element(W.parse_word(xs[0]))).to_named_json()
    elif op == "triv":
        out = H.triv(_operand(H, xs[0])).to_json()
    else:
        out = H.pairing(_operand(H, xs[0]), _operand(H, xs[1])).to_json()
    _emit(out, args.output)
    return EXIT_OK


# ---------------------------------------------------------------- sections


def _require_gkm(real: Realization, S0) -> None:
    reason = V.gate(real, S0)
    if reason:
        ok, witness = real.gkm_check()
        raise S.PreconditionError(reason, {"gkm": witness})


def cmd_sections(args) -> int:
    real = _realization(args)
    W = real.W
    S0 = W.parse_subset(args.S0)
    op = args.op
    word = W.parse_word(args.word) if args.word else ()
    D = args.max_degree
    if D is not None and D < 0:
        raise ConfigError("--max-degree must be nonnegative")
    if op == "splitting":
        if not S0:
            raise ConfigError("splitting needs --S0")
        rep = S.longest_splitting(real, S0)
        out: Any = rep.to_json()
        _emit(out, args.output)
        return EXIT_OK if rep.ok else EXIT_FAIL
    _require_gkm(real, S0)
    if op == "structure-algebra":
        if not S0:
            raise ConfigError("structure-algebra needs --S0")
        rep = V.check_structure_algebra(real, S0, D)
        out = {"equal": rep.status == "pass", "window": rep.window, "witness": rep.witness}
        _emit(out, args.output)
        return EXIT_OK if rep.status == "pass" else EXIT_FAIL
    M = S.bott_samelson(real, word)
    if op in ("char", "grk", "hom-grk", "pushforward", "pullback", "build-bs") and S0 and op != "pullback":
        M = S.pushforward(M, S0)
    window = D if D is not None else S.default_window(M.bound, real.dim)
    if op == "build-bs":
        out = S.module_to_json(M, window)
    elif op == "pushforward":
        if not S0:
            raise ConfigError("pushforward needs --S0")
        out = S.module_to_json(M, window)
    elif op == "pullback":
        if not S0:
            raise ConfigError("pullback needs --S0 (the module's parabolic)")
        S1 = W.parse_subset(args.to)
        P = S.pullback(S.pushforward(M, S0), S1)
        out = S.module_to_json(P, D if D is not None else S.default_window(P.bound, real.dim))
    elif op == "char":
        out = S.character(M, window).to_named_json()
    elif op == "grk":
        if args.at is None:
            raise ConfigError("grk needs --at")
        x = W.coset_rep(W.element(W.parse_word(args.at)), S0)
        out = S.subquotient_grk(M, x, window).to_json()
    elif op == "hom-grk":
        tword = W.parse_word(args.target) if args.target is not None else word
        N = S.bott_samelson(real, tword, S0)
        out = S.hom_grk(M, N, D).to_json()
    else:  # pragma: no cover - argparse restricts choices
        raise ConfigError(f"unknown sections command {op}")
    _emit(out, args.output)
    return EXIT_OK


# ---------------------------------------------------------------- verify


def cmd_verify(args) -> int:
    if args.config:
        cfg = json.loads(Path(args.config).read_text())
        real = Realization.from_config(cfg, field_override=args.field, length_cap=args.length_cap)
        entry = V.CorpusEntry(real.name or "config", field=real.field.name, max_len=args.max_len or 2,
                              hom_len=1, config=cfg, hecke=real.W.is_finite and real.W.size <= 200)
        entries = [entry]
    else:
        entries = V.default_corpus()
        if args.field:
            for e in entries:
                e.field = args.field
        if args.max_len is not None:
            for e in entries:
                e.max_len = min(e.max_len, args.max_len)
    start = time.time()
    reports = V.run_corpus(entries, only=args.only, types=args.type)
    payload = V.reports_to_json(reports)
    failed = [r for r in reports if r.status == "fail"]
    if args.output:
        Path(args.output).write_text(payload)
        meta = {
            "elapsed_seconds": round(time.time() - start, 3),
            "finished": time.strftime("%Y-%m-%dT%H:%M:%S"),
            "backend": _kernels.BACKEND,
            "reports": len(reports),
            "failed": len(failed),
        }
        Path(args.output + ".meta.json").write_text(_dump(meta))
    else:
        sys.stdout.write(payload)
    summary = {}
    for r in reports:
        summary[r.status] = summary.get(r.status, 0) + 1
    sys.stderr.write(" ".join(f"{k}={v}" for k, v in sorted(summary.items())) + "\n")
    return EXIT_FAIL if failed else EXIT_OK


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="realization config JSON")
    common.add_argument("--type", dest="type", help="Cartan type when no config is given (default A2)")
    common.add_argument("--field", help="Q or Fp:p (overrides the config)")
    common.add_argument("--length-cap", type=int, help="truncate W at this length")
    common.add_argument("--S0", help="parabolic subset, e.g. s1,s2")
    common.add_argument("--output", metavar="PATH", help="write JSON here instead of stdout")

    parser = argparse.ArgumentParser(prog="ssbim", description="Singular Soergel bimodule computations.")
    sub = parser.add_subparsers(dest="group", required=True)

    h = sub.add_parser("hecke", parents=[common], help="Hecke algebra arithmetic")
    h.add_argument("op", choices=["mul", "bar", "kl", "triv", "pairing"])
    h.add_argument("operands", nargs="*", help="words such as s1s2, H:s1, b:s1s2")
    h.set_defaults(func=cmd_hecke)

    s = sub.add_parser("sections", parents=[common], help="section-model computations")
    s.add_argument("op", choices=["build-bs", "char", "grk", "hom-grk", "structure-algebra", "splitting",
                                  "pushforward", "pullback"])
    s.add_argument("--word", help="Bott-Samelson word, e.g. s1,s2")
    s.add_argument("--target", help="second word for hom-grk (default: --word)")
    s.add_argument("--at", help="coset for grk")
    s.add_argument("--to", help="smaller parabolic for pullback (default: empty)")
    s.add_argument("--max-degree", type=int, help="top degree D of the window")
    s.set_defaults(func=cmd_sections)

    v = sub.add_parser("verify", parents=[common], help="run the verification corpus")
    v.add_argument("--only", action="append", choices=list(V.CHECK_NAMES), help="restrict to a check (repeatable)")
    v.add_argument("--max-len", type=int, help="cap on word lengths")
    v.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.group == "verify" and args.type is not None:
        args.type = [args.type]
    try:
        return args.func(args)
    except RealizationError as exc:
        sys.stderr.write(_dump({"error": "realization", "diagnostics": exc.diagnostics}))
        return EXIT_CONFIG
    except S.PreconditionError as exc:
        sys.stderr.write(_dump({"error": str(exc), "diagnostics": exc.diagnostics}))
        return EXIT_CONFIG
    except ConfigError as exc:
        sys.stderr.write(_dump({"error": str(exc)}))
        return EXIT_CONFIG
    except WindowError as exc:
        sys.stderr.write(_dump({"error": "window", "message": str(exc)}))
        return EXIT_WINDOW
    except (OSError, json.JSONDecodeError) as exc:
        sys.stderr.write(_dump({"error": str(exc)}))
        return EXIT_CONFIG


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
