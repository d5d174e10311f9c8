# src/api/cli.py
"""Linha de comando do pipeline DQIR.

Uso:
    python -m src.api.cli problem --job config/jobs/tsp_unary.example.json
    python -m src.api.cli lower --job job.json --out pauli.json
    python -m src.api.cli report --operator eq --codes sb,gray,unary,bu:3:gray --d 3-16
    python -m src.api.cli mixer design --d 4 --code gray
    python -m src.api.cli verify --job job.json
"""
from __future__ import annotations
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence
import argparse
import json
import logging
import sys

from src.core.circuits.report import write_csv
from src.core.errors import ContractError, DimensionCapError, LibraryInsufficientError
from src.core.config import Settings, get_settings
from src.core.dqir.serialize import operator_to_dict
from .facade import SCHEMA_VERSION, Pipeline, design_mixer
from .report import OPERATORS, parse_codes, parse_range, sweep

logger = logging.getLogger("src.api.cli")

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_CONTRACT = 2
EXIT_LIBRARY = 3
EXIT_DIMENSION = 4


def _stamp(payload: Dict[str, Any], args: argparse.Namespace) -> Dict[str, Any]:
    out = {"schema_version": SCHEMA_VERSION, **payload}
    if not args.no_timestamp:
        out["generated_at"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
    return out


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
        logger.info("escrito %s", out)
    else:
        sys.stdout.write(text)


def _emit_json(payload: Dict[str, Any], args: argparse.Namespace) -> None:
    _emit(json.dumps(_stamp(payload, args), indent=2, sort_keys=False) + "\n", args.out)


# ---------- subcomandos ----------

def _settings(args) -> Settings:
    return Settings.from_json(args.settings) if getattr(args, "settings", None) else get_settings()



def cmd_problem(args) -> int:
    pipe = Pipeline.from_job(args.job, _settings(args))
    payload = {"operator": operator_to_dict(pipe.dqir())}
    meta = {k: v for k, v in pipe.meta.items() if k != "constraint"}
    if meta:
        payload["meta"] = meta
    _emit_json(payload, args)
    return EXIT_OK


def cmd_encode(args) -> int:
    pipe = Pipeline.from_job(args.job, _settings(args))
    a = pipe.assignment
    payload = {
        "n_qubits": a.n_qubits,
        "layout": a.layout(),
        "valid_codewords": {v: list(a.valid_codewords(v)) for v in pipe.domain.ids},
    }
    _emit_json(payload, args)
    return EXIT_OK


def cmd_lower(args) -> int:
    pipe = Pipeline.from_job(args.job, _settings(args))
    _emit_json({"pauli": pipe.lowered().to_dict()}, args)
    return EXIT_OK


def cmd_circuit(args) -> int:
    pipe = Pipeline.from_job(args.job, _settings(args))
    circuit = pipe.circuit(args.beta)
    _emit_json({"circuit": circuit.to_dict(), "depth": circuit.depth()}, args)
    return EXIT_OK


def cmd_report(args) -> int:
    rows = sweep(
        args.operator, parse_codes(args.codes), parse_range(args.d), args.exchange, args.workers, _settings(args)
    )
    header = None
    if not args.no_timestamp:
        header = f"generated_at={datetime.now(timezone.utc).isoformat(timespec='seconds')} operator={args.operator}"
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            write_csv(rows, fh, header=header)
    else:
        write_csv(rows, sys.stdout, header=header)
    return EXIT_OK


def cmd_mixer(args) -> int:
    design = design_mixer(args.kind, args.d, args.code, _settings(args))
    _emit_json({"mixer": design.to_dict()}, args)
    return EXIT_OK


def cmd_verify(args) -> int:
    pipe = Pipeline.from_job(args.job, _settings(args))
    checks = pipe.verify()
    width = max((len(c.name) for c in checks), default=10)
    print(f"{'check'.ljust(width)}  {'value':>12}  {'limit':>10}  status")
    for c in checks:
        status = "PASS" if c.passed else "FAIL"
        line = f"{c.name.ljust(width)}  {c.value:12.3e}  {c.limit:10.1e}  {status}"
        print(line + (f"  ({c.note})" if c.note and not c.passed else ""))
    ok = all(c.passed for c in checks)
    print(f"\n{'✅' if ok else '❌'} {sum(c.passed for c in checks)}/{len(checks)} checagens aprovadas")
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


# ---------- parser ----------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="store_true", help="log em nível DEBUG")
    common.add_argument("--no-timestamp", action="store_true", help="omite o carimbo de data (saída reprodutível)")
    common.add_argument("--out", help="arquivo de saída (padrão: stdout)")
    common.add_argument("--settings", help="JSON de Settings (ver config/settings.example.json)")

    ap = argparse.ArgumentParser(prog="dqir", description="Compilador DQIR: problemas → Pauli → circuitos")
    sub = ap.add_subparsers(dest="command", required=True)

    for name, fn, help_ in (
        ("problem", cmd_problem, "escreve o OperatorPoly do job"),
        ("encode", cmd_encode, "layout de qubits e palavras válidas"),
        ("lower", cmd_lower, "escreve o PauliPoly rebaixado"),
        ("circuit", cmd_circuit, "escreve o circuito da fórmula de produto"),
        ("verify", cmd_verify, "roda os oráculos densos e imprime a tabela"),
    ):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("--job", required=True, help="arquivo JSON do job")
        if name == "circuit":
            p.add_argument("--beta", type=float, default=None)
        p.set_defaults(func=fn)

    rep = sub.add_parser("report", parents=[common], help="varredura de profundidades em CSV")
    rep.add_argument("--operator", default="eq", choices=sorted(OPERATORS))
    rep.add_argument("--codes", default=None, help="lista separada por vírgulas (ex.: sb,gray,unary,bu:3:gray)")
    rep.add_argument("--d", default="3-16", help="faixa de d (ex.: 3-16 ou 3,5,7)")
    rep.add_argument("--exchange", action="store_true", help="troca de penalidade para a próxima potência de 2")
    rep.add_argument("--workers", type=int, default=1)
    rep.set_defaults(func=cmd_report)

    mix = sub.add_parser("mixer", help="projeto de misturadores estritos")
    mix_sub = mix.add_subparsers(dest="action", required=True)
    des = mix_sub.add_parser("design", parents=[common], help="gdpm_search ou ppm_construct")
    des.add_argument("--d", type=int, required=True)
    des.add_argument("--code", default="gray")
    des.add_argument("--kind", default="gdpm", choices=("gdpm", "ppm"))
    des.set_defaults(func=cmd_mixer)
    return ap


def _fail(exc: Exception, code: int) -> int:
    payload = {"schema_version": SCHEMA_VERSION, "error": type(exc).__name__, "message": str(exc), "exit_code": code}
    if isinstance(exc, LibraryInsufficientError):
        payload["best_components"] = exc.best_components
    sys.stderr.write(json.dumps(payload) + "\n")
    return code


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    logger.info("comando %s", args.command)
    try:
        return args.func(args)
    except LibraryInsufficientError as exc:
        return _fail(exc, EXIT_LIBRARY)
    except DimensionCapError as exc:
        return _fail(exc, EXIT_DIMENSION)
    except (ContractError, ValueError, KeyError, OSError) as exc:
        return _fail(exc, EXIT_CONTRACT)


if __name__ == "__main__":
    sys.exit(main())
