"""Command-line front end: load a workspace, run one command, report.

Exit status is 0 on success or PASS, 1 when a check or suite fails, and 2
for parse, validation and resource errors.
"""
import argparse
import sys

from . import config
from .cat import (
    Cofunctor, Functor, QCategory, QCocategory, pullback_category, pushforward_cocategory,
    star_closure, tensor_pair, verify_category, verify_cocategory,
)
from .conv import convolution_category, convolution_module
from .errors import InvariantError, LawViolation, QError, ValidationError
from .lawcheck import SUITES, run_suite
from .mod import (
    QComodule, QModule, corestrict_scalars, restrict_scalars, tensor_modcomod, verify_comodule,
    verify_module,
)
from .serialize import dumps, encode
from .sweedler import comeasure_Q_report, measure_P_report, tensor_cat_report, tensor_mod
from .vmat import FinSet, Function, VMatrix, hcompose, internal_hom, tensor_matrices
from .workspace import parse_workspace

OK, FAILED, INVALID = 0, 1, 2


def _matrix_of(value, name):
    if isinstance(value, VMatrix):
        return value
    if isinstance(value, QCategory):
        return value.hom
    if isinstance(value, QCocategory):
        return value.matrix
    if isinstance(value, (QModule, QComodule)):
        return value.mat
    raise ValidationError(f"{name} is not a matrix-like structure")


def _expect(value, kind, name, what):
    if not isinstance(value, kind):
        raise ValidationError(f"{name} is not a {what}")
    return value


def render_matrix(m):
    q = m.q
    cols = list(m.src.elements)
    rows = [[y] + [q.label(m.data[i, j]) for j in range(len(cols))] for i, y in enumerate(m.tgt.elements)]
    header = [f"{m.tgt.name} \\ {m.src.name}"] + cols
    table = [header] + rows
    widths = [max(len(r[k]) for r in table) for k in range(len(header))]
    return "\n".join("  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() for r in table)


def render(value):
    if isinstance(value, VMatrix):
        return f"matrix {value.src.name} -> {value.tgt.name}\n" + render_matrix(value)
    if isinstance(value, QCategory):
        return f"category on {value.objects.name}\n" + render_matrix(value.hom)
    if isinstance(value, QCocategory):
        body = "\n".join(f"  {z} = {value.q.label(w)}" for z, w in zip(value.objects, value.weights))
        return f"cocategory on {value.objects.name}\n{body}"
    if isinstance(value, QModule):
        return f"module {value.src.name} -> {value.over.objects.name}\n" + render_matrix(value.mat)
    if isinstance(value, QComodule):
        return f"comodule {value.src.name} -> {value.over.objects.name}\n" + render_matrix(value.mat)
    if isinstance(value, Function):
        return "\n".join(f"  {a} -> {value.cod.elements[t]}" for a, t in zip(value.dom, value.table))
    if isinstance(value, FinSet):
        return f"set {value.name} {{ {' '.join(value.elements)} }}"
    return str(value)


class Result:

    def __init__(self, code, text, payload):
        self.code, self.text, self.payload = code, text, payload


def _structure(name, value, extra=None):
    payload = encode(value, name)
    if extra:
        payload.update(extra)
    return Result(OK, render(value), payload)


def _check(ws, name):
    value = ws.get(name)
    if isinstance(value, VMatrix):
        report = verify_category(value)
    elif isinstance(value, QCategory):
        report = verify_category(value.hom)
    elif isinstance(value, QCocategory):
        report = verify_cocategory(value.q, value.objects, value.weights)
    elif isinstance(value, QModule):
        report = verify_module(value.over, value.mat)
    elif isinstance(value, QComodule):
        report = verify_comodule(value.over, value.mat)
    else:
        return Result(OK, f"{name}: ok", {"name": name, "verdict": "PASS", "failures": []})
    failures = [{"law": f.law, "witness": list(f.witness), "detail": f.detail} for f in report.failures]
    verdict = "PASS" if report.ok else "FAIL"
    return Result(OK if report.ok else FAILED, f"{name}: {report}",
                  {"name": name, "verdict": verdict, "failures": failures})


def _steps_extra(report):
    return {"steps": {str(k): v for k, v in report.steps.items()}, "max_steps": report.max_steps}


def execute(args, ws):
    """Run one parsed command against a loaded workspace; returns a :class:`Result`."""
    cmd = args.command
    ops = args.operands
    get = ws.get
    arity = {"check": 1, "star": 1, "verify": 1}.get(cmd, 2)
    if len(ops) != arity:
        raise ValidationError(f"{cmd} takes {arity} operand(s), got {len(ops)}")
    if cmd == "check":
        return _check(ws, ops[0])
    if cmd == "verify":
        bound = args.bound if args.bound is not None else ws.config.get("bound", 2)
        seed = args.seed if args.seed is not None else ws.config.get("seed")
        result = run_suite(ops[0], ws.quantale, bound, seed)
        return Result(OK if result.ok else FAILED, str(result), result.to_dict())
    a, name_a = get(ops[0]), ops[0]
    label = "_".join([cmd] + list(ops))
    if cmd == "star":
        return _structure(label, star_closure(_matrix_of(a, name_a)))
    b, name_b = get(ops[1]), ops[1]
    if cmd == "compose":
        return _structure(label, hcompose(_matrix_of(a, name_a), _matrix_of(b, name_b)))
    if cmd == "tensor":
        if isinstance(a, (QCategory, QCocategory)) and type(a) is type(b):
            return _structure(label, tensor_pair(a, b))
        if isinstance(a, (QModule, QComodule)) and type(a) is type(b):
            return _structure(label, tensor_modcomod(a, b))
        return _structure(label, tensor_matrices(_matrix_of(a, name_a), _matrix_of(b, name_b)))
    if cmd == "hom":
        return _structure(label, internal_hom(_matrix_of(a, name_a), _matrix_of(b, name_b)))
    if cmd == "convolve":
        if isinstance(a, QCocategory) and isinstance(b, QCategory):
            return _structure(label, convolution_category(a, b))
        if isinstance(a, QComodule) and isinstance(b, QModule):
            return _structure(label, convolution_module(a, b))
        raise ValidationError("convolve takes a cocategory and a category, or a comodule and a module")
    if cmd == "restrict":
        f = _expect(a, Function, name_a, "function")
        n = _expect(b, QModule, name_b, "module")
        over = ws.categories[args.over] if args.over else pullback_category(f, n.over)
        return _structure(label, restrict_scalars(Functor(over, n.over, f), n))
    if cmd == "corestrict":
        f = _expect(a, Function, name_a, "function")
        k = _expect(b, QComodule, name_b, "comodule")
        onto = ws.cocategories[args.over] if args.over else pushforward_cocategory(f, k.over)
        return _structure(label, corestrict_scalars(Cofunctor(k.over, onto, f), k))
    if cmd == "measure":
        report = measure_P_report(_expect(a, QCategory, name_a, "category"), _expect(b, QCategory, name_b, "category"))
        return _structure(label, report.output, _steps_extra(report))
    if cmd == "comeasure":
        report = comeasure_Q_report(_expect(a, QModule, name_a, "module"), _expect(b, QModule, name_b, "module"))
        return _structure(label, report.output, _steps_extra(report))
    if cmd == "tensorcat":
        report = tensor_cat_report(_expect(a, QCocategory, name_a, "cocategory"),
                                   _expect(b, QCategory, name_b, "category"))
        return _structure(label, report.output, _steps_extra(report))
    if cmd == "tensormod":
        return _structure(label, tensor_mod(_expect(a, QComodule, name_a, "comodule"),
                                            _expect(b, QModule, name_b, "module")))
    raise ValidationError(f"unknown command {cmd!r}")


COMMANDS = ("check", "compose", "tensor", "hom", "convolve", "star", "restrict", "corestrict",
            "measure", "comeasure", "tensorcat", "tensormod", "verify")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="qsweedler",
        description="Quantale-enriched matrices, measuring structures and law suites.",
        epilog="suites: " + ", ".join(SUITES))
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("operands", nargs="*")
    parser.add_argument("--input", "-i", help="workspace file (default: stdin)")
    parser.add_argument("--json", action="store_true", help="structured output with sorted keys")
    parser.add_argument("--cap", type=int, help="cap on materialized function-set entries")
    parser.add_argument("--seed", type=int, help="seeded random mode for verify")
    parser.add_argument("--bound", type=int, help="carrier size bound for verify")
    parser.add_argument("--over", help="target (co)category for restrict / corestrict")
    return parser


def _emit(result, args, out):
    if args.json:
        out.write(dumps(result.payload) + "\n")
    else:
        out.write(result.text + "\n")


def main(argv=None, stdin=None, stdout=None, stderr=None):
    stdin, stdout, stderr = stdin or sys.stdin, stdout or sys.stdout, stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return INVALID if exc.code else OK
    try:
        if args.input:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        else:
            text = stdin.read()
    except OSError as exc:
        stderr.write(f"error: {exc}\n")
        return INVALID
    try:
        ws = parse_workspace(text)
        changes = ws.limits()
        if args.cap is not None:
            changes["cap"] = args.cap
        with config.limits(**changes):
            result = execute(args, ws)
    except LawViolation as exc:
        stderr.write(f"error: law violation: {exc}\n")
        return INVALID
    except InvariantError as exc:
        stderr.write(f"invariant failure: {exc}\n")
        return FAILED
    except (QError, KeyError) as exc:
        stderr.write(f"error: {exc}\n")
        return INVALID
    _emit(result, args, stdout)
    return result.code

