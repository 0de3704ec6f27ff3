"""Command-line interface.

Exit codes: 0 success, 2 input validation, 3 resource cap exceeded,
4 mathematical precondition violated (e.g. an unbounded weight function).
Failures emit a machine-readable JSON object on stderr.  All outputs are
deterministic: identical inputs produce byte-identical outputs.
"""

from __future__ import annotations

import argparse
import json
import random
import sys as _sys
from fractions import Fraction
from pathlib import Path

from . import automata, cones, coxeter, weights
from .closedforms import affine_cone, bn_bound, dihedral_bound, f4_bound, spherical_nonneg
from .errors import InputError, PreconditionError, ResourceLimitError, UnboundedError, WeightcellError
from .limits import Caps

__all__ = ["main"]


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="weightcell", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_caps(p):
        p.add_argument("--max-states", type=int, default=None)
        p.add_argument("--max-cycles", type=int, default=None)

    auto = sub.add_parser("automaton", help="inspect and normalize automaton files")
    auto_sub = auto.add_subparsers(dest="subcommand", required=True)
    for name in ("info", "min", "enum", "reverse"):
        p = auto_sub.add_parser(name)
        p.add_argument("file")
        p.add_argument("--format", choices=("json", "dot", "text"), default="text")
        p.add_argument("-o", "--output", default=None)
        add_caps(p)
        if name == "enum":
            p.add_argument("--maxlen", type=int, required=True)
            p.add_argument("--max-words", type=int, default=None)

    cone_p = sub.add_parser("cone", help="boundedness cone of an automaton's language")
    cone_p.add_argument("file")
    cone_p.add_argument("--format", choices=("json", "text"), default="text")
    add_caps(cone_p)

    for name in ("bound", "cell"):
        p = sub.add_parser(name, help=f"{name} of a weight function on an automaton's language")
        p.add_argument("file")
        p.add_argument("--phi", required=True)
        p.add_argument("--format", choices=("json", "text"), default="text")
        add_caps(p)
        if name == "cell":
            p.add_argument("--out-prefix", default=None)

    cox = sub.add_parser("coxeter", help="pipeline from a Coxeter matrix file")
    cox_sub = cox.add_subparsers(dest="subcommand", required=True)

    def add_cox_common(p, phi=False):
        p.add_argument("file")
        p.add_argument("--order", default=None, help="comma-separated generator order")
        p.add_argument("--lang", choices=("lex", "reduced"), default="lex")
        p.add_argument("--format", choices=("json", "dot", "text"), default="text")
        p.add_argument("-o", "--output", default=None)
        add_caps(p)
        if phi:
            p.add_argument("--phi", required=True)

    add_cox_common(cox_sub.add_parser("build"))
    add_cox_common(cox_sub.add_parser("cone"))
    add_cox_common(cox_sub.add_parser("bound"), phi=True)
    cell_p = cox_sub.add_parser("cell")
    add_cox_common(cell_p, phi=True)
    cell_p.add_argument("--out-prefix", default=None)

    closed = cox_sub.add_parser("closed-form")
    closed.add_argument("family", choices=("dihedral", "b", "f4", "nonneg", "bt", "ct", "ft4", "gt2"))
    closed.add_argument("--phi", required=True, help="parameters, e.g. a=1,b=-1")
    closed.add_argument("--m", type=int, default=None)
    closed.add_argument("--n", type=int, default=None)
    closed.add_argument("--file", default=None, help="Coxeter matrix file (nonneg only)")
    closed.add_argument("--format", choices=("json", "text"), default="text")

    probe = cox_sub.add_parser("probe-spherical")
    probe.add_argument("file")
    probe.add_argument("--order", default=None)
    probe.add_argument("--lang", choices=("lex", "reduced"), default="lex")
    probe.add_argument("--samples", type=int, default=20)
    probe.add_argument("--seed", type=int, default=0)
    probe.add_argument("--format", choices=("json", "text"), default="json")
    add_caps(probe)

    return parser


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------


def _caps(args) -> Caps:
    base = Caps.from_env()
    updates = {}
    if getattr(args, "max_states", None) is not None:
        updates["states"] = args.max_states
    if getattr(args, "max_cycles", None) is not None:
        updates["cycles"] = args.max_cycles
    if getattr(args, "max_words", None) is not None:
        updates["words"] = args.max_words
    if not updates:
        return base
    from dataclasses import replace

    return replace(base, **updates)


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None


def _load_automaton(path: str) -> automata.Automaton:
    return automata.from_json(_read(path))


def _load_system(args) -> coxeter.CoxeterSystem:
    sys_ = coxeter.system_from_json(_read(args.file))
    if getattr(args, "order", None):
        sys_ = sys_.reorder(tuple(name.strip() for name in args.order.split(",")))
    return sys_


def _emit(text: str, output: str | None):
    if output:
        Path(output).write_text(text)
    else:
        _sys.stdout.write(text)


def _frac(x: Fraction) -> str:
    return str(x)


def _word_text(a: automata.Automaton, w) -> str:
    return a.format_word(w)


def _dump(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


# ---------------------------------------------------------------------------
# automaton subcommands
# ---------------------------------------------------------------------------


def _cmd_automaton(args) -> int:
    caps = _caps(args)
    a = _load_automaton(args.file)
    if args.subcommand == "info":
        trimmed = automata.trim(a)
        doc = {
            "alphabet": list(a.alphabet),
            "states": a.n_states,
            "transitions": len(a.transitions),
            "accept_states": len(a.accept),
            "deterministic": a.deterministic,
            "useful_states": trimmed.n_states if trimmed.accept else 0,
            "language_empty": not trimmed.accept,
        }
        if args.format == "json":
            _emit(_dump(doc), args.output)
        else:
            lines = [f"{key}: {value}" for key, value in doc.items()]
            _emit("\n".join(lines) + "\n", args.output)
        return 0
    if args.subcommand == "min":
        result = automata.minimize(automata.determinize(a, caps.states))
    elif args.subcommand == "reverse":
        result = automata.reverse(a)
    else:  # enum
        words = automata.enumerate_words(a, args.maxlen, caps.words)
        if args.format == "json":
            _emit(_dump([list(a.word_names(w)) for w in words]), args.output)
        else:
            _emit("".join(_word_text(a, w) + "\n" for w in words), args.output)
        return 0
    if args.format == "dot":
        _emit(automata.to_dot(result), args.output)
    else:
        _emit(automata.to_json(result), args.output)
    return 0


# ---------------------------------------------------------------------------
# cone / bound / cell on plain automata
# ---------------------------------------------------------------------------


def _cone_document(a: automata.Automaton, caps: Caps) -> dict:
    raw_vectors = weights.boundedness_cone_vectors(a, caps.cycles)
    if raw_vectors:
        raw = cones.HRep(len(a.alphabet), tuple(raw_vectors))
        irred = cones.remove_redundant(raw)
        vrep = cones.extreme_rays(irred, caps.rays)
    else:
        raw = cones.HRep(len(a.alphabet), ())
        irred = raw
        vrep = cones.extreme_rays(raw, caps.rays)
    return {
        "dim": len(a.alphabet),
        "alphabet": list(a.alphabet),
        "raw_normals": [list(v) for v in raw.normals],
        "normals": [list(v) for v in irred.normals],
        "lineality": [list(v) for v in vrep.lineality],
        "rays": [list(v) for v in vrep.rays],
    }


def _print_cone(doc, fmt, output):
    if fmt == "json":
        _emit(_dump(doc), output)
        return
    lines = [
        f"dimension: {doc['dim']} (letters {', '.join(doc['alphabet'])})",
        f"raw inequalities: {doc['raw_normals']}",
        f"irredundant inequalities: {doc['normals']}",
        f"lineality basis: {doc['lineality']}",
        f"extreme rays: {doc['rays']}",
    ]
    _emit("\n".join(lines) + "\n", output)


def _cmd_cone(args) -> int:
    a = _load_automaton(args.file)
    _print_cone(_cone_document(a, _caps(args)), args.format, None)
    return 0


def _cmd_bound(args) -> int:
    caps = _caps(args)
    a = _load_automaton(args.file)
    phi = weights.parse_weights(args.phi, a.alphabet)
    result = weights.bound(a, phi, caps.cycles)
    doc = {
        "bound": _frac(result.bound),
        "witnesses": [list(a.word_names(w)) for w in result.witnesses],
    }
    if args.format == "json":
        _emit(_dump(doc), None)
    else:
        witness_text = ", ".join(_word_text(a, w) or "(empty)" for w in result.witnesses)
        _emit(f"bound: {result.bound}\nwitnesses: {witness_text}\n", None)
    return 0


def _cell_files(a, bound_value, witnesses, cell_raw, cell_dfa, prefix: str) -> dict:
    nfa_path = f"{prefix}-cell-raw.json"
    dfa_path = f"{prefix}-cell-dfa.json"
    dot_path = f"{prefix}-cell-dfa.dot"
    Path(nfa_path).write_text(automata.to_json(cell_raw))
    Path(dfa_path).write_text(automata.to_json(cell_dfa))
    Path(dot_path).write_text(automata.to_dot(cell_dfa))
    return {
        "bound": _frac(bound_value),
        "witnesses": [list(a.word_names(w)) for w in witnesses],
        "cell_raw": nfa_path,
        "cell_dfa": dfa_path,
        "cell_dfa_dot": dot_path,
    }


def _cmd_cell(args) -> int:
    caps = _caps(args)
    a = _load_automaton(args.file)
    phi = weights.parse_weights(args.phi, a.alphabet)
    result = weights.cell_automaton(a, phi, caps.cycles)
    prefix = args.out_prefix or Path(args.file).stem
    doc = _cell_files(a, result.bound, result.witnesses, result.cell_nfa, result.cell_dfa, prefix)
    if args.format == "json":
        _emit(_dump(doc), None)
    else:
        _emit(
            f"bound: {result.bound}\n"
            f"witnesses: {', '.join(_word_text(a, w) or '(empty)' for w in result.witnesses)}\n"
            f"cell automaton states: {result.cell_dfa.n_states}\n"
            f"files: {doc['cell_raw']}, {doc['cell_dfa']}, {doc['cell_dfa_dot']}\n",
            None,
        )
    return 0


# ---------------------------------------------------------------------------
# coxeter subcommands
# ---------------------------------------------------------------------------


def _cmd_coxeter(args) -> int:
    caps = _caps(args)
    if args.subcommand == "closed-form":
        return _cmd_closed_form(args)
    sys_ = _load_system(args)
    if args.subcommand == "build":
        a = coxeter.language_automaton(sys_, args.lang, caps.states)
        _emit(automata.to_dot(a) if args.format == "dot" else automata.to_json(a), args.output)
        return 0
    if args.subcommand == "cone":
        a = coxeter.language_automaton(sys_, args.lang, caps.states)
        letter_doc = _cone_document(a, caps)
        classes = coxeter.weight_classes(sys_)
        raw = cones.HRep(len(a.alphabet), tuple(weights.boundedness_cone_vectors(a, caps.cycles)))
        projected = cones.project_parameters(raw, [list(g) for g in classes])
        irred = cones.remove_redundant(projected)
        vrep = cones.extreme_rays(irred, caps.rays)
        doc = {
            "letters": letter_doc,
            "parameters": {
                "classes": [[sys_.generators[i] for i in g] for g in classes],
                "normals": [list(v) for v in irred.normals],
                "raw_normals": [list(v) for v in projected.normals],
                "lineality": [list(v) for v in vrep.lineality],
                "rays": [list(v) for v in vrep.rays],
            },
        }
        if args.format == "json":
            _emit(_dump(doc), args.output)
        else:
            _print_cone(letter_doc, "text", None)
            p = doc["parameters"]
            _emit(
                f"weight classes: {p['classes']}\n"
                f"class inequalities: {p['normals']}\n"
                f"class rays: {p['rays']} lineality: {p['lineality']}\n",
                None,
            )
        return 0
    if args.subcommand == "bound":
        phi = weights.parse_weights(args.phi, sys_.generators)
        result = coxeter.group_cell(sys_, phi, args.lang, caps.states, caps.cycles)
        a = coxeter.language_automaton(sys_, args.lang, caps.states)
        doc = {
            "bound": _frac(result.bound),
            "witnesses": [list(a.word_names(w)) for w in result.witnesses],
            "X_size": len(result.X),
            "Y_size": len(result.Y),
        }
        _emit(_dump(doc) if args.format == "json" else (
            f"bound: {result.bound}\n"
            f"witnesses: {', '.join(_word_text(a, w) or '(empty)' for w in result.witnesses)}\n"
        ), args.output)
        return 0
    if args.subcommand == "cell":
        phi = weights.parse_weights(args.phi, sys_.generators)
        result = coxeter.group_cell(sys_, phi, args.lang, caps.states, caps.cycles)
        a = coxeter.language_automaton(sys_, args.lang, caps.states)
        prefix = args.out_prefix or Path(args.file).stem
        doc = _cell_files(
            a, result.bound, result.witnesses, result.cell_nfa, result.cell_dfa, prefix
        )
        doc["X_size"] = len(result.X)
        doc["Y_size"] = len(result.Y)
        if args.format == "json":
            _emit(_dump(doc), args.output)
        else:
            _emit(
                f"bound: {result.bound}\n"
                f"witnesses: {', '.join(_word_text(a, w) or '(empty)' for w in result.witnesses)}\n"
                f"cell automaton states: {result.cell_dfa.n_states}\n"
                f"files: {doc['cell_raw']}, {doc['cell_dfa']}, {doc['cell_dfa_dot']}\n",
                args.output,
            )
        return 0
    if args.subcommand == "probe-spherical":
        return _cmd_probe(args, sys_, caps)
    raise InputError(f"unknown coxeter subcommand {args.subcommand!r}")


def _parse_params(text: str) -> dict[str, Fraction]:
    out = {}
    for item in filter(None, (part.strip() for part in text.split(","))):
        key, sep, raw = item.partition("=")
        if not sep:
            raise InputError(f"bad parameter {item!r}")
        try:
            out[key.strip()] = Fraction(raw.strip())
        except (ValueError, ZeroDivisionError):
            raise InputError(f"bad rational literal {raw.strip()!r}") from None
    return out


def _cmd_closed_form(args) -> int:
    params = _parse_params(args.phi)

    def need(*names):
        missing = [k for k in names if k not in params]
        if missing:
            raise InputError(f"missing parameters: {', '.join(missing)}")

    family = args.family
    if family == "dihedral":
        if args.m is None:
            raise InputError("the dihedral family needs --m")
        need("a", "b")
        result = dihedral_bound(args.m, params["a"], params["b"])
    elif family == "b":
        if args.n is None:
            raise InputError("the b family needs --n")
        need("a", "b")
        result = bn_bound(args.n, params["a"], params["b"])
    elif family == "f4":
        need("a", "b")
        result = f4_bound(params["a"], params["b"])
    elif family == "nonneg":
        if not args.file:
            raise InputError("closed-form nonneg needs --file with a Coxeter matrix")
        sys_ = coxeter.system_from_json(_read(args.file))
        result = spherical_nonneg(sys_, {k: v for k, v in params.items()})
    else:  # affine families
        need("a", "b")
        spec = affine_cone(
            family.capitalize() if family != "ft4" else "Ft4",
            params["a"],
            params["b"],
            params.get("c"),
            n=args.n,
        )
        doc = {
            "family": spec.family,
            "rank": spec.rank,
            "params": [_frac(v) for v in spec.params],
            "normals": [list(v) for v in spec.normals],
            "all_normals": [list(v) for v in spec.all_normals],
            "rho": None if spec.rho is None else [_frac(v) for v in spec.rho],
            "rho_basis": spec.rho_basis,
        }
        if args.format == "json":
            _emit(_dump(doc), None)
        else:
            _emit(
                f"family: {spec.family}\nirredundant inequalities: {doc['normals']}\n"
                f"all inequalities: {doc['all_normals']}\nrho: {doc['rho']}\n",
                None,
            )
        return 0
    doc = {
        "bound": _frac(result.bound),
        "cell": None if result.cell is None else list(result.cell_texts()),
    }
    if args.format == "json":
        _emit(_dump(doc), None)
    else:
        cell_text = "(deferred to the generic machinery)" if result.cell is None else ", ".join(
            w or "(empty)" for w in result.cell_texts()
        )
        _emit(f"bound: {result.bound}\ncell: {cell_text}\n", None)
    return 0


def _cmd_probe(args, sys_, caps: Caps) -> int:
    """Sample bounded weight functions and report whether some witness lies
    in a finite standard parabolic subgroup.  Reports only; asserts nothing."""
    a = coxeter.language_automaton(sys_, args.lang, caps.states)
    classes = coxeter.weight_classes(sys_)
    raw_vectors = weights.boundedness_cone_vectors(a, caps.cycles)
    if raw_vectors:
        raw = cones.HRep(len(a.alphabet), tuple(raw_vectors))
        projected = cones.remove_redundant(
            cones.project_parameters(raw, [list(g) for g in classes])
        )
        vrep = cones.extreme_rays(projected, caps.rays)
    else:
        vrep = cones.VRep(len(classes), (), ())
    rng = random.Random(args.seed)
    samples = []
    for _ in range(args.samples):
        values = [Fraction(0)] * len(classes)
        for ray in vrep.rays:
            lam = rng.randint(0, 6)
            values = [v + lam * r for v, r in zip(values, ray)]
        for line in vrep.lineality:
            mu = rng.randint(-6, 6)
            values = [v + mu * l for v, l in zip(values, line)]
        assignment = {}
        for group, value in zip(classes, values):
            for i in group:
                assignment[sys_.generators[i]] = value
        result = coxeter.group_cell(sys_, assignment, args.lang, caps.states, caps.cycles)
        witness_info = []
        for w in result.witnesses:
            support = tuple(sorted(set(w)))
            finite = coxeter.is_positive_definite(sys_, support)
            witness_info.append(
                {"word": list(a.word_names(w)), "finite_parabolic_support": finite}
            )
        samples.append(
            {
                "phi": {name: _frac(assignment[name]) for name in sys_.generators},
                "bound": _frac(result.bound),
                "witnesses": witness_info,
                "some_witness_in_finite_parabolic": any(
                    w["finite_parabolic_support"] for w in witness_info
                ),
            }
        )
    doc = {"language": args.lang, "samples": samples}
    if args.format == "json":
        _emit(_dump(doc), None)
    else:
        for i, sample in enumerate(samples):
            _emit(
                f"sample {i}: phi={sample['phi']} bound={sample['bound']} "
                f"finite-parabolic witness: {sample['some_witness_in_finite_parabolic']}\n",
                None,
            )
    return 0


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------


def _error_doc(exc: WeightcellError) -> dict:
    doc = {"error": {"code": exc.exit_code, "type": type(exc).__name__, "message": str(exc)}}
    if isinstance(exc, UnboundedError) and exc.word is not None:
        doc["error"]["violating_circuit"] = list(exc.word)
    return doc


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "automaton":
            return _cmd_automaton(args)
        if args.command == "cone":
            return _cmd_cone(args)
        if args.command == "bound":
            return _cmd_bound(args)
        if args.command == "cell":
            return _cmd_cell(args)
        if args.command == "coxeter":
            return _cmd_coxeter(args)
        raise InputError(f"unknown command {args.command!r}")
    except UnboundedError as exc:
        _sys.stderr.write(_dump(_error_doc(exc)))
        return exc.exit_code
    except (InputError, ResourceLimitError, PreconditionError) as exc:
        _sys.stderr.write(_dump(_error_doc(exc)))
        return exc.exit_code


if __name__ == "__main__":
    raise SystemExit(main())
