"""Command-line interface.

Exit codes: 0 success, 1 formula false (``eval``), 2 input error,
3 budget-bounded result, 4 verification failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Iterable, Sequence

from .atomcat import KINDS, AtomSpec, closed_form_dims, gen_family, growth_label
from .dims import SearchBudget, cylindrical_dimension, dual_upper_dimension, upper_dimension
from .dnfbridge import boolfunc_to_family, minimal_dnf_length, parse_boolfunc
from .errors import BudgetExceededError, TeamDimError
from .kripke import check_star_flat, check_star_sharp, is_local, is_separating, parse_kripke
from .setfam import BaseSet, Family, Interval, parse_family
from .tensor import op, tensor_apply
from .verify import Case, atom_case, dnf_cases, kripke_cases, operator_cases, relation_family_cases, translation_cases

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3
EXIT_VERIFY = 4

SOLVERS = {"dd": upper_dimension, "ddd": dual_upper_dimension, "cd": cylindrical_dimension}


class InputError(TeamDimError):
    pass


def piece_fields(base: BaseSet, piece) -> dict[str, str]:
    """Cover pieces as family-file member lines, ``-`` being the empty set."""
    if isinstance(piece, Interval):
        return {"lower": base.format_subset(piece.lower), "upper": base.format_subset(piece.upper)}
    return {"member": base.format_subset(piece)}


class Emitter:
    """Collects records and renders them as key=value lines, TSV or an aligned table."""

    def __init__(self, fmt: str, out=None):
        self.fmt = fmt
        self.out = out or sys.stdout
        self.records: list[dict[str, str]] = []

    def add(self, **fields) -> None:
        # in key=value lines an element list "0 1 2" becomes "0,1,2" so records split on spaces
        glue = "," if self.fmt == "lines" else " "
        self.records.append({k: glue.join(str(v).split()) or "-" for k, v in fields.items()})

    def flush(self) -> None:
        if not self.records:
            return
        if self.fmt == "lines":
            for rec in self.records:
                print(" ".join(f"{k}={v}" for k, v in rec.items()), file=self.out)
        else:
            columns: list[str] = []
            for rec in self.records:
                columns.extend(k for k in rec if k not in columns)
            rows = [[rec.get(c, "-") for c in columns] for rec in self.records]
            if self.fmt == "tsv":
                for row in [columns] + rows:
                    print("\t".join(row), file=self.out)
            else:
                widths = [max(len(r[i]) for r in [columns] + rows) for i in range(len(columns))]
                for row in [columns] + rows:
                    print("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip(), file=self.out)
        self.records.clear()


def read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc


def _budget(args) -> SearchBudget:
    budget = SearchBudget.default()
    if args.budget_ms is not None:
        if args.budget_ms <= 0:
            raise InputError("--budget-ms must be positive")
        budget = SearchBudget(budget.maxNodes, args.budget_ms / 1000.0)
    return budget


def _parse_which(text: str) -> list[str]:
    which = [w.strip() for w in text.split(",") if w.strip()]
    bad = [w for w in which if w not in SOLVERS]
    if bad or not which:
        raise InputError(f"--which takes a comma list drawn from dd,ddd,cd; got {text!r}")
    return which


def _report_dims(em: Emitter, fam: Family, which: Sequence[str], budget: SearchBudget, witnesses: bool) -> int:
    code = EXIT_OK
    for name in which:
        result = SOLVERS[name](fam, budget)
        em.add(which=name, value=result.value, status=result.status)
        if not result.exact:
            code = EXIT_BUDGET
        if witnesses:
            for i, piece in enumerate(result.witness):
                em.add(which=name, piece=i, **piece_fields(fam.base, piece))
    return code


# -- subcommands --------------------------------------------------------------


def cmd_dims(args, em: Emitter) -> int:
    fam = parse_family(read_text(args.file))
    return _report_dims(em, fam, _parse_which(args.which), _budget(args), not args.no_witness)


def _load_model_and_team(args):
    from .teamlogic import parse_structure, parse_team

    model = parse_structure(read_text(args.model))
    team = parse_team(read_text(args.team), model.size)
    return model, team


def cmd_eval(args, em: Emitter) -> int:
    from .teamlogic import parse_formula, satisfies

    model, team = _load_model_and_team(args)
    verdict = satisfies(model, team, parse_formula(args.formula), _budget(args))
    print("true" if verdict else "false")
    return EXIT_OK if verdict else EXIT_FALSE


def cmd_family(args, em: Emitter) -> int:
    from .teamlogic import Structure, parse_formula, parse_structure, team_family

    if (args.model is None) == (args.n is None):
        raise InputError("give exactly one of --model FILE or --n SIZE")
    model = parse_structure(read_text(args.model)) if args.model else Structure.bare(args.n)
    budget = _budget(args)
    names = [v for chunk in args.vars for v in chunk.split(",") if v]
    fam = team_family(model, parse_formula(args.formula), names, method=args.method, budget=budget)
    if not args.dims:
        sys.stdout.write(fam.to_text())
        return EXIT_OK
    em.add(members=len(fam), base=fam.base.size, method=args.method)
    return _report_dims(em, fam, _parse_which(args.which), budget, not args.no_witness)


def _emit_cases(em: Emitter, cases: Iterable[Case]) -> int:
    failed = passed = 0
    for i, case in enumerate(cases):
        em.add(index=i, **case.fields())
        if case.ok:
            passed += 1
        else:
            failed += 1
    em.add(summary="total", passed=passed, failed=failed)
    return EXIT_VERIFY if failed else EXIT_OK


def cmd_verify(args, em: Emitter) -> int:
    budget = _budget(args)
    if args.suite == "theorem-dims":
        cases = relation_family_cases(args.l, args.n, budget)
    elif args.suite == "translations":
        cases = translation_cases(args.n, args.samples, args.seed, budget)
    elif args.suite == "operators":
        cases = list(operator_cases(args.samples, seed=args.seed)) + list(kripke_cases(seed=args.seed))
    else:
        cases = dnf_cases(args.n, args.samples, args.seed, budget)
    return _emit_cases(em, cases)


def cmd_atom(args, em: Emitter) -> int:
    spec = AtomSpec(args.kind, args.n, args.m, args.k, args.s)
    if args.verify:
        return _emit_cases(em, [atom_case(spec, _budget(args))])
    if args.family:
        sys.stdout.write(gen_family(spec).to_text())
        return EXIT_OK
    expected = closed_form_dims(spec)
    for which in ("dd", "ddd", "cd"):
        try:
            growth = growth_label(spec, which)
        except ValueError:
            growth = "-"
        em.add(kind=spec.kind, which=which, formula=getattr(expected, which), growth=growth)
    return EXIT_OK


def cmd_dnf(args, em: Emitter) -> int:
    f = parse_boolfunc(read_text(args.file))
    budget = _budget(args)
    result = minimal_dnf_length(f, budget)
    em.add(vars=f.var_count, length=result.value, status=result.status)
    for i, term in enumerate(result.witness):
        em.add(term=i, cube=str(term))
    code = EXIT_OK if result.exact else EXIT_BUDGET
    if args.check_cd:
        cd = cylindrical_dimension(boolfunc_to_family(f), budget)
        em.add(cd=cd.value, status=cd.status, agree=str(cd.value == result.value).lower())
        if not cd.exact:
            code = EXIT_BUDGET
        elif result.exact and cd.value != result.value:
            code = EXIT_VERIFY
    return code


def cmd_tensor(args, em: Emitter) -> int:
    operation = op(args.op)
    out = tensor_apply(operation, parse_family(read_text(args.left)), parse_family(read_text(args.right)))
    sys.stdout.write(out.to_text())
    return EXIT_OK


def cmd_kripke(args, em: Emitter) -> int:
    rel = parse_kripke(read_text(args.file))
    em.add(
        local=str(is_local(rel)).lower(),
        separating=str(is_separating(rel)).lower(),
        star_sharp=str(check_star_sharp(rel)).lower(),
        star_flat=str(check_star_flat(rel)).lower(),
    )
    return EXIT_OK


# -- argument parsing ---------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    def common(defaults: bool) -> argparse.ArgumentParser:
        # accepted before and after the subcommand; the subcommand copies must not reset the first
        p = argparse.ArgumentParser(add_help=False)
        keep = {} if defaults else {"default": argparse.SUPPRESS}
        p.add_argument("--format", choices=("lines", "tsv", "table"), **({"default": "lines"} if defaults else keep))
        p.add_argument("--budget-ms", type=int, help="wall-clock budget per search", **({"default": None} if defaults else keep))
        p.add_argument("--strict", action="store_true", help=argparse.SUPPRESS, **keep)
        return p

    parser = argparse.ArgumentParser(
        prog="teamdim", description="Dimensions of set families and team logic.", parents=[common(True)]
    )
    shared = common(False)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_parser(name: str, help: str) -> argparse.ArgumentParser:
        return sub.add_parser(name, help=help, parents=[shared])

    p = add_parser("dims", help="upper, dual upper and cylindrical dimension of a family file")
    p.add_argument("file")
    p.add_argument("--which", default="dd,ddd,cd")
    p.add_argument("--no-witness", action="store_true")
    p.set_defaults(run=cmd_dims)

    p = add_parser("eval", help="check a formula on a team")
    p.add_argument("model")
    p.add_argument("team")
    p.add_argument("formula")
    p.set_defaults(run=cmd_eval)

    p = add_parser("family", help="definable family of a formula")
    p.add_argument("formula")
    p.add_argument("--vars", nargs="+", required=True)
    p.add_argument("--model")
    p.add_argument("--n", type=int)
    p.add_argument("--method", choices=("per-team", "compose"), default="per-team")
    p.add_argument("--dims", action="store_true")
    p.add_argument("--which", default="dd,ddd,cd")
    p.add_argument("--no-witness", action="store_true")
    p.set_defaults(run=cmd_family)

    p = add_parser("verify", help="run a verification battery")
    p.add_argument("suite", choices=("theorem-dims", "translations", "operators", "dnf"))
    p.add_argument("--l", type=int, default=2)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(run=cmd_verify)

    p = add_parser("atom", help="closed-form dimensions of an atom family")
    p.add_argument("--kind", choices=KINDS, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--s", type=int, default=1)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--verify", action="store_true")
    mode.add_argument("--family", action="store_true")
    p.set_defaults(run=cmd_atom)

    p = add_parser("dnf", help="minimal DNF of a truth table")
    p.add_argument("file")
    p.add_argument("--check-cd", action="store_true")
    p.set_defaults(run=cmd_dnf)

    p = add_parser("tensor", help="apply a lifted boolean operation to two family files")
    p.add_argument("op", help="name (or, and, xor, ...) or a 4-bit truth table")
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(run=cmd_tensor)

    p = add_parser("kripke", help="locality, separation and preservation checks of a relation file")
    p.add_argument("file")
    p.set_defaults(run=cmd_kripke)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if args.strict:
        print("error: strict team semantics is not implemented; only lax semantics is available", file=sys.stderr)
        return EXIT_INPUT
    em = Emitter(args.format)
    try:
        code = args.run(args, em)
    except BudgetExceededError as exc:
        em.flush()
        print(f"budget: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (TeamDimError, ValueError) as exc:
        em.flush()
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    em.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
