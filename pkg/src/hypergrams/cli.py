"""Command-line interface: JSON on stdout, human summaries on stderr.

Exit status is 0 on success, 1 on a domain failure (invalid hypergram, not
assignable, threshold exceeded, ...) and 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Any, Sequence

from . import assign, degree, geometry, gf2
from . import hypergram as hgm
from .assign import ClassicalAssignment, PauliAssignment

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    """Bad input files or flag combinations; maps to exit status 2."""


class DomainError(Exception):
    """Well-formed input that fails a mathematical precondition; exit status 1."""


def _info(msg: str) -> None:
    print(msg, file=sys.stderr)


def _emit(doc: Any, args: argparse.Namespace) -> None:
    text = json.dumps(doc, indent=2 if getattr(args, "pretty", False) else None)
    out = getattr(args, "output", None)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _read(path: str) -> Any:
    try:
        return hgm.read_json(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    except hgm.HypergramFormatError as exc:
        raise UsageError(str(exc)) from exc


def _load_raw(path: str) -> tuple[hgm.RawHypergram, Any]:
    doc = _read(path)
    try:
        return hgm.raw_hypergram_from_json(doc), doc
    except hgm.HypergramFormatError as exc:
        raise UsageError(f"{path}: {exc}") from exc


def _load_valid(path: str) -> tuple[hgm.Hypergram, Any]:
    raw, doc = _load_raw(path)
    report = raw.validate()
    if not report.ok:
        raise DomainError(f"{path}: invalid hypergram: " + "; ".join(f"{v.code} ({v.detail})" for v in report.violations))
    return hgm.Hypergram(raw.vertex_count, raw.hyperedges, sorted(raw.anticommutations)), doc


def _load_pauli(path: str) -> PauliAssignment:
    try:
        return PauliAssignment.from_json(_read(path))
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from exc


def _load_classical(path: str) -> ClassicalAssignment:
    try:
        return ClassicalAssignment.from_json(_read(path))
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from exc


def _checked_assignment(alpha: PauliAssignment, hg: hgm.Hypergram, path: str) -> PauliAssignment:
    defects = assign.assignment_defects(alpha, hg)
    if defects:
        raise DomainError(f"{path} is not a Pauli assignment of the hypergram: " + "; ".join(defects[:5]))
    return alpha


def _auto_assignment(hg: hgm.Hypergram) -> PauliAssignment:
    try:
        alpha, n = assign.pauli_assignment_from_anticommutations(hg)
    except assign.NotAssignable as exc:
        raise DomainError(f"not assignable: {exc}") from exc
    _info(f"auto-assigned {n}-qubit observables")
    return alpha


def _signs_for(args: argparse.Namespace, hg: hgm.Hypergram, doc: Any) -> list[int]:
    """Sign vector from --signs, --assignment, --auto-assign or the file's own "signs"."""
    chosen = [f for f in ("signs", "assignment", "auto_assign") if getattr(args, f)]
    if len(chosen) > 1:
        raise UsageError("use only one of --signs, --assignment, --auto-assign")
    if args.signs:
        sdoc = _read(args.signs)
        signs = sdoc.get("signs") if isinstance(sdoc, dict) else sdoc
        if not isinstance(signs, list):
            raise UsageError(f"{args.signs}: expected {{\"signs\": [...]}}")
    elif args.assignment:
        alpha = _checked_assignment(_load_pauli(args.assignment), hg, args.assignment)
        signs = list(assign.sign_function(alpha, hg))
    elif args.auto_assign:
        signs = list(assign.sign_function(_auto_assignment(hg), hg))
    elif isinstance(doc, dict) and "signs" in doc:
        signs = doc["signs"]
    else:
        raise UsageError("no signs: pass --signs, --assignment or --auto-assign")
    if len(signs) != hg.context_count or any(s not in (1, -1) for s in signs):
        raise UsageError(f"need {hg.context_count} signs, each +1 or -1")
    return signs


def _threads(args: argparse.Namespace) -> int | None:
    env = os.environ.get("HYPERGRAM_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError as exc:
            raise UsageError(f"HYPERGRAM_THREADS must be an integer, got {env!r}") from exc
    return args.threads


def _run_degree(args: argparse.Namespace) -> tuple[hgm.Hypergram, list[int], degree.DegreeResult]:
    hg, doc = _load_valid(args.path)
    signs = _signs_for(args, hg, doc)
    try:
        params = degree.HeuristicParams(args.restarts, args.max_flips, args.seed, args.tabu_tenure)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    try:
        result = degree.degree(
            hg, signs, method=args.method, threshold=args.threshold, params=params, threads=_threads(args)
        )
    except (degree.ThresholdExceeded, degree.TooLarge) as exc:
        raise DomainError(str(exc)) from exc
    return hg, signs, result


def _unsatisfied(hg: hgm.Hypergram, signs: Sequence[int], witness: ClassicalAssignment) -> list[int]:
    classical = assign.classical_sign_function(witness, hg)
    return [k + 1 for k, (s, t) in enumerate(zip(signs, classical)) if s != t]


# -- subcommands --------------------------------------------------------------


def cmd_validate(args: argparse.Namespace) -> int:
    vertices, hyperedges, pairs = _raw_triple(args.path)
    report = hgm.validate(vertices, hyperedges, pairs)
    _emit(report.to_json(), args)
    if report.ok:
        _info(f"valid hypergram: {vertices} vertices, {len(hyperedges)} hyperedges")
        return EXIT_OK
    _info(f"invalid hypergram: {len(report.violations)} violation(s)")
    return EXIT_DOMAIN


def _raw_triple(path: str):
    doc = _read(path)
    try:
        return hgm.raw_from_json(doc)
    except hgm.HypergramFormatError as exc:
        raise UsageError(f"{path}: {exc}") from exc


def cmd_assignable(args: argparse.Namespace) -> int:
    raw, _ = _load_raw(args.path)
    defects = hgm.assignability_defects(raw)
    report = raw.validate()
    doc = {
        "assignable": not defects,
        "defects": [[i + 1, j + 1] for i, j in defects],
        "valid": report.ok,
        "violations": report.to_json()["violations"],
    }
    _emit(doc, args)
    if defects:
        i, j = defects[0]
        _info(f"not assignable: H x G has a nonzero entry at (row {i + 1}, col {j + 1})")
        return EXIT_DOMAIN
    _info("assignable: H x G = 0")
    return EXIT_OK


def cmd_assign(args: argparse.Namespace) -> int:
    raw, _ = _load_raw(args.path)
    if not hgm.is_assignable(raw):
        i, j = hgm.assignability_defects(raw)[0]
        raise DomainError(f"not assignable: H x G has a nonzero entry at (row {i + 1}, col {j + 1})")
    hg, _ = _load_valid(args.path)
    alpha, n = assign.pauli_assignment_from_anticommutations(hg, checked=args.checked)
    _emit(alpha.to_json(), args)
    _info(f"n = {n} qubits (rank G = {2 * n})")
    return EXIT_OK


def cmd_signs(args: argparse.Namespace) -> int:
    hg, doc = _load_valid(args.path)
    signs = _signs_for(args, hg, doc)
    negative = [k + 1 for k, s in enumerate(signs) if s == -1]
    _emit({"signs": list(signs), "negative": negative}, args)
    _info(f"{len(negative)} of {len(signs)} contexts negative")
    return EXIT_OK


def cmd_degree(args: argparse.Namespace) -> int:
    hg, signs, result = _run_degree(args)
    doc = result.to_json()
    doc["unsatisfied"] = _unsatisfied(hg, signs, result.witness)
    _emit(doc, args)
    kind = "exact" if result.exact else "upper bound"
    _info(f"degree {result.value} ({kind}, {result.method})")
    return EXIT_OK


def cmd_bound(args: argparse.Namespace) -> int:
    hg, _, result = _run_degree(args)
    b = degree.noncontextual_bound(hg.context_count, result.value)
    # A degree upper bound gives a lower bound on b.
    _emit({"bound": b, "exact": result.exact, "degree": result.value, "contexts": hg.context_count, "method": result.method}, args)
    _info(f"noncontextual bound {b}" + ("" if result.exact else " (degree is an upper bound, so b may be larger)"))
    return EXIT_OK


def cmd_transfer(args: argparse.Namespace) -> int:
    hg, _ = _load_valid(args.path)
    alpha1 = _checked_assignment(_load_pauli(args.alpha1), hg, args.alpha1)
    alpha2 = _checked_assignment(_load_pauli(args.alpha2), hg, args.alpha2)
    a1 = _load_classical(args.a1)
    if len(a1) != hg.vertex_count:
        raise DomainError(f"{args.a1} has {len(a1)} values for {hg.vertex_count} vertices")
    a2 = assign.transfer_classical(alpha1, alpha2, a1, hg)
    before = assign.unsatisfied_set(alpha1, a1, hg)
    after = assign.unsatisfied_set(alpha2, a2, hg)
    if before != after:
        raise DomainError("transfer changed the unsatisfied set")
    doc = a2.to_json()
    doc["unsatisfied"] = sorted(k + 1 for k in after)
    _emit(doc, args)
    _info(f"unsatisfied hyperedges preserved: {doc['unsatisfied']}")
    return EXIT_OK


def cmd_generate(args: argparse.Namespace) -> int:
    alpha: PauliAssignment | None = None
    if args.kind == "lines":
        if args.n is None or args.n < 2:
            raise UsageError("lines needs --n N with N >= 2")
        conf = geometry.wn_lines(args.n)
        doc = conf.to_json()
        alpha = conf.assignment
        _info(f"W_{args.n}: {len(conf.lines)} contexts, {conf.negative_count} negative")
    elif args.kind == "nonassignable":
        doc = geometry.nonassignable_example().to_json()
        _info("5 vertices, 2 hyperedges (not assignable)")
    else:
        builder = {"doily": geometry.doily, "two-spread": geometry.two_spread, "two-spread-variant": geometry.two_spread_variant}
        hg, alpha = builder[args.kind]()
        doc = hg.to_json()
        _info(f"{hg.vertex_count} vertices, {hg.context_count} hyperedges")
    _emit(doc, args)
    if args.assignment_out:
        if alpha is None:
            raise DomainError(f"{args.kind} has no Pauli assignment")
        with open(args.assignment_out, "w") as fh:
            json.dump(alpha.to_json(), fh)
            fh.write("\n")
    return EXIT_OK


def cmd_info(args: argparse.Namespace) -> int:
    raw, _ = _load_raw(args.path)
    report = raw.validate()
    rank_h = degree.coset_rank(raw)
    rank_g = gf2.rank(hgm.anticommutation_matrix(raw))
    assignable = hgm.is_assignable(raw)
    doc = {
        "vertices": raw.vertex_count,
        "hyperedges": raw.context_count,
        "anticommutations": len(raw.anticommutations),
        "valid": report.ok,
        "assignable": assignable,
        "first_family": hgm.is_first_family(raw),
        "rank_context_matrix": rank_h,
        "rank_anticommutation_matrix": rank_g,
        "qubits": rank_g // 2 if assignable and rank_g % 2 == 0 else None,
    }
    _emit(doc, args)
    _info(f"{raw.vertex_count} vertices, {raw.context_count} hyperedges, rank H = {rank_h}, rank G = {rank_g}")
    return EXIT_OK


# -- parser ---------------------------------------------------------------------


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hypergram", description="Hypergrams, Pauli assignments and contextuality degrees.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name: str, func, help: str, path: bool = True) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help)
        if path:
            sp.add_argument("path", help="hypergram JSON file")
        sp.add_argument("-o", "--output", help="write JSON here instead of stdout")
        sp.add_argument("--pretty", action="store_true", help="indent JSON output")
        sp.set_defaults(func=func)
        return sp

    def sign_flags(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--signs", help='JSON file {"signs": [...]}')
        sp.add_argument("--assignment", help="Pauli assignment JSON file")
        sp.add_argument("--auto-assign", action="store_true", help="label with the anticommutation-matrix algorithm")

    add("validate", cmd_validate, "check the hypergram definition")
    add("assignable", cmd_assignable, "decide whether H x G = 0")
    sp = add("assign", cmd_assign, "construct a Pauli assignment")
    sp.add_argument("--checked", action="store_true", help="assert loop invariants at every iteration")
    sign_flags(add("signs", cmd_signs, "sign vector of an assignment"))

    for name, func, help in (
        ("degree", cmd_degree, "contextuality degree"),
        ("bound", cmd_bound, "noncontextual bound |C| - 2d"),
    ):
        sp = add(name, func, help)
        sign_flags(sp)
        sp.add_argument("--method", choices=("auto", "exact", "heuristic", "bruteforce"), default="auto")
        sp.add_argument("--threshold", type=_nonneg, default=degree.EXHAUSTIVE_THRESHOLD, help="largest rank solved exhaustively")
        defaults = degree.HeuristicParams()
        sp.add_argument("--seed", type=int, default=defaults.seed)
        sp.add_argument("--restarts", type=_positive, default=defaults.restarts)
        sp.add_argument("--max-flips", type=_positive, default=defaults.max_flips)
        sp.add_argument("--tabu-tenure", type=_nonneg, default=defaults.tabu_tenure)
        sp.add_argument("--threads", type=_positive, default=None, help="heuristic worker threads (HYPERGRAM_THREADS wins)")

    sp = add("transfer", cmd_transfer, "move a classical assignment between two Pauli assignments")
    sp.add_argument("alpha1", help="assignment the classical values refer to")
    sp.add_argument("alpha2", help="target assignment")
    sp.add_argument("a1", help="classical assignment JSON file")

    sp = add("generate", cmd_generate, "emit a fixture or the lines of W_n", path=False)
    sp.add_argument("kind", choices=("doily", "two-spread", "two-spread-variant", "nonassignable", "lines"))
    sp.add_argument("--n", type=int, help="qubit count for lines")
    sp.add_argument("--assignment-out", help="also write the Pauli assignment here")

    add("info", cmd_info, "summary statistics")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        _info(f"error: {exc}")
        return EXIT_USAGE
    except DomainError as exc:
        _info(f"error: {exc}")
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
