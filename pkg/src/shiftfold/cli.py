"""Command-line workbench.

Exit codes: 0 success, 1 negative verdict (for example `check-hn` on a
machine outside the group), 2 usage or parse errors, 3 a cap was exceeded.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import counting
from .automata import (
    Automaton,
    CapExceededError,
    core_of,
    de_bruijn,
    sync_level,
    sync_sequence,
)
from .decompose import decompose, decompose_involutions, verify
from .digraph_aut import enumerate_automorphisms, transducer_from_automorphism
from .formats import (
    ParseError,
    parse_automaton,
    parse_automorphism,
    parse_machine,
    parse_rule,
    parse_transducer,
    render_automaton,
    render_automorphism,
    render_rule,
    render_transducer,
)
from .rules import rule_to_transducer, transducer_to_rule
from .subgroups import subgroup_automaton, subgroup_closure
from .transducers import (
    Transducer,
    bisync_levels,
    core,
    invert,
    is_in_hn,
    order,
    product_min,
    weak_minimize,
)


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None


def _load_transducer(path: str) -> Transducer:
    return parse_transducer(_read(path))


def _machine_base(machine) -> Automaton:
    if isinstance(machine, Transducer):
        return machine.base
    if isinstance(machine, Automaton):
        return machine
    raise ParseError("expected an automaton or transducer file")


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def cmd_debruijn(args) -> int:
    _emit(render_automaton(de_bruijn(args.n, args.m)), args.output)
    return 0


def cmd_sync(args) -> int:
    base = _machine_base(parse_machine(_read(args.file)))
    seq = sync_sequence(base)
    counts = " ".join(str(term.state_count) for term, _ in seq.terms)
    level = sync_level(base)
    text = f"sequence: {counts}\nlevel: {'none' if level is None else level}\n"
    _emit(text, args.output)
    return 0 if level is not None else 1


def cmd_core(args) -> int:
    machine = parse_machine(_read(args.file))
    if isinstance(machine, Transducer):
        _emit(render_transducer(core(machine)), args.output)
    else:
        reduced, _ = core_of(_machine_base(machine))
        _emit(render_automaton(reduced), args.output)
    return 0


def cmd_minimize(args) -> int:
    _emit(render_transducer(weak_minimize(_load_transducer(args.file))), args.output)
    return 0


def cmd_product(args) -> int:
    t = _load_transducer(args.left)
    u = _load_transducer(args.right)
    _emit(render_transducer(product_min(t, u)), args.output)
    return 0


def cmd_invert(args) -> int:
    _emit(render_transducer(invert(_load_transducer(args.file))), args.output)
    return 0


def cmd_check_hn(args) -> int:
    t = _load_transducer(args.file)
    if is_in_hn(t):
        j, k = bisync_levels(t)
        _emit(f"in-hn: true\nlevels: ({j}, {k})\n", args.output)
        return 0
    _emit("in-hn: false\n", args.output)
    return 1


def cmd_rule2trans(args) -> int:
    _emit(render_transducer(rule_to_transducer(parse_rule(_read(args.file)))), args.output)
    return 0


def cmd_trans2rule(args) -> int:
    _emit(render_rule(transducer_to_rule(_load_transducer(args.file))), args.output)
    return 0


def cmd_aut(args) -> int:
    base = _machine_base(parse_machine(_read(args.file)))
    autos = enumerate_automorphisms(base, cap=args.cap)
    blocks = [f"count: {len(autos)}"]
    for phi in autos:
        blocks.append(render_automorphism(phi, base.alphabet_size).rstrip("\n"))
    _emit("\n\n".join(blocks) + "\n", args.output)
    return 0


def cmd_haphi(args) -> int:
    base = parse_automaton(_read(args.file))
    phi = parse_automorphism(_read(args.automorphism), base)
    _emit(render_transducer(transducer_from_automorphism(base, phi)), args.output)
    return 0


def cmd_decompose(args) -> int:
    t = _load_transducer(args.file)
    result = decompose_involutions(t) if args.involutions else decompose(t)
    outdir = Path(args.output) if args.output else Path(Path(args.file).stem + ".factors")
    outdir.mkdir(parents=True, exist_ok=True)

    (outdir / "remainder.txt").write_text(render_transducer(result.remainder))
    lines = [f"factorization of {args.file}"]
    lines.append(f"remainder: remainder.txt order={order(result.remainder)}")
    provenance = []
    for step in reversed(result.steps):
        machines = step.involutions if step.involutions is not None else (step.factor,)
        for machine in reversed(machines):
            provenance.append((step, machine))
    for idx, ((step, _machine), factor) in enumerate(
        zip(provenance, result.inverse_factors), start=1
    ):
        name = f"factor_{idx:02d}.txt"
        (outdir / name).write_text(render_transducer(factor))
        lines.append(
            f"factor {idx}: {name} order={order(factor)}"
            f" level={step.level_i} pair={step.pair}"
        )
    lines.append("reconstruction: remainder then factors in listed order")
    ok = verify(result)
    lines.append(f"verified: {'true' if ok else 'false'}")
    manifest = "\n".join(lines) + "\n"
    (outdir / "manifest.txt").write_text(manifest)
    sys.stdout.write(manifest)
    return 0 if ok else 1


def cmd_order(args) -> int:
    k = order(_load_transducer(args.file), cap_states=args.cap, cap_iters=args.cap)
    if k is None:
        sys.stdout.write("exceeds-cap\n")
        return 3
    _emit(f"{k}\n", args.output)
    return 0


def cmd_fold_count(args) -> int:
    if args.m == 1:
        value = counting.bell(args.n)
    elif args.m == 2:
        value = counting.count_foldings_g_n_2(args.n)
    else:
        value = len(counting.enumerate_foldings(de_bruijn(args.n, args.m)))
    _emit(f"{value}\n", args.output)
    return 0


def cmd_fold_enum(args) -> int:
    foldings = counting.enumerate_foldings(de_bruijn(args.n, args.m), method=args.method)
    text = "".join(" ".join(str(c) for c in p.class_of) + "\n" for p in foldings)
    _emit(text, args.output)
    return 0


def cmd_bell(args) -> int:
    _emit(f"{counting.bell(args.k)}\n", args.output)
    return 0


def cmd_subgroup_ag(args) -> int:
    gens = [_load_transducer(path) for path in args.generators]
    closure = subgroup_closure(gens, cap=args.cap)
    base, mapping = subgroup_automaton(closure)
    blocks = [f"order: {len(closure.elements)}\nlevel: {closure.max_sync_level}"]
    blocks.append(render_automaton(base).rstrip("\n"))
    for idx, element in enumerate(closure.elements):
        phi = mapping[element]
        blocks.append(
            f"element {idx}: states={element.state_count} order={order(element)}\n"
            + render_automorphism(phi, base.alphabet_size).rstrip("\n")
        )
    _emit("\n\n".join(blocks) + "\n", args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shiftfold",
        description="Strongly synchronizing automata and synchronous transducer algebra",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(fn=fn)
        p.add_argument("-o", "--output", default=None, help="write output here instead of stdout")
        return p

    p = add("debruijn", cmd_debruijn, "emit a de Bruijn graph automaton")
    p.add_argument("n", type=int)
    p.add_argument("m", type=int)

    p = add("sync", cmd_sync, "synchronizing sequence and level of a machine")
    p.add_argument("file")

    p = add("core", cmd_core, "restrict a machine to its core")
    p.add_argument("file")

    p = add("minimize", cmd_minimize, "identify behaviourally equal states")
    p.add_argument("file")

    p = add("product", cmd_product, "monoid product of two transducers")
    p.add_argument("left")
    p.add_argument("right")

    p = add("invert", cmd_invert, "automata-theoretic inverse of a transducer")
    p.add_argument("file")

    p = add("check-hn", cmd_check_hn, "test core/invertible/bisynchronizing membership")
    p.add_argument("file")

    p = add("rule2trans", cmd_rule2trans, "turn a window rule into a transducer")
    p.add_argument("file")

    p = add("trans2rule", cmd_trans2rule, "turn a transducer into a window rule")
    p.add_argument("file")

    p = add("aut", cmd_aut, "enumerate digraph automorphisms")
    p.add_argument("file")
    p.add_argument("--cap", type=int, default=10_000)

    p = add("haphi", cmd_haphi, "glue an automaton to itself along an automorphism")
    p.add_argument("file")
    p.add_argument("automorphism")

    p = add("decompose", cmd_decompose, "factor into torsion elements (writes files)")
    p.add_argument("file")
    p.add_argument("--involutions", action="store_true")

    p = add("order", cmd_order, "order of a group element")
    p.add_argument("file")
    p.add_argument("--cap", type=int, default=1_000)

    p = add("fold-count", cmd_fold_count, "count foldings of a de Bruijn graph")
    p.add_argument("n", type=int)
    p.add_argument("m", type=int)

    p = add("fold-enum", cmd_fold_enum, "list foldings of a de Bruijn graph")
    p.add_argument("n", type=int)
    p.add_argument("m", type=int)
    p.add_argument("--method", choices=("exhaustive", "lattice"), default="lattice")

    p = add("bell", cmd_bell, "Bell number")
    p.add_argument("k", type=int)

    p = add("subgroup-ag", cmd_subgroup_ag, "automaton realizing a finite subgroup")
    p.add_argument("generators", nargs="+")
    p.add_argument("--cap", type=int, default=512)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())