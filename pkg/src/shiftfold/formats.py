"""Line-oriented text formats for machines, rules, partitions and automorphisms.

Every format round-trips bit-exactly.  Lines starting with `#` and blank
lines are ignored.  Syntax problems raise ParseError; values that parse but
violate range or completeness constraints raise SemanticError instead, so
callers can distinguish the two.
"""

from __future__ import annotations

from .automata import Automaton, StatePartition
from .digraph_aut import DigraphAutomorphism, check_automorphism
from .rules import LocalRule
from .transducers import Transducer


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        spot = ""
        if line is not None:
            spot = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + spot)
        self.line = line
        self.column = column


class SemanticError(ParseError):
    """Syntactically fine but out of range or incomplete."""


def render_automaton(a: Automaton) -> str:
    lines = [f"automaton n={a.alphabet_size} states={a.state_count}"]
    for q, row in enumerate(a.delta):
        lines.append(f"state {q}: " + " ".join(str(t) for t in row))
    return "\n".join(lines) + "\n"


def render_transducer(t: Transducer) -> str:
    lines = [f"transducer n={t.alphabet_size} states={t.state_count}"]
    for q in range(t.state_count):
        delta = " ".join(str(x) for x in t.base.delta[q])
        out = " ".join(str(x) for x in t.output[q])
        lines.append(f"state {q}: {delta} | {out}")
    return "\n".join(lines) + "\n"


def render_rule(f: LocalRule) -> str:
    header = f"rule n={f.alphabet_size} window={f.window}"
    return header + "\noutputs: " + " ".join(str(x) for x in f.table) + "\n"


def render_partition(p: StatePartition) -> str:
    header = f"partition states={len(p.class_of)} classes={p.class_count}"
    return header + "\nclass_of: " + " ".join(str(c) for c in p.class_of) + "\n"


def render_automorphism(phi: DigraphAutomorphism, n: int) -> str:
    lines = [f"automorphism n={n} states={len(phi.vertex_perm)}"]
    lines.append("vertices: " + " ".join(str(v) for v in phi.vertex_perm))
    for q, row in enumerate(phi.edge_letters):
        lines.append(f"edges {q}: " + " ".join(str(y) for y in row))
    return "\n".join(lines) + "\n"


def _content_lines(text: str):
    for i, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield i, line


def _header_fields(line: str, lineno: int, tag: str, keys: tuple[str, ...]) -> list[int]:
    parts = line.split()
    if not parts or parts[0] != tag:
        raise ParseError(f"expected {tag!r} header", lineno)
    if len(parts) != 1 + len(keys):
        raise ParseError(f"{tag} header needs fields {keys}", lineno)
    values = []
    for want, field in zip(keys, parts[1:]):
        if "=" not in field:
            raise ParseError(f"malformed header field {field!r}", lineno, line.find(field) + 1)
        key, _, value = field.partition("=")
        if key != want:
            raise ParseError(f"expected field {want!r}, got {key!r}", lineno)
        try:
            values.append(int(value))
        except ValueError:
            raise ParseError(f"field {want!r} is not an integer", lineno) from None
    return values


def _ints(text: str, lineno: int) -> list[int]:
    out = []
    for token in text.split():
        try:
            out.append(int(token))
        except ValueError:
            raise ParseError(f"expected an integer, got {token!r}", lineno) from None
    return out


def sniff_format(text: str) -> str:
    for _, line in _content_lines(text):
        return line.split()[0]
    raise ParseError("empty input")


def parse_automaton(text: str) -> Automaton:
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty input")
    lineno, header = lines[0]
    n, m = _header_fields(header, lineno, "automaton", ("n", "states"))
    rows = _state_rows(lines[1:], m, expect_output=False)
    try:
        return Automaton(n, tuple(tuple(r[0]) for r in rows))
    except ValueError as exc:
        raise SemanticError(str(exc), lines[0][0]) from None


def parse_transducer(text: str) -> Transducer:
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty input")
    lineno, header = lines[0]
    n, m = _header_fields(header, lineno, "transducer", ("n", "states"))
    rows = _state_rows(lines[1:], m, expect_output=True)
    try:
        base = Automaton(n, tuple(tuple(r[0]) for r in rows))
        return Transducer(base, tuple(tuple(r[1]) for r in rows))
    except ValueError as exc:
        raise SemanticError(str(exc), lines[0][0]) from None


def _state_rows(lines, m: int, expect_output: bool):
    rows: dict[int, tuple] = {}
    for lineno, line in lines:
        if not line.startswith("state "):
            raise ParseError(f"expected a state line, got {line!r}", lineno)
        head, _, rest = line.partition(":")
        try:
            q = int(head[len("state ") :].strip())
        except ValueError:
            raise ParseError("state id is not an integer", lineno) from None
        if q in rows:
            raise SemanticError(f"state {q} defined twice", lineno)
        if expect_output:
            if "|" not in rest:
                raise ParseError("transducer state line needs 'delta | output'", lineno)
            left, _, right = rest.partition("|")
            rows[q] = (_ints(left, lineno), _ints(right, lineno))
        else:
            if "|" in rest:
                raise ParseError("automaton state line must not contain '|'", lineno)
            rows[q] = (_ints(rest, lineno), None)
    if sorted(rows) != list(range(m)):
        raise SemanticError(f"need states 0..{m - 1}, got {sorted(rows)}", None)
    return [rows[q] for q in range(m)]


def parse_rule(text: str) -> LocalRule:
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty input")
    lineno, header = lines[0]
    n, window = _header_fields(header, lineno, "rule", ("n", "window"))
    if len(lines) != 2:
        raise ParseError("rule needs exactly one outputs line", lineno)
    lineno2, body = lines[1]
    if not body.startswith("outputs:"):
        raise ParseError("expected 'outputs:' line", lineno2)
    table = _ints(body[len("outputs:") :], lineno2)
    try:
        return LocalRule(n, window, tuple(table))
    except ValueError as exc:
        raise SemanticError(str(exc), lineno2) from None


def parse_partition(text: str) -> StatePartition:
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty input")
    lineno, header = lines[0]
    m, classes = _header_fields(header, lineno, "partition", ("states", "classes"))
    if len(lines) != 2:
        raise ParseError("partition needs exactly one class_of line", lineno)
    lineno2, body = lines[1]
    if not body.startswith("class_of:"):
        raise ParseError("expected 'class_of:' line", lineno2)
    table = _ints(body[len("class_of:") :], lineno2)
    if len(table) != m:
        raise SemanticError(f"need {m} entries, got {len(table)}", lineno2)
    try:
        part = StatePartition(tuple(table), classes)
    except ValueError as exc:
        raise SemanticError(str(exc), lineno2) from None
    return part


def parse_automorphism(text: str, automaton: Automaton | None = None) -> DigraphAutomorphism:
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty input")
    lineno, header = lines[0]
    n, m = _header_fields(header, lineno, "automorphism", ("n", "states"))
    if len(lines) < 2:
        raise ParseError("automorphism needs a vertices line", lineno)
    lineno2, body = lines[1]
    if not body.startswith("vertices:"):
        raise ParseError("expected 'vertices:' line", lineno2)
    vertex = _ints(body[len("vertices:") :], lineno2)
    if len(vertex) != m:
        raise SemanticError(f"need {m} vertex images", lineno2)
    rows: dict[int, list[int]] = {}
    for lineno3, line in lines[2:]:
        if not line.startswith("edges "):
            raise ParseError(f"expected an edges line, got {line!r}", lineno3)
        head, _, rest = line.partition(":")
        try:
            q = int(head[len("edges ") :].strip())
        except ValueError:
            raise ParseError("edges state id is not an integer", lineno3) from None
        if q in rows:
            raise SemanticError(f"edges for state {q} defined twice", lineno3)
        row = _ints(rest, lineno3)
        if len(row) != n:
            raise SemanticError(f"need {n} letter images", lineno3)
        rows[q] = row
    if sorted(rows) != list(range(m)):
        raise SemanticError(f"need edges lines for states 0..{m - 1}", None)
    phi = DigraphAutomorphism(tuple(vertex), tuple(tuple(rows[q]) for q in range(m)))
    if automaton is not None:
        try:
            check_automorphism(automaton, phi)
        except ValueError as exc:
            raise SemanticError(str(exc)) from None
    return phi


def parse_machine(text: str):
    """Dispatch on the header tag."""
    tag = sniff_format(text)
    parsers = {
        "automaton": parse_automaton,
        "transducer": parse_transducer,
        "rule": parse_rule,
        "partition": parse_partition,
        "automorphism": parse_automorphism,
    }
    if tag not in parsers:
        raise ParseError(f"unknown format tag {tag!r}")
    return parsers[tag](text)


def to_dot(machine) -> str:
    """DOT rendering with deterministic vertex and edge order."""
    lines = ["digraph {", "  rankdir=LR;"]
    if isinstance(machine, Transducer):
        base, labels = machine.base, machine.output
    elif isinstance(machine, Automaton):
        base, labels = machine, None
    else:
        raise TypeError("to_dot renders automata and transducers")
    for q in range(base.state_count):
        lines.append(f'  {q} [label="q{q}" shape=circle];')
    for q in range(base.state_count):
        for x in range(base.alphabet_size):
            label = str(x) if labels is None else f"{x}|{labels[q][x]}"
            lines.append(f'  {q} -> {base.delta[q][x]} [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"