"""Torsion decomposition of invertible bisynchronizing machines.

Each step finds two states with identical transition rows, aligns their output
rows by a letter permutation, locates the first inverse-side sync-sequence
term where that permutation acts on parallel edges, and multiplies by the
machine glued from the resulting vertex-fixing automorphism.  State count
drops strictly, so a machine of size s factors through at most s - 1 steps.
"""

from __future__ import annotations

from dataclasses import dataclass

from .automata import Automaton, CapExceededError, sync_sequence
from .digraph_aut import (
    DigraphAutomorphism,
    check_automorphism,
    edge_count_matrix,
    involution_factors,
    transducer_from_automorphism,
)
from .transducers import (
    Transducer,
    canonical_rep,
    equal_omega,
    invert,
    is_in_hn,
    order,
    product_min,
    weak_minimize,
)


@dataclass(frozen=True)
class DecompositionStep:
    pair: tuple[int, int]
    alpha: tuple[int, ...]
    level_i: int
    factor: Transducer
    reduced: Transducer
    involutions: tuple[Transducer, ...] | None = None


@dataclass(frozen=True)
class Factorization:
    original: Transducer
    remainder: Transducer
    inverse_factors: tuple[Transducer, ...]
    steps: tuple[DecompositionStep, ...]


def find_collapsible_pair(t: Transducer) -> tuple[int, int]:
    """Lexicographically least pair of distinct states with equal transition rows."""
    if t.state_count <= 1:
        raise ValueError("single-state machine has no collapsible pair")
    for p in range(t.state_count):
        for q in range(p + 1, t.state_count):
            if t.base.delta[p] == t.base.delta[q]:
                return (p, q)
    raise AssertionError("strongly synchronizing machine with >1 state must collapse")


def alignment_permutation(t: Transducer, p: int, q: int) -> tuple[int, ...]:
    """The letter permutation carrying q's output row onto p's."""
    if t.base.delta[p] != t.base.delta[q]:
        raise ValueError("states do not have equal transition rows")
    n = t.alphabet_size
    alpha = [-1] * n
    for x in range(n):
        alpha[t.output[q][x]] = t.output[p][x]
    if -1 in alpha or sorted(alpha) != list(range(n)):
        raise ValueError("output rows are not permutations; machine not invertible")
    if alpha == list(range(n)):
        raise ValueError("output rows are equal; machine is not weakly minimal")
    return tuple(alpha)


def _cycles(perm) -> list[list[int]]:
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start] or perm[start] == start:
            seen[start] = True
            continue
        cycle = []
        x = start
        while not seen[x]:
            seen[x] = True
            cycle.append(x)
            x = perm[x]
        out.append(cycle)
    return out


def find_factor(
    t: Transducer, p: int, q: int
) -> tuple[int, Automaton, DigraphAutomorphism, Transducer]:
    """Level, inverse-side term, vertex-fixing automorphism and glued machine.

    Scans the synchronizing sequence of the inverse's underlying automaton for
    the first term where [p] and [q] stay distinct while all edges from [q]
    within one alignment cycle have become parallel.
    """
    alpha = alignment_permutation(t, p, q)
    cycles = _cycles(alpha)
    b = invert(t).base
    seq = sync_sequence(b)
    for i, (term, part) in enumerate(seq.terms):
        cp, cq = part.class_of[p], part.class_of[q]
        if cp == cq:
            break
        if all(
            term.delta[cq][cycle[0]] == term.delta[cq][x] for cycle in cycles for x in cycle[1:]
        ):
            n = t.alphabet_size
            edges = [tuple(range(n))] * term.state_count
            edges[cq] = alpha
            tau = DigraphAutomorphism(tuple(range(term.state_count)), tuple(edges))
            check_automorphism(term, tau)
            return i, term, tau, transducer_from_automorphism(term, tau)
    raise AssertionError("no usable synchronizing-sequence term; input outside the group")


def decompose_step(t: Transducer) -> tuple[DecompositionStep, Transducer]:
    p, q = find_collapsible_pair(t)
    alpha = alignment_permutation(t, p, q)
    level, _term, _tau, h = find_factor(t, p, q)
    reduced = canonical_rep(product_min(t, h))
    if reduced.state_count >= t.state_count:
        raise AssertionError("decomposition step failed to shrink the machine")
    step = DecompositionStep(
        pair=(p, q), alpha=alpha, level_i=level, factor=canonical_rep(h), reduced=reduced
    )
    return step, reduced


def decompose(t: Transducer) -> Factorization:
    """Write T as a single-state remainder times inverses of the step factors."""
    if not is_in_hn(t):
        raise ValueError("decomposition is defined on invertible bisynchronizing machines")
    original = canonical_rep(t)
    steps: list[DecompositionStep] = []
    current = original
    while current.state_count > 1:
        step, current = decompose_step(current)
        steps.append(step)
    inverse_factors = tuple(
        canonical_rep(invert(step.factor)) for step in reversed(steps)
    )
    return Factorization(
        original=original,
        remainder=current,
        inverse_factors=inverse_factors,
        steps=tuple(steps),
    )


def decompose_involutions(t: Transducer) -> Factorization:
    """Like decompose, but each step factor is split into involutions first."""
    if not is_in_hn(t):
        raise ValueError("decomposition is defined on invertible bisynchronizing machines")
    original = canonical_rep(t)
    steps: list[DecompositionStep] = []
    current = original
    while current.state_count > 1:
        p, q = find_collapsible_pair(current)
        alpha = alignment_permutation(current, p, q)
        level, term, tau, h = find_factor(current, p, q)
        parts = involution_factors(term, tau)
        machines = tuple(
            canonical_rep(transducer_from_automorphism(term, piece)) for piece in parts
        )
        reduced = canonical_rep(product_min(current, h))
        if reduced.state_count >= current.state_count:
            raise AssertionError("decomposition step failed to shrink the machine")
        steps.append(
            DecompositionStep(
                pair=(p, q),
                alpha=alpha,
                level_i=level,
                factor=canonical_rep(h),
                reduced=reduced,
                involutions=machines,
            )
        )
        current = reduced
    inverse_factors = []
    for step in reversed(steps):
        for machine in reversed(step.involutions):
            inverse_factors.append(canonical_rep(invert(machine)))
    return Factorization(
        original=original,
        remainder=current,
        inverse_factors=tuple(inverse_factors),
        steps=tuple(steps),
    )


def verify(f: Factorization) -> bool:
    """Re-multiply remainder and factors and re-derive each step's certificate."""
    acc = f.remainder
    for factor in f.inverse_factors:
        acc = product_min(acc, factor)
    if not equal_omega(acc, f.original):
        return False
    current = f.original
    for step in f.steps:
        if order(step.factor) is None:
            return False
        level, term, tau, h = find_factor(current, *step.pair)
        if level != step.level_i or not equal_omega(weak_minimize(h), step.factor):
            return False
        if step.involutions is not None:
            rebuilt = [
                weak_minimize(transducer_from_automorphism(term, piece))
                for piece in involution_factors(term, tau)
            ]
            if len(rebuilt) != len(step.involutions):
                return False
            if any(
                not equal_omega(x, y) for x, y in zip(rebuilt, step.involutions)
            ):
                return False
        current = step.reduced
    return current.state_count == 1


def count_matrix(a: Automaton) -> tuple[tuple[int, ...], ...]:
    """The digraph of an automaton, as its edge-count matrix."""
    return edge_count_matrix(a)


def _canonical_matrix(mat: tuple[tuple[int, ...], ...]) -> tuple:
    """Least layer-by-layer reading of the matrix over all vertex orderings."""
    m = len(mat)
    best: list[tuple] | None = None
    assignment: list[int] = []
    used = [False] * m

    def layer(order: list[int], d: int) -> tuple:
        row = tuple(mat[order[d]][order[j]] for j in range(d + 1))
        col = tuple(mat[order[j]][order[d]] for j in range(d))
        return row + col

    def descend(d: int, layers: list[tuple]):
        nonlocal best
        if d == m:
            if best is None or layers < best:
                best = list(layers)
            return
        for v in range(m):
            if used[v]:
                continue
            assignment.append(v)
            used[v] = True
            new_layer = layer(assignment, d)
            prefix_ok = True
            if best is not None:
                probe = layers + [new_layer]
                if probe > best[: len(probe)]:
                    prefix_ok = False
            if prefix_ok:
                descend(d + 1, layers + [new_layer])
            used[v] = False
            assignment.pop()

    descend(0, [])
    assert best is not None
    return tuple(best)


def is_amalgamation(gb: Automaton, ga: Automaton, cap: int = 100_000) -> bool:
    """Is Gb's digraph reachable from Ga's by merging amalgamable vertex pairs?"""
    target_size = gb.state_count
    start = count_matrix(ga)
    target = _canonical_matrix(count_matrix(gb))
    if target_size > len(start):
        return False
    seen = {_canonical_matrix(start)}
    if target_size == len(start):
        return _canonical_matrix(start) == target
    frontier = [start]
    while frontier:
        grown = []
        for mat in frontier:
            m = len(mat)
            for v1 in range(m):
                for v2 in range(v1 + 1, m):
                    if mat[v1] != mat[v2]:
                        continue
                    keep = [v for v in range(m) if v != v2]
                    merged = []
                    for p in keep:
                        row = [
                            mat[p][r] + (mat[p][v2] if r == v1 else 0) for r in keep
                        ]
                        merged.append(tuple(row))
                    merged_t = tuple(merged)
                    key = _canonical_matrix(merged_t)
                    if key in seen:
                        continue
                    if len(seen) >= cap:
                        raise CapExceededError("amalgamation search cap exceeded")
                    seen.add(key)
                    if len(merged_t) == target_size:
                        if key == target:
                            return True
                    elif len(merged_t) > target_size:
                        grown.append(merged_t)
        frontier = grown
    return False