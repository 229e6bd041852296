"""Automorphisms of the unlabeled digraph underlying an automaton.

An edge of the digraph is identified with the pair (state, input letter), so
an automorphism is a vertex permutation plus, per state, a relabeling of the
outgoing edges.  The relabeled edge (q, x) is the edge (vertex_perm[q],
edge_letters[q][x]) of the same digraph.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from .automata import Automaton, CapExceededError, all_words, is_core, sync_level, sync_map
from .transducers import (
    Transducer,
    equal_omega,
    identity_transducer,
    product_min,
    weak_minimize,
)


@dataclass(frozen=True)
class DigraphAutomorphism:
    vertex_perm: tuple[int, ...]
    edge_letters: tuple[tuple[int, ...], ...]

    def edge_map(self, state: int, letter: int) -> tuple[int, int]:
        return (self.vertex_perm[state], self.edge_letters[state][letter])

    def is_identity(self) -> bool:
        if any(v != i for i, v in enumerate(self.vertex_perm)):
            return False
        return all(all(y == x for x, y in enumerate(row)) for row in self.edge_letters)


def check_automorphism(a: Automaton, phi: DigraphAutomorphism) -> None:
    """Raise unless phi satisfies the incidence conditions on A's digraph."""
    m = a.state_count
    n = a.alphabet_size
    if len(phi.vertex_perm) != m or sorted(phi.vertex_perm) != list(range(m)):
        raise ValueError("vertex map is not a permutation of the states")
    if len(phi.edge_letters) != m:
        raise ValueError("edge table does not match state count")
    for q in range(m):
        row = phi.edge_letters[q]
        if sorted(row) != list(range(n)):
            raise ValueError(f"edge relabeling at state {q} is not a bijection")
        for x in range(n):
            image_source, y = phi.vertex_perm[q], row[x]
            if a.delta[image_source][y] != phi.vertex_perm[a.delta[q][x]]:
                raise ValueError(f"edge ({q},{x}) image breaks target incidence")


def make_automorphism(a: Automaton, vertex_perm, edge_letters) -> DigraphAutomorphism:
    phi = DigraphAutomorphism(tuple(vertex_perm), tuple(tuple(r) for r in edge_letters))
    check_automorphism(a, phi)
    return phi


def identity_automorphism(a: Automaton) -> DigraphAutomorphism:
    n = a.alphabet_size
    return DigraphAutomorphism(
        tuple(range(a.state_count)),
        tuple(tuple(range(n)) for _ in range(a.state_count)),
    )


def compose_automorphisms(
    first: DigraphAutomorphism, second: DigraphAutomorphism
) -> DigraphAutomorphism:
    """Apply `first`, then `second`."""
    vertex = tuple(second.vertex_perm[v] for v in first.vertex_perm)
    edges = tuple(
        tuple(second.edge_letters[first.vertex_perm[q]][y] for y in first.edge_letters[q])
        for q in range(len(first.vertex_perm))
    )
    return DigraphAutomorphism(vertex, edges)


def invert_automorphism(phi: DigraphAutomorphism) -> DigraphAutomorphism:
    m = len(phi.vertex_perm)
    vertex = [0] * m
    for q, v in enumerate(phi.vertex_perm):
        vertex[v] = q
    edges = []
    for v in range(m):
        q = vertex[v]
        row = [0] * len(phi.edge_letters[q])
        for x, y in enumerate(phi.edge_letters[q]):
            row[y] = x
        edges.append(tuple(row))
    return DigraphAutomorphism(tuple(vertex), tuple(edges))


def edge_count_matrix(a: Automaton) -> tuple[tuple[int, ...], ...]:
    """counts[p][q] = number of letters taking p to q."""
    m = a.state_count
    rows = []
    for p in range(m):
        row = [0] * m
        for x in range(a.alphabet_size):
            row[a.delta[p][x]] += 1
        rows.append(tuple(row))
    return tuple(rows)


def _vertex_perms(a: Automaton):
    """All vertex permutations preserving the edge-count matrix, in lex order."""
    m = a.state_count
    counts = edge_count_matrix(a)
    signature = [
        (tuple(sorted(counts[v])), tuple(sorted(counts[p][v] for p in range(m))), counts[v][v])
        for v in range(m)
    ]

    assignment = [-1] * m
    used = [False] * m

    def descend(v: int):
        if v == m:
            yield tuple(assignment)
            return
        for u in range(m):
            if used[u] or signature[u] != signature[v]:
                continue
            ok = True
            for w in range(v):
                if counts[v][w] != counts[u][assignment[w]] or counts[w][v] != counts[assignment[w]][u]:
                    ok = False
                    break
            if ok and counts[v][v] == counts[u][u]:
                assignment[v] = u
                used[u] = True
                yield from descend(v + 1)
                used[u] = False
                assignment[v] = -1

    yield from descend(0)


def enumerate_automorphisms(a: Automaton, cap: int = 10_000) -> list[DigraphAutomorphism]:
    """All digraph automorphisms, in lexicographic (vertex map, edge map) order."""
    n = a.alphabet_size
    m = a.state_count
    letters_to: list[dict[int, list[int]]] = []
    for p in range(m):
        classes: dict[int, list[int]] = {}
        for x in range(n):
            classes.setdefault(a.delta[p][x], []).append(x)
        letters_to.append(classes)

    out: list[DigraphAutomorphism] = []
    for vperm in _vertex_perms(a):
        # per parallel class, all bijections onto the image class
        per_state_rows: list[list[tuple[int, ...]]] = []
        for q in range(m):
            choices_per_class = []
            class_letters = []
            for target in sorted(letters_to[q]):
                src = letters_to[q][target]
                dst = letters_to[vperm[q]][vperm[target]]
                class_letters.append(src)
                choices_per_class.append(list(permutations(dst)))
            rows = []
            stack = [[]]
            for letters, choices in zip(class_letters, choices_per_class):
                stack = [prev + [(letters, pick)] for prev in stack for pick in choices]
            for combo in stack:
                row = [0] * n
                for letters, pick in combo:
                    for x, y in zip(letters, pick):
                        row[x] = y
                rows.append(tuple(row))
            rows.sort()
            per_state_rows.append(rows)

        def assemble(q: int, acc: list[tuple[int, ...]]):
            if q == m:
                yield tuple(acc)
                return
            for row in per_state_rows[q]:
                acc.append(row)
                yield from assemble(q + 1, acc)
                acc.pop()

        for edge_rows in assemble(0, []):
            if len(out) >= cap:
                raise CapExceededError("automorphism enumeration cap exceeded")
            phi = DigraphAutomorphism(vperm, edge_rows)
            check_automorphism(a, phi)
            out.append(phi)
    return out


def automorphism_from_alphabet_perm(a: Automaton, rho) -> DigraphAutomorphism | None:
    """The automorphism induced by an alphabet permutation, when it acts.

    Requires A core and strongly synchronizing, so states correspond to the
    classes of level-k words forcing them.  Present iff rho permutes those
    classes.
    """
    rho = tuple(rho)
    n = a.alphabet_size
    if sorted(rho) != list(range(n)):
        raise ValueError("not a permutation of the alphabet")
    k = sync_level(a)
    if k is None or not is_core(a):
        raise ValueError("automaton must be core and strongly synchronizing")
    vertex = [-1] * a.state_count
    for w in all_words(n, k):
        q = sync_map(a, w)
        image = sync_map(a, tuple(rho[c] for c in w))
        if vertex[q] == -1:
            vertex[q] = image
        elif vertex[q] != image:
            return None
    edges = tuple(tuple(rho[x] for x in range(n)) for _ in range(a.state_count))
    phi = DigraphAutomorphism(tuple(vertex), edges)
    check_automorphism(a, phi)
    return phi


def transducer_from_automorphism(a: Automaton, phi: DigraphAutomorphism) -> Transducer:
    """Glue A to itself along phi: inputs are A's labels, outputs their images."""
    check_automorphism(a, phi)
    return Transducer(a, phi.edge_letters)


def is_permutation_induced(a: Automaton, phi: DigraphAutomorphism) -> tuple[int, ...] | None:
    """The inducing alphabet permutation, present iff the glued machine is one-state."""
    minimal = weak_minimize(transducer_from_automorphism(a, phi))
    if minimal.state_count != 1:
        return None
    return minimal.output[0]


def verify_embedding(a: Automaton, phi: DigraphAutomorphism, psi: DigraphAutomorphism) -> bool:
    """Check multiplicativity and faithfulness of the glued machines for one pair."""
    h_phi = transducer_from_automorphism(a, phi)
    h_psi = transducer_from_automorphism(a, psi)
    h_comp = transducer_from_automorphism(a, compose_automorphisms(phi, psi))
    if not equal_omega(h_comp, product_min(h_phi, h_psi)):
        return False
    if not phi.is_identity() and equal_omega(h_phi, identity_transducer(a.alphabet_size)):
        return False
    return True


def involution_factors(a: Automaton, phi: DigraphAutomorphism) -> list[DigraphAutomorphism]:
    """Split a vertex-fixing automorphism into vertex-fixing involutions.

    Each cycle of the per-state edge relabeling is written as the ordered
    product of transpositions sharing the cycle's least letter; composing the
    returned automorphisms in list order recovers phi.
    """
    check_automorphism(a, phi)
    if any(v != q for q, v in enumerate(phi.vertex_perm)):
        raise ValueError("automorphism moves a vertex")
    n = a.alphabet_size
    factors: list[DigraphAutomorphism] = []
    for q in range(a.state_count):
        row = phi.edge_letters[q]
        seen = [False] * n
        for start in range(n):
            if seen[start] or row[start] == start:
                seen[start] = True
                continue
            cycle = []
            x = start
            while not seen[x]:
                seen[x] = True
                cycle.append(x)
                x = row[x]
            for other in cycle[1:]:
                swap = list(range(n))
                swap[start], swap[other] = other, start
                edges = [tuple(range(n))] * a.state_count
                edges[q] = tuple(swap)
                tau = DigraphAutomorphism(tuple(range(a.state_count)), tuple(edges))
                check_automorphism(a, tau)
                factors.append(tau)
    return factors