"""Synchronous transducers (Mealy machines emitting one letter per letter read).

The monoid operation is `product_min`: raw product, core extraction, then
identification of states that behave identically on all inputs.  Machine
equality throughout is "canonical key of the weakly minimal core
representative", which makes the usual convention of not distinguishing
behaviourally equal machines executable.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import ceil

from .automata import (
    Automaton,
    CapExceededError,
    StatePartition,
    Word,
    bfs_order,
    core_states,
    is_core,
    parse_word,
    quotient,
    sync_level,
    _pack,
)


@dataclass(frozen=True)
class Transducer:
    """An automaton plus a single-letter output table output[state][letter]."""

    base: Automaton
    output: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = self.base.alphabet_size
        if len(self.output) != self.base.state_count:
            raise ValueError("output table does not match state count")
        for q, row in enumerate(self.output):
            if len(row) != n:
                raise ValueError(f"state {q}: output row has wrong length")
            for y in row:
                if not 0 <= y < n:
                    raise ValueError(f"state {q}: output letter {y} out of range")

    @property
    def alphabet_size(self) -> int:
        return self.base.alphabet_size

    @property
    def state_count(self) -> int:
        return self.base.state_count

    def emit(self, state: int, letter: int) -> int:
        return self.output[state][letter]

    def run(self, word, state: int) -> tuple[int, Word]:
        """Final state and output word after reading `word` from `state`."""
        out = []
        for c in parse_word(word, self.alphabet_size):
            out.append(self.output[state][c])
            state = self.base.delta[state][c]
        return state, tuple(out)


def identity_transducer(n: int) -> Transducer:
    return single_state(tuple(range(n)))


def single_state(perm) -> Transducer:
    """The one-state machine applying a fixed alphabet permutation."""
    perm = tuple(perm)
    n = len(perm)
    if sorted(perm) != list(range(n)):
        raise ValueError("output table is not a permutation of the alphabet")
    return Transducer(Automaton(n, (tuple(0 for _ in range(n)),)), (perm,))


def shift_transducer(n: int) -> Transducer:
    """Reading x from state i outputs i and moves to state x."""
    if n < 2:
        raise ValueError("alphabet size must be at least 2")
    delta = tuple(tuple(range(n)) for _ in range(n))
    output = tuple(tuple(i for _ in range(n)) for i in range(n))
    return Transducer(Automaton(n, delta), output)


def product_raw(t: Transducer, u: Transducer) -> Transducer:
    """State-product machine feeding T's output into U (apply T first)."""
    if t.alphabet_size != u.alphabet_size:
        raise ValueError("alphabet sizes differ")
    n = t.alphabet_size
    mu = u.state_count
    delta = []
    output = []
    for p in range(t.state_count):
        for q in range(mu):
            drow = []
            orow = []
            for x in range(n):
                y = t.output[p][x]
                drow.append(t.base.delta[p][x] * mu + u.base.delta[q][y])
                orow.append(u.output[q][y])
            delta.append(tuple(drow))
            output.append(tuple(orow))
    return Transducer(Automaton(n, tuple(delta)), tuple(output))


def restrict(t: Transducer, kept) -> Transducer:
    kept = list(kept)
    index = {old: new for new, old in enumerate(kept)}
    delta = tuple(
        tuple(index[t.base.delta[old][x]] for x in range(t.alphabet_size)) for old in kept
    )
    output = tuple(t.output[old] for old in kept)
    return Transducer(Automaton(t.alphabet_size, delta), output)


def core(t: Transducer) -> Transducer:
    """Restriction to the forced-state image of the underlying automaton."""
    return restrict(t, core_states(t.base))


def minimize_partition(t: Transducer) -> StatePartition:
    """Group states that output the same word on every input (Moore refinement)."""
    n = t.alphabet_size
    labels = list(t.output)
    while True:
        part = StatePartition.from_class_of(labels)
        refined = [
            (part.class_of[q],) + tuple(part.class_of[t.base.delta[q][x]] for x in range(n))
            for q in range(t.state_count)
        ]
        if StatePartition.from_class_of(refined).class_count == part.class_count:
            return part
        labels = refined


def weak_minimize(t: Transducer) -> Transducer:
    """Merge states that output the same word on every input."""
    part = minimize_partition(t)
    rep = [-1] * part.class_count
    for s, c in enumerate(part.class_of):
        if rep[c] == -1:
            rep[c] = s
    base = quotient(t.base, part)
    output = tuple(t.output[rep[c]] for c in range(part.class_count))
    return Transducer(base, output)


def minimal_rep(t: Transducer) -> Transducer:
    """The weakly minimal core representative (requires strong synchronization)."""
    return weak_minimize(core(t))


def product_min(t: Transducer, u: Transducer) -> Transducer:
    """The monoid product: raw product, reduced to its minimal core representative."""
    if sync_level(t.base) is None or sync_level(u.base) is None:
        raise ValueError("product_min operands must be strongly synchronizing")
    return minimal_rep(product_raw(t, u))


def is_invertible(t: Transducer) -> bool:
    n = t.alphabet_size
    return all(sorted(row) == list(range(n)) for row in t.output)


def invert(t: Transducer) -> Transducer:
    """Switch inputs and outputs on all transitions."""
    n = t.alphabet_size
    if not is_invertible(t):
        raise ValueError("some output row is not a permutation; not invertible")
    delta = []
    output = []
    for q in range(t.state_count):
        inverse = [0] * n
        for x, y in enumerate(t.output[q]):
            inverse[y] = x
        delta.append(tuple(t.base.delta[q][inverse[y]] for y in range(n)))
        output.append(tuple(inverse))
    return Transducer(Automaton(n, tuple(delta)), tuple(output))


def bisync_levels(t: Transducer) -> tuple[int, int] | None:
    """(j, k) when T and its inverse are synchronizing at levels j and k."""
    if not is_invertible(t):
        return None
    j = sync_level(t.base)
    if j is None:
        return None
    k = sync_level(invert(t).base)
    if k is None:
        return None
    return (j, k)


def is_in_hn(t: Transducer) -> bool:
    """Membership in the group of core invertible bisynchronizing machines."""
    if not is_invertible(t):
        return False
    if sync_level(t.base) is None:
        return False
    if sync_level(invert(t).base) is None:
        return False
    return is_core(weak_minimize(t).base)


def _best_encoding(t: Transducer) -> tuple[bytes, list[int]]:
    n = t.alphabet_size
    m = t.state_count
    if m >= 1 << 16:
        raise CapExceededError("canonical keys support fewer than 65536 states")
    best = None
    best_order = None
    for root in range(m):
        order = bfs_order(t.base.delta, n, root)
        if order is None:
            continue
        old_of = [0] * m
        for old, new in enumerate(order):
            old_of[new] = old
        flat = []
        for new in range(m):
            old = old_of[new]
            flat.extend(order[t.base.delta[old][x]] for x in range(n))
            flat.extend(t.output[old])
        enc = _pack([n, m]) + _pack(flat)
        if best is None or enc < best:
            best, best_order = enc, order
    if best is None:
        raise ValueError("no state reaches the whole machine; cannot canonicalize")
    return best, best_order


def canonical_key(t: Transducer) -> bytes:
    """Renaming-invariant encoding of the machine including its outputs."""
    return b"T" + _best_encoding(t)[0]


def canonical_rep(t: Transducer) -> Transducer:
    """Minimal core representative, renumbered by its least BFS encoding.

    Behaviourally equal machines map to identical objects, so canonical
    representatives can serve as dictionary keys.
    """
    reduced = minimal_rep(t)
    _, order = _best_encoding(reduced)
    m = reduced.state_count
    old_of = [0] * m
    for old, new in enumerate(order):
        old_of[new] = old
    n = reduced.alphabet_size
    delta = tuple(
        tuple(order[reduced.base.delta[old_of[new]][x]] for x in range(n))
        for new in range(m)
    )
    output = tuple(reduced.output[old_of[new]] for new in range(m))
    return Transducer(Automaton(n, delta), output)


def equal_omega(t: Transducer, u: Transducer) -> bool:
    """Do the machines induce the same maps?  Compared on minimal core forms."""
    if t.alphabet_size != u.alphabet_size:
        return False
    return canonical_key(minimal_rep(t)) == canonical_key(minimal_rep(u))


def apply_periodic(t: Transducer, period) -> Word:
    """One output period of the sliding action on the periodic input extension.

    Synchronizes by reading whole repetitions of the period first, so the
    forced-state history window behind position 0 always exists.
    """
    k = sync_level(t.base)
    if k is None:
        raise ValueError("transducer is not strongly synchronizing")
    if not is_core(t.base):
        raise ValueError("transducer is not core")
    w = parse_word(period, t.alphabet_size)
    if not w:
        raise ValueError("period must be nonempty")
    reps = max(1, ceil(k / len(w)))
    state = 0
    for _ in range(reps):
        state, _ = t.run(w, state)
    _, out = t.run(w, state)
    return out


def order(t: Transducer, cap_states: int = 10_000, cap_iters: int = 1_000) -> int | None:
    """Least k with T^k the identity under the monoid product; None past the caps.

    Each power is kept in minimal core form, so reaching the identity is a
    constant-time test; powers of infinite-order elements grow without bound
    and trip the state cap instead.
    """
    if not is_in_hn(t):
        raise ValueError("order is defined only for invertible bisynchronizing machines")
    base = minimal_rep(t)
    ident = tuple(range(t.alphabet_size))
    power = base
    for k in range(1, cap_iters + 1):
        if power.state_count == 1 and power.output[0] == ident:
            return k
        power = product_min(power, base)
        if power.state_count > cap_states:
            return None
    return None