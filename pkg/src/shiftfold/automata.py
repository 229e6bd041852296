"""Complete deterministic automata over X_n, de Bruijn graphs and their foldings.

States are dense integer indices.  De Bruijn states are the base-n values of
their defining words, so state order equals lexicographic word order.  All
values are immutable after construction and safe to share between threads.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import product

Word = tuple[int, ...]

STATE_CAP = 1_000_000


class CapExceededError(RuntimeError):
    """A configured size or search cap was hit (distinct from a negative verdict)."""


def parse_word(w, alphabet_size: int) -> Word:
    """Normalize a word given as a digit string or an iterable of ints."""
    letters = tuple(int(c) for c in w)
    for c in letters:
        if not 0 <= c < alphabet_size:
            raise ValueError(f"letter {c} outside alphabet of size {alphabet_size}")
    return letters


def format_word(w: Word) -> str:
    return "".join(str(c) for c in w)


def all_words(n: int, length: int):
    """All words of the given length over X_n, in lexicographic order."""
    return product(range(n), repeat=length)


def word_rank(w: Word, n: int) -> int:
    r = 0
    for c in w:
        r = r * n + c
    return r


@dataclass(frozen=True)
class Automaton:
    """A complete deterministic automaton: delta[state][letter] -> state."""

    alphabet_size: int
    delta: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = self.alphabet_size
        if n < 2:
            raise ValueError("alphabet size must be at least 2")
        if not self.delta:
            raise ValueError("automaton needs at least one state")
        m = len(self.delta)
        for q, row in enumerate(self.delta):
            if len(row) != n:
                raise ValueError(f"state {q}: row has {len(row)} entries, expected {n}")
            for x, target in enumerate(row):
                if not 0 <= target < m:
                    raise ValueError(f"state {q}, letter {x}: target {target} out of range")

    @property
    def state_count(self) -> int:
        return len(self.delta)

    def step(self, state: int, letter: int) -> int:
        return self.delta[state][letter]

    def run(self, word, state: int) -> int:
        """Final state after reading `word` from `state`."""
        for c in parse_word(word, self.alphabet_size):
            state = self.delta[state][c]
        return state


def de_bruijn(n: int, m: int) -> Automaton:
    """The de Bruijn graph G(n, m): reading x from word a1..am leads to a2..am x."""
    if n < 2:
        raise ValueError("alphabet size must be at least 2")
    if m < 1:
        raise ValueError("word length must be at least 1")
    size = n**m
    if size > STATE_CAP:
        raise CapExceededError(f"de Bruijn graph would have {size} states (cap {STATE_CAP})")
    tail = n ** (m - 1)
    delta = tuple(tuple((s % tail) * n + x for x in range(n)) for s in range(size))
    return Automaton(n, delta)


@dataclass(frozen=True)
class StatePartition:
    """An equivalence relation on states, normalized by first occurrence."""

    class_of: tuple[int, ...]
    class_count: int

    def __post_init__(self):
        seen = -1
        for c in self.class_of:
            if c > seen + 1 or c < 0:
                raise ValueError("partition not normalized by first occurrence")
            seen = max(seen, c)
        if seen + 1 != self.class_count:
            raise ValueError("class_count does not match class indices")

    @classmethod
    def from_class_of(cls, labels) -> "StatePartition":
        """Build a normalized partition from any state -> label table."""
        remap: dict = {}
        out = []
        for label in labels:
            if label not in remap:
                remap[label] = len(remap)
            out.append(remap[label])
        return cls(tuple(out), len(remap))

    @classmethod
    def discrete(cls, state_count: int) -> "StatePartition":
        return cls(tuple(range(state_count)), state_count)

    @classmethod
    def single(cls, state_count: int) -> "StatePartition":
        return cls((0,) * state_count, 1 if state_count else 0)

    @classmethod
    def from_blocks(cls, blocks, state_count: int) -> "StatePartition":
        labels = [-1] * state_count
        for i, block in enumerate(blocks):
            for s in block:
                if labels[s] != -1:
                    raise ValueError(f"state {s} appears in two blocks")
                labels[s] = i
        if any(x == -1 for x in labels):
            raise ValueError("blocks do not cover all states")
        return cls.from_class_of(labels)

    def blocks(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.class_count)]
        for s, c in enumerate(self.class_of):
            out[c].append(s)
        return out

    def coarsens(self, other: "StatePartition") -> bool:
        """True if every class of `other` is contained in a class of self."""
        rep: dict[int, int] = {}
        for s, c in enumerate(other.class_of):
            mine = self.class_of[s]
            if rep.setdefault(c, mine) != mine:
                return False
        return True


def is_folding(a: Automaton, p: StatePartition) -> bool:
    """True iff equivalent states always transition to equivalent states."""
    if len(p.class_of) != a.state_count:
        raise ValueError("partition does not match automaton state count")
    rep = [-1] * p.class_count
    for s, c in enumerate(p.class_of):
        if rep[c] == -1:
            rep[c] = s
    for s, c in enumerate(p.class_of):
        r = rep[c]
        if r == s:
            continue
        for x in range(a.alphabet_size):
            if p.class_of[a.delta[s][x]] != p.class_of[a.delta[r][x]]:
                return False
    return True


def quotient(a: Automaton, p: StatePartition) -> Automaton:
    """The folded automaton A/p.  Requires p to be a folding of A."""
    if not is_folding(a, p):
        raise ValueError("partition is not a folding of the automaton")
    rep = [-1] * p.class_count
    for s, c in enumerate(p.class_of):
        if rep[c] == -1:
            rep[c] = s
    delta = tuple(
        tuple(p.class_of[a.delta[rep[c]][x]] for x in range(a.alphabet_size))
        for c in range(p.class_count)
    )
    return Automaton(a.alphabet_size, delta)


def row_merge_partition(a: Automaton) -> StatePartition:
    """Group states whose whole transition rows coincide."""
    return StatePartition.from_class_of(a.delta)


@dataclass(frozen=True)
class SyncSequence:
    """Iterated row-merge quotients, each with its partition of the original states."""

    terms: tuple[tuple[Automaton, StatePartition], ...]
    stabilization_index: int


def sync_sequence(a: Automaton) -> SyncSequence:
    terms = [(a, StatePartition.discrete(a.state_count))]
    while True:
        current, accumulated = terms[-1]
        merge = row_merge_partition(current)
        if merge.class_count == current.state_count:
            break
        composed = StatePartition.from_class_of(
            merge.class_of[c] for c in accumulated.class_of
        )
        terms.append((quotient(current, merge), composed))
    return SyncSequence(tuple(terms), len(terms) - 1)


def sync_level(a: Automaton) -> int | None:
    """Minimal j whose sync-sequence term has one state, or None."""
    seq = sync_sequence(a)
    for j, (term, _) in enumerate(seq.terms):
        if term.state_count == 1:
            return j
    return None


def is_strongly_synchronizing(a: Automaton) -> bool:
    return sync_level(a) is not None


def sync_map(a: Automaton, w) -> int:
    """The state forced by w; checked by evaluating from every start state."""
    k = sync_level(a)
    if k is None:
        raise ValueError("automaton is not strongly synchronizing")
    word = parse_word(w, a.alphabet_size)
    if len(word) < k:
        raise ValueError(f"word of length {len(word)} cannot force a state at level {k}")
    targets = {a.run(word, q) for q in range(a.state_count)}
    if len(targets) != 1:
        raise AssertionError("forced state is not unique; sync_level is inconsistent")
    return targets.pop()


def core_states(a: Automaton) -> list[int]:
    k = sync_level(a)
    if k is None:
        raise ValueError("automaton is not strongly synchronizing")
    reach = set(range(a.state_count))
    for _ in range(k):
        reach = {a.delta[q][x] for q in reach for x in range(a.alphabet_size)}
    return sorted(reach)


def core_of(a: Automaton) -> tuple[Automaton, tuple[int, ...]]:
    """Sub-automaton on the forced-state image, plus the injection into A's states."""
    kept = core_states(a)
    index = {old: new for new, old in enumerate(kept)}
    delta = tuple(
        tuple(index[a.delta[old][x]] for x in range(a.alphabet_size)) for old in kept
    )
    return Automaton(a.alphabet_size, delta), tuple(kept)


def is_core(a: Automaton) -> bool:
    return len(core_states(a)) == a.state_count


def folding_from_sync(a: Automaton, level: int | None = None) -> StatePartition:
    """The folding of G(n, level) whose quotient is A.

    Words are equivalent when they force the same state.  `level` defaults to
    the minimal synchronizing level and may be any level A synchronizes at.
    """
    k = sync_level(a)
    if k is None:
        raise ValueError("automaton is not strongly synchronizing")
    if not is_core(a):
        raise ValueError("automaton is not core")
    if level is None:
        level = k
    elif level < k:
        raise ValueError(f"automaton only synchronizes at level {k}, not {level}")
    n = a.alphabet_size
    labels = []
    for w in all_words(n, level):
        labels.append(a.run(w, 0))
    return StatePartition.from_class_of(labels)


def _pack(values) -> bytes:
    return b"".join(v.to_bytes(2, "big") for v in values)


def bfs_order(delta, n: int, root: int) -> list[int] | None:
    """BFS renumbering old -> new from `root` reading letters 0..n-1.

    Returns None when some state is unreachable from the root.
    """
    m = len(delta)
    order = [-1] * m
    order[root] = 0
    queue = deque([root])
    count = 1
    while queue:
        q = queue.popleft()
        for x in range(n):
            t = delta[q][x]
            if order[t] == -1:
                order[t] = count
                count += 1
                queue.append(t)
    if count != m:
        return None
    return order


def _encoded_from(delta, n: int, order: list[int]) -> bytes:
    m = len(delta)
    old_of = [0] * m
    for old, new in enumerate(order):
        old_of[new] = old
    flat = []
    for new in range(m):
        row = delta[old_of[new]]
        flat.extend(order[row[x]] for x in range(n))
    return _pack([n, m]) + _pack(flat)


def canonical_form(a: Automaton) -> bytes:
    """Renaming-invariant encoding: least BFS encoding over all root choices.

    Requires every state to be reachable from at least one single state
    (true for any core strongly synchronizing automaton).
    """
    if a.state_count >= 1 << 16:
        raise CapExceededError("canonical_form supports fewer than 65536 states")
    best = None
    for root in range(a.state_count):
        order = bfs_order(a.delta, a.alphabet_size, root)
        if order is None:
            continue
        enc = _encoded_from(a.delta, a.alphabet_size, order)
        if best is None or enc < best:
            best = enc
    if best is None:
        raise ValueError("no state reaches the whole automaton; cannot canonicalize")
    return b"A" + best


def is_isomorphic(a: Automaton, b: Automaton) -> bool:
    if a.alphabet_size != b.alphabet_size or a.state_count != b.state_count:
        return False
    return canonical_form(a) == canonical_form(b)


def _merge_two(a: Automaton, p: int, q: int) -> Automaton:
    labels = list(range(a.state_count))
    labels[q] = p
    return quotient(a, StatePartition.from_class_of(labels))


def is_collapse_equivalent(a: Automaton, b: Automaton, cap: int = 10**6) -> bool:
    """Can A reach an automaton isomorphic to B by one-pair row-equal merges?"""
    if a.alphabet_size != b.alphabet_size:
        return False
    if a.state_count < b.state_count:
        return False
    target = canonical_form(b)
    start = canonical_form(a)
    if a.state_count == b.state_count:
        return start == target
    seen = {start}
    frontier = [a]
    while frontier:
        nxt = []
        for current in frontier:
            groups: dict[tuple[int, ...], list[int]] = {}
            for s in range(current.state_count):
                groups.setdefault(current.delta[s], []).append(s)
            for members in groups.values():
                for i, p in enumerate(members):
                    for q in members[i + 1 :]:
                        merged = _merge_two(current, p, q)
                        key = canonical_form(merged)
                        if key in seen:
                            continue
                        if len(seen) >= cap:
                            raise CapExceededError("collapse-equivalence search cap exceeded")
                        seen.add(key)
                        if merged.state_count == b.state_count:
                            if key == target:
                                return True
                        elif merged.state_count > b.state_count:
                            nxt.append(merged)
        frontier = nxt
    return False
