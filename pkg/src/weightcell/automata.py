"""Finite-state automata: the carrier of every language in this package.

An automaton is a labelled directed multigraph with a start state and a set
of accept states.  Non-deterministic automata share the type with DFAs (the
`deterministic` flag is computed from the transitions), because the
cell-automaton construction in the weight engine naturally emits NFAs.

Determinize and minimize renumber states canonically (breadth-first
discovery order, letters ascending), so building the same automaton twice
yields bit-identical serializations.  `trim` preserves the relative order of
surviving states.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from functools import lru_cache

from . import limits
from .errors import InputError, ResourceLimitError

Word = tuple[int, ...]

__all__ = [
    "Automaton",
    "Word",
    "accepts",
    "counterexample",
    "determinize",
    "enumerate_words",
    "equivalent",
    "from_json",
    "minimize",
    "reverse",
    "to_dot",
    "to_json",
    "trim",
]


@dataclass(frozen=True)
class Automaton:
    """Immutable automaton over an ordered alphabet of letter names.

    transitions are (source, letter_index, target) triples, kept sorted.
    """

    alphabet: tuple[str, ...]
    n_states: int
    start: int
    accept: frozenset[int]
    transitions: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        if len(set(self.alphabet)) != len(self.alphabet):
            raise InputError("alphabet letters must be distinct")
        if not (0 <= self.start < self.n_states):
            raise InputError("start state out of range")
        for q in self.accept:
            if not (0 <= q < self.n_states):
                raise InputError("accept state out of range")
        for src, letter, dst in self.transitions:
            if not (0 <= src < self.n_states and 0 <= dst < self.n_states):
                raise InputError("transition endpoint out of range")
            if not (0 <= letter < len(self.alphabet)):
                raise InputError("transition letter out of range")
        object.__setattr__(self, "transitions", tuple(sorted(set(self.transitions))))
        object.__setattr__(self, "accept", frozenset(self.accept))

    @property
    def deterministic(self) -> bool:
        return _is_deterministic(self)

    # -- word helpers -------------------------------------------------------

    def letter(self, name: str) -> int:
        try:
            return self.alphabet.index(name)
        except ValueError:
            raise InputError(f"unknown letter {name!r}") from None

    def word(self, text: str) -> Word:
        """Parse a word: contiguous single-char letters, or whitespace-separated."""
        if not text:
            return ()
        parts = text.split() if any(ch.isspace() for ch in text) else None
        if parts is None:
            if all(len(name) == 1 for name in self.alphabet):
                parts = list(text)
            else:
                parts = [text]
        return tuple(self.letter(p) for p in parts)

    def word_names(self, w: Word) -> tuple[str, ...]:
        return tuple(self.alphabet[i] for i in w)

    def format_word(self, w: Word) -> str:
        names = self.word_names(w)
        if all(len(n) == 1 for n in self.alphabet):
            return "".join(names)
        return " ".join(names)


@lru_cache(maxsize=4096)
def _is_deterministic(a: Automaton) -> bool:
    seen = set()
    for src, letter, _ in a.transitions:
        if (src, letter) in seen:
            return False
        seen.add((src, letter))
    return True


@lru_cache(maxsize=4096)
def _delta(a: Automaton) -> dict:
    """(source, letter) -> tuple of targets, targets ascending."""
    table: dict[tuple[int, int], list[int]] = {}
    for src, letter, dst in a.transitions:
        table.setdefault((src, letter), []).append(dst)
    return {k: tuple(v) for k, v in table.items()}


@lru_cache(maxsize=4096)
def _out_edges(a: Automaton) -> tuple[tuple[tuple[int, int], ...], ...]:
    """Per state, the outgoing (letter, target) pairs sorted by letter then target."""
    out: list[list[tuple[int, int]]] = [[] for _ in range(a.n_states)]
    for src, letter, dst in a.transitions:
        out[src].append((letter, dst))
    return tuple(tuple(sorted(edges)) for edges in out)


def empty_language_automaton(alphabet: tuple[str, ...]) -> Automaton:
    return Automaton(alphabet, 1, 0, frozenset(), ())


# ---------------------------------------------------------------------------
# Core operations
# ---------------------------------------------------------------------------


def trim(a: Automaton) -> Automaton:
    """Restrict to states reachable from the start and co-reachable to accept.

    Preserves the language and the relative order of surviving states; when
    no accept state is reachable, returns the canonical empty-language
    automaton (a single non-accepting start state).
    """
    forward = {a.start}
    queue = deque([a.start])
    out = _out_edges(a)
    while queue:
        q = queue.popleft()
        for _, dst in out[q]:
            if dst not in forward:
                forward.add(dst)
                queue.append(dst)
    rev: list[list[int]] = [[] for _ in range(a.n_states)]
    for src, _, dst in a.transitions:
        rev[dst].append(src)
    backward = set(a.accept)
    queue = deque(a.accept)
    while queue:
        q = queue.popleft()
        for src in rev[q]:
            if src not in backward:
                backward.add(src)
                queue.append(src)
    useful = forward & backward
    if a.start not in useful:
        return empty_language_automaton(a.alphabet)
    order = sorted(useful)
    renum = {old: new for new, old in enumerate(order)}
    return Automaton(
        a.alphabet,
        len(order),
        renum[a.start],
        frozenset(renum[q] for q in a.accept if q in useful),
        tuple(
            (renum[src], letter, renum[dst])
            for src, letter, dst in a.transitions
            if src in useful and dst in useful
        ),
    )


def is_trim(a: Automaton) -> bool:
    t = trim(a)
    return t.n_states == a.n_states and len(t.transitions) == len(a.transitions)


def determinize(a: Automaton, max_states: int = limits.MAX_STATES) -> Automaton:
    """Subset construction; canonical numbering by BFS discovery, letters ascending."""
    delta = _delta(a)
    n_letters = len(a.alphabet)
    start = frozenset([a.start])
    index = {start: 0}
    order = [start]
    transitions = []
    queue = deque([start])
    while queue:
        subset = queue.popleft()
        src = index[subset]
        for letter in range(n_letters):
            targets = set()
            for q in subset:
                targets.update(delta.get((q, letter), ()))
            if not targets:
                continue
            key = frozenset(targets)
            if key not in index:
                if len(index) >= max_states:
                    raise ResourceLimitError("determinization states", max_states)
                index[key] = len(order)
                order.append(key)
                queue.append(key)
            transitions.append((src, letter, index[key]))
    accept = frozenset(i for i, subset in enumerate(order) if subset & a.accept)
    return Automaton(a.alphabet, len(order), 0, accept, tuple(transitions))


def minimize(a: Automaton) -> Automaton:
    """Minimal DFA of the same language, canonically numbered.

    Partial DFAs are supported (a missing transition is an implicit reject
    sink).  Rejects non-deterministic input.
    """
    if not a.deterministic:
        raise InputError("minimize requires a deterministic automaton")
    a = trim(a)
    if not a.accept:
        return empty_language_automaton(a.alphabet)
    n_letters = len(a.alphabet)
    sink = a.n_states
    delta = {k: v[0] for k, v in _delta(a).items()}

    def step(q: int, letter: int) -> int:
        return delta.get((q, letter), sink) if q != sink else sink

    # Moore partition refinement including the implicit sink.
    block = [1 if q in a.accept else 0 for q in range(a.n_states)] + [0]
    while True:
        signatures = {}
        new_block = [0] * (a.n_states + 1)
        for q in range(a.n_states + 1):
            sig = (block[q],) + tuple(block[step(q, s)] for s in range(n_letters))
            if sig not in signatures:
                signatures[sig] = len(signatures)
            new_block[q] = signatures[sig]
        if new_block == block:
            break
        block = new_block
    sink_block = block[sink]
    # BFS canonical numbering over the quotient, skipping the sink class.
    renum = {block[a.start]: 0}
    order = [block[a.start]]
    queue = deque([a.start])
    reps = {block[a.start]: a.start}
    transitions = []
    seen_blocks = {block[a.start]}
    while queue:
        q = queue.popleft()
        b = block[q]
        for letter in range(n_letters):
            t = step(q, letter)
            tb = block[t]
            if tb == sink_block:
                continue
            if tb not in seen_blocks:
                seen_blocks.add(tb)
                renum[tb] = len(order)
                order.append(tb)
                reps[tb] = t
                queue.append(t)
            transitions.append((renum[b], letter, renum[tb]))
    accept = frozenset(
        renum[b] for b in seen_blocks if reps[b] in a.accept
    )
    return Automaton(a.alphabet, len(order), 0, accept, tuple(set(transitions)))


def reverse(a: Automaton) -> Automaton:
    """NFA for the letter-reversals of the accepted words.

    The multiple initial states of the naive reversal (the old accept set)
    are simulated by a fresh start state that replicates their out-edges;
    the accept set becomes the old start state (plus the fresh start when
    the empty word is in the language).
    """
    rev_edges = [(dst, letter, src) for src, letter, dst in a.transitions]
    fresh = a.n_states
    extra = [
        (fresh, letter, dst)
        for src, letter, dst in rev_edges
        if src in a.accept
    ]
    accept = {a.start}
    if a.start in a.accept:
        accept.add(fresh)
    return Automaton(
        a.alphabet,
        a.n_states + 1,
        fresh,
        frozenset(accept),
        tuple(rev_edges + extra),
    )


def accepts(a: Automaton, w: Word) -> bool:
    """Path-existence membership test; works for NFAs."""
    delta = _delta(a)
    current = {a.start}
    for letter in w:
        if not (0 <= letter < len(a.alphabet)):
            raise InputError("word letter out of alphabet range")
        nxt = set()
        for q in current:
            nxt.update(delta.get((q, letter), ()))
        if not nxt:
            return False
        current = nxt
    return bool(current & a.accept)


def enumerate_words(
    a: Automaton, maxlen: int, max_words: int = limits.MAX_WORDS
) -> list[Word]:
    """All accepted words of length <= maxlen, in shortlex order."""
    if maxlen < 0:
        raise InputError("maxlen must be >= 0")
    d = a if a.deterministic else determinize(a)
    delta = {k: v[0] for k, v in _delta(d).items()}
    n_letters = len(d.alphabet)
    words: list[Word] = []
    frontier: list[tuple[int, Word]] = [(d.start, ())]
    if d.start in d.accept:
        words.append(())
    for _ in range(maxlen):
        nxt: list[tuple[int, Word]] = []
        for state, word in frontier:
            for letter in range(n_letters):
                t = delta.get((state, letter))
                if t is None:
                    continue
                w2 = word + (letter,)
                nxt.append((t, w2))
                if t in d.accept:
                    words.append(w2)
                    if len(words) > max_words:
                        raise ResourceLimitError("enumerated words", max_words)
        if not nxt:
            break
        frontier = nxt
    return words


def _remap_to(a: Automaton, alphabet: tuple[str, ...]) -> Automaton:
    if a.alphabet == alphabet:
        return a
    if set(a.alphabet) != set(alphabet):
        raise InputError("alphabet mismatch (letter names differ)")
    mapping = {i: alphabet.index(name) for i, name in enumerate(a.alphabet)}
    return Automaton(
        alphabet,
        a.n_states,
        a.start,
        a.accept,
        tuple((src, mapping[letter], dst) for src, letter, dst in a.transitions),
    )


def counterexample(a: Automaton, b: Automaton) -> Word | None:
    """Shortest (then lexicographically least) word in the symmetric difference.

    Returns None when the languages agree.  Requires equal alphabets as sets
    of letter names; b is remapped to a's letter order.
    """
    b = _remap_to(b, a.alphabet)
    da, db = determinize(a), determinize(b)
    ta = {k: v[0] for k, v in _delta(da).items()}
    tb = {k: v[0] for k, v in _delta(db).items()}
    sink_a, sink_b = da.n_states, db.n_states
    start = (da.start, db.start)
    seen = {start}
    queue = deque([(start, ())])
    n_letters = len(a.alphabet)
    while queue:
        (p, q), word = queue.popleft()
        in_a = p != sink_a and p in da.accept
        in_b = q != sink_b and q in db.accept
        if in_a != in_b:
            return word
        for letter in range(n_letters):
            p2 = ta.get((p, letter), sink_a) if p != sink_a else sink_a
            q2 = tb.get((q, letter), sink_b) if q != sink_b else sink_b
            if p2 == sink_a and q2 == sink_b:
                continue
            key = (p2, q2)
            if key not in seen:
                seen.add(key)
                queue.append((key, word + (letter,)))
    return None


def equivalent(a: Automaton, b: Automaton) -> bool:
    """True iff the two automata recognise the same language."""
    return counterexample(a, b) is None


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


def to_json(a: Automaton) -> str:
    doc = {
        "alphabet": list(a.alphabet),
        "states": a.n_states,
        "start": a.start,
        "accept": sorted(a.accept),
        "transitions": [
            [src, a.alphabet[letter], dst] for src, letter, dst in a.transitions
        ],
        "deterministic": a.deterministic,
    }
    return json.dumps(doc, indent=2) + "\n"


def from_json(text: str) -> Automaton:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid automaton JSON: {exc}") from None
    try:
        alphabet = tuple(doc["alphabet"])
        n_states = int(doc["states"])
        start = int(doc["start"])
        accept = frozenset(int(q) for q in doc["accept"])
        transitions = []
        for src, letter, dst in doc["transitions"]:
            if letter not in alphabet:
                raise InputError(f"transition uses unknown letter {letter!r}")
            transitions.append((int(src), alphabet.index(letter), int(dst)))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"invalid automaton document: {exc}") from None
    a = Automaton(alphabet, n_states, start, accept, tuple(transitions))
    if doc.get("deterministic") is True and not a.deterministic:
        raise InputError("document claims deterministic but transitions are not")
    return a


_DOT_COLOURS = (
    "black",
    "blue",
    "red",
    "forestgreen",
    "darkorange",
    "purple",
    "brown",
    "teal",
)


def to_dot(a: Automaton, name: str = "automaton") -> str:
    """Graphviz DOT export: accept states double-circled, start marked,
    edges coloured per letter in declaration order."""
    lines = [f"digraph {name} {{", "  rankdir=LR;", '  __start [shape=point, label=""];']
    for q in range(a.n_states):
        shape = "doublecircle" if q in a.accept else "circle"
        lines.append(f"  {q} [shape={shape}];")
    lines.append(f"  __start -> {a.start};")
    for src, letter, dst in a.transitions:
        colour = _DOT_COLOURS[letter % len(_DOT_COLOURS)]
        lines.append(
            f'  {src} -> {dst} [label="{a.alphabet[letter]}", color="{colour}"];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"
