"""Weight functions on regular languages: boundedness, bound, and cell.

A weight function assigns a rational to each letter and extends additively
to words.  On a trimmed DFA the relevant structure is finite: the letter
counts of the simple circuits cut out the cone of bounded weight functions,
the circuit-free words carry the bound, and the cell (the words attaining
the bound) is again regular, recognised by the tight sub-automaton of
maximal-weight runs.

All comparisons are exact; there are no tolerance parameters.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import limits
from .automata import Automaton, Word, determinize, is_trim, minimize, trim
from .errors import InputError, PreconditionError, ResourceLimitError, UnboundedError

__all__ = [
    "BoundednessReport",
    "CellResult",
    "SimpleCycle",
    "WeightVector",
    "bound",
    "cell_automaton",
    "circuit_free_words",
    "is_bounded",
    "parse_weights",
    "simple_circuit_words",
    "simple_cycles",
    "strictly_negative_cell",
    "weight_of_word",
]


# ---------------------------------------------------------------------------
# Weight vectors
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WeightVector:
    """Rational letter weights over an ordered alphabet."""

    alphabet: tuple[str, ...]
    values: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.alphabet) != len(self.values):
            raise InputError("weight vector must assign a value to every letter")
        object.__setattr__(self, "values", tuple(Fraction(v) for v in self.values))

    @staticmethod
    def from_mapping(alphabet, mapping) -> "WeightVector":
        missing = [name for name in alphabet if name not in mapping]
        if missing:
            raise InputError(f"missing weights for letters: {', '.join(missing)}")
        extra = [name for name in mapping if name not in alphabet]
        if extra:
            raise InputError(f"weights given for unknown letters: {', '.join(extra)}")
        return WeightVector(tuple(alphabet), tuple(Fraction(mapping[n]) for n in alphabet))

    def __getitem__(self, name: str) -> Fraction:
        try:
            return self.values[self.alphabet.index(name)]
        except ValueError:
            raise InputError(f"unknown letter {name!r}") from None

    def as_dict(self) -> dict[str, Fraction]:
        return dict(zip(self.alphabet, self.values))


def parse_weights(text: str, alphabet) -> WeightVector:
    """Parse "s=1,t=2,u=-5" (rational literals like "1/2" allowed)."""
    mapping: dict[str, Fraction] = {}
    for item in filter(None, (part.strip() for part in text.split(","))):
        name, sep, raw = item.partition("=")
        if not sep:
            raise InputError(f"bad weight assignment {item!r} (expected letter=value)")
        name = name.strip()
        if name in mapping:
            raise InputError(f"duplicate weight for letter {name!r}")
        try:
            mapping[name] = Fraction(raw.strip())
        except (ValueError, ZeroDivisionError):
            raise InputError(f"bad rational literal {raw.strip()!r}") from None
    return WeightVector.from_mapping(tuple(alphabet), mapping)


def weight_of_word(phi: WeightVector, w: Word) -> Fraction:
    """Sum of letter weights; additive over concatenation by construction."""
    total = Fraction(0)
    for letter in w:
        if not (0 <= letter < len(phi.values)):
            raise InputError("word letter outside the weight vector's alphabet")
        total += phi.values[letter]
    return total


def _count_vector(w: Word, n_letters: int) -> tuple[int, ...]:
    counts = [0] * n_letters
    for letter in w:
        counts[letter] += 1
    return tuple(counts)


# ---------------------------------------------------------------------------
# Simple cycles (Johnson's elementary-circuit algorithm on the multigraph)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SimpleCycle:
    """An elementary circuit of the transition multigraph.

    arcs[i] = (state, letter) is the transition leaving `state`; the last arc
    returns to `base_state`.  States along the cycle are pairwise distinct.
    """

    base_state: int
    arcs: tuple[tuple[int, int], ...]

    def word(self) -> Word:
        return tuple(letter for _, letter in self.arcs)

    def states(self) -> tuple[int, ...]:
        return tuple(state for state, _ in self.arcs)

    def count_vector(self, n_letters: int) -> tuple[int, ...]:
        return _count_vector(self.word(), n_letters)

    def rotation(self, base: int) -> "SimpleCycle":
        states = self.states()
        if base not in states:
            raise InputError("rotation base must lie on the cycle")
        k = states.index(base)
        return SimpleCycle(base, self.arcs[k:] + self.arcs[:k])


def simple_cycles(a: Automaton, max_cycles: int = limits.MAX_CYCLES) -> list[SimpleCycle]:
    """All elementary circuits, one canonical rotation each, deterministic order.

    The automaton must be trimmed (cycles through useless states would create
    spurious boundedness inequalities).  Parallel edges with distinct letters
    yield distinct circuits.  Each circuit is emitted based at its least
    state; rotations to other base states are available via `rotation`.
    """
    if not is_trim(a):
        raise InputError("simple_cycles requires a trimmed automaton")
    adjacency: list[list[tuple[int, int]]] = [[] for _ in range(a.n_states)]
    for src, letter, dst in a.transitions:
        adjacency[src].append((dst, letter))
    for edges in adjacency:
        edges.sort(key=lambda e: (e[1], e[0]))

    out: list[SimpleCycle] = []

    # Johnson's algorithm, restricted for each root to vertices >= root so
    # every circuit is found exactly once, based at its least state.
    for root in range(a.n_states):
        blocked: set[int] = set()
        block_map: dict[int, set[int]] = {}
        path: list[tuple[int, int]] = []

        def unblock(v: int):
            stack = [v]
            while stack:
                u = stack.pop()
                if u in blocked:
                    blocked.discard(u)
                    stack.extend(block_map.pop(u, ()))

        def circuit(v: int) -> bool:
            found = False
            blocked.add(v)
            for dst, letter in adjacency[v]:
                if dst < root:
                    continue
                if dst == root:
                    path.append((v, letter))
                    out.append(SimpleCycle(root, tuple(path)))
                    if len(out) > max_cycles:
                        raise ResourceLimitError("simple cycles", max_cycles)
                    path.pop()
                    found = True
                elif dst not in blocked:
                    path.append((v, letter))
                    if circuit(dst):
                        found = True
                    path.pop()
            if found:
                unblock(v)
            else:
                for dst, _ in adjacency[v]:
                    if dst >= root:
                        block_map.setdefault(dst, set()).add(v)
            return found

        circuit(root)
    return out


def simple_circuit_words(a: Automaton, max_cycles: int = limits.MAX_CYCLES) -> list[Word]:
    """The full set of simple circuit subwords: every rotation of every
    elementary circuit (in a trimmed automaton each rotation occurs inside
    some accepted word), sorted shortlex, duplicates removed."""
    words = {
        cycle.rotation(state).word()
        for cycle in simple_cycles(a, max_cycles)
        for state in cycle.states()
    }
    return sorted(words, key=lambda w: (len(w), w))


# ---------------------------------------------------------------------------
# Circuit-free words
# ---------------------------------------------------------------------------


def circuit_free_words(a: Automaton, strict_graph_sense: bool = False) -> list[Word]:
    """Accepted words whose path revisits no state at positions 1..n.

    By default the start state at position 0 is excluded from the
    distinctness comparison; with `strict_graph_sense` the path may not
    revisit the start either (both conventions coincide whenever the start
    state has no incoming edge).  Output in shortlex order.
    """
    if not a.deterministic:
        raise InputError("circuit_free_words requires a deterministic automaton")
    if not is_trim(a):
        raise InputError("circuit_free_words requires a trimmed automaton")
    adjacency: list[list[tuple[int, int]]] = [[] for _ in range(a.n_states)]
    for src, letter, dst in a.transitions:
        adjacency[src].append((letter, dst))
    for edges in adjacency:
        edges.sort()

    words: list[Word] = []
    visited: set[int] = {a.start} if strict_graph_sense else set()
    word: list[int] = []

    def walk(state: int):
        if state in a.accept:
            words.append(tuple(word))
        for letter, dst in adjacency[state]:
            if dst in visited:
                continue
            visited.add(dst)
            word.append(letter)
            walk(dst)
            word.pop()
            visited.discard(dst)

    walk(a.start)
    return sorted(words, key=lambda w: (len(w), w))


# ---------------------------------------------------------------------------
# Boundedness, bound, cell
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BoundednessReport:
    bounded: bool
    violating_cycle: SimpleCycle | None
    inequalities: tuple[tuple[int, ...], ...]  # letter-count vectors of cycles


@dataclass(frozen=True)
class CellResult:
    """Exact bound, its circuit-free witnesses, and (when computed) the
    cell automata: `cell_nfa` is the raw tight sub-automaton straight out of
    the construction, `cell_dfa` its trimmed, determinized, minimized form."""

    bound: Fraction
    witnesses: tuple[Word, ...]
    cell_nfa: Automaton | None = None
    cell_dfa: Automaton | None = None


@lru_cache(maxsize=1024)
def prepared(a: Automaton) -> Automaton:
    """Deterministic trimmed form used by every weight-engine entry point."""
    if not a.deterministic:
        a = determinize(a)
    return trim(a)


def _check_weights(a: Automaton, phi: WeightVector):
    if tuple(phi.alphabet) != a.alphabet:
        raise InputError("weight vector alphabet does not match the automaton")


def is_bounded(
    a: Automaton, phi: WeightVector, max_cycles: int = limits.MAX_CYCLES
) -> BoundednessReport:
    """Bounded iff every simple circuit has weight <= 0."""
    _check_weights(a, phi)
    d = prepared(a)
    cycles = simple_cycles(d, max_cycles)
    n_letters = len(a.alphabet)
    seen: list[tuple[int, ...]] = []
    violating = None
    for cycle in cycles:
        counts = cycle.count_vector(n_letters)
        if counts not in seen:
            seen.append(counts)
        if violating is None:
            weight = sum(
                (c * phi.values[i] for i, c in enumerate(counts)), Fraction(0)
            )
            if weight > 0:
                violating = cycle
    return BoundednessReport(violating is None, violating, tuple(seen))


def _cycle_weight(phi: WeightVector, cycle: SimpleCycle) -> Fraction:
    return weight_of_word(phi, cycle.word())


def bound(
    a: Automaton,
    phi: WeightVector,
    max_cycles: int = limits.MAX_CYCLES,
    strict_graph_sense: bool = False,
) -> CellResult:
    """Exact bound and its circuit-free witnesses (cell automata left unset)."""
    _check_weights(a, phi)
    d = prepared(a)
    report = is_bounded(d, phi, max_cycles)
    if not report.bounded:
        cyc = report.violating_cycle
        raise UnboundedError(
            "weight function is unbounded on the language",
            cycle=cyc,
            word=tuple(a.alphabet[i] for i in cyc.word()),
        )
    words = circuit_free_words(d, strict_graph_sense)
    if not words:
        raise InputError("the language is empty; no weight function has a bound")
    best = None
    witnesses: list[Word] = []
    for w in words:
        value = weight_of_word(phi, w)
        if best is None or value > best:
            best, witnesses = value, [w]
        elif value == best:
            witnesses.append(w)
    return CellResult(best, tuple(witnesses))


def _extremal_path_weights(d: Automaton, phi: WeightVector):
    """(maxhead, maxtail): the maximum path weight from the start to each
    state, and from each state to an accept state.

    Exact Bellman-Ford relaxation; well defined on a trimmed automaton whose
    simple circuits all have weight <= 0 (no positive cycles), where the
    maxima are attained within n_states - 1 edges."""
    n = d.n_states
    maxhead: list[Fraction | None] = [None] * n
    maxhead[d.start] = Fraction(0)
    for round_ in range(n + 1):
        changed = False
        for src, letter, dst in d.transitions:
            if maxhead[src] is None:
                continue
            cand = maxhead[src] + phi.values[letter]
            if maxhead[dst] is None or cand > maxhead[dst]:
                maxhead[dst] = cand
                changed = True
        if not changed:
            break
    else:
        raise InputError("positive-weight circuit detected during path relaxation")
    maxtail: list[Fraction | None] = [None] * n
    for q in d.accept:
        maxtail[q] = Fraction(0)
    for round_ in range(n + 1):
        changed = False
        for src, letter, dst in d.transitions:
            if maxtail[dst] is None:
                continue
            cand = phi.values[letter] + maxtail[dst]
            if maxtail[src] is None or cand > maxtail[src]:
                maxtail[src] = cand
                changed = True
        if not changed:
            break
    else:
        raise InputError("positive-weight circuit detected during path relaxation")
    return maxhead, maxtail


def cell_automaton(
    a: Automaton,
    phi: WeightVector,
    max_cycles: int = limits.MAX_CYCLES,
    strict_graph_sense: bool = False,
) -> CellResult:
    """The cell-recognising automaton: the tight sub-automaton of the DFA.

    A word attains the bound exactly when, along its run, every prefix has
    the maximum weight reaching its state and the run ends at an accept
    state with no weight left to gain: keep the states q with
    maxhead(q) + maxtail(q) = bound, the transitions preserving prefix
    maximality (maxhead(q) + weight(letter) = maxhead(q')), and accept at
    accept states with maxtail = 0.  (A circuit-free prefix tree with
    zero-weight circuit copies appended recognises only the words whose zero
    circuits hang off a circuit-free backbone; circuits nesting inside other
    circuits defeat any bounded-depth attachment, so the tight sub-automaton
    construction is used instead.)

    Returns the raw sub-automaton together with its trimmed, determinized,
    minimized form.
    """
    _check_weights(a, phi)
    d = prepared(a)
    base = bound(d, phi, max_cycles, strict_graph_sense)

    maxhead, maxtail = _extremal_path_weights(d, phi)
    b = max(maxhead[q] for q in d.accept)
    if b != base.bound:
        raise AssertionError(
            "internal inconsistency: path relaxation and circuit-free "
            f"maximisation disagree ({b} vs {base.bound})"
        )
    tight = [
        q
        for q in range(d.n_states)
        if maxhead[q] is not None
        and maxtail[q] is not None
        and maxhead[q] + maxtail[q] == b
    ]
    renum = {q: i for i, q in enumerate(tight)}
    transitions = tuple(
        (renum[src], letter, renum[dst])
        for src, letter, dst in d.transitions
        if src in renum
        and dst in renum
        and maxhead[src] + phi.values[letter] == maxhead[dst]
    )
    accept = frozenset(
        renum[q] for q in d.accept if q in renum and maxtail[q] == 0
    )
    raw = Automaton(a.alphabet, len(tight), renum[d.start], accept, transitions)
    dfa = minimize(determinize(trim(raw)))
    return CellResult(base.bound, base.witnesses, raw, dfa)


def strictly_negative_cell(
    a: Automaton,
    phi: WeightVector,
    max_cycles: int = limits.MAX_CYCLES,
    strict_graph_sense: bool = False,
) -> tuple[Word, ...]:
    """Fast path: when every simple circuit has strictly negative weight the
    cell is finite and equals the witness set; no automaton is built."""
    _check_weights(a, phi)
    d = prepared(a)
    for cycle in simple_cycles(d, max_cycles):
        w = _cycle_weight(phi, cycle)
        if w > 0:
            raise UnboundedError(
                "weight function is unbounded on the language",
                cycle=cycle,
                word=tuple(a.alphabet[i] for i in cycle.word()),
            )
        if w == 0:
            raise PreconditionError(
                "a circuit of weight zero exists; the cell is infinite, "
                "use cell_automaton instead"
            )
    return tuple(bound(d, phi, max_cycles, strict_graph_sense).witnesses)


def boundedness_cone_vectors(
    a: Automaton, max_cycles: int = limits.MAX_CYCLES
) -> list[tuple[int, ...]]:
    """Deduplicated letter-count vectors of the simple circuits (the raw
    inequality normals of the boundedness cone), first-occurrence order."""
    d = prepared(a)
    n_letters = len(a.alphabet)
    seen: list[tuple[int, ...]] = []
    for cycle in simple_cycles(d, max_cycles):
        counts = cycle.count_vector(n_letters)
        if counts not in seen:
            seen.append(counts)
    return seen
