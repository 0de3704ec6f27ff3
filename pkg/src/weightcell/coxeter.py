"""Coxeter systems: exact group arithmetic, minimal roots, and the automata
for the reduced-word and shortlex languages.

Group elements are matrices of the geometric representation over the real
cyclotomic field Q(2cos(pi/M)), M the lcm of the finite bond labels, acting
on column vectors of simple-root coordinates.  Equality is entry-wise exact,
descent sets come from exact root signs, and the shortlex normal form is the
greedy strip of the least left descent.

The reduced-word automaton tracks the subset of minimal roots sent negative;
the shortlex automaton is built on the reversed language (where the same
subsets expose the left-descent data of suffixes) and then reversed,
determinized, and minimized.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm

from . import limits
from .automata import Automaton, Word, determinize, minimize, reverse
from .cyclo import CycloReal, embed_2cos
from .errors import InputError, ResourceLimitError, UnboundedError
from .weights import (
    WeightVector,
    cell_automaton,
    circuit_free_words,
    is_bounded,
    prepared,
    simple_circuit_words,
)

__all__ = [
    "CoxeterSystem",
    "GroupCellResult",
    "GroupElement",
    "HeckeOneDim",
    "MinimalRootTable",
    "ball",
    "group_cell",
    "hecke_onedim",
    "identity",
    "is_positive_definite",
    "left_descents",
    "length",
    "lex_word",
    "longest_element",
    "minimal_roots",
    "natural_map",
    "parabolic_consistency",
    "reduced_word_automaton",
    "shortlex_automaton",
    "system_from_json",
    "system_to_json",
    "validate_weight",
    "weight_classes",
]

INFINITE = 0  # JSON/bond encoding of an infinite label


@dataclass(frozen=True)
class CoxeterSystem:
    """Generators plus the symmetric bond matrix (0 encodes infinity)."""

    generators: tuple[str, ...]
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.generators)
        if len(set(self.generators)) != n or n == 0:
            raise InputError("generator names must be distinct and nonempty")
        if len(self.matrix) != n or any(len(row) != n for row in self.matrix):
            raise InputError("Coxeter matrix must be square of generator size")
        for i in range(n):
            if self.matrix[i][i] != 1:
                raise InputError("Coxeter matrix diagonal must be 1")
            for j in range(n):
                m = self.matrix[i][j]
                if m != self.matrix[j][i]:
                    raise InputError("Coxeter matrix must be symmetric")
                if i != j and m != INFINITE and m < 2:
                    raise InputError("off-diagonal bond labels must be >= 2 or 0 (infinity)")
        object.__setattr__(self, "matrix", tuple(tuple(row) for row in self.matrix))
        object.__setattr__(self, "generators", tuple(self.generators))

    @property
    def rank(self) -> int:
        return len(self.generators)

    def bond(self, i: int, j: int) -> int:
        return self.matrix[i][j]

    def generator_index(self, name: str) -> int:
        try:
            return self.generators.index(name)
        except ValueError:
            raise InputError(f"unknown generator {name!r}") from None

    def reorder(self, order) -> "CoxeterSystem":
        """Same system with generators permuted (affects the shortlex order)."""
        names = tuple(order)
        if sorted(names) != sorted(self.generators):
            raise InputError("order must be a permutation of the generators")
        perm = [self.generators.index(n) for n in names]
        mat = tuple(tuple(self.matrix[i][j] for j in perm) for i in perm)
        return CoxeterSystem(names, mat)


def system_from_json(text: str) -> CoxeterSystem:
    try:
        doc = json.loads(text)
        generators = tuple(doc["generators"])
        matrix = tuple(tuple(int(v) for v in row) for row in doc["matrix"])
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise InputError(f"invalid Coxeter system document: {exc}") from None
    return CoxeterSystem(generators, matrix)


def system_to_json(sys: CoxeterSystem) -> str:
    doc = {"generators": list(sys.generators), "matrix": [list(r) for r in sys.matrix]}
    return json.dumps(doc, indent=2) + "\n"


# ---------------------------------------------------------------------------
# Field and bilinear form
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def field_modulus(sys: CoxeterSystem) -> int:
    labels = [
        sys.matrix[i][j]
        for i in range(sys.rank)
        for j in range(i + 1, sys.rank)
        if sys.matrix[i][j] != INFINITE
    ]
    return lcm(*labels) if labels else 1


@lru_cache(maxsize=None)
def bilinear_form(sys: CoxeterSystem):
    """B(alpha_i, alpha_j) = -cos(pi/m_ij), exactly -1 for infinite bonds."""
    M = field_modulus(sys)
    one = CycloReal.from_rational(M, 1)
    minus_one = CycloReal.from_rational(M, -1)
    half = Fraction(1, 2)

    def entry(i, j):
        if i == j:
            return one
        m = sys.matrix[i][j]
        if m == INFINITE:
            return minus_one
        return embed_2cos(m, M) * -half

    n = sys.rank
    return tuple(tuple(entry(i, j) for j in range(n)) for i in range(n))


@lru_cache(maxsize=None)
def _two_b(sys: CoxeterSystem):
    B = bilinear_form(sys)
    return tuple(tuple(2 * v for v in row) for row in B)


# ---------------------------------------------------------------------------
# Group elements
# ---------------------------------------------------------------------------

Matrix = tuple[tuple[CycloReal, ...], ...]


@dataclass(frozen=True)
class GroupElement:
    """Exact matrix of the geometric representation, with its inverse cached
    so descent tests on both sides stay cheap."""

    system: CoxeterSystem
    mat: Matrix
    inv: Matrix

    def __eq__(self, other):
        return (
            isinstance(other, GroupElement)
            and self.system == other.system
            and self.mat == other.mat
        )

    def __hash__(self):
        return hash(self.mat)

    def is_identity(self) -> bool:
        return self.mat == _identity_matrix(self.system)


@lru_cache(maxsize=None)
def _identity_matrix(sys: CoxeterSystem) -> Matrix:
    M = field_modulus(sys)
    one = CycloReal.from_rational(M, 1)
    zero = CycloReal.zero(M)
    n = sys.rank
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def identity(sys: CoxeterSystem) -> GroupElement:
    e = _identity_matrix(sys)
    return GroupElement(sys, e, e)


def _left_mul_matrix(sys: CoxeterSystem, s: int, x: Matrix) -> Matrix:
    """Matrix of the generator s times x (one row changes)."""
    twoB = _two_b(sys)[s]
    n = sys.rank
    new_row = list(x[s])
    for k in range(n):
        c = twoB[k]
        if not c.is_zero():
            row_k = x[k]
            new_row = [a - c * b for a, b in zip(new_row, row_k)]
    rows = list(x)
    rows[s] = tuple(new_row)
    return tuple(rows)


def _right_mul_matrix(sys: CoxeterSystem, x: Matrix, s: int) -> Matrix:
    """x times the matrix of the generator s (columns mix with column s)."""
    twoB = _two_b(sys)[s]
    n = sys.rank
    out = []
    for row in x:
        xs = row[s]
        if xs.is_zero():
            out.append(row)
        else:
            out.append(
                tuple(
                    row[j] - twoB[j] * xs if not twoB[j].is_zero() else row[j]
                    for j in range(n)
                )
            )
    return tuple(out)


def right_mul(g: GroupElement, s: int) -> GroupElement:
    sys = g.system
    return GroupElement(
        sys,
        _right_mul_matrix(sys, g.mat, s),
        _left_mul_matrix(sys, s, g.inv),
    )


def left_mul(s: int, g: GroupElement) -> GroupElement:
    sys = g.system
    return GroupElement(
        sys,
        _left_mul_matrix(sys, s, g.mat),
        _right_mul_matrix(sys, g.inv, s),
    )


def natural_map(sys: CoxeterSystem, w: Word) -> GroupElement:
    """The product of the generators of w, left to right."""
    g = identity(sys)
    for s in w:
        g = right_mul(g, s)
    return g


def _column(mat: Matrix, j: int):
    return tuple(row[j] for row in mat)


def _is_negative_root(vec) -> bool:
    negative = False
    for c in vec:
        sgn = c.sign()
        if sgn > 0:
            return False
        if sgn < 0:
            negative = True
    return negative


def left_descents(sys: CoxeterSystem, g: GroupElement) -> frozenset[int]:
    """Generators t with l(tg) < l(g): those whose root is sent negative by
    the inverse."""
    return frozenset(
        t for t in range(sys.rank) if _is_negative_root(_column(g.inv, t))
    )


def right_descents(sys: CoxeterSystem, g: GroupElement) -> frozenset[int]:
    return frozenset(
        s for s in range(sys.rank) if _is_negative_root(_column(g.mat, s))
    )


def lex_word(sys: CoxeterSystem, g: GroupElement) -> Word:
    """Shortlex normal form: repeatedly strip the least left descent."""
    word = []
    cur = g
    identity_mat = _identity_matrix(sys)
    while cur.mat != identity_mat:
        descents = left_descents(sys, cur)
        if not descents:
            raise InputError("matrix is not a product of generator matrices")
        t = min(descents)
        word.append(t)
        cur = left_mul(t, cur)
    return tuple(word)


def length(sys: CoxeterSystem, g: GroupElement) -> int:
    return len(lex_word(sys, g))


# ---------------------------------------------------------------------------
# Minimal roots
# ---------------------------------------------------------------------------

ACTION_DESCENT = -1
ACTION_NONMINIMAL = -3


@dataclass(frozen=True)
class MinimalRootTable:
    """Minimal roots (simple roots first) with the generator action.

    action[s][r] is the index of the image root (r itself when fixed),
    ACTION_DESCENT when the root is alpha_s, or ACTION_NONMINIMAL when the
    reflection leaves the minimal-root set.
    """

    roots: tuple[tuple[CycloReal, ...], ...]
    action: tuple[tuple[int, ...], ...]

    @property
    def n_roots(self) -> int:
        return len(self.roots)


@lru_cache(maxsize=None)
def minimal_roots(
    sys: CoxeterSystem, max_roots: int = limits.MAX_ROOTS
) -> MinimalRootTable:
    """Breadth-first closure from the simple roots.

    For a minimal root g and generator s with c = B(alpha_s, g): the root is
    its own descent when g = alpha_s; fixed when c = 0; reflected to the
    minimal root g - 2c*alpha_s when -1 < c < 1; and the image is non-minimal
    otherwise (|c| >= 1).
    """
    M = field_modulus(sys)
    B = bilinear_form(sys)
    n = sys.rank
    zero = CycloReal.zero(M)
    one = CycloReal.from_rational(M, 1)

    simple = []
    for i in range(n):
        vec = [zero] * n
        vec[i] = one
        simple.append(tuple(vec))
    roots: list[tuple[CycloReal, ...]] = list(simple)
    index: dict[tuple[CycloReal, ...], int] = {r: i for i, r in enumerate(simple)}

    action: dict[tuple[int, int], int] = {}
    frontier = list(range(n))
    while frontier:
        next_frontier = []
        for r in frontier:
            gamma = roots[r]
            for s in range(n):
                if r == s and r < n:
                    action[(s, r)] = ACTION_DESCENT
                    continue
                c = sum((B[s][j] * gamma[j] for j in range(n)), zero)
                sgn = c.sign()
                if sgn == 0:
                    action[(s, r)] = r
                    continue
                if (c - 1).sign() >= 0 or (c + 1).sign() <= 0:
                    action[(s, r)] = ACTION_NONMINIMAL
                    continue
                image = list(gamma)
                image[s] = image[s] - 2 * c
                key = tuple(image)
                if key not in index:
                    if len(roots) >= max_roots:
                        raise ResourceLimitError("minimal roots", max_roots)
                    index[key] = len(roots)
                    roots.append(key)
                    next_frontier.append(index[key])
                action[(s, r)] = index[key]
        frontier = next_frontier

    table = tuple(
        tuple(action[(s, r)] for r in range(len(roots))) for s in range(n)
    )
    return MinimalRootTable(tuple(roots), table)


# ---------------------------------------------------------------------------
# Automata for the reduced-word and shortlex languages
# ---------------------------------------------------------------------------


def _subset_automaton(
    sys: CoxeterSystem,
    shortlex: bool,
    max_states: int,
    max_roots: int,
) -> Automaton:
    """BFS over subsets of minimal roots (those sent negative so far).

    Transition on s requires alpha_s outside the subset (the word stays
    reduced); in shortlex mode additionally no smaller generator's root may
    lie in the updated subset (the new letter must be the least left descent
    of the suffix read so far).  All states accept.
    """
    table = minimal_roots(sys, max_roots)
    n = sys.rank
    start: frozenset[int] = frozenset()
    index = {start: 0}
    order = [start]
    transitions = []
    queue = deque([start])
    while queue:
        subset = queue.popleft()
        src = index[subset]
        for s in range(n):
            if s in subset:
                continue
            updated = {s}
            for r in subset:
                img = table.action[s][r]
                if img >= 0:
                    updated.add(img)
            if shortlex and any(t in updated for t in range(s)):
                continue
            key = frozenset(updated)
            if key not in index:
                if len(index) >= max_states:
                    raise ResourceLimitError("automaton states", max_states)
                index[key] = len(order)
                order.append(key)
                queue.append(key)
            transitions.append((src, s, index[key]))
    return Automaton(
        sys.generators,
        len(order),
        0,
        frozenset(range(len(order))),
        tuple(transitions),
    )


@lru_cache(maxsize=None)
def reduced_word_automaton(
    sys: CoxeterSystem,
    max_states: int = limits.MAX_STATES,
    max_roots: int = limits.MAX_ROOTS,
) -> Automaton:
    """DFA recognising the language of all reduced words (all states accept)."""
    return _subset_automaton(sys, shortlex=False, max_states=max_states, max_roots=max_roots)


@lru_cache(maxsize=None)
def shortlex_automaton(
    sys: CoxeterSystem,
    max_states: int = limits.MAX_STATES,
    max_roots: int = limits.MAX_ROOTS,
) -> Automaton:
    """Minimal DFA of the shortlex normal forms (generator order as declared).

    Built on the reversed language, where the minimal-root subsets expose the
    left-descent sets of suffixes, then reversed, determinized, minimized.
    """
    reversed_dfa = _subset_automaton(
        sys, shortlex=True, max_states=max_states, max_roots=max_roots
    )
    return minimize(determinize(reverse(reversed_dfa), max_states))


# ---------------------------------------------------------------------------
# Ball oracle
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _ball_entries(
    sys: CoxeterSystem, radius: int, max_elements: int
) -> tuple[tuple[GroupElement, Word], ...]:
    if radius < 0:
        raise InputError("radius must be >= 0")
    e = identity(sys)
    seen: dict[Matrix, tuple[GroupElement, Word]] = {e.mat: (e, ())}
    frontier = [(e, ())]
    for _ in range(radius):
        nxt = []
        for g, word in frontier:
            for s in range(sys.rank):
                h = right_mul(g, s)
                if h.mat not in seen:
                    if len(seen) >= max_elements:
                        raise ResourceLimitError("group elements", max_elements)
                    entry = (h, word + (s,))
                    seen[h.mat] = entry
                    nxt.append(entry)
        if not nxt:
            break
        frontier = nxt
    return tuple(seen.values())


def ball(
    sys: CoxeterSystem, radius: int, max_elements: int = limits.MAX_ELEMENTS
) -> dict[GroupElement, Word]:
    """All elements of length <= radius with their shortlex normal forms.

    Breadth-first with exact matrix deduplication; expanding letters in
    ascending order means each element is first reached by its shortlex
    normal form (the shortlex language is prefix closed).
    """
    return dict(_ball_entries(sys, radius, max_elements))


def saturated_ball(
    sys: CoxeterSystem, max_elements: int = limits.MAX_ELEMENTS
) -> dict[GroupElement, Word]:
    """The whole group, for finite systems (BFS until the frontier empties)."""
    if not is_positive_definite(sys):
        raise InputError("the Coxeter system is not finite")
    return ball(sys, max_elements, max_elements)


# ---------------------------------------------------------------------------
# Weight functions on the group
# ---------------------------------------------------------------------------


def weight_classes(sys: CoxeterSystem) -> tuple[tuple[int, ...], ...]:
    """Connected components of the odd-bond graph: a group weight function is
    exactly an assignment constant on each class."""
    parent = list(range(sys.rank))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(sys.rank):
        for j in range(i + 1, sys.rank):
            m = sys.matrix[i][j]
            if m != INFINITE and m % 2 == 1:
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(sys.rank):
        groups.setdefault(find(i), []).append(i)
    return tuple(tuple(sorted(g)) for g in sorted(groups.values()))


def validate_weight(sys: CoxeterSystem, assignment) -> bool:
    """True iff the letter assignment extends to a weight function on the
    group: equal values across every odd bond."""
    phi = _as_weight_vector(sys, assignment)
    for i in range(sys.rank):
        for j in range(i + 1, sys.rank):
            m = sys.matrix[i][j]
            if m != INFINITE and m % 2 == 1 and phi.values[i] != phi.values[j]:
                return False
    return True


def _as_weight_vector(sys: CoxeterSystem, assignment) -> WeightVector:
    if isinstance(assignment, WeightVector):
        if tuple(assignment.alphabet) != sys.generators:
            raise InputError("weight vector alphabet does not match the generators")
        return assignment
    return WeightVector.from_mapping(sys.generators, assignment)


@dataclass(frozen=True)
class GroupCellResult:
    """Group-level cell data: the finite sets X (circuit images, boundedness
    test) and Y (circuit-free images, bound carrier), the bound, the
    bound-attaining witness words, and the cell automaton."""

    language: str
    X: frozenset[GroupElement]
    Y: frozenset[GroupElement]
    bound: Fraction
    witnesses: tuple[Word, ...]
    cell_nfa: Automaton
    cell_dfa: Automaton


def language_automaton(sys: CoxeterSystem, language: str, max_states: int = limits.MAX_STATES) -> Automaton:
    if language == "lex":
        return shortlex_automaton(sys, max_states)
    if language == "reduced":
        return minimize(reduced_word_automaton(sys, max_states))
    raise InputError(f"unknown language {language!r} (expected 'lex' or 'reduced')")


def group_cell(
    sys: CoxeterSystem,
    assignment,
    language: str = "lex",
    max_states: int = limits.MAX_STATES,
    max_cycles: int = limits.MAX_CYCLES,
) -> GroupCellResult:
    """Boundedness, bound, and cell of a group weight function, through the
    chosen geodesic language (shortlex is exact, so its cell automaton
    recognises one word per cell element)."""
    phi = _as_weight_vector(sys, assignment)
    if not validate_weight(sys, phi):
        raise InputError(
            "assignment does not extend to a weight function (odd-bond values differ)"
        )
    a = language_automaton(sys, language, max_states)
    d = prepared(a)
    report = is_bounded(d, phi, max_cycles)
    if not report.bounded:
        cyc = report.violating_cycle
        raise UnboundedError(
            "weight function is unbounded on the group",
            cycle=cyc,
            word=tuple(sys.generators[i] for i in cyc.word()),
        )
    X = frozenset(
        natural_map(sys, w) for w in simple_circuit_words(d, max_cycles)
    )
    Y = frozenset(natural_map(sys, w) for w in circuit_free_words(d))
    cell = cell_automaton(d, phi, max_cycles)
    return GroupCellResult(
        language, X, Y, cell.bound, cell.witnesses, cell.cell_nfa, cell.cell_dfa
    )


def parabolic_consistency(sys: CoxeterSystem, assignment, g: GroupElement) -> tuple[str, ...]:
    """Sanity checks a cell element must satisfy: generators of positive
    weight shorten it on both sides, generators of negative weight lengthen
    it on both sides.  Returns the violated facts (empty when consistent)."""
    phi = _as_weight_vector(sys, assignment)
    lg = length(sys, g)
    violations = []
    for s in range(sys.rank):
        value = phi.values[s]
        if value == 0:
            continue
        expected = lg - 1 if value > 0 else lg + 1
        for side, h in (("left", left_mul(s, g)), ("right", right_mul(g, s))):
            actual = length(sys, h)
            if actual != expected:
                violations.append(
                    f"{side} multiplication by {sys.generators[s]} gives length "
                    f"{actual}, expected {expected}"
                )
    return tuple(violations)


@dataclass(frozen=True)
class HeckeOneDim:
    phi: WeightVector
    bound: Fraction
    cell_dfa: Automaton


def hecke_onedim(sys: CoxeterSystem, psi, signs) -> HeckeOneDim:
    """One-dimensional representations of the weighted Hecke algebra send
    each generator to +q^psi(s) or -q^-psi(s); the degree map is then the
    weight function phi(s) = sign(s)*psi(s).  Signs must be constant on
    odd-bond classes, else no such representation exists."""
    psi_map = dict(psi)
    sign_map = {}
    for name, raw in dict(signs).items():
        if raw in ("+", 1):
            sign_map[name] = 1
        elif raw in ("-", -1):
            sign_map[name] = -1
        else:
            raise InputError(f"sign for {name!r} must be '+' or '-'")
    for name in sys.generators:
        if name not in psi_map:
            raise InputError(f"missing Hecke parameter for generator {name!r}")
        if name not in sign_map:
            raise InputError(f"missing sign for generator {name!r}")
        value = psi_map[name]
        if int(value) != value or value <= 0:
            raise InputError("Hecke parameters must be positive integers")
    for group in weight_classes(sys):
        signs_here = {sign_map[sys.generators[i]] for i in group}
        if len(signs_here) > 1:
            raise InputError(
                "signs differ across an odd bond; no 1-dimensional representation exists"
            )
    phi = WeightVector(
        sys.generators,
        tuple(
            Fraction(int(psi_map[name]) * sign_map[name]) for name in sys.generators
        ),
    )
    result = group_cell(sys, phi, "lex")
    return HeckeOneDim(phi, result.bound, result.cell_dfa)


# ---------------------------------------------------------------------------
# Finiteness, longest elements, parabolic subgroups
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def is_positive_definite(sys: CoxeterSystem, subset: tuple[int, ...] | None = None) -> bool:
    """Sylvester test on the (sub-)Gram matrix: finite iff positive definite."""
    indices = tuple(range(sys.rank)) if subset is None else tuple(subset)
    B = bilinear_form(sys)
    M = field_modulus(sys)
    n = len(indices)
    mat = [[B[indices[i]][indices[j]] for j in range(n)] for i in range(n)]
    for k in range(n):
        pivot = mat[k][k]
        if pivot.sign() <= 0:
            return False
        for i in range(k + 1, n):
            factor = mat[i][k] / pivot
            if factor.is_zero():
                continue
            for j in range(k, n):
                mat[i][j] = mat[i][j] - factor * mat[k][j]
    return True


def longest_element(sys: CoxeterSystem) -> GroupElement:
    """The unique maximal-length element of a finite system, by greedy ascent."""
    if not is_positive_definite(sys):
        raise InputError("the system is infinite; no longest element exists")
    g = identity(sys)
    while True:
        ascent = next(
            (s for s in range(sys.rank) if s not in right_descents(sys, g)), None
        )
        if ascent is None:
            return g
        g = right_mul(g, ascent)


def parabolic_elements(
    sys: CoxeterSystem, subset, max_elements: int = limits.MAX_ELEMENTS
) -> list[GroupElement]:
    """All elements of the standard parabolic subgroup on `subset` (which
    must generate a finite subgroup)."""
    indices = tuple(sorted(subset))
    if not is_positive_definite(sys, indices):
        raise InputError("the parabolic subgroup is infinite")
    e = identity(sys)
    seen = {e.mat: e}
    frontier = [e]
    while frontier:
        nxt = []
        for g in frontier:
            for s in indices:
                h = right_mul(g, s)
                if h.mat not in seen:
                    if len(seen) >= max_elements:
                        raise ResourceLimitError("parabolic elements", max_elements)
                    seen[h.mat] = h
                    nxt.append(h)
        frontier = nxt
    return list(seen.values())
