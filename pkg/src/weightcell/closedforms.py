"""Closed-form bounds and cells for the finite families admitting
non-constant weight functions, and the boundedness cones of the affine
families, used both as user-facing formulas and as cross-validation targets
for the generic machinery.

Conventions: even dihedral groups of order 4m; the B-series with the bond 4
at the top end of the chain; F4 with the bond 4 in the middle and the
diagram flip swapping 1<->4 and 2<->3.  Affine cones are hardcoded per
family from the weighted half-sum of positive (co)root data; the generic
automaton pipeline certifies them in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .automata import Word
from .coxeter import (
    CoxeterSystem,
    is_positive_definite,
    lex_word,
    longest_element,
    natural_map,
    parabolic_elements,
    right_mul,
)
from .errors import InputError
from .weights import WeightVector, weight_of_word

__all__ = [
    "AffineConeSpec",
    "SphericalFormulaResult",
    "affine_cone",
    "bn_bound",
    "dihedral_bound",
    "f4_bound",
    "spherical_nonneg",
]


@dataclass(frozen=True)
class SphericalFormulaResult:
    """Bound plus the bound-attaining cell as shortlex normal forms.

    `cell` is None when the formula leaves the cell to the generic
    machinery (a zero parameter outside the guaranteed case split)."""

    alphabet: tuple[str, ...]
    bound: Fraction
    cell: tuple[Word, ...] | None

    def cell_texts(self) -> tuple[str, ...] | None:
        if self.cell is None:
            return None
        single = all(len(n) == 1 for n in self.alphabet)
        joiner = "" if single else " "
        return tuple(
            joiner.join(self.alphabet[i] for i in w) for w in self.cell
        )


def _sorted_words(words) -> tuple[Word, ...]:
    return tuple(sorted(set(words), key=lambda w: (len(w), w)))


# ---------------------------------------------------------------------------
# General non-negative case (finite systems)
# ---------------------------------------------------------------------------


def spherical_nonneg(sys: CoxeterSystem, assignment) -> SphericalFormulaResult:
    """All-non-negative weights on a finite system: the bound is the weight
    of the longest element and the cell is its coset by the zero-weight
    parabolic subgroup."""
    phi = (
        assignment
        if isinstance(assignment, WeightVector)
        else WeightVector.from_mapping(sys.generators, assignment)
    )
    if not is_positive_definite(sys):
        raise InputError("the Coxeter system is infinite")
    if any(v < 0 for v in phi.values):
        raise InputError("a negative weight is present; use the generic machinery")
    w0 = longest_element(sys)
    w0_word = lex_word(sys, w0)
    zero_letters = tuple(i for i, v in enumerate(phi.values) if v == 0)
    coset = [right_mul_word(sys, w0, y) for y in _parabolic_words(sys, zero_letters)]
    cell = _sorted_words(lex_word(sys, g) for g in coset)
    return SphericalFormulaResult(sys.generators, weight_of_word(phi, w0_word), cell)


def right_mul_word(sys, g, word):
    for s in word:
        g = right_mul(g, s)
    return g


def _parabolic_words(sys, letters):
    return [lex_word(sys, g) for g in parabolic_elements(sys, letters)] if letters else [()]


# ---------------------------------------------------------------------------
# Even dihedral groups (order 4m)
# ---------------------------------------------------------------------------


def _alternating(first: int, length_: int) -> Word:
    return tuple((first + k) % 2 for k in range(length_))


def dihedral_bound(m: int, a, b) -> SphericalFormulaResult:
    """Bound and cell for the dihedral group of order 4m with weights
    (a on s, b on t); covers the full sign case analysis."""
    if m < 2:
        raise InputError("the even dihedral family needs m >= 2")
    a, b = Fraction(a), Fraction(b)
    alphabet = ("s", "t")
    s, t = 0, 1
    w0 = _alternating(s, 2 * m)  # shortlex normal form of the longest element

    if a >= 0 and b >= 0:
        bound = m * (a + b)
        if a > 0 and b > 0:
            cell = [w0]
        elif a == 0 and b > 0:
            cell = [w0, _alternating(t, 2 * m - 1)]  # w0 and w0*s
        elif b == 0 and a > 0:
            cell = [w0, _alternating(s, 2 * m - 1)]  # w0 and w0*t
        else:  # a == b == 0: the whole group
            cell = [()]
            for k in range(1, 2 * m):
                cell.append(_alternating(s, k))
                cell.append(_alternating(t, k))
            cell.append(w0)
        return SphericalFormulaResult(alphabet, bound, _sorted_words(cell))

    if a <= 0 and b <= 0:
        if a == 0:
            cell = [(), (s,)]
        elif b == 0:
            cell = [(), (t,)]
        else:
            cell = [()]
        return SphericalFormulaResult(alphabet, Fraction(0), _sorted_words(cell))

    if a < 0 < b:
        if a + b < 0:
            return SphericalFormulaResult(alphabet, b, ((t,),))
        if a + b == 0:
            cell = [_alternating(t, 2 * k + 1) for k in range(m)]
            return SphericalFormulaResult(alphabet, b, _sorted_words(cell))
        return SphericalFormulaResult(
            alphabet, (m - 1) * a + m * b, (_alternating(t, 2 * m - 1),)
        )

    # b < 0 < a: the mirror image with the roles of s and t swapped
    if a + b < 0:
        return SphericalFormulaResult(alphabet, a, ((s,),))
    if a + b == 0:
        cell = [_alternating(s, 2 * k + 1) for k in range(m)]
        return SphericalFormulaResult(alphabet, a, _sorted_words(cell))
    return SphericalFormulaResult(
        alphabet, (m - 1) * b + m * a, (_alternating(s, 2 * m - 1),)
    )


# ---------------------------------------------------------------------------
# The B-series
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _b_system(n: int) -> CoxeterSystem:
    names = tuple(f"s{i}" for i in range(1, n + 1))
    mat = [[2] * n for _ in range(n)]
    for i in range(n):
        mat[i][i] = 1
    for i in range(n - 1):
        mat[i][i + 1] = mat[i + 1][i] = 4 if i == n - 2 else 3
    return CoxeterSystem(names, tuple(tuple(row) for row in mat))


def _bn_extremal_words(n: int) -> list[Word]:
    """The minimal- and maximal-length double-coset representatives with
    respect to the parabolic on the first n-1 generators (0-based letters)."""
    words: list[Word] = []
    for i in range(n + 1):
        x: list[int] = []
        for j in range(1, i + 1):
            x.extend(range(n - 1, n - i + j - 2, -1))
        words.append(tuple(x))
    head: list[int] = []
    for k in range(1, n):
        head.extend(range(k - 1, -1, -1))
    for i in range(n + 1):
        y = list(head)
        for j in range(1, i + 1):
            y.extend(range(n - 1, j - 2, -1))
        words.append(tuple(y))
    return words


def bn_bound(n: int, a, b) -> SphericalFormulaResult:
    """Bound (always) and cell (for a, b nonzero) in the B-series, with
    weight a on the chain generators and b on the bond-4 generator."""
    if n < 2:
        raise InputError("the B-series needs rank >= 2")
    a, b = Fraction(a), Fraction(b)
    forms = []
    for i in range(n + 1):
        forms.append(Fraction(i * (i - 1), 2) * a + i * b)
        forms.append((n * (n - 1) - Fraction((n - i) * (n - i - 1), 2)) * a + i * b)
    value = max(forms)
    sys = _b_system(n)
    if a == 0 or b == 0:
        return SphericalFormulaResult(sys.generators, value, None)
    phi = WeightVector(sys.generators, tuple([a] * (n - 1) + [b]))
    cell = []
    for w in _bn_extremal_words(n):
        normal = lex_word(sys, natural_map(sys, w))
        if weight_of_word(phi, normal) == value:
            cell.append(normal)
    return SphericalFormulaResult(sys.generators, value, _sorted_words(cell))


# ---------------------------------------------------------------------------
# F4
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _f4_system() -> CoxeterSystem:
    names = ("s1", "s2", "s3", "s4")
    mat = (
        (1, 3, 2, 2),
        (3, 1, 4, 2),
        (2, 4, 1, 3),
        (2, 2, 3, 1),
    )
    return CoxeterSystem(names, mat)


_F4_CORE_WORDS = (
    "121",
    "121321",
    "12132132",
    "1213214321",
    "121321432132",
    "121323432132",
    "121321324321",
    "12132132432132",
    "1213214321324321",
    "121321324321324321",
    "121321324321323432132",
)


def _f4_candidates() -> list[Word]:
    flip = {0: 3, 1: 2, 2: 1, 3: 0}
    words = [tuple(int(ch) - 1 for ch in text) for text in _F4_CORE_WORDS]
    words += [tuple(flip[i] for i in w) for w in words]
    sys = _f4_system()
    words.append(())
    words.append(lex_word(sys, longest_element(sys)))
    return words


def f4_bound(a, b) -> SphericalFormulaResult:
    """Bound (always) and cell (for a, b nonzero) in F4, with weight a on
    the two long-node generators s1, s2 and b on s3, s4."""
    a, b = Fraction(a), Fraction(b)
    forms = (
        Fraction(0),
        3 * a,
        3 * b,
        5 * a + b,
        a + 5 * b,
        11 * a + 7 * b,
        7 * a + 11 * b,
        12 * a + 9 * b,
        9 * a + 12 * b,
        12 * a + 12 * b,
    )
    value = max(forms)
    sys = _f4_system()
    if a == 0 or b == 0:
        return SphericalFormulaResult(sys.generators, value, None)
    phi = WeightVector(sys.generators, (a, a, b, b))
    cell = []
    for w in _f4_candidates():
        normal = lex_word(sys, natural_map(sys, w))
        if weight_of_word(phi, normal) == value:
            cell.append(normal)
    return SphericalFormulaResult(sys.generators, value, _sorted_words(cell))


# ---------------------------------------------------------------------------
# Affine cones
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AffineConeSpec:
    """Boundedness cone of an affine family in its weight parameters.

    `normals` is the irredundant pair; `all_normals` the full list coming
    from the fundamental-coweight pairings; `rho` the coordinates of twice
    the weighted half-sum of positive roots, in the basis named by
    `rho_basis` (None for the family derived from the triangle-group
    analysis, which never needs it)."""

    family: str
    rank: int | None
    params: tuple[Fraction, ...]
    normals: tuple[tuple[int, ...], ...]
    all_normals: tuple[tuple[int, ...], ...]
    rho: tuple[Fraction, ...] | None
    rho_basis: str | None


def affine_cone(family: str, a, b, c=None, n: int | None = None) -> AffineConeSpec:
    """Hardcoded boundedness cones for the affine families with non-constant
    weight functions.

    Parameter conventions: Bt(n>=3) has weight a on s0..s(n-1) and b on sn;
    Ct(n>=1) has a on s0, b on the middle generators, c on sn; Ft4 has a on
    s0,s1,s2 and b on s3,s4; Gt2 has a on the two odd-bonded generators and
    b on the third.
    """
    a = Fraction(a)
    b = Fraction(b)
    key = family.strip().lower()
    if key == "bt":
        if n is None or n < 3:
            raise InputError("the Bt family needs a rank n >= 3")
        if c is not None:
            raise InputError("the Bt family takes two parameters")
        all_normals = tuple((2 * n - j - 1, 1) for j in range(1, n + 1))
        normals = ((2 * (n - 1), 1), (n - 1, 1))
        rho = tuple(2 * (n - i) * a + b for i in range(1, n + 1))
        return AffineConeSpec("Bt", n, (a, b), normals, all_normals, rho, "euclidean")
    if key == "ct":
        if n is None or n < 1:
            raise InputError("the Ct family needs a rank n >= 1")
        if c is None:
            raise InputError("the Ct family takes three parameters (a, b, c)")
        c = Fraction(c)
        all_normals = tuple(
            dict.fromkeys((1, 2 * n - i - 1, 1) for i in range(1, n + 1))
        )
        normals = tuple(dict.fromkeys([(1, 2 * (n - 1), 1), (1, n - 1, 1)]))
        rho = tuple(a + c + 2 * (n - i) * b for i in range(1, n + 1))
        return AffineConeSpec("Ct", n, (a, b, c), normals, all_normals, rho, "euclidean")
    if key == "ft4":
        if c is not None or n is not None:
            raise InputError("the Ft4 family takes two parameters and no rank")
        all_normals = ((5, 3), (3, 2), (4, 3), (6, 5))
        normals = ((5, 3), (6, 5))
        rho = (10 * a + 6 * b, 18 * a + 12 * b, 24 * a + 18 * b, 12 * a + 10 * b)
        return AffineConeSpec("Ft4", None, (a, b), normals, all_normals, rho, "simple-roots")
    if key == "gt2":
        if c is not None or n is not None:
            raise InputError("the Gt2 family takes two parameters and no rank")
        m = 3
        all_normals = tuple((i + 1, i) for i in range(1, m))
        normals = ((2, 1), (m, m - 1))
        return AffineConeSpec("Gt2", None, (a, b), normals, all_normals, None, None)
    raise InputError(f"unknown affine family {family!r} (expected Bt, Ct, Ft4, Gt2)")
