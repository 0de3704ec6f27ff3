"""Exact rational polyhedral cones: H-representation from circuit letter
counts, irredundancy via exact LP, and extreme rays via double description.

Cones are homogeneous: an HRep is a list of primitive integer normals n
meaning <n, phi> <= 0; a VRep is an integer lineality basis plus primitive
extreme rays of the pointed quotient.  Everything is exact; dimensions in
scope are small (alphabet-sized).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from . import limits
from .cyclo import primitive_vector
from .errors import InputError, ResourceLimitError

__all__ = [
    "HRep",
    "VRep",
    "cone_from_circuits",
    "cone_json",
    "contains",
    "extreme_rays",
    "facets",
    "implies",
    "interior",
    "project_parameters",
    "remove_redundant",
    "same_cone",
]


@dataclass(frozen=True)
class HRep:
    """Intersection of half-spaces <n, x> <= 0, n primitive integer."""

    dim: int
    normals: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        seen = []
        for n in self.normals:
            if len(n) != self.dim:
                raise InputError("normal has wrong dimension")
            if not any(n):
                raise InputError("zero vector is not a valid inequality normal")
            p = primitive_vector(n)
            if p not in seen:
                seen.append(p)
        object.__setattr__(self, "normals", tuple(seen))


@dataclass(frozen=True)
class VRep:
    """span(lineality) + cone(rays); rays are extreme modulo the lineality."""

    dim: int
    lineality: tuple[tuple[int, ...], ...]
    rays: tuple[tuple[int, ...], ...]


def cone_from_circuits(cycles, alphabet) -> HRep:
    """H-representation from simple cycles: deduplicated primitive letter-count
    vectors, first-occurrence order."""
    dim = len(alphabet)
    normals = []
    for cycle in cycles:
        counts = cycle.count_vector(dim)
        p = primitive_vector(counts)
        if p not in normals:
            normals.append(p)
    return HRep(dim, tuple(normals))


# ---------------------------------------------------------------------------
# Exact rational simplex (Bland's rule)
# ---------------------------------------------------------------------------

_UNBOUNDED = object()


def _lp_max(c, rows, rhs):
    """max c.x subject to rows.x <= rhs, x free; rhs must be >= 0.

    Returns the optimum as a Fraction, or the _UNBOUNDED sentinel.  Free
    variables are split (x = u - v) and slacks added, so the origin is a
    basic feasible start; Bland's rule guarantees termination.
    """
    m, n = len(rows), len(c)
    if any(b < 0 for b in rhs):
        raise InputError("simplex entry requires non-negative right-hand sides")
    width = 2 * n + m
    tableau = []
    for i in range(m):
        row = [Fraction(v) for v in rows[i]]
        line = row + [-v for v in row] + [Fraction(0)] * m + [Fraction(rhs[i])]
        line[2 * n + i] = Fraction(1)
        tableau.append(line)
    # objective row holds -c so that a negative entry means "can improve"
    obj = [Fraction(-v) for v in c] + [Fraction(v) for v in c] + [Fraction(0)] * (m + 1)
    basis = [2 * n + i for i in range(m)]

    while True:
        enter = next((j for j in range(width) if obj[j] < 0), None)
        if enter is None:
            return obj[width]
        ratios = [
            (tableau[i][width] / tableau[i][enter], basis[i], i)
            for i in range(m)
            if tableau[i][enter] > 0
        ]
        if not ratios:
            return _UNBOUNDED
        _, _, pivot_row = min(ratios)
        pivot = tableau[pivot_row][enter]
        tableau[pivot_row] = [v / pivot for v in tableau[pivot_row]]
        for i in range(m):
            if i != pivot_row and tableau[i][enter]:
                f = tableau[i][enter]
                tableau[i] = [
                    a - f * b for a, b in zip(tableau[i], tableau[pivot_row])
                ]
        if obj[enter]:
            f = obj[enter]
            obj = [a - f * b for a, b in zip(obj, tableau[pivot_row])]
        basis[pivot_row] = enter


def _is_implied(normal, others) -> bool:
    """True iff <normal, x> <= 0 holds on the cone cut out by `others`.

    LP: maximize <normal, x> subject to the other inequalities and the cap
    <normal, x> <= 1; the inequality is implied iff the optimum is <= 0.
    """
    rows = [list(o) for o in others] + [list(normal)]
    rhs = [Fraction(0)] * len(others) + [Fraction(1)]
    value = _lp_max(list(normal), rows, rhs)
    return value is not _UNBOUNDED and value <= 0


def remove_redundant(h: HRep) -> HRep:
    """Minimal sub-list defining the same cone, input order preserved."""
    kept = list(h.normals)
    i = 0
    while i < len(kept):
        candidate = kept[i]
        rest = kept[:i] + kept[i + 1 :]
        if rest and _is_implied(candidate, rest):
            kept.pop(i)
        else:
            i += 1
    return HRep(h.dim, tuple(kept))


def implies(h1: HRep, h2: HRep) -> bool:
    """True iff cone(h1) is contained in cone(h2) (h1's inequalities imply h2's)."""
    if h1.dim != h2.dim:
        raise InputError("dimension mismatch")
    return all(_is_implied(n, h1.normals) for n in h2.normals)


def same_cone(h1: HRep, h2: HRep) -> bool:
    return implies(h1, h2) and implies(h2, h1)


def contains(h: HRep, point) -> bool:
    vec = _point_vector(h, point)
    return all(_dot(n, vec) <= 0 for n in h.normals)


def interior(h: HRep, point) -> bool:
    vec = _point_vector(h, point)
    return all(_dot(n, vec) < 0 for n in h.normals)


def _point_vector(h: HRep, point):
    values = getattr(point, "values", point)
    vec = tuple(Fraction(v) for v in values)
    if len(vec) != h.dim:
        raise InputError("point has wrong dimension")
    return vec


def _dot(a, b) -> Fraction:
    return sum((Fraction(x) * y for x, y in zip(a, b)), Fraction(0))


# ---------------------------------------------------------------------------
# Double description
# ---------------------------------------------------------------------------


def _rank(rows) -> int:
    mat = [[Fraction(v) for v in row] for row in rows]
    rank, col, n_cols = 0, 0, (len(rows[0]) if rows else 0)
    while rank < len(mat) and col < n_cols:
        pivot = next((r for r in range(rank, len(mat)) if mat[r][col]), None)
        if pivot is None:
            col += 1
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        inv = 1 / mat[rank][col]
        mat[rank] = [v * inv for v in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col]:
                f = mat[r][col]
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[rank])]
        rank += 1
        col += 1
    return rank


def _canonical_basis(rows) -> tuple[tuple[int, ...], ...]:
    """Reduced row-echelon basis of the row span, scaled to primitive ints."""
    mat = [[Fraction(v) for v in row] for row in rows]
    n_cols = len(rows[0]) if rows else 0
    rank, col = 0, 0
    while rank < len(mat) and col < n_cols:
        pivot = next((r for r in range(rank, len(mat)) if mat[r][col]), None)
        if pivot is None:
            col += 1
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        inv = 1 / mat[rank][col]
        mat[rank] = [v * inv for v in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col]:
                f = mat[r][col]
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[rank])]
        rank += 1
        col += 1
    return tuple(primitive_vector(row) for row in mat[:rank] if any(row))


def extreme_rays(h: HRep, max_rays: int = limits.MAX_RAYS) -> VRep:
    """Double description: start from the full space (d lines), intersect with
    one half-space at a time.  Adjacency of rays is decided by the exact rank
    test on their common tight constraints, valid in the quotient modulo the
    current lineality."""
    dim = h.dim
    lines: list[tuple[int, ...]] = [
        tuple(1 if j == i else 0 for j in range(dim)) for i in range(dim)
    ]
    rays: list[tuple[int, ...]] = []
    processed: list[tuple[int, ...]] = []

    for normal in h.normals:
        pivot_line = next((l for l in lines if _dot(normal, l) != 0), None)
        if pivot_line is not None:
            alpha = _dot(normal, pivot_line)
            new_lines = []
            for l in lines:
                if l is pivot_line:
                    continue
                beta = _dot(normal, l)
                new_lines.append(
                    primitive_vector(
                        tuple(Fraction(x) - beta / alpha * y for x, y in zip(l, pivot_line))
                    )
                )
            new_rays = []
            for r in rays:
                beta = _dot(normal, r)
                new_rays.append(
                    primitive_vector(
                        tuple(Fraction(x) - beta / alpha * y for x, y in zip(r, pivot_line))
                    )
                )
            oriented = pivot_line if alpha < 0 else tuple(-v for v in pivot_line)
            lines = new_lines
            rays = _dedupe(new_rays + [oriented])
        else:
            plus = [r for r in rays if _dot(normal, r) > 0]
            zero = [r for r in rays if _dot(normal, r) == 0]
            minus = [r for r in rays if _dot(normal, r) < 0]
            quotient_dim = dim - len(lines)
            combos = []
            for rp in plus:
                for rm in minus:
                    if not _adjacent(rp, rm, processed, quotient_dim):
                        continue
                    wp, wm = _dot(normal, rp), _dot(normal, rm)
                    combo = tuple(wp * y - wm * x for x, y in zip(rp, rm))
                    combos.append(primitive_vector(combo))
            rays = _dedupe(zero + minus + combos)
            if len(rays) > max_rays:
                raise ResourceLimitError("extreme rays", max_rays)
        processed.append(normal)

    return VRep(
        dim,
        _canonical_basis(lines) if lines else (),
        tuple(sorted(_dedupe(rays))),
    )


def _dedupe(rays):
    out = []
    for r in rays:
        if any(r) and r not in out:
            out.append(r)
    return out


def _adjacent(r1, r2, processed, quotient_dim) -> bool:
    common = [
        n for n in processed if _dot(n, r1) == 0 and _dot(n, r2) == 0
    ]
    if quotient_dim <= 2:
        return True
    if len(common) < quotient_dim - 2:
        return False
    return _rank(common) == quotient_dim - 2


def facets(v: VRep, max_rays: int = limits.MAX_RAYS) -> HRep:
    """Facet normals of span(lineality)+cone(rays), by double description on
    the polar cone (rays become inequalities, lineality becomes equalities).

    When the cone is not full-dimensional the polar has lineality; both signs
    of those directions are emitted so the H-representation pins the span.
    """
    constraints = list(v.rays)
    for l in v.lineality:
        constraints.append(l)
        constraints.append(tuple(-x for x in l))
    polar = extreme_rays(HRep(v.dim, tuple(constraints)), max_rays)
    normals = list(polar.rays)
    for l in polar.lineality:
        normals.append(l)
        normals.append(tuple(-x for x in l))
    return HRep(v.dim, tuple(sorted(_dedupe(normals))))


def project_parameters(h: HRep, groups) -> HRep:
    """Restrict the cone to a coordinate subspace where all coordinates in
    each group are equal: normals collapse by summing within groups.

    `groups` lists disjoint index groups covering 0..dim-1; the output lives
    in len(groups) dimensions, ordered as given.
    """
    flat = [i for g in groups for i in g]
    if sorted(flat) != list(range(h.dim)):
        raise InputError("groups must partition the coordinate indices")
    normals = []
    for n in h.normals:
        folded = tuple(sum(n[i] for i in g) for g in groups)
        if not any(folded):
            continue
        p = primitive_vector(folded)
        if p not in normals:
            normals.append(p)
    return HRep(len(groups), tuple(normals))


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


def cone_json(h: HRep, v: VRep | None = None) -> str:
    doc = {"dim": h.dim, "normals": [list(n) for n in h.normals]}
    if v is not None:
        doc["lineality"] = [list(l) for l in v.lineality]
        doc["rays"] = [list(r) for r in v.rays]
    return json.dumps(doc, indent=2) + "\n"
