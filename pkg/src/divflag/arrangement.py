"""Central hyperplane arrangements and their basic constructions.

An arrangement is an ambient dimension plus a duplicate-free list of
normalized covectors over one field.  Flats are stored as canonical rref
normal spaces together with the maximal set of hyperplane indices
containing them, which makes flat identity a tuple comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .exactalg import (
    Field,
    Matrix,
    kernel_basis,
    normalize_covector,
    reduce_against,
    _rref_rows,
)


class ArrangementError(ValueError):
    """Malformed arrangement input: zero, duplicate, or mismatched covectors."""


@dataclass(frozen=True)
class Arrangement:
    field: Field
    dim: int
    hyperplanes: tuple[tuple, ...]

    def __len__(self) -> int:
        return len(self.hyperplanes)

    def covector(self, h: int) -> tuple:
        return self.hyperplanes[h]


def make_arrangement(field: Field, dim: int, covectors: Iterable[Sequence]) -> Arrangement:
    if dim < 1:
        raise ArrangementError("ambient dimension must be at least 1")
    normalized = []
    seen = {}
    for i, raw in enumerate(covectors):
        row = list(raw)
        if len(row) != dim:
            raise ArrangementError(f"covector {i} has length {len(row)}, expected {dim}")
        try:
            cov = normalize_covector(field, row)
        except ValueError:
            raise ArrangementError(f"covector {i} is zero") from None
        if cov in seen:
            raise ArrangementError(f"covectors {seen[cov]} and {i} define the same hyperplane")
        seen[cov] = i
        normalized.append(cov)
    return Arrangement(field, dim, tuple(normalized))


def canonical_key(arr: Arrangement) -> tuple:
    """Structural identity under hyperplane reordering; memoization key."""
    return (arr.field, arr.dim, tuple(sorted(arr.hyperplanes)))


@dataclass(frozen=True)
class Flat:
    """Element of the intersection lattice: canonical normal space plus
    the full set of hyperplane indices containing it."""

    parent: Arrangement
    codim: int
    members: tuple[int, ...]
    normal_space: Matrix


def top_flat(arr: Arrangement) -> Flat:
    return Flat(arr, 0, (), Matrix(arr.field, (), arr.dim))


def hyperplane_flat(arr: Arrangement, h: int) -> Flat:
    if not 0 <= h < len(arr):
        raise IndexError(f"hyperplane index {h} out of range")
    rows = (arr.hyperplanes[h],)
    return Flat(arr, 1, (h,), Matrix(arr.field, rows, arr.dim))


def flat_from_members(arr: Arrangement, members: Iterable[int]) -> Flat:
    """Flat spanned by the given hyperplanes; members are closed up to the
    maximal set containing the intersection."""
    idx = sorted(set(members))
    for h in idx:
        if not 0 <= h < len(arr):
            raise IndexError(f"hyperplane index {h} out of range")
    rows, pivots = _rref_rows(arr.field, [arr.hyperplanes[h] for h in idx], arr.dim)
    return _flat_from_rref(arr, rows, pivots)


def _flat_from_rref(arr: Arrangement, rows, pivots) -> Flat:
    zero = arr.field.zero
    members = tuple(
        h
        for h, cov in enumerate(arr.hyperplanes)
        if all(x == zero for x in reduce_against(arr.field, rows, pivots, cov))
    )
    return Flat(arr, len(rows), members, Matrix(arr.field, rows, arr.dim))


def _check_flat(arr: Arrangement, flat: Flat) -> None:
    if flat.parent != arr:
        raise ValueError("flat does not belong to this arrangement")


def localization(arr: Arrangement, flat: Flat) -> Arrangement:
    """Sub-arrangement of the hyperplanes containing the flat, same ambient."""
    _check_flat(arr, flat)
    return Arrangement(arr.field, arr.dim, tuple(arr.hyperplanes[h] for h in flat.members))


class Restriction(NamedTuple):
    arrangement: Arrangement
    trace: tuple[tuple[int, ...], ...]


def restriction(arr: Arrangement, flat: Flat) -> Restriction:
    """Traces of the remaining hyperplanes on the flat, in canonical flat
    coordinates.

    The trace records which hyperplanes collapse onto each restricted
    hyperplane; its multiplicities are the Ziegler multiplicity data.  The
    coordinate basis of the flat comes from the free columns of its
    canonical normal space, so restrictions are reproducible bit for bit.
    """
    _check_flat(arr, flat)
    new_dim = arr.dim - flat.codim
    if new_dim < 1:
        raise ValueError("cannot restrict to a zero-dimensional flat")
    field = arr.field
    basis = kernel_basis(flat.normal_space)
    member_set = set(flat.members)
    zero = field.zero
    new_cov_index: dict[tuple, int] = {}
    covs: list[tuple] = []
    trace: list[list[int]] = []
    for h, cov in enumerate(arr.hyperplanes):
        if h in member_set:
            continue
        projected = []
        for b in basis:
            acc = zero
            for x, y in zip(cov, b):
                if x != zero and y != zero:
                    acc = field.add(acc, field.mul(x, y))
            projected.append(acc)
        norm = normalize_covector(field, projected)
        j = new_cov_index.get(norm)
        if j is None:
            new_cov_index[norm] = len(covs)
            covs.append(norm)
            trace.append([h])
        else:
            trace[j].append(h)
    new_arr = Arrangement(field, new_dim, tuple(covs))
    return Restriction(new_arr, tuple(tuple(t) for t in trace))


def restrict_to_hyperplane(arr: Arrangement, h: int) -> Restriction:
    return restriction(arr, hyperplane_flat(arr, h))


def deletion(arr: Arrangement, h: int) -> Arrangement:
    if not 0 <= h < len(arr):
        raise IndexError(f"hyperplane index {h} out of range")
    covs = arr.hyperplanes[:h] + arr.hyperplanes[h + 1:]
    return Arrangement(arr.field, arr.dim, covs)


@dataclass(frozen=True)
class Triple:
    """An arrangement with the deletion and restriction at one hyperplane."""

    full: Arrangement
    deleted: Arrangement
    restricted: Arrangement
    pivot: int
    trace: tuple[tuple[int, ...], ...]


def triple(arr: Arrangement, h: int) -> Triple:
    restricted, trace = restrict_to_hyperplane(arr, h)
    return Triple(arr, deletion(arr, h), restricted, h, trace)


def cone(field: Field, dim: int, affine: Iterable[tuple[Sequence, object]]) -> Arrangement:
    """Central arrangement on the affine one: each (covector, c) becomes the
    hyperplane {covector = c*z} in one more dimension, plus {z = 0}."""
    covs = []
    for covector, c in affine:
        row = [field.coerce(x) for x in covector] + [field.neg(field.coerce(c))]
        covs.append(row)
    covs.append([field.zero] * dim + [field.one])
    try:
        return make_arrangement(field, dim + 1, covs)
    except ArrangementError as exc:
        raise ArrangementError(f"affine hyperplanes collide after coning: {exc}") from None


def rank_of(arr: Arrangement) -> int:
    _, pivots = _rref_rows(arr.field, arr.hyperplanes, arr.dim)
    return len(pivots)


def essentialize(arr: Arrangement) -> Arrangement:
    """Same lattice in rank-many coordinates.

    The normals span an r-dimensional space with a canonical rref basis;
    each covector is rewritten in that basis by reading its pivot-column
    entries, which is injective on the span so no hyperplanes collide.
    """
    _, pivots = _rref_rows(arr.field, arr.hyperplanes, arr.dim)
    covs = [tuple(cov[p] for p in pivots) for cov in arr.hyperplanes]
    return make_arrangement(arr.field, len(pivots), covs)


def contains_proportional(arr: Arrangement, covector: Sequence) -> bool:
    norm = normalize_covector(arr.field, [arr.field.coerce(x) for x in covector])
    return norm in set(arr.hyperplanes)


def add_hyperplane(arr: Arrangement, covector: Sequence) -> Arrangement:
    """Arrangement with one more hyperplane appended (index len(arr))."""
    norm = normalize_covector(arr.field, [arr.field.coerce(x) for x in covector])
    if norm in set(arr.hyperplanes):
        raise ArrangementError("hyperplane already present")
    return Arrangement(arr.field, arr.dim, arr.hyperplanes + (norm,))
