"""Intersection lattices, Möbius functions, characteristic polynomials,
and two independent oracles for cross-checking them.

The lattice is built rank by rank: each level is the deduplicated set of
one-hyperplane extensions of the previous one, keyed by the canonical rref
of the flat's normal space.  Member sets are kept as bitmasks so interval
containment (reverse inclusion) is a single subset test.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from math import lcm

from . import intpoly
from .arrangement import Arrangement, Flat, make_arrangement, ArrangementError
from .exactalg import Matrix, QQ, extend_rref, _rref_rows


class EmptyArrangementError(ValueError):
    """chi0 and the deconed Betti numbers are undefined for the empty arrangement."""


class BadPrimeError(ValueError):
    """The prime degenerates the lattice; finite-field counting is invalid."""


@dataclass
class IntersectionLattice:
    arrangement: Arrangement
    levels: tuple[tuple[Flat, ...], ...]
    mobius: tuple[tuple[int, ...], ...]
    complete: bool
    _masks: tuple[tuple[int, ...], ...]
    _covers: tuple[tuple[tuple[int, ...], ...], ...] | None = dc_field(default=None, repr=False)

    def level_sizes(self) -> tuple[int, ...]:
        return tuple(len(level) for level in self.levels)

    def flats(self):
        for level in self.levels:
            yield from level

    def mobius_of(self, flat: Flat) -> int:
        for level, mob in zip(self.levels, self.mobius):
            for f, m in zip(level, mob):
                if f.members == flat.members and f.codim == flat.codim:
                    return m
        raise KeyError("flat not in lattice")

    def find(self, members) -> Flat:
        target = tuple(sorted(members))
        for level in self.levels:
            for f in level:
                if f.members == target:
                    return f
        raise KeyError(f"no flat with members {target}")

    @property
    def covers(self) -> tuple[tuple[tuple[int, ...], ...], ...]:
        """covers[i][j] = indices k at level i+1 with levels[i][j] covered by levels[i+1][k]."""
        if self._covers is None:
            out = []
            for i in range(len(self.levels) - 1):
                lower = self._masks[i]
                upper = self._masks[i + 1]
                out.append(tuple(
                    tuple(k for k, um in enumerate(upper) if lm & um == lm)
                    for lm in lower
                ))
            out.append(tuple(() for _ in self.levels[-1]))
            self._covers = tuple(out)
        return self._covers


def build_lattice(arr: Arrangement, max_codim: int | None = None) -> IntersectionLattice:
    """Levels, members, and Möbius values of the intersection lattice.

    Extension is pruned to hyperplanes above the largest current member:
    every flat of the next rank has a maximal proper subflat avoiding its
    largest member, so each flat is still generated at least once.
    """
    field = arr.field
    n = len(arr)
    dim = arr.dim
    limit = dim if max_codim is None else min(max_codim, dim)
    zero = field.zero

    # per level: list of (rows, pivots, members tuple, mask)
    levels_raw = [[((), (), (), 0)]]
    while len(levels_raw) - 1 < limit:
        current = levels_raw[-1]
        found: dict[tuple, tuple] = {}
        for rows, pivots, members, mask in current:
            # members all precede the start index, so no membership check here
            start = members[-1] + 1 if members else 0
            for h in range(start, n):
                extended = extend_rref(field, rows, pivots, arr.hyperplanes[h])
                if extended is None:
                    continue
                new_rows, new_pivots = extended
                if new_rows not in found:
                    found[new_rows] = (new_rows, new_pivots)
        if not found:
            break
        next_level = []
        for new_rows in sorted(found):
            new_rows, new_pivots = found[new_rows]
            members = []
            mask = 0
            for h, cov in enumerate(arr.hyperplanes):
                v = cov
                for row, c in zip(new_rows, new_pivots):
                    factor = v[c]
                    if factor != zero:
                        v = tuple(field.sub(v[j], field.mul(factor, row[j])) for j in range(dim))
                if all(x == zero for x in v):
                    members.append(h)
                    mask |= 1 << h
            next_level.append((new_rows, new_pivots, tuple(members), mask))
        levels_raw.append(next_level)

    flats = tuple(
        tuple(
            Flat(arr, codim, members, Matrix(field, rows, dim))
            for rows, _, members, _ in level
        )
        for codim, level in enumerate(levels_raw)
    )
    masks = tuple(tuple(entry[3] for entry in level) for level in levels_raw)

    mobius = [[1]]
    for k in range(1, len(flats)):
        level_mob = []
        for mask in masks[k]:
            acc = 1  # the top flat V
            for j in range(1, k):
                for above_mask, mu in zip(masks[j], mobius[j]):
                    if above_mask & mask == above_mask:
                        acc += mu
            level_mob.append(-acc)
        mobius.append(level_mob)

    # a capped build is still complete when it stopped before hitting the cap
    complete = max_codim is None or len(flats) - 1 < limit or limit == dim
    return IntersectionLattice(
        arrangement=arr,
        levels=flats,
        mobius=tuple(tuple(m) for m in mobius),
        complete=complete,
        _masks=masks,
    )


def rank2_flats(arr: Arrangement) -> tuple[Flat, ...]:
    """The codimension-2 flats only (cheaper than a full lattice)."""
    lat = build_lattice(arr, max_codim=2)
    return lat.levels[2] if len(lat.levels) > 2 else ()


@dataclass(frozen=True)
class CharData:
    """Characteristic and Poincaré polynomials with their Betti views."""

    arrangement: Arrangement
    chi: intpoly.IntPoly
    poincare: intpoly.IntPoly
    betti: tuple[int, ...]
    _chi0: intpoly.IntPoly | None
    _betti_dec: tuple[int, ...] | None

    @property
    def chi0(self) -> intpoly.IntPoly:
        if self._chi0 is None:
            raise EmptyArrangementError("chi0 is undefined for the empty arrangement")
        return self._chi0

    @property
    def betti_dec(self) -> tuple[int, ...]:
        if self._betti_dec is None:
            raise EmptyArrangementError("deconed Betti numbers need a nonempty arrangement")
        return self._betti_dec

    @property
    def b2_dec(self) -> int:
        """Coefficient of t^(dim-3) in chi0: the second Betti number after deconing."""
        return self.betti_dec[2] if len(self.betti_dec) > 2 else 0


def char_data(arr: Arrangement, lattice: IntersectionLattice | None = None) -> CharData:
    if lattice is None:
        lattice = build_lattice(arr)
    elif not lattice.complete or lattice.arrangement != arr:
        raise ValueError("char_data needs the complete lattice of this arrangement")
    ell = arr.dim
    chi_coeffs = [0] * (ell + 1)
    poin_coeffs = [0] * (ell + 1)
    for codim, mob in enumerate(lattice.mobius):
        s = sum(mob)
        chi_coeffs[ell - codim] += s
        poin_coeffs[codim] += s if codim % 2 == 0 else -s
    chi = intpoly.poly(chi_coeffs)
    poincare = intpoly.poly(poin_coeffs)
    betti = tuple((-1) ** i * intpoly.coeff(chi, ell - i) for i in range(ell + 1))
    if len(arr) == 0:
        chi0 = None
        betti_dec = None
    else:
        chi0, rem = intpoly.div_rem(chi, (-1, 1))
        assert rem == intpoly.ZERO, "(t-1) must divide chi of a nonempty arrangement"
        betti_dec = tuple((-1) ** i * intpoly.coeff(chi0, ell - 1 - i) for i in range(ell))
    return CharData(arr, chi, poincare, betti, chi0, betti_dec)


def charpoly(arr: Arrangement) -> intpoly.IntPoly:
    return char_data(arr).chi


WHITNEY_CAP = 16


def whitney_oracle(arr: Arrangement) -> intpoly.IntPoly:
    """Characteristic polynomial by brute force over all subsets:
    sum over B of (-1)^|B| t^(dim - rank(B)).  Independent of the Möbius path."""
    n = len(arr)
    if n > WHITNEY_CAP:
        raise ValueError(f"whitney oracle capped at {WHITNEY_CAP} hyperplanes, got {n}")
    coeffs = [0] * (arr.dim + 1)
    field = arr.field
    for size in range(n + 1):
        for subset in itertools.combinations(range(n), size):
            _, pivots = _rref_rows(field, [arr.hyperplanes[h] for h in subset], arr.dim)
            coeffs[arr.dim - len(pivots)] += (-1) ** size
    return intpoly.poly(coeffs)


def integer_covectors(arr: Arrangement) -> list[tuple[int, ...]]:
    """Primitive integer representatives of the hyperplanes (Q only)."""
    if arr.field != QQ:
        raise ValueError("integer covectors only make sense over Q")
    out = []
    for cov in arr.hyperplanes:
        mult = lcm(*[c.denominator for c in cov])
        ints = [int(c * mult) for c in cov]
        out.append(tuple(ints))
    return out


def point_count_oracle(arr: Arrangement, q: int) -> int:
    """Points of F_q^dim avoiding every hyperplane; equals chi(q) for good q.

    A prime is good when reduction does not change the lattice; level sizes
    over F_q are compared against the rational ones and the first
    disagreeing level is reported otherwise.
    """
    from .exactalg import PrimeField, is_prime

    if not is_prime(q):
        raise BadPrimeError(f"{q} is not prime")
    covs = integer_covectors(arr)
    fq = PrimeField(q)
    reduced = []
    for i, cov in enumerate(covs):
        row = tuple(c % q for c in cov)
        if all(x == 0 for x in row):
            raise BadPrimeError(f"hyperplane {i} vanishes modulo {q}")
        reduced.append(row)
    try:
        arr_q = make_arrangement(fq, arr.dim, reduced)
    except ArrangementError as exc:
        raise BadPrimeError(f"hyperplanes collide modulo {q}: {exc}") from None
    sizes_q = build_lattice(arr_q).level_sizes()
    sizes = build_lattice(arr).level_sizes()
    if sizes_q != sizes:
        for lvl in range(max(len(sizes), len(sizes_q))):
            a = sizes[lvl] if lvl < len(sizes) else 0
            b = sizes_q[lvl] if lvl < len(sizes_q) else 0
            if a != b:
                raise BadPrimeError(
                    f"level {lvl} has {b} flats modulo {q} but {a} over Q"
                )
    count = 0
    for point in itertools.product(range(q), repeat=arr.dim):
        for cov in reduced:
            s = 0
            for c, x in zip(cov, point):
                s += c * x
            if s % q == 0:
                break
        else:
            count += 1
    return count
