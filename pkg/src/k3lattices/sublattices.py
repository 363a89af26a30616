"""Sublattices of a fixed ambient lattice and finite-index glue.

Covers orthogonal complements, primitivity with closure witnesses,
index computations, the exhaustive half-sum subset search, the rank-15
chain glue solver, and enumeration of even overlattices obtained by
adjoining a single glue vector.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .intmat import (
    NO_SOLUTION,
    IntMatrix,
    RationalVector,
    det_exact,
    hermite_normal_form,
    integer_kernel,
    saturate,
    smith_normal_form,
    solve_rational,
    unimodular_inverse,
)
from .lattices import Lattice, discriminant_group, qvalue


@dataclass(frozen=True)
class Sublattice:
    """Generators of a finite-rank subgroup, as columns in ambient coordinates."""

    ambient: Lattice
    coords: IntMatrix
    label: str = ""

    def __post_init__(self) -> None:
        if self.coords.rows != self.ambient.rank:
            raise ValueError("coordinate rows must match the ambient rank")
        d, _, _ = smith_normal_form(self.coords)
        if sum(1 for x in d if x != 0) != self.coords.cols:
            raise ValueError("generator columns must be independent")

    @property
    def rank(self) -> int:
        return self.coords.cols

    def induced_gram(self) -> IntMatrix:
        return self.coords.transpose() @ self.ambient.gram @ self.coords

    def generator(self, j: int) -> tuple[int, ...]:
        return self.coords.col(j)


def full_sublattice(ambient: Lattice, label: str = "") -> Sublattice:
    return Sublattice(ambient, IntMatrix.identity(ambient.rank), label)


def orthogonal_complement(s: Sublattice) -> Sublattice:
    """Saturated sublattice of everything orthogonal to s."""
    if s.ambient.det == 0:
        raise ValueError("complement needs a nondegenerate ambient lattice")
    system = s.coords.transpose() @ s.ambient.gram
    kernel = integer_kernel(system)
    return Sublattice(s.ambient, kernel, f"({s.label})^perp" if s.label else "")


def is_primitive(s: Sublattice) -> tuple[bool, Sublattice]:
    """Whether s is saturated in its ambient; the closure comes along as witness."""
    closure = Sublattice(s.ambient, saturate(s.coords, s.ambient.rank),
                         f"closure({s.label})" if s.label else "")
    return sublattice_index(closure, s) == 1, closure


def sublattice_index(big: Sublattice, small: Sublattice):
    """Group index [big : small], or math.inf when the ranks differ.

    small must be contained in big; anything else is rejected.
    """
    if big.ambient.gram != small.ambient.gram:
        raise ValueError("sublattices live in different ambient lattices")
    relative = []
    for j in range(small.rank):
        col = small.generator(j)
        sol = solve_rational(big.coords, col)
        if sol is NO_SOLUTION:
            raise ValueError("small is not contained in the span of big")
        if any(x.denominator != 1 for x in sol):
            raise ValueError("small is not a subgroup of big")
        relative.append([int(x) for x in sol])
    if small.rank < big.rank:
        return math.inf
    x = IntMatrix.from_rows(relative, cols=big.rank).transpose()
    d, _, _ = smith_normal_form(x)
    index = 1
    for di in d:
        index *= di
    return index


def half_sum_search(s: Sublattice) -> list[tuple[int, ...]]:
    """All nonempty subsets J of generators whose half-sum is integral.

    Exhaustive over 2^k subsets via a Gray-code walk on per-column parity
    bitmasks, so k is capped at 24.
    """
    k = s.rank
    if k > 24:
        raise ValueError("half-sum search is exhaustive; 24 generators max")
    masks = []
    for j in range(k):
        col = s.generator(j)
        masks.append(sum(1 << i for i, x in enumerate(col) if x % 2))
    found = []
    gray = 0
    parity = 0
    for i in range(1, 1 << k):
        nxt = i ^ (i >> 1)
        bit = (gray ^ nxt).bit_length() - 1
        parity ^= masks[bit]
        gray = nxt
        if parity == 0:
            found.append(tuple(j for j in range(k) if gray >> j & 1))
    return sorted(found)


@dataclass(frozen=True)
class GlueSolution:
    """Glue data of a corank-1 chain sublattice.

    n is the index of (delta + complement) in the ambient lattice; H
    generates the complement; h generates the quotient and satisfies
    n*h = H + sum(a[i] * C[i]) modulo n*(delta + ZH); h_plus is the
    integral vector (H + a[0]*sum(i*C[i]))/n.  All vectors are in
    ambient coordinates.
    """

    n: int
    H: tuple[int, ...]
    h: tuple[int, ...]
    a: tuple[int, ...]
    h_plus: tuple[int, ...]


def solve_glue(ambient: Lattice, delta: Sublattice,
               positive_against: tuple[int, ...] | None = None) -> GlueSolution:
    """Glue solver for a primitive chain sublattice of corank 1.

    The complement generator H is sign-normalized to pair positively with
    positive_against when given, otherwise to a positive first nonzero
    coordinate.  The quotient generator h is normalized so its
    H-coefficient is exactly 1/n, which pins the residues a[i]; for a
    chain delta these satisfy a[i] = (i+1)*a[0] mod n.
    """
    if delta.ambient.gram != ambient.gram:
        raise ValueError("delta does not live in the given ambient lattice")
    if delta.rank != ambient.rank - 1:
        raise ValueError("delta must have corank 1")
    primitive, _closure = is_primitive(delta)
    if not primitive:
        raise ValueError("delta must be primitive in the ambient lattice")

    comp = orthogonal_complement(delta)
    if comp.rank != 1:
        raise ValueError("complement is not of rank 1")
    H = list(comp.generator(0))
    if positive_against is not None:
        sign = ambient.pairing(H, positive_against)
    else:
        sign = next((x for x in H if x), 0)
    if sign == 0:
        raise ValueError("cannot orient H")
    if sign < 0:
        H = [-x for x in H]
    h_sq = ambient.pairing(H, H)

    x = delta.coords.hstack(IntMatrix.from_rows([[v] for v in H]))
    n = abs(det_exact(x))
    d, left, _right = smith_normal_form(x)
    if any(di != 1 for di in d[:-1]) or d[-1] != n:
        raise ValueError("quotient by delta + ZH is not cyclic")

    if abs(ambient.det) == 7 and abs(det_exact(delta.induced_gram())) == 16:
        if 16 * h_sq != 7 * n * n:
            raise AssertionError("16*H^2 = 7*n^2 fails")

    # class generating the quotient, as an integer ambient vector
    g0 = unimodular_inverse(left).col(ambient.rank - 1)
    coeffs = solve_rational(x, g0)
    assert coeffs is not NO_SOLUTION
    p = coeffs[-1] * n
    assert p.denominator == 1
    p = int(p) % n
    # primitivity makes the H-coefficient a unit mod n
    m = pow(p, -1, n)
    a = tuple(int(m * c * n) % n for c in coeffs[:-1])

    rank = ambient.rank
    h = [Fraction(H[i], n) for i in range(rank)]
    for j in range(delta.rank):
        col = delta.generator(j)
        for i in range(rank):
            h[i] += Fraction(a[j] * col[i], n)
    if any(v.denominator != 1 for v in h):
        raise AssertionError("normalized glue vector is not integral")
    h_int = tuple(int(v) for v in h)

    for i in range(1, delta.rank):
        if a[i] != (i + 1) * a[0] % n:
            raise AssertionError("residues do not follow the chain rule")

    hp = [Fraction(H[i], n) for i in range(rank)]
    for j in range(delta.rank):
        col = delta.generator(j)
        for i in range(rank):
            hp[i] += Fraction(a[0] * (j + 1) * col[i], n)
    if any(v.denominator != 1 for v in hp):
        raise AssertionError("h_plus is not integral")
    h_plus = tuple(int(v) for v in hp)

    # delta together with h must already generate the whole ambient lattice
    spanning = delta.coords.hstack(
        IntMatrix.from_rows([[v] for v in h_int]))
    ds, _, _ = smith_normal_form(spanning)
    if any(di != 1 for di in ds):
        raise AssertionError("delta + Zh does not span the ambient lattice")

    return GlueSolution(n, tuple(H), h_int, a, h_plus)


@dataclass(frozen=True)
class Overlattice:
    """A finite-index even overlattice, with the adjoined glue vector.

    basis rows are the overlattice basis in the coordinates of the base
    lattice; gram is its (integer, even) Gram matrix.
    """

    glue: RationalVector
    basis: tuple[RationalVector, ...]
    gram: IntMatrix
    index: int


def enumerate_even_overlattices(m: Lattice, index: int) -> list[Overlattice]:
    """Even overlattices N of m with cyclic quotient N/m of the given order.

    Searches the discriminant group exhaustively for glue vectors of the
    right order with q = 0 mod 2, one overlattice per cyclic subgroup.
    Results are sorted by glue-vector coefficients.
    """
    if index < 1:
        raise ValueError("index must be positive")
    if not m.is_even or m.det == 0:
        raise ValueError("overlattice search needs a nondegenerate even lattice")
    if index == 1:
        ident = tuple(
            tuple(Fraction(1 if i == j else 0) for j in range(m.rank))
            for i in range(m.rank))
        return [Overlattice(tuple(Fraction(0) for _ in range(m.rank)),
                            ident, m.gram, 1)]
    group = discriminant_group(m)
    if group.order > 2048:
        raise ValueError("discriminant group too large for exhaustive search")

    factors = group.invariant_factors

    def order_of(coeffs):
        n = 1
        for c, dd in zip(coeffs, factors):
            if c:
                o = dd // math.gcd(c, dd)
                n = n * o // math.gcd(n, o)
        return n

    seen_subgroups = []
    picked = []
    for coeffs in sorted(group.elements()):
        if order_of(coeffs) != index:
            continue
        vec = _group_vector(group, coeffs, m.rank)
        if qvalue(m, vec) != 0:
            continue
        subgroup = frozenset(
            tuple(k * c % dd for c, dd in zip(coeffs, factors))
            for k in range(index))
        if subgroup in seen_subgroups:
            continue
        seen_subgroups.append(subgroup)
        picked.append((coeffs, vec))

    results = []
    for coeffs, vec in picked:
        basis = _adjoin(m, vec)
        gram_rows = []
        for u in basis:
            gram_rows.append([_as_int(m.pairing(u, w)) for w in basis])
        gram = IntMatrix.from_rows(gram_rows, cols=m.rank)
        for i in range(m.rank):
            if gram[i, i] % 2:
                raise AssertionError("overlattice is not even")
        over = Lattice(gram)
        if abs(m.det) != index * index * abs(over.det):
            raise AssertionError("determinant identity fails")
        results.append(Overlattice(vec, basis, gram, index))
    return results


def _group_vector(group, coeffs, rank) -> RationalVector:
    vec = [Fraction(0)] * rank
    for c, gen in zip(coeffs, group.generators):
        for i in range(rank):
            vec[i] += c * gen[i]
    return tuple(vec)


def _as_int(x: Fraction) -> int:
    if x.denominator != 1:
        raise AssertionError("expected an integer pairing value")
    return int(x)


def _adjoin(m: Lattice, vec: RationalVector) -> tuple[RationalVector, ...]:
    """Basis of m + Z*vec in m's coordinates, via a scaled Hermite form."""
    q = math.lcm(*(v.denominator for v in vec)) if vec else 1
    rows = [[q if i == j else 0 for j in range(m.rank)] for i in range(m.rank)]
    rows.append([int(v * q) for v in vec])
    h, _ = hermite_normal_form(IntMatrix.from_rows(rows, cols=m.rank))
    basis = []
    for i in range(m.rank):
        basis.append(tuple(Fraction(h[i, j], q) for j in range(m.rank)))
    return tuple(basis)
