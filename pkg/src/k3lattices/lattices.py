"""Even lattices presented by integer Gram matrices.

Root lattices follow the (-2)-curve convention: A(n), D(n) and E(n) are
negative definite, with -2 on the diagonal and +1 for Dynkin adjacency.
U is the hyperbolic plane [[0,1],[1,0]], U(m) multiplies its form by m,
K7 is the rank-2 lattice [[-4,1],[1,-2]], and Z(k) is rank 1 with Gram
[k].  Signatures, determinants and discriminant forms are all computed
with exact arithmetic.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Sequence

from .intmat import IntMatrix, RationalVector, det_exact, smith_normal_form


@dataclass(frozen=True)
class Signature:
    positive: int
    negative: int
    zero: int

    @property
    def rank(self) -> int:
        return self.positive + self.negative + self.zero


@dataclass(frozen=True)
class Lattice:
    """Free Z-module with a symmetric integer bilinear form."""

    gram: IntMatrix
    label: str = ""

    def __post_init__(self) -> None:
        if self.gram.rows != self.gram.cols:
            raise ValueError("Gram matrix must be square")
        if self.gram != self.gram.transpose():
            raise ValueError("Gram matrix must be symmetric")

    @property
    def rank(self) -> int:
        return self.gram.rows

    @cached_property
    def det(self) -> int:
        return det_exact(self.gram)

    @cached_property
    def is_even(self) -> bool:
        return all(self.gram[i, i] % 2 == 0 for i in range(self.rank))

    def pairing(self, v: Sequence[Fraction | int], w: Sequence[Fraction | int]) -> Fraction:
        """Bilinear form extended to rational coordinate vectors."""
        if len(v) != self.rank or len(w) != self.rank:
            raise ValueError("vector length does not match the rank")
        return sum(
            (Fraction(v[i]) * self.gram[i, j] * Fraction(w[j])
             for i in range(self.rank) for j in range(self.rank)),
            start=Fraction(0),
        )


@dataclass(frozen=True)
class DiscriminantGroup:
    """Dual quotient of a nondegenerate lattice, with its quadratic form.

    Generators are rational coordinate vectors in the lattice basis; the
    i-th generator has order invariant_factors[i], and qvalues[i] is the
    value of the discriminant quadratic form on it, reduced into [0, 2).
    """

    invariant_factors: tuple[int, ...]
    generators: tuple[RationalVector, ...]
    qvalues: tuple[Fraction, ...]

    @property
    def order(self) -> int:
        n = 1
        for d in self.invariant_factors:
            n *= d
        return n

    def elements(self):
        """All group elements as coefficient tuples against the generators."""
        return product(*(range(d) for d in self.invariant_factors))


def _mod2(x: Fraction) -> Fraction:
    return x - 2 * (x / 2).__floor__()


def qvalue(l: Lattice, coords: Sequence[Fraction | int]) -> Fraction:
    """Discriminant-form value v.v mod 2, reduced into [0, 2)."""
    return _mod2(l.pairing(coords, coords))


_NAME_RE = re.compile(r"^([ADEUZK])\(?(-?\d+)?\)?$")


def make_named(name: str) -> Lattice:
    """Build a lattice from its conventional name.

    Accepted: A(n) n>=1, D(n) n>=3, E(6|7|8), U, U(m) m!=0, K7,
    Z(k) k!=0.  Parentheses are optional: "A15" and "A(15)" agree.
    """
    m = _NAME_RE.match(name.strip())
    if not m:
        raise ValueError(f"unrecognized lattice name {name!r}")
    family, arg = m.group(1), m.group(2)
    n = int(arg) if arg is not None else None

    if family == "U":
        if n is None:
            return Lattice(IntMatrix.from_rows([[0, 1], [1, 0]]), "U")
        if n == 0:
            raise ValueError("U(m) requires m != 0")
        return Lattice(IntMatrix.from_rows([[0, n], [n, 0]]), f"U({n})")
    if family == "K":
        if n != 7:
            raise ValueError("only K7 is defined")
        return Lattice(IntMatrix.from_rows([[-4, 1], [1, -2]]), "K7")
    if family == "Z":
        if n is None or n == 0:
            raise ValueError("Z(k) requires k != 0")
        return Lattice(IntMatrix.from_rows([[n]]), f"Z({n})")

    if n is None:
        raise ValueError(f"{family} needs a rank parameter")
    if family == "A":
        if n < 1:
            raise ValueError("A(n) requires n >= 1")
        edges = [(i, i + 1) for i in range(n - 1)]
    elif family == "D":
        if n < 3:
            raise ValueError("D(n) requires n >= 3")
        edges = [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    else:
        if n not in (6, 7, 8):
            raise ValueError("E(n) requires n in {6, 7, 8}")
        edges = [(i, i + 1) for i in range(n - 2)] + [(n - 4, n - 1)]

    g = [[-2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j in edges:
        g[i][j] = g[j][i] = 1
    return Lattice(IntMatrix.from_rows(g), f"{family}{n}")


EMPTY = Lattice(IntMatrix.zeros(0, 0), "0")


def direct_sum(*parts: Lattice) -> Lattice:
    """Orthogonal direct sum; Gram matrices on the block diagonal."""
    rank = sum(p.rank for p in parts)
    rows = [[0] * rank for _ in range(rank)]
    offset = 0
    for p in parts:
        for i in range(p.rank):
            for j in range(p.rank):
                rows[offset + i][offset + j] = p.gram[i, j]
        offset += p.rank
    label = " + ".join(p.label for p in parts if p.rank) or "0"
    return Lattice(IntMatrix.from_rows(rows, cols=rank), label)


def signature(l: Lattice) -> Signature:
    """Sylvester signature by exact rational congruence diagonalization."""
    n = l.rank
    a = [[Fraction(l.gram[i, j]) for j in range(n)] for i in range(n)]
    pos = neg = zero = 0
    for i in range(n):
        if a[i][i] == 0:
            partner = next((j for j in range(i + 1, n) if a[i][j] != 0), None)
            if partner is None:
                zero += 1
                continue
            # a[i][i] becomes a[p][p] +- 2 a[i][p]; one sign is nonzero
            s = 1 if a[partner][partner] + 2 * a[i][partner] != 0 else -1
            for k in range(n):
                a[i][k] += s * a[partner][k]
            for k in range(n):
                a[k][i] += s * a[k][partner]
        if a[i][i] > 0:
            pos += 1
        else:
            neg += 1
        for j in range(i + 1, n):
            if a[i][j] == 0:
                continue
            f = a[i][j] / a[i][i]
            for k in range(n):
                a[j][k] -= f * a[i][k]
            for k in range(n):
                a[k][j] -= f * a[k][i]
    return Signature(pos, neg, zero)


def discriminant_group(l: Lattice) -> DiscriminantGroup:
    """Finite quotient (dual lattice)/(lattice) with its quadratic form.

    The i-th generator is column i of the right Smith transform divided
    by the i-th invariant factor; only factors > 1 contribute.
    """
    if l.det == 0:
        raise ValueError("degenerate lattice has no discriminant group")
    d, _left, right = smith_normal_form(l.gram)
    factors = []
    gens = []
    qs = []
    for i, di in enumerate(d):
        if di == 1:
            continue
        gen = tuple(Fraction(right[k, i], di) for k in range(l.rank))
        factors.append(di)
        gens.append(gen)
        qs.append(qvalue(l, gen))
    group = DiscriminantGroup(tuple(factors), tuple(gens), tuple(qs))
    if group.order != abs(l.det):
        raise AssertionError("group order disagrees with the determinant")
    return group


def _q_evaluator(l: Lattice, group: DiscriminantGroup):
    """Quadratic form on coefficient tuples, for the isomorphism search."""
    k = len(group.generators)
    qs = group.qvalues
    pair = [[l.pairing(group.generators[i], group.generators[j])
             for j in range(k)] for i in range(k)]

    def q_of(coeffs):
        total = Fraction(0)
        for i in range(k):
            total += coeffs[i] * coeffs[i] * qs[i]
            for j in range(i + 1, k):
                total += 2 * coeffs[i] * coeffs[j] * pair[i][j]
        return _mod2(total)

    return q_of


def glue_compatible(s: Lattice, t: Lattice) -> bool:
    """True iff the discriminant forms match up to a global sign flip.

    Searches every group isomorphism and tests q_t(phi(x)) = -q_s(x) on
    all elements; intended for the small groups arising here.
    """
    for l in (s, t):
        if l.det == 0 or not l.is_even:
            raise ValueError("glue comparison needs nondegenerate even lattices")
    gs, gt = discriminant_group(s), discriminant_group(t)
    if gs.invariant_factors != gt.invariant_factors:
        return False
    if gs.order > 4096:
        raise ValueError("discriminant group too large for exhaustive search")
    q_s = _q_evaluator(s, gs)
    q_t = _q_evaluator(t, gt)

    factors = gs.invariant_factors
    elements = list(gt.elements())

    def order_of(coeffs):
        n = 1
        for c, d in zip(coeffs, factors):
            if c:
                dd = d // math.gcd(c, d)
                n = n * dd // math.gcd(n, dd)
        return n

    candidates = [[e for e in elements if order_of(e) == d] for d in factors]
    for images in product(*candidates):
        seen = set()
        ok = True
        for coeffs in gs.elements():
            img = tuple(
                sum(coeffs[i] * images[i][j] for i in range(len(factors))) % factors[j]
                for j in range(len(factors))
            )
            if img in seen:
                ok = False
                break
            seen.add(img)
            if _mod2(q_t(img) + q_s(coeffs)) != 0:
                ok = False
                break
        if ok:
            return True
    return False


def lattice_to_json(l: Lattice) -> str:
    return json.dumps({"label": l.label, "gram": l.gram.to_lists()})


def lattice_from_json(text: str) -> Lattice:
    data = json.loads(text)
    if not isinstance(data, dict) or "gram" not in data:
        raise ValueError("lattice JSON needs a 'gram' field")
    gram = data["gram"]
    if (not isinstance(gram, list)
            or not all(isinstance(r, list) and all(isinstance(x, int) for x in r)
                       for r in gram)):
        raise ValueError("'gram' must be a list of integer rows")
    n = len(gram)
    return Lattice(IntMatrix.from_rows(gram, cols=n), str(data.get("label", "")))
