"""Elliptic K3 bookkeeping over the rational function field of a line.

Three layers live here.  Weierstrass models y^2 = x^3 + a4*x + a6 are
classified place by place through the valuation triple
(v(a4), v(a6), v(Delta)), with the place at infinity read off through
the K3 degree complements (8, 12, 24).  Classified configurations are
summarized against the Shioda-Tate formula.  Finally, a fibration with
labeled components and a zero-section is turned into its intersection
lattice on the basis {S, F, non-identity components}, from which linear
chains of (-2)-curves can be extracted as sublattices.

The quartic coefficient is tracked through its cube so that models
whose a4 is only rational after cubing (a4^3 = -27/4 below) stay inside
exact arithmetic.  Every valuation of a4^3 must then be divisible by 3.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Sequence, Union

from .intmat import IntMatrix
from .lattices import Lattice
from .polynomials import (
    Poly,
    Rational,
    extract_rational_roots,
    format_poly,
    primitive_integer,
    squarefree_parts,
    uniform_valuations,
)
from .sublattices import Sublattice


class Infinity:
    """Singleton marker for the place at infinity of the base line."""

    _instance: "Infinity | None" = None

    def __new__(cls) -> "Infinity":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITY"


INFINITY = Infinity()

Place = Union[Rational, Infinity]


class NonMinimalModelError(ValueError):
    """The model can be rescaled at the place before classification."""


@dataclass(frozen=True)
class WeierstrassModel:
    a4_cubed: Poly
    a6: Poly
    label: str = ""
    a4: Poly | None = None

    def __post_init__(self) -> None:
        if self.a4_cubed.degree > 24:
            raise ValueError("deg a4 exceeds the K3 bound of 8")
        if self.a6.degree > 12:
            raise ValueError("deg a6 exceeds the K3 bound of 12")
        if discriminant_poly(self).is_zero:
            raise ValueError("the discriminant vanishes identically")

    @classmethod
    def from_a4(cls, a4: Poly, a6: Poly, label: str = "") -> "WeierstrassModel":
        if a4.degree > 8:
            raise ValueError("deg a4 exceeds the K3 bound of 8")
        return cls(a4 * a4 * a4, a6, label, a4)

    @classmethod
    def from_a4_cubed(cls, value: Rational, a6: Poly,
                      label: str = "") -> "WeierstrassModel":
        return cls(Poly.constant(value), a6, label)


def discriminant_poly(w: WeierstrassModel) -> Poly:
    return (w.a4_cubed * 4 + w.a6 * w.a6 * 27) * -16


def _third(v: int) -> int:
    if v % 3:
        raise ValueError("valuation of a4^3 is not divisible by 3")
    return v // 3


def _finite_valuations(w: WeierstrassModel,
                       r: Fraction) -> tuple[int | None, int | None, int]:
    v4 = None if w.a4_cubed.is_zero else _third(w.a4_cubed.valuation_at(r))
    v6 = None if w.a6.is_zero else w.a6.valuation_at(r)
    return v4, v6, discriminant_poly(w).valuation_at(r)


def _infinite_valuations(w: WeierstrassModel) -> tuple[int | None, int | None, int]:
    v4 = None if w.a4_cubed.is_zero else 8 - _third(w.a4_cubed.degree)
    v6 = None if w.a6.is_zero else 12 - w.a6.degree
    return v4, v6, 24 - discriminant_poly(w).degree


def _kodaira_from_valuations(v4: int | None, v6: int | None, vd: int) -> str:
    """Valuation-triple classification, residue characteristic 0.

    None means infinite valuation (the coefficient vanishes identically).
    """
    big4 = v4 is None or v4 >= 4
    big6 = v6 is None or v6 >= 6
    if big4 and big6:
        raise NonMinimalModelError(
            "model is not minimal here; substitute x -> u^2 x, y -> u^3 y "
            "to divide (a4, a6) by (u^4, u^6) and retry")
    if vd == 0:
        return "I0"
    if v4 == 0:
        return f"I{vd}"
    if v6 == 1:
        return "II"
    if v4 == 1:
        return "III"
    if v6 == 2:
        return "IV"
    if vd == 6:
        return "I0*"
    if v4 == 2:
        return f"I{vd - 6}*"
    if v6 == 4:
        return "IV*"
    if v4 == 3:
        return "III*"
    if v6 == 5:
        return "II*"
    raise ValueError(f"valuation triple ({v4}, {v6}, {vd}) matches no fiber type")


_KODAIRA_IN = re.compile(r"^I(\d+)(\*?)$")

_KODAIRA_FIXED = {
    "II": (2, 1, None),
    "III": (3, 2, "A1"),
    "IV": (4, 3, "A2"),
    "IV*": (8, 7, "E6"),
    "III*": (9, 8, "E7"),
    "II*": (10, 9, "E8"),
}


def kodaira_data(tag: str) -> tuple[int, int, str | None]:
    """(euler number, component count, root-lattice name) of a fiber type."""
    if tag in _KODAIRA_FIXED:
        return _KODAIRA_FIXED[tag]
    m = _KODAIRA_IN.match(tag)
    if m is None:
        raise ValueError(f"unknown Kodaira type {tag!r}")
    n = int(m.group(1))
    if m.group(2):
        return n + 6, n + 5, f"D{n + 4}"
    if n == 0:
        return 0, 1, None
    return n, n, f"A{n - 1}" if n >= 2 else None


@dataclass(frozen=True)
class FiberReport:
    place: str
    kodaira: str
    euler: int
    components: int
    root_contribution: str | None
    count: int = 1


def classify_place(w: WeierstrassModel, place: Place) -> FiberReport:
    if place is INFINITY:
        v4, v6, vd = _infinite_valuations(w)
        label = "inf"
    else:
        r = place if isinstance(place, Fraction) else Fraction(place)
        v4, v6, vd = _finite_valuations(w, r)
        label = str(r)
    tag = _kodaira_from_valuations(v4, v6, vd)
    euler, components, root = kodaira_data(tag)
    if euler != vd:
        raise ValueError(f"Euler number {euler} of {tag} disagrees with v(Delta) = {vd}")
    return FiberReport(label, tag, euler, components, root)


@dataclass(frozen=True)
class FibrationAnalysis:
    label: str
    fibers: tuple[FiberReport, ...]
    euler_total: int
    ns_rank: int
    mw_rank: int
    notes: tuple[str, ...] = ()

    @property
    def euler_ok(self) -> bool:
        return self.euler_total == 24

    @property
    def consistent(self) -> bool:
        return self.euler_ok and self.mw_rank >= 0


def _split_valuations(f: Poly, modulus: Poly) -> list[tuple[Poly, int | None]]:
    if f.is_zero:
        return [(modulus, None)]
    return [(piece, v) for piece, v in uniform_valuations(f, modulus)]


def _report_key(r: FiberReport):
    if r.place == "inf":
        return (2, "")
    try:
        return (0, Fraction(r.place))
    except ValueError:
        return (1, r.place)


def analyze_k3(w: WeierstrassModel, ns_rank: int = 16) -> FibrationAnalysis:
    """Classify every singular place and run the Shioda-Tate accounting.

    Conjugate irrational places are bundled per irreducible-factor handle
    with a count.  The reported Mordell-Weil rank is the one implied by
    the target Neron-Severi rank; a negative value or an Euler sum other
    than 24 marks the model as inconsistent with that target.
    """
    reports: list[FiberReport] = []
    notes: list[str] = []
    _, pieces = squarefree_parts(discriminant_poly(w))
    for piece, mult in pieces:
        roots, rest = extract_rational_roots(piece)
        for r in roots:
            reports.append(classify_place(w, r))
        if rest.degree > 0:
            for h4, v4c in _split_valuations(w.a4_cubed, rest):
                v4 = None if v4c is None else _third(v4c)
                for h6, v6 in _split_valuations(w.a6, h4):
                    tag = _kodaira_from_valuations(v4, v6, mult)
                    euler, components, root = kodaira_data(tag)
                    reports.append(FiberReport(
                        format_poly(primitive_integer(h6)), tag, euler,
                        components, root, count=h6.degree))
    if 24 - discriminant_poly(w).degree > 0:
        try:
            reports.append(classify_place(w, INFINITY))
        except NonMinimalModelError as err:
            notes.append(f"place at infinity skipped: {err}")
    reports.sort(key=_report_key)
    euler_total = sum(r.euler * r.count for r in reports)
    mw = ns_rank - 2 - sum((r.components - 1) * r.count for r in reports)
    return FibrationAnalysis(w.label, tuple(reports), euler_total, ns_rank,
                             mw, tuple(notes))


@dataclass(frozen=True)
class FiberGraph:
    """Dual graph of a fiber: component multiplicities and weighted edges."""

    multiplicities: tuple[int, ...]
    edges: tuple[tuple[int, int, int], ...]


def check_affine(graph: FiberGraph) -> None:
    """Each vertex of a multi-component fiber must satisfy
    2*mult(v) = sum of edge-weighted neighbor multiplicities."""
    m = graph.multiplicities
    if len(m) == 1:
        return
    for v in range(len(m)):
        around = sum(w * m[j] for i, j, w in graph.edges if i == v)
        around += sum(w * m[i] for i, j, w in graph.edges if j == v)
        if 2 * m[v] != around:
            raise ValueError(f"component {v} violates the multiplicity balance")


def fiber_graph(tag: str) -> FiberGraph:
    if tag in ("I1", "II"):
        return FiberGraph((1,), ())
    if tag in ("I2", "III"):
        return FiberGraph((1, 1), ((0, 1, 2),))
    if tag in ("I3", "IV"):
        return FiberGraph((1, 1, 1), ((0, 1, 1), (1, 2, 1), (0, 2, 1)))
    m = _KODAIRA_IN.match(tag)
    if m and not m.group(2):
        n = int(m.group(1))
        if n < 4:
            raise ValueError(f"no dual graph for {tag!r}")
        cycle = tuple((i, (i + 1) % n, 1) for i in range(n))
        return FiberGraph((1,) * n, cycle)
    if m:
        n = int(m.group(1))
        centers = list(range(2, n + 3))
        edges = [(0, 2, 1), (1, 2, 1)]
        edges += [(i, i + 1, 1) for i in centers[:-1]]
        edges += [(centers[-1], n + 3, 1), (centers[-1], n + 4, 1)]
        return FiberGraph((1, 1) + (2,) * (n + 1) + (1, 1), tuple(edges))
    if tag == "IV*":
        return FiberGraph((1, 2, 3, 2, 1, 2, 1),
                          ((0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 4, 1),
                           (2, 5, 1), (5, 6, 1)))
    if tag == "III*":
        chain = tuple((i, i + 1, 1) for i in range(6))
        return FiberGraph((1, 2, 3, 4, 3, 2, 1, 2), chain + ((3, 7, 1),))
    if tag == "II*":
        chain = tuple((i, i + 1, 1) for i in range(7))
        return FiberGraph((1, 2, 3, 4, 5, 6, 4, 2, 3), chain + ((5, 8, 1),))
    raise ValueError(f"unknown Kodaira type {tag!r}")


_RESERVED = ("S", "F")


@dataclass(frozen=True)
class FiberSpec:
    place: str
    kodaira: str
    identity: str = ""
    components: tuple[str, ...] = ()
    count: int = 1

    def __post_init__(self) -> None:
        _, m, _ = kodaira_data(self.kodaira)
        if self.count < 1:
            raise ValueError("count must be positive")
        if self.count > 1 and m > 1:
            raise ValueError("only irreducible fibers may be bundled by count")
        if not self.components:
            if self.identity:
                raise ValueError("an identity label needs component labels")
            return
        if len(self.components) != m:
            raise ValueError(f"{self.kodaira} needs exactly {m} component labels")
        if len(set(self.components)) != m:
            raise ValueError("component labels must be distinct")
        if any(c in _RESERVED for c in self.components):
            raise ValueError("labels S and F are reserved")
        if self.identity not in self.components:
            raise ValueError("the identity component must be among the labels")
        graph = fiber_graph(self.kodaira)
        if graph.multiplicities[self.components.index(self.identity)] != 1:
            raise ValueError("the identity component must have multiplicity 1")


@dataclass(frozen=True)
class FibrationModel:
    fibers: tuple[FiberSpec, ...]
    mw_rank: int

    def __post_init__(self) -> None:
        if self.mw_rank < 0:
            raise ValueError("Mordell-Weil rank cannot be negative")
        places = [f.place for f in self.fibers]
        if len(set(places)) != len(places):
            raise ValueError("fiber places must be distinct")
        labels = [c for f in self.fibers for c in f.components]
        if len(set(labels)) != len(labels):
            raise ValueError("component labels must be distinct across fibers")
        total = sum(kodaira_data(f.kodaira)[0] * f.count for f in self.fibers)
        if total != 24:
            raise ValueError(f"Euler numbers sum to {total}; an elliptic K3 needs 24")
        if self.ns_rank > 20:
            raise ValueError("Shioda-Tate rank exceeds 20")

    @cached_property
    def ns_rank(self) -> int:
        shifted = sum((kodaira_data(f.kodaira)[1] - 1) * f.count for f in self.fibers)
        return 2 + shifted + self.mw_rank


@dataclass(frozen=True, eq=False)
class NeronSeveri:
    """Intersection lattice of a fibration with section and finite
    Mordell-Weil group, with named classes in basis coordinates.

    The basis is S, F, then the non-identity components fiber by fiber;
    vectors additionally expresses each identity component through the
    fiber class F minus its weighted siblings.
    """

    lattice: Lattice
    basis: tuple[str, ...]
    vectors: Mapping[str, tuple[int, ...]]


def build_neron_severi(model: FibrationModel) -> NeronSeveri:
    if model.mw_rank != 0:
        raise ValueError("a positive Mordell-Weil rank adds classes this "
                         "builder cannot see")
    basis: list[str] = ["S", "F"]
    placed: list[tuple[FiberSpec, FiberGraph]] = []
    for spec in model.fibers:
        graph = fiber_graph(spec.kodaira)
        check_affine(graph)
        if len(graph.multiplicities) > 1:
            if not spec.components:
                raise ValueError(
                    f"the {spec.kodaira} fiber at {spec.place} needs labeled "
                    "components to enter the intersection lattice")
            placed.append((spec, graph))
            basis.extend(c for c in spec.components if c != spec.identity)

    n = len(basis)
    pos = {label: k for k, label in enumerate(basis)}
    rows = [[0] * n for _ in range(n)]
    rows[0][0] = -2
    rows[0][1] = rows[1][0] = 1
    for spec, graph in placed:
        for c in spec.components:
            if c != spec.identity:
                rows[pos[c]][pos[c]] = -2
        for i, j, weight in graph.edges:
            a, b = spec.components[i], spec.components[j]
            if a == spec.identity or b == spec.identity:
                continue
            rows[pos[a]][pos[b]] = rows[pos[b]][pos[a]] = weight

    vectors: dict[str, tuple[int, ...]] = {}
    for k, label in enumerate(basis):
        vectors[label] = tuple(1 if i == k else 0 for i in range(n))
    for spec, graph in placed:
        identity = [0] * n
        identity[1] = 1
        for i, c in enumerate(spec.components):
            if c != spec.identity:
                identity[pos[c]] = -graph.multiplicities[i]
        vectors[spec.identity] = tuple(identity)

    lattice = Lattice(IntMatrix.from_rows(rows), "NS")
    return NeronSeveri(lattice, tuple(basis), vectors)


def extract_chain(ns: NeronSeveri, labels: Sequence[str]) -> Sublattice:
    """Sublattice spanned by named classes, required to pair as a linear
    chain of (-2)-curves: -2 on the diagonal, 1 between consecutive
    labels, 0 otherwise."""
    missing = [c for c in labels if c not in ns.vectors]
    if missing:
        raise ValueError(f"unknown classes: {', '.join(missing)}")
    cols = [ns.vectors[c] for c in labels]
    coords = IntMatrix.from_rows([[col[i] for col in cols]
                                  for i in range(ns.lattice.rank)])
    sub = Sublattice(ns.lattice, coords, label=f"chain({len(cols)})")
    gram = sub.induced_gram()
    for i in range(len(cols)):
        for j in range(len(cols)):
            want = -2 if i == j else 1 if abs(i - j) == 1 else 0
            if gram[i, j] != want:
                raise ValueError(
                    f"{labels[i]} . {labels[j]} = {gram[i, j]}; "
                    "the selection is not a linear chain of (-2)-curves")
    return sub


def _as_rational(value) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise ValueError("rationals must be integers or strings like '-27/4'")
    return Fraction(value)


def _poly_from_json(values) -> Poly:
    if not isinstance(values, list):
        raise ValueError("polynomial coefficients must form a list, "
                         "constant term first")
    return Poly.of([_as_rational(v) for v in values])


def weierstrass_from_json(text: str) -> WeierstrassModel:
    data = json.loads(text)
    if not isinstance(data, dict) or "a6" not in data:
        raise ValueError("Weierstrass JSON needs a6 and one of a4, a4_cubed")
    label = data.get("label", "")
    a6 = _poly_from_json(data["a6"])
    if ("a4" in data) == ("a4_cubed" in data):
        raise ValueError("give exactly one of a4 and a4_cubed")
    if "a4" in data:
        return WeierstrassModel.from_a4(_poly_from_json(data["a4"]), a6, label)
    return WeierstrassModel.from_a4_cubed(_as_rational(data["a4_cubed"]), a6, label)


def weierstrass_to_json(w: WeierstrassModel) -> str:
    data: dict = {"label": w.label}
    if w.a4 is not None:
        data["a4"] = [str(c) for c in w.a4.coeffs]
    else:
        if w.a4_cubed.degree > 0:
            raise ValueError("only constant a4_cubed serializes")
        value = w.a4_cubed.evaluate(0)
        data["a4_cubed"] = str(value)
    data["a6"] = [str(c) for c in w.a6.coeffs]
    return json.dumps(data, sort_keys=True)


def fibration_from_json(text: str) -> FibrationModel:
    data = json.loads(text)
    if not isinstance(data, dict) or "fibers" not in data or "mw_rank" not in data:
        raise ValueError("fibration JSON needs fibers and mw_rank")
    if not isinstance(data["fibers"], list):
        raise ValueError("fibers must form a list")
    specs = []
    for entry in data["fibers"]:
        if not isinstance(entry, dict) or "place" not in entry or "type" not in entry:
            raise ValueError("each fiber needs place and type")
        specs.append(FiberSpec(
            place=str(entry["place"]),
            kodaira=str(entry["type"]),
            identity=str(entry.get("identity", "")),
            components=tuple(str(c) for c in entry.get("components", ())),
            count=int(entry.get("count", 1)),
        ))
    mw = data["mw_rank"]
    if isinstance(mw, bool) or not isinstance(mw, (int, str)):
        raise ValueError("mw_rank must be an integer")
    return FibrationModel(tuple(specs), int(mw))


def fibration_to_json(model: FibrationModel) -> str:
    return json.dumps({
        "fibers": [
            {
                "place": f.place,
                "type": f.kodaira,
                "identity": f.identity,
                "components": list(f.components),
                "count": f.count,
            }
            for f in model.fibers
        ],
        "mw_rank": model.mw_rank,
    }, sort_keys=True)
