"""The full verification pipeline behind the command line front end.

Every check recomputes its claim from scratch through the public API
and records the computed values as strings, so the JSON report is
deterministic and loses no precision.  The perturb flag flips one Gram
entry of the A15 chain lattice before checking; it exists as a negative
control for the exit-code contract."""

from __future__ import annotations

import datetime
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from . import __version__
from .intmat import NO_SOLUTION, IntMatrix, det_exact, solve_rational
from .lattices import Lattice, direct_sum, discriminant_group, make_named, signature
from .fibration import analyze_k3
from .fixedlocus import (
    count_check,
    fixed_locus_table,
    fixed_pair_search,
    lefschetz_check,
    table_rows,
)
from .fixtures import (
    CHAINS,
    EXPECTED_P26,
    EXPECTED_P35,
    EXPECTED_P44,
    chain_glue,
    chain_sublattice,
    glue_target,
    overlattice_pair,
    reference_neron_severi,
    reference_walk,
    weierstrass_model,
)
from .sublattices import Overlattice, half_sum_search, is_primitive


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    anchor: str
    passed: bool
    values: tuple[tuple[str, str], ...]


@dataclass(frozen=True)
class VerificationReport:
    version: str
    timestamp: str
    checks: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "version": self.version,
            "timestamp": self.timestamp,
            "passed": self.passed,
            "checks": [
                {
                    "id": c.check_id,
                    "anchor": c.anchor,
                    "status": "pass" if c.passed else "fail",
                    "values": dict(c.values),
                }
                for c in self.checks
            ],
        }

    def render_text(self) -> str:
        lines = []
        for c in self.checks:
            lines.append(f"{'PASS' if c.passed else 'FAIL'}  {c.check_id}  {c.anchor}")
            if not c.passed:
                for key, value in c.values:
                    lines.append(f"      {key} = {value}")
        verdict = "all checks passed" if self.passed else "verification FAILED"
        lines.append(f"{len(self.checks)} checks: {verdict}")
        return "\n".join(lines)


def _mirror(vector: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
    # the Dynkin involution of the A15 summand; the rank-1 slot stays put
    return tuple(vector[14 - i] for i in range(15)) + (vector[15],)

def _overlattice_contains(over: Overlattice, vector: tuple[Fraction, ...]) -> bool:
    scale = lcm(*(x.denominator for row in over.basis for x in row),
                *(x.denominator for x in vector))
    columns = IntMatrix.from_rows(
        [[int(row[i] * scale) for row in over.basis] for i in range(len(vector))])
    solution = solve_rational(columns, [int(x * scale) for x in vector])
    if solution is NO_SOLUTION:
        return False
    return all(x.denominator == 1 for x in solution)


def run_verification(perturb: bool = False) -> VerificationReport:
    checks: list[CheckResult] = []

    def add(check_id: str, anchor: str, passed: bool, values: dict) -> None:
        pairs = tuple(sorted((k, str(v)) for k, v in values.items()))
        checks.append(CheckResult(check_id, anchor, bool(passed), pairs))

    a15 = make_named("A15")
    if perturb:
        rows = [list(r) for r in a15.gram.entries]
        rows[0][0] = -4
        a15 = Lattice(IntMatrix.from_rows(rows), "A15 (perturbed)")
    group = discriminant_group(a15)
    add("01-a15", "|det A15| = 16 with discriminant group Z/16",
        abs(a15.det) == 16 and group.invariant_factors == (16,),
        {"det": a15.det, "invariant_factors": group.invariant_factors})

    s_lattice = direct_sum(make_named("U"), make_named("E8"), make_named("A6"))
    sig = signature(s_lattice)
    add("02-s-lattice", "U + E8 + A6 has det -7, signature (1, 15), and is even",
        s_lattice.det == -7 and (sig.positive, sig.negative, sig.zero) == (1, 15, 0)
        and s_lattice.is_even,
        {"det": s_lattice.det, "signature": (sig.positive, sig.negative, sig.zero),
         "even": s_lattice.is_even})

    k7 = make_named("K7")
    k7_sig = signature(k7)
    add("03-k7", "K7 = [[-4, 1], [1, -2]] is even, negative definite, |det| = 7",
        k7.is_even and (k7_sig.positive, k7_sig.negative) == (0, 2)
        and abs(k7.det) == 7,
        {"det": k7.det, "signature": (k7_sig.positive, k7_sig.negative, k7_sig.zero),
         "even": k7.is_even})

    first = analyze_k3(weierstrass_model("i7e8"))
    shape = tuple((r.place, r.kodaira, r.count) for r in first.fibers)
    add("04-fibers-i7e8",
        "i7e8: I7 at t = 0, II* at infinity, 7 I1 on t^7 - 2, Euler 24, MW 0",
        shape == (("0", "I7", 1), ("t^7 - 2", "I1", 7), ("inf", "II*", 1))
        and first.euler_total == 24 and first.mw_rank == 0,
        {"fibers": shape, "euler": first.euler_total, "mw_rank": first.mw_rank})

    second = analyze_k3(weierstrass_model("e7e6"))
    shape = tuple((r.place, r.kodaira, r.count) for r in second.fibers)
    add("05-fibers-e7e6",
        "e7e6: III* at t = 0, IV* at infinity, 7 I1 on 27*t^7 + 4, MW 1",
        shape == (("0", "III*", 1), ("27*t^7 + 4", "I1", 7), ("inf", "IV*", 1))
        and second.euler_total == 24 and second.mw_rank == 1,
        {"fibers": shape, "euler": second.euler_total, "mw_rank": second.mw_rank})

    ns = reference_neron_severi()
    ns_sig = signature(ns.lattice)
    add("06-neron-severi",
        "the intersection lattice of i7e8 has rank 16, det -7, and is even",
        ns.lattice.rank == 16 and ns.lattice.det == s_lattice.det
        and ns.lattice.is_even
        and (ns_sig.positive, ns_sig.negative) == (1, 15),
        {"rank": ns.lattice.rank, "det": ns.lattice.det,
         "signature": (ns_sig.positive, ns_sig.negative, ns_sig.zero)})

    chain_ok = True
    chain_values = {}
    for name in CHAINS:
        sub = chain_sublattice(name)
        primitive, _ = is_primitive(sub)
        half = half_sum_search(sub)
        chain_ok &= sub.induced_gram() == make_named("A15").gram
        chain_ok &= primitive and not half
        chain_values[name] = f"A15={sub.induced_gram() == make_named('A15').gram} " \
                             f"primitive={primitive} half_sums={len(half)}"
    add("07-chains",
        "both 15-chains induce A15 primitively, with no half-integral sums",
        chain_ok, chain_values)

    glue_ok = True
    glue_values = {}
    for name in CHAINS:
        sol = chain_glue(name)
        h_sq = ns.lattice.pairing(sol.H, sol.H)
        a1 = sol.a[0]
        residues = all(sol.a[i] == (i + 1) * a1 % sol.n for i in range(15))
        basis = IntMatrix.from_rows(
            [[chain_sublattice(name).coords[i, j] for j in range(15)] + [sol.h_plus[i]]
             for i in range(16)])
        gram = basis.transpose() @ ns.lattice.gram @ basis
        glue_ok &= (sol.n == 16 and h_sq == 112 and 16 * h_sq == 7 * sol.n ** 2
                    and residues and a1 % 16 in (3, 13)
                    and det_exact(gram) == ns.lattice.det)
        glue_values[name] = f"n={sol.n} H^2={h_sq} a1={a1} basis_det={det_exact(gram)}"
    add("08-glue",
        "index 16, H^2 = 112, 16 H^2 = 7 n^2, a_i = i a1, a1 = +-3 mod 16, "
        "h+ integral, {C_i, h+} spans", glue_ok, glue_values)

    pair = overlattice_pair()
    swapped = False
    if len(pair) == 2:
        one, two = pair
        swapped = (_overlattice_contains(two, _mirror(one.glue))
                   and _overlattice_contains(one, _mirror(two.glue))
                   and not _overlattice_contains(one, _mirror(one.glue))
                   and not _overlattice_contains(two, _mirror(two.glue)))
    even_dets = all(o.index == 16 and abs(det_exact(o.gram)) == 7 for o in pair)
    add("09-overlattices",
        "A15 + Z(112) has exactly two even index-16 overlattices, swapped by "
        "the Dynkin involution",
        len(pair) == 2 and swapped and even_dets,
        {"count": len(pair), "dynkin_swapped": swapped})

    expected_counts = {
        "U + K7": (2, 1, 0), "U(7) + K7": (2, 1, 0),
        "U + E8": (4, 3, 1), "U(7) + E8": (4, 3, 1),
        "U + E8 + A6": (6, 5, 2),
    }
    table_ok = True
    totals = []
    for name in table_rows():
        profile = fixed_locus_table(name)
        table_ok &= (profile.n26, profile.n35, profile.n44) == expected_counts[name]
        totals.append(profile.points)
    table_ok &= totals == [3, 3, 8, 8, 13]
    add("10-fixed-locus",
        "the five rows count (2,1,0), (2,1,0), (4,3,1), (4,3,1), (6,5,2) "
        "isolated points, 3 + 3 + 8 + 8 + 13 in total",
        table_ok, {"point_totals": totals})

    lefschetz_ok = all(
        lefschetz_check(fixed_locus_table(name), 22 - fixed_locus_table(name).rank)
        for name in table_rows())
    add("11-lefschetz",
        "the fixed-locus Euler number equals 2 + r - (22 - r)/6 on every row",
        lefschetz_ok, {"rows": len(table_rows())})

    walk = reference_walk()
    placement_ok = (walk.consistent
                    and walk.isolated("P26") == EXPECTED_P26
                    and walk.isolated("P35") == EXPECTED_P35
                    and walk.isolated("P44") == EXPECTED_P44
                    and walk.fixed_curves == ("G7", "T6")
                    and count_check(walk, fixed_locus_table("U + E8 + A6")))
    pairs = fixed_pair_search(15)
    search_ok = (pairs == [(3, 10), (4, 11), (5, 12), (6, 13)]
                 and all(q - p == 7 for p, q in pairs))
    add("12-walk",
        "the reference walk reproduces the known placement of 13 points and "
        "2 fixed curves; a 15-chain closes only with fixed curves 7 apart",
        placement_ok and search_ok,
        {"counts": walk.counts(), "positions": pairs})

    timestamp = datetime.datetime.now(datetime.timezone.utc).isoformat(
        timespec="seconds")
    return VerificationReport(__version__, timestamp, tuple(checks))
