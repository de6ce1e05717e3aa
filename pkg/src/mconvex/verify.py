"""
Brute-force verification harness.

Each ``verify_*`` suite sweeps flag pairs of one lattice and records, per
named check, how many pairs passed and failed along with the first
counterexample (self-contained: lattice document plus both flags).

Pairs are ordered ``(C, D)`` including ``C == D``.  When the number of
pairs is within ``pair_budget`` the sweep is exhaustive; otherwise a
seeded uniform sample without replacement is taken.  If the lattice has
more than ``flag_budget`` flags, pairs of uniformly random flags are
drawn instead.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .errors import AxiomViolation, LatticeError, NotModularLattice
from .flags import (
    DEFAULT_FLAG_CAP,
    Flag,
    count_flags,
    enumerate_flags,
    flag_distance,
    gallery_distance_bfs,
    iter_flags,
    jordan_holder,
    sample_flag,
    shortest_gallery_flags,
)
from .generators import GeneratorSpec, Lcg
from .hull import (
    SetFamily,
    delta_step,
    extract_antimatroid,
    hull_as_preantimatroid,
    hull_embedding,
    hull_is_modular_convex,
    is_antimatroid,
    mconv_fixpoint,
    mconv_recursive,
    phi,
    require_semimodular,
)
from .io import lattice_to_dict
from .lattice import (
    Lattice,
    distributivity_violation,
    is_join_closed,
    is_modular_lattice,
    is_semimodular,
    iter_bits,
    mask_of,
    sublattice_closure,
)

DEFAULT_PAIR_BUDGET = 10**4
DEFAULT_FLAG_BUDGET = 10**4

SUITES = ("distance", "main", "lemmas", "modular")

# Every check in the shipped corpus must stay green.
DEFAULT_CORPUS = (
    "chain:3",
    "boolean:1",
    "boolean:2",
    "boolean:3",
    "boolean:4",
    "partition:2",
    "partition:3",
    "partition:4",
    "binary_subspace:1",
    "binary_subspace:2",
    "binary_subspace:3",
    "product:3",
    "antimatroid_poset:5:0",
    "antimatroid_poset:5:5",
    "antimatroid_poset:6:0",
    "antimatroid_poset:6:1",
    "antimatroid_poset:6:9",
    "antimatroid_shelling:4:0",
    "antimatroid_shelling:5:0",
    "antimatroid_shelling:5:3",
    "antimatroid_shelling:5:7",
    "antimatroid_shelling:6:8",
)


@dataclass
class CheckResult:
    name: str
    pass_count: int = 0
    fail_count: int = 0
    first_counterexample: dict | None = None

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "pass": self.pass_count,
            "fail": self.fail_count,
            "first_counterexample": self.first_counterexample,
        }


@dataclass
class VerificationReport:
    lattice_id: str
    suite: str
    flag_count: int | None = None
    flag_pair_count: int = 0
    exhaustive: bool = True
    skipped: str | None = None
    checks: list[CheckResult] = field(default_factory=list)
    wall_time: float | None = None

    @property
    def failures(self) -> int:
        return sum(c.fail_count for c in self.checks)

    def check(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        c = CheckResult(name)
        self.checks.append(c)
        return c

    def to_dict(self, include_timing: bool = False) -> dict:
        doc = {
            "lattice": self.lattice_id,
            "suite": self.suite,
            "flag_count": self.flag_count,
            "flag_pair_count": self.flag_pair_count,
            "exhaustive": self.exhaustive,
            "skipped": self.skipped,
            "failures": self.failures,
            "checks": [c.to_dict() for c in self.checks],
        }
        if include_timing:
            doc["wall_time"] = self.wall_time
        return doc


def select_pairs(
    L: Lattice, pair_budget: int, seed: int, flag_budget: int = DEFAULT_FLAG_BUDGET
) -> tuple[list[tuple[Flag, Flag]], int | None, bool]:
    """Return ``(pairs, flag_count, exhaustive)``; see module docstring."""
    total_flags = count_flags(L)
    rng = Lcg(seed)
    if total_flags > flag_budget:
        pairs = [(sample_flag(L, rng.below), sample_flag(L, rng.below)) for _ in range(pair_budget)]
        return pairs, total_flags, False
    flags = enumerate_flags(L, cap=flag_budget)
    total = len(flags) ** 2
    if total <= pair_budget:
        return [(C, D) for C in flags for D in flags], len(flags), True
    picks = sorted(rng.sample(total, pair_budget))
    return [(flags[i // len(flags)], flags[i % len(flags)]) for i in picks], len(flags), False


def _counterexample(L: Lattice, C: Flag, D: Flag, detail: str) -> dict:
    return {"lattice": lattice_to_dict(L), "C": list(C), "D": list(D), "detail": detail}


def _sweep(
    suite: str,
    L: Lattice,
    lattice_id: str,
    pair_budget: int,
    seed: int,
    flag_budget: int,
    per_pair: Callable[[Flag, Flag], Iterable[tuple[str, bool, str]]],
) -> VerificationReport:
    start = time.perf_counter()
    pairs, nflags, exhaustive = select_pairs(L, pair_budget, seed, flag_budget)
    report = VerificationReport(lattice_id, suite, nflags, len(pairs), exhaustive)
    for C, D in pairs:
        try:
            outcomes = list(per_pair(C, D))
        except (LatticeError, AssertionError) as exc:
            outcomes = [("no_exception", False, f"{type(exc).__name__}: {exc}")]
        else:
            outcomes.append(("no_exception", True, ""))
        for name, ok, detail in outcomes:
            c = report.check(name)
            if ok:
                c.pass_count += 1
            else:
                c.fail_count += 1
                if c.first_counterexample is None:
                    c.first_counterexample = _counterexample(L, C, D, detail)
    report.wall_time = time.perf_counter() - start
    return report


def _fmt(mask: int) -> str:
    return str(list(iter_bits(mask)))


# -- suites -----------------------------------------------------------------


def verify_theorem_distance(
    L: Lattice, pair_budget: int = DEFAULT_PAIR_BUDGET, seed: int = 0,
    flag_budget: int = DEFAULT_FLAG_BUDGET, lattice_id: str = "lattice",
) -> VerificationReport:
    """Inversion number of the Jordan-Hoelder permutation equals BFS gallery distance."""
    require_semimodular(L)

    def per_pair(C, D):
        inv = jordan_holder(L, C, D).inversions
        bfs = gallery_distance_bfs(L, C, D, budget=max(DEFAULT_FLAG_CAP, flag_budget))
        yield "inversions_eq_bfs", inv == bfs, f"inversions={inv} bfs={bfs}"
        back = flag_distance(L, D, C)
        yield "distance_symmetric", back == inv, f"d(C,D)={inv} d(D,C)={back}"

    return _sweep("distance", L, lattice_id, pair_budget, seed, flag_budget, per_pair)


def verify_theorem_main(
    L: Lattice, pair_budget: int = DEFAULT_PAIR_BUDGET, seed: int = 0,
    flag_budget: int = DEFAULT_FLAG_BUDGET, lattice_id: str = "lattice",
) -> VerificationReport:
    """
    Hull image is a pre-antimatroid; hull flags are exactly the flags on
    shortest galleries; and those flags map onto the extracted antimatroid.
    """
    require_semimodular(L)

    def per_pair(C, D):
        hull = mconv_recursive(L, C, D)
        try:
            K = hull_as_preantimatroid(L, hull)
        except AxiomViolation as exc:
            yield "preantimatroid_image", False, str(exc)
            return
        yield "preantimatroid_image", True, ""

        _, on_gallery = shortest_gallery_flags(L, C, D, budget=max(DEFAULT_FLAG_CAP, flag_budget))
        in_hull = set(iter_flags(L, within=hull.members))
        yield (
            "hull_flags_eq_gallery_flags",
            in_hull == on_gallery,
            f"hull-only={sorted(in_hull - on_gallery)[:3]} gallery-only={sorted(on_gallery - in_hull)[:3]}",
        )

        star = extract_antimatroid(K)
        yield "kstar_is_antimatroid", bool(is_antimatroid(star)), ""
        if is_antimatroid(K):
            yield "kstar_eq_k_when_antimatroid", star == K, ""

        union = mask_of(e for F in on_gallery for e in F)
        if union & ~hull.members:
            yield "gallery_union_eq_kstar", False, f"gallery elements outside hull: {_fmt(union & ~hull.members)}"
            return
        emb = hull_embedding(L, hull)
        image = SetFamily.of(hull.n, (emb[u] for u in iter_bits(union)))
        yield "gallery_union_eq_kstar", image == star, f"image={image.sets} kstar={star.sets}"

    return _sweep("main", L, lattice_id, pair_budget, seed, flag_budget, per_pair)


def verify_lemmas(
    L: Lattice, pair_budget: int = DEFAULT_PAIR_BUDGET, seed: int = 0,
    flag_budget: int = DEFAULT_FLAG_BUDGET, lattice_id: str = "lattice",
) -> VerificationReport:
    require_semimodular(L)

    def per_pair(C, D):
        hull = mconv_recursive(L, C, D)
        seed_mask = mask_of(C) | mask_of(D)
        oracle = mconv_fixpoint(L, seed_mask)
        yield "fixpoint_eq_recursive", oracle == hull.members, f"fixpoint={_fmt(oracle)} recursive={_fmt(hull.members)}"
        yield "join_closed", is_join_closed(L, hull.members), _fmt(hull.members)
        yield "modular_convex", hull_is_modular_convex(L, hull.members), _fmt(hull.members)
        yield "contains_flags", seed_mask & ~hull.members == 0, ""

        chain_ok = all(a & ~b == 0 for a, b in zip(hull.levels[1:], hull.levels))
        yield "levels_monotone", chain_ok and (not hull.levels or hull.levels[0] == hull.members), ""

        if len(C) > 1:
            inner, delta, _ = delta_step(L, C, D)
            yield "delta_decomposition", inner | delta == oracle, f"inner={_fmt(inner)} delta={_fmt(delta)}"

        yield "z_prime_covers_z", all(L.covers_pair(a, b) for a, b in zip(hull.z, hull.z_prime)), ""

        n = hull.n
        images = {u: phi(L, hull, u) for u in hull.elements()}
        rank_ok = all(L.rank[u] == n - s.bit_count() for u, s in images.items())
        yield "rank_eq_n_minus_phi", rank_ok, ""
        join_ok = all(
            images.get(L.join(u, v)) == images[u] & images[v] for u in images for v in images
        )
        yield "phi_join_is_intersection", join_ok, ""
        yield "phi_injective", len(set(images.values())) == len(images), ""

    return _sweep("lemmas", L, lattice_id, pair_budget, seed, flag_budget, per_pair)


def verify_theorem_modular(
    L: Lattice, pair_budget: int = DEFAULT_PAIR_BUDGET, seed: int = 0,
    flag_budget: int = DEFAULT_FLAG_BUDGET, lattice_id: str = "lattice",
) -> VerificationReport:
    """On a modular lattice the hull is the sublattice generated by C and D, and it is distributive."""
    if not is_modular_lattice(L):
        raise NotModularLattice("lattice has a non-modular pair")

    def per_pair(C, D):
        hull = mconv_recursive(L, C, D)
        gen = sublattice_closure(L, mask_of(C) | mask_of(D))
        yield "hull_eq_generated_sublattice", gen == hull.members, f"generated={_fmt(gen)} hull={_fmt(hull.members)}"
        bad = distributivity_violation(L, gen)
        yield "generated_sublattice_distributive", bad is None, f"triple={bad}"

    return _sweep("modular", L, lattice_id, pair_budget, seed, flag_budget, per_pair)


SUITE_FUNCTIONS = {
    "distance": verify_theorem_distance,
    "main": verify_theorem_main,
    "lemmas": verify_lemmas,
    "modular": verify_theorem_modular,
}


def verify_lattice(
    L: Lattice, lattice_id: str, suites: Iterable[str] = SUITES,
    pair_budget: int = DEFAULT_PAIR_BUDGET, seed: int = 0,
    flag_budget: int = DEFAULT_FLAG_BUDGET,
) -> list[VerificationReport]:
    """Run the requested suites, skipping those whose preconditions fail."""
    semimodular = is_semimodular(L)
    modular = semimodular and is_modular_lattice(L)
    out = []
    for name in suites:
        if not semimodular:
            out.append(VerificationReport(lattice_id, name, skipped="not semimodular"))
        elif name == "modular" and not modular:
            out.append(VerificationReport(lattice_id, name, skipped="not modular"))
        else:
            out.append(SUITE_FUNCTIONS[name](L, pair_budget, seed, flag_budget, lattice_id))
    return out


def verify_corpus(
    corpus: Iterable[str | GeneratorSpec] = DEFAULT_CORPUS,
    suites: Iterable[str] = SUITES,
    pair_budget: int = DEFAULT_PAIR_BUDGET,
    seed: int = 0,
    flag_budget: int = DEFAULT_FLAG_BUDGET,
) -> list[VerificationReport]:
    suites = tuple(suites)
    reports = []
    for entry in corpus:
        spec = GeneratorSpec.parse(entry) if isinstance(entry, str) else entry
        reports += verify_lattice(spec.build(), str(spec), suites, pair_budget, seed, flag_budget)
    return reports


def report_document(
    reports: list[VerificationReport], seed: int, pair_budget: int, flag_budget: int,
    include_timing: bool = False,
) -> dict:
    return {
        "seed": seed,
        "pair_budget": pair_budget,
        "flag_budget": flag_budget,
        "total_failures": sum(r.failures for r in reports),
        "reports": [r.to_dict(include_timing) for r in reports],
    }


def summary_table(reports: list[VerificationReport], include_timing: bool = False) -> str:
    rows = [("lattice", "suite", "pairs", "checks", "failures", "status")]
    for r in reports:
        if r.skipped:
            status = f"skipped: {r.skipped}"
        else:
            status = "PASS" if r.failures == 0 else "FAIL"
            if include_timing and r.wall_time is not None:
                status += f" ({r.wall_time:.2f}s)"
        pairs = str(r.flag_pair_count) + ("" if r.exhaustive else "*")
        rows.append((r.lattice_id, r.suite, pairs, str(len(r.checks)), str(r.failures), status))
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows]
    lines.insert(1, "  ".join("-" * w for w in widths))
    if any(not r.exhaustive for r in reports if not r.skipped):
        lines.append("* sampled")
    return "\n".join(lines) + "\n"
