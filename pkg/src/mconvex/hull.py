"""
Modular convex hulls of two flags, their set-family image, and antimatroids.

A subset of a semimodular lattice is modular convex when it contains
``p v q`` and ``p ^ q`` for every modular pair ``(p, q)`` of its members.
For two flags C, D the hull is computed two ways:

* :func:`mconv_fixpoint` - generic closure, used as the oracle;
* :func:`mconv_recursive` - the top-down recursion driven by the
  Jordan-Hoelder permutation, which also yields the elements ``z_i``
  used to embed the hull into the Boolean lattice on ``[n]``.

Subsets of ``[n]`` are bitmasks with bit ``i - 1`` standing for ``i``.
"""

from __future__ import annotations

import weakref
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import AxiomViolation, NotInHull, NotPreAntimatroid, NotSemimodular
from .flags import Flag, JHPermutation, iter_flags, jordan_holder
from .lattice import (
    Lattice,
    is_join_closed,
    is_modular_pair,
    is_semimodular,
    iter_bits,
    mask_of,
    rank_modular_pair,
)

_semimodular_cache: "weakref.WeakKeyDictionary[Lattice, bool]" = weakref.WeakKeyDictionary()


def require_semimodular(L: Lattice) -> None:
    ok = _semimodular_cache.get(L)
    if ok is None:
        ok = _semimodular_cache[L] = is_semimodular(L)
    if not ok:
        raise NotSemimodular("hull operations need a semimodular lattice")


# -- set families -----------------------------------------------------------


def format_subset(mask: int) -> str:
    return "{" + ",".join(str(i + 1) for i in iter_bits(mask)) + "}"


@dataclass(frozen=True)
class SetFamily:
    """Deduplicated family of subsets of ``[n]``, sorted by (size, value)."""

    ground_size: int
    sets: tuple[int, ...]

    @classmethod
    def of(cls, ground_size: int, sets: Iterable[int]) -> "SetFamily":
        return cls(ground_size, tuple(sorted(set(sets), key=lambda s: (s.bit_count(), s))))

    @property
    def full(self) -> int:
        return (1 << self.ground_size) - 1

    def __contains__(self, s: int) -> bool:
        return s in self._lookup

    def __iter__(self) -> Iterator[int]:
        return iter(self.sets)

    def __len__(self) -> int:
        return len(self.sets)

    @property
    def _lookup(self) -> frozenset[int]:
        # cached on first use; the dataclass is frozen
        cached = self.__dict__.get("_lookup_cache")
        if cached is None:
            cached = frozenset(self.sets)
            object.__setattr__(self, "_lookup_cache", cached)
        return cached

    def as_lists(self) -> list[list[int]]:
        return [[i + 1 for i in iter_bits(s)] for s in self.sets]


@dataclass(frozen=True)
class AxiomReport:
    """Verdict of an axiom check; falsy when some axiom fails."""

    ok: bool
    axiom: str | None = None
    witness: tuple = ()

    def __bool__(self) -> bool:
        return self.ok


def _check_a1(F: SetFamily) -> AxiomReport | None:
    if 0 not in F:
        return AxiomReport(False, "A1", ("empty set missing",))
    if F.full not in F:
        return AxiomReport(False, "A1", ("ground set missing",))
    return None


def _check_a2(F: SetFamily) -> AxiomReport | None:
    sets = F.sets
    for i, x in enumerate(sets):
        for y in sets[i + 1:]:
            if (x | y) not in F:
                return AxiomReport(False, "A2", (x, y))
    return None


def _reachable_up(F: SetFamily) -> set[int]:
    """Members reachable from the empty set by single-element additions."""
    if 0 not in F:
        return set()
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for i in range(F.ground_size):
            y = x | (1 << i)
            if y != x and y in F and y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def _reachable_down(F: SetFamily) -> set[int]:
    """Members from which the ground set is reachable by single-element additions."""
    if F.full not in F:
        return set()
    seen = {F.full}
    stack = [F.full]
    while stack:
        x = stack.pop()
        for i in iter_bits(x):
            y = x & ~(1 << i)
            if y in F and y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def is_preantimatroid(F: SetFamily) -> AxiomReport:
    """Check (A1), (A2) and existence of a chain of length ``n``."""
    for check in (_check_a1, _check_a2):
        bad = check(F)
        if bad is not None:
            return bad
    if F.full not in _reachable_up(F):
        return AxiomReport(False, "A3'", ("no chain of length n",))
    return AxiomReport(True)


def is_antimatroid(F: SetFamily) -> AxiomReport:
    """Check (A1), (A2) and accessibility (A3)."""
    for check in (_check_a1, _check_a2):
        bad = check(F)
        if bad is not None:
            return bad
    for x in F.sets:
        if x and not any((x & ~(1 << i)) in F for i in iter_bits(x)):
            return AxiomReport(False, "A3", (x,))
    return AxiomReport(True)


def extract_antimatroid(K: SetFamily) -> SetFamily:
    """
    Union of all chains of length ``n`` in a pre-antimatroid.

    Such chains grow by one element per step, so a member lies on one iff
    it is reachable from the empty set by single additions and the ground
    set is reachable from it in the same way.
    """
    verdict = is_preantimatroid(K)
    if not verdict:
        raise NotPreAntimatroid(f"axiom {verdict.axiom} fails: {verdict.witness}")
    star = SetFamily.of(K.ground_size, _reachable_up(K) & _reachable_down(K))
    verdict = is_antimatroid(star)
    if not verdict:
        raise AxiomViolation(f"extracted family fails {verdict.axiom}: {verdict.witness}")
    return star


# -- hulls ------------------------------------------------------------------


def mconv_fixpoint(L: Lattice, seed: int) -> int:
    """
    Least modular convex superset of ``seed`` (a bitset).

    Uses the definitional modular-pair test, independently of the
    rank shortcut used by :func:`mconv_recursive`.
    """
    members = seed
    work = list(iter_bits(seed))
    while work:
        u = work.pop()
        for v in list(iter_bits(members)):
            if v == u or L.comparable(u, v) or not is_modular_pair(L, u, v):
                continue
            for w in (L.join(u, v), L.meet(u, v)):
                if not (members >> w) & 1:
                    members |= 1 << w
                    work.append(w)
    return members


def _modular(L: Lattice, p: int, q: int) -> bool:
    ok = rank_modular_pair(L, p, q)
    assert ok == is_modular_pair(L, p, q), f"modular-pair tests disagree on {(p, q)}"
    return ok


def compute_z(
    L: Lattice, C: Flag, D: Flag, sigma: JHPermutation | None = None
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """
    ``z_i = c_{sigma(i)-1} v d_{i-1}`` and ``z'_i = c_{sigma(i)} v d_i``.

    Returned as 0-based tuples: ``z[i - 1]`` is z_i.
    """
    if sigma is None:
        sigma = jordan_holder(L, C, D)
    n = len(C) - 1
    z, zp = [], []
    for i in range(1, n + 1):
        j = sigma(i)
        upper = L.join(C[j], D[i])
        assert upper == L.join(C[j], D[i - 1])
        lower = L.join(C[j - 1], D[i - 1])
        # lower is the largest element of the chain C v d_{i-1} not above d_i
        assert not L.leq(D[i], lower) and L.leq(D[i], upper)
        assert L.covers_pair(lower, upper)
        z.append(lower)
        zp.append(upper)
    return tuple(z), tuple(zp)


@dataclass(frozen=True)
class HullResult:
    members: int
    z: tuple[int, ...]
    z_prime: tuple[int, ...]
    sigma: JHPermutation
    C: Flag
    D: Flag
    # levels[i - 1] is the bitset M_i; levels[-1] is M_n
    levels: tuple[int, ...] = field(default=(), repr=False)

    @property
    def n(self) -> int:
        return len(self.z)

    def __contains__(self, u: int) -> bool:
        return (self.members >> u) & 1 == 1

    def elements(self) -> list[int]:
        return list(iter_bits(self.members))


def mconv_recursive(L: Lattice, C: Flag, D: Flag) -> HullResult:
    """
    Modular convex hull of ``C`` and ``D`` by the descending recursion

        M_n = {d_{n-1}, d_n}
        M_i = M_{i+1} + { q ^ z_i : q in [d_i, z'_i] & M_{i+1}, (q, z_i) modular }

    The result is M_1.
    """
    require_semimodular(L)
    sigma = jordan_holder(L, C, D)
    z, zp = compute_z(L, C, D, sigma)
    n = len(C) - 1
    if n == 0:
        return HullResult(1 << L.bottom, z, zp, sigma, C, D, ())
    # at the first level the window [d_1, z'_1] is [d_1, c_{sigma(1)}]
    assert zp[0] == C[sigma(1)]

    current = (1 << D[n - 1]) | (1 << D[n])
    levels = [current]
    for i in range(n - 1, 0, -1):
        zi = z[i - 1]
        window = current & L.up[D[i]] & L.down[zp[i - 1]]
        added = 0
        for q in iter_bits(window):
            if _modular(L, q, zi):
                added |= 1 << L.meet(q, zi)
        current |= added
        levels.append(current)
    levels.reverse()
    return HullResult(current, z, zp, sigma, C, D, tuple(levels))


def delta_step(L: Lattice, C: Flag, D: Flag) -> tuple[int, int, int]:
    """
    One level of the recursion, computed independently from the fixpoint.

    Returns ``(inner, delta, k)`` where ``inner`` is the hull of the flags
    ``C v d_1`` and ``D v d_1`` of the upper interval ``[d_1, 1]``, ``k`` is
    the largest index with ``c_k`` not above ``d_1`` and ``delta`` is
    ``{ c_k ^ q : q in [d_1, c_{k+1}] & inner, (c_k, q) modular }``.
    """
    d1 = D[1]
    lifted = mask_of(L.join(c, d1) for c in C)
    inner = mconv_fixpoint(L, lifted | mask_of(D[1:]))
    k = max(i for i, c in enumerate(C) if not L.leq(d1, c))
    ck = C[k]
    delta = 0
    for q in iter_bits(inner & L.up[d1] & L.down[C[k + 1]]):
        if is_modular_pair(L, ck, q):
            delta |= 1 << L.meet(ck, q)
    return inner, delta, k


def phi(L: Lattice, hull: HullResult, u: int) -> int:
    """Bitmask of ``{ i : z_i >= u }``."""
    if u not in hull:
        raise NotInHull(f"element {u} is not in the hull")
    out = 0
    for i, zi in enumerate(hull.z):
        if L.leq(u, zi):
            out |= 1 << i
    return out


def phi_bar(L: Lattice, hull: HullResult, u: int) -> int:
    return ((1 << hull.n) - 1) & ~phi(L, hull, u)


def hull_embedding(L: Lattice, hull: HullResult) -> dict[int, int]:
    """Element -> complemented phi image, for every hull member."""
    return {u: phi_bar(L, hull, u) for u in hull.elements()}


def hull_as_preantimatroid(L: Lattice, hull: HullResult) -> SetFamily:
    """
    Image of the hull under the complemented phi map, checked to be a
    pre-antimatroid and an order isomorphism that turns rank into size.
    """
    emb = hull_embedding(L, hull)
    fam = SetFamily.of(hull.n, emb.values())
    if len(fam) != len(emb):
        raise AxiomViolation("phi is not injective on the hull")
    for u, s in emb.items():
        if s.bit_count() != L.rank[u]:
            raise AxiomViolation(f"|phi_bar({u})| = {s.bit_count()} != rank {L.rank[u]}")
    for u, su in emb.items():
        for v, sv in emb.items():
            if L.leq(u, v) != (su & ~sv == 0):
                raise AxiomViolation(f"order not preserved between {u} and {v}")
    verdict = is_preantimatroid(fam)
    if not verdict:
        raise AxiomViolation(f"image fails {verdict.axiom}: {verdict.witness}")
    return fam


def hull_flags(L: Lattice, hull: HullResult) -> Iterator[Flag]:
    return iter_flags(L, within=hull.members)


def hull_is_modular_convex(L: Lattice, members: int) -> bool:
    elems = list(iter_bits(members))
    for i, u in enumerate(elems):
        for v in elems[i + 1:]:
            if is_modular_pair(L, u, v):
                if not (members >> L.join(u, v)) & 1 or not (members >> L.meet(u, v)) & 1:
                    return False
    return True


__all__ = [
    "AxiomReport",
    "HullResult",
    "SetFamily",
    "compute_z",
    "delta_step",
    "extract_antimatroid",
    "format_subset",
    "hull_as_preantimatroid",
    "hull_embedding",
    "hull_flags",
    "hull_is_modular_convex",
    "is_antimatroid",
    "is_join_closed",
    "is_preantimatroid",
    "mconv_fixpoint",
    "mconv_recursive",
    "phi",
    "phi_bar",
    "require_semimodular",
]
