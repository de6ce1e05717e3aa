"""
Finite lattices given by their cover relation (Hasse diagram).

Elements are the dense integer ids ``0 .. m-1``.  Every order-theoretic
table is computed once at construction and the resulting :class:`Lattice`
is immutable, so it can be shared freely between threads.

Subsets of elements are passed around as Python ints used as bitsets
(bit ``p`` set means element ``p`` is a member).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import (
    MultipleBottoms,
    MultipleTops,
    NoUniqueBound,
    NotAPoset,
    NotComparable,
    RedundantCover,
    TooLarge,
)

DEFAULT_MAX_ELEMENTS = 2**16


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of set bits in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(elements: Iterable[int]) -> int:
    mask = 0
    for e in elements:
        mask |= 1 << e
    return mask


@dataclass(frozen=True, eq=False)
class Lattice:
    element_count: int
    covers: tuple[tuple[int, int], ...]
    upper_covers: tuple[tuple[int, ...], ...]
    lower_covers: tuple[tuple[int, ...], ...]
    up: tuple[int, ...]  # up[p]: bitset of all q >= p
    down: tuple[int, ...]  # down[p]: bitset of all q <= p
    rank: tuple[int, ...]
    join_table: tuple[tuple[int, ...], ...]
    meet_table: tuple[tuple[int, ...], ...]
    bottom: int
    top: int
    labels: tuple[str, ...] | None = None

    @property
    def n(self) -> int:
        """Rank of the lattice (rank of the top element)."""
        return self.rank[self.top]

    @property
    def all_mask(self) -> int:
        return (1 << self.element_count) - 1

    def __len__(self) -> int:
        return self.element_count

    def leq(self, p: int, q: int) -> bool:
        return (self.up[p] >> q) & 1 == 1

    def lt(self, p: int, q: int) -> bool:
        return p != q and self.leq(p, q)

    def comparable(self, p: int, q: int) -> bool:
        return self.leq(p, q) or self.leq(q, p)

    def covers_pair(self, lower: int, upper: int) -> bool:
        """True iff ``upper`` covers ``lower``."""
        return upper in self.upper_covers[lower]

    def join(self, p: int, q: int) -> int:
        return self.join_table[p][q]

    def meet(self, p: int, q: int) -> int:
        return self.meet_table[p][q]

    def join_all(self, elements: Iterable[int]) -> int:
        acc = self.bottom
        for e in elements:
            acc = self.join_table[acc][e]
        return acc

    def meet_all(self, elements: Iterable[int]) -> int:
        acc = self.top
        for e in elements:
            acc = self.meet_table[acc][e]
        return acc

    def label(self, p: int) -> str:
        return self.labels[p] if self.labels is not None else str(p)

    def __repr__(self) -> str:
        return f"Lattice(elements={self.element_count}, rank={self.n})"


@dataclass(frozen=True)
class Interval:
    lo: int
    hi: int
    members: int

    def __contains__(self, p: int) -> bool:
        return (self.members >> p) & 1 == 1

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.members)

    def __len__(self) -> int:
        return self.members.bit_count()


def build_lattice(
    covers: Iterable[Sequence[int]],
    element_count: int,
    labels: Sequence[str] | None = None,
    max_elements: int = DEFAULT_MAX_ELEMENTS,
) -> Lattice:
    """
    Validate a cover relation and precompute order, rank, join and meet.

    Raises one of the :mod:`mconvex.errors` construction errors when the
    input is not the Hasse diagram of a finite lattice.
    """
    m = int(element_count)
    if m < 1:
        raise ValueError("element_count must be positive")
    if m > max_elements:
        raise TooLarge(f"{m} elements exceeds the limit of {max_elements}")
    if labels is not None and len(labels) != m:
        raise ValueError("labels must have one entry per element")

    pairs: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    ups: list[list[int]] = [[] for _ in range(m)]
    lows: list[list[int]] = [[] for _ in range(m)]
    for raw in covers:
        a, b = (int(x) for x in raw)
        if not (0 <= a < m and 0 <= b < m):
            raise ValueError(f"cover {(a, b)} references an id outside [0, {m})")
        if a == b:
            raise NotAPoset(f"self-cover on element {a}", (a, b))
        if (a, b) in seen:
            raise RedundantCover(f"duplicate cover {(a, b)}", (a, b))
        seen.add((a, b))
        pairs.append((a, b))
        ups[a].append(b)
        lows[b].append(a)

    # Kahn's algorithm; leftovers mean a cycle.
    indeg = [len(lows[p]) for p in range(m)]
    queue = deque(p for p in range(m) if indeg[p] == 0)
    topo: list[int] = []
    while queue:
        p = queue.popleft()
        topo.append(p)
        for q in ups[p]:
            indeg[q] -= 1
            if indeg[q] == 0:
                queue.append(q)
    if len(topo) != m:
        stuck = {p for p in range(m) if indeg[p] > 0}
        bad = next((a, b) for a, b in pairs if a in stuck and b in stuck)
        raise NotAPoset(f"cover relation has a cycle through {bad}", bad)

    bottoms = [p for p in range(m) if not lows[p]]
    tops = [p for p in range(m) if not ups[p]]
    if len(bottoms) > 1:
        raise MultipleBottoms(f"minimal elements {bottoms} have no meet", tuple(bottoms[:2]))
    if len(tops) > 1:
        raise MultipleTops(f"maximal elements {tops} have no join", tuple(tops[:2]))

    up = [0] * m
    for p in reversed(topo):
        mask = 1 << p
        for q in ups[p]:
            mask |= up[q]
        up[p] = mask
    down = [0] * m
    for p in topo:
        mask = 1 << p
        for q in lows[p]:
            mask |= down[q]
        down[p] = mask

    for a, b in pairs:
        for c in ups[a]:
            if c != b and (up[c] >> b) & 1:
                raise RedundantCover(
                    f"cover {(a, b)} is implied by {a} < {c} <= {b}", (a, b)
                )

    rank = [0] * m
    for p in topo:
        for q in ups[p]:
            if rank[q] < rank[p] + 1:
                rank[q] = rank[p] + 1

    # Re-encode bitsets with bit positions sorted by rank, so that the
    # lowest (highest) set bit of an up-set (down-set) intersection is a
    # candidate least (greatest) element.
    by_rank = sorted(range(m), key=lambda p: (rank[p], p))
    pos = [0] * m
    for i, p in enumerate(by_rank):
        pos[p] = i

    def recode(mask: int) -> int:
        out = 0
        for e in iter_bits(mask):
            out |= 1 << pos[e]
        return out

    up_r = [recode(x) for x in up]
    down_r = [recode(x) for x in down]

    join = [[0] * m for _ in range(m)]
    meet = [[0] * m for _ in range(m)]
    for p in range(m):
        for q in range(p, m):
            common = up_r[p] & up_r[q]
            x = by_rank[(common & -common).bit_length() - 1] if common else -1
            if x < 0 or up_r[x] != common:
                raise NoUniqueBound(f"elements {p} and {q} have no join", (p, q))
            join[p][q] = join[q][p] = x
            common = down_r[p] & down_r[q]
            x = by_rank[common.bit_length() - 1] if common else -1
            if x < 0 or down_r[x] != common:
                raise NoUniqueBound(f"elements {p} and {q} have no meet", (p, q))
            meet[p][q] = meet[q][p] = x

    return Lattice(
        element_count=m,
        covers=tuple(pairs),
        upper_covers=tuple(tuple(sorted(u)) for u in ups),
        lower_covers=tuple(tuple(sorted(lo)) for lo in lows),
        up=tuple(up),
        down=tuple(down),
        rank=tuple(rank),
        join_table=tuple(tuple(row) for row in join),
        meet_table=tuple(tuple(row) for row in meet),
        bottom=bottoms[0],
        top=tops[0],
        labels=tuple(labels) if labels is not None else None,
    )


def interval(L: Lattice, lo: int, hi: int) -> Interval:
    if not L.leq(lo, hi):
        raise NotComparable(f"{lo} is not below {hi}")
    return Interval(lo, hi, L.up[lo] & L.down[hi])


def semimodular_inequality_holds(L: Lattice) -> bool:
    """Rank check r(p) + r(q) >= r(p meet q) + r(p join q) over all pairs."""
    r = L.rank
    for p in range(L.element_count):
        jrow, mrow = L.join_table[p], L.meet_table[p]
        for q in range(p + 1, L.element_count):
            if r[p] + r[q] < r[mrow[q]] + r[jrow[q]]:
                return False
    return True


def cover_condition_holds(L: Lattice) -> bool:
    """If a covers a meet b, then a join b covers b, for all a, b."""
    for a in range(L.element_count):
        for b in range(L.element_count):
            if L.covers_pair(L.meet(a, b), a) and not L.covers_pair(b, L.join(a, b)):
                return False
    return True


def is_semimodular(L: Lattice) -> bool:
    by_rank = semimodular_inequality_holds(L)
    by_covers = cover_condition_holds(L)
    assert by_rank == by_covers, "rank and cover characterisations disagree"
    return by_rank


def is_modular_pair(L: Lattice, p: int, q: int) -> bool:
    """Definitional check: (x v p) ^ q == x v (p ^ q) for every x <= q."""
    pq = L.meet(p, q)
    for x in iter_bits(L.down[q]):
        if L.meet(L.join(x, p), q) != L.join(x, pq):
            return False
    return True


def rank_modular_pair(L: Lattice, p: int, q: int) -> bool:
    """Rank-equality test; agrees with :func:`is_modular_pair` on semimodular L."""
    r = L.rank
    return r[p] + r[q] == r[L.meet(p, q)] + r[L.join(p, q)]


def is_modular_lattice(L: Lattice) -> bool:
    m = L.element_count
    return all(is_modular_pair(L, p, q) for p in range(m) for q in range(m))


def is_join_closed(L: Lattice, members: int) -> bool:
    elems = list(iter_bits(members))
    return all((members >> L.join(u, v)) & 1 for i, u in enumerate(elems) for v in elems[i + 1:])


def sublattice_closure(L: Lattice, seed: int) -> int:
    """Smallest subset containing ``seed`` and closed under every join and meet."""
    members = seed
    work = list(iter_bits(seed))
    while work:
        u = work.pop()
        for v in list(iter_bits(members)):
            for w in (L.join(u, v), L.meet(u, v)):
                if not (members >> w) & 1:
                    members |= 1 << w
                    work.append(w)
    return members


def distributivity_violation(L: Lattice, members: int) -> tuple[int, int, int] | None:
    """First triple (x, y, z) of ``members`` with x^(y v z) != (x^y) v (x^z)."""
    elems = list(iter_bits(members))
    for x in elems:
        for y in elems:
            for z in elems:
                if L.meet(x, L.join(y, z)) != L.join(L.meet(x, y), L.meet(x, z)):
                    return (x, y, z)
    return None
