"""
Flags (maximal chains), the flag graph, and Jordan-Hoelder permutations.

A flag is stored as a tuple of element ids ``(c_0, c_1, ..., c_n)`` from
bottom to top.  Two flags are adjacent when they differ in exactly one
(necessarily interior) position.  Galleries are walks in that graph.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import FlagBudgetExceeded, NotABijection, NotAFlag
from .lattice import Lattice

Flag = tuple[int, ...]

DEFAULT_FLAG_CAP = 10**6


def as_flag(L: Lattice, elems: Sequence[int]) -> Flag:
    """Validate ``elems`` as a flag of ``L`` and return it as a tuple."""
    flag = tuple(int(e) for e in elems)
    if not flag:
        raise NotAFlag("empty element list")
    for e in flag:
        if not 0 <= e < L.element_count:
            raise NotAFlag(f"element {e} is not in the lattice")
    if flag[0] != L.bottom:
        raise NotAFlag(f"flag must start at bottom {L.bottom}, got {flag[0]}")
    if flag[-1] != L.top:
        raise NotAFlag(f"flag must end at top {L.top}, got {flag[-1]}")
    for a, b in zip(flag, flag[1:]):
        if not L.covers_pair(a, b):
            raise NotAFlag(f"{b} does not cover {a}", (a, b))
    return flag


def iter_flags(L: Lattice, within: int | None = None) -> Iterator[Flag]:
    """
    Depth-first, lexicographic enumeration of flags of ``L``.

    With ``within`` (a bitset), only flags whose elements all lie in it
    are produced.
    """
    allowed = L.all_mask if within is None else within
    if not (allowed >> L.bottom) & 1 or not (allowed >> L.top) & 1:
        return
    path = [L.bottom]

    def walk(p: int) -> Iterator[Flag]:
        if p == L.top:
            yield tuple(path)
            return
        for q in L.upper_covers[p]:
            if (allowed >> q) & 1:
                path.append(q)
                yield from walk(q)
                path.pop()

    yield from walk(L.bottom)


def enumerate_flags(L: Lattice, cap: int = DEFAULT_FLAG_CAP) -> list[Flag]:
    out = []
    for flag in iter_flags(L):
        if len(out) >= cap:
            raise FlagBudgetExceeded(f"more than {cap} flags")
        out.append(flag)
    return out


def count_flags(L: Lattice) -> int:
    """Number of flags, by dynamic programming over the cover graph."""
    ways = [0] * L.element_count
    ways[L.bottom] = 1
    for p in sorted(range(L.element_count), key=lambda e: L.rank[e]):
        for q in L.upper_covers[p]:
            ways[q] += ways[p]
    return ways[L.top]


def flags_adjacent(F: Flag, G: Flag) -> bool:
    if len(F) != len(G):
        return False
    return sum(a != b for a, b in zip(F, G)) == 1


def flag_neighbours(L: Lattice, F: Flag) -> Iterator[Flag]:
    """All flags adjacent to ``F``, via single interior exchanges."""
    for i in range(1, len(F) - 1):
        below, here, above = F[i - 1], F[i], F[i + 1]
        for z in L.upper_covers[below]:
            if z != here and L.covers_pair(z, above):
                yield F[:i] + (z,) + F[i + 1:]


def _bfs(L: Lattice, start: Flag, stop: Flag | None, max_depth: int | None, budget: int):
    dist = {start: 0}
    parent: dict[Flag, Flag] = {}
    queue = deque([start])
    while queue:
        F = queue.popleft()
        if F == stop:
            break
        d = dist[F]
        if max_depth is not None and d >= max_depth:
            continue
        for G in flag_neighbours(L, F):
            if G not in dist:
                if len(dist) >= budget:
                    raise FlagBudgetExceeded(f"BFS visited more than {budget} flags")
                dist[G] = d + 1
                parent[G] = F
                queue.append(G)
    return dist, parent


def gallery_distance_bfs(L: Lattice, C: Flag, D: Flag, budget: int = DEFAULT_FLAG_CAP) -> int:
    """Breadth-first distance between two flags in the flag graph."""
    dist, _ = _bfs(L, C, D, None, budget)
    if D not in dist:
        raise ValueError("flags are not connected")  # impossible in a lattice
    return dist[D]


def shortest_gallery(L: Lattice, C: Flag, D: Flag, budget: int = DEFAULT_FLAG_CAP) -> list[Flag]:
    """One shortest gallery from ``C`` to ``D``, endpoints included."""
    _, parent = _bfs(L, C, D, None, budget)
    path = [D]
    while path[-1] != C:
        path.append(parent[path[-1]])
    return path[::-1]


def shortest_gallery_flags(
    L: Lattice, C: Flag, D: Flag, budget: int = DEFAULT_FLAG_CAP
) -> tuple[int, set[Flag]]:
    """
    Distance and the set of flags lying on at least one shortest gallery.

    A flag F qualifies iff dist(C, F) + dist(F, D) == dist(C, D); both
    searches are truncated at that distance.
    """
    d = gallery_distance_bfs(L, C, D, budget)
    from_c, _ = _bfs(L, C, None, d, budget)
    from_d, _ = _bfs(L, D, None, d, budget)
    on_path = {F for F, a in from_c.items() if from_d.get(F, d + 1) + a == d}
    return d, on_path


@dataclass(frozen=True)
class JHPermutation:
    """
    Jordan-Hoelder permutation.  ``sigma[i - 1]`` holds sigma(i); both
    positions and values are the 1-based flag indices.
    """

    sigma: tuple[int, ...]
    inversions: int

    @property
    def n(self) -> int:
        return len(self.sigma)

    def __call__(self, i: int) -> int:
        return self.sigma[i - 1]

    def inverse(self) -> "JHPermutation":
        inv = [0] * self.n
        for i, s in enumerate(self.sigma, start=1):
            inv[s - 1] = i
        return JHPermutation(tuple(inv), self.inversions)


def inversion_number(perm: Sequence[int]) -> int:
    return sum(
        1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j]
    )


def jordan_holder(L: Lattice, C: Flag, D: Flag) -> JHPermutation:
    """sigma(i) = least j with d_i <= d_{i-1} v c_j."""
    n = len(C) - 1
    if len(D) != n + 1:
        raise NotABijection("flags of different lengths; lattice is not graded")
    sigma = []
    for i in range(1, n + 1):
        prev, target = D[i - 1], D[i]
        j = next((j for j in range(1, n + 1) if L.leq(target, L.join(prev, C[j]))), None)
        sigma.append(j)
    if None in sigma or sorted(sigma) != list(range(1, n + 1)):
        raise NotABijection(f"sigma = {sigma} is not a permutation of 1..{n}")
    return JHPermutation(tuple(sigma), inversion_number(sigma))


def flag_distance(L: Lattice, C: Flag, D: Flag, check: bool = False) -> int:
    """Gallery distance as the inversion number of the Jordan-Hoelder permutation."""
    d = jordan_holder(L, C, D).inversions
    if check:
        bfs = gallery_distance_bfs(L, C, D)
        assert d == bfs, f"inversions {d} != BFS distance {bfs}"
    return d


def flag_mask(flags: Iterable[Flag]) -> int:
    """Bitset union of the elements of several flags."""
    mask = 0
    for F in flags:
        for e in F:
            mask |= 1 << e
    return mask


def sample_flag(L: Lattice, draw) -> Flag:
    """
    Uniformly random flag.  ``draw(k)`` must return an integer uniform
    on ``range(k)``.
    """
    to_top = [0] * L.element_count
    to_top[L.top] = 1
    for p in sorted(range(L.element_count), key=lambda e: -L.rank[e]):
        for q in L.upper_covers[p]:
            to_top[p] += to_top[q]
    path = [L.bottom]
    while path[-1] != L.top:
        p = path[-1]
        pick = draw(to_top[p])
        for q in L.upper_covers[p]:
            if pick < to_top[q]:
                path.append(q)
                break
            pick -= to_top[q]
    return tuple(path)
