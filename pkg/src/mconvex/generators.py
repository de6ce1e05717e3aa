"""
Test-lattice families with stable, canonical element ids.

Every generator orders its elements by rank first and then by a
family-specific canonical key, so ids do not change between runs.

Randomised families draw from :class:`Lcg`, a 64-bit linear congruential
generator (multiplier 6364136223846793005, increment 1442695040888963407,
modulus 2**64, state initialised to the seed).  Each draw advances the
state once and uses its upper 32 bits.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, Sequence

from .errors import OutOfBounds
from .hull import SetFamily, format_subset, is_antimatroid, require_semimodular
from .io import dump_lattice, load_lattice
from .lattice import Lattice, build_lattice, iter_bits

FAMILIES = (
    "boolean",
    "partition",
    "binary_subspace",
    "antimatroid_poset",
    "antimatroid_shelling",
    "chain",
    "product",
    "from_file",
)


class Lcg:
    MULT = 6364136223846793005
    INC = 1442695040888963407
    MASK = (1 << 64) - 1

    def __init__(self, seed: int):
        self.state = seed & self.MASK

    def next_u32(self) -> int:
        self.state = (self.state * self.MULT + self.INC) & self.MASK
        return self.state >> 32

    def below(self, bound: int) -> int:
        return self.next_u32() % bound

    def sample(self, population: int, k: int) -> list[int]:
        """``k`` distinct indices from ``range(population)``, in draw order."""
        swapped: dict[int, int] = {}  # sparse Fisher-Yates
        out = []
        for i in range(min(k, population)):
            j = i + self.below(population - i)
            out.append(swapped.get(j, j))
            swapped[j] = swapped.get(i, i)
        return out


def _check(name: str, value: int, lo: int, hi: int) -> None:
    if not lo <= value <= hi:
        raise OutOfBounds(f"{name} parameter {value} outside [{lo}, {hi}]")


def lattice_from_order(
    items: Sequence, leq: Callable[[object, object], bool], labels: Sequence[str] | None = None
) -> Lattice:
    """Build a lattice from items already sorted along a linear extension."""
    m = len(items)
    above = [0] * m  # bitset of strictly greater items
    for i in range(m):
        for j in range(i + 1, m):
            if leq(items[i], items[j]):
                above[i] |= 1 << j
    covers = []
    for i in range(m):
        implied = 0
        for k in iter_bits(above[i]):
            implied |= above[k]
        covers += [(i, j) for j in iter_bits(above[i] & ~implied)]
    return build_lattice(covers, m, labels=labels)


def lattice_from_family(sets: Iterable[int]) -> Lattice:
    """Lattice of a union-closed family ordered by inclusion, labelled by subset."""
    fam = sorted(set(sets), key=lambda s: (s.bit_count(), s))
    return lattice_from_order(fam, lambda a, b: a & ~b == 0, [format_subset(s) for s in fam])


def gen_chain(length: int) -> Lattice:
    _check("chain", length, 0, 64)
    return build_lattice([(i, i + 1) for i in range(length)], length + 1)


def gen_boolean(n: int) -> Lattice:
    _check("boolean", n, 1, 6)
    return lattice_from_family(range(1 << n))


def set_partitions(n: int) -> list[tuple[tuple[int, ...], ...]]:
    """All partitions of {1..n} as sorted tuples of sorted blocks."""
    out: list[list[list[int]]] = [[]]
    for x in range(1, n + 1):
        nxt = []
        for p in out:
            for i in range(len(p)):
                nxt.append(p[:i] + [p[i] + [x]] + p[i + 1:])
            nxt.append(p + [[x]])
        out = nxt
    return [tuple(sorted(tuple(b) for b in p)) for p in out]


def _partition_label(p) -> str:
    return "|".join("".join(str(x) for x in block) for block in p)


def gen_partition(n: int) -> Lattice:
    """Partitions of [n] under refinement (finest partition at the bottom)."""
    _check("partition", n, 2, 6)
    parts = sorted(set_partitions(n), key=lambda p: (n - len(p), _partition_label(p)))

    def refines(p, q) -> bool:
        return all(any(set(b) <= set(c) for c in q) for b in p)

    return lattice_from_order(parts, refines, [_partition_label(p) for p in parts])


def gen_binary_subspace(d: int) -> Lattice:
    """Subspaces of GF(2)^d, vectors encoded as ints, ordered by inclusion."""
    _check("binary_subspace", d, 1, 4)
    found = {frozenset([0])}
    frontier = list(found)
    while frontier:
        nxt = []
        for U in frontier:
            for v in range(1, 1 << d):
                if v not in U:
                    W = U | {u ^ v for u in U}
                    if W not in found:
                        found.add(W)
                        nxt.append(W)
        frontier = nxt
    spaces = sorted(found, key=lambda U: (len(U), sorted(U)))
    labels = ["<" + ",".join(str(v) for v in sorted(U) if v) + ">" for U in spaces]
    return lattice_from_order(spaces, lambda a, b: a <= b, labels)


def gen_product(A: Lattice, B: Lattice) -> Lattice:
    """Direct product, elements ordered by (rank sum, a, b)."""
    items = sorted(
        ((a, b) for a in range(len(A)) for b in range(len(B))),
        key=lambda ab: (A.rank[ab[0]] + B.rank[ab[1]], ab),
    )
    index = {ab: i for i, ab in enumerate(items)}
    covers = []
    for (a, b), i in index.items():
        covers += [(i, index[(a2, b)]) for a2 in A.upper_covers[a]]
        covers += [(i, index[(a, b2)]) for b2 in B.upper_covers[b]]
    labels = [f"({A.label(a)},{B.label(b)})" for a, b in items]
    return build_lattice(sorted(covers), len(items), labels=labels)


# -- antimatroids -----------------------------------------------------------


def random_poset(size: int, rng: Lcg) -> list[tuple[int, int]]:
    """Strict order relations i < j (i < j as ints), transitively closed."""
    below = [0] * size  # below[j]: bitset of i < j
    for j in range(size):
        for i in range(j):
            if rng.below(2):
                below[j] |= (1 << i) | below[i]
    return [(i, j) for j in range(size) for i in iter_bits(below[j])]


def _ideals(size: int, relations: Sequence[tuple[int, int]]) -> set[int]:
    below = [0] * size
    for i, j in relations:
        below[j] |= 1 << i
    return {
        s for s in range(1 << size)
        if all(below[j] & ~s == 0 for j in iter_bits(s))
    }


def poset_antimatroid(size: int, relations: Sequence[tuple[int, int]]) -> SetFamily:
    """Order ideals of a poset on ``size`` points (feasible sets of its shelling)."""
    return SetFamily.of(size, _ideals(size, relations))


def double_shelling(size: int, relations: Sequence[tuple[int, int]]) -> SetFamily:
    """Unions of an order ideal and an order filter of a poset."""
    ideals = _ideals(size, relations)
    full = (1 << size) - 1
    filters = {full & ~s for s in ideals}
    return SetFamily.of(size, {i | f for i in ideals for f in filters})


def gen_antimatroid_family(kind: str, size: int, seed: int = 0) -> SetFamily:
    _check(f"antimatroid_{kind}", size, 1, 7)
    relations = random_poset(size, Lcg(seed))
    if kind == "poset":
        fam = poset_antimatroid(size, relations)
    elif kind == "shelling":
        fam = double_shelling(size, relations)
    else:
        raise ValueError(f"unknown antimatroid kind {kind!r}")
    assert is_antimatroid(fam)
    return fam


def gen_antimatroid_lattice(kind: str, size: int, seed: int = 0) -> Lattice:
    L = lattice_from_family(gen_antimatroid_family(kind, size, seed))
    require_semimodular(L)
    return L


# -- specs ------------------------------------------------------------------


@dataclass(frozen=True)
class GeneratorSpec:
    family: str
    parameter: int | str
    seed: int = 0

    @classmethod
    def parse(cls, text: str) -> "GeneratorSpec":
        """Parse ``family:param[:seed]``."""
        family, sep, rest = text.partition(":")
        if family not in FAMILIES or not sep:
            raise ValueError(f"bad generator spec {text!r}; families: {', '.join(FAMILIES)}")
        if family == "from_file":
            return cls(family, rest)
        param, _, seed = rest.partition(":")
        try:
            return cls(family, int(param), int(seed) if seed else 0)
        except ValueError:
            raise ValueError(f"bad generator spec {text!r}") from None

    def __str__(self) -> str:
        if self.family == "from_file":
            return f"from_file:{self.parameter}"
        if self.family.startswith("antimatroid"):
            return f"{self.family}:{self.parameter}:{self.seed}"
        return f"{self.family}:{self.parameter}"

    def build(self) -> Lattice:
        fam, p = self.family, self.parameter
        if fam == "from_file":
            return load_lattice(str(p))
        if fam == "boolean":
            return gen_boolean(p)
        if fam == "partition":
            return gen_partition(p)
        if fam == "binary_subspace":
            return gen_binary_subspace(p)
        if fam == "chain":
            return gen_chain(p)
        if fam == "product":
            # partition lattice of [p] times a two-element chain
            _check("product", p, 2, 4)
            return gen_product(gen_partition(p), gen_chain(1))
        if fam == "antimatroid_poset":
            return gen_antimatroid_lattice("poset", p, self.seed)
        if fam == "antimatroid_shelling":
            return gen_antimatroid_lattice("shelling", p, self.seed)
        raise ValueError(f"unknown family {fam!r}")


def generate(spec: str | GeneratorSpec) -> Lattice:
    if isinstance(spec, str):
        spec = GeneratorSpec.parse(spec)
    return spec.build()


def fixture_path(root: str | Path, spec: str | GeneratorSpec) -> Path:
    """``<root>/<family>/<family>-<param>[-s<seed>].json``; seeds only for random families."""
    if isinstance(spec, str):
        spec = GeneratorSpec.parse(spec)
    name = f"{spec.family}-{spec.parameter}"
    if spec.family.startswith("antimatroid_"):
        name += f"-s{spec.seed}"
    return Path(root) / spec.family / f"{name}.json"


def write_fixtures(root: str | Path, specs: Iterable[str | GeneratorSpec]) -> list[Path]:
    written = []
    for spec in specs:
        path = fixture_path(root, spec)
        path.parent.mkdir(parents=True, exist_ok=True)
        dump_lattice(generate(spec), path)
        written.append(path)
    return written


__all__ = [
    "FAMILIES",
    "GeneratorSpec",
    "Lcg",
    "double_shelling",
    "gen_antimatroid_family",
    "gen_antimatroid_lattice",
    "gen_binary_subspace",
    "gen_boolean",
    "gen_chain",
    "gen_partition",
    "gen_product",
    "fixture_path",
    "generate",
    "write_fixtures",
    "lattice_from_family",
    "lattice_from_order",
    "load_lattice",
    "poset_antimatroid",
    "random_poset",
    "set_partitions",
]
