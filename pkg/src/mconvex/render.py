"""Graphviz DOT output for Hasse diagrams, with deterministic node order."""

from __future__ import annotations

from typing import Callable, Sequence

from .hull import SetFamily, format_subset
from .lattice import Lattice, iter_bits


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def dot_document(
    nodes: Sequence[tuple[int, str]], edges: Sequence[tuple[int, int]], name: str = "hasse"
) -> str:
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for node, label in sorted(nodes):
        lines.append(f"  n{node} [label={_quote(label)}];")
    for a, b in sorted(edges):
        lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def hasse_edges(items: Sequence[int], less: Callable[[int, int], bool]) -> list[tuple[int, int]]:
    """Cover pairs of the order ``less`` restricted to ``items``."""
    edges = []
    for a in items:
        for b in items:
            if less(a, b) and not any(less(a, c) and less(c, b) for c in items):
                edges.append((a, b))
    return edges


def render_lattice(L: Lattice) -> str:
    nodes = [(p, f"{p}: {L.labels[p]}" if L.labels else str(p)) for p in range(len(L))]
    return dot_document(nodes, list(L.covers))


def render_subposet(L: Lattice, members: int) -> str:
    items = list(iter_bits(members))
    nodes = [(p, f"{p}: {L.labels[p]}" if L.labels else str(p)) for p in items]
    return dot_document(nodes, hasse_edges(items, L.lt))


def render_family(F: SetFamily) -> str:
    sets = list(F.sets)
    index = {s: i for i, s in enumerate(sets)}

    def less(a: int, b: int) -> bool:
        return a != b and sets[a] & ~sets[b] == 0

    nodes = [(index[s], format_subset(s)) for s in sets]
    return dot_document(nodes, hasse_edges(list(range(len(sets))), less))
