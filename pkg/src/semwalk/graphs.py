"""Deterministic complete edge-labelled graphs and reset words.

Cayley graphs of right congruences are the bridge between the relation
lattice and automata: vertices are the congruence classes, edges append a
letter.  Conversely, a strongly connected graph in which every word of
length k acts as a constant map gives back a congruence by identifying the
length-k words with equal one-point images.  These two constructions are
mutually inverse, which the test suite checks exhaustively at small sizes.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .codes import IdealRep, reset_code
from .congruences import RightCongruence, identity, validate
from .words import Alphabet, Word, words_of_length

MAX_MORPHISM_VERTICES = 10_000


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class AGraph:
    """A deterministic complete edge-labelled graph.

    ``transitions[v][i]`` is the vertex reached from vertex v by the i-th
    letter; the table being total makes the graph deterministic and
    complete by construction.
    """

    alphabet: Alphabet
    labels: tuple[str, ...]
    transitions: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.labels)
        if len(self.transitions) != n:
            raise GraphError("one transition row per vertex required")
        for row in self.transitions:
            if len(row) != self.alphabet.size or any(not (0 <= t < n) for t in row):
                raise GraphError("transition table is not total")

    @property
    def vertex_count(self) -> int:
        return len(self.labels)

    def step(self, vertex: int, letter: Word) -> int:
        (i,) = letter.indices
        return self.transitions[vertex][i]

    def walk(self, vertex: int, word: Word) -> int:
        for i in word.indices:
            vertex = self.transitions[vertex][i]
        return vertex

    def image(self, word: Word) -> frozenset[int]:
        """The set Q.w of endpoints of all paths labelled by the word."""
        return frozenset(self.walk(v, word) for v in range(self.vertex_count))

    @cached_property
    def strongly_connected(self) -> bool:
        n = self.vertex_count
        fwd = [set(row) for row in self.transitions]
        bwd = [set() for _ in range(n)]
        for v, row in enumerate(self.transitions):
            for t in row:
                bwd[t].add(v)

        def reach(adj, start):
            seen = {start}
            stack = [start]
            while stack:
                for t in adj[stack.pop()]:
                    if t not in seen:
                        seen.add(t)
                        stack.append(t)
            return seen

        return len(reach(fwd, 0)) == n and len(reach(bwd, 0)) == n

    def is_k_reset(self, k: int) -> bool:
        return all(len(self.image(w)) == 1 for w in words_of_length(self.alphabet, k))


def is_reset(graph: AGraph, word: Word) -> bool:
    """Whether all paths labelled by the word end at one common vertex."""
    return len(graph.image(word)) == 1


def cayley(rc: RightCongruence) -> AGraph:
    """The Cayley graph of a congruence: blocks as vertices, letters as edges."""
    labels = tuple("{" + ",".join(str(w) for w in blk) + "}" for blk in rc.blocks)
    table = tuple(
        tuple(rc.step(b, a) for a in rc.alphabet) for b in range(len(rc.blocks))
    )
    return AGraph(rc.alphabet, labels, table)


def debruijn(alphabet: Alphabet, k: int) -> AGraph:
    """The k-dimensional de Bruijn graph, vertices in enumeration order."""
    return cayley(identity(alphabet, k))


def resets(rc: RightCongruence) -> IdealRep:
    """The reset ideal of the congruence's Cayley graph.

    Computed relationally (all length-k completions equivalent) rather than
    by walking the graph; the graph-walk definition is what the tests
    cross-validate against.
    """
    return reset_code(rc)


def zeta(graph: AGraph, k: int) -> RightCongruence:
    """The congruence identifying length-k words with equal images.

    Inverse of the Cayley construction on strongly connected graphs where
    every length-k word is a reset; both preconditions are checked.
    """
    if not graph.strongly_connected:
        raise GraphError("zeta requires a strongly connected graph")
    buckets: dict[frozenset[int], list[Word]] = {}
    for w in words_of_length(graph.alphabet, k):
        img = graph.image(w)
        if len(img) != 1:
            raise GraphError(f"not a {k}-reset graph: {w} has image of size {len(img)}")
        buckets.setdefault(img, []).append(w)
    return validate(graph.alphabet, k, list(buckets.values()))


def morphism(source: AGraph, target: AGraph) -> tuple[int, ...] | None:
    """A label-preserving vertex map between the graphs, or None.

    Determinism makes the image of one vertex propagate along edges, so the
    search fixes a seed image per unexplored region and backtracks over the
    target's vertices.  Exact, not heuristic.
    """
    if source.alphabet != target.alphabet:
        raise GraphError("graphs are over different alphabets")
    if max(source.vertex_count, target.vertex_count) > MAX_MORPHISM_VERTICES:
        raise GraphError("graph too large for exact morphism search")

    n = source.vertex_count
    assignment: list[int | None] = [None] * n

    def propagate(v: int, image: int, trail: list[int]) -> bool:
        """BFS from v := image; record assignments in trail; False on clash."""
        queue = [(v, image)]
        while queue:
            x, y = queue.pop()
            if assignment[x] is not None:
                if assignment[x] != y:
                    return False
                continue
            assignment[x] = y
            trail.append(x)
            for i in range(source.alphabet.size):
                queue.append((source.transitions[x][i], target.transitions[y][i]))
        return True

    def solve(start: int) -> bool:
        while start < n and assignment[start] is not None:
            start += 1
        if start == n:
            return True
        for image in range(target.vertex_count):
            trail: list[int] = []
            if propagate(start, image, trail) and solve(start + 1):
                return True
            for x in trail:
                assignment[x] = None
        return False

    if solve(0):
        return tuple(assignment)  # type: ignore[arg-type]
    return None


def is_morphism(source: AGraph, target: AGraph, mapping: tuple[int, ...]) -> bool:
    return all(
        target.transitions[mapping[v]][i] == mapping[source.transitions[v][i]]
        for v in range(source.vertex_count)
        for i in range(source.alphabet.size)
    )


def isomorphic(g1: AGraph, g2: AGraph) -> bool:
    """Morphisms both ways certify isomorphism for strongly connected
    deterministic complete graphs."""
    if g1.vertex_count != g2.vertex_count:
        return False
    f = morphism(g1, g2)
    if f is None or morphism(g2, g1) is None:
        return False
    return len(set(f)) == g1.vertex_count and is_morphism(g1, g2, f)


def to_dot(graph: AGraph) -> str:
    """Render as DOT with deterministic node order and edge listing."""
    lines = ["digraph {"]
    for i, label in enumerate(graph.labels):
        lines.append(f'  n{i} [label="{label}"];')
    for v in range(graph.vertex_count):
        for i, letter in enumerate(graph.alphabet.letters):
            lines.append(f'  n{v} -> n{graph.transitions[v][i]} [label="{letter}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_json(graph: AGraph) -> dict:
    """Transition-table payload; row order follows the vertex labels, which
    for de Bruijn graphs is the word enumeration order."""
    return {
        "alphabet": graph.alphabet.letters,
        "vertices": list(graph.labels),
        "transitions": [list(row) for row in graph.transitions],
    }
