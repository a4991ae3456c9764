"""Right congruences on the words of length k.

A right congruence is a partition of A^k that is preserved by appending a
letter (and truncating back to length k).  Under inclusion of relations the
right congruences form a finite lattice: meet is common refinement, join is
the generated congruence of the union.  This module provides validation,
generation from pairs, exhaustive enumeration at small parameters, and the
lattice analytics (covers, atoms, semimodularity, modularity, atomisticity,
equal maximal chain lengths).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

from .words import Alphabet, Word, product, words_of_length

# Enumeration is a Bell-number filter; partitions of more than 12 points are
# refused outright, and more than 8 requires an explicit opt-in bound.
DEFAULT_CARRIER_BOUND = 8
HARD_CARRIER_BOUND = 12
# The pentagon search is cubic in the element count; beyond this it would
# stop being an interactive check, so it refuses rather than sampling.
MAX_LATTICE_ELEMENTS = 5000


class CongruenceError(ValueError):
    """Malformed partition input (not a partition of A^k, bad parameters)."""


class NotAPartitionError(CongruenceError):
    pass


class BoundExceeded(CongruenceError):
    """An enumeration was refused because it would blow past its size bound."""


@dataclass(frozen=True)
class ClosureViolation(CongruenceError):
    """Witness that a partition is not closed under the right action."""

    u: Word
    v: Word
    letter: Word

    def __str__(self) -> str:
        return (
            f"not a right congruence: {self.u} and {self.v} share a block but "
            f"{self.u}*{self.letter} and {self.v}*{self.letter} do not"
        )


@dataclass(frozen=True)
class RightCongruence:
    """A partition of A^k closed under the right action, in canonical form.

    Canonical form: every block sorted, blocks sorted by least element.
    Equality of congruences is equality of canonical forms.
    """

    alphabet: Alphabet
    k: int
    blocks: tuple[tuple[Word, ...], ...]

    @cached_property
    def block_of(self) -> dict[Word, int]:
        return {w: i for i, blk in enumerate(self.blocks) for w in blk}

    @cached_property
    def carrier(self) -> tuple[Word, ...]:
        return tuple(words_of_length(self.alphabet, self.k))

    def related(self, u: Word, v: Word) -> bool:
        return self.block_of[u] == self.block_of[v]

    def pairs(self) -> set[tuple[Word, Word]]:
        """All related pairs (u, v) with u != v, both orientations."""
        out: set[tuple[Word, Word]] = set()
        for blk in self.blocks:
            for u, v in combinations(blk, 2):
                out.add((u, v))
                out.add((v, u))
        return out

    def step(self, block_index: int, letter: Word) -> int:
        """Index of the block reached from a block by appending a letter."""
        u = self.blocks[block_index][0]
        return self.block_of[product(u, letter, self.k)]

    @property
    def is_identity(self) -> bool:
        return all(len(blk) == 1 for blk in self.blocks)

    @property
    def is_universal(self) -> bool:
        return len(self.blocks) == 1

    def refines(self, other: "RightCongruence") -> bool:
        """Relation inclusion: every block of self lies inside a block of other."""
        _require_same_setting(self, other)
        return all(len({other.block_of[w] for w in blk}) == 1 for blk in self.blocks)

    def __str__(self) -> str:
        return " | ".join("{" + ",".join(str(w) for w in blk) + "}" for blk in self.blocks)


def _require_same_setting(r1: RightCongruence, r2: RightCongruence) -> None:
    if r1.alphabet != r2.alphabet or r1.k != r2.k:
        raise CongruenceError("congruences live on different A^k")


def _canonical_blocks(blocks: list[list[Word]]) -> tuple[tuple[Word, ...], ...]:
    return tuple(sorted((tuple(sorted(blk)) for blk in blocks), key=lambda b: b[0]))


def validate(alphabet: Alphabet, k: int, blocks: list[list[Word]]) -> RightCongruence:
    """Canonicalize a partition of A^k and check closure under the action.

    Raises NotAPartitionError when the blocks do not cover A^k exactly once,
    and ClosureViolation with a witness (u, v, a) when they do but the
    right action does not preserve them.
    """
    if k < 1:
        raise CongruenceError("k must be >= 1")
    carrier = set(words_of_length(alphabet, k))
    seen: set[Word] = set()
    for blk in blocks:
        if not blk:
            raise NotAPartitionError("empty block")
        for w in blk:
            if w in seen:
                raise NotAPartitionError(f"word {w} appears in two blocks")
            if w not in carrier:
                raise NotAPartitionError(f"word {w} is not in A^{k}")
            seen.add(w)
    if seen != carrier:
        missing = sorted(carrier - seen)[0]
        raise NotAPartitionError(f"word {missing} is not covered")

    rc = RightCongruence(alphabet, k, _canonical_blocks([list(b) for b in blocks]))
    for blk in rc.blocks:
        u = blk[0]
        for v in blk[1:]:
            for a in alphabet:
                if rc.block_of[product(u, a, k)] != rc.block_of[product(v, a, k)]:
                    raise ClosureViolation(u, v, a)
    return rc


def identity(alphabet: Alphabet, k: int) -> RightCongruence:
    return RightCongruence(alphabet, k, tuple((w,) for w in words_of_length(alphabet, k)))


def universal(alphabet: Alphabet, k: int) -> RightCongruence:
    return RightCongruence(alphabet, k, (tuple(words_of_length(alphabet, k)),))


class _UnionFind:
    def __init__(self, items: list[Word]):
        self.parent = {w: w for w in items}

    def find(self, w: Word) -> Word:
        p = self.parent
        while p[w] != w:
            p[w] = p[p[w]]
            w = p[w]
        return w

    def union(self, u: Word, v: Word) -> bool:
        ru, rv = self.find(u), self.find(v)
        if ru == rv:
            return False
        self.parent[rv] = ru
        return True


def generate(
    pairs: set[tuple[Word, Word]] | list[tuple[Word, Word]],
    alphabet: Alphabet,
    k: int,
) -> RightCongruence:
    """Smallest right congruence containing the given pairs.

    Disjoint-set closure with a worklist: merge each input pair, then keep
    merging the images of merged pairs under every letter until fixpoint.
    The result does not depend on merge order; canonical form is restored
    at the end regardless.
    """
    carrier = words_of_length(alphabet, k)
    carrier_set = set(carrier)
    for u, v in pairs:
        if u not in carrier_set or v not in carrier_set:
            raise CongruenceError(f"pair ({u}, {v}) is not in A^{k} x A^{k}")

    uf = _UnionFind(carrier)
    work: list[tuple[Word, Word]] = [p for p in pairs]
    while work:
        u, v = work.pop()
        if uf.union(u, v):
            for a in alphabet:
                work.append((product(u, a, k), product(v, a, k)))

    groups: dict[Word, list[Word]] = {}
    for w in carrier:
        groups.setdefault(uf.find(w), []).append(w)
    return RightCongruence(alphabet, k, _canonical_blocks(list(groups.values())))


def meet(r1: RightCongruence, r2: RightCongruence) -> RightCongruence:
    """Common refinement: u ~ v iff related in both."""
    _require_same_setting(r1, r2)
    groups: dict[tuple[int, int], list[Word]] = {}
    for w in r1.carrier:
        groups.setdefault((r1.block_of[w], r2.block_of[w]), []).append(w)
    return RightCongruence(r1.alphabet, r1.k, _canonical_blocks(list(groups.values())))


def join(r1: RightCongruence, r2: RightCongruence) -> RightCongruence:
    """Smallest right congruence containing both relations."""
    _require_same_setting(r1, r2)
    pairs = {(blk[0], w) for blk in r1.blocks for w in blk[1:]}
    pairs |= {(blk[0], w) for blk in r2.blocks for w in blk[1:]}
    return generate(pairs, r1.alphabet, r1.k)


def _set_partitions(items: list[Word]):
    """All set partitions, by restricted growth strings."""
    n = len(items)
    if n == 0:
        yield []
        return
    codes = [0] * n

    def rec(i: int, maxcode: int):
        if i == n:
            blocks: list[list[Word]] = [[] for _ in range(maxcode + 1)]
            for j, c in enumerate(codes):
                blocks[c].append(items[j])
            yield blocks
            return
        for c in range(maxcode + 2):
            codes[i] = c
            yield from rec(i + 1, max(maxcode, c))

    codes[0] = 0
    yield from rec(1, 0)


def enumerate_all(alphabet: Alphabet, k: int, carrier_bound: int = DEFAULT_CARRIER_BOUND) -> list[RightCongruence]:
    """Every right congruence on A^k, by filtering all set partitions.

    Deliberately brute force: this is the oracle that lattice results are
    checked against, so it must stay definitional.
    """
    carrier = words_of_length(alphabet, k)
    if len(carrier) > HARD_CARRIER_BOUND:
        raise BoundExceeded(f"carrier size {len(carrier)} exceeds hard bound {HARD_CARRIER_BOUND}")
    if len(carrier) > carrier_bound:
        raise BoundExceeded(f"carrier size {len(carrier)} exceeds bound {carrier_bound}")
    out = []
    for blocks in _set_partitions(carrier):
        try:
            out.append(validate(alphabet, k, blocks))
        except ClosureViolation:
            continue
    out.sort(key=lambda rc: tuple(tuple(w.indices for w in blk) for blk in rc.blocks))
    return out


@dataclass
class LatticeReport:
    """Result of the definitional lattice checks on an enumerated set."""

    size: int
    bottom: int
    top: int
    covers: list[tuple[int, int]]  # (lower, upper) pairs of element indices
    atoms: list[int]
    semimodular: bool
    modular: bool
    atomistic: bool
    jordan_dedekind: bool
    # Witnesses for the failed flags, by element index.
    pentagon: tuple[int, int, int, int, int] | None = None  # (top, b, c, d, bottom)
    semimodular_pentagon: tuple[int, int, int, int, int] | None = None
    non_atomistic_witness: int | None = None
    unequal_chains: tuple[list[int], list[int]] | None = None
    flags: dict = field(init=False)

    def __post_init__(self):
        self.flags = {
            "semimodular": self.semimodular,
            "modular": self.modular,
            "atomistic": self.atomistic,
            "jordan_dedekind": self.jordan_dedekind,
        }


def _pentagon_search(leq, meets, joins, covers_set, n, require_cover: bool):
    """Exhaustive search for the forbidden pentagon sublattice.

    Pattern: five distinct elements with e < c < b < a, e < d < a, where
    b meet d = c meet d = e and b join d = c join d = a.  When
    require_cover is set, d must in addition cover e in the ambient
    lattice.  Returns (a, b, c, d, e) or None.
    """
    for b in range(n):
        for d in range(n):
            if leq[b][d] or leq[d][b]:
                continue
            e = meets[b][d]
            a = joins[b][d]
            if require_cover and (e, d) not in covers_set:
                continue
            for c in range(n):
                if c == b or not leq[c][b]:
                    continue
                if leq[c][d] or leq[d][c]:
                    continue
                if joins[c][d] == a and meets[c][d] == e:
                    return (a, b, c, d, e)
    return None


def lattice_report(elements: list[RightCongruence]) -> LatticeReport:
    """Definitional lattice checks over an explicitly enumerated set.

    The input must be closed under meet and join (checked); the checks are
    exhaustive, never sampled, so a clean report is a verification.
    """
    n = len(elements)
    if n > MAX_LATTICE_ELEMENTS:
        raise BoundExceeded(f"lattice of {n} elements exceeds the exhaustive-check bound")
    index = {str(rc): i for i, rc in enumerate(elements)}
    if len(index) != n:
        raise CongruenceError("duplicate elements")

    leq = [[elements[i].refines(elements[j]) for j in range(n)] for i in range(n)]

    meets = [[0] * n for _ in range(n)]
    joins = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            mk = str(meet(elements[i], elements[j]))
            jk = str(join(elements[i], elements[j]))
            if mk not in index:
                raise CongruenceError("input is not closed under meet")
            if jk not in index:
                raise CongruenceError("input is not closed under join")
            meets[i][j] = meets[j][i] = index[mk]
            joins[i][j] = joins[j][i] = index[jk]

    bottom = next(i for i in range(n) if all(leq[i][j] for j in range(n)))
    top = next(i for i in range(n) if all(leq[j][i] for j in range(n)))

    covers = []
    for i in range(n):
        for j in range(n):
            if i != j and leq[i][j]:
                if not any(x != i and x != j and leq[i][x] and leq[x][j] for x in range(n)):
                    covers.append((i, j))
    covers_set = set(covers)
    atoms = sorted(j for (i, j) in covers if i == bottom)

    pentagon = _pentagon_search(leq, meets, joins, covers_set, n, require_cover=False)
    semi_pentagon = _pentagon_search(leq, meets, joins, covers_set, n, require_cover=True)

    # Atomistic: each element must be the join of the atoms below it.
    non_atomistic = None
    for x in range(n):
        acc = bottom
        for a in atoms:
            if leq[a][x]:
                acc = joins[acc][a]
        if acc != x:
            non_atomistic = x
            break

    # Equal maximal chain lengths: the cover relation must be graded.
    rank = [0] * n
    order = sorted(range(n), key=lambda i: sum(leq[j][i] for j in range(n)))
    for i in order:
        rank[i] = max([rank[j] + 1 for (j, jj) in covers if jj == i], default=0)
    jd = all(rank[j] == rank[i] + 1 for (i, j) in covers)
    unequal = None
    if not jd:
        i, j = next((i, j) for (i, j) in covers if rank[j] != rank[i] + 1)
        long_way = _longest_chain(covers, bottom, j, rank)
        short_way = _longest_chain(covers, bottom, i, rank) + [j]
        unequal = (long_way, short_way)

    return LatticeReport(
        size=n,
        bottom=bottom,
        top=top,
        covers=sorted(covers),
        atoms=atoms,
        semimodular=semi_pentagon is None,
        modular=pentagon is None,
        atomistic=non_atomistic is None,
        jordan_dedekind=jd,
        pentagon=pentagon,
        semimodular_pentagon=semi_pentagon,
        non_atomistic_witness=non_atomistic,
        unequal_chains=unequal,
    )


def _longest_chain(covers, bottom, target, rank):
    chain = [target]
    here = target
    while here != bottom:
        here = max((i for (i, j) in covers if j == here), key=lambda i: rank[i])
        chain.append(here)
    chain.reverse()
    return chain
