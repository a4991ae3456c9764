"""Exact random-walk analytics on semaphore codes and congruence classes.

Every analytic quantity here is an exact rational: stationary vectors are
verified fixpoints, reset probabilities are polynomial identities checked
on grids, and the lumped chain is computed two independent ways that must
agree to the last bit.  Floating point appears only in the Monte-Carlo
reporting layer.
"""

from __future__ import annotations

import random
import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .codes import CodeError, IdealRep, code_action, lower_approx, reset_code
from .congruences import RightCongruence
from .words import Alphabet, Word, words_of_length


class WalkError(ValueError):
    pass


@dataclass(frozen=True)
class LetterDistribution:
    """Exact letter probabilities, summing to one."""

    alphabet: Alphabet
    probs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.probs) != self.alphabet.size:
            raise WalkError("one probability per letter required")
        if any(p < 0 or p > 1 for p in self.probs):
            raise WalkError("letter probabilities must lie in [0, 1]")
        if sum(self.probs) != 1:
            raise WalkError(f"letter probabilities sum to {sum(self.probs)}, not 1")

    @classmethod
    def uniform(cls, alphabet: Alphabet) -> "LetterDistribution":
        g = alphabet.size
        return cls(alphabet, tuple(Fraction(1, g) for _ in range(g)))

    @classmethod
    def parse(cls, alphabet: Alphabet, text: str) -> "LetterDistribution":
        """Parse assignments like ``a=1/2,b=1/2`` (every letter required)."""
        values: dict[str, Fraction] = {}
        for item in text.split(","):
            letter, _, frac = item.partition("=")
            letter = letter.strip()
            if letter in values:
                raise WalkError(f"duplicate probability for letter {letter!r}")
            values[letter] = Fraction(frac.strip())
        if set(values) != set(alphabet.letters):
            raise WalkError(f"need exactly the letters {alphabet.letters!r}")
        return cls(alphabet, tuple(values[c] for c in alphabet.letters))

    @property
    def positive(self) -> bool:
        return all(p > 0 for p in self.probs)

    def of(self, letter_index: int) -> Fraction:
        return self.probs[letter_index]

    def word_prob(self, w: Word) -> Fraction:
        out = Fraction(1)
        for i in w.indices:
            out *= self.probs[i]
        return out


@dataclass(frozen=True)
class TransitionMatrix:
    """Row-stochastic matrix over explicitly labelled states."""

    labels: tuple[str, ...]
    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.labels)
        if len(self.rows) != n or any(len(r) != n for r in self.rows):
            raise WalkError("matrix shape does not match the state labels")
        for i, row in enumerate(self.rows):
            if sum(row) != 1:
                raise WalkError(f"row {i} sums to {sum(row)}, not 1")

    @property
    def size(self) -> int:
        return len(self.labels)

    def left_apply(self, vec: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
        n = self.size
        return tuple(
            sum((vec[i] * self.rows[i][j] for i in range(n)), Fraction(0)) for j in range(n)
        )

    def irreducible(self) -> bool:
        """Strong connectivity of the positive-entry support graph."""
        n = self.size
        fwd = [{j for j in range(n) if self.rows[i][j] > 0} for i in range(n)]
        bwd = [{j for j in range(n) if self.rows[j][i] > 0} for i in range(n)]

        def reach(adj):
            seen = {0}
            stack = [0]
            while stack:
                for t in adj[stack.pop()]:
                    if t not in seen:
                        seen.add(t)
                        stack.append(t)
            return seen

        return len(reach(fwd)) == n and len(reach(bwd)) == n


@dataclass(frozen=True)
class StationaryVector:
    labels: tuple[str, ...]
    values: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.labels) != len(self.values):
            raise WalkError("one value per state required")
        if sum(self.values) != 1:
            raise WalkError("stationary vector must sum to 1")

    def as_dict(self) -> dict[str, Fraction]:
        return dict(zip(self.labels, self.values))


def debruijn_stationary(pi: LetterDistribution, k: int) -> StationaryVector:
    """The product distribution over A^k, in enumeration order."""
    ws = words_of_length(pi.alphabet, k)
    return StationaryVector(tuple(str(w) for w in ws), tuple(pi.word_prob(w) for w in ws))


def transition_matrix(ideal: IdealRep, pi: LetterDistribution) -> TransitionMatrix:
    """Transition matrix of the walk on the code words of an ideal."""
    if ideal.code.is_epsilon:
        raise CodeError("the one-word code has no action; use the 1x1 chain directly")
    code = ideal.code
    index = {w: i for i, w in enumerate(code.words)}
    n = len(code.words)
    rows = [[Fraction(0)] * n for _ in range(n)]
    for s in code.words:
        for i, a in enumerate(pi.alphabet):
            rows[index[s]][index[code_action(code, s, a)]] += pi.of(i)
    return TransitionMatrix(tuple(str(w) for w in code.words), tuple(tuple(r) for r in rows))


def congruence_transition_matrix(rc: RightCongruence, pi: LetterDistribution) -> TransitionMatrix:
    """Transition matrix of the walk on congruence classes."""
    n = len(rc.blocks)
    rows = [[Fraction(0)] * n for _ in range(n)]
    for b in range(n):
        for i, a in enumerate(rc.alphabet):
            rows[b][rc.step(b, a)] += pi.of(i)
    labels = tuple("{" + ",".join(str(w) for w in blk) + "}" for blk in rc.blocks)
    return TransitionMatrix(labels, tuple(tuple(r) for r in rows))


def stationary(ideal: IdealRep, pi: LetterDistribution) -> StationaryVector:
    """Closed-form stationary distribution: the word probabilities.

    The result is asserted to be an exact fixpoint of the transition
    matrix.  A non-positive distribution still satisfies the equations but
    loses the uniqueness argument, hence the warning.
    """
    if not pi.positive:
        warnings.warn("non-positive letter distribution: stationary vector may not be unique")
    code = ideal.code
    if code.is_epsilon:
        raise CodeError("the one-word code has no action; its chain is the 1x1 identity")
    vec = StationaryVector(
        tuple(str(w) for w in code.words), tuple(pi.word_prob(w) for w in code.words)
    )
    matrix = transition_matrix(ideal, pi)
    if matrix.left_apply(vec.values) != vec.values:
        raise AssertionError("closed-form stationary vector is not a fixpoint")
    return vec


def solve_stationary(matrix: TransitionMatrix) -> StationaryVector:
    """Independent oracle: exact Gaussian elimination for I with I T = I.

    Solves the n fixpoint equations plus the normalization row; raises if
    the solution is not unique (reducible chain).
    """
    n = matrix.size
    # Unknowns I_0..I_{n-1}; equations indexed by column, then the sum row.
    aug: list[list[Fraction]] = []
    for j in range(n):
        row = [matrix.rows[i][j] - (1 if i == j else 0) for i in range(n)]
        aug.append([Fraction(x) for x in row] + [Fraction(0)])
    aug.append([Fraction(1)] * n + [Fraction(1)])

    r = 0
    for col in range(n):
        pivot = next((i for i in range(r, len(aug)) if aug[i][col] != 0), None)
        if pivot is None:
            raise WalkError("stationary distribution is not unique (reducible chain)")
        aug[r], aug[pivot] = aug[pivot], aug[r]
        inv = 1 / aug[r][col]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][col] != 0:
                factor = aug[i][col]
                aug[i] = [x - factor * y for x, y in zip(aug[i], aug[r])]
        r += 1
    for i in range(r, len(aug)):
        if aug[i][n] != 0:
            raise WalkError("inconsistent stationary system")
    values = tuple(aug[i][n] for i in range(n))
    return StationaryVector(matrix.labels, values)


@dataclass(frozen=True)
class ResetProfile:
    """Cumulative reset probabilities P(1..k), increments, and hitting time."""

    cumulative: tuple[Fraction, ...]
    increments: tuple[Fraction, ...]
    hitting_time: Fraction

    def __post_init__(self) -> None:
        P = self.cumulative
        if any(P[i] > P[i + 1] for i in range(len(P) - 1)):
            raise WalkError("reset probabilities must be nondecreasing")
        if P[-1] != 1:
            raise WalkError(f"P(k) = {P[-1]}, expected exactly 1")
        if any(p < 0 for p in self.increments):
            raise WalkError("negative reset increment")
        if not (1 <= self.hitting_time <= len(P)):
            raise WalkError("hitting time out of range")


def profile_of_ideal(ideal: IdealRep, pi: LetterDistribution) -> ResetProfile:
    """The reset profile of the ideal's code: P(l) sums code words of
    length at most l; P(0) counts as 0, so the epsilon code resets at the
    first step."""
    k = ideal.k
    P = []
    for length in range(1, k + 1):
        P.append(sum((pi.word_prob(s) for s in ideal.code.words if len(s) <= length), Fraction(0)))
    inc = [P[0]] + [P[i] - P[i - 1] for i in range(1, k)]
    t = sum((Fraction(length + 1) * p for length, p in enumerate(inc)), Fraction(0))
    return ResetProfile(tuple(P), tuple(inc), t)


def reset_profile(rc: RightCongruence, pi: LetterDistribution) -> ResetProfile:
    """Reset profile of a congruence, via its reset ideal."""
    if rc.alphabet.size < 2:
        raise WalkError("reset profiles require at least two letters")
    return profile_of_ideal(reset_code(rc), pi)


def _grid_distributions(alphabet: Alphabet, points: int) -> list[LetterDistribution]:
    """A deterministic evaluation grid: `points` distinct positive values
    per free letter, the last letter absorbing the remainder."""
    g = alphabet.size
    if g == 1:
        return [LetterDistribution(alphabet, (Fraction(1),))]
    denom = (points + 1) * (g - 1)
    grids = [[Fraction(j, denom) for j in range(1, points + 1)] for _ in range(g - 1)]
    out = []

    def rec(i: int, chosen: list[Fraction]):
        if i == g - 1:
            rest = 1 - sum(chosen)
            out.append(LetterDistribution(alphabet, tuple(chosen) + (rest,)))
            return
        for v in grids[i]:
            rec(i + 1, chosen + [v])

    rec(0, [])
    return out


def polynomial_identity_holds(ideal: IdealRep) -> bool:
    """Whether P(k) = 1 holds identically in the letter probabilities.

    P(k) - 1 has degree at most k in each letter probability, so vanishing
    on a grid of k+2 values per free variable proves the identity.
    """
    for pi in _grid_distributions(ideal.alphabet, ideal.k + 2):
        total = sum((pi.word_prob(s) for s in ideal.code.words), Fraction(0))
        if total != 1:
            return False
    return True


def check_polynomial_identity(rc: RightCongruence) -> bool:
    """Grid-verify that the congruence's reset probabilities reach exactly 1."""
    if rc.alphabet.size < 2:
        raise WalkError("the identity check needs at least two letters")
    return polynomial_identity_holds(reset_code(rc))


@dataclass(frozen=True)
class LumpedWalk:
    """The congruence-class chain obtained by lumping the code chain."""

    matrix: TransitionMatrix
    stationary: StationaryVector


def lumped(rc: RightCongruence, pi: LetterDistribution) -> LumpedWalk:
    """Lump the lower-approximation code walk onto the congruence classes.

    Verifies the lumpability condition exactly: merged-column row sums must
    agree across states whose classes coincide.  The stationary vector is
    computed both from code-word probabilities and by summing the product
    distribution over each class; the two must agree exactly.
    """
    if rc.alphabet.size < 2:
        raise WalkError("lumping requires at least two letters")
    labels = tuple("{" + ",".join(str(w) for w in blk) + "}" for blk in rc.blocks)
    pd = {w: pi.word_prob(w) for w in rc.carrier}
    by_debruijn = tuple(sum((pd[w] for w in blk), Fraction(0)) for blk in rc.blocks)

    if rc.is_universal:
        matrix = TransitionMatrix(labels, ((Fraction(1),),))
        vec = StationaryVector(labels, (Fraction(1),))
        return LumpedWalk(matrix, vec)

    low, ideal = lower_approx(rc)
    code = ideal.code
    fine = transition_matrix(ideal, pi)
    # Each code word's bucket of A^k words lies inside one class of rc.
    cls: list[int] = []
    for s in code.words:
        pad = Word(rc.alphabet, (0,) * (rc.k - len(s)) + s.indices)
        cls.append(rc.block_of[pad])

    n = len(rc.blocks)
    merged: list[list[Fraction] | None] = [None] * n
    for i, s in enumerate(code.words):
        sums = [Fraction(0)] * n
        for j in range(len(code.words)):
            sums[cls[j]] += fine.rows[i][j]
        if merged[cls[i]] is None:
            merged[cls[i]] = sums
        elif merged[cls[i]] != sums:
            raise AssertionError(
                f"lumpability violated at code word {s}: {merged[cls[i]]} vs {sums}"
            )
    matrix = TransitionMatrix(labels, tuple(tuple(row) for row in merged))  # type: ignore[misc]

    by_code = [Fraction(0)] * n
    for i, s in enumerate(code.words):
        by_code[cls[i]] += pi.word_prob(s)
    if tuple(by_code) != by_debruijn:
        raise AssertionError("code-word and de Bruijn lumped stationary vectors differ")
    vec = StationaryVector(labels, tuple(by_code))
    if matrix.left_apply(vec.values) != vec.values:
        raise AssertionError("lumped stationary vector is not a fixpoint")
    return LumpedWalk(matrix, vec)


@dataclass(frozen=True)
class SimulationResult:
    """Empirical statistics from a seeded walk; reporting is float-valued."""

    labels: tuple[str, ...]
    visits: tuple[int, ...]
    steps: int
    seed: int
    episodes: int
    mean_reset_time: float

    @property
    def frequencies(self) -> tuple[float, ...]:
        return tuple(v / self.steps for v in self.visits)


def simulate(ideal: IdealRep, pi: LetterDistribution, steps: int, seed: int) -> SimulationResult:
    """Seeded Monte-Carlo walk on the code words of an ideal.

    One letter stream drives both statistics: the chain state is updated
    every step for the visit counts, and the same stream is chopped into
    reset episodes (an episode ends as soon as the letters read since its
    start form a word in the ideal).  Letters are drawn by exact cumulative
    inversion over a common denominator, so the sampler honours pi exactly.
    """
    if steps < 1:
        raise WalkError("steps must be >= 1")
    if not pi.positive:
        raise WalkError("simulation requires a positive letter distribution")
    from .codes import code_action

    code = ideal.code
    if code.is_epsilon:
        raise CodeError("the one-word code has no chain to simulate")

    # Exact letter sampler: cumulative integer thresholds over one denominator.
    denom = lcm(*(p.denominator for p in pi.probs))
    cuts = []
    acc = 0
    for p in pi.probs:
        acc += int(p * denom)
        cuts.append(acc)

    states = list(code.words)
    index = {w: i for i, w in enumerate(states)}
    table = [
        [index[code_action(code, s, a)] for a in pi.alphabet]
        for s in states
    ]
    by_len: dict[int, set[tuple[int, ...]]] = {}
    for s in states:
        by_len.setdefault(len(s), set()).add(s.indices)
    lens = sorted(by_len)

    rng = random.Random(seed)
    state = 0
    visits = [0] * len(states)
    buffer: list[int] = []
    episodes = 0
    total_reset_time = 0
    for _ in range(steps):
        r = rng.randrange(denom)
        letter = next(i for i, c in enumerate(cuts) if r < c)
        state = table[state][letter]
        visits[state] += 1
        buffer.append(letter)
        for n in lens:
            if n <= len(buffer) and tuple(buffer[-n:]) in by_len[n]:
                episodes += 1
                total_reset_time += len(buffer)
                buffer.clear()
                break

    mean = total_reset_time / episodes if episodes else float("nan")
    return SimulationResult(
        labels=tuple(str(w) for w in states),
        visits=tuple(visits),
        steps=steps,
        seed=seed,
        episodes=episodes,
        mean_reset_time=mean,
    )
