#!/usr/bin/env python3
"""End-to-end walkthrough of the running five-class example.

Validates the partition, prints its Cayley graph, reset ideal, special
lower and upper approximations, exact reset profile and lumped stationary
distribution, then cross-checks the hitting time with a seeded simulation.
"""

from fractions import Fraction

from semwalk import (
    Alphabet,
    LetterDistribution,
    cayley,
    lower_approx,
    lumped,
    reset_code,
    reset_profile,
    simulate,
    to_dot,
    upper_approx,
    validate,
)


def main() -> None:
    ab = Alphabet("ab")
    W = ab.word
    rc = validate(
        ab,
        3,
        [[W("aaa"), W("baa"), W("aba")], [W("bba")], [W("aab"), W("bab")], [W("abb")], [W("bbb")]],
    )
    print("congruence:", rc)

    print("\nCayley graph (DOT):")
    print(to_dot(cayley(rc)))

    ideal = reset_code(rc)
    print("reset ideal generators:", ideal.code)

    low, low_ideal = lower_approx(rc)
    up, up_ideal = upper_approx(rc)
    print("lower approximation:", low)
    print("  via code:", low_ideal.code)
    print("upper approximation:", up)
    print("  via code:", up_ideal.code)

    pi = LetterDistribution.uniform(ab)
    prof = reset_profile(rc, pi)
    print("\nreset profile at the uniform distribution:")
    print("  P =", [str(x) for x in prof.cumulative])
    print("  p =", [str(x) for x in prof.increments])
    print("  hitting time t =", prof.hitting_time)

    lw = lumped(rc, pi)
    print("\nlumped stationary distribution:")
    for label, value in lw.stationary.as_dict().items():
        print(f"  {label}: {value}")

    run = simulate(ideal, pi, steps=500_000, seed=1)
    print(f"\nsimulated mean reset time over {run.episodes} episodes:", round(run.mean_reset_time, 4))
    print("exact value:", prof.hitting_time, "=", float(prof.hitting_time))


if __name__ == "__main__":
    main()
