"""Products of stochastic matrices and when they become Markov.

A scrambling chain turns Markov within ``n - 1`` steps; the coefficients
``mu`` and ``alpha`` measure how far a single matrix is from that.
"""

from fractions import Fraction

from posmat import (
    NonnegMatrix,
    alpha,
    generate_random,
    is_markov,
    is_scrambling,
    mu,
    power_limit,
    verify_scrambling_chain,
)


def main():
    P = NonnegMatrix([[0, 1], [Fraction(1, 2), Fraction(1, 2)]])
    lim = power_limit(P)
    print("P = [[0, 1], [1/2, 1/2]]")
    print(f"  mu = {mu(P)}, alpha = {alpha(P)}")
    print(f"  powers converge after {lim.iterations} steps to rows of approximately "
          f"{[round(float(x), 9) for x in lim.matrix.rows[0]]}")

    print("\nScrambling chains of four 5x5 factors")
    for seed in range(4):
        chain = [generate_random("stochastic", 5, Fraction(1, 2), seed=100 * seed + i, filter="scrambling")
                 for i in range(4)]
        r = verify_scrambling_chain(chain)
        coeffs = ", ".join(f"{alpha(c)}" for c in chain)
        print(f"  chain {seed}: alpha = [{coeffs}]; Markov after {r.attained_value} of at most "
              f"{r.bound_value} factors")
        assert all(is_scrambling(c) for c in chain)

    S = generate_random("stochastic", 4, Fraction(1, 4), seed=9)
    print(f"\nA sparse 4x4 stochastic matrix: Markov {is_markov(S)}, scrambling {is_scrambling(S)}")


if __name__ == "__main__":
    main()
