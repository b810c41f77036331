"""How fast do powers of a nonnegative matrix fill in?

Walks through the Wielandt family, which needs the most squarings of any
primitive pattern, and compares the exact exponent of a few random
primitive patterns with the closed-form bounds.
"""

from fractions import Fraction

from posmat import (
    bool_power,
    bound_girth,
    bound_gk_girth,
    bound_gk_primitivity,
    gamma,
    generate_random,
    generate_wielandt,
    girth,
    gk_index,
    is_positive,
)


def main():
    print("Wielandt patterns: gamma against n^2 - 2n + 2")
    for n in range(2, 9):
        w = generate_wielandt(n)
        g = gamma(w)
        print(f"  n={n}: gamma={g}, bound={bound_gk_primitivity(n)}, "
              f"P^(gamma-1) positive: {is_positive(bool_power(w, g - 1)) if g > 1 else '-'}")

    print("\nRandom primitive 7x7 patterns: exact gamma and two upper bounds")
    for seed in range(6):
        p = generate_random("pattern", 7, Fraction(1, 2), seed=seed, filter="primitive")
        k = max(gk_index(p), 1)
        s = girth(p)
        print(f"  seed {seed}: gamma={gamma(p)}, girth={s}, k={k}, "
              f"girth bound={bound_girth(7, s)}, g_k girth bound={bound_gk_girth(7, k, s)}")


if __name__ == "__main__":
    main()
