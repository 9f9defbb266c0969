"""Walk through the ternary wall-xor rule end to end.

The symbol 2 is a wall: it never moves and never disappears, and between
walls the binary symbols evolve by xor with their right neighbour. The word
"2" is therefore blocking, the rule is surjective, and the Cesàro means of a
Bernoulli measure converge even though the pushforwards themselves oscillate.
"""

import logging
from fractions import Fraction

from cesaro_ca import (
    Convergence,
    bernoulli,
    certify_blocking,
    cesaro_mean,
    construct_f_periodic_point,
    convergence_diagnostic,
    is_surjective,
    mu_c_estimate,
)
from cesaro_ca.catalog import wall_xor

N = 64


def main() -> None:
    logging.basicConfig(level=logging.WARNING)
    rule = wall_xor()
    p, q, r = Fraction(1, 2), Fraction(1, 4), Fraction(1, 4)
    mu = bernoulli(rule.alphabet, [p, q, r])
    print(f"rule: {rule.describe()}")
    print(f"measure: {mu.describe()}")

    # -- Blocking word and surjectivity --

    cert = certify_blocking(rule, "2", 0, 1)
    print(f"\n'2' blocking: column {cert.column}, preperiod {cert.preperiod}, period {cert.period}")
    verdict = is_surjective(rule)
    print(f"surjective: {verdict.surjective} ({verdict.preimages_per_word} preimages per word)")

    point, period = construct_f_periodic_point(rule, "01", cert)
    print(f"F-periodic point through '01': generator {point.generator!r}, F-period {period}")

    # -- Pushforwards oscillate, Cesàro means settle --

    print(f"\nCesàro means up to N={N}:")
    limits = {}
    for u in ("2012", "2112"):
        series = cesaro_mean(rule, mu, u, N)
        raw = convergence_diagnostic(series.pushforward, 8, 1e-3)
        mean = convergence_diagnostic(series.values, 8, 1e-3)
        limits[u] = series.last
        print(
            f"  [{u}]: μ∘F^-n is {raw.value}, Cesàro is {mean.value}, "
            f"μ_{N} = {float(series.last):.6f}"
        )
        assert raw is Convergence.OSCILLATING

    # A Bernoulli limit would give equal weight to 0 and 1 between walls.
    s = (p + q) / 2
    print(f"\nBernoulli(({float(s)}, {float(s)}, {float(r)})) would give {float(s**2 * r**2):.6f} to both")
    print(f"exact Cesàro limit of both: {float(r**2 * q * s):.6f}")

    # -- The explicit limit --

    est = mu_c_estimate(rule, mu, "0", [1, 2, 3], N, blocks="2")
    print("\nW_m([0]) for m = 1, 2, 3:", ", ".join(f"{float(v):.6f}" for v in est.formula_values))
    print(f"μ_{N}([0]) = {float(est.cesaro.last):.6f}, gap {float(est.gap):.2e}, slack {float(est.slack):.2e}")


if __name__ == "__main__":
    main()
