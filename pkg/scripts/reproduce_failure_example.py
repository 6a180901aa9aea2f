"""Two simulations along Eq_2 that do not compose, and why.

k1 and k3 live on the discrete two-point space, k2 on the indiscrete one.
Eq_2 is a simulation k1 -> k2 and k2 -> k3 but not k1 -> k3; the reason is
that Eq_2 does not send measurable sets of A to measurable sets of B.
"""
from fractions import Fraction

from kanlift.finset import FinSet
from kanlift.giry import (is_simulation_two, largest_simulation_two, preserves_measurable_sets,
                          simulation_two_witness)
from kanlift.measurable import LMP, FinMeasSpace, SubProb


def main():
    two = FinSet([0, 1])
    a, b = FinMeasSpace.discrete(two), FinMeasSpace.indiscrete(two)
    k1 = LMP.constant(a, SubProb.from_points(a, {0: Fraction(1, 2), 1: Fraction(1, 2)}))
    k2 = LMP.constant(b, SubProb(b, (Fraction(1),)))
    k3 = LMP.constant(a, SubProb.from_points(a, {0: Fraction(1, 3), 1: Fraction(2, 3)}))
    eq2 = frozenset({(0, 0), (1, 1)})
    print("Eq2 simulation k1 -> k2:", is_simulation_two(k1, k2, eq2))
    print("Eq2 simulation k2 -> k3:", is_simulation_two(k2, k3, eq2))
    print("Eq2 simulation k1 -> k3:", is_simulation_two(k1, k3, eq2))
    print("  witness:", simulation_two_witness(k1, k3, eq2))
    print("Eq2 preserves measurable sets A -> B:", preserves_measurable_sets(eq2, a, b))
    print("largest simulation k1 -> k3 below Eq2:", sorted(largest_simulation_two(k1, k3, eq2)))


if __name__ == "__main__":
    main()
