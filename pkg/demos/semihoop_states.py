"""States of semihoops: trivial on finite ones, rich on cones.

A state sends the top to zero, turns products into sums, and never goes
positive.  On a finite semihoop every element is idempotent enough that
only the zero map survives.  The cone hoop (exponent vectors under
addition, reversed order) carries one state per nonnegative weight vector,
and each extends to a state of the envelope group.
"""

from fractions import Fraction

from ellstates.corpus import cone_hoop, godel_hoop, semihoop_corpus
from ellstates.lmonoid import KElement
from ellstates.semihoop import (
    ConeState,
    enumerate_states_finite,
    pseudo_join,
    state_to_kgroup_state,
)


def main() -> None:
    print("finite semihoops admit only the zero state")
    for name, H in semihoop_corpus().items():
        found = enumerate_states_finite(H)
        size = len(H.carrier(8))
        print(f"  {name:14s} size {size}: {len(found)} state(s)")

    print()
    print("the Godel 4-chain in detail: x*x = x forces w(x) = 2 w(x)")
    H = godel_hoop(4)
    (zero,) = enumerate_states_finite(H)
    print(f"  values: {[str(zero.value(x)) for x in H.carrier(8)]}")

    print()
    print("cone hoop of rank 2 with weights (1, 1/2)")
    C = cone_hoop(2)
    w = ConeState((1, Fraction(1, 2)))
    x, y = (3, 1), (0, 4)
    print(f"  w{x} = {w.value(x)},  w{y} = {w.value(y)}")
    print("  valuation: w(meet) + w(join) = w(x) + w(y)")
    lhs = w.value(C.meet(x, y)) + w.value(pseudo_join(C, x, y))
    print(f"    {lhs} = {w.value(x) + w.value(y)}")
    print("  Bosbach: w(x) + w(x -> y) = w(y) + w(y -> x)")
    print(f"    {w.value(x) + w.value(C.impl(x, y))} = {w.value(y) + w.value(C.impl(y, x))}")

    print()
    print("the same weights induce a state of the envelope group Z^2")
    sigma = state_to_kgroup_state(C, w)
    e = KElement(pos=(3, 1), neg=(0, 4))
    print(f"  sigma[{e.pos} - {e.neg}] = w{e.pos} - w{e.neg} = {sigma.value(e)}")
    shifted = KElement(C.times(e.pos, (2, 5)), C.times(e.neg, (2, 5)))
    print("  shifting both sides by (2, 5) lands in the same class:")
    print(f"  sigma[{shifted.pos} - {shifted.neg}] = {sigma.value(shifted)}")


if __name__ == "__main__":
    main()
