"""A tour of the dual-rational interval: rationals plus one infinitesimal.

Every value is std + eps*inf with both parts exact fractions, ordered
lexicographically, and clamped to the unit interval: anything at 0 needs a
nonnegative infinitesimal part, anything at 1 a nonpositive one.
"""

from fractions import Fraction

from ellstates.hypernum import DualRational, dual, mv_neg, mv_oplus, mv_otimes, parse_dual


def show(label: str, x: DualRational) -> None:
    print(f"  {label:28s} {x}")


def main() -> None:
    print("construction and parsing")
    half = dual(Fraction(1, 2))
    below_one = dual(1, Fraction(-1, 3))
    above_zero = dual(0, 2)
    show("dual(1/2)", half)
    show("dual(1, -1/3)", below_one)
    show("dual(0, 2)", above_zero)
    show('parse_dual("3/4+e-2/5")', parse_dual("3/4+e-2/5"))

    print()
    print("the order is lexicographic: any positive standard gap beats")
    print("any infinitesimal one")
    tiny = dual(Fraction(1, 1000))
    print(f"  {above_zero} < {tiny}: {above_zero < tiny}")
    print(f"  {below_one} < {dual(1)}: {below_one < dual(1)}")
    print(f"  {dual(1, -5)} < {below_one}: {dual(1, -5) < below_one}")

    print()
    print("truncated sum and product act on both layers")
    x = dual(1, -2)
    show("x", x)
    show("neg x", mv_neg(x))
    show("x (+) x", mv_oplus(x, x))
    show("x (.) x", mv_otimes(x, x))
    print("  the sum hits the ceiling exactly, the product keeps drifting:")
    y = x
    for step in range(3):
        y = mv_otimes(y, x)
        show(f"x^{step + 2}", y)

    print()
    print("mixed standard/infinitesimal arithmetic stays exact")
    a = parse_dual("1/3+e1/7")
    b = parse_dual("1/6+e-1/7")
    show("a", a)
    show("b", b)
    show("a (+) b", mv_oplus(a, b))
    show("a (.) b", mv_otimes(a, b))

    print()
    print("values outside the interval are rejected")
    for std, inf in ((0, -1), (1, Fraction(1, 2)), (2, 0)):
        try:
            dual(std, inf)
        except ValueError as exc:
            print(f"  dual({std}, {inf}): {exc}")


if __name__ == "__main__":
    main()
