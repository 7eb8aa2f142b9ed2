"""Independent derivation of the explanation goldens.

Uses exact rationals and decimal half-up rounding, so it shares no code or
floating-point behaviour with the C++ renderer. Run it to regenerate the
values frozen into explain_test.cc and the acceptance binary.
"""

from decimal import ROUND_HALF_UP, Decimal
from fractions import Fraction as F


def prob(score):
    return (F(score) + 1) / 2


def pct(p):
    d = Decimal(p.numerator) / Decimal(p.denominator) * 100
    return str(d.quantize(Decimal("0.01"), rounding=ROUND_HALF_UP)) + "%"


def fixed(x, places):
    d = Decimal(x.numerator) / Decimal(x.denominator)
    return str(d.quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_UP))


def dec(s):
    return F(Decimal(s))


def main():
    print("probability mapping")
    for s in ["0.0981", "0.3548", "0.7482", "0.2857", "0", "-1", "1"]:
        print(f"  {s} -> {pct(prob(dec(s)))}")
    print("  margin 0.3548/0.2857 ->", pct(prob(dec("0.3548")) - prob(dec("0.2857"))))
    print("  margin 0.7482/0.4822 ->", pct(prob(dec("0.7482")) - prob(dec("0.4822"))))
    print("  delta 0.1250->0.3548 ->", pct(prob(dec("0.3548")) - prob(dec("0.1250"))))
    print("  nst 0.719830 ->", pct(prob(dec("0.719830"))))
    print("  mast 0.499414-0.275278 ->", pct(prob(dec("0.499414")) - prob(dec("0.275278"))))

    print("constructed snapshots (visits, reward sum)")
    scores = {
        "breakthrough win: selected H6-H7": F(94, 204),
        "breakthrough win: B2-C3": F(-5, 17),
        "breakthrough win: D6-C7": F(61, 155),
        "breakthrough win: slight-adv min": F(1, 9),
        "minishogi: D2-C3": F(11, 31),
        "minishogi: B1-B2": F(8, 28),
        "minishogi: D2-E3": F(-2, 8),
        "minishogi: weakest": F(-4, 6),
        "breakthrough mast/nst: E4-D5": F(3850, 5146),
        "breakthrough mast/nst: C6-B7": F(95, 197),
        "breakthrough mast/nst: worst": F(3, 22),
        "gomoku: K12": F(109, 1111),
        "gomoku: slight-adv min": F(88, 875),
        "gomoku: slight-dis max": F(-1, 8),
        "gomoku: decisive-dis max": F(-3, 5),
        "uttt: I5": F(398, 4922),
        "uttt: G5": F(203, 2500),
        "uttt: G4": F(162, 2749),
        "uttt: H5": F(11, 1122),
        "connect four: E1/2": F(38, 64),
        "connect four: 0.40 move": F(2, 5),
        "connect four: -1/3 move": F(-1, 3),
    }
    for name, score in scores.items():
        print(f"  {name}: score {fixed(score, 4)} probability {pct(prob(score))}")

    print("derived sentences")
    print("  minishogi margin", pct(prob(F(11, 31)) - prob(F(8, 28))))
    print("  minishogi delta", pct(prob(F(11, 31)) - prob(dec("0.1250"))))
    print("  breakthrough mast/nst margin", pct(prob(F(3850, 5146)) - prob(F(95, 197))))
    print("  breakthrough mast/nst delta", pct(prob(F(3850, 5146)) - prob(dec("0.5612"))))
    print("  gomoku advantage", pct(1 - prob(F(109, 1111))))
    print("  gomoku amaf", pct(prob(dec("0.1014")) - prob(dec("0.0426"))))
    print("  uttt advantage", pct(prob(F(203, 2500)) - prob(F(398, 4922))))
    print("  connect four worst cutoff", pct(1 - F(1, 10)))


if __name__ == "__main__":
    main()
