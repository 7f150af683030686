#!/usr/bin/env python3
"""Count stable matchings in cyclic pair markets of growing size.

Odd cycles admit none; even cycles admit the two alternating tilings.
"""

import argparse

from balmatch.oracle import all_stable_matchings, cyclic_market


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-n", type=int, default=8)
    args = parser.parse_args()
    print(f"{'n':>3}  {'stable matchings':>16}")
    for n in range(3, args.max_n + 1):
        count = len(all_stable_matchings(cyclic_market(n)))
        print(f"{n:>3}  {count:>16}")


if __name__ == "__main__":
    main()
