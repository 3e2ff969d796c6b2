"""Weighted and alternating sublink sums of small links, and their (A+1)-divisibility."""
from __future__ import annotations

from skeinlab import corpus
from skeinlab.diagram import components
from skeinlab.exactnum import divisibility_order
from skeinlab.filtration import A_PLUS_ONE, combination_bracket, finite_type_sum, star_element
from skeinlab.tlcalc import bracket


def main():
    for name in ("unknot", "hopf", "trefoil", "hopf_chain3", "hopf_chain4", "unlink3"):
        w = corpus.get(name)
        c = len(components(w))
        print(f"{name}: {c} components, bracket {bracket(w)}")
        for m in range(1, min(c, 3) + 1):
            value = combination_bracket(star_element(w, range(m)))
            print(f"  {m} marked: (A+1)-order {divisibility_order(value, A_PLUS_ONE)}")
        for n in range(c):
            res = finite_type_sum(w, n)
            print(f"  alternating sum, order {n}: (A+1)-order {res.divisibility}")


if __name__ == "__main__":
    main()
