"""Tour of the cross-ratio family.

Every graph here lives on the point pairs of a projective line and is
symmetric under a three-transitive group; collapsing each fiber of the
pair partition gives a complete graph.  The script walks the field
sizes up to 16 and shows how the shift element's closure degree s(d)
and the chosen divisor s trade off in the cross valency t = s(d)/s,
then demonstrates the self-paired gate of the twisted variant.

Run from the repository root after an editable install:

    python3 demos/cross_ratio_tour.py
"""

from symquot import (
    NotSelfPairedError,
    compute_params,
    cross_ratio_graph,
    field,
    recognize_structure,
    twisted_cross_ratio_graph,
)


def parameter_table() -> None:
    print("tag                 v   b   s   t   m   r   k   structure")
    for q, idx, s in (
        (3, 2, 1),
        (4, 2, 1),
        (4, 2, 2),
        (5, 4, 1),
        (8, 2, 1),
        (8, 2, 3),
        (9, 3, 1),
        (9, 3, 2),
    ):
        T = cross_ratio_graph(q, idx, s)
        P = compute_params(T)
        tag = f"cr:q={q}:d={idx}:s={s}"
        shape = recognize_structure(T.graph)
        print(
            f"{tag:<18}{P.v:>4}{P.b:>4}{P.s:>4}{P.t:>4}"
            f"{P.m:>4}{P.r:>4}{P.k:>4}   {shape}"
        )
    print()
    print("Within one field, s runs over the divisors of the closure")
    print("degree s(d); the cross valency is always t = s(d)/s.")


def closure_degrees() -> None:
    F = field(3, 2)
    print(f"\nclosure degrees over the {F.order}-element field:")
    for idx in range(2, F.order):
        el = F.element(idx)
        print(f"  element {idx}: s(d) = {F.subfield_degree(el)}")


def twisted_gate() -> None:
    print("\nThe twisted variant only exists when d - 1 is a square:")
    F = field(3, 2)
    one = F.element(1)
    squares = {F.element(i) * F.element(i) for i in range(9)}
    for idx in range(3, 9):
        mark = "square" if F.element(idx) - one in squares else "non-square"
        try:
            T = twisted_cross_ratio_graph(9, idx, 2)
            P = compute_params(T)
            print(f"  d = element {idx} ({mark}): built, k = {P.k}, t = {P.t}")
        except NotSelfPairedError:
            print(f"  d = element {idx} ({mark}): rejected, not self-paired")


if __name__ == "__main__":
    parameter_table()
    closure_degrees()
    twisted_gate()
