#!/usr/bin/env python3
"""Independent oracle for the canonical finite-set constructions.

Recomputes, straight from the documented encodings, the element orders and
tables that the C++ tests freeze: product/coproduct/exponential element
sequences, the curry example, the evaluation table, the distribution
isomorphism, and mediator-uniqueness counts on a sample size.
"""
import itertools
import json

ARROW = "↦"  # the arrow used inside fn[...] labels


def product_elems(A, B):
    # A-major lexicographic: the A component varies slowest
    return [f"({a},{b})" for a in A for b in B]


def coproduct_elems(A, B):
    return [f"inl:{a}" for a in A] + [f"inr:{b}" for b in B]


def fn_label(A, images):
    return "fn[" + ",".join(f"{a}{ARROW}{b}" for a, b in zip(A, images)) + "]"


def exponential_elems(A, B):
    # ordered lexicographically by image sequence (first slot slowest);
    # for empty A this is the single empty function "fn[]"
    out = []
    for images in itertools.product(B, repeat=len(A)):
        out.append(fn_label(A, images))
    return out


def ev_table(A, B):
    """ev: B^A x A -> B as a dict on tuple labels."""
    table = {}
    for images in itertools.product(B, repeat=len(A)):
        h = fn_label(A, images)
        for a, b in zip(A, images):
            table[f"({h},{a})"] = b
    return table


def distribution_table(G, A, B):
    """G x (A+B) -> (G x A) + (G x B), elementwise."""
    table = {}
    for g in G:
        for t in coproduct_elems(A, B):
            if t.startswith("inl:"):
                table[f"({g},{t})"] = f"inl:({g},{t[4:]})"
            else:
                table[f"({g},{t})"] = f"inr:({g},{t[4:]})"
    return table


def mediator_counts(X, A, B):
    """For every f: X->A, g: X->B count maps m: X->AxB with proj equations."""
    P = product_elems(A, B)
    counts = set()
    for f in itertools.product(A, repeat=len(X)):
        for g in itertools.product(B, repeat=len(X)):
            n = 0
            for m in itertools.product(P, repeat=len(X)):
                # projections read components straight off the tuple label
                fst = tuple(p[1:-1].split(",", 1)[0] for p in m)
                snd = tuple(p[1:-1].split(",", 1)[1] for p in m)
                if fst == f and snd == g:
                    n += 1
            counts.add(n)
    return sorted(counts)


def main():
    A2 = ["a1", "a2"]
    B3 = ["b1", "b2", "b3"]
    bit = ["0", "1"]
    out = {
        "product_A2xB3": product_elems(A2, B3),
        "coproduct_A2+B3": coproduct_elems(A2, B3),
        "exponential_bit_bit": exponential_elems(bit, bit),
        "identity_element_of_bit^bit": fn_label(bit, bit),
        "exponential_empty_domain": exponential_elems([], B3),
        "ev_table_bit_bit": ev_table(bit, bit),
        # curry example: X={x}, A=B=bit, f(x,a)=a  ->  curry(f)(x) = identity elt
        "curry_example_image": fn_label(bit, bit),
        "distribution_G2_A1_B2": distribution_table(["g1", "g2"], ["a"], ["b1", "b2"]),
        "mediator_counts_X2_A2_B2": mediator_counts(["x1", "x2"], A2, ["b1", "b2"]),
        "hom_counts_sizes_1_2": [1 ** 1, 2 ** 1, 1 ** 2, 2 ** 2],
    }
    print(json.dumps(out, indent=2, sort_keys=True, ensure_ascii=False))


if __name__ == "__main__":
    main()
