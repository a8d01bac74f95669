#!/usr/bin/env python3
"""Independent oracle for the proof-term semantics over finite sets.

Evaluates lambda terms directly with an environment-based interpreter (no
categorical machinery: no curry/pair/copair), then serializes the results in
the canonical label encodings.  The C++ compiler goes through projections,
currying, and distribution instead; agreement of the two routes on these
samples is the point of the oracle.
"""
import itertools
import json

ARROW = "↦"


def fn_label(dom_sem, f):
    return "fn[" + ",".join(
        f"{serialize(a)}{ARROW}{serialize(f(a))}" for a in dom_sem) + "]"


class Func:
    """Semantic function value tagged with its (semantic) domain elements."""

    def __init__(self, dom_sem, fn):
        self.dom_sem, self.fn = dom_sem, fn


def serialize(v):
    if isinstance(v, Func):
        return fn_label(v.dom_sem, v.fn)
    if isinstance(v, tuple) and v and v[0] in ("inl", "inr"):
        return f"{v[0]}:{serialize(v[1])}"
    if isinstance(v, tuple):
        return f"({serialize(v[0])},{serialize(v[1])})"
    return v


def interp_formula(phi, val):
    """Returns the list of semantic elements of the interpretation."""
    kind = phi[0]
    if kind == "atom":
        return list(val[phi[1]])
    if kind == "top":
        return ["*"]
    if kind == "bot":
        return []
    a, b = interp_formula(phi[1], val), interp_formula(phi[2], val)
    if kind == "and":
        return [(x, y) for x in a for y in b]
    if kind == "or":
        return [("inl", x) for x in a] + [("inr", y) for y in b]
    if kind == "imp":
        out = []
        for images in itertools.product(b, repeat=len(a)):
            table = dict(zip([serialize(x) for x in a], images))
            out.append(Func(a, lambda x, t=table: t[serialize(x)]))
        return out
    raise ValueError(kind)


def evaluate(term, env, val):
    kind = term[0]
    if kind == "var":
        return env[term[1]]
    if kind == "lam":
        _, x, ty, body = term
        dom = interp_formula(ty, val)
        return Func(dom,
                    lambda d, x=x, body=body: evaluate(body, {**env, x: d}, val))
    if kind == "app":
        f, a = evaluate(term[1], env, val), evaluate(term[2], env, val)
        return f.fn(a)
    if kind == "pair":
        return (evaluate(term[1], env, val), evaluate(term[2], env, val))
    if kind == "fst":
        return evaluate(term[1], env, val)[0]
    if kind == "snd":
        return evaluate(term[1], env, val)[1]
    if kind == "unit":
        return "*"
    raise ValueError(kind)


def compiled_table(term, ty, val):
    """The closed term's compiled map 1 -> [[ty]] as {'*': label}."""
    v = evaluate(term, {}, val)
    return {"*": serialize(v)}


def main():
    p2 = ["a", "b"]
    q1 = ["c"]
    q2 = ["u", "v"]
    P, Q1, Q2 = ("atom", "p"), ("atom", "q"), ("atom", "q")

    id_term = ("lam", "x", P, ("var", "x"))
    swap = ("lam", "x", ("and", P, Q1),
            ("pair", ("snd", ("var", "x")), ("fst", ("var", "x"))))
    const = ("lam", "x", P, ("lam", "y", Q2, ("var", "x")))

    out = {
        "id_p2": compiled_table(id_term, None, {"p": p2}),
        "swap_p2_q1": compiled_table(swap, None, {"p": p2, "q": q1}),
        "swap_p2_q2": compiled_table(swap, None, {"p": p2, "q": q2}),
        "const_p2_q2": compiled_table(const, None, {"p": p2, "q": q2}),
        # abort-based bot -> p: p^0 is the singleton {fn[]} whatever |p| is
        "abort_bot_p": {"*": "fn[]"},
        "card_not_p2_D_empty": 0 ** 2,   # |0^p| for |p|=2
        "card_not_bot_D_empty": 0 ** 0,  # |0^0|
        # a beta redex and its contractum: (\x. (snd x, fst x)) (unit, unit)
        "beta_sample": serialize(evaluate(
            ("app", ("lam", "x", ("and", ("top",), ("top",)),
                     ("pair", ("snd", ("var", "x")), ("fst", ("var", "x")))),
             ("pair", ("unit",), ("unit",))), {}, {})),
    }
    print(json.dumps(out, indent=2, sort_keys=True, ensure_ascii=False))


if __name__ == "__main__":
    main()
