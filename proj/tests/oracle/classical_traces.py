# Expands classical traces of path words with sympy; output is pasted into tests.
import sympy as sp

R = sp.Matrix([[1, 1], [-1, 0]])
L = sp.Matrix([[0, 1], [-1, -1]])
K = sp.Matrix([[0, 0], [-1, 0]])


def trace(word, gens):
    s = {g: sp.Symbol("h_" + g, positive=True) for g in gens}  # h = e^{Y/2}
    m = sp.eye(2)
    for tok in word.split():
        if tok == "L":
            m = m * L
        elif tok == "R":
            m = m * R
        elif tok == "K":
            m = m * K
        else:
            h = s[tok[2:-1]]
            m = m * sp.Matrix([[0, -h], [1 / h, 0]])
    return sp.expand(m.trace()), s


def canonical(expr, s, gens):
    terms = []
    for t in sp.Add.make_args(expr):
        c, rest = t.as_coeff_Mul()
        pw = rest.as_powers_dict()
        parts = [f"{int(pw.get(s[g], 0))}*{g}" for g in gens if pw.get(s[g], 0)]
        terms.append(f"{c} exp(({' + '.join(parts)})/2)" if parts else f"{c}")
    return " + ".join(sorted(terms))


CASES = [
    ("torus11", ["Z1", "Z2", "Z3"], "L X(Z2) R X(Z3)"),
    ("torus11", ["Z1", "Z2", "Z3"], "L X(Z1) R X(Z2)"),
    ("s111", ["pi", "Z1", "Z2", "Z3", "Z4"], "L X(Z2) R X(Z4) L X(Z1)"),
    ("s111", ["pi", "Z1", "Z2", "Z3", "Z4"], "L X(Z2) L X(Z3) R X(Z1)"),
    ("s111", ["pi", "Z1", "Z2", "Z3", "Z4"],
     "R X(Z1) L X(Z3) L X(Z4) L X(Z1) L X(Z2) L X(Z3) L X(Z4) L X(Z2)"),
    ("quad014", ["pi1", "pi2", "pi3", "pi4", "Z"], "K X(pi3) L X(Z) R X(pi1)"),
    ("quad014", ["pi1", "pi2", "pi3", "pi4", "Z"], "K X(pi3) R X(Z) L X(pi1)"),
]

if __name__ == "__main__":
    for surf, gens, w in CASES:
        e, s = trace(w, gens)
        print(surf, "|", w, "|", canonical(e, s, gens))
