#!/usr/bin/env python3
"""Frozen oracle values for the test suite.

Everything here is computed without the C++ library: monomial counting and
Gaussian elimination mod p for Hilbert functions, closed-form Tor for free
and truncated generators, sympy for series identities, and a small
normalized bar complex for Hochschild homology.

    python3 tests/oracles/generate.py > tests/data/oracles.json
"""

import itertools
import json
import sys

import sympy as sp

t = sp.symbols("t")


# --- presentations ------------------------------------------------------

class Pres:
    """gens: list of (name, degree, kind); rels: sympy strings in even generators."""

    def __init__(self, char, gens, rels=()):
        self.p = char
        self.gens = gens
        self.syms = sp.symbols([g[0] for g in gens])
        self.rels = [sp.Poly(sp.sympify(r, locals=dict(zip([g[0] for g in gens], self.syms))), *self.syms)
                     for r in rels]

    def text(self):
        out = [f"char = {self.p}"]
        for name, deg, kind in self.gens:
            out.append(f"[gen] {name}, {deg}" + (", ext" if kind == "ext" else ""))
        for r in self.rels:
            out.append("[rel] " + str(r.as_expr()).replace("**", "^"))
        return "\n".join(out) + "\n"

    def cap(self, i):
        return 1 if self.gens[i][2] == "ext" else None

    def monomials(self, w):
        """Exponent vectors of weight w."""
        out = []

        def rec(i, left, acc):
            if i == len(self.gens):
                if left == 0:
                    out.append(tuple(acc))
                return
            d = abs(self.gens[i][1])
            top = left // d
            if self.cap(i) is not None:
                top = min(top, self.cap(i))
            for e in range(top + 1):
                rec(i + 1, left - e * d, acc + [e])

        rec(0, w, [])
        return out


def rank_mod_p(rows, p):
    rows = [dict(r) for r in rows if r]
    rank = 0
    pivots = {}
    for r in rows:
        r = {k: v % p for k, v in r.items() if v % p}
        while r:
            col = min(r)
            if col not in pivots:
                inv = pow(r[col], p - 2, p)
                pivots[col] = {k: v * inv % p for k, v in r.items()}
                rank += 1
                break
            piv = pivots[col]
            c = r[col]
            for k, v in piv.items():
                r[k] = (r.get(k, 0) - c * v) % p
                if r[k] == 0:
                    del r[k]
    return rank


def hilbert_dims(pres, bound):
    """dim of the quotient in each weight 0..bound by direct elimination."""
    dims = {}
    for w in range(bound + 1):
        basis = pres.monomials(w)
        index = {m: i for i, m in enumerate(basis)}
        rows = []
        for rel in pres.rels:
            rw = sum(abs(pres.gens[i][1]) * e for i, e in enumerate(rel.monoms()[0]))
            if rw > w:
                continue
            for m in pres.monomials(w - rw):
                row = {}
                for mono, c in zip(rel.monoms(), rel.coeffs()):
                    prod = tuple(a + b for a, b in zip(m, mono))
                    if any(pres.cap(i) is not None and prod[i] > pres.cap(i) for i in range(len(prod))):
                        continue
                    row[index[prod]] = row.get(index[prod], 0) + int(c)
                rows.append(row)
        dims[w] = len(basis) - rank_mod_p(rows, pres.p)
    return dims


# --- Tor of tensor products of monogenic pieces --------------------------

def tor_piece(kind, d, p, height, smax, tmax):
    """Tor^A(k,k) for A = k[x], Lambda(x) or k[x]/x^h with |x| = d > 0."""
    out = {}
    if kind == "poly":
        out[(0, 0)] = 1
        out[(1, d)] = 1
    elif kind == "ext" and p == 2:
        # x^2 = 0 in characteristic 2 is truncated of height 2
        return tor_piece("trunc", d, p, 2, smax, tmax)
    elif kind == "ext":
        for s in range(smax + 1):
            out[(s, s * d)] = 1
    else:
        for j in range(smax // 2 + 1):
            out[(2 * j, j * height * d)] = 1
            out[(2 * j + 1, j * height * d + d)] = 1
    return {k: v for k, v in out.items() if k[0] <= smax and k[1] <= tmax}


def tor_tensor(pieces, p, smax, tmax):
    acc = {(0, 0): 1}
    for kind, d, h in pieces:
        part = tor_piece(kind, d, p, h, smax, tmax)
        nxt = {}
        for (s1, t1), a in acc.items():
            for (s2, t2), b in part.items():
                s, tt = s1 + s2, t1 + t2
                if s <= smax and tt <= tmax:
                    nxt[(s, tt)] = nxt.get((s, tt), 0) + a * b
        acc = nxt
    return acc


# --- series ---------------------------------------------------------------

def coeffs(expr, n):
    s = sp.series(expr, t, 0, n + 1).removeO()
    poly = sp.Poly(s, t)
    return {k: int(poly.coeff_monomial(t ** k)) for k in range(n + 1)}


def functional_equation(expr):
    ratio = sp.factor(sp.simplify(expr.subs(t, 1 / t) / expr))
    c, rest = ratio.as_coeff_Mul()
    if rest == 1:
        return int(c), 0
    base, e = rest.as_base_exp()
    assert base == t and abs(c) == 1, ratio
    return int(c), int(e)


# --- normalized bar complex ---------------------------------------------

class Truncated:
    """k[x_1..x_n]/(x_i^{h_i}), even degrees, so no Koszul signs."""

    def __init__(self, p, degs, heights):
        self.p, self.degs, self.heights = p, degs, heights
        ranges = [range(h) if h else range(0) for h in heights]
        self.basis = [m for m in itertools.product(*[range(h) for h in heights])]
        self.weight = {m: sum(e * d for e, d in zip(m, degs)) for m in self.basis}

    def mul(self, a, b):
        c = tuple(x + y for x, y in zip(a, b))
        return c if all(e < h for e, h in zip(c, self.heights)) else None


def hh_bar(alg, coeff, smax, wmax):
    """dim HH_s of weight w from A (x) Abar^{(x)s} (coeff 'self') or Abar^{(x)s} (coeff 'k')."""
    p = alg.p
    one = tuple(0 for _ in alg.degs)
    bar = [m for m in alg.basis if m != one]
    left = alg.basis if coeff == "self" else [one]

    def chains(s, w):
        out = []
        for a0 in left:
            w0 = alg.weight[a0]
            if w0 > w:
                continue
            for tail in itertools.product(bar, repeat=s):
                if w0 + sum(alg.weight[x] for x in tail) == w:
                    out.append((a0,) + tail)
        return out

    def boundary(c):
        # b(a0[a1|...|as]) = a0a1[...] + sum (-1)^i a0[..|a_i a_{i+1}|..] + (-1)^s as a0[...]
        s = len(c) - 1
        terms = {}

        def put(key, sign):
            terms[key] = (terms.get(key, 0) + sign) % p

        prod = alg.mul(c[0], c[1])
        if prod is not None and (coeff == "self" or prod == one):
            put((prod,) + c[2:], 1)
        for i in range(1, s):
            prod = alg.mul(c[i], c[i + 1])
            if prod is not None and prod != one:
                put(c[:i] + (prod,) + c[i + 2:], (-1) ** i)
        prod = alg.mul(c[s], c[0])
        if prod is not None and (coeff == "self" or prod == one):
            put((prod,) + c[1:s], (-1) ** s)
        return {k: v for k, v in terms.items() if v}

    out = {}
    for w in range(wmax + 1):
        cells = [chains(s, w) for s in range(smax + 2)]
        ranks = []
        for s in range(smax + 2):
            if s == 0:
                ranks.append(0)
                continue
            index = {c: i for i, c in enumerate(cells[s - 1])}
            rows = [{index[k]: v for k, v in boundary(c).items()} for c in cells[s]]
            ranks.append(rank_mod_p(rows, p))
        for s in range(smax + 1):
            d = len(cells[s]) - ranks[s] - ranks[s + 1]
            if d:
                out[(s, w)] = d
    return out


# --- assembly -------------------------------------------------------------

def pairs(d):
    return [[s, tt, v] for (s, tt), v in sorted(d.items())]


def main():
    data = {}

    hilbert_cases = [
        Pres(3, [("mu", 2, "poly"), ("lam", 5, "ext")]),
        Pres(5, [("a", 2, "poly"), ("b", 4, "poly")], ["a^3 - 2*a*b", "b^2"]),
        Pres(2, [("x", 1, "ext"), ("y", 3, "ext"), ("z", 4, "poly")]),
        Pres(3, [("u", 2, "poly"), ("v", 6, "poly")], ["u^3 - v", "v^2"]),
        Pres(3, [("x", 2, "poly"), ("y", 2, "poly")], ["x^2 + y^2", "x*y"]),
        Pres(5, [("x", 4, "poly"), ("y", 6, "poly"), ("z", 3, "ext")], ["x^3 - y^2"]),
    ]
    data["hilbert"] = [{"presentation": pr.text(), "bound": 30,
                        "dims": [[w, d] for w, d in hilbert_dims(pr, 30).items()]} for pr in hilbert_cases]

    tor_cases = [
        (3, [("poly", 6, 0), ("ext", 5, 0)], Pres(3, [("mu6", 6, "poly"), ("lambda5", 5, "ext")])),
        (2, [("poly", 8, 0), ("ext", 5, 0), ("ext", 7, 0)],
         Pres(2, [("mu8", 8, "poly"), ("lambda5", 5, "ext"), ("lambda7", 7, "ext")])),
        (5, [("trunc", 2, 4)], Pres(5, [("v", 2, "poly")], ["v^4"])),
        (3, [("trunc", 2, 3), ("trunc", 6, 3)], Pres(3, [("mu2", 2, "poly"), ("g6", 6, "poly")], ["mu2^3", "g6^3"])),
        (3, [("ext", 3, 0), ("poly", 4, 0)], Pres(3, [("e3", 3, "ext"), ("y4", 4, "poly")])),
    ]
    data["tor"] = [{"presentation": pr.text(), "hom_bound": 6, "deg_bound": 36,
                    "entries": pairs(tor_tensor(pieces, p, 6, 36))} for p, pieces, pr in tor_cases]

    targets = {}
    for p in (2, 3, 5):
        targets[f"thh-z-p{p}"] = ((1 + t ** (2 * p - 1)) / (1 - t ** (2 * p)), 40)
    targets["thh-lu-p3"] = ((1 + t ** 5) * (1 + t ** 17) / (1 - t ** 18), 60)
    targets["thh-lu-p5"] = ((1 + t ** 9) * (1 + t ** 49) / (1 - t ** 50), 60)
    targets["thh-ko"] = ((1 + t ** 5) * (1 + t ** 7) / (1 - t ** 8), 40)
    data["series_targets"] = {k: {"max": n, "coeffs": [[d, c] for d, c in coeffs(e, n).items()]}
                              for k, (e, n) in targets.items()}

    fe_cases = {
        "k[x1]": (1 / (1 - t), 1),
        "thh-ko": ((1 + t ** 5) * (1 + t ** 7) / (1 - t ** 8), 1),
        "veen": ((1 + t ** 3) / (1 - t ** 2) ** 2, 2),
        "thh-z-p3": ((1 + t ** 5) / (1 - t ** 6), 1),
        "truncated-v4": ((1 - t ** 8) / (1 - t ** 2), 0),
    }
    data["functional_equations"] = {}
    for name, (e, r) in fe_cases.items():
        eps, ex = functional_equation(e)
        data["functional_equations"][name] = {"r": r, "epsilon": eps, "e": ex}

    # almost Gorenstein example p = (1 + t^2 + t^3)/(1 - t^4), r = 1, a = -5
    pser = (1 + t ** 2 + t ** 3) / (1 - t ** 4)
    r, a = 1, -5
    lhs = sp.together(pser.subs(t, 1 / t) - (-1) ** r * t ** (r - a) * pser)
    q = sp.factor(lhs / ((-1) ** (r - 1) * (1 + t)))
    assert sp.simplify(q.subs(t, 1 / t) - (-1) ** (r - 1) * t ** (a - r + 1) * q) == 0
    qnum = sp.Poly(sp.expand(sp.cancel(q * (1 - t ** 4))), t)
    data["almost_gorenstein"] = {
        "numerator": [[0, 1], [2, 1], [3, 1]], "denominator": [4], "r": r, "a": a,
        "q_numerator": [[m[0], int(c)] for m, c in zip(qnum.monoms(), qnum.coeffs())],
        "q_closed": str(q)}

    hh_cases = [
        ("F3[x2]/x2^3", Truncated(3, [2], [3]), Pres(3, [("x", 2, "poly")], ["x^3"])),
        ("F2[x2]/x2^2", Truncated(2, [2], [2]), Pres(2, [("x", 2, "poly")], ["x^2"])),
        ("F5[x2,y4]/(x2^2,y4^2)", Truncated(5, [2, 4], [2, 2]), Pres(5, [("x", 2, "poly"), ("y", 4, "poly")], ["x^2", "y^2"])),
        ("F3[x4]/x4^3", Truncated(3, [4], [3]), Pres(3, [("x", 4, "poly")], ["x^3"])),
    ]
    data["hochschild"] = []
    for name, alg, pr in hh_cases:
        for coeff in ("self", "k"):
            data["hochschild"].append({"name": name, "coefficients": coeff, "presentation": pr.text(),
                                       "hom_bound": 4, "weight_bound": 12,
                                       "entries": pairs(hh_bar(alg, coeff, 4, 12))})

    json.dump(data, sys.stdout, indent=1)
    sys.stdout.write("\n")


if __name__ == "__main__":
    main()
