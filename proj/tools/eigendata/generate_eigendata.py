#!/usr/bin/env python3
"""Regenerate the Hecke eigenvalue bundle consumed by `lpcert`.

Requires PARI/GP through the `cypari` Python binding, python-flint and numpy
(pip install cypari python-flint numpy).

The twelve normalized eigenforms h1..h12 span the cuspidal parts of
M_3(Gamma_0(48), chi_-3) and M_3(Gamma_0(48), chi_-4) together with their
scalings.  They are pinned down as follows (embeddings chosen so that the
sign conventions below hold):

  h1        newform 12.3 chi_-3, rational CM form  q - 3q^3 + 2q^7 + ...
  h2, h3    newform 24.3 chi_-3, Q(sqrt-2),  lambda_h2(3) = 1 + sqrt(-8)
  h4        h1 twisted by chi_-4 (level 48)
  h5, h6    h2, h3 twisted by chi_-4 (level 48)
  h7, h8    newform 12.3 chi_-4, Q(sqrt-3),  lambda_h7(2) = -1 + sqrt(-3)
  h9, h10   newform 48.3 chi_-4, Q(sqrt-3),  lambda_h9(3) = -sqrt(-3)
  h11, h12  f41 -+ 3 f41(3z) with f41 = eta(4z)^6 (16.3 chi_-4), lambda(3) = -+3

Output format (one record per form and prime):
  primebound <P>
  form <id> level <L> char <3|4> disc <d> partner <id|none>
  <id> <p> <a_num>/<a_den> <b_num>/<b_den>      # lambda(p) = a + b sqrt(d)

Usage: generate_eigendata.py --bound 1000000 --out data/eigen_48.txt
       [--check 2000] [--basis-fixture tests/data/pari_cusp_basis.txt]
"""

import argparse
import gzip
import itertools
import math
import sys
from fractions import Fraction

import flint
import numpy as np
from cypari import pari


def chi4(n):
    return 0 if n % 2 == 0 else (1 if n % 4 == 1 else -1)


def chi3(n):
    r = n % 3
    return 0 if r == 0 else (1 if r == 1 else -1)


def newform(level, char, index=1):
    pari(f"mf_=mfinit([{level},3,{char}],0); L_=mfeigenbasis(mf_); F_=L_[{index}];")
    return pari("F_")


# ---------------------------------------------------------------------------
# Fast coefficients.  Every form of M_3(Gamma_0(48), chi) is a rational
# combination of products of three weight-one binary theta series
#   A = x^2+xy+y^2, B = x^2+3y^2 (character chi_-3),
#   C = x^2+y^2,   D = x^2+4y^2 (character chi_-4),
# at suitable scalings.  The combination is fitted on the first FIT
# coefficients (far beyond the Sturm bound 24) and the products are then
# expanded to the full bound with FLINT.

FIT = 400
GENS3 = [("A", 1, 1, 1, d) for d in (1, 2, 4, 8, 16)] + [("B", 1, 0, 3, d) for d in (1, 2, 4)]
GENS4 = [("C", 1, 0, 1, d) for d in (1, 2, 3, 4, 6, 12)] + [("D", 1, 0, 4, d) for d in (1, 3)]


def binary_theta(a, b, c, d, N):
    """Coefficients of sum q^(d Q(x,y)) up to q^N as a numpy array."""
    out = np.zeros(N + 1, dtype=np.int64)
    M = N // d
    disc = 4 * a * c - b * b
    ymax = math.isqrt(4 * a * M // disc) + 1
    for y in range(-ymax, ymax + 1):
        # a x^2 + b y x + (c y^2 - M) <= 0
        rad = b * b * y * y - 4 * a * (c * y * y - M)
        if rad < 0:
            continue
        r = math.isqrt(rad)
        x = np.arange((-b * y - r) // (2 * a) - 1, (-b * y + r) // (2 * a) + 2, dtype=np.int64)
        q = a * x * x + b * x * y + c * y * y
        q = q[(q >= 0) & (q <= M)]
        np.add.at(out, q * d, 1)
    return out


def product_candidates(ch):
    gens = GENS3 + GENS4
    out = []
    for tri in itertools.combinations_with_replacement(range(len(gens)), 3):
        n4 = sum(1 for t in tri if t >= len(GENS3))
        if (ch == -4) != (n4 % 2 == 1):
            continue
        out.append(tuple(gens[t] for t in tri))
    return out


class ThetaProducts:
    def __init__(self, N):
        self.N = N
        self.small = {}
        self.big = {}
        self.theta_small = {}
        self.theta_big = {}

    def _theta(self, g, N, cache):
        if g not in cache:
            cache[g] = binary_theta(g[1], g[2], g[3], g[4], N)
        return cache[g]

    def small_vec(self, tri):
        if tri not in self.small:
            v = [self._theta(g, FIT, self.theta_small) for g in tri]
            w = np.convolve(np.convolve(v[0], v[1])[: FIT + 1], v[2])[: FIT + 1]
            self.small[tri] = [int(t) for t in w]
        return self.small[tri]

    def big_poly(self, tri):
        if tri not in self.big:
            ps = [flint.fmpz_poly([int(t) for t in self._theta(g, self.N, self.theta_big)]) for g in tri]
            self.big[tri] = ps[0].mul_low(ps[1], self.N + 1).mul_low(ps[2], self.N + 1)
        return self.big[tri]


def fit_combination(tp, ch, target):
    """Rational c with sum c_i P_i = target on the first FIT coefficients."""
    cands = product_candidates(ch)
    cols = [tp.small_vec(t) for t in cands]
    M = pari.matrix(FIT + 1, len(cols), [cols[j][i] for i in range(FIT + 1) for j in range(len(cols))])
    idx = [int(i) - 1 for i in pari.matindexrank(M)[1]]
    Msel = pari.matrix(FIT + 1, len(idx), [cols[j][i] for i in range(FIT + 1) for j in idx])
    sol = pari.matinverseimage(Msel, pari.Col(target))
    if len(sol) == 0:
        raise SystemExit("target is not in the span of the theta products")
    coeffs = [Fraction(str(c)) for c in sol]
    check = [sum(c * cols[j][i] for c, j in zip(coeffs, idx)) for i in range(FIT + 1)]
    assert check == [Fraction(t) for t in target]
    return [(cands[j], c) for j, c in zip(idx, coeffs) if c != 0]


def expand(tp, combo, primes):
    den = 1
    for _, c in combo:
        den = den * c.denominator // math.gcd(den, c.denominator)
    acc = flint.fmpz_poly([0])
    for tri, c in combo:
        acc += tp.big_poly(tri) * int(c * den)
    co = acc.coeffs()
    out = {}
    for p in primes:
        v = Fraction(int(co[p]) if p < len(co) else 0, den)
        out[p] = v
    return out


def coeffs_at_primes(tp, ch, primes):
    """Return {p: (a, b)} with lambda(p) = a + b*y in the form's field."""
    pari(f"V_=mfcoefs(F_,{FIT}); V_=vector(#V_,i,lift(V_[i]));")
    comp = []
    for k in (0, 1):
        comp.append([Fraction(str(pari(f"polcoef(V_[{i + 1}],{k},'y)"))) for i in range(FIT + 1)])
    res = []
    for t in comp:
        if all(v == 0 for v in t):
            res.append({p: Fraction(0) for p in primes})
            continue
        den = 1
        for v in t:
            den = den * v.denominator // math.gcd(den, v.denominator)
        combo = fit_combination(tp, ch, [int(v * den) for v in t])
        vals = expand(tp, combo, primes)
        res.append({p: vals[p] / den for p in primes})
    return {p: (res[0][p], res[1][p]) for p in primes}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--bound", type=int, default=1000000)
    ap.add_argument("--out", required=True)
    ap.add_argument("--check", type=int, default=2000,
                    help="cross-check reconstructed basis against PARI up to this n")
    ap.add_argument("--basis-fixture", default=None,
                    help="also write PARI's cuspidal basis coefficients up to --check")
    args = ap.parse_args()
    pari.allocatemem(4 * 10**9)
    P = args.bound
    primes = [int(p) for p in pari(f"primes([2,{P}])")]
    tp = ThetaProducts(P)

    print("h1 (12, chi_-3)", file=sys.stderr)
    newform(12, -3)
    h1 = coeffs_at_primes(tp, -3, primes)
    print("h2 (24, chi_-3)", file=sys.stderr)
    newform(24, -3)
    h2raw = coeffs_at_primes(tp, -3, primes)
    print("h7 (12, chi_-4)", file=sys.stderr)
    newform(12, -4)
    h7raw = coeffs_at_primes(tp, -4, primes)
    print("h9 (48, chi_-4)", file=sys.stderr)
    newform(48, -4)
    h9raw = coeffs_at_primes(tp, -4, primes)
    print("f41 (16, chi_-4)", file=sys.stderr)
    newform(16, -4)
    f41 = coeffs_at_primes(tp, -4, primes)

    # Embeddings.  Q(sqrt-2): y -> +sqrt(-2) gives lambda_h2(3) = 1 + 2 sqrt(-2).
    h2 = {p: (a, b) for p, (a, b) in h2raw.items()}
    assert h2[3] == (1, 2), h2[3]
    # Q(zeta_6), y^2 - y + 1: y = (1 -+ sqrt-3)/2.
    h7 = {p: (a + b / 2, -b / 2) for p, (a, b) in h7raw.items()}
    assert h7[2] == (-1, 1), h7[2]
    h9 = {p: (a + b / 2, b / 2) for p, (a, b) in h9raw.items()}
    assert h9[3] == (0, -1), h9[3]

    forms = {}
    forms["h1"] = {p: (h1[p][0], Fraction(0)) for p in h1}
    forms["h2"] = h2
    forms["h3"] = {p: (a, -b) for p, (a, b) in h2.items()}
    forms["h4"] = {p: (chi4(p) * h1[p][0], Fraction(0)) for p in h1}
    forms["h5"] = {p: (chi4(p) * a, chi4(p) * b) for p, (a, b) in h2.items()}
    forms["h6"] = {p: (chi4(p) * a, -chi4(p) * b) for p, (a, b) in h2.items()}
    forms["h7"] = h7
    forms["h8"] = {p: (a, -b) for p, (a, b) in h7.items()}
    forms["h9"] = h9
    forms["h10"] = {p: (a, -b) for p, (a, b) in h9.items()}
    forms["h11"] = {p: ((Fraction(-3) if p == 3 else f41[p][0]), Fraction(0)) for p in f41}
    forms["h12"] = {p: ((Fraction(3) if p == 3 else f41[p][0]), Fraction(0)) for p in f41}

    meta = [
        ("h1", 12, 3, 0, "none"), ("h2", 24, 3, -2, "h3"), ("h3", 24, 3, -2, "h2"),
        ("h4", 48, 3, 0, "none"), ("h5", 48, 3, -2, "h6"), ("h6", 48, 3, -2, "h5"),
        ("h7", 12, 4, -3, "h8"), ("h8", 12, 4, -3, "h7"), ("h9", 48, 4, -3, "h10"),
        ("h10", 48, 4, -3, "h9"), ("h11", 48, 4, 0, "none"), ("h12", 48, 4, 0, "none"),
    ]

    if args.check:
        cross_check(forms, args.check, args.basis_fixture)

    opener = gzip.open if args.out.endswith(".gz") else open
    with opener(args.out, "wt") as fh:
        fh.write("# Hecke eigenvalues lambda(p) = a + b*sqrt(disc) for the normalized\n")
        fh.write("# eigenforms h1..h12 of weight 3, level dividing 48, characters chi_-3 / chi_-4.\n")
        fh.write("# Generated by tools/eigendata/generate_eigendata.py with PARI/GP "
                 + str(pari("version()")) + ".\n")
        fh.write(f"primebound {P}\n")
        for fid, lvl, ch, d, partner in meta:
            fh.write(f"form {fid} level {lvl} char {ch} disc {d} partner {partner}\n")
        for p in sorted(h1):
            for fid, *_ in meta:
                a, b = forms[fid][p]
                fh.write(f"{fid} {p} {a.numerator}/{a.denominator} {b.numerator}/{b.denominator}\n")


def cross_check(forms, nmax, fixture):
    """Rebuild the PARI cuspidal basis from h1..h12 and compare exactly."""
    import sympy

    def lam(fid, n):
        # multiplicative extension with Hecke recursion, exact in Q(sqrt d) as (a,b)
        d = {"h1": 0, "h4": 0, "h11": 0, "h12": 0, "h2": -2, "h3": -2, "h5": -2, "h6": -2}.get(fid, -3)
        ch = chi3 if fid in ("h1", "h2", "h3", "h4", "h5", "h6") else chi4

        def mul(x, y):
            return (x[0] * y[0] + d * x[1] * y[1], x[0] * y[1] + x[1] * y[0])

        res = (Fraction(1), Fraction(0))
        for p, e in sympy.factorint(n).items():
            lp = forms[fid][p]
            prev, cur = (Fraction(1), Fraction(0)), lp
            if p in (2, 3):
                cur = (Fraction(1), Fraction(0))
                for _ in range(e):
                    cur = mul(cur, lp)
            else:
                for _ in range(e - 1):
                    nxt = mul(lp, cur)
                    c = ch(p) * p * p
                    nxt = (nxt[0] - c * prev[0], nxt[1] - c * prev[1])
                    prev, cur = cur, nxt
            res = mul(res, cur)
        return res

    def re(x):
        return x[0]

    def im_coeff(x):
        return x[1]  # coefficient of sqrt(d)

    def basis(n):
        """[13]_n..[22]_n and [35]_n..[44]_n from the eigenforms."""
        out = {}
        sc = lambda k, s: (n % s == 0) and k(n // s) or 0
        def c13(m): return re(lam("h1", m))
        def c16(m): return 2 * re(lam("h2", m))
        # (1 + sqrt(-8)) h2 + conj = 2 Re - 2*2*(-2)... computed with sqrt(-2) = i sqrt2:
        # (1 + 2 s) * (a + b s) with s^2 = -2 -> real part a - 4b
        def c18(m):
            a, b = lam("h2", m)
            return 2 * (a - 4 * b)
        def c20(m): return chi4(m) * (c13(m) + c16(m))
        def c21(m): return chi4(m) * (3 * c13(m) - c18(m))
        def c22(m): return chi4(m) * (2 * c16(m) - 2 * c18(m))
        def c35(m): return 2 * re(lam("h7", m))
        # (-1 + s) h7 - (1 + s) h8, s = sqrt(-3): real part of 2*(-1+s)(a+bs) = 2(-a - 3b)
        def c38(m):
            a, b = lam("h7", m)
            return 2 * (-a - 3 * b)
        def c41(m): return (re(lam("h11", m)) + re(lam("h12", m))) / 2
        def c43(m): return 2 * re(lam("h9", m))
        # sqrt(-3) (h10 - h9) = sqrt(-3) * (-2 b sqrt(-3)) = 6 b
        def c44(m): return 6 * im_coeff(lam("h9", m))
        out[13] = c13(n); out[14] = sc(c13, 2); out[15] = sc(c13, 4)
        out[16] = c16(n); out[17] = sc(c16, 2); out[18] = c18(n); out[19] = sc(c18, 2)
        out[20] = c20(n); out[21] = c21(n); out[22] = c22(n)
        out[35] = c35(n); out[36] = sc(c35, 2); out[37] = sc(c35, 4)
        out[38] = c38(n); out[39] = sc(c38, 2); out[40] = sc(c38, 4)
        out[41] = c41(n); out[42] = sc(c41, 3); out[43] = c43(n); out[44] = c44(n)
        return out

    rows = {}
    for ch, offset in ((-3, 13), (-4, 35)):
        pari(f"mfF_=mfinit([48,3,{ch}],4); BB_=mfbasis(mfF_);")
        for j in range(10):
            v = pari(f"mfcoefs(BB_[{13 + j}],{nmax})")
            rows[offset + j] = [Fraction(str(c)) for c in v]
    for n in range(1, nmax + 1):
        got = basis(n)
        for idx, val in got.items():
            if Fraction(val) != rows[idx][n]:
                raise SystemExit(f"mismatch [{idx}]_{n}: eigen {val} vs PARI {rows[idx][n]}")
    print(f"cross-check against PARI basis passed for n <= {nmax}", file=sys.stderr)
    if fixture:
        with open(fixture, "w") as fh:
            fh.write("# PARI mfbasis cuspidal coefficients [i]_n for n = 1..N, one line per basis index\n")
            for idx in sorted(rows):
                fh.write(str(idx) + " " + " ".join(str(int(c)) for c in rows[idx][1:]) + "\n")


if __name__ == "__main__":
    main()
