#!/usr/bin/env python3
"""Independent reference values for the C++ tests.

Everything here is recomputed from the closed-form definitions with Python
integers, fractions and mpmath (60 digits); nothing is read from the C++
code. Run with --check to compare against the committed header instead of
rewriting it.
"""
import argparse
import sys
from fractions import Fraction
from math import comb, factorial, ceil
from pathlib import Path

import mpmath as mp

mp.mp.dps = 60

TABLE = {(3, 3): 6, (3, 4): 9, (3, 5): 14, (3, 6): 18, (3, 7): 23, (3, 8): 28,
         (3, 9): 36, (4, 4): 18, (4, 5): 25, (3, 3, 3): 17}


def multinomial(ks):
    out = factorial(sum(ks))
    for k in ks:
        out //= factorial(k)
    return out


def ramsey_upper(ks, table):
    ks = sorted(ks)
    if any(k <= 1 for k in ks):
        return 1
    rest = [k for k in ks if k != 2]
    if not rest:
        return 2
    if len(rest) == 1:
        return rest[0]
    if table and tuple(rest) in TABLE:
        return TABLE[tuple(rest)]
    return min(multinomial([k - 1 for k in rest]), multinomial(rest))


def specifics(t, table):
    m = (3 * t + 1) // 2
    p = max(ramsey_upper([t - a, t - (m - a)], table) for a in range(m + 1))
    n = 2 ** m * p
    return p, m * n + p * (p - 1) // 2


def multicolor(q, t, table):
    m = min((q - 1) * t, q * (t - 2) + 1)

    def splits(k, left):
        if k == 1:
            yield (left,)
            return
        for a in range(left + 1):
            for rest in splits(k - 1, left - a):
                yield (a,) + rest

    p = max(ramsey_upper([t - a for a in s], table) for s in splits(q, m))
    return p, m * q ** m * p + p * (p - 1) // 2


def main_budget(t, alpha, mu, nu, table):
    mu_c, nu_c = ceil(mu * t), ceil(nu * t)
    low, diag = ceil((1 - mu) * t), ceil((1 - nu) * t)
    p = max(ramsey_upper([low, t], table), ramsey_upper([diag, diag], table))
    growth = Fraction(2) / alpha
    growth = growth ** nu_c / (1 - alpha) ** mu_c
    n = ceil(growth) * p
    total = (mu_c + nu_c - 1) * n + p * (p - 1) // 2
    return p, n, total


def bipartite(q, t):
    qm, tm = mp.mpf(q), mp.mpf(t)
    lg = mp.log(tm, q)
    declared = 48 * qm ** (t + 2) * tm ** (3 - 1 / qm) * lg ** (1 / qm)
    m_size = int(mp.ceil(6 * qm ** (t + 1) * lg))
    n2 = int(mp.ceil(12 * qm ** t * tm ** (1 - 1 / qm) * lg ** (1 / qm)))
    eps = (qm - 1) * (lg - mp.log(lg, q)) / (qm * qm * tm)
    return declared, m_size, n2, eps


def growth_link(q, t):
    lg = mp.log(t, q)
    return (1 + 2 * lg ** 2 / mp.mpf(t) ** 2) ** t


def diagonal_log2(k, l, c):
    lk = mp.log(k)
    return mp.log(comb(k + l, k), 2) - c * (lk / mp.log(lk)) * mp.log(k, 2)


def fmt(x):
    return mp.nstr(x, 30, strip_zeros=False)


def build():
    rows = []

    def real(name, value):
        rows.append(f'inline constexpr const char* {name} = "{fmt(value)}";')

    def integer(name, value):
        rows.append(f'inline constexpr const char* {name} = "{value}";')

    for q, t in [(2, 4), (2, 5), (2, 6), (2, 8), (3, 3)]:
        declared, m_size, n2, eps = bipartite(q, t)
        real(f"kBipartiteDeclared_{q}_{t}", declared)
        integer(f"kBipartiteM_{q}_{t}", m_size)
        integer(f"kBipartiteN2_{q}_{t}", n2)
        real(f"kBipartiteEps_{q}_{t}", eps)
    real("kGrowthLink_2_6", growth_link(2, 6))
    real("kDiagonalLog2_16_16_quarter", diagonal_log2(16, 16, mp.mpf("0.25")))
    real("kDiagonalLog2_12_20_half", diagonal_log2(12, 20, mp.mpf("0.5")))

    for t in range(2, 13):
        for label, table in (("table", True), ("es", False)):
            p, total = specifics(t, table)
            integer(f"kSpecificsP_{label}_{t}", p)
            integer(f"kSpecificsTotal_{label}_{t}", total)
    for q, t in [(3, 2), (3, 3), (4, 3)]:
        for label, table in (("table", True), ("es", False)):
            p, total = multicolor(q, t, table)
            integer(f"kMulticolorP_{label}_{q}_{t}", p)
            integer(f"kMulticolorTotal_{label}_{q}_{t}", total)

    presets = [
        ("small4_es", 4, Fraction(1, 4), Fraction(1, 2), Fraction(1, 4), False),
        ("small2_table", 2, Fraction(1, 2), Fraction(3, 4), Fraction(1, 2), True),
        ("asym4_table", 4, Fraction(1, 100), Fraction(99, 100), Fraction(1, 100), True),
        ("small6_table", 6, Fraction(1, 3), Fraction(2, 3), Fraction(1, 3), True),
    ]
    for label, t, a, m, n, table in presets:
        p, nn, total = main_budget(t, a, m, n, table)
        integer(f"kMainP_{label}", p)
        integer(f"kMainN_{label}", nn)
        integer(f"kMainTotal_{label}", total)
    _, _, total = main_budget(10000, Fraction(1, 100), Fraction(99, 100), Fraction(1, 100), True)
    real("kMainLog2Total_asym_10000", mp.log(total, 2))

    # links evaluated directly
    real("kMainEsLinkLhs_1000", mp.log(ramsey_upper([10, 1000], True), 2))
    real("kMainConst1066Lhs", mp.mpf("0.01") * mp.log(200, 2) - mp.log(mp.mpf("0.99"), 2))
    real("kSpecificsPBoundLhs_100", mp.log(comb(50, 25), 2))

    body = "\n".join(rows)
    return ("#pragma once\n\n// Generated by tests/oracles/derive_values.py. Do not edit.\n\n"
            "namespace olr::oracle {\n\n" + body + "\n\n}  // namespace olr::oracle\n")


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--check", action="store_true")
    ap.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "oracle_values.hpp"))
    args = ap.parse_args()
    text = build()
    out = Path(args.out)
    if args.check:
        if out.read_text() != text:
            print("oracle_values.hpp is stale; rerun derive_values.py", file=sys.stderr)
            sys.exit(1)
        print("oracle values up to date")
    else:
        out.write_text(text)
