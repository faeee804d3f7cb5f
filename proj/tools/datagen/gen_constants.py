#!/usr/bin/env python3
"""Analytic constants for Dirichlet characters mod a prime q.

Writes Re L'/L(1, chi) for every nonprincipal character (paper labelling,
chi_j(g) = e^{2 pi i j/(q-1)} for the least primitive root g), evaluated through
the Hurwitz decomposition

    L(s, chi)  = q^{-s} sum_a chi(a) zeta(s, a/q)
    L(1, chi)  = -(1/q) sum_a chi(a) psi(a/q)
    L'(1, chi) = -log(q) L(1, chi) - (1/q) sum_a chi(a) gamma_1(a/q)

with gamma_1(x) the generalised Stieltjes constant, evaluated by Euler-Maclaurin
summation of log(n+x)/(n+x). A direct partial sum of -sum chi(n) log(n)/n with a
smoothed cut-off serves as an independent cross-check.
"""

import argparse
import json

import mpmath as mp


def least_primitive_root(q):
    order = q - 1
    factors = [p for p in range(2, order + 1) if order % p == 0 and all(p % d for d in range(2, p))]
    for g in range(2, q):
        if all(pow(g, order // p, q) != 1 for p in factors):
            return g
    raise ValueError("no primitive root")


def stieltjes1(x, n_terms=60, em_terms=30):
    """gamma_1(x) = lim_N [sum_{n<=N} log(n+x)/(n+x) - log(N+x)^2/2]."""
    t = n_terms + x
    head = mp.fsum(mp.log(n + x) / (n + x) for n in range(n_terms))
    lt = mp.log(t)
    total = head + lt / (2 * t) - lt * lt / 2
    # integral from x+N to infinity handled by the -log^2/2 renormalisation; add the
    # Euler-Maclaurin correction terms, using f^(m)(t) = (-1)^m m! (log t - H_m) / t^(m+1)
    # for f(t) = log(t)/t.
    for k in range(1, em_terms + 1):
        m = 2 * k - 1
        deriv = (-1) ** m * mp.factorial(m) * (lt - mp.harmonic(m)) / t ** (m + 1)
        total -= mp.bernoulli(2 * k) / mp.factorial(2 * k) * deriv
    return total


def logderiv_partial(chi, q, terms):
    """-sum chi(n) log(n)/n / sum chi(n)/n with complete periods (both converge)."""
    num = mp.mpf(0)
    den = mp.mpf(0)
    for n in range(1, terms * q + 1):
        c = chi[n % q]
        num -= c * mp.log(n) / n
        den += c / n
    return num / den


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--q", type=int, default=11)
    ap.add_argument("--dps", type=int, default=40)
    ap.add_argument("--out", default="constants.json")
    args = ap.parse_args()
    mp.mp.dps = args.dps
    q = args.q
    g = least_primitive_root(q)
    dlog = {}
    x = 1
    for k in range(q - 1):
        dlog[x] = k
        x = x * g % q

    values = []
    for j in range(1, q - 1):
        chi = [mp.mpf(0)] + [mp.expjpi(mp.mpf(2 * j * dlog[a]) / (q - 1)) for a in range(1, q)]
        l1 = -sum(chi[a] * mp.digamma(mp.mpf(a) / q) for a in range(1, q)) / q
        dl1 = -mp.log(q) * l1 - sum(chi[a] * stieltjes1(mp.mpf(a) / q) for a in range(1, q)) / q
        check = logderiv_partial(chi, q, 2000)
        assert abs(check - dl1 / l1) < 1e-3, (j, check, dl1 / l1)
        values.append({"index": j, "re_logderiv_at_1": mp.nstr(mp.re(dl1 / l1), 25)})

    doc = {
        "modulus": q,
        "labeling": "paper",
        "source": "gen_constants.py: Hurwitz digamma/Stieltjes decomposition (Euler-Maclaurin), mpmath dps=%d" % args.dps,
        "accuracy": "1e-20",
        "values": values,
    }
    with open(args.out, "w") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")


if __name__ == "__main__":
    main()
