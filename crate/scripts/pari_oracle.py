#!/usr/bin/env python3
"""Reference data from PARI/GP (via cypari2) for `tracefield oracle-diff`.

Discriminants, indices and integral bases come from `nfinit`, prime
splittings from `idealprimedec`, and traces of the integral basis from
`trace(Mod(b, f))`, so no code is shared with the Rust implementation.

Requires `pip install --only-binary=:all: cypari2`.

    pari_oracle.py sample --degrees 3 4 --bound 4 --count 200 --seed 20240611 \
        --polys sample_polys.txt --out sample_oracle.json
    pari_oracle.py quadratics --max-abs 50 --out quadratic_oracle.json
"""

import argparse
import itertools
import json
import random

import cypari2

PARI = cypari2.Pari()

FIELD = """(f) -> my(K = nfinit(f), zk = K.zk, d = K.disc);
  [d, K.index,
   vector(#zk, i, trace(Mod(zk[i], K.pol))),
   [[p, apply(pr -> [pr.e, pr.f], idealprimedec(K, p))] | p <- factor(abs(d))[, 1]~]]"""


def enumerate_monic(n, bound):
    """Lexicographic in (a_{n-1}, ..., a_0), a_0 != 0; lists are high-to-low."""
    for tail in itertools.product(range(-bound, bound + 1), repeat=n):
        if tail[-1] == 0:
            continue
        yield [1, *tail]


def poly_text(coeffs):
    return "[" + ", ".join(str(c) for c in coeffs) + "]"


def field_data(coeffs):
    f = PARI("Pol")(PARI(poly_text(coeffs)))
    d, index, traces, splits = PARI(FIELD)(f)
    t = 0
    for tr in traces:
        t = PARI.gcd(t, tr)
    splittings = []
    for p, shape in splits:
        pairs = sorted(((int(e), int(g)) for e, g in shape), reverse=True)
        splittings.append({"p": str(p), "shape": [list(s) for s in pairs]})
    return {
        "polynomial": poly_text(coeffs),
        "d_K": str(d),
        "index": str(index),
        "splittings": splittings,
        "t": str(t),
    }


def cmd_sample(args):
    corpus = []
    for n in args.degrees:
        for c in enumerate_monic(n, args.bound):
            if PARI.polisirreducible(PARI("Pol")(PARI(poly_text(c)))):
                corpus.append(c)
    rng = random.Random(args.seed)
    picked = sorted(rng.sample(range(len(corpus)), args.count))
    chosen = [corpus[i] for i in picked]
    with open(args.polys, "w") as fh:
        for c in chosen:
            fh.write(poly_text(c) + "\n")
    with open(args.out, "w") as fh:
        json.dump([field_data(c) for c in chosen], fh, indent=1)
        fh.write("\n")
    print(f"{len(corpus)} irreducible polynomials, sampled {len(chosen)}")


def squarefree(d):
    return bool(PARI.issquarefree(d))


def cmd_quadratics(args):
    out = []
    for d in range(-args.max_abs, args.max_abs + 1):
        if abs(d) < 2 or not squarefree(d):
            continue
        entry = field_data([1, 0, -d])
        entry["d"] = str(d)
        out.append(entry)
    with open(args.out, "w") as fh:
        json.dump(out, fh, indent=1)
        fh.write("\n")
    print(f"{len(out)} quadratic fields")


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="cmd", required=True)
    s = sub.add_parser("sample")
    s.add_argument("--degrees", type=int, nargs="+", required=True)
    s.add_argument("--bound", type=int, required=True)
    s.add_argument("--count", type=int, default=200)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--polys", required=True)
    s.add_argument("--out", required=True)
    q = sub.add_parser("quadratics")
    q.add_argument("--max-abs", type=int, default=50)
    q.add_argument("--out", required=True)
    args = ap.parse_args()
    {"sample": cmd_sample, "quadratics": cmd_quadratics}[args.cmd](args)


if __name__ == "__main__":
    main()
