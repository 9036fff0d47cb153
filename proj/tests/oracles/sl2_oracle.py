"""Independent brute-force oracle for sl(2) weight-space data.

Builds generator actions on tensor products of Verma/irreducible atoms from
scratch with sympy, then reports kappa matrices, Jordan data, singular-vector
counts and monodromy traces. Values printed here are frozen into the C++ tests.
"""
import itertools
import sympy as sp


def atom_basis(atom, w):
    kind, p = atom
    if kind == "M":
        if p >= w and (p - w) % 2 == 0:
            return [(p - w) // 2]
        return []
    if abs(w) <= p and (p - w) % 2 == 0:
        return [(p - w) // 2]
    return []


def atom_top(atom):
    return atom[1]


def atom_act(atom, g, k):
    kind, p = atom
    if g == "h":
        return {k: p - 2 * k}
    if g == "f":
        if kind == "L" and k == p:
            return {}
        return {k + 1: 1}
    if k == 0:
        return {}
    c = k * (p - k + 1)
    return {k - 1: c} if c else {}


def basis(atoms, w):
    tops = [atom_top(a) for a in atoms]
    out = []
    depth = (sum(tops) - w)
    if depth < 0 or depth % 2:
        return out
    depth //= 2
    for ks in itertools.product(range(depth + 1), repeat=len(atoms)):
        if sum(ks) != depth:
            continue
        if all(a[0] == "M" or k <= a[1] for a, k in zip(atoms, ks)):
            out.append(ks)
    return out


def act(atoms, g, vec):
    res = {}
    for b, c in vec.items():
        if g == "h":
            wt = sum(a[1] - 2 * k for a, k in zip(atoms, b))
            res[b] = res.get(b, 0) + c * wt
            continue
        for i, a in enumerate(atoms):
            for k2, c2 in atom_act(a, g, b[i]).items():
                nb = b[:i] + (k2,) + b[i + 1:]
                res[nb] = res.get(nb, 0) + c * c2
    return {b: c for b, c in res.items() if c != 0}


def kappa(atoms, w):
    bs = basis(atoms, w)
    idx = {b: i for i, b in enumerate(bs)}
    m = sp.zeros(len(bs), len(bs))
    for j, b in enumerate(bs):
        v = {b: 1}
        r1 = act(atoms, "e", act(atoms, "f", v))
        r2 = act(atoms, "f", act(atoms, "e", v))
        for bb, c in list(r1.items()) + list(r2.items()):
            m[idx[bb], j] += c
    return bs, m


def hwv(atoms, w):
    bs = basis(atoms, w)
    up = basis(atoms, w + 2)
    if not bs:
        return 0
    idx = {b: i for i, b in enumerate(up)}
    m = sp.zeros(max(len(up), 1), len(bs))
    for j, b in enumerate(bs):
        for bb, c in act(atoms, "e", {b: 1}).items():
            m[idx[bb], j] += c
    return len(bs) - m.rank()


def trace(atoms, l, order):
    top = sum(atom_top(a) for a in atoms)
    coeffs = {}
    d = 0
    while l * d < order:
        bs, m = kappa(atoms, top - 2 * d)
        if bs:
            for c, mult in m.eigenvals().items():
                e = -l * sp.Rational(c) / 2
                coeffs[e] = coeffs.get(e, 0) + mult
        d += 1
    return {e: c for e, c in sorted(coeffs.items()) if e < order}


M0, M2, M1, L1 = ("M", 0), ("M", -2), ("M", -1), ("L", 1)
P = [M1, L1]

def check_cli(cli):
    """Compares brute-force traces with `casimir-trace trace --format json`."""
    import json
    import subprocess
    from fractions import Fraction

    cases = [("M0", [M0], 8), ("M-2", [M2], 8), ("P", P, 10), ("M0 x M0", [M0, M0], 10),
             ("M0 x P", [M0] + P, 9), ("P x P", P + P, 8), ("M-1", [M1], 7),
             ("M-1 x M-1", [M1, M1], 7), ("M0 x M0 x M-2", [M0, M0, M2], 7)]
    bad = 0
    for rep, atoms, order in cases:
        for l in (1, 2):
            want = {sp.Rational(e): c for e, c in trace(atoms, l, order).items()}
            out = subprocess.run([cli, "trace", "--rep", rep, "--loops", str(l), "--order", str(order),
                                  "--format", "json"], capture_output=True, text=True, check=True)
            got = {}
            for e, c in json.loads(out.stdout)["terms"]:
                f = Fraction(c)
                got[sp.Rational(Fraction(e).numerator, Fraction(e).denominator)] = sp.Rational(f.numerator, f.denominator)
            ok = got == want
            bad += not ok
            print(f"{'PASS' if ok else 'FAIL'} trace {rep} l={l} order={order}")
            if not ok:
                print("  oracle", want)
                print("  cli   ", got)
    return 1 if bad else 0


if __name__ == "__main__":
    import sys
    if len(sys.argv) == 3 and sys.argv[1] == "--check-cli":
        sys.exit(check_cli(sys.argv[2]))
    print("kappa P w=-2", kappa(P, -2))
    print("kappa P w=-4", kappa(P, -4))
    print("kappa M0 w=-4", kappa([M0], -4)[1])
    bs, m = kappa([M0, M0], -4)
    print("M0xM0 w=-4 basis", bs, m, m.charpoly().as_expr().factor())
    Pm, J = m.jordan_form()
    print("M0xM0 w=-4 jordan", J)
    print("hwv P w=-2", hwv(P, -2))
    print("hwv M0xM0", [hwv([M0, M0], -2 * k) for k in range(6)])
    print("hwv M0 w=-2", hwv([M0], -2))
    print("trace M0", trace([M0], 1, 5))
    print("trace M-2", trace([M2], 1, 5))
    print("trace P", trace(P, 1, 10))
    print("trace M0xM0", trace([M0, M0], 1, 10))
    print("trace M0xP", trace([M0] + P, 1, 10))
    print("trace PxP", trace(P + P, 1, 10))
    print("trace M0xM0xM-2", trace([M0, M0, M2], 1, 8))
    print("trace M-1", trace([M1], 1, 6))
    print("trace M-1 x M-1", trace([M1, M1], 1, 6))
    print("trace L1", trace([L1], 1, 3))
    bs, m = kappa(P + P, -4)
    print("PxP w=-4", bs, m.charpoly().as_expr().factor(), m.jordan_form()[1])
    bs, m = kappa([M0] + P, -4)
    print("M0xP w=-4", bs, m.charpoly().as_expr().factor(), m.jordan_form()[1])
