"""Brute-force pilot for the equidistribution and residue-count thresholds.

Independent of the C++ code: Kloosterman sums by definition, KS by the
two-sided empirical formula, value sets by squaring every residue.
"""
import math
import random

import numpy as np

P = 10007
R = math.isqrt(P - 1) + 1  # ceil(sqrt(p))


def kloosterman(p, ns):
    x = np.arange(1, p, dtype=np.int64)
    xinv = np.array([pow(int(v), p - 2, p) for v in x], dtype=np.int64)
    out = []
    for n in ns:
        out.append(np.cos(2 * np.pi * ((n * x + xinv) % p) / p).sum())
    return np.array(out)


def st_cdf(t):
    return t / np.pi - np.sin(2 * t) / (2 * np.pi)


def ks(samples, cdf):
    s = np.sort(samples)
    n = len(s)
    f = cdf(s)
    i = np.arange(n)
    return max((f - i / n).max(), ((i + 1) / n - f).max())


def main():
    print(f"p = {P}, ceil(sqrt p) = {R}")
    for mult in (2, 4, 8, 16, 32):
        length = mult * R
        ns = [n % P for n in range(1, 1 + length) if n % P]
        k = kloosterman(P, ns) / math.sqrt(P)
        theta = np.arccos(np.clip(k / 2, -1, 1))
        ks_st = ks(theta, st_cdf)
        n = np.arange(1, 1 + length, dtype=np.int64)
        frac = (n ** 3 % P) / P
        ks_u = ks(frac, lambda t: t)
        weyl = max(abs(np.exp(2j * np.pi * h * frac).mean()) for h in range(1, 6))
        print(f"mult={mult:2d} len={length:5d} KS_sato_tate={ks_st:.4f} KS_frac_x3={ks_u:.4f} max_weyl_x3={weyl:.4f}")

    squares = np.zeros(P, dtype=bool)
    squares[(np.arange(P, dtype=np.int64) ** 2) % P] = True
    delta = squares.sum() / P
    length = 4 * R
    rng = random.Random(1)
    devs = []
    for _ in range(2000):
        s = rng.randrange(P)
        idx = (s + np.arange(length)) % P
        devs.append(abs(squares[idx].sum() / (delta * length) - 1))
    devs = np.array(devs)
    print(f"residues X^2 len={length} delta={delta:.6f} over 2000 random starts:")
    print(f"  mean |dev| = {devs.mean():.4f}  q95 = {np.quantile(devs, 0.95):.4f}  max = {devs.max():.4f}")
    means = [devs[i:i + 20].mean() for i in range(0, 2000, 20)]
    maxes = [devs[i:i + 20].max() for i in range(0, 2000, 20)]
    print(f"  batches of 20: worst mean = {max(means):.4f}  worst max = {max(maxes):.4f}")


if __name__ == "__main__":
    main()
