"""High-precision reference for the normalized determinant of small configurations.

Independent of the C++ code path: uses the southern-branch lift everywhere,
multiplies every lift by a random unit phase, and evaluates the coefficient
determinant with mpmath at 50 significant digits. Run once to freeze the
regression constants used in tests/test_determinant.cpp and tests/acceptance.cpp.
"""
import random

import mpmath as mp

mp.mp.dps = 50


def lift(p, rng):
    x1, x2, x3 = p
    r = mp.sqrt(x1 * x1 + x2 * x2 + x3 * x3)
    zeta = mp.mpc(x1, x2)
    if r - x3 > r / 4:
        v = mp.sqrt((r - x3) / 2)
        u = zeta / (2 * v)
    else:
        u = mp.sqrt((r + x3) / 2)
        v = mp.conj(zeta) / (2 * u)
    lam = mp.expjpi(2 * mp.mpf(rng.random()))
    return lam * u, lam * v


def poly_mul(a, b):
    out = [mp.mpc(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def normalized_det(points, seed=1):
    rng = random.Random(seed)
    n = len(points)
    lifts = {}
    for a in range(n):
        for b in range(n):
            if a != b:
                d = [points[b][k] - points[a][k] for k in range(3)]
                lifts[(a, b)] = lift(d, rng)
    cols = []
    for a in range(n):
        poly = [mp.mpc(1)]
        for b in range(n):
            if b != a:
                u, v = lifts[(a, b)]
                poly = poly_mul(poly, [-v, u])
        cols.append(poly + [mp.mpc(0)] * (n - len(poly)))
    num = mp.det(mp.matrix([[cols[j][i] for j in range(n)] for i in range(n)]))
    den = mp.mpc(1)
    for a in range(n):
        for b in range(a + 1, n):
            uab, vab = lifts[(a, b)]
            uba, vba = lifts[(b, a)]
            den *= uab * vba - vab * uba
    return num / den


if __name__ == "__main__":
    s = 1 / (2 * mp.sqrt(2))
    tet = [[s * c for c in v] for v in ([1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1])]
    for seed in (1, 2, 3):
        d = normalized_det(tet, seed)
        print("tetrahedron seed", seed, "D =", mp.nstr(d, 25), "|D| =", mp.nstr(abs(d), 25))
    col = [[0, 0, 0], [0, 0, 1], [0, 0, 3]]
    print("collinear |D| =", mp.nstr(abs(normalized_det([[mp.mpf(c) for c in p] for p in col])), 25))
    sq = [[1, 0, 0], [0, 1, 0], [-1, 0, 0], [0, -1, 0]]
    print("square |D| =", mp.nstr(abs(normalized_det([[mp.mpf(c) for c in p] for p in sq])), 25))
