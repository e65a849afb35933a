"""mpmath recomputation of the flat-construction values frozen into
tests/unit/test_flat.cpp (M = gevrey(1), E = sqrt)."""
from mpmath import mp, mpf, sqrt, log, factorial, fsum

mp.dps = 60


def phi(r):
    # sup_n r^(n+2)/n!, concave in n; scan past the peak
    best, n = mpf(0), 0
    while True:
        t = r ** (n + 2) / factorial(n)
        if t < best:
            return best
        best, n = t, n + 1


rho = lambda k: mpf(1) / (k + 1)
E = lambda r: sqrt(r)

lam = []
for c in range(2, 4001, 2):
    e = E(rho(c))
    if e / rho(c) > 1 and (not lam or 2 * e < E(rho(lam[-1]))):
        lam.append(c)
print("Lambda", lam)
eps = min((rho(l) ** 2) ** (mpf(1) / l) for l in lam if l <= 64)
print("eps", eps)

KS = 400
w = [None] + [mpf(k + 1) ** 2 / (2 ** k * phi(mpf(k + 1))) for k in range(1, KS + 1)]


def S(k):
    return fsum(w[j] * mpf(j + 1) ** (2 * k) for j in range(1, KS + 1))


def W(l):
    return 1 / (2 ** l * phi(1 / rho(l)))


def axis(lam_at, n):
    k = n // 2
    x = E(rho(lam_at))
    base = factorial(n) * S(k)
    tot = 0
    for l in lam:
        if W(l) == 0:
            break
        A = 1 + ((x - E(rho(l))) / rho(l)) ** 2
        tot += W(l) * rho(l) ** (-n) * base / A ** (k + 1)
    return tot, W(lam_at) * rho(lam_at) ** (-n) * base


lam = lam[:6]
for l in (2, 12):
    tot, dom = axis(l, l)
    rhs = eps ** l * factorial(l) * factorial(l) ** 2 / 4 ** l
    print(l, "log|d^l F|", log(tot), "log dominant", log(dom), "log rhs", log(rhs))
print("W_2", W(2), "W_12", W(12))
