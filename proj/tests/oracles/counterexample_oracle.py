"""Independent mpmath recomputation of the slow-growth counterexample values
frozen into tests/unit/test_counterexample.cpp."""
from mpmath import mp, mpf, sqrt, log, exp

mp.dps = 40
W = 10
lam = [0] + [2 * i + 2 for i in range(1, W + 1)]
s = len(lam) - 1
mu = lam[-1]
lam += [mu + 2 * i for i in range(1, s)] + [2 * mu]
v = [mpf(1)]
for j in range(1, 200):
    v.append(v[-1] * (1 + 1 / sqrt(j)))


def L(k):
    n = max(i for i, x in enumerate(lam) if x <= k)
    return v[n]


def logM(k):
    return sum(log(L(j)) for j in range(1, k + 1))


print("lambda", lam)
print("v1..v3", v[1], v[2], v[3])
print("logM_22", logM(22))
print("logM_44", logM(44))
gs = [(k, exp((2 * logM(k) - logM(2 * k)) / k)) for k in range(1, 200)]
print("g_22", dict(gs)[22])
print("min g", min(gs, key=lambda t: t[1]))
bs = [(k, exp(log(L(k + 1)) / k)) for k in range(1, 200)]
print("max b", max(bs, key=lambda t: t[1]))
print("v20^2", v[20] ** 2)
