"""High-precision steepest direction for MGH16 with m = 100 at a fixed point.

Gradients there span nine orders of magnitude. Wolfe's min-norm-point method
in 60-digit arithmetic gives the reference weights.
"""
import mpmath as mp

mp.mp.dps = 60
x = [mp.mpf(v) for v in ("20.063348317587959", "-1.3974343172249921",
                         "0.21271430331933416", "-0.34474153697613308")]
m = 100


def gradient(i):
    t = mp.mpf(i) / 5
    u = x[0] + t * x[1] - mp.e ** t
    v = x[2] + x[3] * mp.sin(t) - mp.cos(t)
    return [2 * u, 2 * t * u, 2 * v, 2 * v * mp.sin(t)]


A = [gradient(i) for i in range(1, m + 1)]


def dot(a, b):
    return mp.fsum(p * q for p, q in zip(a, b))


def combine(w):
    return [mp.fsum(w[j] * A[j][k] for j in range(m)) for k in range(4)]


def affine_min(S):
    k = len(S)
    M = mp.matrix(k + 1, k + 1)
    rhs = mp.matrix(k + 1, 1)
    for a in range(k):
        for b in range(k):
            M[a, b] = dot(A[S[a]], A[S[b]])
        M[a, k] = M[k, a] = 1
    rhs[k] = 1
    sol = mp.lu_solve(M, rhs)
    return [sol[a] for a in range(k)]


start = min(range(m), key=lambda j: dot(A[j], A[j]))
S, w = [start], [mp.mpf(0)] * m
w[start] = mp.mpf(1)
while True:
    d = combine(w)
    sq = dot(d, d)
    g = [dot(A[j], d) for j in range(m)]
    j = min(range(m), key=lambda k: g[k])
    if g[j] >= sq - mp.mpf(10) ** -40 or j in S:
        break
    S.append(j)
    while True:
        v = affine_min(S)
        if all(c > 0 for c in v):
            w = [mp.mpf(0)] * m
            for a, s in enumerate(S):
                w[s] = v[a]
            break
        t = min(w[s] / (w[s] - v[a]) for a, s in enumerate(S) if v[a] <= 0)
        for a, s in enumerate(S):
            w[s] += t * (v[a] - w[s])
        S = [s for s in S if w[s] > mp.mpf(10) ** -50]
        total = mp.fsum(w)
        w = [c / total for c in w]

d = combine(w)
print("support (0-based):", sorted(S))
print("weights:", {s: mp.nstr(w[s], 17) for s in sorted(S)})
print("|d|^2:", mp.nstr(dot(d, d), 17))
print("kkt gap:", mp.nstr(dot(d, d) - min(dot(A[j], d) for j in range(m)), 5))
