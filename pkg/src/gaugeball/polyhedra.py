"""Low-level polyhedral geometry: min-norm points, Dykstra projection,
vertex enumeration and LP support values."""

import itertools

import numpy as np
from scipy.optimize import linprog


def min_norm_point(P, tol=1e-12, max_iter=500):
    """Point of least Euclidean norm in the convex hull of the rows of ``P``.

    Wolfe's algorithm. Returns ``(point, weights)`` where ``weights`` are
    barycentric coordinates over the rows.
    """
    P = np.atleast_2d(np.asarray(P, dtype=float))
    m = len(P)
    sq = np.einsum("ij,ij->i", P, P)
    scale = max(1.0, float(sq.max()))
    S = [int(np.argmin(sq))]
    w = np.array([1.0])
    x = P[S[0]].copy()
    for _ in range(max_iter):
        j = int(np.argmin(P @ x))
        if x @ x - P[j] @ x <= tol * scale or j in S:
            break
        S.append(j)
        w = np.append(w, 0.0)
        while True:
            Q = P[S]
            k = len(S)
            M = np.ones((k + 1, k + 1))
            M[:k, :k] = Q @ Q.T
            M[k, k] = 0.0
            rhs = np.zeros(k + 1)
            rhs[k] = 1.0
            v = np.linalg.lstsq(M, rhs, rcond=None)[0][:k]
            if np.all(v > tol):
                w = v
                break
            neg = v <= tol
            theta = min(1.0, float(np.min(w[neg] / (w[neg] - v[neg]))))
            w = (1.0 - theta) * w + theta * v
            keep = w > tol
            S = [s for s, kp in zip(S, keep) if kp]
            w = w[keep]
            w = w / w.sum()
        x = w @ P[S]
    lam = np.zeros(m)
    lam[S] = w
    return x, lam


def project_hull(V, x):
    """Euclidean projection of ``x`` onto conv(rows of ``V``)."""
    V = np.atleast_2d(np.asarray(V, dtype=float))
    if len(V) == 1:
        return V[0].copy()
    z, lam = min_norm_point(V - x)
    return x + z


def project_halfspace(a, b, x):
    viol = a @ x - b
    if viol <= 0.0:
        return x.copy()
    return x - viol * a / (a @ a)


def dykstra(rows, offsets, x, sweeps=500, tol=1e-10):
    """Euclidean projection onto {y : rows @ y <= offsets} by Dykstra's method.

    Stops after ``sweeps`` full passes or when a pass moves the iterate by
    less than ``tol``.
    """
    A = np.asarray(rows, dtype=float)
    b = np.asarray(offsets, dtype=float)
    y = np.array(x, dtype=float)
    if np.all(A @ y <= b):
        return y
    norms2 = np.einsum("ij,ij->i", A, A)
    incr = np.zeros_like(A)
    for _ in range(sweeps):
        start = y.copy()
        for k in range(len(A)):
            z = y + incr[k]
            viol = A[k] @ z - b[k]
            y_new = z - (viol / norms2[k]) * A[k] if viol > 0.0 else z
            incr[k] = z - y_new
            y = y_new
        if np.linalg.norm(y - start) < tol:
            break
    return y


def support_lp(rows, offsets, d):
    """max <d, u> over {u : rows @ u <= offsets}; returns (value, argmax) or
    (inf, None) when unbounded."""
    A = np.asarray(rows, dtype=float)
    b = np.asarray(offsets, dtype=float)
    res = linprog(-np.asarray(d, dtype=float), A_ub=A, b_ub=b,
                  bounds=[(None, None)] * A.shape[1], method="highs")
    if res.status == 3:
        return np.inf, None
    if res.status != 0:
        raise ValueError(f"support LP failed: {res.message}")
    return -res.fun, res.x


def is_feasible(rows, offsets):
    A = np.asarray(rows, dtype=float)
    res = linprog(np.zeros(A.shape[1]), A_ub=A, b_ub=np.asarray(offsets, dtype=float),
                  bounds=[(None, None)] * A.shape[1], method="highs")
    return res.status == 0


def coordinate_support_bounds(rows, offsets):
    """Support values in every direction +-e_i. Any inf means unbounded."""
    n = np.asarray(rows).shape[1]
    out = []
    for i in range(n):
        for sgn in (1.0, -1.0):
            e = np.zeros(n)
            e[i] = sgn
            out.append(support_lp(rows, offsets, e)[0])
    return np.array(out)


def enumerate_vertices(rows, offsets, tol=1e-9):
    """Vertices of a bounded H-polytope by brute force over n-row subsets.

    Only meant for n <= 3 and modest row counts.
    """
    A = np.asarray(rows, dtype=float)
    b = np.asarray(offsets, dtype=float)
    n = A.shape[1]
    verts = []
    for idx in itertools.combinations(range(len(A)), n):
        sub = A[list(idx)]
        if abs(np.linalg.det(sub)) < 1e-12:
            continue
        v = np.linalg.solve(sub, b[list(idx)])
        if np.all(A @ v <= b + tol * np.maximum(1.0, np.abs(b))):
            if not any(np.allclose(v, u, atol=1e-10) for u in verts):
                verts.append(v)
    return np.array(verts).reshape(-1, n)
