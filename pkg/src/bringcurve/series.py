"""Truncated Laurent series in one variable, as {exponent: coefficient} dicts."""

from __future__ import annotations

import numpy as np

_EPS = 1e-14


def clean(s, tol=_EPS):
    scale = max((abs(c) for c in s.values()), default=1.0)
    return {k: c for k, c in s.items() if abs(c) > tol * scale}


def add(a, b):
    out = dict(a)
    for k, c in b.items():
        out[k] = out.get(k, 0.0) + c
    return out


def scale(a, f):
    return {k: f * c for k, c in a.items()}


def mul(a, b, order):
    out = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            k = ka + kb
            if k <= order:
                out[k] = out.get(k, 0.0) + ca * cb
    return out


def power(a, n, order):
    out = {0: 1.0}
    for _ in range(n):
        out = mul(out, a, order)
    return out


def valuation(a):
    nz = [k for k, c in clean(a).items() if c != 0]
    return min(nz) if nz else None


def reciprocal(a, order):
    """1/a for a series with nonzero leading coefficient."""
    v = valuation(a)
    if v is None:
        raise ZeroDivisionError("reciprocal of zero series")
    lead = a[v]
    # normalize to 1 + u with val(u) > 0, invert by geometric series
    u = {k - v: c / lead for k, c in a.items() if k != v}
    span = order + abs(v) + 1
    inv = {0: 1.0}
    term = {0: 1.0}
    for _ in range(span):
        term = mul(term, scale(u, -1.0), span)
        if not clean(term):
            break
        inv = add(inv, term)
    return clean({k - v: c / lead for k, c in inv.items() if k - v <= order})


def evaluate(a, t):
    return sum(c * t ** k for k, c in a.items())


def evaluate_many(a, ts):
    ts = np.asarray(ts)
    out = np.zeros(ts.shape, dtype=complex)
    for k, c in a.items():
        out = out + c * ts ** float(k)
    return out


def compose_bivariate(F, s_pow, w, order):
    """F(t^s_pow, w(t)) truncated; F is a dict {(i, j): coeff} in (s, w)."""
    max_j = max(j for (_, j) in F)
    w_pows = [{0: 1.0}]
    for _ in range(max_j):
        w_pows.append(mul(w_pows[-1], w, order))
    out = {}
    for (i, j), c in F.items():
        k0 = s_pow * i
        if k0 > order:
            continue
        for k, cw in w_pows[j].items():
            k2 = k0 + k
            if k2 <= order:
                out[k2] = out.get(k2, 0.0) + c * cw
    return clean(out)


def derivative_w(F):
    """dF/dw for a bivariate coefficient dict."""
    out = {}
    for (i, j), c in F.items():
        if j:
            out[(i, j - 1)] = out.get((i, j - 1), 0.0) + j * c
    return out
