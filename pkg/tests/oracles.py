"""Brute-force linear-algebra oracles, independent of the engine.

Polynomials are parsed with sympy and handled as {exponent tuple: Fraction};
everything is decided by exact rank computations degree by degree.
"""

from fractions import Fraction
from itertools import combinations

import sympy


def parse(texts, names):
    gens = sympy.symbols(names)
    out = []
    for t in texts:
        p = sympy.Poly(sympy.sympify(t.replace("^", "**")), *gens)
        out.append({tuple(e): Fraction(int(c.p), int(c.q)) for e, c in p.as_dict().items()})
    return out


def degree(f):
    return max(sum(e) for e in f)


def monomials(n, d):
    if d < 0:
        return []
    if n == 1:
        return [(d,)]
    return [(a,) + rest for a in range(d, -1, -1) for rest in monomials(n - 1, d - a)]


def rank(rows):
    """Exact rank of a list of sparse rows ({column: Fraction})."""
    pivots = {}
    r = 0
    for row in rows:
        row = {k: v for k, v in row.items() if v}
        while row:
            col = min(row)
            if col not in pivots:
                inv = 1 / row[col]
                pivots[col] = {k: v * inv for k, v in row.items()}
                r += 1
                break
            prow = pivots[col]
            c = row[col]
            for k, v in prow.items():
                nv = row.get(k, 0) - c * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
    return r


def _mul(f, m):
    return {tuple(a + b for a, b in zip(e, m)): c for e, c in f.items()}


def ideal_span(gens, n, d):
    """Rows spanning I_d, indexed by degree-d monomials."""
    idx = {m: i for i, m in enumerate(monomials(n, d))}
    rows = []
    for g in gens:
        dg = degree(g)
        for m in monomials(n, d - dg):
            rows.append({idx[e]: c for e, c in _mul(g, m).items()})
    return rows, idx


def hilbert_function(gens, n, d):
    """dim_k (R/I)_d."""
    rows, idx = ideal_span(gens, n, d)
    return len(idx) - rank(rows)


def betti_numbers(gens, n, max_j):
    """beta_{i,j}(R/I) for j <= max_j, as Koszul homology H_i(x; R/I)_j."""
    out = {}
    subsets = {i: list(combinations(range(n), i)) for i in range(n + 1)}

    def basis(i, j):
        # coordinates of wedge^i (x) R_{j-i}
        return {(S, m): k for k, (S, m) in enumerate((S, m) for S in subsets[i] for m in monomials(n, j - i))}

    def sub_rows(i, j, coords):
        rows = []
        span, idx = ideal_span(gens, n, j - i)
        inv = {v: k for k, v in idx.items()}
        for S in subsets[i]:
            for r in span:
                rows.append({coords[(S, inv[c])]: v for c, v in r.items()})
        return rows

    def boundary_rank(i, j):
        # rank of the induced map wedge^i (x) (R/I)_{j-i} -> wedge^{i-1} (x) (R/I)_{j-i+1}
        if i == 0 or i > n or j - i < 0:
            return 0
        tgt = basis(i - 1, j)
        rows = []
        for S in subsets[i]:
            for m in monomials(n, j - i):
                row = {}
                for pos, k in enumerate(S):
                    T = S[:pos] + S[pos + 1:]
                    mm = tuple(a + (1 if v == k else 0) for v, a in enumerate(m))
                    col = tgt[(T, mm)]
                    row[col] = row.get(col, 0) + Fraction((-1) ** pos)
                rows.append(row)
        sub = sub_rows(i - 1, j, tgt)
        return rank(rows + sub) - rank(sub)

    for j in range(max_j + 1):
        for i in range(n + 1):
            if j - i < 0:
                continue
            dim = len(subsets[i]) * hilbert_function(gens, n, j - i)
            b = dim - boundary_rank(i, j) - boundary_rank(i + 1, j)
            if b:
                out[(i, j)] = b
    return out


def colon_dimension(alpha, gens, n, d):
    """dim_k [alpha : I]_d by linear algebra on the multiplication maps."""
    blocks = []
    offset = 0
    quot_rows = []
    for g in gens:
        e = d + degree(g)
        span, idx = ideal_span(alpha, n, e)
        blocks.append((g, idx, offset))
        quot_rows += [{offset + c: v for c, v in r.items()} for r in span]
        offset += len(idx)
    rows = []
    for m in monomials(n, d):
        row = {}
        for g, idx, off in blocks:
            for e, c in _mul(g, m).items():
                row[off + idx[e]] = c
        rows.append(row)
    r = rank(rows + quot_rows) - rank(quot_rows)
    return len(monomials(n, d)) - r


def monomial_divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def in_monomial_ideal(f_terms, gens):
    """f in a monomial ideal iff every term of f is divisible by some generator."""
    return all(any(monomial_divides(g, e) for g in gens) for e in f_terms)
