"""Reference (pure Python) reduction kernels over packed term keys.

A term is ``(key, coeff)``.  A reducer is ``(evec, compbits, lead_key, tail)``
where ``tail`` holds the non-leading terms of a monic polynomial and
``evec``/``compbits`` are the packed exponent vector and component bits of the
leading term.  ``p`` is the field characteristic (0 means rational
coefficients).
"""

from heapq import heapify, heappop, heappush


def make_reducer(evec, comp, lead, tail, p):
    """Reducer record for :func:`normal_form`; the compiled backend packs it into C arrays."""
    return (evec, comp, lead, tail)


def normal_form(acc, reducers, emask, xc, guard, cshift, p):
    """Fully reduce the polynomial ``acc`` (dict key -> coeff, consumed).

    Returns the remainder as a list of terms in descending key order.
    """
    heap = [-k for k in acc]
    heapify(heap)
    rem = []
    while heap:
        k = -heappop(heap)
        c = acc.pop(k, None)
        if c is None:
            continue
        e = (k & emask) ^ xc
        cb = k >> cshift
        eg = e | guard
        for le, lc, lk, tail in reducers:
            if lc == cb and (eg - le) & guard == guard:
                s = k - lk
                if p:
                    for tk, tc in tail:
                        nk = tk + s
                        old = acc.get(nk)
                        if old is None:
                            acc[nk] = (-c * tc) % p
                            heappush(heap, -nk)
                        else:
                            v = (old - c * tc) % p
                            if v:
                                acc[nk] = v
                            else:
                                del acc[nk]
                else:
                    for tk, tc in tail:
                        nk = tk + s
                        old = acc.get(nk)
                        if old is None:
                            acc[nk] = -c * tc
                            heappush(heap, -nk)
                        else:
                            v = old - c * tc
                            if v:
                                acc[nk] = v
                            else:
                                del acc[nk]
                break
        else:
            rem.append((k, c))
    return rem


def spoly(tail1, s1, tail2, s2, p):
    """S-polynomial of two monic polynomials given their tails and key shifts."""
    acc = {}
    for k, c in tail1:
        acc[k + s1] = c
    for k, c in tail2:
        nk = k + s2
        old = acc.get(nk)
        if old is None:
            acc[nk] = (-c) % p if p else -c
        else:
            v = (old - c) % p if p else old - c
            if v:
                acc[nk] = v
            else:
                del acc[nk]
    return acc


def divides(le, k, emask, xc, guard):
    """True iff the packed exponent vector ``le`` divides the monomial of key ``k``."""
    return ((((k & emask) ^ xc) | guard) - le) & guard == guard
