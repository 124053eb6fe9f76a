# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled reduction kernels; same contract as ``_pykernels``.

Keys below 2**128 with coefficients in GF(p) (p < 2**31) or QQ take a C
path: reducers are packed once into C arrays by :func:`make_reducer`, the
polynomial being reduced lives in an open-addressing hash table plus a binary
heap of pending keys, and rational arithmetic goes straight to GMP.  Anything
else runs the object loop shared with the pure Python module.
"""

from libc.stdlib cimport free, malloc, realloc
from libc.stdint cimport int64_t, uint64_t
from heapq import heapify, heappop, heappush

import gmpy2

cdef extern from *:
    """
    typedef unsigned __int128 u128;
    """
    # declared as a plain unsigned type; all arithmetic happens in C
    ctypedef unsigned long long u128

cdef extern from "gmp.h":
    ctypedef struct __mpq_struct:
        pass
    ctypedef __mpq_struct *mpq_ptr
    void mpq_init(mpq_ptr)
    void mpq_clear(mpq_ptr)
    void mpq_set(mpq_ptr, mpq_ptr)
    void mpq_mul(mpq_ptr, mpq_ptr, mpq_ptr)
    void mpq_sub(mpq_ptr, mpq_ptr, mpq_ptr)
    void mpq_neg(mpq_ptr, mpq_ptr)
    int mpq_sgn(mpq_ptr)

cdef extern from "gmpy2.h":
    int import_gmpy2() except -1
    bint MPQ_Check(object)
    object GMPy_MPQ_New(void *)
    mpq_ptr MPQ(object)

import_gmpy2()

cdef object _M64 = (1 << 64) - 1
cdef object _LIMIT = 1 << 128
cdef object _PMAX = 1 << 31


cdef inline bint _to_u128(object k, u128 *out):
    if k < 0 or k >= _LIMIT:
        return False
    out[0] = ((<u128>(<uint64_t>(k >> 64))) << 64) | <u128>(<uint64_t>(k & _M64))
    return True


cdef inline object _from_u128(u128 k):
    cdef uint64_t hi = <uint64_t>(k >> 64)
    cdef uint64_t lo = <uint64_t>k
    if hi == 0:
        return lo
    return (<object>hi << 64) | lo


cdef inline bint _as_mpq(object c, mpq_ptr out):
    if not MPQ_Check(c):
        try:
            c = gmpy2.mpq(c)
        except (TypeError, ValueError):
            return False
    mpq_set(out, MPQ(c))
    return True


cdef inline object _mpq_object(mpq_ptr q):
    cdef object o = GMPy_MPQ_New(NULL)
    mpq_set(MPQ(o), q)
    return o


# ---- packed reducers ------------------------------------------------------------------

cdef class CReducer:
    """A monic basis element ``(evec, compbits, lead_key, tail)`` with C copies of its tail."""
    cdef readonly object evec, comp, lead, tail
    cdef bint packed
    cdef u128 c_le, c_lc, c_lk
    cdef Py_ssize_t n
    cdef u128 *keys
    cdef int64_t *mod
    cdef __mpq_struct *q
    cdef Py_ssize_t nq       # initialised mpq entries

    def __cinit__(self):
        self.keys = NULL
        self.mod = NULL
        self.q = NULL
        self.nq = 0

    def __dealloc__(self):
        cdef Py_ssize_t i
        if self.q != NULL:
            for i in range(self.nq):
                mpq_clear(&self.q[i])
            free(self.q)
        free(self.keys)
        free(self.mod)

    def __iter__(self):
        return iter((self.evec, self.comp, self.lead, self.tail))

    def __getitem__(self, i):
        return (self.evec, self.comp, self.lead, self.tail)[i]

    def __len__(self):
        return 4


def make_reducer(evec, comp, lead, tail, p):
    cdef CReducer r = CReducer.__new__(CReducer)
    cdef Py_ssize_t i, n = len(tail)
    cdef u128 k
    r.evec, r.comp, r.lead, r.tail = evec, comp, lead, tail
    r.n = n
    r.packed = False
    if not (_to_u128(evec, &r.c_le) and _to_u128(comp, &r.c_lc) and _to_u128(lead, &r.c_lk)):
        return r
    if p and p >= _PMAX:
        return r
    r.keys = <u128 *>malloc((n + 1) * sizeof(u128))
    if r.keys == NULL:
        raise MemoryError()
    if p:
        r.mod = <int64_t *>malloc((n + 1) * sizeof(int64_t))
        if r.mod == NULL:
            raise MemoryError()
    else:
        r.q = <__mpq_struct *>malloc((n + 1) * sizeof(__mpq_struct))
        if r.q == NULL:
            raise MemoryError()
    for i in range(n):
        tk, tc = tail[i]
        if not _to_u128(tk, &k):
            return r
        r.keys[i] = k
        if p:
            r.mod[i] = <int64_t>(tc % p)
        else:
            mpq_init(&r.q[i])
            r.nq = i + 1
            if not _as_mpq(tc, &r.q[i]):
                return r
    r.packed = True
    return r


# ---- accumulator: hash table of live terms plus a max-heap of keys -----------------------

cdef struct Acc:
    bint rational
    Py_ssize_t cap          # hash slots, power of two
    Py_ssize_t *table       # slot -> entry index or -1
    Py_ssize_t n, ncap      # entries
    u128 *keys
    char *live
    int64_t *mod
    __mpq_struct *q
    u128 *heap
    Py_ssize_t hn, hcap


cdef inline Py_ssize_t _hash(u128 k, Py_ssize_t mask) noexcept nogil:
    cdef uint64_t h = (<uint64_t>k) * 0x9E3779B97F4A7C15ULL ^ (<uint64_t>(k >> 64)) * 0xC2B2AE3D27D4EB4FULL
    h ^= h >> 29
    return <Py_ssize_t>(h & <uint64_t>mask)


cdef int _acc_init(Acc *a, bint rational, Py_ssize_t hint) except -1:
    cdef Py_ssize_t i
    a.rational = rational
    a.cap = 64
    while a.cap < 4 * hint:
        a.cap <<= 1
    a.table = <Py_ssize_t *>malloc(a.cap * sizeof(Py_ssize_t))
    a.n = 0
    a.ncap = a.cap // 2
    a.keys = <u128 *>malloc(a.ncap * sizeof(u128))
    a.live = <char *>malloc(a.ncap)
    a.mod = NULL
    a.q = NULL
    if rational:
        a.q = <__mpq_struct *>malloc(a.ncap * sizeof(__mpq_struct))
    else:
        a.mod = <int64_t *>malloc(a.ncap * sizeof(int64_t))
    a.hcap = a.ncap
    a.hn = 0
    a.heap = <u128 *>malloc(a.hcap * sizeof(u128))
    if (a.table == NULL or a.keys == NULL or a.live == NULL or a.heap == NULL
            or (rational and a.q == NULL) or (not rational and a.mod == NULL)):
        raise MemoryError()
    for i in range(a.cap):
        a.table[i] = -1
    return 0


cdef void _acc_free(Acc *a) noexcept:
    cdef Py_ssize_t i
    if a.q != NULL:
        for i in range(a.n):
            mpq_clear(&a.q[i])
    free(a.q)
    free(a.mod)
    free(a.table)
    free(a.keys)
    free(a.live)
    free(a.heap)


cdef int _acc_rehash(Acc *a) except -1:
    cdef Py_ssize_t i, s, mask
    free(a.table)
    a.cap <<= 1
    a.table = <Py_ssize_t *>malloc(a.cap * sizeof(Py_ssize_t))
    if a.table == NULL:
        raise MemoryError()
    for i in range(a.cap):
        a.table[i] = -1
    mask = a.cap - 1
    for i in range(a.n):
        s = _hash(a.keys[i], mask)
        while a.table[s] >= 0:
            s = (s + 1) & mask
        a.table[s] = i
    return 0


cdef Py_ssize_t _acc_find(Acc *a, u128 k, bint insert, bint *created) except -2:
    """Entry index of key ``k``; with ``insert`` a new (not live) entry is made when absent."""
    cdef Py_ssize_t mask = a.cap - 1
    cdef Py_ssize_t s = _hash(k, mask)
    cdef Py_ssize_t e
    created[0] = False
    while True:
        e = a.table[s]
        if e < 0:
            break
        if a.keys[e] == k:
            return e
        s = (s + 1) & mask
    if not insert:
        return -1
    if a.n == a.ncap:
        a.ncap <<= 1
        a.keys = <u128 *>realloc(a.keys, a.ncap * sizeof(u128))
        a.live = <char *>realloc(a.live, a.ncap)
        if a.rational:
            # mpq structs hold only a pointer to their limbs, so moving them is safe
            a.q = <__mpq_struct *>realloc(a.q, a.ncap * sizeof(__mpq_struct))
        else:
            a.mod = <int64_t *>realloc(a.mod, a.ncap * sizeof(int64_t))
        if a.keys == NULL or a.live == NULL or (a.rational and a.q == NULL) or (not a.rational and a.mod == NULL):
            raise MemoryError()
    e = a.n
    a.n += 1
    a.keys[e] = k
    a.live[e] = 0
    if a.rational:
        mpq_init(&a.q[e])
    a.table[s] = e
    created[0] = True
    if 2 * a.n > a.cap:
        _acc_rehash(a)
    return e


cdef int _heap_push(Acc *a, u128 k) except -1:
    cdef Py_ssize_t i, parent
    if a.hn == a.hcap:
        a.hcap <<= 1
        a.heap = <u128 *>realloc(a.heap, a.hcap * sizeof(u128))
        if a.heap == NULL:
            raise MemoryError()
    i = a.hn
    a.hn += 1
    while i > 0:
        parent = (i - 1) >> 1
        if a.heap[parent] >= k:
            break
        a.heap[i] = a.heap[parent]
        i = parent
    a.heap[i] = k
    return 0


cdef inline u128 _heap_pop(Acc *a) noexcept nogil:
    cdef u128 top = a.heap[0]
    cdef u128 last
    cdef Py_ssize_t i = 0, child, n
    a.hn -= 1
    n = a.hn
    if n == 0:
        return top
    last = a.heap[n]
    while True:
        child = 2 * i + 1
        if child >= n:
            break
        if child + 1 < n and a.heap[child + 1] > a.heap[child]:
            child += 1
        if a.heap[child] <= last:
            break
        a.heap[i] = a.heap[child]
        i = child
    a.heap[i] = last
    return top


cdef object _normal_form_c(dict acc, list reducers, u128 emask, u128 xc, u128 guard, int cshift, int64_t p):
    cdef Acc a
    cdef bint rational = p == 0
    cdef bint created, found
    cdef Py_ssize_t i, j, e, nred = len(reducers)
    cdef CReducer red
    cdef u128 k, nk, s, eg, cb
    cdef int64_t c = 0, v
    cdef __mpq_struct cur, tmp
    cdef list rem = []
    cdef void **reds = <void **>malloc((nred + 1) * sizeof(void *))
    if reds == NULL:
        raise MemoryError()
    for i in range(nred):
        reds[i] = <void *>reducers[i]
    _acc_init(&a, rational, len(acc))
    mpq_init(&cur)
    mpq_init(&tmp)
    try:
        for key, coeff in acc.items():
            if not _to_u128(key, &k):
                return None
            e = _acc_find(&a, k, True, &created)
            if rational:
                if not _as_mpq(coeff, &a.q[e]):
                    return None
                a.live[e] = mpq_sgn(&a.q[e]) != 0
            else:
                a.mod[e] = <int64_t>(coeff % p)
                a.live[e] = a.mod[e] != 0
            if a.live[e]:
                _heap_push(&a, k)
        while a.hn:
            k = _heap_pop(&a)
            e = _acc_find(&a, k, False, &created)
            if e < 0 or not a.live[e]:
                continue
            a.live[e] = 0
            if rational:
                mpq_set(&cur, &a.q[e])
            else:
                c = a.mod[e]
            eg = ((k & emask) ^ xc) | guard
            # with cshift == 128 every u128 key sits in component 0
            cb = k >> cshift if cshift < 128 else 0
            found = False
            for i in range(nred):
                red = <CReducer>reds[i]
                if red.c_lc != cb or ((eg - red.c_le) & guard) != guard:
                    continue
                s = k - red.c_lk
                for j in range(red.n):
                    nk = red.keys[j] + s
                    e = _acc_find(&a, nk, True, &created)
                    if rational:
                        mpq_mul(&tmp, &cur, &red.q[j])
                        if a.live[e]:
                            mpq_sub(&a.q[e], &a.q[e], &tmp)
                            if mpq_sgn(&a.q[e]) == 0:
                                a.live[e] = 0
                        else:
                            mpq_neg(&a.q[e], &tmp)
                            a.live[e] = 1
                            _heap_push(&a, nk)
                    else:
                        v = (c * red.mod[j]) % p
                        if a.live[e]:
                            v = a.mod[e] - v
                            if v < 0:
                                v += p
                            a.mod[e] = v
                            if v == 0:
                                a.live[e] = 0
                        else:
                            a.mod[e] = p - v if v else 0
                            if v:
                                a.live[e] = 1
                                _heap_push(&a, nk)
                found = True
                break
            if not found:
                if rational:
                    rem.append((_from_u128(k), _mpq_object(&cur)))
                else:
                    rem.append((_from_u128(k), c))
        return rem
    finally:
        mpq_clear(&cur)
        mpq_clear(&tmp)
        _acc_free(&a)
        free(reds)


# ---- public kernels ------------------------------------------------------------------------

def normal_form(dict acc, list reducers, object emask, object xc, object guard, object cshift, object p):
    cdef u128 cm, cx, cg
    cdef bint fast = (not p or p < _PMAX) and cshift <= 128
    if fast:
        fast = _to_u128(emask, &cm) and _to_u128(xc, &cx) and _to_u128(guard, &cg)
    if fast:
        for red in reducers:
            if not (isinstance(red, CReducer) and (<CReducer>red).packed):
                fast = False
                break
    if fast:
        rem = _normal_form_c(acc, reducers, cm, cx, cg, cshift, p or 0)
        if rem is not None:
            return rem
    return _normal_form_py(acc, [tuple(r) for r in reducers], emask, xc, guard, cshift, p)


def _normal_form_py(dict acc, list reducers, object emask, object xc, object guard, object cshift, object p):
    cdef list heap = [-k for k in acc]
    cdef list rem = []
    cdef list tail
    cdef tuple red
    cdef object k, c, e, cb, eg, s, nk, old, v, tk, tc
    cdef bint found
    cdef bint modular = bool(p)
    heapify(heap)
    while heap:
        k = -heappop(heap)
        c = acc.pop(k, None)
        if c is None:
            continue
        e = (k & emask) ^ xc
        cb = k >> cshift
        eg = e | guard
        found = False
        for red in reducers:
            if red[1] == cb and ((eg - red[0]) & guard) == guard:
                s = k - red[2]
                tail = red[3]
                if modular:
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
                found = True
                break
        if not found:
            rem.append((k, c))
    return rem


def spoly(list tail1, object s1, list tail2, object s2, object p):
    cdef dict acc = {}
    cdef object k, c, nk, old, v
    cdef bint modular = bool(p)
    for k, c in tail1:
        acc[k + s1] = c
    for k, c in tail2:
        nk = k + s2
        old = acc.get(nk)
        if old is None:
            acc[nk] = (-c) % p if modular else -c
        else:
            v = (old - c) % p if modular else old - c
            if v:
                acc[nk] = v
            else:
                del acc[nk]
    return acc


def divides(object le, object k, object emask, object xc, object guard):
    return ((((k & emask) ^ xc) | guard) - le) & guard == guard
