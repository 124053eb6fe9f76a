"""Normal forms and Buchberger's algorithm for ideals and submodules of free modules.

The engine works on packed term keys (see :class:`~liaison.polyring.TermLayout`);
the public functions at the bottom translate to and from :class:`Polynomial`.
"""

from __future__ import annotations

from dataclasses import dataclass
from heapq import heapify, heappop, heappush
from typing import Sequence

from . import kernels
from .errors import DegreeCapExceeded
from .polyring import MonomialOrder, Polynomial, RingContext, TermLayout

DEFAULT_DEGREE_CAP = 40


class GBEngine:
    """Incremental Buchberger algorithm (normal strategy with sugar, Gebauer-Moeller criteria).

    ``shifts[c]`` is the degree of the basis vector of component ``c``; term
    degree is monomial degree plus shift, which makes graded submodules
    homogeneous and lets :meth:`complete` truncate by degree.
    """

    def __init__(self, layout: TermLayout, field, shifts: Sequence[int] | None = None,
                 degree_cap: int = DEFAULT_DEGREE_CAP):
        self.layout = layout
        self.field = field
        self.p = field.characteristic
        self.shifts = tuple(shifts) if shifts is not None else (0,) * layout.ncomp
        self.degree_cap = degree_cap
        self.polys: list = []      # monic term lists, leading term first
        self.reducers: list = []   # kernel reducer tuples, aligned with polys
        self.sugar: list = []
        self.lead_deg: list = []
        self.active: list = []
        self.pairs: list = []      # heap of (sugar, lcm_key, i, j)
        self._L = layout
        self._args = (layout.emask, layout.xc, layout.guard, layout.comp_shift, self.p)

    # ---- helpers -----------------------------------------------------------
    def term_degree(self, key: int) -> int:
        return (key & 0xFFFF) + self.shifts[self._L.comp(key)]

    def _active_reducers(self):
        return [r for r, a in zip(self.reducers, self.active) if a]

    def reduce(self, terms) -> list:
        """Full normal form of ``terms`` against the current basis."""
        acc = dict(terms)
        if not acc:
            return []
        return kernels.normal_form(acc, self._active_reducers(), *self._args)

    def _monic(self, terms):
        lc = terms[0][1]
        if lc == 1:
            return terms
        inv = self.field.inv(lc)
        p = self.p
        if p:
            return [(k, c * inv % p) for k, c in terms]
        return [(k, c * inv) for k, c in terms]

    # ---- insertion -------------------------------------------------------
    def add(self, terms, sugar=None) -> bool:
        """Add a generator; returns False if it reduced to zero."""
        terms = list(terms) if not isinstance(terms, dict) else list(terms.items())
        if not terms:
            return False
        if sugar is None:
            sugar = max(self.term_degree(k) for k, _ in terms)
        rem = self.reduce(terms)
        if not rem:
            return False
        self._insert(self._monic(rem), sugar)
        return True

    def _insert(self, h, sugar):
        L = self._L
        lk = h[0][0]
        n = len(self.polys)
        hcomp = lk >> L.comp_shift
        he = L.evec(lk)
        hdeg = self.term_degree(lk)
        hshift = lk - L.one_key - (hcomp << L.comp_shift)  # multiplier shift of LM(h)

        # criterion B on existing pairs
        if self.pairs:
            kept = []
            for pr in self.pairs:
                _, lcm, i, j = pr
                if (lcm >> L.comp_shift) == hcomp and kernels.divides(he, lcm, *self._args[:3]):
                    li = self._lcm(self.polys[i][0][0], lk)
                    lj = self._lcm(self.polys[j][0][0], lk)
                    if li != lcm and lj != lcm:
                        continue
                kept.append(pr)
            if len(kept) != len(self.pairs):
                heapify(kept)
                self.pairs = kept

        # new pairs with criteria M and F (and the product criterion for ideals)
        groups: dict = {}
        for i in range(n):
            if not self.active[i]:
                continue
            gk = self.polys[i][0][0]
            if (gk >> L.comp_shift) != hcomp:
                continue
            groups.setdefault(self._lcm(gk, lk), []).append(i)
        minimal = []
        for lcm in sorted(groups):
            if any(kernels.divides(L.evec(m), lcm, *self._args[:3]) for m in minimal):
                continue
            minimal.append(lcm)
        ideal_case = L.ncomp == 1
        for lcm in minimal:
            idx = groups[lcm]
            if ideal_case and any(lcm == self.polys[i][0][0] + hshift for i in idx):
                continue
            i = min(idx)
            dl = self.term_degree(lcm)
            s = max(self.sugar[i] + dl - self.lead_deg[i], sugar + dl - hdeg)
            heappush(self.pairs, (s, lcm, i, n))

        # prune basis elements whose leading term is a multiple of LM(h)
        for i in range(n):
            if self.active[i]:
                gk = self.polys[i][0][0]
                if (gk >> L.comp_shift) == hcomp and kernels.divides(he, gk, *self._args[:3]):
                    self.active[i] = False

        self.polys.append(h)
        self.reducers.append(kernels.make_reducer(he, hcomp, lk, h[1:], self.p))
        self.sugar.append(sugar)
        self.lead_deg.append(hdeg)
        self.active.append(True)

    def _lcm(self, a: int, b: int) -> int:
        return self._L.lcm_key(a, b)

    # ---- main loop ---------------------------------------------------------
    def complete(self, upto: int | None = None):
        """Process S-pairs (only those of sugar <= ``upto`` when given)."""
        L = self._L
        p = self.p
        while self.pairs:
            s, lcm, i, j = self.pairs[0]
            if upto is not None and s > upto:
                return self
            heappop(self.pairs)
            if s > self.degree_cap:
                raise DegreeCapExceeded(f"S-pair degree {s} exceeds cap {self.degree_cap}")
            fi, fj = self.polys[i], self.polys[j]
            acc = kernels.spoly(fi[1:], lcm - fi[0][0], fj[1:], lcm - fj[0][0], p)
            if not acc:
                continue
            rem = kernels.normal_form(acc, self._active_reducers(), *self._args)
            if rem:
                self._insert(self._monic(rem), s)
        return self

    def basis(self, reduced=True) -> list:
        """Active elements, interreduced when ``reduced``; sorted by descending leading term."""
        idx = [i for i, a in enumerate(self.active) if a]
        if not reduced:
            out = [self.polys[i] for i in idx]
        else:
            out = []
            for i in idx:
                others = [self.reducers[j] for j in idx if j != i]
                g = self.polys[i]
                tail = kernels.normal_form(dict(g[1:]), others, *self._args) if len(g) > 1 else []
                out.append([g[0]] + tail)
        out.sort(key=lambda g: g[0][0], reverse=True)
        return out


def minimal_subset(vectors, degrees, layout: TermLayout, field, shifts=None) -> list:
    """Indices of a minimal generating subset of homogeneous ``vectors``.

    Candidates are scanned by increasing degree (ties by index); a candidate is
    kept iff it is not in the span of those kept so far, which is decided
    against a Groebner basis truncated at the candidate's degree.
    """
    eng = GBEngine(layout, field, shifts)
    keep = []
    for i in sorted(range(len(vectors)), key=lambda i: (degrees[i], i)):
        if not vectors[i]:
            continue
        eng.complete(upto=degrees[i])
        if eng.add(vectors[i], sugar=degrees[i]):
            keep.append(i)
    return keep


# ---- translation ----------------------------------------------------------

def encode(f: Polynomial, layout: TermLayout, comp: int = 0) -> list:
    key = layout.key
    return sorted(((key(e, comp), c) for e, c in f._t.items()), reverse=True)


def decode(terms, ring: RingContext) -> Polynomial:
    exps = ring.layout.exps
    return Polynomial(ring, {exps(k): c for k, c in terms})


def _order_ring(polys, order, ring=None) -> RingContext:
    if ring is None:
        ring = polys[0].ring
    return ring.with_order(order) if order is not None else ring


@dataclass(frozen=True)
class GroebnerBasis:
    elements: tuple
    order: MonomialOrder
    reduced: bool
    ring: RingContext

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def normal_form(self, f: Polynomial) -> Polynomial:
        """Remainder of ``f`` (returned in ``f``'s own ring)."""
        return normal_form(f, list(self.elements), self.order)

    def contains(self, f: Polynomial) -> bool:
        return self.normal_form(f).is_zero()

    def leading_monomials(self) -> list:
        return [g.leading_monomial() for g in self.elements]

    def is_unit(self) -> bool:
        return any(g.is_constant() and not g.is_zero() for g in self.elements)

    def __eq__(self, other):
        if not isinstance(other, GroebnerBasis):
            return NotImplemented
        return self.order == other.order and [g._t for g in self.elements] == [g._t for g in other.elements]

    def __hash__(self):
        return hash((self.order, len(self.elements)))


def normal_form(f: Polynomial, basis: Sequence[Polynomial], order: MonomialOrder | None = None) -> Polynomial:
    """Remainder of ``f`` under full division by ``basis`` (any list; no GB needed)."""
    ring = _order_ring([f], order)
    layout = ring.layout
    if f.is_zero():
        return Polynomial(f.ring, {})
    reducers = []
    fld = ring.field
    for g in basis:
        if g.is_zero():
            continue
        if g.ring.names != f.ring.names:
            from .errors import RingMismatch
            raise RingMismatch("basis and polynomial live in different rings")
        t = encode(g, layout)
        inv = fld.inv(t[0][1])
        t = [(k, fld.mul(c, inv)) for k, c in t]
        lk = t[0][0]
        reducers.append(kernels.make_reducer(layout.evec(lk), lk >> layout.comp_shift, lk, t[1:],
                                             fld.characteristic))
    acc = dict(encode(f, layout))
    rem = kernels.normal_form(acc, reducers, layout.emask, layout.xc, layout.guard,
                              layout.comp_shift, fld.characteristic)
    return Polynomial(f.ring, {layout.exps(k): c for k, c in rem})


def buchberger(gens: Sequence[Polynomial], order: MonomialOrder | None = None, *,
               ring: RingContext | None = None, degree_cap: int = DEFAULT_DEGREE_CAP,
               reduced: bool = True) -> GroebnerBasis:
    """Groebner basis of the ideal generated by ``gens`` (reduced by default)."""
    if ring is None:
        if not gens:
            raise ValueError("need a ring when no generators are given")
        ring = gens[0].ring
    wring = ring.with_order(order) if order is not None else ring
    layout = wring.layout
    eng = GBEngine(layout, wring.field, degree_cap=degree_cap)
    encoded = [encode(g, layout) for g in gens if not g.is_zero()]
    for t in sorted(encoded, key=lambda t: (max(k & 0xFFFF for k, _ in t), t[0][0])):
        eng.add(t)
    eng.complete()
    elems = tuple(decode(t, wring) for t in eng.basis(reduced=reduced))
    return GroebnerBasis(elems, wring.order, reduced, wring)


def reduce_basis(gb: GroebnerBasis) -> GroebnerBasis:
    """The reduced Groebner basis for the same ideal and order."""
    ring = gb.ring.with_order(gb.order)
    layout = ring.layout
    eng = GBEngine(layout, ring.field)
    polys = [g for g in gb.elements if not g.is_zero()]
    # insert by increasing leading term: the result is then already minimal
    for g in sorted(polys, key=lambda g: layout.key(g.leading_monomial())):
        eng.add(encode(g, layout))
    eng.pairs = []  # input is a Groebner basis: no S-pairs needed
    elems = tuple(decode(t, ring) for t in eng.basis(reduced=True))
    return GroebnerBasis(elems, gb.order, True, ring)


def spolynomial(f: Polynomial, g: Polynomial, order: MonomialOrder | None = None) -> Polynomial:
    ring = _order_ring([f], order)
    layout = ring.layout
    tf = encode(f.monic(), layout)
    tg = encode(g.monic(), layout)
    lcm = layout.lcm_key(tf[0][0], tg[0][0])
    acc = kernels.spoly(tf[1:], lcm - tf[0][0], tg[1:], lcm - tg[0][0], ring.field.characteristic)
    return Polynomial(f.ring, {layout.exps(k): c for k, c in acc.items()})


def satisfies_buchberger_criterion(polys: Sequence[Polynomial], order: MonomialOrder | None = None) -> bool:
    """Every S-polynomial reduces to zero (direct check, no criteria)."""
    polys = [p for p in polys if not p.is_zero()]
    for a in range(len(polys)):
        for b in range(a + 1, len(polys)):
            s = spolynomial(polys[a], polys[b], order)
            if not normal_form(s, polys, order).is_zero():
                return False
    return True


def leading_term_ideal(gb: GroebnerBasis):
    """Monomial ideal generated by the leading terms of ``gb``."""
    from .ideals import Ideal

    ring = gb.ring
    return Ideal(ring, [ring.monomial(g.leading_monomial()) for g in gb.elements])
