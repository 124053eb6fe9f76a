"""Ideals and the ideal-level operations: sums, products, intersections, colons,
saturation, elimination, dimension and Hilbert series."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .errors import ModeMismatch, NotHomogeneous, RingMismatch, UnitIdeal
from .groebner import DEFAULT_DEGREE_CAP, GroebnerBasis, buchberger, encode, minimal_subset, normal_form
from .polyring import GREVLEX, MonomialOrder, Polynomial, RingContext, elimination_order

AUX_PREFIX = "@t"


class Ideal:
    """Ideal of a polynomial ring given by generators; Groebner bases cached per order.

    Equality is equality of reduced Groebner bases under grevlex.
    """

    def __init__(self, ring: RingContext, gens: Iterable[Polynomial] = ()):
        self.ring = ring
        out = []
        for g in gens:
            if g.ring != ring:
                if g.ring.names == ring.names and g.ring.field == ring.field:
                    g = Polynomial(ring, g._t)
                else:
                    raise RingMismatch(f"generator from {g.ring} in ideal of {ring}")
            if not g.is_zero():
                out.append(g)
        self.gens = tuple(out)
        self._gb: dict = {}

    @classmethod
    def parse(cls, ring: RingContext, texts: Sequence[str]) -> "Ideal":
        return cls(ring, [ring.parse(t) for t in texts])

    def __repr__(self):
        return f"Ideal({', '.join(g.to_string() for g in self.gens) or '0'})"

    def __iter__(self):
        return iter(self.gens)

    def __len__(self):
        return len(self.gens)

    # ---- Groebner data ---------------------------------------------------
    def groebner(self, order: MonomialOrder | None = None, degree_cap: int = DEFAULT_DEGREE_CAP) -> GroebnerBasis:
        order = order or GREVLEX
        gb = self._gb.get(order)
        if gb is None:
            gb = buchberger(list(self.gens), order, ring=self.ring, degree_cap=degree_cap)
            self._gb[order] = gb
        return gb

    def contains(self, f: Polynomial) -> bool:
        return self.groebner().normal_form(f).is_zero()

    def __contains__(self, f):
        return self.contains(f)

    def is_subset(self, other: "Ideal") -> bool:
        gb = other.groebner()
        return all(gb.normal_form(g).is_zero() for g in self.gens)

    __le__ = is_subset

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        if other.ring.names != self.ring.names or other.ring.field != self.ring.field:
            return False
        return [g._t for g in self.groebner()] == [g._t for g in other.groebner()]

    def __hash__(self):
        return hash(tuple(frozenset(g._t.items()) for g in self.groebner()))

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        return self.groebner().is_unit()

    def is_homogeneous(self) -> bool:
        if not self.ring.graded:
            raise ModeMismatch("homogeneity needs a graded ring")
        return all(g.is_homogeneous() for g in self.gens)

    def require_homogeneous(self):
        if not self.ring.graded:
            raise ModeMismatch("operation needs a graded ring")
        for g in self.gens:
            if not g.is_homogeneous():
                raise NotHomogeneous(f"generator {g} is not homogeneous")

    def degrees(self) -> list:
        return [g.degree() for g in self.gens]

    def minimal_generators(self) -> list:
        """A minimal homogeneous generating set, by increasing degree."""
        self.require_homogeneous()
        layout = self.ring.layout
        vecs = [encode(g, layout) for g in self.gens]
        keep = minimal_subset(vecs, [g.degree() for g in self.gens], layout, self.ring.field)
        return [self.gens[i] for i in keep]

    # ---- arithmetic sugar ------------------------------------------------
    def __add__(self, other):
        return ideal_sum(self, other)

    def __mul__(self, other):
        return ideal_product(self, other)

    def __and__(self, other):
        return intersection(self, other)

    def __truediv__(self, other):
        return colon(self, other)

    def to_strings(self) -> list:
        return [g.to_string() for g in self.gens]


def _same_ring(I: Ideal, J: Ideal):
    if I.ring.names != J.ring.names or I.ring.field != J.ring.field:
        raise RingMismatch(f"{I.ring} vs {J.ring}")


def unit_ideal(ring: RingContext) -> Ideal:
    return Ideal(ring, [ring.one()])


def irrelevant_ideal(ring: RingContext) -> Ideal:
    return Ideal(ring, ring.gens())


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    _same_ring(I, J)
    return Ideal(I.ring, I.gens + J.gens)


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    _same_ring(I, J)
    return Ideal(I.ring, [f * g for f in I.gens for g in J.gens])


def _fresh_aux(ring: RingContext) -> str:
    i = 0
    while f"{AUX_PREFIX}{i}" in ring.names:
        i += 1
    return f"{AUX_PREFIX}{i}"


def eliminate(I: Ideal, variables: Sequence) -> Ideal:
    """``I`` intersected with the subring on the remaining variables (same ring)."""
    ring = I.ring
    idx = sorted({ring.index(v) if isinstance(v, str) else int(v) for v in variables})
    if not idx:
        return I
    rest = [i for i in range(ring.nvars) if i not in idx]
    perm = idx + rest
    work = ring.permute(perm, order=elimination_order(len(idx)))
    pos = {old: new for new, old in enumerate(perm)}
    var_map = [pos[i] for i in range(ring.nvars)]
    gb = buchberger([g.in_ring(work, var_map) for g in I.gens], ring=work)
    k = len(idx)
    back = [perm[j] for j in range(work.nvars)]
    kept = [g.in_ring(ring, back) for g in gb.elements if not any(any(e[:k]) for e in g._t)]
    return Ideal(ring, kept)


def intersection(I: Ideal, J: Ideal) -> Ideal:
    """Exact intersection via elimination of an auxiliary variable from t*I + (1-t)*J."""
    _same_ring(I, J)
    ring = I.ring
    if I.is_zero() or J.is_zero():
        return Ideal(ring, [])
    name = _fresh_aux(ring)
    ext = ring.extend([name], mode="affine")
    t = ext.gen(name)
    one_minus_t = ext.one() - t
    gens = [t * f.in_ring(ext) for f in I.gens] + [one_minus_t * g.in_ring(ext) for g in J.gens]
    elim = eliminate(Ideal(ext, gens), [name])
    n = ring.nvars
    return Ideal(ring, [Polynomial(ring, {e[:n]: c for e, c in g._t.items()}) for g in elim.gens])


def exact_quotient(f: Polynomial, g: Polynomial) -> Polynomial:
    """``f / g`` when ``g`` divides ``f``; raises ValueError otherwise."""
    ring = f.ring
    fld = ring.field
    lg_c, lg_e = g.terms[0]
    inv = fld.inv(lg_c)
    q: dict = {}
    r = f
    while not r.is_zero():
        c, e = r.terms[0]
        d = tuple(a - b for a, b in zip(e, lg_e))
        if any(x < 0 for x in d):
            raise ValueError(f"{g} does not divide {f}")
        coef = fld.mul(c, inv)
        q[d] = coef
        r = r - g.mul_monomial(d, coef)
    return Polynomial(ring, q)


def colon(I: Ideal, J: Ideal) -> Ideal:
    """The quotient [I : J] = {f : f J in I}, as an intersection of principal quotients."""
    _same_ring(I, J)
    ring = I.ring
    result = None
    for g in J.gens:
        if I.contains(g):
            continue
        if I.is_zero():
            part = Ideal(ring, [])
        else:
            inter = intersection(I, Ideal(ring, [g]))
            part = Ideal(ring, [exact_quotient(h, g) for h in inter.gens])
        result = part if result is None else intersection(result, part)
        if result.is_zero():
            break
    if result is None:
        return unit_ideal(ring)
    # present the answer by its reduced basis so repeated colons stay small
    return Ideal(ring, list(result.groebner().elements))


def saturation(I: Ideal, J: Ideal | None = None, max_steps: int = 64) -> Ideal:
    """[I : J^infinity]; ``J`` defaults to the irrelevant ideal."""
    if J is None:
        J = irrelevant_ideal(I.ring)
    cur = I
    for _ in range(max_steps):
        nxt = colon(cur, J)
        if nxt == cur:
            return cur
        cur = nxt
    raise RuntimeError("saturation did not stabilise")


def _independent_dimension(monomials: Sequence[tuple], n: int) -> int:
    supports = [frozenset(i for i, x in enumerate(m) if x) for m in monomials]
    if any(not s for s in supports):
        return -1
    for size in range(n, -1, -1):
        for S in combinations(range(n), size):
            S = frozenset(S)
            if not any(s <= S for s in supports):
                return size
    return 0


def krull_dimension(I: Ideal) -> int:
    """dim R/I from the leading-term ideal (largest independent set of variables)."""
    gb = I.groebner()
    if gb.is_unit():
        raise UnitIdeal("the unit ideal has no dimension")
    return _independent_dimension(gb.leading_monomials(), I.ring.nvars)


def codimension(I: Ideal) -> int:
    return I.ring.nvars - krull_dimension(I)


def projective_dimension_of_scheme(I: Ideal) -> int:
    """dim X for X = Proj R/I (graded mode): dim R/I - 1."""
    if not I.ring.graded:
        raise ModeMismatch("projective dimension needs a graded ring")
    return krull_dimension(I) - 1


# ---- Hilbert series -------------------------------------------------------

def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _minimalize(monos):
    monos = sorted(set(monos), key=lambda m: (sum(m), m))
    out = []
    for m in monos:
        if not any(all(a <= b for a, b in zip(o, m)) for o in out):
            out.append(m)
    return out


def _numerator(monos, weights):
    """Numerator of the Hilbert series of R/(monos) over prod (1 - t^w)."""
    if not monos:
        return [1]
    deg = lambda m: sum(w * e for w, e in zip(weights, m))
    supports = [{i for i, x in enumerate(m) if x} for m in monos]
    coprime = all(not (supports[i] & supports[j]) for i in range(len(monos)) for j in range(i))
    if coprime:
        out = [1]
        for m in monos:
            d = deg(m)
            out = _poly_mul(out, [1] + [0] * (d - 1) + [-1] if d else [0])
        return out
    # pivot on the generator of largest degree
    k = max(range(len(monos)), key=lambda i: (deg(monos[i]), monos[i]))
    m = monos[k]
    rest = monos[:k] + monos[k + 1:]
    quot = _minimalize(tuple(max(a - b, 0) for a, b in zip(g, m)) for g in rest)
    shifted = [0] * deg(m) + _numerator(quot, weights)
    return _poly_sub(_numerator(_minimalize(rest), weights), shifted)


@dataclass(frozen=True)
class HilbertSeries:
    """numerator(t) / prod_i (1 - t^weights[i])."""

    numerator: tuple
    weights: tuple

    def __str__(self):
        terms = []
        for i, c in enumerate(self.numerator):
            if not c:
                continue
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            mag = abs(c)
            body = mono if (mag == 1 and mono) else (f"{mag}{mono}" if mono else str(mag))
            sign = "-" if c < 0 else "+"
            terms.append(body if not terms and sign == "+" else (f"-{body}" if not terms else f"{sign} {body}"))
        num = " ".join(terms) or "0"
        if all(w == 1 for w in self.weights):
            den = f"(1 - t)^{len(self.weights)}"
        else:
            den = "*".join(f"(1 - t^{w})" for w in self.weights)
        return f"({num}) / {den}"

    def coefficients(self, upto: int) -> list:
        """Hilbert function values for degrees 0..upto."""
        series = [self.numerator[i] if i < len(self.numerator) else 0 for i in range(upto + 1)]
        for w in self.weights:
            # divide by (1 - t^w): cumulative sum with stride w
            for d in range(w, upto + 1):
                series[d] += series[d - w]
        return series

    def hilbert_function(self, d: int) -> int:
        return self.coefficients(d)[d] if d >= 0 else 0


def hilbert_series(I: Ideal) -> HilbertSeries:
    """Hilbert series of R/I (graded mode, homogeneous generators)."""
    I.require_homogeneous()
    gb = I.groebner()
    monos = _minimalize(gb.leading_monomials())
    num = _numerator(monos, I.ring.degrees)
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return HilbertSeries(tuple(num), tuple(I.ring.degrees))


def standard_monomial_count(monos: Sequence[tuple], ring: RingContext, d: int) -> int:
    """Brute-force count of degree-d monomials outside the monomial ideal (monos)."""
    count = 0
    for m in ring.monomials_of_degree(d):
        if not any(all(a <= b for a, b in zip(g, m)) for g in monos):
            count += 1
    return count
