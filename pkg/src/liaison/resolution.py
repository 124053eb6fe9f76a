"""Graded free modules, syzygies, minimal free resolutions, Betti tables and Ext.

Twist convention: the free module R(-a_1) + ... + R(-a_k) is stored as
``twists = (a_1, ..., a_k)``, i.e. the degrees of its basis vectors.
Dualizing negates twists.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import comb
from typing import Sequence

from .errors import ExtOutOfRange, ModeMismatch, NotHomogeneous, UnitIdeal
from .groebner import GBEngine, minimal_subset
from .ideals import Ideal
from .polyring import NEG_INF, Polynomial, RingContext, TermLayout


@dataclass(frozen=True)
class GradedFreeModule:
    twists: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "twists", tuple(int(a) for a in self.twists))

    @property
    def rank(self) -> int:
        return len(self.twists)

    def dual(self) -> "GradedFreeModule":
        return GradedFreeModule(tuple(-a for a in self.twists))


@dataclass(frozen=True)
class ModuleMap:
    """Homogeneous map ``source -> target``; ``rows[i][j]`` sends source generator j to coordinate i."""

    ring: RingContext
    source: GradedFreeModule
    target: GradedFreeModule
    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        if len(rows) != self.target.rank or any(len(r) != self.source.rank for r in rows):
            raise ValueError("matrix shape does not match source/target ranks")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_columns(cls, ring, source, target, columns):
        m = target.rank
        rows = tuple(tuple(col[i] for col in columns) for i in range(m))
        return cls(ring, source, target, rows)

    def entry(self, i: int, j: int) -> Polynomial:
        return self.rows[i][j]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list:
        return [self.column(j) for j in range(self.source.rank)]

    @property
    def shape(self):
        return (self.target.rank, self.source.rank)

    def is_zero(self) -> bool:
        return all(e.is_zero() for r in self.rows for e in r)

    def is_homogeneous(self) -> bool:
        for i, r in enumerate(self.rows):
            for j, e in enumerate(r):
                if e.is_zero():
                    continue
                if e.homogeneous_degree() != self.source.twists[j] - self.target.twists[i]:
                    return False
        return True

    def has_unit_entry(self) -> bool:
        return any(e.is_constant() and not e.is_zero() for r in self.rows for e in r)

    def transpose(self) -> "ModuleMap":
        """The dual map target* -> source*."""
        rows = tuple(tuple(self.rows[i][j] for i in range(self.target.rank)) for j in range(self.source.rank))
        return ModuleMap(self.ring, self.target.dual(), self.source.dual(), rows)

    def compose(self, other: "ModuleMap") -> "ModuleMap":
        """``self o other`` (apply ``other`` first)."""
        zero = self.ring.zero()
        rows = []
        for i in range(self.target.rank):
            row = []
            for j in range(other.source.rank):
                acc = zero
                for k in range(self.source.rank):
                    a, b = self.rows[i][k], other.rows[k][j]
                    if not a.is_zero() and not b.is_zero():
                        acc = acc + a * b
                row.append(acc)
            rows.append(row)
        return ModuleMap(self.ring, other.source, self.target, rows)

    def to_strings(self) -> list:
        return [[e.to_string() for e in r] for r in self.rows]


# ---- engine plumbing --------------------------------------------------------

def _layout(ring: RingContext, ncomp: int) -> TermLayout:
    return TermLayout(ring.degrees, ring.order, ncomp)


def _encode_column(col, layout: TermLayout, offset: int = 0) -> list:
    key = layout.key
    out = []
    for i, f in enumerate(col):
        for e, c in f._t.items():
            out.append((key(e, i + offset), c))
    out.sort(reverse=True)
    return out


def _decode_column(terms, ring: RingContext, layout: TermLayout, rank: int, offset: int = 0) -> list:
    parts = [dict() for _ in range(rank)]
    for k, c in terms:
        parts[layout.comp(k) - offset][layout.exps(k)] = c
    return [Polynomial(ring, d) for d in parts]


def _column_degree(col, twists) -> int:
    for i, f in enumerate(col):
        if not f.is_zero():
            return f.degree() + twists[i]
    raise ValueError("zero column has no degree")


def _require_graded(ring: RingContext):
    if not ring.graded:
        raise ModeMismatch("graded operations need a graded ring")


def minimal_columns(ring: RingContext, target: GradedFreeModule, columns: Sequence) -> tuple:
    """Select a minimal generating subset of homogeneous columns; returns (twists, columns)."""
    cols = [c for c in columns if any(not f.is_zero() for f in c)]
    if not cols:
        return (), []
    layout = _layout(ring, target.rank)
    degs = [_column_degree(c, target.twists) for c in cols]
    keep = minimal_subset([_encode_column(c, layout) for c in cols], degs, layout, ring.field, target.twists)
    return tuple(degs[i] for i in keep), [cols[i] for i in keep]


def syzygies(m: ModuleMap, minimal: bool = True) -> ModuleMap:
    """Generators of the kernel of ``m``, as a map into ``m.source``.

    The kernel is read off a position-over-term Groebner basis of the vectors
    (column_j ; e_j) in target + source: basis elements with no target part
    generate the syzygy module.
    """
    ring = m.ring
    _require_graded(ring)
    if not m.is_homogeneous():
        raise NotHomogeneous("syzygies need a homogeneous map")
    tm, k = m.target.rank, m.source.rank
    if k == 0:
        return ModuleMap(ring, GradedFreeModule(), m.source, [[] for _ in range(k)])
    layout = _layout(ring, tm + k)
    eng = GBEngine(layout, ring.field, m.target.twists + m.source.twists)
    one = (0,) * ring.nvars
    for j, col in enumerate(m.columns()):
        terms = _encode_column(col, layout)
        terms.append((layout.key(one, tm + j), ring.field.one()))
        terms.sort(reverse=True)
        eng.add(terms, sugar=m.source.twists[j])
    eng.complete()
    cols = []
    for g in eng.basis(reduced=False):
        if layout.comp(g[0][0]) >= tm:
            cols.append(_decode_column(g, ring, layout, k, offset=tm))
    if minimal:
        twists, cols = minimal_columns(ring, m.source, cols)
    else:
        twists = tuple(_column_degree(c, m.source.twists) for c in cols)
    return ModuleMap.from_columns(ring, GradedFreeModule(twists), m.source, cols)


# ---- resolutions ------------------------------------------------------------

@dataclass(frozen=True)
class Resolution:
    """``maps[i]`` is the differential F_{i+1} -> F_i; F_0 is the module the resolution starts from."""

    ring: RingContext
    maps: tuple
    base: GradedFreeModule
    minimal: bool = True

    @property
    def length(self) -> int:
        return len(self.maps)

    def modules(self) -> list:
        return [self.base] + [m.source for m in self.maps]

    def compositions_vanish(self) -> bool:
        return all(a.compose(b).is_zero() for a, b in zip(self.maps, self.maps[1:]))

    def is_minimal(self) -> bool:
        return not any(m.has_unit_entry() for m in self.maps)

    def dual(self) -> list:
        """Transposed differentials F_i* -> F_{i+1}*."""
        return [m.transpose() for m in self.maps]


def _resolve(first: ModuleMap, max_length: int) -> list:
    maps = [first]
    cur = first
    while cur.source.rank:
        if len(maps) > max_length:
            raise RuntimeError("resolution longer than the number of variables")
        nxt = syzygies(cur)
        if not nxt.source.rank:
            break
        maps.append(nxt)
        cur = nxt
    return maps


def minimal_free_resolution(I: Ideal) -> Resolution:
    """Minimal graded free resolution of R/I."""
    ring = I.ring
    _require_graded(ring)
    I.require_homogeneous()
    if I.is_unit():
        raise UnitIdeal("R/(1) is zero")
    base = GradedFreeModule((0,))
    gens = I.minimal_generators() if I.gens else []
    if not gens:
        return Resolution(ring, (), base)
    first = ModuleMap(ring, GradedFreeModule(tuple(g.degree() for g in gens)), base, [gens])
    return Resolution(ring, tuple(_resolve(first, ring.nvars)), base)


def minimize_presentation(pres: ModuleMap) -> ModuleMap:
    """Equivalent minimal presentation of coker(pres).

    Unit entries are cancelled one at a time, always at the smallest (row, col)
    position; the surviving relations are then cut down to a minimal set.
    """
    ring = pres.ring
    fld = ring.field
    tw_t = list(pres.target.twists)
    tw_s = list(pres.source.twists)
    rows = [list(r) for r in pres.rows]
    while True:
        pivot = None
        for i, r in enumerate(rows):
            for j, e in enumerate(r):
                if e.is_constant() and not e.is_zero():
                    pivot = (i, j)
                    break
            if pivot:
                break
        if pivot is None:
            break
        i, j = pivot
        inv = fld.inv(rows[i][j].leading_coefficient())
        prow = [e * inv for e in rows[i]]
        new = []
        for k, r in enumerate(rows):
            if k == i:
                continue
            a = r[j]
            if a.is_zero():
                new.append([e for l, e in enumerate(r) if l != j])
            else:
                new.append([e - a * prow[l] for l, e in enumerate(r) if l != j])
        rows = new
        del tw_t[i]
        del tw_s[j]
    target = GradedFreeModule(tuple(tw_t))
    cols = [tuple(r[j] for r in rows) for j in range(len(tw_s))]
    twists, cols = minimal_columns(ring, target, cols)
    return ModuleMap.from_columns(ring, GradedFreeModule(twists), target, cols)


def module_resolution(pres: ModuleMap) -> Resolution:
    """Minimal free resolution of coker(pres)."""
    ring = pres.ring
    _require_graded(ring)
    if not pres.is_homogeneous():
        raise NotHomogeneous("presentation is not homogeneous")
    first = minimize_presentation(pres)
    if not first.source.rank:
        return Resolution(ring, (), first.target)
    return Resolution(ring, tuple(_resolve(first, ring.nvars)), first.target)


# ---- Betti tables -----------------------------------------------------------

@dataclass(frozen=True)
class BettiTable:
    entries: dict = field(default_factory=dict)   # (i, j) -> beta_{i,j}

    @classmethod
    def from_json(cls, data) -> "BettiTable":
        if isinstance(data, str):
            data = json.loads(data)
        out = {}
        for k, v in data.items():
            i, j = (int(x) for x in k.split(","))
            out[(i, j)] = int(v)
        return cls(out)

    def __getitem__(self, ij) -> int:
        return self.entries.get(tuple(ij), 0)

    def totals(self) -> list:
        if not self.entries:
            return []
        n = max(i for i, _ in self.entries) + 1
        return [sum(b for (i, _), b in self.entries.items() if i == k) for k in range(n)]

    @property
    def projective_dimension(self) -> int:
        return max((i for i, _ in self.entries), default=-1)

    def regularity(self):
        """max (j - i); NEG_INF for the zero module."""
        if not self.entries:
            return NEG_INF
        return max(j - i for i, j in self.entries)

    def euler_numerator(self) -> dict:
        """sum_i (-1)^i beta_{i,j} t^j, as {power: coefficient} with zero terms dropped."""
        out: dict = {}
        for (i, j), b in self.entries.items():
            out[j] = out.get(j, 0) + (-b if i % 2 else b)
        return {k: v for k, v in sorted(out.items()) if v}

    def to_json_dict(self) -> dict:
        return {f"{i},{j}": b for (i, j), b in sorted(self.entries.items())}

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, indent=2)

    def to_text(self) -> str:
        """Triangular layout: column i, row j - i."""
        if not self.entries:
            return "0"
        cols = range(max(i for i, _ in self.entries) + 1)
        rows = range(min(j - i for i, j in self.entries), max(j - i for i, j in self.entries) + 1)
        cells = {(i, j - i): b for (i, j), b in self.entries.items()}
        header = [str(i) for i in cols]
        totals = [str(t) for t in self.totals()]
        body = [[str(cells.get((i, r), ".")) for i in cols] for r in rows]
        width = max(len(s) for s in header + totals + [c for row in body for c in row])
        labels = [f"{r}:" for r in rows] + ["total:"]
        lw = max(len(s) for s in labels)

        def line(label, items):
            return f"{label:>{lw}} " + " ".join(f"{s:>{width}}" for s in items)

        out = [line("", header), line("total:", totals)]
        out += [line(f"{r}:", row) for r, row in zip(rows, body)]
        return "\n".join(s.rstrip() for s in out)

    __str__ = to_text


def betti_table(res: Resolution) -> BettiTable:
    counts: dict = {}
    for i, mod in enumerate(res.modules()):
        for a in mod.twists:
            counts[(i, a)] = counts.get((i, a), 0) + 1
    return BettiTable(counts)


def regularity(bt: BettiTable):
    return bt.regularity()


def ideal_regularity(I: Ideal):
    """reg R/I."""
    return betti_table(minimal_free_resolution(I)).regularity()


def module_regularity(pres: ModuleMap):
    return betti_table(module_resolution(pres)).regularity()


def _ring_dimensions(weights: Sequence[int], lo: int, hi: int) -> dict:
    """dim R_d for lo <= d <= hi."""
    out = {d: 0 for d in range(lo, hi + 1)}
    if hi < 0:
        return out
    if all(w == 1 for w in weights):
        n = len(weights)
        for d in range(max(lo, 0), hi + 1):
            out[d] = comb(d + n - 1, n - 1) if n else int(d == 0)
        return out
    series = [1] + [0] * hi
    for w in weights:
        for d in range(w, hi + 1):
            series[d] += series[d - w]
    for d in range(max(lo, 0), hi + 1):
        out[d] = series[d]
    return out


def hilbert_function_from_betti(bt: BettiTable, weights: Sequence[int], lo: int, hi: int) -> dict:
    """Hilbert function of the resolved module in degrees lo..hi."""
    num = bt.euler_numerator()
    if not num:
        return {d: 0 for d in range(lo, hi + 1)}
    dims = _ring_dimensions(weights, lo - max(num), hi - min(num))
    return {d: sum(c * dims.get(d - j, 0) for j, c in num.items()) for d in range(lo, hi + 1)}


# ---- Ext and the canonical module ---------------------------------------------

def ext_module(res: Resolution, r: int) -> ModuleMap:
    """Presentation of Ext^r(M, R) for the module M resolved by ``res``."""
    ring = res.ring
    if r < 0 or r > res.length:
        raise ExtOutOfRange(f"Ext^{r} needs a resolution of length >= {r}, have {res.length}")
    mods = res.modules()
    Fr = mods[r].dual()
    boundary = res.maps[r - 1].transpose() if r >= 1 else None    # F_{r-1}* -> F_r*
    if r < res.length:
        K = syzygies(res.maps[r].transpose())                        # ker(F_r* -> F_{r+1}*)
    else:
        K = None
    if K is None:
        if boundary is None:
            return ModuleMap(ring, GradedFreeModule(), Fr, [[] for _ in Fr.twists])
        return minimize_presentation(boundary)
    if boundary is None or not K.source.rank:
        pres = ModuleMap(ring, GradedFreeModule(), K.source, [[] for _ in K.source.twists])
        return pres
    # relations among the kernel generators modulo the boundaries
    joint = ModuleMap.from_columns(
        ring, GradedFreeModule(K.source.twists + boundary.source.twists), Fr,
        K.columns() + boundary.columns())
    rel = syzygies(joint)
    nk = K.source.rank
    cols = [c[:nk] for c in rel.columns()]
    pres = ModuleMap.from_columns(ring, rel.source, K.source, cols)
    return minimize_presentation(pres)


def canonical_module(I: Ideal, r: int | None = None) -> ModuleMap:
    """Presentation of Ext^r(R/I, R) twisted by the degree sum of the variables.

    With ``r`` the codimension of a Cohen-Macaulay R/I this is the canonical
    module, e.g. (R/(F))(d - n) for a hypersurface of degree d in n variables.
    """
    from .ideals import codimension
    if r is None:
        r = codimension(I)
    ext = ext_module(minimal_free_resolution(I), r)
    shift = sum(I.ring.degrees)
    t = GradedFreeModule(tuple(a + shift for a in ext.target.twists))
    s = GradedFreeModule(tuple(a + shift for a in ext.source.twists))
    return ModuleMap(ext.ring, s, t, ext.rows)


def is_cohen_macaulay(I: Ideal, res: Resolution | None = None) -> bool:
    from .ideals import codimension
    res = res or minimal_free_resolution(I)
    return res.length == codimension(I)
