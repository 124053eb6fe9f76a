"""Residual intersections and generic links.

Two constructions of alpha = (f_1, ..., f_t) * M:

* symbolic: M is a t x s matrix of fresh variables, computed in an affine
  extension ring (tiny inputs only);
* graded random: M has an r x r identity block on top and dense random forms
  of degree d_j - d_i below, so alpha_j is homogeneous of degree d_j.
  Genericity is checked after the fact and the sample redrawn on failure.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field

from .errors import GenericityFailure, ModeMismatch, SizeCapExceeded, UnitIdeal
from .ideals import Ideal, codimension, colon, ideal_sum
from .polyring import Polynomial, RingContext

MASK64 = (1 << 64) - 1
DEFAULT_RETRIES = 8
DEFAULT_COEFF_BOUND = 100
SYMBOLIC_SIZE_CAP = 6


def splitmix64(x: int) -> int:
    """Successor seed (one splitmix64 step)."""
    x = (x + 0x9E3779B97F4A7C15) & MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


@dataclass(frozen=True)
class LinkMatrix:
    mode: str                  # "symbolic" | "random"
    rows: tuple                # t rows of s Polynomial entries
    variables: tuple = ()      # names of the fresh variables (symbolic mode)

    @property
    def shape(self):
        return (len(self.rows), len(self.rows[0]) if self.rows else 0)

    def to_strings(self):
        return [[e.to_string() for e in r] for r in self.rows]


@dataclass
class LinkageResult:
    ideal: Ideal
    alpha: list
    J: Ideal
    Z: Ideal
    matrix: LinkMatrix
    seed: int | None
    genericity: dict = field(default_factory=dict)
    degenerate: bool = False
    initial_seed: int | None = None

    @property
    def ring(self) -> RingContext:
        return self.J.ring

    def to_dict(self) -> dict:
        return {
            "ring": self.ring.declaration(),
            "mode": self.matrix.mode,
            "seed": self.seed,
            "initial_seed": self.initial_seed,
            "alpha": [a.to_string() for a in self.alpha],
            "J": _ideal_strings(self.J),
            "Z": _ideal_strings(self.Z),
            "matrix": self.matrix.to_strings(),
            "genericity": dict(self.genericity),
            "degenerate": self.degenerate,
            "max_generator_degree": max_generator_degree(self.J) if self.ring.graded else None,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


def _ideal_strings(I: Ideal) -> list:
    return [g.to_string() for g in I.gens]


def _codim_or_none(I: Ideal):
    try:
        return codimension(I)
    except UnitIdeal:
        return None


def _fresh_names(ring: RingContext, t: int, s: int) -> list:
    prefix = "U"
    while True:
        sep = "" if t < 10 and s < 10 else "_"
        names = [f"{prefix}{i + 1}{sep}{j + 1}" for i in range(t) for j in range(s)]
        if not set(names) & set(ring.names):
            return names
        prefix += "U"


def symbolic_residual(I: Ideal, s: int, cap: int = SYMBOLIC_SIZE_CAP) -> LinkageResult:
    """s-generic residual intersection with a matrix of fresh variables."""
    gens = list(I.gens)
    t = len(gens)
    if t * s > cap:
        raise SizeCapExceeded(f"symbolic matrix {t}x{s} exceeds the size cap {cap}")
    if s < 1 or t == 0:
        raise ValueError("need a nonzero ideal and s >= 1")
    names = _fresh_names(I.ring, t, s)
    ext = I.ring.extend(names, mode="affine")
    U = [[ext.gen(names[i * s + j]) for j in range(s)] for i in range(t)]
    f = [g.in_ring(ext) for g in gens]
    alpha = []
    for j in range(s):
        acc = ext.zero()
        for i in range(t):
            acc = acc + f[i] * U[i][j]
        alpha.append(acc)
    IR = Ideal(ext, f)
    A = Ideal(ext, alpha)
    J = colon(A, IR)
    Z = ideal_sum(IR, J)
    rec = {
        "alpha_is_regular_sequence": _codim_or_none(A) == s,
        "codim_J": _codim_or_none(J),
        "codim_Z": _codim_or_none(Z),
        "resample_count": 0,
    }
    return LinkageResult(I, alpha, J, Z, LinkMatrix("symbolic", tuple(map(tuple, U)), tuple(names)),
                         None, rec, degenerate=J.is_unit())


def random_form(ring: RingContext, degree: int, rng: random.Random, bound: int = DEFAULT_COEFF_BOUND) -> Polynomial:
    """Dense form of the given degree with random nonzero coefficients."""
    if degree < 0:
        return ring.zero()
    p = ring.field.characteristic
    terms = {}
    for m in ring.monomials_of_degree(degree):
        if p:
            c = rng.randrange(1, p)
        else:
            c = rng.randint(1, bound) * rng.choice((-1, 1))
        terms[m] = ring.field.convert(c)
    return Polynomial(ring, terms)


def sorted_generators(I: Ideal) -> list:
    """Minimal generators, by descending degree (stable)."""
    gens = I.minimal_generators()
    return sorted(gens, key=lambda g: -g.degree())


def _random_link(gens, r, seed, bound):
    ring = gens[0].ring
    rng = random.Random(seed)
    t = len(gens)
    degs = [g.degree() for g in gens]
    one, zero = ring.one(), ring.zero()
    rows = []
    for i in range(t):
        if i < r:
            rows.append([one if i == j else zero for j in range(r)])
        else:
            rows.append([random_form(ring, degs[j] - degs[i], rng, bound) for j in range(r)])
    alpha = []
    for j in range(r):
        acc = zero
        for i in range(t):
            if not rows[i][j].is_zero():
                acc = acc + gens[i] * rows[i][j]
        alpha.append(acc)
    return alpha, LinkMatrix("random", tuple(map(tuple, rows)))


def graded_generic_link(I: Ideal, seed: int, retries: int = DEFAULT_RETRIES,
                        bound: int = DEFAULT_COEFF_BOUND) -> LinkageResult:
    """Link I by r random I-combinations of its generators, r = codim I."""
    ring = I.ring
    if not ring.graded:
        raise ModeMismatch("graded links need a graded ring")
    I.require_homogeneous()
    if I.is_unit():
        raise UnitIdeal("cannot link the unit ideal")
    gens = sorted_generators(I)
    r = codimension(I)
    initial = seed & MASK64
    cur = initial
    for attempt in range(retries + 1):
        alpha, M = _random_link(gens, r, cur, bound)
        A = Ideal(ring, alpha)
        rec = {"alpha_is_regular_sequence": codimension(A) == r if not A.is_unit() else False,
               "codim_J": None, "codim_Z": None, "resample_count": attempt}
        if rec["alpha_is_regular_sequence"]:
            J = colon(A, I)
            if not J.is_unit():
                J = Ideal(ring, sorted(J.minimal_generators(), key=lambda g: g.degree()))
            Z = ideal_sum(I, J)
            rec["codim_J"] = _codim_or_none(J)
            rec["codim_Z"] = _codim_or_none(Z)
            degenerate = J.is_unit()
            ok = degenerate or (rec["codim_J"] == r and (rec["codim_Z"] is None or rec["codim_Z"] == r + 1))
            if ok:
                return LinkageResult(I, alpha, J, Z, M, cur, rec, degenerate, initial)
        cur = splitmix64(cur)
    raise GenericityFailure(f"no generic link after {retries + 1} samples from seed {initial}")


def intersection_divisor(result: LinkageResult) -> Ideal:
    """Z = I R' + J."""
    IR = Ideal(result.ring, [g.in_ring(result.ring) for g in result.ideal.gens])
    return ideal_sum(IR, result.J)


def max_generator_degree(J: Ideal) -> int:
    """Largest degree of a minimal generator; 0 for the unit and zero ideals."""
    if J.is_zero() or J.is_unit():
        return 0
    return max(g.degree() for g in J.minimal_generators())


def link_back(result: LinkageResult) -> Ideal:
    """[alpha : J], which returns I when I is unmixed."""
    return colon(Ideal(result.ring, result.alpha), result.J)
