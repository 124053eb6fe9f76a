"""Coefficient fields, monomial orders, ring contexts and sparse polynomials.

Monomials are plain tuples of exponents.  Every ring owns a :class:`TermLayout`
that packs an exponent tuple (plus an optional module component) into a single
Python integer whose natural integer order *is* the monomial order.  The packing
is additive, so multiplying by a monomial is an integer addition; the Groebner
kernels work exclusively on these packed keys.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property
from itertools import combinations_with_replacement
from typing import Iterable, Sequence

from gmpy2 import mpq

from .errors import (
    DegreeCapExceeded,
    DivisionInInput,
    MalformedSyntax,
    ModeMismatch,
    RingMismatch,
    UnknownVariable,
)

NEG_INF = float("-inf")
DEFAULT_MONOMIAL_DEGREE_CAP = 64

Monomial = tuple  # tuple[int, ...]


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class CoefficientField:
    """Exact coefficient field: ``QQ`` (characteristic 0) or ``GF(p)``."""

    characteristic: int = 0

    def __post_init__(self):
        p = self.characteristic
        if p != 0 and not (p < 2**31 and _is_prime(p)):
            raise ValueError(f"GF({p}): modulus must be a prime below 2^31")

    @property
    def is_prime_field(self) -> bool:
        return self.characteristic != 0

    def __str__(self):
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"

    def convert(self, x):
        p = self.characteristic
        if p == 0:
            if isinstance(x, Fraction):
                return mpq(x.numerator, x.denominator)
            return mpq(x)
        if isinstance(x, int):
            return x % p
        # rational input: numerator * denominator^-1
        q = mpq(x)
        num, den = int(q.numerator), int(q.denominator)
        if den % p == 0:
            raise ZeroDivisionError(f"denominator vanishes in {self}")
        return num * pow(den, -1, p) % p

    def zero(self):
        return mpq(0) if self.characteristic == 0 else 0

    def one(self):
        return mpq(1) if self.characteristic == 0 else 1

    def add(self, a, b):
        p = self.characteristic
        return a + b if p == 0 else (a + b) % p

    def sub(self, a, b):
        p = self.characteristic
        return a - b if p == 0 else (a - b) % p

    def mul(self, a, b):
        p = self.characteristic
        return a * b if p == 0 else (a * b) % p

    def neg(self, a):
        p = self.characteristic
        return -a if p == 0 else (-a) % p

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        p = self.characteristic
        return 1 / a if p == 0 else pow(int(a), -1, p)

    def format(self, c) -> str:
        if self.characteristic:
            return str(int(c))
        return str(c)


QQ = CoefficientField(0)


def GF(p: int) -> CoefficientField:
    return CoefficientField(p)


@dataclass(frozen=True)
class MonomialOrder:
    """``grevlex``, ``lex`` or ``elim`` (first ``block`` variables eliminated, grevlex in each block)."""

    kind: str = "grevlex"
    block: int = 0

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "elim"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "elim" and self.block < 1:
            raise ValueError("elimination order needs a block of at least one variable")

    def __str__(self):
        return f"elim({self.block})" if self.kind == "elim" else self.kind

    @classmethod
    def parse(cls, text: str) -> "MonomialOrder":
        text = text.strip()
        m = re.fullmatch(r"elim(?:ination)?(?:-block)?\((\d+)\)", text)
        if m:
            return cls("elim", int(m.group(1)))
        return cls(text)


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def elimination_order(k: int) -> MonomialOrder:
    return MonomialOrder("elim", k)


_W = 16
_FMAX = (1 << 15) - 1
_GUARD = 1 << 15


class TermLayout:
    """Additive integer packing of (monomial, component) pairs.

    Field layout, least significant first: total weighted degree, then the
    per-order exponent and block-degree fields, then the module component.
    Integer comparison of two keys reproduces the monomial order (position
    over term for modules, lower component index ranking higher).
    """

    def __init__(self, weights: Sequence[int], order: MonomialOrder = GREVLEX, ncomp: int = 1):
        n = len(weights)
        self.weights = tuple(weights)
        self.order = order
        self.ncomp = ncomp
        self.nvars = n
        pos = _W  # bits [0, 16) hold the total degree
        var_pos = [0] * n
        compl = [False] * n
        deg_fields = []
        if order.kind == "lex":
            for i in reversed(range(n)):
                var_pos[i] = pos
                pos += _W
        else:
            k = order.block if order.kind == "elim" else 0
            if k > n:
                raise ValueError(f"elimination block {k} exceeds {n} variables")
            blocks = [tuple(range(k)), tuple(range(k, n))] if k else [tuple(range(n))]
            for block in reversed(blocks):
                for i in block:
                    var_pos[i] = pos
                    compl[i] = True
                    pos += _W
                deg_fields.append((pos, block))
                pos += _W
        self.var_pos = tuple(var_pos)
        self.compl = tuple(compl)
        self.deg_fields = tuple(deg_fields)
        self.comp_shift = pos
        self.emask = sum(_FMAX << p for p in var_pos)
        self.xc = sum(_FMAX << p for p, c in zip(var_pos, compl) if c)
        self.guard = sum(_GUARD << p for p in var_pos)
        self.one_key = self.key((0,) * n, 0) - ((ncomp - 1) << pos)

    def key(self, exps: Sequence[int], comp: int = 0) -> int:
        w = self.weights
        deg = 0
        k = 0
        for i, e in enumerate(exps):
            if e > _FMAX:
                raise DegreeCapExceeded(f"exponent {e} exceeds packing capacity")
            deg += w[i] * e
            k += ((_FMAX - e) if self.compl[i] else e) << self.var_pos[i]
        if deg > _FMAX:
            raise DegreeCapExceeded(f"degree {deg} exceeds packing capacity")
        for p, block in self.deg_fields:
            k += sum(w[i] * exps[i] for i in block) << p
        return k + deg + ((self.ncomp - 1 - comp) << self.comp_shift)

    def shift(self, exps: Sequence[int]) -> int:
        """Integer added to a key to multiply its monomial by ``exps``."""
        return self.key(exps, self.ncomp - 1) - self.one_key

    def exps(self, key: int) -> tuple:
        out = []
        for p, c in zip(self.var_pos, self.compl):
            f = (key >> p) & _FMAX
            out.append(_FMAX - f if c else f)
        return tuple(out)

    def comp(self, key: int) -> int:
        return self.ncomp - 1 - (key >> self.comp_shift)

    @staticmethod
    def degree(key: int) -> int:
        return key & 0xFFFF

    def evec(self, key: int) -> int:
        """Packed exponent vector (guard bits clear) for divisibility tests."""
        return (key & self.emask) ^ self.xc

    def lcm_key(self, a: int, b: int) -> int:
        ea, eb = self.exps(a), self.exps(b)
        return self.key(tuple(max(x, y) for x, y in zip(ea, eb)), self.comp(a))


@dataclass(frozen=True, eq=True)
class RingContext:
    """A polynomial ring: variable names and degrees, mode, field and monomial order."""

    names: tuple
    degrees: tuple = ()
    mode: str = "graded"
    field: CoefficientField = QQ
    order: MonomialOrder = GREVLEX
    degree_cap: int = dc_field(default=DEFAULT_MONOMIAL_DEGREE_CAP, compare=False)

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if len(set(names)) != len(names):
            raise ValueError("variable names must be unique")
        degrees = tuple(self.degrees) if self.degrees else (1,) * len(names)
        object.__setattr__(self, "degrees", degrees)
        if len(degrees) != len(names):
            raise ValueError("one degree per variable required")
        if self.mode not in ("graded", "affine"):
            raise ValueError(f"unknown ring mode {self.mode!r}")
        if self.mode == "graded" and any(d < 1 for d in degrees):
            raise ValueError("graded rings need positive variable degrees")

    def __repr__(self):
        return f"RingContext({self.field} [{', '.join(self.names)}], {self.mode}, {self.order})"

    __str__ = __repr__

    @property
    def nvars(self) -> int:
        return len(self.names)

    @property
    def graded(self) -> bool:
        return self.mode == "graded"

    @cached_property
    def layout(self) -> TermLayout:
        return TermLayout(self.degrees, self.order)

    @cached_property
    def _index(self) -> dict:
        return {n: i for i, n in enumerate(self.names)}

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownVariable(f"unknown variable {name!r}") from None

    def with_order(self, order: MonomialOrder) -> "RingContext":
        if order == self.order:
            return self
        return RingContext(self.names, self.degrees, self.mode, self.field, order, self.degree_cap)

    def with_mode(self, mode: str) -> "RingContext":
        if mode == self.mode:
            return self
        return RingContext(self.names, self.degrees, mode, self.field, self.order, self.degree_cap)

    def extend(self, names: Iterable[str], degrees=None, mode=None, order=None) -> "RingContext":
        names = tuple(names)
        degrees = tuple(degrees) if degrees is not None else (1,) * len(names)
        return RingContext(
            self.names + names,
            self.degrees + degrees,
            mode or self.mode,
            self.field,
            order or self.order,
            self.degree_cap,
        )

    def permute(self, perm: Sequence[int], order=None) -> "RingContext":
        """Ring whose i-th variable is this ring's ``perm[i]``-th variable."""
        return RingContext(
            tuple(self.names[i] for i in perm),
            tuple(self.degrees[i] for i in perm),
            self.mode,
            self.field,
            order or self.order,
            self.degree_cap,
        )

    # constructors
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        c = self.field.convert(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def gen(self, i) -> "Polynomial":
        if isinstance(i, str):
            i = self.index(i)
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): self.field.one()})

    def gens(self) -> list:
        return [self.gen(i) for i in range(self.nvars)]

    def monomial(self, exps, coeff=1) -> "Polynomial":
        c = self.field.convert(coeff)
        return Polynomial(self, {tuple(exps): c} if c else {})

    def monomial_degree(self, exps) -> int:
        return sum(d * e for d, e in zip(self.degrees, exps))

    def monomials_of_degree(self, d: int) -> list:
        """All monomials of weighted degree ``d``, descending in the ring order."""
        if d < 0:
            return []
        n = self.nvars
        out = []
        if all(w == 1 for w in self.degrees):
            for combo in combinations_with_replacement(range(n), d):
                e = [0] * n
                for i in combo:
                    e[i] += 1
                out.append(tuple(e))
        else:
            def rec(i, left, acc):
                if i == n:
                    if left == 0:
                        out.append(tuple(acc))
                    return
                w = self.degrees[i]
                for e in range(left // w + 1):
                    rec(i + 1, left - w * e, acc + [e])
            rec(0, d, [])
        key = self.layout.key
        out.sort(key=key, reverse=True)
        return out

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(text, self)

    def declaration(self) -> str:
        out = f"ring {self.field} [{', '.join(self.names)}]"
        if self.mode != "graded":
            out += f" {self.mode}"
        if self.order != GREVLEX:
            out += f" order {self.order}"
        return out


def compare_monomials(a: Monomial, b: Monomial, order: MonomialOrder = GREVLEX, weights=None) -> int:
    """Return -1, 0 or 1 as ``a`` is less than, equal to or greater than ``b``."""
    if len(a) != len(b):
        raise RingMismatch("monomials from different rings")
    layout = TermLayout(weights or (1,) * len(a), order)
    ka, kb = layout.key(a), layout.key(b)
    return (ka > kb) - (ka < kb)


class Polynomial:
    """Sparse polynomial: a dict from exponent tuples to nonzero field elements."""

    __slots__ = ("ring", "_t", "_sorted")

    def __init__(self, ring: RingContext, terms: dict, _canonical=True):
        self.ring = ring
        if not _canonical:
            f = ring.field
            terms = {e: f.convert(c) for e, c in terms.items()}
            terms = {e: c for e, c in terms.items() if c}
        self._t = terms
        self._sorted = None

    # ---- inspection ------------------------------------------------------
    @property
    def terms(self) -> list:
        """(coefficient, exponents) pairs, strictly descending in the ring order."""
        if self._sorted is None:
            key = self.ring.layout.key
            self._sorted = [(self._t[e], e) for e in sorted(self._t, key=key, reverse=True)]
        return self._sorted

    def as_dict(self) -> dict:
        return dict(self._t)

    def is_zero(self) -> bool:
        return not self._t

    def __bool__(self):
        return bool(self._t)

    def __len__(self):
        return len(self._t)

    def is_constant(self) -> bool:
        return not self._t or (len(self._t) == 1 and not any(next(iter(self._t))))

    def leading_monomial(self):
        return self.terms[0][1] if self._t else None

    def leading_coefficient(self):
        return self.terms[0][0] if self._t else self.ring.field.zero()

    def degree(self):
        if not self._t:
            return NEG_INF
        return max(self.ring.monomial_degree(e) for e in self._t)

    def variables(self) -> set:
        out = set()
        for e in self._t:
            out.update(i for i, x in enumerate(e) if x)
        return out

    def coefficient(self, exps):
        return self._t.get(tuple(exps), self.ring.field.zero())

    # ---- arithmetic ------------------------------------------------------
    def _check(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring} vs {other.ring}")
            return other
        return self.ring.constant(other)

    def __add__(self, other):
        other = self._check(other)
        f = self.ring.field
        out = dict(self._t)
        for e, c in other._t.items():
            v = f.add(out.get(e, 0), c)
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        f = self.ring.field
        return Polynomial(self.ring, {e: f.neg(c) for e, c in self._t.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Polynomial":
        f = self.ring.field
        c = f.convert(c)
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {e: f.mul(v, c) for e, v in self._t.items()})

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        other = self._check(other)
        if not self._t or not other._t:
            return self.ring.zero()
        if self.degree() + other.degree() > self.ring.degree_cap:
            raise DegreeCapExceeded(
                f"product degree {self.degree() + other.degree()} exceeds cap {self.ring.degree_cap}"
            )
        f = self.ring.field
        p = f.characteristic
        out: dict = {}
        for e1, c1 in self._t.items():
            for e2, c2 in other._t.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        if p:
            out = {e: c % p for e, c in out.items()}
        return Polynomial(self.ring, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def mul_monomial(self, exps, coeff=1) -> "Polynomial":
        f = self.ring.field
        c = f.convert(coeff)
        return Polynomial(
            self.ring,
            {tuple(a + b for a, b in zip(e, exps)): f.mul(v, c) for e, v in self._t.items()} if c else {},
        )

    def monic(self) -> "Polynomial":
        if not self._t:
            return self
        return self.scale(self.ring.field.inv(self.leading_coefficient()))

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._t == other._t
        if isinstance(other, (int, Fraction)) or type(other).__name__ == "mpq":
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._t.items()))

    # ---- grading ---------------------------------------------------------
    def homogeneous_degree(self):
        """Degree if homogeneous (``NEG_INF`` for zero), else ``None``."""
        if not self.ring.graded:
            raise ModeMismatch("homogeneity needs a graded ring")
        if not self._t:
            return NEG_INF
        degs = {self.ring.monomial_degree(e) for e in self._t}
        return degs.pop() if len(degs) == 1 else None

    def is_homogeneous(self) -> bool:
        return self.homogeneous_degree() is not None

    # ---- conversion ------------------------------------------------------
    def in_ring(self, ring: RingContext, var_map: Sequence[int] | None = None) -> "Polynomial":
        """Map into ``ring``; ``var_map[i]`` is the target index of variable i."""
        if var_map is None:
            if ring.names[: self.ring.nvars] != self.ring.names:
                raise RingMismatch("target ring does not extend source ring")
            pad = (0,) * (ring.nvars - self.ring.nvars)
            return Polynomial(ring, {e + pad: ring.field.convert(c) for e, c in self._t.items()})
        out = {}
        for e, c in self._t.items():
            ne = [0] * ring.nvars
            for i, x in enumerate(e):
                if x:
                    j = var_map[i]
                    if j is None:
                        raise RingMismatch(f"variable {self.ring.names[i]} has no image")
                    ne[j] += x
            out[tuple(ne)] = ring.field.convert(c)
        return Polynomial(ring, out)

    def to_string(self) -> str:
        if not self._t:
            return "0"
        names = self.ring.names
        fld = self.ring.field
        p = fld.characteristic
        parts = []
        for c, e in self.terms:
            mono = "*".join(
                names[i] if x == 1 else f"{names[i]}^{x}" for i, x in enumerate(e) if x
            )
            if p:
                c = int(c)
                neg = c > p // 2
                mag = p - c if neg else c
            else:
                neg = c < 0
                mag = -c if neg else c
            if mono:
                body = mono if mag == 1 else f"{fld.format(mag)}*{mono}"
            else:
                body = fld.format(mag)
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append(("- " if neg else "+ ") + body)
        return " ".join(parts)

    __str__ = to_string

    def __repr__(self):
        return f"Polynomial({self.to_string()!r})"


def poly_add(f: Polynomial, g: Polynomial) -> Polynomial:
    return f + g


def poly_mul(f: Polynomial, g: Polynomial) -> Polynomial:
    return f * g


def poly_scale(f: Polynomial, c) -> Polynomial:
    return f.scale(c)


def is_homogeneous(f: Polynomial) -> bool:
    return f.is_homogeneous()


# ---- parser ---------------------------------------------------------------

_TOKEN = re.compile(
    r"(?P<ws>\s+)|(?P<rat>\d+/\d+)|(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>\*\*|[-+*^()/])"
)


def _tokenize(text, line, col0):
    toks = []
    i = 0
    while i < len(text):
        m = _TOKEN.match(text, i)
        if not m:
            raise MalformedSyntax(f"unexpected character {text[i]!r}", line, col0 + i + 1)
        kind = m.lastgroup
        if kind != "ws":
            val = m.group()
            if kind == "op" and val == "/":
                raise DivisionInInput("division is not allowed in polynomial input", line, col0 + i + 1)
            if kind == "op" and val == "**":
                val = "^"
            toks.append((kind, val, col0 + i + 1))
        i = m.end()
    toks.append(("end", "", col0 + len(text) + 1))
    return toks


class _Parser:
    def __init__(self, text, ring, line, col0):
        self.ring = ring
        self.toks = _tokenize(text, line, col0)
        self.i = 0
        self.line = line

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise MalformedSyntax(msg, self.line, tok[2])

    def parse(self):
        if self.peek()[0] == "end":
            self.fail("empty polynomial")
        f = self.expr()
        if self.peek()[0] != "end":
            self.fail(f"unexpected {self.peek()[1]!r}")
        return f

    def expr(self):
        f = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            g = self.term()
            f = f + g if op == "+" else f - g
        return f

    def term(self):
        f = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            f = f * self.factor()
        return f

    def factor(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] in ("+", "-"):
            self.take()
            g = self.factor()
            return g if tok[1] == "+" else -g
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            e = self.take()
            if e[0] != "num":
                self.fail("exponent must be a nonnegative integer literal", e)
            n = int(e[1])
            if n > self.ring.degree_cap:
                raise DegreeCapExceeded(f"exponent {n} exceeds degree cap {self.ring.degree_cap}")
            base = base ** n
        return base

    def atom(self):
        tok = self.take()
        kind, val = tok[0], tok[1]
        if kind == "num":
            return self.ring.constant(int(val))
        if kind == "rat":
            a, b = val.split("/")
            if int(b) == 0:
                raise DivisionInInput("zero denominator", self.line, tok[2])
            return self.ring.constant(Fraction(int(a), int(b)))
        if kind == "name":
            if val not in self.ring._index:
                raise UnknownVariable(f"unknown variable {val!r}", self.line, tok[2])
            return self.ring.gen(val)
        if kind == "op" and val == "(":
            f = self.expr()
            close = self.take()
            if close[1] != ")":
                self.fail("expected ')'", close)
            return f
        self.fail(f"unexpected {val or 'end of input'!r}", tok)


def parse_polynomial(text: str, ring: RingContext, line: int | None = None, column: int = 0) -> Polynomial:
    """Parse ``text`` in the polynomial grammar over ``ring``."""
    return _Parser(text, ring, line, column).parse()


def polynomial_ring(names, field: CoefficientField = QQ, order=GREVLEX, mode="graded", degrees=()) -> RingContext:
    if isinstance(names, str):
        names = [n.strip() for n in names.replace(",", " ").split()]
    return RingContext(tuple(names), tuple(degrees), mode, field, order)
