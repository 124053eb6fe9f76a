"""Reader for ideal files.

    file        = { statement | comment } ;
    statement   = ring_decl | ideal_block ;
    ring_decl   = "ring" field "[" name { "," name } "]" [ "affine" | "graded" ] [ "order" order ] ;
    field       = "QQ" | "GF(" prime ")" ;
    order       = "grevlex" | "lex" | "elim(" k ")" ;
    ideal_block = "ideal" name "=" [ poly { "," poly } ] ";" ;
    comment     = "#" text end-of-line ;     (# lc: yes|assumed tags the next ideal)

Ideal blocks may span several lines.  Exactly one ring declaration must
precede the first ideal.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import MalformedSyntax, ParseError
from .ideals import Ideal
from .polyring import GF, QQ, MonomialOrder, RingContext, parse_polynomial

_RING = re.compile(
    r"ring\s+(?P<field>QQ|GF\(\s*(?P<p>\d+)\s*\))\s*\[(?P<vars>[^\]]*)\]"
    r"\s*(?P<mode>affine|graded)?\s*(?:order\s+(?P<order>\S+))?\s*$"
)
_IDEAL_HEAD = re.compile(r"ideal\s+(?P<name>[A-Za-z_][A-Za-z0-9_]*)\s*=")
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")
_LC = re.compile(r"#\s*lc\s*:\s*(\S+)")


@dataclass
class IdealFile:
    ring: RingContext
    ideals: dict = field(default_factory=dict)      # name -> Ideal, in file order
    lc: dict = field(default_factory=dict)          # name -> "yes" | "assumed"

    def __getitem__(self, name) -> Ideal:
        try:
            return self.ideals[name]
        except KeyError:
            raise ParseError(f"no ideal named {name!r}; file defines {', '.join(self.ideals) or 'none'}")


class _Source:
    """Character offsets to (line, column), both 1-based."""

    def __init__(self, text):
        self.text = text
        self.starts = [0] + [m.end() for m in re.finditer("\n", text)]

    def where(self, offset):
        lo, hi = 0, len(self.starts) - 1
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if self.starts[mid] <= offset:
                lo = mid
            else:
                hi = mid - 1
        return lo + 1, offset - self.starts[lo] + 1

    def error(self, cls, msg, offset):
        line, col = self.where(offset)
        return cls(msg, line, col)


def _parse_ring(m, src, offset) -> RingContext:
    fld = QQ
    if m.group("p"):
        try:
            fld = GF(int(m.group("p")))
        except ValueError as e:
            raise src.error(MalformedSyntax, str(e), offset + m.start("p"))
    names = [v.strip() for v in m.group("vars").split(",")]
    if names == [""]:
        names = []
    for v in names:
        if not _NAME.match(v):
            raise src.error(MalformedSyntax, f"bad variable name {v!r}", offset + m.start("vars"))
    order = MonomialOrder.parse(m.group("order")) if m.group("order") else None
    try:
        ring = RingContext(tuple(names), mode=m.group("mode") or "graded", field=fld)
    except ValueError as e:
        raise src.error(MalformedSyntax, str(e), offset)
    return ring.with_order(order) if order else ring


def _split_generators(body: str, start: int):
    """Yield (text, offset) for the comma-separated pieces of an ideal body."""
    depth = 0
    piece_start = 0
    for i, ch in enumerate(body):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            yield body[piece_start:i], start + piece_start
            piece_start = i + 1
    yield body[piece_start:], start + piece_start


def parse_ideal_file(text: str) -> IdealFile:
    src = _Source(text)
    ring = None
    out = None
    pending_lc = None
    pos = 0
    n = len(text)
    while pos < n:
        # skip whitespace
        m = re.compile(r"\s+").match(text, pos)
        if m:
            pos = m.end()
            continue
        if text[pos] == "#":
            end = text.find("\n", pos)
            end = n if end < 0 else end
            lc = _LC.match(text, pos, end)
            if lc:
                val = lc.group(1).lower()
                if val not in ("yes", "assumed"):
                    raise src.error(MalformedSyntax, f"lc tag must be yes or assumed, not {val!r}", pos)
                pending_lc = val
            pos = end
            continue
        if text.startswith("ring", pos):
            end = text.find("\n", pos)
            end = n if end < 0 else end
            line_text = text[pos:end].split("#")[0].rstrip()
            m = _RING.match(line_text)
            if not m:
                raise src.error(MalformedSyntax, "malformed ring declaration", pos)
            if ring is not None:
                raise src.error(MalformedSyntax, "second ring declaration", pos)
            ring = _parse_ring(m, src, pos)
            out = IdealFile(ring)
            pos = end
            continue
        m = _IDEAL_HEAD.match(text, pos)
        if m:
            if ring is None:
                raise src.error(MalformedSyntax, "ideal before ring declaration", pos)
            name = m.group("name")
            if name in out.ideals:
                raise src.error(MalformedSyntax, f"duplicate ideal {name!r}", pos)
            semi = text.find(";", m.end())
            if semi < 0:
                raise src.error(MalformedSyntax, "missing ';' after ideal block", pos)
            body = text[m.end():semi]
            gens = []
            if body.strip():
                for piece, off in _split_generators(body, m.end()):
                    if not piece.strip():
                        raise src.error(MalformedSyntax, "empty generator", off)
                    try:
                        gens.append(parse_polynomial(piece, ring))
                    except ParseError as e:
                        raise src.error(type(e), e.message, off + (e.column or 1) - 1)
            out.ideals[name] = Ideal(ring, gens)
            if pending_lc:
                out.lc[name] = pending_lc
                pending_lc = None
            pos = semi + 1
            continue
        raise src.error(MalformedSyntax, f"unexpected input {text[pos:pos + 12]!r}", pos)
    if out is None:
        raise ParseError("missing ring declaration", 1, 1)
    if not out.ideals:
        raise ParseError("file defines no ideal", src.where(n)[0], 1)
    return out


def read_ideal_file(path) -> IdealFile:
    with open(path) as fh:
        return parse_ideal_file(fh.read())


def format_ideal_file(ring: RingContext, ideals: dict) -> str:
    lines = [ring.declaration()]
    for name, I in ideals.items():
        lines.append(f"ideal {name} = " + ", ".join(g.to_string() for g in I.gens) + ";")
    return "\n".join(lines) + "\n"
