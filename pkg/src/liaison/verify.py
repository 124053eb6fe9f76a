"""Regularity bounds and the batch harness over the curated log-canonical suite."""

from __future__ import annotations

import json
import os
import time
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import combinations
from math import factorial
from typing import Sequence

from .errors import LiaisonError, UnitIdeal
from .ideals import Ideal, codimension, colon, krull_dimension, saturation
from .linkage import MASK64, graded_generic_link, max_generator_degree, splitmix64
from .polyring import QQ, Polynomial, RingContext, polynomial_ring, GF
from .resolution import betti_table, canonical_module, minimal_free_resolution, module_regularity

CLAIMS = ("NIU", "NIU11", "BEL", "LINKDEG", "OMEGA", "EXC")
FAMILIES = ("a", "b", "c", "d", "e")

PASS, FAIL, SKIP, ERROR = "pass", "fail", "skip", "error"


# ---- bound formulas ---------------------------------------------------------

def _check_degrees(degrees, r):
    if r > len(degrees):
        raise ValueError(f"r = {r} exceeds the number of generators {len(degrees)}")
    if r < 0:
        raise ValueError("r must be non-negative")


def sigma(degrees: Sequence[int], r: int) -> int:
    """sum_{i<=r} (d_i - 1) for degrees sorted descending."""
    _check_degrees(degrees, r)
    return sum(d - 1 for d in sorted(degrees, reverse=True)[:r])


def niu_bound(dim_x: int, degrees: Sequence[int], r: int, sharpened: bool = False) -> int:
    """(dim X + 2)!/2 * (sum_{i<=r} d_i - r), minus one in the bracket when ``sharpened``."""
    if dim_x < 1:
        raise ValueError("the bound needs dim X >= 1")
    _check_degrees(degrees, r)
    s = sum(sorted(degrees, reverse=True)[:r]) - r - (1 if sharpened else 0)
    return factorial(dim_x + 2) // 2 * s


def bel_bound(degrees: Sequence[int], r: int) -> int:
    _check_degrees(degrees, r)
    return sum(sorted(degrees, reverse=True)[:r]) - r


# ---- reports ------------------------------------------------------------------

@dataclass
class BoundReport:
    name: str
    degrees: list
    t: int
    r: int
    dim_x: int
    sigma: int
    reg: int | None
    reg_sat: int | None = None
    niu_bound: int | None = None        # sharpened bound (non-CI inputs)
    niu11_bound: int | None = None
    bel_bound: int | None = None
    complete_intersection: bool = False
    exceptional_case: bool = False
    verdicts: dict = field(default_factory=dict)   # claim -> {"status", "detail"}
    seed: int | None = None
    provenance: str = ""
    timings: dict = field(default_factory=dict)

    def violations(self) -> list:
        return [c for c, v in self.verdicts.items() if v["status"] == FAIL]

    def errors(self) -> list:
        return [c for c, v in self.verdicts.items() if v["status"] == ERROR]

    def to_dict(self, timings: bool = False) -> dict:
        if self.degrees and sigma(self.degrees, self.r) != self.sigma:
            raise ValueError(f"{self.name}: stored sigma {self.sigma} disagrees with the degrees")
        d = asdict(self)
        if not timings:
            d.pop("timings")
        return d

    def to_json(self, timings: bool = False) -> str:
        return json.dumps(self.to_dict(timings), sort_keys=True, indent=2)

    @classmethod
    def from_dict(cls, d: dict) -> "BoundReport":
        return cls(**d)

    @classmethod
    def from_json(cls, text: str) -> "BoundReport":
        return cls.from_dict(json.loads(text))

    def summary(self) -> str:
        parts = [f"{self.name}: reg={self.reg}"]
        if self.niu11_bound is not None:
            parts.append(f"bound={self.niu11_bound}")
        for c in CLAIMS:
            if c in self.verdicts:
                parts.append(f"{c}={self.verdicts[c]['status']}")
        return " ".join(parts)


@dataclass
class SuiteConfig:
    field: str = "QQ"
    seed: int = 0
    retries: int = 8
    degree_cap: int = 40
    families: tuple = FAMILIES
    claims: tuple = CLAIMS
    link_seeds: int = 5
    output: str | None = None


# ---- structural helpers ---------------------------------------------------------

def determinant(rows) -> Polynomial:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    acc = None
    for j in range(n):
        if rows[0][j].is_zero():
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * determinant(minor)
        if j % 2:
            term = -term
        acc = term if acc is None else acc + term
    return acc if acc is not None else rows[0][0].ring.zero()


def jacobian(gens: Sequence[Polynomial]) -> list:
    ring = gens[0].ring
    out = []
    for f in gens:
        row = []
        for i in range(ring.nvars):
            terms = {}
            for e, c in f._t.items():
                if e[i]:
                    ne = e[:i] + (e[i] - 1,) + e[i + 1:]
                    terms[ne] = ring.field.mul(c, ring.field.convert(e[i]))
            row.append(Polynomial(ring, terms))
        out.append(row)
    return out


def is_smooth(I: Ideal) -> bool:
    """Jacobian criterion for Proj R/I (assumes I saturated and equidimensional)."""
    gens = I.minimal_generators()
    c = codimension(I)
    jac = jacobian(gens)
    minors = []
    for rs in combinations(range(len(gens)), c):
        for cs in combinations(range(I.ring.nvars), c):
            m = determinant([[jac[i][j] for j in cs] for i in rs])
            if not m.is_zero():
                minors.append(m)
    sing = Ideal(I.ring, list(gens) + minors)
    try:
        return krull_dimension(sing) <= 0
    except UnitIdeal:
        return True


def is_complete_intersection(I: Ideal) -> bool:
    return len(I.minimal_generators()) == codimension(I)


def exceptional_factorization(I: Ideal):
    """(l, H) when I = l*H in three variables with l linear and H a complete
    intersection of three forms of one degree; otherwise None."""
    ring = I.ring
    if ring.nvars != 3 or I.is_unit() or codimension(I) != 1:
        return None
    sat = saturation(I)
    sg = sat.minimal_generators()
    if len(sg) != 1 or sg[0].degree() != 1:
        return None
    l = sg[0]
    H = colon(I, Ideal(ring, [l]))
    hg = H.minimal_generators()
    if len(hg) != 3 or len({h.degree() for h in hg}) != 1:
        return None
    if H.is_unit() or codimension(H) != 3:
        return None
    if Ideal(ring, [l * h for h in hg]) != I:
        return None
    return l, Ideal(ring, hg)


# ---- single-ideal check -----------------------------------------------------------

def _verdict(status, detail=""):
    return {"status": status, "detail": detail}


def check_ideal(I: Ideal, claims=CLAIMS, name: str = "I", seed: int = 0, *,
                unmixed: bool | None = None, gorenstein: bool | None = None,
                link_seeds: int = 1, retries: int = 8, provenance: str = "") -> BoundReport:
    """Compute the invariants of R/I and evaluate each requested claim.

    ``unmixed`` and ``gorenstein`` describe X; when omitted they are taken from
    R/I being Cohen-Macaulay (resp. arithmetically Gorenstein).
    """
    clock = {}
    t0 = time.perf_counter()
    I.require_homogeneous()
    if I.is_unit():
        raise UnitIdeal("R/(1) has no regularity")
    gens = I.minimal_generators()
    degrees = sorted((g.degree() for g in gens), reverse=True)
    res = minimal_free_resolution(I)
    bt = betti_table(res)
    reg = bt.regularity()
    r = codimension(I)
    dim_x = krull_dimension(I) - 1
    ci = len(gens) == r
    cm = res.length == r
    if unmixed is None:
        unmixed = cm
    if gorenstein is None:
        gorenstein = cm and bt.totals()[-1] == 1
    exc = exceptional_factorization(I) is not None
    clock["invariants"] = time.perf_counter() - t0
    rep = BoundReport(
        name=name, degrees=degrees, t=len(gens), r=r, dim_x=dim_x, sigma=sigma(degrees, r),
        reg=reg if gens else 0, complete_intersection=ci, exceptional_case=exc,
        seed=seed, provenance=provenance,
    )
    if dim_x >= 1:
        rep.niu11_bound = niu_bound(dim_x, degrees, r)
        if not ci:
            rep.niu_bound = niu_bound(dim_x, degrees, r, sharpened=True)
    rep.bel_bound = bel_bound(degrees, r)

    for claim in claims:
        t1 = time.perf_counter()
        try:
            rep.verdicts[claim] = _CHECKS[claim](I, rep, cm=cm, unmixed=unmixed, gorenstein=gorenstein,
                                                 seed=seed, link_seeds=link_seeds, retries=retries)
        except LiaisonError as e:
            rep.verdicts[claim] = _verdict(ERROR, f"{type(e).__name__}: {e}")
        clock[claim] = time.perf_counter() - t1
    rep.timings = clock
    return rep


def _niu(I, rep, **kw):
    if rep.dim_x < 1:
        return _verdict(SKIP, f"dim X = {rep.dim_x} < 1")
    if rep.complete_intersection:
        return _verdict(SKIP, "complete intersection")
    if rep.exceptional_case:
        return _verdict(SKIP, "exceptional case I = lH")
    ok = rep.reg <= rep.niu_bound
    return _verdict(PASS if ok else FAIL, f"reg={rep.reg} bound={rep.niu_bound}")


def _niu11(I, rep, **kw):
    if rep.dim_x < 1:
        return _verdict(SKIP, f"dim X = {rep.dim_x} < 1")
    ok = rep.reg <= rep.niu11_bound
    return _verdict(PASS if ok else FAIL, f"reg={rep.reg} bound={rep.niu11_bound}")


def _bel(I, rep, **kw):
    sat = saturation(I)
    if sat.is_unit():
        return _verdict(SKIP, "empty scheme")
    rep.reg_sat = betti_table(minimal_free_resolution(sat)).regularity()
    detail = f"reg_sat={rep.reg_sat} bound={rep.bel_bound} reg={rep.reg}"
    if rep.reg_sat > rep.bel_bound or rep.reg_sat > rep.reg:
        return _verdict(FAIL, detail)
    if rep.complete_intersection and rep.reg_sat != rep.bel_bound:
        return _verdict(FAIL, detail + " (equality expected)")
    return _verdict(PASS, detail)


def _linkdeg(I, rep, *, unmixed, seed, link_seeds, retries, **kw):
    if not unmixed:
        return _verdict(SKIP, "not unmixed")
    degs = []
    s = seed
    for _ in range(link_seeds):
        L = graded_generic_link(I, s, retries=retries)
        degs.append(max_generator_degree(L.J))
        s = splitmix64(s)
    ok = max(degs) <= rep.sigma
    return _verdict(PASS if ok else FAIL, f"max_deg={degs} sigma={rep.sigma}")


def _omega(I, rep, *, cm, gorenstein, **kw):
    if not gorenstein:
        return _verdict(SKIP, "not Gorenstein")
    if not cm:
        return _verdict(SKIP, "R/I not Cohen-Macaulay")
    w = module_regularity(canonical_module(I, rep.r))
    ok = w == rep.dim_x + 1
    return _verdict(PASS if ok else FAIL, f"reg_omega={w} expected={rep.dim_x + 1}")


def _exc(I, rep, **kw):
    if not rep.exceptional_case:
        return _verdict(SKIP, "not of the form lH")
    want = 3 * rep.degrees[0] - 5
    return _verdict(PASS if rep.reg == want else FAIL, f"reg={rep.reg} expected={want}")


_CHECKS = {"NIU": _niu, "NIU11": _niu11, "BEL": _bel, "LINKDEG": _linkdeg, "OMEGA": _omega, "EXC": _exc}


# ---- the curated suite ----------------------------------------------------------------

@dataclass(frozen=True)
class SuiteEntry:
    name: str
    family: str
    variables: tuple
    generators: tuple
    provenance: str
    unmixed: bool = True
    gorenstein: bool = True

    def ideal(self, field=QQ) -> Ideal:
        ring = polynomial_ring(self.variables, field=field)
        return Ideal.parse(ring, self.generators)


def _vars(n):
    return tuple(f"x{i}" for i in range(n))


def _diag(n, d, w):
    # sum_i w^i x_i^d; distinct weights per generator keep the intersection smooth
    return " + ".join(f"{w ** i}*x{i}^{d}" for i in range(n))


def _ci(n, degrees):
    gens = tuple(_diag(n, d, k + 1) for k, d in enumerate(degrees))
    tag = "".join(map(str, degrees))
    return SuiteEntry(f"a-ci{tag}-n{n}", "a", _vars(n), gens,
                      "smooth diagonal complete intersection (Jacobian-checked); smooth implies log canonical")


def _rational_normal(n):
    v = _vars(n + 1)
    gens = tuple(f"{v[i]}*{v[j + 1]} - {v[j]}*{v[i + 1]}" for i, j in combinations(range(n), 2))
    return gens


def suite_entries(families=FAMILIES) -> list:
    out = []
    if "a" in families:
        out += [_ci(4, (2, 2)), _ci(4, (3, 2)), _ci(4, (3, 3)), _ci(5, (2, 2)), _ci(5, (2, 2, 2))]
    if "b" in families:
        out.append(SuiteEntry("b-twisted-cubic", "b", _vars(4), _rational_normal(3),
                              "rational normal curve of degree 3; smooth"))
        out.append(SuiteEntry("b-rational-quartic", "b", _vars(5), _rational_normal(4),
                              "rational normal curve of degree 4; smooth"))
    if "c" in families:
        for k in (2, 3):
            gens = tuple(f"(x0 + x1 + x2)*x{i}^{k}" for i in range(3))
            out.append(SuiteEntry(f"c-lH-d{k + 1}", "c", _vars(3), gens,
                                  "linear form times a complete intersection of three forms; "
                                  "the scheme is a line", unmixed=False))
    if "d" in families:
        out.append(SuiteEntry("d-cone-cubic", "d", _vars(4), ("x0^3 + x1^3 + x2^3",),
                              "cone over a smooth plane cubic; log canonical, not rational"))
    if "e" in families:
        for n, a in ((3, 2), (3, 3), (3, 4), (4, 3)):
            gens = (" + ".join(f"x{i}^{a}" for i in range(n)),)
            out.append(SuiteEntry(f"e-fermat{a}-n{n}", "e", _vars(n), gens, "smooth Fermat hypersurface"))
    return sorted(out, key=lambda e: e.name)


def entry_seed(master: int, name: str) -> int:
    return splitmix64((master ^ zlib.crc32(name.encode())) & MASK64)


def _field_of(cfg: SuiteConfig):
    if cfg.field.upper() in ("QQ", "Q"):
        return QQ
    p = int(cfg.field.upper().removeprefix("GF(").removesuffix(")"))
    return GF(p)


def run_entry(entry: SuiteEntry, cfg: SuiteConfig) -> BoundReport:
    seed = entry_seed(cfg.seed, entry.name)
    I = entry.ideal(_field_of(cfg))
    try:
        return check_ideal(I, cfg.claims, entry.name, seed, unmixed=entry.unmixed,
                           gorenstein=entry.gorenstein, link_seeds=cfg.link_seeds,
                           retries=cfg.retries, provenance=entry.provenance)
    except LiaisonError as e:
        rep = BoundReport(entry.name, [], 0, 0, 0, 0, None, seed=seed, provenance=entry.provenance)
        rep.verdicts["setup"] = _verdict(ERROR, f"{type(e).__name__}: {e}")
        return rep


def _run_entry_args(args):
    return run_entry(*args)


def run_suite(cfg: SuiteConfig | None = None) -> list:
    cfg = cfg or SuiteConfig()
    entries = suite_entries(cfg.families)
    threads = max(1, int(os.environ.get("LIAISON_THREADS", "1") or 1))
    if threads > 1 and len(entries) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            reports = list(pool.map(_run_entry_args, [(e, cfg) for e in entries]))
    else:
        reports = [run_entry(e, cfg) for e in entries]
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(reports_to_json(reports))
    return reports


def reports_to_json(reports, timings: bool = False) -> str:
    return json.dumps([r.to_dict(timings) for r in reports], sort_keys=True, indent=2)


def suite_summary(reports) -> str:
    lines = [r.summary() for r in reports]
    nviol = sum(len(r.violations()) for r in reports)
    nerr = sum(len(r.errors()) for r in reports)
    lines.append(f"{len(reports)} ideals, {nviol} violations, {nerr} errors")
    return "\n".join(lines)
