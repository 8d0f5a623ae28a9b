"""Rank reports: every bound the library can certify for one form, cross-checked.

The quantities, from smallest to largest where comparable::

    r_H  <=  scheme length  <=  smoothable rank  <=  rank
    r_H  <=  border rank    <=  smoothable rank

``r_ext_upper`` bounds the scheme length from above, ``sch_lower`` bounds it
(and the smoothable rank) from below, ``r_border_upper`` bounds the border
rank and ``r_upper`` / ``r_exact`` the rank.  Any pair that contradicts this
order is a bug and raises :class:`InconsistencyError`.
"""

from __future__ import annotations

import json
import os
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Sequence

from . import univariate
from .apolarity import apolar_component, colon_with_maximal, hilbert_function
from .catalecticant import catalecticant_rank
from .errors import ApolarError, InconsistencyError, PreconditionError
from .monomial import (SEPARATING_CUBIC, separating_cubic_family, monomial_border_family,
                       monomial_border_size, monomial_rank, monomial_waring, verify)
from .parser import parse
from .polynomial import Polynomial
from .search import extension_rank_search

__all__ = [
    "RankReport",
    "SchemeBound",
    "sylvester_binary_rank",
    "binary_form_is_squarefree",
    "scheme_length_lower_bound",
    "rank_report",
    "check_chain",
    "corpus_run",
    "load_corpus",
    "CorpusEntry",
    "CorpusResult",
    "DEFAULT_R_MAX",
]

DEFAULT_R_MAX = 12
SYLVESTER_TRIALS = 8
BORDER_EPS = Fraction(1, 1000)


# -- Sylvester ----------------------------------------------------------------

def binary_form_is_squarefree(g: Polynomial) -> bool:
    """No repeated linear factor, including the factor ``x0`` (root at infinity)."""
    k = g.require_form()
    dense = [Fraction(0)] * (k + 1)
    for (a, b), c in g.terms.items():
        dense[b] = Fraction(c)
    e = univariate.degree(dense)
    return k - e <= 1 and univariate.is_squarefree(dense)


def _sylvester(f: Polynomial, seed: int = 0):
    if f.nvars != 2:
        raise PreconditionError("Sylvester's method needs a binary form")
    d = f.require_form()
    rng = random.Random(seed)
    for k in range(1, d + 2):
        basis = list(apolar_component(f, k).basis)
        if not basis:
            continue
        trials = [basis[0]] if len(basis) == 1 else [
            sum((b.scale(rng.randint(-50, 50)) for b in basis), Polynomial.zero(2))
            for _ in range(SYLVESTER_TRIALS)]
        for g in trials:
            if not g.is_zero() and binary_form_is_squarefree(g):
                return k, g
    raise InconsistencyError("no square-free apolar form up to degree d + 1")


def sylvester_binary_rank(f: Polynomial, seed: int = 0) -> int:
    """Waring rank of a binary form: the least degree of a square-free apolar form.

    When the apolar component has dimension above one, seeded random
    combinations are tested; square-freeness is an open condition, so a
    handful of trials finds one whenever it exists.
    """
    return _sylvester(f, seed)[0]


# -- saturation obstruction ---------------------------------------------------

@dataclass
class SchemeBound:
    status: str
    bound: int | None = None
    witness: tuple = ()
    reason: str = ""

    @property
    def proven(self) -> bool:
        return self.status == "proven"

    def to_json(self) -> dict:
        return {"status": self.status, "bound": self.bound,
                "witness": [str(w) for w in self.witness], "reason": self.reason}


def scheme_length_lower_bound(f: Polynomial, r_target: int) -> SchemeBound:
    """Try to prove that no saturated apolar ideal of degree ``<= r_target`` exists.

    Only cubics with Hilbert function ``[1, s, s, 1]`` and ``s = r_target``
    are handled.  A saturated apolar ideal ``I`` of degree ``<= s`` has
    ``I_2 = (f^perp)_2``, so it contains the saturation of the ideal that
    ``(f^perp)_2`` generates and hence every linear form of the colon space.
    Since ``I_1`` lies in ``(f^perp)_1``, a colon space of larger dimension is
    a contradiction.
    """
    d = f.require_form()
    h = list(hilbert_function(f))
    if d != 3:
        return SchemeBound("inconclusive", reason=f"degree {d} is not 3")
    s = h[1]
    if h != [1, s, s, 1] or s != r_target:
        return SchemeBound("inconclusive", reason=f"Hilbert function {h} is not [1, {r_target}, {r_target}, 1]")
    colon = colon_with_maximal(f, 2)
    linear = apolar_component(f, 1).dimension
    if colon.dimension > linear:
        return SchemeBound("proven", s + 1, colon.basis,
                           f"colon space of dimension {colon.dimension} > {linear}")
    return SchemeBound("inconclusive", reason=f"colon space of dimension {colon.dimension} <= {linear}")


# -- reports ------------------------------------------------------------------

# limits of explicit families, matched by equality with the target
def _known_border_families():
    return {"separating cubic": (parse(SEPARATING_CUBIC, 4), separating_cubic_family)}


def _monomial_exponent(f: Polynomial):
    if len(f.terms) != 1:
        return None
    return next(iter(f.terms))


@dataclass
class RankReport:
    r_H: int
    r_ext_upper: int | None = None
    r_upper: int | None = None
    r_border_upper: int | None = None
    r_exact: int | None = None
    sch_lower: int | None = None
    hilbert: list = field(default_factory=list)
    witnesses: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "r_H": self.r_H,
            "r_ext_upper": self.r_ext_upper if self.r_ext_upper is not None else "inconclusive",
            "r_upper": self.r_upper,
            "r_border_upper": self.r_border_upper,
            "r_exact": self.r_exact,
            "sch_lower": self.sch_lower,
            "hilbert": list(self.hilbert),
            "witnesses": self.witnesses,
        }


def check_chain(rep: RankReport) -> list[str]:
    """Violated inequalities, as readable strings (empty when consistent)."""
    bad = []

    def need(lo_name, lo, hi_name, hi):
        if lo is not None and hi is not None and lo > hi:
            bad.append(f"{lo_name}={lo} > {hi_name}={hi}")

    need("r_H", rep.r_H, "r_ext_upper", rep.r_ext_upper)
    need("r_H", rep.r_H, "r_border_upper", rep.r_border_upper)
    need("r_H", rep.r_H, "r_upper", rep.r_upper)
    need("r_H", rep.r_H, "r_exact", rep.r_exact)
    need("sch_lower", rep.sch_lower, "r_ext_upper", rep.r_ext_upper)
    need("sch_lower", rep.sch_lower, "r_upper", rep.r_upper)
    need("sch_lower", rep.sch_lower, "r_exact", rep.r_exact)
    need("r_exact", rep.r_exact, "r_upper", rep.r_upper)
    need("r_border_upper", rep.r_border_upper, "r_upper", rep.r_upper)
    need("r_ext_upper", rep.r_ext_upper, "r_upper", rep.r_upper)
    return bad


def _min_opt(*vals):
    vals = [v for v in vals if v is not None]
    return min(vals) if vals else None


def rank_report(f: Polynomial, r_max: int = DEFAULT_R_MAX, seed: int = 0) -> RankReport:
    d = f.require_form()
    rep = RankReport(catalecticant_rank(f), hilbert=list(hilbert_function(f)))
    w = rep.witnesses

    search = extension_rank_search(f, r_max, seed=seed)
    w["search"] = search.to_json()
    ext = search.r
    upper = None
    if search.dec is not None and search.dec.is_simple():
        dec = search.dec.waring(f)
        rep_v = verify(dec, mode="numeric", tol=1e-6 * max(1.0, max(abs(float(c)) for c in f.terms.values())))
        w["recovered_waring"] = rep_v.to_json()
        if rep_v.ok:
            upper = len(dec)

    border = None
    alpha = _monomial_exponent(f)
    if alpha is not None:
        exact = monomial_waring(alpha)
        mode = "exact" if exact.order <= 12 else "numeric"
        v = verify(exact, mode=mode)
        fam = monomial_border_family(alpha)
        bv = verify(fam.at(BORDER_EPS), mode="numeric", tol=10 * float(BORDER_EPS))
        w["monomial"] = {"alpha": list(alpha), "rank": monomial_rank(alpha),
                         "scheme_length": monomial_border_size(alpha),
                         "decomposition_verified": v.ok, "border_family_verified": bv.ok}
        if v.ok:
            upper = _min_opt(upper, len(exact))
        if bv.ok:
            border = fam.size
    for name, (limit, family) in _known_border_families().items():
        if f.nvars == limit.nvars and f == limit:
            dec = family(BORDER_EPS)
            v = verify(dec, mode="numeric", tol=10 * float(BORDER_EPS))
            w["border_family"] = {"name": name, "size": len(dec), "eps": str(BORDER_EPS),
                                  "residual": v.residual, "verified": v.ok}
            if v.ok:
                border = _min_opt(border, len(dec))

    if f.nvars == 2:
        k, g = _sylvester(f, seed)
        rep.r_exact = k
        w["sylvester"] = {"degree": k, "apolar_form": str(g)}

    if d == 3:
        sb = scheme_length_lower_bound(f, rep.hilbert[1])
        w["saturation"] = sb.to_json()
        if sb.proven:
            rep.sch_lower = sb.bound

    if upper is not None and rep.r_exact is not None and upper < rep.r_exact:
        raise InconsistencyError(f"a verified {upper}-term decomposition beats the exact rank {rep.r_exact}")
    rep.r_upper = _min_opt(upper, rep.r_exact)
    # a rank decomposition is a scheme of simple points and a trivial border family
    rep.r_ext_upper = _min_opt(ext, rep.r_upper)
    rep.r_border_upper = _min_opt(border, rep.r_upper)
    w["r_ext_source"] = ("search" if ext is not None and ext == rep.r_ext_upper
                         else "rank" if rep.r_ext_upper is not None else None)
    bad = check_chain(rep)
    if bad:
        raise InconsistencyError("rank inequalities violated: " + "; ".join(bad))
    return rep


# -- corpus -------------------------------------------------------------------

@dataclass
class CorpusEntry:
    name: str
    n: int
    polynomial: str
    expected: dict = field(default_factory=dict)
    r_max: int | None = None

    @classmethod
    def from_json(cls, obj: dict) -> "CorpusEntry":
        for key in ("name", "n", "polynomial"):
            if key not in obj:
                raise PreconditionError(f"corpus entry lacks {key!r}")
        return cls(str(obj["name"]), int(obj["n"]), str(obj["polynomial"]),
                   dict(obj.get("expected", {})), obj.get("r_max"))


def load_corpus(path: str | None = None) -> list[CorpusEntry]:
    """Entries from a JSON file, or the bundled worked examples."""
    if path is None:
        text = resources.files("apolar_rank").joinpath("data/corpus.json").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    data = json.loads(text)
    if not isinstance(data, list):
        raise PreconditionError("a corpus is a JSON array")
    return [CorpusEntry.from_json(e) for e in data]


# expected key -> how it relates to the computed report
def _diffs(rep: RankReport, expected: dict) -> list[dict]:
    out = []

    def row(key, want, got, ok):
        out.append({"key": key, "expected": want, "computed": got, "ok": ok})

    for key, want in sorted(expected.items()):
        if key == "r_H":
            row(key, want, rep.r_H, rep.r_H == want)
        elif key == "r_ext":
            row(key, want, rep.r_ext_upper, rep.r_ext_upper == want)
        elif key == "border_upper":
            row(key, want, rep.r_border_upper, rep.r_border_upper == want)
        elif key == "sch_lower":
            row(key, want, rep.sch_lower, rep.sch_lower == want)
        elif key == "hilbert":
            row(key, want, rep.hilbert, rep.hilbert == list(want))
        elif key == "rank":
            # recorded value: must sit between the certified bounds
            if rep.r_exact is not None:
                ok = rep.r_exact == want
            else:
                ok = all(lo is None or lo <= want for lo in (rep.r_H, rep.sch_lower)) and (
                    rep.r_upper is None or want <= rep.r_upper)
            row(key, want, rep.r_exact if rep.r_exact is not None else rep.r_upper, ok)
        else:
            row(key, want, None, False)
    return out


@dataclass
class CorpusResult:
    name: str
    report: RankReport | None
    diffs: list
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.error is None and all(d["ok"] for d in self.diffs)

    def to_json(self) -> dict:
        return {"name": self.name, "ok": self.ok, "error": self.error,
                "report": self.report.to_json() if self.report else None,
                "diffs": self.diffs}


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("APOLAR_RANK_THREADS", "1")))
    except ValueError:
        return 1


def _run_entry(entry: CorpusEntry, r_max: int, seed: int) -> CorpusResult:
    try:
        f = parse(entry.polynomial, entry.n, nonzero=True)
        rep = rank_report(f, entry.r_max or r_max, seed)
    except InconsistencyError:
        raise
    except ApolarError as exc:
        return CorpusResult(entry.name, None, [], f"{type(exc).__name__}: {exc}")
    return CorpusResult(entry.name, rep, _diffs(rep, entry.expected))


def corpus_run(entries: Sequence[CorpusEntry], r_max: int = DEFAULT_R_MAX,
               seed: int = 0) -> list[CorpusResult]:
    """Reports for every entry, in input order; domain errors are recorded per entry."""
    entries = list(entries)
    workers = min(_threads(), len(entries)) if entries else 1
    if workers <= 1:
        return [_run_entry(e, r_max, seed) for e in entries]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda e: _run_entry(e, r_max, seed), entries))
