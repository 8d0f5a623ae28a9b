"""Points and differential operators from commuting multiplication matrices.

The exact characteristic polynomial of a random rational combination
``L = sum l_i M_i`` is split into square-free parts; each root ``t`` of the
part of multiplicity ``mu`` owns a generalized eigenspace ``V`` of dimension
``mu`` (read off the ``mu`` smallest singular values of ``(L - t)^mu``).
On it every ``M_i`` acts as ``z_i + N_i`` with ``N_i`` nilpotent, and

    L~(p) = sum_j (h^T V_j) p(z_j + N_j) (W_j e_1)

expands by Taylor's formula into ``sum_g c_g / g! * d^g p (z_j)``.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import linalg
from .apolarity import inverse_system_dimension
from .errors import PreconditionError, RecoveryError
from .flat import FlatExtensionCertificate, truncate
from .monomial import WaringDecomposition
from .polynomial import LinearForm, PointDiffTerm, Polynomial, monomials_upto
from .univariate import squarefree_decomposition

__all__ = [
    "GeneralizedDecomposition",
    "GeneralizedReport",
    "recover",
    "verify_generalized",
    "normalize_point",
]

CLUSTER_TOL = 1e-8
RESIDUAL_TOL = 1e-6


@dataclass
class GeneralizedDecomposition:
    """``sum_j 1_{z_j} o phi_j(d)`` in the affine chart of ``coords``."""

    terms: list
    size: int
    domain: str = "numeric"
    coords: list | None = None
    degree: int | None = None
    extra: dict = field(default_factory=dict)

    @property
    def nvars(self) -> int:
        return len(self.terms[0].point) if self.terms else 0

    @property
    def multiplicities(self) -> list[int]:
        return [inverse_system_dimension([t]) for t in self.terms]

    def is_simple(self) -> bool:
        return all(t.phi.degree == 0 for t in self.terms)

    def projective_points(self) -> list[np.ndarray]:
        """Points in the original coordinates: ``g^-T (1, z)``."""
        n1 = self.nvars + 1
        g = np.eye(n1) if self.coords is None else np.array(
            [[float(x) for x in row] for row in self.coords])
        ginv_t = np.linalg.inv(g).T
        return [ginv_t @ np.array([1.0] + [complex(z) for z in t.point]) for t in self.terms]

    def waring(self, target: Polynomial) -> WaringDecomposition | None:
        """For simple points, the matching sum of powers of linear forms."""
        if not self.is_simple() or self.degree is None:
            return None
        terms = []
        for t, k in zip(self.terms, self.projective_points()):
            w = complex(t.phi.coefficient((0,) * self.nvars))
            terms.append((w, LinearForm(tuple(complex(c) for c in k))))
        return WaringDecomposition(self.degree, terms, target, meta={"kind": "recovered"})

    def to_json(self) -> dict:
        def num(z):
            z = complex(z)
            return [round(z.real, 12) + 0.0, round(z.imag, 12) + 0.0]

        return {
            "kind": "generalized",
            "size": self.size,
            "domain": self.domain,
            "degree": self.degree,
            "coords": [[str(x) for x in row] for row in self.coords] if self.coords else None,
            "terms": [{
                "point": [num(z) for z in t.point],
                "phi": [{"exp": list(e), "coeff": num(c)} for e, c in t.phi.sorted_terms()],
            } for t in self.terms],
            "multiplicities": self.multiplicities,
            **self.extra,
        }


def normalize_point(v) -> np.ndarray:
    """Scale a projective point so its largest entry is 1 (first one on ties)."""
    v = np.asarray(v, dtype=complex)
    j = int(np.argmax(np.abs(v) - 1e-12 * np.arange(len(v))))
    return v / v[j]


def _nullspace(a: np.ndarray, dim: int) -> np.ndarray:
    _, _, vh = np.linalg.svd(a)
    return vh[-dim:].conj().T


def _taylor_terms(n: int, mu: int):
    """Multi-indices ``g`` with ``|g| < mu``."""
    return monomials_upto(n, max(mu - 1, 0))


def recover(cert: FlatExtensionCertificate, seed: int = 0, retries: int = 5,
            tol: float = CLUSTER_TOL, degree: int | None = None) -> GeneralizedDecomposition:
    n = cert.nvars
    r = cert.rank
    rng = random.Random(seed)
    mats = [np.array([[float(x) for x in row] for row in m]) for m in cert.mult]
    h = np.array([float(x) for x in cert.moments])
    e1 = np.zeros(r)
    e1[cert._unit_index()] = 1.0
    last_error = "no attempt"
    for _ in range(retries):
        lam = [Fraction(rng.randint(-7, 7), rng.randint(1, 5)) for _ in range(n)]
        if n and not any(lam):
            lam[0] = Fraction(1)
        comb = [[sum((l * m[i][j] for l, m in zip(lam, cert.mult)), Fraction(0))
                 for j in range(r)] for i in range(r)]
        cp = linalg.charpoly(comb)
        factors = squarefree_decomposition(cp)
        roots = []
        for s, mu in factors:
            coeffs = [float(c) for c in reversed(s)]
            for t in np.roots(coeffs) if len(coeffs) > 1 else []:
                roots.append((complex(t), mu))
        if sum(mu for _, mu in roots) != r:
            last_error = "root count mismatch"
            continue
        vals = [t for t, _ in roots]
        gap = min((abs(a - b) for i, a in enumerate(vals) for b in vals[:i]), default=1.0)
        if gap < tol * max(1.0, max(abs(v) for v in vals)):
            last_error = f"clustered eigenvalues (gap {gap:.3e})"
            continue
        lmat = sum(float(l) * m for l, m in zip(lam, mats)) if n else np.zeros((r, r))
        spaces = []
        for t, mu in roots:
            a = np.linalg.matrix_power(lmat - t * np.eye(r), mu)
            spaces.append(_nullspace(a, mu))
        vall = np.hstack(spaces)
        if np.linalg.cond(vall) > 1e10:
            last_error = "eigenspaces nearly dependent"
            continue
        wall = np.linalg.inv(vall)
        terms = []
        ok = True
        col = 0
        for (t, mu), v in zip(roots, spaces):
            w = wall[col:col + mu]
            col += mu
            blocks = [w @ m @ v for m in mats]
            z = [np.trace(b) / mu for b in blocks]
            nil = [b - zi * np.eye(mu) for b, zi in zip(blocks, z)]
            scale = max(1.0, max((np.abs(b).max() for b in blocks), default=1.0))
            if any(np.abs(np.linalg.matrix_power(x, mu)).max() > 1e-6 * scale ** mu for x in nil):
                ok = False
                break
            left = h @ v
            right = w @ e1
            phi = {}
            for g in _taylor_terms(n, mu):
                vec = right
                for i, k in enumerate(g):
                    for _ in range(k):
                        vec = nil[i] @ vec
                c = complex(left @ vec) / math.prod(math.factorial(k) for k in g)
                phi[g] = c
            big = max(abs(c) for c in phi.values())
            phi = {g: c for g, c in phi.items() if abs(c) > 1e-9 * big}
            terms.append(PointDiffTerm(tuple(complex(x) for x in z), Polynomial(n, phi)))
        if not ok:
            last_error = "non-nilpotent restriction (points collide under projection)"
            continue
        dec = GeneralizedDecomposition(terms, r, "numeric", cert.coords, degree,
                                       extra={"seed": seed})
        return dec
    raise RecoveryError(f"recovery failed after {retries} attempts: {last_error}")


@dataclass
class GeneralizedReport:
    ok: bool
    residual: float
    dimension: int
    size: int
    first_failure: tuple | None = None

    def to_json(self) -> dict:
        return {"ok": self.ok, "residual": self.residual, "dimension": self.dimension,
                "size": self.size,
                "first_failure": list(self.first_failure) if self.first_failure else None}


def verify_generalized(dec: GeneralizedDecomposition, f: Polynomial,
                       tol: float = RESIDUAL_TOL) -> GeneralizedReport:
    """Induced functional versus the truncation of ``f``, plus the size check.

    The residual is relative to the largest moment of ``f`` in the chart.
    """
    d = f.require_form()
    lam = truncate(f, dec.coords)
    exact = dec.domain == "exact"
    scale = max([1.0] + [abs(float(v)) for v in lam.values.values()])
    worst, first = 0.0, None
    for beta in monomials_upto(lam.nvars, d):
        got = sum((t.on_monomial(beta) for t in dec.terms), 0)
        want = lam(beta)
        if exact:
            bad = got != want
            err = float(abs(Fraction(got) - want)) if bad else 0.0
        else:
            err = abs(complex(got) - float(want)) / scale
            bad = err > tol
        worst = max(worst, err)
        if bad and first is None:
            first = beta
    try:
        dim = inverse_system_dimension(dec.terms, tol=1e-7)
    except PreconditionError:
        dim = -1
    ok = first is None and dim == dec.size
    return GeneralizedReport(ok, worst, dim, dec.size, first)
