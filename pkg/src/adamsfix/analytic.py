"""Lambda_{-t}(f) and Psi_t(f) as functions of a complex variable t.

For a class function f and a class c_j,

    log Lambda_{-t}(f)(c_j) = -sum_{k >= 1} t^k / k * f(c_j^k),

which converges on |t| < 1.  Its derivative is the rational function

    -sum_{r=0}^{n-1} f(c_j^{r+1}) t^r / (1 - t^n),       n = |G|,

with simple poles at the n-th roots of unity.  Everything outside the unit
disk is reached by integrating that derivative along a polyline.

Class functions are given by their values on the classes, in class order.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
from scipy import integrate

from .groups import FiniteGroupModel

INTEGER_TOL = 1e-8
DEFAULT_CLEARANCE = 0.05


def _values(g: FiniteGroupModel, f: Sequence[complex]) -> np.ndarray:
    v = np.asarray(f, dtype=complex)
    if v.shape != (len(g.classes),):
        raise ValueError(f"class function needs {len(g.classes)} values, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError("class function values must be finite")
    return v


def power_values(g: FiniteGroupModel, f: Sequence[complex], j: int, count: int) -> np.ndarray:
    """f(c_j^k) for k = 1..count."""
    v = _values(g, f)
    table = g.power_table
    ks = np.arange(1, count + 1) % table.period
    return v[table.d[j, ks]]


# ---------------------------------------------------------------------------
# formal power series


def lambda_series_coefficients(g: FiniteGroupModel, f: Sequence[complex], j: int, degree: int) -> np.ndarray:
    """Coefficients of Lambda_{-t}(f)(c_j) in t up to t^degree."""
    a = np.zeros(degree + 1, dtype=complex)
    if degree >= 1:
        ks = np.arange(1, degree + 1)
        a[1:] = -power_values(g, f, j, degree) / ks
    # b = exp(a) through b' = a' b
    b = np.zeros(degree + 1, dtype=complex)
    b[0] = 1.0
    for m in range(1, degree + 1):
        k = np.arange(1, m + 1)
        b[m] = np.sum(k * a[k] * b[m - k]) / m
    return b


def psi_series_coefficients(g: FiniteGroupModel, f: Sequence[complex], j: int, order: int) -> np.ndarray:
    """Coefficients of Psi_t(f)(c_j) = (Lambda_{-t}(f)(c_j) - 1) / (-t)."""
    b = lambda_series_coefficients(g, f, j, order + 1)
    return -b[1:]


# ---------------------------------------------------------------------------
# evaluation inside the unit disk


def _terms_needed(bound: float, r: float, tol: float) -> int:
    """Smallest K with bound * r^(K+1) / ((K+1)(1-r)) < tol."""
    if bound == 0 or r == 0:
        return 1
    K = 1
    while bound * r ** (K + 1) / ((K + 1) * (1 - r)) >= tol:
        K += 1
    return K


def log_lambda_series(g: FiniteGroupModel, f: Sequence[complex], j: int, t: complex,
                      tol: float = 1e-12) -> complex:
    """log Lambda_{-t}(f)(c_j) by direct summation, |t| < 1."""
    t = complex(t)
    r = abs(t)
    if r >= 1:
        raise ValueError(f"|t| = {r} is outside the disk of convergence")
    v = _values(g, f)
    K = _terms_needed(float(np.max(np.abs(v))), r, tol)
    ks = np.arange(1, K + 1)
    terms = t ** ks / ks * power_values(g, v, j, K)
    return complex(-np.sum(terms))


def lambda_eval(g: FiniteGroupModel, f: Sequence[complex], j: int, t: complex,
                tol: float = 1e-12) -> complex:
    return cmath.exp(log_lambda_series(g, f, j, t, tol))


def hurwitz_h(alpha: float, u: complex, tol: float = 1e-14) -> complex:
    """H(alpha, u) = sum_{k >= 0} u^k / (k + alpha) for |u| < 1, alpha > 0."""
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    u = complex(u)
    r = abs(u)
    if r >= 1:
        raise ValueError(f"|u| = {r} is outside the disk of convergence")
    total = 0j
    term = 1.0 + 0j
    k = 0
    while True:
        total += term / (k + alpha)
        k += 1
        term *= u
        # remaining tail is at most |u|^k / ((k + alpha)(1 - |u|))
        if r == 0 or r**k / ((k + alpha) * (1 - r)) < tol:
            return total


def log_lambda_via_hurwitz(g: FiniteGroupModel, f: Sequence[complex], j: int, t: complex,
                           tol: float = 1e-12) -> complex:
    """Same quantity as log_lambda_series, grouped by k mod |G|."""
    t = complex(t)
    if abs(t) >= 1:
        raise ValueError(f"|t| = {abs(t)} is outside the disk of convergence")
    n = g.order
    fv = power_values(g, f, j, n)
    u = t**n
    total = 0j
    for r in range(n):
        if fv[r] == 0:
            continue
        total += fv[r] * t ** (r + 1) / n * hurwitz_h((r + 1) / n, u, tol / n)
    return -total


# ---------------------------------------------------------------------------
# the logarithmic derivative and its residues


def log_derivative(g: FiniteGroupModel, f: Sequence[complex], j: int, t: complex) -> complex:
    """d/dt log Lambda_{-t}(f)(c_j) = -sum_r f(c_j^{r+1}) t^r / (1 - t^n)."""
    n = g.order
    fv = power_values(g, f, j, n)
    t = complex(t)
    if abs(t) <= 1:
        num = np.polyval(fv[::-1], t)  # sum_r fv[r] t^r
        return complex(-num / (1 - t**n))
    # t^r / (1 - t^n) = -u^(n-r) / (1 - u^n) with u = 1/t
    u = 1 / t
    num = np.polyval(fv, u) * u  # sum_r fv[r] u^(n-r)
    return complex(num / (1 - u**n))


@dataclass(frozen=True)
class SingularityRecord:
    p: int
    root: complex
    residue: complex
    is_integer: bool
    kind: str  # regular | removable_zero | pole | branch_point
    order: int | None = None

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "root": [self.root.real, self.root.imag],
            "residue": [self.residue.real, self.residue.imag],
            "is_integer": self.is_integer,
            "kind": self.kind,
            "order": self.order,
        }


@dataclass(frozen=True)
class SingularityReport:
    class_id: int
    n: int
    records: tuple[SingularityRecord, ...]

    def at(self, p: int) -> SingularityRecord:
        return self.records[p % self.n]

    def nearest(self, t: complex) -> SingularityRecord:
        return min(self.records, key=lambda rec: abs(rec.root - t))

    def to_json(self) -> dict:
        return {"class_id": self.class_id, "n": self.n, "records": [r.to_json() for r in self.records]}


def classify_residue(k: complex, tol: float = INTEGER_TOL) -> tuple[bool, str, int | None]:
    nearest = round(k.real)
    is_int = abs(k - nearest) <= tol
    if not is_int:
        return False, "branch_point", None
    if nearest == 0:
        return True, "regular", None
    if nearest > 0:
        return True, "removable_zero", nearest
    return True, "pole", -nearest


def residues(g: FiniteGroupModel, f: Sequence[complex], j: int, tol: float = INTEGER_TOL) -> SingularityReport:
    """Residues of the log-derivative at every |G|-th root of unity.

    Res_{t = w} t^r / (1 - t^n) = -w^(r+1) / n, so the residue at w = w_n^p
    is k_p = (1/n) sum_r w^(r+1) f(c_j^(r+1)).  Lambda_{-t}(f)(c_j) behaves
    like (t - w)^(k_p) near w.
    """
    n = g.order
    fv = power_values(g, f, j, n)
    # k_p = (1/n) sum_{s=1}^{n} w^(p s) fv[s-1]  (a discrete Fourier sum)
    s = np.arange(1, n + 1)
    records = []
    for p in range(n):
        w = cmath.exp(2j * math.pi * p / n)
        k = complex(np.sum(np.exp(2j * np.pi * p * s / n) * fv) / n)
        is_int, kind, order = classify_residue(k, tol)
        records.append(SingularityRecord(p, w, k, is_int, kind, order))
    return SingularityReport(j, n, tuple(records))


def contour_integral(g: FiniteGroupModel, f: Sequence[complex], j: int, center: complex,
                     radius: float, points: int = 256) -> complex:
    """(1 / 2 pi i) * integral of the log-derivative around a circle.

    Trapezoid rule in the angle, which converges geometrically for a
    periodic analytic integrand.
    """
    theta = 2 * np.pi * np.arange(points) / points
    z = center + radius * np.exp(1j * theta)
    vals = np.array([log_derivative(g, f, j, zz) for zz in z])
    # dz = i r e^{i theta} d theta
    return complex(np.sum(vals * (z - center)) / points)


# ---------------------------------------------------------------------------
# analytic continuation


@dataclass(frozen=True)
class PathSpec:
    waypoints: tuple[complex, ...]
    min_clearance: float = DEFAULT_CLEARANCE

    @classmethod
    def parse(cls, text: str, min_clearance: float = DEFAULT_CLEARANCE) -> "PathSpec":
        """'re,im re,im ...' waypoints."""
        pts = []
        for token in text.split():
            re_s, im_s = token.split(",")
            pts.append(complex(float(re_s), float(im_s)))
        return cls(tuple(pts), min_clearance)

    def validate(self, n: int) -> None:
        if len(self.waypoints) < 1:
            raise ValueError("path needs at least one waypoint")
        if abs(self.waypoints[0]) >= 1:
            raise ValueError(f"path must start inside the unit disk, got {self.waypoints[0]}")
        roots = np.exp(2j * np.pi * np.arange(n) / n)
        for a, b in zip(self.waypoints, self.waypoints[1:]):
            d = _segment_distance(a, b, roots)
            if d < self.min_clearance:
                raise ValueError(
                    f"segment {a} -> {b} passes within {d:.3g} of a root of unity "
                    f"(clearance {self.min_clearance})")


def _segment_distance(a: complex, b: complex, points: np.ndarray) -> float:
    ab = b - a
    if ab == 0:
        return float(np.min(np.abs(points - a)))
    s = np.clip(((points - a) * np.conj(ab)).real / abs(ab) ** 2, 0, 1)
    return float(np.min(np.abs(points - (a + s * ab))))


def continue_log_along_path(g: FiniteGroupModel, f: Sequence[complex], j: int, path: PathSpec,
                            tol: float = 1e-10) -> complex:
    """log Lambda_{-t}(f)(c_j) continued along the path to its last waypoint."""
    path.validate(g.order)
    v = _values(g, f)
    pts = path.waypoints
    value = log_lambda_series(g, v, j, pts[0], tol=tol / 10)
    segs = max(1, len(pts) - 1)
    for a, b in zip(pts, pts[1:]):
        if a == b:
            continue
        d = b - a

        def integrand(s, a=a, d=d):
            return log_derivative(g, v, j, a + s * d) * d

        res, _ = integrate.quad(integrand, 0.0, 1.0, complex_func=True,
                                epsabs=tol / segs, epsrel=0.0, limit=500)
        value += res
    return value


def continue_along_path(g: FiniteGroupModel, f: Sequence[complex], j: int, path: PathSpec,
                        tol: float = 1e-10) -> complex:
    return cmath.exp(continue_log_along_path(g, f, j, path, tol))


def default_path(t: complex) -> PathSpec:
    """Straight segment from 0 to t."""
    return PathSpec((0j, complex(t)))


def lambda_at(g: FiniteGroupModel, f: Sequence[complex], j: int, t: complex,
              tol: float = 1e-10, path: PathSpec | None = None) -> complex:
    """Lambda_{-t}(f)(c_j): series inside the disk, continuation otherwise."""
    t = complex(t)
    if path is None and abs(t) < 1:
        return lambda_eval(g, f, j, t, tol)
    path = path or default_path(t)
    if path.waypoints[-1] != t:
        raise ValueError("path does not end at t")
    return continue_along_path(g, f, j, path, tol)


def psi_eval(g: FiniteGroupModel, f: Sequence[complex], j: int, t: complex,
             tol: float = 1e-10, path: PathSpec | None = None) -> complex:
    """Psi_t(f)(c_j) = (Lambda_{-t}(f)(c_j) - 1) / (-t), for t != 0."""
    t = complex(t)
    if t == 0:
        raise ValueError("Psi_t is not evaluated at t = 0; its limit is f(c_j)")
    # dividing by t scales the error of Lambda by 1/|t|
    return (lambda_at(g, f, j, t, tol * min(1.0, abs(t)), path) - 1) / (-t)


# ---------------------------------------------------------------------------
# behaviour at t = -1


@dataclass(frozen=True)
class MinusOneVerdict:
    status: str  # defined_everywhere | defined | divergent
    divergent_classes: tuple[int, ...] = ()
    witness: tuple[complex, ...] | None = field(default=None, compare=False)

    def to_json(self) -> dict:
        out = {"status": self.status, "divergent_classes": list(self.divergent_classes)}
        if self.witness is not None:
            out["witness"] = [[z.real, z.imag] for z in self.witness]
        return out


def minus_one_defined(g: FiniteGroupModel, f: Sequence[complex] | None = None) -> MinusOneVerdict:
    """Whether Lambda_1(f) = Lambda_{-t}(f) at t = -1 is finite and single valued.

    With f given, classes whose residue at t = -1 is a negative integer
    (pole) or not an integer (branch point) are reported.  With f omitted
    the question is about every f: for odd |G| the point -1 is never
    singular; for even |G| the indicator of an involution class is a
    witness of divergence.
    """
    n = g.order
    if n % 2 == 1:
        return MinusOneVerdict("defined_everywhere")
    if f is None:
        inv = next(c.id for c in g.classes if c.order == 2)
        f = np.zeros(len(g.classes), dtype=complex)
        f[inv] = 1.0
        verdict = minus_one_defined(g, f)
        return MinusOneVerdict(verdict.status, verdict.divergent_classes, tuple(complex(z) for z in f))
    bad = []
    for c in g.classes:
        rec = residues(g, f, c.id).at(n // 2)
        if rec.kind in ("pole", "branch_point"):
            bad.append(c.id)
    if bad:
        return MinusOneVerdict("divergent", tuple(bad))
    return MinusOneVerdict("defined")


# ---------------------------------------------------------------------------
# sweeps


CSV_COLUMNS = ("t_re", "t_im", "class_id", "lambda_re", "lambda_im", "psi_re", "psi_im")


def sweep(g: FiniteGroupModel, f: Sequence[complex], ts: Iterable[complex],
          tol: float = 1e-10) -> list[dict]:
    """Lambda and Psi for every class at each t; rows keyed by CSV_COLUMNS."""
    rows = []
    for t in ts:
        t = complex(t)
        for c in g.classes:
            lam = lambda_at(g, f, c.id, t, tol)
            psi = (lam - 1) / (-t) if t != 0 else complex(f[c.id])
            rows.append(dict(zip(CSV_COLUMNS, (t.real, t.imag, c.id, lam.real, lam.imag, psi.real, psi.imag))))
    return rows
