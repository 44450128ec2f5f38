"""Approximate-eigenvector constructions for doubling and shift operators.

The doubling operator D satisfies ||Dx||_p^p = 2||x||_p^p, so lambda =
2^{1/p} is the natural candidate eigenvalue; summing the orbit of a dyadic
block indicator with geometric damping lambda^{1-k} produces unit vectors
v_n with ||(D - lambda)v_n||_p = (4/n)^{1/p} exactly -- the shifted operator
telescopes the orbit to its two boundary layers.

A second construction works on sequences indexed by reduced rationals in
(0,1): the base-b dilation e_q -> sum_{i<b} e_{(q+i)/b} for b = 2, 3 sends
the orbit of e_{1/6} to sums of unit coordinates whose supports are pairwise
disjoint across distinct (j,k) powers (a 2-3 divisibility argument, checked
here exhaustively in exact arithmetic).  Disjointness turns l^p norms of
orbit combinations into counting, which yields simultaneous approximate
eigenvectors u_n for both dilation bases with residuals (2/n)^{1/p}.

The shift-side machinery: T = tau_1 - lambda has the annihilating moment
functional a -> sum lambda^k a_k; squares of geometric shift sums reduce
T^2 to three explicit terms, and the forward recurrence inverts T on its
moment-zero range.  All shift identities hold in exact rational arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .lattices import _ex_norm_lp
from .operators import Doubling, DoublingMinusLambda, ShiftMinusLambda, apply_array, apply_list
from .seq import Seq
from .spaces import Lp, SpaceSpec, norm

__all__ = [
    "rational_dilation",
    "DisjointnessReport",
    "check_disjoint_supports",
    "WitnessReport",
    "doubling_orbit_witness",
    "BranchingReport",
    "branching_witness",
    "ScanPoint",
    "residual_scan",
    "shift_identity_check",
    "moment_functional",
    "solve_shift_minus_lambda",
]


# Rational-index dilations ---------------------------------------------------


def rational_dilation(base: int, x: dict) -> dict:
    """e_q -> sum_{i=0}^{base-1} e_{(q+i)/base} on Fraction-keyed vectors.

    Keys stay inside (0,1); Fraction keys are kept reduced automatically, so
    support disjointness is literal key inequality.  Colliding keys add.
    """
    if base < 2:
        raise ValueError("rational_dilation needs base >= 2")
    out: dict = {}
    for q, c in x.items():
        if not 0 < q < 1:
            raise ValueError(f"index {q} outside (0,1)")
        for i in range(base):
            key = Fraction(q + i, base)
            out[key] = out.get(key, 0) + c
    return out


@dataclass(frozen=True)
class DisjointnessReport:
    ok: bool
    l_max: int
    m_max: int
    cardinalities: dict
    collision: tuple | None  # ((l,m), (l1,m1), key) for the first overlap


def check_disjoint_supports(l_max: int, m_max: int) -> DisjointnessReport:
    """Exhaustively verify the orbit-disjointness of the 2/3-dilations.

    For 1 <= l <= l_max, 1 <= m <= m_max, the iterate of e_{1/6} under l
    base-2 and m base-3 dilations must have exactly 2^l 3^m unit
    coefficients, and distinct (l,m) must have disjoint supports.  Exact
    arithmetic throughout; any failure is returned, not raised.
    """
    if l_max < 1 or m_max < 1:
        raise ValueError("check_disjoint_supports needs l_max, m_max >= 1")
    seen: dict = {}
    cards: dict = {}
    by_l = {0: {Fraction(1, 6): 1}}
    for l in range(1, l_max + 1):
        by_l[l] = rational_dilation(2, by_l[l - 1])
    for l in range(1, l_max + 1):
        cur = by_l[l]
        for m in range(1, m_max + 1):
            cur = rational_dilation(3, cur)
            cards[(l, m)] = len(cur)
            if len(cur) != 2**l * 3**m or any(c != 1 for c in cur.values()):
                return DisjointnessReport(False, l_max, m_max, cards, ((l, m), (l, m), None))
            for key in cur:
                if key in seen:
                    return DisjointnessReport(False, l_max, m_max, cards, (seen[key], (l, m), key))
                seen[key] = (l, m)
    return DisjointnessReport(True, l_max, m_max, cards, None)


# Doubling-orbit witnesses ---------------------------------------------------


@dataclass(frozen=True)
class WitnessReport:
    lam: float
    n: int
    residual: float
    predicted: float | None
    support: int
    norm_value: float


def doubling_orbit_witness(
    space: SpaceSpec,
    p: float,
    n: int,
    seed: Seq | None = None,
    ambient_cap: int = 1 << 20,
    materialize: bool | None = None,
) -> WitnessReport:
    """Residual of the damped doubling orbit v_n against lambda = 2^{1/p}.

    v_n = n^{-1/p} sum_{k=1}^{n} 2^{(1-k)/p} D^{k-1}(seed).  With the default
    seed e_1 the orbit runs through dyadic block indicators, so for an l^p
    space the whole computation lives in block coordinates (closed-form block
    norms; no 2^n-entry vector is materialized) and the residual is exactly
    (4/n)^{1/p} when p matches the space.  ``materialize=True`` forces the
    ambient path (the two must agree; tests cross-check them).
    """
    if n < 1:
        raise ValueError("doubling_orbit_witness needs n >= 1")
    if not 1 <= p < math.inf:
        raise ValueError("doubling_orbit_witness needs 1 <= p < inf")
    if seed is not None and not isinstance(seed, Seq):
        seed = Seq(seed)
    lam = 2.0 ** (1.0 / p)
    default_seed = seed is None or seed == Seq((1.0,))
    if materialize is not True and default_seed and isinstance(space, Lp) and space.p != math.inf:
        if n > 1 << 20:
            raise ValueError("witness length overflow")
        k = np.arange(1, n + 1, dtype=float)
        a = n ** (-1.0 / p) * 2.0 ** ((1.0 - k) / p)
        t = np.concatenate(([0.0], a)) - lam * np.concatenate((a, [0.0]))
        den = _ex_norm_lp(space.p, a)
        residual = _ex_norm_lp(space.p, t) / den
        predicted = (4.0 / n) ** (1.0 / p) if space.p == p else None
        return WitnessReport(
            lam=lam,
            n=n,
            residual=float(residual),
            predicted=predicted,
            support=(1 << n) - 1,
            norm_value=float(den),
        )
    seed = Seq((1.0,)) if seed is None else seed
    if seed.is_zero() or any(v < 0 for v in seed):
        raise ValueError("seed must be nonnegative and nonzero")
    y = seed.array
    if len(seed) << max(n - 1, 0) > ambient_cap:
        raise ValueError(
            f"orbit support ~2^{n - 1} * {len(seed)} exceeds the ambient cap {ambient_cap}"
        )
    parts = []
    for _ in range(n):
        parts.append(y)
        y = apply_array(Doubling(), y)
    v = np.zeros(parts[-1].size)
    for k, yk in enumerate(parts, start=1):
        v[: yk.size] += 2.0 ** ((1.0 - k) / p) * yk
    v *= n ** (-1.0 / p)
    den = norm(space, v)
    residual = norm(space, apply_array(DoublingMinusLambda(lam), v)) / den
    predicted = None
    if isinstance(space, Lp) and space.p == p and default_seed:
        predicted = (4.0 / n) ** (1.0 / p)
    return WitnessReport(
        lam=lam,
        n=n,
        residual=float(residual),
        predicted=predicted,
        support=int(np.count_nonzero(v)),
        norm_value=float(den),
    )


# Branching (2- and 3-dilation) witnesses ------------------------------------


@dataclass(frozen=True)
class BranchingReport:
    p: float
    n: int
    norm_value: float
    d2_residual: float
    d3_residual: float
    d2_predicted: float
    d3_predicted: float
    support: int
    materialized: bool


def _orbit_norm_p(coef: np.ndarray, p: float) -> float:
    """l^p norm of sum c_{jk} (2/3-dilation orbit of e_{1/6}).

    Rows/cols are powers j, k >= 1; disjoint unit-coefficient supports of
    cardinality 2^j 3^k turn the norm into weighted counting.
    """
    j = np.arange(1, coef.shape[0] + 1, dtype=float)[:, None]
    k = np.arange(1, coef.shape[1] + 1, dtype=float)[None, :]
    mass = np.abs(coef) ** p * 2.0**j * 3.0**k
    return float(np.sum(mass) ** (1.0 / p))


def branching_witness(p: float, n: int, materialize: bool | None = None) -> BranchingReport:
    """Simultaneous approximate eigenvector for both rational dilations.

    u_n = n^{-2/p} sum_{j,k=1}^{n} 2^{-j/p} 3^{-k/p} (orbit at powers (j,k)).
    Returns ||2^{-1/p} D2 u_n - u_n|| and ||3^{-1/p} D3 u_n - u_n|| in l^p;
    the telescoping boundary layers make both equal (2/n)^{1/p} exactly.
    For small n the vectors are materialized on their rational supports and
    the operators applied literally; beyond that the orbit-coefficient
    representation is used (identical numbers, by disjointness).
    """
    if n < 1:
        raise ValueError("branching_witness needs n >= 1")
    if not 1 <= p < math.inf:
        raise ValueError("branching_witness needs 1 <= p < inf")
    if materialize is None:
        materialize = n <= 5
    predicted = (2.0 / n) ** (1.0 / p)
    support = sum(2**j * 3**k for j in range(1, n + 1) for k in range(1, n + 1))
    scale = float(n) ** (-2.0 / p)

    if materialize:
        orbit: dict = {}
        row = {Fraction(1, 6): 1}
        for j in range(1, n + 2):
            row = rational_dilation(2, row)
            cur = dict(row)
            for k in range(1, n + 2):
                cur = rational_dilation(3, cur)
                orbit[(j, k)] = cur

        def combine(weights: dict) -> dict:
            out: dict = {}
            for (j, k), wgt in weights.items():
                for key in orbit[(j, k)]:
                    out[key] = out.get(key, 0.0) + wgt
            return out

        u_w = {
            (j, k): scale * 2.0 ** (-j / p) * 3.0 ** (-k / p)
            for j in range(1, n + 1)
            for k in range(1, n + 1)
        }
        u = combine(u_w)

        def lp(vec: dict) -> float:
            return float(sum(abs(c) ** p for c in vec.values()) ** (1.0 / p))

        def residual(base: int) -> float:
            shifted = rational_dilation(base, u)
            damp = float(base) ** (-1.0 / p)
            diff = {key: damp * c for key, c in shifted.items()}
            for key, c in u.items():
                diff[key] = diff.get(key, 0.0) - c
            return lp(diff)

        return BranchingReport(
            p=p,
            n=n,
            norm_value=lp(u),
            d2_residual=residual(2),
            d3_residual=residual(3),
            d2_predicted=predicted,
            d3_predicted=predicted,
            support=len(u),
            materialized=True,
        )

    j = np.arange(1, n + 1, dtype=float)
    k = np.arange(1, n + 1, dtype=float)
    coef = scale * np.outer(2.0 ** (-j / p), 3.0 ** (-k / p))
    norm_value = _orbit_norm_p(coef, p)

    def residual(axis: int, damp_base: float) -> float:
        # damp * (orbit power bump along axis) - identity, on coefficients
        ext = [n + 1, n] if axis == 0 else [n, n + 1]
        diff = np.zeros(ext)
        damp = damp_base ** (-1.0 / p)
        if axis == 0:
            diff[1:, :] += damp * coef
            diff[:n, :] -= coef
        else:
            diff[:, 1:] += damp * coef
            diff[:, :n] -= coef
        return _orbit_norm_p(diff, p)

    return BranchingReport(
        p=p,
        n=n,
        norm_value=norm_value,
        d2_residual=residual(0, 2.0),
        d3_residual=residual(1, 3.0),
        d2_predicted=predicted,
        d3_predicted=predicted,
        support=support,
        materialized=False,
    )


# Residual scans over lambda -------------------------------------------------


@dataclass(frozen=True)
class ScanPoint:
    lam: float
    estimate: float
    method: str
    params: dict
    dim: int
    seed: int


def _geom_series_log2(t: float, m: np.ndarray) -> np.ndarray:
    """log2 of sum_{i=0}^{m-1} (2^t)^i, stable across the t ~ 0 boundary."""
    m = np.asarray(m, dtype=float)
    if abs(t) < 1e-9:
        return np.log2(m) + t * (m - 1.0) / 2.0
    if t > 0:
        return m * t + np.log2(1.0 - 2.0 ** (-m * t)) - math.log2(math.expm1(t * math.log(2)))
    return np.log2(1.0 - 2.0 ** (m * t)) - math.log2(-math.expm1(t * math.log(2)))


def _orbit_family_residual(lam: float, p: float, m: np.ndarray) -> np.ndarray:
    """Residual of the damped orbit a_k = lam^{1-k}, k <= m, in l^p blocks.

    (tau_1 - lam) telescopes a to -lam e_1 + lam^{1-m} e_{m+1}; all block
    norms are evaluated in the log domain, so m may reach 2^14 and beyond.
    """
    u = math.log2(lam)
    m = np.asarray(m, dtype=float)
    log_num_p = np.logaddexp2(p * u, m + (1.0 - m) * p * u)
    log_den_p = _geom_series_log2(1.0 - p * u, m)
    return 2.0 ** ((log_num_p - log_den_p) / p)


def _geom_profile_residual(lam: float, p: float, rho: float, m: int) -> float:
    """Residual of the window profile a_k = rho^{k-1}, k <= m, in l^p blocks."""
    k = np.arange(1, m + 1, dtype=float)
    a = rho ** (k - 1.0)
    t = np.concatenate(([0.0], a)) - lam * np.concatenate((a, [0.0]))
    return _ex_norm_lp(p, t) / _ex_norm_lp(p, a)


def _scan_point_lp(lam: float, p: float, dim: int, restarts: int, rng) -> tuple[float, str, dict]:
    mgrid = 2 ** np.arange(0, int(math.log2(dim)) + 1)
    fam = _orbit_family_residual(lam, p, mgrid)
    best_i = int(np.argmin(fam))
    best = float(fam[best_i])
    method = "closed_form"
    params = {"m": int(mgrid[best_i]), "rho": 1.0 / lam}

    window = min(dim, 64)
    starts = np.concatenate((np.linspace(0.05, 1.45, 15), rng.uniform(0.05, 1.45, restarts)))
    for rho0 in starts:
        rho, step = float(rho0), 0.1
        val = _geom_profile_residual(lam, p, rho, window)
        while step > 1e-4:
            moved = False
            for cand in (rho - step, rho + step):
                if 1e-3 < cand and (v := _geom_profile_residual(lam, p, cand, window)) < val:
                    rho, val, moved = cand, v, True
            if not moved:
                step /= 2.0
        if val < best:
            best, method, params = val, "operator_search", {"m": window, "rho": rho}
    return best, method, params


def _scan_point_general(lam: float, space: SpaceSpec, dim: int, restarts: int, rng) -> tuple[float, str, dict]:
    blocks = max(1, int(math.log2(max(dim, 2))))
    best, method, params = math.inf, "operator_search", {}
    for m in range(1, blocks + 1):
        for rho in np.concatenate((np.array([1.0 / lam]), np.linspace(0.1, 1.2, 12), rng.uniform(0.05, 1.4, restarts))):
            k = np.arange(1, m + 1, dtype=float)
            a = rho ** (k - 1.0)
            v = np.repeat(a, 2 ** np.arange(m))
            den = norm(space, v)
            if den == 0.0:
                continue
            r = norm(space, apply_array(DoublingMinusLambda(lam), v)) / den
            if r < best:
                best, params = float(r), {"m": m, "rho": float(rho)}
    return best, method, params


def residual_scan(
    space: SpaceSpec,
    lambda_grid,
    dim: int = 1 << 14,
    restarts: int = 8,
    seed: int = 7,
) -> list[ScanPoint]:
    """Upper estimates of inf_{||x||=1} ||(D - lambda)x|| over a lambda grid.

    Every value is an upper estimate of the infimum (a witness was found
    achieving it); no spectral-gap lower bounds are claimed anywhere.  For
    l^p spaces ``dim`` counts dyadic-block coordinates and the damped-orbit
    family is evaluated in closed form; for other spaces vectors are
    materialized and ``dim`` caps the ambient support.
    """
    grid = [float(g) for g in lambda_grid]
    if not grid or any(g <= 0 for g in grid):
        raise ValueError("lambda grid entries must be positive")
    if dim < 1:
        raise ValueError("residual_scan needs dim >= 1")
    out = []
    for lam in grid:
        # per-point generator keyed by the lambda bit pattern: results do not
        # depend on grid order or partitioning, so scans parallelize cleanly
        rng = np.random.default_rng([seed, int(np.float64(lam).view(np.uint64))])
        if isinstance(space, Lp) and space.p != math.inf:
            est, method, params = _scan_point_lp(lam, space.p, dim, restarts, rng)
        else:
            est, method, params = _scan_point_general(lam, space, dim, restarts, rng)
        out.append(ScanPoint(lam=lam, estimate=est, method=method, params=params, dim=dim, seed=seed))
    return out


# Exact shift machinery ------------------------------------------------------


def _geometric_shift_sum(lam, n: int, xs: list) -> list:
    """(sum_{i=0}^{n} lam^{-i} tau_1^i) applied to a coefficient list."""
    out = [lam * 0] * (len(xs) + n)
    damp = lam**0  # Fraction(1) for exact lam, 1.0 for float
    for i in range(n + 1):
        for pos, v in enumerate(xs):
            out[pos + i] += v / damp
        damp = damp * lam
    return out


def shift_identity_check(lam, n: int, j: int) -> bool:
    """Verify (tau_1 - lam)^2 (sum_{i<=n} lam^-i tau_1^i)^2 e_j telescopes.

    The expected value is lam^2 e_j - 2 lam^{1-n} e_{j+n+1} + lam^{-2n}
    e_{j+2n+2}; additionally the squared geometric sum must dominate
    n lam^{-n} e_{j+n} (its e_{j+n} coefficient is (n+1) lam^{-n}).
    Exact for rational lam; 1e-10 relative for floats.
    """
    if n < 1 or j < 1:
        raise ValueError("shift_identity_check needs n, j >= 1")
    exact = isinstance(lam, (int, Fraction))
    lam = Fraction(lam) if exact else float(lam)
    e_j = [0] * (j - 1) + [1 if exact else 1.0]
    a = _geometric_shift_sum(lam, n, _geometric_shift_sum(lam, n, e_j))
    op = ShiftMinusLambda(lam)
    got = apply_list(op, apply_list(op, a))
    want = [0] * (j + 2 * n + 2)
    want[j - 1] = lam**2
    want[j + n] = -2 * lam ** (1 - n)
    want[j + 2 * n + 1] = lam ** (-2 * n)
    if len(got) < len(want):
        got = got + [0] * (len(want) - len(got))
    edge = a[j + n - 1]  # e_{j+n} coefficient of the squared sum
    if exact:
        return got == want and edge == (n + 1) * lam**-n and edge >= n * lam**-n
    scale = max(abs(v) for v in want)
    close = all(abs(g - w) <= 1e-10 * scale for g, w in zip(got, want))
    return close and abs(edge - (n + 1) * lam**-n) <= 1e-10 * abs(edge)


def moment_functional(lam, a) -> float | Fraction:
    """sum_k lam^k a_k over the finite support (Horner from the top).

    Annihilates the image of (tau_1 - lam): the functional of e_{k+1} -
    lam e_k vanishes term by term.
    """
    entries = list(a)
    acc = 0
    for v in reversed(entries):
        acc = acc * lam + v
    return acc * lam


def solve_shift_minus_lambda(lam, b):
    """The finitely supported a with (tau_1 - lam) a = b, when one exists.

    Forward recurrence a_1 = -b_1/lam, a_k = (a_{k-1} - b_k)/lam; the result
    is finitely supported exactly when the moment functional of b vanishes
    (the recurrence telescopes to lam^k a_k = -(1/lam) sum_{i<=k} lam^i b_i).
    Returns the same container kind it was given (Seq in, Seq out).
    """
    was_seq = isinstance(b, Seq)
    entries = list(b)
    while entries and entries[-1] == 0:
        entries.pop()
    moment = moment_functional(lam, entries)
    exact = isinstance(lam, (int, Fraction)) and all(
        isinstance(v, (int, Fraction)) for v in entries
    )
    if exact:
        lam = Fraction(lam)  # keep the recurrence divisions exact
        if moment != 0:
            raise ValueError(
                f"moment sum lam^k b_k = {moment} != 0: b is not in the image of (shift - lam)"
            )
    else:
        scale = moment_functional(abs(lam), [abs(v) for v in entries])
        if abs(moment) > 1e-10 * max(1.0, abs(scale)):
            raise ValueError(
                f"moment sum lam^k b_k = {moment} is nonzero at float tolerance: "
                "b is not in the image of (shift - lam)"
            )
    a: list = []
    prev = 0
    for bk in entries:
        prev = (prev - bk) / lam
        a.append(prev)
    if a:
        if exact:
            if a[-1] != 0:
                raise AssertionError("telescoping failed despite zero moment")
            a.pop()
        else:
            a.pop()  # telescoped tail; only float dust remains there
    return Seq(a) if was_seq else a
