"""End-to-end verification suite: one check per advertised guarantee.

Each check exercises a documented constant, rate, or exactness claim of the
library at its stated tolerance and returns a ``CheckResult``; the CLI
``verify`` subcommand prints one line per check, and the acceptance tests
wrap the same functions one-to-one.  Checks are deterministic: every random
draw derives from a fixed master seed.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .lattices import (
    EX,
    dyadic_equivalence_report,
    lattice_norm,
    shift_exponents,
    sandwich_ratio,
)
from .operators import (
    AvgProject,
    BlockEmbed,
    DilateDown,
    DilateUp,
    Doubling,
    DoublingMinusLambda,
    ShiftMinusLambda,
    apply_array,
    apply_list,
)
from .indices import fundamental_type_check, index_report
from .spaces import (
    Lorentz,
    Lp,
    LpQ,
    Orlicz,
    OrliczFn,
    norm,
    power_weights,
)
from .spectral import (
    branching_witness,
    check_disjoint_supports,
    doubling_orbit_witness,
    moment_functional,
    residual_scan,
    shift_identity_check,
    solve_shift_minus_lambda,
)

__all__ = ["CheckResult", "ALL_CHECKS", "run_checks"]

_MASTER_SEED = 20260815

# Space variants the JSON schema can name.  The quasi-normed l^{p,q} with
# q > p has no triangle inequality, so constants whose proofs need one
# (contractivity, doubling bounds, the dyadic sandwich) are asserted on the
# normed variants only; the quasi variant still participates in symmetry,
# monotonicity and index checks.
BUILTIN_SPACES = [
    ("lp_1", Lp(1.0)),
    ("lp_1.5", Lp(1.5)),
    ("lp_2", Lp(2.0)),
    ("lp_3", Lp(3.0)),
    ("lp_10", Lp(10.0)),
    ("lp_inf", Lp(math.inf)),
    ("lpq_2_1", LpQ(2.0, 1.0)),
    ("lpq_3_2", LpQ(3.0, 2.0)),
    ("lpq_2_4_quasi", LpQ(2.0, 4.0)),
    ("lorentz_q1_th0.3", Lorentz(1.0, power_weights(0.3))),
    ("lorentz_q2_th0.25", Lorentz(2.0, power_weights(0.25))),
    ("lorentz_q2_th0.4", Lorentz(2.0, power_weights(0.4))),
    ("orlicz_t1.5", Orlicz(OrliczFn.power(1.5))),
    ("orlicz_t3", Orlicz(OrliczFn.power(3.0))),
    ("orlicz_t2_log", Orlicz(OrliczFn.power_log(2.0, 0.6))),
]

TRIANGLE_SPACES = [(lbl, sp) for lbl, sp in BUILTIN_SPACES if lbl != "lpq_2_4_quasi"]

# Observed Lorentz dyadic-equivalence envelopes (trials=200, max_len=4096,
# seed=7), pinned after the first certified run; the proven enclosure is
# [1, 4^(1/q)].
LORENTZ_ENVELOPE_PINS: dict[str, tuple[float, float]] | None = {
    "q1_th0.3": (1.3545783020015816, 1.4797127349201158),
    "q2_th0.25": (1.161093878013032, 1.203431343732897),
}


@dataclass(frozen=True)
class CheckResult:
    crit_id: int
    name: str
    passed: bool
    detail: str
    elapsed: float


# Mutable so a driver can re-run the property checks under a different seed;
# every assertion below is a theorem about the drawn vectors, not a property
# of this particular stream.  The envelope pins keep their own frozen seed.
_seed_base = _MASTER_SEED


def _rng(offset: int) -> np.random.Generator:
    return np.random.default_rng(_seed_base + offset)


def _rand_vec(rng, max_len: int, signed: bool = True) -> np.ndarray:
    n = int(rng.integers(1, max_len + 1))
    v = rng.standard_normal(n)
    return v if signed else np.abs(v)


def _rand_fracs(rng, max_len: int = 10, span: int = 20, max_den: int = 12) -> list:
    n = int(rng.integers(1, max_len + 1))
    return [
        Fraction(int(rng.integers(-span, span + 1)), int(rng.integers(1, max_den + 1)))
        for _ in range(n)
    ]


def _pad_eq(u: list, v: list) -> bool:
    if len(u) < len(v):
        u = u + [Fraction(0)] * (len(v) - len(u))
    elif len(v) < len(u):
        v = v + [Fraction(0)] * (len(u) - len(v))
    return u == v


def check_symmetry_and_monotonicity() -> CheckResult:
    """Permutation invariance, lattice monotonicity, homogeneity: 1e-12."""
    t0 = time.time()
    rng = _rng(1)
    worst = 0.0
    for label, sp in BUILTIN_SPACES:
        for _ in range(500):
            v = _rand_vec(rng, 1 << 10)
            base = norm(sp, v)
            perm = norm(sp, rng.permutation(v))
            worst = max(worst, abs(perm - base) / base)
            if abs(perm - base) > 1e-12 * base:
                return CheckResult(1, "symmetry+monotonicity", False,
                                   f"{label}: permutation moved the norm by {abs(perm-base)/base:.2e}",
                                   time.time() - t0)
            smaller = v * rng.uniform(0.0, 1.0, v.size)
            if norm(sp, smaller) > base * (1 + 1e-12):
                return CheckResult(1, "symmetry+monotonicity", False,
                                   f"{label}: |u| <= |v| but ||u|| > ||v||", time.time() - t0)
            c = float(rng.uniform(0.1, 10.0))
            if abs(norm(sp, c * v) - c * base) > 1e-12 * c * base:
                return CheckResult(1, "symmetry+monotonicity", False,
                                   f"{label}: homogeneity off", time.time() - t0)
    return CheckResult(1, "symmetry+monotonicity", True,
                       f"{len(BUILTIN_SPACES)} variants x 500 vectors, worst rel dev {worst:.1e}",
                       time.time() - t0)


def check_operator_constants() -> CheckResult:
    """||sigma_{1/m}|| <= 1, ||sigma_m|| <= m, ||Q|| <= 1, Q^2 = Q, D in [1,2]."""
    t0 = time.time()
    rng = _rng(2)
    tol = 1e-12
    ratio_lo, ratio_hi = math.inf, 0.0
    for label, sp in TRIANGLE_SPACES:
        for _ in range(200):
            v = _rand_vec(rng, 1 << 10)
            nv = norm(sp, v)
            for m in (2, 3, 4):
                if norm(sp, apply_array(DilateDown(m), v)) > nv * (1 + tol):
                    return CheckResult(2, "operator constants", False,
                                       f"{label}: block averaging expanded a norm", time.time() - t0)
                if norm(sp, apply_array(DilateUp(m), v)) > m * nv * (1 + tol):
                    return CheckResult(2, "operator constants", False,
                                       f"{label}: ||sigma_{m} x|| > {m}||x||", time.time() - t0)
            if norm(sp, apply_array(AvgProject(), v)) > nv * (1 + tol):
                return CheckResult(2, "operator constants", False,
                                   f"{label}: ||Qx|| > ||x||", time.time() - t0)
            r = norm(sp, apply_array(Doubling(), v)) / nv
            ratio_lo, ratio_hi = min(ratio_lo, r), max(ratio_hi, r)
            if not (1 - 1e-9) <= r <= 2 * (1 + 1e-9):
                return CheckResult(2, "operator constants", False,
                                   f"{label}: ||Dx||/||x|| = {r}", time.time() - t0)
    for _ in range(200):
        x = _rand_fracs(rng, max_len=16)
        once = apply_list(AvgProject(), x)
        if not _pad_eq(apply_list(AvgProject(), once), once):
            return CheckResult(2, "operator constants", False,
                               "Q^2 != Q on a rational vector", time.time() - t0)
    return CheckResult(2, "operator constants", True,
                       f"observed ||Dx||/||x|| in [{ratio_lo:.6f}, {ratio_hi:.6f}], Q idempotent on rationals",
                       time.time() - t0)


def check_dyadic_sandwich() -> CheckResult:
    """Dyadic resampling ratio within [1, 5] on 500 vectors per variant."""
    t0 = time.time()
    rng = _rng(3)
    lo, hi = math.inf, 0.0
    for label, sp in TRIANGLE_SPACES:
        for _ in range(500):
            v = _rand_vec(rng, 1 << 12)
            r = sandwich_ratio(sp, v)
            lo, hi = min(lo, r), max(hi, r)
            if not (1 - 1e-9) <= r <= 5 * (1 + 1e-9):
                return CheckResult(3, "dyadic sandwich", False,
                                   f"{label}: ratio {r} outside [1, 5]", time.time() - t0)
    return CheckResult(3, "dyadic sandwich", True,
                       f"observed envelope [{lo:.4f}, {hi:.4f}] within [1, 5]", time.time() - t0)


def check_intertwining_exact() -> CheckResult:
    """(D-lam)S = S(shift-lam) and Q(D-lam) = (D-lam)Q, exact rationals."""
    t0 = time.time()
    rng = _rng(4)
    for _ in range(1000):
        lam = Fraction(int(rng.integers(1, 9)), int(rng.integers(1, 9)))
        a = _rand_fracs(rng, max_len=8)
        lhs = apply_list(DoublingMinusLambda(lam), apply_list(BlockEmbed(), a))
        rhs = apply_list(BlockEmbed(), apply_list(ShiftMinusLambda(lam), a))
        if not _pad_eq(lhs, rhs):
            return CheckResult(4, "intertwining exact", False,
                               f"(D-{lam})S != S(shift-{lam}) on {a}", time.time() - t0)
        x = _rand_fracs(rng, max_len=16)
        lhs = apply_list(AvgProject(), apply_list(DoublingMinusLambda(lam), x))
        rhs = apply_list(DoublingMinusLambda(lam), apply_list(AvgProject(), x))
        if not _pad_eq(lhs, rhs):
            return CheckResult(4, "intertwining exact", False,
                               f"Q(D-{lam}) != (D-{lam})Q on {x}", time.time() - t0)
    return CheckResult(4, "intertwining exact", True,
                       "both identities exact on 1000 rational vectors each", time.time() - t0)


def check_index_round_trips() -> CheckResult:
    """Known index values across all families within stated tolerances, < 60 s."""
    from .indices import boyd_indices, lorentz_indices, orlicz_indices

    t0 = time.time()
    errs = []
    for p in (1.0, 1.5, 2.0, 3.0, 10.0):
        rep = index_report(Lp(p))
        want = 1.0 / p
        e = max(abs(rep.alpha.point - want), abs(rep.beta.point - want))
        errs.append(("lp", p, e))
        if e > 1e-6:
            return CheckResult(5, "index round trips", False,
                               f"l^{p}: index error {e:.2e} > 1e-6", time.time() - t0)
        # 1e-6 on the indices propagates to ~p^2 * 1e-6 on the reciprocals
        if max(abs(rep.f_interval[0] - p), abs(rep.f_interval[1] - p)) > 1e-4:
            return CheckResult(5, "index round trips", False,
                               f"l^{p}: exponent interval {rep.f_interval} != [{p}, {p}]",
                               time.time() - t0)
    for q, th in ((1.0, 0.3), (2.0, 0.25), (2.0, 0.4)):
        want = (1 - th * q) / q
        w = power_weights(th)
        a, b = boyd_indices(Lorentz(q, w))
        e_full = max(abs(a.point - want), abs(b.point - want))
        a2, b2 = lorentz_indices(q, w, simplified=True)
        e_simp = max(abs(a2.point - want), abs(b2.point - want))
        errs.append(("lorentz", (q, th), max(e_full, e_simp)))
        if e_full > 1e-3 or e_simp > 1e-3:
            return CheckResult(5, "index round trips", False,
                               f"lorentz q={q} theta={th}: full {e_full:.2e} / simplified {e_simp:.2e} vs 1e-3",
                               time.time() - t0)
    for p in (1.5, 2.0, 3.0):
        a, b = orlicz_indices(OrliczFn.power(p))
        e = max(abs(a.point - 1 / p), abs(b.point - 1 / p))
        errs.append(("orlicz", p, e))
        if e > 1e-8:
            return CheckResult(5, "index round trips", False,
                               f"orlicz t^{p}: error {e:.2e} > 1e-8", time.time() - t0)
    elapsed = time.time() - t0
    worst = max(e for _, _, e in errs)
    if elapsed >= 60.0:
        return CheckResult(5, "index round trips", False,
                           f"runtime {elapsed:.1f}s exceeds 60s", elapsed)
    return CheckResult(5, "index round trips", True,
                       f"all families on target, worst error {worst:.1e}, within 60s budget",
                       elapsed)


def check_index_ordering_chain() -> CheckResult:
    """lower <= mu <= nu <= upper on every report; route gaps < 5e-3."""
    t0 = time.time()
    slack = 1e-6
    kw = dict(n_max=12, j_max=1 << 12, k_max=120)
    for label, sp in BUILTIN_SPACES:
        rep = index_report(sp, **kw)
        chain = (
            -slack <= rep.alpha.point
            and rep.alpha.point <= rep.mu + slack
            and rep.mu <= rep.nu + slack
            and rep.nu <= rep.beta.point + slack
            and rep.beta.point <= 1.0 + slack
        )
        if not chain:
            return CheckResult(6, "index ordering chain", False,
                               f"{label}: chain violated: alpha={rep.alpha.point} mu={rep.mu} "
                               f"nu={rep.nu} beta={rep.beta.point}", time.time() - t0)
        ev = fundamental_type_check(sp, tol=5e-3, **kw)
        if not ev.evidence:
            return CheckResult(6, "index ordering chain", False,
                               f"{label}: route gaps {ev.alpha_mu_gap:.2e}/{ev.nu_beta_gap:.2e} >= 5e-3",
                               time.time() - t0)
    return CheckResult(6, "index ordering chain", True,
                       f"chain and route agreement hold on all {len(BUILTIN_SPACES)} variants",
                       time.time() - t0)


def check_shift_exponent_bridge() -> CheckResult:
    """Block-lattice shift exponents equal 2^(+-1/p); dilation chains vector-wise."""
    t0 = time.time()
    rng = _rng(7)
    for p in (1.0, 2.0, 4.0):
        ex = shift_exponents(EX(Lp(p)))
        if abs(ex.k_plus - 2 ** (1 / p)) > 1e-6 or abs(ex.k_minus - 2 ** (-1 / p)) > 1e-6:
            return CheckResult(7, "shift exponent bridge", False,
                               f"p={p}: k+={ex.k_plus}, k-={ex.k_minus}", time.time() - t0)
        if 1.0 / ex.k_minus > ex.k_plus * (1 + 1e-9):
            return CheckResult(7, "shift exponent bridge", False,
                               f"p={p}: 1/k- > k+", time.time() - t0)
    lat = {p: EX(Lp(p)) for p in (1.0, 2.0, 4.0)}
    for _ in range(200):
        p = float(rng.choice((1.0, 2.0, 4.0)))
        a = np.abs(_rand_vec(rng, 12, signed=False))
        na = lattice_norm(lat[p], a)
        if na == 0.0:
            continue
        for n in (1, 2, 3, 4):
            up = lattice_norm(lat[p], np.concatenate((np.zeros(n), a)))
            # forward shift on block coordinates = dilation by 2^n after embed
            sa = apply_array(BlockEmbed(), a)
            dil = norm(Lp(p), apply_array(DilateUp(1 << n), sa))
            if abs(up - dil) > 1e-12 * dil:
                return CheckResult(7, "shift exponent bridge", False,
                                   f"p={p} n={n}: ||tau_n a|| != ||sigma_(2^n) S a||", time.time() - t0)
            if up > 2.0 ** (n / p) * na * (1 + 1e-12):
                return CheckResult(7, "shift exponent bridge", False,
                                   f"p={p} n={n}: forward chain violated", time.time() - t0)
            down = lattice_norm(lat[p], a[n:])
            if down > 2.0 * 2.0 ** (-n / p) * na * (1 + 1e-12):
                return CheckResult(7, "shift exponent bridge", False,
                                   f"p={p} n={n}: backward chain violated", time.time() - t0)
            if dil > 2.0 ** ((n + 1) / p) * norm(Lp(p), sa) * (1 + 1e-12):
                return CheckResult(7, "shift exponent bridge", False,
                                   f"p={p} n={n}: dilation-vs-shift chain violated", time.time() - t0)
    return CheckResult(7, "shift exponent bridge", True,
                       "exponents exact and all dilation chains hold on 200 vectors",
                       time.time() - t0)


def check_witness_rates() -> CheckResult:
    """Orbit witness rates: (4/n)^(1/p) at 1e-9; branching rates at 1e-10."""
    t0 = time.time()
    for p in (1.0, 2.0, 3.0):
        n = 1
        while n <= 1024:
            w = doubling_orbit_witness(Lp(p), p, n)
            want = (4.0 / n) ** (1.0 / p)
            if abs(w.residual - want) > 1e-9:
                return CheckResult(8, "witness rates", False,
                                   f"orbit witness p={p} n={n}: residual {w.residual} vs {want}",
                                   time.time() - t0)
            n *= 2
    for p in (1.0, 2.0, 3.0):
        for n in range(1, 11):
            r = branching_witness(p, n)
            if abs(r.norm_value - 1.0) > 1e-10:
                return CheckResult(8, "witness rates", False,
                                   f"branching witness p={p} n={n}: ||u_n|| = {r.norm_value}",
                                   time.time() - t0)
            if abs(r.d2_residual - (2.0 / n) ** (1.0 / p)) > 1e-10:
                return CheckResult(8, "witness rates", False,
                                   f"branching witness p={p} n={n}: base-2 residual {r.d2_residual}",
                                   time.time() - t0)
            want_d3 = 3.0 ** (1.0 / p) * float(n) ** (-1.0 / p)
            if abs(r.d3_residual - want_d3) > 1e-10:
                return CheckResult(8, "witness rates", False,
                                   f"branching witness p={p} n={n}: base-3 residual is "
                                   f"{r.d3_residual:.12f} = (2/n)^(1/p) by the telescoping argument, "
                                   f"not the asserted {want_d3:.12f}", time.time() - t0)
    return CheckResult(8, "witness rates", True,
                       "all witness rates on target", time.time() - t0)


def check_orbit_disjointness() -> CheckResult:
    """Exhaustive support disjointness with exact cardinalities, < 10 s."""
    t0 = time.time()
    rep = check_disjoint_supports(4, 4)
    elapsed = time.time() - t0
    ok = rep.ok and all(
        rep.cardinalities[(l, m)] == 2**l * 3**m
        for l in range(1, 5)
        for m in range(1, 5)
    )
    if not ok:
        return CheckResult(9, "orbit disjointness", False,
                           f"collision or wrong cardinality: {rep.collision}", elapsed)
    if elapsed >= 10.0:
        return CheckResult(9, "orbit disjointness", False,
                           f"runtime {elapsed:.1f}s exceeds 10s", elapsed)
    return CheckResult(9, "orbit disjointness", True,
                       "16 orbits pairwise disjoint, cardinalities 2^l 3^m, within 10s budget",
                       elapsed)


def check_shift_machinery() -> CheckResult:
    """Identities, annihilation, and solve round-trips in exact arithmetic."""
    t0 = time.time()
    rng = _rng(10)
    for _ in range(50):
        lam = Fraction(int(rng.integers(1, 10)), int(rng.integers(1, 10)))
        n = int(rng.integers(1, 7))
        j = int(rng.integers(1, 6))
        if not shift_identity_check(lam, n, j):
            return CheckResult(10, "shift machinery", False,
                               f"identity failed at lam={lam}, n={n}, j={j}", time.time() - t0)
    for _ in range(500):
        lam = Fraction(int(rng.integers(1, 10)), int(rng.integers(1, 10)))
        a = _rand_fracs(rng)
        b = apply_list(ShiftMinusLambda(lam), a)
        if moment_functional(lam, b) != 0:
            return CheckResult(10, "shift machinery", False,
                               f"moment of (shift-{lam})a nonzero", time.time() - t0)
        back = solve_shift_minus_lambda(lam, b)
        while a and a[-1] == 0:
            a.pop()
        if back != a:
            return CheckResult(10, "shift machinery", False,
                               f"solve round-trip mismatch at lam={lam}", time.time() - t0)
    return CheckResult(10, "shift machinery", True,
                       "50 identities, 500 annihilations and solve round-trips exact",
                       time.time() - t0)


def check_equivalence_envelopes() -> CheckResult:
    """Orlicz block model within [1, 4]; Lorentz envelope pinned."""
    t0 = time.time()
    for p in (1.5, 2.0, 3.0):
        rep = dyadic_equivalence_report("orlicz", N=OrliczFn.power(p))
        if rep.ratio_min < 1 - 1e-10 or rep.ratio_max > 4 + 1e-10:
            return CheckResult(11, "equivalence envelopes", False,
                               f"orlicz t^{p}: observed [{rep.ratio_min}, {rep.ratio_max}] "
                               "escapes [1, 4]", time.time() - t0)
    seen = {}
    for key, q, th in (("q1_th0.3", 1.0, 0.3), ("q2_th0.25", 2.0, 0.25)):
        rep = dyadic_equivalence_report("lorentz", q=q, w=power_weights(th))
        if not (math.isfinite(rep.ratio_min) and math.isfinite(rep.ratio_max)):
            return CheckResult(11, "equivalence envelopes", False,
                               f"lorentz {key}: envelope not finite", time.time() - t0)
        if rep.ratio_min < 1 - 1e-10 or rep.ratio_max > 4.0 ** (1.0 / q) + 1e-10:
            return CheckResult(11, "equivalence envelopes", False,
                               f"lorentz {key}: observed [{rep.ratio_min}, {rep.ratio_max}] "
                               f"escapes [1, 4^(1/{q})]", time.time() - t0)
        seen[key] = (rep.ratio_min, rep.ratio_max)
        if LORENTZ_ENVELOPE_PINS is not None:
            pin = LORENTZ_ENVELOPE_PINS[key]
            if abs(rep.ratio_min - pin[0]) > 1e-9 or abs(rep.ratio_max - pin[1]) > 1e-9:
                return CheckResult(11, "equivalence envelopes", False,
                                   f"lorentz {key}: envelope drifted from pinned {pin} to "
                                   f"({rep.ratio_min}, {rep.ratio_max})", time.time() - t0)
    return CheckResult(11, "equivalence envelopes", True,
                       "orlicz within [1, 4]; lorentz envelopes " + ", ".join(
                           f"{k}=[{v[0]:.6f}, {v[1]:.6f}]" for k, v in sorted(seen.items())),
                       time.time() - t0)


def check_scan_coherence() -> CheckResult:
    """Scan minimum at 2^(1/p); witness < 0.1 at 2^14 coords; 5x off-peak."""
    t0 = time.time()
    for p in (1.0, 2.0, 3.0):
        lamstar = 2.0 ** (1.0 / p)
        grid = [lamstar + 0.05 * s for s in range(-8, 9)]
        pts = residual_scan(Lp(p), grid, dim=1 << 14)
        best = min(pts, key=lambda q: q.estimate)
        if abs(best.lam - lamstar) > 0.05 / 2:
            return CheckResult(12, "scan coherence", False,
                               f"p={p}: minimum at {best.lam}, not {lamstar}", time.time() - t0)
        at_star = next(q for q in pts if q.lam == lamstar)
        if at_star.estimate >= 0.1:
            return CheckResult(12, "scan coherence", False,
                               f"p={p}: estimate {at_star.estimate} at the matched lambda >= 0.1",
                               time.time() - t0)
        for off in (lamstar - 0.4, lamstar + 0.4):
            if off <= 0:
                continue
            est = next(q for q in pts if abs(q.lam - off) < 1e-12).estimate
            if est <= 5 * at_star.estimate:
                return CheckResult(12, "scan coherence", False,
                                   f"p={p}: off-peak estimate {est} within 5x of {at_star.estimate}",
                                   time.time() - t0)
    return CheckResult(12, "scan coherence", True,
                       "minima at 2^(1/p), matched estimates < 0.1, off-peak > 5x",
                       time.time() - t0)


ALL_CHECKS = [
    (1, "symmetry+monotonicity", check_symmetry_and_monotonicity),
    (2, "operator constants", check_operator_constants),
    (3, "dyadic sandwich", check_dyadic_sandwich),
    (4, "intertwining exact", check_intertwining_exact),
    (5, "index round trips", check_index_round_trips),
    (6, "index ordering chain", check_index_ordering_chain),
    (7, "shift exponent bridge", check_shift_exponent_bridge),
    (8, "witness rates", check_witness_rates),
    (9, "orbit disjointness", check_orbit_disjointness),
    (10, "shift machinery", check_shift_machinery),
    (11, "equivalence envelopes", check_equivalence_envelopes),
    (12, "scan coherence", check_scan_coherence),
]


def run_checks(only: list[int] | None = None, seed: int | None = None) -> list[CheckResult]:
    global _seed_base
    if seed is not None:
        _seed_base = _MASTER_SEED + int(seed)
    try:
        results = []
        for cid, _, fn in ALL_CHECKS:
            if only is not None and cid not in only:
                continue
            results.append(fn())
        return results
    finally:
        _seed_base = _MASTER_SEED
