"""Dyadic-block lattices: closed-form norms, shift exponents, equivalences."""

import math

import numpy as np
import pytest

from symseq.lattices import (
    EX,
    UN,
    WeightedLq,
    block_weights_from_lorentz,
    dyadic_equivalence_report,
    lattice_from_json,
    lattice_norm,
    lattice_to_json,
    sandwich_ratio,
    shift_exponents,
    unit_norms,
    weight_ratio_condition,
)
from symseq.spaces import (
    Lorentz,
    Lp,
    OrliczFn,
    fundamental_function,
    norm,
    power_weights,
)
from symseq.operators import BlockEmbed, apply_array


# norms ------------------------------------------------------------------------


def test_ex_lp_norm_matches_materialized_embedding():
    rng = np.random.default_rng(21)
    for p in (1.0, 2.0, 3.0):
        lat = EX(Lp(p))
        for _ in range(40):
            a = np.abs(rng.standard_normal(int(rng.integers(1, 14))))
            want = norm(Lp(p), apply_array(BlockEmbed(), a))
            assert lattice_norm(lat, a) == pytest.approx(want, rel=1e-12)


def test_ex_lp_closed_form_on_units():
    # ||e_k||_EX = phi(2^{k-1}) = 2^{(k-1)/p}
    for p in (1.0, 2.0, 4.0):
        lat = EX(Lp(p))
        for k in (1, 2, 5, 30):
            e = np.zeros(k)
            e[-1] = 1.0
            assert lattice_norm(lat, e) == pytest.approx(
                2.0 ** ((k - 1) / p), rel=1e-12
            )


def test_ex_handles_large_supports_without_materializing():
    # 2^59 ambient entries would never fit; the block path must stay closed form
    lat = EX(Lp(2.0))
    a = np.ones(60)
    want = math.sqrt(sum(2.0 ** (k - 1) for k in range(1, 61)))
    assert lattice_norm(lat, a) == pytest.approx(want, rel=1e-12)


def test_ex_materialization_cap_raises():
    lat = EX(Lorentz(2.0, power_weights(0.25)), cap=10)
    with pytest.raises(ValueError):
        lattice_norm(lat, np.ones(11))


def test_unit_norms_are_fundamental_values():
    for base in (Lp(1.0), Lp(2.0), Lorentz(2.0, power_weights(0.25))):
        lat = EX(base)
        s = unit_norms(lat, 12)
        want = [fundamental_function(base, 2 ** (k - 1)) for k in range(1, 13)]
        assert np.allclose(s, want, rtol=1e-12)


def test_weighted_lq_norm_definition():
    lat = WeightedLq(q=2.0, mu=lambda k: np.asarray(k, dtype=float))
    # ||a|| = (sum |a_k mu_k|^q)^(1/q)
    assert lattice_norm(lat, [1.0, 1.0]) == pytest.approx(math.sqrt(5.0))


def test_un_norm_power_is_weighted_lp():
    # N(t) = t^p turns the Luxemburg functional into a weighted l^p norm
    p = 2.0
    lat = UN(OrliczFn.power(p))
    a = np.array([0.5, 0.25, 0.125])
    card = 2.0 ** np.arange(3)
    want = float(np.sum(card * np.abs(a) ** p) ** (1.0 / p))
    assert lattice_norm(lat, a) == pytest.approx(want, rel=1e-9)


# shift exponents ----------------------------------------------------------------


def test_shift_exponents_ex_lp_closed_form():
    for p in (1.0, 2.0, 4.0):
        se = shift_exponents(EX(Lp(p)))
        assert se.k_plus == pytest.approx(2.0 ** (1.0 / p), rel=1e-9)
        assert se.k_minus == pytest.approx(2.0 ** (-1.0 / p), rel=1e-9)


def test_shift_exponent_bridge_inequality():
    # 1/k_minus <= k_plus on every lattice tried; the Lorentz EX runs with a
    # small window because its unit norms sum 2^{k-1} weights each
    lats = [
        (EX(Lp(1.5)), {}),
        (EX(Lorentz(2.0, power_weights(0.25))), dict(n_max=8, k_max=24)),
        (WeightedLq(2.0, block_weights_from_lorentz(2.0, power_weights(0.25))), {}),
        (UN(OrliczFn.power(2.0)), {}),
    ]
    for lat, kw in lats:
        se = shift_exponents(lat, **kw)
        # tau_{-n} tau_n = I makes the raw per-n product exactly >= 1 ...
        assert se.k_plus_at_n_max * se.k_minus_at_n_max >= 1.0 - 1e-12
        # ... while the extrapolated points can cross by truncation error
        assert 1.0 / se.k_minus <= se.k_plus + 5e-4


def test_shift_exponents_validation():
    with pytest.raises(ValueError):
        shift_exponents(EX(Lp(2.0)), n_max=1)
    with pytest.raises(ValueError):
        shift_exponents(EX(Lp(2.0)), n_max=16, k_max=16)


# sandwich -----------------------------------------------------------------------


def test_sandwich_ratio_window():
    rng = np.random.default_rng(17)
    bases = [Lp(1.0), Lp(2.0), Lp(math.inf), Lorentz(2.0, power_weights(0.25))]
    for base in bases:
        for _ in range(60):
            x = rng.standard_normal(int(rng.integers(1, 1 << 10)))
            if not np.any(x):
                continue
            r = sandwich_ratio(base, x)
            assert 1.0 - 1e-9 <= r <= 5.0 + 1e-9


def test_sandwich_ratio_rejects_zero():
    with pytest.raises(ValueError):
        sandwich_ratio(Lp(2.0), np.zeros(3))


# equivalence reports -------------------------------------------------------------


def test_lorentz_equivalence_envelope_small():
    rep = dyadic_equivalence_report(
        "lorentz", q=2.0, w=power_weights(0.25), trials=40, max_len=512, seed=3
    )
    assert 1.0 - 1e-10 <= rep.ratio_min <= rep.ratio_max <= 4.0**0.5 + 1e-10
    assert rep.bound_lo == 1.0 and rep.bound_hi == pytest.approx(4.0**0.5)
    assert rep.trials == 40


def test_orlicz_equivalence_envelope_small():
    rep = dyadic_equivalence_report(
        "orlicz", N=OrliczFn.power(2.0), trials=40, max_len=512, seed=3
    )
    assert 1.0 - 1e-10 <= rep.ratio_min <= rep.ratio_max <= 4.0 + 1e-10


def test_equivalence_report_is_deterministic():
    kw = dict(q=2.0, w=power_weights(0.3), trials=25, max_len=256, seed=11)
    a = dyadic_equivalence_report("lorentz", **kw)
    b = dyadic_equivalence_report("lorentz", **kw)
    assert (a.ratio_min, a.ratio_max) == (b.ratio_min, b.ratio_max)


def test_equivalence_report_rejects_unknown_kind():
    with pytest.raises(ValueError):
        dyadic_equivalence_report("mystery")


# weight regularity ----------------------------------------------------------------


def test_weight_ratio_condition_power_weights():
    # w = k^{-theta}: the dyadic ratio limit is 2^theta < 2^{1/q} iff theta < 1/q
    ok = weight_ratio_condition(2.0, power_weights(0.25))
    assert ok.holds and ok.margin > 0.0
    edge = weight_ratio_condition(2.0, power_weights(0.49))
    assert edge.holds
    bad = weight_ratio_condition(1.0, power_weights(0.999))
    assert bad.margin < 0.1


def test_block_weights_from_lorentz_values():
    mu = block_weights_from_lorentz(2.0, power_weights(0.25))
    k = np.array([1.0, 2.0, 3.0])
    want = 2.0 ** ((k - 1.0) / 2.0) * (2.0 ** (k - 1.0)) ** -0.25
    assert np.allclose(mu(k), want, rtol=1e-12)


# JSON codecs ----------------------------------------------------------------------


LATTICE_OBJS = [
    {"kind": "ex", "base": {"kind": "lp", "p": 2.0}},
    {"kind": "ex", "base": {"kind": "lorentz", "q": 2.0,
                            "weights": {"form": "power", "theta": 0.25}}, "cap": 20},
    {"kind": "wlq", "q": 2.0, "weights": {"form": "geometric", "ratio": 1.3}},
    {"kind": "wlq", "q": 1.0, "weights": {"form": "array", "values": [1.0, 2.0, 4.0]}},
    {"kind": "wlq", "q": 2.0,
     "weights": {"form": "lorentz_blocks",
                 "weights": {"form": "power", "theta": 0.25}}},
    {"kind": "un", "orlicz": {"form": "power", "p": 1.5}},
]


@pytest.mark.parametrize("obj", LATTICE_OBJS)
def test_lattice_json_round_trip(obj):
    lat = lattice_from_json(obj)
    again = lattice_from_json(lattice_to_json(lat))
    a = np.array([1.0, 0.5, 0.25])
    assert lattice_norm(lat, a) == pytest.approx(lattice_norm(again, a), rel=1e-12)


def test_lattice_json_errors():
    with pytest.raises(KeyError, match="unknown lattice kind"):
        lattice_from_json({"kind": "qqq"})
    with pytest.raises(KeyError):
        lattice_from_json({"kind": "wlq", "q": 2.0})
    with pytest.raises(ValueError):
        lattice_from_json({"kind": "wlq", "q": 2.0, "weights": {"form": "odd"}})
    # raw-callable lattices carry no descriptor and cannot serialize
    with pytest.raises(ValueError):
        lattice_to_json(WeightedLq(2.0, mu=lambda k: np.asarray(k, dtype=float)))


def test_wlq_array_weights_report_their_range():
    lat = lattice_from_json(
        {"kind": "wlq", "q": 1.0, "weights": {"form": "array", "values": [1.0, 2.0]}}
    )
    with pytest.raises(ValueError, match="cover only k <= 2"):
        lattice_norm(lat, [1.0, 1.0, 1.0])
