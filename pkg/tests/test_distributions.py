import math

import numpy as np
import pytest
import scipy.special as sc
import scipy.stats
from hypothesis import given, settings, strategies as st

from htmix.distributions import (
    DistSpec,
    FAMILIES,
    GammaParams,
    LinnikParams,
    METHODS,
    MLParams,
    NegBinParams,
    SampleBatch,
    StableParams,
    StableRatioParams,
    ZParams,
    analytic_cf,
    analytic_lst,
    sample,
    sample_basic,
    sample_gen_linnik,
    sample_gen_mittag_leffler,
    sample_linnik,
    sample_mittag_leffler,
    sample_stable,
    sample_stable_ratio,
    sample_z,
)
from htmix.errors import DomainError
from htmix.streams import RandomStream
from htmix.verification import (
    ecf_distance,
    ks_one_sample,
    ks_two_sample,
    ks_two_sample_threshold,
    lst_distance,
)

N = 100_000
STREAM = RandomStream(321, 0)


def spec_of(family, **params):
    method = params.pop("method", None)
    return DistSpec(family, params or None, method)


class TestParamRecords:
    @pytest.mark.parametrize(
        "ctor,kwargs",
        [
            (StableParams, dict(alpha=2.5)),
            (StableParams, dict(alpha=0.0)),
            (StableParams, dict(alpha=1.5, theta="one_sided")),
            (StableParams, dict(alpha=1.0, theta="positive")),
            (StableRatioParams, dict(delta=1.0)),
            (GammaParams, dict(r=-2.0)),
            (MLParams, dict(delta=1.1)),
            (MLParams, dict(delta=0.5, nu=0.0)),
            (LinnikParams, dict(alpha=2.2)),
            (NegBinParams, dict(nu=1.0, p=1.0)),
            (ZParams, dict(r=1.5)),
            (ZParams, dict(r=0.5, mu=0.0)),
        ],
    )
    def test_rejects(self, ctor, kwargs):
        with pytest.raises(DomainError):
            ctor(**kwargs)

    def test_coerces_to_float(self):
        p = GammaParams(r=2, lam=3)
        assert isinstance(p.r, float) and p.r == 2.0
        assert isinstance(p.lam, float) and p.lam == 3.0

    def test_one_sided_alpha_one_allowed(self):
        assert StableParams(1.0, "one_sided").alpha == 1.0


class TestDistSpec:
    def test_mapping_coercion(self):
        spec = DistSpec("gen_linnik", {"alpha": 1.5, "nu": 2.0})
        assert isinstance(spec.params, LinnikParams)
        assert spec.params.alpha == 1.5

    def test_unknown_family(self):
        with pytest.raises(DomainError):
            DistSpec("lognormal")

    def test_basic_family_takes_no_params(self):
        with pytest.raises(DomainError):
            DistSpec("normal", {"mu": 0.0})

    def test_unknown_method(self):
        with pytest.raises(DomainError):
            DistSpec("linnik", {"alpha": 1.0}, "quantile")
        with pytest.raises(DomainError):
            DistSpec("gamma", {"r": 1.0}, "stable_weibull")

    def test_method_constraints(self):
        with pytest.raises(DomainError):
            DistSpec("linnik", {"alpha": 2.0}, "laplace_ratio")
        with pytest.raises(DomainError):
            DistSpec("gen_linnik", {"alpha": 1.0, "nu": 2.0}, "linnik_z")
        DistSpec("gen_linnik", {"alpha": 1.0, "nu": 1.0}, "linnik_z")

    def test_resolved_method_defaults(self):
        assert spec_of("linnik", alpha=1.0).resolved_method() == "stable_weibull"
        assert spec_of("gen_linnik", alpha=1.0, nu=2.0).resolved_method() == (
            "stable_gamma"
        )
        assert spec_of("normal").resolved_method() is None

    def test_describe(self):
        s = DistSpec("gen_linnik", {"alpha": 1.5, "nu": 2.0}, "normal_genml")
        assert s.describe() == "gen_linnik(alpha=1.5,nu=2)[normal_genml]"
        assert spec_of("normal").describe() == "normal"


class TestSampleBatch:
    def test_len_and_meta(self):
        b = sample(spec_of("normal"), 17, STREAM)
        assert len(b) == 17
        meta = b.meta()
        assert meta == {"spec": "normal", "seed": 321, "substream": 0, "n": 17}

    def test_rejects_bad_shape(self):
        with pytest.raises(DomainError):
            SampleBatch(np.zeros((2, 2)), "x", 0, 0)
        with pytest.raises(DomainError):
            SampleBatch(np.zeros(0), "x", 0, 0)


class TestDeterminism:
    @pytest.mark.parametrize(
        "spec",
        [
            spec_of("gen_linnik", alpha=1.5, nu=2.0),
            spec_of("stable", alpha=0.7, theta="one_sided"),
            spec_of("neg_binom", nu=2.0, p=0.25),
        ],
        ids=lambda s: s.family,
    )
    def test_bit_identical_repeat(self, spec):
        a = sample(spec, 500, RandomStream(99, 4))
        b = sample(spec, 500, RandomStream(99, 4))
        np.testing.assert_array_equal(a.values, b.values)

    def test_substream_changes_draws(self):
        spec = spec_of("linnik", alpha=1.0)
        a = sample(spec, 500, RandomStream(99, 0))
        b = sample(spec, 500, RandomStream(99, 1))
        assert not np.array_equal(a.values, b.values)


class TestBasicFamilies:
    def test_weibull_matches_scipy(self):
        b = sample(spec_of("weibull", gamma=1.7), N, STREAM)
        d = ks_one_sample(b, lambda x: scipy.stats.weibull_min.cdf(x, 1.7))
        assert d < 1.949 * math.sqrt(1.0 / N)

    def test_gamma_matches_scipy(self):
        b = sample(spec_of("gamma", r=2.3, lam=1.5), N, STREAM)
        d = ks_one_sample(b, lambda x: scipy.stats.gamma.cdf(x, 2.3, scale=1 / 1.5))
        assert d < 1.949 * math.sqrt(1.0 / N)

    @pytest.mark.parametrize("alpha", [0.6, 2.0, -1.2])
    def test_gen_gamma_matches_scipy(self, alpha):
        b = sample(spec_of("gen_gamma", r=1.4, alpha=alpha, lam=1.0), N, STREAM)
        d = ks_one_sample(b, lambda x: scipy.stats.gengamma.cdf(x, 1.4, alpha))
        assert d < 1.949 * math.sqrt(1.0 / N)

    def test_exp_power_cdf(self):
        nu = 1.8
        b = sample(spec_of("exp_power", nu=nu), N, STREAM)
        d = ks_one_sample(b, lambda x: sc.gammainc(nu, np.maximum(x, 0.0) ** (1 / nu)))
        assert d < 1.949 * math.sqrt(1.0 / N)

    def test_neg_binom_support_and_mean(self):
        nu, p = 2.0, 0.25
        b = sample(spec_of("neg_binom", nu=nu, p=p), N, STREAM)
        v = b.values
        assert v.min() >= 1.0
        assert np.all(v == np.round(v))
        want_mean = 1.0 + nu * (1.0 - p) / p
        assert np.mean(v) == pytest.approx(want_mean, rel=0.02)

    def test_neg_binom_pmf(self):
        """Counts on {1,2,...} follow a shifted negative binomial pmf."""
        nu, p = 1.5, 0.4
        v = sample(spec_of("neg_binom", nu=nu, p=p), N, STREAM).values
        for k in (1, 2, 3, 5, 8):
            want = scipy.stats.nbinom.pmf(k - 1, nu, p)
            got = float(np.mean(v == k))
            sd = math.sqrt(want * (1 - want) / N)
            assert abs(got - want) < 5 * sd + 1e-12

    def test_sample_basic_rejects_structured(self):
        with pytest.raises(DomainError):
            sample_basic(spec_of("linnik", alpha=1.0), 10, STREAM)


class TestStable:
    @pytest.mark.parametrize("alpha", [0.5, 1.2, 1.95, 2.0])
    def test_symmetric_ecf(self, alpha):
        b = sample_stable(StableParams(alpha), N, STREAM)
        cf = analytic_cf(DistSpec("stable", StableParams(alpha)))
        assert ecf_distance(b, cf) < 4.0 / math.sqrt(N)

    def test_alpha_one_is_cauchy(self):
        b = sample_stable(StableParams(1.0), N, STREAM)
        d = ks_one_sample(b, scipy.stats.cauchy.cdf)
        assert d < 1.949 * math.sqrt(1.0 / N)

    def test_alpha_two_is_root_two_normal(self):
        b = sample_stable(StableParams(2.0), N, STREAM)
        d = ks_one_sample(b, lambda x: scipy.stats.norm.cdf(x, scale=math.sqrt(2)))
        assert d < 1.949 * math.sqrt(1.0 / N)

    @pytest.mark.parametrize("alpha", [0.3, 0.8, 1.0])
    def test_one_sided_lst(self, alpha):
        b = sample_stable(StableParams(alpha, "one_sided"), N, STREAM)
        lst = analytic_lst(DistSpec("stable", StableParams(alpha, "one_sided")))
        assert lst_distance(b, lst) < 1.5 / math.sqrt(N)

    def test_one_sided_half_is_levy(self):
        b = sample_stable(StableParams(0.5, "one_sided"), N, STREAM)
        d = ks_one_sample(b, lambda x: sc.erfc(1.0 / (2.0 * np.sqrt(x))))
        assert d < 1.949 * math.sqrt(1.0 / N)

    def test_one_sided_alpha_one_degenerates(self):
        b = sample_stable(StableParams(1.0, "one_sided"), 100, STREAM)
        np.testing.assert_array_equal(b.values, np.ones(100))

    def test_positive_support(self):
        b = sample_stable(StableParams(0.4, "one_sided"), 10_000, STREAM)
        assert b.values.min() > 0


class TestStableRatio:
    def test_reciprocal_same_law(self):
        a = sample_stable_ratio(0.6, N, RandomStream(5, 0))
        b = sample_stable_ratio(0.6, N, RandomStream(5, 50))
        d = ks_two_sample(a.values, 1.0 / b.values)
        assert d < ks_two_sample_threshold(N, N)

    def test_matches_closed_density(self):
        from scipy import integrate

        from htmix.special import stable_ratio_density

        delta = 0.7
        b = sample_stable_ratio(delta, 50_000, STREAM)

        def cdf(x):
            val, _ = integrate.quad(
                lambda u: stable_ratio_density(delta, u), 0.0, x, limit=200
            )
            return val

        xs = np.quantile(b.values, [0.1, 0.3, 0.5, 0.7, 0.9])
        emp = np.searchsorted(np.sort(b.values), xs, side="right") / b.n
        for x, e in zip(xs, emp):
            assert abs(cdf(float(x)) - e) < 0.01

    def test_delta_one_rejected(self):
        with pytest.raises(DomainError):
            sample_stable_ratio(1.0, 10, STREAM)


class TestZMix:
    def test_support_above_mu(self):
        b = sample_z(ZParams(0.4, 2.0), 10_000, STREAM)
        assert b.values.min() >= 2.0

    def test_degenerate_r_one(self):
        b = sample_z(ZParams(1.0, 3.0), 100, STREAM)
        np.testing.assert_array_equal(b.values, np.full(100, 3.0))

    def test_matches_mixing_density(self):
        from scipy import integrate

        from htmix.special import gleser_mixing_density

        r, mu = 0.3, 1.0
        b = sample_z(ZParams(r, mu), 50_000, STREAM)

        def cdf(x):
            val, _ = integrate.quad(
                lambda u: gleser_mixing_density(r, mu, u), mu, x, limit=200
            )
            return val

        xs = np.quantile(b.values, [0.2, 0.5, 0.8])
        emp = np.searchsorted(np.sort(b.values), xs, side="right") / b.n
        for x, e in zip(xs, emp):
            assert abs(cdf(float(x)) - e) < 0.01


class TestMittagLefflerFamily:
    @pytest.mark.parametrize("method", METHODS["mittag_leffler"])
    def test_lst(self, method):
        b = sample_mittag_leffler(MLParams(0.6), N, STREAM, method=method)
        lst = analytic_lst(DistSpec("mittag_leffler", MLParams(0.6)))
        assert lst_distance(b, lst) < 1.5 / math.sqrt(N)

    def test_methods_agree(self):
        a = sample_mittag_leffler(MLParams(0.4), N, RandomStream(8, 0))
        b = sample_mittag_leffler(
            MLParams(0.4), N, RandomStream(8, 7), method="exp_ratio"
        )
        assert ks_two_sample(a, b) < ks_two_sample_threshold(N, N)

    def test_delta_one_is_exponential(self):
        b = sample_mittag_leffler(MLParams(1.0), N, STREAM)
        d = ks_one_sample(b, scipy.stats.expon.cdf)
        assert d < 1.949 * math.sqrt(1.0 / N)

    def test_nu_must_be_one(self):
        with pytest.raises(DomainError):
            sample(spec_of("mittag_leffler", delta=0.5, nu=2.0), 10, STREAM)


class TestGenMittagLeffler:
    @pytest.mark.parametrize("delta,nu", [(0.5, 0.7), (0.8, 2.5), (1.0, 3.0)])
    def test_lst(self, delta, nu):
        b = sample_gen_mittag_leffler(MLParams(delta, nu), N, STREAM)
        lst = analytic_lst(DistSpec("gen_mittag_leffler", MLParams(delta, nu)))
        assert lst_distance(b, lst) < 1.5 / math.sqrt(N)

    def test_nu_one_matches_ordinary(self):
        a = sample_gen_mittag_leffler(MLParams(0.6, 1.0), N, RandomStream(3, 0))
        b = sample_mittag_leffler(MLParams(0.6), N, RandomStream(3, 9))
        assert ks_two_sample(a, b) < ks_two_sample_threshold(N, N)

    def test_delta_one_is_gamma(self):
        b = sample_gen_mittag_leffler(MLParams(1.0, 2.5), N, STREAM)
        d = ks_one_sample(b, lambda x: scipy.stats.gamma.cdf(x, 2.5))
        assert d < 1.949 * math.sqrt(1.0 / N)


class TestLinnikFamily:
    @pytest.mark.parametrize("method", METHODS["linnik"])
    def test_ecf(self, method):
        b = sample_linnik(LinnikParams(1.5), N, STREAM, method=method)
        cf = analytic_cf(DistSpec("linnik", LinnikParams(1.5)))
        assert ecf_distance(b, cf) < 4.0 / math.sqrt(N)

    def test_alpha_two_is_laplace(self):
        b = sample_linnik(LinnikParams(2.0), N, STREAM)
        d = ks_one_sample(b, scipy.stats.laplace.cdf)
        assert d < 1.949 * math.sqrt(1.0 / N)

    def test_methods_agree_pairwise(self):
        batches = [
            sample_linnik(LinnikParams(1.2), N, RandomStream(4, 10 * i), method=m)
            for i, m in enumerate(METHODS["linnik"])
        ]
        thr = ks_two_sample_threshold(N, N)
        for i in range(len(batches)):
            for j in range(i + 1, len(batches)):
                assert ks_two_sample(batches[i], batches[j]) < thr

    def test_nu_must_be_one(self):
        with pytest.raises(DomainError):
            sample(spec_of("linnik", alpha=1.0, nu=2.0), 10, STREAM)


class TestGenLinnik:
    @pytest.mark.parametrize(
        "method", ["stable_gamma", "normal_genml", "stable_genml"]
    )
    def test_ecf(self, method):
        p = LinnikParams(1.5, 2.0)
        b = sample_gen_linnik(p, N, STREAM, method=method)
        cf = analytic_cf(DistSpec("gen_linnik", p))
        assert ecf_distance(b, cf) < 4.0 / math.sqrt(N)

    def test_linnik_z_method(self):
        p = LinnikParams(1.5, 0.8)
        b = sample_gen_linnik(p, N, STREAM, method="linnik_z")
        cf = analytic_cf(DistSpec("gen_linnik", p))
        assert ecf_distance(b, cf) < 4.0 / math.sqrt(N)

    def test_nu_one_matches_linnik(self):
        a = sample_gen_linnik(LinnikParams(1.0, 1.0), N, RandomStream(6, 0))
        b = sample_linnik(LinnikParams(1.0), N, RandomStream(6, 11))
        assert ks_two_sample(a, b) < ks_two_sample_threshold(N, N)

    def test_alpha_two_is_normal_gamma_mixture(self):
        nu = 3.0
        a = sample_gen_linnik(LinnikParams(2.0, nu), N, RandomStream(7, 0))
        rng = RandomStream(7, 21).generator()
        direct = rng.standard_normal(N) * np.sqrt(2.0 * rng.standard_gamma(nu, N))
        assert ks_two_sample(a.values, direct) < ks_two_sample_threshold(N, N)


class TestTransformTables:
    def test_cf_only_for_symmetric_families(self):
        assert analytic_cf(spec_of("exponential")) is None
        assert analytic_cf(spec_of("stable", alpha=0.5, theta="one_sided")) is None
        assert analytic_cf(spec_of("normal"))(0.0) == 1.0

    def test_lst_only_for_nonnegative_families(self):
        assert analytic_lst(spec_of("normal")) is None
        assert analytic_lst(spec_of("stable", alpha=1.5)) is None
        assert analytic_lst(spec_of("gamma", r=2.0, lam=3.0))(0.0) == 1.0


class TestDispatcherGuards:
    def test_spec_type(self):
        with pytest.raises(DomainError):
            sample("normal", 10, STREAM)

    def test_n_validation(self):
        with pytest.raises(DomainError):
            sample(spec_of("normal"), 0, STREAM)
        with pytest.raises(DomainError):
            sample(spec_of("normal"), 2.5, STREAM)

    def test_stream_type(self):
        with pytest.raises(DomainError):
            sample(spec_of("normal"), 10, np.random.default_rng(0))


@settings(max_examples=25, deadline=None)
@given(
    alpha=st.floats(min_value=0.05, max_value=2.0),
    seed=st.integers(min_value=0, max_value=2**32),
)
def test_symmetric_stable_always_finite(alpha, seed):
    """Log-form sampler stays finite at extreme exponents."""
    b = sample_stable(StableParams(alpha), 500, RandomStream(seed, 0))
    assert np.all(np.isfinite(b.values))


@settings(max_examples=25, deadline=None)
@given(
    alpha=st.floats(min_value=0.05, max_value=1.0),
    seed=st.integers(min_value=0, max_value=2**32),
)
def test_one_sided_stable_finite_and_positive(alpha, seed):
    b = sample_stable(StableParams(alpha, "one_sided"), 500, RandomStream(seed, 0))
    assert np.all(np.isfinite(b.values))
    assert np.all(b.values > 0)


@settings(max_examples=20, deadline=None)
@given(
    family=st.sampled_from(sorted(FAMILIES)),
    n=st.integers(min_value=1, max_value=64),
)
def test_every_family_draws_requested_length(family, n):
    params = {
        "weibull": {"gamma": 1.3},
        "gamma": {"r": 1.2},
        "gen_gamma": {"r": 1.2, "alpha": -0.7},
        "exp_power": {"nu": 0.9},
        "neg_binom": {"nu": 1.5, "p": 0.3},
        "stable": {"alpha": 1.4},
        "stable_ratio": {"delta": 0.5},
        "z_mix": {"r": 0.5},
        "mittag_leffler": {"delta": 0.8},
        "gen_mittag_leffler": {"delta": 0.8, "nu": 2.0},
        "linnik": {"alpha": 1.1},
        "gen_linnik": {"alpha": 1.1, "nu": 0.6},
    }.get(family)
    b = sample(DistSpec(family, params), n, RandomStream(0, 0))
    assert len(b) == n
    assert np.all(np.isfinite(b.values))
