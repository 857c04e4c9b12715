#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "generators.hpp"
#include "ingham/error.hpp"
#include "ingham/observability.hpp"

using namespace ingham;
using ingham::testing::Rng;
using ingham::testing::uniform;

namespace {

const double a_sqrt2 = std::sqrt(2.0) / 2.0;

CoupledSystem string_at_caps(double a, double delta) {
    CoupledSystem sys;
    sys.kind = SystemKind::String;
    sys.a = a;
    sys.left.push_back({1, 1.0, 0.0});
    sys.right.push_back({1, 1.0, 0.0});
    const int nl = static_cast<int>(std::floor(mode_cap(sys, Side::Left, delta)));
    const int nr = static_cast<int>(std::floor(mode_cap(sys, Side::Right, delta)));
    sys.left.clear();
    sys.right.clear();
    for (int n = 1; n <= nl; ++n) sys.left.push_back({n, 0.0, 0.0});
    for (int m = 1; m <= nr; ++m) sys.right.push_back({m, 0.0, 0.0});
    return sys;
}

CoupledSystem beam_at_caps(double a, double gamma, double delta) {
    CoupledSystem sys;
    sys.kind = SystemKind::Beam;
    sys.a = a;
    sys.gamma = gamma;
    const int nl = static_cast<int>(std::floor(mode_cap(sys, Side::Left, delta)));
    const int nr = static_cast<int>(std::floor(mode_cap(sys, Side::Right, delta)));
    for (int n = 1; n <= nl; ++n) sys.left.push_back({n, 0.0, 0.0});
    for (int m = 1; m <= nr; ++m) sys.right.push_back({m, 0.0, 0.0});
    return sys;
}

// second-order one-sided differences of the modal solution at x = a -+ 0
cplx jump_by_finite_differences(const CoupledSystem& sys, double t) {
    const double h = 1e-5;
    const double a = sys.a;
    const cplx left = (3.0 * displacement(sys, a, t) - 4.0 * displacement(sys, a - h, t) + displacement(sys, a - 2 * h, t)) /
                      (2.0 * h);
    const cplx right = (-3.0 * 0.0 + 4.0 * displacement(sys, a + h, t) - displacement(sys, a + 2 * h, t)) / (2.0 * h);
    return left - right;
}

double relative_amplitude_error(const CoupledSystem& truth, const CoupledSystem& got) {
    double err = 0.0, norm = 0.0;
    auto side = [&](const std::vector<Mode>& a, const std::vector<Mode>& b) {
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            REQUIRE(a[i].n == b[i].n);
            err += std::norm(a[i].plus - b[i].plus) + std::norm(a[i].minus - b[i].minus);
            norm += std::norm(a[i].plus) + std::norm(a[i].minus);
        }
    };
    side(truth.left, got.left);
    side(truth.right, got.right);
    return std::sqrt(err / norm);
}

} // namespace

TEST_CASE("assemble_exponents examples") {
    CoupledSystem sys;
    sys.a = a_sqrt2;
    for (int n = 1; n <= 3; ++n) {
        sys.left.push_back({n, 1.0, 0.0});
        sys.right.push_back({n, 1.0, 0.0});
    }
    const auto tagged = assemble_exponents(sys);
    CHECK(tagged.seq.size() == 12);
    for (std::size_t k = 0; k + 1 < tagged.seq.size(); ++k) CHECK(tagged.seq[k] < tagged.seq[k + 1]);
    CHECK(tagged.seq.gamma() == doctest::Approx(0.5 * pi / (1.0 - a_sqrt2) < 0.5 * pi / a_sqrt2
                                                    ? 0.5 * pi / (1.0 - a_sqrt2)
                                                    : 0.5 * pi / a_sqrt2));

    sys.a = 0.5;
    try {
        assemble_exponents(sys);
        FAIL("expected junction_resonant");
    } catch (const ValidationError& e) {
        CHECK(e.kind() == "junction_resonant");
    }

    CoupledSystem beam;
    beam.kind = SystemKind::Beam;
    beam.a = a_sqrt2;
    beam.gamma = 5.0;
    for (int n = 1; n <= 2; ++n) {
        beam.left.push_back({n, 1.0, 0.0});
        beam.right.push_back({n, 1.0, 0.0});
    }
    const auto bt = assemble_exponents(beam);
    CHECK(bt.seq.size() == 8);
    CHECK(bt.seq[7] == doctest::Approx(std::pow(2 * pi / (1.0 - a_sqrt2), 2)));
    CoupledSystem no_gamma = beam;
    no_gamma.gamma.reset();
    CHECK_THROWS_AS(assemble_exponents(no_gamma), StructuralError);
}

TEST_CASE("property: string exponents pass the weak gap at the caps") {
    for (double a : {a_sqrt2, 1.0 / std::sqrt(3.0), (std::sqrt(5.0) - 1.0) / 2.0}) {
        for (double delta : {0.2, 0.1, 0.05, 0.02, 0.01}) {
            const auto sys = string_at_caps(a, delta);
            const auto tagged = assemble_exponents(sys);
            CHECK(validate_weak_gap(tagged.seq).ok());
            CHECK(mode_cap_violations(sys, delta).empty());
        }
    }
}

TEST_CASE("trace_jump_sum examples") {
    CoupledSystem sys;
    sys.a = 0.5;
    sys.left.push_back({1, 1.0, 1.0});
    const auto jump = trace_jump_sum(sys);
    REQUIRE(jump.size() == 2);
    CHECK(jump.sequence()[0] == doctest::Approx(-2 * pi));
    CHECK(jump.coeffs()[0] == cplx(-2 * pi, 0.0));
    CHECK(jump.coeffs()[1] == cplx(-2 * pi, 0.0));

    CoupledSystem right;
    right.a = 0.3;
    right.right.push_back({1, 2.0, 0.0});
    const auto rj = trace_jump_sum(right);
    CHECK(rj.coeffs()[1] == cplx(-(pi / 0.7) * 2.0, 0.0));
    CHECK(rj.coeffs()[0] == cplx{});
}

TEST_CASE("property: trace jump matches finite differences of the modal solution") {
    Rng rng(71);
    for (int trial = 0; trial < 30; ++trial) {
        auto sys = string_at_caps(a_sqrt2, 0.1);
        if (trial % 2) sys = beam_at_caps(a_sqrt2, 10.0, 0.01);
        sys = randomize_amplitudes(sys, rng);
        const auto jump = trace_jump_sum(sys);
        for (int i = 0; i < 5; ++i) {
            const double t = uniform(rng, -2.0, 2.0);
            const cplx exact = eval(jump, t);
            const cplx fd = jump_by_finite_differences(sys, t);
            double scale = 0.0;
            for (auto c : jump.coeffs()) scale += std::abs(c);
            CHECK(std::abs(exact - fd) < 1e-5 * scale);
        }
    }
}

TEST_CASE("observe") {
    const SamplingGrid grid(0.1, 20, 0.3);
    auto sys = string_at_caps(a_sqrt2, 0.1);
    const auto zero = observe(sys, grid);
    CHECK(zero.samples.size() == 41);
    for (auto s : zero.samples) CHECK(s == cplx{});

    CoupledSystem single;
    single.a = a_sqrt2;
    single.left.push_back({2, cplx(0.3, 0.4), 0.0});
    const auto tr = observe(single, grid);
    for (auto s : tr.samples) CHECK(std::abs(s) == doctest::Approx(0.5 * 2 * pi / a_sqrt2).epsilon(1e-14));

    Rng rng(72);
    for (int i = 0; i < 20; ++i) {
        const auto data = randomize_amplitudes(sys, rng);
        const auto t = observe(data, grid);
        CHECK(t.energy() == doctest::Approx(sampled_energy(trace_jump_sum(data), grid)).epsilon(1e-14));
    }

    auto too_many = sys;
    too_many.left.push_back({9, 1.0, 0.0});
    try {
        observe(too_many, grid);
        FAIL("expected mode_cap");
    } catch (const ValidationError& e) {
        CHECK(e.kind() == "mode_cap");
        CHECK(e.details().at("modes").size() == 1);
        CHECK(e.details().at("modes")[0].at("n") == 9);
    }
    const auto csv = trace_to_csv(tr);
    CHECK(csv.rfind("j,t,re,im\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 42);
}

TEST_CASE("sobolev_norm examples") {
    CoupledSystem sys;
    sys.a = 0.4;
    sys.left.push_back({3, 0.5, 0.5});
    const double k = 3 * pi / 0.4;
    CHECK(sobolev_norm(sys, 0.0, InitialDatum::U0) == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(sobolev_norm(sys, -1.0, InitialDatum::U0) == doctest::Approx(0.2 / (k * k)).epsilon(1e-14));
    CHECK(sobolev_norm(sys, 0.0, InitialDatum::U1) == 0.0);

    sys.left[0] = {3, 1.0, 0.0};
    CHECK(sobolev_norm(sys, -1.0, InitialDatum::U1) == doctest::Approx(0.2).epsilon(1e-14));  // w^2 |1|^2 / k^2

    CoupledSystem right;
    right.a = 0.4;
    right.right.push_back({1, 1.0, 0.0});
    CHECK(sobolev_norm(right, 0.0, InitialDatum::U0) == doctest::Approx(0.3).epsilon(1e-15));

    CoupledSystem beam;
    beam.kind = SystemKind::Beam;
    beam.a = 0.4;
    beam.gamma = 1.0;
    beam.left.push_back({1, 1.0, 0.0});
    const double lam = pi / 0.4;
    CHECK(sobolev_norm(beam, 0.5, InitialDatum::U0) == doctest::Approx(0.2 * lam).epsilon(1e-14));

    CoupledSystem zero = sys;
    zero.left[0] = {3, 0.0, 0.0};
    CHECK(sobolev_norm(zero, -1.0, InitialDatum::U0) == 0.0);
}

TEST_CASE("verify_observability: single mode against a closed-form 2x2 pencil") {
    CoupledSystem sys;
    sys.a = a_sqrt2;
    sys.left.push_back({2, 1.0, 0.0});
    const SamplingGrid grid(0.1, 20);
    const double eps = 0.1;
    ObservabilityOptions opt;
    opt.trials = 0;
    const auto rep = verify_observability(sys, grid, eps, opt);

    // numerator (a/2)[k^{-2 eps}|p + m|^2 + k^{-2-2eps} w^2 |p - m|^2], denominator
    // delta W^2 [(2J+1)(|p|^2 + |m|^2) + 2 Re(p conj(m) D(2 w delta))]
    const double k = 2 * pi / a_sqrt2;
    const double w = k;
    const double A0 = 0.5 * a_sqrt2 * std::pow(k, -2 * eps);
    const double A1 = 0.5 * a_sqrt2 * std::pow(k, -2 - 2 * eps) * w * w;
    const double W2 = k * k;
    const double n = 41;
    double D = 0.0;
    for (int j = -20; j <= 20; ++j) D += std::cos(2 * w * 0.1 * j);
    // S = 0.1 W^2 [[n, D], [D, n]] in the (plus, minus) basis; N = [[A0+A1, A0-A1], [A0-A1, A0+A1]].
    // Both are diagonal in the (1, 1), (1, -1) basis.
    const double l_sym = 0.1 * W2 * (n + D) / (2 * A0);
    const double l_anti = 0.1 * W2 * (n - D) / (2 * A1);
    const double lmin = std::min(l_sym, l_anti);
    CHECK(rep.pencil_min_eig == doctest::Approx(lmin).epsilon(1e-12));
    CHECK(rep.C_pencil == doctest::Approx(1.0 / lmin).epsilon(1e-12));
    CHECK(rep.C_empirical == 0.0);
}

TEST_CASE("verify_observability: empirical ratios never exceed the pencil supremum") {
    const auto sys = string_at_caps(a_sqrt2, 0.1);
    const SamplingGrid grid(0.1, 20);
    ObservabilityOptions opt;
    opt.trials = 200;
    opt.seed = 7;
    const auto rep = verify_observability(sys, grid, 0.1, opt);
    CHECK(rep.horizon_ok);
    CHECK_FALSE(rep.pencil_near_singular);
    CHECK(std::isfinite(rep.C_empirical));
    CHECK(rep.C_empirical <= rep.C_pencil * (1 + 1e-10));
    CHECK(rep.min_ratio <= rep.median_ratio);
    CHECK(rep.median_ratio <= rep.C_empirical);
    const auto again = verify_observability(sys, grid, 0.1, opt);
    CHECK(again.C_empirical == rep.C_empirical);
}

TEST_CASE("min_eig shrinks with the horizon") {
    const auto sys = string_at_caps(a_sqrt2, 0.1);
    ObservabilityOptions opt;
    opt.trials = 0;
    double previous = std::numeric_limits<double>::infinity();
    for (long J = 20; J >= 8; --J) {
        const auto rep = verify_observability(sys, SamplingGrid(0.1, J), 0.1, opt);
        CHECK(rep.pencil_min_eig < previous);
        previous = rep.pencil_min_eig;
        if (J * 0.1 <= horizon_threshold(sys)) CHECK_FALSE(rep.horizon_ok);
    }
    opt.strict_horizon = true;
    CHECK_THROWS_AS(verify_observability(sys, SamplingGrid(0.1, 10), 0.1, opt), ValidationError);
}

TEST_CASE("near-rational junction with a short horizon is flagged") {
    CoupledSystem sys;
    sys.a = 0.5 + 1e-9;
    for (int n = 1; n <= 3; ++n) {
        sys.left.push_back({n, 0.0, 0.0});
        sys.right.push_back({n, 0.0, 0.0});
    }
    ObservabilityOptions opt;
    opt.trials = 0;
    const auto rep = verify_observability(sys, SamplingGrid(0.1, 8), 0.1, opt);
    CHECK_FALSE(rep.horizon_ok);
    CHECK(rep.pencil_near_singular);
}

TEST_CASE("property: reconstruction round trip") {
    Rng rng(73);
    const auto strings = string_at_caps(a_sqrt2, 0.1);
    const SamplingGrid sgrid(0.1, 20, 0.05);
    const auto beams = beam_at_caps(a_sqrt2, 10.0, 0.01);
    const SamplingGrid bgrid(0.01, 40);
    for (int trial = 0; trial < 40; ++trial) {
        const bool beam = trial % 2;
        const auto data = randomize_amplitudes(beam ? beams : strings, rng);
        const auto& grid = beam ? bgrid : sgrid;
        const auto tagged = assemble_exponents(data);
        const auto rec = reconstruct(observe(data, grid), tagged);
        CHECK(rec.relative_residual < 1e-8);
        CHECK(relative_amplitude_error(data, rec.recovered) < 1e-6);
    }
}

TEST_CASE("reconstruction failure modes") {
    const auto sys = string_at_caps(a_sqrt2, 0.1);
    const auto tagged = assemble_exponents(sys);
    Rng rng(74);
    const auto data = randomize_amplitudes(sys, rng);
    try {
        reconstruct(observe(data, SamplingGrid(0.1, 5)), tagged);  // 11 samples, 16 exponents
        FAIL("expected rank_deficient");
    } catch (const ValidationError& e) {
        CHECK(e.kind() == "rank_deficient");
    }
    // pure noise: least squares still returns, with a residual
    ObservationTrace noise{SamplingGrid(0.1, 20), {}};
    for (int j = 0; j < 41; ++j) noise.samples.push_back(ingham::testing::random_complex(rng));
    const auto rec = reconstruct(noise, tagged);
    CHECK(rec.relative_residual > 0.1);
    CHECK(rec.relative_residual < 1.0);
}

TEST_CASE("JSON round trip") {
    auto sys = string_at_caps(a_sqrt2, 0.2);
    Rng rng(75);
    sys = randomize_amplitudes(sys, rng);
    const auto back = system_from_json(to_json(sys));
    CHECK(back.a == sys.a);
    CHECK(back.left.size() == sys.left.size());
    CHECK(back.left[0].plus == sys.left[0].plus);
    CHECK_THROWS_AS(system_from_json(nlohmann::json{{"kind", "plate"}, {"a", 0.5}}), StructuralError);
    CHECK_THROWS_AS(system_from_json(nlohmann::json{{"kind", "string"}, {"a", 1.5}, {"left", {{{"n", 1}}}}}),
                    StructuralError);
}
