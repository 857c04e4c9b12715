#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "generators.hpp"
#include "ingham/error.hpp"
#include "ingham/exponents.hpp"

using namespace ingham;
using ingham::testing::Rng;

namespace {

bool contains(const std::vector<std::size_t>& v, std::size_t k) {
    return std::find(v.begin(), v.end(), k) != v.end();
}

} // namespace

TEST_CASE("validate_weak_gap: spec examples") {
    CHECK(validate_weak_gap(ExponentSequence({-2, -1, 0, 1, 2}, 1.0)).ok());
    CHECK(validate_weak_gap(ExponentSequence({0, 0.1, 2, 2.1, 4}, 1.0)).ok());

    const auto bad = validate_weak_gap(ExponentSequence({0, 0.1, 0.2}, 1.0));
    REQUIRE(bad.violations.size() == 1);
    CHECK(bad.violations[0].kind == GapViolation::Kind::WeakGap);
    CHECK(bad.violations[0].first == 0);
    CHECK(bad.violations[0].second == 2);
    CHECK(bad.violations[0].separation == doctest::Approx(0.2));
}

TEST_CASE("validate_weak_gap reports every violating pair and duplicates") {
    const auto v = validate_weak_gap(ExponentSequence({0, 0.5, 1.0, 1.5}, 1.0));
    CHECK(v.violations.size() == 2);  // (0,2) and (1,3)

    const auto dup = validate_weak_gap(ExponentSequence({0, 0, 3}, 1.0));
    REQUIRE_FALSE(dup.ok());
    CHECK(dup.violations[0].kind == GapViolation::Kind::NotIncreasing);
}

TEST_CASE("structural errors") {
    CHECK_THROWS_AS(ExponentSequence({}, 1.0), StructuralError);
    CHECK_THROWS_AS(ExponentSequence({0.0, std::numeric_limits<double>::quiet_NaN()}, 1.0), StructuralError);
    CHECK_THROWS_AS(ExponentSequence({0.0, std::numeric_limits<double>::infinity()}, 1.0), StructuralError);
    CHECK_THROWS_AS(ExponentSequence({0.0}, 1.0, 2.0), StructuralError);
    CHECK_THROWS_AS(ExponentSequence({0.0}, 1.0, 0.0), StructuralError);
    CHECK_THROWS_AS(ExponentSequence({0.0}, -1.0), StructuralError);
}

TEST_CASE("classify: uniform integers are all A1") {
    const auto cls = classify(ExponentSequence({-2, -1, 0, 1, 2}, 1.0, 1.0));
    CHECK(cls.a1.size() == 5);
    CHECK(cls.a2_leads.empty());
    CHECK(cls.partners.empty());
}

TEST_CASE("classify: alternating chain") {
    const auto cls = classify(ExponentSequence({0, 0.1, 2, 2.1, 4}, 1.0, 1.0));
    CHECK(cls.a2_leads == std::vector<std::size_t>{0, 2});
    CHECK(cls.partners.at(0) == 1);
    CHECK(cls.partners.at(2) == 3);
    CHECK(cls.a1 == std::vector<std::size_t>{4});
    CHECK(cls.role(1) == GapClassification::Role::Partner);
}

TEST_CASE("classify: the (0, 0.5, 1.7, 3.4) example") {
    // With gamma = 1 the sequence fails the weak gap (1.7 - 0 < 2), so the
    // classification must refuse it and carry the validation report.
    const ExponentSequence seq({0, 0.5, 1.7, 3.4}, 1.0, 0.6);
    try {
        classify(seq);
        FAIL("expected a weak_gap error");
    } catch (const ValidationError& e) {
        CHECK(e.kind() == "weak_gap");
        CHECK(e.details().at("violations").size() == 1);
    }
    // The stated roles hold for the largest gamma the sequence admits (0.85).
    const auto cls = classify(ExponentSequence({0, 0.5, 1.7, 3.4}, 0.85, 0.6));
    CHECK(cls.a2_leads == std::vector<std::size_t>{0});
    CHECK(cls.partners.at(0) == 1);
    CHECK(cls.a1 == std::vector<std::size_t>{2, 3});
}

TEST_CASE("band_mask examples") {
    const ExponentSequence seq({-3, -2, -1, 0, 1, 2, 3}, 1.0);
    const auto m1 = band_mask(seq, pi / 4);
    CHECK(m1.active_count() == 7);
    CHECK(m1.threshold == doctest::Approx(3.5));

    const auto m2 = band_mask(seq, pi / 2);
    CHECK(m2.active_indices() == std::vector<std::size_t>{2, 3, 4});

    try {
        band_mask(ExponentSequence({0.0}, 4.0), pi);
        FAIL("expected no_admissible_band");
    } catch (const ValidationError& e) {
        CHECK(e.kind() == "no_admissible_band");
    }
}

TEST_CASE("property: every index of a random weak-gap sequence gets exactly one role") {
    Rng rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        const double gamma = ingham::testing::uniform(rng, 0.3, 3.0);
        const double gamma0 = gamma * ingham::testing::uniform(rng, 0.2, 1.0);
        const auto seq = ingham::testing::random_weak_gap_sequence(rng, 3 + trial % 20, gamma, gamma0);
        REQUIRE(validate_weak_gap(seq).ok());
        const auto cls = classify(seq);
        std::size_t counted = 0;
        for (std::size_t k = 0; k < seq.size(); ++k) {
            const int memberships = int(contains(cls.a1, k)) + int(contains(cls.a2_leads, k)) +
                                    int(std::any_of(cls.partners.begin(), cls.partners.end(),
                                                    [&](const auto& p) { return p.second == k; }));
            CHECK(memberships == 1);
            counted += memberships;
        }
        CHECK(counted == seq.size());
        for (const auto& [lead, partner] : cls.partners) CHECK(partner == lead + 1);
    }
}

TEST_CASE("property: classification is translation invariant") {
    Rng rng(12);
    for (int trial = 0; trial < 100; ++trial) {
        const auto seq = ingham::testing::random_weak_gap_sequence(rng, 12, 1.0, 0.7);
        const double s = ingham::testing::uniform(rng, -50.0, 50.0);
        const auto a = classify(seq);
        const auto b = classify(seq.translated(s));
        CHECK(a.a1 == b.a1);
        CHECK(a.a2_leads == b.a2_leads);
        CHECK(a.partners == b.partners);
    }
}

TEST_CASE("property: band mask symmetric on symmetric sequences and monotone") {
    Rng rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> half;
        double pos = ingham::testing::uniform(rng, 0.5, 1.0);
        for (int k = 0; k < 6; ++k) {
            half.push_back(pos);
            pos += ingham::testing::uniform(rng, 1.0, 2.0);
        }
        std::vector<double> w;
        for (auto it = half.rbegin(); it != half.rend(); ++it) w.push_back(-*it);
        w.insert(w.end(), half.begin(), half.end());
        const ExponentSequence seq(w, 1.0);
        const double delta = ingham::testing::uniform(rng, 0.2, 1.5);
        const auto mask = band_mask(seq, delta);
        const std::size_t n = w.size();
        for (std::size_t k = 0; k < n; ++k) CHECK(mask.admissible[k] == mask.admissible[n - 1 - k]);
        // false only on a prefix and a suffix
        const auto act = mask.active_indices();
        if (!act.empty()) CHECK(act.back() - act.front() + 1 == act.size());
    }
}

TEST_CASE("JSON round trip") {
    const ExponentSequence seq({0, 0.1, 2, 2.1, 4}, 1.0, 0.8);
    const auto back = sequence_from_json(to_json(seq));
    CHECK(back.size() == seq.size());
    CHECK(back.gamma() == seq.gamma());
    CHECK(back.gamma0() == seq.gamma0());
    for (std::size_t k = 0; k < seq.size(); ++k) CHECK(back[k] == seq[k]);
}
