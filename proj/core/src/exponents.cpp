#include "ingham/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ingham/error.hpp"
#include "ingham/numeric.hpp"

namespace ingham {

ExponentSequence::ExponentSequence(std::vector<double> omegas, double gamma, double gamma0)
    : omegas_(std::move(omegas)), gamma_(gamma), gamma0_(gamma0) {
    if (omegas_.empty()) throw StructuralError("exponent sequence is empty");
    for (std::size_t k = 0; k < omegas_.size(); ++k) {
        if (!std::isfinite(omegas_[k]))
            throw StructuralError("exponent " + std::to_string(k) + " is not finite");
    }
    if (!std::isfinite(gamma_) || gamma_ <= 0.0) throw StructuralError("gamma must be positive");
    if (!std::isfinite(gamma0_) || gamma0_ <= 0.0 || gamma0_ > gamma_)
        throw StructuralError("gamma0 must satisfy 0 < gamma0 <= gamma");
}

ExponentSequence ExponentSequence::translated(double shift) const {
    std::vector<double> out(omegas_);
    for (double& w : out) w += shift;
    return {std::move(out), gamma_, gamma0_};
}

ExponentSequence ExponentSequence::with_gamma0(double gamma0) const {
    return {omegas_, gamma_, gamma0};
}

GapValidation validate_weak_gap(const ExponentSequence& seq) {
    GapValidation out;
    const auto w = seq.omegas();
    for (std::size_t k = 0; k + 1 < w.size(); ++k) {
        if (!(w[k] < w[k + 1]))
            out.violations.push_back({GapViolation::Kind::NotIncreasing, k, k + 1, w[k + 1] - w[k]});
    }
    for (std::size_t k = 0; k + 2 < w.size(); ++k) {
        // the gap may hold with equality (e.g. string systems), so allow a few
        // ulps of rounding in the exponents themselves
        const double sep = w[k + 2] - w[k];
        const double slack = 8.0 * std::numeric_limits<double>::epsilon() *
                             std::max({std::abs(w[k]), std::abs(w[k + 2]), 2.0 * seq.gamma()});
        if (!(sep >= 2.0 * seq.gamma() - slack))
            out.violations.push_back({GapViolation::Kind::WeakGap, k, k + 2, sep});
    }
    return out;
}

GapClassification::Role GapClassification::role(std::size_t k) const {
    if (std::binary_search(a2_leads.begin(), a2_leads.end(), k)) return Role::Lead;
    if (k > 0 && partners.contains(k - 1)) return Role::Partner;
    return Role::A1;
}

GapClassification classify(const ExponentSequence& seq) {
    const auto report = validate_weak_gap(seq);
    if (!report.ok())
        throw ValidationError("weak_gap", "sequence violates the weak gap condition", to_json(report));

    constexpr double inf = std::numeric_limits<double>::infinity();
    const auto w = seq.omegas();
    const std::size_t n = w.size();
    const double g0 = seq.gamma0();

    GapClassification cls;
    cls.sequence_size = n;
    for (std::size_t k = 0; k < n; ++k) {
        const double left = k == 0 ? inf : w[k] - w[k - 1];
        const double right = k + 1 == n ? inf : w[k + 1] - w[k];
        if (left < g0) continue;  // partner of k - 1
        if (right >= g0) {
            cls.a1.push_back(k);
        } else {
            cls.a2_leads.push_back(k);
            cls.partners.emplace(k, k + 1);
        }
    }
    return cls;
}

std::size_t BandMask::active_count() const {
    return static_cast<std::size_t>(std::count(admissible.begin(), admissible.end(), true));
}

std::vector<std::size_t> BandMask::active_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < admissible.size(); ++k)
        if (admissible[k]) out.push_back(k);
    return out;
}

BandMask band_mask(const ExponentSequence& seq, double delta) {
    if (!std::isfinite(delta) || delta <= 0.0) throw StructuralError("delta must be positive");
    const double threshold = pi / delta - 0.5 * seq.gamma();
    if (!(threshold > 0.0)) {
        throw ValidationError("no_admissible_band", "no admissible band: pi/delta - gamma/2 <= 0",
                              {{"delta", delta}, {"gamma", seq.gamma()}, {"threshold", threshold}});
    }
    BandMask mask;
    mask.threshold = threshold;
    mask.admissible.reserve(seq.size());
    for (double w : seq.omegas()) mask.admissible.push_back(std::abs(w) <= threshold);
    return mask;
}

BandMask full_mask(const ExponentSequence& seq) {
    BandMask mask;
    mask.threshold = std::numeric_limits<double>::infinity();
    mask.admissible.assign(seq.size(), true);
    return mask;
}

nlohmann::json to_json(const ExponentSequence& seq) {
    return {{"omegas", std::vector<double>(seq.omegas().begin(), seq.omegas().end())},
            {"gamma", seq.gamma()},
            {"gamma0", seq.gamma0()}};
}

ExponentSequence sequence_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("omegas") || !j.contains("gamma"))
        throw StructuralError("exponent sequence needs \"omegas\" and \"gamma\"");
    try {
        auto omegas = j.at("omegas").get<std::vector<double>>();
        const double gamma = j.at("gamma").get<double>();
        const double gamma0 = j.value("gamma0", gamma);
        return {std::move(omegas), gamma, gamma0};
    } catch (const nlohmann::json::exception& e) {
        throw StructuralError(std::string("malformed exponent sequence: ") + e.what());
    }
}

nlohmann::json to_json(const GapValidation& v) {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& viol : v.violations) {
        list.push_back({{"kind", viol.kind == GapViolation::Kind::WeakGap ? "weak_gap" : "not_increasing"},
                        {"pair", {viol.first, viol.second}},
                        {"separation", viol.separation}});
    }
    return {{"ok", v.ok()}, {"violations", list}};
}

nlohmann::json to_json(const GapClassification& c, const ExponentSequence& seq) {
    nlohmann::json partners = nlohmann::json::array();
    for (const auto& [lead, partner] : c.partners)
        partners.push_back({{"lead", lead}, {"partner", partner}, {"gap", seq[partner] - seq[lead]}});
    return {{"a1", c.a1},
            {"a2_leads", c.a2_leads},
            {"partners", partners},
            {"boundary_policy", "missing_gap_is_infinite"}};
}

nlohmann::json to_json(const BandMask& m) {
    return {{"admissible", m.admissible},
            {"threshold", std::isfinite(m.threshold) ? nlohmann::json(m.threshold) : nlohmann::json(nullptr)},
            {"active_count", m.active_count()}};
}

} // namespace ingham
