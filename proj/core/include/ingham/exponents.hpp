#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace ingham {

/// Finite, strictly increasing window of real frequencies together with the
/// weak-gap parameter gamma and the classification threshold gamma0.
///
/// Construction only checks structure (non-empty, finite, 0 < gamma0 <= gamma);
/// the gap condition itself is reported by validate_weak_gap().
class ExponentSequence {
public:
    ExponentSequence(std::vector<double> omegas, double gamma, double gamma0);
    ExponentSequence(std::vector<double> omegas, double gamma)
        : ExponentSequence(std::move(omegas), gamma, gamma) {}

    std::span<const double> omegas() const { return omegas_; }
    double operator[](std::size_t k) const { return omegas_[k]; }
    std::size_t size() const { return omegas_.size(); }
    double gamma() const { return gamma_; }
    double gamma0() const { return gamma0_; }

    ExponentSequence translated(double shift) const;
    ExponentSequence with_gamma0(double gamma0) const;

private:
    std::vector<double> omegas_;
    double gamma_;
    double gamma0_;
};

struct GapViolation {
    enum class Kind { NotIncreasing, WeakGap };
    Kind kind;
    std::size_t first;
    std::size_t second;
    double separation;
};

struct GapValidation {
    std::vector<GapViolation> violations;
    bool ok() const { return violations.empty(); }
};

/// Checks strict monotonicity and omega[k+2] - omega[k] >= 2 gamma.
GapValidation validate_weak_gap(const ExponentSequence& seq);

enum class BoundaryPolicy {
    /// A missing neighbour gap counts as +infinity (hence >= gamma0).
    MissingGapIsInfinite,
};

/// Partition of the indices into A1 singletons, A2 chain leads and partners.
struct GapClassification {
    std::vector<std::size_t> a1;
    std::vector<std::size_t> a2_leads;
    std::map<std::size_t, std::size_t> partners;  // lead -> lead + 1
    BoundaryPolicy boundary_policy = BoundaryPolicy::MissingGapIsInfinite;
    std::size_t sequence_size = 0;

    enum class Role { A1, Lead, Partner };
    Role role(std::size_t k) const;
};

/// Classifies every index by its two neighbour gaps against gamma0.
/// Throws ValidationError("weak_gap") when the sequence fails validation.
GapClassification classify(const ExponentSequence& seq);

struct BandMask {
    std::vector<bool> admissible;
    double threshold = 0.0;  // pi/delta - gamma/2

    std::size_t active_count() const;
    std::vector<std::size_t> active_indices() const;
};

/// admissible[k] = |omega_k| <= pi/delta - gamma/2.
/// Throws ValidationError("no_admissible_band") when the threshold is not positive.
BandMask band_mask(const ExponentSequence& seq, double delta);

/// A mask with every index admissible (no band restriction).
BandMask full_mask(const ExponentSequence& seq);

nlohmann::json to_json(const ExponentSequence& seq);
ExponentSequence sequence_from_json(const nlohmann::json& j);
nlohmann::json to_json(const GapValidation& v);
nlohmann::json to_json(const GapClassification& c, const ExponentSequence& seq);
nlohmann::json to_json(const BandMask& m);

} // namespace ingham
