#include "ingham/quadforms.hpp"

#include <string>

#include "ingham/error.hpp"

namespace ingham {

namespace {

void check_match(const GapClassification& cls, const ExponentSequence& seq) {
    if (cls.sequence_size != seq.size())
        throw StructuralError("classification was built for " + std::to_string(cls.sequence_size) +
                              " exponents, sequence has " + std::to_string(seq.size()));
    for (const auto& [lead, partner] : cls.partners)
        if (partner >= seq.size() || !(seq[partner] - seq[lead] < seq.gamma0()))
            throw StructuralError("classification does not match the sequence at index " + std::to_string(lead));
}

} // namespace

double q_form(const GapClassification& cls, const ExponentSequence& seq, std::span<const cplx> coeffs) {
    check_match(cls, seq);
    if (coeffs.size() != seq.size()) throw StructuralError("coefficient vector length does not match the sequence");
    CompensatedSum acc;
    for (std::size_t k : cls.a1) acc += std::norm(coeffs[k]);
    for (const auto& [k, k1] : cls.partners) {
        const double d = seq[k1] - seq[k];
        acc += std::norm(coeffs[k] + coeffs[k1]);
        acc += d * d * (std::norm(coeffs[k]) + std::norm(coeffs[k1]));
    }
    return acc.value();
}

double q_prime(const AugmentedExpSum& aug, const GapClassification& cls) {
    const auto& base = aug.base();
    return std::norm(aug.x_prime()) + q_form(cls, base.sequence(), base.coeffs());
}

HermitianMatrix q_matrix(const GapClassification& cls, const ExponentSequence& seq) {
    check_match(cls, seq);
    const auto n = static_cast<Eigen::Index>(seq.size());
    HermitianMatrix m = HermitianMatrix::Zero(n, n);
    for (std::size_t k : cls.a1) m(k, k) = 1.0;
    for (const auto& [k, k1] : cls.partners) {
        const double d = seq[k1] - seq[k];
        m(k, k) = 1.0 + d * d;
        m(k1, k1) = 1.0 + d * d;
        m(k, k1) = 1.0;
        m(k1, k) = 1.0;
    }
    return m;
}

HermitianMatrix q_matrix(const GapClassification& cls, const ExponentSequence& seq,
                         std::span<const std::size_t> active) {
    const HermitianMatrix full = q_matrix(cls, seq);
    const auto n = static_cast<Eigen::Index>(active.size());
    HermitianMatrix m(n, n);
    for (Eigen::Index a = 0; a < n; ++a)
        for (Eigen::Index b = 0; b < n; ++b) m(a, b) = full(active[a], active[b]);
    return m;
}

nlohmann::json matrix_to_json(const HermitianMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
        rows.push_back(row);
    }
    return rows;
}

} // namespace ingham
