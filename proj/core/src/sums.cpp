#include "ingham/sums.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>

#include "ingham/error.hpp"

namespace ingham {

ExpSum::ExpSum(ExponentSequence seq, std::vector<cplx> coeffs) : seq_(std::move(seq)), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != seq_.size())
        throw StructuralError("coefficient count " + std::to_string(coeffs_.size()) +
                              " does not match exponent count " + std::to_string(seq_.size()));
    for (const auto& c : coeffs_)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw StructuralError("non-finite coefficient");
}

ExpSum ExpSum::translated_in_time(double shift) const {
    std::vector<cplx> out(coeffs_.size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = coeffs_[k] * std::polar(1.0, seq_[k] * shift);
    return {seq_, std::move(out)};
}

AugmentedExpSum::AugmentedExpSum(ExpSum base, double omega_prime, cplx x_prime)
    : base_(std::move(base)), omega_prime_(omega_prime), x_prime_(x_prime) {
    if (!std::isfinite(omega_prime_)) throw StructuralError("omega' is not finite");
    if (!std::isfinite(x_prime_.real()) || !std::isfinite(x_prime_.imag()))
        throw StructuralError("x' is not finite");
    gamma_prime_ = std::numeric_limits<double>::infinity();
    for (double w : base_.sequence().omegas()) gamma_prime_ = std::min(gamma_prime_, std::abs(w - omega_prime_));
    if (!(gamma_prime_ > 0.0))
        throw ValidationError("omega_prime_in_sequence", "omega' coincides with an exponent of the sequence",
                              {{"omega_prime", omega_prime_}});
}

SamplingGrid::SamplingGrid(double delta_, long J_, double t_shift_) : delta(delta_), J(J_), t_shift(t_shift_) {
    if (!(delta > 0.0) || !std::isfinite(delta)) throw StructuralError("grid delta must be positive");
    if (J < 1) throw StructuralError("grid J must be >= 1");
    if (!std::isfinite(t_shift)) throw StructuralError("grid t_shift must be finite");
}

cplx eval(const ExpSum& sum, double t) {
    CompensatedComplexSum acc;
    const auto c = sum.coeffs();
    for (std::size_t k = 0; k < c.size(); ++k) acc += c[k] * std::polar(1.0, sum.sequence()[k] * t);
    return acc.value();
}

cplx eval(const AugmentedExpSum& sum, double t) {
    return eval(sum.base(), t) + sum.x_prime() * std::polar(1.0, sum.omega_prime() * t);
}

namespace {

template <typename Sum>
double sampled_energy_impl(const Sum& sum, const SamplingGrid& grid) {
    CompensatedSum acc;
    for (long j = -grid.J; j <= grid.J; ++j) acc += std::norm(eval(sum, grid.time(j)));
    return grid.delta * acc.value();
}

} // namespace

double sampled_energy(const ExpSum& sum, const SamplingGrid& grid) { return sampled_energy_impl(sum, grid); }
double sampled_energy(const AugmentedExpSum& sum, const SamplingGrid& grid) {
    return sampled_energy_impl(sum, grid);
}

double continuous_kernel(double omega, double R) { return 2.0 * R * sinc(omega * R); }

double continuous_energy(const ExpSum& sum, double R) {
    const auto c = sum.coeffs();
    const auto w = sum.sequence().omegas();
    CompensatedSum acc;
    for (std::size_t k = 0; k < c.size(); ++k) {
        acc += std::norm(c[k]) * 2.0 * R;
        for (std::size_t n = k + 1; n < c.size(); ++n)
            acc += 2.0 * (c[k] * std::conj(c[n])).real() * continuous_kernel(w[k] - w[n], R);
    }
    return std::max(0.0, acc.value());
}

namespace {

// Certified bound on the discarded part delta sum_{|j|>J} |g(j delta)| |x(j delta)|^2,
// valid once J delta >= decay.threshold where |g(t)| <= C / t^p is decreasing.
//
// Two bounds are combined and the smaller is used:
//  * pointwise |x|^2 <= M^2 = (sum |c_k|)^2 with sum_{j>J} j^{-p} <= J^{1-p}/(p-1);
//  * blockwise: any m consecutive samples carry at most Lambda_m sum |c_k|^2, where
//    Lambda_m is the Gershgorin bound max_k sum_n min(m, 1/|sin((w_k - w_n) delta/2)|)
//    of the m-sample Gram (the block position only rotates it unitarily). Summing
//    blocks starting at J+1, J+1+m, ... against the decreasing envelope gives
//    Lambda_m sum|c|^2 C delta^{-p} ((J+1)^{-p} + (J+1)^{1-p} / (m (p-1))).
class TailBound {
public:
    TailBound(const TransformDecay& decay, std::span<const double> om, std::span<const cplx> co, double delta)
        : decay_(decay), om_(om), delta_(delta) {
        for (const auto& z : co) {
            M_ += std::abs(z);
            l2_ += std::norm(z);
        }
    }

    double operator()(long J) const {
        const double p = decay_.p;
        const double Jd = static_cast<double>(J);
        const double scale = 2.0 * decay_.C * std::pow(delta_, 1.0 - p);
        const double pointwise = scale * M_ * M_ * std::pow(Jd, 1.0 - p) / (p - 1.0);
        const long m = std::max(1L, J / 32);
        const double md = static_cast<double>(m);
        const double blockwise = scale * lambda(md) * l2_ *
                                 (std::pow(Jd + 1.0, -p) + std::pow(Jd + 1.0, 1.0 - p) / (md * (p - 1.0)));
        return std::min(pointwise, blockwise);
    }

private:
    double lambda(double m) const {
        double worst = 0.0;
        for (std::size_t k = 0; k < om_.size(); ++k) {
            double row = 0.0;
            for (std::size_t n = 0; n < om_.size(); ++n) {
                const double s = std::abs(std::sin(0.5 * (om_[k] - om_[n]) * delta_));
                row += (n == k || s * m <= 1.0) ? m : 1.0 / s;
            }
            worst = std::max(worst, row);
        }
        return worst;
    }

    TransformDecay decay_;
    std::span<const double> om_;
    double delta_;
    double M_ = 0.0;
    double l2_ = 0.0;
};

// Smallest J (on a 1% geometric ladder) with J delta >= threshold and a tail bound below tol.
long tail_cutoff(const TailBound& tail, const TransformDecay& decay, double delta, double tol, double& bound) {
    long J = std::max(1L, static_cast<long>(std::ceil(decay.threshold / delta)));
    while ((bound = tail(J)) > tol) J = std::max(J + 1, static_cast<long>(std::ceil(static_cast<double>(J) * 1.01)));
    return J;
}

} // namespace

PoissonSides poisson_sides(const ExpSum& sum, const KernelShape& kernel, double delta, const PoissonOptions& options) {
    if (!(delta > 0.0)) throw StructuralError("delta must be positive");
    if (!(options.tail_tol > 0.0)) throw StructuralError("tail_tol must be positive");
    if (pi / delta < kernel.gamma) {
        throw ValidationError("window_exceeds_period", "window exceeds period: pi/delta < gamma",
                              {{"delta", delta}, {"gamma", kernel.gamma}});
    }
    const auto& seq = sum.sequence();
    const auto c = sum.coeffs();
    const auto w = seq.omegas();

    if (options.enforce_band) {
        const double threshold = pi / delta - 0.5 * seq.gamma();
        std::vector<std::size_t> bad;
        for (std::size_t k = 0; k < c.size(); ++k)
            if (c[k] != cplx{} && !(std::abs(w[k]) <= threshold)) bad.push_back(k);
        if (!bad.empty())
            throw ValidationError("band_violation", "nonzero coefficients outside the band |omega| <= pi/delta - gamma/2",
                                  {{"indices", bad}, {"threshold", threshold}});
    }

    // active terms only
    std::vector<double> om;
    std::vector<cplx> co;
    for (std::size_t k = 0; k < c.size(); ++k)
        if (c[k] != cplx{}) {
            om.push_back(w[k]);
            co.push_back(c[k]);
        }
    PoissonSides out;
    if (co.empty()) return out;

    const auto decay = transform_decay(kernel);
    out.J_tail = tail_cutoff(TailBound(decay, om, co, delta), decay, delta, options.tail_tol, out.tail_bound);

    // lhs: g even, so pair j and -j; x(-t) = sum c_k conj(e^{i w_k t}).
    // The loop runs up to ~10^6 samples, so it works on blocks of samples:
    // e^{i w_k (j0 + m) delta} = anchor_k(j0) * table_k(m), with the anchor and
    // the table both from sin/cos directly (no rounding drift along j). The
    // inner loops run over samples without reductions and vectorize.
    constexpr long block = 256;
    const std::size_t n = co.size();
    const auto B = static_cast<std::size_t>(block);
    std::vector<double> tr(n * B), ti(n * B);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t m = 0; m < B; ++m) {
            tr[k * B + m] = std::cos(om[k] * delta * static_cast<double>(m));
            ti[k * B + m] = std::sin(om[k] * delta * static_cast<double>(m));
        }
    // same tables for sin(gamma t) in the kernel transform
    const double kg = kernel.gamma;
    std::vector<double> ur(B), ui(B);
    for (std::size_t m = 0; m < B; ++m) {
        ur[m] = std::cos(kg * delta * static_cast<double>(m));
        ui[m] = std::sin(kg * delta * static_cast<double>(m));
    }
    std::vector<double> spr(B), spi(B), smr(B), smi(B), g(B);

    CompensatedSum lhs;
    for (long j0 = 0; j0 <= out.J_tail; j0 += block) {
        const auto len = static_cast<std::size_t>(std::min(block, out.J_tail + 1 - j0));
        const double t0 = static_cast<double>(j0) * delta;
        std::fill_n(spr.begin(), len, 0.0);
        std::fill_n(spi.begin(), len, 0.0);
        std::fill_n(smr.begin(), len, 0.0);
        std::fill_n(smi.begin(), len, 0.0);
        for (std::size_t k = 0; k < n; ++k) {
            // q+ = c e^{i w t0} and q- = c e^{-i w t0}; then x(t) = sum q+ T, x(-t) = sum q- conj(T)
            const double ar = std::cos(om[k] * t0), ai = std::sin(om[k] * t0);
            const double cr = co[k].real(), ci = co[k].imag();
            const double qpr = cr * ar - ci * ai, qpi = cr * ai + ci * ar;
            const double qmr = cr * ar + ci * ai, qmi = ci * ar - cr * ai;
            const double* Tr = &tr[k * B];
            const double* Ti = &ti[k * B];
            for (std::size_t m = 0; m < len; ++m) {
                spr[m] += qpr * Tr[m] - qpi * Ti[m];
                spi[m] += qpr * Ti[m] + qpi * Tr[m];
                smr[m] += qmr * Tr[m] + qmi * Ti[m];
                smi[m] += qmi * Tr[m] - qmr * Ti[m];
            }
        }
        // kernel transform; away from its removable singularities h(t) =
        // gamma pi^2 sin(u) / (u (pi - u)(pi + u)), u = gamma t
        if (kg * t0 >= pi + 1.0) {
            const double ar = std::cos(kg * t0), ai = std::sin(kg * t0);
            const bool inverse = kernel.variant == KernelVariant::Inverse;
            for (std::size_t m = 0; m < len; ++m) {
                const double t = t0 + static_cast<double>(m) * delta;
                const double u = kg * t;
                const double h = kg * pi * pi * (ar * ui[m] + ai * ur[m]) / (u * (pi - u) * (pi + u));
                g[m] = inverse ? (kernel.R - t) * (kernel.R + t) * h * h : h * h;
            }
        } else {
            for (std::size_t m = 0; m < len; ++m)
                g[m] = kernel_transform(kernel, t0 + static_cast<double>(m) * delta);
        }
        for (std::size_t m = 0; m < len; ++m) {
            const double plus = spr[m] * spr[m] + spi[m] * spi[m];
            const double minus = smr[m] * smr[m] + smi[m] * smi[m];
            lhs += g[m] * (j0 + static_cast<long>(m) == 0 ? plus : plus + minus);
        }
    }
    out.lhs = delta * lhs.value();

    CompensatedSum rhs, rhs_p;
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t m = 0; m < n; ++m) {
            const double d = om[k] - om[m];
            const double weight = (co[k] * std::conj(co[m])).real();
            rhs += kernel_eval(kernel, d) * weight;
            rhs_p += periodize(kernel, delta, d) * weight;
        }
    }
    out.rhs = two_pi * rhs.value();
    out.rhs_periodized = two_pi * rhs_p.value();
    return out;
}

nlohmann::json complex_to_json(cplx z) { return nlohmann::json::array({z.real(), z.imag()}); }

cplx complex_from_json(const nlohmann::json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2) throw StructuralError("complex value must be [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

nlohmann::json to_json(const ExpSum& sum) {
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& c : sum.coeffs()) coeffs.push_back(complex_to_json(c));
    auto j = to_json(sum.sequence());
    j["coeffs"] = coeffs;
    return j;
}

nlohmann::json to_json(const AugmentedExpSum& sum) {
    auto j = to_json(sum.base());
    j["omega_prime"] = sum.omega_prime();
    j["x_prime"] = complex_to_json(sum.x_prime());
    j["gamma_prime"] = sum.gamma_prime();
    return j;
}

nlohmann::json to_json(const SamplingGrid& grid) {
    return {{"delta", grid.delta}, {"J", grid.J}, {"t_shift", grid.t_shift}};
}

nlohmann::json to_json(const PoissonSides& s) {
    return {{"lhs", s.lhs},
            {"rhs", s.rhs},
            {"rhs_periodized", s.rhs_periodized},
            {"abs_diff", std::abs(s.lhs - s.rhs)},
            {"tail_bound", s.tail_bound},
            {"J_tail", s.J_tail}};
}

ExpSum exp_sum_from_json(const nlohmann::json& j, std::optional<double> gamma) {
    try {
        nlohmann::json seq_json{{"omegas", j.at("omegas")}};
        if (j.contains("gamma"))
            seq_json["gamma"] = j.at("gamma");
        else if (gamma)
            seq_json["gamma"] = *gamma;
        else
            throw StructuralError("sum needs \"gamma\"");
        if (j.contains("gamma0")) seq_json["gamma0"] = j.at("gamma0");
        auto seq = sequence_from_json(seq_json);
        std::vector<cplx> coeffs;
        for (const auto& c : j.at("coeffs")) coeffs.push_back(complex_from_json(c));
        return {std::move(seq), std::move(coeffs)};
    } catch (const nlohmann::json::exception& e) {
        throw StructuralError(std::string("malformed sum: ") + e.what());
    }
}

std::optional<AugmentedExpSum> augmented_from_json(const nlohmann::json& j, std::optional<double> gamma) {
    if (!j.contains("omega_prime")) return std::nullopt;
    auto base = exp_sum_from_json(j, gamma);
    const cplx xp = j.contains("x_prime") ? complex_from_json(j.at("x_prime")) : cplx{};
    return AugmentedExpSum(std::move(base), j.at("omega_prime").get<double>(), xp);
}

SamplingGrid grid_from_json(const nlohmann::json& j) {
    try {
        return {j.at("delta").get<double>(), j.at("J").get<long>(), j.value("t_shift", 0.0)};
    } catch (const nlohmann::json::exception& e) {
        throw StructuralError(std::string("malformed grid: ") + e.what());
    }
}

} // namespace ingham
