#include "ingham/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ingham/error.hpp"

namespace ingham {

HermitianMatrix sampled_gram(std::span<const double> omegas, const SamplingGrid& grid) {
    const auto n = static_cast<Eigen::Index>(omegas.size());
    HermitianMatrix S(n, n);
    const double diag = grid.delta * static_cast<double>(grid.count());
    for (Eigen::Index a = 0; a < n; ++a) {
        S(a, a) = diag;
        for (Eigen::Index b = a + 1; b < n; ++b) {
            const double d = omegas[a] - omegas[b];
            const cplx v = grid.delta * dirichlet(d * grid.delta, grid.J) * std::polar(1.0, -d * grid.t_shift);
            S(a, b) = v;
            S(b, a) = std::conj(v);
        }
    }
    return S;
}

namespace {

std::vector<double> active_omegas(const ExponentSequence& seq, std::span<const std::size_t> active) {
    std::vector<double> out;
    out.reserve(active.size());
    for (std::size_t k : active) out.push_back(seq[k]);
    return out;
}

} // namespace

HermitianMatrix sampled_gram(const ExponentSequence& seq, const SamplingGrid& grid, const BandMask& mask) {
    const auto active = mask.active_indices();
    return sampled_gram(active_omegas(seq, active), grid);
}

HermitianMatrix continuous_gram(std::span<const double> omegas, double R) {
    const auto n = static_cast<Eigen::Index>(omegas.size());
    HermitianMatrix K(n, n);
    for (Eigen::Index a = 0; a < n; ++a)
        for (Eigen::Index b = 0; b < n; ++b) K(a, b) = continuous_kernel(omegas[a] - omegas[b], R);
    return K;
}

FramePencil frame_pencil(const ExponentSequence& seq, const SamplingGrid& grid, const GapClassification& cls) {
    return frame_pencil(seq, grid, cls, band_mask(seq, grid.delta));
}

FramePencil frame_pencil(const ExponentSequence& seq, const SamplingGrid& grid, const GapClassification& cls,
                         const BandMask& mask) {
    if (mask.admissible.size() != seq.size()) throw StructuralError("band mask does not match the sequence");
    FramePencil p;
    p.active = mask.active_indices();
    if (p.active.empty())
        throw ValidationError("no_active_exponents", "no exponent lies inside the band",
                              {{"threshold", mask.threshold}});
    for (const auto& [lead, partner] : cls.partners) {
        if (seq[partner] - seq[lead] < 1e-12)
            throw ValidationError("q_singular", "Q matrix numerically singular: chain gap below 1e-12",
                                  {{"lead", lead}, {"gap", seq[partner] - seq[lead]}});
    }
    p.Q = q_matrix(cls, seq, p.active);
    p.S = sampled_gram(active_omegas(seq, p.active), grid);
    p.eig = hermitian_pencil_eig(p.S, p.Q);
    return p;
}

namespace {

FrameBoundReport report_from_pencil(const FramePencil& p, const SamplingGrid& grid, double gamma, std::size_t total) {
    FrameBoundReport r;
    r.active = p.active;
    r.pencil_dim = static_cast<long>(p.active.size());
    r.sample_count = grid.count();
    r.min_eig = p.eig.values[0];
    r.max_eig = p.eig.values[p.eig.values.size() - 1];
    r.singular = !(r.min_eig > singular_rel_tol * r.max_eig);
    r.c_upper = r.max_eig;
    r.c_lower = r.singular ? 0.0 : r.min_eig;
    r.horizon_ok = static_cast<double>(grid.J) * grid.delta > pi / gamma;

    std::ostringstream os;
    os << "band mask applied: " << p.active.size() << " of " << total << " exponents active";
    r.diagnostics.push_back(os.str());
    os.str("");
    os << "samples " << r.sample_count << " vs active exponents " << p.active.size();
    r.diagnostics.push_back(os.str());
    if (r.sample_count < r.pencil_dim) r.diagnostics.emplace_back("fewer samples than exponents: rank deficient");
    if (!r.horizon_ok) r.diagnostics.emplace_back("J delta <= pi/gamma: horizon below the recommended length");
    if (r.singular) r.diagnostics.emplace_back("singular pencil");
    return r;
}

} // namespace

FrameBoundReport frame_constants(const ExponentSequence& seq, const SamplingGrid& grid, const GapClassification& cls) {
    return frame_constants(seq, grid, cls, band_mask(seq, grid.delta));
}

FrameBoundReport frame_constants(const ExponentSequence& seq, const SamplingGrid& grid, const GapClassification& cls,
                                 const BandMask& mask) {
    const auto p = frame_pencil(seq, grid, cls, mask);
    return report_from_pencil(p, grid, seq.gamma(), seq.size());
}

double epsilon_k(double omega_k, double omega_prime, long J_prime, double delta) {
    const double diff = omega_k - omega_prime;
    if (diff == 0.0)
        throw ValidationError("sampling_resonance", "omega_k equals omega'", {{"omega", omega_k}});
    const double half = 0.5 * diff * delta;
    const double m = std::round(half / pi);
    if (m != 0.0 && std::abs(half - m * pi) < 1e-10)
        throw ValidationError("sampling_resonance", "sampling resonance: (omega_k - omega') delta / 2 is a multiple of pi",
                              {{"omega", omega_k}, {"omega_prime", omega_prime}, {"delta", delta}});
    return std::abs(sinc(diff * static_cast<double>(J_prime) * delta)) / std::abs(sinc(half));
}

cplx averaging_factor(double omega, double omega_prime, long J_prime, double delta) {
    const double diff = omega - omega_prime;
    if (diff == 0.0) return 1.0;
    // sum_{n=-J'}^{J'-1} e^{i theta n} = e^{-i theta/2} sin(J' theta) / sin(theta/2)
    const double theta = diff * delta;
    const double ratio = sinc(diff * static_cast<double>(J_prime) * delta) / sinc(0.5 * theta);
    return ratio * std::polar(1.0, -0.5 * theta);
}

HarauxPlan plan_haraux(const ExponentSequence& seq, const BandMask& mask, double omega_prime, long J_prime,
                       double delta) {
    if (J_prime < 1) throw StructuralError("J' must be a positive integer");
    if (!(delta > 0.0)) throw StructuralError("delta must be positive");
    if (mask.admissible.size() != seq.size()) throw StructuralError("band mask does not match the sequence");

    HarauxPlan plan;
    plan.J_prime = J_prime;
    plan.delta = delta;
    plan.omega_prime = omega_prime;
    plan.indices = mask.active_indices();
    if (plan.indices.empty()) throw ValidationError("no_active_exponents", "no exponent lies inside the band");

    const double horizon = static_cast<double>(J_prime) * delta;
    plan.gamma_prime = std::numeric_limits<double>::infinity();
    for (std::size_t k : plan.indices) {
        const double d = std::abs(seq[k] - omega_prime);
        plan.gamma_prime = std::min(plan.gamma_prime, d);
        plan.eps_prime = std::max(plan.eps_prime, std::abs(sinc(d * horizon)));
    }
    if (!(plan.gamma_prime > 0.0))
        throw ValidationError("gamma_prime_zero", "omega' coincides with an active exponent",
                              {{"omega_prime", omega_prime}});

    // largest c' (to 1e-12) with |sinc| > eps' on (0, c'); sinc decreases on (0, pi)
    double lo = 0.0, hi = pi;
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        (sinc(mid) > plan.eps_prime ? lo : hi) = mid;
    }
    plan.c_prime = lo;

    const double eg = plan.eps_prime * plan.gamma_prime;
    plan.lipschitz_L = eg > 0.0 ? 1.0 / eg + 1.0 / (horizon * eg * eg) : std::numeric_limits<double>::infinity();

    std::vector<std::size_t> outside;
    for (std::size_t k : plan.indices)
        if (!(std::abs(seq[k] - omega_prime) < 2.0 * plan.c_prime / delta)) outside.push_back(k);
    if (!outside.empty())
        throw ValidationError("haraux_separation", "active exponents violate |omega_k - omega'| < 2 c'/delta",
                              {{"indices", outside}, {"c_prime", plan.c_prime}, {"limit", 2.0 * plan.c_prime / delta}});

    for (std::size_t k : plan.indices) {
        const double e = epsilon_k(seq[k], omega_prime, J_prime, delta);
        plan.eps_k.push_back(e);
        plan.eps_sup = std::max(plan.eps_sup, e);
    }
    if (!(plan.eps_sup < 1.0))
        throw ValidationError("haraux_contraction_fails", "Haraux contraction fails: sup eps_k >= 1",
                              {{"eps_sup", plan.eps_sup}});
    return plan;
}

ExpSum haraux_filter(const AugmentedExpSum& aug, const HarauxPlan& plan) {
    if (!(plan.eps_sup < 1.0)) throw ValidationError("haraux_contraction_fails", "Haraux plan is not valid");
    if (aug.omega_prime() != plan.omega_prime)
        throw StructuralError("plan was built for a different omega'");
    const auto& base = aug.base();
    const auto w = base.sequence().omegas();
    const auto c = base.coeffs();
    std::vector<cplx> y(c.size());
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (c[k] == cplx{}) continue;
        epsilon_k(w[k], plan.omega_prime, plan.J_prime, plan.delta);  // resonance guard
        y[k] = (1.0 - averaging_factor(w[k], plan.omega_prime, plan.J_prime, plan.delta)) * c[k];
    }
    return {base.sequence(), std::move(y)};
}

double c4_upper_formula(double c2, long J, long J_prime, double delta) {
    const double Jd = static_cast<double>(J), Jp = static_cast<double>(J_prime);
    const double cover = 1.0 + (2.0 * Jd + 2.0 * Jp + 1.0) / (2.0 * Jd + 1.0);
    return cover * std::max(4.0 * c2, 12.0 * Jd * delta) * (1.0 + (Jp * delta) * (Jp * delta));
}

ExtendedFrameReport extended_frame_constants(const ExponentSequence& seq, const BandMask& mask, double omega_prime,
                                             const SamplingGrid& grid, long J_prime, const GapClassification& cls) {
    ExtendedFrameReport out;
    out.plan = plan_haraux(seq, mask, omega_prime, J_prime, grid.delta);
    out.base = frame_constants(seq, grid, cls, mask);
    if (out.base.singular)
        throw ValidationError("singular_pencil", "base frame pencil is singular", {{"min_eig", out.base.min_eig}});

    const auto active = mask.active_indices();
    std::vector<double> omegas = active_omegas(seq, active);
    omegas.push_back(omega_prime);

    const auto n = static_cast<Eigen::Index>(active.size());
    HermitianMatrix Q = HermitianMatrix::Zero(n + 1, n + 1);
    Q.topLeftCorner(n, n) = q_matrix(cls, seq, active);
    Q(n, n) = 1.0;

    const SamplingGrid ext_grid(grid.delta, grid.J + J_prime, grid.t_shift);
    FramePencil p;
    p.active = active;
    p.active.push_back(seq.size());  // marks omega'
    p.Q = Q;
    p.S = sampled_gram(omegas, ext_grid);
    p.eig = hermitian_pencil_eig(p.S, p.Q);
    out.extended = report_from_pencil(p, ext_grid, seq.gamma(), seq.size() + 1);

    out.c4_formula = c4_upper_formula(out.base.c_upper, grid.J, J_prime, grid.delta);
    out.c4_within_formula = out.extended.c_upper <= out.c4_formula;
    if (grid.t_shift != 0.0)
        out.extended.diagnostics.emplace_back("t' != 0: c4 formula is a companion value only");
    return out;
}

std::vector<ContinuumRow> continuum_limit_scan(const ExponentSequence& seq, const GapClassification& cls, double R,
                                               std::span<const long> J_list) {
    if (!(R > pi / seq.gamma()))
        throw ValidationError("horizon_too_short", "continuum scan needs R > pi/gamma", {{"R", R}, {"gamma", seq.gamma()}});
    std::vector<ContinuumRow> rows;
    long previous_active = -1;
    for (long J : J_list) {
        const SamplingGrid grid(R / static_cast<double>(J), J);
        const auto mask = band_mask(seq, grid.delta);
        const auto p = frame_pencil(seq, grid, cls, mask);
        const auto omegas = active_omegas(seq, p.active);
        const auto cont = hermitian_pencil_eig(continuous_gram(omegas, R), p.Q);

        ContinuumRow row;
        row.J = J;
        row.delta = grid.delta;
        row.active_count = static_cast<long>(p.active.size());
        row.active_changed = previous_active >= 0 && previous_active != row.active_count;
        previous_active = row.active_count;
        const auto last = p.eig.values.size() - 1;
        row.discrete_min = p.eig.values[0];
        row.discrete_max = p.eig.values[last];
        row.continuous_min = cont.values[0];
        row.continuous_max = cont.values[last];
        row.gap_min = std::abs(row.discrete_min - row.continuous_min) / std::abs(row.continuous_min);
        row.gap_max = std::abs(row.discrete_max - row.continuous_max) / std::abs(row.continuous_max);
        row.singular = !(row.discrete_min > singular_rel_tol * row.discrete_max);
        rows.push_back(row);
    }
    return rows;
}

nlohmann::json to_json(const FrameBoundReport& r) {
    return {{"c_lower", r.c_lower},   {"c_upper", r.c_upper},         {"pencil_dim", r.pencil_dim},
            {"min_eig", r.min_eig},   {"max_eig", r.max_eig},         {"singular", r.singular},
            {"horizon_ok", r.horizon_ok}, {"sample_count", r.sample_count}, {"active", r.active},
            {"diagnostics", r.diagnostics}};
}

nlohmann::json to_json(const HarauxPlan& p) {
    auto finite_or_null = [](double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); };
    return {{"J_prime", p.J_prime},       {"delta", p.delta},       {"omega_prime", p.omega_prime},
            {"indices", p.indices},       {"eps_k", p.eps_k},       {"eps_sup", p.eps_sup},
            {"eps_prime", p.eps_prime},   {"c_prime", p.c_prime},   {"lipschitz_L", finite_or_null(p.lipschitz_L)},
            {"gamma_prime", p.gamma_prime}};
}

nlohmann::json to_json(const ExtendedFrameReport& r) {
    return {{"base", to_json(r.base)},
            {"extended", to_json(r.extended)},
            {"plan", to_json(r.plan)},
            {"c4_formula", r.c4_formula},
            {"c4_within_formula", r.c4_within_formula}};
}

nlohmann::json to_json(const ContinuumRow& r) {
    return {{"J", r.J},
            {"delta", r.delta},
            {"active_count", r.active_count},
            {"active_changed", r.active_changed},
            {"discrete_min", r.discrete_min},
            {"discrete_max", r.discrete_max},
            {"continuous_min", r.continuous_min},
            {"continuous_max", r.continuous_max},
            {"gap_min", r.gap_min},
            {"gap_max", r.gap_max},
            {"singular", r.singular}};
}

} // namespace ingham
