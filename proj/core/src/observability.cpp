#include "ingham/observability.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "ingham/error.hpp"
#include "ingham/pencil.hpp"

namespace ingham {

void CoupledSystem::validate() const {
    if (!(a > 0.0 && a < 1.0)) throw StructuralError("junction point must satisfy 0 < a < 1");
    for (const auto* side : {&left, &right}) {
        std::set<int> seen;
        for (const auto& m : *side) {
            if (m.n < 1) throw StructuralError("mode indices must be positive");
            if (!seen.insert(m.n).second) throw StructuralError("duplicate mode index " + std::to_string(m.n));
        }
    }
    if (left.empty() && right.empty()) throw StructuralError("system has no modes");
    if (gamma && !(*gamma > 0.0)) throw StructuralError("gamma must be positive");
}

double CoupledSystem::effective_gamma() const {
    if (gamma) return *gamma;
    if (kind == SystemKind::String) return 0.5 * pi * std::min(1.0 / a, 1.0 / (1.0 - a));
    throw StructuralError("beam systems need an explicit gamma");
}

double CoupledSystem::wavenumber(Side side, int n) const {
    return static_cast<double>(n) * pi / (side == Side::Left ? a : 1.0 - a);
}

double CoupledSystem::frequency(Side side, int n) const {
    const double k = wavenumber(side, n);
    return kind == SystemKind::String ? k : k * k;
}

namespace {

double derivative_weight(const CoupledSystem& sys, Side side, int n) {
    const double k = sys.wavenumber(side, n);
    if (side == Side::Left) return (n % 2 == 0 ? 1.0 : -1.0) * k;  // d/dx sin(n pi x / a) at x = a
    return -k;                                                     // minus d/dx sin(n pi (x - a)/(1 - a)) at x = a
}

struct Entry {
    double omega;
    ModeTag tag;
};

std::vector<Entry> entries(const CoupledSystem& sys) {
    std::vector<Entry> out;
    for (Side side : {Side::Left, Side::Right}) {
        for (const auto& m : side == Side::Left ? sys.left : sys.right) {
            const double w = sys.frequency(side, m.n);
            const double dw = derivative_weight(sys, side, m.n);
            out.push_back({w, {side, m.n, +1, dw}});
            out.push_back({-w, {side, m.n, -1, dw}});
        }
    }
    std::sort(out.begin(), out.end(), [](const Entry& x, const Entry& y) { return x.omega < y.omega; });
    return out;
}

const char* side_name(Side s) { return s == Side::Left ? "left" : "right"; }

} // namespace

TaggedExponents assemble_exponents(const CoupledSystem& sys) {
    sys.validate();
    const auto list = entries(sys);
    for (std::size_t k = 0; k + 1 < list.size(); ++k) {
        const double scale = std::max(1.0, std::abs(list[k].omega));
        if (list[k + 1].omega - list[k].omega <= 1e-12 * scale) {
            throw ValidationError("junction_resonant", "junction point resonant: frequencies coincide across sides",
                                  {{"omega", list[k].omega},
                                   {"modes", {{{"side", side_name(list[k].tag.side)}, {"n", list[k].tag.n}},
                                              {{"side", side_name(list[k + 1].tag.side)}, {"n", list[k + 1].tag.n}}}}});
        }
    }
    std::vector<double> omegas;
    std::vector<ModeTag> tags;
    for (const auto& e : list) {
        omegas.push_back(e.omega);
        tags.push_back(e.tag);
    }
    ExponentSequence seq(std::move(omegas), sys.effective_gamma());
    const auto report = validate_weak_gap(seq);
    if (!report.ok()) throw ValidationError("weak_gap", "system exponents violate the weak gap condition", to_json(report));
    return {sys.kind, sys.a, std::move(seq), std::move(tags)};
}

double mode_cap(const CoupledSystem& sys, Side side, double delta) {
    const double len = side == Side::Left ? sys.a : 1.0 - sys.a;
    const double other = side == Side::Left ? 1.0 - sys.a : sys.a;
    if (sys.kind == SystemKind::String) return len / delta - 0.25 * std::min(1.0, len / other);
    const double band = pi / delta - 0.5 * sys.effective_gamma();
    if (!(band > 0.0)) return 0.0;
    return len / pi * std::sqrt(band);
}

std::vector<CapViolation> mode_cap_violations(const CoupledSystem& sys, double delta) {
    std::vector<CapViolation> out;
    for (Side side : {Side::Left, Side::Right}) {
        const double cap = mode_cap(sys, side, delta);
        for (const auto& m : side == Side::Left ? sys.left : sys.right)
            if (static_cast<double>(m.n) > cap) out.push_back({side, m.n, cap});
    }
    return out;
}

double horizon_threshold(const CoupledSystem& sys) {
    if (sys.kind == SystemKind::String) return 2.0 * std::max(sys.a, 1.0 - sys.a);
    return pi / sys.effective_gamma();
}

ExpSum trace_jump_sum(const CoupledSystem& sys, const TaggedExponents& tagged) {
    std::map<std::pair<int, int>, const Mode*> lookup;
    for (const auto& m : sys.left) lookup[{0, m.n}] = &m;
    for (const auto& m : sys.right) lookup[{1, m.n}] = &m;
    std::vector<cplx> coeffs;
    coeffs.reserve(tagged.tags.size());
    for (const auto& tag : tagged.tags) {
        const auto it = lookup.find({tag.side == Side::Left ? 0 : 1, tag.n});
        if (it == lookup.end()) throw StructuralError("tagged exponents do not match the system modes");
        const cplx amp = tag.sign > 0 ? it->second->plus : it->second->minus;
        coeffs.push_back(tag.derivative_weight * amp);
    }
    return {tagged.seq, std::move(coeffs)};
}

ExpSum trace_jump_sum(const CoupledSystem& sys) { return trace_jump_sum(sys, assemble_exponents(sys)); }

cplx displacement(const CoupledSystem& sys, double x, double t) {
    cplx u{};
    const bool on_left = x <= sys.a;
    const Side side = on_left ? Side::Left : Side::Right;
    const double local = on_left ? x : x - sys.a;
    for (const auto& m : on_left ? sys.left : sys.right) {
        const double w = sys.frequency(side, m.n);
        const double shape = std::sin(sys.wavenumber(side, m.n) * local);
        u += shape * (m.plus * std::polar(1.0, w * t) + m.minus * std::polar(1.0, -w * t));
    }
    return u;
}

double ObservationTrace::energy() const {
    CompensatedSum acc;
    for (const auto& s : samples) acc += std::norm(s);
    return grid.delta * acc.value();
}

namespace {

void check_caps(const CoupledSystem& sys, double delta) {
    if (sys.kind == SystemKind::Beam && delta > pi / sys.effective_gamma())
        throw ValidationError("delta_too_large", "beam sampling needs delta <= pi/gamma",
                              {{"delta", delta}, {"gamma", sys.effective_gamma()}});
    const auto bad = mode_cap_violations(sys, delta);
    if (bad.empty()) return;
    nlohmann::json list = nlohmann::json::array();
    for (const auto& v : bad) list.push_back({{"side", side_name(v.side)}, {"n", v.n}, {"cap", v.cap}});
    throw ValidationError("mode_cap", "modes exceed the caps tied to delta", {{"modes", list}, {"delta", delta}});
}

} // namespace

ObservationTrace observe(const CoupledSystem& sys, const SamplingGrid& grid) {
    sys.validate();
    check_caps(sys, grid.delta);
    const auto jump = trace_jump_sum(sys);
    ObservationTrace trace{grid, {}};
    trace.samples.reserve(static_cast<std::size_t>(grid.count()));
    for (long j = -grid.J; j <= grid.J; ++j) trace.samples.push_back(eval(jump, grid.time(j)));
    return trace;
}

double sobolev_norm(const CoupledSystem& sys, double s, InitialDatum which) {
    CompensatedSum acc;
    for (Side side : {Side::Left, Side::Right}) {
        const double basis = 0.5 * (side == Side::Left ? sys.a : 1.0 - sys.a);
        for (const auto& m : side == Side::Left ? sys.left : sys.right) {
            const double weight = std::pow(sys.wavenumber(side, m.n), 2.0 * s);
            const cplx coef = which == InitialDatum::U0
                                  ? m.plus + m.minus
                                  : cplx{0.0, sys.frequency(side, m.n)} * (m.plus - m.minus);
            acc += basis * weight * std::norm(coef);
        }
    }
    return acc.value();
}

SobolevPair observability_exponents(SystemKind kind, double epsilon) {
    if (kind == SystemKind::String) return {-epsilon, -1.0 - epsilon};
    return {1.0 - epsilon, -1.0 - epsilon};
}

ObservabilityReport verify_observability(const CoupledSystem& sys, const SamplingGrid& grid, double epsilon,
                                         const ObservabilityOptions& options) {
    if (!(epsilon > 0.0)) throw StructuralError("epsilon must be positive");
    if (options.trials < 0) throw StructuralError("trials must be non-negative");
    const auto tagged = assemble_exponents(sys);
    check_caps(sys, grid.delta);

    ObservabilityReport r;
    r.trials = options.trials;
    r.seed = options.seed;
    r.horizon_ok = static_cast<double>(grid.J) * grid.delta > horizon_threshold(sys);
    if (!r.horizon_ok) {
        if (options.strict_horizon)
            throw ValidationError("horizon", "observation horizon J delta is below the threshold",
                                  {{"J_delta", static_cast<double>(grid.J) * grid.delta},
                                   {"threshold", horizon_threshold(sys)}});
        r.diagnostics.emplace_back("horizon below threshold");
    }
    const auto [s0, s1] = observability_exponents(sys.kind, epsilon);

    // numerator as a Hermitian form in the exponent amplitudes
    const auto n = static_cast<Eigen::Index>(tagged.tags.size());
    std::map<std::tuple<int, int, int>, Eigen::Index> where;
    for (Eigen::Index k = 0; k < n; ++k) {
        const auto& t = tagged.tags[static_cast<std::size_t>(k)];
        where[{t.side == Side::Left ? 0 : 1, t.n, t.sign}] = k;
    }
    HermitianMatrix N = HermitianMatrix::Zero(n, n);
    Eigen::VectorXd W(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const auto& t = tagged.tags[static_cast<std::size_t>(k)];
        W[k] = t.derivative_weight;
        if (t.sign < 0) continue;
        const Eigen::Index q = where.at({t.side == Side::Left ? 0 : 1, t.n, -1});
        const double basis = 0.5 * (t.side == Side::Left ? sys.a : 1.0 - sys.a);
        const double lam = sys.wavenumber(t.side, t.n);
        const double w = sys.frequency(t.side, t.n);
        const double a0 = basis * std::pow(lam, 2.0 * s0);
        const double a1 = basis * std::pow(lam, 2.0 * s1) * w * w;
        N(k, k) += a0 + a1;
        N(q, q) += a0 + a1;
        N(k, q) += a0 - a1;
        N(q, k) += a0 - a1;
    }
    const HermitianMatrix S = W.asDiagonal() * sampled_gram(tagged.seq.omegas(), grid) * W.asDiagonal();
    const auto eig = hermitian_pencil_eig(S, N);
    r.pencil_min_eig = eig.values[0];
    r.pencil_max_eig = eig.values[n - 1];
    r.pencil_near_singular = !(r.pencil_min_eig > singular_rel_tol * r.pencil_max_eig);
    r.C_pencil = r.pencil_min_eig > 0.0 ? 1.0 / r.pencil_min_eig : std::numeric_limits<double>::infinity();
    if (r.pencil_near_singular) r.diagnostics.emplace_back("pencil near singular");

    if (options.trials > 0) {
        std::mt19937_64 rng(options.seed);
        std::vector<double> ratios;
        ratios.reserve(static_cast<std::size_t>(options.trials));
        for (long i = 0; i < options.trials; ++i) {
            const auto data = randomize_amplitudes(sys, rng);
            const double num = sobolev_norm(data, s0, InitialDatum::U0) + sobolev_norm(data, s1, InitialDatum::U1);
            const double den = sampled_energy(trace_jump_sum(data, tagged), grid);
            ratios.push_back(den > 0.0 ? num / den : std::numeric_limits<double>::infinity());
        }
        std::sort(ratios.begin(), ratios.end());
        r.C_empirical = ratios.back();
        r.min_ratio = ratios.front();
        const std::size_t mid = ratios.size() / 2;
        r.median_ratio = ratios.size() % 2 ? ratios[mid] : 0.5 * (ratios[mid - 1] + ratios[mid]);
    }
    return r;
}

Reconstruction reconstruct(const ObservationTrace& trace, const TaggedExponents& tagged) {
    const auto& grid = trace.grid;
    const auto w = tagged.seq.omegas();
    const auto n = static_cast<Eigen::Index>(w.size());
    const auto m = static_cast<Eigen::Index>(trace.samples.size());
    if (m != grid.count()) throw StructuralError("trace length does not match its grid");
    if (m < n)
        throw ValidationError("rank_deficient", "fewer samples than exponents",
                              {{"samples", m}, {"exponents", n}, {"min_eig", 0.0}});

    Reconstruction out;
    const auto gram = jacobi_eigen(sampled_gram(w, grid));
    out.min_eig_rel = gram.values[0] / gram.values[n - 1];
    if (!(out.min_eig_rel > singular_rel_tol))
        throw ValidationError("rank_deficient", "sample matrix is numerically rank deficient",
                              {{"min_eig", gram.values[0]}, {"min_eig_rel", out.min_eig_rel}});

    Eigen::MatrixXcd E(m, n);
    Eigen::VectorXcd b(m);
    for (Eigen::Index j = 0; j < m; ++j) {
        const double t = grid.time(static_cast<long>(j) - grid.J);
        for (Eigen::Index k = 0; k < n; ++k) E(j, k) = std::polar(1.0, w[k] * t);
        b[j] = trace.samples[static_cast<std::size_t>(j)];
    }
    const Eigen::VectorXcd c = E.householderQr().solve(b);
    const double bn = b.norm();
    const double res = (E * c - b).norm();
    out.relative_residual = bn > 0.0 ? res / bn : res;
    out.coefficients.assign(c.data(), c.data() + n);

    out.recovered.kind = tagged.kind;
    out.recovered.a = tagged.a;
    out.recovered.gamma = tagged.seq.gamma();
    std::map<std::pair<int, int>, Mode> modes;
    for (Eigen::Index k = 0; k < n; ++k) {
        const auto& tag = tagged.tags[static_cast<std::size_t>(k)];
        auto& mode = modes[{tag.side == Side::Left ? 0 : 1, tag.n}];
        mode.n = tag.n;
        (tag.sign > 0 ? mode.plus : mode.minus) = c[k] / tag.derivative_weight;
    }
    for (const auto& [key, mode] : modes) (key.first == 0 ? out.recovered.left : out.recovered.right).push_back(mode);
    return out;
}

nlohmann::json to_json(const CoupledSystem& sys) {
    auto modes = [](const std::vector<Mode>& list) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& m : list)
            arr.push_back({{"n", m.n}, {"plus", complex_to_json(m.plus)}, {"minus", complex_to_json(m.minus)}});
        return arr;
    };
    nlohmann::json j{{"kind", sys.kind == SystemKind::String ? "string" : "beam"},
                     {"a", sys.a},
                     {"left", modes(sys.left)},
                     {"right", modes(sys.right)}};
    if (sys.gamma) j["gamma"] = *sys.gamma;
    return j;
}

CoupledSystem system_from_json(const nlohmann::json& j) {
    try {
        CoupledSystem sys;
        const auto kind = j.at("kind").get<std::string>();
        if (kind == "string")
            sys.kind = SystemKind::String;
        else if (kind == "beam")
            sys.kind = SystemKind::Beam;
        else
            throw StructuralError("unknown system kind \"" + kind + "\"");
        sys.a = j.at("a").get<double>();
        if (j.contains("gamma")) sys.gamma = j.at("gamma").get<double>();
        auto read = [](const nlohmann::json& arr, std::vector<Mode>& out) {
            for (const auto& m : arr) {
                Mode mode;
                mode.n = m.at("n").get<int>();
                if (m.contains("plus")) mode.plus = complex_from_json(m.at("plus"));
                if (m.contains("minus")) mode.minus = complex_from_json(m.at("minus"));
                out.push_back(mode);
            }
        };
        if (j.contains("left")) read(j.at("left"), sys.left);
        if (j.contains("right")) read(j.at("right"), sys.right);
        sys.validate();
        return sys;
    } catch (const nlohmann::json::exception& e) {
        throw StructuralError(std::string("malformed system config: ") + e.what());
    }
}

nlohmann::json to_json(const ObservabilityReport& r) {
    auto finite_or_null = [](double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); };
    return {{"C_empirical", finite_or_null(r.C_empirical)},
            {"median_ratio", finite_or_null(r.median_ratio)},
            {"min_ratio", finite_or_null(r.min_ratio)},
            {"C_pencil", finite_or_null(r.C_pencil)},
            {"pencil_min_eig", r.pencil_min_eig},
            {"pencil_max_eig", r.pencil_max_eig},
            {"pencil_near_singular", r.pencil_near_singular},
            {"horizon_ok", r.horizon_ok},
            {"trials", r.trials},
            {"seed", r.seed},
            {"diagnostics", r.diagnostics}};
}

nlohmann::json to_json(const Reconstruction& r) {
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& c : r.coefficients) coeffs.push_back(complex_to_json(c));
    return {{"coefficients", coeffs},
            {"recovered", to_json(r.recovered)},
            {"relative_residual", r.relative_residual},
            {"min_eig_rel", r.min_eig_rel}};
}

std::string trace_to_csv(const ObservationTrace& trace) {
    std::ostringstream os;
    os.precision(17);
    os << "j,t,re,im\n";
    for (long j = -trace.grid.J; j <= trace.grid.J; ++j) {
        const auto& s = trace.samples[static_cast<std::size_t>(j + trace.grid.J)];
        os << j << ',' << trace.grid.time(j) << ',' << s.real() << ',' << s.imag() << '\n';
    }
    return os.str();
}

} // namespace ingham
