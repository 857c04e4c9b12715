#include "ingham/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ingham/error.hpp"
#include "ingham/numeric.hpp"

namespace ingham {

KernelShape KernelShape::direct(double gamma, SupportConvention s) {
    if (!(gamma > 0.0) || !std::isfinite(gamma)) throw StructuralError("kernel gamma must be positive");
    return {KernelVariant::Direct, gamma, 0.0, s};
}

KernelShape KernelShape::inverse(double gamma, double R, SupportConvention s) {
    if (!(gamma > 0.0) || !std::isfinite(gamma)) throw StructuralError("kernel gamma must be positive");
    if (!(R > 0.0) || !std::isfinite(R)) throw StructuralError("inverse kernel needs R > 0");
    return {KernelVariant::Inverse, gamma, R, s};
}

double KernelShape::support_radius() const {
    return support == SupportConvention::Truncated ? gamma : 2.0 * gamma;
}

double h_transform(double gamma, double t) {
    const double u = gamma * std::abs(t);
    double phi;
    if (u < 1.0) {
        phi = pi * pi * sinc(u) / ((pi - u) * (pi + u));
    } else if (std::abs(u - pi) < 1.0) {
        // sin(u) = sin(pi - u); the (pi - u) factor cancels against sinc
        const double v = pi - u;
        phi = pi * pi * sinc(v) / (u * (pi + u));
    } else {
        phi = pi * pi * std::sin(u) / (u * (pi - u) * (pi + u));
    }
    return gamma * phi;
}

double hh_convolution(double gamma, double x) {
    const double ax = std::abs(x);
    if (ax >= 2.0 * gamma) return 0.0;
    const double p = pi / gamma;
    const double overlap = 2.0 * gamma - ax;
    return 0.25 * (overlap * (1.0 + 0.5 * std::cos(p * ax)) + 1.5 * std::sin(p * ax) / p);
}

double dhdh_convolution(double gamma, double x) {
    const double ax = std::abs(x);
    if (ax >= 2.0 * gamma) return 0.0;
    const double p = pi / gamma;
    const double overlap = 2.0 * gamma - ax;
    return -(p * p / 8.0) * (overlap * std::cos(p * ax) + std::sin(p * ax) / p);
}

double kernel_eval(const KernelShape& shape, double x) {
    if (std::abs(x) >= shape.support_radius()) return 0.0;
    if (shape.variant == KernelVariant::Direct) return hh_convolution(shape.gamma, x);
    return shape.R * shape.R * hh_convolution(shape.gamma, x) + dhdh_convolution(shape.gamma, x);
}

double kernel_transform(const KernelShape& shape, double t) {
    const double h = h_transform(shape.gamma, t);
    if (shape.variant == KernelVariant::Direct) return h * h;
    return (shape.R - std::abs(t)) * (shape.R + std::abs(t)) * h * h;
}

double kernel_curvature(const KernelShape& shape) {
    const double w = shape.gamma;
    const double direct = pi * pi / (8.0 * w);
    if (shape.variant == KernelVariant::Direct) return direct;
    return shape.R * shape.R * direct - std::pow(pi, 4) / (8.0 * w * w * w);
}

TransformDecay transform_decay(const KernelShape& shape) {
    // |h(t)| <= (4 pi^2 / 3) / (gamma^2 |t|^3) once gamma |t| >= 2 pi
    const double g = shape.gamma;
    const double c6 = 16.0 * std::pow(pi, 4) / (9.0 * std::pow(g, 4));
    if (shape.variant == KernelVariant::Direct) return {c6, 6, 2.0 * pi / g};
    // (t^2 - R^2) h^2 <= t^2 h^2 for |t| >= R
    return {c6, 4, std::max(2.0 * pi / g, shape.R)};
}

double periodize(const KernelShape& shape, double delta, double x) {
    if (!(delta > 0.0)) throw StructuralError("delta must be positive");
    if (pi / delta < shape.gamma) {
        throw ValidationError("window_exceeds_period", "window exceeds period: pi/delta < gamma",
                              {{"delta", delta}, {"gamma", shape.gamma}});
    }
    const double period = two_pi / delta;
    const double r = shape.support_radius();
    const auto lo = static_cast<long>(std::ceil((x - r) / period));
    const auto hi = static_cast<long>(std::floor((x + r) / period));
    double sum = 0.0;
    for (long m = lo; m <= hi; ++m) sum += kernel_eval(shape, x - static_cast<double>(m) * period);
    return sum;
}

namespace {

[[noreturn]] void certification_failure(const std::string& inequality, double point, double value) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "certification failed: " << inequality << " violated at " << point << " (value " << value << ")";
    throw ValidationError("certification_failed", msg.str(),
                          {{"inequality", inequality}, {"point", point}, {"value", value}});
}

// n points evenly spaced in (0, b], excluding 0
template <typename F>
void for_grid(double b, long n, F&& f) {
    for (long i = 1; i <= n; ++i) f(b * static_cast<double>(i) / static_cast<double>(n));
}

WindowKernel certify_direct(const KernelShape& s, long n, double margin) {
    const double g0 = kernel_eval(s, 0.0);
    const double xr = s.support_radius() * 1.5;

    double ratio_max = kernel_curvature(s);
    for_grid(xr, n, [&](double x) {
        const double drop = g0 - kernel_eval(s, x);
        if (drop < 0.0) certification_failure("0 <= G(0) - G(x)", x, drop);
        ratio_max = std::max(ratio_max, drop / (x * x));
    });
    const double alpha = std::max(1.0, ratio_max * (1.0 + margin));

    const double tb = pi / (2.0 * s.gamma);
    double g_min = kernel_transform(s, 0.0);
    for_grid(tb, n, [&](double t) { g_min = std::min(g_min, kernel_transform(s, t)); });
    if (!(g_min > 0.0)) certification_failure("g(t) >= beta > 0 on |t| <= pi/(2 gamma)", tb, g_min);
    const double beta = g_min * (1.0 - margin);

    const double tr = 50.0 / s.gamma;
    for_grid(tr, n, [&](double t) {
        const double v = kernel_transform(s, t);
        if (v < 0.0) certification_failure("g(t) >= 0", t, v);
    });
    for_grid(xr, n, [&](double x) {
        const double drop = g0 - kernel_eval(s, x);
        if (drop > alpha * x * x) certification_failure("G(0) - G(x) <= alpha x^2", x, drop);
    });
    return {s, alpha, beta, margin, n};
}

WindowKernel certify_inverse(const KernelShape& s, long n, double margin) {
    const double g0 = kernel_eval(s, 0.0);
    if (!(g0 > 0.0)) certification_failure("G(0) > 0", 0.0, g0);

    const double curvature = kernel_curvature(s);
    if (!(curvature > 0.0)) certification_failure("G(0) - G(x) > 0 near x = 0", 0.0, curvature);

    double ratio_min = curvature;
    for_grid(s.gamma, n, [&](double x) {
        const double drop = g0 - kernel_eval(s, x);
        if (!(drop > 0.0)) certification_failure("G(0) - G(x) > 0", x, drop);
        ratio_min = std::min(ratio_min, drop / (x * x));
    });
    const double alpha = std::min(ratio_min * (1.0 - margin), g0);

    const double xr = s.support_radius() * 1.5;
    for_grid(xr, n, [&](double x) {
        const double drop = g0 - kernel_eval(s, x);
        if (!(drop > 0.0)) certification_failure("G(0) - G(x) > 0", x, drop);
        if (x <= s.gamma && drop < alpha * x * x)
            certification_failure("G(0) - G(x) >= alpha x^2", x, drop);
    });

    double g_max = kernel_transform(s, 0.0);
    for_grid(s.R, n, [&](double t) { g_max = std::max(g_max, kernel_transform(s, t)); });
    const double beta = g_max * (1.0 + margin);

    const double span = 50.0 / s.gamma;
    for (long i = 0; i <= n; ++i) {
        const double t = s.R + span * static_cast<double>(i) / static_cast<double>(n);
        const double v = kernel_transform(s, t);
        if (v > 0.0) certification_failure("g(t) <= 0 for |t| >= R", t, v);
    }
    for_grid(s.R + span, n, [&](double t) {
        const double v = kernel_transform(s, t);
        if (v > beta) certification_failure("g(t) <= beta", t, v);
    });
    return {s, alpha, beta, margin, n};
}

} // namespace

WindowKernel certify_constants(const KernelShape& shape, long grid_points, double safety_margin) {
    if (grid_points < 10000) throw StructuralError("certification needs at least 10^4 grid points");
    if (!(safety_margin >= 0.0 && safety_margin < 1.0)) throw StructuralError("safety margin must be in [0, 1)");
    return shape.variant == KernelVariant::Direct ? certify_direct(shape, grid_points, safety_margin)
                                                  : certify_inverse(shape, grid_points, safety_margin);
}

std::string to_string(KernelVariant v) { return v == KernelVariant::Direct ? "direct" : "inverse"; }
std::string to_string(SupportConvention s) { return s == SupportConvention::Truncated ? "truncated" : "exact"; }

nlohmann::json to_json(const KernelShape& shape) {
    nlohmann::json j{{"variant", to_string(shape.variant)},
                     {"gamma", shape.gamma},
                     {"support", to_string(shape.support)}};
    if (shape.variant == KernelVariant::Inverse) j["R"] = shape.R;
    return j;
}

nlohmann::json to_json(const WindowKernel& kernel) {
    auto j = to_json(kernel.shape);
    j["alpha"] = kernel.alpha;
    j["beta"] = kernel.beta;
    j["safety_margin"] = kernel.safety_margin;
    j["grid_points"] = kernel.grid_points;
    return j;
}

KernelShape kernel_shape_from_json(const nlohmann::json& j) {
    try {
        const auto variant = j.at("variant").get<std::string>();
        const double gamma = j.at("gamma").get<double>();
        const auto support_name = j.value("support", std::string("truncated"));
        SupportConvention support;
        if (support_name == "truncated")
            support = SupportConvention::Truncated;
        else if (support_name == "exact")
            support = SupportConvention::Exact;
        else
            throw StructuralError("unknown support convention \"" + support_name + "\"");
        if (variant == "direct") return KernelShape::direct(gamma, support);
        if (variant == "inverse") return KernelShape::inverse(gamma, j.at("R").get<double>(), support);
        throw StructuralError("unknown kernel variant \"" + variant + "\"");
    } catch (const nlohmann::json::exception& e) {
        throw StructuralError(std::string("malformed kernel descriptor: ") + e.what());
    }
}

} // namespace ingham
