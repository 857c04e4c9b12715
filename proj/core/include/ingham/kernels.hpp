#pragma once

#include <string>

#include <nlohmann/json.hpp>

namespace ingham {

enum class KernelVariant { Direct, Inverse };

/// How the window G is evaluated outside [-gamma, gamma].
///
/// G = H*H with H = cos^2(pi x / 2 gamma) on [-gamma, gamma] is genuinely
/// supported on [-2 gamma, 2 gamma]. `Truncated` forces G = 0 for |x| >= gamma
/// (the property list used in the inequality chains); `Exact` keeps the true
/// convolution, which is the only variant that is a Fourier pair with g.
enum class SupportConvention { Truncated, Exact };

/// Uncertified description of one of the two windows.
///
///   Direct : G = H*H,                 g(t) = h(t)^2
///   Inverse: G = R^2 H*H + H'*H',     g(t) = (R^2 - t^2) h(t)^2
struct KernelShape {
    KernelVariant variant = KernelVariant::Direct;
    double gamma = 1.0;
    double R = 0.0;  // Inverse only
    SupportConvention support = SupportConvention::Truncated;

    static KernelShape direct(double gamma, SupportConvention s = SupportConvention::Truncated);
    static KernelShape inverse(double gamma, double R, SupportConvention s = SupportConvention::Truncated);

    /// Radius beyond which kernel_eval returns exactly 0.
    double support_radius() const;
};

/// Window with certified constants alpha and beta.
struct WindowKernel {
    KernelShape shape;
    double alpha = 0.0;
    double beta = 0.0;
    double safety_margin = 0.0;  // relative margin applied to the grid extremum
    long grid_points = 0;
};

/// Closed-form Fourier transform of H(x) = cos^2(pi x / 2 gamma) 1_{|x|<=gamma}:
/// pi^2 sin(gamma t) / (t (pi^2 - gamma^2 t^2)), removable singularities filled.
double h_transform(double gamma, double t);

/// (H*H)(x) and (H'*H')(x) in closed form, supported on [-2 gamma, 2 gamma].
double hh_convolution(double gamma, double x);
double dhdh_convolution(double gamma, double x);

/// G(x) under the shape's support convention. Even in x.
double kernel_eval(const KernelShape& shape, double x);
inline double kernel_eval(const WindowKernel& k, double x) { return kernel_eval(k.shape, x); }

/// g(t) = integral of the untruncated G(x) e^{-itx} dx. Real and even.
double kernel_transform(const KernelShape& shape, double t);
inline double kernel_transform(const WindowKernel& k, double t) { return kernel_transform(k.shape, t); }

/// -G''(0)/2, the limit of (G(0) - G(x))/x^2 as x -> 0.
double kernel_curvature(const KernelShape& shape);

/// Constants C, p with |g(t)| <= C / |t|^p for |t| >= threshold.
struct TransformDecay {
    double C;
    int p;
    double threshold;
};
TransformDecay transform_decay(const KernelShape& shape);

/// 2pi/delta-periodic extension: sum over integer shifts of G(x - 2 pi m / delta).
/// Throws ValidationError("window_exceeds_period") when pi/delta < gamma.
double periodize(const KernelShape& shape, double delta, double x);
inline double periodize(const WindowKernel& k, double delta, double x) { return periodize(k.shape, delta, x); }

/// Grid certification of alpha and beta (>= 10^4 points per interval).
/// Throws ValidationError("certification_failed") naming the violated
/// inequality and the grid point.
WindowKernel certify_constants(const KernelShape& shape, long grid_points = 10000,
                               double safety_margin = 0.01);

nlohmann::json to_json(const KernelShape& shape);
nlohmann::json to_json(const WindowKernel& kernel);
KernelShape kernel_shape_from_json(const nlohmann::json& j);

std::string to_string(KernelVariant v);
std::string to_string(SupportConvention s);

} // namespace ingham
