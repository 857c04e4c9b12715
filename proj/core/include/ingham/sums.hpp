#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "ingham/exponents.hpp"
#include "ingham/kernels.hpp"
#include "ingham/numeric.hpp"

namespace ingham {

/// x(t) = sum_k x_k e^{i omega_k t} over a finite exponent window.
class ExpSum {
public:
    ExpSum(ExponentSequence seq, std::vector<cplx> coeffs);

    const ExponentSequence& sequence() const { return seq_; }
    std::span<const cplx> coeffs() const { return coeffs_; }
    std::size_t size() const { return coeffs_.size(); }

    /// x(t + shift) as a sum over the same exponents.
    ExpSum translated_in_time(double shift) const;

private:
    ExponentSequence seq_;
    std::vector<cplx> coeffs_;
};

/// x(t) = x' e^{i omega' t} + sum_k x_k e^{i omega_k t} with omega' outside the window.
class AugmentedExpSum {
public:
    AugmentedExpSum(ExpSum base, double omega_prime, cplx x_prime);

    const ExpSum& base() const { return base_; }
    double omega_prime() const { return omega_prime_; }
    cplx x_prime() const { return x_prime_; }
    /// min_k |omega_k - omega'|
    double gamma_prime() const { return gamma_prime_; }

private:
    ExpSum base_;
    double omega_prime_;
    cplx x_prime_;
    double gamma_prime_;
};

/// Sample points t' + j delta for j = -J..J.
struct SamplingGrid {
    double delta = 1.0;
    long J = 1;
    double t_shift = 0.0;

    SamplingGrid() = default;
    SamplingGrid(double delta, long J, double t_shift = 0.0);

    double time(long j) const { return t_shift + static_cast<double>(j) * delta; }
    long count() const { return 2 * J + 1; }
};

cplx eval(const ExpSum& sum, double t);
cplx eval(const AugmentedExpSum& sum, double t);

/// delta * sum_{j=-J}^{J} |x(t' + j delta)|^2
double sampled_energy(const ExpSum& sum, const SamplingGrid& grid);
double sampled_energy(const AugmentedExpSum& sum, const SamplingGrid& grid);

/// Integral of |x(t)|^2 over [-R, R], in closed form.
double continuous_energy(const ExpSum& sum, double R);

/// 2 sin(omega R) / omega with kappa(0) = 2R.
double continuous_kernel(double omega, double R);

struct PoissonSides {
    double lhs = 0.0;             // delta sum_{|j|<=J_tail} g(j delta) |x(j delta)|^2
    double rhs = 0.0;             // 2 pi sum_{k,n} G(omega_k - omega_n) x_k conj(x_n)
    double rhs_periodized = 0.0;  // same with the periodized kernel G_delta
    double tail_bound = 0.0;      // certified bound on the discarded |j| > J_tail terms
    long J_tail = 0;
};

struct PoissonOptions {
    double tail_tol = 1e-10;
    /// When false, coefficients outside the band are allowed (used to exhibit aliasing).
    bool enforce_band = true;
};

/// Both sides of the Poisson summatory identity for a window kernel.
/// Throws ValidationError("band_violation") listing offending indices and
/// ValidationError("window_exceeds_period") when pi/delta < gamma of the kernel.
PoissonSides poisson_sides(const ExpSum& sum, const KernelShape& kernel, double delta,
                           const PoissonOptions& options = {});

nlohmann::json to_json(const ExpSum& sum);
nlohmann::json to_json(const AugmentedExpSum& sum);
nlohmann::json to_json(const SamplingGrid& grid);
nlohmann::json to_json(const PoissonSides& sides);

/// Reads {"omegas", "coeffs", "omega_prime"?, "x_prime"?}; gamma/gamma0 come
/// from the object when present, otherwise from `gamma`.
ExpSum exp_sum_from_json(const nlohmann::json& j, std::optional<double> gamma = std::nullopt);
std::optional<AugmentedExpSum> augmented_from_json(const nlohmann::json& j, std::optional<double> gamma = std::nullopt);
SamplingGrid grid_from_json(const nlohmann::json& j);

nlohmann::json complex_to_json(cplx z);
cplx complex_from_json(const nlohmann::json& j);

} // namespace ingham
