#pragma once

#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ingham/exponents.hpp"
#include "ingham/pencil.hpp"
#include "ingham/quadforms.hpp"
#include "ingham/sums.hpp"

namespace ingham {

/// S_ab = delta sum_j e^{-i (w_a - w_b)(t' + j delta)}, assembled through the
/// Dirichlet kernel, so that v^* S v is the sampled energy of sum_b v_b e^{i w_b t}.
HermitianMatrix sampled_gram(std::span<const double> omegas, const SamplingGrid& grid);

/// Same over the mask's active indices of `seq`.
HermitianMatrix sampled_gram(const ExponentSequence& seq, const SamplingGrid& grid, const BandMask& mask);

/// K_ab = kappa(w_a - w_b): v^* K v is the integral of |sum_b v_b e^{i w_b t}|^2 over [-R, R].
HermitianMatrix continuous_gram(std::span<const double> omegas, double R);

/// A pencil eigenvalue counts as zero below this fraction of the largest one.
inline constexpr double singular_rel_tol = 1e-10;

struct FrameBoundReport {
    double c_lower = 0.0;
    double c_upper = 0.0;
    long pencil_dim = 0;
    double min_eig = 0.0;
    double max_eig = 0.0;
    bool singular = false;
    bool horizon_ok = true;  // J delta > pi / gamma
    long sample_count = 0;
    std::vector<std::size_t> active;
    std::vector<std::string> diagnostics;
};

/// Generalized eigenproblem S v = lambda Q v behind a report.
struct FramePencil {
    HermitianMatrix S;
    HermitianMatrix Q;
    EigenDecomposition eig;
    std::vector<std::size_t> active;
};

/// Assembles the sampled Gram and the Q matrix on the band-admissible indices
/// (mask from band_mask(seq, grid.delta)) and solves the pencil.
/// Throws ValidationError("q_singular") when a chain gap is below 1e-12.
FramePencil frame_pencil(const ExponentSequence& seq, const SamplingGrid& grid, const GapClassification& cls);
FramePencil frame_pencil(const ExponentSequence& seq, const SamplingGrid& grid, const GapClassification& cls,
                         const BandMask& mask);

/// Sharp empirical c1, c2 with c1 Q(x) <= delta sum |x(t' + j delta)|^2 <= c2 Q(x).
FrameBoundReport frame_constants(const ExponentSequence& seq, const SamplingGrid& grid, const GapClassification& cls);
FrameBoundReport frame_constants(const ExponentSequence& seq, const SamplingGrid& grid, const GapClassification& cls,
                                 const BandMask& mask);

/// Contraction factor of the averaging filter on exponent omega_k:
/// |sinc((w_k - w') J' delta)| / |sinc((w_k - w') delta / 2)|.
/// Throws ValidationError("sampling_resonance") when (w_k - w') delta / 2 sits
/// within 1e-10 of a nonzero multiple of pi, and when w_k == w'.
double epsilon_k(double omega_k, double omega_prime, long J_prime, double delta);

/// (1/2J') sum_{n=-J'}^{J'-1} e^{i (omega - omega') n delta}, in closed form.
cplx averaging_factor(double omega, double omega_prime, long J_prime, double delta);

struct HarauxPlan {
    long J_prime = 1;
    double delta = 1.0;
    double omega_prime = 0.0;
    std::vector<std::size_t> indices;  // active indices the eps values refer to
    std::vector<double> eps_k;
    double eps_sup = 0.0;
    double eps_prime = 0.0;  // sup_k |sinc((w_k - w') J' delta)|
    double c_prime = 0.0;
    double lipschitz_L = 0.0;
    double gamma_prime = 0.0;
};

/// Lemma-5 style plan: eps', the largest bisection c' with |sinc| > eps' on
/// (0, c'), the Lipschitz constant and the per-index contraction factors.
/// Every active index must satisfy |w_k - w'| < 2 c' / delta.
HarauxPlan plan_haraux(const ExponentSequence& seq, const BandMask& mask, double omega_prime, long J_prime,
                       double delta);

/// y(t) = x(t) - (1/2J') sum_{n=-J'}^{J'-1} e^{-i w' n delta} x(t + n delta),
/// realized on the coefficients: y_k = (1 - f(w_k)) x_k and the w' term vanishes.
ExpSum haraux_filter(const AugmentedExpSum& aug, const HarauxPlan& plan);

struct ExtendedFrameReport {
    FrameBoundReport base;      // c1, c2 on the J grid
    FrameBoundReport extended;  // c3, c4 on the J + J' grid with w' appended
    HarauxPlan plan;
    double c4_formula = 0.0;
    bool c4_within_formula = false;
};

ExtendedFrameReport extended_frame_constants(const ExponentSequence& seq, const BandMask& mask, double omega_prime,
                                             const SamplingGrid& grid, long J_prime, const GapClassification& cls);

/// (1 + (2J + 2J' + 1)/(2J + 1)) max{4 c2, 12 J delta} (1 + (J' delta)^2)
double c4_upper_formula(double c2, long J, long J_prime, double delta);

struct ContinuumRow {
    long J = 0;
    double delta = 0.0;
    long active_count = 0;
    bool active_changed = false;
    double discrete_min = 0.0;
    double discrete_max = 0.0;
    double continuous_min = 0.0;
    double continuous_max = 0.0;
    double gap_min = 0.0;  // relative gaps
    double gap_max = 0.0;
    bool singular = false;
};

/// For each J: delta = R/J, discrete pencil on the J grid against the
/// continuous-energy pencil on [-R, R], over the same active set.
std::vector<ContinuumRow> continuum_limit_scan(const ExponentSequence& seq, const GapClassification& cls, double R,
                                               std::span<const long> J_list);

nlohmann::json to_json(const FrameBoundReport& r);
nlohmann::json to_json(const HarauxPlan& p);
nlohmann::json to_json(const ExtendedFrameReport& r);
nlohmann::json to_json(const ContinuumRow& r);

} // namespace ingham
