#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ingham/bounds.hpp"
#include "ingham/exponents.hpp"
#include "ingham/sums.hpp"

namespace ingham {

enum class SystemKind { String, Beam };

enum class Side { Left, Right };

/// One standing mode sin(n pi x / a) on (0, a) (left) or sin(n pi (x - a)/(1 - a))
/// on (a, 1) (right), carrying the time factors plus e^{i w t} + minus e^{-i w t}.
struct Mode {
    int n = 1;
    cplx plus{};
    cplx minus{};
};

/// Two strings (u_tt = u_xx) or two simply supported beams (u_tt = -u_xxxx)
/// on (0, a) and (a, 1) sharing the clamped junction x = a.
struct CoupledSystem {
    SystemKind kind = SystemKind::String;
    double a = 0.5;
    std::vector<Mode> left;
    std::vector<Mode> right;
    /// Weak-gap parameter. Strings default to (pi/2) min{1/a, 1/(1-a)}; beams must set it.
    std::optional<double> gamma;

    void validate() const;
    double effective_gamma() const;
    /// Spatial wavenumber n pi / a (left) or n pi / (1 - a) (right).
    double wavenumber(Side side, int n) const;
    /// Time frequency: the wavenumber for strings, its square for beams.
    double frequency(Side side, int n) const;
};

/// Where an exponent came from: side, mode index and the sign of its frequency.
struct ModeTag {
    Side side = Side::Left;
    int n = 1;
    int sign = 1;
    double derivative_weight = 0.0;  // d/dx of the spatial mode at the junction, with the jump sign
};

struct TaggedExponents {
    SystemKind kind = SystemKind::String;
    double a = 0.5;
    ExponentSequence seq;
    std::vector<ModeTag> tags;
};

/// Merges the +-frequencies of both sides into one sorted sequence.
/// Throws ValidationError("junction_resonant") when frequencies coincide across
/// sides and ValidationError("weak_gap") when the merged set fails the gap test.
TaggedExponents assemble_exponents(const CoupledSystem& sys);

/// Modes above the caps tied to delta (empty when all are admissible).
struct CapViolation {
    Side side;
    int n;
    double cap;
};
std::vector<CapViolation> mode_cap_violations(const CoupledSystem& sys, double delta);
double mode_cap(const CoupledSystem& sys, Side side, double delta);

/// Observation horizon condition: J delta > 2 max{a, 1-a} (strings), J delta > pi/gamma (beams).
double horizon_threshold(const CoupledSystem& sys);

/// u_x(a-0, t) - u_x(a+0, t) as an exponential sum over the tagged exponents.
ExpSum trace_jump_sum(const CoupledSystem& sys, const TaggedExponents& tagged);
ExpSum trace_jump_sum(const CoupledSystem& sys);

/// Modal solution u(x, t) (complex in general; real when minus = conj(plus)).
cplx displacement(const CoupledSystem& sys, double x, double t);

struct ObservationTrace {
    SamplingGrid grid;
    std::vector<cplx> samples;  // j = -J..J

    double energy() const;
};

/// Samples the trace jump on the grid. Throws ValidationError("mode_cap") listing offending modes.
ObservationTrace observe(const CoupledSystem& sys, const SamplingGrid& grid);

enum class InitialDatum { U0, U1 };

/// Spectral Sobolev norm squared of u0 or u1: sum over modes of
/// (basis norm) * wavenumber^{2s} * |modal coefficient|^2, with basis norms
/// a/2 and (1-a)/2 and modal coefficients plus + minus (u0) or i w (plus - minus) (u1).
double sobolev_norm(const CoupledSystem& sys, double s, InitialDatum which);

/// Sobolev exponents of the observability estimate for the system kind.
struct SobolevPair {
    double s0;
    double s1;
};
SobolevPair observability_exponents(SystemKind kind, double epsilon);

struct ObservabilityReport {
    double C_empirical = 0.0;  // max ratio over trials (0 when trials == 0)
    double median_ratio = 0.0;
    double min_ratio = 0.0;
    double C_pencil = 0.0;     // sup of the ratio over all data with these modes
    double pencil_min_eig = 0.0;
    double pencil_max_eig = 0.0;
    bool pencil_near_singular = false;
    bool horizon_ok = true;
    long trials = 0;
    std::uint64_t seed = 0;
    std::vector<std::string> diagnostics;
};

struct ObservabilityOptions {
    long trials = 100;
    std::uint64_t seed = 0;
    bool strict_horizon = false;
};

/// Ratio (||u0||^2_{H^s0} + ||u1||^2_{H^s1}) / (delta sum |jump|^2) over random
/// data on the system's modes, plus the exact supremum from the pencil.
ObservabilityReport verify_observability(const CoupledSystem& sys, const SamplingGrid& grid, double epsilon,
                                         const ObservabilityOptions& options = {});

/// Random unit-disc amplitudes on the same modes as `sys`.
template <typename Rng>
CoupledSystem randomize_amplitudes(const CoupledSystem& sys, Rng& rng);

struct Reconstruction {
    std::vector<cplx> coefficients;  // per exponent of the tagged sequence
    CoupledSystem recovered;         // modal amplitudes (coefficients / derivative weights)
    double relative_residual = 0.0;
    double min_eig_rel = 0.0;
};

/// Least-squares recovery of the exponent coefficients from the trace samples
/// (Householder QR of the sample matrix). Throws ValidationError("rank_deficient").
Reconstruction reconstruct(const ObservationTrace& trace, const TaggedExponents& tagged);

nlohmann::json to_json(const CoupledSystem& sys);
CoupledSystem system_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ObservabilityReport& r);
nlohmann::json to_json(const Reconstruction& r);
std::string trace_to_csv(const ObservationTrace& trace);

/// Uniform draw from the closed unit disc.
template <typename Rng>
cplx unit_disc(Rng& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double r = std::sqrt(u(rng));
    const double theta = two_pi * u(rng);
    return std::polar(r, theta);
}

template <typename Rng>
CoupledSystem randomize_amplitudes(const CoupledSystem& sys, Rng& rng) {
    CoupledSystem out = sys;
    for (auto* side : {&out.left, &out.right})
        for (auto& m : *side) {
            m.plus = unit_disc(rng);
            m.minus = unit_disc(rng);
        }
    return out;
}

} // namespace ingham
