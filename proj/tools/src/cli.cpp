#include "ingham/cli.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <random>
#include <sstream>
#include <vector>

#include <openssl/evp.h>

#include "ingham/bounds.hpp"
#include "ingham/error.hpp"
#include "ingham/exponents.hpp"
#include "ingham/kernels.hpp"
#include "ingham/observability.hpp"
#include "ingham/sums.hpp"

#ifndef INGHAM_VERSION
#define INGHAM_VERSION "0.0.0"
#endif

namespace ingham::cli {

using json = nlohmann::json;
using Rng = std::mt19937_64;

namespace {

constexpr std::array<std::pair<std::string_view, Command>, 8> command_names{{
    {"gaps", Command::Gaps},
    {"kernel", Command::Kernel},
    {"poisson", Command::Poisson},
    {"frame", Command::Frame},
    {"haraux", Command::Haraux},
    {"string", Command::String},
    {"beam", Command::Beam},
    {"scan", Command::Scan},
}};

const json& require(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw StructuralError(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

// "sequence" object, or the omegas/gamma fields at top level
ExponentSequence read_sequence(const json& in) {
    return sequence_from_json(in.contains("sequence") ? in.at("sequence") : in);
}

std::string role_string(const GapClassification& cls) {
    std::string out;
    for (std::size_t k = 0; k < cls.sequence_size; ++k) {
        if (k) out += ' ';
        switch (cls.role(k)) {
        case GapClassification::Role::A1: out += "A1"; break;
        case GapClassification::Role::Lead: out += "lead"; break;
        case GapClassification::Role::Partner: out += "partner"; break;
        }
    }
    return out;
}

json classification_summary(const GapClassification& cls, const ExponentSequence& seq) {
    json j = to_json(cls, seq);
    j["a1_count"] = cls.a1.size();
    j["a2_lead_count"] = cls.a2_leads.size();
    j["roles"] = role_string(cls);
    return j;
}

// ---------------------------------------------------------------- gaps

json run_gaps(const json& in) {
    const auto seq = read_sequence(in);
    const auto validation = validate_weak_gap(seq);
    json out{{"sequence", to_json(seq)}, {"validation", to_json(validation)}};
    const auto cls = classify(seq);  // throws weak_gap with the violations
    out["classification"] = classification_summary(cls, seq);
    std::optional<BandMask> mask;
    if (in.contains("delta")) {
        mask = band_mask(seq, in.at("delta").get<double>());
        out["band"] = to_json(*mask);
    }
    json rows = json::array();
    for (std::size_t k = 0; k < seq.size(); ++k) {
        const auto role = cls.role(k);
        json row{{"k", k},
                 {"omega", seq[k]},
                 {"role", role == GapClassification::Role::A1     ? "A1"
                          : role == GapClassification::Role::Lead ? "lead"
                                                                  : "partner"}};
        if (mask) row["admissible"] = static_cast<bool>(mask->admissible[k]);
        rows.push_back(row);
    }
    out["rows"] = rows;
    return out;
}

// ---------------------------------------------------------------- kernel

json run_kernel(const json& in) {
    const auto shape = kernel_shape_from_json(require(in, "kernel"));
    const long points = in.value("grid_points", 10000L);
    const auto kernel = certify_constants(shape, points);
    const auto decay = transform_decay(shape);
    json out{{"kernel", to_json(kernel)},
             {"G0", kernel_eval(shape, 0.0)},
             {"curvature", kernel_curvature(shape)},
             {"decay", {{"C", decay.C}, {"p", decay.p}, {"threshold", decay.threshold}}}};
    if (in.contains("samples")) {
        const long n = in.at("samples").get<long>();
        if (n < 2) throw StructuralError("samples must be at least 2");
        const double r = shape.support_radius();
        json rows = json::array();
        for (long i = 0; i < n; ++i) {
            const double x = -r + 2.0 * r * static_cast<double>(i) / static_cast<double>(n - 1);
            rows.push_back({{"x", x}, {"G", kernel_eval(shape, x)}, {"g", kernel_transform(shape, x)}});
        }
        out["rows"] = rows;
    }
    return out;
}

// ---------------------------------------------------------------- poisson

// Weak-gap sequence from singletons and close pairs, centred on zero.
ExpSum random_sum(const json& spec, Rng& rng) {
    const long terms = spec.value("terms", 10L);
    if (terms < 1 || terms > 256) throw StructuralError("terms must be in [1, 256]");
    const double gamma = spec.value("gamma", 1.0);
    const double gamma0 = spec.value("gamma0", 0.6 * gamma);
    const double pair_probability = spec.value("pair_probability", 0.4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> w;
    double pos = 0.0;
    bool prev_pair = false;
    while (static_cast<long>(w.size()) < terms) {
        const bool pair = terms - static_cast<long>(w.size()) >= 2 && u(rng) < pair_probability;
        if (!w.empty()) pos += (pair || prev_pair) ? (2.0 + u(rng)) * gamma : (1.0 + 1.5 * u(rng)) * gamma;
        w.push_back(pos);
        if (pair) {
            pos += (0.05 + 0.85 * u(rng)) * gamma0;
            w.push_back(pos);
        }
        prev_pair = pair;
    }
    const double mid = 0.5 * (w.front() + w.back());
    for (double& x : w) x -= mid;
    std::vector<cplx> coeffs(w.size());
    for (auto& c : coeffs) {
        const double re = normal(rng);
        const double im = normal(rng);
        c = {re, im};
    }
    return {ExponentSequence(std::move(w), gamma, gamma0), std::move(coeffs)};
}

json run_poisson(const json& in, double tol, std::uint64_t seed) {
    Rng rng(seed);
    const ExpSum sum = in.contains("random") ? random_sum(in.at("random"), rng) : exp_sum_from_json(require(in, "sum"));
    const auto& seq = sum.sequence();
    double reach = 0.0;
    for (double w : seq.omegas()) reach = std::max(reach, std::abs(w));
    const double delta = in.contains("delta") ? in.at("delta").get<double>() : 0.9 * pi / (reach + 0.5 * seq.gamma());
    const KernelShape kernel = in.contains("kernel")
                                   ? kernel_shape_from_json(in.at("kernel"))
                                   : KernelShape::direct(0.5 * seq.gamma(), SupportConvention::Exact);
    PoissonOptions options;
    options.tail_tol = in.value("tail_tol", options.tail_tol);
    const auto sides = poisson_sides(sum, kernel, delta, options);
    const double diff = std::abs(sides.lhs - sides.rhs);
    const double allowed = sides.tail_bound + tol * (1.0 + std::abs(sides.rhs));
    return {{"sum", to_json(sum)},
            {"kernel", to_json(kernel)},
            {"delta", delta},
            {"sides", to_json(sides)},
            {"abs_diff", diff},
            {"allowed", allowed},
            {"identity_holds", diff <= allowed}};
}

// ---------------------------------------------------------------- frame / haraux

json run_frame(const json& in, bool throw_on_singular) {
    const auto seq = read_sequence(in);
    const auto grid = grid_from_json(require(in, "grid"));
    const auto cls = classify(seq);
    const auto report = frame_constants(seq, grid, cls);
    if (throw_on_singular && report.singular)
        throw ValidationError("singular_pencil", "singular pencil", to_json(report));
    return {{"sequence", to_json(seq)},
            {"grid", to_json(grid)},
            {"classification", classification_summary(cls, seq)},
            {"frame", to_json(report)}};
}

json run_haraux(const json& in) {
    const auto seq = read_sequence(in);
    const auto grid = grid_from_json(require(in, "grid"));
    const double omega_prime = require(in, "omega_prime").get<double>();
    const long J_prime = require(in, "J_prime").get<long>();
    const auto cls = classify(seq);
    const auto report = extended_frame_constants(seq, band_mask(seq, grid.delta), omega_prime, grid, J_prime, cls);
    return {{"sequence", to_json(seq)},
            {"grid", to_json(grid)},
            {"omega_prime", omega_prime},
            {"J_prime", J_prime},
            {"classification", classification_summary(cls, seq)},
            {"haraux", to_json(report)}};
}

// ---------------------------------------------------------------- string / beam

CoupledSystem read_system(const json& in, SystemKind kind, const SamplingGrid& grid) {
    json sj = require(in, "system");
    sj["kind"] = kind == SystemKind::String ? "string" : "beam";
    if (sj.value("fill_to_caps", false)) {
        // every mode allowed by the caps at this delta, zero amplitudes
        CoupledSystem probe;
        probe.kind = kind;
        probe.a = require(sj, "a").get<double>();
        if (sj.contains("gamma")) probe.gamma = sj.at("gamma").get<double>();
        probe.left.push_back({1, 0.0, 0.0});
        json left = json::array(), right = json::array();
        const auto nl = static_cast<long>(std::floor(mode_cap(probe, Side::Left, grid.delta)));
        const auto nr = static_cast<long>(std::floor(mode_cap(probe, Side::Right, grid.delta)));
        for (long n = 1; n <= nl; ++n) left.push_back({{"n", n}});
        for (long n = 1; n <= nr; ++n) right.push_back({{"n", n}});
        sj["left"] = left;
        sj["right"] = right;
        sj.erase("fill_to_caps");
    }
    return system_from_json(sj);
}

bool all_zero(const CoupledSystem& sys) {
    for (const auto* side : {&sys.left, &sys.right})
        for (const auto& m : *side)
            if (m.plus != cplx{} || m.minus != cplx{}) return false;
    return true;
}

double relative_amplitude_error(const CoupledSystem& truth, const CoupledSystem& got) {
    double err = 0.0, norm = 0.0;
    auto side = [&](const std::vector<Mode>& a, const std::vector<Mode>& b) {
        for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
            err += std::norm(a[i].plus - b[i].plus) + std::norm(a[i].minus - b[i].minus);
            norm += std::norm(a[i].plus) + std::norm(a[i].minus);
        }
    };
    side(truth.left, got.left);
    side(truth.right, got.right);
    return norm > 0.0 ? std::sqrt(err / norm) : std::sqrt(err);
}

json run_system(const json& in, SystemKind kind, double tol, std::uint64_t seed) {
    const auto grid = grid_from_json(require(in, "grid"));
    const auto sys = read_system(in, kind, grid);
    const double epsilon = in.value("epsilon", 0.1);
    ObservabilityOptions options;
    options.trials = in.value("trials", options.trials);
    options.seed = seed;
    options.strict_horizon = in.value("strict_horizon", false);
    const auto report = verify_observability(sys, grid, epsilon, options);
    const auto exps = observability_exponents(kind, epsilon);
    json out{{"system", to_json(sys)},
             {"grid", to_json(grid)},
             {"epsilon", epsilon},
             {"sobolev", {{"s0", exps.s0}, {"s1", exps.s1}}},
             {"horizon_threshold", horizon_threshold(sys)},
             {"mode_caps",
              {{"left", mode_cap(sys, Side::Left, grid.delta)}, {"right", mode_cap(sys, Side::Right, grid.delta)}}},
             {"observability", to_json(report)}};
    if (in.value("round_trip", false)) {
        CoupledSystem data = sys;
        if (all_zero(data)) {
            Rng rng(seed);
            data = randomize_amplitudes(sys, rng);
        }
        const auto tagged = assemble_exponents(data);
        const auto trace = observe(data, grid);
        const auto rec = reconstruct(trace, tagged);
        out["round_trip"] = {{"data", to_json(data)},
                             {"reconstruction", to_json(rec)},
                             {"relative_amplitude_error", relative_amplitude_error(data, rec.recovered)},
                             {"consistent", rec.relative_residual <= tol}};
        json rows = json::array();
        for (long j = -grid.J; j <= grid.J; ++j) {
            const cplx s = trace.samples[static_cast<std::size_t>(j + grid.J)];
            rows.push_back({{"j", j}, {"t", grid.time(j)}, {"re", s.real()}, {"im", s.imag()}});
        }
        out["rows"] = rows;
    }
    return out;
}

// ---------------------------------------------------------------- scan

struct Axis {
    std::string name;
    std::vector<double> values;
};

std::vector<double> axis_values(const json& a) {
    if (a.contains("values")) return a.at("values").get<std::vector<double>>();
    const double from = require(a, "from").get<double>();
    const double to = require(a, "to").get<double>();
    const long steps = require(a, "steps").get<long>();
    const bool log = a.value("scale", std::string("linear")) == "log";
    if (steps < 1) throw ValidationError("invalid_axis_range", "axis needs at least one step", a);
    if (log && !(from > 0.0 && to > 0.0))
        throw ValidationError("invalid_axis_range", "log axis needs positive endpoints", a);
    std::vector<double> out;
    for (long i = 0; i < steps; ++i) {
        const double s = steps == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(steps - 1);
        out.push_back(log ? from * std::pow(to / from, s) : from + (to - from) * s);
    }
    return out;
}

void check_axis(const Axis& axis, const std::string& mode, const json& base) {
    auto bad = [&](const std::string& why) {
        throw ValidationError("invalid_axis_range", "axis \"" + axis.name + "\": " + why,
                              {{"axis", axis.name}, {"values", axis.values}});
    };
    if (axis.values.empty()) bad("no values");
    const bool seq_mode = mode == "frame" || mode == "haraux";
    const bool sys_mode = mode == "string" || mode == "beam";
    for (double v : axis.values) {
        if (!std::isfinite(v)) bad("non-finite value");
        const bool integer = v == std::round(v);
        if (axis.name == "delta") {
            if (!(v > 0.0)) bad("delta must be positive");
        } else if (axis.name == "J") {
            if (!integer || v < 1.0) bad("J must be a positive integer");
        } else if (axis.name == "J_prime") {
            if (mode != "haraux") bad("only haraux scans have J'");
            if (!integer || v < 1.0) bad("J' must be a positive integer");
        } else if (axis.name == "a") {
            if (!sys_mode) bad("only string and beam scans have a junction");
            if (!(v > 0.0 && v < 1.0)) bad("a must lie in (0, 1)");
        } else if (axis.name == "gamma0") {
            if (!seq_mode) bad("only frame and haraux scans have gamma0");
            const json& sj = base.contains("sequence") ? base.at("sequence") : base;
            const double gamma = require(sj, "gamma").get<double>();
            if (!(v > 0.0 && v <= gamma)) bad("gamma0 must lie in (0, gamma]");
        } else {
            bad("unknown axis (expected delta, J, J_prime, a or gamma0)");
        }
    }
}

void apply_axis(json& cfg, const std::string& name, double v) {
    if (name == "delta") cfg["grid"]["delta"] = v;
    else if (name == "J") cfg["grid"]["J"] = static_cast<long>(v);
    else if (name == "J_prime") cfg["J_prime"] = static_cast<long>(v);
    else if (name == "a") cfg["system"]["a"] = v;
    else if (name == "gamma0") (cfg.contains("sequence") ? cfg["sequence"] : cfg)["gamma0"] = v;
}

// scalars at the top level and one object level down, as dotted names
void flatten_into(json& row, const json& value, const std::string& prefix, int depth) {
    for (const auto& [key, v] : value.items()) {
        const std::string name = prefix.empty() ? key : prefix + "." + key;
        if (v.is_object()) {
            if (depth > 0) flatten_into(row, v, name, depth - 1);
        } else if (!v.is_array()) {
            row[name] = v;
        }
    }
}

json scan_point(const std::string& mode, const json& cfg, double tol, std::uint64_t seed) {
    if (mode == "frame") return run_frame(cfg, false);
    if (mode == "haraux") return run_haraux(cfg);
    if (mode == "string") return run_system(cfg, SystemKind::String, tol, seed);
    return run_system(cfg, SystemKind::Beam, tol, seed);
}

json run_continuum_scan(const json& in) {
    const auto seq = read_sequence(in);
    const double R = require(in, "R").get<double>();
    std::vector<long> J_list;
    if (in.contains("J_list"))
        J_list = in.at("J_list").get<std::vector<long>>();
    else
        for (long J = 8; J <= 1024; J *= 2) J_list.push_back(J);
    const auto cls = classify(seq);
    const auto rows = continuum_limit_scan(seq, cls, R, J_list);
    json out{{"mode", "continuum"}, {"sequence", to_json(seq)}, {"R", R}};
    json table = json::array();
    bool monotone = true;
    double previous = std::numeric_limits<double>::infinity();
    for (const auto& r : rows) {
        table.push_back(to_json(r));
        const double gap = std::max(r.gap_min, r.gap_max);
        if (gap > previous) monotone = false;
        previous = gap;
    }
    out["gap_monotone"] = monotone;
    out["rows"] = table;
    return out;
}

json run_scan(const json& in, double tol, std::uint64_t seed) {
    const std::string mode = in.value("mode", std::string("frame"));
    if (mode == "continuum") return run_continuum_scan(in);
    if (mode != "frame" && mode != "haraux" && mode != "string" && mode != "beam")
        throw StructuralError("unknown scan mode \"" + mode + "\"");
    std::vector<Axis> axes;
    if (in.contains("axes")) {
        for (const auto& a : in.at("axes")) axes.push_back({require(a, "name").get<std::string>(), axis_values(a)});
    }
    if (axes.size() > 2) throw ValidationError("invalid_axis_range", "at most two sweep axes", in.at("axes"));
    json base = in;
    base.erase("axes");
    base.erase("mode");
    for (const auto& axis : axes) check_axis(axis, mode, base);

    std::vector<std::size_t> sizes;
    for (const auto& axis : axes) sizes.push_back(axis.values.size());
    std::size_t total = 1;
    for (auto s : sizes) total *= s;

    json rows = json::array();
    for (std::size_t flat = 0; flat < total; ++flat) {
        json cfg = base;
        json row = json::object();
        std::size_t rem = flat;
        for (std::size_t i = axes.size(); i-- > 0;) {
            const double v = axes[i].values[rem % sizes[i]];
            rem /= sizes[i];
            apply_axis(cfg, axes[i].name, v);
        }
        for (const auto& axis : axes) {
            const json& v = axis.name == "delta" || axis.name == "J" ? cfg["grid"][axis.name]
                            : axis.name == "J_prime"                 ? cfg["J_prime"]
                            : axis.name == "a"                       ? cfg["system"]["a"]
                            : (cfg.contains("sequence") ? cfg["sequence"] : cfg)["gamma0"];
            row[axis.name] = v;
        }
        try {
            flatten_into(row, scan_point(mode, cfg, tol, seed), "", 1);
            row["error"] = "";
        } catch (const ValidationError& e) {
            row["error"] = e.kind();
        }
        rows.push_back(row);
    }
    json axes_json = json::array();
    for (const auto& axis : axes) axes_json.push_back({{"name", axis.name}, {"values", axis.values}});
    return {{"mode", mode}, {"axes", axes_json}, {"rows", rows}};
}

// ---------------------------------------------------------------- CSV

std::string csv_cell(const json& v) {
    if (v.is_null()) return "";
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
    if (v.is_number_float()) {
        std::array<char, 40> buf{};
        std::snprintf(buf.data(), buf.size(), "%.17g", v.get<double>());
        return buf.data();
    }
    const std::string s = v.is_string() ? v.get<std::string>() : v.dump();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    return quoted + "\"";
}

json error_json(const std::string& kind, const std::string& message, const json& details) {
    return {{"kind", kind}, {"message", message}, {"details", details}};
}

} // namespace

std::optional<Command> parse_command(std::string_view name) {
    for (const auto& [n, c] : command_names)
        if (n == name) return c;
    return std::nullopt;
}

std::string to_string(Command c) {
    for (const auto& [n, cc] : command_names)
        if (cc == c) return std::string(n);
    return "unknown";
}

std::optional<Format> parse_format(std::string_view name) {
    if (name == "json") return Format::Json;
    if (name == "csv") return Format::Csv;
    return std::nullopt;
}

std::string version() { return INGHAM_VERSION; }

std::string sha256_hex(std::string_view data) {
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("SHA-256 digest failed");
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 0xf];
    }
    return out;
}

json execute(Command command, const json& input, double tol, std::uint64_t seed) {
    switch (command) {
    case Command::Gaps: return run_gaps(input);
    case Command::Kernel: return run_kernel(input);
    case Command::Poisson: return run_poisson(input, tol, seed);
    case Command::Frame: return run_frame(input, true);
    case Command::Haraux: return run_haraux(input);
    case Command::String: return run_system(input, SystemKind::String, tol, seed);
    case Command::Beam: return run_system(input, SystemKind::Beam, tol, seed);
    case Command::Scan: return run_scan(input, tol, seed);
    }
    throw StructuralError("unknown command");
}

std::string result_to_csv(const json& result) {
    std::ostringstream out;
    if (result.contains("rows") && result.at("rows").is_array()) {
        std::vector<std::string> columns;  // sweep axes first, then the rest in key order
        if (result.contains("axes"))
            for (const auto& axis : result.at("axes")) columns.push_back(axis.at("name").get<std::string>());
        for (const auto& row : result.at("rows"))
            for (const auto& [key, _] : row.items())
                if (std::find(columns.begin(), columns.end(), key) == columns.end()) columns.push_back(key);
        for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << csv_cell(columns[i]);
        out << '\n';
        for (const auto& row : result.at("rows")) {
            for (std::size_t i = 0; i < columns.size(); ++i)
                out << (i ? "," : "") << (row.contains(columns[i]) ? csv_cell(row.at(columns[i])) : "");
            out << '\n';
        }
        return out.str();
    }
    json flat = json::object();
    flatten_into(flat, result, "", 8);
    out << "key,value\n";
    for (const auto& [key, v] : flat.items()) out << csv_cell(key) << ',' << csv_cell(v) << '\n';
    return out.str();
}

RunResult run(const RunConfig& config, std::string_view input_text) {
    json report{{"tool", "ingham"},
                {"version", version()},
                {"command", to_string(config.command)},
                {"input_digest", "sha256:" + sha256_hex(input_text)},
                {"rng", "mt19937_64"},
                {"seed", config.seed},
                {"tol", config.tol}};
    auto fail = [&](int code, const json& err) {
        report["status"] = "error";
        report["error"] = err;
        return RunResult{code, report.dump(2) + "\n"};
    };
    if (!(config.tol > 0.0)) return fail(exit_structural, error_json("structural", "tol must be positive", {}));
    try {
        const json input = json::parse(input_text);
        const json result = execute(config.command, input, config.tol, config.seed);
        if (config.format == Format::Csv) return {exit_ok, result_to_csv(result)};
        report["status"] = "ok";
        report["result"] = result;
        return {exit_ok, report.dump(2) + "\n"};
    } catch (const ValidationError& e) {
        return fail(exit_validation, error_json(e.kind(), e.what(), e.details()));
    } catch (const StructuralError& e) {
        return fail(exit_structural, error_json("structural", e.what(), {}));
    } catch (const json::exception& e) {
        return fail(exit_structural, error_json("structural", std::string("malformed input: ") + e.what(), {}));
    }
}

int run(const RunConfig& config) {
    std::string input;
    if (config.input_path == "-") {
        input.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
    } else {
        std::ifstream f(config.input_path, std::ios::binary);
        if (!f) {
            const json err{{"tool", "ingham"},
                           {"version", version()},
                           {"command", to_string(config.command)},
                           {"status", "error"},
                           {"error", error_json("structural", "cannot read input " + config.input_path, {})}};
            std::cerr << err.dump(2) << '\n';
            return exit_structural;
        }
        input.assign(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
    }
    const auto result = run(config, input);
    if (config.output_path == "-") {
        std::cout << result.report;
    } else {
        std::ofstream f(config.output_path, std::ios::binary);
        if (!(f << result.report)) {
            std::cerr << "cannot write output " << config.output_path << '\n';
            return exit_structural;
        }
    }
    return result.exit_code;
}

} // namespace ingham::cli
