// Command-line front end: solve / sweep / scan / wavefunction over the
// two closed-circuit tunneling models.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "loopmode/oracle.hpp"
#include "loopmode/solver.hpp"

using nlohmann::json;
using namespace loopmode;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalidInput = 2;
constexpr int kExitNoRoots = 3;
constexpr int kExitEvaluationError = 4;
constexpr int kExitNotAMode = 5;

constexpr double kDegPerRad = 180.0 / M_PI;

[[noreturn]] void fail(int code, const std::string& msg) {
    std::cerr << "error: " << msg << "\n";
    std::exit(code);
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9e", v);
    return buf;
}

// Flag map from argv plus optional JSON config; explicit flags win.
struct Args {
    std::map<std::string, std::vector<std::string>> flags;
    std::vector<std::string> positionals;

    bool has(const std::string& key) const { return flags.count(key) > 0; }
    std::string get(const std::string& key, const std::string& fallback = "") const {
        auto it = flags.find(key);
        return it == flags.end() ? fallback : it->second.back();
    }
    double get_num(const std::string& key) const {
        const std::string s = get(key);
        try {
            std::size_t pos = 0;
            const double v = std::stod(s, &pos);
            if (pos != s.size()) throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            fail(kExitInvalidInput, "flag --" + key + " expects a number, got '" + s + "'");
        }
    }
};

const std::vector<std::string> kKnownFlags = {
    "energy",    "potential", "barrier-length", "pre-barrier-length", "theta",
    "free",      "range",     "constants",      "format",             "config",
    "steps",     "samples",   "branch",         "b-list",             "log-points",
    "model"};

bool known_flag(const std::string& name) {
    for (const auto& f : kKnownFlags)
        if (f == name) return true;
    return false;
}

Args parse_args(int argc, char** argv, int first) {
    Args a;
    for (int i = first; i < argc; ++i) {
        std::string tok = argv[i];
        if (tok.rfind("--", 0) == 0) {
            std::string name = tok.substr(2), value;
            const auto eq = name.find('=');
            if (eq != std::string::npos) {
                value = name.substr(eq + 1);
                name = name.substr(0, eq);
            } else {
                if (i + 1 >= argc) fail(kExitInvalidInput, "flag --" + name + " needs a value");
                value = argv[++i];
            }
            if (!known_flag(name)) fail(kExitInvalidInput, "unknown flag --" + name);
            a.flags[name].push_back(value);
        } else {
            a.positionals.push_back(tok);
        }
    }
    if (a.has("config")) {
        std::ifstream in(a.get("config"));
        if (!in) fail(kExitInvalidInput, "cannot open config file " + a.get("config"));
        json cfg;
        try {
            in >> cfg;
        } catch (const std::exception& e) {
            fail(kExitInvalidInput, std::string("config parse error: ") + e.what());
        }
        for (const auto& [key, value] : cfg.items()) {
            if (key == "command" || a.has(key)) continue;  // explicit flags override
            if (!known_flag(key)) fail(kExitInvalidInput, "unknown config key " + key);
            if (value.is_array()) {
                for (const auto& v : value)
                    a.flags[key].push_back(v.is_string() ? v.get<std::string>() : v.dump());
            } else if (value.is_string()) {
                a.flags[key].push_back(value.get<std::string>());
            } else {
                a.flags[key].push_back(value.dump());
            }
        }
    }
    return a;
}

struct Range {
    double lo, hi;
    std::optional<double> step;
};

Range parse_range(const std::string& s) {
    Range r;
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() < 2 || parts.size() > 3)
        fail(kExitInvalidInput, "--range expects lo:hi[:step], got '" + s + "'");
    try {
        r.lo = std::stod(parts[0]);
        r.hi = std::stod(parts[1]);
        if (parts.size() == 3) r.step = std::stod(parts[2]);
    } catch (const std::exception&) {
        fail(kExitInvalidInput, "--range expects numbers in lo:hi[:step], got '" + s + "'");
    }
    if (!(r.lo < r.hi)) fail(kExitInvalidInput, "--range requires lo < hi");
    return r;
}

ConstantsProfile profile_from(const Args& a) {
    const std::string mode = a.get("constants", "si");
    if (mode == "si") return make_profile(ConstantsMode::SI);
    if (mode == "paper") return make_profile(ConstantsMode::PaperEffective);
    fail(kExitInvalidInput, "--constants must be si or paper, got '" + mode + "'");
}

Model model_from(const Args& a) {
    std::string m = a.positionals.empty() ? a.get("model") : a.positionals[0];
    if (m == "square") return Model::square;
    if (m == "triangular") return Model::triangular;
    fail(kExitInvalidInput, "model must be square or triangular, got '" + m + "'");
}

FreeParameter free_from(const std::string& name) {
    if (name == "theta") return FreeParameter::theta;
    if (name == "energy") return FreeParameter::energy;
    if (name == "barrier-height") return FreeParameter::barrier_height;
    if (name == "barrier-length") return FreeParameter::barrier_length;
    if (name == "pre-barrier-length") return FreeParameter::pre_barrier_length;
    fail(kExitInvalidInput, "--free must name a model parameter, got '" + name + "'");
}

std::string free_name(FreeParameter f) {
    switch (f) {
        case FreeParameter::theta: return "theta";
        case FreeParameter::energy: return "energy";
        case FreeParameter::barrier_height: return "barrier-height";
        case FreeParameter::barrier_length: return "barrier-length";
        case FreeParameter::pre_barrier_length: return "pre-barrier-length";
    }
    return "?";
}

// Domain checks before any solve starts; names the violated rule.
void validate_problem(const ProblemSpec& spec, FreeParameter free) {
    if (free != FreeParameter::energy) {
        if (!(spec.energy > 0.0)) fail(kExitInvalidInput, "energy must be positive");
        if (free != FreeParameter::barrier_height && !(spec.energy < spec.potential))
            fail(kExitInvalidInput, "energy must be below barrier potential");
    }
    if (free != FreeParameter::barrier_length && !(spec.barrier_length > 0.0))
        fail(kExitInvalidInput, "barrier length must be positive");
}

ProblemSpec spec_from(const Args& a, Model model, FreeParameter free) {
    ProblemSpec spec;
    spec.model = model;
    spec.energy = a.has("energy") ? a.get_num("energy") : 0.0;
    spec.potential = a.has("potential") ? a.get_num("potential") : 0.0;
    spec.barrier_length = a.has("barrier-length") ? a.get_num("barrier-length") : 0.0;
    if (a.has("theta")) {
        spec.theta = a.get_num("theta") / kDegPerRad;
        spec.fourth_is_theta = true;
    } else if (a.has("pre-barrier-length")) {
        spec.pre_barrier = a.get_num("pre-barrier-length");
        spec.fourth_is_theta = false;
    }
    validate_problem(spec, free);
    return spec;
}

json config_echo(const Args& a, const std::string& command) {
    json cfg;
    cfg["command"] = command;
    if (!a.positionals.empty()) cfg["model"] = a.positionals[0];
    for (const auto& [key, values] : a.flags) {
        if (key == "config" || key == "format") continue;
        if (values.size() == 1)
            cfg[key] = values[0];
        else
            cfg[key] = values;
    }
    return cfg;
}

int cmd_solve(const Args& a) {
    const Model model = model_from(a);
    const FreeParameter free = free_from(a.get("free", "theta"));
    const ProblemSpec spec = spec_from(a, model, free);
    const ConstantsProfile profile = profile_from(a);
    if (!a.has("range")) fail(kExitInvalidInput, "--range is required for solve");
    Range range = parse_range(a.get("range"));
    const bool angular = (free == FreeParameter::theta);
    double lo = range.lo, hi = range.hi;
    if (angular) {
        lo /= kDegPerRad;
        hi /= kDegPerRad;
    }
    const int steps = a.has("steps") ? static_cast<int>(a.get_num("steps"))
                                     : kDefaultStepsPerTwoPi;
    std::vector<ModeRoot> roots;
    try {
        roots = solve_free_parameter(spec, free, lo, hi, profile, steps);
    } catch (const std::domain_error& e) {
        fail(kExitInvalidInput, e.what());
    } catch (const EvaluationError& e) {
        fail(kExitEvaluationError, e.what());
    }
    const std::string format = a.get("format", "csv");
    if (format == "json") {
        json out;
        out["config"] = config_echo(a, "solve");
        out["roots"] = json::array();
        for (const auto& r : roots) {
            json jr;
            jr["free"] = free_name(r.free_parameter);
            jr["value"] = fmt(angular ? r.value * kDegPerRad : r.value);
            jr["residual"] = fmt(r.residual);
            jr["branch"] = r.branch_index;
            out["roots"].push_back(jr);
        }
        std::cout << out.dump(2) << "\n";
    } else if (format == "csv") {
        std::cout << "free,value,residual,branch\n";
        for (const auto& r : roots)
            std::cout << free_name(r.free_parameter) << ","
                      << fmt(angular ? r.value * kDegPerRad : r.value) << ","
                      << fmt(r.residual) << "," << r.branch_index << "\n";
    } else {
        fail(kExitInvalidInput, "--format must be csv or json");
    }
    return roots.empty() ? kExitNoRoots : kExitOk;
}

int cmd_sweep(const Args& a) {
    const ConstantsProfile profile = profile_from(a);
    const double energy = a.get_num("energy");
    const double potential = a.get_num("potential");
    if (!(energy > 0.0) || !(energy < potential))
        fail(kExitInvalidInput, "energy must satisfy 0 < energy < potential");
    std::vector<double> b_list;
    if (a.has("b-list")) {
        std::stringstream ss(a.get("b-list"));
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                b_list.push_back(std::stod(item));
            } catch (const std::exception&) {
                fail(kExitInvalidInput, "--b-list expects comma-separated numbers");
            }
        }
    } else if (a.has("range")) {
        const Range r = parse_range(a.get("range"));
        if (a.has("log-points")) {
            const int n = static_cast<int>(a.get_num("log-points"));
            if (n < 2 || !(r.lo > 0.0))
                fail(kExitInvalidInput, "--log-points needs n >= 2 and a positive range");
            for (int i = 0; i < n; ++i)
                b_list.push_back(r.lo * std::pow(r.hi / r.lo, static_cast<double>(i) / (n - 1)));
        } else {
            const double step = r.step.value_or((r.hi - r.lo) / 10.0);
            if (!(step > 0.0)) fail(kExitInvalidInput, "--range step must be positive");
            for (double b = r.lo; b <= r.hi * (1.0 + 1e-12); b += step) b_list.push_back(b);
        }
    } else {
        fail(kExitInvalidInput, "sweep needs --b-list or --range");
    }
    const int steps = a.has("steps") ? static_cast<int>(a.get_num("steps"))
                                     : kDefaultStepsPerTwoPi;
    std::vector<std::string> warnings;
    std::vector<SweepRow> rows;
    try {
        rows = sweep_square(energy, potential, b_list, profile, steps, &warnings);
    } catch (const std::domain_error& e) {
        fail(kExitInvalidInput, e.what());
    } catch (const EvaluationError& e) {
        fail(kExitEvaluationError, e.what());
    }
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
    const double k = wavenumber(profile, energy);
    const std::string format = a.get("format", "csv");
    if (format == "json") {
        json out;
        out["config"] = config_echo(a, "sweep");
        out["rows"] = json::array();
        for (const auto& row : rows) {
            json jr;
            jr["b"] = fmt(row.b);
            for (int fam = 0; fam < 2; ++fam) {
                const std::string suffix = "_branch" + std::to_string(fam);
                if (row.theta[fam]) {
                    jr["theta_deg" + suffix] = fmt(*row.theta[fam] * kDegPerRad);
                    jr["ka" + suffix] = fmt(*row.theta[fam]);
                    jr["a" + suffix] = fmt(*row.theta[fam] / k);
                }
            }
            out["rows"].push_back(jr);
        }
        std::cout << out.dump(2) << "\n";
    } else if (format == "csv") {
        std::cout << "b,theta_deg_branch0,ka_branch0,a_branch0,"
                     "theta_deg_branch1,ka_branch1,a_branch1\n";
        for (const auto& row : rows) {
            std::cout << fmt(row.b);
            for (int fam = 0; fam < 2; ++fam) {
                if (row.theta[fam]) {
                    std::cout << "," << fmt(*row.theta[fam] * kDegPerRad) << ","
                              << fmt(*row.theta[fam]) << "," << fmt(*row.theta[fam] / k);
                } else {
                    std::cout << ",,,";
                }
            }
            std::cout << "\n";
        }
    } else {
        fail(kExitInvalidInput, "--format must be csv or json");
    }
    return kExitOk;
}

int cmd_scan(const Args& a) {
    const ConstantsProfile profile = profile_from(a);
    TriangularBarrierSpec spec{a.get_num("energy"), a.get_num("potential"),
                               a.get_num("barrier-length"), 0.0};
    try {
        validate(spec);
    } catch (const std::domain_error& e) {
        fail(kExitInvalidInput, e.what());
    }
    std::vector<double> thetas_deg;
    auto it = a.flags.find("range");
    if (it == a.flags.end()) fail(kExitInvalidInput, "--range is required for scan");
    for (const auto& rs : it->second) {
        const Range r = parse_range(rs);
        const double step = r.step.value_or((r.hi - r.lo) / 36.0);
        if (!(step > 0.0)) fail(kExitInvalidInput, "--range step must be positive");
        for (double t = r.lo; t <= r.hi * (1.0 + 1e-12) + 1e-12; t += step)
            thetas_deg.push_back(t);
    }
    struct Row {
        double theta_deg, A, B, C, det;
        std::string note;
    };
    std::vector<Row> rows;
    for (const double deg : thetas_deg) {
        spec.theta = deg / kDegPerRad;
        const TriangularDerived d = derive(spec, profile);
        double det_value = 0.0;
        try {
            det_value = determinant(spec.theta, d.X, d.Y, d.R);
        } catch (const std::domain_error&) {
            fail(kExitEvaluationError,
                 "Airy argument out of range at theta = " + fmt(deg) + " deg");
        }
        rows.push_back({deg, d.A, d.B, d.C, det_value, deg == 0.0 ? "degenerate" : ""});
    }
    const std::string format = a.get("format", "csv");
    if (format == "json") {
        json out;
        out["config"] = config_echo(a, "scan");
        out["rows"] = json::array();
        for (const auto& r : rows) {
            json jr;
            jr["theta_deg"] = fmt(r.theta_deg);
            jr["A"] = fmt(r.A);
            jr["B"] = fmt(r.B);
            jr["C"] = fmt(r.C);
            jr["determinant"] = fmt(r.det);
            if (!r.note.empty()) jr["note"] = r.note;
            out["rows"].push_back(jr);
        }
        std::cout << out.dump(2) << "\n";
    } else if (format == "csv") {
        std::cout << "theta_deg,A,B,C,determinant,note\n";
        for (const auto& r : rows)
            std::cout << fmt(r.theta_deg) << "," << fmt(r.A) << "," << fmt(r.B) << ","
                      << fmt(r.C) << "," << fmt(r.det) << "," << r.note << "\n";
    } else {
        fail(kExitInvalidInput, "--format must be csv or json");
    }
    return kExitOk;
}

int cmd_wavefunction(const Args& a) {
    const Model model = model_from(a);
    const FreeParameter free = free_from(a.get("free", "theta"));
    const ProblemSpec spec = spec_from(a, model, free);
    const ConstantsProfile profile = profile_from(a);
    if (!a.has("range")) fail(kExitInvalidInput, "--range is required for wavefunction");
    Range range = parse_range(a.get("range"));
    double lo = range.lo, hi = range.hi;
    if (free == FreeParameter::theta) {
        lo /= kDegPerRad;
        hi /= kDegPerRad;
    }
    const int steps = a.has("steps") ? static_cast<int>(a.get_num("steps"))
                                     : kDefaultStepsPerTwoPi;
    const int samples = a.has("samples") ? static_cast<int>(a.get_num("samples")) : 200;
    const int branch = a.has("branch") ? static_cast<int>(a.get_num("branch")) : 0;
    std::vector<ModeRoot> roots;
    try {
        roots = solve_free_parameter(spec, free, lo, hi, profile, steps);
    } catch (const std::domain_error& e) {
        fail(kExitInvalidInput, e.what());
    } catch (const EvaluationError& e) {
        fail(kExitEvaluationError, e.what());
    }
    if (roots.empty()) fail(kExitNoRoots, "no roots in the requested range");
    if (branch < 0 || branch >= static_cast<int>(roots.size()))
        fail(kExitInvalidInput, "--branch is out of range for the roots found");
    // rebuild the full parameter set at the selected root
    ProblemSpec at_root = spec;
    switch (free) {
        case FreeParameter::theta:
            at_root.theta = roots[branch].value;
            at_root.fourth_is_theta = true;
            break;
        case FreeParameter::energy: at_root.energy = roots[branch].value; break;
        case FreeParameter::barrier_height: at_root.potential = roots[branch].value; break;
        case FreeParameter::barrier_length: at_root.barrier_length = roots[branch].value; break;
        case FreeParameter::pre_barrier_length:
            at_root.pre_barrier = roots[branch].value;
            at_root.fourth_is_theta = false;
            break;
    }
    WavefunctionTrace trace;
    try {
        if (model == Model::square) {
            const double k = wavenumber(profile, at_root.energy);
            const double beta = decay_constant(profile, at_root.energy, at_root.potential);
            const double theta =
                at_root.fourth_is_theta ? at_root.theta : k * at_root.pre_barrier;
            SquareBarrierSpec s{at_root.energy, at_root.potential, theta / k,
                                at_root.barrier_length};
            const auto coeffs =
                nullspace_coefficients(build_matrix(theta, k, beta, s.a, s.b));
            trace = trace_wavefunction(s, profile, coeffs.c, samples);
        } else {
            TriangularBarrierSpec t{at_root.energy, at_root.potential, at_root.barrier_length,
                                    at_root.theta};
            if (!at_root.fourth_is_theta)
                t.theta = wavenumber(profile, at_root.energy) * at_root.pre_barrier;
            const TriangularDerived d = derive(t, profile);
            const auto coeffs = nullspace_coefficients(build_matrix(t.theta, d.X, d.Y, d.R));
            trace = trace_wavefunction(t, profile, coeffs.c, samples);
        }
    } catch (const NotAModeError& e) {
        fail(kExitNotAMode, e.what());
    } catch (const std::domain_error& e) {
        fail(kExitEvaluationError, e.what());
    }
    const std::string format = a.get("format", "csv");
    if (format == "json") {
        json out;
        out["config"] = config_echo(a, "wavefunction");
        out["boundary_residuals"] = json::array();
        for (const double r : trace.boundary_residuals) out["boundary_residuals"].push_back(fmt(r));
        out["samples"] = json::array();
        for (const auto& s : trace.samples) {
            json js;
            js["x"] = fmt(s.x);
            js["psi"] = fmt(s.psi);
            js["dpsi"] = fmt(s.dpsi);
            js["region"] = s.region;
            out["samples"].push_back(js);
        }
        std::cout << out.dump(2) << "\n";
    } else if (format == "csv") {
        std::cout << "# boundary_residuals: " << fmt(trace.boundary_residuals[0]) << " "
                  << fmt(trace.boundary_residuals[1]) << " " << fmt(trace.boundary_residuals[2])
                  << " " << fmt(trace.boundary_residuals[3]) << "\n";
        std::cout << "x,psi,dpsi,region\n";
        for (const auto& s : trace.samples)
            std::cout << fmt(s.x) << "," << fmt(s.psi) << "," << fmt(s.dpsi) << "," << s.region
                      << "\n";
    } else {
        fail(kExitInvalidInput, "--format must be csv or json");
    }
    return kExitOk;
}

void usage() {
    std::cerr <<
        "usage: loopmode <command> [model] [flags]\n"
        "\n"
        "commands:\n"
        "  solve <square|triangular>   find determinant zeros over one free parameter\n"
        "  sweep                       square-model table over barrier lengths\n"
        "  scan                        triangular-model determinant over a theta grid\n"
        "  wavefunction <model>        solve, then emit the sampled mode wavefunction\n"
        "\n"
        "flags: --energy eV  --potential V  --barrier-length nm  --pre-barrier-length nm\n"
        "       --theta deg  --free name  --range lo:hi[:step]  --constants si|paper\n"
        "       --format csv|json  --config file.json  --steps n  --samples n  --branch i\n"
        "       --b-list v1,v2,...  --log-points n\n";
}

}  // namespace

int main(int argc, char** argv) {
    std::setvbuf(stdout, nullptr, _IOFBF, 1 << 16);
    if (argc < 2) {
        usage();
        return kExitInvalidInput;
    }
    const std::string command = argv[1];
    const Args args = parse_args(argc, argv, 2);
    try {
        if (command == "solve") return cmd_solve(args);
        if (command == "sweep") return cmd_sweep(args);
        if (command == "scan") return cmd_scan(args);
        if (command == "wavefunction") return cmd_wavefunction(args);
    } catch (const std::exception& e) {
        fail(kExitEvaluationError, e.what());
    }
    usage();
    return kExitInvalidInput;
}
