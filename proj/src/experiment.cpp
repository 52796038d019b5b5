#include "nles/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>
#include <vector>

#include "nles/series_io.hpp"

namespace nles {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

int levenshtein(const std::string& a, const std::string& b) {
    std::vector<int> prev(b.size() + 1), cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = static_cast<int>(j);
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = static_cast<int>(i);
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const int sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

std::string suggest(const std::string& key, const std::vector<std::string>& known) {
    int best = 4;
    std::string hit;
    for (const auto& k : known) {
        const int d = levenshtein(key, k);
        if (d < best) {
            best = d;
            hit = k;
        }
    }
    return hit.empty() ? "" : " (did you mean '" + hit + "'?)";
}

const std::map<std::string, std::vector<std::string>>& known_keys() {
    static const std::map<std::string, std::vector<std::string>> k = {
        {"grid", {"dim", "n"}},
        {"reference",
         {"model", "nu", "nu_bar", "cs", "p", "cfl", "dt_min", "dt_max", "forcing", "amplitude",
          "k_f", "picard_sweeps"}},
        {"nudged",
         {"model", "nu", "nu_bar", "cs", "p", "mu", "cfl", "dt_min", "dt_max", "forcing",
          "amplitude", "k_f", "picard_sweeps"}},
        {"observation", {"interpolant", "k_c", "h"}},
        {"harness",
         {"t_end", "spinup_time", "spinup_energy", "spinup_peak_k", "record_interval", "seed",
          "v0", "auto_extend", "max_total_factor"}},
    };
    return k;
}

using Section = std::map<std::string, std::string>;

double parse_double(const std::string& section, const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("");
        return x;
    } catch (...) {
        throw std::invalid_argument("[" + section + "] " + key + ": '" + v + "' is not a number");
    }
}

long parse_int(const std::string& section, const std::string& key, const std::string& v) {
    long x = 0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || p != v.data() + v.size())
        throw std::invalid_argument("[" + section + "] " + key + ": '" + v + "' is not an integer");
    return x;
}

bool parse_bool(const std::string& section, const std::string& key, const std::string& v) {
    if (v == "true") return true;
    if (v == "false") return false;
    throw std::invalid_argument("[" + section + "] " + key + ": expected true|false, got '" + v + "'");
}

template <typename F>
void take(Section& sec, const std::string& key, F&& f) {
    auto it = sec.find(key);
    if (it == sec.end()) return;
    f(it->second);
    sec.erase(it);
}

void fill_solver(const std::string& name, Section& sec, SolverConfig& cfg, int n,
                 bool allow_mu) {
    bool have_nu_bar = false, have_cs = false;
    take(sec, "model", [&](const std::string& v) { cfg.model = model_from_string(v); });
    take(sec, "nu", [&](const std::string& v) { cfg.nu = parse_double(name, "nu", v); });
    take(sec, "nu_bar", [&](const std::string& v) {
        cfg.nu_bar = parse_double(name, "nu_bar", v);
        have_nu_bar = true;
    });
    take(sec, "cs", [&](const std::string& v) {
        const double cs = parse_double(name, "cs", v);
        cfg.nu_bar = (cs / n) * (cs / n);
        have_cs = true;
    });
    if (have_nu_bar && have_cs)
        throw std::invalid_argument("[" + name + "] specify either cs or nu_bar, not both");
    take(sec, "p", [&](const std::string& v) { cfg.p = parse_double(name, "p", v); });
    if (allow_mu)
        take(sec, "mu", [&](const std::string& v) { cfg.mu = parse_double(name, "mu", v); });
    take(sec, "cfl", [&](const std::string& v) { cfg.cfl = parse_double(name, "cfl", v); });
    take(sec, "dt_min", [&](const std::string& v) { cfg.dt_min = parse_double(name, "dt_min", v); });
    take(sec, "dt_max", [&](const std::string& v) { cfg.dt_max = parse_double(name, "dt_max", v); });
    take(sec, "forcing",
         [&](const std::string& v) { cfg.forcing.kind = forcing_kind_from_string(v); });
    take(sec, "amplitude", [&](const std::string& v) {
        cfg.forcing.amplitude = parse_double(name, "amplitude", v);
    });
    take(sec, "k_f", [&](const std::string& v) {
        cfg.forcing.k_f = static_cast<int>(parse_int(name, "k_f", v));
    });
    take(sec, "picard_sweeps", [&](const std::string& v) {
        cfg.picard_sweeps = static_cast<int>(parse_int(name, "picard_sweeps", v));
    });
}

}  // namespace

TwinExperiment parse_experiment(const std::string& text) {
    std::map<std::string, Section> doc;
    std::string current;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw std::invalid_argument("line " + std::to_string(lineno) +
                                            ": malformed section header '" + raw + "'");
            current = trim(line.substr(1, line.size() - 2));
            if (!known_keys().count(current)) {
                std::vector<std::string> names;
                for (const auto& [k, v] : known_keys()) names.push_back(k);
                throw std::invalid_argument("unknown section '[" + current + "]'" +
                                            suggest(current, names));
            }
            doc[current];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("line " + std::to_string(lineno) +
                                        ": expected 'key = value', got '" + raw + "'");
        if (current.empty())
            throw std::invalid_argument("line " + std::to_string(lineno) +
                                        ": key outside any section");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        const auto& known = known_keys().at(current);
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw std::invalid_argument("unknown key '" + key + "' in [" + current + "]" +
                                        suggest(key, known));
        doc[current][key] = val;
    }

    TwinExperiment exp;

    // [grid]
    Section grid_sec = doc.count("grid") ? doc["grid"] : Section{};
    int dim = 2, n = 128;
    take(grid_sec, "dim", [&](const std::string& v) { dim = static_cast<int>(parse_int("grid", "dim", v)); });
    take(grid_sec, "n", [&](const std::string& v) { n = static_cast<int>(parse_int("grid", "n", v)); });
    try {
        exp.grid = Grid(dim, n);
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(std::string("[grid] ") + e.what());
    }

    // defaults scaled to the grid: C_s = 0.17, delta = 1/n
    const double nu_bar_default = (0.17 / n) * (0.17 / n);
    const ForcingKind forcing_default =
        dim == 3 ? ForcingKind::taylor_green_3d : ForcingKind::kolmogorov_2d;

    exp.reference = SolverConfig{};
    exp.reference.model = Model::nse;
    exp.reference.nu = 2.75e-3;
    exp.reference.nu_bar = nu_bar_default;
    exp.reference.mu = 0.0;
    exp.reference.forcing.kind = forcing_default;

    exp.nudged = SolverConfig{};
    exp.nudged.model = Model::ladyzhenskaya;
    exp.nudged.nu = 2.75e-3;
    exp.nudged.nu_bar = nu_bar_default;
    exp.nudged.mu = 30.0;
    exp.nudged.p = 3.0;
    exp.nudged.forcing.kind = forcing_default;

    Section ref_sec = doc.count("reference") ? doc["reference"] : Section{};
    fill_solver("reference", ref_sec, exp.reference, n, /*allow_mu=*/false);
    Section nud_sec = doc.count("nudged") ? doc["nudged"] : Section{};
    fill_solver("nudged", nud_sec, exp.nudged, n, /*allow_mu=*/true);

    // [observation]
    InterpolantSpec interp = InterpolantSpec::fourier(9);
    Section obs_sec = doc.count("observation") ? doc["observation"] : Section{};
    bool have_kc = false, have_h = false;
    int k_c = 9;
    double h = 0.0;
    InterpolantKind ikind = InterpolantKind::fourier_truncation;
    take(obs_sec, "interpolant",
         [&](const std::string& v) { ikind = interpolant_kind_from_string(v); });
    take(obs_sec, "k_c", [&](const std::string& v) {
        k_c = static_cast<int>(parse_int("observation", "k_c", v));
        have_kc = true;
    });
    take(obs_sec, "h", [&](const std::string& v) {
        h = parse_double("observation", "h", v);
        have_h = true;
    });
    if (ikind == InterpolantKind::fourier_truncation) {
        if (have_h && !have_kc) k_c = static_cast<int>(std::lround(1.0 / h));
        interp = InterpolantSpec::fourier(k_c);
    } else {
        if (!have_h)
            throw std::invalid_argument("[observation] volume interpolant requires key 'h'");
        interp = InterpolantSpec::volume(h);
    }
    exp.reference.interpolant = interp;
    exp.nudged.interpolant = interp;

    // [harness]
    Section har_sec = doc.count("harness") ? doc["harness"] : Section{};
    double t_end = 20.0;
    take(har_sec, "t_end", [&](const std::string& v) { t_end = parse_double("harness", "t_end", v); });
    take(har_sec, "spinup_time",
         [&](const std::string& v) { exp.spinup_time = parse_double("harness", "spinup_time", v); });
    take(har_sec, "spinup_energy", [&](const std::string& v) {
        exp.spinup_energy = parse_double("harness", "spinup_energy", v);
    });
    take(har_sec, "spinup_peak_k", [&](const std::string& v) {
        exp.spinup_peak_k = parse_double("harness", "spinup_peak_k", v);
    });
    take(har_sec, "record_interval", [&](const std::string& v) {
        exp.record_interval = parse_double("harness", "record_interval", v);
    });
    take(har_sec, "seed", [&](const std::string& v) {
        exp.seed = static_cast<std::uint64_t>(parse_int("harness", "seed", v));
    });
    take(har_sec, "v0", [&](const std::string& v) {
        if (v == "zero")
            exp.v0 = TwinExperiment::V0::zero;
        else if (v == "reference")
            exp.v0 = TwinExperiment::V0::reference;
        else
            throw std::invalid_argument("[harness] v0: expected zero|reference, got '" + v + "'");
    });
    take(har_sec, "auto_extend",
         [&](const std::string& v) { exp.auto_extend = parse_bool("harness", "auto_extend", v); });
    take(har_sec, "max_total_factor", [&](const std::string& v) {
        exp.max_total_factor = parse_double("harness", "max_total_factor", v);
    });
    exp.reference.t_end = t_end;
    exp.nudged.t_end = t_end;

    try {
        exp.validate();
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(std::string("experiment validation: ") + e.what());
    }
    return exp;
}

namespace {

void emit_solver(std::ostringstream& os, const std::string& name, const SolverConfig& c,
                 bool with_mu) {
    os << "[" << name << "]\n";
    os << "model = " << to_string(c.model) << "\n";
    os << "nu = " << format_double(c.nu) << "\n";
    os << "nu_bar = " << format_double(c.nu_bar) << "\n";
    os << "p = " << format_double(c.p) << "\n";
    if (with_mu) os << "mu = " << format_double(c.mu) << "\n";
    os << "cfl = " << format_double(c.cfl) << "\n";
    os << "dt_min = " << format_double(c.dt_min) << "\n";
    os << "dt_max = " << format_double(c.dt_max) << "\n";
    os << "forcing = " << to_string(c.forcing.kind) << "\n";
    os << "amplitude = " << format_double(c.forcing.amplitude) << "\n";
    os << "k_f = " << c.forcing.k_f << "\n";
    os << "picard_sweeps = " << c.picard_sweeps << "\n";
}

}  // namespace

std::string serialize_experiment(const TwinExperiment& exp) {
    std::ostringstream os;
    os << "[grid]\n";
    os << "dim = " << exp.grid.dim << "\n";
    os << "n = " << exp.grid.n << "\n\n";
    emit_solver(os, "reference", exp.reference, false);
    os << "\n";
    emit_solver(os, "nudged", exp.nudged, true);
    os << "\n[observation]\n";
    os << "interpolant = " << to_string(exp.nudged.interpolant.kind) << "\n";
    if (exp.nudged.interpolant.kind == InterpolantKind::fourier_truncation)
        os << "k_c = " << exp.nudged.interpolant.cutoff_k() << "\n";
    else
        os << "h = " << format_double(exp.nudged.interpolant.h) << "\n";
    os << "\n[harness]\n";
    os << "t_end = " << format_double(exp.nudged.t_end) << "\n";
    os << "spinup_time = " << format_double(exp.spinup_time) << "\n";
    os << "spinup_energy = " << format_double(exp.spinup_energy) << "\n";
    os << "spinup_peak_k = " << format_double(exp.spinup_peak_k) << "\n";
    os << "record_interval = " << format_double(exp.record_interval) << "\n";
    os << "seed = " << exp.seed << "\n";
    os << "v0 = " << (exp.v0 == TwinExperiment::V0::zero ? "zero" : "reference") << "\n";
    os << "auto_extend = " << (exp.auto_extend ? "true" : "false") << "\n";
    os << "max_total_factor = " << format_double(exp.max_total_factor) << "\n";
    return os.str();
}

}  // namespace nles
