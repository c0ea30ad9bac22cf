// experiments.cpp
#include "autopump/experiments.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <unistd.h>

#include "autopump/errors.hpp"
#include "autopump/meanfield.hpp"
#include "autopump/parallel.hpp"
#include "autopump/topology.hpp"

namespace autopump::experiments {

namespace fs = std::filesystem;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string join_path(const std::string& prefix, const std::string& key) {
    return prefix.empty() ? key : prefix + "." + key;
}

void check_type(const json& def, const json& val, const std::string& path) {
    if (def.is_null()) return;  // nullable: checked during extraction
    const bool ok = def.is_number_integer()  ? val.is_number_integer()
                    : def.is_number()        ? val.is_number()
                    : def.is_string()        ? val.is_string()
                    : def.is_boolean()       ? val.is_boolean()
                    : def.is_array()         ? val.is_array()
                    : def.is_object()        ? val.is_object()
                                             : false;
    if (!ok) throw ConfigError(path + ": expected " + std::string(def.type_name()) + ", got " + val.type_name());
}

void merge_into(json& target, const json& user, const std::string& prefix) {
    if (!user.is_object()) throw ConfigError((prefix.empty() ? "config" : prefix) + ": expected object");
    for (const auto& [key, value] : user.items()) {
        const std::string path = join_path(prefix, key);
        if (!target.contains(key)) throw ConfigError(path + ": unknown key");
        json& slot = target[key];
        check_type(slot, value, path);
        if (slot.is_object()) merge_into(slot, value, path);
        else slot = value;
    }
}

template <class T>
T get(const json& doc, const std::string& section, const std::string& key) {
    return doc.at(section).at(key).get<T>();
}

std::vector<double> number_list(const json& arr, const std::string& path) {
    std::vector<double> out;
    for (const auto& v : arr) {
        if (!v.is_number()) throw ConfigError(path + ": entries must be numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

void require(bool ok, const std::string& message) {
    if (!ok) throw ConfigError(message);
}

Range read_range(const json& doc, const std::string& section) {
    Range r{get<double>(doc, section, "omega_min"), get<double>(doc, section, "omega_max"),
            get<double>(doc, section, "omega_step")};
    require(r.min > 0.0, section + ".omega_min: must be positive");
    require(r.max >= r.min, section + ".omega_max: must be >= omega_min");
    require(r.step > 0.0, section + ".omega_step: must be positive");
    return r;
}

void validate_model(const ModelParams& p) {
    try {
        p.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

std::string one_line(std::string s) {
    for (auto& c : s)
        if (c == '\n' || c == ',' || c == '"') c = ';';
    return s;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

void emit(Table& t, CommandResult& r, const fs::path& path) {
    write_atomic(path, t.to_csv());
    r.artifacts.push_back(path.filename().string());
}

void emit_json(const json& j, CommandResult& r, const fs::path& path) {
    write_atomic(path, j.dump(2) + "\n");
    r.artifacts.push_back(path.filename().string());
}

Cell optional_cell(const std::optional<double>& v) {
    if (v) return *v;
    return std::string{};
}

struct Diagonalised {
    ProductBasis basis;
    OperatorMatrix H;
    Spectrum spectrum;
    SelectedState state;
};

Diagonalised diagonalise_model(const ModelParams& p) {
    auto basis = p.product_basis();
    auto H = build_coupled_hamiltonian(p, basis);
    auto spec = diagonalize(H);
    auto state = select_min_fermion_energy(spec, p.omega, basis);
    return {std::move(basis), std::move(H), std::move(spec), state};
}

struct PointOutcome {
    bool ok = false;
    std::string status;
    PointAnalysis analysis;
};

PointOutcome run_point(const ModelParams& p, const TransportOptions& options) {
    PointOutcome o;
    try {
        o.analysis = analyze_point(p, nullptr, options);
        o.ok = true;
        if (!o.analysis.transport.omega_tilde_ok) o.status = "omega_tilde_fallback";
        else if (!o.analysis.spin_gap) o.status = "spin_gap_undefined";
        else o.status = "ok";
    } catch (const std::exception& e) {
        o.status = "error: " + one_line(e.what());
    }
    return o;
}

}  // namespace

const json& default_config() {
    static const json defaults = json::parse(R"({
  "model": {"J": 1.0, "Delta": 1.0, "omega": 0.25, "eta": 0.95, "S": 10.0, "L": 8, "N": 4},
  "transport": {"omega_min": 0.05, "omega_max": 2.0, "omega_step": 0.05,
                "window_periods": 40, "samples_per_period": 64},
  "phase": {"S_values": [2, 4, 6, 8, 10, 14, 20], "omega_min": 0.05, "omega_max": 2.0, "omega_step": 0.05},
  "correlations": {"dt": 0.1, "t_max": 300.0},
  "meanfield": {"dt": 0.01, "periods": 10.0, "stride": 10, "initial_spin": null, "upper_fraction": 1.0},
  "chern": {"n_k": 64, "n_phi": 64, "zak_n_k": 64},
  "disorder": {"epsilon0": [0.0, 0.05, 0.1, 0.2, 0.3, 0.5], "R": 50, "base_seed": 1234},
  "runtime": {"workers": 1},
  "output_dir": "out"
})");
    return defaults;
}

RunConfig parse_config(const json& user) {
    json doc = default_config();
    merge_into(doc, user, "");

    RunConfig c;
    c.model.J = get<double>(doc, "model", "J");
    c.model.Delta = get<double>(doc, "model", "Delta");
    c.model.omega = get<double>(doc, "model", "omega");
    c.model.eta = get<double>(doc, "model", "eta");
    c.model.S = get<double>(doc, "model", "S");
    c.model.L = get<int>(doc, "model", "L");
    c.model.N = get<int>(doc, "model", "N");
    validate_model(c.model);

    c.transport_omega = read_range(doc, "transport");
    c.transport_options.window_periods = get<int>(doc, "transport", "window_periods");
    c.transport_options.samples_per_period = get<int>(doc, "transport", "samples_per_period");
    require(c.transport_options.window_periods >= 40, "transport.window_periods: must be >= 40");
    require(c.transport_options.samples_per_period >= 8, "transport.samples_per_period: must be >= 8");

    c.phase_S = number_list(doc["phase"]["S_values"], "phase.S_values");
    require(!c.phase_S.empty(), "phase.S_values: must not be empty");
    for (double s : c.phase_S) {
        ModelParams p = c.model;
        p.S = s;
        try {
            p.validate();
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("phase.S_values: ") + e.what());
        }
    }
    c.phase_omega = read_range(doc, "phase");

    c.corr_dt = get<double>(doc, "correlations", "dt");
    c.corr_t_max = get<double>(doc, "correlations", "t_max");
    require(c.corr_dt > 0.0, "correlations.dt: must be positive");
    require(c.corr_t_max >= 0.0, "correlations.t_max: must be non-negative");

    c.mf_dt = get<double>(doc, "meanfield", "dt");
    c.mf_periods = get<double>(doc, "meanfield", "periods");
    c.mf_stride = get<int>(doc, "meanfield", "stride");
    c.mf_upper_fraction = get<double>(doc, "meanfield", "upper_fraction");
    require(c.mf_dt > 0.0, "meanfield.dt: must be positive");
    require(c.mf_periods > 0.0, "meanfield.periods: must be positive");
    require(c.mf_stride >= 1, "meanfield.stride: must be >= 1");
    require(c.mf_upper_fraction >= 0.0 && c.mf_upper_fraction <= 1.0,
            "meanfield.upper_fraction: must lie in [0, 1]");
    const json& spin = doc["meanfield"]["initial_spin"];
    if (!spin.is_null()) {
        require(spin.is_array() && spin.size() == 3, "meanfield.initial_spin: expected null or [Sx, Sy, Sz]");
        c.mf_initial_spin = number_list(spin, "meanfield.initial_spin");
        const auto& v = *c.mf_initial_spin;
        require(std::hypot(v[0], v[1], v[2]) > 0.0, "meanfield.initial_spin: must be nonzero");
    }

    c.chern_n_k = get<int>(doc, "chern", "n_k");
    c.chern_n_phi = get<int>(doc, "chern", "n_phi");
    c.zak_n_k = get<int>(doc, "chern", "zak_n_k");
    require(c.chern_n_k >= 2 && c.chern_n_phi >= 4, "chern.n_k/n_phi: grid too small");
    require(c.zak_n_k >= 64, "chern.zak_n_k: must be >= 64");

    c.disorder_epsilon0 = number_list(doc["disorder"]["epsilon0"], "disorder.epsilon0");
    require(!c.disorder_epsilon0.empty(), "disorder.epsilon0: must not be empty");
    for (double e : c.disorder_epsilon0) require(e >= 0.0, "disorder.epsilon0: entries must be non-negative");
    c.disorder_R = get<int>(doc, "disorder", "R");
    require(c.disorder_R >= 1, "disorder.R: must be >= 1");
    require(doc["disorder"]["base_seed"].is_number_unsigned() || doc["disorder"]["base_seed"].get<long long>() >= 0,
            "disorder.base_seed: must be a non-negative integer");
    c.base_seed = doc["disorder"]["base_seed"].get<std::uint64_t>();

    c.workers = get<int>(doc, "runtime", "workers");
    require(c.workers >= 1, "runtime.workers: must be >= 1");
    c.output_dir = doc["output_dir"].get<std::string>();
    require(!c.output_dir.empty(), "output_dir: must not be empty");

    c.document = std::move(doc);
    return c;
}

json read_config_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    json doc;
    try {
        doc = json::parse(ss.str());
    } catch (const json::parse_error& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    if (doc.is_object() && doc.contains("artifact") && doc["artifact"] == "autopump" && doc.contains("config"))
        return doc["config"];
    return doc;
}

void apply_override(json& doc, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("--set expects path=value, got '" + assignment + "'");
    const std::string path = assignment.substr(0, eq);
    const std::string text = assignment.substr(eq + 1);
    json value;
    try {
        value = json::parse(text);
    } catch (const json::parse_error&) {
        value = text;
    }
    if (!doc.is_object()) doc = json::object();
    json* node = &doc;
    std::size_t start = 0;
    while (true) {
        const auto dot = path.find('.', start);
        const std::string key = path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
        if (key.empty()) throw ConfigError("--set: malformed key path '" + path + "'");
        if (dot == std::string::npos) {
            (*node)[key] = value;
            return;
        }
        json& next = (*node)[key];
        if (next.is_null()) next = json::object();
        if (!next.is_object()) throw ConfigError("--set: " + path.substr(0, dot) + " is not an object");
        node = &next;
        start = dot + 1;
    }
}

std::vector<double> grid(const Range& r) {
    const long n = static_cast<long>(std::floor((r.max - r.min) / r.step + 1e-9));
    std::vector<double> out;
    for (long i = 0; i <= n; ++i) out.push_back(r.min + static_cast<double>(i) * r.step);
    return out;
}

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, res.ptr};
}

std::string Table::to_csv() const {
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + csv_escape(header[i]);
    out += '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            std::visit(
                [&](const auto& v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, double>) out += format_number(v);
                    else if constexpr (std::is_same_v<T, long long>) out += std::to_string(v);
                    else out += csv_escape(v);
                },
                row[i]);
        }
        out += '\n';
    }
    return out;
}

void write_atomic(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    const fs::path tmp = path.string() + ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out) throw std::runtime_error("write failed for " + tmp.string());
    }
    fs::rename(tmp, path);
}

CommandResult cmd_spectrum(const RunConfig& cfg, const fs::path& out) {
    CommandResult r;
    const auto d = diagonalise_model(cfg.model);
    Table t{{"index", "E_over_J"}, {}};
    for (int n = 0; n < d.spectrum.size(); ++n)
        t.rows.push_back({static_cast<long long>(n), d.spectrum.energies(n) / cfg.model.J});
    emit(t, r, out / "spectrum.csv");
    r.tasks.push_back({"spectrum", "ok"});
    return r;
}

CommandResult cmd_transport(const RunConfig& cfg, const fs::path& out) {
    CommandResult r;
    const auto omegas = grid(cfg.transport_omega);
    std::vector<PointOutcome> points(omegas.size());
    parallel_for(points.size(), cfg.workers, [&](std::size_t i) {
        ModelParams p = cfg.model;
        p.omega = omegas[i];
        points[i] = run_point(p, cfg.transport_options);
    });

    const double J = cfg.model.J;
    Table t{{"omega_over_J", "omega_tilde_over_J", "current", "delta_n", "spin_gap_over_J", "status"}, {}};
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& pt = points[i];
        if (pt.ok) {
            const auto& tr = pt.analysis.transport;
            std::optional<double> sg;
            if (pt.analysis.spin_gap) sg = *pt.analysis.spin_gap / J;
            t.rows.push_back({omegas[i] / J, tr.omega_tilde / J, tr.current, tr.delta_n, optional_cell(sg), pt.status});
        } else {
            t.rows.push_back({omegas[i] / J, std::string{}, std::string{}, std::string{}, std::string{}, pt.status});
        }
        r.tasks.push_back({"omega=" + format_number(omegas[i]), pt.status});
    }
    emit(t, r, out / "transport.csv");
    return r;
}

CommandResult cmd_phase(const RunConfig& cfg, const fs::path& out) {
    CommandResult r;
    const auto omegas = grid(cfg.phase_omega);
    const std::size_t n_omega = omegas.size();
    std::vector<PointOutcome> points(cfg.phase_S.size() * n_omega);
    parallel_for(points.size(), cfg.workers, [&](std::size_t i) {
        ModelParams p = cfg.model;
        p.S = cfg.phase_S[i / n_omega];
        p.omega = omegas[i % n_omega];
        points[i] = run_point(p, cfg.transport_options);
    });

    Table t{{"S", "omega_over_J", "delta_n", "status"}, {}};
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double s = cfg.phase_S[i / n_omega];
        const double w = omegas[i % n_omega] / cfg.model.J;
        if (points[i].ok) t.rows.push_back({s, w, points[i].analysis.transport.delta_n, points[i].status});
        else t.rows.push_back({s, w, std::string{}, points[i].status});
        r.tasks.push_back({"S=" + format_number(s) + ",omega=" + format_number(w), points[i].status});
    }
    emit(t, r, out / "phase.csv");
    return r;
}

CommandResult cmd_correlations(const RunConfig& cfg, const fs::path& out) {
    CommandResult r;
    const auto d = diagonalise_model(cfg.model);
    const auto ops = embedded_spin_operators(d.basis);
    const int count = static_cast<int>(std::floor(cfg.corr_t_max / cfg.corr_dt + 1e-9)) + 1;
    const auto times = uniform_times(cfg.corr_dt, count);
    const auto xx = two_time_correlation(d.spectrum, d.state, ops.sx, ops.sx, times);
    const auto yy = two_time_correlation(d.spectrum, d.state, ops.sy, ops.sy, times);
    const auto xy = two_time_correlation(d.spectrum, d.state, ops.sx, ops.sy, times);

    const double s2 = cfg.model.S * cfg.model.S;
    Table t{{"t_J", "re_xx", "im_xx", "re_yy", "im_yy", "re_xy", "im_xy"}, {}};
    for (std::size_t k = 0; k < times.size(); ++k)
        t.rows.push_back({times[k] * cfg.model.J, xx.values[k].real() / s2, xx.values[k].imag() / s2,
                          yy.values[k].real() / s2, yy.values[k].imag() / s2, xy.values[k].real() / s2,
                          xy.values[k].imag() / s2});
    emit(t, r, out / "correlations.csv");
    r.tasks.push_back({"correlations", "ok"});
    return r;
}

CommandResult cmd_meanfield(const RunConfig& cfg, const fs::path& out) {
    CommandResult r;
    const ModelParams& p = cfg.model;
    if (!(p.omega > 0.0)) throw ConfigError("model.omega: mean-field runs need omega > 0");

    Eigen::Vector3d spin(p.S, 0.0, 0.0);
    if (cfg.mf_initial_spin) {
        const auto& v = *cfg.mf_initial_spin;
        spin = Eigen::Vector3d(v[0], v[1], v[2]);
        spin *= p.S / spin.norm();
    }
    meanfield::IntegrateOptions opt;
    opt.dt = cfg.mf_dt;
    opt.t_end = cfg.mf_periods * kTwoPi / p.omega;
    opt.stride = cfg.mf_stride;

    json summary;
    summary["omega_over_J"] = p.omega / p.J;
    summary["initial_spin"] = {spin.x(), spin.y(), spin.z()};
    summary["dt_J"] = opt.dt * p.J;
    summary["t_end_J"] = opt.t_end * p.J;
    summary["omega_crit_lower_over_J"] = meanfield::critical_field_lower(p) / p.J;
    summary["omega_crit_upper_over_J"] = meanfield::critical_field_upper(p, cfg.mf_upper_fraction) / p.J;
    summary["upper_fraction"] = cfg.mf_upper_fraction;

    meanfield::MFTrajectory traj;
    try {
        traj = meanfield::integrate_mf(meanfield::ground_state_initial(spin, p), p, opt);
    } catch (const NumericalError& e) {
        summary["status"] = std::string("error: ") + e.what();
        emit_json(summary, r, out / "mf_summary.json");
        r.tasks.push_back({"meanfield", summary["status"].get<std::string>()});
        r.numerical_failure = true;
        r.failure_message = e.what();
        return r;
    }

    Table t{{"t_J", "Sx", "Sy", "Sz", "Bx", "By", "pumped_charge"}, {}};
    for (const auto& s : traj.samples)
        t.rows.push_back({s.t * p.J, s.spin.x(), s.spin.y(), s.spin.z(), s.field.bx, s.field.by, s.pumped_charge});
    emit(t, r, out / "mf_trajectory.csv");

    const auto w = meanfield::analyze_winding(traj, p);
    summary["steps"] = traj.steps;
    summary["periods"] = w.periods;
    summary["revolutions"] = w.revolutions;
    summary["winding_per_period"] = w.winding_per_period;
    summary["winding"] = w.winding ? json(*w.winding) : json(nullptr);
    summary["encircles_origin"] = w.winding.has_value() && *w.winding != 0;
    summary["pumped_charge"] = traj.pumped_charge;
    summary["charge_per_period"] = w.charge_per_period;
    summary["charge_per_revolution"] = w.charge_per_revolution ? json(*w.charge_per_revolution) : json(nullptr);
    summary["min_inplane_fraction"] = traj.min_inplane_fraction;
    summary["max_spin_drift"] = traj.max_spin_drift;
    summary["max_orthonormality_drift"] = traj.max_orthonormality_drift;
    summary["status"] = w.winding ? "ok" : "non_integer_winding";
    emit_json(summary, r, out / "mf_summary.json");
    r.tasks.push_back({"meanfield", summary["status"].get<std::string>()});
    return r;
}

CommandResult cmd_chern(const RunConfig& cfg, const fs::path& out) {
    CommandResult r;
    const double eta = cfg.model.eta;
    const double J = cfg.model.J;
    json j;
    j["eta"] = eta;
    j["grid"] = {cfg.chern_n_k, cfg.chern_n_phi};
    try {
        const auto c = topology::chern_number(eta, J, cfg.chern_n_k, cfg.chern_n_phi);
        const auto z = topology::zak_winding(eta, J, cfg.zak_n_k, cfg.chern_n_phi);
        j["chern"] = c.chern;
        j["flux_sum_over_2pi"] = c.raw;
        j["min_gap_over_J"] = c.min_gap_on_grid / J;
        j["zak_winding"] = z.winding;
        j["zak_winding_rounded"] = z.rounded;
        j["consistent"] = z.rounded == c.chern && std::abs(z.winding - z.rounded) < 1e-6;
        j["status"] = "ok";
    } catch (const topology::GapClosure& e) {
        j["chern"] = nullptr;
        j["status"] = "gap_closure";
        j["error"] = e.what();
        j["k"] = e.k;
        j["phi"] = e.phi;
        r.numerical_failure = true;
        r.failure_message = e.what();
    }
    emit_json(j, r, out / "chern.json");
    r.tasks.push_back({"chern", j["status"].get<std::string>()});
    return r;
}

CommandResult cmd_disorder(const RunConfig& cfg, const fs::path& out) {
    CommandResult r;
    Table summary{{"epsilon0_over_J", "mean_delta_n", "std_delta_n", "R", "failures"}, {}};
    Table members{{"epsilon0_over_J", "realization", "seed", "delta_n", "status"}, {}};
    for (int k = 0; k < cfg.disorder_R; ++k) r.seeds.push_back(realization_seed(cfg.base_seed, k));

    for (double eps : cfg.disorder_epsilon0) {
        const auto ens = disorder_ensemble(cfg.model, eps * cfg.model.J, cfg.disorder_R, cfg.base_seed,
                                           cfg.workers, cfg.transport_options);
        summary.rows.push_back({eps, ens.mean_delta_n, ens.std_delta_n, static_cast<long long>(cfg.disorder_R),
                                static_cast<long long>(ens.failures)});
        for (const auto& m : ens.members) {
            const std::string status = m.ok ? "ok" : "error: " + one_line(m.error);
            members.rows.push_back({eps, static_cast<long long>(m.realization), std::to_string(m.seed),
                                    m.ok ? Cell{m.record.delta_n} : Cell{std::string{}}, status});
        }
        r.tasks.push_back({"epsilon0=" + format_number(eps),
                           ens.failures ? std::to_string(ens.failures) + " failed realizations" : "ok"});
    }
    emit(summary, r, out / "disorder.csv");
    emit(members, r, out / "disorder_realizations.csv");
    return r;
}

CommandResult cmd_phgap(const RunConfig& cfg, const fs::path& out) {
    CommandResult r;
    const auto d = diagonalise_model(cfg.model);
    const auto gaps = particle_hole_gaps(d.state, d.spectrum, d.H, d.basis);
    const double J = cfg.model.J;
    Table t{{"l", "m", "gap_over_J", "valid_flag", "raw_over_J"}, {}};
    for (const auto& g : gaps) {
        const std::string flag = g.reference ? "reference" : (g.valid ? "valid" : "skipped");
        if (g.valid) t.rows.push_back({static_cast<long long>(g.from), static_cast<long long>(g.to), g.gap / J, flag, g.raw / J});
        else t.rows.push_back({static_cast<long long>(g.from), static_cast<long long>(g.to), std::string{}, flag, std::string{}});
    }
    emit(t, r, out / "phgap.csv");
    r.tasks.push_back({"phgap", "ok"});
    return r;
}

json make_manifest(const std::string& command, const RunConfig& cfg, const CommandResult& result,
                   double duration_s) {
    json m;
    m["artifact"] = "autopump";
    m["version"] = kVersion;
    m["command"] = command;
    m["config"] = cfg.document;
    m["duration_s"] = duration_s;
    m["status"] = result.numerical_failure ? "numerical_failure" : "ok";
    if (result.numerical_failure) m["error"] = result.failure_message;
    json tasks = json::array();
    for (const auto& t : result.tasks) tasks.push_back({{"name", t.name}, {"status", t.status}});
    m["tasks"] = tasks;
    m["seeds"] = result.seeds;
    m["artifacts"] = result.artifacts;
    return m;
}

}  // namespace autopump::experiments
