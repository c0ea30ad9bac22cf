#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <fstream>
#include <random>
#include <sstream>

#include "autopump/errors.hpp"
#include "autopump/experiments.hpp"

using namespace autopump;
using namespace autopump::experiments;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    for (std::string l; std::getline(ss, l);) out.push_back(l);
    return out;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, ',');) out.push_back(c);
    return out;
}

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("autopump_test_" + name);
    fs::remove_all(p);
    return p;
}

RunConfig tiny(json extra = json::object()) {
    json user = {{"model", {{"S", 1.0}, {"L", 4}, {"N", 2}}}};
    user.merge_patch(extra);
    return parse_config(user);
}

}  // namespace

TEST_CASE("config defaults, overrides and validation") {
    const auto c = parse_config(json::object());
    CHECK(c.model.S == 10.0);
    CHECK(c.model.L == 8);
    CHECK(c.phase_S == std::vector<double>{2, 4, 6, 8, 10, 14, 20});
    CHECK(c.disorder_R == 50);
    CHECK(grid(c.transport_omega).size() == 40);

    // canonical document reparses to the same bytes
    CHECK(parse_config(c.document).document.dump(2) == c.document.dump(2));

    json user = json::object();
    apply_override(user, "model.omega=0.5");
    apply_override(user, "disorder.epsilon0=[0.1,0.2]");
    apply_override(user, "output_dir=results");
    const auto o = parse_config(user);
    CHECK(o.model.omega == 0.5);
    CHECK(o.disorder_epsilon0 == std::vector<double>{0.1, 0.2});
    CHECK(o.output_dir == "results");

    auto error_of = [](const json& j) {
        try {
            parse_config(j);
        } catch (const ConfigError& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    CHECK(error_of({{"model", {{"omgea", 1}}}}).find("model.omgea: unknown key") != std::string::npos);
    CHECK(error_of({{"model", {{"L", 8.5}}}}).find("model.L") != std::string::npos);
    CHECK(error_of({{"model", {{"S", 0}}}}).find("model.S") != std::string::npos);
    CHECK(error_of({{"transport", {{"omega_step", 0}}}}).find("transport.omega_step") != std::string::npos);
    CHECK(error_of({{"disorder", {{"R", 0}}}}).find("disorder.R") != std::string::npos);
    CHECK(error_of({{"phase", {{"S_values", json::array()}}}}).find("phase.S_values") != std::string::npos);
    CHECK_THROWS_AS(apply_override(user, "novalue"), ConfigError);
}

TEST_CASE("config files and manifests") {
    const fs::path dir = scratch("cfg");
    fs::create_directories(dir);
    write_atomic(dir / "bad.json", "{\n  \"model\": {\"S\": 10,\n}\n");
    try {
        read_config_file(dir / "bad.json");
        FAIL("expected parse error");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    const auto cfg = tiny();
    CommandResult r;
    r.tasks.push_back({"x", "ok"});
    write_atomic(dir / "manifest.json", make_manifest("spectrum", cfg, r, 1.0).dump(2));
    const auto back = parse_config(read_config_file(dir / "manifest.json"));
    CHECK(back.document.dump() == cfg.document.dump());
    fs::remove_all(dir);
}

TEST_CASE("number formatting round-trips") {
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(1.0) == "1");
    CHECK(format_number(-2.5e-17) == "-2.5e-17");
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1e3, 1e3);
    for (int i = 0; i < 1000; ++i) {
        const double v = u(rng) * std::pow(10.0, (i % 40) - 20);
        const double back = std::stod(format_number(v));
        CHECK(std::memcmp(&v, &back, sizeof v) == 0);
    }
    Table t{{"a", "b"}, {{1.5, std::string("x,y")}, {static_cast<long long>(3), std::string("plain")}}};
    CHECK(t.to_csv() == "a,b\n1.5,\"x,y\"\n3,plain\n");
}

TEST_CASE("grids") {
    CHECK(grid({0.25, 0.25, 0.05}) == std::vector<double>{0.25});
    const auto g = grid({0.05, 0.6, 0.025});
    CHECK(g.size() == 23);
    CHECK(g.back() == doctest::Approx(0.6));
}

TEST_CASE("spectrum, single-point scans and the ph-gap table") {
    const fs::path out = scratch("small");
    const auto cfg = tiny({{"transport", {{"omega_min", 0.3}, {"omega_max", 0.3}}},
                           {"phase", {{"S_values", {1.0}}, {"omega_min", 0.3}, {"omega_max", 0.3}}}});
    cmd_spectrum(cfg, out);
    const auto spec = lines(slurp(out / "spectrum.csv"));
    CHECK(spec.front() == "index,E_over_J");
    CHECK(spec.size() == 1 + 3 * 6);
    for (std::size_t i = 2; i < spec.size(); ++i) CHECK(std::stod(split(spec[i])[1]) >= std::stod(split(spec[i - 1])[1]));

    cmd_transport(cfg, out);
    const auto tr = lines(slurp(out / "transport.csv"));
    CHECK(tr.size() == 2);
    CHECK(tr[0] == "omega_over_J,omega_tilde_over_J,current,delta_n,spin_gap_over_J,status");

    cmd_phase(cfg, out);
    CHECK(lines(slurp(out / "phase.csv")).size() == 2);

    cmd_phgap(cfg, out);
    const auto ph = lines(slurp(out / "phgap.csv"));
    CHECK(ph.size() == 1 + 16);
    for (std::size_t i = 1; i < ph.size(); ++i) {
        const auto cells = split(ph[i]);
        CHECK((cells[0] == cells[1]) == (cells[3] == "reference"));
    }
    for (const auto& e : fs::directory_iterator(out)) CHECK(e.path().string().find(".tmp") == std::string::npos);
    fs::remove_all(out);
}

TEST_CASE("disorder scan: clean limit and determinism") {
    const fs::path a = scratch("dis_a"), b = scratch("dis_b");
    const auto cfg = tiny({{"disorder", {{"epsilon0", {0.0, 0.4}}, {"R", 3}}}, {"runtime", {{"workers", 1}}}});
    auto cfg2 = tiny({{"disorder", {{"epsilon0", {0.0, 0.4}}, {"R", 3}}}, {"runtime", {{"workers", 2}}}});
    cmd_disorder(cfg, a);
    cmd_disorder(cfg2, b);
    CHECK(slurp(a / "disorder.csv") == slurp(b / "disorder.csv"));
    CHECK(slurp(a / "disorder_realizations.csv") == slurp(b / "disorder_realizations.csv"));

    const auto one = tiny({{"disorder", {{"epsilon0", {0.0}}, {"R", 1}}}});
    cmd_disorder(one, a);
    const auto row = split(lines(slurp(a / "disorder.csv"))[1]);
    const auto clean = analyze_point(one.model, nullptr, one.transport_options);
    CHECK(row[1] == format_number(clean.transport.delta_n));
    CHECK(row[2] == "0");
    fs::remove_all(a);
    fs::remove_all(b);
}

TEST_CASE("correlations start from static expectations") {
    const fs::path out = scratch("corr");
    const auto cfg = tiny({{"correlations", {{"dt", 0.5}, {"t_max", 5.0}}}});
    cmd_correlations(cfg, out);
    const auto rows = lines(slurp(out / "correlations.csv"));
    CHECK(rows.size() == 1 + 11);
    const auto first = split(rows[1]);
    CHECK(first[0] == "0");
    // <Sx^2>/S^2 and <Sy^2>/S^2 are real and lie in (0, 1]
    CHECK(std::stod(first[1]) > 0.0);
    CHECK(std::abs(std::stod(first[2])) < 1e-12);
    CHECK(std::stod(first[3]) <= 1.0);
    fs::remove_all(out);
}

TEST_CASE("mean-field command") {
    const fs::path out = scratch("mf");
    const auto cfg = parse_config({{"model", {{"eta", 0.0}, {"L", 6}, {"N", 3}, {"omega", 0.5}}},
                                   {"meanfield", {{"periods", 2.0}, {"stride", 100}}}});
    const auto r = cmd_meanfield(cfg, out);
    CHECK_FALSE(r.numerical_failure);
    const auto rows = lines(slurp(out / "mf_trajectory.csv"));
    CHECK(rows[0] == "t_J,Sx,Sy,Sz,Bx,By,pumped_charge");
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto c = split(rows[i]);
        const double t = std::stod(c[0]);
        CHECK(std::abs(std::stod(c[1]) - 10.0 * std::cos(0.5 * t)) < 1e-7);
        CHECK(std::abs(std::stod(c[2]) - 10.0 * std::sin(0.5 * t)) < 1e-7);
        CHECK(std::stod(c[4]) == 0.0);
    }
    const auto summary = json::parse(slurp(out / "mf_summary.json"));
    CHECK(summary["winding"] == 1);
    CHECK(summary["omega_crit_lower_over_J"] == 0.0);
    fs::remove_all(out);
}

TEST_CASE("chern command reports gap closure") {
    const fs::path out = scratch("chern");
    const auto ok = cmd_chern(parse_config(json::object()), out);
    CHECK_FALSE(ok.numerical_failure);
    auto j = json::parse(slurp(out / "chern.json"));
    CHECK(j["chern"] == 1);
    CHECK(j["consistent"] == true);
    const auto bad = cmd_chern(parse_config({{"model", {{"eta", 0.0}}}}), out);
    CHECK(bad.numerical_failure);
    j = json::parse(slurp(out / "chern.json"));
    CHECK(j["chern"].is_null());
    CHECK(j["status"] == "gap_closure");
    fs::remove_all(out);
}
