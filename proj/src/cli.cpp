#include "ringbif/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "ringbif/area_curve.hpp"
#include "ringbif/errors.hpp"
#include "ringbif/fixtures.hpp"
#include "ringbif/landau.hpp"
#include "ringbif/output.hpp"
#include "ringbif/reduction.hpp"
#include "ringbif/ring_functional.hpp"
#include "ringbif/shapes.hpp"
#include "ringbif/verify.hpp"

#ifndef RINGBIF_VERSION
#define RINGBIF_VERSION "0.0.0"
#endif

namespace ringbif {

using nlohmann::json;

namespace {

struct Param {
    std::string key, fallback, help;
};

struct Command {
    std::string name, help;
    std::vector<Param> params;
};

const std::vector<Command>& commands() {
    static const std::vector<Command> c{
        {"bifurcation-set",
         "critical mu2 along mu1 for each mode n",
         {{"n", "2,3", "comma-separated mode numbers"},
          {"mu1_min", "0.05", "first mu1"},
          {"mu1_max", "7.95", "last mu1"},
          {"mu1_steps", "158", "number of mu1 intervals"}}},
        {"landau",
         "closed-form Landau coefficients and minimizer at (mu1, mu2)",
         {{"mu1", "0.35", "pressure parameter"},
          {"mu2", "500", "stretching stiffness parameter"},
          {"on_curve", "false", "replace mu2 by the n = 2 critical value"}}},
        {"tricritical", "tricritical point of the n = 2 curve", {}},
        {"shape",
         "asymptotic shape profile x(S), y(S)",
         {{"mu1", "0.35", "pressure parameter"},
          {"alpha", "0.05", "mode amplitude"},
          {"samples", "256", "points along the ring (a closing point is appended)"},
          {"length", "1", "ring length L"}}},
        {"area-curve",
         "enclosed area against pressure",
         {{"mu2", "500", "stretching stiffness parameter"},
          {"mu1_min", "0.30", "first mu1"},
          {"mu1_max", "0.45", "last mu1"},
          {"samples", "31", "number of mu1 samples"},
          {"source", "asymptotic", "asymptotic, bvp or both"},
          {"harmonics", "12", "BVP Fourier harmonics"}}},
        {"reduce",
         "numerical Lyapunov-Schmidt reduction",
         {{"system", "ring", "ring, finite_dim, euler or extensible"},
          {"mu1", "0.32", "ring pressure parameter"},
          {"mu2", "critical", "ring mu2, or 'critical' for the n = 2 value"},
          {"mode", "frozen", "ring slaving: frozen or reslaved"},
          {"harmonics", "12", "Fourier harmonics"},
          {"alpha_min", "auto", "smallest nonzero amplitude"},
          {"alpha_max", "auto", "largest amplitude"},
          {"alpha_count", "10", "amplitudes per side"},
          {"force", "1", "Euler end load F (k = 1, L = pi)"},
          {"mu1_hat", "0.25", "extensible rod load parameter"},
          {"mu2_hat", "16/3", "extensible rod stiffness parameter"}}},
        {"verify", "run the oracle suite", {}},
    };
    return c;
}

const Command& find_command(const std::string& name) {
    for (const auto& c : commands())
        if (c.name == name) return c;
    throw UsageError("unknown command '" + name + "'");
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::pair<std::string, std::string> split_kv(const std::string& token, const std::string& where) {
    auto eq = token.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError(where + ": expected key=value, got '" + token + "'");
    return {trim(token.substr(0, eq)), trim(token.substr(eq + 1))};
}

class Params {
public:
    explicit Params(std::map<std::string, std::string> v) : v_(std::move(v)) {}

    const std::string& str(const std::string& k) const { return v_.at(k); }

    double num(const std::string& k) const {
        const std::string& s = str(k);
        try {
            auto slash = s.find('/');
            std::size_t used = 0;
            if (slash != std::string::npos) {
                double a = std::stod(s.substr(0, slash)), b = std::stod(s.substr(slash + 1));
                return a / b;
            }
            double x = std::stod(s, &used);
            if (used != s.size()) throw std::invalid_argument(s);
            return x;
        } catch (const std::exception&) {
            throw UsageError("parameter " + k + ": not a number: '" + s + "'");
        }
    }

    int integer(const std::string& k) const {
        double x = num(k);
        if (x != std::floor(x) || std::abs(x) > 1e9) throw UsageError("parameter " + k + ": not an integer");
        return static_cast<int>(x);
    }

    bool flag(const std::string& k) const {
        const std::string& s = str(k);
        if (s == "true" || s == "1" || s == "yes") return true;
        if (s == "false" || s == "0" || s == "no") return false;
        throw UsageError("parameter " + k + ": expected true or false");
    }

    const std::map<std::string, std::string>& all() const { return v_; }

private:
    std::map<std::string, std::string> v_;
};

struct Output {
    Table table;
    json results;
    std::string text;  // verify report
    bool failed = false;
};

json nullable(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

Output cmd_bifurcation_set(const Params& p) {
    std::vector<int> modes;
    std::stringstream ss(p.str("n"));
    for (std::string tok; std::getline(ss, tok, ',');) {
        tok = trim(tok);
        try {
            modes.push_back(std::stoi(tok));
        } catch (const std::exception&) {
            throw UsageError("parameter n: bad mode '" + tok + "'");
        }
        if (modes.back() < 2) throw UsageError("parameter n: modes start at 2");
    }
    const double lo = p.num("mu1_min"), hi = p.num("mu1_max");
    const int steps = p.integer("mu1_steps");
    if (!(lo > 0.0) || !(hi >= lo) || steps < 1) throw UsageError("need 0 < mu1_min <= mu1_max and mu1_steps >= 1");
    Output o;
    o.table.header = {"n", "mu1", "mu2_critical", "branch_label"};
    const double mt = landau::tricritical_mu1();
    for (int n : modes) {
        std::vector<double> grid;
        for (int i = 0; i <= steps; ++i) grid.push_back(lo + (hi - lo) * i / steps);
        if (n == 2 && mt >= lo && mt <= hi) grid.push_back(mt);
        std::sort(grid.begin(), grid.end());
        const double top = n * n - 1.0;
        for (double m : grid) {
            if (m >= top) continue;
            std::string label = n == 2 ? (m == mt ? "tricritical" : landau::branch_label(m)) : "na";
            o.table.rows.push_back({std::to_string(n), fmt_num(m), fmt_num(landau::critical_mu2(n, m)), label});
        }
    }
    o.results = o.table.to_json();
    return o;
}

json terms_json(const landau::CoefficientTerms& t) {
    json j;
    j["prefactor"] = t.prefactor;
    for (const auto& nt : t.terms) j["terms"][nt.name] = nt.value;
    j["value"] = t.value();
    return j;
}

Output cmd_landau(const Params& p) {
    const double m1 = p.num("mu1");
    const double m2 = p.flag("on_curve") ? landau::critical_mu2(2, m1) : p.num("mu2");
    auto poly = landau::landau_polynomial(m1, m2);
    Output o;
    double astar = std::nan(""), gmin = std::nan(""), c2 = std::nan(""), c4 = std::nan("");
    json minima = json::array();
    if (poly.a6 > 0.0) {
        auto mr = landau::minimize_g(poly);
        astar = mr.alpha_star;
        gmin = mr.g_min;
        for (const auto& lm : mr.local_minima) minima.push_back({{"alpha", lm.alpha}, {"g", lm.g}});
        std::tie(c2, c4) = landau::normal_form(m1, m2);
    }
    std::string order = "none";
    json transition = nullptr;
    try {
        auto rep = landau::classify_transition(m2);
        order = to_string(rep.order);
        transition = {{"order", order}, {"mu1_critical", rep.mu1_critical}};
        if (rep.maxwell_mu1) transition["maxwell_mu1"] = *rep.maxwell_mu1;
        if (rep.spinodal_mu1) transition["spinodal_mu1"] = {rep.spinodal_mu1->first, rep.spinodal_mu1->second};
        if (rep.alpha_star) transition["alpha_star"] = *rep.alpha_star;
    } catch (const NoBifurcation&) {
    }
    o.table.header = {"mu1", "mu2", "a2", "a4", "a6", "determinacy", "alpha_star", "g_min", "transition_order"};
    o.table.rows.push_back({fmt_num(m1), fmt_num(m2), fmt_num(poly.a2), fmt_num(poly.a4), fmt_num(poly.a6),
                            std::to_string(poly.determinacy), fmt_num(astar), fmt_num(gmin), order});
    o.results = {{"mu1", m1},
                 {"mu2", m2},
                 {"a2", poly.a2},
                 {"a4", poly.a4},
                 {"a6", poly.a6},
                 {"determinacy", poly.determinacy},
                 {"alpha_star", nullable(astar)},
                 {"g_min", nullable(gmin)},
                 {"local_minima", minima},
                 {"normal_form", {{"c2", nullable(c2)}, {"c4", nullable(c4)}}},
                 {"transition", transition},
                 {"terms",
                  {{"a2", terms_json(landau::a2_terms(m1, m2))},
                   {"a4", terms_json(landau::a4_terms(m1, m2))},
                   {"a6", terms_json(landau::a6_terms(m1, m2))}}}};
    return o;
}

Output cmd_tricritical(const Params&) {
    auto [m1, m2] = landau::tricritical_point();
    auto poly = landau::landau_polynomial(m1, m2);
    Output o;
    o.table.header = {"mu1", "mu2", "a2", "a4", "a6"};
    o.table.rows.push_back({fmt_num(m1), fmt_num(m2), fmt_num(poly.a2), fmt_num(poly.a4), fmt_num(poly.a6)});
    o.results = o.table.to_json()[0];
    return o;
}

Output cmd_shape(const Params& p) {
    const double m1 = p.num("mu1"), a = p.num("alpha"), L = p.num("length");
    const int n = p.integer("samples");
    auto prof = shapes::to_cartesian(shapes::asymptotic_state(m1, a, L), n);
    Output o;
    o.table.header = {"s", "x", "y"};
    for (const auto& s : prof.samples) o.table.rows.push_back({fmt_num(s.s), fmt_num(s.x), fmt_num(s.y)});
    o.results = {{"mu1", m1},
                 {"alpha", a},
                 {"length", L},
                 {"area", prof.area},
                 {"area_formula", shapes::enclosed_area(m1, a, L)},
                 {"closed", prof.closed},
                 {"closure_gap", prof.closure_gap},
                 {"warnings", prof.warnings},
                 {"profile", o.table.to_json()}};
    return o;
}

Output cmd_area_curve(const Params& p) {
    bvp::BvpOptions bo;
    bo.harmonics = p.integer("harmonics");
    auto source = bvp::parse_area_source(p.str("source"));
    auto curve = bvp::area_pressure_curve(p.num("mu2"), p.num("mu1_min"), p.num("mu1_max"), p.integer("samples"),
                                          source, bo);
    Output o;
    o.table = curve.to_table();
    o.results = {{"mu2", curve.mu2},
                 {"transition_order", to_string(curve.order)},
                 {"rows", o.table.to_json()},
                 {"warnings", curve.warnings}};
    return o;
}

Output cmd_reduce(const Params& p) {
    const std::string system = p.str("system");
    const bool ring = system == "ring";
    const double amin = p.str("alpha_min") == "auto" ? (ring ? 0.002 : 0.01) : p.num("alpha_min");
    const double amax = p.str("alpha_max") == "auto" ? (ring ? 0.02 : 0.1) : p.num("alpha_max");
    const auto grid = symmetric_grid(amin, amax, p.integer("alpha_count"));
    const int harmonics = p.integer("harmonics");
    ReductionResult r;
    std::optional<LandauPolynomial> closed;
    double scale = 1.0;
    json extra = json::object();
    if (ring) {
        const double m1 = p.num("mu1");
        const double m2 = p.str("mu2") == "critical" ? landau::critical_mu2(2, m1) : p.num("mu2");
        RingReductionOptions ro;
        ro.harmonics = harmonics;
        ro.alphas = grid;
        const std::string mode = p.str("mode");
        if (mode == "frozen") ro.mode = SlavingMode::Frozen;
        else if (mode == "reslaved") ro.mode = SlavingMode::Reslaved;
        else throw UsageError("parameter mode: expected frozen or reslaved");
        auto rr = reduce_ring(m1, m2, ro);
        r = rr.result;
        closed = landau::landau_polynomial(m1, m2);
        scale = landau::kEnergyScale;
        extra = {{"mu1", m1}, {"mu2", m2}, {"mode", mode}, {"mu2_slaving", rr.mu2_slaving}};
    } else {
        examples::ExampleFixture fx;
        if (system == "finite_dim") fx = examples::finite_dim_example();
        else if (system == "euler") fx = examples::euler_elastica(p.num("force"), 1.0, kPi, harmonics);
        else if (system == "extensible") fx = examples::extensible_rod(p.num("mu1_hat"), p.num("mu2_hat"), harmonics);
        else throw UsageError("parameter system: expected ring, finite_dim, euler or extensible");
        ReductionOptions o;
        o.direction = fx.reduction_direction;
        r = reduce(fx.functional, grid, o);
        closed = fx.closed_form_coeffs;
        scale = fx.closed_form_scale;
    }
    Output o;
    o.table.header = {"alpha", "g"};
    for (auto [a, g] : r.g_samples) o.table.rows.push_back({fmt_num(a), fmt_num(g)});
    json fitted = {{"a2", r.fitted.a2 * scale}, {"a4", r.fitted.a4 * scale}, {"a6", r.fitted.a6 * scale},
                   {"determinacy", r.fitted.determinacy}};
    json cf = nullptr;
    if (closed) cf = {{"a2", closed->a2}, {"a4", closed->a4}, {"a6", closed->a6}};
    o.results = {{"system", system},       {"parameters", extra},       {"closed_form_units_per_engine_unit", scale},
                 {"fitted_closed_form_units", fitted}, {"closed_form", cf}, {"engine", to_json(r)}};
    return o;
}

Output cmd_verify(const std::optional<landau::TermFault>& fault, bool verbose) {
    verify::SuiteOptions so;
    so.fault = fault;
    auto checks = verify::run_oracle_suite(so);
    Output o;
    o.table.header = {"group", "check", "status", "deviation", "tolerance", "detail"};
    std::ostringstream text;
    int failed = 0;
    int counted = 0;
    for (const auto& c : checks) {
        const char* status = c.informational ? "info" : c.pass ? "pass" : "fail";
        if (!c.informational) {
            ++counted;
            if (!c.pass) ++failed;
        }
        o.table.rows.push_back({c.group, c.name, status, fmt_num(c.deviation), fmt_num(c.tolerance), c.detail});
        text << (c.informational ? "INFO " : c.pass ? "PASS " : "FAIL ") << c.group << '/' << c.name << "  deviation " << fmt_num(c.deviation);
        if (verbose) {
            text << "  tolerance " << fmt_num(c.tolerance);
            if (!c.detail.empty()) text << "  (" << c.detail << ')';
        }
        text << '\n';
    }
    text << (failed == 0 ? "all " + std::to_string(counted) + " checks passed"
                         : std::to_string(failed) + " of " + std::to_string(counted) + " checks failed")
         << '\n';
    o.text = text.str();
    o.results = {{"checks", o.table.to_json()}, {"failed", failed}, {"total", counted}};
    if (fault) o.results["injected_fault"] = fault->coefficient + ":" + fault->term + ":" + fmt_num(fault->factor);
    o.failed = failed > 0;
    return o;
}

json tolerances() {
    ReductionOptions r;
    bvp::BvpOptions b;
    return {{"bvp_residual_inf", b.tol},       {"bvp_max_backtracks", b.max_backtracks}, {"slaved_gtol", r.gtol},
            {"kernel_rank_tol", r.rank_tol},   {"fd_step", r.h_fd},                      {"determinacy_rel", 1e-9},
            {"float_significant_digits", 12}};
}

}  // namespace

std::string version() { return RINGBIF_VERSION; }

std::vector<std::string> cli_commands() {
    std::vector<std::string> v;
    for (const auto& c : commands()) v.push_back(c.name);
    return v;
}

std::map<std::string, std::string> merge_parameters(const std::string& command, const std::string& config_text,
                                                    const std::vector<std::string>& tokens) {
    const Command& cmd = find_command(command);
    std::map<std::string, std::string> v;
    for (const auto& prm : cmd.params) v[prm.key] = prm.fallback;
    auto set = [&](const std::string& token, const std::string& where) {
        auto [k, val] = split_kv(token, where);
        if (!v.count(k)) throw UsageError(where + ": unknown key '" + k + "' for command " + command);
        v[k] = val;
    };
    std::istringstream in(config_text);
    int line_no = 0;
    for (std::string line; std::getline(in, line);) {
        ++line_no;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        set(line, "config line " + std::to_string(line_no));
    }
    for (const auto& t : tokens) set(t, "argument");
    return v;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"ringbif: bifurcation analysis of a pressurized extensible ring", "ringbif"};
    app.set_version_flag("--version", version());
    std::string format, output_path, config_path, fault_spec;
    bool verbose = false;
    app.add_option("--format", format, "csv or json (verify also accepts text, its default)")
        ->check(CLI::IsMember({"csv", "json", "text"}));
    app.add_option("--output,-o", output_path, "write to this file instead of stdout");
    app.add_option("--config", config_path, "flat key=value file; command-line values take precedence");
    app.add_flag("--verbose,-v", verbose, "verify: list tolerances and details");
    app.add_option("--inject-fault", fault_spec, "verify: scale one closed-form term, e.g. a4:t3 or a4:t3:1.5");
    app.require_subcommand(1, 1);
    std::map<std::string, std::vector<std::string>> tokens;
    for (const auto& c : commands()) {
        std::string help = c.help;
        for (const auto& p : c.params) help += "\n  " + p.key + "=" + p.fallback + "  " + p.help;
        auto* sub = app.add_subcommand(c.name, help);
        sub->fallthrough();
        sub->add_option("params", tokens[c.name], "key=value parameters");
    }
    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 2;
    }
    const std::string command = app.get_subcommands().front()->get_name();
    try {
        std::string config_text;
        if (!config_path.empty()) {
            std::ifstream f(config_path);
            if (!f) throw UsageError("cannot read config file '" + config_path + "'");
            std::stringstream buf;
            buf << f.rdbuf();
            config_text = buf.str();
        }
        Params params(merge_parameters(command, config_text, tokens[command]));
        if (format.empty()) format = command == "verify" ? "text" : "csv";
        if (format == "text" && command != "verify") throw UsageError("--format text is only available for verify");
        if (!fault_spec.empty() && command != "verify") throw UsageError("--inject-fault applies to verify only");
        std::optional<landau::TermFault> fault;
        if (!fault_spec.empty()) fault = verify::parse_fault(fault_spec);

        Output o;
        if (command == "bifurcation-set") o = cmd_bifurcation_set(params);
        else if (command == "landau") o = cmd_landau(params);
        else if (command == "tricritical") o = cmd_tricritical(params);
        else if (command == "shape") o = cmd_shape(params);
        else if (command == "area-curve") o = cmd_area_curve(params);
        else if (command == "reduce") o = cmd_reduce(params);
        else o = cmd_verify(fault, verbose);

        std::string body;
        if (format == "csv") {
            body = o.table.to_csv();
        } else if (format == "text") {
            body = o.text;
        } else {
            json doc;
            doc["config"] = {{"command", command}, {"parameters", params.all()}, {"format", format}};
            doc["results"] = o.results;
            doc["provenance"] = {{"version", version()}, {"tolerances", tolerances()}};
            body = dump_json(doc) + "\n";
        }
        if (output_path.empty()) {
            out << body;
        } else {
            std::ofstream f(output_path, std::ios::binary);
            if (!f) throw UsageError("cannot open output file '" + output_path + "'");
            f << body;
            if (!f) throw UsageError("write failed for '" + output_path + "'");
        }
        if (o.failed) {
            if (!output_path.empty()) out << o.text;
            return 1;
        }
        return 0;
    } catch (const UsageError& e) {
        err << "ringbif " << command << ": " << e.what() << '\n';
        return 2;
    } catch (const DomainError& e) {
        err << "ringbif " << command << ": " << e.what() << '\n';
        return 2;
    } catch (const NoBifurcation& e) {
        err << "ringbif " << command << ": " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "ringbif " << command << ": " << e.what() << '\n';
        return 1;
    }
}

}  // namespace ringbif
