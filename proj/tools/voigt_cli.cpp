// Command-line driver for the strip-problem library: simulation, Green's
// function sampling, and the bound-verification studies. All numeric output
// goes through format_g17 so repeated runs are byte-identical.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "voigt/bounds.hpp"
#include "voigt/errors.hpp"
#include "voigt/fields.hpp"
#include "voigt/green.hpp"
#include "voigt/model.hpp"
#include "voigt/oracle.hpp"
#include "voigt/report_io.hpp"

namespace {

using namespace voigt;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitVerificationFailed = 4;

struct CommonArgs {
    std::string problem_path;
    std::string out_dir;
};

struct OverrideEcho {
    std::vector<std::pair<std::string, std::string>> entries;

    void add(const std::string& key, double value) { entries.emplace_back(key, format_g17(value)); }
    void add(const std::string& key, int value) { entries.emplace_back(key, std::to_string(value)); }
    void add(const std::string& key, const std::string& value) { entries.emplace_back(key, value); }

    JsonValue json() const {
        JsonValue obj = JsonValue::object();
        for (const auto& [key, value] : entries) obj.set(key, JsonValue::string(value));
        return obj;
    }

    std::string flat() const {
        std::string s;
        for (const auto& [key, value] : entries) s += key + "=" + value + ";";
        return s;
    }
};

Problem load_validated(const CommonArgs& args) {
    const Problem problem = load_problem(args.problem_path);
    const Validation v = validate_config(problem);
    if (!v.ok()) {
        std::string message = "invalid problem file:";
        for (const auto& issue : v.issues) message += "\n  - " + issue.message;
        throw ValidationError(message);
    }
    return problem;
}

void write_manifest(const CommonArgs& args, const std::string& command, const Problem& problem,
                    const OverrideEcho& overrides, const std::vector<std::string>& outputs,
                    JsonValue diagnostics) {
    JsonValue manifest = JsonValue::object();
    manifest.set("command", JsonValue::string(command));
    manifest.set("config", problem_json_value(problem));
    manifest.set("config_hash",
                 JsonValue::string(fnv1a64_hex(problem_to_json(problem) + overrides.flat())));
    manifest.set("overrides", overrides.json());
    JsonValue files = JsonValue::array();
    for (const std::string& name : outputs) files.push(JsonValue::string(name));
    manifest.set("outputs", std::move(files));
    manifest.set("diagnostics", std::move(diagnostics));
    write_text_file((std::filesystem::path(args.out_dir) / "manifest.json").string(),
                    manifest.dump());
}

std::string field_csv(const FieldGrid& field) {
    std::string out = "x,t,value\n";
    for (int j = 0; j < field.grid.nt; ++j) {
        for (int i = 0; i < field.grid.nx; ++i) {
            out += format_g17(field.grid.x_points[static_cast<size_t>(i)]) + "," +
                   format_g17(field.grid.t_points[static_cast<size_t>(j)]) + "," +
                   format_g17(field.at(i, j)) + "\n";
        }
    }
    return out;
}

std::vector<double> uniform_samples(double lo, double hi, int count) {
    std::vector<double> xs(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) xs[static_cast<size_t>(i)] = lo + (hi - lo) * i / (count - 1);
    xs.front() = lo;
    xs.back() = hi;
    return xs;
}

int run_simulate(const CommonArgs& args, int nx, int nt) {
    const Problem problem = load_validated(args);
    const Grid grid = Grid::uniform(problem.cfg, nx, nt);
    ModalPipeline pipeline(problem, grid.t_points);
    const ModalState& state = pipeline.solve_all();

    OverrideEcho overrides;
    overrides.add("nx", nx);
    overrides.add("nt", nt);

    const std::vector<std::pair<std::string, FieldKind>> fields = {
        {"u.csv", FieldKind::U},
        {"w.csv", FieldKind::W},
        {"r.csv", FieldKind::R},
        {"F.csv", FieldKind::SourceF},
    };
    std::vector<std::string> outputs;
    for (const auto& [name, kind] : fields) {
        write_text_file((std::filesystem::path(args.out_dir) / name).string(),
                        field_csv(assemble_field(state, kind, grid)));
        outputs.push_back(name);
    }

    JsonValue diagnostics = JsonValue::object();
    JsonValue quad = JsonValue::object();
    quad.set("estimate", JsonValue::number(state.quad.estimate));
    quad.set("threshold", JsonValue::number(state.quad.threshold));
    diagnostics.set("quadrature", std::move(quad));
    JsonValue modes = JsonValue::array();
    for (const ModeTrack& track : state.tracks) modes.push(JsonValue::integer(track.n));
    diagnostics.set("modes", std::move(modes));
    diagnostics.set("series", JsonValue::string("finite-modal; no series truncation"));
    write_manifest(args, "simulate", problem, overrides, outputs, std::move(diagnostics));
    return kExitOk;
}

int run_green(const CommonArgs& args, int nx, int nxi, int nts, double tol, double alpha,
              bool split_parts) {
    const Problem problem = load_validated(args);
    const StripConfig& cfg = problem.cfg;
    const std::vector<double> xs = uniform_samples(0.0, cfg.l, nx);
    const std::vector<double> xis = uniform_samples(0.0, cfg.l, nxi);
    const std::vector<double> ts = uniform_samples(0.0, cfg.t_max, nts);

    OverrideEcho overrides;
    overrides.add("nx", nx);
    overrides.add("nxi", nxi);
    overrides.add("nt_samples", nts);
    overrides.add("tol", tol);
    overrides.add("alpha", alpha);

    double worst_cert = 0.0;
    std::vector<std::string> outputs;
    if (!split_parts) {
        std::string csv = "x,xi,t,value,tail_bound,n_max\n";
        for (double t : ts) {
            for (double xi : xis) {
                for (double x : xs) {
                    const GreenValue g = green_eval(cfg, x, xi, t, tol, alpha);
                    worst_cert = std::max(worst_cert, g.trunc.tail_bound);
                    csv += format_g17(x) + "," + format_g17(xi) + "," + format_g17(t) + "," +
                           format_g17(g.value) + "," + format_g17(g.trunc.tail_bound) + "," +
                           std::to_string(g.trunc.n_max) + "\n";
                }
            }
        }
        write_text_file((std::filesystem::path(args.out_dir) / "green.csv").string(), csv);
        outputs.push_back("green.csv");
    } else {
        std::string csv1 = "x,xi,t,value,tail_bound,n_max\n";
        std::string csv2 = csv1;
        for (double t : ts) {
            for (double xi : xis) {
                for (double x : xs) {
                    const GreenSplitValue g = green_split(cfg, x, xi, t, tol, alpha);
                    worst_cert = std::max(worst_cert, g.trunc.tail_bound);
                    const std::string tail = "," + format_g17(g.trunc.tail_bound) + "," +
                                             std::to_string(g.trunc.n_max) + "\n";
                    const std::string prefix =
                        format_g17(x) + "," + format_g17(xi) + "," + format_g17(t) + ",";
                    csv1 += prefix + format_g17(g.g1) + tail;
                    csv2 += prefix + format_g17(g.g2) + tail;
                }
            }
        }
        write_text_file((std::filesystem::path(args.out_dir) / "g1.csv").string(), csv1);
        write_text_file((std::filesystem::path(args.out_dir) / "g2.csv").string(), csv2);
        outputs.push_back("g1.csv");
        outputs.push_back("g2.csv");
    }

    JsonValue diagnostics = JsonValue::object();
    diagnostics.set("worst_tail_bound", JsonValue::number(worst_cert));
    diagnostics.set("n_split", JsonValue::integer(n_split(cfg)));
    write_manifest(args, split_parts ? "split" : "green", problem, overrides, outputs,
                   std::move(diagnostics));
    return kExitOk;
}

JsonValue trace_json(const std::vector<double>& values) {
    JsonValue arr = JsonValue::array();
    for (double v : values) arr.push(JsonValue::number(v));
    return arr;
}

bool trace_upward_bounded(const std::vector<double>& v) {
    if (v.empty()) return true;
    double run_max = v.front();
    for (size_t i = 1; i < v.size(); ++i) {
        if (v[i] > 1.2 * run_max) return false;
        run_max = std::max(run_max, v[i]);
    }
    return true;
}

int run_verify_g(const CommonArgs& args, double alpha, std::vector<double> epsilons, int n_space,
                 int n_time, double t_min_frac) {
    const Problem problem = load_validated(args);
    GreenSampleSpec spec;
    spec.n_space = n_space;
    spec.n_time = n_time;
    spec.t_min_frac = t_min_frac;
    const EnvelopeFitReport fit =
        fit_envelope_constants(problem.cfg, std::move(epsilons), alpha, spec);

    const bool a0_ok = trace_upward_bounded(fit.a0_g);
    const bool m0_ok = trace_upward_bounded(fit.m0_g);
    const bool c1_ok = trace_upward_bounded(fit.c1_g2);
    const bool dominated = fit.refined_violations == 0;
    const bool passed = a0_ok && m0_ok && c1_ok && dominated;

    OverrideEcho overrides;
    overrides.add("alpha", alpha);
    overrides.add("n_space", n_space);
    overrides.add("n_time", n_time);
    overrides.add("t_min_frac", t_min_frac);

    JsonValue report = JsonValue::object();
    report.set("alpha", JsonValue::number(fit.alpha));
    report.set("epsilons", trace_json(fit.epsilons));
    JsonValue traces = JsonValue::object();
    traces.set("a0_g", trace_json(fit.a0_g));
    traces.set("m0_g", trace_json(fit.m0_g));
    traces.set("a0_g1", trace_json(fit.a0_g1));
    traces.set("a1_g1", trace_json(fit.a1_g1));
    traces.set("c1_g2", trace_json(fit.c1_g2));
    traces.set("a0_slow", trace_json(fit.a0_slow));
    traces.set("cert_worst", trace_json(fit.cert_worst));
    report.set("traces", std::move(traces));
    JsonValue maxima = JsonValue::object();
    maxima.set("a0", JsonValue::number(fit.a0_max));
    maxima.set("m0", JsonValue::number(fit.m0_max));
    maxima.set("c1", JsonValue::number(fit.c1_max));
    report.set("max_over_sweep", std::move(maxima));
    JsonValue analytic = JsonValue::object();
    analytic.set("c_geometry", JsonValue::number(c_geometry(problem.cfg)));
    analytic.set("c1", JsonValue::number(c1_analytic(problem.cfg)));
    analytic.set("integer_k", JsonValue::boolean(beta_fraction(problem.cfg) == 0.0));
    report.set("analytic_reference", std::move(analytic));
    JsonValue verdicts = JsonValue::object();
    verdicts.set("a0_upward_bounded", JsonValue::string(a0_ok ? "PASS" : "FAIL"));
    verdicts.set("m0_upward_bounded", JsonValue::string(m0_ok ? "PASS" : "FAIL"));
    verdicts.set("c1_upward_bounded", JsonValue::string(c1_ok ? "PASS" : "FAIL"));
    verdicts.set("envelope_dominates", JsonValue::string(dominated ? "PASS" : "FAIL"));
    verdicts.set("overall", JsonValue::string(passed ? "PASS" : "FAIL"));
    report.set("verdicts", std::move(verdicts));

    // the band inequalities underpin the estimate; include the enumeration
    const BandCheckReport bands = verify_band_inequalities(problem.cfg, alpha);
    JsonValue band = JsonValue::object();
    band.set("violations", JsonValue::integer(static_cast<long long>(bands.violations.size())));
    band.set("integer_k", JsonValue::boolean(bands.integer_k));
    band.set("skipped_critical_mode", JsonValue::boolean(bands.skipped_critical_mode));
    band.set("n_alpha", JsonValue::integer(bands.n_alpha));
    band.set("n_split", JsonValue::integer(bands.n_split));
    report.set("band_inequalities", std::move(band));

    write_text_file((std::filesystem::path(args.out_dir) / "verify_g.json").string(),
                    report.dump());

    std::string csv = "epsilon,a0,m0,a0_g1,a1_g1,c1,a0_slow,cert_worst\n";
    for (size_t i = 0; i < fit.epsilons.size(); ++i) {
        csv += format_g17(fit.epsilons[i]) + "," + format_g17(fit.a0_g[i]) + "," +
               format_g17(fit.m0_g[i]) + "," + format_g17(fit.a0_g1[i]) + "," +
               format_g17(fit.a1_g1[i]) + "," + format_g17(fit.c1_g2[i]) + "," +
               format_g17(fit.a0_slow[i]) + "," + format_g17(fit.cert_worst[i]) + "\n";
    }
    write_text_file((std::filesystem::path(args.out_dir) / "verify_g.csv").string(), csv);

    JsonValue diagnostics = JsonValue::object();
    diagnostics.set("modes_max", JsonValue::integer(fit.n_modes_max));
    diagnostics.set("band_violations",
                    JsonValue::integer(static_cast<long long>(bands.violations.size())));
    write_manifest(args, "verify-g", problem, overrides, {"verify_g.json", "verify_g.csv"},
                   std::move(diagnostics));
    if (!bands.violations.empty()) return kExitVerificationFailed;
    return passed ? kExitOk : kExitVerificationFailed;
}

int run_verify_r(const CommonArgs& args, double alpha, double gamma, int nx, int nt) {
    const Problem problem = load_validated(args);
    ErrorBoundParams params;
    params.alpha = alpha;
    params.gamma_exp = gamma;
    const double eta = params.eta(); // InvalidExponents -> exit 2

    const SweepReport report = verify_error_bound(problem, params, {problem.cfg.epsilon}, nx, nt);
    const SweepRecord& rec = report.records.front();

    OverrideEcho overrides;
    overrides.add("alpha", alpha);
    overrides.add("gamma", gamma);
    overrides.add("nx", nx);
    overrides.add("nt", nt);

    JsonValue out = JsonValue::object();
    out.set("epsilon", JsonValue::number(rec.epsilon));
    out.set("sup_r", JsonValue::number(rec.sup_r));
    out.set("norm_F", JsonValue::number(rec.norm_f));
    out.set("k_const", JsonValue::number(rec.k_const));
    JsonValue exponents = JsonValue::object();
    exponents.set("alpha", JsonValue::number(alpha));
    exponents.set("gamma", JsonValue::number(gamma));
    exponents.set("eta", JsonValue::number(eta));
    out.set("exponents", std::move(exponents));
    out.set("bound_statement",
            JsonValue::string("|r(x,t)| <= k_const * norm_F * (epsilon^eta * t)^2 on the grid"));
    write_text_file((std::filesystem::path(args.out_dir) / "verify_r.json").string(), out.dump());

    JsonValue diagnostics = JsonValue::object();
    diagnostics.set("eta", JsonValue::number(eta));
    write_manifest(args, "verify-r", problem, overrides, {"verify_r.json"}, std::move(diagnostics));
    return kExitOk;
}

int run_sweep_cmd(const CommonArgs& args, double alpha, double gamma, std::vector<double> epsilons,
                  int nx, int nt, int n_space, int n_time) {
    const Problem problem = load_validated(args);
    ErrorBoundParams params;
    params.alpha = alpha;
    params.gamma_exp = gamma;
    GreenSampleSpec spec;
    spec.n_space = n_space;
    spec.n_time = n_time;
    const SweepReport report = run_sweep(problem, params, std::move(epsilons), spec, nx, nt);

    OverrideEcho overrides;
    overrides.add("alpha", alpha);
    overrides.add("gamma", gamma);
    overrides.add("nx", nx);
    overrides.add("nt", nt);
    overrides.add("n_space", n_space);
    overrides.add("n_time", n_time);

    write_text_file((std::filesystem::path(args.out_dir) / "sweep.json").string(),
                    sweep_report_json(report).dump());
    write_text_file((std::filesystem::path(args.out_dir) / "sweep.csv").string(),
                    sweep_report_csv(report));

    JsonValue diagnostics = JsonValue::object();
    diagnostics.set("eta", JsonValue::number(report.eta));
    diagnostics.set("records", JsonValue::integer(static_cast<long long>(report.records.size())));
    write_manifest(args, "sweep", problem, overrides, {"sweep.json", "sweep.csv"},
                   std::move(diagnostics));
    return report.passed ? kExitOk : kExitVerificationFailed;
}

int run_oracle_compare(const CommonArgs& args, const std::vector<int>& grids, double cfl) {
    const Problem problem = load_validated(args);
    const StripConfig& cfg = problem.cfg;

    std::vector<int> nxs = grids;
    std::sort(nxs.begin(), nxs.end());
    std::vector<double> errors;
    std::vector<int> nts;
    for (int nx : nxs) {
        const double dx = cfg.l / (nx - 1);
        const int nt = static_cast<int>(std::ceil(cfg.t_max / (cfl * dx / cfg.c))) + 1;
        nts.push_back(nt);
        const Grid grid = Grid::uniform(cfg, nx, nt);
        ModalPipeline pipeline(problem, grid.t_points);
        const FieldGrid exact = assemble_field(pipeline.solve_full(), FieldKind::U, grid);
        const FieldGrid fd = solve_fd(problem, {nx, nt, 0.9});
        double err = 0.0;
        for (size_t idx = 0; idx < exact.values.size(); ++idx) {
            err = std::max(err, std::abs(exact.values[idx] - fd.values[idx]));
        }
        errors.push_back(err);
    }

    std::string csv = "nx,nt,sup_error,order\n";
    std::vector<double> orders;
    bool all_in_range = true;
    bool degenerate = true;
    for (size_t i = 0; i < nxs.size(); ++i) {
        double order = 0.0;
        if (i > 0 && errors[i - 1] > 1e-14 && errors[i] > 1e-15) {
            degenerate = false;
            order = std::log2(errors[i - 1] / errors[i]);
            orders.push_back(order);
            if (order < 1.8 || order > 2.2) all_in_range = false;
        }
        csv += std::to_string(nxs[i]) + "," + std::to_string(nts[i]) + "," +
               format_g17(errors[i]) + "," + (i > 0 ? format_g17(order) : std::string()) + "\n";
    }
    write_text_file((std::filesystem::path(args.out_dir) / "oracle_compare.csv").string(), csv);

    const bool passed = degenerate || (all_in_range && !orders.empty());
    JsonValue out = JsonValue::object();
    out.set("orders", trace_json(orders));
    out.set("within_range", JsonValue::boolean(passed));
    write_text_file((std::filesystem::path(args.out_dir) / "oracle_compare.json").string(),
                    out.dump());

    OverrideEcho overrides;
    std::string grid_list;
    for (int nx : nxs) grid_list += (grid_list.empty() ? "" : ",") + std::to_string(nx);
    overrides.add("grids", grid_list);
    overrides.add("cfl", cfl);
    JsonValue diagnostics = JsonValue::object();
    diagnostics.set("within_range", JsonValue::boolean(passed));
    write_manifest(args, "oracle-compare", problem, overrides,
                   {"oracle_compare.csv", "oracle_compare.json"}, std::move(diagnostics));
    return passed ? kExitOk : kExitVerificationFailed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Strip-problem solver and bound verifier for the damped wave model"};
    app.require_subcommand(1);

    CommonArgs common;
    auto add_common = [&common](CLI::App* sub) {
        sub->add_option("--problem", common.problem_path, "problem JSON file")->required();
        sub->add_option("--out", common.out_dir, "output directory")->required();
    };

    int sim_nx = 65, sim_nt = 129;
    CLI::App* simulate = app.add_subcommand("simulate", "solve u, w, r, F and dump field CSVs");
    add_common(simulate);
    simulate->add_option("--nx", sim_nx, "spatial samples");
    simulate->add_option("--nt", sim_nt, "time samples");

    int g_nx = 9, g_nxi = 9, g_nt = 7;
    double g_tol = 1e-10, g_alpha = 0.9;
    CLI::App* green = app.add_subcommand("green", "sample G with tail certificates");
    CLI::App* split = app.add_subcommand("split", "sample the G1/G2 decomposition");
    for (CLI::App* sub : {green, split}) {
        add_common(sub);
        sub->add_option("--nx", g_nx, "x samples");
        sub->add_option("--nxi", g_nxi, "xi samples");
        sub->add_option("--nt-samples", g_nt, "time samples");
        sub->add_option("--tol", g_tol, "absolute tolerance per sample");
        sub->add_option("--alpha", g_alpha, "band exponent recorded in certificates");
    }

    double vg_alpha = 0.9;
    std::vector<double> vg_eps{0.2, 0.1, 0.05, 0.025};
    int vg_space = 17, vg_time = 64;
    double vg_tmin = 1e-3;
    CLI::App* verify_g = app.add_subcommand("verify-g", "fit and check the decay envelopes");
    add_common(verify_g);
    verify_g->add_option("--alpha", vg_alpha, "envelope exponent, 1/2 < alpha < 1");
    verify_g->add_option("--epsilons", vg_eps, "sweep values in (0,1)")->delimiter(',');
    verify_g->add_option("--n-space", vg_space, "x and xi samples");
    verify_g->add_option("--n-time", vg_time, "log-spaced time samples");
    verify_g->add_option("--t-min-frac", vg_tmin, "smallest sampled time as a fraction of T");

    double vr_alpha = 0.9, vr_gamma = 0.95;
    int vr_nx = 65, vr_nt = 129;
    CLI::App* verify_r = app.add_subcommand("verify-r", "single-epsilon error-bound report");
    add_common(verify_r);
    verify_r->add_option("--alpha", vr_alpha, "exponent, 3/4 < alpha < 1");
    verify_r->add_option("--gamma", vr_gamma, "exponent, 1/(2(2 alpha - 1)) < gamma < 1");
    verify_r->add_option("--nx", vr_nx, "spatial samples");
    verify_r->add_option("--nt", vr_nt, "time samples");

    double sw_alpha = 0.9, sw_gamma = 0.95;
    std::vector<double> sw_eps{0.2, 0.1, 0.05, 0.025};
    int sw_nx = 65, sw_nt = 129, sw_space = 17, sw_time = 64;
    CLI::App* sweep = app.add_subcommand("sweep", "full epsilon-sweep verification report");
    add_common(sweep);
    sweep->add_option("--alpha", sw_alpha, "envelope/bound exponent");
    sweep->add_option("--gamma", sw_gamma, "error-bound exponent");
    sweep->add_option("--epsilons", sw_eps, "sweep values in (0,1)")->delimiter(',');
    sweep->add_option("--nx", sw_nx, "field grid x samples");
    sweep->add_option("--nt", sw_nt, "field grid time samples");
    sweep->add_option("--n-space", sw_space, "green sampler space points");
    sweep->add_option("--n-time", sw_time, "green sampler time points");

    std::vector<int> oc_grids{33, 65, 129, 257};
    double oc_cfl = 0.45;
    CLI::App* oracle_cmp =
        app.add_subcommand("oracle-compare", "finite-difference vs modal refinement table");
    add_common(oracle_cmp);
    oracle_cmp->add_option("--grids", oc_grids, "spatial grid sizes")->delimiter(',');
    oracle_cmp->add_option("--cfl", oc_cfl, "c dt / dx ratio used to pick nt");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        std::filesystem::create_directories(common.out_dir);
        if (simulate->parsed()) return run_simulate(common, sim_nx, sim_nt);
        if (green->parsed()) return run_green(common, g_nx, g_nxi, g_nt, g_tol, g_alpha, false);
        if (split->parsed()) return run_green(common, g_nx, g_nxi, g_nt, g_tol, g_alpha, true);
        if (verify_g->parsed())
            return run_verify_g(common, vg_alpha, vg_eps, vg_space, vg_time, vg_tmin);
        if (verify_r->parsed()) return run_verify_r(common, vr_alpha, vr_gamma, vr_nx, vr_nt);
        if (sweep->parsed())
            return run_sweep_cmd(common, sw_alpha, sw_gamma, sw_eps, sw_nx, sw_nt, sw_space,
                                 sw_time);
        if (oracle_cmp->parsed()) return run_oracle_compare(common, oc_grids, oc_cfl);
        std::fprintf(stderr, "no subcommand selected\n");
        return kExitValidation;
    } catch (const ValidationError& e) {
        std::fprintf(stderr, "validation error: %s\n", e.what());
        return kExitValidation;
    } catch (const NumericalError& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitValidation;
    }
}
