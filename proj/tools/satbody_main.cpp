// Command-line experiment runner: construct bodies, sweep witness checks
// over random quotient maps, verify the probabilistic lemmas empirically,
// and evaluate parameter certificates.
//
// Exit codes: 0 success / all checks pass, 1 bound violation or infeasible,
// 2 usage error, 3 numerical failure.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "satbody/experiment.hpp"
#include "satbody/io.hpp"
#include "satbody/lemmas.hpp"
#include "satbody/params.hpp"
#include "satbody/specfun.hpp"

namespace fs = std::filesystem;
using namespace satbody;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw PreconditionError("cannot open output file: " + path.string());
    out << text;
}

void write_json(const fs::path& path, const Json& j) {
    write_text(path, j.dump(2) + "\n");
}

// Provenance wrapper shared by the report-style outputs: the descriptor file
// keeps its pinned bare schema, everything else records how it was produced.
Json with_provenance(std::uint64_t seed, Json config, Json payload) {
    Json j;
    j["tool"] = kToolVersion;
    j["seed"] = seed;
    j["config"] = std::move(config);
    j["report"] = std::move(payload);
    return j;
}

Json read_json(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw PreconditionError("cannot open file: " + path.string());
    Json j;
    in >> j;
    return j;
}

double binom_sigma(double p, double trials) {
    const double q = std::clamp(p, 0.0, 1.0);
    return std::sqrt(q * (1.0 - q) / trials);
}

struct CommonOpts {
    std::uint64_t seed = 1;
    std::string out;
    Index trials = -1; // -1 = use the per-command default
    unsigned threads = 0;

    Index trials_or(Index fallback) const { return trials >= 0 ? trials : fallback; }
};

int cmd_construct(Index n, Index num_blocks, Index k, const std::string& kind, double lp_p,
                  double p_exponent, const CommonOpts& opts) {
    BodyDescriptor desc;
    desc.n = n;
    desc.num_blocks = num_blocks;
    desc.k = k;
    desc.kind = norm_kind_from_string(kind);
    desc.lp_p = lp_p;
    desc.p_exponent = p_exponent;
    desc.seed = opts.seed;
    desc.stream = 0;

    const QuotientBody body = build_body(desc);
    double smin = 0.0, smax = 0.0;
    for (Index j = 0; j < body.num_blocks(); ++j) {
        const Vector sv = singular_values(body.map().block(j));
        if (j == 0 || sv(sv.size() - 1) < smin) smin = sv(sv.size() - 1);
        if (j == 0 || sv(0) > smax) smax = sv(0);
    }
    const bool diameter_ok = check_global_diameter(body);

    std::cout << "body n=" << n << " N=" << num_blocks << " k=" << k << " kind=" << kind
              << " p=" << format_double(p_exponent) << " seed=" << opts.seed << "\n"
              << "block singular values in [" << format_double(smin) << ", "
              << format_double(smax) << "]\n"
              << "global diameter event (all block norms <= 2): "
              << (diameter_ok ? "holds" : "FAILS") << "\n";
    if (!opts.out.empty()) {
        write_json(opts.out, to_json(desc));
        std::cout << "descriptor written to " << opts.out << "\n";
    }
    return kExitOk;
}

int cmd_check(const std::string& body_path, Index m, const std::string& kappa_arg, bool exact,
              Index trial, const CommonOpts& opts) {
    const BodyDescriptor desc = body_descriptor_from_json(read_json(body_path));
    const QuotientBody base = build_body(desc);
    const Index rank = m > 0 ? m : base.n();
    if (rank < base.k() || rank > base.n())
        throw PreconditionError("check: m must lie in [k, n]");

    std::optional<QuotientMap> quotient;
    if (rank < base.n()) {
        RngStream rng = RngStream(opts.seed, 0).substream(0).substream(trial);
        quotient = QuotientMap{sample_grassmann(base.n(), rank, rng)};
    }
    const QuotientBody body(base.map(), base.w(), base.p_exponent(), quotient);

    double kappa = 0.0;
    if (kappa_arg == "default") {
        kappa = default_kappa(rank, base.n(), base.k());
    } else {
        try {
            std::size_t pos = 0;
            kappa = std::stod(kappa_arg, &pos);
            if (pos != kappa_arg.size()) throw std::invalid_argument(kappa_arg);
        } catch (const std::exception&) {
            throw PreconditionError("check: --kappa must be a number or 'default'");
        }
    }
    WitnessReport report = find_witness(body, kappa, exact,
                                        "m=" + std::to_string(rank) +
                                            "/trial=" + std::to_string(trial));
    Index brutal = 0;
    for (const auto& blk : report.per_block) brutal += blk.brutal_pass ? 1 : 0;
    std::cout << "kappa=" << format_double(kappa) << " blocks=" << body.num_blocks()
              << " brutal_pass=" << brutal << " witness=";
    if (report.witness)
        std::cout << *report.witness << "\n";
    else
        std::cout << "none\n";
    if (!opts.out.empty()) {
        const Json config{{"body", body_path}, {"m", rank},     {"kappa", kappa},
                          {"trial", trial},    {"exact", exact}};
        write_json(opts.out, with_provenance(opts.seed, config, to_json(report)));
    }

    if (!report.witness) return kExitViolation;
    if (exact) {
        const auto& blk = report.per_block[static_cast<std::size_t>(*report.witness)];
        if (!(blk.exact_lp_pass && *blk.exact_lp_pass)) return kExitViolation;
    }
    return kExitOk;
}

int cmd_sweep(const std::string& body_path, const std::string& config_path,
              std::vector<Index> m_values, std::vector<double> kappa_grid, bool exact,
              const CommonOpts& opts) {
    SweepConfig config;
    if (!config_path.empty()) {
        config = sweep_config_from_json(read_json(config_path));
    } else {
        if (body_path.empty())
            throw PreconditionError("sweep: either --config or --body is required");
        config.body = body_descriptor_from_json(read_json(body_path));
        config.m_values = std::move(m_values);
        config.kappa_grid = std::move(kappa_grid);
        config.trials = opts.trials_or(100);
        config.run_exact = exact;
        config.seed = opts.seed;
    }
    config.threads = opts.threads;
    if (config.m_values.empty()) throw PreconditionError("sweep: no m values given");

    const SweepResult result = run_sweep(config);
    for (const auto& row : result.summary)
        std::cout << "m=" << row.m << " kappa=" << format_double(row.kappa)
                  << " witness_freq=" << format_double(row.witness_freq) << " ("
                  << row.witness_count << "/" << row.trials << ")\n";

    if (!opts.out.empty()) {
        fs::create_directories(opts.out);
        std::ofstream csv(fs::path(opts.out) / "sweep.csv", std::ios::binary);
        write_sweep_csv(result, csv);
        write_json(fs::path(opts.out) / "summary.json", sweep_summary_json(result));
        std::cout << "results written to " << opts.out << "\n";
    }
    return kExitOk;
}

int cmd_params(std::uint64_t n, std::uint64_t m0, std::uint64_t big_n, std::uint64_t k,
               double q, bool unproven_eta, const ParamConstants& constants,
               const CommonOpts& opts) {
    ParamCertificate cert;
    if (q > 0.0) {
        const std::uint64_t nn = big_n > 0 ? big_n : default_block_count_q(n, q);
        cert = certify_params_q(n, m0, nn, k, q, constants, unproven_eta);
    } else {
        if (big_n == 0) throw PreconditionError("params: --N is required without --q");
        cert = certify_params(n, m0, big_n, k, constants);
    }
    std::cout << certificate_table(cert);
    if (!opts.out.empty())
        write_json(opts.out, with_provenance(opts.seed, Json::object(), to_json(cert)));
    return cert.feasible ? kExitOk : kExitViolation;
}

int verify_gamma(const CommonOpts& opts) {
    const double g2 = gamma_m(2);
    const double e_inv = std::exp(-1.0);
    bool ok = std::fabs(g2 - e_inv) <= 1e-12;
    double prev = gamma_m(1);
    for (Index m = 2; m <= 10000; ++m) {
        const double g = gamma_m(m);
        if (g <= prev) {
            ok = false;
            std::cout << "monotonicity fails at m=" << m << "\n";
            break;
        }
        prev = g;
    }
    const double g_large = gamma_m(1000000);
    ok = ok && std::fabs(g_large - 0.5) <= 1e-3;
    std::cout << "gamma_2 = " << format_double(g2) << " (e^-1 = " << format_double(e_inv)
              << ")\n"
              << "gamma_1e6 = " << format_double(g_large) << "\n"
              << (ok ? "all gamma checks pass\n" : "gamma checks FAIL\n");
    if (!opts.out.empty()) {
        Json j{{"gamma_2", g2}, {"gamma_1e6", g_large}, {"pass", ok}};
        fs::create_directories(opts.out);
        write_json(fs::path(opts.out) / "gamma.json",
                   with_provenance(opts.seed, Json{{"which", "gamma"}}, j));
    }
    return ok ? kExitOk : kExitViolation;
}

ZeroOneMatrix random_valid_matrix(Index n, RngStream& rng) {
    std::vector<std::pair<Index, Index>> ones;
    for (Index j = 0; j < n; ++j) {
        // each column: one 1 with probability 1/2, placed off the diagonal
        if (rng.next_uniform() < 0.5 && n > 1) {
            Index i = static_cast<Index>(rng.next_u64() % static_cast<std::uint64_t>(n - 1));
            if (i >= j) ++i;
            ones.emplace_back(i, j);
        }
    }
    return ZeroOneMatrix::from_ones(n, ones);
}

int verify_turan(const CommonOpts& opts) {
    const Index count = opts.trials_or(10000);
    RngStream rng(opts.seed, 0);
    Index violations = 0;
    for (Index c = 0; c < count; ++c) {
        const Index n = 1 + static_cast<Index>(rng.next_u64() % 64);
        const ZeroOneMatrix mat = random_valid_matrix(n, rng);
        try {
            const auto sel = turan_select(mat);
            if (n <= 12) {
                const auto brute = turan_brute(mat);
                if (brute.size() < sel.size()) ++violations;
            }
        } catch (const Error&) {
            ++violations;
        }
    }
    std::cout << "turan fuzz: " << count << " matrices, " << violations << " violations\n";
    if (!opts.out.empty()) {
        fs::create_directories(opts.out);
        write_json(fs::path(opts.out) / "turan.json",
                   with_provenance(opts.seed, Json{{"which", "turan"}, {"count", count}},
                                   Json{{"count", count}, {"violations", violations}}));
    }
    return violations == 0 ? kExitOk : kExitViolation;
}

int verify_svtail(Index m, Index k, double sigma, std::vector<double> t_grid,
                  const CommonOpts& opts) {
    if (sigma <= 0.0) sigma = 1.0 / std::sqrt(static_cast<double>(m));
    if (t_grid.empty())
        for (double f : {0.1, 0.2, 0.4})
            t_grid.push_back(f * sigma * std::sqrt(static_cast<double>(m)));
    const Index trials = opts.trials_or(10000);
    const auto res = sv_tail_experiment(m, k, sigma, t_grid, trials,
                                        RngStream(opts.seed, 0), opts.threads);
    bool ok = true;
    for (std::size_t i = 0; i < res.t_grid.size(); ++i) {
        const double slack = 3.0 * binom_sigma(res.theoretical[i], trials);
        const bool pass_hi = res.empirical_upper[i] <= res.theoretical[i] + slack;
        const bool pass_lo = res.empirical_lower[i] <= res.theoretical[i] + slack;
        ok = ok && pass_hi && pass_lo;
        std::cout << "t=" << format_double(res.t_grid[i])
                  << " upper=" << format_double(res.empirical_upper[i])
                  << " lower=" << format_double(res.empirical_lower[i])
                  << " bound=" << format_double(res.theoretical[i])
                  << (pass_hi && pass_lo ? " pass" : " FAIL") << "\n";
    }
    if (!opts.out.empty()) {
        fs::create_directories(opts.out);
        std::ofstream out(fs::path(opts.out) / "svtail.csv", std::ios::binary);
        CsvWriter csv(out,
                      Json{{"m", m}, {"k", k}, {"sigma", sigma}, {"trials", trials}},
                      opts.seed);
        csv.header({"t", "empirical_upper", "empirical_lower", "theoretical"});
        for (std::size_t i = 0; i < res.t_grid.size(); ++i)
            csv.row({format_double(res.t_grid[i]), format_double(res.empirical_upper[i]),
                     format_double(res.empirical_lower[i]),
                     format_double(res.theoretical[i])});
    }
    return ok ? kExitOk : kExitViolation;
}

int verify_shrinking(const CommonOpts& opts) {
    const Index trials = opts.trials_or(1000);
    bool ok = true;
    Json rows = Json::array();
    const RngStream base(opts.seed, 0);
    int instance = 0;
    for (auto [m, d] : {std::pair<Index, Index>{60, 6}, {100, 10}}) {
        Matrix pts(m, 3);
        pts.setZero();
        pts(0, 0) = 1.0;
        pts(1, 1) = -0.8;
        pts(2, 2) = 0.5;
        const ShrinkSet sets[2] = {ShrinkSet::ball_section(8), ShrinkSet::point_cloud(pts)};
        for (int which = 0; which < 2; ++which) {
            const ShrinkSet& set = sets[which];
            const auto res = shrinking_experiment(set, m, d, 1.0, 0.2, trials,
                                                  base.substream(instance++), opts.threads);
            const double slack = 3.0 * binom_sigma(res.theoretical_fail, trials);
            const bool pass = res.empirical_fail <= res.theoretical_fail + slack;
            ok = ok && pass;
            std::cout << res.set_descriptor << " m=" << m << " d=" << d
                      << " fail=" << format_double(res.empirical_fail)
                      << " bound=" << format_double(res.theoretical_fail)
                      << (pass ? " pass" : " FAIL") << "\n";
            rows.push_back(Json{{"set", res.set_descriptor},
                                {"m", m},
                                {"d", d},
                                {"empirical_fail", res.empirical_fail},
                                {"theoretical_fail", res.theoretical_fail},
                                {"mstar_used", res.mstar_used},
                                {"pass", pass}});
        }
    }
    if (!opts.out.empty()) {
        fs::create_directories(opts.out);
        write_json(fs::path(opts.out) / "shrinking.json",
                   with_provenance(opts.seed,
                                   Json{{"which", "shrinking"}, {"trials", trials}}, rows));
        std::ofstream out(fs::path(opts.out) / "shrinking.csv", std::ios::binary);
        CsvWriter csv(out, Json{{"trials", trials}}, opts.seed);
        csv.header({"set", "m", "d", "empirical_fail", "theoretical_fail", "mstar_used"});
        for (const auto& r : rows)
            csv.row({r.at("set").get<std::string>(), std::to_string(r.at("m").get<Index>()),
                     std::to_string(r.at("d").get<Index>()),
                     format_double(r.at("empirical_fail").get<double>()),
                     format_double(r.at("theoretical_fail").get<double>()),
                     format_double(r.at("mstar_used").get<double>())});
    }
    return ok ? kExitOk : kExitViolation;
}

int verify_meanwidth(const CommonOpts& opts) {
    const Index trials = opts.trials_or(100000);
    RngStream rng(opts.seed, 0);
    const auto [ball, ball_se] =
        mean_width_mc([](const Vector&) { return 1.0; }, 50, trials, rng);
    const Index m = 50, k = 8;
    const auto [section, section_se] = mean_width_mc(
        [k](const Vector& x) { return x.head(k).norm(); }, m, trials, rng);
    const double exact = coordinate_section_mean_width(m, k);
    const bool ok = ball == 1.0 && ball_se == 0.0 &&
                    std::fabs(section - exact) <= 3.0 * std::max(section_se, 1e-12);
    std::cout << "ball: " << format_double(ball) << " +- " << format_double(ball_se) << "\n"
              << "section(k=8,m=50): " << format_double(section) << " +- "
              << format_double(section_se) << " exact " << format_double(exact) << "\n"
              << (ok ? "mean-width checks pass\n" : "mean-width checks FAIL\n");
    if (!opts.out.empty()) {
        fs::create_directories(opts.out);
        write_json(fs::path(opts.out) / "meanwidth.json",
                   with_provenance(opts.seed,
                                   Json{{"which", "meanwidth"}, {"trials", trials}},
                                   Json{{"ball", ball},
                                        {"section", section},
                                        {"section_se", section_se},
                                        {"section_exact", exact},
                                        {"pass", ok}}));
    }
    return ok ? kExitOk : kExitViolation;
}

int verify_chevet(const CommonOpts& opts) {
    const Index trials = opts.trials_or(1000);
    const RngStream base(opts.seed, 0);
    bool ok = true;
    Json rows = Json::array();
    const Index m = 60, d = 6;
    const ShrinkSet section = ShrinkSet::ball_section(m); // the full ball
    Matrix pts(m, 3);
    pts.setZero();
    pts(0, 0) = 1.0;
    pts(1, 1) = -1.0;
    pts(2, 2) = 0.7;
    const ShrinkSet cloud = ShrinkSet::point_cloud(pts);
    int instance = 0;
    for (const ShrinkSet* set : {&section, &cloud}) {
        const auto res = chevet_gordon_experiment(*set, d, m, 1.0, trials,
                                                  base.substream(instance++), opts.threads);
        ok = ok && res.pass;
        std::cout << (set == &section ? "ball" : "cloud")
                  << " mean=" << format_double(res.empirical_mean)
                  << " bound=" << format_double(res.bound)
                  << (res.pass ? " pass" : " FAIL") << "\n";
        rows.push_back(Json{{"set", set == &section ? "ball" : "cloud"},
                            {"empirical_mean", res.empirical_mean},
                            {"bound", res.bound},
                            {"pass", res.pass}});
    }
    if (!opts.out.empty()) {
        fs::create_directories(opts.out);
        write_json(fs::path(opts.out) / "chevet.json",
                   with_provenance(opts.seed, Json{{"which", "chevet"}, {"trials", trials}},
                                   rows));
    }
    return ok ? kExitOk : kExitViolation;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"random quotient-body construction and saturation checks"};
    app.require_subcommand(1);
    app.fallthrough(); // common flags may follow the subcommand

    CommonOpts opts;
    app.add_option("--seed", opts.seed, "top-level RNG seed")->capture_default_str();
    app.add_option("--out", opts.out, "output file or directory");
    app.add_option("--trials", opts.trials, "trial count override");
    app.add_option("--threads", opts.threads,
                   "worker threads (0 = SATBODY_THREADS env or hardware)");

    // construct
    auto* construct = app.add_subcommand("construct", "sample a body and write its descriptor");
    Index c_n = 48, c_N = 240, c_k = 2;
    std::string c_kind = "linf";
    double c_lp = 3.0, c_p = 1.0;
    construct->add_option("--n", c_n, "ambient dimension")->required();
    construct->add_option("--N", c_N, "number of blocks")->required();
    construct->add_option("--k", c_k, "block dimension")->required();
    construct->add_option("--kind", c_kind, "target space kind: l1, linf, lp");
    construct->add_option("--lp-p", c_lp, "exponent for kind lp");
    construct->add_option("--p", c_p, "sum exponent of Z (1 = l1-sum)");

    // check
    auto* check = app.add_subcommand("check", "run the witness scan on one quotient");
    std::string ck_body;
    Index ck_m = 0, ck_trial = 0;
    std::string ck_kappa = "default";
    bool ck_exact = false;
    check->add_option("--body", ck_body, "body descriptor JSON")->required();
    check->add_option("--m", ck_m, "quotient rank (default: identity quotient)");
    check->add_option("--kappa", ck_kappa, "kappa value or 'default'");
    check->add_option("--trial", ck_trial, "trial index for the quotient stream");
    check->add_flag("--exact", ck_exact, "run the exact LP membership certificate");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "witness frequencies over random quotients");
    std::string sw_body, sw_config;
    std::vector<Index> sw_m;
    std::vector<double> sw_kappa;
    bool sw_exact = false;
    sweep->add_option("--body", sw_body, "body descriptor JSON");
    sweep->add_option("--config", sw_config, "full sweep config JSON");
    sweep->add_option("--m", sw_m, "quotient ranks")->delimiter(',');
    sweep->add_option("--kappa", sw_kappa, "kappa grid (default: the canonical kappa)")->delimiter(',');
    sweep->add_flag("--exact", sw_exact, "exact certificate on witnessed blocks");

    // params
    auto* params = app.add_subcommand("params", "evaluate a parameter certificate");
    std::uint64_t p_n = 0, p_m0 = 0, p_N = 0, p_k = 1;
    double p_q = 0.0;
    bool p_eta = false;
    ParamConstants constants;
    params->add_option("--n", p_n)->required();
    params->add_option("--m0", p_m0)->required();
    params->add_option("--N", p_N, "block count (q mode: default (n^1.5 log n)^p)");
    params->add_option("--k", p_k)->required();
    params->add_option("--q", p_q, "cotype exponent (> 2) for the lp-sum variant");
    params->add_option("--C0", constants.c0_width);
    params->add_option("--Cprime", constants.cprime);
    params->add_option("--C2", constants.c2_net);
    params->add_option("--c1", constants.c1);
    params->add_flag("--unproven-eta", p_eta, "also evaluate the unproven eta-exponent bound");

    // verify-lemma
    auto* verify = app.add_subcommand("verify-lemma", "empirical lemma validation suites");
    std::string v_which;
    Index v_m = 100, v_k = 25;
    double v_sigma = 0.0;
    std::vector<double> v_t;
    verify->add_option("--which", v_which, "turan | svtail | shrinking | gamma | meanwidth | chevet")
        ->required();
    verify->add_option("--m", v_m, "svtail rows");
    verify->add_option("--k", v_k, "svtail cols");
    verify->add_option("--sigma", v_sigma, "svtail entry stddev (default 1/sqrt(m))");
    verify->add_option("--t", v_t, "svtail t grid")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (construct->parsed())
            return cmd_construct(c_n, c_N, c_k, c_kind, c_lp, c_p, opts);
        if (check->parsed())
            return cmd_check(ck_body, ck_m, ck_kappa, ck_exact, ck_trial, opts);
        if (sweep->parsed())
            return cmd_sweep(sw_body, sw_config, sw_m, sw_kappa, sw_exact, opts);
        if (params->parsed())
            return cmd_params(p_n, p_m0, p_N, p_k, p_q, p_eta, constants, opts);
        if (verify->parsed()) {
            if (v_which == "gamma") return verify_gamma(opts);
            if (v_which == "turan") return verify_turan(opts);
            if (v_which == "svtail") return verify_svtail(v_m, v_k, v_sigma, v_t, opts);
            if (v_which == "shrinking") return verify_shrinking(opts);
            if (v_which == "meanwidth") return verify_meanwidth(opts);
            if (v_which == "chevet") return verify_chevet(opts);
            throw PreconditionError("unknown lemma: " + v_which);
        }
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitUsage;
}
