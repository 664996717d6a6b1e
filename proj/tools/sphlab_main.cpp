// Command-line front end: shell tables, Gauss sums, Farey arcs, symbol
// sweeps, maximal-operator probes, sparse-form experiments, weight
// characteristics, and the counterexample / improving suites.
//
// Verdict-bearing subcommands exit 0 when every verdict passes, 1 when one
// fails, and 2 on usage errors.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "sphlab/arith.hpp"
#include "sphlab/experiments.hpp"
#include "sphlab/grid.hpp"
#include "sphlab/grid_io.hpp"
#include "sphlab/lattice.hpp"
#include "sphlab/operators.hpp"
#include "sphlab/report.hpp"
#include "sphlab/sparse.hpp"
#include "sphlab/symbols.hpp"
#include "sphlab/weights.hpp"

using namespace sphlab;

namespace {

std::vector<std::int64_t> parse_lambda_list(const std::string& text) {
    std::vector<std::int64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stoll(item));
    }
    if (out.empty()) throw CLI::ValidationError("--Lambda", "empty list");
    return out;
}

void write_out(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
    } else {
        write_text_file(path, text);
    }
}

void emit_report(const ExperimentReport& rep, const std::string& out, const std::string& format,
                 const std::string& plot_prefix) {
    if (format == "json") {
        write_out(out, rep.json().dump(2) + "\n");
    } else {
        write_out(out, rep.csv());
    }
    if (!plot_prefix.empty()) {
        write_text_file(plot_prefix + "_measured.dat", plot_data(rep, false));
        write_text_file(plot_prefix + "_bound.dat", plot_data(rep, true));
    }
}

GridFunction make_input(int d, const std::string& kind, std::int64_t Lambda, std::int64_t side) {
    const std::vector<std::int64_t> ext(static_cast<std::size_t>(d), side);
    if (kind == "delta") return point_mass(d, Geometry::torus, ext);
    if (kind == "shell") {
        GridFunction f = GridFunction::zeros(d, Geometry::torus, ext);
        auto shell = enumerate_shell(d, Lambda * Lambda);
        std::vector<std::int64_t> y(static_cast<std::size_t>(d));
        for (std::int64_t i = 0; i < shell.count; ++i) {
            for (int j = 0; j < d; ++j) y[static_cast<std::size_t>(j)] = shell.point(i)[j];
            f.ref(y) = 1.0;
        }
        return f;
    }
    if (kind == "ball") {
        GridFunction f = GridFunction::zeros(d, Geometry::torus, ext);
        auto ball = enumerate_ball(d, static_cast<double>(Lambda));
        std::vector<std::int64_t> y(static_cast<std::size_t>(d));
        for (std::int64_t i = 0; i < ball.count; ++i) {
            for (int j = 0; j < d; ++j) y[static_cast<std::size_t>(j)] = ball.point(i)[j];
            f.ref(y) = 1.0;
        }
        return f;
    }
    if (kind.rfind("random:", 0) == 0)
        return random_signs(d, Geometry::torus, ext, std::stoull(kind.substr(7)));
    if (kind.rfind("file:", 0) == 0) return load_grid(kind.substr(5));
    throw CLI::ValidationError("--input", "unknown input kind " + kind);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"discrete spherical maximal averages laboratory"};
    app.require_subcommand(1);

    // ------------------------------------------------------------------ shells
    auto* shells = app.add_subcommand("shells", "shell counts (and points) up to nmax");
    int sh_d = 5;
    std::int64_t sh_nmax = 100;
    bool sh_enumerate = false;
    std::string sh_out;
    shells->add_option("--dim", sh_d, "dimension")->required();
    shells->add_option("--nmax", sh_nmax, "largest squared radius")->required();
    shells->add_flag("--enumerate", sh_enumerate, "cross-check counts by enumeration");
    shells->add_option("--out", sh_out, "output CSV path");

    // ------------------------------------------------------------------ gauss
    auto* gauss = app.add_subcommand("gauss", "normalized quadratic Gauss sum table");
    int ga_d = 1;
    std::int64_t ga_qmax = 12;
    std::string ga_out;
    gauss->add_option("--dim", ga_d, "dimension")->required();
    gauss->add_option("--qmax", ga_qmax, "largest modulus")->required();
    gauss->add_option("--out", ga_out, "output CSV path");

    // ------------------------------------------------------------------ farey
    auto* farey = app.add_subcommand("farey", "mediant dissection of the circle");
    std::int64_t fa_lambda = 8;
    std::string fa_out;
    farey->add_option("--lambda", fa_lambda, "dissection order")->required();
    farey->add_option("--out", fa_out, "output CSV path");

    // ------------------------------------------------------------------ symbol
    auto* symbol = app.add_subcommand("symbol", "multiplier symbols at random frequencies");
    int sy_d = 5;
    std::int64_t sy_n = 64, sy_Lambda = 8, sy_samples = 10, sy_seed = 1;
    std::string sy_kind = "exact", sy_out;
    symbol->add_option("--dim", sy_d)->required();
    symbol->add_option("--lambda2", sy_n, "squared radius")->required();
    symbol->add_option("--Lambda", sy_Lambda, "dyadic order");
    symbol->add_option("--kind", sy_kind, "exact|circle|main|residual");
    symbol->add_option("--samples", sy_samples, "number of random frequencies");
    symbol->add_option("--seed", sy_seed);
    symbol->add_option("--out", sy_out, "output CSV path");

    // ------------------------------------------------------------------ maximal
    auto* maximal = app.add_subcommand("maximal", "dyadic maximal operator probe");
    int mx_d = 5;
    std::int64_t mx_Lambda = 2, mx_side = 0;
    double mx_p = 2.0, mx_rprime = 2.0;
    std::string mx_input = "delta", mx_out;
    maximal->add_option("--dim", mx_d)->required();
    maximal->add_option("--Lambda", mx_Lambda)->required();
    maximal->add_option("--input", mx_input, "delta|shell|ball|random:SEED|file:PATH");
    maximal->add_option("--p", mx_p);
    maximal->add_option("--rprime", mx_rprime);
    maximal->add_option("--side", mx_side, "torus side (default 4*Lambda+3)");
    maximal->add_option("--out", mx_out, "output CSV path");

    // ------------------------------------------------------------------ sparse
    auto* sparse = app.add_subcommand("sparse", "stopping collections and sparse constants");
    int sp_d = 5;
    double sp_p = 1.0 / 0.55, sp_r = 1.0 / 0.55;
    std::int64_t sp_Lmax = 2;
    std::string sp_corpus = "mixed:4:8:1", sp_out;
    sparse->add_option("--dim", sp_d)->required();
    sparse->add_option("--p", sp_p);
    sparse->add_option("--r", sp_r);
    sparse->add_option("--corpus", sp_corpus, "mixed:COUNT:SIDE:SEED | random:COUNT:SIDE:SEED");
    sparse->add_option("--Lambda-max", sp_Lmax);
    sparse->add_option("--out", sp_out, "output JSON path");

    // ------------------------------------------------------------------ weights
    auto* weights = app.add_subcommand("weights", "weighted l2 stability for power weights");
    int we_d = 5;
    double we_a = 0.0, we_delta = 0.5;
    std::string we_Lambdas = "2,4,8", we_out;
    weights->add_option("--dim", we_d)->required();
    weights->add_option("--a", we_a, "power-weight exponent")->required();
    weights->add_option("--delta", we_delta);
    weights->add_option("--Lambda", we_Lambdas, "comma list of truncations");
    weights->add_option("--out", we_out, "output CSV path");

    // ------------------------------------------------------------------ counterexample
    auto* counter = app.add_subcommand("counterexample", "shell-arithmetic counterexample suites");
    std::string ce_which;
    int ce_d = 5;
    double ce_p = 1.0 / 0.6, ce_r = 1.0 / 0.6;
    std::string ce_Lambdas = "8,16,32,64,128", ce_out, ce_format = "csv", ce_plot;
    counter->add_option("suite", ce_which, "delta|shell|sparse")->required();
    counter->add_option("--dim", ce_d);
    counter->add_option("--p", ce_p);
    counter->add_option("--r", ce_r);
    counter->add_option("--Lambda", ce_Lambdas);
    counter->add_option("--out", ce_out);
    counter->add_option("--format", ce_format, "csv|json");
    counter->add_option("--plotdata", ce_plot, "prefix for two-column plot files");

    // ------------------------------------------------------------------ improving
    auto* improving = app.add_subcommand("improving", "improving-exponent sweep");
    int im_d = 5;
    double im_p = 1.0 / 0.6, im_r = 1.0 / 0.6;
    std::string im_Lambdas = "8,16,32,64,128", im_out, im_format = "csv", im_plot;
    improving->add_option("--dim", im_d);
    improving->add_option("--p", im_p);
    improving->add_option("--r", im_r);
    improving->add_option("--Lambda", im_Lambdas);
    improving->add_option("--out", im_out);
    improving->add_option("--format", im_format);
    improving->add_option("--plotdata", im_plot);

    // ------------------------------------------------------------------ regions
    auto* regions = app.add_subcommand("regions", "exponent region vertices and membership");
    int rg_d = 5;
    std::string rg_name = "R", rg_out, rg_format = "csv";
    double rg_p = 0.0, rg_r = 0.0;
    bool rg_query = false;
    regions->add_option("--dim", rg_d);
    regions->add_option("--name", rg_name, "R|S|T");
    regions->add_option("--p", rg_p, "1/p of a query point");
    regions->add_option("--r", rg_r, "1/r of a query point");
    regions->add_flag("--query", rg_query, "test the (--p, --r) point");
    regions->add_option("--out", rg_out);
    regions->add_option("--format", rg_format);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    try {
        if (*shells) {
            auto table = shell_count_table(sh_d, sh_nmax);
            std::ostringstream os;
            os.precision(12);
            os << "n,lambda,count\n";
            for (std::int64_t n = 0; n <= sh_nmax; ++n) {
                if (sh_enumerate) {
                    auto shell = enumerate_shell(sh_d, n);
                    if (shell.count != table[static_cast<std::size_t>(n)])
                        throw std::runtime_error("count/enumeration mismatch at n=" +
                                                 std::to_string(n));
                }
                os << n << ',' << std::sqrt(static_cast<double>(n)) << ','
                   << table[static_cast<std::size_t>(n)] << '\n';
            }
            write_out(sh_out, os.str());
            return 0;
        }
        if (*gauss) {
            double rows = 0;
            for (std::int64_t q = 1; q <= ga_qmax; ++q)
                rows += static_cast<double>(units_mod(q).size()) *
                        std::pow(static_cast<double>(q), ga_d);
            if (rows > 5e6) throw size_limit_error("gauss: table would exceed 5e6 rows");
            std::ostringstream os;
            os.precision(15);
            os << "q,a,l_index,re,im,scaled_magnitude\n";
            for (std::int64_t q = 1; q <= ga_qmax; ++q) {
                for (std::int64_t a : units_mod(q)) {
                    std::vector<std::int64_t> l(static_cast<std::size_t>(ga_d), 0);
                    std::vector<std::int64_t> ext(static_cast<std::size_t>(ga_d), q);
                    std::int64_t index = 0;
                    do {
                        const cplx v = gauss_sum(ga_d, a, q, l);
                        os << q << ',' << a << ',' << index++ << ',' << v.real() << ','
                           << v.imag() << ','
                           << std::abs(v) * std::pow(static_cast<double>(q), 0.5 * ga_d) << '\n';
                    } while (next_index(l, ext));
                }
            }
            write_out(ga_out, os.str());
            return 0;
        }
        if (*farey) {
            std::ostringstream os;
            os.precision(15);
            os << "a,q,alpha,beta,tau_lo,tau_hi,length\n";
            for (const auto& arc : farey_dissection(fa_lambda))
                os << arc.a << ',' << arc.q << ',' << arc.alpha << ',' << arc.beta << ','
                   << arc.tau_lo() << ',' << arc.tau_hi() << ',' << arc.length() << '\n';
            write_out(fa_out, os.str());
            return 0;
        }
        if (*symbol) {
            std::mt19937_64 rng(static_cast<std::uint64_t>(sy_seed));
            std::uniform_real_distribution<double> U(-0.5, 0.5);
            std::ostringstream os;
            os.precision(15);
            os << "sample";
            for (int i = 0; i < sy_d; ++i) os << ",xi" << i;
            os << ",re,im\n";
            const double ratio =
                shell_ratio(sy_d, sy_n, shell_count(sy_d, sy_n));
            for (std::int64_t s = 0; s < sy_samples; ++s) {
                SymbolEvaluation ev;
                ev.kind = sy_kind;
                ev.n = sy_n;
                ev.Lambda = sy_Lambda;
                ev.xi.resize(static_cast<std::size_t>(sy_d));
                for (auto& t : ev.xi) t = U(rng);
                if (sy_kind == "exact") ev.value = eval_shell_symbol(sy_d, sy_n, ev.xi);
                else if (sy_kind == "circle") ev.value = eval_shell_symbol_circle(sy_d, sy_n, sy_Lambda, ev.xi).normalized;
                else if (sy_kind == "main") ev.value = eval_main_symbol(sy_d, sy_n, sy_Lambda, ev.xi).normalized;
                else if (sy_kind == "residual") ev.value = eval_residual_symbol(sy_d, sy_n, sy_Lambda, ev.xi);
                else throw CLI::ValidationError("--kind", "unknown kind " + sy_kind);
                os << s;
                for (double t : ev.xi) os << ',' << t;
                os << ',' << ev.value.real() << ',' << ev.value.imag() << '\n';
            }
            os << "# shell_count_over_lambda_power=" << ratio << '\n';
            write_out(sy_out, os.str());
            return 0;
        }
        if (*maximal) {
            const std::int64_t side = mx_side > 0 ? mx_side : 4 * mx_Lambda + 3;
            GridFunction f = make_input(mx_d, mx_input, mx_Lambda, side);
            GridFunction out = maximal_dyadic(f, mx_Lambda);
            std::ostringstream os;
            os.precision(12);
            os << "input,p,rprime,norm_in,norm_out,ratio\n";
            const double ni = lp_norm(f, mx_p), no = lp_norm(out, mx_rprime);
            os << mx_input << ',' << mx_p << ',' << mx_rprime << ',' << ni << ',' << no << ','
               << (ni > 0 ? no / ni : 0.0) << '\n';
            write_out(mx_out, os.str());
            return 0;
        }
        if (*sparse) {
            // corpus spec: kind:count:side:seed
            std::stringstream ss(sp_corpus);
            std::string kind, scount, sside, sseed;
            std::getline(ss, kind, ':');
            std::getline(ss, scount, ':');
            std::getline(ss, sside, ':');
            std::getline(ss, sseed, ':');
            const int count = scount.empty() ? 4 : std::stoi(scount);
            const std::int64_t side = sside.empty() ? 8 : std::stoll(sside);
            std::uint64_t seed = sseed.empty() ? 1 : std::stoull(sseed);
            std::mt19937_64 rng(seed);
            std::uniform_real_distribution<double> U(0.0, 1.0);
            std::vector<std::pair<GridFunction, GridFunction>> corpus;
            const std::vector<std::int64_t> ext(static_cast<std::size_t>(sp_d), side);
            for (int i = 0; i < count; ++i) {
                GridFunction f = GridFunction::zeros(sp_d, Geometry::box, ext);
                GridFunction g = GridFunction::zeros(sp_d, Geometry::box, ext);
                if (kind == "mixed" && i % 2 == 0) {
                    f.values[0] = 1.0;  // point mass instance
                    for (auto& v : g.values) v = 1.0;
                } else {
                    for (auto& v : f.values) v = U(rng) < 0.3 ? 1.0 : 0.0;
                    for (auto& v : g.values) v = U(rng);
                }
                if (lp_norm(f, 1.0) == 0) f.values[0] = 1.0;
                corpus.emplace_back(std::move(f), std::move(g));
            }
            FormParams params{sp_p, sp_r};
            OperatorTag tag{OperatorTag::Kind::maximal_full, sp_Lmax};
            auto res = empirical_sparse_constant(tag, params, corpus);
            nlohmann::json j;
            j["p"] = sp_p;
            j["r"] = sp_r;
            j["duality_broken"] = params.breaks_duality();
            j["constant"] = res.constant;
            j["per_instance"] = res.per_instance;
            // re-derive the collection of the winning instance for the record
            const auto& [bf, bg] = corpus[res.argmax];
            auto bbf = support_bbox(bf);
            auto bbg = support_bbox(bg);
            for (int c = 0; c < sp_d; ++c) {
                bbf.first[static_cast<std::size_t>(c)] = std::min(bbf.first[static_cast<std::size_t>(c)], bbg.first[static_cast<std::size_t>(c)]);
                bbf.second[static_cast<std::size_t>(c)] = std::max(bbf.second[static_cast<std::size_t>(c)], bbg.second[static_cast<std::size_t>(c)]);
            }
            auto stopping = build_stopping_collection(
                bf, bg, params, root_cube_covering(sp_d, bbf.first, bbf.second), {});
            auto verdict = verify_sparsity(stopping.collection, 0.5);
            j["winning_instance"] = static_cast<int>(res.argmax);
            j["sparsity_pass"] = verdict.pass;
            j["cubes"] = nlohmann::json::array();
            for (const auto& q : stopping.collection.cubes) {
                nlohmann::json cj;
                cj["side"] = q.side;
                cj["generation"] = q.gen;
                cj["shift"] = q.shift_id;
                cj["corner"] = nlohmann::json::array();
                for (int c = 0; c < q.d; ++c) cj["corner"].push_back(q.lo(c));
                j["cubes"].push_back(cj);
            }
            write_out(sp_out, j.dump(2) + "\n");
            return 0;
        }
        if (*weights) {
            auto rep = weighted_bound_experiment(we_d, we_a, we_delta, parse_lambda_list(we_Lambdas));
            write_out(we_out, rep.csv());
            return rep.pass ? 0 : 1;
        }
        if (*counter) {
            const auto lambdas = parse_lambda_list(ce_Lambdas);
            ExperimentReport rep;
            if (ce_which == "delta") rep = counterexample_delta(ce_d, ce_p, ce_r, lambdas);
            else if (ce_which == "shell") rep = counterexample_shell(ce_d, ce_p, ce_r, lambdas);
            else if (ce_which == "sparse") rep = counterexample_sparse(ce_d, ce_p, ce_r, lambdas);
            else throw CLI::ValidationError("suite", "unknown suite " + ce_which);
            emit_report(rep, ce_out, ce_format, ce_plot);
            return rep.pass ? 0 : 1;
        }
        if (*improving) {
            auto rep = improving_sweep(im_d, im_p, im_r, parse_lambda_list(im_Lambdas));
            emit_report(rep, im_out, im_format, im_plot);
            return rep.pass ? 0 : 1;
        }
        if (*regions) {
            Region reg = make_region(rg_name, rg_d);
            if (rg_format == "json") {
                nlohmann::json j;
                j["name"] = reg.name;
                j["d"] = reg.d;
                j["vertices"] = nlohmann::json::array();
                for (const auto& v : reg.vertices) j["vertices"].push_back({v.ip, v.ir});
                if (rg_query) {
                    j["contains"] = region_contains(reg, {rg_p, rg_r});
                    j["necessary_condition"] = necessary_condition({rg_p, rg_r}, rg_d);
                }
                write_out(rg_out, j.dump(2) + "\n");
            } else {
                std::ostringstream os;
                os.precision(15);
                os << "inv_p,inv_r\n";
                for (const auto& v : reg.vertices) os << v.ip << ',' << v.ir << '\n';
                if (rg_query)
                    os << "# contains=" << region_contains(reg, {rg_p, rg_r})
                       << " necessary=" << necessary_condition({rg_p, rg_r}, rg_d) << '\n';
                write_out(rg_out, os.str());
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
