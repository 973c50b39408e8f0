#include "kl/bn.hpp"
#include "kl/enumeration.hpp"
#include "kl/extremal.hpp"
#include "kl/matrix.hpp"
#include "kl/sampling.hpp"
#include "kl/stabilizer.hpp"
#include "kl/sync.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

using ordered_json = nlohmann::ordered_json;

namespace {

std::string str(const kl::bigint& v) {
    std::ostringstream s;
    s << v;
    return s.str();
}

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream s;
        s << std::cin.rdbuf();
        return s.str();
    }
    std::ifstream in(path);
    if (!in) kl::fail(kl::errc::parse_error, "cannot open " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::vector<std::vector<kl::entry_t>> matrix_rows(const kl::IntersectionMatrix& m) {
    std::vector<std::vector<kl::entry_t>> rows;
    rows.reserve(static_cast<std::size_t>(m.k()));
    for (int i = 0; i < m.k(); ++i) {
        std::vector<kl::entry_t> row;
        row.reserve(static_cast<std::size_t>(m.k()));
        for (int j = 0; j < m.k(); ++j) row.push_back(m.at(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

void print_csv_row(std::ostream& out, const kl::IntersectionMatrix& m) {
    bool first = true;
    for (int i = 0; i < m.k(); ++i)
        for (int j = 0; j < m.k(); ++j) {
            if (!first) out << ',';
            out << m.at(i, j);
            first = false;
        }
    out << '\n';
}

/* Shared by chi, mu, count: one named big value per (k, l). */
void emit_value(const std::string& name, int k, kl::entry_t l, const kl::bigint& value,
                const std::string& output) {
    if (output == "json") {
        ordered_json j{{"k", k}, {"l", l}, {name, str(value)}};
        std::cout << j.dump(2) << '\n';
    } else if (output == "csv") {
        std::cout << "k,l," << name << '\n' << k << ',' << l << ',' << value << '\n';
    } else {
        std::cout << value << '\n';
    }
}

struct ValueOpts {
    int k = 0;
    kl::entry_t l = 0;
    std::string output = "text";
};

struct StabOpts {
    std::string matrix_path;
    bool generators = false;
    int generator_cap = 64;
    std::string output = "json";
};

struct EnumOpts {
    int k = 0;
    kl::entry_t l = 0;
    bool stats = false;
    std::int64_t budget = 100'000'000;
    std::string output = "text";
};

struct SampleOpts {
    int k = 0;
    kl::entry_t l = 0;
    std::int64_t n = 1;
    std::uint64_t seed = kl::default_seed;
    std::string stat; /* empty = emit the samples */
    double fexp = 0.5;
    double eps = 0.1;
    int workers = 1;
    std::string output = "text";
};

struct BnOpts {
    int nmax = 0;
    bool verify = false;
    std::string output = "text";
};

struct SyncOpts {
    int k = 0;
    int l = 0;
    std::string emit_path;
    std::string output = "text";
};

struct ConstructOpts {
    int k = 0;
    kl::entry_t l = 0;
    std::uint64_t seed = kl::default_seed;
    std::string output = "text";
};

void add_output_flag(CLI::App* cmd, std::string& target) {
    cmd->add_option("--output", target, "Report format")
        ->check(CLI::IsMember({"text", "json", "csv"}))
        ->capture_default_str();
}

void run_stab(const StabOpts& o) {
    kl::IntersectionMatrix m = kl::parse_matrix_auto(read_input(o.matrix_path));
    kl::StabilizerOptions sopts;
    sopts.want_generators = o.generators;
    sopts.generator_cap = o.generator_cap;
    kl::StabilizerReport rep = kl::stabilizer(m, sopts);

    if (o.output == "text") {
        std::cout << "order_kn " << rep.order_kn << '\n'
                  << "partwise_fixed " << (rep.partwise_fixed ? "true" : "false") << '\n'
                  << "aut_order " << rep.aut_order << '\n';
        for (const kl::PermPair& g : rep.generators) {
            std::cout << "element rho";
            for (int v : g.row_images) std::cout << ' ' << v + 1;
            std::cout << " gamma";
            for (int v : g.col_images) std::cout << ' ' << v + 1;
            std::cout << '\n';
        }
        return;
    }
    ordered_json j{{"k", m.k()},
                   {"l", m.l()},
                   {"order_kn", str(rep.order_kn)},
                   {"partwise_fixed", rep.partwise_fixed},
                   {"aut_order", str(rep.aut_order)}};
    if (o.generators) {
        ordered_json gens = ordered_json::array();
        for (const kl::PermPair& g : rep.generators) {
            ordered_json jg;
            ordered_json rows = ordered_json::array(), cols = ordered_json::array();
            for (int v : g.row_images) rows.push_back(v + 1);
            for (int v : g.col_images) cols.push_back(v + 1);
            jg["row_images"] = rows;
            jg["col_images"] = cols;
            gens.push_back(jg);
        }
        j["elements"] = gens;
    }
    std::cout << j.dump(2) << '\n';
}

void run_enumerate(const EnumOpts& o) {
    kl::EnumerationOptions eopts;
    eopts.budget = o.budget;
    if (o.stats) {
        eopts.with_stats = true;
        kl::EnumerationStats s = kl::enumerate_matrices(o.k, o.l, eopts);
        if (o.output == "json") {
            ordered_json j{{"k", o.k},
                           {"l", o.l},
                           {"count", str(s.count)},
                           {"min_aut", str(s.min_aut)},
                           {"max_aut", str(s.max_aut)},
                           {"trivial_kn_count", str(s.trivial_kn_count)},
                           {"sum_factorial_products", str(s.sum_factorial_products)}};
            if (s.min_witness) j["min_witness"] = matrix_rows(*s.min_witness);
            if (s.max_witness) j["max_witness"] = matrix_rows(*s.max_witness);
            std::cout << j.dump(2) << '\n';
        } else {
            std::cout << "count " << s.count << '\n'
                      << "min_aut " << s.min_aut << '\n'
                      << "max_aut " << s.max_aut << '\n'
                      << "trivial_kn_count " << s.trivial_kn_count << '\n'
                      << "sum_factorial_products " << s.sum_factorial_products << '\n';
        }
        return;
    }

    if (o.output == "json") {
        ordered_json arr = ordered_json::array();
        kl::enumerate_matrices(o.k, o.l, eopts,
                               [&](const kl::IntersectionMatrix& m) { arr.push_back(matrix_rows(m)); });
        ordered_json j{{"k", o.k}, {"l", o.l}, {"matrices", arr}};
        std::cout << j.dump(2) << '\n';
    } else if (o.output == "csv") {
        kl::enumerate_matrices(o.k, o.l, eopts,
                               [&](const kl::IntersectionMatrix& m) { print_csv_row(std::cout, m); });
    } else {
        kl::enumerate_matrices(o.k, o.l, eopts, [&](const kl::IntersectionMatrix& m) {
            std::cout << kl::format_matrix_text(m) << '\n';
        });
    }
}

void run_sample(const SampleOpts& o) {
    if (o.stat.empty()) {
        ordered_json arr = ordered_json::array();
        for (std::int64_t i = 0; i < o.n; ++i) {
            kl::rng64 rng(kl::mix_seed(o.seed, static_cast<std::uint64_t>(i)));
            kl::IntersectionMatrix m = kl::sample_uniform(o.k, o.l, rng);
            if (o.output == "json")
                arr.push_back(matrix_rows(m));
            else if (o.output == "csv")
                print_csv_row(std::cout, m);
            else
                std::cout << kl::format_matrix_text(m) << '\n';
        }
        if (o.output == "json") {
            ordered_json j{{"k", o.k}, {"l", o.l}, {"n", o.n}, {"seed", o.seed}, {"samples", arr}};
            std::cout << j.dump(2) << '\n';
        }
        return;
    }

    if (o.stat == "rate") {
        kl::SamplerReport r = kl::acceptance_rate(o.k, o.l, o.n, o.seed);
        if (o.output == "json") {
            ordered_json j{{"k", o.k},          {"l", o.l},
                           {"proposals", r.proposals}, {"accepted", r.accepted},
                           {"rate", r.rate},     {"ci_low", r.ci_low},
                           {"ci_high", r.ci_high}};
            std::cout << j.dump(2) << '\n';
        } else {
            std::cout << "proposals " << r.proposals << '\n'
                      << "accepted " << r.accepted << '\n'
                      << "rate " << r.rate << '\n'
                      << "ci_low " << r.ci_low << '\n'
                      << "ci_high " << r.ci_high << '\n';
        }
        return;
    }
    if (o.stat == "dev") {
        kl::DeviationReport r =
            kl::deviation_statistic(o.k, o.l, o.n, o.fexp, o.seed, o.workers);
        if (o.output == "json") {
            ordered_json j{{"k", o.k},         {"l", o.l},
                           {"samples", r.samples},  {"near_mean", r.near_mean},
                           {"fraction", r.fraction}, {"threshold", r.threshold}};
            std::cout << j.dump(2) << '\n';
        } else {
            std::cout << "samples " << r.samples << '\n'
                      << "near_mean " << r.near_mean << '\n'
                      << "fraction " << r.fraction << '\n'
                      << "threshold " << r.threshold << '\n';
        }
        return;
    }
    /* stat == "sym" (flag values are validated by CLI11) */
    kl::SymmetryReport r = kl::symmetry_statistics(o.k, o.l, o.n, o.eps, o.seed, o.workers);
    if (o.output == "json") {
        ordered_json j{{"k", o.k},
                       {"l", o.l},
                       {"samples", r.samples},
                       {"trivial_kn", r.trivial_kn},
                       {"trivial_fraction", r.trivial_fraction},
                       {"order_two", r.order_two},
                       {"mean_log_aut", r.mean_log_aut},
                       {"epsilon", r.epsilon},
                       {"bound_violations", r.bound_violations},
                       {"violation_fraction", r.violation_fraction}};
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << "samples " << r.samples << '\n'
                  << "trivial_kn " << r.trivial_kn << '\n'
                  << "trivial_fraction " << r.trivial_fraction << '\n'
                  << "order_two " << r.order_two << '\n'
                  << "mean_log_aut " << r.mean_log_aut << '\n'
                  << "epsilon " << r.epsilon << '\n'
                  << "bound_violations " << r.bound_violations << '\n'
                  << "violation_fraction " << r.violation_fraction << '\n';
    }
}

void run_bn(const BnOpts& o) {
    kl::BnTable table = kl::bn_recurrence(o.nmax);
    if (o.output == "json") {
        ordered_json vals = ordered_json::array();
        for (const kl::bigint& v : table.values) vals.push_back(str(v));
        ordered_json j{{"nmax", o.nmax}, {"values", vals}};
        if (o.verify) {
            auto comps = kl::verify_comps_bound(o.nmax);
            j["comps_bound_violations"] = comps;
            if (o.nmax >= 17) {
                ordered_json pv = ordered_json::array();
                for (auto [n, t] : kl::verify_prodmin(17, o.nmax))
                    pv.push_back(ordered_json{{"n", n}, {"t", t}});
                j["prodmin_violations"] = pv;
                std::cout << j.dump(2) << '\n';
                kl::require(comps.empty() && pv.empty(), kl::errc::verification_failed,
                            "bound verification failed");
            } else {
                std::cout << j.dump(2) << '\n';
                kl::require(comps.empty(), kl::errc::verification_failed,
                            "bound verification failed");
            }
            return;
        }
        std::cout << j.dump(2) << '\n';
        return;
    }
    for (const kl::bigint& v : table.values) std::cout << v << '\n';
    if (o.verify) {
        auto comps = kl::verify_comps_bound(o.nmax);
        std::cout << "comps_bound " << (comps.empty() ? "ok" : "VIOLATED") << '\n';
        bool prod_ok = true;
        if (o.nmax >= 17) {
            auto pv = kl::verify_prodmin(17, o.nmax);
            prod_ok = pv.empty();
            std::cout << "prodmin " << (prod_ok ? "ok" : "VIOLATED") << '\n';
        } else {
            std::cout << "prodmin skipped (nmax < 17)\n";
        }
        kl::require(comps.empty() && prod_ok, kl::errc::verification_failed,
                    "bound verification failed");
    }
}

void run_sync(const SyncOpts& o) {
    kl::SyncWitness w = kl::verify_witness(o.k, o.l);
    if (!o.emit_path.empty()) {
        std::ofstream out(o.emit_path);
        if (!out) kl::fail(kl::errc::parse_error, "cannot write " + o.emit_path);
        out << kl::format_witness(w);
    }
    if (o.output == "json") {
        ordered_json j{{"k", o.k},
                       {"l", o.l},
                       {"x", w.x},
                       {"members", w.clique.size()},
                       {"color_count", str(w.color_count)},
                       {"verified", true}};
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << "members " << w.clique.size() << '\n'
                  << "color_count " << w.color_count << '\n'
                  << "verified true\n";
    }
}

void run_construct(const ConstructOpts& o) {
    kl::MinimizerResult r = kl::construct_minimizer(o.k, o.l, o.seed);
    kl::bigint chi = kl::chi_formula(o.k, o.l);
    kl::bigint aut = kl::aut_order(r.matrix);
    if (o.output == "json") {
        ordered_json j{{"k", o.k},
                       {"l", o.l},
                       {"construction", r.construction},
                       {"rows", matrix_rows(r.matrix)},
                       {"aut_order", str(aut)},
                       {"chi", str(chi)}};
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << "construction " << r.construction << '\n'
                  << kl::format_matrix_text(r.matrix) << "aut_order " << aut << '\n'
                  << "chi " << chi << '\n';
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Margin-uniform matrix symmetries: exact formulas, enumeration, sampling"};
    app.require_subcommand(1);

    auto chi_o = std::make_shared<ValueOpts>();
    auto* chi = app.add_subcommand("chi", "Minimum automorphism count, closed form");
    chi->add_option("--k", chi_o->k, "Part count")->required();
    chi->add_option("--l", chi_o->l, "Margin")->required();
    add_output_flag(chi, chi_o->output);
    chi->callback([chi_o] { emit_value("chi", chi_o->k, chi_o->l, kl::chi_formula(chi_o->k, chi_o->l), chi_o->output); });

    auto mu_o = std::make_shared<ValueOpts>();
    auto* mu = app.add_subcommand("mu", "Maximum automorphism count, closed form");
    mu->add_option("--k", mu_o->k, "Part count")->required();
    mu->add_option("--l", mu_o->l, "Margin")->required();
    add_output_flag(mu, mu_o->output);
    mu->callback([mu_o] { emit_value("mu", mu_o->k, mu_o->l, kl::mu_formula(mu_o->k, mu_o->l), mu_o->output); });

    auto stab_o = std::make_shared<StabOpts>();
    auto* stab = app.add_subcommand("stab", "Joint row/column stabilizer of a matrix");
    stab->add_option("--matrix", stab_o->matrix_path, "Matrix file (text or JSON), - for stdin")
        ->required();
    stab->add_flag("--generators", stab_o->generators, "Include a sample of group elements");
    stab->add_option("--generator-cap", stab_o->generator_cap, "Element sample cap")
        ->capture_default_str();
    add_output_flag(stab, stab_o->output);
    stab->callback([stab_o] { run_stab(*stab_o); });

    auto enum_o = std::make_shared<EnumOpts>();
    auto* enumerate = app.add_subcommand("enumerate", "Visit all margin-l matrices");
    enumerate->add_option("--k", enum_o->k, "Part count")->required();
    enumerate->add_option("--l", enum_o->l, "Margin")->required();
    enumerate->add_flag("--stats", enum_o->stats, "Aggregate automorphism statistics only");
    enumerate->add_option("--budget", enum_o->budget, "Visit cap")->capture_default_str();
    add_output_flag(enumerate, enum_o->output);
    enumerate->callback([enum_o] { run_enumerate(*enum_o); });

    auto count_o = std::make_shared<EnumOpts>();
    auto* count = app.add_subcommand("count", "Number of margin-l matrices");
    count->add_option("--k", count_o->k, "Part count")->required();
    count->add_option("--l", count_o->l, "Margin")->required();
    count->add_option("--budget", count_o->budget, "Visit cap")->capture_default_str();
    add_output_flag(count, count_o->output);
    count->callback([count_o] {
        emit_value("count", count_o->k, count_o->l,
                   kl::count_matrices(count_o->k, count_o->l, count_o->budget), count_o->output);
    });

    auto sample_o = std::make_shared<SampleOpts>();
    auto* sample = app.add_subcommand("sample", "Exactly-uniform random matrices and statistics");
    sample->add_option("--k", sample_o->k, "Part count")->required();
    sample->add_option("--l", sample_o->l, "Margin")->required();
    sample->add_option("--n", sample_o->n, "Sample (or trial) count")->required();
    sample->add_option("--seed", sample_o->seed, "RNG seed")->capture_default_str();
    sample->add_option("--stat", sample_o->stat, "Aggregate statistic instead of raw samples")
        ->check(CLI::IsMember({"dev", "sym", "rate"}));
    sample->add_option("--fexp", sample_o->fexp, "Deviation threshold exponent")
        ->capture_default_str();
    sample->add_option("--eps", sample_o->eps, "Symmetry bound epsilon")->capture_default_str();
    sample->add_option("--workers", sample_o->workers, "Worker threads")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    add_output_flag(sample, sample_o->output);
    sample->callback([sample_o] { run_sample(*sample_o); });

    auto bn_o = std::make_shared<BnOpts>();
    auto* bn = app.add_subcommand("bn", "Factorial partition sums b_0..b_nmax");
    bn->add_option("--nmax", bn_o->nmax, "Last index")->required();
    bn->add_flag("--verify", bn_o->verify, "Also check the factorial bounds");
    add_output_flag(bn, bn_o->output);
    bn->callback([bn_o] { run_bn(*bn_o); });

    auto sync_o = std::make_shared<SyncOpts>();
    auto* sync = app.add_subcommand("sync", "Certified clique + coloring witness");
    sync->add_option("--k", sync_o->k, "Part count")->required();
    sync->add_option("--l", sync_o->l, "Part size")->required();
    sync->add_option("--emit-witness", sync_o->emit_path, "Write the witness to a file");
    add_output_flag(sync, sync_o->output);
    sync->callback([sync_o] { run_sync(*sync_o); });

    auto cons_o = std::make_shared<ConstructOpts>();
    auto* cons = app.add_subcommand("construct", "Explicit minimum-symmetry matrix");
    cons->add_option("--k", cons_o->k, "Part count")->required();
    cons->add_option("--l", cons_o->l, "Margin")->required();
    cons->add_option("--seed", cons_o->seed, "RNG seed")->capture_default_str();
    add_output_flag(cons, cons_o->output);
    cons->callback([cons_o] { run_construct(*cons_o); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const kl::error& e) {
        std::cerr << "error: " << e.what() << '\n';
        bool verification = e.code() == kl::errc::verification_failed ||
                            e.code() == kl::errc::flow_infeasible;
        return verification ? 1 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
