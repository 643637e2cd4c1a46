// Command-line front end for the trop library.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "trop/apsp.hpp"
#include "trop/bucketed.hpp"
#include "trop/certificate.hpp"
#include "trop/maxsubarray.hpp"
#include "trop/minplus.hpp"
#include "trop/params.hpp"
#include "trop/range_mode.hpp"
#include "trop/reductions.hpp"
#include "trop/structured.hpp"
#include "trop/support.hpp"

using namespace trop;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitInput = 2;

struct Global {
    double omega = 3.0;
    std::uint64_t seed = 0;
    std::size_t threads = 1;
    bool deterministic = false;
    std::string output;
};

struct MismatchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw InputError("cannot write " + path);
        }
    }
    std::ostream& get() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

MinPlusConfig structured_config(const Global& g, std::optional<std::size_t> rho, std::optional<std::size_t> rounds,
                                std::optional<std::size_t> bucket) {
    MinPlusConfig cfg;
    cfg.rho = rho;
    cfg.rounds = rounds;
    cfg.bucket_size = bucket;
    cfg.seed = g.seed;
    cfg.deterministic = g.deterministic;
    cfg.cap_multiplier = g.deterministic ? 5 : 3;
    cfg.threads = g.threads;
    cfg.omega_eff = g.omega;
    cfg.validate();
    return cfg;
}

void write_header(std::ostream& out, const Global& g, const std::string& what) {
    out << "# " << what << " seed=" << g.seed << " deterministic=" << (g.deterministic ? 1 : 0) << '\n';
}

void write_structured_stats(std::ostream& out, const StructuredStats& s) {
    out << "# rho=" << s.rho << " rounds=" << s.rounds << " covered=" << s.covered_pairs << '/' << s.finite_pairs
        << " triples_listed=" << s.triples_listed << " hitting_set=" << s.hitting_set_size
        << " large_buckets_scanned=" << s.large_buckets_scanned << '\n';
    out << "# sampled_columns";
    for (std::size_t j : s.sampled_columns) out << ' ' << j;
    out << '\n';
}

Value max_row_step(const IntMatrix& b) {
    Value q = 0;
    for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t j = 0; j + 1 < b.cols(); ++j) q = std::max(q, std::abs(b(k, j + 1) - b(k, j)));
    return q;
}

Value max_abs_entry(const IntMatrix& a) {
    Value m = 0;
    for (Value v : a.values())
        if (is_finite(v)) m = std::max(m, std::abs(v));
    return m;
}

std::size_t default_block(std::size_t n) {
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(n)))));
}

// minplus ---------------------------------------------------------------

struct MinplusArgs {
    std::string a, b, algo = "naive", cert = "bdiff";
    std::optional<Value> m_bound;
    std::optional<std::size_t> rho, rounds, bucket, block;
    std::size_t order = 1;
};

BlockCertificate build_certificate(const MinplusArgs& args, const IntMatrix& b) {
    const std::size_t block = args.block.value_or(default_block(std::max(b.rows(), b.cols())));
    if (args.cert == "bdiff") return cert_from_bounded_difference(b, max_row_step(b), block);
    if (args.cert == "fdiff") return cert_from_finite_difference(b, args.order, block);
    throw InputError("unknown certificate kind " + args.cert);
}

IntMatrix run_minplus(const Global& g, const MinplusArgs& args, const IntMatrix& a, const IntMatrix& b,
                      StructuredStats* stats) {
    if (args.algo == "naive") return minplus_naive(a, b);
    if (args.algo == "bounded") {
        const Value m = args.m_bound.value_or(std::max(max_abs_entry(a), max_abs_entry(b)));
        return minplus_bounded(a, b, m);
    }
    if (args.algo == "bucketed") {
        BucketedOptions opt;
        opt.bucket_size = args.bucket;
        opt.omega_eff = g.omega;
        return minplus_one_bounded(a, b, args.m_bound.value_or(std::max<Value>(1, max_abs_entry(a))), opt);
    }
    if (args.algo == "structured") {
        auto cfg = structured_config(g, args.rho, args.rounds, args.bucket);
        return minplus_structured(a, b, build_certificate(args, b), cfg, stats);
    }
    throw InputError("unknown min-plus algorithm " + args.algo);
}

int cmd_minplus(const Global& g, const MinplusArgs& args) {
    IntMatrix a = read_matrix_file(args.a), b = read_matrix_file(args.b);
    StructuredStats stats;
    IntMatrix c = run_minplus(g, args, a, b, &stats);
    Output out(g.output);
    if (args.algo == "structured") {
        write_header(out.get(), g, "minplus structured");
        write_structured_stats(out.get(), stats);
    }
    write_matrix(out.get(), c);
    return kExitOk;
}

// maxsubarray / central ---------------------------------------------------

struct SubarrayArgs {
    std::string input, algo = "kadane";
    std::optional<Value> m_bound;
    std::optional<std::size_t> block, rho;
};

Value run_fast_subarray(const Global& g, const SubarrayArgs& args, const IntMatrix& a, bool validate) {
    FastSubarrayOptions opt;
    opt.validate = validate;
    opt.bdd.block_size = args.block;
    opt.bdd.structured = structured_config(g, args.rho, std::nullopt, std::nullopt);
    return max_subarray_2d_fast(a, args.m_bound.value_or(std::max<Value>(1, max_abs_entry(a))), opt);
}

int cmd_maxsubarray(const Global& g, const SubarrayArgs& args) {
    IntMatrix a = read_matrix_file(args.input);
    Output out(g.output);
    if (args.algo == "kadane") {
        auto r = max_subarray_2d(a);
        out.get() << "# box rows " << r.box[0].first << ' ' << r.box[0].second << " cols " << r.box[1].first << ' '
                  << r.box[1].second << '\n';
        out.get() << r.best_sum << '\n';
    } else if (args.algo == "fast") {
        Value best = run_fast_subarray(g, args, a, false);
        write_header(out.get(), g, "maxsubarray fast");
        out.get() << best << '\n';
    } else {
        throw InputError("unknown maxsubarray algorithm " + args.algo);
    }
    return kExitOk;
}

int cmd_central(const Global& g, const SubarrayArgs& args) {
    CentralArray c = read_central_file(args.input);
    Output out(g.output);
    if (args.algo == "naive") {
        auto r = central_max_subarray_naive(c);
        out.get() << "# corner";
        for (long v : r.i) out.get() << ' ' << v;
        out.get() << " delta";
        for (long v : r.delta) out.get() << ' ' << v;
        out.get() << '\n' << r.best << '\n';
    } else if (args.algo == "fast") {
        Value m = 0;
        for (Value v : c.data()) m = std::max(m, std::abs(v));
        out.get() << central_max_subarray_2d_fast(c, args.m_bound.value_or(std::max<Value>(1, m))) << '\n';
    } else {
        throw InputError("unknown central algorithm " + args.algo);
    }
    return kExitOk;
}

// rangemode ---------------------------------------------------------------

struct RangeArgs {
    std::string input, algo = "batch";
    std::optional<std::size_t> t, block, rho;
};

std::vector<std::size_t> run_batch_range_mode(const Global& g, const RangeArgs& args, const RangeModeInstance& inst,
                                              RangeModeStats* stats) {
    RangeModeOptions opt;
    opt.threshold = args.t;
    opt.monotone.block_size = args.block;
    opt.monotone.structured = structured_config(g, args.rho, std::nullopt, std::nullopt);
    return batch_range_mode(inst, opt, stats);
}

int cmd_rangemode(const Global& g, const RangeArgs& args) {
    RangeModeInstance inst = read_range_mode_file(args.input);
    std::vector<std::size_t> ans;
    if (args.algo == "naive")
        ans = range_mode_naive(inst);
    else if (args.algo == "batch")
        ans = run_batch_range_mode(g, args, inst, nullptr);
    else
        throw InputError("unknown range-mode algorithm " + args.algo);
    Output out(g.output);
    for (std::size_t v : ans) out.get() << v << '\n';
    return kExitOk;
}

// apsp --------------------------------------------------------------------

struct ApspArgs {
    std::string input, algo = "gwc";
    std::optional<std::size_t> ell, rho;
};

IntMatrix run_apsp_gwc(const Global& g, const ApspArgs& args, const GWCGraph& graph, ApspStats* stats) {
    ApspOptions opt;
    opt.ell = args.ell;
    opt.structured = structured_config(g, args.rho, std::nullopt, std::nullopt);
    return apsp_gwc(graph, opt, stats);
}

int cmd_apsp(const Global& g, const ApspArgs& args) {
    GWCGraph graph = read_gwc_file(args.input);
    Output out(g.output);
    if (args.algo == "fw") {
        write_matrix(out.get(), apsp_floyd_warshall(graph.weights));
    } else if (args.algo == "gwc") {
        ApspStats stats;
        IntMatrix d = run_apsp_gwc(g, args, graph, &stats);
        write_header(out.get(), g, "apsp gwc");
        out.get() << "# ell=" << stats.ell << " products=" << stats.products << " samples=" << stats.samples << '\n';
        write_matrix(out.get(), d);
    } else {
        throw InputError("unknown apsp algorithm " + args.algo);
    }
    return kExitOk;
}

// reduce ------------------------------------------------------------------

struct ReduceArgs {
    std::string kind, input, output;
};

std::size_t pairs_for_h3(const HypergraphFile& f) {
    if (f.parts < 4 || f.parts % 2) throw DimensionError("3-uniform input needs 2d-2 parts with d >= 3");
    return (f.parts + 2) / 2;
}

int cmd_reduce(const ReduceArgs& args) {
    HypergraphFile f = read_hypergraph_file(args.input);
    std::ofstream out(args.output);
    if (!out) throw InputError("cannot write " + args.output);
    if (args.kind == "clique2ts")
        write_hypergraph(out, twosided_to_file(clique_to_twosided(clique_from_file(f))));
    else if (args.kind == "ts2central")
        write_central(out, twosided_to_central(twosided_from_file(f)));
    else if (args.kind == "h32ts")
        write_hypergraph(out, twosided_to_file(hyperclique3_to_twosided_bounded(hypergraph3_from_file(f), pairs_for_h3(f))));
    else
        throw InputError("unknown reduction " + args.kind);
    return kExitOk;
}

// verify ------------------------------------------------------------------

void check(bool ok, const std::string& what) {
    if (!ok) throw MismatchError(what);
}

int cmd_verify(const Global& g, const std::string& target, const MinplusArgs& mp, const SubarrayArgs& sa,
               const RangeArgs& ra, const ApspArgs& aa, const ReduceArgs& rd) {
    std::ostream& log = std::cout;
    if (target == "minplus") {
        MinplusArgs args = mp;
        if (args.algo == "naive") args.algo = "structured";
        IntMatrix a = read_matrix_file(args.a), b = read_matrix_file(args.b);
        check(run_minplus(g, args, a, b, nullptr) == minplus_naive(a, b), "minplus " + args.algo + " differs from naive");
    } else if (target == "maxsubarray") {
        IntMatrix a = read_matrix_file(sa.input);
        Value fast = run_fast_subarray(g, sa, a, true);
        check(fast == max_subarray_2d(a).best_sum, "fast maximum subarray differs from the exhaustive baseline");
    } else if (target == "central") {
        CentralArray c = read_central_file(sa.input);
        Value m = 0;
        for (Value v : c.data()) m = std::max(m, std::abs(v));
        check(central_max_subarray_2d_fast(c, sa.m_bound.value_or(std::max<Value>(1, m))) ==
                  central_max_subarray_naive(c).best,
              "fast central subarray differs from naive");
    } else if (target == "rangemode") {
        RangeModeInstance inst = read_range_mode_file(ra.input);
        check(run_batch_range_mode(g, ra, inst, nullptr) == range_mode_naive(inst), "batch range mode differs from naive");
    } else if (target == "apsp") {
        GWCGraph graph = read_gwc_file(aa.input);
        check(run_apsp_gwc(g, aa, graph, nullptr) == apsp_floyd_warshall(graph.weights),
              "clustered APSP differs from Floyd-Warshall");
    } else if (target == "reduce") {
        HypergraphFile f = read_hypergraph_file(rd.input);
        if (rd.kind == "clique2ts") {
            auto g0 = clique_from_file(f);
            Value lhs = brute_max_weight_clique(g0).weight;
            auto h = clique_to_twosided(g0);
            Value rhs = brute_twosided_hyperclique(h).weight;
            log << "# clique=" << lhs << " hyperclique=" << rhs << '\n';
            check(lhs == rhs, "clique optimum differs from the two-sided hyperclique optimum");
        } else if (rd.kind == "ts2central") {
            auto h = twosided_from_file(f);
            Value lhs = brute_twosided_hyperclique(h).weight;
            Value rhs = central_max_subarray_naive(twosided_to_central(h)).best;
            log << "# hyperclique=" << lhs << " central=" << rhs << '\n';
            check(lhs == rhs, "hyperclique optimum differs from the central subarray optimum");
        } else if (rd.kind == "h32ts") {
            const std::size_t d = pairs_for_h3(f);
            auto g3 = hypergraph3_from_file(f);
            bool exists = brute_hyperclique3(g3).exists;
            auto h = hyperclique3_to_twosided_bounded(g3, d);
            const std::size_t k = 2 * d - 2;
            const Value target_weight = static_cast<Value>(k * (k - 1) * (k - 2) / 6);
            Value best = brute_twosided_hyperclique(h).weight;
            log << "# hyperclique_exists=" << exists << " optimum=" << best << " target=" << target_weight << '\n';
            check(exists == (best == target_weight), "hyperclique criterion does not match");
            check(h.max_abs_weight() <= reduction_penalty(d, 1), "reduced weights exceed the bound");
        } else {
            throw InputError("unknown reduction " + rd.kind);
        }
    } else {
        throw InputError("unknown verify target " + target);
    }
    log << "ok\n";
    return kExitOk;
}

// bench -------------------------------------------------------------------

struct BenchArgs {
    std::string target = "structured";
    std::size_t n = 64, trials = 3;
    Value bound = 3;
    std::optional<std::size_t> rho, block, bucket;
};

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

IntMatrix random_matrix(SplitRng& rng, std::size_t r, std::size_t c, Value lo, Value hi) {
    IntMatrix m(r, c);
    for (auto& v : m.values()) v = rng.range(lo, hi);
    return m;
}

IntMatrix random_bounded_difference(SplitRng& rng, std::size_t n, Value q) {
    IntMatrix b(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        b(k, 0) = k ? b(k - 1, 0) + rng.range(-q, q) : rng.range(-50, 50);
        for (std::size_t j = 1; j < n; ++j) b(k, j) = b(k, j - 1) + rng.range(-q, q);
    }
    return b;
}

int cmd_bench(const Global& g, const BenchArgs& args) {
    Output out(g.output);
    std::ostream& os = out.get();
    os << std::fixed << std::setprecision(2);
    SplitRng root(g.seed);
    if (args.target == "structured") {
        os << "trial rho rounds covered triples_listed hitting_set buckets_scanned phase1_ms select_ms phase2_ms "
              "phase3_ms total_ms naive_ms exact\n";
        for (std::size_t t = 0; t < args.trials; ++t) {
            SplitRng rng = root.split("trial" + std::to_string(t));
            IntMatrix a = random_matrix(rng, args.n, args.n, -30, 30);
            IntMatrix b = random_bounded_difference(rng, args.n, args.bound);
            BlockCertificate cert = cert_from_bounded_difference(b, args.bound, args.block.value_or(default_block(args.n)));
            MinPlusConfig cfg = structured_config(g, args.rho, std::nullopt, args.bucket);
            cfg.seed = rng.next();
            StructuredStats s;
            auto t0 = std::chrono::steady_clock::now();
            IntMatrix c = minplus_structured(a, b, cert, cfg, &s);
            double total = ms_since(t0);
            t0 = std::chrono::steady_clock::now();
            IntMatrix ref = minplus_naive(a, b);
            double naive = ms_since(t0);
            os << t << ' ' << s.rho << ' ' << s.rounds << ' ' << s.covered_pairs << '/' << s.finite_pairs << ' '
               << s.triples_listed << ' ' << s.hitting_set_size << ' ' << s.large_buckets_scanned << ' ' << s.phase1_ms
               << ' ' << s.select_ms << ' ' << s.phase2_ms << ' ' << s.phase3_ms << ' ' << total << ' ' << naive << ' '
               << (c == ref ? "yes" : "no") << '\n';
        }
    } else if (args.target == "bucketed") {
        os << "trial bucket small large bounded_products buckets_scanned entries_scanned ms naive_ms exact\n";
        for (std::size_t t = 0; t < args.trials; ++t) {
            SplitRng rng = root.split("trial" + std::to_string(t));
            IntMatrix a = random_matrix(rng, args.n, args.n, -args.bound, args.bound);
            IntMatrix b = random_matrix(rng, args.n, args.n, -1000000, 1000000);
            BucketedOptions opt;
            opt.bucket_size = args.bucket;
            opt.omega_eff = g.omega;
            BucketedStats s;
            auto t0 = std::chrono::steady_clock::now();
            IntMatrix c = minplus_one_bounded(a, b, args.bound, opt, &s);
            double ms = ms_since(t0);
            t0 = std::chrono::steady_clock::now();
            IntMatrix ref = minplus_naive(a, b);
            os << t << ' ' << s.bucket_size << ' ' << s.small_buckets << ' ' << s.large_buckets << ' '
               << s.bounded_products << ' ' << s.large_buckets_scanned << ' ' << s.entries_scanned << ' ' << ms << ' '
               << ms_since(t0) << ' ' << (c == ref ? "yes" : "no") << '\n';
        }
    } else if (args.target == "maxsubarray") {
        os << "trial levels products ms baseline_ms exact\n";
        for (std::size_t t = 0; t < args.trials; ++t) {
            SplitRng rng = root.split("trial" + std::to_string(t));
            IntMatrix a = random_matrix(rng, args.n, args.n, -args.bound, args.bound);
            FastSubarrayOptions opt;
            opt.bdd.block_size = args.block;
            opt.bdd.structured = structured_config(g, args.rho, std::nullopt, args.bucket);
            FastSubarrayStats s;
            auto t0 = std::chrono::steady_clock::now();
            Value fast = max_subarray_2d_fast(a, args.bound, opt, &s);
            double ms = ms_since(t0);
            t0 = std::chrono::steady_clock::now();
            Value ref = max_subarray_2d(a).best_sum;
            os << t << ' ' << s.levels_checked << ' ' << s.products << ' ' << ms << ' ' << ms_since(t0) << ' '
               << (fast == ref ? "yes" : "no") << '\n';
        }
    } else if (args.target == "rangemode") {
        os << "trial threshold levels products intervals candidates ms naive_ms exact\n";
        for (std::size_t t = 0; t < args.trials; ++t) {
            SplitRng rng = root.split("trial" + std::to_string(t));
            RangeModeInstance inst;
            for (std::size_t i = 0; i < args.n; ++i) inst.seq.push_back(rng.range(0, args.bound));
            for (std::size_t q = 0; q < args.n; ++q) {
                std::size_t l = static_cast<std::size_t>(rng.range(1, static_cast<std::int64_t>(args.n)));
                std::size_t r = static_cast<std::size_t>(rng.range(1, static_cast<std::int64_t>(args.n)));
                inst.queries.push_back({std::min(l, r), std::max(l, r)});
            }
            RangeArgs ra;
            ra.block = args.block;
            ra.rho = args.rho;
            RangeModeStats s;
            auto t0 = std::chrono::steady_clock::now();
            auto ans = run_batch_range_mode(g, ra, inst, &s);
            double ms = ms_since(t0);
            t0 = std::chrono::steady_clock::now();
            auto ref = range_mode_naive(inst);
            os << t << ' ' << s.threshold << ' ' << s.levels << ' ' << s.products << ' ' << s.intervals << ' '
               << s.candidates_counted << ' ' << ms << ' ' << ms_since(t0) << ' ' << (ans == ref ? "yes" : "no")
               << '\n';
        }
    } else if (args.target == "apsp") {
        os << "trial ell products samples ms fw_ms exact\n";
        for (std::size_t t = 0; t < args.trials; ++t) {
            GWCParams p;
            p.n = args.n;
            p.clusters = args.block.value_or(default_block(args.n));
            p.dim = 2;
            p.error_bound = args.bound;
            p.seed = root.split("trial" + std::to_string(t)).next();
            GWCGraph graph = generate_gwc(p);
            ApspArgs aa;
            aa.rho = args.rho;
            ApspStats s;
            auto t0 = std::chrono::steady_clock::now();
            IntMatrix d = run_apsp_gwc(g, aa, graph, &s);
            double ms = ms_since(t0);
            t0 = std::chrono::steady_clock::now();
            IntMatrix ref = apsp_floyd_warshall(graph.weights);
            os << t << ' ' << s.ell << ' ' << s.products << ' ' << s.samples << ' ' << ms << ' ' << ms_since(t0) << ' '
               << (d == ref ? "yes" : "no") << '\n';
        }
    } else {
        throw InputError("unknown bench target " + args.target);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tropical (min-plus) algebra toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    Global g;
    app.add_option("--omega", g.omega, "Effective matrix multiplication exponent for default parameters")
        ->check(CLI::Range(2.0, 3.0));
    app.add_option("--seed", g.seed, "Seed for every randomized step");
    app.add_option("--threads", g.threads, "Thread budget")->check(CLI::PositiveNumber);
    app.add_flag("--deterministic", g.deterministic, "Derandomized column selection");
    app.add_option("-o,--output", g.output, "Write results to a file instead of standard output");

    MinplusArgs mp;
    SubarrayArgs sa;
    RangeArgs ra;
    ApspArgs aa;
    ReduceArgs rd;
    BenchArgs bench;
    std::string verify_target;

    auto add_minplus_opts = [&](CLI::App* c) {
        c->add_option("--algo", mp.algo, "naive|bounded|bucketed|structured")
            ->check(CLI::IsMember({"naive", "bounded", "bucketed", "structured"}));
        c->add_option("--m-bound", mp.m_bound, "Entry bound M");
        c->add_option("--rho", mp.rho, "Sampling parameter");
        c->add_option("--rounds", mp.rounds, "Sampling rounds");
        c->add_option("--bucket-size", mp.bucket, "Bucket width for bucketed products");
        c->add_option("--cert", mp.cert, "Certificate for B: bdiff|fdiff")->check(CLI::IsMember({"bdiff", "fdiff"}));
        c->add_option("--block", mp.block, "Certificate block width");
        c->add_option("--order", mp.order, "Finite-difference order for fdiff certificates");
        c->add_option("a", mp.a, "Left matrix file")->required();
        c->add_option("b", mp.b, "Right matrix file")->required();
    };
    auto add_subarray_opts = [&](CLI::App* c, bool central) {
        if (central)
            c->add_option("--algo", sa.algo, "naive|fast")->check(CLI::IsMember({"naive", "fast"}));
        else
            c->add_option("--algo", sa.algo, "kadane|fast")->check(CLI::IsMember({"kadane", "fast"}));
        c->add_option("--m-bound", sa.m_bound, "Entry bound M");
        c->add_option("--block", sa.block, "Certificate block width");
        c->add_option("--rho", sa.rho, "Sampling parameter");
        c->add_option("input", sa.input, "Input file")->required();
    };
    auto add_range_opts = [&](CLI::App* c) {
        c->add_option("--algo", ra.algo, "naive|batch")->check(CLI::IsMember({"naive", "batch"}));
        c->add_option("--t", ra.t, "Frequency threshold T")->check(CLI::PositiveNumber);
        c->add_option("--block", ra.block, "Monotone product block width");
        c->add_option("--rho", ra.rho, "Sampling parameter");
        c->add_option("input", ra.input, "Sequence and queries file")->required();
    };
    auto add_apsp_opts = [&](CLI::App* c) {
        c->add_option("--algo", aa.algo, "fw|gwc")->check(CLI::IsMember({"fw", "gwc"}));
        c->add_option("--ell", aa.ell, "Path-length threshold")->check(CLI::PositiveNumber);
        c->add_option("--rho", aa.rho, "Sampling parameter");
        c->add_option("input", aa.input, "Graph file")->required();
    };
    const std::vector<std::string> reductions{"clique2ts", "ts2central", "h32ts"};

    auto* c_minplus = app.add_subcommand("minplus", "Min-plus product of two matrix files");
    add_minplus_opts(c_minplus);
    auto* c_max = app.add_subcommand("maxsubarray", "Maximum subarray sum of a matrix file");
    add_subarray_opts(c_max, false);
    auto* c_central = app.add_subcommand("central", "Central maximum subarray sum");
    add_subarray_opts(c_central, true);
    auto* c_range = app.add_subcommand("rangemode", "Batch range mode frequencies");
    add_range_opts(c_range);
    auto* c_apsp = app.add_subcommand("apsp", "All-pairs shortest paths of a clustered graph");
    add_apsp_opts(c_apsp);
    auto* c_reduce = app.add_subcommand("reduce", "Apply a reduction to a hypergraph file");
    c_reduce->add_option("kind", rd.kind, "clique2ts|ts2central|h32ts")->required()->check(CLI::IsMember(reductions));
    c_reduce->add_option("input", rd.input)->required();
    c_reduce->add_option("output", rd.output)->required();

    auto* c_verify = app.add_subcommand("verify", "Cross-check a fast algorithm against its oracle");
    c_verify->require_subcommand(1);
    c_verify->fallthrough();
    auto* v_minplus = c_verify->add_subcommand("minplus");
    add_minplus_opts(v_minplus);
    auto* v_max = c_verify->add_subcommand("maxsubarray");
    add_subarray_opts(v_max, false);
    auto* v_central = c_verify->add_subcommand("central");
    add_subarray_opts(v_central, true);
    auto* v_range = c_verify->add_subcommand("rangemode");
    add_range_opts(v_range);
    auto* v_apsp = c_verify->add_subcommand("apsp");
    add_apsp_opts(v_apsp);
    auto* v_reduce = c_verify->add_subcommand("reduce");
    v_reduce->add_option("kind", rd.kind)->required()->check(CLI::IsMember(reductions));
    v_reduce->add_option("input", rd.input)->required();

    auto* c_bench = app.add_subcommand("bench", "Timing and counter tables on generated instances");
    c_bench->add_option("target", bench.target, "structured|bucketed|maxsubarray|rangemode|apsp")
        ->check(CLI::IsMember({"structured", "bucketed", "maxsubarray", "rangemode", "apsp"}));
    c_bench->add_option("--n", bench.n, "Instance size")->check(CLI::PositiveNumber);
    c_bench->add_option("--trials", bench.trials, "Number of instances");
    c_bench->add_option("--bound", bench.bound, "Entry, step or error bound");
    c_bench->add_option("--rho", bench.rho, "Sampling parameter");
    c_bench->add_option("--block", bench.block, "Block width (cluster count for apsp)");
    c_bench->add_option("--bucket-size", bench.bucket, "Bucket width");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (c_minplus->parsed()) return cmd_minplus(g, mp);
        if (c_max->parsed()) return cmd_maxsubarray(g, sa);
        if (c_central->parsed()) return cmd_central(g, sa);
        if (c_range->parsed()) return cmd_rangemode(g, ra);
        if (c_apsp->parsed()) return cmd_apsp(g, aa);
        if (c_reduce->parsed()) return cmd_reduce(rd);
        if (c_bench->parsed()) return cmd_bench(g, bench);
        if (c_verify->parsed()) {
            for (auto* sub : c_verify->get_subcommands()) verify_target = sub->get_name();
            return cmd_verify(g, verify_target, mp, sa, ra, aa, rd);
        }
    } catch (const MismatchError& e) {
        std::cerr << "mismatch: " << e.what() << '\n';
        return kExitMismatch;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::logic_error& e) {
        std::cerr << "mismatch: " << e.what() << '\n';
        return kExitMismatch;
    }
    return kExitOk;
}
