// Acceptance suite: one PASS/FAIL line per criterion. Usage:
//   trop_acceptance <path to trop cli> [criterion numbers...]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "../tests/oracles.hpp"
#include "trop/apsp.hpp"
#include "trop/bucketed.hpp"
#include "trop/certificate.hpp"
#include "trop/maxsubarray.hpp"
#include "trop/minplus.hpp"
#include "trop/range_mode.hpp"
#include "trop/reductions.hpp"
#include "trop/structured.hpp"

using namespace trop;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt_seconds(double s) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(2);
    os << s << "s";
    return os.str();
}

Outcome timed(double limit, const std::function<Outcome()>& body) {
    auto t0 = Clock::now();
    Outcome o = body();
    double s = seconds_since(t0);
    if (limit > 0 && s >= limit) {
        o.pass = false;
        o.detail += ", over the " + fmt_seconds(limit) + " limit";
    }
    o.detail += ", " + fmt_seconds(s);
    return o;
}

IntMatrix bounded_difference(std::mt19937_64& rng, std::size_t n, Value q) {
    return oracle::bounded_difference(rng, n, n, q);
}

// 1 ------------------------------------------------------------------------
Outcome ac1() {
    return timed(10, [] {
        std::mt19937_64 rng(1001);
        int bad = 0;
        for (int rep = 0; rep < 200; ++rep) {
            const Value m = 1 + rep % 8;
            IntMatrix a = oracle::random_matrix(rng, 24, 24, -m, m, 0.1);
            IntMatrix b = oracle::random_matrix(rng, 24, 24, -m, m, 0.1);
            bad += minplus_bounded(a, b, m) != oracle::minplus(a, b);
        }
        return Outcome{bad == 0, std::to_string(200 - bad) + "/200 equal"};
    });
}

// 2 ------------------------------------------------------------------------
Outcome ac2() {
    return timed(30, [] {
        std::mt19937_64 rng(1002);
        int bad = 0;
        for (int rep = 0; rep < 200; ++rep) {
            IntMatrix a = oracle::random_matrix(rng, 32, 32, -4, 4, 0.1);
            IntMatrix b = oracle::random_matrix(rng, 32, 32, -1000000, 1000000);
            BucketedOptions opt;
            opt.check_dominance = true;
            if (rep % 2) opt.bucket_size = 1 + static_cast<std::size_t>(rep % 16);
            bad += minplus_one_bounded(a, b, 4, opt) != oracle::minplus(a, b);
        }
        return Outcome{bad == 0, std::to_string(200 - bad) + "/200 equal, dominance checked"};
    });
}

// 3 ------------------------------------------------------------------------
Outcome ac3() {
    return timed(0, [] {
        std::mt19937_64 rng(1003);
        int violations = 0;
        Value worst_ratio_num = 0, worst_bound = 0;
        for (int rep = 0; rep < 50; ++rep) {
            IntMatrix a = oracle::random_matrix(rng, 64, 64, -50, 50, 0.05);
            IntMatrix b = oracle::bdd_matrix(rng, 64, 64, 2);
            BlockCertificate cert = cert_from_finite_difference(b, 1, 8, Value{2});
            IntMatrix ct = phase1_approx(a, b, cert);
            IntMatrix c = oracle::minplus(a, b);
            Value gap = 0;
            for (std::size_t x = 0; x < c.values().size(); ++x) {
                Value u = c.values()[x], v = ct.values()[x];
                if ((u == kInf) != (v == kInf)) {
                    gap = kInf;
                    break;
                }
                if (u != kInf) gap = std::max(gap, std::abs(u - v));
            }
            if (gap > cert.error_bound()) ++violations;
            if (gap > worst_ratio_num) {
                worst_ratio_num = gap;
                worst_bound = cert.error_bound();
            }
        }
        return Outcome{violations == 0, std::to_string(violations) + " violations in 50, largest gap " +
                                            std::to_string(worst_ratio_num) + " (W=" + std::to_string(worst_bound) + ")"};
    });
}

// 4 ------------------------------------------------------------------------
Outcome ac4() {
    return timed(120, [] {
        int bad = 0, runs = 0;
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            std::mt19937_64 rng(4000 + seed);
            IntMatrix a = oracle::random_matrix(rng, 64, 64, -30, 30, 0.05);
            IntMatrix b = bounded_difference(rng, 64, 3);
            BlockCertificate cert = cert_from_bounded_difference(b, 3, 8);
            IntMatrix want = oracle::minplus(a, b);
            MinPlusConfig cfg;
            cfg.rho = 4;
            cfg.seed = seed;
            cfg.bucket_size = 8;
            bad += minplus_structured(a, b, cert, cfg) != want;
            ++runs;
            if (seed % 10 == 0) {
                MinPlusConfig det = cfg;
                det.deterministic = true;
                det.cap_multiplier = 5;
                bad += minplus_structured(a, b, cert, det) != want;
                ++runs;
            }
        }
        return Outcome{bad == 0, std::to_string(runs - bad) + "/" + std::to_string(runs) +
                                     " equal (50 randomized seeds, 5 derandomized)"};
    });
}

// 5 ------------------------------------------------------------------------
Outcome ac5() {
    return timed(0, [] {
        const std::size_t n = 64, rho = 4, limit = n * n * n / rho;
        int within = 0;
        std::size_t worst = 0;
        for (std::uint64_t seed = 0; seed < 40; ++seed) {
            std::mt19937_64 rng(5000 + seed);
            IntMatrix a = oracle::random_matrix(rng, n, n, -30, 30);
            IntMatrix b = bounded_difference(rng, n, 3);
            BlockCertificate cert = cert_from_bounded_difference(b, 3, 8);
            IntMatrix ct = phase1_approx(a, b, cert);
            MinPlusConfig cfg;
            cfg.rho = rho;
            cfg.seed = seed;
            cfg.bucket_size = 8;
            Phase2Result p2 = phase2_sample(a, b, ct, cert.error_bound(), cfg);
            const Value w = cert.error_bound();
            std::size_t count = 0;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t k = 0; k < n; ++k) {
                    if (p2.report.is_covered(i, k)) continue;
                    for (std::size_t j = 0; j < n; ++j)
                        if (std::abs(a(i, k) + b(k, j) - ct(i, j)) <= 3 * w) ++count;
                }
            worst = std::max(worst, count);
            within += count <= limit;
        }
        return Outcome{within >= 38, std::to_string(within) + "/40 trials within n^3/rho=" + std::to_string(limit) +
                                         ", largest count " + std::to_string(worst)};
    });
}

// 6 ------------------------------------------------------------------------
Outcome ac6() {
    return timed(120, [] {
        std::mt19937_64 rng(1006);
        int bad = 0, total = 0;
        for (int rep = 0; rep < 100; ++rep) {
            IntMatrix a = oracle::random_matrix(rng, 20, 20, -3, 3);
            FastSubarrayOptions opt;
            opt.bdd.block_size = 5;
            opt.bdd.structured.rho = 2;
            opt.bdd.structured.seed = static_cast<std::uint64_t>(rep);
            opt.validate = rep < 10;
            bad += max_subarray_2d_fast(a, 3, opt) != oracle::max_subarray(a);
            ++total;
        }
        for (int rep = 0; rep < 3; ++rep) {
            IntMatrix a = oracle::random_matrix(rng, 64, 64, -1, 1);
            FastSubarrayOptions opt;
            opt.bdd.block_size = 8;
            opt.bdd.structured.rho = 2;
            opt.bdd.structured.seed = static_cast<std::uint64_t>(rep);
            bad += max_subarray_2d_fast(a, 1, opt) != oracle::max_subarray(a);
            ++total;
        }
        return Outcome{bad == 0, std::to_string(total - bad) + "/" + std::to_string(total) +
                                     " equal (100 of 20x20, 3 of 64x64)"};
    });
}

// 7 ------------------------------------------------------------------------
Outcome ac7() {
    return timed(60, [] {
        std::mt19937_64 rng(1007);
        const std::size_t n = 2000, q = 2000;
        int bad = 0, total = 0;
        for (Value alphabet : {2, 16, 50}) {
            RangeModeInstance inst;
            std::uniform_int_distribution<Value> v(0, alphabet - 1);
            std::uniform_int_distribution<std::size_t> pos(1, n);
            for (std::size_t i = 0; i < n; ++i) inst.seq.push_back(v(rng));
            std::vector<std::pair<std::size_t, std::size_t>> qs;
            for (std::size_t t = 0; t < q; ++t) {
                std::size_t l = pos(rng), r = pos(rng);
                if (l > r) std::swap(l, r);
                inst.queries.push_back({l, r});
                qs.emplace_back(l, r);
            }
            auto want = oracle::range_mode(inst.seq, qs);
            for (std::size_t t : {std::size_t{1}, std::size_t{0}, n}) {
                RangeModeOptions opt;
                if (t) opt.threshold = t;
                bad += batch_range_mode(inst, opt) != want;
                ++total;
            }
        }
        return Outcome{bad == 0, std::to_string(total - bad) + "/" + std::to_string(total) +
                                     " equal (alphabets 2, 16, 50; T = 1, default, n)"};
    });
}

// 8 ------------------------------------------------------------------------
Outcome ac8() {
    return timed(120, [] {
        int bad = 0;
        bool mixed = true;
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            GWCParams p;
            p.n = 128;
            p.clusters = 16;
            p.dim = 2;
            p.error_bound = 2;
            p.seed = 8000 + seed;
            GWCGraph g = generate_gwc(p);
            bool neg = false, pos = false;
            for (Value w : g.weights.values()) {
                neg |= w < 0;
                pos |= w > 0;
            }
            mixed &= neg && pos;
            ApspOptions opt;
            opt.structured.seed = seed;
            bad += apsp_gwc(g, opt) != oracle::distances(g.weights);
        }
        return Outcome{bad == 0 && mixed, std::to_string(20 - bad) + "/20 equal" +
                                              (mixed ? ", all graphs mixed-sign" : ", some graph not mixed-sign")};
    });
}

// 9 ------------------------------------------------------------------------
Value central_loop(const CentralArray& c) {
    const long n = static_cast<long>(c.n());
    Value best = kNegInf;
    for (long x1 = -n; x1 < 0; ++x1)
        for (long x2 = 1; x2 <= n; ++x2)
            for (long y1 = -n; y1 < 0; ++y1)
                for (long y2 = 1; y2 <= n; ++y2)
                    best = std::max(best, c.at2(x1, y1) + c.at2(x1, y2) + c.at2(x2, y1) + c.at2(x2, y2));
    return best;
}

Outcome ac9() {
    return timed(0, [] {
        std::mt19937_64 rng(1009);
        std::uniform_int_distribution<Value> v(-2, 2);
        int bad = 0;
        for (int rep = 0; rep < 50; ++rep) {
            CentralArray c(2, 16);
            for (auto& x : c.data()) x = v(rng);
            const Value naive = central_max_subarray_naive(c).best;
            bad += central_max_subarray_2d_fast(c, 2) != naive || naive != central_loop(c);
        }
        return Outcome{bad == 0, std::to_string(50 - bad) + "/50 equal"};
    });
}

// 10 -----------------------------------------------------------------------
bool next_tuple(std::vector<std::size_t>& t, std::size_t n) {
    for (std::size_t r = t.size(); r-- > 0;) {
        if (++t[r] < n) return true;
        t[r] = 0;
    }
    return false;
}

Outcome ac10() {
    return timed(0, [] {
        int chain_ok = 0;
        for (std::uint64_t seed = 0; seed < 30; ++seed) {
            std::mt19937_64 rng(10000 + seed);
            const std::size_t n = seed % 2 ? 4 : 2;
            WeightedCliqueInstance g(3, n);
            std::uniform_int_distribution<Value> w(-5, 5);
            for (std::size_t i = 0; i < 3; ++i)
                for (std::size_t j = i + 1; j < 3; ++j)
                    for (std::size_t a = 0; a < n; ++a)
                        for (std::size_t b = 0; b < n; ++b) g.weight(i, a, j, b) = w(rng);
            std::vector<std::size_t> t(3, 0);
            Value clique = kNegInf;
            do {
                clique = std::max(clique, g.weight(0, t[0], 1, t[1]) + g.weight(0, t[0], 2, t[2]) +
                                              g.weight(1, t[1], 2, t[2]));
            } while (next_tuple(t, n));
            TwoSidedHypergraph h = clique_to_twosided(g);
            const Value lib_clique = brute_max_weight_clique(g).weight;
            const Value hyper = brute_twosided_hyperclique(h).weight;
            const Value central = central_max_subarray_naive(twosided_to_central(h)).best;
            chain_ok += clique == lib_clique && lib_clique == hyper && hyper == central;
        }

        const std::size_t d = 3;
        const Value bound = 100 * 59049;
        int iff_ok = 0, with_clique = 0;
        for (std::uint64_t seed = 0; seed < 30; ++seed) {
            std::mt19937_64 rng(20000 + seed);
            std::bernoulli_distribution coin(0.3 + 0.01 * static_cast<double>(seed));
            Hypergraph3 g(4, 2);
            for (std::size_t x = 0; x < 4; ++x)
                for (std::size_t y = x + 1; y < 4; ++y)
                    for (std::size_t z = y + 1; z < 4; ++z)
                        for (std::size_t a = 0; a < 2; ++a)
                            for (std::size_t b = 0; b < 2; ++b)
                                for (std::size_t c = 0; c < 2; ++c)
                                    if (coin(rng)) g.add(x, a, y, b, z, c);
            std::vector<std::size_t> t(4, 0);
            bool exists = false;
            do {
                std::size_t count = 0;
                for (std::size_t x = 0; x < 4; ++x)
                    for (std::size_t y = x + 1; y < 4; ++y)
                        for (std::size_t z = y + 1; z < 4; ++z) count += g.has(x, t[x], y, t[y], z, t[z]);
                exists |= count == 4;
            } while (next_tuple(t, 2));
            with_clique += exists;
            TwoSidedHypergraph h = hyperclique3_to_twosided_bounded(g, d);
            const bool hit = brute_twosided_hyperclique(h).weight == 4;
            iff_ok += hit == exists && h.max_abs_weight() <= bound && brute_hyperclique3(g).exists == exists;
        }
        return Outcome{chain_ok == 30 && iff_ok == 30,
                       "chain " + std::to_string(chain_ok) + "/30, criterion " + std::to_string(iff_ok) + "/30 (" +
                           std::to_string(with_clique) + " with a hyperclique), weights <= " + std::to_string(bound)};
    });
}

// 11 -----------------------------------------------------------------------
std::string run_capture(const std::string& cmd, int& status) {
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        status = -1;
        return out;
    }
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    status = pclose(pipe);
    return out;
}

Outcome ac11(const std::string& cli) {
    return timed(0, [&] {
        namespace fs = std::filesystem;
        fs::path dir = fs::temp_directory_path() / ("trop_acceptance_" + std::to_string(::getpid()));
        fs::create_directories(dir);
        std::mt19937_64 rng(1011);
        auto write = [&](const std::string& name, auto&& fn) {
            std::ofstream f(dir / name);
            fn(f);
            return (dir / name).string();
        };
        const std::string a = write("a.txt", [&](std::ostream& o) {
            write_matrix(o, oracle::random_matrix(rng, 48, 48, -30, 30, 0.05));
        });
        const std::string b = write("b.txt", [&](std::ostream& o) { write_matrix(o, bounded_difference(rng, 48, 3)); });
        const std::string m = write("m.txt", [&](std::ostream& o) {
            write_matrix(o, oracle::random_matrix(rng, 24, 24, -2, 2));
        });
        const std::string s = write("s.txt", [&](std::ostream& o) {
            RangeModeInstance inst;
            std::uniform_int_distribution<Value> v(0, 9);
            std::uniform_int_distribution<std::size_t> pos(1, 300);
            for (int i = 0; i < 300; ++i) inst.seq.push_back(v(rng));
            for (int t = 0; t < 300; ++t) {
                std::size_t l = pos(rng), r = pos(rng);
                inst.queries.push_back({std::min(l, r), std::max(l, r)});
            }
            write_range_mode(o, inst);
        });
        const std::string gph = write("g.txt", [&](std::ostream& o) {
            GWCParams p;
            p.n = 48;
            p.clusters = 6;
            p.dim = 2;
            p.error_bound = 2;
            p.seed = 11;
            write_gwc(o, generate_gwc(p));
        });
        const std::vector<std::string> commands{
            "minplus --algo structured --rho 3 --block 8 " + a + " " + b,
            "maxsubarray --algo fast --m-bound 2 --block 4 --rho 2 " + m,
            "rangemode --algo batch --t 4 " + s,
            "apsp --algo gwc --ell 3 --rho 2 " + gph,
        };
        int identical = 0;
        std::string failures;
        for (const auto& c : commands) {
            std::set<std::string> outputs;
            bool ok = true;
            for (int threads : {1, 3})
                for (int rep = 0; rep < 3; ++rep) {
                    int status = 0;
                    std::string out = run_capture(cli + " --deterministic --seed 5 --threads " +
                                                      std::to_string(threads) + " " + c + " 2>&1",
                                                  status);
                    ok &= status == 0 && !out.empty();
                    outputs.insert(out);
                }
            if (ok && outputs.size() == 1)
                ++identical;
            else
                failures += " [" + c.substr(0, c.find(' ')) + "]";
        }
        fs::remove_all(dir);
        return Outcome{identical == static_cast<int>(commands.size()),
                       std::to_string(identical) + "/" + std::to_string(commands.size()) +
                           " commands byte-identical over 3 runs x threads {1,3}" + failures};
    });
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: trop_acceptance <trop cli> [criteria...]\n";
        return 2;
    }
    const std::string cli = argv[1];
    std::set<int> only;
    for (int i = 2; i < argc; ++i) only.insert(std::atoi(argv[i]));

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"bounded-entry product equals naive (200 of 24x24, M<=8, with INF)", ac1},
        {"one-side-bounded product equals naive (200 of 32x32, M=4, |B|<=1e6)", ac2},
        {"phase-1 approximation within the certificate error (50 of n=64, M=2, block 8)", ac3},
        {"structured product equals naive (n=64, Q=3, randomized and derandomized)", ac4},
        {"weakly relevant uncovered triples <= n^3/rho in >= 38 of 40 trials", ac5},
        {"fast maximum subarray equals exhaustive search", ac6},
        {"batch range mode equals naive (n=q=2000)", ac7},
        {"clustered APSP equals shortest-path oracle (20 of n=128, t=16, d=2, W=2)", ac8},
        {"fast central subarray equals naive (50 of n=16, M=2)", ac9},
        {"reduction chain preserves optima and hyperclique criterion", ac10},
        {"deterministic CLI runs are byte-identical", [&] { return ac11(cli); }},
    };

    int failed = 0;
    for (std::size_t c = 0; c < criteria.size(); ++c) {
        const int id = static_cast<int>(c) + 1;
        if (!only.empty() && !only.count(id)) continue;
        Outcome o;
        try {
            o = criteria[c].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::cout << "AC" << id << (id < 10 ? "  " : " ") << (o.pass ? "PASS" : "FAIL") << "  " << criteria[c].first
                  << " [" << o.detail << "]" << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
