// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include "test_support.hpp"

#include <lostpath/bounds.hpp>
#include <lostpath/candidates.hpp>
#include <lostpath/cli.hpp>
#include <lostpath/coverage.hpp>
#include <lostpath/io.hpp>
#include <lostpath/optimize.hpp>
#include <lostpath/shortening.hpp>
#include <lostpath/svg.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

using namespace lostpath;

namespace
{
    const double kTheorem1 = 7.0 * kPi / 6.0 + 1.0 + std::sqrt(3.0);
    const double kTheorem2 = kPi + 2.0;

    struct Outcome
    {
        bool pass;
        std::string detail;
    };

    std::string fmt(const char* format, auto... args)
    {
        char buf[512];
        std::snprintf(buf, sizeof buf, format, args...);
        return buf;
    }

    PiecewisePath shortened_theorem2(double end_length)
    {
        return PiecewisePath({
            Segment{{1.0, -end_length}, {1.0, 0.0}},
            Arc{{0.0, 0.0}, 1.0, 0.0, kPi, true},
            Segment{{-1.0, 0.0}, {-1.0, -end_length}},
        });
    }

    Outcome theorem1_reproduction()
    {
        const auto path = theorem1_path();
        const double err = std::abs(path_length(path) - kTheorem1);
        const auto rep = verify_certified(path);
        const bool pass = err <= 1e-12 && rep.covered() && std::abs(rep.deficit) <= 1e-9;
        return {pass, fmt("length %.12f (error %.1e), %s, deficit %.1e", path_length(path), err, to_string(rep.verdict),
                          rep.deficit)};
    }

    Outcome theorem2_reproduction()
    {
        const auto path = theorem2_path();
        const double err = std::abs(path_length(path) - kTheorem2);
        const auto rep = verify_certified(path);
        const double h = support_value(path, Angle{1.5 * kPi});
        const bool pass = err <= 1e-12 && rep.covered() && std::abs(h - 1.0) <= 1e-12;
        return {pass, fmt("length %.12f (error %.1e), %s, h(3pi/2) = %.15f", path_length(path), err,
                          to_string(rep.verdict), h)};
    }

    Outcome ell_optimization()
    {
        const auto m = golden_minimize([](double a) { return ell(a); }, 0.01, 1.4, 1e-10);
        const double analytic = std::asin(0.5);
        const bool pass = std::abs(m.x - kPi / 6) <= 1e-8 && std::abs(m.fx - kTheorem1) <= 1e-10 &&
                          std::abs(m.x - analytic) <= 1e-8;
        return {pass, fmt("alpha* = %.12f (pi/6 %+.1e, asin(1/2) %+.1e), ell = %.12f vs 7pi/6+1+sqrt3 = %.12f",
                          m.x, m.x - kPi / 6, m.x - analytic, m.fx, kTheorem1)};
    }

    Outcome narrative_numbers()
    {
        const double naive = path_length(naive_path());
        const double saving = naive - path_length(figure1_path());
        const bool pass = std::abs(naive - (1 + kTwoPi)) <= 1e-12 && std::abs(saving - (kPi / 2 - 1)) <= 1e-12;
        return {pass, fmt("naive %.12f, figure 1 saving %.12f (pi/2 - 1 = %.12f)", naive, saving, kPi / 2 - 1)};
    }

    Outcome oracle_agreement()
    {
        std::mt19937_64 rng(2024);
        std::uniform_real_distribution<double> margin(1e-4, 0.2);
        int covered = 0;
        int uncovered = 0;
        int mismatches = 0;
        double worst = 0.0;
        for (int trial = 1; covered + uncovered < 40; ++trial)
        {
            const auto raw = trial % 2 ? gen::random_polyline(rng, 7, 1.5) : gen::random_arc_path(rng, 5, 1.5);
            if (!gen::surrounds_origin(raw))
                continue;
            const auto path = gen::normalized_to(raw, trial % 4 < 2 ? margin(rng) : -margin(rng));
            const auto cert = verify_certified(path);
            const auto samp = verify_by_sampling(path);
            const auto hull = verify_by_hull(path);
            if (std::abs(cert.deficit) <= 1e-5)
                continue;
            if (cert.verdict != samp.verdict || cert.verdict != hull.verdict)
                ++mismatches;
            worst = std::max(worst, std::abs(cert.deficit - samp.deficit));
            (cert.covered() ? covered : uncovered)++;
        }
        const bool pass = mismatches == 0 && worst <= 1e-6 && covered >= 10 && uncovered >= 10;
        return {pass, fmt("%d covered + %d uncovered paths, %d verdict mismatches, max |certified - sampling| deficit %.1e",
                          covered, uncovered, mismatches, worst)};
    }

    Outcome witness_correctness()
    {
        const auto rep = verify_certified(shortened_theorem2(0.9));
        const double grid = kTwoPi / 4096;
        const bool pass = rep.verdict == Verdict::uncovered && std::abs(rep.deficit + 0.1) <= 1e-9 &&
                          std::abs(rep.witness_theta.radians - 1.5 * kPi) <= grid;
        return {pass, fmt("%s, deficit %.12f, witness %.9f (3pi/2 = %.9f, grid %.1e)", to_string(rep.verdict),
                          rep.deficit, rep.witness_theta.radians, 1.5 * kPi, grid)};
    }

    Outcome shortening_safety()
    {
        std::mt19937_64 rng(31);
        std::uniform_int_distribution<int> count(6, 14);
        VerifyConfig fast;
        fast.initial_grid = 512;
        ShortenConfig scfg;
        scfg.pair_grid = 8;
        scfg.tail_grid = 8;
        int paths = 0;
        int moves = 0;
        int bad = 0;
        while (paths < 100)
        {
            const auto raw = gen::random_polyline(rng, count(rng), 2.0);
            if (!gen::surrounds_origin(raw))
                continue;
            const auto path = gen::normalized_to(raw, 0.05);
            const auto res = greedy_shorten(path, fast, scfg);
            double len = path_length(path);
            for (const auto& m : res.moves)
            {
                ++moves;
                const double next = path_length(m.path);
                if (!(len - next > kMinSaving) || !verify_certified(m.path).covered())
                    ++bad;
                len = next;
            }
            ++paths;
        }
        const auto t1 = greedy_shorten(theorem1_path());
        const auto t2 = greedy_shorten(theorem2_path());
        const bool pass = bad == 0 && t1.moves.empty() && t2.moves.empty() && !t1.aborted && !t2.aborted;
        return {pass, fmt("%d paths, %d moves, %d unsafe; theorem 1 optimum %zu moves, theorem 2 optimum %zu moves",
                          paths, moves, bad, t1.moves.size(), t2.moves.size())};
    }

    Outcome certified_lower_bound()
    {
        bool pass = true;
        std::string detail;
        for (const auto& [mode, target] :
             {std::pair{SearchMode::theorem1, kTheorem1}, std::pair{SearchMode::theorem2, kTheorem2}})
        {
            const auto start = std::chrono::steady_clock::now();
            double lo = 1e300;
            double hi = 0.0;
            bool feasible = true;
            for (std::uint64_t seed = 0; seed < 8; ++seed)
            {
                SearchConfig cfg;
                cfg.mode = mode;
                cfg.vertices = 12;
                cfg.seed = seed;
                const auto res = anneal_search(cfg);
                feasible = feasible && res.converged && res.deficit >= -1e-9;
                lo = std::min(lo, res.value);
                hi = std::max(hi, res.value);
            }
            const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            const bool ok = feasible && lo >= target - 1e-6 && hi <= 1.05 * target && seconds <= 60.0;
            pass = pass && ok;
            detail += fmt("%s%s values [%.6f, %.6f] in [%.6f, %.6f], %.1f s", detail.empty() ? "" : "; ",
                          to_string(mode), lo, hi, target - 1e-6, 1.05 * target, seconds);
        }
        return {pass, detail};
    }

    Outcome bounds_table()
    {
        const auto [lower, upper] = l3_bounds();
        const double margin = 2.0 + chord_case_threshold() - kTheorem2;
        const bool pass = std::abs(lower.value - 7.6628) <= 1e-4 && std::abs(upper.value - 10.6643) <= 1e-4 &&
                          margin > 0.0 && std::abs(margin - 0.0769) <= 1e-4;
        return {pass, fmt("l3 lower %.6f, l3 upper %.6f, 2 + 4/(pi-2) - (pi-2)/4 - (pi+2) = %.6f", lower.value,
                          upper.value, margin)};
    }

    Outcome cli_and_format()
    {
        std::mt19937_64 rng(99);
        int stable = 0;
        for (int trial = 0; trial < 100; ++trial)
        {
            const auto path = trial % 2 ? gen::random_arc_path(rng, 1 + trial % 7, 2.0)
                                        : gen::random_polyline(rng, 2 + trial % 9, 3.0);
            const auto text = serialize_path(path);
            stable += serialize_path(parse_path(text)) == text ? 1 : 0;
        }

        namespace fs = std::filesystem;
        const auto dir = fs::temp_directory_path() / ("lostpath_acceptance_" + std::to_string(::getpid()));
        fs::create_directories(dir);
        auto run = [](std::vector<std::string> args) {
            std::ostringstream out;
            std::ostringstream err;
            return cli::run(args, out, err);
        };
        const auto t1 = (dir / "t1.json").string();
        const auto t2s = (dir / "t2s.json").string();
        save_path(t1, theorem1_path());
        save_path(t2s, shortened_theorem2(0.9));
        const int covered = run({"verify", t1});
        const int uncovered = run({"verify", t2s});
        const int inconclusive = run({"verify", t1, "--grid", "64", "--max-refinements", "0"});

        const auto svg_file = (dir / "t2.svg").string();
        save_path((dir / "t2.json").string(), theorem2_path());
        const int plotted = run({"plot", (dir / "t2.json").string(), "-o", svg_file});
        std::string svg;
        if (plotted == 0)
        {
            std::ifstream in(svg_file);
            std::ostringstream buf;
            buf << in.rdbuf();
            svg = buf.str();
        }
        fs::remove_all(dir);

        auto occurrences = [&](const std::string& needle) {
            std::size_t n = 0;
            for (auto pos = svg.find(needle); pos != std::string::npos; pos = svg.find(needle, pos + 1))
                ++n;
            return n;
        };
        const std::size_t arcs = occurrences(" A ");
        const std::size_t lines = occurrences("<line class=\"segment\"");
        const bool pass = stable == 100 && covered == 0 && uncovered == 2 && inconclusive == 3 && arcs == 1 && lines == 2;
        return {pass, fmt("%d/100 byte-identical round trips; verify exits %d/%d/%d; theorem 2 plot has %zu arc and %zu "
                          "line commands",
                          stable, covered, uncovered, inconclusive, arcs, lines)};
    }
} // namespace

int main()
{
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"Theorem 1 reproduction", theorem1_reproduction},
        {"Theorem 2 reproduction", theorem2_reproduction},
        {"ell(alpha) optimization", ell_optimization},
        {"naive path and Figure 1 saving", narrative_numbers},
        {"oracle agreement", oracle_agreement},
        {"witness correctness", witness_correctness},
        {"shortening safety and progress", shortening_safety},
        {"certified lower bound for annealing", certified_lower_bound},
        {"bounds table", bounds_table},
        {"CLI and file format", cli_and_format},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i)
    {
        const auto start = std::chrono::steady_clock::now();
        Outcome o{false, ""};
        try
        {
            o = criteria[i].second();
        }
        catch (const std::exception& e)
        {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failures += o.pass ? 0 : 1;
        std::printf("%s  %2zu  %s: %s  [%.1f s]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str(),
                    seconds);
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
