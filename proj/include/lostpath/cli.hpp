#pragma once
/**
 * @file   cli.hpp
 * @brief  The lostpath command line, callable in-process.
 *
 * Exit codes: 0 success (or covered), 1 malformed input or usage error,
 * 2 uncovered, 3 inconclusive.
 */

#include <lostpath/bounds.hpp>
#include <lostpath/candidates.hpp>
#include <lostpath/coverage.hpp>
#include <lostpath/io.hpp>
#include <lostpath/optimize.hpp>
#include <lostpath/shortening.hpp>
#include <lostpath/svg.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

namespace lostpath::cli
{
    enum ExitCode : int
    {
        kOk = 0,
        kMalformed = 1,
        kUncovered = 2,
        kInconclusive = 3,
    };

    namespace detail
    {
        inline std::string fixed(double v, int decimals)
        {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
            std::string s = buf;
            // Keep "-0.000" from leaking out of values that round to zero.
            if (s.find_first_not_of("-0.") == std::string::npos && s.front() == '-')
                s.erase(0, 1);
            return s;
        }

        inline std::string scientific(double v)
        {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.3e", v);
            return buf;
        }

        inline double parse_real(const std::string& text, const std::string& what)
        {
            std::size_t used = 0;
            double v = 0.0;
            try
            {
                v = std::stod(text, &used);
            }
            catch (const std::exception&)
            {
                used = 0;
            }
            if (used == 0 || used != text.size())
                throw Error(ErrorCode::ParseError, what + ": \"" + text + "\" is not a number");
            return v;
        }

        inline PiecewisePath candidate_by_name(const std::string& name)
        {
            if (name == "naive")
                return naive_path();
            if (name == "figure1")
                return figure1_path();
            if (name == "theorem1")
                return theorem1_path();
            if (name == "theorem2")
                return theorem2_path();
            const std::string prefix = "figure2:";
            if (name.rfind(prefix, 0) == 0)
                return figure2_path(parse_real(name.substr(prefix.size()), "--name figure2:<alpha>"));
            throw Error(ErrorCode::ParseError,
                        "--name: unknown candidate \"" + name + "\" (naive, figure1, figure2:<alpha>, theorem1, theorem2)");
        }

        inline std::vector<double> tangent_angles(const std::string& spec, const PiecewisePath& c)
        {
            if (spec.empty())
                return {};
            if (spec == "witness")
                return {verify_certified(c).witness_theta.radians};
            const std::string prefix = "grid:";
            if (spec.rfind(prefix, 0) == 0)
            {
                const double n = parse_real(spec.substr(prefix.size()), "--tangents grid:<N>");
                if (n < 1 || n > 100000 || n != std::floor(n))
                    throw Error(ErrorCode::ParseError, "--tangents grid:<N> needs an integer N in [1, 100000]");
                std::vector<double> out;
                for (int k = 0; k < static_cast<int>(n); ++k)
                    out.push_back(kTwoPi * k / n);
                return out;
            }
            throw Error(ErrorCode::ParseError, "--tangents: expected witness or grid:<N>, got \"" + spec + "\"");
        }

        inline int verdict_code(Verdict v)
        {
            switch (v)
            {
            case Verdict::covered: return kOk;
            case Verdict::uncovered: return kUncovered;
            case Verdict::inconclusive: return kInconclusive;
            }
            return kInconclusive;
        }

        inline void bound_row(std::ostream& out, const BoundReport& b)
        {
            char buf[160];
            std::snprintf(buf, sizeof buf, "%-18s %16.10f  %-12s ", b.name.c_str(), b.value, to_string(b.kind));
            out << buf << b.formula_text << "\n";
        }
    } // namespace detail

    /// Runs one command; args excludes the program name.
    inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
    {
        CLI::App app{"Search paths that meet every tangent of the unit circle.\n"
                     "Path files are JSON; angles are in radians and lengths in circle radii.",
                     "lostpath"};
        app.require_subcommand(1);

        std::string input;
        std::string output;

        auto* verify_cmd = app.add_subcommand("verify", "Decide whether a path meets every tangent");
        std::string method = "certified";
        VerifyConfig vcfg;
        verify_cmd->add_option("path", input, "Path JSON file")->required();
        verify_cmd->add_option("--method", method, "certified, sampling or hull")
            ->check(CLI::IsMember({"certified", "sampling", "hull"}))
            ->capture_default_str();
        verify_cmd->add_option("--tol", vcfg.tol, "Deficit tolerance")->capture_default_str();
        verify_cmd->add_option("--grid", vcfg.initial_grid, "Initial grid size of the certified method")
            ->capture_default_str();
        verify_cmd->add_option("--max-refinements", vcfg.max_refinements, "Bisection depth of the certified method")
            ->capture_default_str();

        auto* length_cmd = app.add_subcommand("length", "Print the total length");
        length_cmd->add_option("path", input, "Path JSON file")->required();

        auto* cand_cmd = app.add_subcommand("candidates", "Write a canonical construction");
        std::string cand_name;
        cand_cmd->add_option("--name", cand_name, "naive, figure1, figure2:<alpha>, theorem1 or theorem2")->required();
        cand_cmd->add_option("-o,--output", output, "Output JSON file")->required();

        auto* opt_cmd = app.add_subcommand("optimize", "Minimize the length of a path family");
        std::string family;
        double xtol = 1e-10;
        opt_cmd->add_option("--family", family, "Family name")->required()->check(CLI::IsMember({"figure2"}));
        opt_cmd->add_option("--xtol", xtol, "Bracket width at which the search stops")->capture_default_str();

        auto* search_cmd = app.add_subcommand("search", "Simulated annealing over polylines");
        SearchConfig scfg;
        std::string mode;
        search_cmd->add_option("--mode", mode, "theorem1 (start at the center) or theorem2 (free start)")
            ->required()
            ->check(CLI::IsMember({"theorem1", "theorem2"}));
        search_cmd->add_option("--vertices", scfg.vertices, "Maximum number of vertices")->capture_default_str();
        search_cmd->add_option("--seed", scfg.seed, "Random seed")->capture_default_str();
        search_cmd->add_option("--iterations", scfg.iterations, "Iterations per restart")->capture_default_str();
        search_cmd->add_option("-o,--output", output, "Output JSON file for the best path")->required();

        auto* shorten_cmd = app.add_subcommand("shorten", "Apply length-reducing moves that keep coverage");
        shorten_cmd->add_option("path", input, "Path JSON file")->required();
        shorten_cmd->add_option("-o,--output", output, "Output JSON file")->required();

        auto* bounds_cmd = app.add_subcommand("bounds", "Print the table of lengths and bounds");
        int dim = 0;
        double c_lower = 0.0;
        double c_upper = 0.0;
        auto* dim_opt = bounds_cmd->add_option("--dim", dim, "Dimension n >= 2 for the n-dimensional pair");
        auto* lower_opt = bounds_cmd->add_option("--c-lower", c_lower, "Constant of the n-dimensional lower bound");
        auto* upper_opt = bounds_cmd->add_option("--c-upper", c_upper, "Constant of the n-dimensional upper bound");
        dim_opt->needs(lower_opt)->needs(upper_opt);
        lower_opt->needs(dim_opt);
        upper_opt->needs(dim_opt);

        auto* plot_cmd = app.add_subcommand("plot", "Render a path as SVG");
        std::string tangents;
        plot_cmd->add_option("path", input, "Path JSON file")->required();
        plot_cmd->add_option("-o,--output", output, "Output SVG file")->required();
        plot_cmd->add_option("--tangents", tangents, "witness or grid:<N>");

        std::vector<const char*> argv{"lostpath"};
        for (const auto& a : args)
            argv.push_back(a.c_str());
        try
        {
            app.parse(static_cast<int>(argv.size()), argv.data());
        }
        catch (const CLI::ParseError& e)
        {
            const int code = app.exit(e, out, err);
            return code == 0 ? kOk : kMalformed;
        }

        try
        {
            if (verify_cmd->parsed())
            {
                const auto path = load_path(input);
                const auto which = method == "certified"  ? CoverageMethod::certified_grid
                                   : method == "sampling" ? CoverageMethod::intersection_sampling
                                                          : CoverageMethod::hull_containment;
                const auto rep = verify(path, which, vcfg);
                out << "verdict: " << to_string(rep.verdict) << "\n";
                out << "deficit: " << detail::fixed(rep.deficit, 9) << "\n";
                out << "witness: " << detail::fixed(rep.witness_theta.radians, 6) << "\n";
                out << "method: " << to_string(rep.method) << "\n";
                return detail::verdict_code(rep.verdict);
            }
            if (length_cmd->parsed())
            {
                out << detail::fixed(load_path(input).length(), 12) << "\n";
                return kOk;
            }
            if (cand_cmd->parsed())
            {
                const auto path = detail::candidate_by_name(cand_name);
                save_path(output, path);
                out << cand_name << ": " << path.size() << " pieces, length " << detail::fixed(path.length(), 12)
                    << "\n";
                return kOk;
            }
            if (opt_cmd->parsed())
            {
                const auto fam = figure2_family();
                const auto& box = fam.param_box.front();
                const auto best = golden_minimize(
                    [&](double a) {
                        const double p[1] = {a};
                        return fam.closed_form_length(p);
                    },
                    box.low, box.high, xtol);
                const double p[1] = {best.x};
                const auto rep = verify_certified(fam.build(p));
                out << "alpha*: " << detail::fixed(best.x, 12) << "\n";
                out << "ell(alpha*): " << detail::fixed(best.fx, 12) << "\n";
                out << "verdict: " << to_string(rep.verdict) << "\n";
                return detail::verdict_code(rep.verdict);
            }
            if (search_cmd->parsed())
            {
                scfg.mode = mode == "theorem1" ? SearchMode::theorem1 : SearchMode::theorem2;
                const auto res = anneal_search(scfg);
                save_path(output, *res.path);
                out << "value: " << detail::fixed(res.value, 12) << "\n";
                out << "deficit: " << detail::scientific(res.deficit) << "\n";
                out << "vertices: " << res.params.size() / 2 << "\n";
                out << "converged: " << (res.converged ? "true" : "false") << "\n";
                return res.converged ? kOk : kUncovered;
            }
            if (shorten_cmd->parsed())
            {
                const auto path = load_path(input);
                const auto rep = verify_certified(path);
                if (!rep.covered())
                {
                    err << "input path is " << to_string(rep.verdict) << " (deficit " << detail::scientific(rep.deficit)
                        << "); nothing to shorten\n";
                    return detail::verdict_code(rep.verdict);
                }
                const auto res = greedy_shorten(path);
                save_path(output, res.path);
                for (std::size_t k = 0; k < res.moves.size(); ++k)
                {
                    const auto& m = res.moves[k];
                    out << "move " << k + 1 << ": " << m.move_name << " saved " << detail::fixed(m.length_saved, 12)
                        << " at";
                    for (const auto loc : m.location)
                        out << " " << loc;
                    out << "\n";
                }
                out << "length: " << detail::fixed(path.length(), 12) << " -> " << detail::fixed(res.path.length(), 12)
                    << "\n";
                out << "saved: " << detail::fixed(path.length() - res.path.length(), 12) << "\n";
                if (res.aborted)
                {
                    out << "stopped: a coverage check was inconclusive\n";
                    return kInconclusive;
                }
                return kOk;
            }
            if (bounds_cmd->parsed())
            {
                const auto [t1, t2] = theorem_lengths();
                detail::bound_row(out, {"theorem1_length", t1, BoundKind::exact, "7pi/6 + 1 + sqrt(3) = ell(pi/6)"});
                detail::bound_row(out, {"theorem2_length", t2, BoundKind::exact, "pi + 2"});
                for (const auto& b : eq3_constants())
                    detail::bound_row(out, b);
                detail::bound_row(out, {"chord_margin", 2.0 + chord_case_threshold() - t2, BoundKind::exact,
                                        "2 + 4/(pi-2) - (pi-2)/4 - (pi + 2)"});
                const auto [l3_lo, l3_hi] = l3_bounds();
                detail::bound_row(out, l3_lo);
                detail::bound_row(out, l3_hi);
                if (dim_opt->count() > 0)
                {
                    const auto [ln_lo, ln_hi] = ln_bounds(dim, c_lower, c_upper);
                    detail::bound_row(out, ln_lo);
                    detail::bound_row(out, ln_hi);
                }
                return kOk;
            }
            if (plot_cmd->parsed())
            {
                const auto path = load_path(input);
                save_text(output, render_svg(path, {detail::tangent_angles(tangents, path)}));
                out << "wrote " << output << "\n";
                return kOk;
            }
        }
        catch (const Error& e)
        {
            err << "error: " << e.what() << "\n";
            return kMalformed;
        }
        return kMalformed;
    }
} // namespace lostpath::cli
