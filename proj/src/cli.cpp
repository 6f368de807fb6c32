#include "abduce/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <future>
#include <ostream>
#include <sstream>

#include "abduce/error.hpp"
#include "abduce/implicates.hpp"
#include "abduce/oracle.hpp"
#include "abduce/problem.hpp"
#include "abduce/saturation.hpp"

namespace abduce {

namespace {

struct Options {
    std::string file;
    std::string mode = "pipeline";
    std::string filter = "none";
    bool oracle = false;
    std::size_t max_len = 4;
    std::size_t oracle_universe = OracleOptions{}.universe_bound;
    std::string trace;
    std::size_t max_clauses = SaturationConfig{}.max_clauses;
    unsigned max_weight = SaturationConfig{}.max_weight;
    std::size_t max_iters = SaturationConfig{}.max_iterations;
    bool prime = true;
    bool verify = false;
    bool timing = false;
};

PFilter parse_filter(const std::string& text) {
    PFilter f;
    if (text == "none") return f;
    if (text == "positive") {
        f.positive_only = true;
        return f;
    }
    if (text == "negative") {
        f.negative_only = true;
        return f;
    }
    const std::string prefix = "maxlits=";
    if (text.rfind(prefix, 0) == 0) {
        std::string k = text.substr(prefix.size());
        if (!k.empty() && std::all_of(k.begin(), k.end(), [](char c) { return c >= '0' && c <= '9'; })) {
            f.max_literals = std::stoul(k);
            return f;
        }
    }
    throw InputError("unknown filter '" + text + "' (none, positive, negative, maxlits=K)");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

bool all_ground(const std::vector<Clause>& cs) {
    return std::all_of(cs.begin(), cs.end(), [](const Clause& c) { return c.is_ground(); });
}

std::size_t longest(const std::vector<Clause>& cs) {
    std::size_t n = 0;
    for (const auto& c : cs) n = std::max(n, c.size());
    return n;
}

bool equivalent(const std::vector<Clause>& a, const std::vector<Clause>& b, const Signature& sig) {
    auto covers = [&sig](const std::vector<Clause>& from, const std::vector<Clause>& to) {
        return std::all_of(to.begin(), to.end(), [&](const Clause& c) { return entails_set(from, c, sig); });
    };
    return covers(a, b) && covers(b, a);
}

int run(const Options& o, std::ostream& out, std::ostream& err) {
    auto start = std::chrono::steady_clock::now();
    Problem problem = parse_problem(read_file(o.file));
    Ordering ord(problem.sig, problem.ordering_config());
    const Signature& sig = problem.sig;

    OracleOptions oopts;
    oopts.universe_bound = o.oracle_universe;

    std::vector<Clause> implicates;
    Status status = Status::saturated;
    std::size_t kept = 0;
    std::string verify;

    if (o.oracle) {
        if (!all_ground(problem.clauses)) throw InputError("--oracle needs a ground problem");
        try {
            implicates = oracle_implicates(problem.clauses, ord, o.max_len, oopts);
        } catch (const BoundExceeded& e) {
            err << "oracle: " << e.what() << '\n';
            return exit_limit;
        }
        kept = implicates.size();
    } else {
        std::ofstream trace;
        EventSink sink;
        if (!o.trace.empty()) {
            trace.open(o.trace);
            if (!trace) throw InputError("cannot write '" + o.trace + "'");
            sink = [&trace](const std::string& line) { trace << line << '\n'; };
        }

        // The oracle only looks at the input, so it can start right away.
        std::future<std::vector<Clause>> check;
        std::string skipped;
        if (o.verify) {
            if (!all_ground(problem.clauses)) {
                skipped = "non-ground input";
            } else {
                check = std::async(std::launch::async, [&problem, &ord, &o, oopts] {
                    return oracle_implicates(problem.clauses, ord, o.max_len, oopts);
                });
            }
        }

        SaturationConfig cfg;
        cfg.filter = parse_filter(o.filter);
        cfg.max_clauses = o.max_clauses;
        cfg.max_weight = o.max_weight;
        cfg.max_iterations = o.max_iters;
        if (o.mode == "pipeline") {
            auto r = combine_pipeline(problem.clauses, ord, cfg, o.prime, sink);
            implicates = std::move(r.implicates);
            status = r.status;
            kept = r.generated;
        } else {
            cfg.mode = o.mode == "sar" ? Mode::sar : Mode::sa;
            auto r = saturate(problem.clauses, ord, cfg, sink);
            implicates = extract(r.clauses, sig);
            if (o.prime) implicates = minimize(implicates, ord);
            status = r.status;
            kept = r.generated;
        }

        if (o.verify) {
            if (check.valid()) {
                try {
                    auto expected = check.get();
                    if (longest(implicates) > o.max_len) verify = "partial, implicates longer than --max-len; ";
                    // sa keeps every prime implicate; the others only an equivalent set
                    bool agree = o.mode == "sa" ? same_theory(implicates, expected, sig)
                                                : equivalent(implicates, expected, sig);
                    verify += agree ? "ok" : "mismatch";
                } catch (const BoundExceeded& e) {
                    verify = std::string("skipped (") + e.what() + ")";
                }
            } else {
                verify = "skipped (" + skipped + ")";
            }
        }
    }

    for (const auto& line : render_implicates(implicates, ord)) out << line << '\n';
    if (!verify.empty()) out << "# verify: " << verify << '\n';
    out << "# status: " << to_string(status) << ", clauses=" << kept;
    if (o.timing) {
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
        out << ", time=" << ms.count() << "ms";
    }
    out << '\n';
    return status == Status::saturated ? exit_ok : exit_limit;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Ground A-flat implicates by constrained superposition", "abduce"};
    app.add_option("--abduce", o.file, "problem file")->required();
    app.add_option("--mode", o.mode, "sa, sar or pipeline")->check(CLI::IsMember({"sa", "sar", "pipeline"}));
    app.add_option("--filter", o.filter, "none, positive, negative or maxlits=K");
    app.add_flag("--oracle", o.oracle, "brute-force implicates (ground problems only)");
    app.add_option("--max-len", o.max_len, "longest clause the oracle enumerates");
    app.add_option("--oracle-universe", o.oracle_universe, "largest ground universe the oracle accepts");
    app.add_option("--trace", o.trace, "write the event log to this file");
    app.add_option("--max-clauses", o.max_clauses)->check(CLI::PositiveNumber);
    app.add_option("--max-weight", o.max_weight)->check(CLI::PositiveNumber);
    app.add_option("--max-iters", o.max_iters)->check(CLI::PositiveNumber);
    app.add_flag("--prime,!--no-prime", o.prime, "keep only prime implicates (default on)");
    app.add_flag("--verify", o.verify, "cross-check the result with the oracle");
    app.add_flag("--timing", o.timing, "append the run time to the status line");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "abduce: " << e.what() << '\n';
        return exit_input;
    }

    try {
        return run(o, out, err);
    } catch (const InputError& e) {
        err << o.file << (e.line() ? ":" : ": ") << e.what() << '\n';
        return exit_input;
    } catch (const BoundExceeded& e) {
        err << "abduce: " << e.what() << '\n';
        return exit_limit;
    }
}

}  // namespace abduce
