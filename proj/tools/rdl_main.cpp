// rdl: command-line front end.  Exit codes: 0 success, 1 negative verdict,
// 2 usage error, 3 budget exhausted.

#include "rdl/calculus.hpp"
#include "rdl/fragment.hpp"
#include "rdl/oracle.hpp"
#include "rdl/rank.hpp"
#include "rdl/search.hpp"
#include "rdl/sequent.hpp"
#include "rdl/simsem.hpp"
#include "rdl/syntax.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

using namespace rdl;
using nlohmann::json;

namespace {

constexpr int kOk = 0, kNegative = 1, kUsage = 2, kBudget = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string input;   // path, or "-" for stdin
    std::string expr;    // inline text instead of a file
    std::string output;  // empty: stdout
    std::uint64_t seed = 0;
    int jobs = 1;
};

std::string read_input(const RunConfig& c) {
    if (!c.expr.empty()) return c.expr;
    if (c.input.empty()) throw UsageError("no input: give a file, '-' or --expr");
    std::ostringstream ss;
    if (c.input == "-") {
        ss << std::cin.rdbuf();
    } else {
        std::ifstream in(c.input);
        if (!in) throw UsageError("cannot read " + c.input);
        ss << in.rdbuf();
    }
    // '#' starts a comment line in goal files
    std::istringstream lines(ss.str());
    std::string line, text;
    while (std::getline(lines, line))
        if (line.find_first_not_of(" \t") == std::string::npos || line[line.find_first_not_of(" \t")] != '#')
            text += line + "\n";
    return text;
}

void emit(const RunConfig& c, const std::string& text) {
    if (c.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(c.output);
    if (!out) throw UsageError("cannot write " + c.output);
    out << text;
}

void emit_json(const RunConfig& c, const json& j) { emit(c, j.dump(2) + "\n"); }

State parse_state(const std::string& text) {
    State w;
    std::istringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw UsageError("state entries look like x=1/2");
        auto trim = [](std::string s) {
            s.erase(0, s.find_first_not_of(' '));
            s.erase(s.find_last_not_of(' ') + 1);
            return s;
        };
        try {
            w[trim(item.substr(0, eq))] = Rational::parse(trim(item.substr(eq + 1)));
        } catch (const std::exception&) {
            throw UsageError("bad value in state entry '" + item + "'");
        }
    }
    return w;
}

json blames_json(const std::vector<Blame>& bs) {
    json a = json::array();
    for (const auto& b : bs) a.push_back({{"path", b.path}, {"reason", to_string(b.reason)}});
    return a;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"robust differential dynamic logic toolkit"};
    app.require_subcommand(1);
    RunConfig cfg;
    if (const char* s = std::getenv("RDL_SEED")) cfg.seed = std::strtoull(s, nullptr, 10);

    auto add_io = [&](CLI::App* sub) {
        sub->add_option("input", cfg.input, "input file ('-' for stdin)");
        sub->add_option("-e,--expr", cfg.expr, "inline input text");
        sub->add_option("-o,--output", cfg.output, "output file");
    };

    auto* parse = app.add_subcommand("parse", "echo the canonical pretty form");
    std::string kind = "formula";
    add_io(parse);
    parse->add_option("--kind", kind, "formula, program, term or sequent")
        ->check(CLI::IsMember({"formula", "program", "term", "sequent"}));

    auto* frag = app.add_subcommand("fragment", "classify and check membership in rrdL");
    std::string side = "strict";
    bool time_bound = false;
    add_io(frag);
    frag->add_option("--side", side, "strict or weak")->check(CLI::IsMember({"strict", "weak"}));
    frag->add_flag("--allow-time-bound", time_bound, "accept psi & tau <= k weak domains");

    auto* rank = app.add_subcommand("rank", "ordinal rank in Cantor normal form");
    std::string scheme = "literal";
    add_io(rank);
    rank->add_option("--scheme", scheme, "literal or repaired")->check(CLI::IsMember({"literal", "repaired"}));

    auto* prv = app.add_subcommand("prove", "search for a certificate");
    Schedule sched;
    add_io(prv);
    prv->add_option("--max-rounds", sched.max_rounds)->check(CLI::PositiveNumber);
    prv->add_option("--max-nodes", sched.max_nodes)->check(CLI::PositiveNumber);
    prv->add_option("--max-seconds", sched.max_seconds)->check(CLI::PositiveNumber);
    prv->add_option("--oracle-depth", sched.oracle_depth_max)->check(CLI::PositiveNumber);
    prv->add_option("--jobs", cfg.jobs, "worker count")->check(CLI::PositiveNumber);

    auto* chk = app.add_subcommand("check", "replay a certificate");
    add_io(chk);
    chk->add_option("--jobs", cfg.jobs, "worker count")->check(CLI::PositiveNumber);

    auto* sim = app.add_subcommand("simulate", "sampled truth and openness margins");
    std::string state_text;
    int samples = 0;
    double range = 3;
    add_io(sim);
    sim->add_option("--state", state_text, "x=1,y=1/2");
    sim->add_option("--samples", samples, "additionally evaluate at N random grid states")->check(CLI::NonNegativeNumber);
    sim->add_option("--range", range, "half-width of the random state box")->check(CLI::PositiveNumber);
    sim->add_option("--seed", cfg.seed, "overrides RDL_SEED");

    auto* dec = app.add_subcommand("decide", "raw interval oracle on a sequent 'A, B ==> C'");
    int depth = 40;
    add_io(dec);
    dec->add_option("--depth", depth)->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        std::string text = read_input(cfg);
        if (cfg.jobs > 1) std::cerr << "note: search and checking run sequentially; --jobs ignored\n";

        if (parse->parsed()) {
            std::string out;
            if (kind == "formula") out = pretty(parse_formula(text));
            else if (kind == "program") out = pretty(parse_program(text));
            else if (kind == "term") out = pretty(parse_term(text));
            else out = parse_sequent(text).str();
            emit(cfg, out + "\n");
            return kOk;
        }

        if (frag->parsed()) {
            FormulaPtr f = parse_formula(text);
            auto cls = classify_formula(f);
            FragmentOptions opts;
            opts.allow_time_bound = time_bound;
            auto r = in_rrdl(f, side == "strict" ? Side::Strict : Side::Weak, opts);
            emit_json(cfg, {{"format", "rdl-fragment/1"},
                            {"class", to_string(cls.cls)},
                            {"class_blames", blames_json(cls.blames)},
                            {"side", side},
                            {"in_rrdl", r.ok},
                            {"blames", blames_json(r.blames)}});
            return r.ok ? kOk : kNegative;
        }

        if (rank->parsed()) {
            FormulaPtr f = parse_formula(text);
            auto s = scheme == "literal" ? RankScheme::Literal : RankScheme::Repaired;
            emit_json(cfg, {{"format", "rdl-rank/1"}, {"scheme", scheme}, {"rank", rank_formula(f, s).str()}});
            return kOk;
        }

        if (prv->parsed()) {
            FormulaPtr f = parse_formula(text);
            ProveResult r;
            try {
                r = prove(f, sched);
            } catch (const NotInFragment& e) {
                std::cerr << "not in fragment: " << e.what() << "\n";
                for (const auto& b : e.blames) std::cerr << "  " << path_str(b.path) << " " << to_string(b.reason) << "\n";
                return kNegative;
            }
            if (!r.certificate) {
                std::cerr << frontier_report(*r.timeout, r.stats);
                return kBudget;
            }
            emit_json(cfg, certificate_to_json(*r.certificate));
            std::cerr << "proved: " << proof_size(r.certificate->tree) << " nodes, round " << r.stats.rounds - 1
                      << ", " << r.stats.oracle_calls << " oracle calls\n";
            return kOk;
        }

        if (chk->parsed()) {
            json j;
            try {
                j = json::parse(text);
            } catch (const json::exception& e) {
                std::cerr << "malformed certificate: " << e.what() << "\n";
                return kNegative;
            }
            CheckResult r = check_certificate_json(j);
            emit_json(cfg, {{"format", "rdl-check/1"},
                            {"accepted", r.accepted},
                            {"reason", r.reason},
                            {"path", r.path}});
            return r.accepted ? kOk : kNegative;
        }

        if (sim->parsed()) {
            FormulaPtr f = parse_formula(text);
            State w = parse_state(state_text);
            for (const auto& v : free_vars(f))
                if (!w.count(v)) throw UsageError("state does not assign " + v);
            Truth t = sample_truth(w, f);
            auto op = probe_openness(f, w, default_radii());
            json tested = json::array();
            for (const auto& [r, ok] : op.tested) tested.push_back({{"radius", r.str()}, {"all_true", ok}});
            json j{{"format", "rdl-simulate/1"},
                   {"truth", to_string(t)},
                   {"openness_margin", op.margin.str()},
                   {"radii_tested", tested},
                   {"seed", cfg.seed}};
            if (samples > 0) {
                std::mt19937_64 rng(cfg.seed);
                std::uniform_int_distribution<int> pick(-64, 64);
                json rows = json::array();
                for (int i = 0; i < samples; ++i) {
                    State v = w;
                    for (const auto& x : free_vars(f)) v[x] = Rational::from_double(range * pick(rng) / 64.0);
                    json st = json::object();
                    for (const auto& [k, q] : v) st[k] = q.str();
                    rows.push_back({{"state", st}, {"truth", to_string(sample_truth(v, f))}});
                }
                j["samples"] = rows;
            }
            emit_json(cfg, j);
            return t == Truth::True ? kOk : kNegative;
        }

        if (dec->parsed()) {
            Sequent s = parse_sequent(text);
            OracleBudget b;
            b.max_depth = depth;
            DecideResult r = decide_sequent(s, b);
            json j{{"format", "rdl-decide/1"}, {"verdict", to_string(r.verdict)}, {"note", r.note}};
            if (r.tree) {
                j["tree_size"] = tree_size(r.tree);
                j["tree_depth"] = tree_depth(r.tree);
            }
            if (!r.point.empty()) {
                json p = json::object();
                for (const auto& [k, q] : r.point) p[k] = q.str();
                j["counterexample"] = p;
            }
            emit_json(cfg, j);
            if (r.verdict == OracleVerdict::Valid) return kOk;
            return r.verdict == OracleVerdict::Counterexample ? kNegative : kBudget;
        }
    } catch (const UsageError& e) {
        std::cerr << "usage: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNegative;
    }
    return kUsage;
}
