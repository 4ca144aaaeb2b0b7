#include "cli.hpp"

#include "tbsg/game_io.hpp"
#include "tbsg/generators.hpp"
#include "tbsg/kernels.hpp"
#include "tbsg/verification.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace tbsg::cli {
namespace {

struct GenOptions {
    std::size_t n = 5;
    std::string actions = "2";
    std::string support = "2";
    std::string owner = "alternate";
    std::string gamma = "0.9";
    double cost_lo = 0.0;
    double cost_hi = 10.0;
    std::uint64_t seed = 0;
    std::string family;
    std::size_t width = 3;
    std::size_t height = 3;
    std::string out;
};

struct SolveOptions {
    std::string game;
    std::string method = "si";
    double epsilon = 1e-6;
    std::size_t max_iters = 0;
    std::string sigma0;
    bool exact = false;
    std::string trace;
};

struct CheckOptions {
    std::string game;
    std::string profile;
    std::string profile2;
    bool identities = false;
    bool lemmas = false;
    bool validate = false;
    std::size_t samples = 100;
    std::uint64_t seed = 0;
    bool exact = false;
    std::string csv;
};

struct BenchOptions {
    std::string ns = "2,4,8";
    std::string gammas = "0.5,0.9";
    std::string actions = "2";
    std::string support = "2";
    std::string owner = "alternate";
    std::string seeds = "0:50";
    double cost_lo = 0.0;
    double cost_hi = 10.0;
    bool exact = false;
    std::string out;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, sep))
        if (!item.empty()) out.push_back(item);
    return out;
}

std::uint64_t to_count(const std::string& text) {
    try {
        std::size_t used = 0;
        auto value = std::stoull(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return value;
    } catch (const std::exception&) {
        throw UsageError("expected a non-negative integer, got '" + text + "'");
    }
}

/// "3" or "2:4" (inclusive).
CountRange parse_count_range(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos) {
        auto v = to_count(text);
        return {v, v};
    }
    return {to_count(text.substr(0, colon)), to_count(text.substr(colon + 1))};
}

/// "alternate", "mdp", "random" or "random:p".
std::pair<OwnerRule, double> parse_owner_rule(const std::string& text) {
    if (text == "alternate") return {OwnerRule::alternate, 0.5};
    if (text == "mdp") return {OwnerRule::mdp, 0.5};
    if (text.rfind("random", 0) == 0) {
        if (text == "random") return {OwnerRule::random, 0.5};
        if (text[6] == ':') {
            try {
                return {OwnerRule::random, std::stod(text.substr(7))};
            } catch (const std::exception&) {
            }
        }
    }
    throw UsageError("owner rule must be alternate, mdp, random or random:p");
}

/// "0:50" (half-open) or a comma list.
std::vector<std::uint64_t> parse_seeds(const std::string& text) {
    std::vector<std::uint64_t> out;
    if (auto colon = text.find(':'); colon != std::string::npos) {
        auto lo = to_count(text.substr(0, colon));
        auto hi = to_count(text.substr(colon + 1));
        for (auto s = lo; s < hi; ++s) out.push_back(s);
        return out;
    }
    for (const auto& s : split(text, ',')) out.push_back(to_count(s));
    return out;
}

template <class T>
std::string join(const std::vector<T>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ' ';
        out += Num<T>::format(values[i]);
    }
    return out;
}

std::string join_ids(const std::vector<ActionId>& ids) {
    std::string out;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(ids[i]);
    }
    return out;
}

std::string fixed(double x, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, x);
    return buf;
}

template <class T>
Strategy initial_sigma(const BasicGame<T>& game, const std::string& path) {
    if (path.empty()) return first_strategy(game, Player::min);
    auto ids = parse_action_list(read_text_file(path));
    if (ids.size() != game.num_states())
        throw UsageError("sigma0 lists " + std::to_string(ids.size()) + " actions for " +
                         std::to_string(game.num_states()) + " states");
    Strategy s{Player::min, std::vector<ActionId>(game.num_states(), kNoAction)};
    for (StateId i = 0; i < game.num_states(); ++i)
        if (game.owner(i) == Player::min) s.choice[i] = ids[i];
    require_strategy(game, s);
    return s;
}

template <class T>
StrategyProfile load_profile(const BasicGame<T>& game, const std::string& path) {
    auto ids = parse_action_list(read_text_file(path));
    require_profile(game, ids);
    return ids;
}

// ---------------------------------------------------------------------------
// gen

int cmd_gen(const GenOptions& o, std::ostream& out) {
    ExactGame game;
    if (!o.family.empty()) {
        FamilyParams p;
        p.n = o.n;
        p.actions = parse_count_range(o.actions).hi;
        p.width = o.width;
        p.height = o.height;
        p.gamma = o.gamma;
        p.seed = o.seed;
        game = family(o.family, p);
    } else {
        GenSpec spec;
        spec.n = o.n;
        spec.actions_per_state = parse_count_range(o.actions);
        spec.support_size = parse_count_range(o.support);
        spec.support_size.lo = std::min(spec.support_size.lo, o.n);
        spec.support_size.hi = std::min(spec.support_size.hi, o.n);
        std::tie(spec.owner_rule, spec.player2_probability) = parse_owner_rule(o.owner);
        spec.gamma = o.gamma;
        spec.cost_lo = o.cost_lo;
        spec.cost_hi = o.cost_hi;
        spec.seed = o.seed;
        game = generate(spec);
    }
    const auto text = serialize_game(game);
    if (o.out.empty())
        out << text;
    else
        write_text_file(o.out, text);
    return kSuccess;
}

// ---------------------------------------------------------------------------
// solve

template <class T>
void write_trace_csv(const std::string& path, const BasicGame<T>& game, const SITrace<T>& trace) {
    std::ostringstream csv;
    csv << "k";
    for (StateId i : game.states_of(Player::min)) csv << ",sigma_" << i;
    for (StateId i : game.states_of(Player::max)) csv << ",tau_" << i;
    for (StateId i = 0; i < game.num_states(); ++i) csv << ",v_" << i;
    csv << '\n';
    for (std::size_t k = 0; k < trace.steps.size(); ++k) {
        const auto& step = trace.steps[k];
        csv << k;
        for (StateId i : game.states_of(Player::min)) csv << ',' << step.sigma.choice[i];
        for (StateId i : game.states_of(Player::max)) csv << ',' << step.tau.choice[i];
        for (const auto& v : step.values) csv << ',' << Num<T>::format(v);
        csv << '\n';
    }
    write_text_file(path, csv.str());
}

template <class T>
void write_vi_csv(const std::string& path, const VIResult<T>& result) {
    std::ostringstream csv;
    const std::size_t n = result.final_values.size();
    csv << "k";
    for (std::size_t i = 0; i < n; ++i) csv << ",u_" << i;
    csv << '\n';
    for (std::size_t k = 0; k < result.iterates.size(); ++k) {
        csv << k;
        for (const auto& v : result.iterates[k]) csv << ',' << Num<T>::format(v);
        csv << '\n';
    }
    write_text_file(path, csv.str());
}

template <class T>
int report_solution(const BasicGame<T>& game, const StrategyProfile& profile, const ValueVector<T>& values,
                    std::ostream& out) {
    auto opt = check_optimality(game, profile);
    out << "profile: " << join_ids(profile) << '\n';
    out << "values: " << join(values) << '\n';
    out << "optimal: " << (opt.optimal ? "yes" : "no") << '\n';
    if (!opt.optimal) out << "profitable switch: action " << *opt.witness << '\n';
    return opt.optimal ? kSuccess : kCheckFailed;
}

template <class T>
int solve_impl(const SolveOptions& o, std::ostream& out, std::ostream& err) {
    const auto game = load_game<T>(o.game);
    out << "method: " << o.method << '\n' << "mode: " << Num<T>::name << '\n';

    if (o.method == "vi") {
        std::optional<std::size_t> cap;
        if (o.max_iters > 0) cap = o.max_iters;
        if (o.epsilon == 0.0 && !cap) throw UsageError("--epsilon 0 needs --max-iters");
        auto result = value_iteration(game, ValueVector<T>(game.num_states(), T(0)), o.epsilon, cap,
                                      !o.trace.empty());
        if (!o.trace.empty()) write_vi_csv(o.trace, result);
        out << "iterations: " << result.iterations << '\n';
        out << "last delta: " << Num<T>::format(result.last_delta) << '\n';
        out << "converged: " << (result.converged ? "yes" : "no") << '\n';
        if (!result.converged) {
            out << "values: " << join(result.final_values) << '\n';
            err << "value iteration did not reach epsilon within " << result.iterations << " iterations\n";
            return kNotConverged;
        }
        out << "values: " << join(result.final_values) << '\n';
        auto profile = extract_profile(game, result.final_values);
        auto opt = check_optimality(game, profile);
        out << "profile: " << join_ids(profile) << '\n';
        out << "optimal: " << (opt.optimal ? "yes" : "no") << '\n';
        return opt.optimal ? kSuccess : kCheckFailed;
    }

    if (o.method == "brute") {
        auto result = brute_force_solve(game);
        out << "profiles enumerated: " << result.enumerated << '\n';
        out << "optimal profiles: " << result.optimal_profiles << '\n';
        return report_solution(game, result.profile, result.values, out);
    }

    if (o.method == "si" || o.method == "howard") {
        std::pair<StrategyProfile, SITrace<T>> solved;
        if (o.method == "si") {
            solved = strategy_iteration(game, initial_sigma(game, o.sigma0));
        } else {
            StrategyProfile pi0 = combine(first_strategy(game, Player::min), first_strategy(game, Player::max));
            if (!o.sigma0.empty()) pi0 = load_profile(game, o.sigma0);
            solved = howard_policy_iteration(game, pi0);
        }
        const auto& [profile, trace] = solved;
        if (!o.trace.empty()) write_trace_csv(o.trace, game, trace);
        auto bound = bound_report(trace, game);
        out << "iterations: " << trace.iterations << '\n';
        out << "bound: " << fixed(bound.theoretical_bound, 6) << " (ratio " << fixed(bound.ratio(), 6) << ")\n";
        return report_solution(game, profile, trace.final_values(), out);
    }

    throw UsageError("unknown method '" + o.method + "' (expected vi, si, howard or brute)");
}

// ---------------------------------------------------------------------------
// check

template <class T>
StrategyProfile random_profile(const BasicGame<T>& game, std::mt19937_64& rng) {
    StrategyProfile p(game.num_states());
    for (StateId i = 0; i < game.num_states(); ++i) {
        const auto& set = game.actions_at(i);
        p[i] = set[uniform_below(rng, set.size())];
    }
    return p;
}

struct CsvRows {
    std::ostringstream text;
    CsvRows() { text << "check,subject,value,status\n"; }
    void add(const std::string& check, const std::string& subject, const std::string& value, bool pass) {
        text << check << ',' << subject << ',' << value << ',' << (pass ? "pass" : "fail") << '\n';
    }
};

template <class T>
bool check_identities_cmd(const BasicGame<T>& game, const CheckOptions& o, std::ostream& out, CsvRows& csv) {
    std::vector<std::pair<StrategyProfile, StrategyProfile>> pairs;
    if (!o.profile.empty()) {
        auto pi = load_profile(game, o.profile);
        auto pi2 = o.profile2.empty() ? pi : load_profile(game, o.profile2);
        pairs.emplace_back(pi, pi2);
    } else {
        std::mt19937_64 rng(o.seed);
        for (std::size_t s = 0; s < o.samples; ++s) {
            auto a = random_profile(game, rng);
            auto b = random_profile(game, rng);
            pairs.emplace_back(std::move(a), std::move(b));
        }
    }
    std::map<std::string, std::pair<T, bool>> worst;
    std::vector<std::string> order;
    for (const auto& [pi, pi2] : pairs) {
        auto report = check_identities(game, pi, pi2);
        for (const auto& c : report.checks) {
            auto [it, fresh] = worst.try_emplace(c.name, c.residual, c.holds);
            if (fresh) order.push_back(c.name);
            if (c.residual > it->second.first) it->second.first = c.residual;
            it->second.second = it->second.second && c.holds;
        }
    }
    bool all = true;
    out << "identities over " << pairs.size() << " profile pair(s):\n";
    for (const auto& name : order) {
        const auto& [residual, holds] = worst[name];
        out << "  " << name << ": max residual " << Num<T>::format(residual) << ' '
            << (holds ? "pass" : "FAIL") << '\n';
        csv.add("identity", name, Num<T>::format(residual), holds);
        all = all && holds;
    }
    return all;
}

template <class T>
bool check_lemmas_cmd(const BasicGame<T>& game, const CheckOptions& o, std::ostream& out, CsvRows& csv) {
    (void)o;
    auto [profile, trace] = strategy_iteration(game, first_strategy(game, Player::min));
    auto audit = audit_trace(trace, game);
    const auto& b = audit.bound;
    out << "strategy iteration: " << trace.iterations << " iterations, final profile " << join_ids(profile)
        << '\n';
    out << "  monotone improvement: " << (audit.monotone ? "pass" : "FAIL") << '\n';
    out << "  geometric convergence: " << (audit.geometric ? "pass" : "FAIL") << '\n';
    out << "  optimality: " << (audit.optimal ? "pass" : "FAIL") << '\n';
    out << "  gap lemmas: " << audit.gap_triples << " triples, " << audit.gap_checks_applied
        << " applicable checks, " << audit.gap_violations << " violations\n";
    out << "  action elimination: L = " << fixed(audit.elimination.window, 6) << ", "
        << audit.elimination.violations() << " violations\n";
    for (const auto& e : audit.elimination.entries) {
        out << "    k=" << e.k << " window>=" << e.window_start << ' ' << status_name(e.status);
        if (e.witness) out << " action " << *e.witness;
        out << '\n';
    }
    out << "  bound: " << b.observed_iterations << " <= " << fixed(b.theoretical_bound, 6) << ' '
        << (b.satisfied ? "pass" : "FAIL") << '\n';
    csv.add("trace", "monotone", "", audit.monotone);
    csv.add("trace", "geometric", "", audit.geometric);
    csv.add("trace", "optimal", "", audit.optimal);
    csv.add("lemma", "gap", std::to_string(audit.gap_violations), audit.gap_violations == 0);
    csv.add("lemma", "action-elimination", std::to_string(audit.elimination.violations()),
            audit.elimination.violations() == 0);
    csv.add("bound", "iterations", std::to_string(b.observed_iterations) + "/" + fixed(b.theoretical_bound, 6),
            b.satisfied);
    return audit.passed();
}

template <class T>
int check_impl(const CheckOptions& o, std::ostream& out, std::ostream& err) {
    CsvRows csv;
    bool pass = true;
    const std::string text = read_text_file(o.game);
    if (o.validate) {
        auto report = validate(parse_game_unchecked<T>(text));
        for (const auto& v : report) {
            out << "violation: " << v.message << '\n';
            csv.add("validate", "game", v.message, false);
        }
        out << "validate: " << (report.empty() ? "pass" : "FAIL") << '\n';
        if (report.empty()) csv.add("validate", "game", "", true);
        if (!report.empty()) {
            if (!o.csv.empty()) write_text_file(o.csv, csv.text.str());
            return kInvalidGame;
        }
    }
    if (o.identities || o.lemmas || !o.profile.empty()) {
        const auto game = parse_game<T>(text);
        if (o.identities) pass = check_identities_cmd(game, o, out, csv) && pass;
        if (o.lemmas) pass = check_lemmas_cmd(game, o, out, csv) && pass;
        if (!o.identities && !o.profile.empty()) {
            auto profile = load_profile(game, o.profile);
            auto opt = check_optimality(game, profile);
            out << "optimality of " << join_ids(profile) << ": " << (opt.optimal ? "pass" : "FAIL");
            if (!opt.optimal) out << " (profitable switch: action " << *opt.witness << ")";
            out << '\n';
            csv.add("optimality", "profile", join_ids(profile), opt.optimal);
            pass = pass && opt.optimal;
        }
    }
    if (!o.csv.empty()) write_text_file(o.csv, csv.text.str());
    if (!pass) err << "one or more checks failed\n";
    return pass ? kSuccess : kCheckFailed;
}

// ---------------------------------------------------------------------------
// bench

struct RunRecord {
    std::string instance;
    std::uint64_t seed = 0;
    std::size_t n = 0;
    std::size_t m = 0;
    std::string gamma;
    std::string solver;
    std::size_t iterations = 0;
    double bound = 0.0;
    double bound_ratio = 0.0;
    double wall_time_ms = 0.0;
    bool converged = false;
    bool optimal = false;
    bool bound_ok = false;
    std::string error;
};

struct BenchJob {
    GenSpec spec;
    std::string instance;
};

template <class T>
RunRecord run_job(const BenchJob& job) {
    RunRecord r;
    r.instance = job.instance;
    r.seed = job.spec.seed;
    r.n = job.spec.n;
    r.gamma = job.spec.gamma;
    const bool mdp = job.spec.owner_rule == OwnerRule::mdp;
    r.solver = mdp ? "howard" : "si";
    try {
        const auto exact = generate(job.spec);
        const auto game = [&] {
            if constexpr (Num<T>::exact)
                return exact;
            else
                return convert_game<double>(exact);
        }();
        r.m = game.num_actions();
        const auto start = std::chrono::steady_clock::now();
        auto solved = mdp ? howard_policy_iteration(
                                game, combine(first_strategy(game, Player::min), first_strategy(game, Player::max)))
                          : strategy_iteration(game, first_strategy(game, Player::min));
        r.wall_time_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        const auto& trace = solved.second;
        auto b = bound_report(trace, game);
        r.iterations = trace.iterations;
        r.bound = b.theoretical_bound;
        r.bound_ratio = b.ratio();
        r.bound_ok = b.satisfied;
        r.converged = true;
        r.optimal = check_optimality(game, solved.first).optimal;
    } catch (const std::exception& e) {
        r.error = e.what();
        r.bound = iteration_bound(r.n, r.m, Num<double>::parse(r.gamma));
    }
    return r;
}

std::size_t worker_count() {
    if (const char* env = std::getenv("TBSG_WORKERS")) {
        try {
            auto w = std::stoul(env);
            if (w > 0) return w;
        } catch (const std::exception&) {
        }
    }
    return 1;
}

template <class T>
int bench_impl(const BenchOptions& o, std::ostream& out, std::ostream& err) {
    auto [rule, p2] = parse_owner_rule(o.owner);
    std::vector<BenchJob> jobs;
    const auto seeds = parse_seeds(o.seeds);
    for (const auto& n_text : split(o.ns, ','))
        for (const auto& a_text : split(o.actions, ','))
            for (const auto& gamma : split(o.gammas, ','))
                for (auto seed : seeds) {
                    BenchJob job;
                    job.spec.n = to_count(n_text);
                    job.spec.actions_per_state = parse_count_range(a_text);
                    job.spec.support_size = parse_count_range(o.support);
                    job.spec.support_size.lo = std::min(job.spec.support_size.lo, job.spec.n);
                    job.spec.support_size.hi = std::min(job.spec.support_size.hi, job.spec.n);
                    job.spec.owner_rule = rule;
                    job.spec.player2_probability = p2;
                    job.spec.gamma = gamma;
                    job.spec.cost_lo = o.cost_lo;
                    job.spec.cost_hi = o.cost_hi;
                    job.spec.seed = seed;
                    validate_spec(job.spec);
                    job.instance = "n" + n_text + "-a" + a_text + "-g" + gamma + "-s" + std::to_string(seed);
                    jobs.push_back(std::move(job));
                }

    std::vector<RunRecord> records(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) records[i] = run_job<T>(jobs[i]);
    };
    const std::size_t workers = std::min(worker_count(), std::max<std::size_t>(jobs.size(), 1));
    std::vector<std::thread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    std::ostringstream csv;
    csv << "instance,seed,n,m,gamma,solver,iterations,bound,bound_ratio,wall_time_ms,converged,optimal\n";
    std::size_t violations = 0, failures = 0;
    double max_ratio = 0.0;
    for (const auto& r : records) {
        csv << r.instance << ',' << r.seed << ',' << r.n << ',' << r.m << ',' << r.gamma << ',' << r.solver
            << ',' << r.iterations << ',' << fixed(r.bound, 6) << ',' << fixed(r.bound_ratio, 6) << ','
            << fixed(r.wall_time_ms, 3) << ',' << (r.converged ? 1 : 0) << ',' << (r.optimal ? 1 : 0) << '\n';
        if (!r.error.empty()) err << r.instance << ": " << r.error << '\n';
        if (r.converged && !r.bound_ok) ++violations;
        if (!r.converged || !r.optimal) ++failures;
        max_ratio = std::max(max_ratio, r.bound_ratio);
    }
    if (o.out.empty())
        out << csv.str();
    else
        write_text_file(o.out, csv.str());
    (o.out.empty() ? err : out) << "runs: " << records.size() << ", bound violations: " << violations
                                << ", failed runs: " << failures << ", max bound ratio: " << fixed(max_ratio, 6)
                                << '\n';
    return violations == 0 && failures == 0 ? kSuccess : kCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Solver and verifier for discounted two-player turn-based stochastic games"};
    app.require_subcommand(1);

    GenOptions gen;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a seeded game instance");
    gen_cmd->add_option("--n", gen.n, "Number of states (chain/complete: size)");
    gen_cmd->add_option("--actions", gen.actions, "Actions per state: k or lo:hi");
    gen_cmd->add_option("--support", gen.support, "Transition support size: k or lo:hi (capped at n)");
    gen_cmd->add_option("--owner", gen.owner, "alternate | mdp | random[:p]");
    gen_cmd->add_option("--gamma", gen.gamma, "Discount factor as a decimal string");
    gen_cmd->add_option("--cost-lo", gen.cost_lo, "Smallest cost");
    gen_cmd->add_option("--cost-hi", gen.cost_hi, "Largest cost");
    gen_cmd->add_option("--seed", gen.seed, "Generator seed");
    gen_cmd->add_option("--family", gen.family, "Structured family: chain | complete | mdp-grid");
    gen_cmd->add_option("--width", gen.width, "mdp-grid width");
    gen_cmd->add_option("--height", gen.height, "mdp-grid height");
    gen_cmd->add_option("--out", gen.out, "Output path (stdout when omitted)");

    SolveOptions solve;
    auto* solve_cmd = app.add_subcommand("solve", "Solve a game");
    solve_cmd->add_option("game", solve.game, "Game file")->required();
    solve_cmd->add_option("--method", solve.method, "vi | si | howard | brute")->capture_default_str();
    solve_cmd->add_option("--epsilon", solve.epsilon, "Value iteration stopping threshold")->capture_default_str();
    solve_cmd->add_option("--max-iters", solve.max_iters, "Value iteration cap (default: a priori bound)");
    solve_cmd->add_option("--sigma0", solve.sigma0, "Initial profile file (JSON array of action ids)");
    solve_cmd->add_flag("--exact", solve.exact, "Exact rational arithmetic");
    solve_cmd->add_option("--trace", solve.trace, "Write the iteration trace as CSV");

    CheckOptions check;
    auto* check_cmd = app.add_subcommand("check", "Validate a game and verify identities and lemmas");
    check_cmd->add_option("game", check.game, "Game file")->required();
    check_cmd->add_option("--profile", check.profile, "Profile file; alone, checks its optimality");
    check_cmd->add_option("--profile2", check.profile2, "Second profile for --identities");
    check_cmd->add_flag("--identities", check.identities, "Evaluation identities (random pairs by default)");
    check_cmd->add_flag("--lemmas", check.lemmas, "Run strategy iteration and audit its trace");
    check_cmd->add_flag("--validate", check.validate, "Report every broken game invariant");
    check_cmd->add_option("--samples", check.samples, "Random profile pairs for --identities")->capture_default_str();
    check_cmd->add_option("--seed", check.seed, "Seed for random profiles");
    check_cmd->add_flag("--exact", check.exact, "Exact rational arithmetic");
    check_cmd->add_option("--csv", check.csv, "Also write the report as CSV");

    BenchOptions bench;
    auto* bench_cmd = app.add_subcommand("bench", "Sweep generated games and record iteration counts");
    bench_cmd->add_option("--n", bench.ns, "Comma list of state counts")->capture_default_str();
    bench_cmd->add_option("--gamma", bench.gammas, "Comma list of discount factors")->capture_default_str();
    bench_cmd->add_option("--actions", bench.actions, "Comma list of actions per state (k or lo:hi)")
        ->capture_default_str();
    bench_cmd->add_option("--support", bench.support, "Support size: k or lo:hi")->capture_default_str();
    bench_cmd->add_option("--owner", bench.owner, "alternate | mdp | random[:p]")->capture_default_str();
    bench_cmd->add_option("--seeds", bench.seeds, "lo:hi (half-open) or a comma list; may be empty")
        ->capture_default_str();
    bench_cmd->add_option("--cost-lo", bench.cost_lo, "Smallest cost");
    bench_cmd->add_option("--cost-hi", bench.cost_hi, "Largest cost");
    bench_cmd->add_flag("--exact", bench.exact, "Exact rational arithmetic");
    bench_cmd->add_option("--out", bench.out, "CSV output path (stdout when omitted)");

    std::vector<char*> argv;
    std::vector<std::string> storage(args);
    for (auto& a : storage) argv.push_back(a.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsageError;
    }

    try {
        if (gen_cmd->parsed()) return cmd_gen(gen, out);
        if (solve_cmd->parsed())
            return solve.exact ? solve_impl<Rational>(solve, out, err) : solve_impl<double>(solve, out, err);
        if (check_cmd->parsed()) {
            if (!check.validate && !check.identities && !check.lemmas && check.profile.empty())
                check.validate = true;
            return check.exact ? check_impl<Rational>(check, out, err) : check_impl<double>(check, out, err);
        }
        if (bench_cmd->parsed())
            return bench.exact ? bench_impl<Rational>(bench, out, err) : bench_impl<double>(bench, out, err);
    } catch (const GameParseError& e) {
        err << "error: " << e.what() << '\n';
        return e.kind() == GameParseError::Kind::semantic ? kInvalidGame : kUsageError;
    } catch (const PreconditionError& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidGame;
    } catch (const GuardExceeded& e) {
        err << "error: " << e.what() << '\n';
        return kGuardExceeded;
    } catch (const NumericalStall& e) {
        err << "error: " << e.what() << '\n';
        return kNumericalStall;
    } catch (const InternalError& e) {
        err << "internal error: " << e.what() << '\n';
        return kInternalError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }
    return kUsageError;
}

}  // namespace tbsg::cli
