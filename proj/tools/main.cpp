// thicket command-line tool: concept-class dimensions, online prediction
// games, expert-advice runs, noisy-label experiments, PAC estimation and
// class generators, wired for scripted use. Machine-readable output goes to
// stdout (or -o), human summaries and config echoes for CSV commands go to
// stderr. Exit codes: 0 ok, 1 contract/validation error, 2 resource cap.
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "thicket/dimensions.hpp"
#include "thicket/errors.hpp"
#include "thicket/experts.hpp"
#include "thicket/game.hpp"
#include "thicket/json_io.hpp"
#include "thicket/noise.hpp"
#include "thicket/pac.hpp"
#include "thicket/version.hpp"
#include "thicket/zoo.hpp"

namespace {

using nlohmann::json;

void write_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write output file: " + path);
    out << text;
}

void emit_json(const std::string& path, json j) {
    j["version"] = thicket::k_version;
    write_text(path, thicket::stable_dump(j) + "\n");
}

std::uint64_t effective_seed(std::optional<std::uint64_t> given) {
    if (given) return *given;
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) values.push_back(std::stoi(item));
    if (values.empty()) throw std::invalid_argument("expected a comma-separated integer list");
    return values;
}

std::vector<int> load_schedule_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open schedule file: " + path);
    std::vector<int> schedule;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line == "example") continue;
        schedule.push_back(std::stoi(line));
    }
    return schedule;
}

// ---------------------------------------------------------------------------
// dim

struct dim_options {
    std::string class_file;
    std::string out;
    bool want_ldim = false;
    bool want_vc = false;
    bool want_rank = false;
    int shatter_height = -1;
};

int run_dim(const dim_options& opt) {
    thicket::concept_class cls = thicket::load_class_file(opt.class_file);
    bool any = opt.want_ldim || opt.want_vc || opt.want_rank || opt.shatter_height >= 0;

    json out;
    out["config"] = {{"subcommand", "dim"},
                     {"class", opt.class_file},
                     {"ldim", opt.want_ldim},
                     {"vc", opt.want_vc},
                     {"rank", opt.want_rank},
                     {"shatter", opt.shatter_height}};
    if (opt.want_ldim || !any) out["ldim"] = thicket::littlestone_dim(cls);
    if (opt.want_vc || !any) out["vc"] = thicket::vc_dim(cls);
    if (opt.want_rank)
        out["rank"] = thicket::shelah_rank(thicket::rank_region::from_class(cls));
    if (opt.shatter_height >= 0)
        out["shatter"] = thicket::shatter_report_to_json(
            thicket::thicket_shatter(cls, opt.shatter_height));
    emit_json(opt.out, out);
    std::cerr << "dim: " << cls.size() << " concepts over " << cls.domain_size()
              << " points\n";
    return 0;
}

// ---------------------------------------------------------------------------
// zoo

struct zoo_generate_options {
    std::string family;
    std::optional<int> n, m, p;
    std::string poly;
    std::optional<std::uint64_t> seed;
    std::string out;
};

int run_zoo_generate(const zoo_generate_options& opt) {
    std::map<std::string, std::string> params;
    if (opt.n) params["n"] = std::to_string(*opt.n);
    if (opt.m) params["m"] = std::to_string(*opt.m);
    if (opt.p) params["p"] = std::to_string(*opt.p);
    if (!opt.poly.empty()) params["poly"] = opt.poly;
    std::uint64_t seed = 0;
    if (opt.family == "random") {
        seed = effective_seed(opt.seed);
        params["seed"] = std::to_string(seed);
    }

    thicket::concept_class cls = thicket::zoo_generate(opt.family, params);
    std::string text = thicket::stable_dump(thicket::class_to_json(cls)) + "\n";
    write_text(opt.out, text);

    json config = {{"subcommand", "zoo generate"}, {"family", opt.family}};
    for (const auto& [k, v] : params) config[k] = v;
    config["num_concepts"] = cls.size();
    config["domain_size"] = cls.domain_size();
    config["version"] = thicket::k_version;
    std::cerr << "zoo generate: " << cls.size() << " concepts over "
              << cls.domain_size() << " points\n"
              << thicket::stable_dump(config) << "\n";
    return 0;
}

struct zoo_growth_options {
    std::string family;
    std::string sizes = "4,8,16,32";
    std::string out;
    bool greedy = false;
};

int run_zoo_growth(const zoo_growth_options& opt) {
    std::vector<int> sizes = parse_int_list(opt.sizes);
    std::ostringstream csv;
    csv << "size,num_concepts,vc,ldim,half_graph\n";
    for (int s : sizes) {
        std::map<std::string, std::string> params;
        // each family takes its size under its own parameter name
        params["n"] = std::to_string(s);
        params["m"] = std::to_string(s);
        params["p"] = std::to_string(s);
        if (opt.family == "random") params["seed"] = "1";
        if (opt.family == "variety_fibers") params["poly"] = "x-a";
        thicket::concept_class cls = thicket::zoo_generate(opt.family, params);
        thicket::half_graph_options hg_opts;
        hg_opts.greedy = opt.greedy;
        thicket::half_graph_witness hg = thicket::max_half_graph(cls, hg_opts);
        csv << s << ',' << cls.size() << ',' << thicket::vc_dim(cls) << ','
            << thicket::littlestone_dim(cls) << ',' << hg.size << '\n';
    }
    write_text(opt.out, csv.str());

    json config = {{"subcommand", "zoo growth"},
                   {"family", opt.family},
                   {"sizes", opt.sizes},
                   {"greedy", opt.greedy},
                   {"version", thicket::k_version}};
    std::cerr << "zoo growth: " << sizes.size() << " sizes\n"
              << thicket::stable_dump(config) << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// play

struct play_options {
    std::string class_file;
    std::string learner = "soa";
    std::string adversary = "optimal";
    int target = 0;
    bool target_given = false;
    int rounds = -1;
    std::optional<std::uint64_t> seed;
    std::string out;
};

int run_play(const play_options& opt) {
    thicket::concept_class cls = thicket::load_class_file(opt.class_file);
    thicket::learner_kind kind = thicket::learner_kind_from_name(opt.learner);
    std::uint64_t seed = 0;
    if (kind == thicket::learner_kind::random_coin) seed = effective_seed(opt.seed);
    auto l = thicket::make_learner(kind, cls, seed);

    thicket::transcript t;
    json config = {{"subcommand", "play"},
                   {"class", opt.class_file},
                   {"learner", opt.learner},
                   {"adversary", opt.adversary},
                   {"seed", seed},
                   {"version", thicket::k_version}};

    if (opt.adversary == "optimal") {
        int rounds = opt.rounds >= 0
                         ? opt.rounds
                         : thicket::littlestone_dim(cls) + cls.domain_size();
        t = thicket::run_adversarial_game(cls, *l, rounds);
        config["rounds"] = rounds;
    } else if (opt.adversary.rfind("stream:", 0) == 0) {
        if (!opt.target_given)
            throw std::invalid_argument("play: --target is required with a stream adversary");
        std::vector<int> schedule = load_schedule_file(opt.adversary.substr(7));
        t = thicket::run_game(cls, opt.target, schedule, *l);
        config["target"] = opt.target;
    } else if (opt.adversary.rfind("random:", 0) == 0) {
        if (!opt.target_given)
            throw std::invalid_argument("play: --target is required with a random adversary");
        std::uint64_t adv_seed = std::stoull(opt.adversary.substr(7));
        int rounds = opt.rounds >= 0 ? opt.rounds : 2 * cls.domain_size();
        std::vector<int> schedule = thicket::make_schedule(
            thicket::schedule_kind::random_uniform, cls.domain_size(), rounds, adv_seed);
        t = thicket::run_game(cls, opt.target, schedule, *l);
        config["target"] = opt.target;
        config["rounds"] = rounds;
    } else {
        throw std::invalid_argument("unknown adversary: " + opt.adversary);
    }

    write_text(opt.out, thicket::transcript_to_csv(t));
    std::cerr << "play: total_mistakes=" << t.total_mistakes << " rounds="
              << t.rounds.size() << "\n"
              << thicket::stable_dump(config) << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// experts run

struct experts_options {
    std::string class_file;
    std::string sequence_file;
    std::string eta = "auto";
    int horizon = -1;
    bool agnostic = false;
    std::optional<std::uint64_t> sample_seed;
    std::string out;
};

int run_experts(const experts_options& opt) {
    thicket::concept_class cls = thicket::load_class_file(opt.class_file);
    std::vector<thicket::labeled_example> sequence =
        thicket::load_sequence_csv(opt.sequence_file);
    for (const auto& le : sequence)
        if (le.example < 0 || le.example >= cls.domain_size())
            throw std::invalid_argument("experts: sequence example out of range");

    const int horizon = opt.horizon > 0 ? opt.horizon : static_cast<int>(sequence.size());
    if (horizon < static_cast<int>(sequence.size()))
        throw std::invalid_argument("experts: --horizon shorter than the sequence");

    std::optional<double> eta_override;
    if (opt.eta != "auto") eta_override = std::stod(opt.eta);

    thicket::expert_pool pool;
    if (opt.agnostic) {
        pool = thicket::agnostic_experts(cls, horizon, eta_override, thicket::expert_caps{});
    } else {
        double eta = eta_override ? *eta_override
                                  : thicket::tuned_eta(cls.size(), std::max(horizon, 1));
        pool = thicket::class_experts(cls, eta);
    }
    const int n_experts = pool.size();
    const double eta_used = pool.eta;
    thicket::regret_ledger ledger = thicket::wm_run(pool, sequence, opt.sample_seed);

    const double t_rounds = static_cast<double>(sequence.size());
    const int d = thicket::littlestone_dim(cls);
    double bound = opt.agnostic
                       ? std::sqrt(0.5 * d * t_rounds * std::log(std::max(t_rounds, 1.0)))
                       : std::sqrt(0.5 * std::log(static_cast<double>(n_experts)) * t_rounds);

    json out = thicket::regret_ledger_to_json(ledger);
    out["bound"] = bound;
    out["bound_satisfied"] = ledger.regret <= bound;
    // reference asymptotic floor for context; no algorithm here claims it
    out["lower_bound_context"] = std::sqrt(d * t_rounds / 8.0);
    out["n_experts"] = n_experts;
    out["eta"] = eta_used;
    out["ldim"] = d;
    out["config"] = {{"subcommand", "experts run"},
                     {"class", opt.class_file},
                     {"sequence", opt.sequence_file},
                     {"eta", opt.eta},
                     {"horizon", horizon},
                     {"agnostic", opt.agnostic}};
    if (opt.sample_seed) out["config"]["sample_seed"] = *opt.sample_seed;
    emit_json(opt.out, out);
    std::cerr << "experts: regret=" << ledger.regret << " bound=" << bound << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// noisy run

struct noisy_options {
    std::string class_file;
    double gamma = 0.0;
    std::int64_t horizon = 0;
    int trials = 0;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> learner_seed;
    std::string schedule = "roundrobin";
    int target = 0;
    int jobs = 1;
    std::string csv;
    std::string out;
};

int run_noisy(const noisy_options& opt) {
    thicket::concept_class cls = thicket::load_class_file(opt.class_file);
    std::uint64_t seed = effective_seed(opt.seed);
    std::uint64_t learner_seed =
        opt.learner_seed ? *opt.learner_seed : thicket::mix_seed(seed, 0x6e6f697379ull);

    thicket::schedule_kind kind;
    if (opt.schedule == "roundrobin")
        kind = thicket::schedule_kind::round_robin;
    else if (opt.schedule == "random")
        kind = thicket::schedule_kind::random_uniform;
    else
        throw std::invalid_argument("unknown schedule: " + opt.schedule);

    std::vector<int> schedule = thicket::make_schedule(
        kind, cls.domain_size(), opt.horizon, thicket::mix_seed(seed, 0x7363686564ull));

    thicket::noise_model model{opt.target, opt.gamma, seed};
    thicket::noisy_report report =
        thicket::noisy_run(cls, model, schedule, opt.trials, learner_seed, opt.jobs);

    if (!opt.csv.empty()) {
        std::ostringstream per_trial;
        per_trial << "trial,disagreements_target\n";
        for (std::size_t i = 0; i < report.per_trial_disagreements.size(); ++i)
            per_trial << i << ',' << report.per_trial_disagreements[i] << '\n';
        write_text(opt.csv, per_trial.str());
    }

    json out = thicket::noisy_report_to_json(report);
    out["config"] = {{"subcommand", "noisy run"},
                     {"class", opt.class_file},
                     {"gamma", opt.gamma},
                     {"horizon", opt.horizon},
                     {"trials", opt.trials},
                     {"seed", seed},
                     {"learner_seed", learner_seed},
                     {"schedule", opt.schedule},
                     {"target", opt.target},
                     {"jobs", opt.jobs}};
    emit_json(opt.out, out);
    std::cerr << "noisy: mean_vs_target=" << report.mean_disagreement_target
              << " bound=" << report.bound << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// pac estimate

struct pac_options {
    std::string class_file;
    int target = 0;
    std::string mu = "uniform";
    double epsilon = 0.1;
    double delta = 0.1;
    int trials = 1000;
    std::optional<std::uint64_t> seed;
    int jobs = 1;
    std::string out;
};

thicket::distribution load_mu(const std::string& spec, int domain_size) {
    if (spec == "uniform") return thicket::distribution::uniform(domain_size);
    std::ifstream in(spec);
    if (!in) throw std::invalid_argument("cannot open distribution file: " + spec);
    json j;
    in >> j;
    if (j.is_object() && j.contains("probabilities")) j = j["probabilities"];
    if (!j.is_array())
        throw std::invalid_argument("distribution file must hold an array of probabilities");
    return thicket::distribution(j.get<std::vector<double>>());
}

int run_pac(const pac_options& opt) {
    thicket::concept_class cls = thicket::load_class_file(opt.class_file);
    thicket::distribution mu = load_mu(opt.mu, cls.domain_size());
    std::uint64_t seed = effective_seed(opt.seed);

    thicket::pac_result result = thicket::pac_experiment(
        cls, opt.target, mu, opt.epsilon, opt.delta, opt.trials, seed, opt.jobs);

    json out = thicket::pac_result_to_json(result);
    out["config"] = {{"subcommand", "pac estimate"},
                     {"class", opt.class_file},
                     {"target", opt.target},
                     {"mu", opt.mu},
                     {"eps", opt.epsilon},
                     {"delta", opt.delta},
                     {"trials", opt.trials},
                     {"seed", seed},
                     {"jobs", opt.jobs}};
    emit_json(opt.out, out);
    std::cerr << "pac: failure_fraction=" << result.failure_fraction
              << " mean_error=" << result.mean_error << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"thicket: combinatorial dimensions and online prediction games "
                 "on finite concept classes"};
    app.require_subcommand(1);
    std::function<int()> action;

    // dim
    dim_options dim_opt;
    auto* dim = app.add_subcommand("dim", "dimensions of a concept class");
    dim->add_option("--class", dim_opt.class_file, "class JSON file")->required();
    dim->add_flag("--ldim", dim_opt.want_ldim, "Littlestone dimension");
    dim->add_flag("--vc", dim_opt.want_vc, "VC dimension");
    dim->add_flag("--rank", dim_opt.want_rank, "2-rank of the membership relation");
    dim->add_option("--shatter", dim_opt.shatter_height, "shatter value at this height");
    dim->add_option("-o,--out", dim_opt.out, "output file (default stdout)");
    dim->callback([&] { action = [&] { return run_dim(dim_opt); }; });

    // zoo
    auto* zoo = app.add_subcommand("zoo", "concept-class generators");
    zoo->require_subcommand(1);

    zoo_generate_options zg_opt;
    auto* zoo_gen = zoo->add_subcommand("generate", "emit a class file");
    zoo_gen->add_option("family", zg_opt.family,
                        "powerset|singletons|thresholds|cosets|variety_fibers|random")
        ->required();
    int zg_n = 0, zg_m = 0, zg_p = 0;
    std::uint64_t zg_seed = 0;
    auto* zg_n_opt = zoo_gen->add_option("--n", zg_n, "domain size");
    auto* zg_m_opt = zoo_gen->add_option("--m", zg_m, "modulus / concept count");
    auto* zg_p_opt = zoo_gen->add_option("--p", zg_p, "prime field size");
    zoo_gen->add_option("--poly", zg_opt.poly, "bivariate polynomial, e.g. \"x^2-a\"");
    auto* zg_seed_opt = zoo_gen->add_option("--seed", zg_seed, "seed for random family");
    zoo_gen->add_option("-o,--out", zg_opt.out, "output file (default stdout)");
    zoo_gen->callback([&, zg_n_opt, zg_m_opt, zg_p_opt, zg_seed_opt] {
        action = [&, zg_n_opt, zg_m_opt, zg_p_opt, zg_seed_opt] {
            if (zg_n_opt->count()) zg_opt.n = zg_n;
            if (zg_m_opt->count()) zg_opt.m = zg_m;
            if (zg_p_opt->count()) zg_opt.p = zg_p;
            if (zg_seed_opt->count()) zg_opt.seed = zg_seed;
            return run_zoo_generate(zg_opt);
        };
    });

    zoo_growth_options zgr_opt;
    auto* zoo_growth = zoo->add_subcommand("growth", "dimension growth table");
    zoo_growth->add_option("family", zgr_opt.family, "family name")->required();
    zoo_growth->add_option("--sizes", zgr_opt.sizes, "comma-separated sizes");
    zoo_growth->add_flag("--greedy", zgr_opt.greedy,
                         "greedy half-graph fallback past the exact cap");
    zoo_growth->add_option("-o,--out", zgr_opt.out, "output CSV (default stdout)");
    zoo_growth->callback([&] { action = [&] { return run_zoo_growth(zgr_opt); }; });

    // play
    play_options play_opt;
    auto* play = app.add_subcommand("play", "realizable online prediction game");
    play->add_option("--class", play_opt.class_file, "class JSON file")->required();
    play->add_option("--learner", play_opt.learner, "soa|always0|always1|majority|random");
    play->add_option("--adversary", play_opt.adversary, "optimal|stream:<file>|random:<seed>");
    auto* play_target = play->add_option("--target", play_opt.target, "target concept index");
    play->add_option("--rounds", play_opt.rounds, "number of rounds");
    std::uint64_t play_seed = 0;
    auto* play_seed_opt = play->add_option("--seed", play_seed, "seed for the random learner");
    play->add_option("-o,--out", play_opt.out, "transcript CSV (default stdout)");
    play->callback([&, play_target, play_seed_opt] {
        action = [&, play_target, play_seed_opt] {
            play_opt.target_given = play_target->count() > 0;
            if (play_seed_opt->count()) play_opt.seed = play_seed;
            return run_play(play_opt);
        };
    });

    // experts run
    auto* experts = app.add_subcommand("experts", "weighted-majority expert advice");
    experts->require_subcommand(1);
    experts_options ex_opt;
    auto* ex_run = experts->add_subcommand("run", "run a pool over a label sequence");
    ex_run->add_option("--class", ex_opt.class_file, "class JSON file")->required();
    ex_run->add_option("--sequence", ex_opt.sequence_file, "example,label CSV")->required();
    ex_run->add_option("--eta", ex_opt.eta, "auto or an explicit rate");
    ex_run->add_option("--horizon", ex_opt.horizon, "pool horizon (default sequence length)");
    ex_run->add_flag("--agnostic", ex_opt.agnostic, "use the agnostic expert pool");
    std::uint64_t ex_seed = 0;
    auto* ex_seed_opt =
        ex_run->add_option("--sample-seed", ex_seed, "sample a realized prediction path");
    ex_run->add_option("-o,--out", ex_opt.out, "output file (default stdout)");
    ex_run->callback([&, ex_seed_opt] {
        action = [&, ex_seed_opt] {
            if (ex_seed_opt->count()) ex_opt.sample_seed = ex_seed;
            return run_experts(ex_opt);
        };
    });

    // noisy run
    auto* noisy = app.add_subcommand("noisy", "bounded stochastic label noise");
    noisy->require_subcommand(1);
    noisy_options no_opt;
    auto* no_run = noisy->add_subcommand("run", "Monte-Carlo noisy-game experiment");
    no_run->add_option("--class", no_opt.class_file, "class JSON file")->required();
    no_run->add_option("--gamma", no_opt.gamma, "noise rate in [0, 0.5)")->required();
    no_run->add_option("--horizon", no_opt.horizon, "rounds per trial")->required();
    no_run->add_option("--trials", no_opt.trials, "number of trials")->required();
    std::uint64_t no_seed = 0, no_lseed = 0;
    auto* no_seed_opt = no_run->add_option("--seed", no_seed, "label-noise master seed");
    auto* no_lseed_opt =
        no_run->add_option("--learner-seed", no_lseed, "learner coin master seed");
    no_run->add_option("--schedule", no_opt.schedule, "roundrobin|random");
    no_run->add_option("--target", no_opt.target, "target concept index");
    no_run->add_option("--jobs", no_opt.jobs, "parallel trial workers");
    no_run->add_option("--csv", no_opt.csv, "per-trial disagreement CSV");
    no_run->add_option("-o,--out", no_opt.out, "output file (default stdout)");
    no_run->callback([&, no_seed_opt, no_lseed_opt] {
        action = [&, no_seed_opt, no_lseed_opt] {
            if (no_seed_opt->count()) no_opt.seed = no_seed;
            if (no_lseed_opt->count()) no_opt.learner_seed = no_lseed;
            return run_noisy(no_opt);
        };
    });

    // pac estimate
    auto* pac = app.add_subcommand("pac", "PAC sample-complexity experiments");
    pac->require_subcommand(1);
    pac_options pac_opt;
    auto* pac_est = pac->add_subcommand("estimate", "empirical (eps, delta) verification");
    pac_est->add_option("--class", pac_opt.class_file, "class JSON file")->required();
    pac_est->add_option("--target", pac_opt.target, "target concept index")->required();
    pac_est->add_option("--mu", pac_opt.mu, "uniform or a distribution JSON file");
    pac_est->add_option("--eps", pac_opt.epsilon, "accuracy epsilon")->required();
    pac_est->add_option("--delta", pac_opt.delta, "confidence delta")->required();
    pac_est->add_option("--trials", pac_opt.trials, "number of trials")->required();
    std::uint64_t pac_seed = 0;
    auto* pac_seed_opt = pac_est->add_option("--seed", pac_seed, "master seed");
    pac_est->add_option("--jobs", pac_opt.jobs, "parallel trial workers");
    pac_est->add_option("-o,--out", pac_opt.out, "output file (default stdout)");
    pac_est->callback([&, pac_seed_opt] {
        action = [&, pac_seed_opt] {
            if (pac_seed_opt->count()) pac_opt.seed = pac_seed;
            return run_pac(pac_opt);
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n" << app.help() << "\n";
        return 1;
    }

    try {
        return action ? action() : 1;
    } catch (const thicket::cap_exceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
