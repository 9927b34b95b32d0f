// maxmodel: maximal integral models of torsors under order-p group schemes
// over F_q((t)).
//
//   maxmodel classify --p 2 --group alpha_p --f "t^-1" [--format json]
//   maxmodel classify --batch lines.txt
//   maxmodel tower --p 2 --stage "z_mod_p:t^-1" --stage "z_mod_p:t^-3"
//   maxmodel descent-check input.json
//   maxmodel suite [--seed 7] [--mutate]
//
// Exit codes: 0 ok, 2 usage / parse / domain, 3 precision, 4 verification,
// 5 non-regular tower stage.

#include <algorithm>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <thread>

#include "CLI11.hpp"
#include "maxmodel/cli.hpp"
#include "maxmodel/suite.hpp"

namespace {

using namespace maxmodel;
using cli::Json;

using Settings = std::vector<std::pair<std::string, std::string>>;

// Run-config flags are collected as raw strings in order and applied after
// the config file, so flags win.
void add_run_options(CLI::App* app, Settings& given) {
    const std::vector<std::pair<std::string, std::string>> keys = {
        {"p", "characteristic"},
        {"e", "residue field degree, q = p^e"},
        {"modulus", "modulus of F_q over F_p, lowest degree first, e.g. 1,1,1"},
        {"precision", "working precision N >= 10"},
        {"group", "z_mod_p | mu_p | alpha_p | h_lambda"},
        {"lambda", "lambda series for h_lambda"},
        {"f", "class series"},
        {"format", "text | json"},
        {"seed", "seed for randomized suites"},
    };
    for (const auto& [key, help] : keys)
        app->add_option_function<std::string>(
            "--" + key, [&given, key = key](const std::string& v) { given.emplace_back(key, v); }, help);
    app->add_flag_function(
        "--reduce", [&given](std::int64_t) { given.emplace_back("reduce", "true"); },
        "h_lambda: drop negative p-divisible exponents before normalizing");
}

cli::RunConfig build_config(const std::string& config_file, const Settings& given) {
    cli::RunConfig c;
    Settings file;
    if (!config_file.empty()) file = cli::read_key_values_file(config_file);
    for (const auto& [k, v] : file) cli::apply_setting(c, k, v);
    const bool flag_stages =
        std::any_of(given.begin(), given.end(), [](const auto& kv) { return kv.first == "stage"; });
    if (flag_stages) c.stages.clear();
    for (const auto& [k, v] : given) cli::apply_setting(c, k, v);
    return c;
}

struct Outcome {
    int code = 0;
    std::string out;
    std::string err;
};

Outcome guarded(const std::function<Outcome()>& fn) {
    try {
        return fn();
    } catch (const std::exception& e) {
        return {cli::exit_code_for(e), {}, std::string("error: ") + e.what() + "\n"};
    }
}

Outcome classify_one(const cli::RunConfig& c) {
    const auto r = cli::classify(c);
    Outcome o;
    o.out = c.format == "json" ? cli::to_json(r).dump(2) + "\n" : cli::render_text(r);
    if (!r.ok()) o.code = cli::kVerification;
    return o;
}

// One config per line in flag syntax; lines run concurrently, output is
// assembled in line order.
int run_batch(const std::string& path, const std::string& config_file, const Settings& base) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open batch file " + path);
    std::vector<std::pair<int, std::string>> lines;
    std::string line;
    for (int n = 1; std::getline(in, line); ++n) {
        const std::string s = cli::detail::trim(line);
        if (!s.empty() && s[0] != '#') lines.emplace_back(n, s);
    }
    const cli::RunConfig head = build_config(config_file, base);
    auto task = [&](const std::string& text) {
        return guarded([&] {
            Settings own = base;
            CLI::App app{"batch line"};
            add_run_options(&app, own);
            try {
                app.parse(text, false);
            } catch (const CLI::ParseError& e) {
                throw ParseError(std::string("batch line: ") + e.what());
            }
            return classify_one(build_config(config_file, own));
        });
    };
    std::vector<Outcome> results(lines.size());
    const std::size_t width = std::max(1u, std::thread::hardware_concurrency());
    for (std::size_t start = 0; start < lines.size(); start += width) {
        std::vector<std::future<Outcome>> jobs;
        for (std::size_t i = start; i < std::min(lines.size(), start + width); ++i)
            jobs.push_back(std::async(std::launch::async, task, lines[i].second));
        for (std::size_t i = 0; i < jobs.size(); ++i) results[start + i] = jobs[i].get();
    }
    int code = 0;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const auto& r = results[i];
        if (!code) code = r.code;
        if (head.format == "json") {
            Json j{{"line", lines[i].first}, {"exit", r.code}};
            if (!r.out.empty()) j["report"] = Json::parse(r.out);
            if (!r.err.empty()) j["error"] = cli::detail::trim(r.err);
            std::cout << j.dump() << "\n";
        } else {
            std::cout << "== line " << lines[i].first << " ==\n" << r.out << r.err;
        }
    }
    return code;
}

int run_suite(std::uint64_t seed, bool mutate, const std::vector<int>& only, const std::string& format) {
    suite::Options opts;
    opts.seed = seed;
    opts.mutate = mutate;
    suite::Context ctx;
    const auto results = suite::run(opts, &ctx, only);
    const auto failed = std::count_if(results.begin(), results.end(), [](const auto& r) { return !r.pass; });
    if (format == "json") {
        Json list = Json::array();
        for (const auto& r : results)
            list.push_back(Json{{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail},
                                {"reproducer", r.reproducer}});
        std::cout << Json{{"criteria", list}, {"pass", failed == 0}}.dump(2) << "\n";
    } else {
        std::cout << suite::render_table(ctx) << "\n";
        for (const auto& r : results) {
            std::cout << (r.pass ? "PASS" : "FAIL") << " [" << r.id << "] " << r.name;
            if (!r.pass) std::cout << ": " << r.detail;
            std::cout << "\n";
            if (!r.pass && !r.reproducer.empty()) std::cout << "  reproduce: " << r.reproducer << "\n";
        }
        std::cout << "suite: " << (failed ? "FAIL (" + std::to_string(failed) + " criteria)" : std::string("PASS"))
                  << "\n";
    }
    return failed ? cli::kVerification : cli::kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"maximal integral models of torsors over F_q((t))"};
    app.require_subcommand(1);

    Settings given;
    std::string config_file, batch_file, descent_file, format = "text";
    std::vector<std::string> stages;
    std::uint64_t seed = 0;
    bool mutate = false;
    std::vector<int> only;

    auto* classify = app.add_subcommand("classify", "normalize, build the maximal model, different, verify");
    add_run_options(classify, given);
    classify->add_option("--config", config_file, "key=value file, overridden by flags");
    classify->add_option("--batch", batch_file, "one flag line per config, run concurrently");

    auto* tower = app.add_subcommand("tower", "transitivity of the different along a two-stage tower");
    add_run_options(tower, given);
    tower->add_option("--config", config_file, "key=value file, overridden by flags");
    tower->add_option("--stage", stages, "kind:f, kind:f:base or h_lambda(lambda):f; repeat per stage");

    auto* descent = app.add_subcommand("descent-check", "equalizer of A -> A' => A' (x)_A A'");
    descent->add_option("file", descent_file, "JSON with source, target and matrix")->required();
    descent->add_option("--format", format, "text | json");

    auto* suite_cmd = app.add_subcommand("suite", "run the acceptance grid");
    suite_cmd->add_option("--seed", seed, "override the pinned seeds");
    suite_cmd->add_flag("--mutate", mutate, "negative control: corrupt one coaction");
    suite_cmd->add_option("--only", only, "criteria to run, e.g. 1,9")->delimiter(',');
    suite_cmd->add_option("--format", format, "text | json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return cli::kUsage;
    }

    for (const auto& s : stages) given.emplace_back("stage", s);
    Outcome o = guarded([&]() -> Outcome {
        if (*classify) {
            if (!batch_file.empty()) return {run_batch(batch_file, config_file, given), {}, {}};
            return classify_one(build_config(config_file, given));
        }
        if (*tower) {
            const cli::RunConfig c = build_config(config_file, given);
            if (c.format != "text" && c.format != "json") throw ParseError("format must be text or json");
            const TowerReport r = cli::run_tower(c);
            Outcome t;
            t.out = c.format == "json" ? cli::tower_json(c, r).dump(2) + "\n" : cli::render_tower_text(c, r);
            if (!r.verified) t.code = cli::kVerification;
            return t;
        }
        if (*descent) {
            if (format != "text" && format != "json") throw ParseError("format must be text or json");
            const auto in = cli::read_descent_file(descent_file);
            const EqualizerReport r = equalizer_check(in.incl, in.options);
            Outcome d;
            d.out = format == "json" ? cli::descent_json(r).dump(2) + "\n" : cli::render_descent_text(r);
            if (!r.equalizer_is_image || !r.smith_check.ok()) d.code = cli::kVerification;
            return d;
        }
        if (format != "text" && format != "json") throw ParseError("format must be text or json");
        return {run_suite(seed, mutate, only, format), {}, {}};
    });
    std::cout << o.out;
    std::cerr << o.err;
    return o.code;
}
