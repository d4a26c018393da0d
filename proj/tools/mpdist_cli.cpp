// mpdist: command-line front end for the distance-set library.

#include "mpdist/adaptability.hpp"
#include "mpdist/bset.hpp"
#include "mpdist/check_suite.hpp"
#include "mpdist/error.hpp"
#include "mpdist/exponents.hpp"
#include "mpdist/generators.hpp"
#include "mpdist/geometry.hpp"
#include "mpdist/harness.hpp"
#include "mpdist/json_io.hpp"
#include "mpdist/regularize.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace mpdist;
using nlohmann::json;

namespace {

struct Globals {
    std::uint64_t seed = 1;
    unsigned threads = 1;
    std::uint64_t pair_budget = 0;  // 0: the command's own default
    std::string format = "json";
    bool include_diag = false;
    bool exclude_diag = false;

    std::optional<bool> diagonal() const {
        if (include_diag && exclude_diag) throw UsageError("--include-diagonal and --exclude-diagonal conflict");
        if (include_diag) return true;
        if (exclude_diag) return false;
        return std::nullopt;
    }
};

// Where a command's point sets come from: a file or a generator.
struct Source {
    std::string input;
    std::string kind;
    std::vector<std::string> params;
    std::string partition;

    void add_to(CLI::App* cmd, bool need_partition) {
        cmd->add_option("-i,--input", input, "point-set file (one or two sets)");
        cmd->add_option("--kind", kind, "generator kind");
        cmd->add_option("--param", params, "generator parameter name=value (repeatable)");
        auto* opt = cmd->add_option("-p,--partition", partition, "block sizes, e.g. 2,3");
        if (need_partition) opt->required();
    }

    std::optional<Partition> part() const {
        if (partition.empty()) return std::nullopt;
        return Partition::parse(partition);
    }

    GeneratorSpec spec(std::uint64_t seed) const {
        GeneratorSpec g;
        g.kind = parse_generator_kind(kind);
        g.seed = seed;
        for (const auto& kv : params) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos || eq == 0) throw UsageError("--param expects name=value, got '" + kv + "'");
            try {
                std::size_t used = 0;
                const std::string value = kv.substr(eq + 1);
                g.params[kv.substr(0, eq)] = std::stoll(value, &used);
                if (used != value.size()) throw std::invalid_argument(value);
            } catch (const std::logic_error&) {
                throw UsageError("--param value must be an integer: '" + kv + "'");
            }
        }
        return g;
    }

    GeneratedInstance load(std::uint64_t seed) const {
        if (!input.empty() && !kind.empty()) throw UsageError("give either --input or --kind, not both");
        if (!input.empty()) {
            std::ifstream in(input);
            if (!in) throw UsageError("cannot open " + input);
            auto sets = read_point_sets(in);
            if (sets.empty() || sets.size() > 2) throw UsageError("input must hold one or two point sets");
            GeneratedInstance g{std::move(sets[0]), std::nullopt, std::nullopt};
            if (sets.size() == 2) g.f = std::move(sets[1]);
            return g;
        }
        if (kind.empty()) throw UsageError("no points: give --input or --kind");
        return generate(spec(seed), part());
    }
};

std::size_t parse_block(int one_based, const Partition& p) {
    if (one_based < 1 || static_cast<std::size_t>(one_based) > p.q())
        throw UsageError("--block must be in 1.." + std::to_string(p.q()));
    return static_cast<std::size_t>(one_based - 1);
}

void require_format(const Globals& g, std::initializer_list<const char*> allowed) {
    for (const char* a : allowed)
        if (g.format == a) return;
    throw UsageError("format '" + g.format + "' is not available for this command");
}

void print_json(const json& j) { std::cout << j.dump(2) << '\n'; }

int cmd_generate(const Globals& g, const Source& src, const std::string& out) {
    require_format(g, {"json", "table"});
    const auto inst = src.load(g.seed);
    std::ostringstream text;
    write_point_set(text, inst.e);
    if (inst.f) write_point_set(text, *inst.f);
    if (!out.empty()) {
        std::ofstream os(out);
        if (!os) throw UsageError("cannot write " + out);
        os << text.str();
    }
    if (g.format == "table") {
        if (out.empty()) std::cout << text.str();
        return 0;
    }
    json j{{"generator", to_json(src.spec(g.seed))}, {"dim", inst.e.dim()}, {"n", inst.e.size()},
           {"fingerprint", inst.e.fingerprint()}};
    if (inst.f) {
        j["f_n"] = inst.f->size();
        j["f_fingerprint"] = inst.f->fingerprint();
    }
    if (out.empty()) j["points"] = text.str();
    print_json(j);
    return 0;
}

int cmd_bset(const Globals& g, const Source& src, std::size_t top) {
    require_format(g, {"json", "csv", "table"});
    const auto inst = src.load(g.seed);
    const Partition p = *src.part();
    BSetOptions o;
    o.include_diagonal = g.diagonal().value_or(true);
    o.threads = g.threads;
    if (g.pair_budget) o.pair_budget = g.pair_budget;
    const auto stats = inst.f ? b_set(inst.e, *inst.f, p, o) : b_set(inst.e, p, o);
    if (g.format == "csv") {
        write_tuples_csv(std::cout, stats);
    } else if (g.format == "table") {
        std::cout << "partition       " << p.str() << '\n'
                  << "diagonal        " << (stats.includes_diagonal ? "included" : "excluded") << '\n'
                  << "|B|             " << stats.count() << '\n'
                  << "pairs           " << stats.total_pairs << '\n'
                  << "max nu          " << stats.max_nu() << '\n';
        for (const auto& [t, nu] : stats.top(top)) std::cout << std::setw(24) << t.str() << "  " << nu << '\n';
    } else {
        print_json(to_json(stats, top));
    }
    return 0;
}

int cmd_energy(const Globals& g, const Source& src, double s, double threshold, bool auto_thin) {
    require_format(g, {"json", "table"});
    const auto inst = src.load(g.seed);
    const auto a = is_adaptable(inst.e, s, threshold, auto_thin, g.threads);
    const PointSet& used = auto_thin ? separate_thin(inst.e, s).kept : inst.e;
    const Rational sep = min_separation(used);
    const json j = energy_json(a, sep, a.kept, a.removed);
    if (g.format == "table") {
        for (const auto& [k, v] : j.items()) std::cout << std::left << std::setw(18) << k << v.dump() << '\n';
    } else {
        print_json(j);
    }
    return 0;
}

int cmd_pigeonhole(const Globals& g, const Source& src, int block1, const std::string& alpha_text) {
    require_format(g, {"json", "csv"});
    const auto inst = src.load(g.seed);
    const Partition p = *src.part();
    const std::size_t b = parse_block(block1, p);
    const auto prof = richness(inst.e, p, b);
    const auto hist = richness_histogram(prof);
    if (g.format == "csv") {
        write_histogram_csv(std::cout, hist);
        return 0;
    }
    const auto reg = extract_regular(inst.e, p, b);
    json rows = json::array();
    for (const auto& h : hist)
        rows.push_back({{"class_low", h.class_low}, {"class_high", h.class_high}, {"fiber_count", h.fiber_count},
                        {"point_count", h.point_count}});
    json j{{"partition", partition_json(p)},
           {"block", block1},
           {"n", inst.e.size()},
           {"fiber_count", prof.fiber_count()},
           {"max_richness", prof.max_value},
           {"histogram", rows},
           {"regular", {{"n", reg.points.size()},
                        {"class_low", reg.class_low},
                        {"class_high", reg.class_high},
                        {"fiber_count", reg.fiber_count},
                        {"fingerprint", reg.points.fingerprint()}}}};
    if (!alpha_text.empty()) {
        const auto rp = rich_points(inst.e, p, b, Rational::parse(alpha_text));
        j["rich"] = {{"alpha", Rational::parse(alpha_text).str()},
                     {"threshold", rp.threshold},
                     {"rich_count", rp.rich_count},
                     {"projected_total", rp.projected_total},
                     {"points_over_nonrich", rp.points_over_nonrich}};
    }
    print_json(j);
    return 0;
}

Ladder parse_ladder(const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--ladder expects name=v1,v2,...");
    Ladder l{text.substr(0, eq), {}};
    std::stringstream ss(text.substr(eq + 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            l.values.push_back(std::stoll(item));
        } catch (const std::logic_error&) {
            throw UsageError("bad ladder value '" + item + "'");
        }
    }
    return l;
}

int cmd_scan(const Globals& g, const Source& src, const std::string& config, const std::string& ladder,
             bool no_fast_path, bool timing) {
    require_format(g, {"json", "csv"});
    ScanConfig c;
    if (!config.empty()) {
        std::ifstream in(config);
        if (!in) throw UsageError("cannot open " + config);
        json j;
        try {
            j = json::parse(in);
        } catch (const json::parse_error& e) {
            throw UsageError(std::string("config is not valid JSON: ") + e.what());
        }
        c = scan_config_from_json(j);
        if (!j.at("generator").contains("seed")) c.spec.seed = g.seed;
    } else {
        if (src.kind.empty() || ladder.empty() || src.partition.empty())
            throw UsageError("scan needs --config, or --kind, --ladder and --partition");
        c.spec = src.spec(g.seed);
        c.ladder = parse_ladder(ladder);
        c.partition = *src.part();
    }
    if (auto d = g.diagonal()) c.include_diagonal = d;
    ScanOptions o;
    o.include_diagonal = c.include_diagonal.value_or(false);
    o.threads = g.threads;
    if (g.pair_budget) o.pair_budget = g.pair_budget;
    o.use_fast_path = !no_fast_path;
    const auto run = run_scaling(c.spec, c.partition, c.ladder, o);
    if (timing) {
        for (const auto& m : run.measurements)
            std::cerr << "n=" << m.n << " seconds=" << std::fixed << std::setprecision(3) << m.wall_seconds << '\n';
    }
    if (g.format == "csv") {
        std::cout << "param,n,b_count\n";
        for (const auto& m : run.measurements) std::cout << m.param << ',' << m.n << ',' << m.b_count << '\n';
        return 0;
    }
    const auto table = exponent_report(c.partition);
    print_json({{"config", to_json(c)}, {"run", to_json(run)}, {"comparison", to_json(compare(run, table))}});
    return 0;
}

int cmd_exponents(const Globals& g, const std::string& partition, std::size_t all_d) {
    require_format(g, {"json", "table", "csv"});
    std::vector<Partition> parts;
    if (all_d) {
        parts = increasing_partitions(all_d);
    } else {
        if (partition.empty()) throw UsageError("exponents needs --partition or --all");
        parts.push_back(Partition::parse(partition));
    }
    json arr = json::array();
    if (g.format == "csv") std::cout << "partition,key,value,decimal,kind\n";
    for (const auto& p : parts) {
        const auto t = exponent_report(p);
        if (g.format == "table") {
            std::cout << exponent_table_text(t) << '\n';
        } else if (g.format == "csv") {
            for (const auto& e : t.entries)
                std::cout << '"' << p.str() << "\"," << e.key << ',' << e.value.str() << ',' << e.value.decimal() << ','
                          << to_string(e.kind) << '\n';
        } else {
            arr.push_back(to_json(t));
        }
    }
    if (g.format == "json") print_json(all_d ? arr : arr[0]);
    return 0;
}

int cmd_check(const Globals& g, const std::vector<std::size_t>& sizes, std::size_t instances) {
    require_format(g, {"json", "table"});
    CheckOptions o;
    o.seed = g.seed;
    if (!sizes.empty()) o.sizes = sizes;
    o.instances = instances;
    o.threads = std::max(2u, g.threads);
    const auto r = check_suite(o);
    if (g.format == "table") {
        for (const auto& c : r.results)
            std::cout << (c.report_only ? "REPORT" : (c.passed ? "PASS  " : "FAIL  ")) << ' ' << c.module << '/' << c.name
                      << "  " << c.detail << '\n';
    } else {
        print_json(r.to_json());
    }
    return r.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-parameter distance sets: counting, regularization, energy and exponent tables"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--seed", g.seed, "generator seed");
    app.add_option("--threads", g.threads, "worker threads")->check(CLI::Range(1u, 1024u));
    app.add_option("--pair-budget", g.pair_budget, "refuse instances with more ordered pairs");
    app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"json", "csv", "table"}));
    app.add_flag("--include-diagonal", g.include_diag, "count x == y pairs");
    app.add_flag("--exclude-diagonal", g.exclude_diag, "drop x == y pairs");

    Source src;
    std::string out;
    auto* gen = app.add_subcommand("generate", "build a point set");
    src.add_to(gen, false);
    gen->add_option("-o,--output", out, "write the point file here");

    std::size_t top = 10;
    auto* bset = app.add_subcommand("bset", "distance-tuple set and multiplicities");
    src.add_to(bset, true);
    bset->add_option("--top", top, "most frequent tuples to list");

    double s = 1.0, threshold = kDefaultAdaptabilityThreshold;
    bool auto_thin = false;
    auto* energy = app.add_subcommand("energy", "discrete s-energy and adaptability");
    src.add_to(energy, false);
    energy->add_option("-s", s, "energy exponent")->check(CLI::PositiveNumber);
    energy->add_option("--threshold", threshold, "adaptability threshold");
    energy->add_flag("--auto-thin", auto_thin, "remove close points first");

    int block = 1;
    std::string alpha;
    auto* pig = app.add_subcommand("pigeonhole", "richness classes and the regular subset");
    src.add_to(pig, true);
    pig->add_option("--block", block, "block index, starting at 1");
    pig->add_option("--alpha", alpha, "rich-point exponent p/q");

    std::string config, ladder;
    bool no_fast = false, timing = false;
    auto* scan = app.add_subcommand("scan", "scaling run, log-log fit and comparison");
    src.add_to(scan, false);
    scan->add_option("--config", config, "JSON scan configuration");
    scan->add_option("--ladder", ladder, "name=v1,v2,...");
    scan->add_flag("--no-fast-path", no_fast, "always materialize and count pairs");
    scan->add_flag("--timing", timing, "per-size wall time on stderr");

    std::string exp_partition;
    std::size_t all_d = 0;
    auto* exps = app.add_subcommand("exponents", "predicted exponent table");
    exps->add_option("-p,--partition", exp_partition, "block sizes");
    exps->add_option("--all", all_d, "every increasing partition of this dimension");

    std::vector<std::size_t> sizes;
    std::size_t instances = 6;
    auto* check = app.add_subcommand("check", "run the invariant suite");
    check->add_option("--sizes", sizes, "corpus point counts")->delimiter(',');
    check->add_option("--instances", instances, "instances per size");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        (void)g.diagonal();
        if (*gen) return cmd_generate(g, src, out);
        if (*bset) return cmd_bset(g, src, top);
        if (*energy) return cmd_energy(g, src, s, threshold, auto_thin);
        if (*pig) return cmd_pigeonhole(g, src, block, alpha);
        if (*scan) return cmd_scan(g, src, config, ladder, no_fast, timing);
        if (*exps) return cmd_exponents(g, exp_partition, all_d);
        if (*check) return cmd_check(g, sizes, instances);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const InvariantFailure& e) {
        std::cerr << "invariant failure: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
