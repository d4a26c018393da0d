#include "mpdist/json_io.hpp"

#include "mpdist/error.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace mpdist {

namespace {

template <class T>
T field(const json& j, const char* key) {
    if (!j.contains(key)) throw UsageError(std::string("missing JSON field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& ex) {
        throw UsageError(std::string("bad JSON field '") + key + "': " + ex.what());
    }
}

json rational_vec(const std::vector<Rational>& v) {
    json out = json::array();
    for (const auto& r : v) out.push_back(r.str());
    return out;
}

std::vector<Rational> rational_vec_from(const json& j) {
    std::vector<Rational> out;
    for (const auto& v : j) out.push_back(Rational::parse(v.get<std::string>()));
    return out;
}

Rational rational_from(const json& j) {
    if (j.is_object()) return Rational::parse(j.at("value").get<std::string>());
    return Rational::parse(j.get<std::string>());
}

}  // namespace

json partition_json(const Partition& p) { return json(p.parts()); }

Partition partition_from_json(const json& j) {
    try {
        return Partition(j.get<std::vector<std::size_t>>());
    } catch (const json::exception& ex) {
        throw UsageError(std::string("bad partition JSON: ") + ex.what());
    }
}

json to_json(const DistanceTupleStats& s, std::size_t top_k) {
    json top = json::array();
    for (const auto& [t, nu] : s.top(top_k)) top.push_back(json::array({t.values, nu}));
    return json{{"partition", partition_json(s.partition)},
                {"count", s.count()},
                {"total_pairs", s.total_pairs},
                {"includes_diagonal", s.includes_diagonal},
                {"sum_nu", s.sum_nu()},
                {"max_nu", s.max_nu()},
                {"top_multiplicities", top}};
}

void write_tuples_csv(std::ostream& os, const DistanceTupleStats& s) {
    for (std::size_t i = 0; i < s.q(); ++i) os << "t" << (i + 1) << ',';
    os << "nu\n";
    for (std::size_t k = 0; k < s.count(); ++k) {
        for (SqDist v : s.tuple_values(k)) os << v << ',';
        os << s.nu[k] << '\n';
    }
}

json rational_json(const Rational& r) { return json{{"value", r.str()}, {"decimal", r.decimal(6)}}; }

json to_json(const ExponentTable& t) {
    json entries = json::array();
    for (const auto& e : t.entries) {
        entries.push_back(json{{"key", e.key},
                               {"value", e.value.str()},
                               {"decimal", e.value.decimal(6)},
                               {"kind", to_string(e.kind)},
                               {"note", e.note}});
    }
    json j{{"partition", partition_json(t.partition)},
           {"gamma_sv", rational_vec(t.gamma_sv)},
           {"gamma_best", rational_vec(t.gamma_best)},
           {"eta", rational_vec(t.eta)},
           {"delta", rational_vec(t.delta)},
           {"trivial", rational_json(t.trivial)},
           {"trivial_sv", rational_json(t.trivial_sv)},
           {"grid_upper", rational_json(t.grid_upper)},
           {"entries", entries},
           {"notes", t.notes}};
    if (t.tau) {
        j["tau"] = json{{"value", t.tau->tau.str()},
                        {"decimal", t.tau->tau.decimal(6)},
                        {"alpha", t.tau->alpha.str()},
                        {"per_block", rational_vec(t.tau->per_block)},
                        {"alpha_per_block", rational_vec(t.tau->alpha_per_block)},
                        {"max", t.tau->max.str()},
                        {"argmax_block", t.tau->argmax + 1},
                        {"first_block_maximizes", t.tau->first_block_maximizes}};
    }
    if (t.theta) {
        j["theta"] = json{{"q", t.theta->q},
                          {"eta", t.theta->eta.str()},
                          {"value", t.theta->closed_form.theta.str()},
                          {"decimal", t.theta->closed_form.theta.decimal(6)},
                          {"alpha", t.theta->closed_form.alpha.str()},
                          {"displayed", t.theta->displayed.str()},
                          {"discrepancy", t.theta->discrepancy}};
    }
    if (t.zeta) j["zeta"] = rational_json(*t.zeta);
    return j;
}

ExponentTable exponent_table_from_json(const json& j) {
    ExponentTable t;
    t.partition = partition_from_json(j.at("partition"));
    t.gamma_sv = rational_vec_from(j.at("gamma_sv"));
    t.gamma_best = rational_vec_from(j.at("gamma_best"));
    t.eta = rational_vec_from(j.at("eta"));
    t.delta = rational_vec_from(j.at("delta"));
    t.trivial = rational_from(j.at("trivial"));
    t.trivial_sv = rational_from(j.at("trivial_sv"));
    t.grid_upper = rational_from(j.at("grid_upper"));
    for (const auto& e : j.at("entries")) {
        t.entries.push_back({e.at("key").get<std::string>(), Rational::parse(e.at("value").get<std::string>()),
                             parse_entry_kind(e.at("kind").get<std::string>()), e.at("note").get<std::string>()});
    }
    t.notes = j.at("notes").get<std::vector<std::string>>();
    if (j.contains("tau")) {
        const auto& a = j.at("tau");
        TauReport r;
        r.tau = Rational::parse(a.at("value").get<std::string>());
        r.alpha = Rational::parse(a.at("alpha").get<std::string>());
        r.per_block = rational_vec_from(a.at("per_block"));
        r.alpha_per_block = rational_vec_from(a.at("alpha_per_block"));
        r.max = Rational::parse(a.at("max").get<std::string>());
        r.argmax = a.at("argmax_block").get<std::size_t>() - 1;
        r.first_block_maximizes = a.at("first_block_maximizes").get<bool>();
        t.tau = r;
    }
    if (j.contains("theta")) {
        const auto& a = j.at("theta");
        TwosTheta th;
        th.q = a.at("q").get<std::size_t>();
        th.eta = Rational::parse(a.at("eta").get<std::string>());
        th.closed_form.theta = Rational::parse(a.at("value").get<std::string>());
        th.closed_form.alpha = Rational::parse(a.at("alpha").get<std::string>());
        th.displayed = Rational::parse(a.at("displayed").get<std::string>());
        th.discrepancy = a.at("discrepancy").get<bool>();
        t.theta = th;
    }
    if (j.contains("zeta")) t.zeta = rational_from(j.at("zeta"));
    return t;
}

std::string exponent_table_text(const ExponentTable& t) {
    std::size_t wk = 3, wv = 5, wd = 7, wkind = 4;
    for (const auto& e : t.entries) {
        wk = std::max(wk, e.key.size());
        wv = std::max(wv, e.value.str().size());
        wd = std::max(wd, e.value.decimal(6).size());
        wkind = std::max(wkind, to_string(e.kind).size());
    }
    std::ostringstream os;
    os << "partition " << t.partition.str() << "  d=" << t.partition.dim() << "  q=" << t.partition.q() << '\n';
    auto row = [&](const std::string& a, const std::string& b, const std::string& c, const std::string& d,
                   const std::string& e) {
        os << std::left << std::setw(static_cast<int>(wk)) << a << "  " << std::right
           << std::setw(static_cast<int>(wv)) << b << "  " << std::setw(static_cast<int>(wd)) << c << "  "
           << std::left << std::setw(static_cast<int>(wkind)) << d << "  " << e << '\n';
    };
    row("key", "value", "decimal", "kind", "note");
    for (const auto& e : t.entries) row(e.key, e.value.str(), e.value.decimal(6), to_string(e.kind), e.note);
    for (const auto& n : t.notes) os << "note: " << n << '\n';
    return os.str();
}

json to_json(const GeneratorSpec& g) {
    json params = json::object();
    for (const auto& [k, v] : g.params) params[k] = v;
    return json{{"kind", to_string(g.kind)}, {"params", params}, {"seed", g.seed}};
}

GeneratorSpec generator_spec_from_json(const json& j) {
    GeneratorSpec g;
    g.kind = parse_generator_kind(field<std::string>(j, "kind"));
    if (j.contains("params")) {
        for (const auto& [k, v] : j.at("params").items()) {
            if (!v.is_number_integer()) throw UsageError("generator parameter '" + k + "' must be an integer");
            g.params[k] = v.get<std::int64_t>();
        }
    }
    if (j.contains("seed")) g.seed = field<std::uint64_t>(j, "seed");
    return g;
}

json to_json(const ScalingRun& r) {
    json ms = json::array();
    for (const auto& m : r.measurements) {
        ms.push_back(json{{"param", m.param}, {"n", m.n}, {"b_count", m.b_count}});
    }
    return json{{"generator", to_json(r.spec)},
                {"ladder", json{{"param", r.ladder.param}, {"values", r.ladder.values}}},
                {"partition", partition_json(r.partition)},
                {"include_diagonal", r.include_diagonal},
                {"two_set", r.two_set},
                {"fast_path", r.fast_path},
                {"cross_validated", r.cross_validated},
                {"measurements", ms},
                {"fit", json{{"slope", r.fit.slope}, {"intercept", r.fit.intercept}, {"r_squared", r.fit.r_squared}}},
                {"warnings", r.warnings}};
}

json to_json(const ComparisonReport& c) {
    json rows = json::array();
    for (const auto& v : c.verdicts) {
        rows.push_back(json{{"key", v.key},
                            {"exponent", v.exponent.str()},
                            {"verdict", to_string(v.verdict)},
                            {"sizes_below", v.sizes_below},
                            {"detail", v.detail}});
    }
    return json{{"measured_slope", c.measured_slope}, {"wording", c.wording}, {"verdicts", rows}};
}

json energy_json(const AdaptabilityResult& a, const Rational& min_sep, std::size_t kept, std::size_t removed) {
    return json{{"s", a.report.s},
                {"n", a.report.n},
                {"energy", a.report.energy},
                {"diam_sq", a.report.diameter_sq},
                {"min_sep_sq_ratio", min_sep.str()},
                {"threshold", a.report.threshold},
                {"adaptable", a.adaptable},
                {"kept", kept},
                {"removed", removed}};
}

ScanConfig scan_config_from_json(const json& j) {
    ScanConfig c;
    if (!j.contains("generator")) throw UsageError("scan config needs a 'generator' object");
    c.spec = generator_spec_from_json(j.at("generator"));
    if (!j.contains("ladder")) throw UsageError("scan config needs a 'ladder' object");
    const auto& l = j.at("ladder");
    c.ladder.param = field<std::string>(l, "param");
    c.ladder.values = field<std::vector<std::int64_t>>(l, "values");
    if (!j.contains("partition")) throw UsageError("scan config needs a 'partition'");
    c.partition = partition_from_json(j.at("partition"));
    if (j.contains("include_diagonal")) c.include_diagonal = field<bool>(j, "include_diagonal");
    return c;
}

json to_json(const ScanConfig& c) {
    json j{{"generator", to_json(c.spec)},
           {"ladder", json{{"param", c.ladder.param}, {"values", c.ladder.values}}},
           {"partition", partition_json(c.partition)}};
    if (c.include_diagonal) j["include_diagonal"] = *c.include_diagonal;
    return j;
}

}  // namespace mpdist
