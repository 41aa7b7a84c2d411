#include "entorder/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace entorder::io {

namespace {

double require_number(const json& j, const std::string& key) {
    if (!j.contains(key) || !j[key].is_number())
        throw ParseError("missing numeric field \"" + key + "\"");
    return j[key].get<double>();
}

double number_or(const json& j, const std::string& key, double fallback) {
    return j.contains(key) ? require_number(j, key) : fallback;
}

json finite_or_null(double v) {
    if (std::isnan(v)) return nullptr;
    if (std::isinf(v)) return v > 0 ? json("inf") : json("-inf");
    return v;
}

}  // namespace

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    return j;
}

SpectrumInput load_spectrum_file(const std::string& path) {
    if (path.size() > 5 && path.substr(path.size() - 5) == ".json") {
        const json j = load_json_file(path);
        if (j.contains("lambdas")) {
            if (!j["lambdas"].is_array()) throw ParseError(path + ": \"lambdas\" must be an array");
            std::vector<double> lambdas = j["lambdas"].get<std::vector<double>>();
            return {tail_sums_raw(lambdas), std::move(lambdas), "json_lambdas"};
        }
        if (j.contains("tail_log")) {
            if (!j["tail_log"].is_array())
                throw ParseError(path + ": \"tail_log\" must be an array");
            return {TailSequence::from_log_values(j["tail_log"].get<std::vector<double>>()),
                    std::nullopt, "json_tail_log"};
        }
        if (j.contains("generator"))
            return {tail_from_descriptor(j["generator"]), std::nullopt, "json_generator"};
        throw ParseError(path + ": expected \"lambdas\", \"tail_log\" or \"generator\"");
    }

    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::vector<double> lambdas;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        try {
            std::size_t used = 0;
            const double v = std::stod(line.substr(first), &used);
            const auto rest = line.find_first_not_of(" \t\r", first + used);
            if (rest != std::string::npos) throw std::invalid_argument("trailing characters");
            lambdas.push_back(v);
        } catch (const std::exception&) {
            throw ParseError(path + ":" + std::to_string(line_no) + ": not a number: " + line);
        }
    }
    if (lambdas.empty()) throw ParseError(path + ": no coefficients");
    return {tail_sums_raw(lambdas), std::move(lambdas), "csv_lambdas"};
}

TailSequence tail_from_descriptor(const json& d) {
    if (!d.is_object() || !d.contains("kind") || !d["kind"].is_string())
        throw ParseError("generator descriptor needs a \"kind\" string");
    const std::string kind = d["kind"].get<std::string>();
    if (kind == "squeezed") return squeezed_tail(require_number(d, "q"));
    if (kind == "geometric") return geometric_tail(require_number(d, "rate"));
    if (kind == "power_law")
        return power_law_tail(number_or(d, "exponent", number_or(d, "r", 1.0)),
                              number_or(d, "rate", 1.0));
    if (kind == "exp_rate") return geometric_tail(1.0 / require_number(d, "r"));
    if (kind == "log_oscillation" || kind == "paper_log_oscillation") {
        const double q = require_number(d, "q");
        const double r = require_number(d, "r");
        std::optional<double> shift;
        if (d.contains("shift")) shift = require_number(d, "shift");
        const double r_lo = number_or(d, "r_lo", r), r_hi = number_or(d, "r_hi", r);
        return oscillation_member_tail(LogOscillationFamily::create(q, r_lo, r_hi, shift), r);
    }
    throw ParseError("unknown generator kind \"" + kind + "\"");
}

json descriptor_of(const TailSequence& tail) {
    if (tail.finite()) return {{"kind", "finite"}, {"rank", tail.rank()}};
    json j{{"kind", tail.generator()->kind()}};
    for (const auto& [name, value] : tail.generator()->parameters()) j[name] = value;
    return j;
}

TailFamily family_from_descriptor(const json& d) {
    if (!d.is_object() || !d.contains("kind") || !d["kind"].is_string())
        throw ParseError("family descriptor needs a \"kind\" string");
    const std::string kind = d["kind"].get<std::string>();
    const double r_lo = require_number(d, "r_lo"), r_hi = require_number(d, "r_hi");
    const int grid = static_cast<int>(number_or(d, "grid", 5));
    if (!(r_lo < r_hi)) throw ParseError("family descriptor needs r_lo < r_hi");
    if (grid < 1) throw ParseError("family descriptor needs grid >= 1");
    if (kind == "power_law") return power_law_family(r_lo, r_hi, grid);
    if (kind == "exp_rate") return exp_rate_family(r_lo, r_hi, grid);
    if (kind == "log_oscillation" || kind == "paper_log_oscillation") {
        std::optional<double> shift;
        if (d.contains("shift")) shift = require_number(d, "shift");
        return oscillation_family(
            LogOscillationFamily::create(require_number(d, "q"), r_lo, r_hi, shift), grid);
    }
    throw ParseError("unknown family kind \"" + kind + "\"");
}

PosetInput load_poset(const json& spec) {
    if (!spec.contains("elements") || !spec["elements"].is_array())
        throw ParseError("poset spec needs an \"elements\" array");
    const auto labels = spec["elements"].get<std::vector<std::string>>();
    auto index_of = [&](const std::string& name) -> std::size_t {
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == name) return i;
        throw ParseError("unknown element \"" + name + "\"");
    };
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    if (spec.contains("edges")) {
        for (const auto& e : spec["edges"]) {
            if (!e.is_array() || e.size() != 2) throw ParseError("edges must be [from, to] pairs");
            edges.emplace_back(index_of(e[0].get<std::string>()),
                               index_of(e[1].get<std::string>()));
        }
    }
    PosetInput out{FinitePoset::closure(labels.size(), edges, labels), std::nullopt};
    if (spec.contains("chain")) {
        Chain c;
        for (const auto& m : spec["chain"]["members"]) c.members.push_back(index_of(m.get<std::string>()));
        c.params = spec["chain"]["params"].get<std::vector<double>>();
        out.chain = std::move(c);
    }
    return out;
}

// ------------------------------------------------------------- serializers

json to_json(const ValidityReport& r) {
    json j{{"positivity_ok", r.positivity_ok},
           {"monotonicity_ok", r.monotonicity_ok},
           {"convexity_ok", r.convexity_ok},
           {"normalization_ok", r.normalization_ok},
           {"all_ok", r.all_ok()}};
    j["first_violation"] = r.first_violation ? json(*r.first_violation) : json(nullptr);
    return j;
}

json to_json(const TrendWindow& w) {
    return {{"decade_lo", w.decade_lo},
            {"decade_hi", w.decade_hi},
            {"n_lo", finite_or_null(w.n_lo)},
            {"n_hi", finite_or_null(w.n_hi)},
            {"min_log_ratio", finite_or_null(w.min_log_ratio)},
            {"max_log_ratio", finite_or_null(w.max_log_ratio)},
            {"samples", w.samples}};
}

json to_json(const TrendReport& r) {
    json windows = json::array();
    for (const auto& w : r.windows)
        if (w.samples > 0) windows.push_back(to_json(w));
    return {{"direction", r.direction},
            {"verdict", to_string(r.verdict)},
            {"evidence",
             {{"record_min_log", finite_or_null(r.evidence.record_min_log)},
              {"record_max_log", finite_or_null(r.evidence.record_max_log)},
              {"min_falling", r.evidence.min_falling},
              {"min_settled", r.evidence.min_settled},
              {"max_rising", r.evidence.max_rising},
              {"max_settled", r.evidence.max_settled},
              {"floor_crossed", r.evidence.floor_crossed},
              {"ceiling_crossed", r.evidence.ceiling_crossed},
              {"qualifying_min_windows", r.evidence.qualifying_min_windows},
              {"qualifying_max_windows", r.evidence.qualifying_max_windows},
              {"exact", r.evidence.exact}}},
            {"windows", std::move(windows)}};
}

json to_json(const IncomparabilityCertificate& c) {
    return {{"certified", c.certified},
            {"forward", to_json(c.forward)},
            {"backward", to_json(c.backward)}};
}

json to_json(const MeBounds& b) { return {{"k_minus", b.k_minus}, {"k_plus", b.k_plus}}; }

json to_json(const FamilyValidation& v) {
    json members = json::array();
    for (const auto& [r, rep] : v.member_reports)
        members.push_back({{"r", r}, {"report", to_json(rep)}});
    json pairs = json::array();
    for (const auto& pc : v.pair_checks)
        pairs.push_back({{"r_heavy", pc.r_heavy},
                         {"r_light", pc.r_light},
                         {"dominant_direction", to_string(pc.dominant_direction)},
                         {"reverse_blocked", pc.reverse_blocked},
                         {"ok", pc.ok}});
    return {{"monotonicity_ok", v.monotonicity_ok},
            {"convexity_ok", v.convexity_ok},
            {"order_ok", v.order_ok},
            {"all_ok", v.all_ok()},
            {"conclusive", v.conclusive},
            {"members", std::move(members)},
            {"pairs", std::move(pairs)}};
}

json to_json(const FamilyMonotoneEstimate& e) {
    json table = json::array();
    for (const auto& row : e.table)
        table.push_back({{"r", row.r},
                         {"liminf_zero", to_string(row.liminf_zero)},
                         {"limsup_infinite", to_string(row.limsup_infinite)}});
    json j{{"r_minus_hat", e.r_minus_hat},
           {"r_plus_hat", e.r_plus_hat},
           {"conclusive", e.conclusive},
           {"monotone_classes", e.monotone_classes},
           {"table", std::move(table)}};
    j["minus_bracket"] =
        e.minus_bracket ? json{e.minus_bracket->first, e.minus_bracket->second} : json(nullptr);
    j["plus_bracket"] =
        e.plus_bracket ? json{e.plus_bracket->first, e.plus_bracket->second} : json(nullptr);
    return j;
}

json to_json(const LawReport& r) {
    auto law = [](const LawCounts& c) {
        return json{{"checked", c.checked}, {"violations", c.violations}};
    };
    return {{"bounds", law(r.bounds)},
            {"monotonicity", law(r.monotonicity)},
            {"separation", law(r.separation)},
            {"sandwich", law(r.sandwich)},
            {"totality", law(r.totality)},
            {"total_order", r.total_order},
            {"chain_covers_classes", r.chain_covers_classes},
            {"total_violations", r.total_violations()}};
}

json to_json(const MonotoneValues& mv, const FinitePoset& p) {
    json j = json::array();
    for (std::size_t i = 0; i < p.size(); ++i)
        j.push_back({{"element", p.label(i)}, {"r_minus", mv.r_minus[i]}, {"r_plus", mv.r_plus[i]}});
    return j;
}

json to_json(const IncomparabilityDemo& demo) {
    json certs = json::array();
    for (const auto& [r, cert] : demo.certificates)
        certs.push_back({{"r", r}, {"certificate", to_json(cert)}});
    return {{"family",
             {{"kind", "log_oscillation"},
              {"q", demo.family.q},
              {"r_lo", demo.family.r_lo},
              {"r_hi", demo.family.r_hi},
              {"delta", demo.family.delta},
              {"shift", demo.family.shift}}},
            {"horizon_decades", demo.schedule.decades},
            {"all_certified", demo.all_certified},
            {"reproduced", demo.reproduced},
            {"certificates", std::move(certs)},
            {"estimate", to_json(demo.estimate)}};
}

std::string trend_csv(const TrendReport& r) {
    std::ostringstream out;
    out.precision(17);
    out << "decade_lo,decade_hi,min_log_ratio,max_log_ratio\n";
    for (const auto& win : r.windows) {
        if (win.samples == 0) continue;
        out << win.decade_lo << ',' << win.decade_hi << ',' << win.min_log_ratio << ','
            << win.max_log_ratio << '\n';
    }
    return out.str();
}

}  // namespace entorder::io
