// io.hpp - file formats and JSON views of reports
//
// Spectrum files: CSV with one coefficient per line (descending), or JSON
// with "lambdas", "tail_log", or a "generator" descriptor. Poset files and
// family descriptors are JSON. All report types serialize to ordered JSON so
// identical runs produce byte-identical output.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "entorder/family_monotones.hpp"
#include "entorder/log_oscillation.hpp"
#include "entorder/order_core.hpp"
#include "entorder/slocc.hpp"
#include "entorder/spectra.hpp"

namespace entorder::io {

using json = nlohmann::ordered_json;

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SpectrumInput {
    TailSequence tail;
    std::optional<std::vector<double>> lambdas;  // present when the file listed coefficients
    std::string source;  // csv_lambdas | json_lambdas | json_tail_log | json_generator
};

SpectrumInput load_spectrum_file(const std::string& path);

// {"kind": "squeezed"|"geometric"|"power_law"|"exp_rate"|"log_oscillation", ...}
TailSequence tail_from_descriptor(const json& descriptor);
json descriptor_of(const TailSequence& tail);

// {"kind": ..., "r_lo": ..., "r_hi": ..., "grid": ...}
TailFamily family_from_descriptor(const json& descriptor);
json load_json_file(const std::string& path);

struct PosetInput {
    FinitePoset poset;
    std::optional<Chain> chain;
};
// {"elements": [...], "edges": [[a,b],...], "chain": {"members": [...], "params": [...]}}
PosetInput load_poset(const json& spec);

json to_json(const ValidityReport& r);
json to_json(const TrendWindow& w);
json to_json(const TrendReport& r);
json to_json(const IncomparabilityCertificate& c);
json to_json(const MeBounds& b);
json to_json(const FamilyValidation& v);
json to_json(const FamilyMonotoneEstimate& e);
json to_json(const LawReport& r);
json to_json(const MonotoneValues& mv, const FinitePoset& p);
json to_json(const IncomparabilityDemo& demo);

std::string trend_csv(const TrendReport& r);

}  // namespace entorder::io
