// Run reports: the JSON document emitted by the CLI for a single run,
// pairing the simulated acceptance probability with the analytic
// prediction. The field set is frozen; additions require a schema bump.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "afa/encoding.hpp"
#include "afa/powereq.hpp"

namespace afa {

inline constexpr int report_schema_version = 1;

struct RunReport {
    unsigned long long input_length = 0;
    std::vector<long long> block_counts;
    std::string machine_id;
    long k = 0;
    std::string accept_probability_decimal;
    std::optional<std::string> accept_probability_rational;  // exact backend only
    std::string decision;  // "accept" | "reject"
    std::string oracle_prediction;
    std::string agreement_delta;
};

// Strict majority: accept exactly when the probability exceeds 1/2.
inline bool accept_decision(const Rational& p) { return p > Rational(1, 2); }
inline bool accept_decision(const BigFloat& p) { return p > BigFloat(1, p.prec()) / 2L; }

inline RunReport make_report(const powereq::PowerEqMachine& pm, std::string_view input,
                             const RunResult<Rational>& result) {
    const Rational predicted = powereq::predicted_acceptance(input, pm.k);
    const Rational delta = ScalarTraits<Rational>::abs_value(result.accept_probability - predicted);
    RunReport r;
    r.input_length = input.size();
    r.block_counts = powereq::blocks(input).counts;
    r.machine_id = "powereq(k=" + std::to_string(pm.k) + ")";
    r.k = pm.k;
    r.accept_probability_decimal = rational_to_decimal(result.accept_probability);
    r.accept_probability_rational = result.accept_probability.get_str();
    r.decision = accept_decision(result.accept_probability) ? "accept" : "reject";
    r.oracle_prediction = rational_to_decimal(predicted);
    r.agreement_delta = delta == 0 ? "0" : rational_to_decimal(delta);
    return r;
}

inline RunReport make_report(const encoding::CombinedMachine& cm, std::string_view input,
                             const RunResult<BigFloat>& result) {
    const BigFloat predicted = encoding::predicted_acceptance(input, cm.oracle, cm.k,
                                                              cm.angle.terms, cm.precision_bits);
    RunReport r;
    r.input_length = input.size();
    r.block_counts = powereq::blocks(input).counts;
    r.machine_id = "combined(oracle=" + cm.oracle.name() + ",k=" + std::to_string(cm.k) +
                   ",n_max=" + std::to_string(cm.n_max) + ",guard=" + std::to_string(cm.guard) +
                   ",prec=" + std::to_string(cm.precision_bits) + ")";
    r.k = cm.k;
    r.accept_probability_decimal = result.accept_probability.str();
    r.decision = accept_decision(result.accept_probability) ? "accept" : "reject";
    r.oracle_prediction = predicted.str();
    r.agreement_delta = abs(result.accept_probability - predicted).str(6);
    return r;
}

inline nlohmann::json to_json(const RunReport& r) {
    nlohmann::json probability{{"decimal", r.accept_probability_decimal}};
    if (r.accept_probability_rational) probability["rational"] = *r.accept_probability_rational;
    return nlohmann::json{
        {"schema_version", report_schema_version},
        {"input_summary", {{"length", r.input_length}, {"blocks", r.block_counts}}},
        {"machine_id", r.machine_id},
        {"k", r.k},
        {"accept_probability", probability},
        {"decision", r.decision},
        {"oracle_prediction", r.oracle_prediction},
        {"agreement_delta", r.agreement_delta},
    };
}

}  // namespace afa
