#pragma once

#include <json.hpp>

#include "spfq/analysis.hpp"
#include "spfq/experiments.hpp"
#include "spfq/params.hpp"
#include "spfq/preconditioner.hpp"

namespace spfq {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";

Json rational_json(const Rational& r);  // [num, den]

Json to_json(const PreconditionerParams& p, const ComparisonReport* cmp = nullptr);
Json to_json(const ComparisonReport& r);
Json to_json(const Theorem2Params& t);
Json to_json(const Check& c);
Json to_json(const CertificateReport& r);
Json to_json(const VerifyReport& r);
Json to_json(const GridResult& g);
Json to_json(const PreconditionPlan& p);
Json to_json(const RhoBudget& b);
Json to_json(const TrialStats& s);
Json to_json(const WeightEnumerator& e);
Json to_json(const DenseLemmaResult& d);

// {path, k, z, seed, row_weights, params}
Json sidecar_json(const GeneratedRows& g);

}  // namespace spfq
