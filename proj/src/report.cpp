#include "spfq/report.hpp"

#include <cmath>

namespace spfq {

namespace bmp = boost::multiprecision;

namespace {

Json item_json(const ComparisonItem& it) {
  Json x;
  x["table"] = it.table;
  x["field"] = it.field;
  x["published"] = it.published;
  x["derived"] = it.derived;
  x["confirmed"] = it.confirmed;
  if (!it.note.empty()) x["note"] = it.note;
  return x;
}

}  // namespace

Json rational_json(const Rational& r) {
  return Json::array({bmp::numerator(r).convert_to<long long>(), bmp::denominator(r).convert_to<long long>()});
}

Json to_json(const PreconditionerParams& p, const ComparisonReport* cmp) {
  Json j;
  j["q"] = p.q;
  j["epsilon"] = p.epsilon.convert_to<double>();
  j["epsilon_exact"] = to_string(p.epsilon);
  j["source"] = source_name(p.source);
  if (p.N) j["N"] = p.N;
  j["c4"] = rational_json(p.c4);
  j["beta0"] = rational_json(p.beta0);
  j["c3"] = rational_json(p.c3);
  j["c2"] = p.c2;
  j["ell"] = p.ell;
  j["delta"] = p.delta;
  j["delta_tight"] = p.delta_tight;
  j["k_min"] = p.k_min;
  j["sigma"] = rational_json(p.sigma);
  j["tau"] = p.tau;
  j["upsilon"] = p.upsilon;
  Json d = Json::array();
  if (cmp)
    for (const auto& it : cmp->discrepancies()) d.push_back(item_json(it));
  j["discrepancies"] = d;
  return j;
}

Json to_json(const ComparisonReport& r) {
  Json j;
  j["q"] = r.q;
  j["applicable"] = r.applicable;
  if (!r.reason.empty()) j["reason"] = r.reason;
  Json items = Json::array();
  for (const auto& it : r.items) items.push_back(item_json(it));
  j["items"] = std::move(items);
  return j;
}

Json to_json(const Theorem2Params& t) {
  Json j;
  j["N"] = t.N;
  j["q_min"] = t.q_min;
  j["sigma"] = rational_json(t.sigma);
  j["tau"] = t.tau;
  j["upsilon"] = t.upsilon;
  return j;
}

Json to_json(const Check& c) {
  Json j;
  j["label"] = c.label;
  j["status"] = status_name(c.status);
  if (!c.relation.empty()) j["relation"] = c.relation;
  if (!c.threshold.empty()) j["threshold"] = c.threshold;
  if (!c.published.empty()) j["published_threshold"] = c.published;
  j["value"] = std::isfinite(c.value) ? Json(c.value) : Json(nullptr);
  j["value_text"] = c.value_text;
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

Json to_json(const CertificateReport& r) {
  Json j;
  j["name"] = r.name;
  if (r.q) j["q"] = r.q;
  j["overall"] = r.overall();
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  j["checks"] = std::move(checks);
  j["notes"] = r.notes;
  return j;
}

Json to_json(const VerifyReport& r) {
  Json j;
  j["overall"] = r.overall();
  Json reps = Json::array();
  for (const auto& x : r.reports) reps.push_back(to_json(x));
  j["reports"] = std::move(reps);
  return j;
}

Json to_json(const GridResult& g) {
  Json j;
  j["max_gap"] = g.max_gap;
  j["argmax"] = g.argmax;
  j["tail_max_gap"] = g.tail_max_gap;
  j["points"] = g.points;
  j["status"] = status_name(g.status);
  return j;
}

Json to_json(const PreconditionPlan& p) {
  Json j;
  j["path"] = path_name(p.path);
  j["q"] = p.q;
  j["n"] = p.n;
  j["m"] = p.m;
  j["k"] = p.k;
  j["z"] = p.sparse_pattern ? Json(p.z) : Json(nullptr);
  j["sparse_rows"] = p.sparse_rows();
  j["dense_rows"] = p.dense_rows();
  j["ell"] = p.ell;
  j["effective_q_hat"] = p.effective_q_hat;
  j["sample_set_size"] = p.sample_set_size;
  if (p.schwartz_zippel_bound > 0) j["schwartz_zippel_bound"] = p.schwartz_zippel_bound;
  j["params"] = to_json(p.params);
  return j;
}

Json to_json(const RhoBudget& b) {
  Json j;
  j["epsilon"] = to_string(b.epsilon);
  j["k"] = b.k;
  j["theta_bound"] = b.theta.convert_to<double>();
  j["zeta_bound"] = b.zeta.convert_to<double>();
  j["rho1_bound"] = b.rho1.convert_to<double>();
  j["dense_bound"] = b.dense.convert_to<double>();
  j["total"] = b.total.convert_to<double>();
  j["report"] = to_json(b.report);
  return j;
}

Json to_json(const TrialStats& s) {
  Json j;
  Json cfg;
  cfg["q"] = s.q;
  cfg["n"] = s.n;
  cfg["m"] = s.m;
  cfg["epsilon"] = to_string(s.epsilon);
  cfg["seed"] = s.seed;
  cfg["density"] = s.density ? Json(*s.density) : Json(nullptr);
  j["config"] = std::move(cfg);
  j["path"] = path_name(s.path);
  j["added_rows"] = s.added_rows;
  j["trials"] = s.trials;
  j["successes"] = s.successes;
  j["success_rate"] = s.success_rate;
  j["ci95"] = Json::array({s.ci_low, s.ci_high});
  j["mean_added_nonzeros"] = s.mean_added_nonzeros;
  j["sd_added_nonzeros"] = s.sd_added_nonzeros;
  j["se_added_nonzeros"] = s.se_added_nonzeros;
  j["max_added_nonzeros"] = s.max_added_nonzeros;
  j["weight_bound"] = s.weight_bound;
  j["expected_weight"] = s.expected_weight;
  j["wall_time"] = s.wall_time;
  return j;
}

Json to_json(const WeightEnumerator& e) {
  Json j;
  j["q"] = e.q;
  j["n"] = e.n;
  j["m"] = e.m;
  j["a"] = e.a;
  return j;
}

Json to_json(const DenseLemmaResult& d) {
  Json j;
  j["q"] = d.q;
  j["n"] = d.n;
  j["ell"] = d.ell;
  j["total"] = d.total;
  j["failures"] = d.failures;
  j["exact"] = to_string(d.exact);
  j["bound"] = to_string(d.bound);
  j["holds"] = d.holds;
  return j;
}

Json sidecar_json(const GeneratedRows& g) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["path"] = path_name(g.plan.path);
  j["k"] = g.plan.k;
  j["z"] = g.plan.sparse_pattern ? Json(g.plan.z) : Json(nullptr);
  j["seed"] = g.seed;
  j["row_weights"] = g.row_weights;
  j["params"] = to_json(g.plan.params);
  j["plan"] = to_json(g.plan);
  return j;
}

}  // namespace spfq
