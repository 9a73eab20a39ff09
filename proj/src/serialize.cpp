#include "sievelab/serialize.hpp"

#include <sstream>

#include "sievelab/errors.hpp"

namespace sievelab {

namespace {

Json rational_json(const Rational& q) { return Json{{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}}; }

Rational rational_from(const Json& j) {
  Rational q(mpz_class(j.at("num").get<std::string>()), mpz_class(j.at("den").get<std::string>()));
  if (q.get_den() == 0) throw PreconditionError("certificate: zero denominator");
  q.canonicalize();
  return q;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string scalar_text(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

void flatten(const Json& j, const std::string& path, std::ostringstream& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), path + "/" + it.key(), out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "/" + std::to_string(i), out);
  } else {
    out << csv_field(path) << ',' << csv_field(scalar_text(j)) << '\n';
  }
}

}  // namespace

Json to_json(const GapRecord& g) { return {{"p", g.p}, {"q", g.q}, {"gap", g.gap}}; }

Json certificate_json(const AdmissibleTuple& t) {
  Json c = Json::object();
  for (const auto& [p, r] : t.certificate) c[std::to_string(p)] = r;
  return c;
}

Json to_json(const AdmissibleTuple& t) {
  return {{"k", t.size()}, {"offsets", t.offsets}, {"diameter", t.diameter()}, {"certificate", certificate_json(t)}};
}

Json to_json(const Refutation& r) { return {{"refuting_prime", r.prime}, {"covering_offsets", r.covering}}; }

Json to_json(const StatReport& s) {
  return {{"x", s.x}, {"statistic", s.statistic}, {"value", s.value}, {"reference", s.reference},
          {"deviation", s.deviation}};
}

Json to_json(const PigeonholeReport& r) {
  return {{"X", r.X},
          {"H", r.H},
          {"samples", r.samples},
          {"exact", r.exact},
          {"seed", r.seed},
          {"prob_sum", r.prob_sum},
          {"frequencies", r.frequencies},
          {"min_gap", to_json(r.min_gap)},
          {"min_gap_found", r.min_gap_found},
          {"pigeonhole_holds", r.prob_sum <= 1.0 || r.min_gap_found <= r.H}};
}

Json to_json(const MertensSums& m) {
  return {{"n", m.n}, {"sum_log_p_over_p", m.sum_log_p_over_p}, {"sum_inv_p", m.sum_inv_p}, {"d1", m.d1}, {"d2", m.d2}};
}

Json to_json(const ErdosKacResult& e) {
  return {{"empirical", e.empirical}, {"gaussian", e.gaussian}, {"ks_distance", e.ks_distance}};
}

Json to_json(const GpyParams& p) {
  return {{"k", p.k()}, {"l", p.l}, {"b", p.b}, {"x", p.x}, {"tuple", p.tuple.offsets}};
}

Json to_json(const GpyReport& r) {
  return {{"params", to_json(r.params)},
          {"D_limit", r.D_limit},
          {"S1", r.S1},
          {"S2", r.S2},
          {"S2_log", r.S2_log},
          {"objective", r.objective},
          {"objective_sign", r.objective > 0 ? 1 : (r.objective < 0 ? -1 : 0)},
          {"S1_rearranged", r.S1_rearranged},
          {"S2_rearranged", r.S2_rearranged},
          {"S2_log_rearranged", r.S2_log_rearranged},
          {"E", r.E},
          {"E_index", r.E_index},
          {"tolerance", r.tolerance},
          {"zhang_level_b", kZhangLevel}};
}

Json to_json(const MkCertificate& c) {
  Json basis = Json::array();
  for (const auto& b : c.basis) basis.push_back({b.a, b.b});
  Json witness = Json::array();
  for (const auto& w : c.witness) witness.push_back(rational_json(w));
  Json j = {{"k", c.k}, {"method", to_string(c.method)}, {"lower_bound", c.lower_bound}};
  if (c.method == MkMethod::poly) {
    j["degree"] = c.degree;
    j["basis"] = basis;
    j["witness"] = witness;
    j["exact_value"] = rational_json(c.exact_value);
    j["eigenvalue"] = c.eigenvalue;
    j["residual"] = c.residual;
  } else {
    j["A"] = c.A;
    j["T"] = c.T;
    j["variant"] = to_string(c.variant);
  }
  return j;
}

MkCertificate certificate_from_json(const Json& j) {
  MkCertificate c;
  if (j.at("method").get<std::string>() != "poly") throw PreconditionError("certificate_from_json: only poly certificates");
  c.k = j.at("k").get<int>();
  c.method = MkMethod::poly;
  c.degree = j.at("degree").get<int>();
  for (const auto& b : j.at("basis")) c.basis.push_back({b.at(0).get<int>(), b.at(1).get<int>()});
  for (const auto& w : j.at("witness")) c.witness.push_back(rational_from(w));
  c.exact_value = rational_from(j.at("exact_value"));
  c.lower_bound = j.at("lower_bound").get<double>();
  c.eigenvalue = j.value("eigenvalue", 0.0);
  c.residual = j.value("residual", 0.0);
  return c;
}

Json to_json(const GBoundResult& g) {
  return {{"k", g.params.k},
          {"A", g.params.A},
          {"T", g.params.T},
          {"variant", to_string(g.params.variant)},
          {"int_g", g.integrals.g},
          {"int_g2", g.integrals.g2},
          {"int_tg2", g.integrals.tg2},
          {"mu", g.mu},
          {"first_factor", g.first_factor},
          {"correction", g.correction},
          {"bound", g.bound},
          {"useful", g.useful}};
}

Json to_json(const GapBoundReport& r) {
  return {{"k", r.k},
          {"degree", r.degree},
          {"theta", r.theta},
          {"m", r.m},
          {"threshold", r.threshold},
          {"dhl", r.dhl},
          {"dhl_statement", "DHL(" + std::to_string(r.k) + "," + std::to_string(r.m + 1) + ")"},
          {"inequality", r.inequality},
          {"assumption", r.assumption},
          {"claim", r.claim},
          {"gap_bound", r.dhl ? Json(r.gap_bound) : Json(nullptr)},
          {"tuple", to_json(r.tuple)},
          {"certificate", to_json(r.certificate)}};
}

Json to_json(const IJEstimate& e) {
  return {{"samples", e.samples}, {"I", e.I},   {"I_se", e.I_se},          {"J", e.J},
          {"J_se", e.J_se},       {"ratio", e.ratio()}, {"ratio_se", e.ratio_se()}};
}

Json to_json(const CoveringSystem& s) {
  Json res = Json::object();
  for (const auto& [p, c] : s.residues) res[std::to_string(p)] = c;
  return {{"n", s.n}, {"first", s.first}, {"y_len", s.last}, {"residues", res}, {"uncovered", s.uncovered},
          {"complete", s.complete()}};
}

Json to_json(const CompositeRun& r) {
  return {{"y", r.y.get_str()}, {"first", r.first}, {"length", r.length}, {"witnesses", r.witnesses}};
}

std::string flatten_csv(const Json& j) {
  std::ostringstream out;
  out << "path,value\n";
  flatten(j, "", out);
  return out.str();
}

std::string stat_rows_csv(const Json& rows) {
  std::ostringstream out;
  out << "x,statistic,value,reference,deviation\n";
  for (const auto& r : rows) {
    out << scalar_text(r.at("x")) << ',' << csv_field(scalar_text(r.at("statistic"))) << ','
        << scalar_text(r.at("value")) << ',' << scalar_text(r.at("reference")) << ','
        << scalar_text(r.at("deviation")) << '\n';
  }
  return out.str();
}

}  // namespace sievelab
