#include <json.hpp>

#include "kissing/proofcheck.hpp"

namespace kissing::proof {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json interval_json(const RationalInterval& iv) {
  return ordered_json{{"lo", iv.lo().str()}, {"hi", iv.hi().str()}, {"lo_decimal", iv.lo().to_decimal(15)},
                      {"hi_decimal", iv.hi().to_decimal(15)}};
}

ordered_json expansion_json(const GegenbauerExpansion& e) {
  ordered_json coeffs = ordered_json::array();
  for (const auto& [k, c] : e.coeffs()) coeffs.push_back(ordered_json{{"k", k}, {"c", c.str()}});
  return ordered_json{{"dim", e.dim()}, {"coeffs", coeffs}};
}

ordered_json claim_json(const ClaimResult& r) {
  ordered_json j;
  j["id"] = to_string(r.id);
  j["statement"] = r.statement;
  j["verdict"] = to_string(r.verdict);
  j["domain"] = interval_json(r.domain);
  j["enclosure"] = r.enclosure ? interval_json(*r.enclosure) : ordered_json(nullptr);
  j["bound"] = r.bound ? ordered_json(r.bound->str()) : ordered_json(nullptr);
  if (const auto s = r.slack()) {
    j["slack"] = s->str();
    j["slack_decimal"] = s->to_decimal(6);
  } else {
    j["slack"] = nullptr;
    j["slack_decimal"] = nullptr;
  }
  ordered_json signs = ordered_json::array();
  for (const auto& s : r.signs) {
    ordered_json roots = ordered_json::array();
    for (const auto& w : s.verdict.witnesses) roots.push_back(interval_json(w));
    signs.push_back(ordered_json{{"function", s.function},
                                 {"expected", s.expected},
                                 {"tag", to_string(s.verdict.tag)},
                                 {"root_count", s.verdict.witnesses.size()},
                                 {"roots", roots},
                                 {"sign_change", s.verdict.sign_change ? interval_json(*s.verdict.sign_change)
                                                                       : ordered_json(nullptr)}});
  }
  j["signs"] = signs;
  ordered_json cands = ordered_json::array();
  for (const auto& c : r.candidates)
    cands.push_back(ordered_json{{"location", interval_json(c.location)}, {"value", interval_json(c.value)}});
  j["candidates"] = cands;
  j["bnb_nodes"] = r.bnb_nodes ? ordered_json(*r.bnb_nodes) : ordered_json(nullptr);
  j["bnb_depth"] = r.bnb_depth ? ordered_json(*r.bnb_depth) : ordered_json(nullptr);
  return j;
}

}  // namespace

std::string certificate_json(const Certificate& cert) {
  const auto& c = cert.constants;
  ordered_json j;
  j["format"] = "kissing3-certificate/1";
  j["constants"] = ordered_json{{"threshold", c.threshold.str()},
                                {"f", expansion_json(c.f)},
                                {"min_cos", c.min_cos.str()},
                                {"max_cos", c.max_cos.str()},
                                {"enclosure_width", c.enclosure_width.str()},
                                {"neg_inv_sqrt2", interval_json(c.cap_cos_boundary)},
                                {"neg_cos_pi_12", interval_json(c.i_lo)},
                                {"neg_sqrt2_4_minus_half", interval_json(c.j_lo)},
                                {"neg_sqrt_2_3", interval_json(c.j_hi)}};
  j["admissibility"] = ordered_json{{"pass", cert.admissible()}, {"negative_indices", cert.negative_coefficients}};
  ordered_json claims = ordered_json::array();
  for (const auto& r : cert.claims) claims.push_back(claim_json(r));
  j["claims"] = claims;
  ordered_json ids = ordered_json::array();
  for (const auto& e : cert.identities)
    ids.push_back(ordered_json{
        {"name", e.name}, {"lhs", interval_json(e.lhs)}, {"rhs", interval_json(e.rhs)}, {"agrees", e.agrees}});
  j["endpoint_identities"] = ids;
  if (cert.bound) {
    j["bound"] = ordered_json{{"c0", c.f.coeff(0).str()},
                              {"ratio", cert.bound->ratio.str()},
                              {"ratio_decimal", cert.bound->ratio.to_fixed(8)},
                              {"floor", cert.bound->max_n.get_str()}};
  } else {
    j["bound"] = nullptr;
  }
  j["assumptions"] = cert.assumptions;
  j["all_pass"] = cert.all_pass();
  j["conclusion"] = cert.conclusion ? ordered_json(*cert.conclusion) : ordered_json(nullptr);
  return j.dump(2) + "\n";
}

}  // namespace kissing::proof
