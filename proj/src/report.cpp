#include "diastasis/report.hpp"

#include <algorithm>

namespace diastasis {

using nlohmann::json;

CheckRecord CheckRecord::at_most(std::string name, long samples, double value, double tolerance) {
  return {std::move(name), samples, value, tolerance, Relation::AtMost, value <= tolerance};
}

CheckRecord CheckRecord::at_least(std::string name, long samples, double value, double tolerance) {
  return {std::move(name), samples, value, tolerance, Relation::AtLeast, value >= tolerance};
}

bool Report::pass() const {
  return std::all_of(records.begin(), records.end(), [](const CheckRecord& r) { return r.pass; });
}

json Report::to_json() const {
  json checks = json::array();
  for (const CheckRecord& r : records) {
    checks.push_back({{"name", r.name},
                      {"samples", r.samples},
                      {"max_deviation", r.max_deviation},
                      {"tolerance", r.tolerance},
                      {"relation", r.relation == Relation::AtMost ? "<=" : ">="},
                      {"pass", r.pass}});
  }
  return {{"schema", kSchema}, {"suite", suite},   {"seed", seed},          {"config", config},
          {"records", checks}, {"pass", pass()},   {"wall_time_s", wall_time_s}};
}

json complex_vector_to_json(const CVec& z) {
  json out = json::array();
  for (Eigen::Index k = 0; k < z.size(); ++k) {
    out.push_back({z(k).real(), z(k).imag()});
  }
  return out;
}

CVec complex_vector_from_json(const json& j) {
  if (!j.is_array() || j.empty()) {
    throw std::invalid_argument("expected a non-empty array of [re, im] pairs");
  }
  CVec z(static_cast<Eigen::Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) {
    const json& pair = j[k];
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
      throw std::invalid_argument("complex scalars must be [re, im] pairs");
    }
    z(static_cast<Eigen::Index>(k)) = Complex(pair[0].get<double>(), pair[1].get<double>());
  }
  return z;
}

bary::BarycentreProblem problem_from_json(const json& j) {
  if (!j.is_object() || !j.contains("atoms")) {
    throw std::invalid_argument("problem: object with an \"atoms\" array required");
  }
  std::vector<bary::Atom> atoms;
  for (const json& a : j.at("atoms")) {
    if (!a.contains("z") || !a.contains("w") || !a.at("w").is_number()) {
      throw std::invalid_argument("problem: each atom needs \"z\" and numeric \"w\"");
    }
    atoms.push_back({BallPoint(complex_vector_from_json(a.at("z"))), a.at("w").get<double>()});
  }
  bary::DiscreteMeasure measure(std::move(atoms));
  if (j.contains("n") && j.at("n").get<Eigen::Index>() != measure.dim()) {
    throw std::invalid_argument("problem: \"n\" does not match the atom dimension");
  }

  std::vector<BallPoint> images;
  if (j.contains("images")) {
    for (const json& p : j.at("images")) images.emplace_back(complex_vector_from_json(p));
  } else {
    for (const bary::Atom& a : measure.atoms()) images.push_back(a.point);
  }
  if (images.empty()) {
    throw std::invalid_argument("problem: images must not be empty");
  }
  BallPoint anchor = j.contains("anchor") ? BallPoint(complex_vector_from_json(j.at("anchor"))) : images.front();
  const double t = j.value("t", 1.0);
  const double c = j.value("c", 0.0);
  bary::BarycentreProblem p{std::move(measure), std::move(images), t, std::move(anchor), c};
  p.validate();
  return p;
}

json problem_to_json(const bary::BarycentreProblem& p) {
  json atoms = json::array();
  for (const bary::Atom& a : p.measure.atoms()) {
    atoms.push_back({{"z", complex_vector_to_json(a.point.z())}, {"w", a.weight}});
  }
  json images = json::array();
  for (const BallPoint& q : p.images) images.push_back(complex_vector_to_json(q.z()));
  return {{"n", p.anchor.dim()}, {"atoms", atoms},  {"images", images},
          {"t", p.t},            {"anchor", complex_vector_to_json(p.anchor.z())}, {"c", p.c}};
}

}  // namespace diastasis
