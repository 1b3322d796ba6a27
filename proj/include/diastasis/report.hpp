#pragma once

/// Verification reports and the JSON encodings shared by the CLI.

#include "diastasis/barycentre.hpp"
#include "diastasis/geometry_types.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace diastasis {

enum class Relation { AtMost, AtLeast };

/// One judged quantity. `max_deviation` is the worst observed value of the
/// checked quantity; it passes when it is <= (AtMost) or >= (AtLeast) the
/// tolerance.
struct CheckRecord {
  std::string name;
  long samples = 0;
  double max_deviation = 0;
  double tolerance = 0;
  Relation relation = Relation::AtMost;
  bool pass = false;

  static CheckRecord at_most(std::string name, long samples, double value, double tolerance);
  static CheckRecord at_least(std::string name, long samples, double value, double tolerance);
};

struct Report {
  static constexpr int kSchema = 1;

  std::string suite;
  std::uint64_t seed = 0;
  nlohmann::json config = nlohmann::json::object();
  std::vector<CheckRecord> records;
  double wall_time_s = 0;

  bool pass() const;
  nlohmann::json to_json() const;
};

// Complex values are [re, im] pairs.
nlohmann::json complex_vector_to_json(const CVec& z);
CVec complex_vector_from_json(const nlohmann::json& j);

/// Problem file:
///   {"n": 2, "atoms": [{"z": [[re,im],...], "w": 1.0}, ...],
///    "images": [[[re,im],...], ...], "t": 1.0, "anchor": [[re,im],...], "c": 3.0}
/// `images` defaults to the atom points, `t` to 1, `anchor` to the first
/// image, `c` to 0. Throws std::invalid_argument / DomainError.
bary::BarycentreProblem problem_from_json(const nlohmann::json& j);
nlohmann::json problem_to_json(const bary::BarycentreProblem& p);

}  // namespace diastasis
