#include "diastasis/barycentre.hpp"
#include "diastasis/classical_domains.hpp"
#include "diastasis/entropy.hpp"
#include "diastasis/hyperbolic_ball.hpp"
#include "diastasis/report.hpp"
#include "diastasis/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace diastasis;
using nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

Vec parse_reals(const std::string& text, const std::string& flag) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(flag + ": '" + item + "' is not a number");
    }
  }
  if (values.empty() || values.size() % 2 != 0) {
    throw UsageError(flag + ": expected an even number of comma-separated reals (interleaved re,im)");
  }
  return Eigen::Map<Vec>(values.data(), static_cast<Eigen::Index>(values.size()));
}

void require_size(const Vec& x, Eigen::Index want, const std::string& flag, const GeometrySpec& g) {
  if (x.size() != want) {
    throw UsageError(flag + ": " + g.name() + " needs " + std::to_string(want) + " reals, got " +
                     std::to_string(x.size()));
  }
}

// Returns {diastasis, distance}; distance is null for the matrix domain.
json evaluate_pair(const GeometrySpec& g, const Vec& w, const Vec& z, bool want_distance) {
  switch (g.kind) {
    case GeometryKind::Ball: {
      require_size(w, 2 * g.param, "--w", g);
      require_size(z, 2 * g.param, "--z", g);
      const BallPoint a = BallPoint::from_real(w), b = BallPoint::from_real(z);
      return want_distance ? ball::distance(a, b) : ball::diastasis(a, b);
    }
    case GeometryKind::Polydisc: {
      require_size(w, 2 * g.param, "--w", g);
      require_size(z, 2 * g.param, "--z", g);
      const PolydiscPoint a = PolydiscPoint::from_real(w), b = PolydiscPoint::from_real(z);
      return want_distance ? domains::polydisc_distance(a, b) : domains::polydisc_diastasis(a, b);
    }
    case GeometryKind::Omega1: {
      if (want_distance) throw UsageError("distance: not available for " + g.name());
      require_size(w, 2 * g.param * g.param, "--w", g);
      require_size(z, 2 * g.param * g.param, "--z", g);
      return domains::omega1_diastasis(DomainMatrixPoint::from_real(z, g.param),
                                       DomainMatrixPoint::from_real(w, g.param));
    }
  }
  return nullptr;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open problem file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError("problem file is not valid JSON: " + std::string(e.what()));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Diastasis geometry on the complex hyperbolic ball, polydiscs and the first classical domain"};
  app.require_subcommand(1);

  std::string space = "ball1", w_text, z_text;
  auto* diast = app.add_subcommand("diastasis", "Calabi diastasis D(w, z)");
  auto* dist = app.add_subcommand("distance", "Riemannian distance (ball, polydisc)");
  for (CLI::App* sub : {diast, dist}) {
    sub->add_option("--space", space, "ballN, polyN or omegaN")->required();
    sub->add_option("--w", w_text, "first point, comma-separated interleaved reals")->required();
    sub->add_option("--z", z_text, "second point, same encoding")->required();
  }

  std::string problem_path;
  auto* bc = app.add_subcommand("barycentre", "Solve a barycentre problem file");
  bc->add_option("--problem", problem_path, "problem JSON file")->required();

  double tol = 0.05;
  std::string entropy_space;
  auto* ent = app.add_subcommand("entropy", "Critical exponent and diastatic entropy");
  ent->add_option("--space", entropy_space, "ballN or polyN")->required();
  ent->add_option("--tol", tol, "bisection tolerance (>= 1e-3)");

  std::string suite;
  std::uint64_t seed = 0;
  int samples = 1000;
  auto* ver = app.add_subcommand("verify", "Run a property suite");
  ver->add_option("suite", suite, "hyperbolic, domains, barycentre, operators, entropy or all")->required();
  ver->add_option("--seed", seed, "RNG seed");
  ver->add_option("--samples", samples, "sample count scale");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  json out;
  int code = kExitPass;
  try {
    if (diast->parsed() || dist->parsed()) {
      const GeometrySpec g = GeometrySpec::parse(space);
      const bool want_distance = dist->parsed();
      out = {{"space", g.name()},
             {want_distance ? "distance" : "diastasis",
              evaluate_pair(g, parse_reals(w_text, "--w"), parse_reals(z_text, "--z"), want_distance)}};
    } else if (bc->parsed()) {
      const bary::BarycentreProblem p = problem_from_json(read_json_file(problem_path));
      const bary::BarycentreResult r = bary::solve_barycentre(p);
      out = {{"point", complex_vector_to_json(r.point.z())},
             {"residual", r.residual},
             {"iterations", r.iterations},
             {"min_hessian_eigenvalue", r.min_hessian_eigenvalue}};
    } else if (ent->parsed()) {
      const GeometrySpec g = GeometrySpec::parse(entropy_space);
      if (g.kind == GeometryKind::Omega1) throw UsageError("entropy: " + g.name() + " is not supported");
      if (!(tol >= 1e-3)) throw UsageError("--tol must be >= 1e-3");
      const double crit = entropy::critical_exponent(g, tol);
      out = {{"space", g.name()},
             {"tol", tol},
             {"critical_exponent", crit},
             {"x_constant", g.x_constant()},
             {"diastatic_entropy", g.x_constant() * crit}};
    } else if (ver->parsed()) {
      if (!verify::is_suite(suite)) throw UsageError("unknown suite '" + suite + "'");
      if (samples < 1) throw UsageError("--samples must be >= 1");
      const auto start = std::chrono::steady_clock::now();
      Report report = verify::run_suite(suite, seed, samples);
      report.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      out = report.to_json();
      code = report.pass() ? kExitPass : kExitFail;
    }
  } catch (const bary::BarycentreNotConverged& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  std::cout << out.dump(2) << std::endl;
  return code;
}
