// Acceptance run: every criterion at its full sample count and tolerance.
// Prints one PASS/FAIL line per criterion, with the underlying records below it.

#include "diastasis/verify.hpp"

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace diastasis;
using namespace diastasis::verify;

namespace {

constexpr std::uint64_t kSeed = 20240601;

struct Criterion {
  int id;
  std::string title;
  double time_limit_s;
  std::function<Records()> run;
};

void append(Records& into, Records more) { into.insert(into.end(), more.begin(), more.end()); }

std::vector<Criterion> criteria() {
  return {
      {1, "ball diastasis = 2 log cosh rho", 5, [] { return ball_logcosh(kSeed + 1, 10000, {1, 2, 3}); }},
      {2, "gradient law |grad D| = 2 tanh rho < 2", 5, [] { return ball_gradient_law(kSeed + 2, 1000, {1, 2, 3}); }},
      {3, "ball Hessian vs finite differences, band (0,4)", 30, [] { return ball_hessian(kSeed + 3, 500, {1, 2}); }},
      {4, "omega1 gradient and Hessian bounds, diagonal slice formulas", 60,
       [] {
         Records r = omega1_bounds(kSeed + 4, 10000, 2, 0.95);
         append(r, omega1_diagonal_fd(kSeed + 40, 100, 2));
         return r;
       }},
      {5, "hereditary identities for ball and polydisc in omega1", 20,
       [] { return hereditary(kSeed + 5, 500, {2}); }},
      {6, "polydisc diastasis dominates 2 log cosh rho", 5,
       [] { return polydisc_inequality(kSeed + 6, 10000, {1, 2, 3}); }},
      {7, "barycentre solver residual and exact cases", 60,
       [] {
         Records r = barycentre_solver(kSeed + 7, 200);
         append(r, barycentre_exact_cases(kSeed + 70, 100));
         return r;
       }},
      {8, "barycentre map equivariance", 60, [] { return barycentre_equivariance(kSeed + 8, 100); }},
      {9, "operator identities, determinant inequality, Jacobian vs FD", 120,
       [] {
         Records r = operator_identities(kSeed + 9, 50, {1, 2}, 100);
         append(r, jacobian_fd(kSeed + 90, 50, {1, 2}));
         return r;
       }},
      {10, "extremal determinant ratio bound", 60, [] { return hsuk_extremal(kSeed + 10, 100000, 100, {2, 3}); }},
      {11, "critical exponent, entropy and condition (a)", 60,
       [] {
         Records r = entropy_critical({1, 2, 3}, 0.05);
         append(r, entropy_separation({1, 2, 3}, 0.05));
         append(r, entropy_condition_a({1, 2, 3}));
         return r;
       }},
  };
}

}  // namespace

int main() {
  int failed = 0;
  for (const Criterion& c : criteria()) {
    const auto start = std::chrono::steady_clock::now();
    Records records;
    std::string error;
    try {
      records = c.run();
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool pass = error.empty() && !records.empty() && secs < c.time_limit_s;
    for (const CheckRecord& r : records) pass = pass && r.pass;
    if (!pass) ++failed;

    std::printf("criterion %2d: %s  %-62s %7.2fs (limit %.0fs)\n", c.id, pass ? "PASS" : "FAIL", c.title.c_str(), secs,
                c.time_limit_s);
    for (const CheckRecord& r : records) {
      std::printf("    %-4s %-72s n=%-7ld %.3e %s %.3e\n", r.pass ? "ok" : "BAD", r.name.c_str(), r.samples,
                  r.max_deviation, r.relation == Relation::AtMost ? "<=" : ">=", r.tolerance);
    }
    if (!error.empty()) std::printf("    error: %s\n", error.c_str());
  }
  std::printf("%d of 11 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
