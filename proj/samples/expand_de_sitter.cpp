// Expands the Poincare algebra into de Sitter with w2 kept symbolic,
// then checks a numerical choice of a1 against the constraint.

#include <iostream>

#include "ck.hpp"

int main() {
  using namespace ck;
  LieAlgebra poincare = make_ck_algebra(0, Scalar::symbol("w2"));
  ExpansionProblem problem = make_problem(poincare, 1);
  ExpansionReport report = run_expansion(problem);

  std::cout << "J = " << report.J.to_string() << "\n";
  for (std::size_t n = 0; n < report.primed.size(); ++n) {
    std::cout << report.labels[n] << "' = " << report.primed[n].to_string() << "\n";
  }
  for (const auto& c : report.constraints) std::cout << c.to_string() << " = 0\n";

  // With w2 = -1, c1 = 1 and w1 = 1 the value a1 = 1/2 solves it.
  auto residuals = evaluate_constraints(report.ideal, {{"w2", Scalar(-1)}, {"c1", Scalar(1)}, {"w1", Scalar(1)},
                                                       {"a1", Scalar(Rational(1, 2))}});
  std::cout << "residual at a1 = 1/2: " << residuals.front().to_string() << "\n";
  return report.ok() ? 0 : 1;
}
