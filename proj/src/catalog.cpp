#include "hjchar/catalog.hpp"

#include <cmath>

#include "hjchar/errors.hpp"

namespace hjchar {

std::vector<std::string> example_ids() { return {"ex1", "ex2", "ex3", "ex4", "ex5"}; }

ExampleId example_id_from_string(const std::string& id) {
  if (id == "ex1") return ExampleId::Ex1Linear;
  if (id == "ex2") return ExampleId::Ex2Harmonic;
  if (id == "ex3") return ExampleId::Ex3Eikonal;
  if (id == "ex4") return ExampleId::Ex4Evans;
  if (id == "ex5") return ExampleId::Ex5Split;
  throw ConfigError("unknown example id '" + id + "' (expected ex1..ex5)");
}

InitialDataKind initial_data_from_string(const std::string& name) {
  if (name == "ellipse" || name == "quadratic") return InitialDataKind::EllipseQuadratic;
  if (name == "rosenbrock") return InitialDataKind::Rosenbrock;
  throw ConfigError("unknown initial data '" + name + "' (expected ellipse or rosenbrock)");
}

const char* to_string(InitialDataKind kind) {
  return kind == InitialDataKind::Rosenbrock ? "rosenbrock" : "ellipse";
}

std::vector<double> uniform_times(double horizon, std::size_t count) {
  std::vector<double> out;
  for (std::size_t k = 1; k <= count; ++k) {
    out.push_back(horizon * static_cast<double>(k) / static_cast<double>(count));
  }
  return out;
}

ExampleSetup example_setup(const ExampleChoice& choice) {
  if (choice.sign != 1 && choice.sign != -1) throw ConfigError("sign must be + or -");
  const ExampleId id = example_id_from_string(choice.id);
  ExampleSetup s;
  s.choice = choice;
  s.problem.model = make_example(id, choice.dim, ExampleOptions{choice.sign, choice.split_k});
  s.problem.data = make_initial_data(choice.data, choice.dim);

  SolveConfig& c = s.solve;
  c.ds = 0.02;
  c.sigma = 0.001;
  c.descent.trials = 5;
  const bool plus = choice.sign > 0;
  switch (id) {
    case ExampleId::Ex1Linear:
      s.problem.mode = SolveMode::LinearDirect;
      c.descent.trials = 1;
      s.horizon = 0.12;
      s.times = uniform_times(0.12, 6);
      s.description = "H = -<grad c(x), p>, linear in p";
      break;
    case ExampleId::Ex2Harmonic:
      s.problem.mode = SolveMode::Hopf;
      c.descent.lipschitz = 3.0;
      s.horizon = 0.5;
      s.times = uniform_times(0.5, 5);
      s.description = "H = +-(|p|^2 + |x|^2)/2, harmonic oscillator";
      break;
    case ExampleId::Ex3Eikonal:
      // Lax is a minimum only for convex H; the concave sign maximizes the same
      // functional. The Hopf route for H- diverges near the bump at any L.
      s.problem.mode = plus ? SolveMode::Lax : SolveMode::LaxMax;
      c.descent.lipschitz = 0.02;
      s.horizon = plus ? 0.3 : 0.5;
      s.times = uniform_times(s.horizon, plus ? 3 : 5);
      s.description = "H = +-c(x)|p|, state-dependent eikonal";
      break;
    case ExampleId::Ex4Evans:
      s.problem.mode = SolveMode::Hopf;
      c.ds = 0.005;
      c.descent.lipschitz = 4.0;
      s.horizon = 0.1;
      s.times = uniform_times(0.1, 4);
      s.description = "H = -c(x) p1 + 2|p2| - |p| - 1, non-convex";
      break;
    case ExampleId::Ex5Split:
      s.problem.mode = SolveMode::Hopf;
      c.descent.lipschitz = 50.0;
      c.descent.trials = 20;
      s.horizon = 0.3;
      s.times = uniform_times(0.3, 3);
      s.description = "H = c(x)|p_a| - c(-x)|p_b|, non-convex block split";
      break;
  }

  if (choice.data == InitialDataKind::Rosenbrock) {
    if (!s.problem.model->traits().convex_in_p) {
      throw ConfigError("rosenbrock data is non-convex and needs a Hamiltonian convex in p");
    }
    if (s.problem.mode != SolveMode::LinearDirect) s.problem.mode = SolveMode::Lax;
  }
  s.problem.validate();
  return s;
}

}  // namespace hjchar
