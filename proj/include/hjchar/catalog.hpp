#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hjchar/functionals.hpp"
#include "hjchar/hamiltonian.hpp"
#include "hjchar/initial_data.hpp"
#include "hjchar/pointwise_solver.hpp"

namespace hjchar {

/// Which built-in problem to set up. Ids are "ex1" .. "ex5".
struct ExampleChoice {
  std::string id = "ex3";
  int sign = 1;
  std::size_t dim = 2;
  std::size_t split_k = 1;
  InitialDataKind data = InitialDataKind::EllipseQuadratic;
};

/// A ready-to-run problem with its default numerics and reporting times.
struct ExampleSetup {
  ExampleChoice choice;
  ProblemSpec problem;
  SolveConfig solve;
  double horizon = 0.0;
  std::vector<double> times;
  std::string description;
};

std::vector<std::string> example_ids();
ExampleId example_id_from_string(const std::string& id);
InitialDataKind initial_data_from_string(const std::string& name);
const char* to_string(InitialDataKind kind);

/// Builds the model, data, solve mode and default parameters for `choice`.
/// Throws ConfigError for an unknown id or an unsupported combination.
ExampleSetup example_setup(const ExampleChoice& choice);

/// t = horizon * k / count for k = 1..count.
std::vector<double> uniform_times(double horizon, std::size_t count);

}  // namespace hjchar
