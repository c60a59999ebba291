#pragma once

// Scenario files: strict JSON descriptions of a verification or solve run.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "heatpot/greens.hpp"
#include "heatpot/transparent_bc.hpp"

namespace heatpot {

inline constexpr int kScenarioSchemaVersion = 1;

struct SourceSpec {
  enum class Kind { zero, gaussian_bump, manufactured };
  Kind kind = Kind::zero;
  SpaceVec center;
  double width = 0.0;
  double amplitude = 1.0;
  std::string time_profile = "constant";  // constant | linear | sine
};

struct BoundarySpec {
  enum class Kind { zero, ramp };
  Kind kind = Kind::zero;
  double amplitude = 0.0;
  double rise_time = 1.0;
};

struct ResolutionSpec {
  int volume = 16;         // panels per axis (radial panels on a disk)
  int boundary = 1;        // panels per side
  int time = 16;           // Gauss nodes per sigma panel
  int time_panels = 1;     // graded panels in sigma
  int pde_time = 48;       // time nodes for the finite-difference PDE check
  int oracle_grid = 200;   // Crank-Nicolson intervals per axis
  int oracle_steps = 200;  // Crank-Nicolson time steps
  int cascade_modes = 512;
  int cascade_steps = 200;
};

struct ToleranceSpec {
  double bc = 1e-3;
  double interior = 1e-3;
  double pde = 1e-3;
  double ic_slope_factor = 0.9;
  double oracle = 1e-3;
  double convergence_order = 1.0;
};

struct Scenario {
  std::string name;
  KernelOrder order{1, 1};
  Domain domain{Interval{-1.0, 1.0}};
  double horizon = 1.0;
  SourceSpec source;
  BoundarySpec boundary;
  ResolutionSpec resolution;
  ToleranceSpec tolerances;
  std::vector<SpaceVec> interior_probes;
  std::uint64_t seed = 0;
  int random_probes = 10;
  int sample_times = 8;
  double fd_step_x = 2e-3;
  double fd_step_t = 2e-3;
  int refinement_levels = 1;
  bool allow_2d = false;
  std::string report_path;
  std::string csv_path;
  nlohmann::json echo;  // the parsed document
};

/// Throws ConfigError for malformed, unknown or inconsistent fields.
Scenario parse_scenario(const nlohmann::json& doc);
Scenario load_scenario(const std::filesystem::path& path);

SourceField make_source(const Scenario& s);
/// phi(node, t) on the scenario's boundary rule nodes.
BoundaryFunction make_boundary_function(const Scenario& s, const BoundaryRule& brule);
/// d phi / dt on the same nodes.
BoundaryFunction make_boundary_rate(const Scenario& s, const BoundaryRule& brule);

/// Rules at refinement level `level`: time nodes, volume and boundary panels
/// are multiplied by 2^level.
VolumeRule scenario_volume_rule(const Scenario& s, int level = 0);
BoundaryRule scenario_boundary_rule(const Scenario& s, int level = 0);
TimeRule scenario_time_rule(const Scenario& s, double t, int level = 0);

VerificationSetup make_verification_setup(const Scenario& s, int level = 0,
                                          const PotentialOptions& opts = {});

/// Seeded interior space-time points (x strictly inside, t in (0.05T, T]).
std::vector<std::pair<SpaceVec, double>> random_space_time_probes(const Scenario& s);

}  // namespace heatpot
