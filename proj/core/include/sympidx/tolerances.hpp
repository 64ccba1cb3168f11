#pragma once

#include <map>
#include <string>

#include <nlohmann/json.hpp>

namespace sympidx {

// One table for every numeric threshold; reports echo it verbatim.
struct Tolerances {
  double eps_sym_blocks = 1e-9;  // symplecticity of matrices assembled from blocks
  double eps_sym_user = 1e-6;    // symplecticity of user-supplied matrices
  double rank = 1e-8;            // relative singular-value threshold
  double cluster = 1e-5;         // eigenvalue clustering radius
  double floor_guard = 1e-9;     // min distance to an integer for float angles
  double angle_match = 1e-6;     // angle comparison in round trips
  double zero_phase = 1e-6;      // eigenphase treated as 0 by the crossing oracle
  int angle_bits = 60;           // minimum bits kept after scaling by m

  // throws std::invalid_argument on unknown names or non-positive values
  void set(const std::string& name, double value);
  nlohmann::json to_json() const;
};

const Tolerances& default_tolerances();
// Process-wide override; call once at start-up, before any worker threads.
void set_default_tolerances(const Tolerances& t);

}  // namespace sympidx
