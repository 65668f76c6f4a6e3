#pragma once

#include "nilmat/matrix.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace nilmat {

// One executable check per Proposition. Randomized mode samples concrete
// nilpotent rings; symbolic mode builds generic matrices and parameter
// coefficients, so a pass is universally quantified over all k-algebras.
enum class PropId {
  P1_RowAdjoin,
  P2_LinComb,
  P3_Geometric,
  P4_LinearFunctional,
  P5_LinearImage,
  P6_IdealProperty,
  P7_Bilinear,
  P8_DV,
  P9_DVW,
  P10_CoordFreeIdeal,
  P11_TrmAlternating,
  C1_DetTrace,
  P12_Xlin,
  P13_RemainderForm,
};

inline constexpr int kPropCount = 14;

std::string prop_id_name(PropId id);
std::optional<PropId> prop_id_from_name(const std::string& name);
std::vector<PropId> all_prop_ids();

enum class Mode { Randomized, Symbolic };

std::string mode_name(Mode mode);

struct Budget {
  int cases = 1000;
  std::uint64_t seed = 0;
  int max_grid = 3;   // largest m, n exercised
  int max_degree = 3; // polynomial-map degree for P12
};

struct PropositionReport {
  enum class Status { Pass, Fail, Skipped };

  PropId id;
  Mode mode;
  int cases_run = 0;
  Status status = Status::Pass;
  std::uint64_t seed = 0;
  std::string detail; // replayable counterexample on fail, reason on skip

  [[nodiscard]] std::string json_line() const;
};

// Runs one check. With mutated=true the check is fed a deliberately corrupted
// input family (a hypothesis-violating member), so a Fail report is the
// expected outcome; this guards against vacuous checks.
PropositionReport verify(PropId id, Mode mode, const Budget& budget,
                         bool mutated = false);

// Every id in both modes, deterministic given the seed.
std::vector<PropositionReport> verify_all(const Budget& budget);

std::vector<PropositionReport> verify_all_mutated(const Budget& budget);

} // namespace nilmat
