#pragma once

namespace qlock {

// Every numerical threshold used by validation and entropy evaluation.
struct Tolerances {
  double hermiticity = 1e-9;       // max |rho_ij - conj(rho_ji)|
  double trace = 1e-9;             // |Tr rho - 1|
  double psd = 1e-9;               // smallest admissible eigenvalue is -psd
  double probability_sum = 1e-12;  // |sum p - 1|
  double unitarity = 1e-9;         // ||U U^dagger - I||_max
  double povm_completeness = 1e-9; // ||sum M_b - I||_max
  double entropy_cutoff = 1e-12;   // eigenvalues/probabilities below are 0 log 0
  double outcome_cutoff = 1e-12;   // outcomes with p_b at or below are dropped
};

inline constexpr Tolerances kDefaultTolerances{};

}  // namespace qlock
