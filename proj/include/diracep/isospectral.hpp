#pragma once

#include <string>
#include <vector>

#include "diracep/bloch.hpp"
#include "diracep/ep_analysis.hpp"
#include "diracep/family.hpp"

namespace diracep {

/// One degeneracy present in both families, classified in each.
struct DegeneracyComparison {
  ParamPoint location;
  complex omega0{};
  Label label_a = Label::Unresolved;
  Label label_b = Label::Unresolved;
  int geometric_a = 0;
  int geometric_b = 0;
  std::string note;  // set when a classification failed
};

struct IsospectralReport {
  std::string family_a;
  std::string family_b;
  std::size_t points = 0;
  /// Largest elementwise distance between the sorted spectra.
  double max_deviation = 0.0;
  ParamPoint worst_point;
  /// Largest distance of either family from the closed-form bands; NaN when
  /// neither family has them.
  double analytic_deviation = 0.0;
  std::vector<DegeneracyComparison> degeneracies;
  /// Candidates found in only one of the two families.
  std::size_t unmatched = 0;
};

struct IsospectralOptions {
  bool compare_degeneracies = true;
  /// Gap threshold handed to find_degeneracies.
  double find_tol = 1e-6;
  AnalysisConfig analysis;
};

/// Compare two families point by point over the grid and classify the
/// degeneracies they share. Throws InvalidArgument on a dimension mismatch.
IsospectralReport verify_isospectral(const HamiltonianFamily& a, const HamiltonianFamily& b,
                                     const Axis& first, const Axis& second,
                                     const IsospectralOptions& opts = {});

/// Classify the degeneracy nearest omega0 at `point` in both families.
DegeneracyComparison compare_degeneracy(const HamiltonianFamily& a, const HamiltonianFamily& b,
                                        ParamPoint point, complex omega0,
                                        const AnalysisConfig& cfg = {});

/// Largest distance between the Bloch spectrum and the folded free-particle
/// parabola (m + k)^2 over k_grid. Requires spec.tau == 1, otherwise
/// PreconditionViolation.
double free_space_equivalence(const BlochSpec& spec, const std::vector<double>& k_grid);

}  // namespace diracep
