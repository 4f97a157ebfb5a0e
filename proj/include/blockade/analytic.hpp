// Copyright 2026 The blockade-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BLOCKADE_ANALYTIC_HPP
#define BLOCKADE_ANALYTIC_HPP

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "blockade/model.hpp"

namespace blockade {

/// Amplitudes of |n1, n2> with n1 + n2 <= 2 in the weak-drive expansion.
struct AmplitudeSet {
  Complex c00{1.0, 0.0};
  Complex c10{};
  Complex c01{};
  Complex c20{};
  Complex c11{};
  Complex c02{};

  bool operator==(const AmplitudeSet&) const = default;
};

/// Whether the amplitude equations keep the drive terms that feed a
/// one-photon amplitude from a two-photon one.
enum class FeedTerms { Keep, DropHigherOrder };

/// Returns i dC/dt for the cavity-2 driven model. The c00 slot of the result
/// is zero (c00 is held at 1).
AmplitudeSet amplitude_rhs(const AmplitudeSet& amps, const SystemParams& p,
                           FeedTerms feed = FeedTerms::Keep);

/// Same for the model driven on the optomechanical cavity.
AmplitudeSet amplitude_rhs_om_drive(const AmplitudeSet& amps, const SystemParams& p,
                                    FeedTerms feed = FeedTerms::Keep);

/// The two denominators shared by both drive configurations.
struct ResonanceFactors {
  Complex m;
  Complex n;
};
ResonanceFactors resonance_factors(const SystemParams& p);

/// Closed-form steady amplitudes with the drive on cavity 2. Requires
/// delta1 == delta2 and kappa1 == kappa2 (1e-9 relative) and drive > 0.
AmplitudeSet steady_amplitudes_cavity_drive(const SystemParams& p);

/// Closed-form steady amplitudes with the drive on cavity 1.
AmplitudeSet steady_amplitudes_om_drive(const SystemParams& p);

/// 2|c20|^2/|c10|^4 (cavity 1) or 2|c02|^2/|c01|^4 (cavity 2).
double g2_analytic(const AmplitudeSet& amps, int cavity);

/// ((chi - 2 delta2)^2 + kappa2^2) / |N/M^2|^2 for the cavity-1 drive.
double g2_om_drive_closed_form(const SystemParams& p);

enum class Branch { Plus, Minus };
std::string to_string(Branch b);
Branch branch_from_string(const std::string& s);

/// Detuning and coupling at which the |0,2> amplitude vanishes.
struct OptimalPoint {
  Branch branch = Branch::Minus;
  double delta2 = 0.0;
  double lambda2 = 0.0;
};

/// Smallest chi (and |lambda1|), in units of kappa2, accepted by upb_optimal.
inline constexpr double kOptimalGuard = 1e-3;

OptimalPoint upb_optimal(double chi, double kappa2, double lambda1, Branch branch = Branch::Minus);

/// Single-photon resonance detunings +/- sqrt(l1 l2 + chi^2/4) + chi/2, as
/// (plus, minus). Empty when the radicand is negative.
struct CpbLocations {
  double plus = 0.0;
  double minus = 0.0;
};
std::optional<CpbLocations> cpb_locations(double chi, double lambda1, double lambda2);

struct SingleExcitationEigenvalues {
  Complex plus;
  Complex minus;
  double zero = 0.0;
};
SingleExcitationEigenvalues single_excitation_eigenvalues(const SystemParams& p);

/// Eigenvalues of the n_exc-excitation block of the undriven Hamiltonian.
std::vector<Complex> excitation_block_spectrum(const SystemParams& p, int n_exc);

/// 4.2 g^4 / (lambda1 omega_m^2).
inline constexpr double kConventionalCoefficient = 4.2;
double conventional_optimal_lambda2(double g, double lambda1, double omega_m);

/// Check of the two perfect-blockade conditions for the cavity-1 drive:
///   (1) 12 d^2 - 4 chi d = kappa^2     (2) 4 d (chi - 4 d)^2 = 0
struct FeasibilityReport {
  double chi = 0.0;
  double kappa2 = 0.0;
  std::vector<double> condition1_roots;
  std::vector<double> condition2_roots;
  /// kappa^2 - (12 d^2 - 4 chi d) at each root of condition 2.
  std::vector<double> condition1_residuals;
  bool feasible = false;
};
FeasibilityReport altdrive_blockade_feasibility(double chi, double kappa2);

}  // namespace blockade

#endif  // BLOCKADE_ANALYTIC_HPP
