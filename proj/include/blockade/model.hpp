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

#ifndef BLOCKADE_MODEL_HPP
#define BLOCKADE_MODEL_HPP

#include <string>
#include <utility>
#include <vector>

#include "blockade/tensor.hpp"

namespace blockade {

/// Unit system a parameter record is expressed in. In kappa2 units every
/// rate is divided by kappa2 (so kappa2 == 1); MHz-angular means rad/us.
enum class UnitSystem { Kappa2, MHzAngular };

std::string to_string(UnitSystem u);
UnitSystem unit_system_from_string(const std::string& s);

/// Physical parameters of the double-cavity optomechanical model (hbar = 1).
/// `drive` is the real, nonnegative laser amplitude E.
struct SystemParams {
  double delta1 = 0.0;
  double delta2 = 0.0;
  double omega_m = 0.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double g = 0.0;
  double drive = 0.0;
  double kappa1 = 1.0;
  double kappa2 = 1.0;
  double gamma_m = 0.0;
  double n_th = 0.0;
  UnitSystem units = UnitSystem::Kappa2;

  /// Throws InvalidArgument on negative rates, negative drive or non-finite values.
  void validate() const;

  bool operator==(const SystemParams&) const = default;
};

/// Divides every rate by kappa2; n_th is dimensionless and unchanged.
SystemParams to_kappa2_units(const SystemParams& p);
/// Multiplies every rate of a kappa2-unit record by `kappa2_mhz_angular`.
SystemParams to_mhz_angular(const SystemParams& p, double kappa2_mhz_angular);

/// Which Hamiltonian a computation uses.
enum class ModelVariant {
  Reduced,   // two cavities with Kerr term, drive on cavity 2
  Full,      // two cavities plus mechanical mode, drive on cavity 2
  AltDrive,  // reduced model with the drive on the optomechanical cavity
};

std::string to_string(ModelVariant v);
ModelVariant model_variant_from_string(const std::string& s);

/// chi = g^2 / omega_m.
double kerr_strength(const SystemParams& p);

/// Reduced Planck constant in J s, used only by the SI entry points.
inline constexpr double kHbar = 1.054571817e-34;

/// |E| = sqrt(2 kappa2 P / (hbar omega_l)) with P in W, omega_l and kappa2 in rad/s.
double drive_amplitude_from_power(double power, double omega_l, double kappa2);
/// Inverse of drive_amplitude_from_power.
double power_from_drive_amplitude(double amplitude, double omega_l, double kappa2);

/// Imaginary-gauge form of the hopping: (lambda e^h, lambda e^-h).
std::pair<double, double> gauge_parameterization(double lambda, double h);

/// Replaces (lambda1, lambda2) by the symmetric pair sqrt(lambda1 lambda2).
/// Requires lambda1 * lambda2 >= 0.
SystemParams hermitized(const SystemParams& p);

CMatrix build_full_hamiltonian(const SystemParams& p, const HilbertSpec& spec);
CMatrix build_reduced_hamiltonian(const SystemParams& p, const HilbertSpec& spec);
/// Reduced Hamiltonian minus i kappa_j/2 a_j^dag a_j.
CMatrix build_nonhermitian(const SystemParams& p, const HilbertSpec& spec);
/// Reduced Hamiltonian without the drive.
CMatrix build_undriven(const SystemParams& p, const HilbertSpec& spec);
/// Reduced Hamiltonian with the drive moved to cavity 1.
CMatrix build_altdrive_hamiltonian(const SystemParams& p, const HilbertSpec& spec);

/// Dispatches on the variant.
CMatrix build_hamiltonian(ModelVariant variant, const SystemParams& p, const HilbertSpec& spec);

/// One dissipation channel rate * D[op].
struct DissipationChannel {
  std::string label;
  double rate = 0.0;
  CMatrix op;
};

struct DissipatorSpec {
  HilbertSpec spec;
  std::vector<DissipationChannel> channels;
};

/// kappa1 D[a1], kappa2 D[a2] and, with mechanics, gamma_m (n_th+1) D[b] and
/// gamma_m n_th D[b^dag]. Zero-rate channels are omitted.
DissipatorSpec collapse_ops(const SystemParams& p, const HilbertSpec& spec, bool include_mechanics);

/// Canonical Hilbert space for a variant with the default cutoffs.
HilbertSpec default_spec(ModelVariant variant);

}  // namespace blockade

#endif  // BLOCKADE_MODEL_HPP
