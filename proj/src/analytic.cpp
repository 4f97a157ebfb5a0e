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

#include "blockade/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "blockade/errors.hpp"

namespace blockade {
namespace {

constexpr Complex kI{0.0, 1.0};
const double kSqrt2 = std::sqrt(2.0);

void require_simplified(const SystemParams& p, const char* who) {
  if (!(p.kappa2 > 0)) throw InvalidArgument(std::string(who) + ": kappa2 must be > 0");
  const double dscale = std::max({std::abs(p.delta1), std::abs(p.delta2), p.kappa2});
  const double kscale = std::max({p.kappa1, p.kappa2});
  if (std::abs(p.delta1 - p.delta2) > 1e-9 * dscale ||
      std::abs(p.kappa1 - p.kappa2) > 1e-9 * kscale) {
    throw InvalidArgument(std::string(who) +
                          ": closed form requires delta1 == delta2 and kappa1 == kappa2");
  }
  if (!(p.drive > 0)) throw InvalidArgument(std::string(who) + ": drive must be > 0");
}

ResonanceFactors checked_factors(const SystemParams& p, const char* who) {
  const ResonanceFactors f = resonance_factors(p);
  const double k2 = p.kappa2 * p.kappa2;
  if (std::abs(f.m) <= 1e-12 * k2 || std::abs(f.n) <= 1e-12 * k2 * k2 * p.kappa2) {
    std::ostringstream os;
    os << who << ": parameters sit on a pole (|M|=" << std::abs(f.m)
       << ", |N|=" << std::abs(f.n) << ")";
    throw PoleError(os.str());
  }
  return f;
}

}  // namespace

AmplitudeSet amplitude_rhs(const AmplitudeSet& c, const SystemParams& p, FeedTerms feed) {
  const double chi = kerr_strength(p);
  const double e = p.drive;
  const bool keep = feed == FeedTerms::Keep;
  AmplitudeSet r;
  r.c00 = 0.0;
  r.c10 = (p.delta1 - kI * (0.5 * p.kappa1) - chi) * c.c10 + p.lambda1 * c.c01 +
          (keep ? e * c.c11 : Complex{});
  r.c01 = (p.delta2 - kI * (0.5 * p.kappa2)) * c.c01 + p.lambda2 * c.c10 + e * c.c00 +
          (keep ? kSqrt2 * e * c.c02 : Complex{});
  r.c20 = (2.0 * p.delta1 - kI * p.kappa1 - 4.0 * chi) * c.c20 + kSqrt2 * p.lambda1 * c.c11;
  r.c11 = (p.delta1 - kI * (0.5 * p.kappa1) + p.delta2 - kI * (0.5 * p.kappa2) - chi) * c.c11 +
          kSqrt2 * (p.lambda1 * c.c02 + p.lambda2 * c.c20) + e * c.c10;
  r.c02 = (2.0 * p.delta2 - kI * p.kappa2) * c.c02 + kSqrt2 * p.lambda2 * c.c11 +
          kSqrt2 * e * c.c01;
  return r;
}

AmplitudeSet amplitude_rhs_om_drive(const AmplitudeSet& c, const SystemParams& p,
                                    FeedTerms feed) {
  const double chi = kerr_strength(p);
  const double e = p.drive;
  const bool keep = feed == FeedTerms::Keep;
  AmplitudeSet r;
  r.c00 = 0.0;
  r.c10 = (p.delta1 - kI * (0.5 * p.kappa1) - chi) * c.c10 + p.lambda1 * c.c01 + e * c.c00 +
          (keep ? kSqrt2 * e * c.c20 : Complex{});
  r.c01 = (p.delta2 - kI * (0.5 * p.kappa2)) * c.c01 + p.lambda2 * c.c10 +
          (keep ? e * c.c11 : Complex{});
  r.c20 = (2.0 * p.delta1 - kI * p.kappa1 - 4.0 * chi) * c.c20 + kSqrt2 * p.lambda1 * c.c11 +
          kSqrt2 * e * c.c10;
  r.c11 = (p.delta1 - kI * (0.5 * p.kappa1) + p.delta2 - kI * (0.5 * p.kappa2) - chi) * c.c11 +
          kSqrt2 * (p.lambda1 * c.c02 + p.lambda2 * c.c20) + e * c.c01;
  r.c02 = (2.0 * p.delta2 - kI * p.kappa2) * c.c02 + kSqrt2 * p.lambda2 * c.c11;
  return r;
}

ResonanceFactors resonance_factors(const SystemParams& p) {
  const double chi = kerr_strength(p);
  const double d = p.delta2;
  const double k = p.kappa2;
  const double ll = p.lambda1 * p.lambda2;
  const Complex a = 2.0 * d - kI * k;             // 2D - ik
  const Complex b = 2.0 * chi - 2.0 * d + kI * k;  // 2chi - 2D + ik
  const Complex c = chi - 2.0 * d + kI * k;        // chi - 2D + ik
  const Complex f = 4.0 * chi - 2.0 * d + kI * k;  // 4chi - 2D + ik
  const Complex m = 4.0 * ll + a * b;
  const Complex n = (4.0 * ll * b + a * c * f) * m;
  return {m, n};
}

AmplitudeSet steady_amplitudes_cavity_drive(const SystemParams& p) {
  require_simplified(p, "steady_amplitudes_cavity_drive");
  const auto [m, n] = checked_factors(p, "steady_amplitudes_cavity_drive");
  const double chi = kerr_strength(p);
  const double d = p.delta2;
  const double k = p.kappa2;
  const double e = p.drive;
  const double l1 = p.lambda1;
  const Complex c = chi - 2.0 * d + kI * k;
  const Complex b = 2.0 * chi - 2.0 * d + kI * k;
  const Complex f = 4.0 * chi - 2.0 * d + kI * k;

  AmplitudeSet out;
  out.c00 = 1.0;
  out.c10 = -4.0 * e * l1 / m;
  out.c01 = 2.0 * e * (2.0 * d - 2.0 * chi - kI * k) / m;
  out.c20 = 8.0 * kSqrt2 * e * e * l1 * l1 * c / n;
  out.c11 = 8.0 * e * e * l1 * c * f / n;
  out.c02 = 2.0 * kSqrt2 * e * e * (4.0 * l1 * p.lambda2 * chi + c * b * f) / n;
  return out;
}

AmplitudeSet steady_amplitudes_om_drive(const SystemParams& p) {
  require_simplified(p, "steady_amplitudes_om_drive");
  const auto [m, n] = checked_factors(p, "steady_amplitudes_om_drive");
  const double chi = kerr_strength(p);
  const double d = p.delta2;
  const double k = p.kappa2;
  const double e = p.drive;
  const double l2 = p.lambda2;
  const Complex a = 2.0 * d - kI * k;
  const Complex c = chi - 2.0 * d + kI * k;
  const Complex b = 2.0 * chi - 2.0 * d + kI * k;

  AmplitudeSet out;
  out.c00 = 1.0;
  out.c10 = 2.0 * e * a / m;
  out.c01 = -4.0 * e * l2 / m;
  out.c20 = 2.0 * kSqrt2 * e * e * a * a * c / n;
  out.c11 = 8.0 * e * e * l2 * a * (2.0 * d - 2.0 * chi - kI * k) / n;
  out.c02 = 8.0 * kSqrt2 * e * e * l2 * l2 * b / n;
  return out;
}

double g2_analytic(const AmplitudeSet& amps, int cavity) {
  if (cavity != 1 && cavity != 2) throw InvalidArgument("g2_analytic: cavity must be 1 or 2");
  const Complex one = cavity == 1 ? amps.c10 : amps.c01;
  const Complex two = cavity == 1 ? amps.c20 : amps.c02;
  const double p1 = std::norm(one);
  if (!(p1 > 0.0)) throw UndefinedCorrelation("g2_analytic: one-photon amplitude vanishes");
  return 2.0 * std::norm(two) / (p1 * p1);
}

double g2_om_drive_closed_form(const SystemParams& p) {
  require_simplified(p, "g2_om_drive_closed_form");
  const auto [m, n] = checked_factors(p, "g2_om_drive_closed_form");
  const double chi = kerr_strength(p);
  const double x = chi - 2.0 * p.delta2;
  return (x * x + p.kappa2 * p.kappa2) / std::norm(n / (m * m));
}

std::string to_string(Branch b) { return b == Branch::Plus ? "plus" : "minus"; }

Branch branch_from_string(const std::string& s) {
  if (s == "plus" || s == "+") return Branch::Plus;
  if (s == "minus" || s == "-") return Branch::Minus;
  throw InvalidArgument("unknown branch '" + s + "' (expected plus or minus)");
}

OptimalPoint upb_optimal(double chi, double kappa2, double lambda1, Branch branch) {
  if (!(kappa2 > 0)) throw InvalidArgument("upb_optimal: kappa2 must be > 0");
  if (!(chi >= kOptimalGuard * kappa2))
    throw DegenerateParameter("upb_optimal: chi below 1e-3 kappa2 guard");
  if (!(std::abs(lambda1) >= kOptimalGuard * kappa2))
    throw DegenerateParameter("upb_optimal: |lambda1| below 1e-3 kappa2 guard");
  const double s = branch == Branch::Plus ? 1.0 : -1.0;
  const double root = std::sqrt(3.0 * kappa2 * kappa2 + 7.0 * chi * chi);
  OptimalPoint out;
  out.branch = branch;
  out.delta2 = s * root / 6.0 + 7.0 * chi / 6.0;
  out.lambda2 = -s * root / (54.0 * lambda1) * (12.0 * kappa2 * kappa2 / chi + 7.0 * chi) -
                5.0 * chi * chi / (27.0 * lambda1);
  return out;
}

std::optional<CpbLocations> cpb_locations(double chi, double lambda1, double lambda2) {
  const double radicand = lambda1 * lambda2 + 0.25 * chi * chi;
  if (radicand < 0) return std::nullopt;
  const double r = std::sqrt(radicand);
  return CpbLocations{r + 0.5 * chi, -r + 0.5 * chi};
}

SingleExcitationEigenvalues single_excitation_eigenvalues(const SystemParams& p) {
  const double dscale = std::max({std::abs(p.delta1), std::abs(p.delta2), 1.0});
  if (std::abs(p.delta1 - p.delta2) > 1e-9 * dscale)
    throw InvalidArgument("single_excitation_eigenvalues: requires delta1 == delta2");
  const double chi = kerr_strength(p);
  const Complex root = std::sqrt(Complex{p.lambda1 * p.lambda2 + 0.25 * chi * chi, 0.0});
  const double shift = p.delta2 - 0.5 * chi;
  return {root + shift, -root + shift, 0.0};
}

std::vector<Complex> excitation_block_spectrum(const SystemParams& p, int n_exc) {
  if (n_exc < 0 || n_exc > 2)
    throw InvalidArgument("excitation_block_spectrum: n_exc must be 0, 1 or 2");
  const double dscale = std::max({std::abs(p.delta1), std::abs(p.delta2), 1.0});
  if (std::abs(p.delta1 - p.delta2) > 1e-9 * dscale)
    throw InvalidArgument("excitation_block_spectrum: requires delta1 == delta2");
  const auto cutoff = static_cast<std::size_t>(n_exc + 1);
  const HilbertSpec spec = HilbertSpec::reduced(std::max<std::size_t>(cutoff, 2),
                                                std::max<std::size_t>(cutoff, 2));
  const CMatrix h = build_undriven(p, spec);

  std::vector<std::size_t> block;
  for (std::size_t i = 0; i < spec.dimension(); ++i) {
    const auto occ = spec.occupations(i);
    if (static_cast<int>(occ[0] + occ[1]) == n_exc) block.push_back(i);
  }
  CMatrix sub(block.size(), block.size());
  for (std::size_t r = 0; r < block.size(); ++r)
    for (std::size_t c = 0; c < block.size(); ++c) sub(r, c) = h(block[r], block[c]);
  return eig(sub);
}

double conventional_optimal_lambda2(double g, double lambda1, double omega_m) {
  if (lambda1 == 0.0) throw InvalidArgument("conventional_optimal_lambda2: lambda1 is zero");
  if (!(omega_m > 0)) throw InvalidArgument("conventional_optimal_lambda2: omega_m must be > 0");
  return kConventionalCoefficient * std::pow(g, 4) / (lambda1 * omega_m * omega_m);
}

FeasibilityReport altdrive_blockade_feasibility(double chi, double kappa2) {
  if (!(kappa2 > 0)) throw InvalidArgument("altdrive_blockade_feasibility: kappa2 must be > 0");
  FeasibilityReport r;
  r.chi = chi;
  r.kappa2 = kappa2;
  const double k2 = kappa2 * kappa2;
  // 12 d^2 - 4 chi d - k^2 = 0; discriminant 16 chi^2 + 48 k^2 > 0 always.
  const double disc = std::sqrt(chi * chi + 3.0 * k2);
  r.condition1_roots = {(chi - disc) / 6.0, (chi + disc) / 6.0};
  r.condition2_roots = {0.0};
  if (chi != 0.0) r.condition2_roots.push_back(chi / 4.0);
  std::sort(r.condition2_roots.begin(), r.condition2_roots.end());
  r.feasible = false;
  for (double d : r.condition2_roots) {
    const double residual = k2 - (12.0 * d * d - 4.0 * chi * d);
    r.condition1_residuals.push_back(residual);
    if (std::abs(residual) <= 1e-12 * std::max(k2, chi * chi)) r.feasible = true;
  }
  return r;
}

}  // namespace blockade
