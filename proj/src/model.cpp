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

#include "blockade/model.hpp"

#include <cmath>
#include <sstream>

#include "blockade/errors.hpp"

namespace blockade {
namespace {

void require_modes(const HilbertSpec& spec, std::initializer_list<const char*> labels,
                   const char* who) {
  bool ok = spec.mode_count() == labels.size();
  std::size_t i = 0;
  for (const char* l : labels) {
    if (!ok) break;
    ok = spec.modes()[i++].label == l;
  }
  if (!ok) {
    std::ostringstream os;
    os << who << ": expected modes (";
    std::size_t k = 0;
    for (const char* l : labels) os << (k++ ? ", " : "") << l;
    os << ") but got " << spec.describe();
    throw InvalidArgument(os.str());
  }
}

struct CavityOps {
  CMatrix a1, a2, a1d, a2d, n1, n2;
};

CavityOps cavity_ops(const HilbertSpec& spec) {
  CavityOps o;
  o.a1 = mode_annihilation("a1", spec);
  o.a2 = mode_annihilation("a2", spec);
  o.a1d = dagger(o.a1);
  o.a2d = dagger(o.a2);
  o.n1 = o.a1d * o.a1;
  o.n2 = o.a2d * o.a2;
  return o;
}

// Detunings, hopping and Kerr term shared by every two-cavity Hamiltonian.
CMatrix undriven_part(const SystemParams& p, const CavityOps& o) {
  const double chi = kerr_strength(p);
  return p.delta1 * o.n1 + p.delta2 * o.n2 + p.lambda1 * (o.a1d * o.a2) +
         p.lambda2 * (o.a1 * o.a2d) - chi * (o.n1 * o.n1);
}

bool finite(double x) { return std::isfinite(x); }

}  // namespace

std::string to_string(UnitSystem u) {
  return u == UnitSystem::Kappa2 ? "kappa2" : "MHz-angular";
}

UnitSystem unit_system_from_string(const std::string& s) {
  if (s == "kappa2" || s == "kappa2-units") return UnitSystem::Kappa2;
  if (s == "MHz-angular") return UnitSystem::MHzAngular;
  throw InvalidArgument("unknown unit system '" + s + "'");
}

void SystemParams::validate() const {
  const double all[] = {delta1, delta2, omega_m, lambda1, lambda2, g,
                        drive,  kappa1, kappa2,  gamma_m, n_th};
  for (double v : all)
    if (!finite(v)) throw InvalidArgument("SystemParams: non-finite value");
  if (kappa1 < 0 || kappa2 < 0 || gamma_m < 0 || omega_m < 0 || n_th < 0)
    throw InvalidArgument("SystemParams: rates, omega_m and n_th must be >= 0");
  if (drive < 0) throw InvalidArgument("SystemParams: drive amplitude must be >= 0");
}

SystemParams to_kappa2_units(const SystemParams& p) {
  if (p.units == UnitSystem::Kappa2) return p;
  if (!(p.kappa2 > 0)) throw InvalidArgument("to_kappa2_units: kappa2 must be > 0");
  const double k = p.kappa2;
  SystemParams q = p;
  for (double* f : {&q.delta1, &q.delta2, &q.omega_m, &q.lambda1, &q.lambda2, &q.g, &q.drive,
                    &q.kappa1, &q.kappa2, &q.gamma_m})
    *f /= k;
  q.units = UnitSystem::Kappa2;
  return q;
}

SystemParams to_mhz_angular(const SystemParams& p, double kappa2_mhz_angular) {
  if (p.units == UnitSystem::MHzAngular) return p;
  if (!(kappa2_mhz_angular > 0)) throw InvalidArgument("to_mhz_angular: scale must be > 0");
  SystemParams q = p;
  for (double* f : {&q.delta1, &q.delta2, &q.omega_m, &q.lambda1, &q.lambda2, &q.g, &q.drive,
                    &q.kappa1, &q.kappa2, &q.gamma_m})
    *f *= kappa2_mhz_angular;
  q.units = UnitSystem::MHzAngular;
  return q;
}

std::string to_string(ModelVariant v) {
  switch (v) {
    case ModelVariant::Reduced: return "reduced";
    case ModelVariant::Full: return "full";
    case ModelVariant::AltDrive: return "altdrive";
  }
  return "reduced";
}

ModelVariant model_variant_from_string(const std::string& s) {
  if (s == "reduced") return ModelVariant::Reduced;
  if (s == "full") return ModelVariant::Full;
  if (s == "altdrive") return ModelVariant::AltDrive;
  throw InvalidArgument("unknown model variant '" + s + "'");
}

double kerr_strength(const SystemParams& p) {
  if (!(p.omega_m > 0)) throw InvalidArgument("kerr_strength: omega_m must be > 0");
  return p.g * p.g / p.omega_m;
}

double drive_amplitude_from_power(double power, double omega_l, double kappa2) {
  if (!(power >= 0) || !(omega_l > 0) || !(kappa2 > 0))
    throw InvalidArgument("drive_amplitude_from_power: inputs must be positive");
  return std::sqrt(2.0 * kappa2 * power / (kHbar * omega_l));
}

double power_from_drive_amplitude(double amplitude, double omega_l, double kappa2) {
  if (!(amplitude >= 0) || !(omega_l > 0) || !(kappa2 > 0))
    throw InvalidArgument("power_from_drive_amplitude: inputs must be positive");
  return amplitude * amplitude * kHbar * omega_l / (2.0 * kappa2);
}

std::pair<double, double> gauge_parameterization(double lambda, double h) {
  return {lambda * std::exp(h), lambda * std::exp(-h)};
}

SystemParams hermitized(const SystemParams& p) {
  const double product = p.lambda1 * p.lambda2;
  if (product < 0)
    throw InvalidArgument("hermitized: lambda1*lambda2 < 0 has no real symmetric gauge");
  SystemParams q = p;
  const double lambda = std::copysign(std::sqrt(product), p.lambda1 + p.lambda2);
  q.lambda1 = lambda;
  q.lambda2 = lambda;
  return q;
}

CMatrix build_full_hamiltonian(const SystemParams& p, const HilbertSpec& spec) {
  require_modes(spec, {"a1", "a2", "b"}, "build_full_hamiltonian");
  const CavityOps o = cavity_ops(spec);
  const CMatrix b = mode_annihilation("b", spec);
  const CMatrix bd = dagger(b);
  CMatrix h = p.delta1 * o.n1 + p.delta2 * o.n2 + p.omega_m * (bd * b) +
              p.lambda1 * (o.a1d * o.a2) + p.lambda2 * (o.a1 * o.a2d) -
              p.g * (o.n1 * (bd + b)) + p.drive * (o.a2d + o.a2);
  return h;
}

CMatrix build_reduced_hamiltonian(const SystemParams& p, const HilbertSpec& spec) {
  require_modes(spec, {"a1", "a2"}, "build_reduced_hamiltonian");
  const CavityOps o = cavity_ops(spec);
  return undriven_part(p, o) + p.drive * (o.a2d + o.a2);
}

CMatrix build_nonhermitian(const SystemParams& p, const HilbertSpec& spec) {
  require_modes(spec, {"a1", "a2"}, "build_nonhermitian");
  const CavityOps o = cavity_ops(spec);
  const Complex i{0.0, 1.0};
  return undriven_part(p, o) + p.drive * (o.a2d + o.a2) - (i * (0.5 * p.kappa1)) * o.n1 -
         (i * (0.5 * p.kappa2)) * o.n2;
}

CMatrix build_undriven(const SystemParams& p, const HilbertSpec& spec) {
  require_modes(spec, {"a1", "a2"}, "build_undriven");
  return undriven_part(p, cavity_ops(spec));
}

CMatrix build_altdrive_hamiltonian(const SystemParams& p, const HilbertSpec& spec) {
  require_modes(spec, {"a1", "a2"}, "build_altdrive_hamiltonian");
  const CavityOps o = cavity_ops(spec);
  return undriven_part(p, o) + p.drive * (o.a1d + o.a1);
}

CMatrix build_hamiltonian(ModelVariant variant, const SystemParams& p, const HilbertSpec& spec) {
  switch (variant) {
    case ModelVariant::Reduced: return build_reduced_hamiltonian(p, spec);
    case ModelVariant::Full: return build_full_hamiltonian(p, spec);
    case ModelVariant::AltDrive: return build_altdrive_hamiltonian(p, spec);
  }
  throw InvalidArgument("build_hamiltonian: unknown variant");
}

DissipatorSpec collapse_ops(const SystemParams& p, const HilbertSpec& spec,
                            bool include_mechanics) {
  if (include_mechanics)
    require_modes(spec, {"a1", "a2", "b"}, "collapse_ops");
  else
    require_modes(spec, {"a1", "a2"}, "collapse_ops");
  p.validate();

  DissipatorSpec out{spec, {}};
  auto add = [&](const std::string& label, double rate, CMatrix op) {
    if (rate > 0) out.channels.push_back({label, rate, std::move(op)});
  };
  add("a1", p.kappa1, mode_annihilation("a1", spec));
  add("a2", p.kappa2, mode_annihilation("a2", spec));
  if (include_mechanics) {
    const CMatrix b = mode_annihilation("b", spec);
    add("b", p.gamma_m * (p.n_th + 1.0), b);
    add("b_dag", p.gamma_m * p.n_th, dagger(b));
  }
  return out;
}

HilbertSpec default_spec(ModelVariant variant) {
  return variant == ModelVariant::Full ? HilbertSpec::full() : HilbertSpec::reduced();
}

}  // namespace blockade
