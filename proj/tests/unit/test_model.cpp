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

#include <cmath>
#include <random>

#include "doctest.h"

#include "blockade/errors.hpp"
#include "blockade/model.hpp"

using namespace blockade;

namespace {

// Matrix element <m1,m2| H |n1,n2> of the reduced Hamiltonian, assembled from
// the action of each term on a Fock ket.
Complex reduced_element(const SystemParams& p, std::size_t m1, std::size_t m2, std::size_t n1,
                        std::size_t n2, bool drive_on_a1) {
  const double chi = p.g * p.g / p.omega_m;
  Complex h = 0.0;
  if (m1 == n1 && m2 == n2)
    h += p.delta1 * double(n1) + p.delta2 * double(n2) - chi * double(n1 * n1);
  if (n2 >= 1 && m1 == n1 + 1 && m2 == n2 - 1) h += p.lambda1 * std::sqrt(double(n1 + 1) * n2);
  if (n1 >= 1 && m1 == n1 - 1 && m2 == n2 + 1) h += p.lambda2 * std::sqrt(double(n1) * (n2 + 1));
  if (drive_on_a1) {
    if (m2 == n2 && m1 == n1 + 1) h += p.drive * std::sqrt(double(n1 + 1));
    if (m2 == n2 && n1 >= 1 && m1 == n1 - 1) h += p.drive * std::sqrt(double(n1));
  } else {
    if (m1 == n1 && m2 == n2 + 1) h += p.drive * std::sqrt(double(n2 + 1));
    if (m1 == n1 && n2 >= 1 && m2 == n2 - 1) h += p.drive * std::sqrt(double(n2));
  }
  return h;
}

Complex full_element(const SystemParams& p, std::size_t m1, std::size_t m2, std::size_t mb,
                     std::size_t n1, std::size_t n2, std::size_t nb) {
  Complex h = 0.0;
  if (mb == nb) {
    SystemParams q = p;
    q.g = 0.0;
    h += reduced_element(q, m1, m2, n1, n2, false);
    if (m1 == n1 && m2 == n2) h += p.omega_m * double(nb);
  }
  if (m1 == n1 && m2 == n2) {
    if (mb == nb + 1) h -= p.g * double(n1) * std::sqrt(double(nb + 1));
    if (nb >= 1 && mb == nb - 1) h -= p.g * double(n1) * std::sqrt(double(nb));
  }
  return h;
}

SystemParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-3.0, 3.0), pos(0.1, 3.0);
  SystemParams p;
  p.delta1 = u(rng);
  p.delta2 = u(rng);
  p.omega_m = pos(rng) * 10.0;
  p.lambda1 = u(rng);
  p.lambda2 = u(rng);
  p.g = pos(rng);
  p.drive = pos(rng);
  p.kappa1 = pos(rng);
  p.kappa2 = pos(rng);
  p.gamma_m = pos(rng) * 1e-3;
  p.n_th = pos(rng);
  return p;
}

}  // namespace

TEST_CASE("kerr strength") {
  SystemParams p;
  p.omega_m = 500.0;
  p.g = 0.0;
  CHECK(kerr_strength(p) == 0.0);
  p.g = 0.042 * 500.0;
  CHECK(kerr_strength(p) == doctest::Approx(0.882).epsilon(1e-12));
  p.g = 0.2 * 500.0;
  CHECK(kerr_strength(p) == doctest::Approx(20.0).epsilon(1e-12));
  p.omega_m = 0.0;
  CHECK_THROWS_AS(kerr_strength(p), InvalidArgument);
}

TEST_CASE("drive amplitude from power") {
  const double omega_l = 2.0 * M_PI * 2.8e14, kappa2 = 2.0 * M_PI * 1.5e5;
  const double e1 = drive_amplitude_from_power(1e-9, omega_l, kappa2);
  CHECK(e1 == doctest::Approx(std::sqrt(2.0 * kappa2 * 1e-9 / (kHbar * omega_l))).epsilon(1e-14));
  CHECK(drive_amplitude_from_power(4e-9, omega_l, kappa2) == doctest::Approx(2.0 * e1).epsilon(1e-14));
  CHECK(drive_amplitude_from_power(0.0, omega_l, kappa2) == 0.0);
  const double back = drive_amplitude_from_power(power_from_drive_amplitude(e1, omega_l, kappa2), omega_l, kappa2);
  CHECK(std::abs(back - e1) <= 1e-12 * e1);
  CHECK_THROWS_AS(drive_amplitude_from_power(-1.0, omega_l, kappa2), InvalidArgument);
  CHECK_THROWS_AS(drive_amplitude_from_power(1e-9, 0.0, kappa2), InvalidArgument);
}

TEST_CASE("gauge parameterization") {
  auto [a, b] = gauge_parameterization(0.7, 0.0);
  CHECK(a == 0.7);
  CHECK(b == 0.7);
  for (double h : {-2.0, 0.01, 0.5, 3.0}) {
    auto [l1, l2] = gauge_parameterization(0.96, h);
    CHECK(l1 * l2 == doctest::Approx(0.9216).epsilon(1e-13));
  }
  CHECK(gauge_parameterization(1.0, 40.0).second < 1e-15);
}

TEST_CASE("reduced Hamiltonian matches the Fock-space oracle") {
  std::mt19937_64 rng(21);
  const HilbertSpec spec = HilbertSpec::reduced(4, 3);
  for (int trial = 0; trial < 20; ++trial) {
    const SystemParams p = random_params(rng);
    const CMatrix h = build_reduced_hamiltonian(p, spec);
    const CMatrix alt = build_altdrive_hamiltonian(p, spec);
    for (std::size_t r = 0; r < spec.dimension(); ++r) {
      const auto m = spec.occupations(r);
      for (std::size_t c = 0; c < spec.dimension(); ++c) {
        const auto n = spec.occupations(c);
        CHECK(std::abs(h(r, c) - reduced_element(p, m[0], m[1], n[0], n[1], false)) < 1e-12);
        CHECK(std::abs(alt(r, c) - reduced_element(p, m[0], m[1], n[0], n[1], true)) < 1e-12);
      }
    }
  }
}

TEST_CASE("full Hamiltonian matches the Fock-space oracle") {
  std::mt19937_64 rng(22);
  const HilbertSpec spec = HilbertSpec::full(3, 3, 4);
  for (int trial = 0; trial < 5; ++trial) {
    const SystemParams p = random_params(rng);
    const CMatrix h = build_full_hamiltonian(p, spec);
    for (std::size_t r = 0; r < spec.dimension(); ++r) {
      const auto m = spec.occupations(r);
      for (std::size_t c = 0; c < spec.dimension(); ++c) {
        const auto n = spec.occupations(c);
        CHECK(std::abs(h(r, c) - full_element(p, m[0], m[1], m[2], n[0], n[1], n[2])) < 1e-12);
      }
    }
  }
}

TEST_CASE("nonreciprocal matrix elements") {
  SystemParams p;
  p.lambda1 = 0.3;
  p.lambda2 = 1.7;
  p.omega_m = 5.0;
  const HilbertSpec full = HilbertSpec::full(3, 3, 3);
  const std::size_t s100[] = {1, 0, 0}, s010[] = {0, 1, 0};
  const CMatrix h = build_full_hamiltonian(p, full);
  CHECK(h(full.index(s100), full.index(s010)) == Complex(0.3));
  CHECK(h(full.index(s010), full.index(s100)) == Complex(1.7));
}

TEST_CASE("Kerr diagonal") {
  SystemParams p;
  p.delta1 = 0.4;
  p.omega_m = 10.0;
  p.g = 3.0;
  const double chi = 0.9;
  const HilbertSpec spec = HilbertSpec::reduced(4, 2);
  const CMatrix h = build_reduced_hamiltonian(p, spec);
  for (std::size_t n = 0; n < 4; ++n) {
    const std::size_t occ[] = {n, 0};
    CHECK(h(spec.index(occ), spec.index(occ)).real() ==
          doctest::Approx(0.4 * double(n) - chi * double(n * n)).epsilon(1e-13));
  }
  const std::size_t s20[] = {2, 0};
  CHECK(h(spec.index(s20), spec.index(s20)).real() == doctest::Approx(2 * 0.4 - 4 * chi));
}

TEST_CASE("Hermitian if and only if the hoppings agree") {
  std::mt19937_64 rng(23);
  const HilbertSpec spec = HilbertSpec::reduced(3, 3);
  for (int trial = 0; trial < 50; ++trial) {
    SystemParams p = random_params(rng);
    CHECK_FALSE(is_hermitian(build_reduced_hamiltonian(p, spec), 1e-14));
    p.lambda2 = p.lambda1;
    CHECK(is_hermitian(build_reduced_hamiltonian(p, spec), 1e-14));
    CHECK(is_hermitian(build_full_hamiltonian(p, HilbertSpec::full(2, 2, 3)), 1e-14));
  }
}

TEST_CASE("non-Hermitian part is diagonal decay") {
  std::mt19937_64 rng(24);
  const HilbertSpec spec = HilbertSpec::reduced(3, 4);
  for (int trial = 0; trial < 20; ++trial) {
    const SystemParams p = random_params(rng);
    const CMatrix diff = build_nonhermitian(p, spec) - build_reduced_hamiltonian(p, spec);
    for (std::size_t r = 0; r < spec.dimension(); ++r) {
      const auto n = spec.occupations(r);
      for (std::size_t c = 0; c < spec.dimension(); ++c) {
        if (r != c) {
          CHECK(diff(r, c) == Complex(0.0));
          continue;
        }
        CHECK(diff(r, r).real() == 0.0);
        CHECK(diff(r, r).imag() <= 0.0);
        CHECK(diff(r, r).imag() ==
              doctest::Approx(-0.5 * (p.kappa1 * double(n[0]) + p.kappa2 * double(n[1]))));
      }
    }
  }
  SystemParams q = random_params(rng);
  q.kappa1 = q.kappa2 = 0.0;
  CHECK(build_nonhermitian(q, spec) == build_reduced_hamiltonian(q, spec));
}

TEST_CASE("undriven Hamiltonian conserves excitations") {
  std::mt19937_64 rng(25);
  const HilbertSpec spec = HilbertSpec::reduced(4, 4);
  SystemParams p = random_params(rng);
  const CMatrix h = build_undriven(p, spec);
  for (std::size_t r = 0; r < spec.dimension(); ++r)
    for (std::size_t c = 0; c < spec.dimension(); ++c) {
      const auto m = spec.occupations(r), n = spec.occupations(c);
      if (m[0] + m[1] != n[0] + n[1]) CHECK(h(r, c) == Complex(0.0));
    }
  p.drive = 0.0;
  CHECK(build_reduced_hamiltonian(p, spec) == h);
  CHECK(build_altdrive_hamiltonian(p, spec) == h);
}

TEST_CASE("collapse operators") {
  SystemParams p;
  p.omega_m = 500.0;
  p.gamma_m = 500.0 / 1e6;
  p.kappa1 = 1.0;
  p.kappa2 = 1.0;
  p.n_th = 0.0;
  const HilbertSpec full = HilbertSpec::full(2, 2, 3);
  const auto d = collapse_ops(p, full, true);
  REQUIRE(d.channels.size() == 3);
  CHECK(d.channels[0].rate == 1.0);
  CHECK(d.channels[1].rate == 1.0);
  CHECK(d.channels[2].rate == doctest::Approx(5e-4));
  CHECK(d.channels[2].op == mode_annihilation("b", full));
  p.n_th = 0.5;
  const auto thermal = collapse_ops(p, full, true);
  REQUIRE(thermal.channels.size() == 4);
  CHECK(thermal.channels[3].op == dagger(mode_annihilation("b", full)));
  CHECK(thermal.channels[3].rate == doctest::Approx(2.5e-4));
  CHECK_THROWS_AS(collapse_ops(p, HilbertSpec::reduced(), true), InvalidArgument);
  CHECK_THROWS_AS(collapse_ops(p, full, false), InvalidArgument);
  CHECK(collapse_ops(p, HilbertSpec::reduced(), false).channels.size() == 2);
}

TEST_CASE("unit conversion round trip") {
  std::mt19937_64 rng(26);
  SystemParams p = random_params(rng);
  const double k = 0.9424777960769379;
  const SystemParams lab = to_mhz_angular(p, k);
  CHECK(lab.units == UnitSystem::MHzAngular);
  CHECK(lab.kappa2 == doctest::Approx(p.kappa2 * k));
  CHECK(lab.n_th == p.n_th);
  SystemParams unit = p;
  unit.kappa2 = 1.0;
  const SystemParams back = to_kappa2_units(to_mhz_angular(unit, k));
  CHECK(back.delta1 == doctest::Approx(unit.delta1).epsilon(1e-15));
  CHECK(back.g == doctest::Approx(unit.g).epsilon(1e-15));
  CHECK(back.kappa2 == 1.0);
}

TEST_CASE("hermitized keeps the product") {
  SystemParams p;
  p.lambda1 = 0.5;
  p.lambda2 = 2.0;
  const SystemParams h = hermitized(p);
  CHECK(h.lambda1 == doctest::Approx(1.0));
  CHECK(h.lambda2 == doctest::Approx(1.0));
  p.lambda2 = -1.0;
  CHECK_THROWS_AS(hermitized(p), InvalidArgument);
}

TEST_CASE("parameter validation") {
  SystemParams p;
  p.kappa1 = -1.0;
  CHECK_THROWS_AS(p.validate(), InvalidArgument);
  p.kappa1 = 1.0;
  p.drive = std::nan("");
  CHECK_THROWS_AS(p.validate(), InvalidArgument);
  p.drive = 0.1;
  p.lambda2 = -3.0;
  CHECK_NOTHROW(p.validate());
}
