#include <doctest.h>

#include <cmath>
#include <map>

#include "vqt/ansatz.hpp"
#include "vqt/error.hpp"

using namespace vqt;

namespace {

std::map<GateKind, int> census(const Circuit& c) {
  std::map<GateKind, int> m;
  for (const auto& g : c.gates()) ++m[g.kind];
  return m;
}

}  // namespace

TEST_CASE("standard ansatz on four qubits has forty parameters") {
  const Circuit c = build_circuit({AnsatzFamily::standard, 4, 5});
  CHECK(c.n_encoding_slots() == 4);
  CHECK(c.n_variational_slots() == 40);
  auto m = census(c);
  CHECK(m[GateKind::RX] == 4);
  CHECK(m[GateKind::RY] == 20);
  CHECK(m[GateKind::RZ] == 20);
  CHECK(m[GateKind::ZZ] == 15);
  for (const auto& g : c.gates())
    if (g.kind == GateKind::ZZ) {
      CHECK(g.fixed_angle == kEntanglerAngle);
      CHECK(g.targets[0] == g.targets[1] + 1);
    }
  CHECK(slots_per_layer(AnsatzFamily::standard, 5) == 10);
}

TEST_CASE("every variational slot is used exactly once") {
  for (auto fam : {AnsatzFamily::standard, AnsatzFamily::least_expressive,
                   AnsatzFamily::most_expressive}) {
    const Circuit c = build_circuit({fam, 4, 2});
    std::vector<int> uses(c.n_slots(), 0);
    for (const auto& g : c.gates())
      if (g.slot) ++uses[*g.slot];
    for (int u : uses) CHECK(u == 1);
    CHECK(c.n_variational_slots() == 2 * slots_per_layer(fam, 4));
  }
}

TEST_CASE("least and most expressive layers") {
  const Circuit least = build_circuit({AnsatzFamily::least_expressive, 4, 1});
  auto m = census(least);
  CHECK(m[GateKind::H] == 4);
  CHECK(m[GateKind::ZZ] == 3);
  CHECK(m[GateKind::RY] == 4);
  CHECK(least.n_variational_slots() == 4);

  const Circuit most = build_circuit({AnsatzFamily::most_expressive, 4, 1});
  m = census(most);
  CHECK(m[GateKind::CRX] == 12);
  CHECK(m[GateKind::RX] == 4 + 8);
  CHECK(m[GateKind::RZ] == 8);
  CHECK(most.n_variational_slots() == 28);
  // First CRX is controlled by the last qubit.
  for (const auto& g : most.gates())
    if (g.kind == GateKind::CRX) {
      CHECK(g.targets == std::vector<int>{3, 2});
      break;
    }
}

TEST_CASE("initial parameters are zero") {
  const auto p = initial_parameters({AnsatzFamily::standard, 4, 5});
  CHECK(p == std::vector<double>(40, 0.0));
  CHECK(parse_ansatz_family("least_expressive") == AnsatzFamily::least_expressive);
  CHECK_THROWS_AS(parse_ansatz_family("nope"), Error);
  CHECK_THROWS_AS(build_circuit({AnsatzFamily::standard, 4, 0}), Error);
  CHECK_THROWS_AS(build_circuit({AnsatzFamily::standard, 3, 1}), Error);
}

TEST_CASE("feature scaler maps the training range onto [-pi, pi]") {
  const std::vector<double> rows{0.0, 5.0, 10.0, 5.0, 5.0, 5.0};  // 3 x 2
  const auto s = FeatureScaler::fit(rows, 2);
  const auto lo = s.transform(std::vector<double>{0.0, 5.0});
  const auto hi = s.transform(std::vector<double>{10.0, 5.0});
  const auto mid = s.transform(std::vector<double>{5.0, 5.0});
  CHECK(lo[0] == doctest::Approx(-M_PI));
  CHECK(hi[0] == doctest::Approx(M_PI));
  CHECK(mid[0] == doctest::Approx(0.0));
  CHECK(lo[1] == 0.0);  // constant feature
  const auto out = s.transform(std::vector<double>{20.0, 5.0});
  CHECK(out[0] == doctest::Approx(M_PI));
  CHECK_THROWS_AS(s.transform(std::vector<double>{1.0}), Error);
}
