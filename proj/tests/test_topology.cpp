#include <doctest.h>

#include "cellspec/constructions.hpp"
#include "cellspec/generators.hpp"
#include "cellspec/invariants.hpp"
#include "cellspec/topology.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace cellspec;
using testing::error_code;
using testing::vee;

namespace {

const FiniteSpace sierpinski(2, {0b00, 0b01, 0b11});

}  // namespace

TEST_CASE("finite spaces") {
  CHECK(error_code([] { FiniteSpace(2, {0b00, 0b01}); }) == Errc::invalid_space);
  CHECK(error_code([] { FiniteSpace(2, {0b00, 0b01, 0b10}); }) == Errc::invalid_space);
  CHECK(error_code([] { FiniteSpace(65, {}); }) == Errc::size_overflow);

  const std::vector<PointSet> subbasis{0b011, 0b110};
  const auto X = FiniteSpace::generated_by(3, subbasis);
  CHECK(X.opens() == std::vector<PointSet>{0b000, 0b010, 0b011, 0b110, 0b111});
  CHECK(FiniteSpace::discrete(2).opens().size() == 4);
  CHECK(FiniteSpace::indiscrete(3).opens() == std::vector<PointSet>{0, 0b111});
}

TEST_CASE("open-set posets") {
  const auto D = open_poset(FiniteSpace::discrete(2));
  CHECK(D.size() == 3);
  CHECK(cellularity(D).value == 2);
  CHECK(open_poset(FiniteSpace::indiscrete(3)).size() == 1);
  CHECK(space_cellularity(FiniteSpace::indiscrete(3)) == 1);
  CHECK(open_poset(sierpinski) == chain(2));
  CHECK(space_cellularity(sierpinski) == 1);
  CHECK(error_code([] { open_poset(FiniteSpace(0, {0})); }) == Errc::no_nonempty_open);
}

TEST_CASE("Alexandrov spaces") {
  const auto C = alexandrov_space(chain(2));
  CHECK(C == sierpinski);
  CHECK(space_cellularity(C) == 1);

  const auto F = alexandrov_space(flat(2));
  CHECK(F.opens() == std::vector<PointSet>{0b00, 0b01, 0b10, 0b11});
  CHECK(space_cellularity(F) == 2);

  const auto V = alexandrov_space(vee());
  CHECK(V.opens() == std::vector<PointSet>{0b000, 0b100, 0b101, 0b110, 0b111});
  CHECK(space_cellularity(V) == 1);

  for (const auto& Q : canonical_preorders(5)) {
    const auto X = alexandrov_space(Q);
    std::vector<PointSet> down;
    for (PointSet s = 0; s < (PointSet{1} << Q.size()); ++s) {
      bool closed = true;
      for (Index p = 0; p < Q.size() && closed; ++p) {
        for (Index q = 0; q < Q.size() && closed; ++q) {
          if ((s >> p & 1U) && Q.leq(q, p)) closed = (s >> q & 1U) != 0;
        }
      }
      if (closed) down.push_back(s);
      CHECK(is_down_closed(Q, s) == closed);
    }
    CHECK(X.opens() == down);
    const auto O = open_poset(X);
    CHECK(cellularity(O).value == cellularity(Q).value);
    for (Index u = 0; u < O.size(); ++u) {
      for (Index v = 0; v < O.size(); ++v) {
        CHECK(compatible(O, u, v) == ((X.opens()[u + 1] & X.opens()[v + 1]) != 0));
      }
    }
  }
}

TEST_CASE("product spaces") {
  const auto X = alexandrov_space(vee());
  CHECK(space_product(X, FiniteSpace::indiscrete(1)) == X);
  const auto D = space_product(FiniteSpace::discrete(2), FiniteSpace::discrete(2));
  CHECK(D == FiniteSpace::discrete(4));
  CHECK(space_cellularity(D) == 4);
  const auto SD = space_product(sierpinski, FiniteSpace::discrete(2));
  CHECK(space_cellularity(SD) == 2);
  CHECK(oracle::cellularity(open_poset(SD)) == 2);

  const auto& grid = canonical_preorders(3);
  for (const auto& P : grid) {
    for (const auto& Q : grid) {
      const auto A = alexandrov_space(P);
      const auto B = alexandrov_space(Q);
      const auto AB = space_product(A, B);
      CHECK(space_cellularity(AB) == cellularity(product(open_poset(A), open_poset(B))).value);
      // products of Alexandrov spaces are the Alexandrov space of the product
      CHECK(AB == alexandrov_space(product(P, Q)));
    }
  }
}
