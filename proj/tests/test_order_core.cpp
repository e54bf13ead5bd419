#include <doctest.h>

#include "cellspec/generators.hpp"
#include "cellspec/invariants.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace cellspec;
using testing::error_code;
using testing::vee;

TEST_CASE("loading relations") {
  const auto c2 = Preorder::from_pairs(2, {{0, 1}}, Closure::close);
  CHECK(c2.pairs() == std::vector<IndexPair>{{0, 0}, {0, 1}, {1, 1}});

  CHECK(error_code([] { Preorder::from_pairs(3, {}, Closure::verify); }) == Errc::relation_not_reflexive);
  CHECK(error_code([] {
          Preorder::from_pairs(3, {{0, 0}, {1, 1}, {2, 2}, {0, 1}, {1, 2}}, Closure::verify);
        }) == Errc::relation_not_transitive);
  CHECK(error_code([] { Preorder::from_pairs(2, {{0, 2}}, Closure::close); }) == Errc::index_out_of_range);

  try {
    Preorder::from_pairs(3, {{0, 0}, {1, 1}, {2, 2}, {0, 1}, {1, 2}}, Closure::verify);
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("RelationNotTransitive") == 0);
    CHECK(std::string(e.what()).find("(0,2)") != std::string::npos);
  }

  // closing an already closed relation changes nothing
  const auto v = vee();
  CHECK(Preorder::from_pairs(3, v.pairs(), Closure::verify) == v);
}

TEST_CASE("compatibility") {
  CHECK(compatible(chain(2), 0, 1));
  CHECK_FALSE(compatible(flat(2), 0, 1));
  CHECK(compatible(vee(), 0, 1));
  CHECK(error_code([] { compatible(flat(2), 0, 2); }) == Errc::index_out_of_range);

  for (const auto& P : canonical_preorders(4)) {
    for (Index p = 0; p < P.size(); ++p) {
      for (Index q = 0; q < P.size(); ++q) {
        CHECK(compatible(P, p, q) == compatible(P, q, p));
        CHECK(compatible(P, p, q) == oracle::compatible(P, p, q));
        if (P.leq(p, q)) CHECK(compatible(P, p, q));
      }
    }
  }
}

TEST_CASE("antichains") {
  CHECK(is_antichain(flat(3), ElementSet(3, {0, 1, 2})));
  CHECK_FALSE(is_antichain(chain(2), ElementSet(2, {0, 1})));
  CHECK(is_antichain(vee(), ElementSet(3, {1})));
  CHECK(is_antichain(vee(), ElementSet(3)));
}

TEST_CASE("cellularity") {
  for (std::size_t n = 1; n <= 7; ++n) {
    CHECK(cellularity(chain(n)).value == 1);
    CHECK(cellularity(flat(n)).value == n);
  }
  CHECK(error_code([] { cellularity(Preorder{}); }) == Errc::empty_poset);

  // reverse inclusion on {}, {a}, {b}, {c}, {a,b}, {b,c}
  const std::vector<std::vector<Index>> sets{{}, {0}, {1}, {2}, {0, 1}, {1, 2}};
  std::vector<IndexPair> pairs;
  for (Index i = 0; i < sets.size(); ++i) {
    for (Index j = 0; j < sets.size(); ++j) {
      if (std::includes(sets[i].begin(), sets[i].end(), sets[j].begin(), sets[j].end())) pairs.emplace_back(i, j);
    }
  }
  const auto F = Preorder::from_pairs(6, pairs, Closure::verify);
  CHECK(cellularity(F).value == 2);
  CHECK(oracle::cellularity(F) == 2);

  SUBCASE("witness is an antichain of the stated size") {
    for (const auto& P : canonical_preorders(5)) {
      const auto c = cellularity(P);
      CHECK(c.witness.size() == c.value);
      CHECK(is_antichain(P, ElementSet(P.size(), c.witness)));
    }
  }
}

TEST_CASE("density") {
  const auto c3 = chain(3);
  CHECK(is_dense(c3, ElementSet(3, {0})));
  CHECK_FALSE(is_dense(flat(2), ElementSet(2, {0})));
  CHECK(is_dense(vee(), ElementSet(3, {0, 1, 2})));

  for (std::size_t n = 1; n <= 6; ++n) {
    CHECK(density(chain(n)).value == 1);
    CHECK(density(flat(n)).value == n);
  }
  const auto d = density(vee());
  CHECK(d.value == 1);
  CHECK(d.witness == std::vector<Index>{2});
  CHECK(error_code([] { density(Preorder{}); }) == Errc::empty_poset);

  for (const auto& P : canonical_preorders(5)) {
    const auto fast = density(P);
    CHECK(fast.value == oracle::density(P));
    CHECK(is_dense(P, ElementSet(P.size(), fast.witness)));
    CHECK(cellularity(P).value <= fast.value);
  }
}

TEST_CASE("linkage and centered sets") {
  CHECK_FALSE(is_n_linked(flat(2), ElementSet(2, {0, 1}), 2));
  CHECK(is_n_linked(vee(), ElementSet(3, {0, 1}), 2));
  CHECK(is_n_linked(flat(4), ElementSet(4, {3}), 2));
  CHECK(error_code([] { is_n_linked(flat(2), ElementSet(2, {0}), 1); }) == Errc::bad_arity);

  CHECK(is_centered(vee(), ElementSet(3, {0, 1})));
  CHECK_FALSE(is_centered(flat(2), ElementSet(2, {0, 1})));
  CHECK(is_centered(chain(4), ElementSet(4, {1, 3})));
  CHECK(error_code([] { is_centered(flat(2), ElementSet(2)); }) == Errc::empty_set);

  for (const auto& P : canonical_preorders(5)) {
    for (oracle::Mask s = 1; s < (oracle::Mask{1} << P.size()); ++s) {
      ElementSet A(P.size());
      for (Index p = 0; p < P.size(); ++p) {
        if (s >> p & 1U) A.insert(p);
      }
      const bool bounded = oracle::has_lower_bound(P, s);
      CHECK(is_centered(P, A) == bounded);
      CHECK(is_centered_by_linkage(P, A) == bounded);
      for (std::size_t n = 2; n <= 3; ++n) {
        const bool vacuous = A.size() < n;
        bool linked = true;
        for (oracle::Mask sub = s; sub != 0 && linked; sub = (sub - 1) & s) {
          if (static_cast<std::size_t>(std::popcount(sub)) == n) linked = oracle::has_lower_bound(P, sub);
        }
        CHECK(is_n_linked(P, A, n) == (vacuous || linked));
      }
    }
  }
}

TEST_CASE("linked-free numbers") {
  CHECK(linked_free_number(flat(3), 3).value == 3);
  CHECK(linked_free_number(chain(3), 2).value == 1);
  CHECK(error_code([] { linked_free_number(flat(2), 1); }) == Errc::bad_arity);

  for (const auto& P : canonical_preorders(5)) {
    const std::size_t c = cellularity(P).value;
    const std::size_t d = density(P).value;
    std::size_t previous = 0;
    for (std::size_t n = 2; n <= 4; ++n) {
      const auto ind = linked_free_number(P, n);
      CHECK(ind.value == oracle::linked_free_number(P, n));
      CHECK(ind.witness.size() == ind.value);
      oracle::Mask w = 0;
      for (Index p : ind.witness) w |= oracle::Mask{1} << p;
      CHECK_FALSE(oracle::has_bounded_n_subset(P, w, n));
      if (n == 2) CHECK(ind.value == c);
      CHECK(ind.value >= previous);
      CHECK(ind.value <= (n - 1) * d);
      previous = ind.value;
    }
  }
}

TEST_CASE("monotone maps") {
  const auto P = vee();
  CHECK(is_monotone_surjection(MonotoneMap(P, P, {0, 1, 2})));
  CHECK(is_monotone_surjection(MonotoneMap(P, chain(1), {0, 0, 0})));
  CHECK(is_monotone_surjection(MonotoneMap(flat(2), chain(2), {0, 1})));
  CHECK_FALSE(is_monotone(MonotoneMap(chain(2), chain(2), {1, 0})));
  CHECK_FALSE(is_surjective(MonotoneMap(flat(2), flat(3), {0, 1})));
  CHECK(error_code([] { MonotoneMap(flat(2), flat(2), {0}); }) == Errc::index_out_of_range);
  CHECK(error_code([] { MonotoneMap(flat(2), flat(2), {0, 2}); }) == Errc::index_out_of_range);
}

TEST_CASE("antichain listing") {
  for (const auto& P : canonical_preorders(4)) {
    const auto all = antichains(P);
    std::size_t expected = 0;
    for (oracle::Mask s = 1; s < (oracle::Mask{1} << P.size()); ++s) expected += oracle::is_antichain(P, s);
    CHECK(all.size() == expected);
    for (const auto& M : maximal_antichains(P)) {
      for (Index p = 0; p < P.size(); ++p) {
        if (M.contains(p)) continue;
        ElementSet bigger = M;
        bigger.insert(p);
        CHECK_FALSE(is_antichain(P, bigger));
      }
    }
  }
}
