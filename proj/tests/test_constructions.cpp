#include <doctest.h>

#include "cellspec/constructions.hpp"
#include "cellspec/generators.hpp"
#include "cellspec/invariants.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace cellspec;
using testing::error_code;
using testing::flat_with_bottom;
using testing::flat_with_top;
using testing::vee;

namespace {

AntichainFamily family(const Preorder& base, std::vector<std::vector<Index>> lists) {
  std::vector<ElementSet> members;
  for (const auto& l : lists) members.emplace_back(base.size(), l);
  return AntichainFamily(base, std::move(members));
}

std::vector<std::vector<Index>> lists(const std::vector<ElementSet>& sets) {
  std::vector<std::vector<Index>> out;
  for (const auto& s : sets) out.push_back(s.members());
  return out;
}

}  // namespace

TEST_CASE("binary products") {
  const auto Q = vee();
  CHECK(product(chain(1), Q) == Q);

  const auto d = product(chain(2), chain(2));
  REQUIRE(d.size() == 4);
  for (Index e = 0; e < 4; ++e) {
    CHECK(d.leq(pair_index(0, 0, 2), e));
    CHECK(d.leq(e, pair_index(1, 1, 2)));
  }
  CHECK_FALSE(d.leq(pair_index(0, 1, 2), pair_index(1, 0, 2)));

  CHECK(product(flat(2), flat(2)) == flat(4));
  CHECK(error_code([] { product(flat(100), flat(100)); }) == Errc::size_overflow);
  CHECK(error_code([] { product(Preorder{}, flat(1)); }) == Errc::empty_poset);

  const auto& small = canonical_preorders(3);
  for (const auto& P : small) {
    for (const auto& R : small) {
      const auto PR = product(P, R);
      CHECK(cellularity(PR).value >= std::max(cellularity(P).value, cellularity(R).value));
      CHECK(cellularity(PR).value == oracle::cellularity(PR));
    }
  }
}

TEST_CASE("finite-support products") {
  CHECK(error_code([] { PointedPreorder(flat(2), 0); }) == Errc::no_top_element);
  CHECK(error_code([] { finite_support_product({}); }) == Errc::precondition_unmet);

  CHECK(error_code([] { PointedPreorder(vee(), 2); }) == Errc::no_top_element);
  const PointedPreorder top3(flat_with_top(2), 2);
  CHECK(finite_support_product(std::vector{top3}).order == top3.order);

  const PointedPreorder c2(chain(2), 1);
  const auto two = finite_support_product(std::vector{c2, c2});
  CHECK(two.order.size() == 4);
  CHECK(two.order == product(chain(2), chain(2)));
  CHECK(*std::max_element(two.support.begin(), two.support.end()) == 2);
  CHECK(two.support[3] == 0);

  const auto three = finite_support_product(std::vector{top3, top3, top3});
  CHECK(three.order.size() == 27);
  CHECK(three.order == product(product(top3.order, top3.order), top3.order));
  CHECK(cellularity(three.order).value == 8);
  CHECK(oracle::cellularity_backtrack(three.order) == 8);
  CHECK(three.coordinates(pair_index(pair_index(1, 2, 3), 0, 3)) == std::vector<Index>{1, 2, 0});
  CHECK(greatest_element(top3.order) == Index{2});
  CHECK_FALSE(greatest_element(flat(2)).has_value());
}

TEST_CASE("antichain families") {
  const auto P = flat(3);
  const auto f = family(P, {{1, 2}, {0, 1}, {1}, {}});
  CHECK(lists(f.members()) == std::vector<std::vector<Index>>{{0, 1}, {1, 2}});
  CHECK(f.union_size() == 3);
  CHECK(f.is_large(2));
  CHECK_FALSE(f.is_large(3));
  CHECK(f.admits(ElementSet(3, {0})));
  CHECK(f.admits(ElementSet(3)));
  CHECK_FALSE(f.admits(ElementSet(3, {0, 2})));
  CHECK(error_code([] { family(chain(2), {{0, 1}}); }) == Errc::not_an_antichain);

  for (const auto& base : canonical_preorders(3)) {
    const auto all = all_families(base, 3);
    CHECK(all.front().members().empty());
    for (std::size_t i = 0; i < all.size(); ++i) {
      for (std::size_t j = i + 1; j < all.size(); ++j) CHECK_FALSE(all[i] == all[j]);
    }
  }
}

TEST_CASE("F-posets") {
  const auto P = flat(3);
  const auto one = f_poset(family(P, {{0}}));
  CHECK(lists(one.sets()) == std::vector<std::vector<Index>>{{}, {0}});
  CHECK(one.as_preorder() == Preorder::from_pairs(2, {{1, 0}}, Closure::close));
  CHECK(one.top() == 0);

  const auto example = f_poset(family(P, {{0, 1}, {1, 2}}));
  CHECK(lists(example.sets()) == std::vector<std::vector<Index>>{{}, {0}, {0, 1}, {1}, {1, 2}, {2}});
  CHECK(cellularity(example.as_preorder()).value == 2);

  const auto empty = f_poset(family(P, {{}}));
  CHECK(empty.size() == 1);
  CHECK(f_poset(family(P, {})).size() == 1);

  CHECK(error_code([] { f_poset(family(flat(13), {{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12}})); }) ==
        Errc::size_overflow);

  SUBCASE("union test") {
    const ElementSet a(3, {0}), b(3, {1}), c(3, {2});
    CHECK(incompatibility_matches_union(example, a, c));
    CHECK_FALSE(compatible(example.as_preorder(), *example.position(a), *example.position(c)));
    CHECK(incompatibility_matches_union(example, a, b));
    CHECK(compatible(example.as_preorder(), *example.position(a), *example.position(b)));
    CHECK(incompatibility_matches_union(example, a, a));
    CHECK(error_code([&] { incompatibility_matches_union(example, a, ElementSet(3, {0, 2})); }) ==
          Errc::set_not_in_fposet);
  }

  SUBCASE("listing and order agree with direct definitions") {
    for (const auto& base : canonical_preorders(4)) {
      for (const auto& f : all_families(base, 3)) {
        const auto fp = f_poset(f);
        const auto expected = oracle::fposet_sets(base.size(), lists(f.members()));
        const auto listed = lists(fp.sets());
        CHECK(std::set<std::vector<Index>>(listed.begin(), listed.end()) == expected);
        CHECK(fp.size() == expected.size());
        const auto& order = fp.as_preorder();
        for (Index i = 0; i < fp.size(); ++i) {
          CHECK(order.leq(i, fp.top()));
          for (Index j = 0; j < fp.size(); ++j) {
            CHECK(order.leq(i, j) == fp.sets()[j].is_subset_of(fp.sets()[i]));
          }
        }
        // members are pairwise incompatible, so c(F) >= number of members
        if (!f.members().empty()) CHECK(cellularity(order).value == f.members().size());
      }
    }
  }
}

TEST_CASE("diagonal antichain") {
  const auto P = flat(3);
  const auto t = diagonal_antichain(family(P, {{0, 1}, {1, 2}}));
  CHECK(t.members.size() == 3);
  CHECK(t.is_antichain);
  CHECK(t.product.size() == 18);

  const auto single = diagonal_antichain(family(P, {{0}}));
  CHECK(single.members.size() == 1);
  CHECK(single.is_antichain);

  const auto B = flat_with_bottom(2);
  const auto bottomed = diagonal_antichain(family(B, {{0}, {1}}));
  CHECK(bottomed.members.size() == 2);
  CHECK(bottomed.is_antichain);
  CHECK(oracle::is_antichain(bottomed.product, static_cast<oracle::Mask>(bottomed.members.bits().to_ulong())));
}

TEST_CASE("section families") {
  const auto P = flat(3);
  const auto original = family(P, {{0, 1}, {1, 2}});
  const auto t = diagonal_antichain(original);
  const auto regenerated = section_family(P, t.fposet.as_preorder(), t.members);
  CHECK(regenerated == original);

  const auto Q = chain(2);
  const auto single = section_family(vee(), Q, ElementSet(6, {pair_index(1, 1, 2)}));
  CHECK(lists(single.members()) == std::vector<std::vector<Index>>{{1}});
  CHECK(section_family(vee(), Q, ElementSet(6)).members().empty());
  CHECK(error_code([&] { section_family(vee(), Q, ElementSet(6, {0, 1})); }) == Errc::not_an_antichain);
}

TEST_CASE("antichain pullback") {
  const auto R = chain(1);
  const auto P = vee();
  const ElementSet W(3, {1});
  CHECK(pull_back_antichain(MonotoneMap(P, P, {0, 1, 2}), R, W) == W);

  const auto to_point = pull_back_antichain(MonotoneMap(P, chain(1), {0, 0, 0}), R, ElementSet(1, {0}));
  CHECK(to_point.size() == 1);

  const MonotoneMap two_to_one(flat(4), flat(2), {0, 0, 1, 1});
  const auto pulled = pull_back_antichain(two_to_one, R, ElementSet(2, {0, 1}));
  CHECK(pulled == ElementSet(4, {0, 2}));
  CHECK(is_antichain(flat(4), pulled));

  CHECK(error_code([&] { pull_back_antichain(MonotoneMap(flat(1), flat(2), {0}), R, ElementSet(2, {0})); }) ==
        Errc::not_surjective);
  CHECK(error_code([&] { pull_back_antichain(MonotoneMap(chain(2), chain(2), {1, 0}), R, ElementSet(2, {0})); }) ==
        Errc::precondition_unmet);
  CHECK(error_code([&] { pull_back_antichain(MonotoneMap(chain(2), chain(2), {0, 1}), R, ElementSet(2, {0, 1})); }) ==
        Errc::not_an_antichain);
}
