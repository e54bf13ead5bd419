#include "cellspec/constructions.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

#include "cellspec/error.hpp"
#include "cellspec/invariants.hpp"

namespace cellspec {

namespace {

std::string count_text(std::size_t n) { return std::to_string(n); }

void require_within(std::size_t size, std::size_t cap, const char* what) {
  if (size > cap) {
    throw Error(Errc::size_overflow,
                std::string(what) + " would have " + count_text(size) + " elements, cap is " + count_text(cap));
  }
}

std::size_t checked_mul(std::size_t a, std::size_t b, std::size_t cap, const char* what) {
  if (a != 0 && b > cap / a) {
    throw Error(Errc::size_overflow, std::string(what) + " of " + count_text(a) + " x " + count_text(b) +
                                         " elements exceeds cap " + count_text(cap));
  }
  return a * b;
}

}  // namespace

Preorder product(const Preorder& P, const Preorder& Q, std::size_t cap) {
  if (P.empty() || Q.empty()) throw Error(Errc::empty_poset, "product with an empty factor");
  const std::size_t m = Q.size();
  const std::size_t n = checked_mul(P.size(), m, cap, "product");
  std::vector<Bits> up(n, Bits(n));
  for (Index p = 0; p < P.size(); ++p) {
    const auto p_up = to_indices(P.up(p));
    for (Index q = 0; q < m; ++q) {
      const auto q_up = to_indices(Q.up(q));
      Bits& row = up[pair_index(p, q, m)];
      for (Index pp : p_up) {
        for (Index qq : q_up) row.set(pair_index(pp, qq, m));
      }
    }
  }
  return assume_closed(std::move(up));
}

std::optional<Index> greatest_element(const Preorder& P) {
  for (Index t = 0; t < P.size(); ++t) {
    if (P.down(t).all()) return t;
  }
  return std::nullopt;
}

PointedPreorder::PointedPreorder(Preorder order_, Index top_) : order(std::move(order_)), top(top_) {
  if (top >= order.size() || !order.down(top).all()) {
    throw Error(Errc::no_top_element, "element " + count_text(top) + " is not above every element");
  }
}

std::vector<Index> SupportProduct::coordinates(Index element) const {
  std::vector<Index> coords(radices.size());
  for (std::size_t i = radices.size(); i-- > 0;) {
    coords[i] = element % radices[i];
    element /= radices[i];
  }
  return coords;
}

SupportProduct finite_support_product(std::span<const PointedPreorder> factors, std::size_t cap) {
  if (factors.empty()) throw Error(Errc::precondition_unmet, "finite-support product of no factors");
  SupportProduct out;
  std::size_t n = 1;
  for (const auto& f : factors) {
    // re-validate: the members are public and may have been edited
    if (f.top >= f.order.size() || !f.order.down(f.top).all()) {
      throw Error(Errc::no_top_element, "factor " + count_text(out.radices.size()) + " has no top at " +
                                            count_text(f.top));
    }
    n = checked_mul(n, f.order.size(), cap, "finite-support product");
    out.radices.push_back(f.order.size());
    out.tops.push_back(f.top);
  }

  std::vector<std::vector<Index>> coords(n);
  out.support.resize(n);
  for (Index e = 0; e < n; ++e) {
    coords[e] = out.coordinates(e);
    for (std::size_t i = 0; i < factors.size(); ++i) out.support[e] += coords[e][i] != out.tops[i];
  }
  std::vector<Bits> up(n, Bits(n));
  for (Index e = 0; e < n; ++e) {
    for (Index f = 0; f < n; ++f) {
      bool below = true;
      for (std::size_t i = 0; i < factors.size() && below; ++i) {
        below = factors[i].order.leq(coords[e][i], coords[f][i]);
      }
      if (below) up[e].set(f);
    }
  }
  out.order = assume_closed(std::move(up));
  return out;
}

AntichainFamily::AntichainFamily(Preorder base, std::vector<ElementSet> members)
    : base_(std::move(base)), union_(base_.size()) {
  for (std::size_t i = 0; i < members.size(); ++i) {
    check_set(base_, members[i]);
    if (!is_antichain(base_, members[i])) {
      throw Error(Errc::not_an_antichain, "family member " + count_text(i) + " is not an antichain");
    }
  }
  std::erase_if(members, [](const ElementSet& s) { return s.empty(); });
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  for (std::size_t i = 0; i < members.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < members.size() && !dominated; ++j) {
      dominated = i != j && members[i].is_subset_of(members[j]);
    }
    if (!dominated) members_.push_back(members[i]);
  }
  Bits all(base_.size());
  for (const auto& m : members_) all |= m.bits();
  union_ = ElementSet(std::move(all));
}

bool AntichainFamily::admits(const ElementSet& S) const {
  check_set(base_, S);
  if (S.empty()) return true;
  return std::any_of(members_.begin(), members_.end(),
                     [&](const ElementSet& m) { return S.is_subset_of(m); });
}

namespace {

void grow_families(const Preorder& P, const std::vector<ElementSet>& pool, std::size_t start,
                   std::vector<ElementSet>& chosen, std::size_t max_members, std::size_t cap,
                   std::vector<AntichainFamily>& out) {
  if (out.size() == cap) throw Error(Errc::cap_exceeded, "more than " + count_text(cap) + " families");
  out.emplace_back(P, chosen);
  if (chosen.size() == max_members) return;
  for (std::size_t i = start; i < pool.size(); ++i) {
    const bool comparable = std::any_of(chosen.begin(), chosen.end(), [&](const ElementSet& c) {
      return c.is_subset_of(pool[i]) || pool[i].is_subset_of(c);
    });
    if (comparable) continue;
    chosen.push_back(pool[i]);
    grow_families(P, pool, i + 1, chosen, max_members, cap, out);
    chosen.pop_back();
  }
}

}  // namespace

std::vector<AntichainFamily> all_families(const Preorder& P, std::size_t max_members, std::size_t cap) {
  const auto pool = antichains(P);
  std::vector<ElementSet> chosen;
  std::vector<AntichainFamily> out;
  grow_families(P, pool, 0, chosen, max_members, cap, out);
  return out;
}

std::optional<Index> FPoset::position(const ElementSet& S) const {
  if (S.universe() != rep_->family.base().size()) return std::nullopt;
  const auto it = rep_->positions.find(S.members());
  if (it == rep_->positions.end()) return std::nullopt;
  return it->second;
}

FPoset f_poset(const AntichainFamily& family, std::size_t cap) {
  const std::size_t universe = family.base().size();
  std::set<std::vector<Index>> listed;
  listed.insert(std::vector<Index>{});
  for (const auto& member : family.members()) {
    const auto elems = member.members();
    if (elems.size() >= 63 || (std::size_t{1} << elems.size()) > cap) {
      throw Error(Errc::size_overflow, "a member of size " + count_text(elems.size()) +
                                           " has more than " + count_text(cap) + " subsets");
    }
    const std::size_t subsets = std::size_t{1} << elems.size();
    for (std::size_t mask = 1; mask < subsets; ++mask) {
      std::vector<Index> s;
      for (std::size_t b = 0; b < elems.size(); ++b) {
        if (mask >> b & 1U) s.push_back(elems[b]);
      }
      listed.insert(std::move(s));
    }
    require_within(listed.size(), cap, "F-poset");
  }

  FPoset::Rep rep{family, {}, {}, Preorder{}};
  rep.sets.reserve(listed.size());
  for (const auto& s : listed) {
    rep.positions.emplace(s, rep.sets.size());
    rep.sets.emplace_back(universe, s);
  }
  const std::size_t n = rep.sets.size();
  std::vector<Bits> up(n, Bits(n));
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (rep.sets[j].is_subset_of(rep.sets[i])) up[i].set(j);
    }
  }
  rep.order = assume_closed(std::move(up));
  return FPoset(std::make_shared<const FPoset::Rep>(std::move(rep)));
}

bool incompatibility_matches_union(const FPoset& fp, const ElementSet& F, const ElementSet& G) {
  const auto i = fp.position(F);
  const auto j = fp.position(G);
  if (!i || !j) throw Error(Errc::set_not_in_fposet, "argument is not a listed set");
  const bool order_incompatible = !compatible(fp.as_preorder(), *i, *j);
  const bool union_unlisted = !fp.family().admits(ElementSet(F.bits() | G.bits()));
  return order_incompatible == union_unlisted;
}

DiagonalAntichain diagonal_antichain(const AntichainFamily& family, std::size_t cap) {
  auto fp = f_poset(family, cap);
  const Preorder& base = family.base();
  if (base.empty()) throw Error(Errc::empty_poset, "diagonal antichain over an empty base");
  auto prod = product(base, fp.as_preorder(), cap);
  ElementSet members(prod.size());
  for (Index p : family.union_set().members()) {
    const auto at = fp.position(ElementSet(base.size(), {p}));
    members.insert(pair_index(p, *at, fp.size()));
  }
  const bool antichain = is_antichain(prod, members);
  return DiagonalAntichain{std::move(prod), std::move(fp), std::move(members), antichain};
}

AntichainFamily section_family(const Preorder& P, const Preorder& Q, const ElementSet& W) {
  if (W.universe() != P.size() * Q.size()) {
    throw Error(Errc::index_out_of_range, "set is not over the product carrier");
  }
  const auto prod = product(P, Q, std::max(kDefaultElementCap, W.universe()));
  if (!is_antichain(prod, W)) throw Error(Errc::not_an_antichain, "W is not an antichain of P x Q");

  const std::size_t m = Q.size();
  std::vector<ElementSet> sections;
  sections.reserve(m);
  for (Index r = 0; r < m; ++r) {
    ElementSet section(P.size());
    for (Index w : W.members()) {
      if (Q.leq(r, w % m)) section.insert(w / m);
    }
    if (!is_antichain(P, section)) {
      throw std::logic_error("section " + count_text(r) + " of an antichain is not an antichain");
    }
    sections.push_back(std::move(section));
  }
  return AntichainFamily(P, std::move(sections));
}

ElementSet pull_back_antichain(const MonotoneMap& m, const Preorder& R, const ElementSet& W) {
  if (!is_surjective(m)) throw Error(Errc::not_surjective, "map is not onto its target");
  if (!is_monotone(m)) throw Error(Errc::precondition_unmet, "map is not monotone");
  const auto target_product = product(m.target, R);
  check_set(target_product, W);
  if (!is_antichain(target_product, W)) {
    throw Error(Errc::not_an_antichain, "W is not an antichain of target x R");
  }

  std::vector<Index> preimage(m.target.size(), Bits::npos);
  for (Index p = m.source.size(); p-- > 0;) preimage[m.image[p]] = p;

  const std::size_t width = R.size();
  const auto source_product = product(m.source, R);
  ElementSet pulled(source_product.size());
  for (Index w : W.members()) pulled.insert(pair_index(preimage[w / width], w % width, width));

  if (pulled.size() != W.size() || !is_antichain(source_product, pulled)) {
    throw std::logic_error("pullback of an antichain lost the antichain property");
  }
  return pulled;
}

}  // namespace cellspec
