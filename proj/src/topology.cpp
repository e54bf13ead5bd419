#include "cellspec/topology.hpp"

#include <algorithm>
#include <string>
#include <unordered_set>

#include "cellspec/error.hpp"
#include "cellspec/invariants.hpp"

namespace cellspec {

namespace {

PointSet full_mask(std::size_t points) {
  return points == 64 ? ~PointSet{0} : (PointSet{1} << points) - 1;
}

void check_points(std::size_t points) {
  if (points > kMaxPoints) {
    throw Error(Errc::size_overflow, "spaces support at most 64 points, got " + std::to_string(points));
  }
}

}  // namespace

FiniteSpace::FiniteSpace(std::size_t points, std::vector<PointSet> opens) : points_(points) {
  check_points(points);
  const PointSet all = full_mask(points);
  std::sort(opens.begin(), opens.end());
  opens.erase(std::unique(opens.begin(), opens.end()), opens.end());
  for (PointSet u : opens) {
    if ((u & ~all) != 0) throw Error(Errc::invalid_space, "open set mentions a point outside the space");
  }
  auto present = [&](PointSet s) { return std::binary_search(opens.begin(), opens.end(), s); };
  if (!present(0)) throw Error(Errc::invalid_space, "the empty set is not open");
  if (!present(all)) throw Error(Errc::invalid_space, "the whole space is not open");
  for (std::size_t i = 0; i < opens.size(); ++i) {
    for (std::size_t j = i + 1; j < opens.size(); ++j) {
      if (!present(opens[i] | opens[j])) throw Error(Errc::invalid_space, "opens not closed under union");
      if (!present(opens[i] & opens[j])) throw Error(Errc::invalid_space, "opens not closed under intersection");
    }
  }
  opens_ = std::move(opens);
}

FiniteSpace FiniteSpace::generated_by(std::size_t points, std::span<const PointSet> subbasis) {
  check_points(points);
  const PointSet all = full_mask(points);
  std::vector<PointSet> found{0, all};
  std::unordered_set<PointSet> seen{0, all};
  for (PointSet s : subbasis) {
    if (seen.insert(s & all).second) found.push_back(s & all);
  }
  // saturate under both operations; newly found sets are combined with all
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      for (PointSet s : {found[i] | found[j], found[i] & found[j]}) {
        if (seen.insert(s).second) {
          found.push_back(s);
          if (found.size() > kMaxOpens) {
            throw Error(Errc::size_overflow, "more than " + std::to_string(kMaxOpens) + " open sets");
          }
        }
      }
    }
  }
  return FiniteSpace(points, std::move(found));
}

FiniteSpace FiniteSpace::discrete(std::size_t points) {
  check_points(points);
  std::vector<PointSet> singletons;
  for (std::size_t p = 0; p < points; ++p) singletons.push_back(PointSet{1} << p);
  return generated_by(points, singletons);
}

FiniteSpace FiniteSpace::indiscrete(std::size_t points) {
  check_points(points);
  return FiniteSpace(points, {0, full_mask(points)});
}

PointSet FiniteSpace::full() const noexcept { return full_mask(points_); }

Preorder open_poset(const FiniteSpace& X) {
  if (X.points() == 0) throw Error(Errc::no_nonempty_open, "a space without points has no nonempty open");
  std::vector<PointSet> nonempty(X.opens().begin() + 1, X.opens().end());
  const std::size_t n = nonempty.size();
  std::vector<Bits> up(n, Bits(n));
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      if ((nonempty[i] & ~nonempty[j]) == 0) up[i].set(j);
    }
  }
  return assume_closed(std::move(up));
}

std::size_t space_cellularity(const FiniteSpace& X) { return cellularity(open_poset(X)).value; }

FiniteSpace alexandrov_space(const Preorder& Q) {
  if (Q.empty()) throw Error(Errc::empty_poset, "Alexandrov space of an empty preorder");
  check_points(Q.size());
  std::vector<PointSet> cones;
  for (Index q = 0; q < Q.size(); ++q) {
    PointSet cone = 0;
    for (Index s : to_indices(Q.down(q))) cone |= PointSet{1} << s;
    cones.push_back(cone);
  }
  // unions of cones are exactly the down-closed sets
  return FiniteSpace::generated_by(Q.size(), cones);
}

FiniteSpace space_product(const FiniteSpace& X, const FiniteSpace& Y) {
  const std::size_t width = Y.points();
  const std::size_t points = X.points() * width;
  check_points(points);
  std::vector<PointSet> boxes;
  for (PointSet u : X.opens()) {
    for (PointSet v : Y.opens()) {
      PointSet box = 0;
      for (std::size_t x = 0; x < X.points(); ++x) {
        if (u >> x & 1U) box |= v << (x * width);
      }
      boxes.push_back(box);
    }
  }
  return FiniteSpace::generated_by(points, boxes);
}

bool is_down_closed(const Preorder& Q, PointSet S) {
  for (Index q = 0; q < Q.size(); ++q) {
    if (!(S >> q & 1U)) continue;
    for (Index s : to_indices(Q.down(q))) {
      if (!(S >> s & 1U)) return false;
    }
  }
  return true;
}

}  // namespace cellspec
