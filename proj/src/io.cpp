#include "cellspec/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "cellspec/error.hpp"

namespace cellspec::io {

namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(Errc::parse_error, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) malformed(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::size_t natural(const Json& j, const char* what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
    malformed(std::string(what) + " must be a non-negative integer");
  }
  return j.get<std::size_t>();
}

std::vector<Index> index_list(const Json& j, const char* what) {
  if (!j.is_array()) malformed(std::string(what) + " must be an array of indices");
  std::vector<Index> out;
  for (const auto& v : j) out.push_back(natural(v, what));
  return out;
}

std::vector<std::vector<Index>> list_of_lists(const Json& j, const char* what) {
  if (!j.is_array()) malformed(std::string(what) + " must be an array of index lists");
  std::vector<std::vector<Index>> out;
  for (const auto& v : j) out.push_back(index_list(v, what));
  return out;
}

Json pairs_json(const std::vector<IndexPair>& pairs) {
  Json out = Json::array();
  for (const auto& [i, j] : pairs) out.push_back(Json::array({i, j}));
  return out;
}

std::vector<Index> points_of(PointSet s) {
  std::vector<Index> out;
  for (Index p = 0; s != 0; ++p, s >>= 1) {
    if (s & 1U) out.push_back(p);
  }
  return out;
}

}  // namespace

std::vector<std::vector<Index>> sorted_lists(const std::vector<ElementSet>& sets) {
  std::vector<std::vector<Index>> out;
  for (const auto& s : sets) out.push_back(s.members());
  std::sort(out.begin(), out.end());
  return out;
}

Json to_json(const Preorder& P) {
  Json j;
  j["size"] = P.size();
  j["leq"] = pairs_json(P.pairs());
  j["closed"] = true;
  return j;
}

Preorder preorder_from_json(const Json& j) {
  const std::size_t size = natural(field(j, "size"), "size");
  const Json& leq = field(j, "leq");
  if (!leq.is_array()) malformed("leq must be an array of pairs");
  std::vector<IndexPair> pairs;
  for (const auto& p : leq) {
    if (!p.is_array() || p.size() != 2) malformed("each leq entry must be a pair [i, j]");
    pairs.emplace_back(natural(p[0], "leq index"), natural(p[1], "leq index"));
  }
  bool closed = true;
  if (j.contains("closed")) {
    if (!j["closed"].is_boolean()) malformed("closed must be a boolean");
    closed = j["closed"].get<bool>();
  }
  return Preorder::from_pairs(size, pairs, closed ? Closure::verify : Closure::close);
}

Json product_to_json(const Preorder& product, std::size_t left_size, std::size_t right_size) {
  Json j = to_json(product);
  j["pairing"] = "index(p, q) = p * " + std::to_string(right_size) + " + q";
  j["factors"] = Json::array({left_size, right_size});
  return j;
}

Json to_json(const PointedPreorder& P) {
  Json j = to_json(P.order);
  j["top"] = P.top;
  return j;
}

PointedPreorder pointed_from_json(const Json& j) {
  auto order = preorder_from_json(j);
  if (j.contains("top")) return PointedPreorder(std::move(order), natural(j["top"], "top"));
  const auto top = greatest_element(order);
  if (!top) throw Error(Errc::no_top_element, "preorder has no element above all others");
  return PointedPreorder(std::move(order), *top);
}

Json to_json(const SupportProduct& S) {
  Json j = to_json(S.order);
  j["pairing"] = "mixed radix, first factor most significant";
  j["factors"] = S.radices;
  j["tops"] = S.tops;
  j["support"] = S.support;
  return j;
}

SupportProduct support_product_from_json(const Json& j) {
  const auto order = preorder_from_json(j);
  const auto radices = index_list(field(j, "factors"), "factors");
  const auto tops = index_list(field(j, "tops"), "tops");
  if (radices.empty() || tops.size() != radices.size()) malformed("factors and tops must have equal nonzero length");
  std::size_t n = 1;
  for (std::size_t r : radices) {
    if (r == 0 || n > order.size() / r) malformed("factor sizes do not match the carrier");
    n *= r;
  }
  if (n != order.size()) malformed("factor sizes do not match the carrier");

  // element index with coordinate i set to x and every other coordinate at its top
  auto slice = [&](std::size_t i, Index x) {
    Index e = 0;
    for (std::size_t f = 0; f < radices.size(); ++f) {
      if (tops[f] >= radices[f]) malformed("top outside its factor");
      e = e * radices[f] + (f == i ? x : tops[f]);
    }
    return e;
  };
  std::vector<PointedPreorder> factors;
  for (std::size_t i = 0; i < radices.size(); ++i) {
    std::vector<IndexPair> pairs;
    for (Index x = 0; x < radices[i]; ++x) {
      for (Index y = 0; y < radices[i]; ++y) {
        if (order.leq(slice(i, x), slice(i, y))) pairs.emplace_back(x, y);
      }
    }
    factors.emplace_back(Preorder::from_pairs(radices[i], pairs, Closure::verify), tops[i]);
  }
  auto out = finite_support_product(factors);
  if (!(out.order == order)) malformed("relation is not the product of its factor slices");
  if (j.contains("support") && field(j, "support") != Json(out.support)) malformed("support does not match");
  return out;
}

Json to_json(const AntichainFamily& family) {
  Json j;
  j["base"] = to_json(family.base());
  j["members"] = sorted_lists(family.members());
  return j;
}

AntichainFamily family_from_json(const Json& j) {
  return family_from_json(field(j, "members"), preorder_from_json(field(j, "base")));
}

AntichainFamily family_from_json(const Json& j, const Preorder& base) {
  const Json& members = j.is_object() ? field(j, "members") : j;
  std::vector<ElementSet> sets;
  for (const auto& m : list_of_lists(members, "members")) sets.emplace_back(base.size(), m);
  return AntichainFamily(base, std::move(sets));
}

Json to_json(const FPoset& fp) {
  Json j;
  j["base"] = to_json(fp.family().base());
  j["family"] = sorted_lists(fp.family().members());
  Json sets = Json::array();
  for (const auto& s : fp.sets()) sets.push_back(s.members());
  j["sets"] = std::move(sets);
  j["leq"] = pairs_json(fp.as_preorder().pairs());
  return j;
}

FPoset fposet_from_json(const Json& j) {
  const auto base = preorder_from_json(field(j, "base"));
  auto fp = f_poset(family_from_json(field(j, "family"), base));
  const auto sets = list_of_lists(field(j, "sets"), "sets");
  if (sets.size() != fp.size()) malformed("sets do not match the family");
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (sets[i] != fp.sets()[i].members()) malformed("sets do not match the family");
  }
  if (field(j, "leq") != pairs_json(fp.as_preorder().pairs())) malformed("leq does not match reverse inclusion");
  return fp;
}

Json to_json(const FiniteSpace& X) {
  std::vector<std::vector<Index>> opens;
  for (PointSet u : X.opens()) opens.push_back(points_of(u));
  std::sort(opens.begin(), opens.end());
  Json j;
  j["points"] = X.points();
  j["opens"] = opens;
  return j;
}

FiniteSpace space_from_json(const Json& j) {
  const std::size_t points = natural(field(j, "points"), "points");
  if (points > kMaxPoints) throw Error(Errc::size_overflow, "spaces support at most 64 points");
  std::vector<PointSet> opens;
  for (const auto& list : list_of_lists(field(j, "opens"), "opens")) {
    PointSet s = 0;
    for (Index p : list) {
      if (p >= points) throw Error(Errc::index_out_of_range, "open set mentions point " + std::to_string(p));
      s |= PointSet{1} << p;
    }
    opens.push_back(s);
  }
  return FiniteSpace(points, std::move(opens));
}

Json to_json(const SpectrumReport& r, const ReportOptions& options) {
  Json j;
  switch (r.verdict) {
    case Verdict::member: j["verdict"] = true; break;
    case Verdict::non_member: j["verdict"] = false; break;
    case Verdict::exhausted_caps: j["verdict"] = "exhausted-caps"; break;
  }
  j["k"] = r.k;
  if (r.test_bound) j["test_bound"] = *r.test_bound;
  if (r.family) {
    Json w;
    w["kind"] = "family";
    w["family"] = to_json(r.family->family);
    w["union_size"] = r.family->family.union_size();
    w["fposet_size"] = r.family->fposet_size;
    w["fposet_cellularity"] = r.family->fposet_cellularity;
    j["witness"] = std::move(w);
  } else if (r.test) {
    Json w;
    w["kind"] = "test-poset";
    w["test"] = to_json(r.test->test);
    w["test_cellularity"] = r.test->test_cellularity;
    w["product_antichain"] = r.test->product_antichain;
    w["pairing"] = "index(p, q) = p * " + std::to_string(r.test->test.size()) + " + q";
    j["witness"] = std::move(w);
  } else {
    j["witness"] = nullptr;
  }
  Json stats;
  stats["nodes"] = r.stats.nodes;
  stats["complete"] = r.stats.complete;
  if (options.timings) stats["millis"] = r.stats.millis;
  j["stats"] = std::move(stats);
  return j;
}

Json to_json(const SpectrumSet& s, const ReportOptions& options) {
  Json j;
  j["members"] = s.members;
  j["undecided"] = s.undecided;
  j["least"] = s.least ? Json(*s.least) : Json(nullptr);
  Json reports = Json::array();
  for (const auto& r : s.reports) reports.push_back(to_json(r, options));
  j["reports"] = std::move(reports);
  return j;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) malformed("cannot read " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return Json::parse(buffer.str());
  } catch (const nlohmann::json::parse_error& e) {
    malformed(path + ": " + e.what());
  }
}

}  // namespace cellspec::io
