#include "cellspec/spectrum.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdint>
#include <string>

#include "cellspec/error.hpp"
#include "cellspec/invariants.hpp"

namespace cellspec {

namespace {

using Clock = std::chrono::steady_clock;

double millis_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::uint64_t mask_of(const ElementSet& s) {
  std::uint64_t m = 0;
  for (Index i : s.members()) m |= std::uint64_t{1} << i;
  return m;
}

ElementSet set_of(std::uint64_t mask, std::size_t universe) {
  ElementSet s(universe);
  for (; mask != 0; mask &= mask - 1) s.insert(static_cast<Index>(std::countr_zero(mask)));
  return s;
}

bool subset(std::uint64_t a, std::uint64_t b) { return (a & ~b) == 0; }

class FamilySearch {
 public:
  FamilySearch(const Preorder& P, std::size_t max_cellularity, std::size_t min_union, const FamilyCaps& caps,
               bool maximal_only)
      : P_(P), max_c_(max_cellularity), min_union_(min_union), caps_(caps) {
    const auto sets = maximal_only ? maximal_antichains(P) : antichains(P);
    for (const auto& s : sets) antichains_.push_back(mask_of(s));
    std::stable_sort(antichains_.begin(), antichains_.end(), [](std::uint64_t a, std::uint64_t b) {
      return std::popcount(a) < std::popcount(b);
    });
    for (auto m : antichains_) widest_ = std::max<std::size_t>(widest_, std::popcount(m));
  }

  SpectrumReport run() {
    std::vector<std::uint64_t> chosen;
    descend(0, chosen, 0, 1);
    SpectrumReport report;
    report.stats.nodes = nodes_;
    report.stats.complete = !stopped_ && !depth_capped_;
    if (best_) {
      report.verdict = Verdict::non_member;
      report.family = std::move(best_);
    } else {
      report.verdict = report.stats.complete ? Verdict::member : Verdict::exhausted_caps;
    }
    return report;
  }

 private:
  // Number of nonempty subsets of m not already inside some chosen member.
  static std::size_t fresh_subsets(std::uint64_t m, const std::vector<std::uint64_t>& chosen) {
    std::size_t fresh = 0;
    for (std::uint64_t sub = m; sub != 0; sub = (sub - 1) & m) {
      if (std::none_of(chosen.begin(), chosen.end(), [&](std::uint64_t c) { return subset(sub, c); })) ++fresh;
    }
    return fresh;
  }

  std::size_t missing(std::uint64_t covered) const {
    const std::size_t have = std::popcount(covered);
    return have >= min_union_ ? 0 : min_union_ - have;
  }

  bool evaluate(const std::vector<std::uint64_t>& chosen, std::size_t fposet_size) {
    std::vector<ElementSet> members;
    for (auto m : chosen) members.push_back(set_of(m, P_.size()));
    AntichainFamily family(P_, std::move(members));
    const auto fp = f_poset(family);
    const std::size_t c = cellularity(fp.as_preorder()).value;
    if (c > max_c_) return false;
    best_size_ = fposet_size;
    best_ = FamilyWitness{std::move(family), fp.size(), c};
    return true;
  }

  void descend(std::size_t start, std::vector<std::uint64_t>& chosen, std::uint64_t covered,
               std::size_t fposet_size) {
    if (stopped_) return;
    if (++nodes_ > caps_.families) {
      stopped_ = true;
      return;
    }
    if (!chosen.empty() && missing(covered) == 0 && evaluate(chosen, fposet_size)) return;
    if (chosen.size() >= max_c_) return;
    if (chosen.size() >= caps_.members) {
      depth_capped_ = true;
      return;
    }
    const std::size_t slots = std::min(max_c_, caps_.members) - chosen.size();
    if (std::popcount(covered) + slots * widest_ < min_union_) return;

    for (std::size_t i = start; i < antichains_.size() && !stopped_; ++i) {
      const std::uint64_t m = antichains_[i];
      const bool comparable = std::any_of(chosen.begin(), chosen.end(), [&](std::uint64_t c) {
        return subset(m, c) || subset(c, m);
      });
      if (comparable) continue;
      const std::size_t size = fposet_size + fresh_subsets(m, chosen);
      const std::uint64_t next_cover = covered | m;
      if (best_ && size + missing(next_cover) >= best_size_) continue;
      chosen.push_back(m);
      descend(i + 1, chosen, next_cover, size);
      chosen.pop_back();
    }
  }

  const Preorder& P_;
  std::size_t max_c_;
  std::size_t min_union_;
  FamilyCaps caps_;
  std::vector<std::uint64_t> antichains_;
  std::size_t widest_ = 0;
  std::size_t nodes_ = 0;
  bool stopped_ = false;
  bool depth_capped_ = false;
  std::optional<FamilyWitness> best_;
  std::size_t best_size_ = 0;
};

struct OracleRow {
  std::size_t test_cellularity = 0;
  std::optional<Attained> product_cellularity;
};

TestPosetWitness make_test_witness(const Preorder& Q, const OracleRow& row) {
  return TestPosetWitness{Q, row.test_cellularity, row.product_cellularity->witness};
}

}  // namespace

void SpectrumQuery::validate() const {
  if (k == 0) throw Error(Errc::precondition_unmet, "k must be at least 1");
  if (test_bound == 0) throw Error(Errc::precondition_unmet, "test bound must be at least 1");
  if (caps.families == 0 || caps.members == 0) throw Error(Errc::precondition_unmet, "caps must be positive");
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::member: return "member";
    case Verdict::non_member: return "non-member";
    case Verdict::exhausted_caps: return "exhausted-caps";
  }
  return "unknown";
}

bool verify_family_witness(const FamilyWitness& w, std::size_t max_cellularity, std::size_t min_union) {
  if (w.family.union_size() < min_union) return false;
  const auto fp = f_poset(w.family);
  return fp.size() == w.fposet_size && cellularity(fp.as_preorder()).value <= max_cellularity;
}

bool verify_test_witness(const Preorder& P, std::size_t k, const TestPosetWitness& w) {
  if (cellularity(w.test).value > k) return false;
  const auto prod = product(P, w.test);
  for (Index i : w.product_antichain) {
    if (i >= prod.size()) return false;
  }
  return w.product_antichain.size() > k && is_antichain(prod, ElementSet(prod.size(), w.product_antichain));
}

SpectrumReport find_small_family(const Preorder& P, std::size_t max_cellularity, std::size_t min_union,
                                 const FamilyCaps& caps, bool maximal_antichains_only) {
  const auto start = Clock::now();
  SpectrumReport report;
  report.k = max_cellularity;
  if (P.size() < min_union) {
    // no family of antichains can cover min_union elements
    report.stats.millis = millis_since(start);
    return report;
  }
  if (P.size() > 64) {
    throw Error(Errc::cap_exceeded, "family search supports at most 64 elements, got " + std::to_string(P.size()));
  }
  report = FamilySearch(P, max_cellularity, min_union, caps, maximal_antichains_only).run();
  report.k = max_cellularity;
  if (maximal_antichains_only && report.verdict == Verdict::member) report.stats.complete = false;
  report.stats.millis = millis_since(start);
  return report;
}

SpectrumReport family_criterion(const Preorder& P, const SpectrumQuery& query) {
  query.validate();
  if (P.empty()) throw Error(Errc::empty_poset, "family criterion of an empty preorder");
  return find_small_family(P, query.k, query.k + 1, query.caps, query.maximal_antichains_only);
}

SpectrumReport relative_spectrum_member(const Preorder& P, const SpectrumQuery& query, InstanceStream& instances) {
  query.validate();
  const auto start = Clock::now();
  SpectrumReport report;
  report.k = query.k;
  report.test_bound = query.test_bound;
  while (auto Q = instances.next()) {
    if (Q->size() > query.test_bound) continue;
    ++report.stats.nodes;
    OracleRow row;
    row.test_cellularity = cellularity(*Q).value;
    if (row.test_cellularity > query.k) continue;
    row.product_cellularity = cellularity(product(P, *Q));
    if (row.product_cellularity->value > query.k) {
      report.verdict = Verdict::non_member;
      report.test = make_test_witness(*Q, row);
      break;
    }
  }
  report.stats.millis = millis_since(start);
  return report;
}

SpectrumReport relative_spectrum_member(const Preorder& P, const SpectrumQuery& query) {
  query.validate();
  auto stream = InstanceStream::exhaustive(query.test_bound);
  return relative_spectrum_member(P, query, stream);
}

SpectrumSet spectrum_set(const Preorder& P, std::size_t kmax, SpectrumMode mode, const SpectrumQuery& query) {
  if (kmax == 0) throw Error(Errc::precondition_unmet, "kmax must be at least 1");
  if (P.empty()) throw Error(Errc::empty_poset, "spectrum of an empty preorder");
  SpectrumSet out;

  if (mode == SpectrumMode::criterion) {
    for (std::size_t k = 1; k <= kmax; ++k) {
      SpectrumQuery q = query;
      q.k = k;
      out.reports.push_back(family_criterion(P, q));
    }
  } else {
    SpectrumQuery probe = query;
    probe.k = kmax;
    probe.validate();
    // each test preorder is evaluated once and shared by every k
    const auto start = Clock::now();
    const auto& tests = canonical_preorders(query.test_bound);
    std::vector<OracleRow> rows(tests.size());
    for (std::size_t i = 0; i < tests.size(); ++i) {
      rows[i].test_cellularity = cellularity(tests[i]).value;
      if (rows[i].test_cellularity <= kmax) rows[i].product_cellularity = cellularity(product(P, tests[i]));
    }
    const double millis = millis_since(start);
    for (std::size_t k = 1; k <= kmax; ++k) {
      SpectrumReport report;
      report.k = k;
      report.test_bound = query.test_bound;
      report.stats.millis = millis;
      for (std::size_t i = 0; i < tests.size(); ++i) {
        ++report.stats.nodes;
        const auto& row = rows[i];
        if (row.test_cellularity <= k && row.product_cellularity->value > k) {
          report.verdict = Verdict::non_member;
          report.test = make_test_witness(tests[i], row);
          break;
        }
      }
      out.reports.push_back(std::move(report));
    }
  }

  for (const auto& r : out.reports) {
    if (r.verdict == Verdict::member) out.members.push_back(r.k);
    if (r.verdict == Verdict::exhausted_caps) out.undecided.push_back(r.k);
  }
  if (!out.members.empty()) out.least = out.members.front();
  return out;
}

std::vector<std::size_t> density_scaled_failures(const Preorder& P, std::size_t kmax, const FamilyCaps& caps) {
  const std::size_t d = density(P).value;
  std::vector<std::size_t> failures;
  for (std::size_t k = 1; k <= kmax; ++k) {
    const auto report = find_small_family(P, k, k * d + 1, caps);
    if (report.verdict != Verdict::member) failures.push_back(k);
  }
  return failures;
}

ChainReport invariant_chain(const Preorder& P, std::size_t nmax, const FamilyCaps& caps) {
  if (nmax < 2) throw Error(Errc::bad_arity, "nmax must be at least 2");
  ChainReport out;
  out.cellularity = cellularity(P).value;
  out.density = density(P).value;
  for (std::size_t n = 2; n <= nmax; ++n) out.linked_free.push_back(linked_free_number(P, n).value);

  SpectrumQuery query;
  query.caps = caps;
  out.spectrum = spectrum_set(P, P.size(), SpectrumMode::criterion, query);
  out.least_spectrum = out.spectrum.least;

  auto fail = [&](std::string what) { out.violations.push_back(std::move(what)); };
  const auto c = out.cellularity;
  const auto d = out.density;
  if (c > d) fail("c > d");
  if (out.linked_free[0] != c) fail("ind_2 != c");
  for (std::size_t i = 0; i < out.linked_free.size(); ++i) {
    const std::size_t n = i + 2;
    if (i + 1 < out.linked_free.size() && out.linked_free[i] > out.linked_free[i + 1]) {
      fail("ind_" + std::to_string(n) + " > ind_" + std::to_string(n + 1));
    }
    if (out.linked_free[i] > (n - 1) * d) fail("ind_" + std::to_string(n) + " > (n-1)d");
  }
  // c <= least spectrum member: every k below c must be refuted by a witness
  // that survives independent re-checking.
  for (std::size_t k = 1; k < c; ++k) {
    const auto& r = out.spectrum.reports[k - 1];
    if (r.verdict != Verdict::non_member || !r.family || !verify_family_witness(*r.family, k, k + 1)) {
      fail("k = " + std::to_string(k) + " < c not refuted");
    }
  }
  if (out.least_spectrum && *out.least_spectrum < c) fail("least spectrum member < c");
  for (std::size_t k : density_scaled_failures(P, P.size(), caps)) {
    fail("density-scaled family bound fails at k = " + std::to_string(k));
  }
  return out;
}

LinkedSingletonsCheck linked_singletons_check(const AntichainFamily& family, const ElementSet& A, std::size_t n) {
  if (n < 2) throw Error(Errc::bad_arity, "linkage arity must be at least 2, got " + std::to_string(n));
  check_set(family.base(), A);
  if (!A.is_subset_of(family.union_set())) {
    throw Error(Errc::precondition_unmet, "set is not inside the union of the family");
  }
  LinkedSingletonsCheck out;
  out.precondition_held = A.size() >= n && is_n_linked(family.base(), A, n);
  if (!out.precondition_held) return out;

  const auto fp = f_poset(family);
  ElementSet singletons(fp.size());
  for (Index a : A.members()) singletons.insert(*fp.position(ElementSet(A.universe(), {a})));
  out.holds = is_antichain(fp.as_preorder(), singletons);
  return out;
}

namespace {

// Pulls every non-member witness of `factor` back along the projection from
// `joint` and checks the joint report agrees that k is not a member.
bool pullbacks_hold(const Preorder& joint, const Preorder& factor, const SpectrumSet& factor_set,
                    const SpectrumSet& joint_set, std::vector<Index> projection) {
  MonotoneMap proj(joint, factor, std::move(projection));
  for (const auto& r : factor_set.reports) {
    if (r.verdict != Verdict::non_member || !r.test) continue;
    const auto& R = r.test->test;
    const ElementSet W(factor.size() * R.size(), r.test->product_antichain);
    ElementSet pulled;
    try {
      pulled = pull_back_antichain(proj, R, W);
    } catch (const Error&) {
      return false;
    }
    TestPosetWitness lifted{R, r.test->test_cellularity, pulled.members()};
    if (!verify_test_witness(joint, r.k, lifted)) return false;
    if (joint_set.reports[r.k - 1].verdict != Verdict::non_member) return false;
  }
  return true;
}

}  // namespace

ProductSpectrumCheck product_spectrum_check(const Preorder& P, const Preorder& Q, std::size_t kmax,
                                            std::size_t test_bound) {
  SpectrumQuery query;
  query.test_bound = test_bound;
  ProductSpectrumCheck out;
  const auto joint = product(P, Q);
  out.left = spectrum_set(P, kmax, SpectrumMode::oracle, query);
  out.right = spectrum_set(Q, kmax, SpectrumMode::oracle, query);
  out.joint = spectrum_set(joint, kmax, SpectrumMode::oracle, query);

  std::vector<Index> to_left(joint.size()), to_right(joint.size());
  for (Index e = 0; e < joint.size(); ++e) {
    to_left[e] = e / Q.size();
    to_right[e] = e % Q.size();
  }
  out.projection_pullbacks_hold = pullbacks_hold(joint, P, out.left, out.joint, std::move(to_left)) &&
                                  pullbacks_hold(joint, Q, out.right, out.joint, std::move(to_right));

  auto contains = [](const std::vector<std::size_t>& v, std::size_t k) {
    return std::binary_search(v.begin(), v.end(), k);
  };
  for (std::size_t k : out.joint.members) {
    if (!contains(out.left.members, k) || !contains(out.right.members, k)) out.inclusion_holds = false;
  }
  for (std::size_t k : out.left.members) {
    if (contains(out.right.members, k) && !contains(out.joint.members, k)) out.reverse_gaps.push_back(k);
  }
  return out;
}

}  // namespace cellspec
