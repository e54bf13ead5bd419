#include "cellspec/suites.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>

#include "cellspec/error.hpp"
#include "cellspec/generators.hpp"
#include "cellspec/invariants.hpp"
#include "cellspec/topology.hpp"

namespace cellspec::suites {

namespace {

struct Partial {
  std::size_t checked = 0;
  std::vector<Json> violations;
  std::vector<Json> rows;
};

using ItemFn = std::function<Partial(std::size_t)>;

// Runs items 0..count-1 on `jobs` threads and returns results in item order.
std::vector<Partial> run_items(std::size_t count, std::size_t jobs, const ItemFn& fn) {
  std::vector<Partial> results(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        results[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::max<std::size_t>(1, std::min(jobs, count));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

void merge(SuiteResult& out, std::vector<Partial> parts, const char* rows_key = nullptr) {
  Json rows = Json::array();
  for (auto& p : parts) {
    out.instances += p.checked;
    for (auto& v : p.violations) out.violations.push_back(std::move(v));
    for (auto& r : p.rows) rows.push_back(std::move(r));
  }
  if (rows_key) out.details[rows_key] = std::move(rows);
}

Json violation(const char* check, const Preorder& base) {
  Json v;
  v["check"] = check;
  v["base"] = io::to_json(base);
  return v;
}

Json family_violation(const char* check, const AntichainFamily& family) {
  Json v;
  v["check"] = check;
  v["family"] = io::to_json(family);
  return v;
}

const std::vector<Preorder>& grid(std::size_t max_size) { return canonical_preorders(max_size); }

// -- suites --------------------------------------------------------------------

// Incompatibility in F(A) coincides with "the union is not listed", for every
// pair of listed sets; listing coincides with "contained in some member".
SuiteResult incompatibility_by_union(const SuiteOptions& options) {
  SuiteResult out;
  const auto& bases = grid(4);
  merge(out, run_items(bases.size(), options.jobs, [&](std::size_t i) {
          Partial part;
          const Preorder& P = bases[i];
          for (const auto& family : all_families(P, 3)) {
            const auto fp = f_poset(family);
            for (const auto& F : fp.sets()) {
              for (const auto& G : fp.sets()) {
                ++part.checked;
                if (!incompatibility_matches_union(fp, F, G)) {
                  auto v = family_violation("incompatibility-vs-union", family);
                  v["F"] = F.members();
                  v["G"] = G.members();
                  part.violations.push_back(std::move(v));
                }
              }
            }
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << P.size()); ++mask) {
              ElementSet S(P.size());
              for (Index b = 0; b < P.size(); ++b) {
                if (mask >> b & 1U) S.insert(b);
              }
              ++part.checked;
              if (fp.position(S).has_value() != family.admits(S)) {
                auto v = family_violation("listing-vs-membership", family);
                v["set"] = S.members();
                part.violations.push_back(std::move(v));
              }
            }
            ++part.checked;
            if (!fp.as_preorder().down(fp.top()).all()) {
              part.violations.push_back(family_violation("empty-set-not-top", family));
            }
          }
          return part;
        }));
  return out;
}

// {(p, {p})} is an antichain of base x F(A) with one element per union member.
SuiteResult diagonal_suite(const SuiteOptions& options) {
  SuiteResult out;
  const auto& bases = grid(4);
  merge(out, run_items(bases.size(), options.jobs, [&](std::size_t i) {
          Partial part;
          for (const auto& family : all_families(bases[i], 3)) {
            ++part.checked;
            const auto diag = diagonal_antichain(family);
            if (!diag.is_antichain || diag.members.size() != family.union_size()) {
              part.violations.push_back(family_violation("diagonal-not-antichain", family));
            }
          }
          return part;
        }));
  return out;
}

// Sections of a maximal antichain of P x Q are antichains covering exactly its
// first-coordinate projection.
SuiteResult section_suite(const SuiteOptions& options) {
  SuiteResult out;
  const auto& bases = grid(3);
  const std::size_t n = bases.size();
  merge(out, run_items(n * n, options.jobs, [&](std::size_t item) {
          Partial part;
          const Preorder& P = bases[item / n];
          const Preorder& Q = bases[item % n];
          const auto prod = product(P, Q);
          for (const auto& W : maximal_antichains(prod)) {
            ++part.checked;
            auto report = [&](const char* check) {
              auto v = violation(check, P);
              v["test"] = io::to_json(Q);
              v["W"] = W.members();
              part.violations.push_back(std::move(v));
            };
            try {
              const auto family = section_family(P, Q, W);
              ElementSet projection(P.size());
              for (Index w : W.members()) projection.insert(w / Q.size());
              const bool all_antichains = std::all_of(family.members().begin(), family.members().end(),
                                                      [&](const ElementSet& A) { return is_antichain(P, A); });
              if (!all_antichains) report("section-not-antichain");
              if (!(family.union_set() == projection)) report("union-not-projection");
            } catch (const std::logic_error&) {
              report("section-not-antichain");
            }
          }
          return part;
        }));
  return out;
}

// Linked subsets of the union give pairwise incompatible singletons in F(A).
SuiteResult linked_singletons_suite(const SuiteOptions& options) {
  SuiteResult out;
  const auto& bases = grid(4);
  merge(out, run_items(bases.size(), options.jobs, [&](std::size_t i) {
          Partial part;
          for (const auto& family : all_families(bases[i], 3)) {
            const auto universe = family.union_set().members();
            for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << universe.size()); ++mask) {
              ElementSet A(family.base().size());
              for (std::size_t b = 0; b < universe.size(); ++b) {
                if (mask >> b & 1U) A.insert(universe[b]);
              }
              for (std::size_t n : {2U, 3U}) {
                ++part.checked;
                const auto r = linked_singletons_check(family, A, n);
                if (r.precondition_held && !r.holds) {
                  auto v = family_violation("linked-singletons-compatible", family);
                  v["A"] = A.members();
                  v["n"] = n;
                  part.violations.push_back(std::move(v));
                }
              }
            }
          }
          return part;
        }));
  return out;
}

std::vector<std::vector<Index>> monotone_surjections(const Preorder& S, const Preorder& T) {
  std::vector<std::vector<Index>> out;
  std::vector<Index> image(S.size(), 0);
  for (;;) {
    MonotoneMap m(S, T, image);
    if (is_monotone_surjection(m)) out.push_back(image);
    std::size_t pos = 0;
    while (pos < image.size() && ++image[pos] == T.size()) image[pos++] = 0;
    if (pos == image.size()) break;
  }
  return out;
}

// Pullbacks along monotone surjections keep antichains and their size, so
// c(target x R) <= c(source x R).
SuiteResult pullback_suite(const SuiteOptions& options) {
  SuiteResult out;
  const auto& bases = grid(4);
  const auto& tests = grid(3);

  struct TargetData {
    std::vector<ElementSet> maximal;
    std::size_t cellularity = 0;
  };
  // (target, R) -> maximal antichains of target x R
  std::vector<std::vector<TargetData>> targets(bases.size(), std::vector<TargetData>(tests.size()));
  for (std::size_t t = 0; t < bases.size(); ++t) {
    for (std::size_t r = 0; r < tests.size(); ++r) {
      const auto prod = product(bases[t], tests[r]);
      targets[t][r] = {maximal_antichains(prod), cellularity(prod).value};
    }
  }

  merge(out, run_items(bases.size(), options.jobs, [&](std::size_t s) {
          Partial part;
          const Preorder& S = bases[s];
          std::vector<std::size_t> source_c(tests.size());
          std::vector<Preorder> source_products;
          for (std::size_t r = 0; r < tests.size(); ++r) {
            source_products.push_back(product(S, tests[r]));
            source_c[r] = cellularity(source_products.back()).value;
          }
          for (std::size_t t = 0; t < bases.size(); ++t) {
            const Preorder& T = bases[t];
            if (T.size() > S.size()) continue;
            for (const auto& image : monotone_surjections(S, T)) {
              const MonotoneMap m(S, T, image);
              for (std::size_t r = 0; r < tests.size(); ++r) {
                auto report = [&](const char* check) {
                  auto v = violation(check, S);
                  v["target"] = io::to_json(T);
                  v["image"] = image;
                  v["R"] = io::to_json(tests[r]);
                  part.violations.push_back(std::move(v));
                };
                ++part.checked;
                if (targets[t][r].cellularity > source_c[r]) report("cellularity-decreased");
                for (const auto& W : targets[t][r].maximal) {
                  ++part.checked;
                  try {
                    const auto pulled = pull_back_antichain(m, tests[r], W);
                    if (pulled.size() != W.size() || !is_antichain(source_products[r], pulled)) {
                      report("pullback-not-antichain");
                    }
                  } catch (const std::logic_error&) {
                    report("pullback-not-antichain");
                  }
                }
              }
            }
          }
          return part;
        }));
  return out;
}

// Families covering more than k * d(P) elements have F-posets of cellularity
// above k, checked over every normalized family.
SuiteResult density_scaled_suite(const SuiteOptions& options) {
  SuiteResult out;
  const auto& bases = grid(4);
  merge(out, run_items(bases.size(), options.jobs, [&](std::size_t i) {
          Partial part;
          const Preorder& P = bases[i];
          const std::size_t d = density(P).value;
          for (const auto& family : all_families(P, P.size())) {
            std::size_t c = 0;
            bool computed = false;
            for (std::size_t k = 1; k <= 3; ++k) {
              if (family.union_size() < k * d + 1) continue;
              if (!computed) {
                c = cellularity(f_poset(family).as_preorder()).value;
                computed = true;
              }
              ++part.checked;
              if (c < k + 1) {
                auto v = family_violation("density-scaled-bound", family);
                v["k"] = k;
                part.violations.push_back(std::move(v));
              }
            }
          }
          ++part.checked;
          if (!density_scaled_failures(P, 3, options.caps).empty()) {
            part.violations.push_back(violation("density-scaled-search", P));
          }
          return part;
        }));
  return out;
}

// Alexandrov opens are the down-sets and keep cellularity; product spaces
// have the cellularity of the product of open-set posets.
SuiteResult topology_suite(const SuiteOptions& options) {
  SuiteResult out;
  const auto& bases = grid(5);
  merge(out, run_items(bases.size(), options.jobs, [&](std::size_t i) {
          Partial part;
          const Preorder& Q = bases[i];
          const auto X = alexandrov_space(Q);
          std::vector<PointSet> down_sets;
          for (PointSet s = 0; s < (PointSet{1} << Q.size()); ++s) {
            if (is_down_closed(Q, s)) down_sets.push_back(s);
          }
          ++part.checked;
          if (X.opens() != down_sets) part.violations.push_back(violation("opens-not-down-sets", Q));
          ++part.checked;
          const auto O = open_poset(X);
          if (cellularity(O).value != cellularity(Q).value) {
            part.violations.push_back(violation("alexandrov-cellularity", Q));
          }
          const std::vector<PointSet> nonempty(X.opens().begin() + 1, X.opens().end());
          for (Index u = 0; u < O.size(); ++u) {
            for (Index v = 0; v < O.size(); ++v) {
              ++part.checked;
              if (compatible(O, u, v) != ((nonempty[u] & nonempty[v]) != 0)) {
                part.violations.push_back(violation("open-compatibility-vs-intersection", Q));
              }
            }
          }
          return part;
        }));

  const auto& small = grid(3);
  const std::size_t n = small.size();
  merge(out, run_items(n * n, options.jobs, [&](std::size_t item) {
          Partial part;
          const auto X = alexandrov_space(small[item / n]);
          const auto Y = alexandrov_space(small[item % n]);
          ++part.checked;
          const std::size_t lhs = space_cellularity(space_product(X, Y));
          const std::size_t rhs = cellularity(product(open_poset(X), open_poset(Y))).value;
          if (lhs != rhs) {
            Json v;
            v["check"] = "product-space-cellularity";
            v["X"] = io::to_json(X);
            v["Y"] = io::to_json(Y);
            part.violations.push_back(std::move(v));
          }
          return part;
        }));
  return out;
}

// Spectrum of a product against the spectra of its factors (oracle mode).
SuiteResult product_spectrum_suite(const SuiteOptions& options) {
  constexpr std::size_t kmax = 4;
  constexpr std::size_t bound = 3;
  SuiteResult out;
  const auto& bases = grid(3);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < bases.size(); ++a) {
    for (std::size_t b = a; b < bases.size(); ++b) pairs.emplace_back(a, b);
  }
  merge(out,
        run_items(pairs.size(), options.jobs,
                  [&](std::size_t item) {
                    Partial part;
                    const auto [a, b] = pairs[item];
                    const auto check = product_spectrum_check(bases[a], bases[b], kmax, bound);
                    part.checked = 2;
                    auto report = [&](const char* what) {
                      auto v = violation(what, bases[a]);
                      v["right"] = io::to_json(bases[b]);
                      part.violations.push_back(std::move(v));
                    };
                    if (!check.inclusion_holds) report("product-spectrum-not-included");
                    if (!check.projection_pullbacks_hold) report("projection-pullback");
                    if (!check.reverse_gaps.empty()) {
                      Json row;
                      row["left"] = a;
                      row["right"] = b;
                      row["left_set"] = check.left.members;
                      row["right_set"] = check.right.members;
                      row["product_set"] = check.joint.members;
                      row["gaps"] = check.reverse_gaps;
                      part.rows.push_back(std::move(row));
                    }
                    return part;
                  }),
        "reverse_gaps");
  out.details["kmax"] = kmax;
  out.details["test_bound"] = bound;
  return out;
}

std::vector<Preorder> chain_instances(const SuiteOptions& options) {
  static constexpr double kBiases[] = {0.1, 0.2, 0.35, 0.5};
  std::vector<Preorder> out = grid(5);
  for (std::size_t i = 0; i < options.random_count; ++i) {
    out.push_back(random_preorder(1 + i % 8, kBiases[i % 4], options.seed ^ static_cast<std::uint64_t>(i)));
  }
  return out;
}

SuiteResult chain_suite(const SuiteOptions& options) {
  SuiteResult out;
  const auto instances = chain_instances(options);
  merge(out, run_items(instances.size(), options.jobs, [&](std::size_t i) {
          Partial part;
          part.checked = 1;
          const auto report = invariant_chain(instances[i], 4, options.caps);
          if (!report.violations.empty()) {
            auto v = violation("invariant-chain", instances[i]);
            v["failed"] = report.violations;
            part.violations.push_back(std::move(v));
          }
          return part;
        }));
  out.details["canonical_max_size"] = 5;
  out.details["random_count"] = options.random_count;
  out.details["random_sizes"] = "1 + i % 8";
  out.details["random_biases"] = "0.1, 0.2, 0.35, 0.5 cycling";
  return out;
}

SuiteResult enumeration_suite(const SuiteOptions&) {
  SuiteResult out;
  const auto& all = grid(kExhaustiveCap);
  std::set<std::string> seen;
  for (const auto& P : all) {
    ++out.instances;
    const auto form = canonical_form(P);
    if (!seen.insert(form.bytes).second) out.violations.push_back(violation("duplicate-class", P));
    if (!(canonical_representative(P) == P)) out.violations.push_back(violation("not-canonical", P));
  }
  out.details["class_counts"] = class_counts(kExhaustiveCap);
  return out;
}

// Family criterion against the relative oracle, per (P, k).
SuiteResult agreement_suite(const SuiteOptions& options) {
  constexpr std::size_t kmax = 4;
  SuiteResult out;
  const auto& bases = grid(4);
  merge(out,
        run_items(bases.size(), options.jobs,
                  [&](std::size_t i) {
                    Partial part;
                    const Preorder& P = bases[i];
                    for (std::size_t k = 1; k <= kmax; ++k) {
                      ++part.checked;
                      SpectrumQuery q;
                      q.k = k;
                      q.caps = options.caps;
                      const auto criterion = family_criterion(P, q);
                      Json row;
                      row["instance"] = i;
                      row["size"] = P.size();
                      row["k"] = k;
                      row["criterion"] = to_string(criterion.verdict);

                      if (criterion.verdict == Verdict::non_member) {
                        const auto& w = *criterion.family;
                        q.test_bound = w.fposet_size;
                        row["test_bound"] = q.test_bound;
                        row["fposet_size"] = w.fposet_size;
                        auto fail = [&](const char* what) {
                          auto v = violation(what, P);
                          v["k"] = k;
                          v["family"] = io::to_json(w.family);
                          part.violations.push_back(std::move(v));
                        };
                        if (q.test_bound > kExhaustiveCap) {
                          fail("witness-beyond-enumeration");
                          part.rows.push_back(std::move(row));
                          continue;
                        }
                        const auto oracle = relative_spectrum_member(P, q);
                        row["oracle"] = to_string(oracle.verdict);
                        if (oracle.verdict != Verdict::non_member) fail("direction-exception");
                        // the F-poset itself must refute k through its diagonal antichain
                        const auto diag = diagonal_antichain(w.family);
                        const bool refutes = cellularity(diag.fposet.as_preorder()).value <= k &&
                                             diag.is_antichain && diag.members.size() >= k + 1;
                        if (!refutes) fail("fposet-does-not-refute");
                      } else {
                        q.test_bound = options.test_bound;
                        row["test_bound"] = q.test_bound;
                        const auto oracle = relative_spectrum_member(P, q);
                        row["oracle"] = to_string(oracle.verdict);
                      }
                      const bool disagree = row["criterion"] != row["oracle"];
                      row["agree"] = !disagree;
                      part.rows.push_back(std::move(row));
                    }
                    return part;
                  }),
        "table");

  std::size_t discrepancies = 0;
  for (const auto& row : out.details["table"]) discrepancies += row["agree"].get<bool>() ? 0 : 1;
  out.details["converse_discrepancies"] = discrepancies;
  return out;
}

using SuiteFn = SuiteResult (*)(const SuiteOptions&);

const std::map<std::string, SuiteFn, std::less<>>& registry() {
  static const std::map<std::string, SuiteFn, std::less<>> suites{
      {"tech1", incompatibility_by_union},
      {"t-family", diagonal_suite},
      {"witness-family", section_suite},
      {"tech2", linked_singletons_suite},
      {"proj-pullback", pullback_suite},
      {"denspec-finite", density_scaled_suite},
      {"alexandrov", topology_suite},
      {"product-spectrum", product_spectrum_suite},
      {"chain", chain_suite},
      {"enumeration", enumeration_suite},
      {"agreement-experiment", agreement_suite},
  };
  return suites;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

bool is_suite(std::string_view name) { return registry().contains(name); }

SuiteResult run_suite(std::string_view name, const SuiteOptions& options) {
  const auto it = registry().find(name);
  if (it == registry().end()) throw Error(Errc::precondition_unmet, "unknown suite " + std::string(name));
  const auto start = std::chrono::steady_clock::now();
  SuiteResult result = it->second(options);
  result.name = std::string(name);
  result.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return result;
}

Json to_json(const SuiteResult& result, const SuiteOptions& options) {
  Json j;
  j["suite"] = result.name;
  j["version"] = io::kVersion;
  j["seed"] = options.seed;
  j["caps"] = Json{{"families", options.caps.families}, {"members", options.caps.members}};
  j["instances"] = result.instances;
  j["violations"] = result.violations;
  j["details"] = result.details;
  if (options.timings) j["millis"] = result.millis;
  return j;
}

}  // namespace cellspec::suites
