#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cellspec/constructions.hpp"
#include "cellspec/generators.hpp"
#include "cellspec/preorder.hpp"

namespace cellspec {

/// Limits on the family search.
struct FamilyCaps {
  /// Search nodes (partial families) visited before giving up.
  std::size_t families = 1'000'000;
  /// Members per family.
  std::size_t members = 8;
};

struct SpectrumQuery {
  /// Finite stand-in for the cardinal being tested; at least 1.
  std::size_t k = 1;
  /// Largest test preorder the relative oracle quantifies over.
  std::size_t test_bound = 4;
  FamilyCaps caps;
  /// Heuristic: only build families from maximal antichains. A negative
  /// answer is still exact; a positive one is not.
  bool maximal_antichains_only = false;

  /// Throws PreconditionUnmet on k == 0, test_bound == 0 or zero caps.
  void validate() const;
};

enum class Verdict { member, non_member, exhausted_caps };

std::string to_string(Verdict v);

struct SearchStats {
  std::size_t nodes = 0;
  double millis = 0.0;
  /// The whole search space was covered.
  bool complete = true;
};

/// A test preorder Q with c(Q) <= k and an antichain of P x Q larger than k.
struct TestPosetWitness {
  Preorder test;
  std::size_t test_cellularity = 0;
  std::vector<Index> product_antichain;
};

/// A family of antichains with |union| above the threshold whose F-poset has
/// cellularity at most k.
struct FamilyWitness {
  AntichainFamily family;
  std::size_t fposet_size = 0;
  std::size_t fposet_cellularity = 0;
};

struct SpectrumReport {
  Verdict verdict = Verdict::member;
  std::size_t k = 0;
  /// Set for oracle reports: the bound the verdict is relative to.
  std::optional<std::size_t> test_bound;
  std::optional<FamilyWitness> family;
  std::optional<TestPosetWitness> test;
  SearchStats stats;
};

/// Recomputes the F-poset and its cellularity: |union| >= min_union and
/// c(F(family)) <= max_cellularity.
bool verify_family_witness(const FamilyWitness& w, std::size_t max_cellularity, std::size_t min_union);
/// Recomputes c(Q) <= k and that the antichain of P x Q is one and exceeds k.
bool verify_test_witness(const Preorder& P, std::size_t k, const TestPosetWitness& w);

/// Looks for a normalized family of antichains of P with |union| >= min_union
/// and c(F(family)) <= max_cellularity, minimizing |F(family)|.
///
/// Depth-first over antichains sorted by size. Members of a normalized family
/// are pairwise incompatible in its F-poset, so no family with more than
/// max_cellularity members can qualify and branches stop there. A branch is
/// also cut when it can no longer reach min_union, or when the listed sets
/// already present plus one singleton per missing element reach the best
/// witness size. Requires |P| <= 64 (CapExceeded otherwise).
SpectrumReport find_small_family(const Preorder& P, std::size_t max_cellularity, std::size_t min_union,
                                 const FamilyCaps& caps, bool maximal_antichains_only = false);

/// Family criterion for k: every family of antichains with |union| >= k + 1
/// has c(F(family)) >= k + 1. A non-member verdict carries the family with
/// the smallest F-poset found. Throws EmptyPoset.
SpectrumReport family_criterion(const Preorder& P, const SpectrumQuery& query);

/// Relative spectrum oracle: for every Q from `instances` with
/// |Q| <= query.test_bound and c(Q) <= k, c(P x Q) <= k. Stops at the first
/// counterexample.
SpectrumReport relative_spectrum_member(const Preorder& P, const SpectrumQuery& query, InstanceStream& instances);
/// Same, over the exhaustive stream up to query.test_bound.
SpectrumReport relative_spectrum_member(const Preorder& P, const SpectrumQuery& query);

enum class SpectrumMode { criterion, oracle };

struct SpectrumSet {
  /// k in 1..kmax with a member verdict, ascending. Not assumed upward closed.
  std::vector<std::size_t> members;
  /// k whose search hit its caps.
  std::vector<std::size_t> undecided;
  /// Least member, if any.
  std::optional<std::size_t> least;
  /// One report per k = 1..kmax.
  std::vector<SpectrumReport> reports;
};

SpectrumSet spectrum_set(const Preorder& P, std::size_t kmax, SpectrumMode mode, const SpectrumQuery& query);

/// Invariants c, d, ind_2..ind_nmax and the criterion-mode spectrum minimum,
/// together with every finitely valid inequality between them.
struct ChainReport {
  std::size_t cellularity = 0;
  std::size_t density = 0;
  /// linked_free[i] = ind_{i+2}
  std::vector<std::size_t> linked_free;
  std::optional<std::size_t> least_spectrum;
  SpectrumSet spectrum;
  /// Human-readable description of each failed check; empty when all hold.
  std::vector<std::string> violations;
};

/// Throws BadArity for nmax < 2.
ChainReport invariant_chain(const Preorder& P, std::size_t nmax, const FamilyCaps& caps = {});

/// Checks that a family with |union| >= k * d(P) + 1 always has
/// c(F(family)) >= k + 1, for each k = 1..kmax. Returns the k that failed.
std::vector<std::size_t> density_scaled_failures(const Preorder& P, std::size_t kmax, const FamilyCaps& caps = {});

struct LinkedSingletonsCheck {
  bool precondition_held = false;
  bool holds = true;
};

/// When A has at least n elements and is n-linked, checks that the
/// singletons {a}, a in A, are pairwise incompatible in F(family). Smaller
/// sets are n-linked vacuously and are skipped. Throws PreconditionUnmet unless A lies in the
/// family's union, BadArity for n < 2.
LinkedSingletonsCheck linked_singletons_check(const AntichainFamily& family, const ElementSet& A, std::size_t n);

struct ProductSpectrumCheck {
  SpectrumSet left;
  SpectrumSet right;
  SpectrumSet joint;
  /// Every k missing from a factor's set was confirmed missing for P x Q by
  /// pulling the factor's witness antichain back along the projection.
  bool projection_pullbacks_hold = true;
  /// joint.members is contained in left.members and right.members.
  bool inclusion_holds = true;
  /// k in both factor sets but missing from the product set (reported only).
  std::vector<std::size_t> reverse_gaps;
};

ProductSpectrumCheck product_spectrum_check(const Preorder& P, const Preorder& Q, std::size_t kmax,
                                            std::size_t test_bound);

}  // namespace cellspec
