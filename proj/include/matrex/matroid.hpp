#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "matrex/bitset.hpp"
#include "matrex/error.hpp"

namespace matrex {

inline constexpr std::uint64_t kDefaultBasisCap = 1'000'000;

struct GroundSet {
  int size = 0;
  std::vector<std::string> labels;  // empty, or one label per element
};

// Result of checking the basis exchange property on an explicit family.
// When ok is false, (from, to, element) is the first witness in iteration
// order: element lies in from \ to and no f in to \ from completes a swap.
struct AxiomCheck {
  bool ok = true;
  Bitset from, to;
  int element = -1;
};

AxiomCheck verify_axioms(const std::vector<Basis>& bases);

// Rank oracle with a fixed ground set. Subclasses implement independence;
// everything else (rank of subsets, basis tests, enumeration) derives from
// it. Instances are immutable and shared via shared_ptr.
class Matroid {
 public:
  virtual ~Matroid() = default;

  const GroundSet& ground() const { return ground_; }
  int ground_size() const { return ground_.size; }
  int rank() const { return rank_; }

  bool is_independent(const Bitset& s) const {
    check_universe(s);
    return independent_impl(s);
  }

  bool is_basis(const Bitset& s) const {
    check_universe(s);
    if (s.count() != rank_) return false;
    if (const BasisCache* c = cache_.load(std::memory_order_acquire))
      return c->set.count(s) != 0;
    return independent_impl(s);
  }

  // Greedy closure; correct for any matroid independence oracle.
  int rank_of(const Bitset& s) const;

  // All bases in ascending order. Enumerated once and cached; afterwards
  // is_basis is a hash lookup. Throws ResourceLimit when more than `cap`
  // bases exist or the candidate scan would be hopeless.
  const std::vector<Basis>& bases(std::uint64_t cap = kDefaultBasisCap) const;

  std::uint64_t basis_count(std::uint64_t cap = kDefaultBasisCap) const {
    return bases(cap).size();
  }

  // Canonical JSON text of the defining data, and its SHA-256. Certificates
  // carry the fingerprint so a verifier can refuse a mismatched oracle.
  const std::string& definition_json() const { return definition_; }
  const std::string& fingerprint() const { return fingerprint_; }

 protected:
  Matroid(GroundSet ground, int rank, std::string definition_json);

  virtual bool independent_impl(const Bitset& s) const = 0;

 private:
  struct BasisCache {
    std::vector<Basis> list;
    std::unordered_set<Bitset> set;
  };

  void check_universe(const Bitset& s) const {
    if (s.universe() != ground_.size)
      throw InvalidParameter("subset universe " + std::to_string(s.universe()) +
                             " does not match ground set size " +
                             std::to_string(ground_.size));
  }

  GroundSet ground_;
  int rank_ = 0;
  std::string definition_;
  std::string fingerprint_;

  mutable std::mutex cache_mutex_;
  mutable std::unique_ptr<BasisCache> cache_owner_;
  mutable std::atomic<const BasisCache*> cache_{nullptr};
};

using MatroidPtr = std::shared_ptr<const Matroid>;

MatroidPtr uniform_matroid(int r, int n, std::vector<std::string> labels = {});
MatroidPtr graphic_matroid(int vertices, std::vector<std::pair<int, int>> edges,
                           std::vector<std::string> labels = {});
MatroidPtr linear_matroid(int p, std::vector<std::vector<int>> matrix,
                          std::vector<std::string> labels = {});
MatroidPtr transversal_matroid(int ground_size, std::vector<std::vector<int>> sets,
                               std::vector<std::string> labels = {});
MatroidPtr explicit_matroid(int ground_size, std::vector<Basis> bases,
                            std::vector<std::string> labels = {});
MatroidPtr dual_matroid(MatroidPtr inner);
MatroidPtr direct_sum(MatroidPtr left, MatroidPtr right);
MatroidPtr minor_matroid(MatroidPtr inner, const Bitset& deleted, const Bitset& contracted);

std::string sha256_hex(const std::string& data);

}  // namespace matrex
