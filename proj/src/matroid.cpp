#include "matrex/matroid.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <functional>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"

namespace matrex {

using nlohmann::json;

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw InternalConsistency("SHA-256 digest failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 15]);
  }
  return out;
}

namespace {

std::uint64_t binom_clamped(int n, int r, std::uint64_t clamp) {
  if (r < 0 || r > n) return 0;
  if (r > n - r) r = n - r;
  unsigned __int128 v = 1;
  for (int k = 1; k <= r; ++k) {
    v = v * (unsigned __int128)(n - k + 1) / (unsigned __int128)k;
    if (v > clamp) return clamp + 1;
  }
  return std::uint64_t(v);
}

json basis_to_array(const Bitset& b) {
  json a = json::array();
  for (int e : b) a.push_back(e);
  return a;
}

void validate_labels(const GroundSet& g) {
  if (g.labels.empty()) return;
  if (int(g.labels.size()) != g.size)
    throw InvalidParameter("expected " + std::to_string(g.size) + " labels, got " +
                           std::to_string(g.labels.size()));
  std::unordered_set<std::string> seen;
  for (const auto& l : g.labels)
    if (!seen.insert(l).second)
      throw InvalidParameter("duplicate ground set label '" + l + "'");
}

void attach_labels(json& def, const std::vector<std::string>& labels) {
  if (!labels.empty()) def["labels"] = labels;
}

// Derived matroids inherit labels when that yields a valid labeling and
// silently drop them otherwise; labels are presentation only.
std::vector<std::string> sanitize_labels(std::vector<std::string> labels, int size) {
  if (labels.empty() || int(labels.size()) != size) return {};
  std::unordered_set<std::string> seen;
  for (const auto& l : labels)
    if (!seen.insert(l).second) return {};
  return labels;
}

}  // namespace

AxiomCheck verify_axioms(const std::vector<Basis>& bases) {
  if (bases.empty()) throw InvalidParameter("basis family is empty");
  const int universe = bases[0].universe();
  const int r = bases[0].count();
  for (const Basis& b : bases)
    if (b.universe() != universe)
      throw InvalidParameter("bases live in different universes");
  for (std::size_t i = 0; i < bases.size(); ++i)
    if (bases[i].count() != r)
      return AxiomCheck{false, bases[0], bases[i], -1};
  std::unordered_set<Bitset> family(bases.begin(), bases.end());
  for (std::size_t i = 0; i < bases.size(); ++i) {
    for (std::size_t j = 0; j < bases.size(); ++j) {
      if (i == j) continue;
      const Basis& b1 = bases[i];
      const Basis& b2 = bases[j];
      for (int e : b1 - b2) {
        bool found = false;
        for (int f : b2 - b1) {
          if (family.count(b1.exchanged(e, f))) {
            found = true;
            break;
          }
        }
        if (!found) return AxiomCheck{false, b1, b2, e};
      }
    }
  }
  return AxiomCheck{};
}

Matroid::Matroid(GroundSet ground, int rank, std::string definition_json)
    : ground_(std::move(ground)), rank_(rank), definition_(std::move(definition_json)) {
  validate_labels(ground_);
  if (rank_ < 0 || rank_ > ground_.size)
    throw InternalConsistency("computed rank out of range");
  fingerprint_ = sha256_hex(definition_);
}

int Matroid::rank_of(const Bitset& s) const {
  check_universe(s);
  Bitset cur(ground_.size);
  int c = 0;
  for (int e : s) {
    cur.set(e);
    if (independent_impl(cur)) {
      ++c;
    } else {
      cur.reset(e);
    }
  }
  return c;
}

const std::vector<Basis>& Matroid::bases(std::uint64_t cap) const {
  if (const BasisCache* c = cache_.load(std::memory_order_acquire)) return c->list;
  std::lock_guard<std::mutex> lock(cache_mutex_);
  if (const BasisCache* c = cache_.load(std::memory_order_acquire)) return c->list;

  const int n = ground_.size;
  const int r = rank_;
  const std::uint64_t scan_cap =
      cap > (~std::uint64_t(0)) / 64 ? ~std::uint64_t(0) : 64 * cap;
  if (binom_clamped(n, r, scan_cap) > scan_cap)
    throw ResourceLimit("basis enumeration would scan more than " +
                        std::to_string(scan_cap) + " candidate subsets (cap " +
                        std::to_string(cap) + ")");

  auto cache = std::make_unique<BasisCache>();
  if (r == 0) {
    cache->list.push_back(Bitset(n));
  } else {
    std::vector<int> idx(r);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      Basis b = Bitset::from_elements(n, idx);
      if (independent_impl(b)) {
        cache->list.push_back(b);
        if (cache->list.size() > cap)
          throw ResourceLimit("more than " + std::to_string(cap) + " bases");
      }
      int i = r - 1;
      while (i >= 0 && idx[i] == n - r + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  if (cache->list.empty())
    throw InternalConsistency("no basis found at the computed rank");
  cache->set.insert(cache->list.begin(), cache->list.end());
  cache_owner_ = std::move(cache);
  cache_.store(cache_owner_.get(), std::memory_order_release);
  return cache_owner_->list;
}

namespace {

class UniformMatroid final : public Matroid {
 public:
  UniformMatroid(int r, int n, GroundSet g, std::string def)
      : Matroid(std::move(g), r, std::move(def)), r_(r) { (void)n; }

 protected:
  bool independent_impl(const Bitset& s) const override { return s.count() <= r_; }

 private:
  int r_;
};

class GraphicMatroid final : public Matroid {
 public:
  GraphicMatroid(int vertices, std::vector<std::pair<int, int>> edges, int rank,
                 GroundSet g, std::string def)
      : Matroid(std::move(g), rank, std::move(def)),
        vertices_(vertices),
        edges_(std::move(edges)) {}

 protected:
  // A set of edges is independent iff it is a forest.
  bool independent_impl(const Bitset& s) const override {
    std::vector<int> parent(vertices_);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&parent](int v) {
      while (parent[v] != v) {
        parent[v] = parent[parent[v]];
        v = parent[v];
      }
      return v;
    };
    for (int e : s) {
      auto [a, b] = edges_[e];
      if (a == b) return false;
      int ra = find(a), rb = find(b);
      if (ra == rb) return false;
      parent[ra] = rb;
    }
    return true;
  }

 private:
  int vertices_;
  std::vector<std::pair<int, int>> edges_;
};

class LinearMatroid final : public Matroid {
 public:
  LinearMatroid(int p, std::vector<std::vector<int>> matrix, int rank, GroundSet g,
                std::string def)
      : Matroid(std::move(g), rank, std::move(def)), p_(p), matrix_(std::move(matrix)) {}

  static int gf_rank(const std::vector<std::vector<int>>& matrix,
                     const std::vector<int>& cols, int p) {
    const int rows = int(matrix.size());
    std::vector<std::vector<long long>> m(rows, std::vector<long long>(cols.size()));
    for (int r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols.size(); ++c) m[r][c] = matrix[r][cols[c]];
    int rank = 0;
    for (std::size_t c = 0; c < cols.size() && rank < rows; ++c) {
      int piv = -1;
      for (int r = rank; r < rows; ++r)
        if (m[r][c] % p != 0) {
          piv = r;
          break;
        }
      if (piv < 0) continue;
      std::swap(m[rank], m[piv]);
      long long inv = mod_inverse(m[rank][c], p);
      for (std::size_t cc = c; cc < cols.size(); ++cc)
        m[rank][cc] = m[rank][cc] * inv % p;
      for (int r = 0; r < rows; ++r) {
        if (r == rank || m[r][c] == 0) continue;
        long long f = m[r][c];
        for (std::size_t cc = c; cc < cols.size(); ++cc)
          m[r][cc] = ((m[r][cc] - f * m[rank][cc]) % p + p) % p;
      }
      ++rank;
    }
    return rank;
  }

  static long long mod_inverse(long long a, long long p) {
    long long res = 1, b = p - 2;  // Fermat; p is prime
    a %= p;
    while (b) {
      if (b & 1) res = res * a % p;
      a = a * a % p;
      b >>= 1;
    }
    return res;
  }

 protected:
  bool independent_impl(const Bitset& s) const override {
    const int k = s.count();
    if (k > rank()) return false;
    // Full-cardinality queries dominate basis searches; memoize those.
    const bool memoize = (k == rank());
    if (memoize) {
      std::lock_guard<std::mutex> lock(memo_mutex_);
      auto it = memo_.find(s);
      if (it != memo_.end()) return it->second;
    }
    bool ind = gf_rank(matrix_, s.elements(), p_) == k;
    if (memoize) {
      std::lock_guard<std::mutex> lock(memo_mutex_);
      if (memo_.size() < (1u << 20)) memo_.emplace(s, ind);
    }
    return ind;
  }

 private:
  int p_;
  std::vector<std::vector<int>> matrix_;
  mutable std::mutex memo_mutex_;
  mutable std::unordered_map<Bitset, bool> memo_;
};

class TransversalMatroid final : public Matroid {
 public:
  TransversalMatroid(std::vector<std::vector<int>> containing, int rank, GroundSet g,
                     std::string def)
      : Matroid(std::move(g), rank, std::move(def)), containing_(std::move(containing)) {}

  // Kuhn augmenting paths; elements on the left, sets on the right.
  static bool match_all(const std::vector<std::vector<int>>& containing,
                        const std::vector<int>& elems, int set_count,
                        int* matched_out = nullptr) {
    std::vector<int> owner(set_count, -1);
    std::vector<char> seen(set_count, 0);
    int matched = 0;
    for (int e : elems) {
      std::fill(seen.begin(), seen.end(), 0);
      if (augment(containing, e, owner, seen)) ++matched;
    }
    if (matched_out) *matched_out = matched;
    return matched == int(elems.size());
  }

 protected:
  bool independent_impl(const Bitset& s) const override {
    return match_all(containing_, s.elements(), set_count());
  }

 private:
  int set_count() const {
    int m = 0;
    for (const auto& c : containing_)
      for (int j : c) m = std::max(m, j + 1);
    return m;
  }

  static bool augment(const std::vector<std::vector<int>>& containing, int e,
                      std::vector<int>& owner, std::vector<char>& seen) {
    for (int j : containing[e]) {
      if (seen[j]) continue;
      seen[j] = 1;
      if (owner[j] < 0 || augment(containing, owner[j], owner, seen)) {
        owner[j] = e;
        return true;
      }
    }
    return false;
  }

  std::vector<std::vector<int>> containing_;  // element -> set indices
};

class ExplicitMatroid final : public Matroid {
 public:
  ExplicitMatroid(std::vector<Basis> bases, int rank, GroundSet g, std::string def)
      : Matroid(std::move(g), rank, std::move(def)), family_(std::move(bases)) {
    member_.insert(family_.begin(), family_.end());
  }

 protected:
  bool independent_impl(const Bitset& s) const override {
    for (const Basis& b : family_)
      if (b.contains(s)) return true;
    return false;
  }

 private:
  std::vector<Basis> family_;
  std::unordered_set<Bitset> member_;
};

class DualMatroid final : public Matroid {
 public:
  DualMatroid(MatroidPtr inner, int rank, GroundSet g, std::string def)
      : Matroid(std::move(g), rank, std::move(def)), inner_(std::move(inner)) {}

 protected:
  bool independent_impl(const Bitset& s) const override {
    return inner_->rank_of(s.complement()) == inner_->rank();
  }

 private:
  MatroidPtr inner_;
};

class DirectSumMatroid final : public Matroid {
 public:
  DirectSumMatroid(MatroidPtr left, MatroidPtr right, int rank, GroundSet g,
                   std::string def)
      : Matroid(std::move(g), rank, std::move(def)),
        left_(std::move(left)),
        right_(std::move(right)) {}

 protected:
  bool independent_impl(const Bitset& s) const override {
    const int cut = left_->ground_size();
    Bitset a(cut), b(right_->ground_size());
    for (int e : s) {
      if (e < cut)
        a.set(e);
      else
        b.set(e - cut);
    }
    return left_->is_independent(a) && right_->is_independent(b);
  }

 private:
  MatroidPtr left_, right_;
};

class MinorMatroid final : public Matroid {
 public:
  MinorMatroid(MatroidPtr inner, std::vector<int> keep, Bitset contracted, int rank,
               GroundSet g, std::string def)
      : Matroid(std::move(g), rank, std::move(def)),
        inner_(std::move(inner)),
        keep_(std::move(keep)),
        contracted_(std::move(contracted)) {}

 protected:
  bool independent_impl(const Bitset& s) const override {
    Bitset lifted = contracted_;
    for (int e : s) lifted.set(keep_[e]);
    return inner_->is_independent(lifted);
  }

 private:
  MatroidPtr inner_;
  std::vector<int> keep_;  // new index -> inner index
  Bitset contracted_;
};

}  // namespace

MatroidPtr uniform_matroid(int r, int n, std::vector<std::string> labels) {
  if (n < 0 || r < 0 || r > n)
    throw InvalidParameter("uniform matroid needs 0 <= r <= n, got r=" +
                           std::to_string(r) + " n=" + std::to_string(n));
  json def{{"type", "uniform"}, {"r", r}, {"n", n}};
  attach_labels(def, labels);
  GroundSet g{n, std::move(labels)};
  return std::make_shared<UniformMatroid>(r, n, std::move(g), def.dump());
}

MatroidPtr graphic_matroid(int vertices, std::vector<std::pair<int, int>> edges,
                           std::vector<std::string> labels) {
  if (vertices < 0) throw InvalidParameter("negative vertex count");
  json earr = json::array();
  for (auto [a, b] : edges) {
    if (a < 0 || a >= vertices || b < 0 || b >= vertices)
      throw InvalidParameter("edge endpoint out of range: (" + std::to_string(a) +
                             "," + std::to_string(b) + ")");
    earr.push_back(json::array({a, b}));
  }
  std::vector<int> parent(vertices);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int v) {
    return parent[v] == v ? v : parent[v] = find(parent[v]);
  };
  int components = vertices;
  for (auto [a, b] : edges) {
    int ra = find(a), rb = find(b);
    if (ra != rb) {
      parent[ra] = rb;
      --components;
    }
  }
  int rank = vertices - components;
  json def{{"type", "graphic"}, {"vertices", vertices}, {"edges", earr}};
  attach_labels(def, labels);
  GroundSet g{int(edges.size()), std::move(labels)};
  return std::make_shared<GraphicMatroid>(vertices, std::move(edges), rank, std::move(g),
                                          def.dump());
}

MatroidPtr linear_matroid(int p, std::vector<std::vector<int>> matrix,
                          std::vector<std::string> labels) {
  if (p < 2 || p > 46337) throw InvalidParameter("field characteristic out of range");
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) throw InvalidParameter(std::to_string(p) + " is not prime");
  if (matrix.empty()) throw InvalidParameter("linear matroid needs at least one row");
  const std::size_t cols = matrix[0].size();
  for (auto& row : matrix) {
    if (row.size() != cols) throw InvalidParameter("ragged matrix");
    for (int& v : row) v = ((v % p) + p) % p;
  }
  std::vector<int> all(cols);
  std::iota(all.begin(), all.end(), 0);
  int rank = LinearMatroid::gf_rank(matrix, all, p);
  json def{{"type", "linear"}, {"p", p}, {"matrix", matrix}};
  attach_labels(def, labels);
  GroundSet g{int(cols), std::move(labels)};
  return std::make_shared<LinearMatroid>(p, std::move(matrix), rank, std::move(g),
                                         def.dump());
}

MatroidPtr transversal_matroid(int ground_size, std::vector<std::vector<int>> sets,
                               std::vector<std::string> labels) {
  if (ground_size < 0) throw InvalidParameter("negative ground set size");
  std::vector<std::vector<int>> containing(ground_size);
  json sarr = json::array();
  for (std::size_t j = 0; j < sets.size(); ++j) {
    std::sort(sets[j].begin(), sets[j].end());
    sets[j].erase(std::unique(sets[j].begin(), sets[j].end()), sets[j].end());
    json one = json::array();
    for (int e : sets[j]) {
      if (e < 0 || e >= ground_size)
        throw InvalidParameter("set member " + std::to_string(e) + " out of range");
      containing[e].push_back(int(j));
      one.push_back(e);
    }
    sarr.push_back(one);
  }
  std::vector<int> all(ground_size);
  std::iota(all.begin(), all.end(), 0);
  int rank = 0;
  TransversalMatroid::match_all(containing, all, int(sets.size()), &rank);
  json def{{"type", "transversal"}, {"n", ground_size}, {"sets", sarr}};
  attach_labels(def, labels);
  GroundSet g{ground_size, std::move(labels)};
  return std::make_shared<TransversalMatroid>(std::move(containing), rank, std::move(g),
                                              def.dump());
}

MatroidPtr explicit_matroid(int ground_size, std::vector<Basis> bases,
                            std::vector<std::string> labels) {
  if (ground_size < 0) throw InvalidParameter("negative ground set size");
  for (const Basis& b : bases)
    if (b.universe() != ground_size)
      throw InvalidParameter("basis universe does not match ground set size");
  std::sort(bases.begin(), bases.end());
  bases.erase(std::unique(bases.begin(), bases.end()), bases.end());
  AxiomCheck check = verify_axioms(bases);
  if (!check.ok) {
    if (check.element < 0)
      throw InvalidParameter("explicit bases have mixed cardinalities: " +
                             check.from.to_string() + " vs " + check.to.to_string());
    throw InvalidParameter(
        "exchange property fails: no exchange for element " +
        std::to_string(check.element) + " of " + check.from.to_string() + " into " +
        check.to.to_string());
  }
  int rank = bases[0].count();
  json barr = json::array();
  for (const Basis& b : bases) barr.push_back(basis_to_array(b));
  json def{{"type", "explicit"}, {"n", ground_size}, {"bases", barr}};
  attach_labels(def, labels);
  GroundSet g{ground_size, std::move(labels)};
  return std::make_shared<ExplicitMatroid>(std::move(bases), rank, std::move(g),
                                           def.dump());
}

MatroidPtr dual_matroid(MatroidPtr inner) {
  if (!inner) throw InvalidParameter("null matroid");
  int n = inner->ground_size();
  int rank = n - inner->rank();
  json def{{"type", "dual"}, {"inner", json::parse(inner->definition_json())}};
  std::vector<std::string> labels = sanitize_labels(inner->ground().labels, n);
  attach_labels(def, labels);
  GroundSet g{n, std::move(labels)};
  return std::make_shared<DualMatroid>(std::move(inner), rank, std::move(g), def.dump());
}

MatroidPtr direct_sum(MatroidPtr left, MatroidPtr right) {
  if (!left || !right) throw InvalidParameter("null matroid");
  int n = left->ground_size() + right->ground_size();
  int rank = left->rank() + right->rank();
  json def{{"type", "direct_sum"},
           {"left", json::parse(left->definition_json())},
           {"right", json::parse(right->definition_json())}};
  std::vector<std::string> labels;
  if (!left->ground().labels.empty() && !right->ground().labels.empty()) {
    labels = left->ground().labels;
    labels.insert(labels.end(), right->ground().labels.begin(),
                  right->ground().labels.end());
    labels = sanitize_labels(std::move(labels), n);
  }
  attach_labels(def, labels);
  GroundSet g{n, std::move(labels)};
  return std::make_shared<DirectSumMatroid>(std::move(left), std::move(right), rank,
                                            std::move(g), def.dump());
}

MatroidPtr minor_matroid(MatroidPtr inner, const Bitset& deleted,
                         const Bitset& contracted) {
  if (!inner) throw InvalidParameter("null matroid");
  const int n = inner->ground_size();
  if (deleted.universe() != n || contracted.universe() != n)
    throw InvalidParameter("delete/contract sets do not match the ground set");
  if (deleted.intersects(contracted))
    throw InvalidParameter("delete and contract sets overlap");
  if (!inner->is_independent(contracted))
    throw InvalidParameter("contracted set is dependent");
  std::vector<int> keep;
  for (int e = 0; e < n; ++e)
    if (!deleted.test(e) && !contracted.test(e)) keep.push_back(e);
  int rank = inner->rank_of(deleted.complement()) - contracted.count();
  json def{{"type", "minor"},
           {"inner", json::parse(inner->definition_json())},
           {"delete", basis_to_array(deleted)},
           {"contract", basis_to_array(contracted)}};
  std::vector<std::string> labels;
  if (!inner->ground().labels.empty()) {
    for (int e : keep) labels.push_back(inner->ground().labels[e]);
    labels = sanitize_labels(std::move(labels), int(keep.size()));
  }
  attach_labels(def, labels);
  GroundSet g{int(keep.size()), std::move(labels)};
  return std::make_shared<MinorMatroid>(std::move(inner), std::move(keep), contracted,
                                        rank, std::move(g), def.dump());
}

}  // namespace matrex
