#include "matrex/conjectures.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <thread>
#include <unordered_map>

#include "json.hpp"
#include "matrex/detail/deadline.hpp"

namespace matrex {

namespace {

struct TupleHash {
  std::size_t operator()(const std::vector<Basis>& t) const {
    std::size_t h = 0x9e3779b97f4a7c15ull ^ t.size();
    for (const Basis& b : t) h = h * 0x100000001b3ull ^ b.hash();
    return h;
  }
};

template <class F>
void parallel_for(std::size_t count, int jobs, F fn) {
  if (jobs <= 1 || count <= 1) {
    for (std::size_t k = 0; k < count; ++k) fn(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  const int threads = int(std::min(std::size_t(jobs), count));
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      while (true) {
        std::size_t k = next.fetch_add(1);
        if (k >= count) break;
        fn(k);  // workers store their own failures
      }
    });
  for (auto& th : pool) th.join();
}

std::uint64_t count_multisets_clamped(std::uint64_t options, int picks,
                                      std::uint64_t clamp) {
  // C(options + picks - 1, picks), clamped.
  unsigned __int128 v = 1;
  for (int k = 1; k <= picks; ++k) {
    v = v * (unsigned __int128)(options + picks - k) / (unsigned __int128)k;
    if (v > clamp) return clamp + 1;
  }
  return std::uint64_t(v);
}

std::vector<Monomial> multiple_exchange_neighbors(const Matroid& m, const Monomial& mono,
                                                  int subset_bound) {
  const auto& fs = mono.factors();
  const int n = int(fs.size());
  const int r = m.rank();
  std::set<Monomial> out;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const std::vector<int> ei = fs[i].elements();
      const std::vector<int> ej = fs[j].elements();
      for (unsigned mi = 1; mi < (1u << ei.size()); ++mi) {
        if (std::popcount(mi) > subset_bound) continue;
        Bitset a1(fs[i].universe());
        for (std::size_t t = 0; t < ei.size(); ++t)
          if (mi >> t & 1) a1.set(ei[t]);
        const Bitset base1 = fs[i] - a1;
        for (unsigned mj = 0; mj < (1u << ej.size()); ++mj) {
          Bitset a2(fs[j].universe());
          for (std::size_t t = 0; t < ej.size(); ++t)
            if (mj >> t & 1) a2.set(ej[t]);
          Basis d1 = base1 | a2;
          if (d1.count() != r || !m.is_basis(d1)) continue;
          Basis d2 = (fs[j] - a2) | a1;
          if (d2.count() != r || !m.is_basis(d2)) continue;
          std::vector<Basis> next = fs;
          next[i] = std::move(d1);
          next[j] = std::move(d2);
          Monomial cand(std::move(next));
          if (cand != mono) out.insert(std::move(cand));
        }
      }
    }
  }
  return {out.begin(), out.end()};
}

template <class Node, class Hash, class NeighborFn>
std::uint64_t component_count(const std::vector<Node>& nodes, NeighborFn neighbor_fn) {
  std::unordered_map<Node, int, Hash> id;
  id.reserve(nodes.size() * 2);
  for (int k = 0; k < int(nodes.size()); ++k) id.emplace(nodes[k], k);
  std::vector<char> seen(nodes.size(), 0);
  std::uint64_t comps = 0;
  for (int root = 0; root < int(nodes.size()); ++root) {
    if (seen[root]) continue;
    ++comps;
    std::vector<int> queue{root};
    seen[root] = 1;
    for (std::size_t q = 0; q < queue.size(); ++q) {
      for (const Node& nb : neighbor_fn(nodes[queue[q]])) {
        auto it = id.find(nb);
        if (it == id.end())
          throw InternalConsistency("exchange move escaped its fiber");
        if (!seen[it->second]) {
          seen[it->second] = 1;
          queue.push_back(it->second);
        }
      }
    }
  }
  return comps;
}

struct GroupOutcome {
  bool examined = false;
  std::uint64_t components = 1;
  std::exception_ptr error;
};

GroupOutcome examine_group(const Matroid& m, const std::vector<Monomial>& group,
                           int variant, int subset_bound,
                           const detail::Deadline& deadline) {
  GroupOutcome out;
  deadline.check("exchange connectivity check");
  if (variant == 1) {
    std::vector<std::vector<Basis>> tuples;
    for (const Monomial& mono : group) {
      std::vector<Basis> t = mono.factors();
      do {
        tuples.push_back(t);
      } while (std::next_permutation(t.begin(), t.end()));
    }
    std::sort(tuples.begin(), tuples.end());
    if (tuples.size() < 2) return out;
    out.examined = true;
    out.components = component_count<std::vector<Basis>, TupleHash>(
        tuples, [&](const std::vector<Basis>& t) { return ordered_neighbors(m, t); });
    return out;
  }
  if (group.size() < 2) return out;
  out.examined = true;
  if (variant == 2) {
    out.components = component_count<Monomial, std::hash<Monomial>>(
        group, [&](const Monomial& mono) { return neighbors(m, mono); });
  } else {
    out.components = component_count<Monomial, std::hash<Monomial>>(
        group, [&](const Monomial& mono) {
          return multiple_exchange_neighbors(m, mono, subset_bound);
        });
  }
  return out;
}

}  // namespace

TEReport te_check(const Matroid& m, int max_degree, int variant, const Caps& caps,
                  int jobs, int subset_bound) {
  if (variant < 1 || variant > 3)
    throw InvalidParameter("variant must be 1, 2 or 3");
  if (max_degree < 1) throw InvalidParameter("max degree must be positive");
  if (subset_bound <= 0) subset_bound = std::min(m.rank(), 6);

  TEReport report;
  report.variant = variant;
  report.max_degree = max_degree;

  const std::vector<Basis>& bases = m.bases(caps.max_bases);
  detail::Deadline deadline(caps.time_limit_seconds);

  for (int deg = 2; deg <= max_degree; ++deg) {
    try {
      if (count_multisets_clamped(bases.size(), deg, caps.max_fiber_nodes) >
          caps.max_fiber_nodes)
        throw ResourceLimit("more than " + std::to_string(caps.max_fiber_nodes) +
                            " monomials of degree " + std::to_string(deg));

      std::map<Multidegree, std::vector<Monomial>> groups;
      {
        std::vector<int> pick(deg, 0);
        std::uint64_t emitted = 0;
        while (true) {
          std::vector<Basis> factors;
          factors.reserve(deg);
          for (int k : pick) factors.push_back(bases[k]);
          Monomial mono(std::move(factors));
          groups[multidegree_of(mono, m.ground_size())].push_back(std::move(mono));
          if ((++emitted & 0xfff) == 0) deadline.check("fiber grouping");
          int k = deg - 1;
          while (k >= 0 && pick[k] == int(bases.size()) - 1) --k;
          if (k < 0) break;
          ++pick[k];
          for (int j = k + 1; j < deg; ++j) pick[j] = pick[k];
        }
      }

      std::vector<const std::vector<Monomial>*> glist;
      std::vector<const Multidegree*> gkeys;
      for (const auto& [key, val] : groups) {
        gkeys.push_back(&key);
        glist.push_back(&val);
      }
      std::vector<GroupOutcome> outcomes(glist.size());
      parallel_for(glist.size(), jobs, [&](std::size_t k) {
        try {
          outcomes[k] = examine_group(m, *glist[k], variant, subset_bound, deadline);
        } catch (...) {
          outcomes[k].error = std::current_exception();
        }
      });
      for (std::size_t k = 0; k < outcomes.size(); ++k) {
        if (outcomes[k].error) std::rethrow_exception(outcomes[k].error);
        if (!outcomes[k].examined) continue;
        ++report.fibers_examined;
        if (outcomes[k].components > 1)
          report.disconnected.push_back(
              TEFiberIssue{deg, *gkeys[k], outcomes[k].components});
      }
    } catch (const ResourceLimit& limit) {
      report.verdict = Verdict::Inconclusive;
      report.note = "degree " + std::to_string(deg) + ": " + limit.what();
      return report;
    }
  }
  report.verdict = report.disconnected.empty() ? Verdict::Holds : Verdict::Fails;
  return report;
}

std::optional<Certificate> commutation_check(const Matroid& m, const Basis& b1,
                                             const Basis& b2, const Caps& caps) {
  if (!m.is_basis(b1)) throw InvalidParameter(b1.to_string() + " is not a basis");
  if (!m.is_basis(b2)) throw InvalidParameter(b2.to_string() + " is not a basis");
  const Basis& a = std::min(b1, b2);
  const Basis& b = std::max(b1, b2);
  CertificateBuilder builder(m, Monomial({a, b}));
  if (a == b) return builder.finish();

  detail::Deadline deadline(caps.time_limit_seconds);
  const std::vector<Basis> start{a, b};
  const std::vector<Basis> target{b, a};

  std::vector<std::vector<Basis>> nodes{start};
  std::unordered_map<std::vector<Basis>, int, TupleHash> id{{start, 0}};
  std::vector<int> parent{-1};
  int found = -1;
  for (std::size_t q = 0; q < nodes.size() && found < 0; ++q) {
    deadline.check("commutation search");
    for (const auto& nb : ordered_neighbors(m, nodes[q])) {
      if (id.count(nb)) continue;
      int k = int(nodes.size());
      nodes.push_back(nb);
      id.emplace(nb, k);
      parent.push_back(int(q));
      if (nodes.size() > caps.max_fiber_nodes)
        throw ResourceLimit("commutation search visited more than " +
                            std::to_string(caps.max_fiber_nodes) + " pairs");
      if (nb == target) {
        found = k;
        break;
      }
    }
  }
  if (found < 0) return std::nullopt;

  std::vector<int> path;
  for (int u = found; u >= 0; u = parent[u]) path.push_back(u);
  std::reverse(path.begin(), path.end());
  for (std::size_t s = 0; s + 1 < path.size(); ++s) {
    const auto& x = nodes[path[s]];
    const auto& y = nodes[path[s + 1]];
    bool emitted = false;
    for (int e : x[0]) {
      for (int f : x[1]) {
        if (e == f) continue;
        if (x[0].exchanged(e, f) == y[0] && x[1].exchanged(f, e) == y[1]) {
          builder.swap_positions(0, 1, e, f);
          emitted = true;
          break;
        }
      }
      if (emitted) break;
    }
    if (!emitted)
      throw InternalConsistency("adjacent ordered pairs without a connecting swap");
  }
  if (builder.working() != target)
    throw InternalConsistency("commutation path replay missed the transposition");
  return builder.finish();
}

std::optional<std::vector<int>> cyclic_ordering(const Matroid& m, const Caps& caps) {
  const int n = m.ground_size();
  const int r = m.rank();
  if (n != 2 * r)
    throw InvalidParameter(
        "ground set is not a disjoint union of two bases (size is not twice the rank)");
  if (n == 0) return std::vector<int>{};

  bool splits = false;
  for (const Basis& b : m.bases(caps.max_bases)) {
    if (m.is_basis(b.complement())) {
      splits = true;
      break;
    }
  }
  if (!splits)
    throw InvalidParameter("ground set is not a disjoint union of two bases");

  detail::Deadline deadline(caps.time_limit_seconds);
  std::vector<int> pos(n, -1);
  std::vector<char> used(n, 0);
  pos[0] = 0;
  used[0] = 1;
  std::uint64_t steps = 0;

  auto window_is_basis = [&](int start) {
    Bitset w(n);
    for (int k = 0; k < r; ++k) w.set(pos[(start + k) % n]);
    return m.is_basis(w);
  };

  std::function<bool(int)> place = [&](int k) -> bool {
    if (k == n) {
      for (int s = n - r + 1; s < n; ++s)
        if (!window_is_basis(s)) return false;
      return true;
    }
    for (int v = 1; v < n; ++v) {
      if (used[v]) continue;
      if (n >= 3 && k == n - 1 && v < pos[1]) continue;  // mirror image
      if ((++steps & 0xfff) == 0) deadline.check("cyclic ordering search");
      if (steps > caps.max_fiber_nodes)
        throw ResourceLimit("cyclic ordering search exceeded " +
                            std::to_string(caps.max_fiber_nodes) + " steps");
      pos[k] = v;
      used[v] = 1;
      if ((k < r - 1 || window_is_basis(k - r + 1)) && place(k + 1)) return true;
      used[v] = 0;
      pos[k] = -1;
    }
    return false;
  };

  if (place(1)) return pos;
  return std::nullopt;
}

HarnessReport direct_sum_harness(const MatroidPtr& m, int max_degree, const Caps& caps,
                                 int jobs) {
  if (!m) throw InvalidParameter("null matroid");
  MatroidPtr mm = direct_sum(m, m);

  HarnessReport rep;
  rep.m_te1 = te_check(*m, max_degree, 1, caps, jobs);
  rep.mm_te1 = te_check(*mm, max_degree, 1, caps, jobs);
  rep.mm_te2 = te_check(*mm, max_degree, 2, caps, jobs);

  std::string why;
  auto holds = [](const TEReport& r) { return r.verdict == Verdict::Holds; };
  auto fails = [](const TEReport& r) { return r.verdict == Verdict::Fails; };
  if (holds(rep.mm_te2) && fails(rep.m_te1))
    why = "sum connects under unordered swaps while the summand fails ordered swaps";
  else if (holds(rep.m_te1) && fails(rep.mm_te1))
    why = "summand connects under ordered swaps while the sum fails them";
  else if (holds(rep.mm_te1) && fails(rep.mm_te2))
    why = "sum connects under ordered swaps but fails unordered swaps";
  if (!why.empty()) {
    rep.consistent = false;
    rep.detail = "falsification up to degree " + std::to_string(max_degree) + ": " + why;
  } else {
    bool partial = rep.m_te1.verdict == Verdict::Inconclusive ||
                   rep.mm_te1.verdict == Verdict::Inconclusive ||
                   rep.mm_te2.verdict == Verdict::Inconclusive;
    rep.detail = std::string("observations up to degree ") +
                 std::to_string(max_degree) +
                 (partial ? " are incomplete (a check hit its cap) but "
                          : " are ") +
                 "consistent with the expected equivalences";
  }
  return rep;
}

DiscretePolymatroid::DiscretePolymatroid(std::vector<std::vector<int>> bases) {
  if (bases.empty()) throw InvalidParameter("polymatroid has no base vectors");
  dim_ = int(bases[0].size());
  if (dim_ == 0) throw InvalidParameter("zero-dimensional polymatroid");
  long long sum0 = -1;
  for (const auto& v : bases) {
    if (int(v.size()) != dim_) throw InvalidParameter("base vectors of mixed dimension");
    long long s = 0;
    for (int x : v) {
      if (x < 0) throw InvalidParameter("negative entry in a base vector");
      s += x;
    }
    if (sum0 < 0) sum0 = s;
    if (s != sum0)
      throw InvalidParameter("base vectors have different coordinate sums");
  }
  rank_ = int(sum0);
  std::sort(bases.begin(), bases.end());
  bases.erase(std::unique(bases.begin(), bases.end()), bases.end());
  bases_ = std::move(bases);

  for (const auto& u : bases_) {
    for (const auto& v : bases_) {
      for (int i = 0; i < dim_; ++i) {
        if (u[i] <= v[i]) continue;
        bool found = false;
        for (int j = 0; j < dim_ && !found; ++j) {
          if (u[j] >= v[j]) continue;
          std::vector<int> w = u;
          --w[i];
          ++w[j];
          found = std::binary_search(bases_.begin(), bases_.end(), w);
        }
        if (!found) {
          std::string us, vs;
          for (int x : u) us += std::to_string(x) + " ";
          for (int x : v) vs += std::to_string(x) + " ";
          throw InvalidParameter("vector exchange fails at coordinate " +
                                 std::to_string(i) + " for ( " + us + ") vs ( " + vs +
                                 ")");
        }
      }
    }
  }
}

bool DiscretePolymatroid::is_base(const std::vector<int>& v) const {
  return std::binary_search(bases_.begin(), bases_.end(), v);
}

namespace {

class LiftedMatroid final : public Matroid {
 public:
  LiftedMatroid(std::vector<std::vector<int>> bases, int dim, int rank, GroundSet g,
                std::string def)
      : Matroid(std::move(g), rank, std::move(def)), dim_(dim),
        base_vectors_(std::move(bases)) {}

 protected:
  bool independent_impl(const Bitset& s) const override {
    std::vector<int> counts(dim_, 0);
    for (int e : s) ++counts[e % dim_];
    for (const auto& v : base_vectors_) {
      bool fits = true;
      for (int i = 0; i < dim_ && fits; ++i) fits = counts[i] <= v[i];
      if (fits) return true;
    }
    return false;
  }

 private:
  int dim_;
  std::vector<std::vector<int>> base_vectors_;
};

}  // namespace

MatroidPtr polymatroid_to_matroid(const DiscretePolymatroid& p, std::uint64_t basis_cap) {
  nlohmann::json def{
      {"type", "polymatroid"}, {"n", p.dimension()}, {"bases", p.bases()}};
  const int ground = p.rank() * p.dimension();
  auto lifted = std::make_shared<LiftedMatroid>(p.bases(), p.dimension(), p.rank(),
                                                GroundSet{ground, {}}, def.dump());
  AxiomCheck check = verify_axioms(lifted->bases(basis_cap));
  if (!check.ok)
    throw InternalConsistency("lifted ground set fails the exchange property at " +
                              check.from.to_string() + " / " + check.to.to_string());
  return lifted;
}

std::vector<int> column_counts(const DiscretePolymatroid& p, const Basis& b) {
  if (b.universe() != p.rank() * p.dimension())
    throw InvalidParameter("subset does not live in the lifted ground set");
  std::vector<int> counts(p.dimension(), 0);
  for (int e : b) ++counts[e % p.dimension()];
  return counts;
}

Basis lift_base(const DiscretePolymatroid& p, const std::vector<int>& v) {
  if (!p.is_base(v)) throw InvalidParameter("vector is not a base of the polymatroid");
  Basis b(p.rank() * p.dimension());
  for (int i = 0; i < p.dimension(); ++i)
    for (int level = 0; level < v[i]; ++level) b.set(level * p.dimension() + i);
  return b;
}

std::vector<PolymatroidSwap> polymatroid_swap_correspondence(
    const DiscretePolymatroid& p, const Matroid& lifted, const Basis& b1,
    const Basis& b2, int e, int f) {
  if (lifted.ground_size() != p.rank() * p.dimension())
    throw InvalidParameter("matroid is not the lift of this polymatroid");
  if (!lifted.is_basis(b1) || !lifted.is_basis(b2))
    throw InvalidParameter("swap operands are not bases of the lifted matroid");
  if (!b1.test(e) || !b2.test(f))
    throw InvalidParameter("swap elements are not in their bases");
  Basis d1 = b1.exchanged(e, f);
  Basis d2 = b2.exchanged(f, e);
  if (!lifted.is_basis(d1) || !lifted.is_basis(d2))
    throw InvalidParameter("swap is not valid in the lifted matroid");

  std::vector<int> u = column_counts(p, b1);
  std::vector<int> v = column_counts(p, b2);
  if (!p.is_base(u) || !p.is_base(v))
    throw InvalidParameter("bases do not project onto polymatroid bases");

  const int ce = e % p.dimension();
  const int cf = f % p.dimension();
  if (ce == cf) return {};

  std::vector<int> u2 = u, v2 = v;
  --u2[ce];
  ++u2[cf];
  ++v2[ce];
  --v2[cf];
  if (u2 != column_counts(p, d1) || v2 != column_counts(p, d2))
    throw InternalConsistency("projected counts disagree with the swapped bases");
  if (!p.is_base(u2) || !p.is_base(v2))
    throw Falsification("valid lifted swap projects outside the polymatroid bases");
  return {PolymatroidSwap{ce, cf}};
}

}  // namespace matrex
