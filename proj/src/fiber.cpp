#include "matrex/fiber.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <set>
#include <unordered_map>

#include "matrex/detail/deadline.hpp"

namespace matrex {

std::vector<Monomial> neighbors(const Matroid& m, const Monomial& mono) {
  const auto& fs = mono.factors();
  const int n = int(fs.size());
  std::set<Monomial> out;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int e : fs[i]) {
        for (int f : fs[j]) {
          if (e == f) continue;
          Basis d1 = fs[i].exchanged(e, f);
          if (!m.is_basis(d1)) continue;
          Basis d2 = fs[j].exchanged(f, e);
          if (!m.is_basis(d2)) continue;
          std::vector<Basis> next = fs;
          next[i] = d1;
          next[j] = d2;
          Monomial cand(std::move(next));
          if (cand != mono) out.insert(std::move(cand));
        }
      }
    }
  }
  return {out.begin(), out.end()};
}

std::vector<std::vector<Basis>> ordered_neighbors(const Matroid& m,
                                                  const std::vector<Basis>& tuple) {
  const int n = int(tuple.size());
  std::set<std::vector<Basis>> out;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int e : tuple[i]) {
        for (int f : tuple[j]) {
          if (e == f) continue;
          Basis d1 = tuple[i].exchanged(e, f);
          if (!m.is_basis(d1)) continue;
          Basis d2 = tuple[j].exchanged(f, e);
          if (!m.is_basis(d2)) continue;
          std::vector<Basis> next = tuple;
          next[i] = std::move(d1);
          next[j] = std::move(d2);
          if (next != tuple) out.insert(std::move(next));
        }
      }
    }
  }
  return {out.begin(), out.end()};
}

namespace {

struct FiberWalk {
  const Matroid& m;
  const std::vector<Basis>& bases;
  const Caps& caps;
  const detail::Deadline& deadline;
  std::vector<int> remaining;
  std::vector<Basis> chosen;
  std::vector<Monomial> out;
  std::uint64_t steps = 0;

  void run(std::size_t idx, int slots) {
    if ((++steps & 0xfff) == 0) deadline.check("fiber enumeration");
    if (slots == 0) {
      out.emplace_back(chosen);
      if (out.size() > caps.max_fiber_nodes)
        throw ResourceLimit("fiber holds more than " +
                            std::to_string(caps.max_fiber_nodes) + " monomials");
      return;
    }
    if (idx == bases.size()) return;
    for (int c : remaining)
      if (c > slots) return;
    bool usable = true;
    for (int e : bases[idx]) {
      if (remaining[e] == 0) {
        usable = false;
        break;
      }
    }
    if (usable) {
      for (int e : bases[idx]) --remaining[e];
      chosen.push_back(bases[idx]);
      run(idx, slots - 1);
      chosen.pop_back();
      for (int e : bases[idx]) ++remaining[e];
    }
    run(idx + 1, slots);
  }
};

}  // namespace

std::vector<Monomial> fiber_enumerate(const Matroid& m, const Multidegree& d,
                                      const Caps& caps) {
  const int ground = m.ground_size();
  if (int(d.counts.size()) != ground)
    throw InvalidParameter("multidegree has " + std::to_string(d.counts.size()) +
                           " entries for a ground set of size " +
                           std::to_string(ground));
  long long total = 0;
  for (int c : d.counts) {
    if (c < 0) throw InvalidParameter("negative multidegree entry");
    total += c;
  }
  const int r = m.rank();
  if (r == 0) {
    // Every power of the empty basis has the all-zero multidegree; the
    // degree-0 monomial is the only bounded representative.
    if (total == 0) return {Monomial(std::vector<Basis>{})};
    return {};
  }
  if (total % r != 0) return {};
  const int degree = int(total / r);
  for (int c : d.counts)
    if (c > degree) return {};

  detail::Deadline deadline(caps.time_limit_seconds);
  FiberWalk walk{m, m.bases(caps.max_bases), caps, deadline, d.counts, {}, {}, 0};
  walk.run(0, degree);
  return std::move(walk.out);
}

FiberReport connected_components(const Matroid& m, const Multidegree& d,
                                 const Caps& caps, bool want_diameter) {
  const auto t0 = std::chrono::steady_clock::now();
  detail::Deadline deadline(caps.time_limit_seconds);
  FiberReport report;
  report.multidegree = d;

  std::vector<Monomial> nodes = fiber_enumerate(m, d, caps);
  report.nodes = nodes.size();
  if (nodes.empty()) {
    report.elapsed_seconds = detail::seconds_since(t0);
    return report;
  }

  std::unordered_map<Monomial, int> id;
  id.reserve(nodes.size() * 2);
  for (int k = 0; k < int(nodes.size()); ++k) id.emplace(nodes[k], k);

  std::vector<int> component(nodes.size(), -1);
  std::vector<std::vector<int>> members;
  for (int root = 0; root < int(nodes.size()); ++root) {
    if (component[root] >= 0) continue;
    const int comp = int(members.size());
    members.push_back({});
    std::vector<int> queue{root};
    component[root] = comp;
    for (std::size_t q = 0; q < queue.size(); ++q) {
      deadline.check("fiber component search");
      int u = queue[q];
      members[comp].push_back(u);
      for (const Monomial& nb : neighbors(m, nodes[u])) {
        auto it = id.find(nb);
        if (it == id.end())
          throw InternalConsistency("neighbor escaped its fiber");
        if (component[it->second] < 0) {
          component[it->second] = comp;
          queue.push_back(it->second);
        }
      }
    }
    report.component_sizes.push_back(members[comp].size());
  }
  report.components = members.size();

  if (want_diameter) {
    std::size_t big = 0;
    for (std::size_t c = 1; c < members.size(); ++c)
      if (members[c].size() > members[big].size()) big = c;
    if (members[big].size() <= 2048) {
      int diameter = 0;
      for (int src : members[big]) {
        deadline.check("fiber diameter scan");
        std::unordered_map<int, int> dist;
        std::vector<int> queue{src};
        dist[src] = 0;
        for (std::size_t q = 0; q < queue.size(); ++q) {
          int u = queue[q];
          for (const Monomial& nb : neighbors(m, nodes[u])) {
            int v = id.at(nb);
            if (dist.emplace(v, dist[u] + 1).second) queue.push_back(v);
          }
        }
        for (auto [v, dv] : dist) diameter = std::max(diameter, dv);
      }
      report.diameter = diameter;
    }
  }

  report.elapsed_seconds = detail::seconds_since(t0);
  return report;
}

namespace {

struct SideSearch {
  std::vector<Monomial> nodes;
  std::unordered_map<Monomial, int> id;
  std::vector<int> parent;
  std::vector<int> dist;
  std::vector<int> frontier;
  int depth = 0;

  explicit SideSearch(const Monomial& root) {
    nodes.push_back(root);
    id.emplace(root, 0);
    parent.push_back(-1);
    dist.push_back(0);
    frontier.push_back(0);
  }

  int add(const Monomial& mono, int from) {
    int k = int(nodes.size());
    nodes.push_back(mono);
    id.emplace(mono, k);
    parent.push_back(from);
    dist.push_back(dist[from] + 1);
    return k;
  }
};

// Move in X's canonical frame that lands on Y; lexicographically first.
SwapMove find_connecting_move(const Matroid& m, const Monomial& x, const Monomial& y) {
  const auto& fs = x.factors();
  const int n = int(fs.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int e : fs[i]) {
        for (int f : fs[j]) {
          if (e == f) continue;
          Basis d1 = fs[i].exchanged(e, f);
          if (!m.is_basis(d1)) continue;
          Basis d2 = fs[j].exchanged(f, e);
          if (!m.is_basis(d2)) continue;
          std::vector<Basis> next = fs;
          next[i] = d1;
          next[j] = d2;
          if (Monomial(next) == y) return SwapMove{i, j, e, f};
        }
      }
    }
  }
  throw InternalConsistency("adjacent fiber nodes without a connecting swap");
}

std::optional<std::vector<Monomial>> bidirectional_path(const Matroid& m,
                                                        const Monomial& from,
                                                        const Monomial& to,
                                                        const Caps& caps) {
  detail::Deadline deadline(caps.time_limit_seconds);
  if (from == to) return std::vector<Monomial>{from};

  SideSearch fwd(from), bwd(to);
  const long long inf = std::numeric_limits<long long>::max();
  long long best = inf;
  int meet_fwd = -1, meet_bwd = -1;

  auto expand = [&](SideSearch& self, SideSearch& other) {
    std::vector<int> next;
    for (int u : self.frontier) {
      deadline.check("swap path search");
      for (const Monomial& nb : neighbors(m, self.nodes[u])) {
        if (self.id.count(nb)) continue;
        int k = self.add(nb, u);
        next.push_back(k);
        if (self.nodes.size() + other.nodes.size() > caps.max_fiber_nodes)
          throw ResourceLimit("swap path search visited more than " +
                              std::to_string(caps.max_fiber_nodes) + " monomials");
        auto it = other.id.find(nb);
        if (it != other.id.end()) {
          long long total = (long long)self.dist[k] + other.dist[it->second];
          if (total < best) {
            best = total;
            meet_fwd = (&self == &fwd) ? k : it->second;
            meet_bwd = (&self == &fwd) ? it->second : k;
          }
        }
      }
    }
    self.frontier = std::move(next);
    ++self.depth;
  };

  while (!fwd.frontier.empty() && !bwd.frontier.empty()) {
    if (best <= (long long)fwd.depth + bwd.depth) break;
    if (fwd.frontier.size() <= bwd.frontier.size())
      expand(fwd, bwd);
    else
      expand(bwd, fwd);
  }
  if (best == inf) return std::nullopt;

  std::vector<Monomial> path;
  for (int u = meet_fwd; u >= 0; u = fwd.parent[u]) path.push_back(fwd.nodes[u]);
  std::reverse(path.begin(), path.end());
  for (int u = bwd.parent[meet_bwd]; u >= 0; u = bwd.parent[u])
    path.push_back(bwd.nodes[u]);
  return path;
}

}  // namespace

std::optional<Certificate> find_swap_path(const Matroid& m, const Monomial& from,
                                          const Monomial& to, const Caps& caps) {
  if (!compatible(from, to, m.ground_size()))
    throw InvalidParameter("monomials are not compatible (degree or multidegree)");
  for (const Basis& b : from.factors())
    if (!m.is_basis(b)) throw InvalidParameter(b.to_string() + " is not a basis");
  for (const Basis& b : to.factors())
    if (!m.is_basis(b)) throw InvalidParameter(b.to_string() + " is not a basis");

  auto path = bidirectional_path(m, from, to, caps);
  if (!path) return std::nullopt;

  CertificateBuilder builder(m, from);
  for (std::size_t k = 0; k + 1 < path->size(); ++k) {
    const Monomial& x = (*path)[k];
    SwapMove mv = find_connecting_move(m, x, (*path)[k + 1]);
    builder.swap_values(x.factors()[mv.i], x.factors()[mv.j], mv.e, mv.f);
  }
  Certificate cert = builder.finish();
  if (cert.end != to)
    throw InternalConsistency("swap path reconstruction missed the target");
  return cert;
}

bool swap_connected(const Matroid& m, const Monomial& from, const Monomial& to,
                    const Caps& caps) {
  return find_swap_path(m, from, to, caps).has_value();
}

}  // namespace matrex
