#include "matrex/saturation.hpp"

#include <algorithm>
#include <map>

#include "matrex/exchange.hpp"

namespace matrex {

int reference_degree(const Basis& ref, const Basis& b) {
  if (ref.universe() != b.universe())
    throw InvalidParameter("bases live in different universes");
  return (b - ref).count();
}

int reference_degree(const Basis& ref, const Monomial& m) {
  int total = 0;
  for (const Basis& b : m.factors()) total += reference_degree(ref, b);
  return total;
}

BalanceResult balance(const Matroid& m, const Basis& ref, const Basis& b) {
  if (!m.is_basis(ref)) throw InvalidParameter(ref.to_string() + " is not a basis");
  if (!m.is_basis(b)) throw InvalidParameter(b.to_string() + " is not a basis");

  const int dist = reference_degree(ref, b);
  if (dist <= 1) {
    CertificateBuilder builder(m, Monomial({b}));
    return BalanceResult{{b}, builder.finish()};
  }

  std::vector<Basis> start(dist - 1, ref);
  start.push_back(b);
  CertificateBuilder builder(m, Monomial(std::move(start)));

  std::vector<Basis> peeled;
  Basis cur = b;
  while (reference_degree(ref, cur) > 1) {
    int e = (cur - ref).smallest();
    int f = symmetric_exchange(m, cur, ref, e);
    // A reference copy turns into ref - f + e (distance one); cur sheds e.
    builder.swap_values(ref, cur, f, e);
    peeled.push_back(ref.exchanged(f, e));
    cur = cur.exchanged(e, f);
  }
  peeled.push_back(cur);
  return BalanceResult{std::move(peeled), builder.finish()};
}

BalancedMultigraph balanced_multigraph(const Basis& ref, const Monomial& m) {
  BalancedMultigraph g{ref, {}};
  for (const Basis& b : m.factors()) {
    Bitset enter = b - ref;
    Bitset leave = ref - b;
    if (enter.count() != leave.count() || enter.count() > 1)
      throw InvalidParameter("factor " + b.to_string() +
                             " is not within distance one of the reference");
    if (enter.count() == 1) g.edges.emplace_back(enter.smallest(), leave.smallest());
  }
  return g;
}

std::vector<std::vector<int>> alternating_cycle_decomposition(
    const BalancedMultigraph& g, const BalancedMultigraph& h) {
  if (g.reference != h.reference)
    throw InvalidParameter("multigraphs use different references");
  const Basis& ref = g.reference;
  const int ground = ref.universe();

  auto validate = [&](const BalancedMultigraph& mg) {
    for (auto [enter, leave] : mg.edges) {
      if (enter < 0 || enter >= ground || leave < 0 || leave >= ground ||
          ref.test(enter) || !ref.test(leave))
        throw InvalidParameter("edge (" + std::to_string(enter) + "," +
                               std::to_string(leave) +
                               ") does not cross the reference");
    }
  };
  validate(g);
  validate(h);

  std::vector<int> deg_g(ground, 0), deg_h(ground, 0);
  for (auto [e, f] : g.edges) {
    ++deg_g[e];
    ++deg_g[f];
  }
  for (auto [e, f] : h.edges) {
    ++deg_h[e];
    ++deg_h[f];
  }
  if (deg_g != deg_h)
    throw InvalidParameter("vertex degrees differ between the two multigraphs");

  // Cancel the shared part; only the symmetric difference is decomposed.
  std::map<std::pair<int, int>, int> count_g, count_h;
  for (auto e : g.edges) ++count_g[e];
  for (auto e : h.edges) ++count_h[e];
  std::vector<std::pair<int, int>> rest_g, rest_h;
  for (auto& [key, cg] : count_g) {
    int shared = std::min(cg, count_h.count(key) ? count_h[key] : 0);
    for (int k = shared; k < cg; ++k) rest_g.push_back(key);
  }
  for (auto& [key, ch] : count_h) {
    int shared = std::min(ch, count_g.count(key) ? count_g[key] : 0);
    for (int k = shared; k < ch; ++k) rest_h.push_back(key);
  }

  struct Incidence {
    std::vector<std::pair<int, int>> at;  // (other endpoint, instance id)
  };
  std::vector<Incidence> inc_g(ground), inc_h(ground);
  for (int k = 0; k < int(rest_g.size()); ++k) {
    auto [e, f] = rest_g[k];
    inc_g[e].at.emplace_back(f, k);
    inc_g[f].at.emplace_back(e, k);
  }
  for (int k = 0; k < int(rest_h.size()); ++k) {
    auto [e, f] = rest_h[k];
    inc_h[e].at.emplace_back(f, k);
    inc_h[f].at.emplace_back(e, k);
  }
  for (int v = 0; v < ground; ++v) {
    std::sort(inc_g[v].at.begin(), inc_g[v].at.end());
    std::sort(inc_h[v].at.begin(), inc_h[v].at.end());
  }
  std::vector<char> used_g(rest_g.size(), 0), used_h(rest_h.size(), 0);

  auto next_edge = [](const Incidence& inc, const std::vector<char>& used) {
    for (auto [other, id] : inc.at)
      if (!used[id]) return std::make_pair(other, id);
    return std::make_pair(-1, -1);
  };

  std::vector<std::vector<int>> cycles;
  for (int root = 0; root < ground; ++root) {
    while (next_edge(inc_g[root], used_g).second >= 0) {
      std::vector<int> verts;
      int cur = root;
      bool expect_g = true;
      do {
        verts.push_back(cur);
        auto [other, id] =
            expect_g ? next_edge(inc_g[cur], used_g) : next_edge(inc_h[cur], used_h);
        if (id < 0)
          throw InternalConsistency("alternating walk is stuck at vertex " +
                                    std::to_string(cur));
        (expect_g ? used_g : used_h)[id] = 1;
        cur = other;
        expect_g = !expect_g;
      } while (!(cur == root && expect_g));

      // Canonical form: among rotations (and the reflection) that keep the
      // g-then-h pattern and start on a reference vertex, take the smallest.
      const int len = int(verts.size());
      std::vector<int> best;
      auto consider = [&](const std::vector<int>& seq) {
        for (int s = 0; s < len; s += 2) {
          if (!ref.test(seq[s])) continue;
          std::vector<int> rot(len);
          for (int k = 0; k < len; ++k) rot[k] = seq[(s + k) % len];
          if (best.empty() || rot < best) best = rot;
        }
      };
      consider(verts);
      std::vector<int> flipped(len);
      for (int k = 0; k < len; ++k) flipped[k] = verts[(len + 1 - k) % len];
      consider(flipped);
      if (best.empty())
        throw InternalConsistency("alternating cycle without a reference-side start");
      cycles.push_back(std::move(best));
    }
  }
  for (char u : used_h)
    if (!u) throw InternalConsistency("cycle decomposition left h-edges unused");

  std::sort(cycles.begin(), cycles.end());
  return cycles;
}

SaturationWitness saturation_witness(const Matroid& m, const Monomial& m1,
                                     const Monomial& m2, const Basis& ref,
                                     const Caps& caps) {
  if (!m.is_basis(ref)) throw InvalidParameter(ref.to_string() + " is not a basis");
  if (!compatible(m1, m2, m.ground_size()))
    throw InvalidParameter("monomials are not compatible (degree or multidegree)");

  const int k = std::max(0, reference_degree(ref, m1) - m1.degree());
  std::vector<Basis> padded1 = m1.factors(), padded2 = m2.factors();
  for (int t = 0; t < k; ++t) {
    padded1.push_back(ref);
    padded2.push_back(ref);
  }
  auto cert = find_swap_path(m, Monomial(std::move(padded1)),
                             Monomial(std::move(padded2)), caps);
  if (!cert)
    throw Falsification("padded monomials are not swap-connected at exponent " +
                        std::to_string(k) + " with reference " + ref.to_string());
  return SaturationWitness{std::move(*cert), ref, k};
}

int min_saturation_exponent(const Matroid& m, const Monomial& m1, const Monomial& m2,
                            const Basis& ref, const Caps& caps) {
  if (!m.is_basis(ref)) throw InvalidParameter(ref.to_string() + " is not a basis");
  if (!compatible(m1, m2, m.ground_size()))
    throw InvalidParameter("monomials are not compatible (degree or multidegree)");

  const int bound = std::max(0, reference_degree(ref, m1) - m1.degree());
  std::vector<Basis> padded1 = m1.factors(), padded2 = m2.factors();
  for (int k = 0;; ++k) {
    if (swap_connected(m, Monomial(padded1), Monomial(padded2), caps)) return k;
    if (k >= bound)
      throw Falsification("padded monomials are not swap-connected at exponent " +
                          std::to_string(k) + " with reference " + ref.to_string());
    padded1.push_back(ref);
    padded2.push_back(ref);
  }
}

}  // namespace matrex
