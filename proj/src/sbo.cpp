#include "matrex/sbo.hpp"

#include <algorithm>
#include <numeric>

#include "matrex/assignment.hpp"

namespace matrex {

namespace {

bool subset_exchanges_ok(const Matroid& m, const Basis& b1, const Basis& b2,
                         const std::vector<int>& src, const std::vector<int>& img,
                         int t) {
  // Every subset containing src[t] whose other members are already assigned
  // becomes decidable now; earlier subsets were checked at earlier depths.
  for (unsigned mask = 0; mask < (1u << t); ++mask) {
    Basis d1 = b1, d2 = b2;
    d1.reset(src[t]);
    d1.set(img[t]);
    d2.reset(img[t]);
    d2.set(src[t]);
    for (int q = 0; q < t; ++q) {
      if (!(mask >> q & 1)) continue;
      d1.reset(src[q]);
      d1.set(img[q]);
      d2.reset(img[q]);
      d2.set(src[q]);
    }
    if (!m.is_basis(d1) || !m.is_basis(d2)) return false;
  }
  return true;
}

bool assign_images(const Matroid& m, const Basis& b1, const Basis& b2,
                   const std::vector<int>& src, const std::vector<int>& dst,
                   std::vector<int>& img, std::vector<char>& used, int t) {
  const int k = int(src.size());
  if (t == k) return true;
  for (int c = 0; c < k; ++c) {
    if (used[c]) continue;
    img[t] = dst[c];
    if (subset_exchanges_ok(m, b1, b2, src, img, t)) {
      used[c] = 1;
      if (assign_images(m, b1, b2, src, dst, img, used, t + 1)) return true;
      used[c] = 0;
    }
  }
  img[t] = -1;
  return false;
}

}  // namespace

std::optional<ExchangeBijection> find_sbo_bijection(const Matroid& m, const Basis& b1,
                                                    const Basis& b2) {
  if (!m.is_basis(b1)) throw InvalidParameter(b1.to_string() + " is not a basis");
  if (!m.is_basis(b2)) throw InvalidParameter(b2.to_string() + " is not a basis");

  const std::vector<int> src = (b1 - b2).elements();
  const std::vector<int> dst = (b2 - b1).elements();
  std::vector<int> img(src.size(), -1);
  std::vector<char> used(dst.size(), 0);
  if (!assign_images(m, b1, b2, src, dst, img, used, 0)) return std::nullopt;

  ExchangeBijection out{b1, b2, {}};
  for (int e : b1 & b2) out.mapping.emplace_back(e, e);
  for (std::size_t t = 0; t < src.size(); ++t) out.mapping.emplace_back(src[t], img[t]);
  std::sort(out.mapping.begin(), out.mapping.end());
  return out;
}

SboCheck is_strongly_base_orderable(const Matroid& m, std::uint64_t basis_cap) {
  const std::vector<Basis>& bases = m.bases(basis_cap);
  for (std::size_t i = 0; i < bases.size(); ++i)
    for (std::size_t j = i + 1; j < bases.size(); ++j)
      if (!find_sbo_bijection(m, bases[i], bases[j]))
        return SboCheck{false, std::make_pair(bases[i], bases[j])};
  return SboCheck{};
}

OverlapValue overlap(const std::vector<Basis>& a, const std::vector<Basis>& b) {
  if (a.size() != b.size())
    throw InvalidParameter("overlap needs sequences of equal length");
  const int n = int(a.size());
  if (n == 0) return {0, {}};
  for (const Basis& x : a)
    if (x.universe() != a[0].universe())
      throw InvalidParameter("factors live in different universes");
  for (const Basis& x : b)
    if (x.universe() != a[0].universe())
      throw InvalidParameter("factors live in different universes");

  std::vector<std::vector<int>> w(n, std::vector<int>(n));
  int wmax = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      w[i][j] = (a[i] & b[j]).count();
      wmax = std::max(wmax, w[i][j]);
    }

  if (n <= 8) {
    // First maximum in lexicographic permutation order.
    std::vector<int> perm(n), best_perm;
    std::iota(perm.begin(), perm.end(), 0);
    int best = -1;
    do {
      int total = 0;
      for (int i = 0; i < n; ++i) total += w[i][perm[i]];
      if (total > best) {
        best = total;
        best_perm = perm;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return {best, best_perm};
  }

  // Hungarian on the complemented weights, then greedy prefix fixing for the
  // lexicographically smallest optimal pairing.
  auto solve_rest = [&](const std::vector<int>& fixed) -> long long {
    std::vector<int> rows, cols(n);
    std::iota(cols.begin(), cols.end(), 0);
    std::vector<char> taken(n, 0);
    for (int i = 0; i < int(fixed.size()); ++i) taken[fixed[i]] = 1;
    for (int i = int(fixed.size()); i < n; ++i) rows.push_back(i);
    std::vector<int> free_cols;
    for (int j = 0; j < n; ++j)
      if (!taken[j]) free_cols.push_back(j);
    long long fixed_weight = 0;
    for (int i = 0; i < int(fixed.size()); ++i) fixed_weight += w[i][fixed[i]];
    if (rows.empty()) return fixed_weight;
    std::vector<std::vector<int>> cost(rows.size(), std::vector<int>(rows.size()));
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < free_cols.size(); ++c)
        cost[r][c] = wmax - w[rows[r]][free_cols[c]];
    AssignmentResult sub = min_cost_assignment(cost);
    return fixed_weight + (long long)rows.size() * wmax - sub.cost;
  };

  long long best = solve_rest({});
  std::vector<int> fixed;
  std::vector<char> taken(n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (taken[j]) continue;
      fixed.push_back(j);
      if (solve_rest(fixed) == best) {
        taken[j] = 1;
        break;
      }
      fixed.pop_back();
    }
    if (int(fixed.size()) != i + 1)
      throw InternalConsistency("assignment fixing lost the optimum");
  }
  return {int(best), fixed};
}

OverlapValue overlap(const Monomial& a, const Monomial& b) {
  return overlap(a.factors(), b.factors());
}

namespace {

struct RewriteState {
  const Matroid& m;
  CertificateBuilder& builder;
  std::vector<int>* trace = nullptr;
};

void rewrite_level(RewriteState& st, std::vector<Basis> b_seq, std::vector<Basis> d_seq) {
  if (Monomial(b_seq) == Monomial(d_seq)) return;
  const Matroid& m = st.m;
  const int n = int(b_seq.size());
  const int ground = m.ground_size();

  OverlapValue ov = overlap(b_seq, d_seq);
  if (st.trace) st.trace->push_back(ov.value);
  std::vector<Basis> aligned(n, Bitset(ground));
  for (int i = 0; i < n; ++i) aligned[i] = d_seq[ov.pairing[i]];
  d_seq = std::move(aligned);

  int pe = -1, pi = -1, pj = -1;
  for (int e = 0; e < ground && pe < 0; ++e) {
    for (int i = 0; i < n && pe < 0; ++i) {
      if (!b_seq[i].test(e) || d_seq[i].test(e)) continue;
      for (int j = 0; j < n; ++j) {
        if (j == i || !d_seq[j].test(e) || b_seq[j].test(e)) continue;
        pe = e;
        pi = i;
        pj = j;
        break;
      }
    }
  }
  if (pe < 0)
    throw InternalConsistency("factor multisets differ but no exchangeable element");

  auto pi_b = find_sbo_bijection(m, b_seq[pi], b_seq[pj]);
  if (!pi_b) throw NotBaseOrderable(b_seq[pi], b_seq[pj]);
  auto pi_d = find_sbo_bijection(m, d_seq[pi], d_seq[pj]);
  if (!pi_d) throw NotBaseOrderable(d_seq[pi], d_seq[pj]);

  // Union of the two bijections as a graph of two partial matchings; it is
  // bipartite, and a joint two-coloring splits the union of each pair into
  // the new factors.
  std::vector<int> nb_b(ground, -1), nb_d(ground, -1);
  for (int e : b_seq[pi] - b_seq[pj]) {
    int t = pi_b->image_of(e);
    nb_b[e] = t;
    nb_b[t] = e;
  }
  for (int e : d_seq[pi] - d_seq[pj]) {
    int t = pi_d->image_of(e);
    nb_d[e] = t;
    nb_d[t] = e;
  }

  Bitset verts = b_seq[pi] | b_seq[pj] | d_seq[pi] | d_seq[pj];
  std::vector<int> color(ground, -1);
  Bitset side_s(ground), side_t(ground);
  for (int root : verts) {
    if (color[root] >= 0) continue;
    std::vector<int> stack{root};
    color[root] = 0;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      (color[u] == 0 ? side_s : side_t).set(u);
      for (int v : {nb_b[u], nb_d[u]}) {
        if (v < 0) continue;
        if (color[v] < 0) {
          color[v] = 1 - color[u];
          stack.push_back(v);
        } else if (color[v] == color[u]) {
          throw InternalConsistency("bijection graph is not bipartite");
        }
      }
    }
  }

  const Bitset b_union = b_seq[pi] | b_seq[pj];
  const Bitset b_common = b_seq[pi] & b_seq[pj];
  const Bitset d_union = d_seq[pi] | d_seq[pj];
  const Bitset d_common = d_seq[pi] & d_seq[pj];
  Basis b_i2 = (side_s & b_union) | b_common;
  Basis b_j2 = (side_t & b_union) | b_common;
  Basis d_i2 = (side_s & d_union) | d_common;
  Basis d_j2 = (side_t & d_union) | d_common;
  for (const Basis* nb : {&b_i2, &b_j2, &d_i2, &d_j2})
    if (!m.is_basis(*nb))
      throw InternalConsistency("split factor " + nb->to_string() + " is not a basis");

  // Forward swaps realizing (b_i, b_j) -> (b_i2, b_j2).
  Basis cur_i = b_seq[pi], cur_j = b_seq[pj];
  for (int a : b_seq[pi] - b_i2) {
    int f = pi_b->image_of(a);
    st.builder.swap_values(cur_i, cur_j, a, f);
    cur_i = cur_i.exchanged(a, f);
    cur_j = cur_j.exchanged(f, a);
  }
  if (cur_i != b_i2 || cur_j != b_j2)
    throw InternalConsistency("forward swaps do not reach the split factors");

  // The same walk on the target side, recorded only; it is emitted reversed
  // after the recursion so the whole certificate runs start -> end.
  struct Step {
    Basis val_i, val_j;
    int a, f;
  };
  std::vector<Step> walk;
  Basis dv_i = d_seq[pi], dv_j = d_seq[pj];
  for (int a : d_seq[pi] - d_i2) {
    int f = pi_d->image_of(a);
    walk.push_back({dv_i, dv_j, a, f});
    dv_i = dv_i.exchanged(a, f);
    dv_j = dv_j.exchanged(f, a);
  }
  if (dv_i != d_i2 || dv_j != d_j2)
    throw InternalConsistency("target-side swaps do not reach the split factors");

  std::vector<Basis> b_next = b_seq, d_next = d_seq;
  b_next[pi] = b_i2;
  b_next[pj] = b_j2;
  d_next[pi] = d_i2;
  d_next[pj] = d_j2;
  if (overlap(b_next, d_next).value <= ov.value)
    throw InternalConsistency("overlap failed to increase at a rewrite level");

  rewrite_level(st, std::move(b_next), std::move(d_next));

  for (auto it = walk.rbegin(); it != walk.rend(); ++it)
    st.builder.swap_values(it->val_i.exchanged(it->a, it->f),
                           it->val_j.exchanged(it->f, it->a), it->f, it->a);
}

}  // namespace

Certificate rewrite_certificate(const Matroid& m, const std::vector<Basis>& from,
                                const std::vector<Basis>& to,
                                std::vector<int>* overlap_trace) {
  if (from.size() != to.size())
    throw InvalidParameter("sequences have different lengths");
  for (const Basis& b : to)
    if (!m.is_basis(b)) throw InvalidParameter(b.to_string() + " is not a basis");
  if (!from.empty() &&
      multidegree_of(from, m.ground_size()) != multidegree_of(to, m.ground_size()))
    throw InvalidParameter("sequences are not compatible (multidegrees differ)");

  if (overlap_trace) overlap_trace->clear();
  CertificateBuilder builder(m, Monomial(from));
  RewriteState st{m, builder, overlap_trace};
  rewrite_level(st, from, to);
  Certificate cert = builder.finish();
  if (cert.end != Monomial(to))
    throw InternalConsistency("rewrite finished away from the target");
  return cert;
}

}  // namespace matrex
