#include "matrex/certificate.hpp"

#include <algorithm>

namespace matrex {

CertificateBuilder::CertificateBuilder(const Matroid& m, Monomial start)
    : matroid_(m), start_(std::move(start)), working_(start_.factors()) {
  for (const Basis& b : working_)
    if (!matroid_.is_basis(b))
      throw InvalidParameter("start factor " + b.to_string() + " is not a basis");
}

void CertificateBuilder::swap_positions(int i, int j, int e, int f) {
  if (i < 0 || j < 0 || i >= int(working_.size()) || j >= int(working_.size()) || i == j)
    throw InternalConsistency("swap positions out of range");
  if (!working_[i].test(e) || !working_[j].test(f))
    throw InternalConsistency("swap elements not present at their positions");
  Basis d1 = working_[i].exchanged(e, f);
  Basis d2 = working_[j].exchanged(f, e);
  if (!matroid_.is_basis(d1) || !matroid_.is_basis(d2))
    throw InternalConsistency("generated swap (" + std::to_string(e) + "," +
                              std::to_string(f) + ") leaves the basis family");
  working_[i] = std::move(d1);
  working_[j] = std::move(d2);
  moves_.push_back(SwapMove{i, j, e, f});
}

void CertificateBuilder::swap_values(const Basis& value_i, const Basis& value_j, int e,
                                     int f) {
  int i = -1, j = -1;
  for (int k = 0; k < int(working_.size()); ++k) {
    if (i < 0 && working_[k] == value_i) {
      i = k;
      continue;
    }
    if (j < 0 && working_[k] == value_j) j = k;
  }
  if (i < 0 || j < 0)
    throw InternalConsistency("swap operands " + value_i.to_string() + ", " +
                              value_j.to_string() + " not present in the working list");
  swap_positions(i, j, e, f);
}

Certificate CertificateBuilder::finish() const {
  return Certificate{start_, Monomial(working_), moves_, matroid_.fingerprint()};
}

ReplayResult verify_certificate(const Matroid& m, const Certificate& cert) {
  if (!cert.matroid_sha.empty() && cert.matroid_sha != m.fingerprint())
    return {false, -1,
            "certificate was issued for a different matroid (fingerprint mismatch)"};
  if (cert.start.degree() != cert.end.degree())
    return {false, -1, "start and end degrees differ"};

  std::vector<Basis> work = cert.start.factors();
  const int n = int(work.size());
  for (const Basis& b : work)
    if (!m.is_basis(b)) return {false, -1, "start factor " + b.to_string() + " is not a basis"};
  for (const Basis& b : cert.end.factors())
    if (!m.is_basis(b)) return {false, -1, "end factor " + b.to_string() + " is not a basis"};

  for (int k = 0; k < int(cert.moves.size()); ++k) {
    const SwapMove& mv = cert.moves[k];
    if (mv.i < 0 || mv.i >= n || mv.j < 0 || mv.j >= n || mv.i == mv.j)
      return {false, k, "move positions out of range"};
    if (mv.e < 0 || mv.e >= m.ground_size() || mv.f < 0 || mv.f >= m.ground_size())
      return {false, k, "move elements out of range"};
    if (!work[mv.i].test(mv.e))
      return {false, k,
              "element " + std::to_string(mv.e) + " absent at position " +
                  std::to_string(mv.i)};
    if (!work[mv.j].test(mv.f))
      return {false, k,
              "element " + std::to_string(mv.f) + " absent at position " +
                  std::to_string(mv.j)};
    Basis d1 = work[mv.i];
    d1.reset(mv.e);
    d1.set(mv.f);
    Basis d2 = work[mv.j];
    d2.reset(mv.f);
    d2.set(mv.e);
    if (!m.is_basis(d1))
      return {false, k, "intermediate " + d1.to_string() + " is not a basis"};
    if (!m.is_basis(d2))
      return {false, k, "intermediate " + d2.to_string() + " is not a basis"};
    work[mv.i] = std::move(d1);
    work[mv.j] = std::move(d2);
  }

  if (Monomial(work) != cert.end)
    return {false, -1, "replay does not land on the certified end monomial"};
  return {true, -1, ""};
}

}  // namespace matrex
