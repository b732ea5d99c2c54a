#pragma once

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "abstube/errors.hpp"
#include "abstube/polyhedron.hpp"

// Ranking of the candidate family { J subset of {1..m} : 0 < |J| <= r },
// ordered by cardinality and then lexicographically.

namespace abstube::candidates {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt c = 1;
  for (int i = 1; i <= k; ++i) {
    c *= n - k + i;
    c /= i;
  }
  return c;
}

/// Number of nonempty subsets of {1..m} with at most r elements.
inline BigInt family_size(int m, int r) {
  if (r < 0 || r > m) throw std::invalid_argument("family_size needs 0 <= r <= m");
  BigInt total = 0;
  for (int j = 1; j <= r; ++j) total += binomial(m, j);
  return total;
}

inline bool in_family(const IndexSet& J, int m, int r) {
  return !J.empty() && static_cast<int>(J.size()) <= r && J.back() <= m;
}

/// 1-based position L of J:
///   L = 1 + |J_{l-1,m}| + sum_{j=1..l} sum_{k=d_{j-1}+1}^{d_j-1} C(m-k, l-j),  d_0 = 0.
inline BigInt rank(const IndexSet& J, int m, int r) {
  if (!in_family(J, m, r)) throw NotInFamily(J.to_string() + " is not a candidate for m=" + std::to_string(m) +
                                             ", r=" + std::to_string(r));
  const int l = static_cast<int>(J.size());
  BigInt L = 1 + family_size(m, l - 1);
  int prev = 0;
  for (int j = 1; j <= l; ++j) {
    const int d = J[static_cast<std::size_t>(j) - 1];
    for (int k = prev + 1; k <= d - 1; ++k) L += binomial(m - k, l - j);
    prev = d;
  }
  return L;
}

/// Inverse of rank().
inline IndexSet unrank(const BigInt& L, int m, int r) {
  if (L < 1 || L > family_size(m, r))
    throw RankOutOfRange("rank " + L.str() + " outside 1.." + family_size(m, r).str());
  int l = 1;
  while (l < r && family_size(m, l) < L) ++l;
  const BigInt target = L - family_size(m, l - 1);

  // d_j is the largest value keeping the accumulated skip count below target.
  std::vector<int> d;
  d.reserve(static_cast<std::size_t>(l));
  BigInt acc = 0;
  int prev = 0;
  for (int j = 1; j <= l; ++j) {
    int dj = prev + 1;
    BigInt acc_dj = acc;
    const int hi = m - l + j;
    for (int cand = prev + 2; cand <= hi; ++cand) {
      BigInt next = acc_dj + binomial(m - (cand - 1), l - j);
      if (next < target) {
        dj = cand;
        acc_dj = std::move(next);
      } else {
        break;
      }
    }
    d.push_back(dj);
    acc = acc_dj;
    prev = dj;
  }
  return IndexSet(std::move(d));
}

/// Advances J to the next subset of the same size in lexicographic order.
/// Returns false (leaving J unchanged) when J is the last one.
inline bool next_same_size(IndexSet& J, int m) {
  std::vector<int> v = J.indices();
  const int l = static_cast<int>(v.size());
  int pos = l - 1;
  while (pos >= 0 && v[static_cast<std::size_t>(pos)] == m - (l - 1 - pos)) --pos;
  if (pos < 0) return false;
  ++v[static_cast<std::size_t>(pos)];
  for (int k = pos + 1; k < l; ++k) v[static_cast<std::size_t>(k)] = v[static_cast<std::size_t>(k) - 1] + 1;
  J = IndexSet(std::move(v));
  return true;
}

/// The candidate family J_{r,m} as a value.
class CandidateFamily {
 public:
  CandidateFamily(int m, int r) : m_(m), r_(r) {
    if (m < 0 || r < 0 || r > m) throw std::invalid_argument("candidate family needs 0 <= r <= m");
  }
  int m() const noexcept { return m_; }
  int r() const noexcept { return r_; }
  BigInt size() const { return family_size(m_, r_); }
  BigInt rank(const IndexSet& J) const { return candidates::rank(J, m_, r_); }
  IndexSet unrank(const BigInt& L) const { return candidates::unrank(L, m_, r_); }

  /// Ranks [first, last] of the members with exactly c elements.
  std::pair<BigInt, BigInt> level(int c) const {
    if (c < 1 || c > r_) throw std::invalid_argument("cardinality outside 1..r");
    return {family_size(m_, c - 1) + 1, family_size(m_, c)};
  }

 private:
  int m_;
  int r_;
};

}  // namespace abstube::candidates
