#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include "abstube/errors.hpp"
#include "abstube/lex_lp.hpp"
#include "abstube/parallel.hpp"
#include "abstube/polyhedron.hpp"
#include "abstube/subset_enum.hpp"

namespace abstube {

/// The simplicial complex of the perturbed system, with the data needed to
/// reproduce it.  Members are sorted by cardinality, then lexicographically.
struct AbstractTube {
  int n = 0;
  int m = 0;
  int r = 0;
  std::vector<int> order;  // order[i-1] = power of the infinitesimal on b_i
  std::vector<IndexSet> members;

  std::size_t size() const noexcept { return members.size(); }
  bool contains(const IndexSet& J) const { return std::binary_search(members.begin(), members.end(), J); }
};

struct TubeOptions {
  SignTolerance tol{};
  std::vector<int> order{};  // empty = identity
  bool prune = true;
  Backend backend = Backend::Float;
  unsigned workers = 1;
  std::size_t max_iterations = 0;
};

inline std::vector<int> identity_order(int m) {
  std::vector<int> v(static_cast<std::size_t>(m));
  std::iota(v.begin(), v.end(), 1);
  return v;
}

namespace detail {

enum class Mark : std::uint8_t { Feasible, Infeasible, Pruned };

inline bool contains_any(std::uint64_t mask, const std::vector<std::uint64_t>& infeasible) {
  return std::any_of(infeasible.begin(), infeasible.end(),
                     [mask](std::uint64_t bad) { return (mask & bad) == bad; });
}

/// Sweeps subsets level by level, testing each with `test`.  Candidates
/// containing a known minimal infeasible subset are skipped when pruning.
/// Every verdict of one level is merged before the next level starts, so
/// the result does not depend on the number of workers.
template <class Test>
std::vector<IndexSet> sweep_levels(int m, int max_card, bool prune, unsigned workers, const Test& test) {
  if (m > 64) throw SizeLimitExceeded("subset sweep supports at most 64 constraints");
  std::vector<IndexSet> members;
  std::vector<std::uint64_t> infeasible;
  const candidates::CandidateFamily family(m, max_card);

  for (int c = 1; c <= max_card; ++c) {
    const auto [first, last] = family.level(c);
    const auto count = static_cast<std::size_t>(last - first + 1);
    std::vector<Mark> marks(count);

    parallel_chunks(count, workers, [&](std::size_t begin, std::size_t end) {
      IndexSet J = family.unrank(first + begin);
      for (std::size_t k = begin; k < end; ++k) {
        const std::uint64_t mask = J.mask();
        if (prune && contains_any(mask, infeasible)) {
          marks[k] = Mark::Pruned;
        } else {
          try {
            marks[k] = test(J) ? Mark::Feasible : Mark::Infeasible;
          } catch (Error& e) {
            e.attach_subset(J.indices());
            throw;
          }
        }
        if (k + 1 < end) candidates::next_same_size(J, m);
      }
    });

    std::size_t feasible_here = 0;
    IndexSet J = family.unrank(first);
    for (std::size_t k = 0; k < count; ++k) {
      if (marks[k] == Mark::Feasible) {
        members.push_back(J);
        ++feasible_here;
      } else if (marks[k] == Mark::Infeasible) {
        infeasible.push_back(J.mask());
      }
      if (k + 1 < count) candidates::next_same_size(J, m);
    }
    if (prune && feasible_here == 0) break;
  }
  return members;
}

}  // namespace detail

/// Builds F(0+): every J with 0 < |J| <= rank(A) whose perturbed equality
/// system is feasible.
inline AbstractTube build_tube(const Polyhedron& p, const TubeOptions& opt = {}) {
  validate(p);
  check_order(opt.order, p.m);
  AbstractTube tube;
  tube.n = p.n;
  tube.m = p.m;
  tube.r = rank(p);
  tube.order = opt.order.empty() ? identity_order(p.m) : opt.order;

  LpOptions lp;
  lp.tol = opt.tol;
  lp.order = tube.order;
  lp.max_iterations = opt.max_iterations;
  tube.members = detail::sweep_levels(p.m, tube.r, opt.prune, opt.workers, [&](const IndexSet& J) {
    return feasible(p, J, lp, opt.backend);
  });
  return tube;
}

/// Builds the unperturbed complex F = { J : the faces F_i, i in J, meet },
/// using exact rational arithmetic and no cardinality cap.
inline std::vector<IndexSet> build_unperturbed_complex(const Polyhedron& p, int max_m = 20) {
  validate(p);
  if (p.m > max_m)
    throw SizeLimitExceeded("unperturbed complex enumeration capped at m = " + std::to_string(max_m));
  LpOptions lp;
  lp.perturbed = false;
  return detail::sweep_levels(p.m, p.m, true, 1, [&](const IndexSet& J) { return feasible<Rational>(p, J, lp); });
}

struct TubeStats {
  std::size_t total = 0;
  std::vector<std::size_t> by_cardinality;  // index c holds the count with |J| = c
  std::size_t max_cardinality = 0;
};

inline TubeStats tube_stats(const std::vector<IndexSet>& members) {
  TubeStats s;
  s.total = members.size();
  for (const auto& J : members) {
    if (J.size() >= s.by_cardinality.size()) s.by_cardinality.resize(J.size() + 1, 0);
    ++s.by_cardinality[J.size()];
    s.max_cardinality = std::max(s.max_cardinality, J.size());
  }
  return s;
}

inline TubeStats tube_stats(const AbstractTube& t) { return tube_stats(t.members); }

/// True when every nonempty subset of every member is also a member.
inline bool is_downward_closed(const std::vector<IndexSet>& members) {
  std::set<std::uint64_t> present;
  for (const auto& J : members) present.insert(J.mask());
  for (const auto& J : members) {
    const std::uint64_t mask = J.mask();
    for (std::uint64_t sub = (mask - 1) & mask; sub != 0; sub = (sub - 1) & mask)
      if (!present.contains(sub)) return false;
  }
  return true;
}

}  // namespace abstube
