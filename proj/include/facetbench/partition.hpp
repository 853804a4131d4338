#pragma once

// Robust points: DMUs lying on the largest number of facets, grouped by the
// exact set of facets they share.
//
//   K(d)     facets spanned (in part) by DMU d
//   maxcount max_d |K(d)|
//   S*       DMUs with |K(d)| = maxcount
//   groups   S* partitioned by K(d); one group per distinct facet set G_p

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <vector>

#include "facetbench/error.hpp"
#include "facetbench/facets.hpp"

namespace facetbench {

using FacetIds = std::set<std::size_t>;
using MembershipMap = std::map<std::size_t, FacetIds>;

struct RobustGroup {
  FacetIds facets;                   // G_p
  std::vector<std::size_t> members;  // S*_p, dataset order
};

struct RobustPartition {
  MembershipMap membership;          // every DMU spanning at least one facet
  std::size_t maxcount = 0;
  std::vector<std::size_t> robust;   // S*, dataset order
  std::vector<RobustGroup> groups;   // ordered by G_p

  std::size_t count(std::size_t dmu) const {
    auto it = membership.find(dmu);
    return it == membership.end() ? 0 : it->second.size();
  }
};

inline MembershipMap membership_map(const FacetSet& facets) {
  MembershipMap k;
  for (const auto& f : facets.facets)
    for (auto d : f.members) k[d].insert(f.id);
  return k;
}

inline RobustPartition partition_robust(const FacetSet& facets) {
  if (facets.empty()) throw DataError("no facets: robust points undefined");
  RobustPartition part;
  part.membership = membership_map(facets);
  for (const auto& [d, ks] : part.membership) part.maxcount = std::max(part.maxcount, ks.size());

  std::map<FacetIds, std::vector<std::size_t>> group_map;
  for (const auto& [d, ks] : part.membership) {
    if (ks.size() != part.maxcount) continue;
    part.robust.push_back(d);
    group_map[ks].push_back(d);
  }
  for (auto& [ks, members] : group_map) part.groups.push_back({ks, std::move(members)});
  return part;
}

}  // namespace facetbench
