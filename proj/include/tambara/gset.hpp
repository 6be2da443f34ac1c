#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "tambara/group.hpp"

namespace tambara {

struct Orbit {
  std::vector<int> points;   // sorted
  int base = 0;              // minimal point
  SubgroupId stabilizer = 0; // stabilizer of base
  /// coset_of[i] is the coset of G/stabilizer sent to points[i] by the
  /// bijection G/stab -> orbit, gS -> g.base
  std::vector<int> coset_of;
  std::vector<int> point_of_coset;
  /// minimal g with g.base = points[i]
  std::vector<GroupElement> carrier;
};

/// Finite G-set, stored as a dense action table action[g * size + x].
class GSet {
 public:
  GSet() = default;
  GSet(GroupPtr group, int size, std::vector<int> action);

  /// G/H with point i the i-th left coset.
  static GSet cosets(GroupPtr group, SubgroupId h);
  static GSet disjoint_union(const std::vector<GSet>& parts);
  static GSet empty(GroupPtr group) { return GSet(std::move(group), 0, {}); }

  const GroupPtr& group() const { return group_; }
  int size() const { return size_; }
  int act(GroupElement g, int x) const { return action_[g * size_ + x]; }
  const std::vector<int>& action() const { return action_; }

  const std::vector<Orbit>& orbits() const { return orbits_; }
  /// orbit index of each point
  int orbit_of(int x) const { return orbit_index_[x]; }
  SubgroupId stabilizer(int x) const;

  /// Restriction to a subgroup K, as a G-set for view(K).group.
  GSet restrict_to(SubgroupId k) const;

 private:
  void compute_orbits();

  GroupPtr group_;
  int size_ = 0;
  std::vector<int> action_;
  std::vector<Orbit> orbits_;
  std::vector<int> orbit_index_;
};

struct GSetMap {
  GSet source;
  GSet target;
  std::vector<int> images;

  int operator()(int x) const { return images[x]; }
  bool is_equivariant() const;
};

GSetMap identity_map(const GSet& x);
GSetMap compose(const GSetMap& g, const GSetMap& f);  // g after f
/// G/K -> G/H, gK -> gH for K inside H
GSetMap projection_map(GroupPtr group, SubgroupId k, SubgroupId h);
/// G/gHg^-1 -> G/H, x gHg^-1 -> x g H
GSetMap conjugation_map(GroupPtr group, SubgroupId h, GroupElement g);

struct Pullback {
  GSet set;
  GSetMap first;   // to the source of f
  GSetMap second;  // to the source of g
  std::vector<std::pair<int, int>> pairs;
};

Pullback pullback(const GSetMap& f, const GSetMap& g);

struct ExponentialDiagram {
  GSetMap f;   // X -> Y
  GSetMap p;   // A -> X
  GSet pi;     // Pi_f A
  std::vector<std::pair<int, std::vector<int>>> sections;  // (y, sigma over sorted fiber of y)
  GSetMap projection;          // Pi -> Y
  GSet pullback_corner;        // X x_Y Pi
  GSetMap evaluation;          // corner -> A, (x,(y,s)) -> s(x)
  GSetMap corner_projection;   // corner -> Pi
  GSetMap corner_to_source;    // corner -> X
};

constexpr int kDefaultSectionCap = 4096;

/// Pi_f A built from sections over the fibres of f.  Throws
/// SectionCapExceeded when the number of (y, sigma) pairs exceeds `cap`.
ExponentialDiagram dependent_product(const GSetMap& f, const GSetMap& p,
                                     int cap = kDefaultSectionCap);

std::optional<GSetMap> gset_isomorphism(const GSet& x, const GSet& y);

}  // namespace tambara
