#pragma once

#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

namespace tambara {

using GroupElement = int;
using SubgroupId = int;

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

struct Subgroup {
  SubgroupId id = 0;
  std::vector<GroupElement> elements;  // sorted ascending, always starts with the identity 0
  std::vector<bool> member;            // indexed by group element

  int order() const { return static_cast<int>(elements.size()); }
  bool contains(GroupElement g) const { return member[g]; }
};

struct DoubleCoset {
  GroupElement representative;          // minimal element of the double coset
  std::vector<GroupElement> elements;   // sorted
};

/// A subgroup H of some group G, re-presented as a group in its own right.
/// Element i of `group` is `to_parent[i]` in G; `lift[j]` is the G-subgroup
/// corresponding to subgroup j of `group`.
struct SubgroupView {
  GroupPtr group;
  std::vector<GroupElement> to_parent;
  std::vector<int> from_parent;  // -1 outside H
  std::vector<SubgroupId> lift;
};

/// Finite group given by a multiplication table with identity 0.  The
/// subgroup lattice, cosets and conjugation action on subgroups are computed
/// eagerly at construction; everything is immutable afterwards.
class FiniteGroup {
 public:
  /// `table` is row-major: table[a][b] = a*b.  Identity must be element 0.
  static GroupPtr from_table(const std::vector<std::vector<int>>& table, std::string name = "");
  /// Closes the generators under composition; elements are ordered
  /// lexicographically by their images, so the identity is element 0.
  /// Composition is (a*b)(x) = a(b(x)).
  static GroupPtr from_permutations(const std::vector<std::vector<int>>& generators,
                                    std::string name = "");

  int order() const { return order_; }
  const std::string& name() const { return name_; }
  GroupElement identity() const { return 0; }
  GroupElement mul(GroupElement a, GroupElement b) const { return table_[a * order_ + b]; }
  GroupElement inv(GroupElement a) const { return inverse_[a]; }
  /// g x g^-1
  GroupElement conjugate_element(GroupElement g, GroupElement x) const {
    return mul(mul(g, x), inv(g));
  }
  const std::vector<int>& flat_table() const { return table_; }
  std::vector<std::vector<int>> table() const;
  bool same_table(const FiniteGroup& other) const { return table_ == other.table_; }
  int element_order(GroupElement g) const;

  // Subgroup lattice, sorted by (order, element list).
  const std::vector<Subgroup>& subgroups() const { return subgroups_; }
  const Subgroup& subgroup(SubgroupId id) const { return subgroups_[id]; }
  int subgroup_count() const { return static_cast<int>(subgroups_.size()); }
  SubgroupId trivial() const { return 0; }
  SubgroupId whole() const { return subgroup_count() - 1; }
  /// -1 when the elements do not form a subgroup.
  SubgroupId find_subgroup(std::span<const GroupElement> elements) const;
  SubgroupId generated_subgroup(std::span<const GroupElement> generators) const;
  /// g H g^-1
  SubgroupId conjugate(SubgroupId h, GroupElement g) const {
    return conjugates_[g * subgroup_count() + h];
  }
  SubgroupId intersection(SubgroupId a, SubgroupId b) const;
  /// K ⊆ H
  bool contains(SubgroupId k, SubgroupId h) const {
    return containment_[k * subgroup_count() + h];
  }
  /// some conjugate of K lies in H
  bool is_subconjugate(SubgroupId k, SubgroupId h) const {
    return subconjugacy_[k * subgroup_count() + h];
  }
  bool are_conjugate(SubgroupId a, SubgroupId b) const {
    return class_rep_[a] == class_rep_[b];
  }
  /// Minimal subgroup (canonical order) in the conjugacy class.
  SubgroupId class_representative(SubgroupId h) const { return class_rep_[h]; }
  std::vector<SubgroupId> class_representatives() const;
  /// Minimal g with g from g^-1 = to, or -1.
  GroupElement conjugator(SubgroupId from, SubgroupId to) const;
  bool is_normal(SubgroupId h) const;
  /// True when the subgroups are totally ordered by inclusion.
  bool lattice_is_chain() const;

  // Left cosets gH, ordered by their minimal element.
  int coset_count(SubgroupId h) const { return order_ / subgroups_[h].order(); }
  int coset_of(SubgroupId h, GroupElement g) const { return coset_index_[h * order_ + g]; }
  GroupElement coset_representative(SubgroupId h, int coset) const {
    return coset_reps_[h][coset];
  }

  /// H as a group in its own right, cached.
  const SubgroupView& view(SubgroupId h) const;

  /// A short human readable id: "e", "G" or the canonical index.
  std::string subgroup_label(SubgroupId h) const;

 private:
  FiniteGroup() = default;
  void build(std::vector<int> table, std::string name);

  int order_ = 0;
  std::string name_;
  std::vector<int> table_;
  std::vector<int> inverse_;
  std::vector<Subgroup> subgroups_;
  std::vector<SubgroupId> conjugates_;
  std::vector<bool> containment_;
  std::vector<bool> subconjugacy_;
  std::vector<SubgroupId> class_rep_;
  std::vector<int> coset_index_;
  std::vector<std::vector<GroupElement>> coset_reps_;

  mutable std::mutex view_mutex_;
  mutable std::vector<std::unique_ptr<SubgroupView>> views_;
};

/// Upward closed (and conjugation closed) set of subgroups.
struct UpwardClosedSet {
  GroupPtr group;
  std::vector<bool> members;  // indexed by SubgroupId

  bool contains(SubgroupId h) const { return members[h]; }
  std::vector<SubgroupId> list() const;
  bool is_valid() const;
};

struct WeylGroup {
  GroupPtr group;                       // N_G(H)/H
  std::vector<GroupElement> section;    // coset representative in G per element
};

std::vector<Subgroup> subgroups(const FiniteGroup& g);

/// Double cosets K\M/H of subgroups K, H inside `ambient` (default: the
/// whole group).  Representatives are minimal elements; the identity double
/// coset comes first.
std::vector<DoubleCoset> double_cosets(const FiniteGroup& g, SubgroupId k, SubgroupId h,
                                       SubgroupId ambient = -1);

bool is_subconjugate(const FiniteGroup& g, SubgroupId k, SubgroupId h);
UpwardClosedSet upward_closure(const GroupPtr& g, SubgroupId h);
UpwardClosedSet all_subgroups(const GroupPtr& g);
WeylGroup weyl_group(const FiniteGroup& g, SubgroupId h);
/// Greedy generating set: scan elements in order, keep those not yet generated.
std::vector<GroupElement> generators(const FiniteGroup& g);

GroupPtr cyclic_group(int n);
GroupPtr dihedral_group(int n);  // order 2n
GroupPtr symmetric_group(int n);
GroupPtr klein_four_group();
GroupPtr direct_product(const FiniteGroup& a, const FiniteGroup& b);

}  // namespace tambara
