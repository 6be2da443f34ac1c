#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tambara/group.hpp"
#include "tambara/gset.hpp"
#include "tambara/ring.hpp"
#include "tambara/search.hpp"

namespace tambara {

/// Levelwise data of a Mackey/Green/Tambara functor.  Levels are stored for
/// every subgroup.  res/tr/nm tables are indexed by k * m + h for K inside H
/// (K == H holds the identity) and are empty otherwise; conj[g * m + h] maps
/// level(H) to level(gHg^-1).
struct TambaraData {
  GroupPtr group;
  std::vector<RingPtr> levels;
  bool has_norms = true;
  std::vector<std::vector<int>> res_tables;
  std::vector<std::vector<int>> tr_tables;
  std::vector<std::vector<int>> nm_tables;
  std::vector<std::vector<int>> conj_tables;
  std::string label;

  int subgroup_count() const { return group->subgroup_count(); }
  const FiniteRing& level(SubgroupId h) const { return *levels[h]; }
  int res(SubgroupId k, SubgroupId h, int a) const { return res_tables[k * subgroup_count() + h][a]; }
  int tr(SubgroupId k, SubgroupId h, int a) const { return tr_tables[k * subgroup_count() + h][a]; }
  int nm(SubgroupId k, SubgroupId h, int a) const { return nm_tables[k * subgroup_count() + h][a]; }
  int conj(GroupElement g, SubgroupId h, int a) const { return conj_tables[g * subgroup_count() + h][a]; }
  const std::vector<int>& res_table(SubgroupId k, SubgroupId h) const { return res_tables[k * subgroup_count() + h]; }
  const std::vector<int>& tr_table(SubgroupId k, SubgroupId h) const { return tr_tables[k * subgroup_count() + h]; }
  const std::vector<int>& nm_table(SubgroupId k, SubgroupId h) const { return nm_tables[k * subgroup_count() + h]; }
  const std::vector<int>& conj_table(GroupElement g, SubgroupId h) const {
    return conj_tables[g * subgroup_count() + h];
  }

  /// level(e) with G acting through conjugation
  GRing bottom() const;
  bool is_zero() const;
  /// Throws InvalidInput unless every table has the right size and range.
  void check_shape() const;
};

using FunctorPtr = std::shared_ptr<const TambaraData>;

/// Empty data with identity maps on the diagonal and for c_h, h in H.
TambaraData blank_functor(GroupPtr group, std::vector<RingPtr> levels, bool has_norms);
/// Fills in missing res/tr/nm edges by composing through intermediate
/// subgroups and missing conjugations by composing known ones.  Throws
/// InvalidInput when something cannot be derived.
void complete_functor(TambaraData& t);

struct TambaraMorphism {
  FunctorPtr source;
  FunctorPtr target;
  std::vector<std::vector<int>> maps;  // per subgroup

  int operator()(SubgroupId h, int a) const { return maps[h][a]; }
  /// Empty string when the maps form a morphism, otherwise a description of
  /// the first failure.
  std::string verify() const;
  bool is_morphism() const { return verify().empty(); }
  bool is_bijective() const;
  bool is_isomorphism() const { return is_bijective() && is_morphism(); }
};

TambaraMorphism identity_morphism(const FunctorPtr& t);
TambaraMorphism compose(const TambaraMorphism& g, const TambaraMorphism& f);  // g after f
TambaraMorphism inverse(const TambaraMorphism& f);

FunctorPtr fixed_point_functor(const GRing& r);
FunctorPtr zero_functor(GroupPtr group, bool has_norms = true);
/// Levelwise product, each level indexed with the first factor most significant.
FunctorPtr product(const std::vector<FunctorPtr>& factors);
/// T is a functor for view(h).group.
FunctorPtr coinduce(const GroupPtr& group, SubgroupId h, const FunctorPtr& t);
/// Result is a functor for view(k).group.
FunctorPtr restrict_functor(SubgroupId k, const FunctorPtr& t);
/// T a functor for view(h).group; returns the same data viewed as a functor
/// for view(g h g^-1).group, level L' carrying T(g^-1 L' g).
FunctorPtr conjugate_functor(const GroupPtr& group, SubgroupId h, GroupElement g, const FunctorPtr& t);
/// Two-level C_p Green functor: top S x S, bottom Coind_e S, transfer the
/// orbit sum into the left factor, restriction the left projection followed
/// by the diagonal.
FunctorPtr green_counterexample(int p, const RingPtr& s);

/// Projection u * T for a family of fixed idempotents u(H) in each level
/// (unit u(H)), with maps restricted from T.  Returns the factor and the
/// inclusion tables factor -> T per level.
struct Piece {
  FunctorPtr functor;
  std::vector<std::vector<int>> embedding;
};
Piece idempotent_piece(const FunctorPtr& t, const std::vector<int>& units);

enum class MapKind { Res, Tr, Nm };

/// Levels of R(X): one level per orbit, at the stabilizer of the orbit base.
std::vector<SubgroupId> orbit_levels(const GSet& x);

/// A structure map R(Y) -> R(X) (Res) or R(X) -> R(Y) (Tr, Nm) along an
/// arbitrary map of G-sets f : X -> Y, extended from the stored maps in the
/// product-preserving way.  Elements of R(X) are vectors with one entry per
/// orbit of X.
class AlongMap {
 public:
  AlongMap(const TambaraData& t, const GSetMap& f, MapKind kind);
  std::vector<int> operator()(std::span<const int> x) const;

 private:
  const TambaraData* t_;
  MapKind kind_;
  int out_size_ = 0;
  std::vector<int> target_orbit_;            // per source orbit
  std::vector<std::vector<int>> composite_;  // per source orbit, precomposed table
  std::vector<SubgroupId> target_levels_;    // per target orbit, tr and nm only
};

/// Value of an element of R(X) at a point x, i.e. c_h applied to the
/// component at the orbit base b where x = h.b.
int value_at(const TambaraData& t, const GSet& x, std::span<const int> element, int point);

struct MackeyDecomposition {
  FunctorPtr lhs;  // Res_K Coind_H T
  FunctorPtr rhs;  // product over K\G/H of Coind_{K_g}^K Res_{K_g} c_g T
  std::vector<GroupElement> representatives;
  TambaraMorphism iso;  // rhs -> lhs
};

/// Explicit isomorphism Res_K Coind_H T with the product over double cosets,
/// identity double coset first.  T is a functor for view(h).group.
MackeyDecomposition mackey_decomposition_iso(const GroupPtr& group, SubgroupId k, SubgroupId h,
                                             const FunctorPtr& t);

/// Multi-sorted algebra of a functor: add and mul per level, constants 0 and
/// 1, unary res, tr, conj and (optionally) nm.
Algebra functor_algebra(const TambaraData& t, bool with_norms);

struct MorphismSearch {
  SearchStatus status = SearchStatus::None;
  std::vector<TambaraMorphism> morphisms;
};

MorphismSearch functor_isomorphism(const FunctorPtr& a, const FunctorPtr& b, std::int64_t budget = 1000000);
/// limit 0 enumerates every morphism.
MorphismSearch functor_morphisms(const FunctorPtr& a, const FunctorPtr& b, std::size_t limit = 0,
                                 std::int64_t budget = 1000000);

/// Ring homomorphisms of G-rings, same conventions as functor_morphisms.
SearchResult gring_morphisms(const GRing& a, const GRing& b, const SearchOptions& options);

}  // namespace tambara
