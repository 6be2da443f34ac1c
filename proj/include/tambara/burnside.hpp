#pragma once

#include <vector>

#include "tambara/functor.hpp"

namespace tambara {

/// Burnside Tambara functor with coefficients reduced mod N.
///
/// Level H starts from (Z/N)^r with basis the transitive H-sets H/L, one per
/// H-conjugacy class of subgroups L of H.  Norms of integer lifts do not
/// respect reduction mod N in general, so every level is further divided by
/// the smallest Tambara ideal containing N.  Products, restrictions and
/// norms go through the table of marks with exact integer arithmetic.
struct BurnsideLevel {
  std::vector<SubgroupId> basis;     // class representatives L, ascending id
  std::vector<int> projection;       // coordinate index -> level element
  std::vector<int> representatives;  // level element -> minimal coordinate index
  /// coordinates[i] of a coordinate index, first basis entry most significant
  std::vector<int> coordinates(int index) const;
  int encode(const std::vector<int>& coordinates) const;
  int modulus = 0;
};

struct BurnsideFunctor {
  FunctorPtr functor;
  std::vector<BurnsideLevel> levels;

  /// Element of level H with the given coefficients on the basis.
  int element(SubgroupId h, const std::vector<int>& coefficients) const;
  /// The class of H/L in level H.
  int orbit(SubgroupId h, SubgroupId l) const;
};

constexpr int kMaxBurnsideOrder = 12;

/// Throws UnsupportedGroup for |G| > 12 or a level with more than 4096
/// coordinate vectors, InvalidInput for N < 2.
BurnsideFunctor burnside_detail(const GroupPtr& group, int n);
FunctorPtr burnside_mod(const GroupPtr& group, int n);

}  // namespace tambara
