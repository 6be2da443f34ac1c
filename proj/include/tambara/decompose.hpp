#pragma once

#include <vector>

#include "tambara/functor.hpp"

namespace tambara {

struct SplitResult {
  std::vector<Piece> factors;  // one per bottom idempotent, in input order
  FunctorPtr product;          // product of the factor functors
  TambaraMorphism witness;     // product -> input
};

/// Splits T along a complete family of orthogonal G-fixed bottom
/// idempotents d_i; factor i has level H equal to nm_e^H(d_i) T(H).
/// Errors: NoNorms, NotIdempotent, NotFixed, NotOrthogonal, NotComplete.
SplitResult split_by_bottom_idempotents(const FunctorPtr& t, const std::vector<int>& d);

struct Detection {
  SubgroupId subgroup = 0;  // H, a subgroup of G
  FunctorPtr ell;           // functor for view(H).group
  FunctorPtr coinduced;     // Coind_H ell
  TambaraMorphism unit;     // T -> Coind_H ell, a verified isomorphism
};

/// Finds the least subgroup H (by order, then canonical index) carrying a
/// bottom idempotent whose G-orbit is a complete orthogonal family, and
/// exhibits T as Coind_H of the corresponding piece.  H = G when there is
/// no proper such H.  Among idempotents of that type the largest index is
/// used, which is the identity coset when T was built by coinduce.
Detection detect_coinduction(const FunctorPtr& t);

struct DecompositionFactor {
  SubgroupId subgroup = 0;  // conjugacy class representative
  FunctorPtr functor;       // clarified, over view(subgroup).group
};

struct DecompositionResult {
  std::vector<DecompositionFactor> factors;  // ascending subgroup id
  std::vector<FunctorPtr> coinduced;         // Coind_H factor, in factor order
  FunctorPtr reassembled;                    // product of the coinduced factors
  TambaraMorphism witness;                   // reassembled -> input
};

/// Errors: NoNorms, ZeroFunctor.
DecompositionResult full_decomposition(const FunctorPtr& t);

struct Clarification {
  FunctorPtr functor;
  TambaraMorphism projection;  // input -> functor, levelwise surjective
  std::vector<std::vector<int>> embedding;  // functor -> input, per level
  int kept = 0;                              // bottom idempotent D with functor = D T
};

/// Lambda-clarification: the piece D T where D is the sum of the class
/// idempotents of the decomposition factors whose subgroup lies in Lambda.
/// The zero functor when nothing survives.
Clarification clarify(const FunctorPtr& t, const UpwardClosedSet& lambda);

/// The unique g with g after projection = f, for f into a Lambda-clarified
/// target.  Errors: TargetNotClarified, FactorizationFailed.
TambaraMorphism factor_through_clarification(const TambaraMorphism& f, const UpwardClosedSet& lambda);

/// Splits an automorphism of D.reassembled into one automorphism per
/// factor Coind_H(R_H).  Errors: NotAutomorphism, CrossTermFound.
std::vector<TambaraMorphism> diagonalize_automorphism(const TambaraMorphism& phi, const DecompositionResult& d);

}  // namespace tambara
