#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tambara/group.hpp"

namespace tambara {

class FiniteRing;
using RingPtr = std::shared_ptr<const FiniteRing>;

/// Finite commutative ring given by addition and multiplication tables.
/// Tables are stored as 16-bit indices, which caps the size at 65535.
class FiniteRing {
 public:
  static constexpr int kMaxSize = 65535;

  /// Validates every ring axiom exhaustively.
  static RingPtr from_tables(const std::vector<std::vector<int>>& add,
                             const std::vector<std::vector<int>>& mul, std::string label = "",
                             std::vector<std::string> element_labels = {});
  static RingPtr zn(int n);
  /// F_q for q = p^k with k <= 4 and p in {2,3,5,7}; element sum c_i p^i is
  /// the polynomial sum c_i x^i modulo the Conway polynomial.
  static RingPtr fq(int q);
  /// Elements are indexed with the first factor most significant.
  static RingPtr product(const std::vector<RingPtr>& factors, std::string label = "");
  static RingPtr zero_ring();

  int size() const { return size_; }
  int add(int a, int b) const { return add_[a * size_ + b]; }
  int mul(int a, int b) const { return mul_[a * size_ + b]; }
  int neg(int a) const { return neg_[a]; }
  int sub(int a, int b) const { return add(a, neg(b)); }
  int zero() const { return zero_; }
  int one() const { return one_; }
  bool is_zero_ring() const { return size_ == 1; }
  const std::string& label() const { return label_; }
  const std::vector<std::string>& element_labels() const { return element_labels_; }
  /// k-fold sum of a
  int times(int a, long long k) const;
  int pow(int a, long long k) const;
  int additive_order(int a) const;
  bool is_unit(int a) const;
  bool is_field() const;
  /// All elements as (add, mul) tables in row form, for serialization.
  std::vector<std::vector<int>> add_table() const;
  std::vector<std::vector<int>> mul_table() const;
  /// Non-empty for rings made by product(): the factor rings.
  const std::vector<RingPtr>& factors() const { return factors_; }

  /// Trusted constructor for tables produced internally; skips the O(n^3)
  /// axiom check.
  static RingPtr from_flat(int size, std::vector<int> add, std::vector<int> mul, std::string label,
                           std::vector<std::string> element_labels = {});

 private:
  FiniteRing() = default;
  void finish();

  int size_ = 0;
  std::vector<std::uint16_t> add_;
  std::vector<std::uint16_t> mul_;
  std::vector<int> neg_;
  int zero_ = 0;
  int one_ = 0;
  std::string label_;
  std::vector<std::string> element_labels_;
  std::vector<RingPtr> factors_;
};

/// Mixed radix index for products, first coordinate most significant.
struct ProductIndex {
  std::vector<int> radix;

  explicit ProductIndex(std::vector<int> r) : radix(std::move(r)) {}
  long long total() const;
  int encode(std::span<const int> parts) const;
  std::vector<int> decode(int index) const;
};

struct RingHom {
  RingPtr source;
  RingPtr target;
  std::vector<int> images;

  int operator()(int a) const { return images[a]; }
  bool is_homomorphism() const;
  bool is_bijective() const;
};

/// A subring given by a list of elements closed under the ring operations,
/// with its own unit (possibly an idempotent of the ambient ring).
struct Subring {
  RingPtr ring;
  std::vector<int> embedding;  // subring index -> ambient index, ascending
  std::vector<int> index_of;   // ambient index -> subring index or -1
};

Subring make_subring(const FiniteRing& r, std::vector<int> elements, int unit);
/// e * R for an idempotent e, with unit e.
Subring principal_subring(const FiniteRing& r, int e);

struct Quotient {
  RingPtr ring;
  std::vector<int> projection;       // ambient -> quotient
  std::vector<int> representatives;  // quotient -> minimal ambient element
};

std::vector<int> ideal_generated(const FiniteRing& r, std::span<const int> generators);
Quotient quotient(const FiniteRing& r, const std::vector<int>& ideal);

/// Finite commutative ring with an action of G by ring automorphisms,
/// stored as action[g * size + x].
struct GRing {
  GroupPtr group;
  RingPtr ring;
  std::vector<int> action;

  int act(GroupElement g, int x) const { return action[g * ring->size() + x]; }
  /// Throws InvalidInput when the action is not by automorphisms.
  void validate() const;
  static GRing trivial(GroupPtr group, RingPtr ring);
  /// F_{p^n} with the cyclic group C_n acting through Frobenius.
  static GRing galois(int q, GroupPtr cyclic);
  std::vector<int> fixed_elements(SubgroupId h) const;
};

struct IdempotentReport {
  int element = 0;
  SubgroupId isotropy = 0;
  bool orthogonal_orbit = false;
  std::optional<SubgroupId> type;
};

std::vector<int> idempotents(const FiniteRing& r);
std::vector<int> primitive_idempotents(const FiniteRing& r);
IdempotentReport classify_idempotent(const GRing& r, int d);
bool is_clarified(const GRing& r);
bool is_lambda_clarified(const GRing& r, const UpwardClosedSet& lambda);

/// Fun(G/H, S) with the twisted left action
/// (g.f)(c) = (rep(c)^-1 g rep(c')) . f(c'), c' the coset of g^-1 rep(c).
/// S is a ring with an action of view(h).group.
GRing coinduce_gring(const GroupPtr& group, SubgroupId h, const GRing& s);
/// Restriction to K, as a ring with an action of view(k).group.
GRing gring_restrict(SubgroupId k, const GRing& r);
GRing gring_product(const GRing& a, const GRing& b);
GRing gring_product(const std::vector<GRing>& parts);

struct GRingFactor {
  SubgroupId subgroup = 0;
  GRing ring;                 // clarified, over view(subgroup).group
  int idempotent = 0;         // d_H in the input ring; ring = d_H R
  int class_idempotent = 0;   // sum of the G-translates of d_H
  std::vector<int> embedding; // factor index -> input index
};

struct GRingDecomposition {
  std::vector<GRingFactor> factors;
  GRing reassembled;            // product of the coinductions, in factor order
  std::vector<int> witness;     // reassembled index -> input index
};

GRingDecomposition decompose_gring(const GRing& r);

/// Checks that `map` is a bijective equivariant ring map a -> b.
bool is_gring_isomorphism(const GRing& a, const GRing& b, const std::vector<int>& map);
bool is_gring_homomorphism(const GRing& a, const GRing& b, const std::vector<int>& map);

}  // namespace tambara
