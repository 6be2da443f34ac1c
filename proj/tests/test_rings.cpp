#include <set>

#include "corpus.hpp"
#include "doctest.h"
#include "tambara/error.hpp"
#include "tambara/ring.hpp"

using namespace tambara;

namespace {

int brute_idempotents(const FiniteRing& r) {
  int n = 0;
  for (int a = 0; a < r.size(); ++a) n += r.mul(a, a) == a;
  return n;
}

bool brute_field(const FiniteRing& r) {
  if (r.size() < 2) return false;
  for (int a = 0; a < r.size(); ++a) {
    if (a == r.zero()) continue;
    bool inv = false;
    for (int b = 0; b < r.size(); ++b) inv = inv || r.mul(a, b) == r.one();
    if (!inv) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("finite fields and Z/n") {
  for (int q : {2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 49, 81}) {
    auto f = FiniteRing::fq(q);
    CAPTURE(q);
    CHECK(f->size() == q);
    CHECK(f->is_field());
    CHECK(brute_field(*f));
  }
  for (int n : {1, 4, 6, 12}) {
    auto z = FiniteRing::zn(n);
    CHECK(z->size() == n);
    CHECK(z->is_field() == brute_field(*z));
    CHECK(z->times(z->one(), n) == z->zero());
  }
  CHECK_THROWS_AS(FiniteRing::fq(6), Error);
}

TEST_CASE("from_tables validates") {
  CHECK_NOTHROW(FiniteRing::from_tables({{0, 1}, {1, 0}}, {{0, 0}, {0, 1}}));
  CHECK_THROWS_AS(FiniteRing::from_tables({{0, 1}, {1, 0}}, {{0, 0}, {1, 1}}), Error);
  CHECK_THROWS_AS(FiniteRing::from_tables({{0, 1}, {1, 1}}, {{0, 0}, {0, 1}}), Error);
}

TEST_CASE("non-associative addition is rejected") {
  // a commutative loop of order 6 with identity 0
  std::vector<std::vector<int>> add{{0, 1, 2, 3, 4, 5}, {1, 0, 3, 2, 5, 4}, {2, 3, 4, 5, 0, 1},
                                    {3, 2, 5, 4, 1, 0}, {4, 5, 0, 1, 3, 2}, {5, 4, 1, 0, 2, 3}};
  std::vector<std::vector<int>> mul(6, std::vector<int>(6, 0));
  for (int a = 0; a < 6; ++a) {
    mul[1][a] = a;
    mul[a][1] = a;
  }
  CHECK_THROWS_WITH_AS(FiniteRing::from_tables(add, mul), doctest::Contains("addition is not associative"), Error);
}

TEST_CASE("validation accepts every product ring") {
  auto p = FiniteRing::product({FiniteRing::zn(4), FiniteRing::fq(9), FiniteRing::zn(6)});
  CHECK_NOTHROW(FiniteRing::from_tables(p->add_table(), p->mul_table()));
  CHECK_THROWS_AS(FiniteRing::product({FiniteRing::fq(81), FiniteRing::fq(81)}), Error);
}

TEST_CASE("products and idempotents") {
  auto p = FiniteRing::product({FiniteRing::fq(4), FiniteRing::zn(3)});
  CHECK(p->size() == 12);
  CHECK(static_cast<int>(idempotents(*p).size()) == brute_idempotents(*p));
  CHECK(idempotents(*p).size() == 4);
  CHECK(primitive_idempotents(*p).size() == 2);
  CHECK(idempotents(*FiniteRing::zn(12)).size() == 4);
  CHECK(primitive_idempotents(*FiniteRing::zn(12)).size() == 2);
  ProductIndex idx({4, 3});
  CHECK(idx.encode(std::vector<int>{2, 1}) == 7);
  CHECK(idx.decode(7) == std::vector<int>{2, 1});
}

TEST_CASE("ideals, quotients and subrings") {
  auto z = FiniteRing::zn(12);
  std::vector<int> gen{4};
  auto ideal = ideal_generated(*z, gen);
  CHECK(ideal == std::vector<int>{0, 4, 8});
  auto q = quotient(*z, ideal);
  CHECK(q.ring->size() == 4);
  for (int a = 0; a < 12; ++a) CHECK(q.projection[a] == q.projection[a % 4]);
  auto piece = principal_subring(*z, 9);
  CHECK(piece.ring->size() == 4);
  CHECK(piece.embedding[piece.ring->one()] == 9);
}

TEST_CASE("G-ring corpus actions are by automorphisms") {
  auto rings = corpus::grings();
  CHECK(rings.size() >= 10);
  for (auto& r : rings) {
    CAPTURE(r.name);
    CHECK_NOTHROW(r.ring.validate());
  }
}

TEST_CASE("coinduction and restriction of G-rings") {
  auto g = corpus::c2();
  auto f3 = GRing::trivial(g->view(0).group, FiniteRing::zn(3));
  auto c = coinduce_gring(g, 0, f3);
  CHECK(c.ring->size() == 9);
  auto r = gring_restrict(0, c);
  CHECK(r.ring->size() == 9);
  for (int a = 0; a < 9; ++a) CHECK(r.act(0, a) == a);
  // the generator swaps the two coordinates
  ProductIndex idx({3, 3});
  for (int a = 0; a < 9; ++a) {
    auto v = idx.decode(a);
    CHECK(c.act(1, a) == idx.encode(std::vector<int>{v[1], v[0]}));
  }
  auto whole = gring_restrict(g->whole(), c);
  CHECK(whole.action == c.action);
  auto prod = gring_product(GRing::trivial(g, FiniteRing::zn(2)), GRing::trivial(g, FiniteRing::zn(3)));
  CHECK(idempotents(*prod.ring).size() == 4);
}

TEST_CASE("idempotent types") {
  auto g = corpus::s3();
  auto c = coinduce_gring(g, 1, GRing::trivial(g->view(1).group, FiniteRing::zn(2)));
  CHECK(!is_clarified(c));
  // the three coordinate idempotents have type conjugate to H; 0 and 1 have type G
  int typed = 0, coordinate = 0;
  for (int e : idempotents(*c.ring)) {
    auto rep = classify_idempotent(c, e);
    if (!rep.type) continue;
    ++typed;
    if (e == c.ring->zero() || e == c.ring->one()) {
      CHECK(*rep.type == g->whole());
    } else {
      CHECK(g->are_conjugate(*rep.type, 1));
      ++coordinate;
    }
  }
  CHECK(typed == 5);
  CHECK(coordinate == 3);
  CHECK(is_clarified(GRing::trivial(g, FiniteRing::zn(2))));
  CHECK(is_lambda_clarified(c, upward_closure(g, 0)));
  CHECK(!is_lambda_clarified(c, upward_closure(g, g->whole())));
}

TEST_CASE("decompose_gring round trip") {
  for (auto& r : corpus::grings()) {
    CAPTURE(r.name);
    auto d = decompose_gring(r.ring);
    CHECK(is_gring_isomorphism(d.reassembled, r.ring, d.witness));
    std::set<SubgroupId> classes;
    for (auto& f : d.factors) {
      CHECK(is_clarified(f.ring));
      CHECK(f.subgroup == r.ring.group->class_representative(f.subgroup));
      CHECK(classes.insert(f.subgroup).second);
    }
  }
}

TEST_CASE("type H idempotents map to zero or type H") {
  auto g = corpus::c2();
  auto e = g->view(0).group;
  auto src = coinduce_gring(g, 0, GRing::trivial(e, FiniteRing::zn(2)));
  auto tgt = gring_product(coinduce_gring(g, 0, GRing::trivial(e, FiniteRing::fq(4))),
                           coinduce_gring(g, 0, GRing::trivial(e, FiniteRing::zn(2))));
  SearchOptions all;
  all.limit = 0;
  auto homs = gring_morphisms(src, tgt, all);
  REQUIRE(homs.status == SearchStatus::Found);
  CHECK(!homs.solutions.empty());
  for (auto& sol : homs.solutions) {
    CHECK(is_gring_homomorphism(src, tgt, sol[0]));
    for (int d : idempotents(*src.ring)) {
      auto t = classify_idempotent(src, d).type;
      if (!t) continue;
      int image = sol[0][d];
      if (image == tgt.ring->zero()) continue;
      auto ti = classify_idempotent(tgt, image).type;
      REQUIRE(ti.has_value());
      CHECK(g->are_conjugate(*ti, *t));
    }
  }
}

TEST_CASE("upward closure of idempotent types") {
  for (auto& r : corpus::grings()) {
    const auto& g = *r.ring.group;
    std::set<SubgroupId> types;
    for (int d : idempotents(*r.ring.ring))
      if (auto t = classify_idempotent(r.ring, d).type) types.insert(g.class_representative(*t));
    for (SubgroupId h : types)
      for (SubgroupId k : g.class_representatives())
        if (g.is_subconjugate(h, k)) {
          CAPTURE(r.name);
          CHECK(types.count(k) == 1);
        }
  }
}

TEST_CASE("no maps down") {
  auto g = corpus::c2();
  auto e = g->view(0).group;
  SearchOptions all;
  all.limit = 0;
  auto coind = coinduce_gring(g, 0, GRing::trivial(e, FiniteRing::zn(2)));
  auto field = GRing::trivial(g, FiniteRing::zn(2));
  // Coind_e -> Coind_G with G not subconjugate to e: none
  CHECK(gring_morphisms(coind, field, all).status == SearchStatus::None);
  // the other direction is the diagonal
  CHECK(gring_morphisms(field, coind, all).solutions.size() == 1);
  auto c3 = corpus::c3();
  auto coind3 = coinduce_gring(c3, 0, GRing::trivial(c3->view(0).group, FiniteRing::zn(2)));
  CHECK(gring_morphisms(coind3, GRing::galois(8, c3), all).status == SearchStatus::None);
}
