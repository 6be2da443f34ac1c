#include <set>

#include "corpus.hpp"
#include "doctest.h"
#include "tambara/burnside.hpp"
#include "tambara/error.hpp"
#include "tambara/functor.hpp"

using namespace tambara;

namespace {

long long ipow(long long a, int p) {
  long long r = 1;
  for (int i = 0; i < p; ++i) r *= a;
  return r;
}

// |top| for Burnside C_p mod N: (Z/N)[x]/(x^2 - p x) divided by the ideal
// generated by nm(N) = N + ((N^p - N)/p) x, found by closing under + and *.
int oracle_top_size(int p, int n) {
  long long k = ((ipow(n, p) - n) / p) % n;
  auto mul = [&](std::pair<int, int> u, std::pair<int, int> v) {
    // (a + b x)(c + d x) = ac + (ad + bc + p bd) x
    long long a = u.first, b = u.second, c = v.first, d = v.second;
    return std::pair<int, int>((a * c) % n, (a * d + b * c + p * b * d) % n);
  };
  std::set<std::pair<int, int>> ideal{{0, 0}};
  std::vector<std::pair<int, int>> todo{{0, static_cast<int>(k)}};
  while (!todo.empty()) {
    auto u = todo.back();
    todo.pop_back();
    if (!ideal.insert(u).second) continue;
    for (auto v : std::vector<std::pair<int, int>>(ideal.begin(), ideal.end()))
      todo.push_back({(u.first + v.first) % n, (u.second + v.second) % n});
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) todo.push_back(mul(u, {a, b}));
  }
  return n * n / static_cast<int>(ideal.size());
}

}  // namespace

TEST_CASE("Burnside C_p mod p^2 formulas") {
  for (int p : {2, 3}) {
    int n = p * p;
    auto g = cyclic_group(p);
    auto b = burnside_detail(g, n);
    const auto& t = *b.functor;
    const auto& top = t.level(1);
    int x = b.orbit(1, 0);
    int one = b.orbit(1, 1);
    CHECK(one == top.one());
    CHECK(t.res(0, 1, x) == b.element(0, {p % n}));
    CHECK(t.tr(0, 1, t.level(0).one()) == x);
    CHECK(top.mul(x, x) == top.times(x, p));
    for (int a = 0; a < n; ++a) {
      long long coeff = ((ipow(a, p) - a) / p) % n;
      int expected = top.add(top.times(one, a), top.times(x, coeff));
      CHECK(t.nm(0, 1, b.element(0, {a})) == expected);
    }
  }
}

TEST_CASE("Burnside level sizes") {
  for (int p : {2, 3})
    for (int n : {2, 3, 4, 9}) {
      CAPTURE(p);
      CAPTURE(n);
      auto t = burnside_mod(cyclic_group(p), n);
      CHECK(t->level(0).size() == n);
      CHECK(t->level(1).size() == oracle_top_size(p, n));
    }
  CHECK_THROWS_AS(burnside_mod(cyclic_group(2), 1), Error);
  CHECK_THROWS_AS(burnside_mod(cyclic_group(13), 2), Error);
}

TEST_CASE("fixed point functor maps") {
  for (auto& r : corpus::grings()) {
    CAPTURE(r.name);
    auto t = fixed_point_functor(r.ring);
    const auto& g = *r.ring.group;
    const auto& bottom = *r.ring.ring;
    auto e_to = [&](SubgroupId h, int a) { return h == 0 ? a : t->res(0, h, a); };
    for (int h = 0; h < g.subgroup_count(); ++h) {
      CHECK(t->level(h).size() == static_cast<int>(r.ring.fixed_elements(h).size()));
      if (h == 0) continue;
      for (int a = 0; a < bottom.size(); ++a) {
        int sum = bottom.zero(), prod = bottom.one();
        for (int c = 0; c < g.coset_count(0); ++c) {
          GroupElement x = g.coset_representative(0, c);
          if (!g.subgroup(h).contains(x)) continue;
          sum = bottom.add(sum, r.ring.act(x, a));
          prod = bottom.mul(prod, r.ring.act(x, a));
        }
        CHECK(e_to(h, t->tr(0, h, a)) == sum);
        CHECK(e_to(h, t->nm(0, h, a)) == prod);
      }
    }
  }
}

TEST_CASE("structure maps along fold maps") {
  auto t = fixed_point_functor(GRing::galois(4, corpus::c2()));
  auto g = t->group;
  auto x = GSet::cosets(g, 0);
  auto two = GSet::disjoint_union({x, x});
  std::vector<int> images(two.size());
  for (int i = 0; i < two.size(); ++i) images[i] = i % x.size();
  GSetMap fold{two, x, images};
  const auto& r = t->level(0);
  AlongMap tr(*t, fold, MapKind::Tr), nm(*t, fold, MapKind::Nm), res(*t, fold, MapKind::Res);
  for (int a = 0; a < r.size(); ++a) {
    CHECK(res(std::vector<int>{a}) == std::vector<int>{a, a});
    for (int b = 0; b < r.size(); ++b) {
      CHECK(tr(std::vector<int>{a, b}) == std::vector<int>{r.add(a, b)});
      CHECK(nm(std::vector<int>{a, b}) == std::vector<int>{r.mul(a, b)});
    }
  }
  auto proj = projection_map(g, 0, 1);
  AlongMap ptr(*t, proj, MapKind::Tr);
  for (int a = 0; a < r.size(); ++a) CHECK(ptr(std::vector<int>{a}) == std::vector<int>{t->tr(0, 1, a)});
}

TEST_CASE("coinduction and restriction") {
  auto g = corpus::c2();
  auto f3 = fixed_point_functor(GRing::trivial(g->view(0).group, FiniteRing::zn(3)));
  auto c = coinduce(g, 0, f3);
  CHECK(c->level(0).size() == 9);
  CHECK(c->level(1).size() == 3);
  auto r = restrict_functor(0, c);
  CHECK(r->level(0).size() == 9);
  auto same = restrict_functor(g->whole(), c);
  CHECK(same->level(1).size() == 3);
  auto id = identity_morphism(c);
  CHECK(id.is_isomorphism());
}

TEST_CASE("morphism algebra") {
  auto t = fixed_point_functor(GRing::galois(4, corpus::c2()));
  auto autos = functor_morphisms(t, t);
  REQUIRE(autos.status == SearchStatus::Found);
  CHECK(autos.morphisms.size() == 2);
  for (auto& f : autos.morphisms) {
    CHECK(f.is_isomorphism());
    auto back = compose(inverse(f), f);
    CHECK(back.maps == identity_morphism(t).maps);
  }
}

TEST_CASE("products and the zero functor") {
  auto g = corpus::c2();
  auto z = zero_functor(g);
  CHECK(z->is_zero());
  auto a = fixed_point_functor(GRing::galois(4, g));
  auto p = product({a, burnside_mod(g, 2)});
  CHECK(p->level(0).size() == 8);
  CHECK(p->level(1).size() == 4);
  CHECK(!p->is_zero());
}

TEST_CASE("Green counterexample tables") {
  auto t = green_counterexample(2, FiniteRing::zn(2));
  CHECK(!t->has_norms);
  CHECK(t->level(0).size() == 4);
  CHECK(t->level(1).size() == 4);
  auto b = t->bottom();
  ProductIndex idx({2, 2});
  for (int a = 0; a < 4; ++a) {
    auto v = idx.decode(a);
    CHECK(b.act(1, a) == idx.encode(std::vector<int>{v[1], v[0]}));
    // res after tr: the orbit sum on the diagonal
    int s = (v[0] + v[1]) % 2;
    CHECK(t->res(0, 1, t->tr(0, 1, a)) == idx.encode(std::vector<int>{s, s}));
  }
  int kernel = 0;
  for (int a = 0; a < 4; ++a) kernel += t->res(0, 1, a) == t->level(0).zero();
  CHECK(kernel == 2);
}

TEST_CASE("Mackey decomposition isomorphism on C2") {
  auto g = corpus::c2();
  for (int k = 0; k < 2; ++k)
    for (int h = 0; h < 2; ++h)
      for (auto& t : corpus::h_functors(g, h)) {
        auto m = mackey_decomposition_iso(g, k, h, t.functor);
        CHECK(m.iso.is_isomorphism());
        CHECK(m.representatives.size() == double_cosets(*g, k, h).size());
      }
}

TEST_CASE("conjugate functors") {
  auto g = corpus::s3();
  auto t = burnside_mod(g->view(1).group, 2);
  for (GroupElement x = 0; x < g->order(); ++x) {
    auto c = conjugate_functor(g, 1, x, t);
    CHECK(c->group->same_table(*g->view(g->conjugate(1, x)).group));
    CHECK(c->level(0).size() == t->level(0).size());
  }
}
