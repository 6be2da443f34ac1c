#include <map>

#include "doctest.h"
#include "tambara/gset.hpp"

using namespace tambara;

TEST_CASE("coset sets and orbit-stabilizer") {
  for (auto g : {cyclic_group(4), klein_four_group(), symmetric_group(3), dihedral_group(4)})
    for (int h = 0; h < g->subgroup_count(); ++h) {
      auto x = GSet::cosets(g, h);
      CHECK(x.size() == g->coset_count(h));
      REQUIRE(x.orbits().size() == 1);
      CHECK(x.orbits()[0].stabilizer == h);
      for (int p = 0; p < x.size(); ++p)
        CHECK(g->subgroup(x.stabilizer(p)).order() * x.size() == g->order());
    }
}

TEST_CASE("disjoint unions and restriction") {
  auto g = symmetric_group(3);
  auto x = GSet::disjoint_union({GSet::cosets(g, 0), GSet::cosets(g, 1), GSet::cosets(g, g->whole())});
  CHECK(x.size() == 6 + 3 + 1);
  CHECK(x.orbits().size() == 3);
  // S3/e restricted to C3 splits into two free orbits
  SubgroupId c3 = 4;
  REQUIRE(g->subgroup(c3).order() == 3);
  auto r = GSet::cosets(g, 0).restrict_to(c3);
  CHECK(r.orbits().size() == 2);
}

TEST_CASE("pullback sizes match a direct count") {
  auto g = klein_four_group();
  for (int k = 0; k < g->subgroup_count(); ++k)
    for (int h = 0; h < g->subgroup_count(); ++h) {
      if (!g->contains(k, h)) continue;
      auto f = projection_map(g, k, h);
      auto q = projection_map(g, 0, h);
      CHECK(f.is_equivariant());
      auto pb = pullback(f, q);
      int count = 0;
      for (int a = 0; a < f.source.size(); ++a)
        for (int b = 0; b < q.source.size(); ++b) count += f(a) == q(b);
      CHECK(pb.set.size() == count);
      for (int i = 0; i < pb.set.size(); ++i) CHECK(f(pb.first(i)) == q(pb.second(i)));
    }
}

TEST_CASE("dependent product counts sections") {
  auto g = symmetric_group(3);
  for (int k = 0; k < g->subgroup_count(); ++k)
    for (int h = 0; h < g->subgroup_count(); ++h) {
      if (!g->contains(k, h) || k == h) continue;
      auto f = projection_map(g, k, h);
      // A = X u X folded onto X
      auto a = GSet::disjoint_union({f.source, f.source});
      std::vector<int> images(a.size());
      for (int i = 0; i < a.size(); ++i) images[i] = i % f.source.size();
      GSetMap p{a, f.source, images};
      REQUIRE(p.is_equivariant());
      auto d = dependent_product(f, p);
      // each fibre has |H:K| points, each with two preimages
      long long per = 1;
      for (int i = 0; i < g->subgroup(h).order() / g->subgroup(k).order(); ++i) per *= 2;
      CHECK(d.pi.size() == per * f.target.size());
      CHECK(d.projection.is_equivariant());
      CHECK(d.evaluation.is_equivariant());
      for (int c = 0; c < d.pullback_corner.size(); ++c)
        CHECK(p(d.evaluation(c)) == d.corner_to_source(c));
    }
}

TEST_CASE("section cap is enforced") {
  auto g = cyclic_group(4);
  auto f = projection_map(g, 0, g->whole());
  auto a = GSet::disjoint_union({f.source, f.source, f.source});
  std::vector<int> images(a.size());
  for (int i = 0; i < a.size(); ++i) images[i] = i % 4;
  CHECK_THROWS_AS(dependent_product(f, GSetMap{a, f.source, images}, 10), std::exception);
}

TEST_CASE("G-set isomorphism respects conjugacy") {
  auto g = symmetric_group(3);
  CHECK(gset_isomorphism(GSet::cosets(g, 1), GSet::cosets(g, 2)).has_value());
  CHECK(!gset_isomorphism(GSet::cosets(g, 1), GSet::cosets(g, 4)).has_value());
  auto c = conjugation_map(g, 1, 3);
  CHECK(c.is_equivariant());
  auto id = identity_map(GSet::cosets(g, 1));
  CHECK(compose(id, id).images == id.images);
}
