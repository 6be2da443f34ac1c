#include <algorithm>
#include <functional>

#include "corpus.hpp"
#include "doctest.h"
#include "tambara/decompose.hpp"
#include "tambara/error.hpp"

using namespace tambara;

namespace {

FunctorPtr fp(const GroupPtr& g, int q) { return fixed_point_functor(GRing::trivial(g, FiniteRing::fq(q))); }

FunctorPtr fp4_times_coind_f2() {
  auto g = corpus::c2();
  return product({fixed_point_functor(GRing::galois(4, g)), coinduce(g, 0, fp(g->view(0).group, 2))});
}

std::vector<SubgroupId> factor_subgroups(const DecompositionResult& d) {
  std::vector<SubgroupId> out;
  for (auto& f : d.factors) out.push_back(f.subgroup);
  return out;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::InvalidInput;
}

}  // namespace

TEST_CASE("splitting along bottom idempotents") {
  auto t = fp4_times_coind_f2();
  // bottom F4 x (F2 x F2), first factor most significant
  ProductIndex idx({4, 4});
  int left = idx.encode(std::vector<int>{1, 0});
  int right = idx.encode(std::vector<int>{0, 3});
  auto s = split_by_bottom_idempotents(t, {left, right});
  REQUIRE(s.factors.size() == 2);
  CHECK(s.factors[0].functor->level(0).size() == 4);
  CHECK(s.factors[1].functor->level(0).size() == 4);
  CHECK(s.witness.is_isomorphism());

  CHECK(code_of([&] { split_by_bottom_idempotents(t, {idx.encode(std::vector<int>{2, 0})}); }) ==
        ErrorCode::NotIdempotent);
  CHECK(code_of([&] { split_by_bottom_idempotents(t, {left, idx.encode(std::vector<int>{0, 2})}); }) ==
        ErrorCode::NotFixed);
  CHECK(code_of([&] { split_by_bottom_idempotents(t, {left, idx.encode(std::vector<int>{1, 3})}); }) ==
        ErrorCode::NotOrthogonal);
  CHECK(code_of([&] { split_by_bottom_idempotents(t, {left}); }) == ErrorCode::NotComplete);
  auto green = corpus::forget_norms(t);
  CHECK(code_of([&] { split_by_bottom_idempotents(green, {left, right}); }) == ErrorCode::NoNorms);
}

TEST_CASE("full decomposition of small products") {
  auto c2 = corpus::c2();
  auto d = full_decomposition(fixed_point_functor(GRing::galois(4, c2)));
  CHECK(factor_subgroups(d) == std::vector<SubgroupId>{1});
  CHECK(d.witness.is_isomorphism());

  d = full_decomposition(fp4_times_coind_f2());
  CHECK(factor_subgroups(d) == std::vector<SubgroupId>{0, 1});
  CHECK(d.witness.is_isomorphism());
  CHECK(d.factors[0].functor->level(0).size() == 2);

  auto c4 = corpus::c4();
  auto t = product({coinduce(c4, 1, fixed_point_functor(GRing::galois(4, c4->view(1).group))),
                    coinduce(c4, 0, fp(c4->view(0).group, 3))});
  d = full_decomposition(t);
  CHECK(factor_subgroups(d) == std::vector<SubgroupId>{0, 1});
  CHECK(d.witness.is_isomorphism());

  auto s3 = corpus::s3();
  d = full_decomposition(coinduce(s3, 3, fp(s3->view(3).group, 2)));
  CHECK(factor_subgroups(d) == std::vector<SubgroupId>{1});
  CHECK(d.witness.is_isomorphism());
}

TEST_CASE("decomposition errors") {
  auto g = corpus::c2();
  CHECK(code_of([&] { full_decomposition(zero_functor(g)); }) == ErrorCode::ZeroFunctor);
  CHECK(code_of([&] { full_decomposition(green_counterexample(2, FiniteRing::zn(2))); }) == ErrorCode::NoNorms);
  CHECK(code_of([&] { detect_coinduction(green_counterexample(2, FiniteRing::zn(2))); }) == ErrorCode::NoNorms);
}

TEST_CASE("coinduction detection") {
  auto g = corpus::c3();
  auto ell = fp(g->view(0).group, 2);
  auto det = detect_coinduction(coinduce(g, 0, ell));
  CHECK(det.subgroup == 0);
  CHECK(det.unit.is_isomorphism());
  CHECK(functor_isomorphism(ell, det.ell).status == SearchStatus::Found);
  // the Weyl group of C3 in S3 twists F8; detection must return ell itself
  auto s3 = corpus::s3();
  SubgroupId c3 = 4;
  auto galois = fixed_point_functor(GRing::galois(8, s3->view(c3).group));
  auto twisted = detect_coinduction(coinduce(s3, c3, galois));
  CHECK(twisted.subgroup == c3);
  CHECK(functor_isomorphism(galois, twisted.ell).status == SearchStatus::Found);
  auto top = detect_coinduction(burnside_mod(g, 3));
  CHECK(top.subgroup == g->whole());
}

TEST_CASE("clarification") {
  auto g = corpus::c2();
  auto t = fp4_times_coind_f2();
  auto lambda_g = upward_closure(g, g->whole());
  auto c = clarify(t, lambda_g);
  CHECK(c.functor->level(0).size() == 4);
  CHECK(c.functor->level(1).size() == 2);
  CHECK(c.projection.is_morphism());
  auto everything = clarify(t, all_subgroups(g));
  CHECK(everything.projection.is_isomorphism());
  auto z = clarify(coinduce(g, 0, fp(g->view(0).group, 3)), lambda_g);
  CHECK(z.functor->is_zero());
}

TEST_CASE("factoring through the clarification") {
  auto g = corpus::c2();
  auto t = fp4_times_coind_f2();
  auto lambda_g = upward_closure(g, g->whole());
  auto target = fixed_point_functor(GRing::galois(4, g));
  auto homs = functor_morphisms(t, target);
  REQUIRE(homs.status == SearchStatus::Found);
  auto c = clarify(t, lambda_g);
  for (auto& f : homs.morphisms) {
    auto h = factor_through_clarification(f, lambda_g);
    CHECK(h.is_morphism());
    CHECK(compose(h, c.projection).maps == f.maps);
  }
  auto bad_target = identity_morphism(t);
  CHECK(code_of([&] { factor_through_clarification(bad_target, lambda_g); }) == ErrorCode::TargetNotClarified);
}

TEST_CASE("automorphisms diagonalize") {
  auto d = full_decomposition(fp4_times_coind_f2());
  auto autos = functor_morphisms(d.reassembled, d.reassembled);
  REQUIRE(autos.status == SearchStatus::Found);
  int count = 0;
  for (auto& phi : autos.morphisms) {
    if (!phi.is_bijective()) continue;
    ++count;
    auto parts = diagonalize_automorphism(phi, d);
    REQUIRE(parts.size() == d.factors.size());
    for (auto& p : parts) CHECK(p.is_isomorphism());
  }
  // Galois on F4 and the swap on Coind_e F2
  CHECK(count == 4);
  auto other = identity_morphism(fixed_point_functor(GRing::galois(4, corpus::c2())));
  CHECK(code_of([&] { diagonalize_automorphism(other, d); }) == ErrorCode::NotAutomorphism);
}

// Surrogate for field-like: restrictions injective, bottom level reduced
// (a product of fields) and no nontrivial idempotents at the top.
TEST_CASE("field-like surrogates are coinduced from fields") {
  auto reduced = [](const FiniteRing& r) {
    for (int a = 0; a < r.size(); ++a)
      if (a != r.zero() && r.mul(a, a) == r.zero()) return false;
    return true;
  };
  int seen = 0;
  for (auto& f : corpus::tambara_functors()) {
    const auto& t = *f.functor;
    if (t.is_zero() || t.level(0).size() > 729) continue;
    auto g = t.group;
    bool injective = true;
    for (SubgroupId h = 1; h < g->subgroup_count(); ++h) {
      auto images = t.res_table(0, h);
      std::sort(images.begin(), images.end());
      injective = injective && std::adjacent_find(images.begin(), images.end()) == images.end();
    }
    if (!injective || !reduced(t.level(0))) continue;
    if (idempotents(t.level(g->whole())).size() != 2) continue;
    ++seen;
    INFO(f.name);
    auto d = full_decomposition(f.functor);
    REQUIRE(d.factors.size() == 1);
    CHECK(d.factors[0].functor->level(0).is_field());
  }
  CHECK(seen >= 10);
}
