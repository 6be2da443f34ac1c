#include "tambara/decompose.hpp"

#include <algorithm>

#include "tambara/error.hpp"

namespace tambara {

namespace {

// Unit of nm_e^H(d) at level H, d itself at the bottom.
int norm_unit(const TambaraData& t, SubgroupId h, int d) { return h == 0 ? d : t.nm(0, h, d); }

std::vector<int> inverse_embedding(const std::vector<int>& embedding, int ambient) {
  std::vector<int> inv(ambient, -1);
  for (std::size_t i = 0; i < embedding.size(); ++i) inv[embedding[i]] = static_cast<int>(i);
  return inv;
}

// Level tables of a product functor for reading and writing tuples.
ProductIndex product_index(const std::vector<FunctorPtr>& parts, SubgroupId h) {
  std::vector<int> radix;
  for (const auto& p : parts) radix.push_back(p->levels[h]->size());
  return ProductIndex(radix);
}

}  // namespace

SplitResult split_by_bottom_idempotents(const FunctorPtr& tp, const std::vector<int>& d) {
  const auto& t = *tp;
  const auto& g = *t.group;
  require(t.has_norms, ErrorCode::NoNorms, "splitting along bottom idempotents needs norms");
  require(!d.empty(), ErrorCode::NotComplete, "no idempotents given");
  const auto& bottom = t.level(0);
  int sum = bottom.zero();
  for (std::size_t i = 0; i < d.size(); ++i) {
    require(d[i] >= 0 && d[i] < bottom.size(), ErrorCode::InvalidInput, "idempotent index out of range");
    require(bottom.mul(d[i], d[i]) == d[i], ErrorCode::NotIdempotent,
            "bottom element " + std::to_string(d[i]) + " is not idempotent");
    for (GroupElement x = 0; x < g.order(); ++x)
      require(t.conj(x, 0, d[i]) == d[i], ErrorCode::NotFixed,
              "bottom idempotent " + std::to_string(d[i]) + " is not G-fixed");
    for (std::size_t j = 0; j < i; ++j)
      require(bottom.mul(d[i], d[j]) == bottom.zero(), ErrorCode::NotOrthogonal,
              "bottom idempotents " + std::to_string(d[j]) + " and " + std::to_string(d[i]) + " are not orthogonal");
    sum = bottom.add(sum, d[i]);
  }
  require(sum == bottom.one(), ErrorCode::NotComplete, "bottom idempotents do not sum to 1");

  const int m = g.subgroup_count();
  SplitResult out;
  std::vector<FunctorPtr> parts;
  for (int di : d) {
    std::vector<int> units(m);
    for (int h = 0; h < m; ++h) units[h] = norm_unit(t, h, di);
    out.factors.push_back(idempotent_piece(tp, units));
    parts.push_back(out.factors.back().functor);
  }
  for (int h = 0; h < m; ++h) {
    const auto& lvl = t.level(h);
    int total = lvl.zero();
    for (std::size_t i = 0; i < d.size(); ++i) {
      int u = norm_unit(t, h, d[i]);
      for (std::size_t j = 0; j < i; ++j)
        require(lvl.mul(u, norm_unit(t, h, d[j])) == lvl.zero(), ErrorCode::VerificationFailed,
                "norms of the idempotents are not orthogonal at level " + g.subgroup_label(h));
      total = lvl.add(total, u);
    }
    require(total == lvl.one(), ErrorCode::VerificationFailed,
            "norms of the idempotents are not complete at level " + g.subgroup_label(h));
  }
  out.product = product(parts);
  out.witness = TambaraMorphism{out.product, tp, std::vector<std::vector<int>>(m)};
  for (int h = 0; h < m; ++h) {
    auto idx = product_index(parts, h);
    const auto& lvl = t.level(h);
    auto& map = out.witness.maps[h];
    map.resize(out.product->levels[h]->size());
    for (int a = 0; a < static_cast<int>(map.size()); ++a) {
      auto xs = idx.decode(a);
      int acc = lvl.zero();
      for (std::size_t i = 0; i < xs.size(); ++i) acc = lvl.add(acc, out.factors[i].embedding[h][xs[i]]);
      map[a] = acc;
    }
  }
  std::string why = out.witness.verify();
  require(why.empty() && out.witness.is_bijective(), ErrorCode::VerificationFailed,
          "product of the pieces is not isomorphic to the input: " + why);
  return out;
}

Detection detect_coinduction(const FunctorPtr& tp) {
  const auto& t = *tp;
  const auto& group = t.group;
  const auto& g = *group;
  require(t.has_norms, ErrorCode::NoNorms, "coinduction detection needs norms");
  GRing bottom = t.bottom();
  const auto& ring = *bottom.ring;

  SubgroupId best = g.whole();
  int chosen = ring.one();
  if (!ring.is_zero_ring()) {
    for (int d : idempotents(ring)) {
      if (d == ring.zero()) continue;
      auto rep = classify_idempotent(bottom, d);
      if (!rep.type) continue;
      // the orbit must sum to 1
      std::vector<int> orbit;
      for (GroupElement x = 0; x < g.order(); ++x) orbit.push_back(bottom.act(x, d));
      std::sort(orbit.begin(), orbit.end());
      orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
      int sum = ring.zero();
      for (int e : orbit) sum = ring.add(sum, e);
      if (sum != ring.one()) continue;
      SubgroupId h = *rep.type;
      auto key = [&](SubgroupId s) { return std::make_pair(g.subgroup(s).order(), s); };
      // ties go to the largest index, the identity coset of a coinduction
      if (key(h) <= key(best) && h != g.whole()) {
        best = h;
        chosen = d;
      }
    }
  }

  Detection out;
  out.subgroup = best;
  if (best == g.whole()) {
    out.ell = tp;
    out.coinduced = tp;
    out.unit = identity_morphism(tp);
    return out;
  }

  const auto& view = g.view(best);
  const int local_count = view.group->subgroup_count();
  auto restricted = restrict_functor(best, tp);
  std::vector<int> units(local_count);
  for (int j = 0; j < local_count; ++j) units[j] = norm_unit(t, view.lift[j], chosen);
  Piece piece = idempotent_piece(restricted, units);
  out.ell = piece.functor;
  out.coinduced = coinduce(group, best, out.ell);

  const int m = g.subgroup_count();
  std::vector<std::vector<int>> index_of(local_count);
  for (int j = 0; j < local_count; ++j)
    index_of[j] = inverse_embedding(piece.embedding[j], t.level(view.lift[j]).size());
  out.unit = TambaraMorphism{tp, out.coinduced, std::vector<std::vector<int>>(m)};
  for (int k = 0; k < m; ++k) {
    GSet orbits = GSet::cosets(group, k).restrict_to(best);
    std::vector<int> radix;
    for (SubgroupId s : orbit_levels(orbits)) radix.push_back(out.ell->levels[s]->size());
    ProductIndex idx(radix);
    auto& map = out.unit.maps[k];
    map.resize(t.level(k).size());
    for (int a = 0; a < t.level(k).size(); ++a) {
      std::vector<int> parts;
      for (const auto& o : orbits.orbits()) {
        GroupElement x = g.coset_representative(k, o.base);
        SubgroupId l = view.lift[o.stabilizer];        // H cap xKx^-1
        SubgroupId lp = g.conjugate(l, g.inv(x));      // inside K
        int v = t.conj(x, lp, t.res(lp, k, a));
        v = t.level(l).mul(units[o.stabilizer], v);
        parts.push_back(index_of[o.stabilizer][v]);
      }
      map[a] = idx.encode(parts);
    }
  }
  std::string why = out.unit.verify();
  require(why.empty() && out.unit.is_bijective(), ErrorCode::VerificationFailed,
          "unit map to the coinduced functor is not an isomorphism: " + why);
  return out;
}

DecompositionResult full_decomposition(const FunctorPtr& tp) {
  const auto& t = *tp;
  const auto& group = t.group;
  const auto& g = *group;
  require(t.has_norms, ErrorCode::NoNorms, "the product decomposition needs norms");
  require(!t.level(0).is_zero_ring(), ErrorCode::ZeroFunctor, "the zero functor has no decomposition");
  auto bottom = decompose_gring(t.bottom());
  std::vector<int> classes;
  for (const auto& f : bottom.factors) classes.push_back(f.class_idempotent);
  auto split = split_by_bottom_idempotents(tp, classes);

  DecompositionResult out;
  std::vector<Detection> found;
  for (std::size_t i = 0; i < split.factors.size(); ++i) {
    auto det = detect_coinduction(split.factors[i].functor);
    require(det.subgroup == bottom.factors[i].subgroup, ErrorCode::VerificationFailed,
            "factor for " + g.subgroup_label(bottom.factors[i].subgroup) + " was detected as coinduced from " +
                g.subgroup_label(det.subgroup));
    require(is_clarified(det.ell->bottom()), ErrorCode::VerificationFailed,
            "factor for " + g.subgroup_label(det.subgroup) + " is not clarified");
    out.factors.push_back({det.subgroup, det.ell});
    out.coinduced.push_back(det.coinduced);
    found.push_back(std::move(det));
  }
  out.reassembled = product(out.coinduced);

  const int m = g.subgroup_count();
  std::vector<TambaraMorphism> back;
  for (const auto& det : found) back.push_back(inverse(det.unit));
  out.witness = TambaraMorphism{out.reassembled, tp, std::vector<std::vector<int>>(m)};
  for (int h = 0; h < m; ++h) {
    auto idx = product_index(out.coinduced, h);
    const auto& lvl = t.level(h);
    auto& map = out.witness.maps[h];
    map.resize(out.reassembled->levels[h]->size());
    for (int a = 0; a < static_cast<int>(map.size()); ++a) {
      auto ys = idx.decode(a);
      int acc = lvl.zero();
      for (std::size_t i = 0; i < ys.size(); ++i)
        acc = lvl.add(acc, split.factors[i].embedding[h][back[i].maps[h][ys[i]]]);
      map[a] = acc;
    }
  }
  std::string why = out.witness.verify();
  require(why.empty() && out.witness.is_bijective(), ErrorCode::VerificationFailed,
          "reassembled functor is not isomorphic to the input: " + why);
  return out;
}

Clarification clarify(const FunctorPtr& tp, const UpwardClosedSet& lambda) {
  const auto& t = *tp;
  const auto& g = *t.group;
  require(t.has_norms, ErrorCode::NoNorms, "clarification needs norms");
  const int m = g.subgroup_count();
  Clarification out;
  auto keep_all = [&] {
    out.functor = tp;
    out.projection = identity_morphism(tp);
    out.embedding = out.projection.maps;
    out.kept = t.level(0).one();
    return out;
  };
  if (t.level(0).is_zero_ring()) return keep_all();
  const auto& bottom = t.level(0);
  auto dec = decompose_gring(t.bottom());
  int kept = bottom.zero();
  for (const auto& f : dec.factors)
    if (lambda.contains(f.subgroup)) kept = bottom.add(kept, f.class_idempotent);
  if (kept == bottom.one()) return keep_all();
  out.kept = kept;
  if (kept == bottom.zero()) {
    out.functor = zero_functor(t.group, true);
    out.projection = TambaraMorphism{tp, out.functor, {}};
    for (int h = 0; h < m; ++h) {
      out.projection.maps.push_back(std::vector<int>(t.level(h).size(), 0));
      out.embedding.push_back({t.level(h).zero()});
    }
    return out;
  }
  std::vector<int> units(m);
  for (int h = 0; h < m; ++h) units[h] = norm_unit(t, h, kept);
  Piece piece = idempotent_piece(tp, units);
  out.functor = piece.functor;
  out.embedding = piece.embedding;
  out.projection = TambaraMorphism{tp, out.functor, std::vector<std::vector<int>>(m)};
  for (int h = 0; h < m; ++h) {
    auto inv = inverse_embedding(piece.embedding[h], t.level(h).size());
    auto& map = out.projection.maps[h];
    map.resize(t.level(h).size());
    for (int a = 0; a < t.level(h).size(); ++a) map[a] = inv[t.level(h).mul(units[h], a)];
  }
  std::string why = out.projection.verify();
  require(why.empty(), ErrorCode::VerificationFailed, "clarification projection is not a morphism: " + why);
  return out;
}

TambaraMorphism factor_through_clarification(const TambaraMorphism& f, const UpwardClosedSet& lambda) {
  const auto& s = *f.target;
  require(s.has_norms, ErrorCode::NoNorms, "clarification needs norms");
  require(s.level(0).is_zero_ring() || is_lambda_clarified(s.bottom(), lambda), ErrorCode::TargetNotClarified,
          "target of the morphism is not clarified for the given subgroup set");
  auto c = clarify(f.source, lambda);
  const auto& t = *f.source;
  const int m = t.subgroup_count();
  TambaraMorphism out{c.functor, f.target, std::vector<std::vector<int>>(m)};
  for (int h = 0; h < m; ++h) {
    for (int a = 0; a < t.level(h).size(); ++a)
      require(f.maps[h][a] == f.maps[h][c.embedding[h][c.projection.maps[h][a]]], ErrorCode::FactorizationFailed,
              "morphism does not vanish on the discarded factors at level " + t.group->subgroup_label(h));
    auto& map = out.maps[h];
    for (int x : c.embedding[h]) map.push_back(f.maps[h][x]);
  }
  std::string why = out.verify();
  require(why.empty(), ErrorCode::FactorizationFailed, "induced map is not a morphism: " + why);
  for (int h = 0; h < m; ++h)
    for (int a = 0; a < t.level(h).size(); ++a)
      require(out.maps[h][c.projection.maps[h][a]] == f.maps[h][a], ErrorCode::FactorizationFailed,
              "induced map does not recover the morphism");
  return out;
}

std::vector<TambaraMorphism> diagonalize_automorphism(const TambaraMorphism& phi, const DecompositionResult& d) {
  const auto& r = *d.reassembled;
  const int m = r.subgroup_count();
  require(phi.maps.size() == static_cast<std::size_t>(m), ErrorCode::NotAutomorphism, "wrong number of level maps");
  for (int h = 0; h < m; ++h)
    require(static_cast<int>(phi.maps[h].size()) == r.level(h).size() && phi.source->levels[h]->size() == r.level(h).size() &&
                phi.target->levels[h]->size() == r.level(h).size(),
            ErrorCode::NotAutomorphism, "map is not an endomorphism of the reassembled functor");
  require(phi.is_bijective(), ErrorCode::NotAutomorphism, "map is not bijective");
  const std::size_t n = d.coinduced.size();
  for (int h = 0; h < m; ++h) {
    auto idx = product_index(d.coinduced, h);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<int> e(n);
      for (std::size_t j = 0; j < n; ++j) e[j] = j == i ? d.coinduced[j]->level(h).one() : d.coinduced[j]->level(h).zero();
      int unit = idx.encode(e);
      require(phi.maps[h][unit] == unit, ErrorCode::CrossTermFound,
              "map moves the unit of factor " + std::to_string(i) + " at level " + r.group->subgroup_label(h));
    }
  }
  std::string why = phi.verify();
  require(why.empty(), ErrorCode::NotAutomorphism, "map is not a morphism: " + why);
  std::vector<TambaraMorphism> out;
  for (std::size_t i = 0; i < n; ++i) {
    TambaraMorphism part{d.coinduced[i], d.coinduced[i], std::vector<std::vector<int>>(m)};
    for (int h = 0; h < m; ++h) {
      auto idx = product_index(d.coinduced, h);
      std::vector<int> slot(n);
      for (std::size_t j = 0; j < n; ++j) slot[j] = d.coinduced[j]->level(h).zero();
      for (int x = 0; x < d.coinduced[i]->level(h).size(); ++x) {
        slot[i] = x;
        part.maps[h].push_back(idx.decode(phi.maps[h][idx.encode(slot)])[i]);
      }
    }
    require(part.is_isomorphism(), ErrorCode::VerificationFailed, "diagonal entry is not an automorphism");
    out.push_back(std::move(part));
  }
  return out;
}

}  // namespace tambara
