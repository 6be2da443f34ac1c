#include "tambara/axioms.hpp"

#include <cstdlib>
#include <future>
#include <optional>
#include <random>
#include <sstream>

#include "tambara/error.hpp"

namespace tambara {

const char* to_string(AxiomFamily f) {
  switch (f) {
    case AxiomFamily::Structure: return "structure";
    case AxiomFamily::Conjugation: return "conjugation";
    case AxiomFamily::Mackey: return "mackey";
    case AxiomFamily::NormDoubleCoset: return "norm_double_coset";
    case AxiomFamily::Frobenius: return "frobenius";
    case AxiomFamily::Exponential: return "exponential";
  }
  return "unknown";
}

bool AxiomReport::failed(AxiomFamily f) const {
  for (const auto& x : failures)
    if (x.family == f) return true;
  return false;
}

std::string AxiomReport::summary() const {
  if (ok()) return "all axioms hold";
  std::ostringstream out;
  for (std::size_t i = 0; i < failures.size(); ++i)
    out << (i ? "\n" : "") << to_string(failures[i].family) << ": " << failures[i].message;
  return out.str();
}

int default_threads() {
  const char* env = std::getenv("TAMBARA_THREADS");
  if (!env) return 1;
  int n = std::atoi(env);
  return n < 1 ? 1 : n;
}

namespace {

using Finding = std::optional<std::string>;

std::string edge(const FiniteGroup& g, SubgroupId k, SubgroupId h) {
  return g.subgroup_label(k) + "<=" + g.subgroup_label(h);
}

std::string elem(int a) { return "element " + std::to_string(a); }

Finding check_ring_hom(const FiniteRing& s, const FiniteRing& t, const std::vector<int>& f, const std::string& what) {
  if (f[s.zero()] != t.zero()) return what + " does not preserve 0";
  if (f[s.one()] != t.one()) return what + " does not preserve 1";
  for (int a = 0; a < s.size(); ++a)
    for (int b = a; b < s.size(); ++b) {
      if (f[s.add(a, b)] != t.add(f[a], f[b]))
        return what + " is not additive at " + std::to_string(a) + "," + std::to_string(b);
      if (f[s.mul(a, b)] != t.mul(f[a], f[b]))
        return what + " is not multiplicative at " + std::to_string(a) + "," + std::to_string(b);
    }
  return std::nullopt;
}

Finding structure(const TambaraData& t) {
  const auto& g = *t.group;
  const int m = g.subgroup_count();
  for (int k = 0; k < m; ++k)
    for (int h = 0; h < m; ++h) {
      if (k == h || !g.contains(k, h)) continue;
      const auto& lk = t.level(k);
      const auto& lh = t.level(h);
      if (auto f = check_ring_hom(lh, lk, t.res_table(k, h), "res " + edge(g, k, h))) return f;
      const auto& tr = t.tr_table(k, h);
      if (tr[lk.zero()] != lh.zero()) return "tr " + edge(g, k, h) + " does not preserve 0";
      for (int a = 0; a < lk.size(); ++a)
        for (int b = a; b < lk.size(); ++b)
          if (tr[lk.add(a, b)] != lh.add(tr[a], tr[b]))
            return "tr " + edge(g, k, h) + " is not additive at " + std::to_string(a) + "," + std::to_string(b);
      if (t.has_norms) {
        const auto& nm = t.nm_table(k, h);
        if (nm[lk.one()] != lh.one()) return "nm " + edge(g, k, h) + " does not preserve 1";
        for (int a = 0; a < lk.size(); ++a)
          for (int b = a; b < lk.size(); ++b)
            if (nm[lk.mul(a, b)] != lh.mul(nm[a], nm[b]))
              return "nm " + edge(g, k, h) + " is not multiplicative at " + std::to_string(a) + "," +
                     std::to_string(b);
      }
    }
  // functoriality along K < L < H
  for (int k = 0; k < m; ++k)
    for (int l = 0; l < m; ++l) {
      if (k == l || !g.contains(k, l)) continue;
      for (int h = 0; h < m; ++h) {
        if (h == l || !g.contains(l, h)) continue;
        std::string chain = g.subgroup_label(k) + "<=" + g.subgroup_label(l) + "<=" + g.subgroup_label(h);
        for (int a = 0; a < t.level(h).size(); ++a)
          if (t.res(k, l, t.res(l, h, a)) != t.res(k, h, a)) return "res is not functorial on " + chain + ", " + elem(a);
        for (int a = 0; a < t.level(k).size(); ++a) {
          if (t.tr(l, h, t.tr(k, l, a)) != t.tr(k, h, a)) return "tr is not functorial on " + chain + ", " + elem(a);
          if (t.has_norms && t.nm(l, h, t.nm(k, l, a)) != t.nm(k, h, a))
            return "nm is not functorial on " + chain + ", " + elem(a);
        }
      }
    }
  return std::nullopt;
}

Finding conjugation(const TambaraData& t) {
  const auto& g = *t.group;
  const int m = g.subgroup_count();
  for (int h = 0; h < m; ++h)
    for (GroupElement x : g.subgroup(h).elements)
      for (int a = 0; a < t.level(h).size(); ++a)
        if (t.conj(x, h, a) != a)
          return "c_" + std::to_string(x) + " is not the identity on level " + g.subgroup_label(h) + ", " + elem(a);
  for (GroupElement x : generators(g))
    for (int h = 0; h < m; ++h)
      if (auto f = check_ring_hom(t.level(h), t.level(g.conjugate(h, x)), t.conj_table(x, h),
                                  "c_" + std::to_string(x) + " on level " + g.subgroup_label(h)))
        return f;
  for (GroupElement x = 0; x < g.order(); ++x)
    for (GroupElement y = 0; y < g.order(); ++y)
      for (int h = 0; h < m; ++h) {
        SubgroupId yh = g.conjugate(h, y);
        GroupElement xy = g.mul(x, y);
        for (int a = 0; a < t.level(h).size(); ++a)
          if (t.conj(x, yh, t.conj(y, h, a)) != t.conj(xy, h, a))
            return "c_" + std::to_string(x) + " c_" + std::to_string(y) + " != c_" + std::to_string(xy) +
                   " on level " + g.subgroup_label(h) + ", " + elem(a);
      }
  for (GroupElement x = 0; x < g.order(); ++x)
    for (int k = 0; k < m; ++k)
      for (int h = 0; h < m; ++h) {
        if (k == h || !g.contains(k, h)) continue;
        SubgroupId xk = g.conjugate(k, x), xh = g.conjugate(h, x);
        std::string where = " for c_" + std::to_string(x) + " on " + edge(g, k, h);
        for (int a = 0; a < t.level(h).size(); ++a)
          if (t.conj(x, k, t.res(k, h, a)) != t.res(xk, xh, t.conj(x, h, a)))
            return "conjugation does not intertwine res" + where + ", " + elem(a);
        for (int a = 0; a < t.level(k).size(); ++a) {
          if (t.conj(x, h, t.tr(k, h, a)) != t.tr(xk, xh, t.conj(x, k, a)))
            return "conjugation does not intertwine tr" + where + ", " + elem(a);
          if (t.has_norms && t.conj(x, h, t.nm(k, h, a)) != t.nm(xk, xh, t.conj(x, k, a)))
            return "conjugation does not intertwine nm" + where + ", " + elem(a);
        }
      }
  return std::nullopt;
}

// res^H_K of tr^H_L (or nm^H_L) against the double coset sum (or product).
Finding double_coset(const TambaraData& t, bool norms) {
  const auto& g = *t.group;
  const int m = g.subgroup_count();
  for (int h = 0; h < m; ++h)
    for (int k = 0; k < m; ++k) {
      if (k == h || !g.contains(k, h)) continue;
      for (int l = 0; l < m; ++l) {
        if (l == h || !g.contains(l, h)) continue;
        const auto& lk = t.level(k);
        auto cosets = double_cosets(g, k, l, h);
        for (int a = 0; a < t.level(l).size(); ++a) {
          int lhs = norms ? t.res(k, h, t.nm(l, h, a)) : t.res(k, h, t.tr(l, h, a));
          int rhs = norms ? lk.one() : lk.zero();
          for (const auto& dc : cosets) {
            GroupElement x = dc.representative;
            SubgroupId inner = g.intersection(g.conjugate(k, g.inv(x)), l);  // x^-1 K x cap L
            SubgroupId outer = g.intersection(k, g.conjugate(l, x));         // K cap x L x^-1
            int v = t.conj(x, inner, t.res(inner, l, a));
            v = norms ? t.nm(outer, k, v) : t.tr(outer, k, v);
            rhs = norms ? lk.mul(rhs, v) : lk.add(rhs, v);
          }
          if (lhs != rhs)
            return std::string(norms ? "res nm" : "res tr") + " double coset formula fails for K=" +
                   g.subgroup_label(k) + ", L=" + g.subgroup_label(l) + ", H=" + g.subgroup_label(h) + ", " +
                   elem(a) + ": " + std::to_string(lhs) + " != " + std::to_string(rhs);
        }
      }
    }
  return std::nullopt;
}

Finding frobenius(const TambaraData& t) {
  const auto& g = *t.group;
  const int m = g.subgroup_count();
  for (int k = 0; k < m; ++k)
    for (int h = 0; h < m; ++h) {
      if (k == h || !g.contains(k, h)) continue;
      const auto& lk = t.level(k);
      const auto& lh = t.level(h);
      for (int x = 0; x < lk.size(); ++x)
        for (int y = 0; y < lh.size(); ++y)
          if (t.tr(k, h, lk.mul(t.res(k, h, y), x)) != lh.mul(y, t.tr(k, h, x)))
            return "tr(res(y) x) != y tr(x) on " + edge(g, k, h) + " for x=" + std::to_string(x) +
                   ", y=" + std::to_string(y);
    }
  return std::nullopt;
}

// Multisets of K-classes of subgroups M of K with total index at most b.
void fibre_shapes(const FiniteGroup& g, SubgroupId k, int bound, std::vector<std::vector<SubgroupId>>& out) {
  std::vector<SubgroupId> classes;
  for (int mm = 0; mm < g.subgroup_count(); ++mm) {
    if (!g.contains(mm, k)) continue;
    bool least = true;
    for (GroupElement x : g.subgroup(k).elements)
      if (g.conjugate(mm, x) < mm) least = false;
    if (least) classes.push_back(mm);
  }
  std::vector<SubgroupId> current;
  auto rec = [&](auto&& self, std::size_t from, int used) -> void {
    out.push_back(current);
    for (std::size_t i = from; i < classes.size(); ++i) {
      int index = g.subgroup(k).order() / g.subgroup(classes[i]).order();
      if (used + index > bound) continue;
      current.push_back(classes[i]);
      self(self, i, used + index);
      current.pop_back();
    }
  };
  rec(rec, 0, 0);
}

Finding exponential(const TambaraData& t, const AxiomConfig& cfg, std::int64_t& diagrams) {
  const auto& group = t.group;
  const auto& g = *group;
  const int m = g.subgroup_count();
  for (int h = 0; h < m; ++h)
    for (int k = 0; k < m; ++k) {
      if (k == h || !g.contains(k, h)) continue;
      GSetMap f = projection_map(group, k, h);
      std::vector<std::vector<SubgroupId>> shapes;
      fibre_shapes(g, k, cfg.fiber_bound, shapes);
      for (const auto& shape : shapes) {
        GSet a = GSet::empty(group);
        std::vector<int> images;
        if (!shape.empty()) {
          std::vector<GSet> parts;
          for (SubgroupId mm : shape) {
            parts.push_back(GSet::cosets(group, mm));
            auto p = projection_map(group, mm, k);
            images.insert(images.end(), p.images.begin(), p.images.end());
          }
          a = GSet::disjoint_union(parts);
        }
        GSetMap p{a, f.source, images};
        std::optional<ExponentialDiagram> d;
        try {
          d = dependent_product(f, p, cfg.section_cap);
        } catch (const Error& e) {
          if (e.code() == ErrorCode::SectionCapExceeded) continue;
          throw;
        }
        ++diagrams;
        AlongMap tp(t, p, MapKind::Tr), nf(t, f, MapKind::Nm);
        AlongMap re(t, d->evaluation, MapKind::Res), nf2(t, d->corner_projection, MapKind::Nm),
            tq(t, d->projection, MapKind::Tr);
        std::vector<int> radix;
        for (SubgroupId s : orbit_levels(a)) radix.push_back(t.level(s).size());
        ProductIndex idx(radix);
        const long long total = idx.total();
        std::mt19937_64 rng(0x7a3b + diagrams);
        const bool exhaustive = total <= cfg.exhaustive_cap;
        const long long count = exhaustive ? total : cfg.samples;
        std::string shape_name;
        for (SubgroupId mm : shape) shape_name += (shape_name.empty() ? "" : "+") + ("G/" + g.subgroup_label(mm));
        if (shape_name.empty()) shape_name = "empty";
        for (long long i = 0; i < count; ++i) {
          std::vector<int> x(radix.size());
          if (exhaustive) {
            x = idx.decode(static_cast<int>(i));
          } else {
            for (std::size_t j = 0; j < radix.size(); ++j) x[j] = static_cast<int>(rng() % radix[j]);
          }
          auto lhs = nf(tp(x));
          auto rhs = tq(nf2(re(x)));
          if (lhs != rhs) {
            std::ostringstream msg;
            msg << "exponential formula fails for f: G/" << g.subgroup_label(k) << " -> G/" << g.subgroup_label(h)
                << ", A = " << shape_name << ", element (";
            for (std::size_t j = 0; j < x.size(); ++j) msg << (j ? "," : "") << x[j];
            msg << "): " << lhs[0] << " != " << rhs[0];
            return msg.str();
          }
        }
      }
    }
  return std::nullopt;
}

}  // namespace

AxiomReport check_axioms(const TambaraData& t, const AxiomConfig& cfg) {
  t.check_shape();
  AxiomReport report;
  report.checked.assign(kAxiomFamilies, true);
  if (!t.has_norms) {
    report.checked[static_cast<int>(AxiomFamily::NormDoubleCoset)] = false;
    report.checked[static_cast<int>(AxiomFamily::Exponential)] = false;
  }
  std::vector<Finding> found(kAxiomFamilies);
  std::int64_t diagrams = 0;
  auto run = [&](int family) -> Finding {
    switch (static_cast<AxiomFamily>(family)) {
      case AxiomFamily::Structure: return structure(t);
      case AxiomFamily::Conjugation: return conjugation(t);
      case AxiomFamily::Mackey: return double_coset(t, false);
      case AxiomFamily::NormDoubleCoset: return double_coset(t, true);
      case AxiomFamily::Frobenius: return frobenius(t);
      case AxiomFamily::Exponential: return exponential(t, cfg, diagrams);
    }
    return std::nullopt;
  };
  if (cfg.threads > 1) {
    std::vector<std::future<Finding>> jobs(kAxiomFamilies);
    for (int f = 0; f < kAxiomFamilies; ++f)
      if (report.checked[f]) jobs[f] = std::async(std::launch::async, run, f);
    for (int f = 0; f < kAxiomFamilies; ++f)
      if (report.checked[f]) found[f] = jobs[f].get();
  } else {
    for (int f = 0; f < kAxiomFamilies; ++f)
      if (report.checked[f]) found[f] = run(f);
  }
  for (int f = 0; f < kAxiomFamilies; ++f)
    if (found[f]) report.failures.push_back({static_cast<AxiomFamily>(f), *found[f]});
  report.diagrams = diagrams;
  return report;
}

}  // namespace tambara
