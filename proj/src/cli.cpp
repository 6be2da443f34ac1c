#include "tambara/cli.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "tambara/axioms.hpp"
#include "tambara/decompose.hpp"
#include "tambara/error.hpp"
#include "tambara/io.hpp"

namespace tambara {

namespace {

struct Options {
  int fiber_bound = 2;
  std::int64_t budget = 1000000;
  std::string out;
  std::string lambda;
  std::string chain;
  std::string from;
  std::string to;
  std::vector<std::string> paths;
};

int exit_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::NoNorms:
    case ErrorCode::ZeroFunctor:
    case ErrorCode::UnsupportedGroup:
    case ErrorCode::SectionCapExceeded:
      return kExitUnsupported;
    case ErrorCode::Timeout:
      return kExitTimeout;
    case ErrorCode::VerificationFailed:
    case ErrorCode::FactorizationFailed:
      return kExitAxiom;
    default:
      return kExitInput;
  }
}

std::string sizes(const TambaraData& t) {
  std::ostringstream s;
  const auto& g = *t.group;
  for (int h = 0; h < g.subgroup_count(); ++h)
    s << (h ? " " : "") << g.subgroup_label(h) << ":" << t.level(h).size();
  return s.str();
}

std::string element_name(const FiniteRing& r, int a) {
  if (!r.element_labels().empty()) return r.element_labels()[a];
  return std::to_string(a);
}

// Greedy generators of the additive group, in index order.
std::vector<int> additive_generators(const FiniteRing& r) {
  std::vector<int> gens;
  std::vector<char> span(r.size(), 0);
  span[r.zero()] = 1;
  std::vector<int> members{r.zero()};
  for (int a = 0; a < r.size(); ++a) {
    if (span[a]) continue;
    gens.push_back(a);
    for (std::size_t i = 0; i < members.size(); ++i) {
      int x = r.add(members[i], a);
      if (!span[x]) {
        span[x] = 1;
        members.push_back(x);
      }
    }
  }
  return gens;
}

class Runner {
 public:
  Runner(const Options& o, std::ostream& out, std::ostream& err) : opt_(o), out_(out), err_(err) {
    cfg_.fiber_bound = o.fiber_bound;
    cfg_.threads = default_threads();
  }

  // Axiom failure prints the first witness and returns false.
  bool checked(const TambaraData& t) {
    auto report = check_axioms(t, cfg_);
    if (report.ok()) return true;
    for (const auto& f : report.failures) err_ << "axiom failure [" << to_string(f.family) << "] " << f.message << "\n";
    return false;
  }

  int emit(const Json& j) {
    if (opt_.out.empty()) {
      out_ << dump(j);
      return kExitOk;
    }
    std::ofstream file(opt_.out, std::ios::binary);
    if (!file) {
      err_ << "cannot write " << opt_.out << "\n";
      return kExitInput;
    }
    file << dump(j);
    out_ << "wrote " << opt_.out << "\n";
    return kExitOk;
  }

  int check() {
    auto t = load_definition(opt_.paths.at(0));
    auto report = check_axioms(*t, cfg_);
    if (!report.ok()) {
      for (const auto& f : report.failures)
        out_ << "FAIL " << to_string(f.family) << ": " << f.message << "\n";
      return kExitAxiom;
    }
    out_ << "ok " << (t->has_norms ? "tambara" : "green") << " functor, levels " << sizes(*t) << ", "
         << report.diagrams << " exponential diagrams\n";
    return kExitOk;
  }

  int decompose() {
    auto t = load_definition(opt_.paths.at(0));
    if (!checked(*t)) return kExitAxiom;
    if (!t->has_norms) {
      err_ << "input is a Green functor: the product decomposition needs norms and fails for Green functors "
              "(compare green_counterexample)\n";
      return kExitUnsupported;
    }
    const auto& g = *t->group;
    if (!opt_.lambda.empty()) {
      UpwardClosedSet lambda = opt_.lambda == "all" ? all_subgroups(t->group)
                                                    : upward_closure(t->group, parse_subgroup(g, Json(opt_.lambda)));
      auto c = clarify(t, lambda);
      std::string members;
      for (SubgroupId h : lambda.list()) members += (members.empty() ? "" : ",") + g.subgroup_label(h);
      out_ << "clarification for {" << members << "}: "
           << (c.functor->is_zero() ? "zero functor" : "levels " + sizes(*c.functor)) << "\n";
      if (opt_.out.empty()) return kExitOk;
      return emit(functor_to_json(*c.functor));
    }
    auto d = full_decomposition(t);
    for (const auto& f : d.factors)
      out_ << "factor H=" << g.subgroup_label(f.subgroup) << " levels " << sizes(*f.functor) << "\n";
    if (opt_.out.empty()) return kExitOk;
    return emit(decomposition_to_json(d));
  }

  int lewis() {
    auto t = load_definition(opt_.paths.at(0));
    const auto& g = *t->group;
    std::vector<SubgroupId> chain;
    if (opt_.chain.empty()) {
      if (!g.lattice_is_chain()) {
        err_ << "subgroup lattice is not a chain; pass --chain\n";
        return kExitPresentation;
      }
      for (int h = 0; h < g.subgroup_count(); ++h) chain.push_back(h);
    } else {
      std::stringstream s(opt_.chain);
      std::string part;
      while (std::getline(s, part, ',')) chain.push_back(parse_subgroup(g, Json(part)));
      for (std::size_t i = 1; i < chain.size(); ++i)
        if (chain[i - 1] == chain[i] || !g.contains(chain[i - 1], chain[i])) {
          err_ << "--chain must list strictly increasing subgroups\n";
          return kExitPresentation;
        }
      if (chain.empty()) {
        err_ << "--chain is empty\n";
        return kExitPresentation;
      }
    }
    auto images = [&](const std::vector<int>& table, const FiniteRing& from, const FiniteRing& to,
                      const std::vector<int>& elems) {
      std::string s;
      for (int a : elems) s += (s.empty() ? "" : ", ") + element_name(from, a) + " -> " + element_name(to, table[a]);
      return s;
    };
    auto all = [](const FiniteRing& r) {
      std::vector<int> v(r.size());
      for (int i = 0; i < r.size(); ++i) v[i] = i;
      return v;
    };
    out_ << "Lewis diagram" << (t->label.empty() ? "" : " of " + t->label) << "\n";
    for (std::size_t i = 0; i < chain.size(); ++i) {
      SubgroupId h = chain[i];
      const auto& lvl = t->level(h);
      out_ << "level " << g.subgroup_label(h) << " (" << lvl.size() << " elements"
           << (lvl.label().empty() ? "" : ", " + lvl.label()) << ")\n";
      auto gens = additive_generators(lvl);
      for (GroupElement x : generators(g)) {
        if (g.subgroup(h).contains(x) || g.conjugate(h, x) != h) continue;
        out_ << "  c_" << x << ": " << images(t->conj_table(x, h), lvl, lvl, gens) << "\n";
      }
      if (i + 1 == chain.size()) break;
      SubgroupId up = chain[i + 1];
      const auto& top = t->level(up);
      out_ << "  res " << g.subgroup_label(up) << " -> " << g.subgroup_label(h) << ": "
           << images(t->res_table(h, up), top, lvl, additive_generators(top)) << "\n";
      out_ << "  tr " << g.subgroup_label(h) << " -> " << g.subgroup_label(up) << ": "
           << images(t->tr_table(h, up), lvl, top, gens) << "\n";
      if (t->has_norms)
        out_ << "  nm " << g.subgroup_label(h) << " -> " << g.subgroup_label(up) << ": "
             << images(t->nm_table(h, up), lvl, top, lvl.size() <= 16 ? all(lvl) : gens) << "\n";
    }
    return kExitOk;
  }

  int coinduce_cmd() {
    auto t = load_definition(opt_.paths.at(0));
    if (!checked(*t)) return kExitAxiom;
    SubgroupId h = parse_subgroup(*t->group, Json(opt_.from));
    auto result = coinduce(t->group, h, restrict_functor(h, t));
    if (!opt_.out.empty()) out_ << "Coind_" << t->group->subgroup_label(h) << " Res: levels " << sizes(*result) << "\n";
    return emit(functor_to_json(*result));
  }

  int restrict_cmd() {
    auto t = load_definition(opt_.paths.at(0));
    if (!checked(*t)) return kExitAxiom;
    SubgroupId k = parse_subgroup(*t->group, Json(opt_.to));
    auto result = restrict_functor(k, t);
    if (!opt_.out.empty()) out_ << "Res_" << t->group->subgroup_label(k) << ": levels " << sizes(*result) << "\n";
    return emit(functor_to_json(*result));
  }

  int iso() {
    auto a = load_definition(opt_.paths.at(0));
    auto b = load_definition(opt_.paths.at(1));
    if (!checked(*a) || !checked(*b)) return kExitAxiom;
    require(a->group->same_table(*b->group), ErrorCode::GroupMismatch, "functors are over different groups");
    // both definitions carry their own group object; compare over one of them
    auto b_same = std::make_shared<TambaraData>(*b);
    b_same->group = a->group;
    auto r = functor_isomorphism(a, b_same, opt_.budget);
    if (r.status == SearchStatus::Timeout) {
      out_ << "timeout\n";
      return kExitTimeout;
    }
    if (r.status == SearchStatus::None) {
      out_ << "not isomorphic\n";
      return kExitOk;
    }
    out_ << "isomorphic\n";
    Json j;
    j["schema"] = kSchemaVersion;
    j["witness"] = maps_to_json(*a->group, r.morphisms.front().maps);
    if (opt_.out.empty()) {
      out_ << dump(j);
      return kExitOk;
    }
    return emit(j);
  }

 private:
  const Options& opt_;
  std::ostream& out_;
  std::ostream& err_;
  AxiomConfig cfg_;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mackey, Green and Tambara functors over finite groups", "tambara"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--fiber-bound", opt.fiber_bound, "fibre bound for exponential diagrams")->check(CLI::Range(0, 8));
  app.add_option("--budget", opt.budget, "search node budget")->check(CLI::PositiveNumber);
  app.add_option("--out", opt.out, "output file");

  auto* check = app.add_subcommand("check", "verify the axioms of a definition file");
  check->add_option("path", opt.paths)->required()->expected(1);
  auto* decompose = app.add_subcommand("decompose", "product decomposition or clarification");
  decompose->add_option("path", opt.paths)->required()->expected(1);
  decompose->add_option("--lambda", opt.lambda, "clarify for the upward closure of a subgroup, or 'all'");
  auto* lewis = app.add_subcommand("lewis", "print a Lewis diagram");
  lewis->add_option("path", opt.paths)->required()->expected(1);
  lewis->add_option("--chain", opt.chain, "comma separated chain of subgroups");
  auto* coind = app.add_subcommand("coinduce", "Coind_H Res_H of a functor");
  coind->add_option("path", opt.paths)->required()->expected(1);
  coind->add_option("--from", opt.from, "subgroup H")->required();
  auto* restrict = app.add_subcommand("restrict", "restriction to a subgroup");
  restrict->add_option("path", opt.paths)->required()->expected(1);
  restrict->add_option("--to", opt.to, "subgroup K")->required();
  auto* iso = app.add_subcommand("iso", "search for an isomorphism");
  iso->add_option("paths", opt.paths)->required()->expected(2);
  for (auto* sub : {check, decompose, lewis, coind, restrict, iso}) {
    sub->add_option("--out", opt.out, "output file");
    sub->add_option("--fiber-bound", opt.fiber_bound, "fibre bound for exponential diagrams")->check(CLI::Range(0, 8));
    sub->add_option("--budget", opt.budget, "search node budget")->check(CLI::PositiveNumber);
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  Runner run(opt, out, err);
  try {
    if (*check) return run.check();
    if (*decompose) return run.decompose();
    if (*lewis) return run.lewis();
    if (*coind) return run.coinduce_cmd();
    if (*restrict) return run.restrict_cmd();
    if (*iso) return run.iso();
  } catch (const Error& e) {
    err << e.what() << "\n";
    return exit_for(e.code());
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace tambara
