#include "tambara/io.hpp"

#include <fstream>
#include <sstream>

#include "tambara/burnside.hpp"
#include "tambara/error.hpp"

namespace tambara {

namespace {

void need(bool ok, const std::string& what) { require(ok, ErrorCode::InvalidInput, what); }

std::vector<std::vector<int>> int_rows(const Json& j, const std::string& what) {
  need(j.is_array(), what + " must be an array of rows");
  std::vector<std::vector<int>> rows;
  for (const auto& r : j) {
    need(r.is_array(), what + " must be an array of rows");
    std::vector<int> row;
    for (const auto& v : r) {
      need(v.is_number_integer(), what + " entries must be integers");
      row.push_back(v.get<int>());
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<int> int_list(const Json& j, const std::string& what) {
  need(j.is_array(), what + " must be an array");
  std::vector<int> out;
  for (const auto& v : j) {
    need(v.is_number_integer(), what + " entries must be integers");
    out.push_back(v.get<int>());
  }
  return out;
}

int positive(const Json& j, const std::string& what) {
  need(j.is_number_integer() && j.get<int>() >= 1, what + " must be a positive integer");
  return j.get<int>();
}

// Same data, carried by another group object with the same table.
FunctorPtr rehome(const FunctorPtr& t, const GroupPtr& group) {
  if (t->group == group) return t;
  require(t->group->same_table(*group), ErrorCode::GroupMismatch, "functor is defined over a different group");
  auto copy = std::make_shared<TambaraData>(*t);
  copy->group = group;
  return copy;
}

std::pair<SubgroupId, SubgroupId> parse_edge(const FiniteGroup& g, const std::string& key) {
  auto pos = key.find("->");
  need(pos != std::string::npos, "edge key '" + key + "' must look like K->H");
  SubgroupId k = parse_subgroup(g, Json(key.substr(0, pos)));
  SubgroupId h = parse_subgroup(g, Json(key.substr(pos + 2)));
  need(g.contains(k, h), "edge " + key + " is not an inclusion");
  return {k, h};
}

FunctorPtr parse_explicit(const Json& j, const GroupPtr& group) {
  const auto& g = *group;
  const int m = g.subgroup_count();
  need(j.contains("levels") && j["levels"].is_object(), "functor needs a 'levels' object");
  std::vector<RingPtr> levels(m);
  for (auto it = j["levels"].begin(); it != j["levels"].end(); ++it)
    levels[parse_subgroup(g, Json(it.key()))] = parse_ring(it.value());
  for (int h = 0; h < m; ++h) need(levels[h] != nullptr, "missing level " + g.subgroup_label(h));
  bool green = j.value("green_only", false);
  TambaraData t = blank_functor(group, levels, !green);
  t.label = j.value("label", std::string());
  auto edges = [&](const char* name, std::vector<std::vector<int>>& tables) {
    if (!j.contains(name)) return;
    need(j[name].is_object(), std::string(name) + " must be an object");
    for (auto it = j[name].begin(); it != j[name].end(); ++it) {
      auto [k, h] = parse_edge(g, it.key());
      tables[k * m + h] = int_list(it.value(), std::string(name) + " " + it.key());
    }
  };
  edges("res", t.res_tables);
  edges("tr", t.tr_tables);
  if (!green) edges("nm", t.nm_tables);
  if (j.contains("conj")) {
    need(j["conj"].is_object(), "conj must be an object");
    for (auto it = j["conj"].begin(); it != j["conj"].end(); ++it) {
      auto pos = it.key().find(',');
      need(pos != std::string::npos, "conj key '" + it.key() + "' must look like g,H");
      int x = std::stoi(it.key().substr(0, pos));
      need(x >= 0 && x < g.order(), "conj key '" + it.key() + "' names no group element");
      SubgroupId h = parse_subgroup(g, Json(it.key().substr(pos + 1)));
      t.conj_tables[x * m + h] = int_list(it.value(), "conj " + it.key());
    }
  }
  complete_functor(t);
  return std::make_shared<const TambaraData>(std::move(t));
}

}  // namespace

GroupPtr parse_group(const Json& j) {
  need(j.is_object(), "group must be an object");
  if (j.contains("table")) return FiniteGroup::from_table(int_rows(j["table"], "group table"), j.value("name", ""));
  if (j.contains("permutations"))
    return FiniteGroup::from_permutations(int_rows(j["permutations"], "permutations"), j.value("name", ""));
  if (j.contains("cyclic")) return cyclic_group(positive(j["cyclic"], "cyclic"));
  if (j.contains("dihedral")) return dihedral_group(positive(j["dihedral"], "dihedral"));
  if (j.contains("symmetric")) return symmetric_group(positive(j["symmetric"], "symmetric"));
  if (j.contains("klein")) return klein_four_group();
  if (j.contains("product")) {
    need(j["product"].is_array() && j["product"].size() == 2, "group product takes two groups");
    return direct_product(*parse_group(j["product"][0]), *parse_group(j["product"][1]));
  }
  throw Error(ErrorCode::InvalidInput, "unrecognised group block");
}

Json group_to_json(const FiniteGroup& g) {
  Json j;
  j["table"] = g.table();
  if (!g.name().empty()) j["name"] = g.name();
  return j;
}

SubgroupId parse_subgroup(const FiniteGroup& g, const Json& j) {
  int id = -1;
  if (j.is_number_integer()) {
    id = j.get<int>();
  } else if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "e") return g.trivial();
    if (s == "G") return g.whole();
    try {
      std::size_t used = 0;
      id = std::stoi(s, &used);
      if (used != s.size()) id = -1;
    } catch (const std::exception&) {
      id = -1;
    }
  }
  need(id >= 0 && id < g.subgroup_count(), "unknown subgroup id " + j.dump());
  return id;
}

std::string subgroup_key(const FiniteGroup& g, SubgroupId h) { return g.subgroup_label(h); }

RingPtr parse_ring(const Json& j) {
  need(j.is_object() && j.contains("kind"), "ring block needs a 'kind'");
  const auto kind = j["kind"].get<std::string>();
  if (kind == "Zn") return FiniteRing::zn(positive(j.at("n"), "n"));
  if (kind == "Fq") return FiniteRing::fq(positive(j.at("q"), "q"));
  if (kind == "tables") {
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j["labels"].get<std::vector<std::string>>();
    return FiniteRing::from_tables(int_rows(j.at("add"), "add"), int_rows(j.at("mul"), "mul"),
                                   j.value("label", ""), labels);
  }
  if (kind == "product") {
    need(j.contains("factors") && j["factors"].is_array(), "product ring needs 'factors'");
    std::vector<RingPtr> parts;
    for (const auto& f : j["factors"]) parts.push_back(parse_ring(f));
    return FiniteRing::product(parts, j.value("label", ""));
  }
  throw Error(ErrorCode::InvalidInput, "unknown ring kind '" + kind + "'");
}

Json ring_to_json(const FiniteRing& r) {
  Json j;
  if (!r.factors().empty() && r.element_labels().empty()) {
    j["kind"] = "product";
    for (const auto& f : r.factors()) j["factors"].push_back(ring_to_json(*f));
    if (!r.label().empty()) j["label"] = r.label();
    return j;
  }
  j["kind"] = "tables";
  j["add"] = r.add_table();
  j["mul"] = r.mul_table();
  if (!r.label().empty()) j["label"] = r.label();
  if (!r.element_labels().empty()) j["labels"] = r.element_labels();
  return j;
}

GRing parse_gring(const Json& j, const GroupPtr& group) {
  need(j.is_object(), "G-ring block must be an object");
  if (j.contains("coind")) {
    const auto& c = j["coind"];
    SubgroupId h = parse_subgroup(*group, c.at("from"));
    GRing inner = parse_gring(c.at("gring"), group->view(h).group);
    return coinduce_gring(group, h, inner);
  }
  if (j.contains("product") && j["product"].is_array()) {
    std::vector<GRing> parts;
    for (const auto& p : j["product"]) parts.push_back(parse_gring(p, group));
    need(!parts.empty(), "G-ring product of nothing");
    return gring_product(parts);
  }
  const Json action = j.value("action", Json("trivial"));
  if (action.is_string() && action.get<std::string>() == "galois") {
    need(j.value("kind", "") == "Fq", "the Galois action needs an Fq ring");
    GRing r = GRing::galois(positive(j.at("q"), "q"), group);
    return r;
  }
  RingPtr ring = parse_ring(j);
  if (action.is_string()) {
    need(action.get<std::string>() == "trivial", "unknown action '" + action.get<std::string>() + "'");
    return GRing::trivial(group, ring);
  }
  auto rows = int_rows(action, "action");
  need(static_cast<int>(rows.size()) == group->order(), "action needs one row per group element");
  std::vector<int> flat;
  for (const auto& row : rows) {
    need(static_cast<int>(row.size()) == ring->size(), "action rows must have one entry per ring element");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  GRing r{group, ring, std::move(flat)};
  r.validate();
  return r;
}

FunctorPtr parse_functor(const Json& j, const GroupPtr& group) {
  need(j.is_object(), "functor block must be an object");
  const auto& g = *group;
  if (j.contains("fp")) return fixed_point_functor(parse_gring(j["fp"], group));
  if (j.contains("burnside")) return burnside_mod(group, positive(j["burnside"].at("mod"), "mod"));
  if (j.contains("zero")) return zero_functor(group, !j.value("green_only", false));
  if (j.contains("coind")) {
    const auto& c = j["coind"];
    SubgroupId h = parse_subgroup(g, c.at("from"));
    auto inner = parse_functor(c.at("functor"), g.view(h).group);
    return coinduce(group, h, inner);
  }
  if (j.contains("product")) {
    need(j["product"].is_array() && !j["product"].empty(), "product needs a non-empty list of functors");
    std::vector<FunctorPtr> parts;
    for (const auto& p : j["product"]) parts.push_back(parse_functor(p, group));
    return product(parts);
  }
  if (j.contains("restrict")) {
    const auto& r = j["restrict"];
    GroupPtr parent = parse_group(r.at("group"));
    SubgroupId k = parse_subgroup(*parent, r.at("to"));
    auto inner = parse_functor(r.at("functor"), parent);
    return rehome(restrict_functor(k, inner), group);
  }
  if (j.contains("green_counterexample")) {
    const auto& c = j["green_counterexample"];
    int p = positive(c.at("p"), "p");
    return rehome(green_counterexample(p, parse_ring(c.at("ring"))), group);
  }
  return parse_explicit(j, group);
}

FunctorPtr parse_definition(const Json& j) {
  need(j.is_object(), "definition must be a JSON object");
  need(j.contains("schema") && j["schema"] == kSchemaVersion, "definition needs \"schema\": 1");
  need(j.contains("group"), "definition needs a 'group' block");
  return parse_functor(j, parse_group(j["group"]));
}

FunctorPtr load_definition(const std::string& path) {
  std::ifstream in(path);
  need(static_cast<bool>(in), "cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::InvalidInput, path + ": " + e.what());
  }
  return parse_definition(j);
}

Json functor_to_json(const TambaraData& t, bool with_group) {
  const auto& g = *t.group;
  const int m = g.subgroup_count();
  Json j;
  if (with_group) {
    j["schema"] = kSchemaVersion;
    j["group"] = group_to_json(g);
  }
  if (!t.label.empty()) j["label"] = t.label;
  j["green_only"] = !t.has_norms;
  Json levels = Json::object(), res = Json::object(), tr = Json::object(), nm = Json::object(),
       conj = Json::object();
  for (int h = 0; h < m; ++h) levels[subgroup_key(g, h)] = ring_to_json(t.level(h));
  for (int k = 0; k < m; ++k)
    for (int h = 0; h < m; ++h) {
      if (k == h || !g.contains(k, h)) continue;
      std::string key = subgroup_key(g, k) + "->" + subgroup_key(g, h);
      res[key] = t.res_table(k, h);
      tr[key] = t.tr_table(k, h);
      if (t.has_norms) nm[key] = t.nm_table(k, h);
    }
  for (int x = 0; x < g.order(); ++x)
    for (int h = 0; h < m; ++h)
      if (!g.subgroup(h).contains(x)) conj[std::to_string(x) + "," + subgroup_key(g, h)] = t.conj_table(x, h);
  j["levels"] = levels;
  j["res"] = res;
  j["tr"] = tr;
  if (t.has_norms) j["nm"] = nm;
  j["conj"] = conj;
  return j;
}

Json maps_to_json(const FiniteGroup& g, const std::vector<std::vector<int>>& maps) {
  Json j = Json::object();
  for (std::size_t h = 0; h < maps.size(); ++h) j[subgroup_key(g, static_cast<SubgroupId>(h))] = maps[h];
  return j;
}

Json decomposition_to_json(const DecompositionResult& d) {
  Json j = functor_to_json(*d.reassembled, true);
  const auto& g = *d.reassembled->group;
  Json factors = Json::array();
  for (const auto& f : d.factors) {
    Json entry;
    entry["subgroup"] = subgroup_key(g, f.subgroup);
    entry["functor"] = functor_to_json(*f.functor, false);
    factors.push_back(entry);
  }
  j["factors"] = factors;
  j["witness"] = maps_to_json(g, d.witness.maps);
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace tambara
