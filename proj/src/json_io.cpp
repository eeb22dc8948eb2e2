#include "girylab/json_io.hpp"

namespace girylab {

namespace {

[[noreturn]] void bad(const std::string& what) { raise(Errc::parse_error, what); }

std::uint64_t index_from_json(const Json& j, const char* what) {
  if (!j.is_number_unsigned()) bad(std::string(what) + " must be an unsigned integer");
  return j.get<std::uint64_t>();
}

}  // namespace

Json parse_json_text(const std::string& text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) bad("malformed JSON");
  return j;
}

Json rat_to_json(const Rat& r) { return r.str(); }

Rat rat_from_json(const Json& j) {
  if (j.is_number_integer()) return Rat(j.get<std::int64_t>());
  if (!j.is_string()) bad("rational must be a \"num/den\" string");
  return Rat::parse(j.get<std::string>());
}

Json dist_to_json(const Dist& d) {
  Json weights = Json::array();
  for (const auto& [i, w] : d.prefix()) weights.push_back(Json::array({i, w.str()}));
  Json out = {{"weights", std::move(weights)}};
  if (d.tail()) {
    out["tail"] = {{"kind", "geometric"},
                   {"start", d.tail()->start},
                   {"ratio", d.tail()->ratio.str()}};
  }
  return out;
}

Dist dist_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("weights") || !j["weights"].is_array())
    bad("distribution must be an object with a \"weights\" array");
  std::vector<Dist::Entry> entries;
  for (const Json& pair : j["weights"]) {
    if (!pair.is_array() || pair.size() != 2) bad("weight entries are [index, rational] pairs");
    entries.emplace_back(index_from_json(pair[0], "index"), rat_from_json(pair[1]));
  }
  if (!j.contains("tail")) return Dist::from_weights(std::move(entries));
  const Json& tail = j["tail"];
  if (!tail.is_object() || tail.value("kind", "") != "geometric" || !tail.contains("start") ||
      !tail.contains("ratio"))
    bad("tail must be {\"kind\": \"geometric\", \"start\": n, \"ratio\": r}");
  return Dist::with_geometric_tail(std::move(entries), index_from_json(tail["start"], "start"),
                                   rat_from_json(tail["ratio"]));
}

Json dist_over_dist_to_json(const DistOverDist& q) {
  Json outer = Json::array();
  for (const auto& [inner, w] : q.outer())
    outer.push_back(Json::array({dist_to_json(inner), w.str()}));
  return Json{{"outer", std::move(outer)}};
}

DistOverDist dist_over_dist_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("outer") || !j["outer"].is_array())
    bad("two-level distribution must be an object with an \"outer\" array");
  std::vector<DistOverDist::Entry> outer;
  for (const Json& pair : j["outer"]) {
    if (!pair.is_array() || pair.size() != 2) bad("outer entries are [distribution, rational] pairs");
    outer.emplace_back(dist_from_json(pair[0]), rat_from_json(pair[1]));
  }
  return DistOverDist::from_pairs(std::move(outer));
}

Json amp_to_json(const AmpDist& a) {
  Json amps = Json::array();
  for (const auto& [i, z] : a.entries())
    amps.push_back(Json::array({i, z.re.str(), z.im.str()}));
  return Json{{"amplitudes", std::move(amps)}};
}

AmpDist amp_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("amplitudes") || !j["amplitudes"].is_array())
    bad("amplitude family must be an object with an \"amplitudes\" array");
  std::vector<AmpDist::Entry> entries;
  for (const Json& triple : j["amplitudes"]) {
    if (!triple.is_array() || triple.size() != 3)
      bad("amplitude entries are [index, re, im] triples");
    entries.emplace_back(index_from_json(triple[0], "index"),
                         CRat(rat_from_json(triple[1]), rat_from_json(triple[2])));
  }
  return AmpDist::from_amplitudes(std::move(entries));
}

Json tree_to_json(const RefinementTree& t) {
  Json splits = Json::array();
  for (const auto& s : t.splits())
    splits.push_back({{"atom", s.atom}, {"left", s.left}, {"right", s.right}});
  return Json{{"points", t.points()}, {"splits", std::move(splits)}};
}

RefinementTree tree_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("points") || !j["points"].is_array())
    bad("tree must be an object with a \"points\" array");
  std::vector<std::string> points;
  for (const Json& p : j["points"]) {
    if (!p.is_string()) bad("points are strings");
    points.push_back(p.get<std::string>());
  }
  RefinementTree tree = RefinementTree::trivial(std::move(points));
  if (!j.contains("splits")) return tree;
  if (!j["splits"].is_array()) bad("\"splits\" must be an array");
  for (const Json& s : j["splits"]) {
    if (!s.is_object() || !s.contains("atom") || !s.contains("left") || !s.contains("right"))
      bad("splits are {\"atom\": i, \"left\": [...], \"right\": [...]}");
    const auto part = [&](const Json& arr) {
      if (!arr.is_array()) bad("split parts are arrays of point labels");
      std::vector<std::string> labels;
      for (const Json& p : arr) {
        if (!p.is_string()) bad("point labels are strings");
        labels.push_back(p.get<std::string>());
      }
      return labels;
    };
    tree = tree.refine(index_from_json(s["atom"], "atom"), part(s["left"]), part(s["right"]));
  }
  return tree;
}

Json elem_to_json(const Elem& e) {
  struct Encoder {
    Json operator()(std::uint64_t n) const { return n; }
    Json operator()(const Rat& r) const { return r.str(); }
    Json operator()(Infinity) const { return "inf"; }
    Json operator()(const Dist& d) const { return dist_to_json(d); }
    Json operator()(CoeqPoint p) const {
      switch (p) {
        case CoeqPoint::zero: return "_0";
        case CoeqPoint::mid: return "_u";
        case CoeqPoint::one: return "_1";
      }
      return "_u";
    }
  };
  return std::visit(Encoder{}, e);
}

Elem elem_from_json(const Json& j) {
  if (j.is_number_unsigned()) return Elem(j.get<std::uint64_t>());
  if (j.is_number_integer()) {
    const std::int64_t v = j.get<std::int64_t>();
    if (v >= 0) return Elem(static_cast<std::uint64_t>(v));
    return Elem(Rat(v));
  }
  if (j.is_object()) return Elem(dist_from_json(j));
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return Elem(Infinity{});
    if (s == "_0") return Elem(CoeqPoint::zero);
    if (s == "_u") return Elem(CoeqPoint::mid);
    if (s == "_1") return Elem(CoeqPoint::one);
    return Elem(Rat::parse(s));
  }
  bad("unrecognized element encoding");
}

Json carrier_dist_to_json(const CarrierDist& p) {
  Json entries = Json::array();
  for (const auto& [e, w] : p.entries())
    entries.push_back(Json::array({elem_to_json(e), w.str()}));
  return Json{{"entries", std::move(entries)}};
}

CarrierDist carrier_dist_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("entries") || !j["entries"].is_array())
    bad("carrier distribution must be an object with an \"entries\" array");
  std::vector<CarrierDist::Entry> entries;
  for (const Json& pair : j["entries"]) {
    if (!pair.is_array() || pair.size() != 2) bad("entries are [element, rational] pairs");
    entries.emplace_back(elem_from_json(pair[0]), rat_from_json(pair[1]));
  }
  return CarrierDist::from_pairs(std::move(entries));
}

SeqMap seqmap_from_json(const Json& j) {
  if (!j.is_object()) bad("sequence must be an object keyed by indices");
  SeqMap out;
  if (j.contains("default")) {
    const Json& rule = j["default"];
    if (rule.is_string()) {
      const std::string name = rule.get<std::string>();
      if (name == "identity") out = SeqMap::identity();
      else if (name == "dirac") out = SeqMap::dirac();
      else bad("unknown sequence rule '" + name + "'");
    } else if (rule.is_object() && rule.value("rule", "") == "constant" && rule.contains("value")) {
      out = SeqMap::constant(elem_from_json(rule["value"]));
    } else if (rule.is_object() && rule.value("rule", "") == "geometric" &&
               rule.contains("coeff") && rule.contains("growth")) {
      out = SeqMap::geometric_values(rat_from_json(rule["coeff"]), rat_from_json(rule["growth"]),
                                     rule.contains("from") ? index_from_json(rule["from"], "from")
                                                           : 0);
    } else {
      bad("unrecognized sequence rule");
    }
  }
  for (const auto& [key, value] : j.items()) {
    if (key == "default") continue;
    std::uint64_t index = 0;
    for (const char c : key) {
      if (c < '0' || c > '9') bad("sequence keys are indices, got '" + key + "'");
      index = index * 10 + (c - '0');
    }
    out = out.with_entry(index, elem_from_json(value));
  }
  return out;
}

NatSet natset_from_json(const Json& j) {
  if (!j.is_object()) bad("set must be {\"elems\": [...]} or {\"complement_of\": [...]}");
  const bool complement = j.contains("complement_of");
  const char* key = complement ? "complement_of" : "elems";
  if (!j.contains(key) || !j[key].is_array()) bad("set must list its elements");
  std::vector<std::uint64_t> elems;
  for (const Json& e : j[key]) elems.push_back(index_from_json(e, "set element"));
  return complement ? NatSet::complement_of(std::move(elems)) : NatSet::of(std::move(elems));
}

NatMap natmap_from_json(const Json& j) {
  if (j.is_object() && j.contains("table") && j["table"].is_array()) {
    std::vector<std::uint64_t> table;
    for (const Json& v : j["table"]) table.push_back(index_from_json(v, "table value"));
    return NatMap::from_table(std::move(table));
  }
  if (j.is_object() && j.contains("swap") && j["swap"].is_array() && j["swap"].size() == 2) {
    return NatMap::swap_of(index_from_json(j["swap"][0], "swap"),
                           index_from_json(j["swap"][1], "swap"));
  }
  if (j.is_object() && j.contains("constant"))
    return NatMap::constant(index_from_json(j["constant"], "constant"));
  if (j.is_object() && j.value("rule", "") == "identity") return NatMap::identity();
  bad("unrecognized index map encoding");
}

}  // namespace girylab
