#include "klrw/json_io.hpp"

#include <json.hpp>

namespace klrw {

using nlohmann::json;

namespace {

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const std::exception& e) {
    throw Error(Err::BadInput, std::string("malformed JSON: ") + e.what());
  }
}

Rat rat_from_json(const json& j) {
  try {
    if (j.is_array() && j.size() == 2) {
      long num, den;
      if (j[0].is_string())
        num = std::stol(j[0].get<std::string>());
      else
        num = j[0].get<long>();
      if (j[1].is_string())
        den = std::stol(j[1].get<std::string>());
      else
        den = j[1].get<long>();
      if (den == 0) throw Error(Err::BadInput, "zero denominator in angle");
      return Rat(num, den);
    }
    if (j.is_number_integer()) return Rat(j.get<long>());
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
  }
  throw Error(Err::BadInput, "angle must be a [num, den] pair");
}

json rat_to_json(const Rat& r) {
  return json::array({static_cast<long>(numerator(r)), static_cast<long>(denominator(r))});
}

}  // namespace

Quiver quiver_from_json(const std::string& text) {
  json j = parse(text);
  RawQuiver raw;
  try {
    for (auto& n : j.at("nodes")) raw.nodes.push_back(n.get<std::string>());
    if (j.count("arrows"))
      for (auto& a : j["arrows"])
        raw.arrows.push_back({a.at(0).get<std::string>(), a.at(1).get<std::string>()});
    for (auto& [k, v] : j.at("dims").items()) raw.dims[k] = v.get<int>();
    if (j.count("framings"))
      for (auto& [k, v] : j["framings"].items()) raw.framings[k] = v.get<int>();
  } catch (const json::exception& e) {
    throw Error(Err::BadInput, std::string("bad quiver file: ") + e.what());
  }
  return validate_quiver(raw);
}

std::string quiver_to_json(const Quiver& q) {
  json j;
  j["nodes"] = q.nodes;
  j["arrows"] = json::array();
  for (auto& [s, t] : q.arrows) j["arrows"].push_back({q.nodes[s], q.nodes[t]});
  for (int i = 0; i < q.num_nodes(); ++i) {
    j["dims"][q.nodes[i]] = q.dims[i];
    j["framings"][q.nodes[i]] = q.framings[i];
  }
  return j.dump(2);
}

Configuration configuration_from_json(const Quiver& q, const std::string& text) {
  json j = parse(text);
  std::vector<std::vector<Angle>> red(q.num_nodes()), black(q.num_nodes());
  try {
    if (j.count("red"))
      for (auto& [k, v] : j["red"].items()) {
        int i = q.node_index(k);
        for (auto& a : v) red[i].push_back(Angle(rat_from_json(a)));
      }
    if (j.count("black"))
      for (auto& [k, v] : j["black"].items()) {
        int i = q.node_index(k);
        for (auto& a : v) black[i].push_back(Angle(rat_from_json(a)));
      }
  } catch (const json::exception& e) {
    throw Error(Err::BadInput, std::string("bad configuration file: ") + e.what());
  }
  return validate_configuration(q, red, black);
}

std::string configuration_to_json(const Configuration& c) {
  json j;
  j["red"] = json::object();
  j["black"] = json::object();
  for (int i = 0; i < c.quiver.num_nodes(); ++i) {
    json r = json::array(), b = json::array();
    for (auto& a : c.red[i]) r.push_back(rat_to_json(a.value));
    for (auto& a : c.black[i]) b.push_back(rat_to_json(a.value));
    if (!r.empty()) j["red"][c.quiver.nodes[i]] = r;
    if (!b.empty()) j["black"][c.quiver.nodes[i]] = b;
  }
  return j.dump(2);
}

namespace {

DiagramKey key_from_json(const Quiver& q, const json& j) {
  DiagramKey k;
  for (auto& [node, lst] : j.items()) {
    int i = q.node_index(node);
    for (auto& s : lst) {
      StrandData st;
      st.label = i;
      st.from = s.at("from").get<int>() - 1;
      st.to = s.at("to").get<int>() - 1;
      st.wind = s.count("wind") ? s["wind"].get<int>() : 0;
      st.weight = s.count("weight") ? s["weight"].get<int>() : 0;
      k.strands.push_back(st);
    }
  }
  return k;
}

json key_to_json(const Quiver& q, const DiagramKey& k) {
  json j = json::object();
  for (auto& st : k.strands) {
    json s;
    s["from"] = st.from + 1;
    s["to"] = st.to + 1;
    s["wind"] = st.wind;
    s["weight"] = st.weight;
    j[q.nodes[st.label]].push_back(s);
  }
  return j;
}

}  // namespace

TautDiagram diagram_from_json(const Quiver& q, const std::string& text) {
  json j = parse(text);
  try {
    Configuration src = configuration_from_json(q, j.at("source").dump());
    Configuration tgt = configuration_from_json(q, j.at("target").dump());
    return make_taut(src, tgt, key_from_json(q, j.at("strands")));
  } catch (const json::exception& e) {
    throw Error(Err::BadInput, std::string("bad diagram file: ") + e.what());
  }
}

std::string diagram_to_json(const TautDiagram& d) {
  json j;
  j["source"] = json::parse(configuration_to_json(d.source));
  j["target"] = json::parse(configuration_to_json(d.target));
  j["strands"] = key_to_json(d.source.quiver, d.key);
  return j.dump(2);
}

Morphism morphism_from_json(const Quiver& q, const std::string& text) {
  json j = parse(text);
  try {
    Configuration src = configuration_from_json(q, j.at("source").dump());
    Configuration tgt = configuration_from_json(q, j.at("target").dump());
    Morphism m = Morphism::zero(src, tgt);
    for (auto& t : j.at("terms")) {
      DiagramKey k = key_from_json(q, t.at("diagram"));
      CoeffPoly c;
      for (auto& mono : t.at("coeff"))
        c.add(mono.at(0).get<int>(), mono.at(1).get<int>(), Int(mono.at(2).get<long>()));
      // canonicalize via make_taut (sorts strands, checks the bijection)
      TautDiagram d = make_taut(src, tgt, k);
      m.add_term(d.key, c);
    }
    return m;
  } catch (const json::exception& e) {
    throw Error(Err::BadInput, std::string("bad morphism file: ") + e.what());
  }
}

std::string morphism_to_json(const Morphism& m) {
  json j;
  j["source"] = json::parse(configuration_to_json(m.source));
  j["target"] = json::parse(configuration_to_json(m.target));
  j["terms"] = json::array();
  for (auto& [k, c] : m.terms) {
    json t;
    t["diagram"] = key_to_json(m.source.quiver, k);
    t["coeff"] = json::array();
    for (auto& [ab, v] : c.c)
      t["coeff"].push_back({ab.first, ab.second, static_cast<long>(v)});
    j["terms"].push_back(t);
  }
  return j.dump(2);
}

Word word_from_json(const Quiver& q, const std::string& text) {
  json j = parse(text);
  try {
    Word w;
    w.source = configuration_from_json(q, j.at("source").dump());
    Configuration cur = w.source;
    for (auto& s : j.at("steps")) {
      if (s.count("dot")) {
        int node = q.node_index(s["dot"].at(0).get<std::string>());
        int idx = s["dot"].at(1).get<int>() - 1;
        w.steps.push_back(dot_step(cur, node, idx));
      } else if (s.count("swap")) {
        auto& sw = s["swap"];
        int n1 = q.node_index(sw.at(0).at(0).get<std::string>());
        int i1 = sw.at(0).at(1).get<int>() - 1;
        int n2 = q.node_index(sw.at(1).at(0).get<std::string>());
        int i2 = sw.at(1).at(1).get<int>() - 1;
        bool outer = s.count("arc") && s["arc"].get<std::string>() == "outer";
        w.steps.push_back(swap_step(cur, {n1, i1}, {n2, i2}, outer));
      } else if (s.count("red_cross")) {
        auto& rc = s["red_cross"];
        int n1 = q.node_index(rc.at(0).at(0).get<std::string>());
        int i1 = rc.at(0).at(1).get<int>() - 1;
        int n2 = q.node_index(rc.at(1).at(0).get<std::string>());
        int i2 = rc.at(1).at(1).get<int>() - 1;
        int dir = s.count("dir") ? s["dir"].get<int>() : 1;
        w.steps.push_back(red_cross_step(cur, n1, i1, n2, i2, dir));
      } else {
        throw Error(Err::BadInput, "word step must be dot, swap or red_cross");
      }
      cur = w.steps.back().target;
    }
    return w;
  } catch (const json::exception& e) {
    throw Error(Err::BadInput, std::string("bad word file: ") + e.what());
  }
}

CoverData cover_from_json(const std::string& text) {
  json j = parse(text);
  CoverData c;
  try {
    if (j.count("sheets"))
      for (auto& [k, v] : j["sheets"].items())
        for (auto& s : v) c.sheets[k].push_back(s.get<std::string>());
    if (j.count("root"))
      for (auto& p : j["root"]) c.root_witnesses.push_back(p.get<std::string>());
    if (j.count("framing"))
      for (auto& p : j["framing"]) c.framing_witnesses.push_back(p.get<std::string>());
    if (j.count("pairs"))
      for (auto& p : j["pairs"])
        c.pairs.push_back({p.at(0).get<std::string>(), p.at(1).get<std::string>()});
  } catch (const json::exception& e) {
    throw Error(Err::BadInput, std::string("bad cover file: ") + e.what());
  }
  c.validate();
  return c;
}

DivisorData divisor_from_json(const std::string& text) {
  json j = parse(text);
  DivisorData d;
  try {
    for (auto& [k, v] : j.at("orders").items()) d.orders[k] = v.get<int>();
  } catch (const json::exception& e) {
    throw Error(Err::BadInput, std::string("bad divisor file: ") + e.what());
  }
  return d;
}

std::string divisor_to_json(const DivisorData& d) {
  json j;
  j["orders"] = json::object();
  for (auto& [k, v] : d.orders) j["orders"][k] = v;
  return j.dump();
}

}  // namespace klrw
