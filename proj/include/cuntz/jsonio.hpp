// JSON wire formats: decompositions (emitted) and endomorphism maps
// (loaded and emitted). Letters are 1-based on the wire, matching the
// text syntax.
#pragma once

#include <fstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "endo.hpp"
#include "rep.hpp"

namespace cuntz {

using OrderedJson = nlohmann::ordered_json;

inline OrderedJson to_json(const Mult& m) {
  if (m.is_infinite()) return OrderedJson("inf");
  return OrderedJson(m.count());
}

/// {"alphabet": N, "components": [{"kind": "cycle", "word": [...],
/// "multiplicity": k}, {"kind": "chain", "prefix": [...], "cycle": [...],
/// "multiplicity": "inf"}, ...]} with components in canonical order.
inline OrderedJson to_json(const Decomposition& d) {
  OrderedJson out;
  out["alphabet"] = d.alphabet();
  out["components"] = OrderedJson::array();
  for (const auto& [r, m] : d.components()) {
    OrderedJson c;
    if (r.is_cycle()) {
      c["kind"] = "cycle";
      c["word"] = r.cycle_word().letters();
    } else {
      c["kind"] = "chain";
      c["prefix"] = r.chain_tail().prefix();
      c["cycle"] = r.chain_tail().cycle();
    }
    c["multiplicity"] = to_json(m);
    out["components"].push_back(std::move(c));
  }
  return out;
}

/// {"alphabet": N, "depth": l, "map": [[[k1,..,kl],[j1,..,jl]], ...]}
inline OrderedJson to_json(const PermEndo& e) {
  OrderedJson out;
  out["alphabet"] = e.alphabet();
  out["depth"] = e.depth();
  out["map"] = OrderedJson::array();
  const std::size_t size = e.table().size();
  for (std::size_t c = 0; c < size; ++c) {
    Letters k = detail::decode_word(e.alphabet(), e.depth(), c);
    Letters j = detail::decode_word(e.alphabet(), e.depth(), e.table()[c]);
    out["map"].push_back(OrderedJson::array({k, j}));
  }
  return out;
}

inline PermEndo endo_from_json(const OrderedJson& j) {
  if (!j.is_object() || !j.contains("alphabet") || !j.contains("depth") ||
      !j.contains("map"))
    throw std::invalid_argument(
        "endo json: need {alphabet, depth, map} object");
  const int n = j.at("alphabet").get<int>();
  const int depth = j.at("depth").get<int>();
  std::vector<std::pair<Word, Word>> pairs;
  for (const auto& entry : j.at("map")) {
    if (!entry.is_array() || entry.size() != 2)
      throw std::invalid_argument("endo json: map entries are [K, J] pairs");
    pairs.emplace_back(Word(n, entry[0].get<Letters>()),
                       Word(n, entry[1].get<Letters>()));
  }
  return PermEndo::from_word_map(n, depth, pairs);
}

inline PermEndo load_endo_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open endo file: " + path);
  OrderedJson j;
  in >> j;
  return endo_from_json(j);
}

}  // namespace cuntz
