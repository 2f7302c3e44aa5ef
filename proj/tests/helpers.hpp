#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "geolrc/config.hpp"
#include "geolrc/engine.hpp"

namespace testing {

using namespace geolrc;

struct NamedCode {
  std::string name;
  LinearCode code;
};

inline LinearCode build_builtin(const std::string& id, std::optional<int> t = std::nullopt) {
  Config cfg = builtin_config(id);
  if (t) cfg.set("t", std::to_string(*t));
  return build_from_config(cfg, true);
}

inline double log2_size(const LinearCode& c) {
  return static_cast<double>(c.k) * std::log2(static_cast<double>(c.field->order()));
}

/// Every built-in family at t = 1 and t = 2, plus the fixed surface codes,
/// keeping those with q^k <= 2^max_log2.
inline const std::vector<NamedCode>& small_codes(double max_log2 = 20) {
  static std::vector<NamedCode> out = [max_log2] {
    std::vector<NamedCode> v;
    for (const auto& id : builtin_config_ids()) {
      Config cfg = builtin_config(id);
      std::vector<std::optional<int>> ts;
      if (cfg.has("t")) ts = {1, 2};
      else ts = {std::nullopt};
      for (auto t : ts) {
        LinearCode c;
        try {
          c = build_builtin(id, t);
        } catch (const Error&) {
          continue;
        }
        if (c.k == 0 || log2_size(c) > max_log2) continue;
        v.push_back({id + (t ? " t=" + std::to_string(*t) : ""), std::move(c)});
      }
    }
    return v;
  }();
  return out;
}

/// Calls fn on every codeword (message order is the lexicographic order of
/// message codes).
inline void for_each_codeword(const LinearCode& c, const std::function<void(const std::vector<Elem>&)>& fn) {
  const Elem q = c.field->order();
  std::vector<Elem> msg(c.k, 0);
  while (true) {
    fn(encode(c, msg));
    std::size_t i = 0;
    while (i < msg.size() && ++msg[i] == q) msg[i++] = 0;
    if (i == msg.size()) break;
  }
}

inline long weight(const std::vector<Elem>& w) {
  long n = 0;
  for (Elem x : w) n += x != 0;
  return n;
}

}  // namespace testing
