#include "indexcode/traffic.h"

#include <algorithm>
#include <json.hpp>

#include "indexcode/errors.h"
#include "indexcode/graph_io.h"

namespace indexcode {
namespace {

void normalize(IdSet& s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
}

}  // namespace

void TrafficSpec::validate() {
  if (num_users < 1) throw ConfigError("traffic spec needs at least one user");
  if (types.empty()) throw ConfigError("traffic spec needs at least one type");
  for (size_t m = 0; m < types.size(); ++m) {
    TrafficType& t = types[m];
    normalize(t.dest);
    normalize(t.side);
    const std::string where = "traffic type " + std::to_string(m);
    if (t.dest.empty()) throw ConfigError(where + ": empty destination set");
    for (const IdSet* s : {&t.dest, &t.side}) {
      for (UserId n : *s) {
        if (n < 1 || n > num_users) {
          throw UnknownIdError(where + ": user " + std::to_string(n) +
                               " out of range");
        }
      }
    }
    for (UserId n : t.dest) {
      if (std::binary_search(t.side.begin(), t.side.end(), n)) {
        throw OverlapError(where + ": user " + std::to_string(n) +
                           " is both destination and side information");
      }
    }
  }
  if (rates) {
    if (rates->size() != types.size()) {
      throw ConfigError("rate vector length must equal the number of types");
    }
    for (double r : *rates) {
      if (!(r >= 0.0 && r <= 1.0)) {
        throw ConfigError("arrival rates must lie in [0, 1]");
      }
    }
  }
}

bool TrafficSpec::in_dest(int type, UserId n) const {
  const IdSet& d = types.at(type).dest;
  return std::binary_search(d.begin(), d.end(), n);
}

bool TrafficSpec::in_side(int type, UserId n) const {
  const IdSet& s = types.at(type).side;
  return std::binary_search(s.begin(), s.end(), n);
}

TrafficSpec parse_traffic_spec(std::string_view json_text) {
  TrafficSpec spec;
  try {
    const auto j = nlohmann::json::parse(json_text);
    spec.num_users = j.at("users").get<int>();
    for (const auto& t : j.at("types")) {
      TrafficType tt;
      tt.dest = t.at("dest").get<IdSet>();
      if (t.contains("side")) tt.side = t.at("side").get<IdSet>();
      spec.types.push_back(std::move(tt));
    }
    if (j.contains("rates")) spec.rates = j.at("rates").get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("traffic spec: ") + e.what());
  }
  spec.validate();
  return spec;
}

TrafficSpec read_traffic_spec_file(const std::string& path) {
  return parse_traffic_spec(read_text_file(path));
}

std::string serialize_traffic_spec(const TrafficSpec& spec) {
  nlohmann::json j;
  j["users"] = spec.num_users;
  j["types"] = nlohmann::json::array();
  for (const auto& t : spec.types) {
    j["types"].push_back({{"dest", t.dest}, {"side", t.side}});
  }
  if (spec.rates) j["rates"] = *spec.rates;
  return j.dump(2) + "\n";
}

}  // namespace indexcode
