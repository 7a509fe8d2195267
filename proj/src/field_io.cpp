#include "nls/field_io.hpp"

#include <algorithm>
#include <cstdlib>

namespace nls {

nlohmann::json field_to_json(const Field& field) {
  auto out = nlohmann::json::array();
  for (int k = -field.cutoff(); k <= field.cutoff(); ++k) {
    out.push_back({k, field[k].real(), field[k].imag()});
  }
  return out;
}

Field field_from_json(const nlohmann::json& triples) {
  if (!triples.is_array()) throw InvalidInputError("field JSON: expected an array of [k, re, im] triples");
  int cutoff = 0;
  for (const auto& t : triples) {
    if (!t.is_array() || t.size() != 3) throw InvalidInputError("field JSON: malformed triple " + t.dump());
    cutoff = std::max(cutoff, std::abs(t[0].get<int>()));
  }
  Field field(cutoff);
  for (const auto& t : triples) field.at(t[0].get<int>()) = {t[1].get<double>(), t[2].get<double>()};
  return field;
}

}  // namespace nls
