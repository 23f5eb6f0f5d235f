#pragma once

#include <fstream>
#include <memory>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "fin2/endodecomp.hpp"
#include "fin2/twocat.hpp"

namespace fin2::testing {

inline std::string fixture_path(const std::string& name) { return std::string(FIN2_FIXTURES) + "/" + name; }

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

inline nlohmann::json fixture(const std::string& name) { return nlohmann::json::parse(read_text(fixture_path(name))); }

inline PresentationPtr fixture_presentation(const std::string& name) {
  return std::make_shared<const TwoCatPresentation>(presentation_from_json(fixture(name)));
}

inline MorSum sum_of(const TwoCatPresentation& p, const nlohmann::json& j, const std::string& src = "i",
                     const std::string& tgt = "i") {
  return sum_from_json(p, j, p.object_at(src), p.object_at(tgt));
}

}  // namespace fin2::testing
