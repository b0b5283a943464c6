#pragma once

#include <string>

#include "treksep/treksep.hpp"

namespace fixtures {

inline treksep::MixedGraph load(const std::string& name) {
  return treksep::parse_graph(treksep::read_text_file(std::string(TREKSEP_DATA_DIR) + "/" + name));
}

inline treksep::MixedGraph choke() { return load("choke.graph"); }
inline treksep::MixedGraph spider() { return load("spider.graph"); }
inline treksep::MixedGraph mixed() { return load("mixed.graph"); }
inline treksep::MixedGraph path4() { return load("path4.graph"); }

inline treksep::MixedGraph from(const char* text) { return treksep::parse_graph(text); }

}  // namespace fixtures
