#include "lbc/cli/gallery.hpp"

namespace lbc::cli {

namespace detail {
// Defined in the generated gallery_data.cpp.
extern const std::vector<std::pair<std::string, std::string>> kGallerySources;
}  // namespace detail

const std::vector<std::pair<std::string, std::string>>& gallery_sources() { return detail::kGallerySources; }

std::vector<Scenario> gallery() {
  std::vector<Scenario> out;
  for (const auto& [stem, text] : gallery_sources()) out.push_back(parse_scenario(text, "gallery/" + stem + ".toml"));
  return out;
}

}  // namespace lbc::cli
