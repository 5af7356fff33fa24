#pragma once

#include <string>
#include <vector>

#include "fitcomp/matrix.hpp"

namespace fitcomp {

// Small built-in matrices with known long-run behavior, byte-stable. Handy
// for tests, demos and as regression anchors.
const std::vector<std::string>& gallery_names();
BipartiteMatrix gallery_matrix(const std::string& name);  // throws Error on unknown names

}  // namespace fitcomp
