#pragma once

#include <string>
#include <vector>

namespace g2lab {

// e_i e_j = sign e_index over the basis {1, e1..e7}.
std::string octonion_table_json();
// Nonzero c_ijkl for i<j<k<l with the associator cross-check.
std::string c4_table_json();
// Blade products of Cl(p, q), blades as bitmasks.
std::string clifford_table_json(int p, int q);

// Writes octonion.json, c4.json and clifford_<p>_<q>.json for p + q <= 4.
// Creates dir if needed; throws IoError. Returns the written paths.
std::vector<std::string> emit_tables(const std::string& dir);

}  // namespace g2lab
