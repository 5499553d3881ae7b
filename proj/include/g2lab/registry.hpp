#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "g2lab/connection.hpp"
#include "g2lab/g2_field.hpp"

namespace g2lab {

struct CatalogEntry {
    std::string name;
    std::string kind;
    std::string description;
    std::string json;  // definition that reproduces the entry
};

/**
 * Charts and fields are described by JSON objects
 *   {"kind": "...", "params": {...}, "domain": ...}
 * where domain is a half width or a list of [lo, hi] pairs. Unknown kinds
 * and malformed params throw BadConfig.
 *
 * Chart kinds: flat {n, half_width}, sphere2, warped3, contorsion3 {scale},
 * cartan_schouten {a}.
 * Field kinds: constant {half_width}, sigma_warp {theta, unit, base},
 * pullback_warp {scale, seed, half_width}.
 */
ConnectionChart chart_from_json(std::string_view text);
PhiField field_from_json(std::string_view text);

const std::vector<CatalogEntry>& chart_catalog();
const std::vector<CatalogEntry>& field_catalog();

// Catalog lookup by name; throws BadConfig for unknown names.
ConnectionChart make_chart(const std::string& name);
PhiField make_field(const std::string& name);

// Generic non-symmetric 3D metric used as the torsionless witness.
MatX warped3_metric(const VecX& x);

}  // namespace g2lab
