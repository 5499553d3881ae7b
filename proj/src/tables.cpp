#include "g2lab/tables.hpp"

#include <bit>
#include <cmath>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "g2lab/clifford.hpp"
#include "g2lab/errors.hpp"
#include "g2lab/octonion.hpp"

namespace g2lab {

using nlohmann::ordered_json;

std::string octonion_table_json() {
    const auto& sc = StructureConstants::get();
    ordered_json rows = ordered_json::array();
    for (int i = 0; i < 8; ++i) {
        ordered_json row = ordered_json::array();
        for (int j = 0; j < 8; ++j) row.push_back({{"index", sc.table_index(i, j)}, {"sign", sc.table_sign(i, j)}});
        rows.push_back(row);
    }
    ordered_json cycles = ordered_json::array();
    for (const auto& c : fano_cycles()) cycles.push_back(c);
    ordered_json j;
    j["schema"] = 1;
    j["basis"] = {"1", "e1", "e2", "e3", "e4", "e5", "e6", "e7"};
    j["cycles"] = cycles;
    j["table"] = rows;
    return j.dump(2) + "\n";
}

std::string c4_table_json() {
    const auto& sc = StructureConstants::get();
    ordered_json entries = ordered_json::array();
    double worst = 0.0;
    for (int i = 1; i <= 7; ++i)
        for (int j = i + 1; j <= 7; ++j)
            for (int k = j + 1; k <= 7; ++k) {
                const Octonion a = associator(Octonion::unit(i), Octonion::unit(j), Octonion::unit(k));
                for (int l = 1; l <= 7; ++l) worst = std::max(worst, std::abs(a[static_cast<std::size_t>(l)] - 2.0 * sc.c4(i, j, k, l)));
                for (int l = k + 1; l <= 7; ++l)
                    if (sc.c4(i, j, k, l) != 0) entries.push_back({{"indices", {i, j, k, l}}, {"value", sc.c4(i, j, k, l)}});
            }
    ordered_json j;
    j["schema"] = 1;
    j["convention"] = "[e_i, e_j, e_k] = (e_i e_j) e_k - e_i (e_j e_k) = 2 c_ijkl e_l";
    j["entries"] = entries;
    j["associator_max_residual"] = worst;
    j["consistent"] = worst == 0.0;
    return j.dump(2) + "\n";
}

std::string clifford_table_json(int p, int q) {
    const std::uint32_t n = std::uint32_t{1} << (p + q);
    ordered_json rows = ordered_json::array();
    for (std::uint32_t a = 0; a < n; ++a) {
        ordered_json row = ordered_json::array();
        for (std::uint32_t b = 0; b < n; ++b)
            row.push_back({{"blade", a ^ b}, {"sign", static_cast<int>(blade_sign(p, q, a, b))}});
        rows.push_back(row);
    }
    ordered_json grades = ordered_json::array();
    for (std::uint32_t a = 0; a < n; ++a) grades.push_back(std::popcount(a));
    ordered_json j;
    j["schema"] = 1;
    j["p"] = p;
    j["q"] = q;
    j["dimension"] = n;
    j["blade_grades"] = grades;
    j["table"] = rows;
    return j.dump(2) + "\n";
}

std::vector<std::string> emit_tables(const std::string& dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir + ": " + ec.message());
    std::vector<std::string> written;
    auto put = [&](const std::string& name, const std::string& text) {
        const std::string path = (fs::path(dir) / name).string();
        std::ofstream out(path, std::ios::binary);
        if (!out || !(out << text) || !out.flush()) throw IoError("cannot write " + path);
        written.push_back(path);
    };
    put("octonion.json", octonion_table_json());
    put("c4.json", c4_table_json());
    for (int p = 0; p <= 4; ++p)
        for (int q = 0; p + q <= 4; ++q)
            put("clifford_" + std::to_string(p) + "_" + std::to_string(q) + ".json", clifford_table_json(p, q));
    return written;
}

}  // namespace g2lab
