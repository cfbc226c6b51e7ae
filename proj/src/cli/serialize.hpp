#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bdh/asymptotics.hpp"
#include "bdh/exactdist.hpp"
#include "bdh/simulate.hpp"

namespace bdh::cli {

using nlohmann::json;

enum class Format { json, csv };

/// 15 significant digits with "." as the decimal separator, locale independent.
std::string format_number(double v);

/// 64-bit FNV-1a, hex encoded with a "fnv1a64:" prefix.
std::string checksum(const std::string& bytes);

struct Manifest {
    std::string command;
    std::map<std::string, std::string> parameters;  // values already formatted
    std::optional<std::uint64_t> seed;
};

/// {"manifest": ..., "data": data}, with the checksum taken over data.dump().
std::string render_json(const Manifest& m, const json& data);

/// A CSV table. Manifest and footer entries are written as "# key=value"
/// lines; the checksum covers the header, rows and footer.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::pair<std::string, std::string>> footer;
};
std::string render_csv(const Manifest& m, const CsvTable& table);

json to_json(const BoundReport& r);
json to_json(const HeightDistribution& d);
json to_json(const SimulationSummary& s, const HeightDistribution& exact);
json to_json(const ConvergenceRow& r);

CsvTable dist_table(const HeightDistribution& d);
CsvTable simulation_table(const SimulationSummary& s, const HeightDistribution& exact);
CsvTable convergence_csv(const std::vector<ConvergenceRow>& rows);

}  // namespace bdh::cli
