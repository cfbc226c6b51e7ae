#include "serialize.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace bdh::cli {

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 15);
    return std::string(buf, res.ptr);
}

std::string checksum(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string("fnv1a64:") + buf;
}

namespace {

json manifest_json(const Manifest& m, const std::string& sum) {
    json j;
    j["command"] = m.command;
    j["parameters"] = m.parameters;
    j["seed"] = m.seed ? json(*m.seed) : json(nullptr);
    j["tool_version"] = BDH_VERSION;
    j["output_checksum"] = sum;
    return j;
}

std::string join(const std::vector<std::string>& cells) {
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) line += ',';
        line += cells[i];
    }
    return line;
}

}  // namespace

std::string render_json(const Manifest& m, const json& data) {
    const std::string payload = data.dump();
    json doc;
    doc["manifest"] = manifest_json(m, checksum(payload));
    doc["data"] = data;
    return doc.dump(2) + "\n";
}

std::string render_csv(const Manifest& m, const CsvTable& table) {
    std::string body = join(table.header) + "\n";
    for (const auto& row : table.rows) body += join(row) + "\n";
    for (const auto& [k, v] : table.footer) body += "# " + k + "=" + v + "\n";

    std::string head = "# command=" + m.command + "\n";
    head += "# tool_version=" BDH_VERSION "\n";
    for (const auto& [k, v] : m.parameters) head += "# param." + k + "=" + v + "\n";
    if (m.seed) head += "# seed=" + std::to_string(*m.seed) + "\n";
    head += "# output_checksum=" + checksum(body) + "\n";
    return head + body;
}

json to_json(const BoundReport& r) {
    json j;
    j["id"] = r.id;
    j["n"] = r.n;
    j["rho"] = r.rho;
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
    j["margin"] = r.margin;
    j["status"] = to_string(r.status);
    j["asserted"] = r.asserted;
    j["note"] = r.note;
    return j;
}

json to_json(const HeightDistribution& d) {
    json j;
    j["N"] = d.N;
    j["rho"] = d.rho;
    j["mean"] = d.mean;
    j["variance"] = d.variance;
    j["survival"] = d.survival_values();
    j["pmf"] = d.pmf;
    j["index_base"] = 1;
    return j;
}

json to_json(const SimulationSummary& s, const HeightDistribution& exact) {
    json j;
    j["n_samples"] = s.n_samples;
    j["seed"] = s.seed;
    j["mode"] = to_string(s.mode);
    j["counts"] = s.counts;
    j["empirical_pmf"] = s.empirical_pmf;
    j["exact_pmf"] = exact.pmf;
    j["empirical_mean"] = s.mean;
    j["empirical_variance"] = s.variance;
    j["exact_mean"] = exact.mean;
    j["exact_variance"] = exact.variance;
    j["sup_distance"] = s.sup_distance;
    j["delta"] = s.delta;
    j["dkw_epsilon"] = s.dkw_epsilon;
    j["dkw_pass"] = s.dkw_pass();
    j["mean_busy_duration"] = s.mean_busy_duration ? json(*s.mean_busy_duration) : json(nullptr);
    j["total_steps"] = s.total_steps;
    return j;
}

json to_json(const ConvergenceRow& r) {
    json j;
    j["N"] = r.N;
    j["mean_over_n"] = r.mean_over_n;
    j["var_over_n"] = r.var_over_n;
    j["f"] = r.f;
    j["var_limit"] = r.var_limit;
    j["mean_gap"] = r.mean_gap;
    j["var_gap"] = r.var_gap;
    return j;
}

CsvTable dist_table(const HeightDistribution& d) {
    CsvTable t;
    t.header = {"k", "survival", "pmf"};
    const auto surv = d.survival_values();
    for (std::size_t i = 0; i < surv.size(); ++i) {
        t.rows.push_back({std::to_string(i + 1), format_number(surv[i]), format_number(d.pmf[i])});
    }
    t.footer = {{"mean", format_number(d.mean)}, {"variance", format_number(d.variance)}};
    return t;
}

CsvTable simulation_table(const SimulationSummary& s, const HeightDistribution& exact) {
    CsvTable t;
    t.header = {"k", "count", "empirical_pmf", "exact_pmf", "ecdf", "cdf"};
    const auto ecdf = empirical_cdf(s.counts, s.n_samples);
    for (std::size_t i = 0; i < s.counts.size(); ++i) {
        const auto k = static_cast<State>(i + 1);
        t.rows.push_back({std::to_string(k), std::to_string(s.counts[i]), format_number(s.empirical_pmf[i]),
                          format_number(exact.pmf[i]), format_number(ecdf[i]), format_number(exact.cdf(k))});
    }
    t.footer = {{"mode", to_string(s.mode)},
                {"n_samples", std::to_string(s.n_samples)},
                {"empirical_mean", format_number(s.mean)},
                {"empirical_variance", format_number(s.variance)},
                {"exact_mean", format_number(exact.mean)},
                {"exact_variance", format_number(exact.variance)},
                {"sup_distance", format_number(s.sup_distance)},
                {"dkw_epsilon", format_number(s.dkw_epsilon)},
                {"dkw_pass", s.dkw_pass() ? "true" : "false"}};
    if (s.mean_busy_duration) t.footer.emplace_back("mean_busy_duration", format_number(*s.mean_busy_duration));
    return t;
}

CsvTable convergence_csv(const std::vector<ConvergenceRow>& rows) {
    CsvTable t;
    t.header = {"N", "mean_over_n", "var_over_n", "f", "var_limit", "mean_gap", "var_gap"};
    for (const auto& r : rows) {
        t.rows.push_back({std::to_string(r.N), format_number(r.mean_over_n), format_number(r.var_over_n),
                          format_number(r.f), format_number(r.var_limit), format_number(r.mean_gap),
                          format_number(r.var_gap)});
    }
    return t;
}

}  // namespace bdh::cli
