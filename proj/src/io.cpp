#include "emalg/io.hpp"

#include <fstream>

#include "json.hpp"

namespace emalg {

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("read failed: " + path);
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << text;
    out.flush();
    if (!out) throw IoError("write failed: " + path);
}

std::string table_to_json(const OpTable& t) {
    nlohmann::json j;
    j["n"] = t.n;
    auto rows = nlohmann::json::array();
    for (int x = 0; x < t.n; ++x) {
        auto row = nlohmann::json::array();
        for (int y = 0; y < t.n; ++y) row.push_back(t.at(x, y));
        rows.push_back(std::move(row));
    }
    j["table"] = std::move(rows);
    return j.dump(2) + "\n";
}

OpTable table_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw TableFormatError(-1, -1, std::string("not valid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("n") || !j.contains("table"))
        throw TableFormatError(-1, -1, "expected an object with fields \"n\" and \"table\"");
    if (!j["n"].is_number_integer())
        throw TableFormatError(-1, -1, "field \"n\" must be an integer");
    if (!j["table"].is_array())
        throw TableFormatError(-1, -1, "field \"table\" must be an array of rows");
    const long n = j["n"].get<long>();
    if (n < 1 || n > 4096) throw TableFormatError(-1, -1, "order out of range");
    if (static_cast<long>(j["table"].size()) != n)
        throw TableFormatError(-1, -1, "declared order " + std::to_string(n) + " but table has " +
                                           std::to_string(j["table"].size()) + " rows");
    std::vector<std::vector<int>> rows;
    rows.reserve(static_cast<size_t>(n));
    for (long i = 0; i < n; ++i) {
        const auto& jr = j["table"][static_cast<size_t>(i)];
        if (!jr.is_array())
            throw TableFormatError(static_cast<int>(i), -1,
                                   "row " + std::to_string(i) + " is not an array");
        std::vector<int> row;
        row.reserve(jr.size());
        for (size_t k = 0; k < jr.size(); ++k) {
            if (!jr[k].is_number_integer())
                throw TableFormatError(static_cast<int>(i), static_cast<int>(k),
                                       "entry (" + std::to_string(i) + ", " + std::to_string(k) +
                                           ") is not an integer");
            row.push_back(jr[k].get<int>());
        }
        rows.push_back(std::move(row));
    }
    return validate_table(rows);
}

OpTable read_table_file(const std::string& path) { return table_from_json(read_text_file(path)); }

void write_table_file(const std::string& path, const OpTable& t) {
    write_text_file(path, table_to_json(t));
}

std::string csv_field(const std::string& raw) {
    if (raw.find_first_of(",\"\n\r") == std::string::npos) return raw;
    std::string out = "\"";
    for (char c : raw) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string audit_csv(const AuditReport& r) {
    std::string out = "check,samples,status,witness\n";
    for (const auto& c : r.checks) {
        out += csv_field(c.name);
        out += ',';
        out += std::to_string(c.samples);
        out += ',';
        if (!c.gating) out += "info:";
        out += c.pass ? "pass" : "fail";
        out += ',';
        out += c.witness.empty() ? std::string("-") : csv_field(c.witness);
        out += '\n';
    }
    return out;
}

std::string audit_json(const AuditReport& r) {
    nlohmann::json j;
    j["subject"] = r.subject;
    j["seed"] = r.seed;
    j["tolerance"] = r.tolerance;
    j["all_pass"] = r.all_pass();
    auto checks = nlohmann::json::array();
    for (const auto& c : r.checks) {
        nlohmann::json jc;
        jc["name"] = c.name;
        jc["samples"] = c.samples;
        jc["pass"] = c.pass;
        jc["gating"] = c.gating;
        jc["witness"] = c.witness;
        checks.push_back(std::move(jc));
    }
    j["checks"] = std::move(checks);
    return j.dump(2) + "\n";
}

namespace detail {

std::string convergence_json_impl(const std::vector<std::string>& labels,
                                  const std::vector<std::vector<std::string>>& values,
                                  const std::vector<double>& residuals,
                                  const std::vector<std::string>* limit, double rate, bool exact,
                                  bool diverged) {
    nlohmann::json j;
    j["epsilon"] = labels;
    j["values"] = values;
    j["residuals"] = residuals;
    if (limit)
        j["limit"] = *limit;
    else
        j["limit"] = nullptr;
    if (std::isnan(rate))
        j["rate"] = nullptr;
    else
        j["rate"] = rate;
    j["exact"] = exact;
    j["diverged"] = diverged;
    return j.dump(2) + "\n";
}

}  // namespace detail

}  // namespace emalg
