#pragma once

#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>

#include "finite.hpp"
#include "limits.hpp"

namespace emalg {

class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// Table files are JSON objects {"n": <order>, "table": [[...], ...]}.
/// Content defects raise TableFormatError; file-system problems raise IoError.
std::string table_to_json(const OpTable& t);
OpTable table_from_json(const std::string& text);
OpTable read_table_file(const std::string& path);
void write_table_file(const std::string& path, const OpTable& t);

/// Fixed header "check,samples,status,witness"; status is pass/fail for
/// gating rows and info:pass/info:fail otherwise.
std::string audit_csv(const AuditReport& r);
std::string audit_json(const AuditReport& r);

std::string csv_field(const std::string& raw);

namespace detail {

inline std::string scalar_csv(const Rat& r) { return rat_str(r); }

inline std::string scalar_csv(double d) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", d);
    return buf;
}

template <class S>
std::string value_csv(const std::vector<S>& v) {
    std::string out = "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ';';
        out += scalar_csv(v[i]);
    }
    return out + ")";
}

inline std::string residual_csv(double r) {
    if (r == 0.0) return "0";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", r);
    return buf;
}

}  // namespace detail

/// Fixed header "epsilon,value,residual" plus a trailing summary row
/// "limit,<value or diverged>,<exact or rate=...>".
template <class S>
std::string convergence_csv(const ConvergenceReport<S>& r) {
    std::string out = "epsilon,value,residual\n";
    for (size_t j = 0; j < r.values.size(); ++j) {
        out += r.scale_labels[j];
        out += ',';
        out += detail::value_csv(r.values[j]);
        out += ',';
        out += j < r.residuals.size() ? detail::residual_csv(r.residuals[j]) : std::string("-");
        out += '\n';
    }
    out += "limit,";
    if (!r.limit) {
        out += "diverged,-\n";
        return out;
    }
    out += detail::value_csv(*r.limit);
    out += ',';
    if (r.exact) {
        out += "exact";
    } else {
        char buf[32];
        std::snprintf(buf, sizeof buf, "rate=%.6f", r.rate);
        out += buf;
    }
    out += '\n';
    return out;
}

namespace detail {

std::string convergence_json_impl(const std::vector<std::string>& labels,
                                  const std::vector<std::vector<std::string>>& values,
                                  const std::vector<double>& residuals,
                                  const std::vector<std::string>* limit, double rate, bool exact,
                                  bool diverged);

template <class S>
std::vector<std::string> stringify(const std::vector<S>& v) {
    std::vector<std::string> out;
    out.reserve(v.size());
    for (const S& s : v) out.push_back(scalar_csv(s));
    return out;
}

}  // namespace detail

template <class S>
std::string convergence_json(const ConvergenceReport<S>& r) {
    std::vector<std::vector<std::string>> values;
    values.reserve(r.values.size());
    for (const auto& v : r.values) values.push_back(detail::stringify(v));
    std::vector<std::string> limit;
    if (r.limit) limit = detail::stringify(*r.limit);
    return detail::convergence_json_impl(r.scale_labels, values, r.residuals,
                                         r.limit ? &limit : nullptr, r.rate, r.exact, r.diverged);
}

}  // namespace emalg
