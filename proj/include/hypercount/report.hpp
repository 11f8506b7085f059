#ifndef HYPERCOUNT_REPORT_HPP
#define HYPERCOUNT_REPORT_HPP

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "hypercount/interval.hpp"
#include "hypercount/io.hpp"

namespace hypercount {

// A run report: flat config and summary records, a table of per-trial rows,
// and named JSON samples (certificates). Config and summary values and table
// cells are JSON scalars.
struct Report {
    json config = json::object();
    json summary = json::object();
    std::vector<std::string> columns;
    std::vector<std::vector<json>> rows;
    json samples = json::object();
};

// %.12e, used for every floating value so output is byte-stable.
inline std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12e", x);
    return buf;
}

inline std::string format_interval(const Interval& i) {
    return "[" + format_double(to_double(i.lo)) + ", " + format_double(to_double(i.hi)) + "]";
}

inline json report_json(const Report& r) {
    json trials = json::array();
    for (const auto& row : r.rows) {
        json obj = json::object();
        for (std::size_t c = 0; c < r.columns.size(); ++c) obj[r.columns[c]] = row[c];
        trials.push_back(std::move(obj));
    }
    return json{{"config", r.config}, {"summary", r.summary}, {"trials", trials}, {"samples", r.samples}};
}

// Scalar cell text shared by the CSV writer and by anyone comparing formats:
// strings verbatim, null empty, everything else as compact JSON.
inline std::string scalar_text(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_null()) return "";
    return v.dump();
}

inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

// section,key,value records for config, summary and samples (samples as
// compact JSON), a blank line, then the trial table with a header row.
inline std::string report_csv(const Report& r) {
    std::ostringstream out;
    out << "section,key,value\n";
    for (const auto& [section, obj] : {std::pair<const char*, const json*>{"config", &r.config},
                                       {"summary", &r.summary}, {"samples", &r.samples}})
        for (const auto& [key, value] : obj->items())
            out << section << ',' << csv_escape(key) << ','
                << csv_escape(value.is_primitive() ? scalar_text(value) : value.dump()) << '\n';
    out << '\n';
    for (std::size_t c = 0; c < r.columns.size(); ++c) out << (c ? "," : "") << csv_escape(r.columns[c]);
    out << '\n';
    for (const auto& row : r.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << csv_escape(scalar_text(row[c]));
        out << '\n';
    }
    return out.str();
}

inline std::string render_report(const Report& r, const std::string& format) {
    if (format == "json") return report_json(r).dump(2) + "\n";
    if (format == "csv") return report_csv(r);
    throw invalid_query("unknown format '" + format + "' (json or csv)");
}

} // namespace hypercount

#endif // HYPERCOUNT_REPORT_HPP
