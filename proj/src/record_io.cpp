#include "tsx/record_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace tsx {

namespace {

std::string opt_field(const std::optional<double>& v) {
    return v ? format_number(*v) : std::string{};
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

double parse_double(const std::string& s, const char* field) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0')
        throw std::invalid_argument(std::string("parse_csv: bad ") + field + " value: " + s);
    return v;
}

std::optional<double> parse_optional(const std::string& s, const char* field) {
    if (s.empty()) return std::nullopt;
    return parse_double(s, field);
}

nlohmann::ordered_json json_opt(const std::optional<double>& v) {
    if (!v) return nullptr;
    return *v;
}

} // namespace

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%#.12g", v);
    return buf;
}

std::string to_csv(const std::vector<SweepRecord>& records) {
    std::string out = kCsvHeader;
    out += '\n';
    for (const auto& r : records) {
        out += format_number(r.p);
        out += ',';
        out += format_number(r.q);
        out += ',';
        out += format_number(r.z_mag);
        out += ',';
        out += r.solvable ? "true" : "false";
        out += ',';
        out += opt_field(r.kappa_star);
        out += ',';
        out += std::to_string(r.n_roots);
        out += ',';
        out += opt_field(r.concurrence);
        out += ',';
        out += opt_field(r.mutual_cl);
        out += ',';
        out += opt_field(r.mutual_qu);
        out += ',';
        out += opt_field(r.deficit);
        out += ',';
        out += opt_field(r.s_q_joint);
        out += ',';
        out += opt_field(r.s_q_marginal);
        out += '\n';
    }
    return out;
}

std::vector<SweepRecord> parse_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader)
        throw std::invalid_argument("parse_csv: missing or unexpected header");

    std::vector<SweepRecord> records;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split(line, ',');
        if (fields.size() != 12)
            throw std::invalid_argument("parse_csv: expected 12 fields, got " +
                                        std::to_string(fields.size()));
        SweepRecord r;
        r.p = parse_double(fields[0], "p");
        r.q = parse_double(fields[1], "q");
        r.z_mag = parse_double(fields[2], "z");
        if (fields[3] == "true")
            r.solvable = true;
        else if (fields[3] == "false")
            r.solvable = false;
        else
            throw std::invalid_argument("parse_csv: bad solvable value: " + fields[3]);
        r.kappa_star = parse_optional(fields[4], "kappa");
        r.n_roots = static_cast<int>(parse_double(fields[5], "n_roots"));
        r.concurrence = parse_optional(fields[6], "concurrence");
        r.mutual_cl = parse_optional(fields[7], "mutual_cl");
        r.mutual_qu = parse_optional(fields[8], "mutual_qu");
        r.deficit = parse_optional(fields[9], "deficit");
        r.s_q_joint = parse_optional(fields[10], "sq_joint");
        r.s_q_marginal = parse_optional(fields[11], "sq_marginal");
        records.push_back(std::move(r));
    }
    return records;
}

std::string to_json(const std::vector<SweepRecord>& records) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : records) {
        nlohmann::ordered_json obj;
        obj["p"] = r.p;
        obj["q"] = r.q;
        obj["z_mag"] = r.z_mag;
        obj["solvable"] = r.solvable;
        obj["kappa_star"] = json_opt(r.kappa_star);
        obj["n_roots"] = r.n_roots;
        obj["concurrence"] = json_opt(r.concurrence);
        obj["mutual_cl"] = json_opt(r.mutual_cl);
        obj["mutual_qu"] = json_opt(r.mutual_qu);
        obj["deficit"] = json_opt(r.deficit);
        obj["s_q_joint"] = json_opt(r.s_q_joint);
        obj["s_q_marginal"] = json_opt(r.s_q_marginal);
        arr.push_back(std::move(obj));
    }
    return arr.dump(2) + "\n";
}

} // namespace tsx
