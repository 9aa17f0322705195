#pragma once

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "waveq/errors.hpp"
#include "waveq/qubit.hpp"
#include "waveq/relations.hpp"
#include "waveq/signal.hpp"
#include "waveq/transform.hpp"

namespace waveq {

// Shortest decimal form that round-trips a double exactly.
inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
}

namespace detail {

inline void write_text(const std::string& path, const std::string& text) {
    std::ofstream ofs(path, std::ios::binary);
    if (!ofs)
        throw IoError("I/O error: cannot open '" + path + "' for writing");
    ofs.write(text.data(), static_cast<std::streamsize>(text.size()));
    ofs.flush();
    if (!ofs.good())
        throw IoError("I/O error: failed while writing '" + path + "'");
}

inline std::string trim(const std::string& s) {
    std::size_t a = 0;
    std::size_t b = s.size();
    while (a < b && (s[a] == ' ' || s[a] == '\t' || s[a] == '\r'))
        ++a;
    while (b > a && (s[b - 1] == ' ' || s[b - 1] == '\t' || s[b - 1] == '\r'))
        --b;
    return s.substr(a, b - a);
}

inline bool parse_double(const std::string& field, double& out) {
    const std::string t = trim(field);
    if (t.empty())
        return false;
    const char* begin = t.c_str();
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(begin, &end);
    if (end != begin + t.size())
        return false;
    out = v;
    return true;
}

inline std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return out;
}

// All numeric rows of a CSV file with exactly `cols` columns.  A single
// leading header line is tolerated; blank lines are skipped.
inline std::vector<std::vector<double>> read_numeric_table(const std::string& path, std::size_t cols) {
    std::ifstream ifs(path);
    if (!ifs)
        throw IoError("I/O error: cannot open '" + path + "'");
    std::vector<std::vector<double>> rows;
    std::string line;
    long lineno = 0;
    bool saw_content = false;
    while (std::getline(ifs, line)) {
        ++lineno;
        if (trim(line).empty())
            continue;
        const std::vector<std::string> fields = split_fields(line);
        std::vector<double> values(fields.size());
        bool numeric = true;
        for (std::size_t c = 0; c < fields.size(); ++c)
            if (!parse_double(fields[c], values[c])) {
                numeric = false;
                break;
            }
        if (!numeric) {
            if (!saw_content) {
                saw_content = true; // header line
                continue;
            }
            throw ParseError(path + ":" + std::to_string(lineno) + ": parse error: non-numeric field");
        }
        saw_content = true;
        if (fields.size() != cols)
            throw ParseError(path + ":" + std::to_string(lineno) + ": parse error: expected " +
                             std::to_string(cols) + " fields, got " + std::to_string(fields.size()));
        rows.push_back(std::move(values));
    }
    return rows;
}

// Infer the uniform grid behind an explicit time column.
inline TimeSeries<double> series_from_columns(const std::vector<double>& t, const std::vector<double>& v) {
    const std::size_t n = t.size();
    if (n < 2)
        throw DomainError("size error: time series needs at least 2 samples");
    TimeSeries<double> out;
    out.t0 = t[0];
    out.dt = (t[n - 1] - t[0]) / double(n - 1);
    if (!(out.dt > 0))
        throw DomainError("spacing error: times must be strictly ascending");
    for (std::size_t k = 0; k + 1 < n; ++k)
        if (std::abs((t[k + 1] - t[k]) - out.dt) > 1e-6 * out.dt)
            throw DomainError("spacing error: non-uniform sample spacing at row " + std::to_string(k + 1));
    out.samples.resize(static_cast<Index>(n));
    for (std::size_t k = 0; k < n; ++k)
        out.samples[static_cast<Index>(k)] = v[k];
    out.validate();
    return out;
}

} // namespace detail

// --- signal CSV: header "t,value", one sample per row ---

inline void write_signal_csv(const TimeSeries<double>& series, const std::string& path) {
    series.validate();
    std::ostringstream os;
    os << "t,value\n";
    for (Index k = 0; k < series.size(); ++k)
        os << fmt17(series.time(k)) << "," << fmt17(series.samples[k]) << "\n";
    detail::write_text(path, os.str());
}

inline TimeSeries<double> read_signal_csv(const std::string& path) {
    const auto rows = detail::read_numeric_table(path, 2);
    std::vector<double> t(rows.size());
    std::vector<double> v(rows.size());
    for (std::size_t k = 0; k < rows.size(); ++k) {
        t[k] = rows[k][0];
        v[k] = rows[k][1];
    }
    return detail::series_from_columns(t, v);
}

// Single-column variant for files that carry only values.
inline TimeSeries<double> read_signal_csv(const std::string& path, double dt, double t0) {
    const auto rows = detail::read_numeric_table(path, 1);
    TimeSeries<double> out;
    out.t0 = t0;
    out.dt = dt;
    out.samples.resize(static_cast<Index>(rows.size()));
    for (std::size_t k = 0; k < rows.size(); ++k)
        out.samples[static_cast<Index>(k)] = rows[k][0];
    out.validate();
    return out;
}

// --- map CSV: header "omega,T,W", row-major over (frequency, shift) ---

inline void write_map_csv(const WaveletMap<double>& map, const std::string& path) {
    map.validate();
    std::ostringstream os;
    os << "omega,T,W\n";
    for (Index i = 0; i < map.rows(); ++i)
        for (Index j = 0; j < map.cols(); ++j)
            os << fmt17(map.freq.values[i]) << "," << fmt17(map.times.value(j)) << ","
               << fmt17(map.coeffs(i, j)) << "\n";
    detail::write_text(path, os.str());
}

inline WaveletMap<double> read_map_csv(const std::string& path) {
    const auto rows = detail::read_numeric_table(path, 3);
    if (rows.size() < 4)
        throw DomainError("domain error: map needs at least 2 frequency rows and 2 shift columns");

    const double omega0 = rows[0][0];
    std::size_t nT = 0;
    while (nT < rows.size() && rows[nT][0] == omega0)
        ++nT;
    if (nT < 2)
        throw DomainError("domain error: map needs at least 2 shift columns");
    if (rows.size() % nT != 0)
        throw ParseError(path + ": parse error: map blocks are not rectangular");
    const Index nw = static_cast<Index>(rows.size() / nT);
    if (nw < 2)
        throw DomainError("domain error: map needs at least 2 frequency rows");

    WaveletMap<double> map;
    map.times.t0 = rows[0][1];
    map.times.dT = (rows[nT - 1][1] - rows[0][1]) / double(nT - 1);
    map.times.count = static_cast<Index>(nT);
    if (!(map.times.dT > 0))
        throw DomainError("spacing error: map shifts must be strictly ascending");
    for (std::size_t j = 0; j + 1 < nT; ++j)
        if (std::abs((rows[j + 1][1] - rows[j][1]) - map.times.dT) > 1e-6 * map.times.dT)
            throw DomainError("spacing error: non-uniform map shift spacing at column " + std::to_string(j + 1));

    map.freq.values.resize(nw);
    map.coeffs.resize(nw, static_cast<Index>(nT));
    for (Index i = 0; i < nw; ++i) {
        map.freq.values[i] = rows[static_cast<std::size_t>(i) * nT][0];
        for (std::size_t j = 0; j < nT; ++j) {
            const auto& row = rows[static_cast<std::size_t>(i) * nT + j];
            if (row[0] != map.freq.values[i])
                throw ParseError(path + ": parse error: frequency changes inside a map row block");
            if (row[1] != rows[j][1])
                throw ParseError(path + ": parse error: shift axis differs between map rows");
            map.coeffs(i, static_cast<Index>(j)) = row[2];
        }
    }
    map.validate();
    return map;
}

// --- map PGM: binary P5, one pixel per cell, highest frequency on top,
// intensity 255 |W| / max |W| ---

inline void write_map_pgm(const WaveletMap<double>& map, const std::string& path) {
    map.validate();
    const double maxabs = map.coeffs.abs().maxCoeff();
    std::ostringstream os;
    os << "P5\n" << map.cols() << " " << map.rows() << "\n255\n";
    for (Index i = map.rows() - 1; i >= 0; --i)
        for (Index j = 0; j < map.cols(); ++j) {
            const long byte = maxabs == 0 ? 0 : std::lround(255.0 * std::abs(map.coeffs(i, j)) / maxabs);
            os.put(static_cast<char>(static_cast<unsigned char>(byte)));
        }
    detail::write_text(path, os.str());
}

// --- qubit JSON ---

inline void write_qubit_json(const QubitState<double>& q, const std::string& path) {
    std::ostringstream os;
    auto point = [&os](const char* name, const MapPoint<double>& p) {
        os << "  \"" << name << "\": {\n"
           << "    \"omega\": " << fmt17(p.omega) << ",\n"
           << "    \"T\": " << fmt17(p.shift) << ",\n"
           << "    \"W\": " << fmt17(p.coeff) << ",\n"
           << "    \"freq_index\": " << p.freq_index << ",\n"
           << "    \"time_index\": " << p.time_index << "\n"
           << "  },\n";
    };
    os << "{\n";
    point("point_m", q.point_m);
    point("point_n", q.point_n);
    os << "  \"wavelet_kind\": \"" << wavelet_kind_name(q.wavelet_kind) << "\",\n"
       << "  \"admissibility\": " << fmt17(q.admissibility) << ",\n"
       << "  \"normalized\": " << (q.normalized ? "true" : "false") << "\n"
       << "}\n";
    detail::write_text(path, os.str());
}

inline QubitState<double> read_qubit_json(const std::string& path) {
    std::ifstream ifs(path);
    if (!ifs)
        throw IoError("I/O error: cannot open '" + path + "'");
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(ifs);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": parse error: " + e.what());
    }
    auto require = [&](const nlohmann::json& node, const char* key) -> const nlohmann::json& {
        if (!node.is_object() || !node.contains(key))
            throw ParseError(path + ": parse error: missing field '" + std::string(key) + "'");
        return node.at(key);
    };
    auto number = [&](const nlohmann::json& node, const char* key) {
        const nlohmann::json& v = require(node, key);
        if (!v.is_number())
            throw ParseError(path + ": parse error: field '" + std::string(key) + "' must be a number");
        return v.get<double>();
    };
    auto integer = [&](const nlohmann::json& node, const char* key) {
        const nlohmann::json& v = require(node, key);
        if (!v.is_number_integer())
            throw ParseError(path + ": parse error: field '" + std::string(key) + "' must be an integer");
        return static_cast<Index>(v.get<long long>());
    };
    auto point = [&](const char* key) {
        const nlohmann::json& node = require(doc, key);
        MapPoint<double> p;
        p.omega = number(node, "omega");
        p.shift = number(node, "T");
        p.coeff = number(node, "W");
        p.freq_index = integer(node, "freq_index");
        p.time_index = integer(node, "time_index");
        if (!std::isfinite(p.omega) || !std::isfinite(p.shift) || !std::isfinite(p.coeff))
            throw DomainError("domain error: qubit point values must be finite");
        if (!(p.omega > 0))
            throw DomainError("domain error: qubit point frequency must be positive");
        return p;
    };

    QubitState<double> q;
    q.point_m = point("point_m");
    q.point_n = point("point_n");
    const nlohmann::json& kind = require(doc, "wavelet_kind");
    if (!kind.is_string())
        throw ParseError(path + ": parse error: field 'wavelet_kind' must be a string");
    q.wavelet_kind = wavelet_kind_from_name(kind.get<std::string>());
    q.admissibility = number(doc, "admissibility");
    if (!std::isfinite(q.admissibility) || !(q.admissibility > 0))
        throw DomainError("domain error: admissibility must be finite and positive");
    const nlohmann::json& norm = require(doc, "normalized");
    if (!norm.is_boolean())
        throw ParseError(path + ": parse error: field 'normalized' must be a boolean");
    q.normalized = norm.get<bool>();
    return q;
}

// --- relation JSON ---

inline void write_relation_json(const RelationState<double>& s, const BellClassification<double>& cls,
                                double det, bool separated, double tol, const std::string& path) {
    std::ostringstream os;
    os << "{\n"
       << "  \"U\": [" << fmt17(s.u11()) << ", " << fmt17(s.u12()) << ", " << fmt17(s.u21()) << ", "
       << fmt17(s.u22()) << "],\n"
       << "  \"labels\": [[\"m\", \"m\"], [\"m\", \"n\"], [\"n\", \"m\"], [\"n\", \"n\"]],\n"
       << "  \"determinant\": " << fmt17(det) << ",\n"
       << "  \"bell_matched\": [";
    for (std::size_t k = 0; k < cls.matched.size(); ++k) {
        if (k > 0)
            os << ", ";
        os << "[\"" << bell_condition_letter(cls.matched[k]) << "\", \"" << bell_condition_form(cls.matched[k])
           << "\"]";
    }
    os << "],\n"
       << "  \"separated\": " << (separated ? "true" : "false") << ",\n"
       << "  \"tol\": " << fmt17(tol) << "\n"
       << "}\n";
    detail::write_text(path, os.str());
}

} // namespace waveq
