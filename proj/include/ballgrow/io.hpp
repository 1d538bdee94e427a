#ifndef BALLGROW_IO_HPP
#define BALLGROW_IO_HPP

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dataset.hpp"
#include "format.hpp"
#include "summary.hpp"

namespace ballgrow {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& path, std::size_t line, const std::string& what)
        : std::runtime_error(path + ":" + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

enum class Delimiter { automatic, comma, whitespace };

struct LoadOptions {
    Delimiter delimiter = Delimiter::automatic;
    bool has_header = false;
    /// Column holding the class label, by header name or zero-based index.
    std::optional<std::string> label_column;
    /// Label values that mark a row as a truth outlier.
    std::set<std::string> outlier_labels = {"o"};
};

namespace detail {

inline std::vector<std::string> split_fields(const std::string& line, Delimiter delimiter) {
    std::vector<std::string> out;
    if (delimiter == Delimiter::comma) {
        std::string field;
        std::istringstream in(line);
        while (std::getline(in, field, ',')) {
            out.push_back(field);
        }
        if (!line.empty() && line.back() == ',') {
            out.emplace_back();
        }
    } else {
        std::istringstream in(line);
        std::string field;
        while (in >> field) {
            out.push_back(field);
        }
    }
    for (auto& f : out) {
        const auto first = f.find_first_not_of(" \t\r");
        const auto last = f.find_last_not_of(" \t\r");
        f = first == std::string::npos ? std::string{} : f.substr(first, last - first + 1);
    }
    return out;
}

inline bool blank(const std::string& line) { return line.find_first_not_of(" \t\r") == std::string::npos; }

}  // namespace detail

/**
 * Reads one point per row from comma- or whitespace-separated text.
 * Blank lines are skipped. Ids are the zero-based data-row numbers.
 */
inline Dataset load_delimited(const std::string& path, const LoadOptions& options = {}) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "'");
    }
    Dataset out;
    std::vector<std::size_t> truth;
    std::optional<std::size_t> label_index;
    Delimiter delimiter = options.delimiter;
    bool header_pending = options.has_header;
    std::size_t width = 0;

    auto resolve_label = [&](const std::vector<std::string>* header, std::size_t lineno) {
        if (!options.label_column) {
            return;
        }
        if (header) {
            const auto it = std::find(header->begin(), header->end(), *options.label_column);
            if (it != header->end()) {
                label_index = static_cast<std::size_t>(it - header->begin());
                return;
            }
        }
        const auto idx = parse_number(*options.label_column);
        if (!idx || *idx < 0 || *idx != static_cast<double>(static_cast<std::size_t>(*idx))) {
            throw ParseError(path, lineno, "label column '" + *options.label_column + "' not found");
        }
        label_index = static_cast<std::size_t>(*idx);
    };

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (detail::blank(line)) {
            continue;
        }
        if (delimiter == Delimiter::automatic) {
            delimiter = line.find(',') != std::string::npos ? Delimiter::comma : Delimiter::whitespace;
        }
        auto fields = detail::split_fields(line, delimiter);
        if (header_pending) {
            header_pending = false;
            resolve_label(&fields, lineno);
            continue;
        }
        if (width == 0) {
            width = fields.size();
            if (!label_index) {
                resolve_label(nullptr, lineno);
            }
            if (label_index && *label_index >= width) {
                throw ParseError(path, lineno, "label column index out of range");
            }
            out.dim = width - (label_index ? 1 : 0);
            if (out.dim == 0) {
                throw ParseError(path, lineno, "row has no coordinate columns");
            }
        } else if (fields.size() != width) {
            throw ParseError(path, lineno,
                             "expected " + std::to_string(width) + " fields, found " + std::to_string(fields.size()));
        }
        for (std::size_t c = 0; c < fields.size(); ++c) {
            if (label_index && c == *label_index) {
                if (options.outlier_labels.count(fields[c]) > 0) {
                    truth.push_back(out.size());
                }
                continue;
            }
            const auto v = parse_number(fields[c]);
            if (!v || !std::isfinite(*v)) {
                throw ParseError(path, lineno, "cannot parse '" + fields[c] + "' as a finite number");
            }
            out.coords.push_back(*v);
        }
        out.ids.push_back(out.ids.size());
    }
    if (out.empty()) {
        throw std::runtime_error("'" + path + "' contains no data rows");
    }
    if (label_index) {
        out.truth_outliers = std::move(truth);
    }
    return out;
}

/// Comma-separated, one point per row, shortest round-trip number text.
inline void write_delimited(std::ostream& out, const Dataset& data) {
    for (std::size_t i = 0; i < data.size(); ++i) {
        const auto p = data.point(i);
        for (std::size_t j = 0; j < data.dim; ++j) {
            if (j > 0) {
                out << ',';
            }
            out << format_number(p[j]);
        }
        out << '\n';
    }
}

inline void write_delimited(const std::string& path, const Dataset& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write '" + path + "'");
    }
    write_delimited(out, data);
}

/// Truth sidecar: one outlier index per line.
inline void write_truth(const std::string& path, const Dataset& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write '" + path + "'");
    }
    if (data.truth_outliers) {
        for (auto i : *data.truth_outliers) {
            out << i << '\n';
        }
    }
}

inline std::vector<std::size_t> read_truth(const std::string& path, std::size_t n) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "'");
    }
    std::vector<std::size_t> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (detail::blank(line)) {
            continue;
        }
        const auto v = parse_number(line);
        if (!v || *v < 0 || *v != static_cast<double>(static_cast<std::size_t>(*v))) {
            throw ParseError(path, lineno, "expected a non-negative integer index");
        }
        const auto idx = static_cast<std::size_t>(*v);
        if (idx >= n) {
            throw ParseError(path, lineno, "index " + std::to_string(idx) + " out of range");
        }
        out.push_back(idx);
    }
    std::sort(out.begin(), out.end());
    if (std::adjacent_find(out.begin(), out.end()) != out.end()) {
        throw std::runtime_error("'" + path + "' lists an index twice");
    }
    return out;
}

/// Summary rows: coordinates, weight, provenance tag, global id. First line is a header.
inline void write_summary(std::ostream& out, const Summary& summary) {
    for (std::size_t j = 0; j < summary.dim; ++j) {
        out << 'x' << j << ',';
    }
    out << "weight,provenance,id\n";
    for (const auto& e : summary.entries) {
        for (double c : e.coords) {
            out << format_number(c) << ',';
        }
        out << e.weight << ',' << to_string(e.provenance) << ',' << e.id << '\n';
    }
}

inline void write_summary(const std::string& path, const Summary& summary) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write '" + path + "'");
    }
    write_summary(out, summary);
}

/// Reads entries back; the mapping and statistics are not part of the file.
inline Summary read_summary(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "'");
    }
    Summary out;
    std::string line;
    std::size_t lineno = 0;
    std::size_t width = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (detail::blank(line)) {
            continue;
        }
        auto fields = detail::split_fields(line, Delimiter::comma);
        if (width == 0) {
            width = fields.size();
            if (width < 4 || fields[width - 3] != "weight") {
                throw ParseError(path, lineno, "missing summary header");
            }
            out.dim = width - 3;
            continue;
        }
        if (fields.size() != width) {
            throw ParseError(path, lineno, "expected " + std::to_string(width) + " fields");
        }
        SummaryEntry e;
        for (std::size_t j = 0; j < out.dim; ++j) {
            const auto v = parse_number(fields[j]);
            if (!v || !std::isfinite(*v)) {
                throw ParseError(path, lineno, "cannot parse '" + fields[j] + "' as a finite number");
            }
            e.coords.push_back(*v);
        }
        const auto w = parse_number(fields[out.dim]);
        const auto id = parse_number(fields[out.dim + 2]);
        if (!w || *w < 1 || !id || *id < 0) {
            throw ParseError(path, lineno, "bad weight or id");
        }
        e.weight = static_cast<Weight>(*w);
        e.id = static_cast<PointId>(*id);
        try {
            e.provenance = parse_provenance(fields[out.dim + 1]);
        } catch (const std::invalid_argument& err) {
            throw ParseError(path, lineno, err.what());
        }
        out.entries.push_back(std::move(e));
    }
    if (out.entries.empty()) {
        throw std::runtime_error("'" + path + "' contains no summary entries");
    }
    return out;
}

}  // namespace ballgrow

#endif  // BALLGROW_IO_HPP
