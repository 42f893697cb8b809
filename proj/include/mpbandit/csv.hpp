#pragma once

#include <charconv>
#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mpbandit/error.hpp"

namespace mpbandit::csv {

/// 17 significant digits: enough for any double to survive a text round trip.
inline std::string format(double value) {
    char buf[32];
    const int len = std::snprintf(buf, sizeof buf, "%.17g", value);
    return std::string(buf, static_cast<std::size_t>(len));
}

inline std::vector<std::string> split(std::string_view line, char sep = ',') {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            fields.emplace_back(line.substr(start));
            break;
        }
        fields.emplace_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

inline std::optional<double> parse_double(std::string_view text) {
    text = trim(text);
    if (text.empty()) return std::nullopt;
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
    return value;
}

inline std::optional<long long> parse_int(std::string_view text) {
    text = trim(text);
    long long value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
    return value;
}

/// Buffered row writer; throws Io if the file cannot be opened or written.
class Writer {
public:
    explicit Writer(const std::string& path) : path_(path), out_(path, std::ios::binary | std::ios::trunc) {
        if (!out_) throw Error(ErrorKind::Io, "cannot open '" + path + "' for writing");
    }

    void header(const std::vector<std::string>& columns) { row(columns); }

    void row(const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) out_ << ',';
            out_ << fields[i];
        }
        out_ << '\n';
    }

    void close() {
        out_.flush();
        if (!out_) throw Error(ErrorKind::Io, "failed writing '" + path_ + "'");
        out_.close();
    }

    ~Writer() {
        if (out_.is_open()) out_.close();
    }

private:
    std::string path_;
    std::ofstream out_;
};

}  // namespace mpbandit::csv
