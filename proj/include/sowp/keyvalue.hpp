#pragma once

// Plain-text "key = value" dialect shared by the species data file and run
// configuration files. '#' starts a comment; blank lines are ignored.

#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"

namespace sowp::kv {

struct Entry {
    int line;
    std::string key;
    std::string value;
};

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

inline std::vector<Entry> parse(std::istream& in, std::string_view source) {
    std::vector<Entry> out;
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(std::string(source) + ":" + std::to_string(line_no) +
                              ": expected 'key = value', got '" + std::string(line) + "'");
        }
        auto key = trim(line.substr(0, eq));
        auto value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw ConfigError(std::string(source) + ":" + std::to_string(line_no) + ": empty key");
        }
        out.push_back({line_no, std::string(key), std::string(value)});
    }
    return out;
}

inline std::vector<Entry> parse_string(const std::string& text, std::string_view source) {
    std::istringstream in(text);
    return parse(in, source);
}

inline std::vector<Entry> parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    return parse(in, path);
}

/// Strict double conversion; the whole string must be consumed.
inline bool to_double(std::string_view s, double& out) {
    s = trim(s);
    if (s.empty()) return false;
    // std::from_chars rejects a leading '+', which is legal in config files.
    if (s.front() == '+') s.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

inline bool to_int(std::string_view s, int& out) {
    s = trim(s);
    if (s.empty()) return false;
    if (s.front() == '+') s.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

}  // namespace sowp::kv
