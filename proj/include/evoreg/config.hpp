#pragma once

// Flat typed key-value configuration with [section] headers.  Unknown keys
// are hard errors: a numerical experiment misconfigured silently is worse
// than one that refuses to run.  '#' starts a comment; values are numbers,
// words, or comma-separated lists.

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "evoreg/errors.hpp"

namespace evoreg {

struct ConfigFile {
    struct Entry {
        std::string value;
        int line = 0;
        mutable bool consumed = false;
    };
    std::map<std::string, Entry> entries;  // "section.key" -> entry
    std::string path;

    static ConfigFile parse_string(const std::string& text, std::string origin = "<memory>") {
        ConfigFile cfg;
        cfg.path = std::move(origin);
        std::istringstream in(text);
        std::string line, section;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            auto strip = [](std::string s) {
                const auto b = s.find_first_not_of(" \t\r");
                if (b == std::string::npos) return std::string();
                const auto e = s.find_last_not_of(" \t\r");
                return s.substr(b, e - b + 1);
            };
            line = strip(line);
            if (line.empty()) continue;
            if (line.front() == '[') {
                if (line.back() != ']')
                    throw config_error(cfg.path + ":" + std::to_string(lineno) +
                                       ": malformed section header");
                section = strip(line.substr(1, line.size() - 2));
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw config_error(cfg.path + ":" + std::to_string(lineno) +
                                   ": expected key = value");
            const std::string key = strip(line.substr(0, eq));
            const std::string value = strip(line.substr(eq + 1));
            if (key.empty())
                throw config_error(cfg.path + ":" + std::to_string(lineno) + ": empty key");
            const std::string full = section.empty() ? key : section + "." + key;
            if (cfg.entries.count(full))
                throw config_error(cfg.path + ":" + std::to_string(lineno) +
                                   ": duplicate key '" + full + "'");
            cfg.entries[full] = Entry{value, lineno, false};
        }
        return cfg;
    }

    static ConfigFile parse_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw config_error("cannot open config file '" + path + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        return parse_string(ss.str(), path);
    }

    bool has(const std::string& key) const { return entries.count(key) > 0; }

    const Entry& at(const std::string& key) const {
        auto it = entries.find(key);
        if (it == entries.end())
            throw config_error(path + ": missing required key '" + key + "'");
        it->second.consumed = true;
        return it->second;
    }

    std::string get_string(const std::string& key, const std::string& fallback) const {
        if (!has(key)) return fallback;
        return at(key).value;
    }

    std::string get_string(const std::string& key) const { return at(key).value; }

    double get_number(const std::string& key) const {
        const Entry& e = at(key);
        try {
            size_t pos = 0;
            const double v = std::stod(e.value, &pos);
            if (pos != e.value.size()) throw std::invalid_argument("trailing");
            return v;
        } catch (const std::exception&) {
            throw config_error(path + ":" + std::to_string(e.line) + ": key '" + key +
                               "' is not a number (got '" + e.value + "')");
        }
    }

    double get_number(const std::string& key, double fallback) const {
        return has(key) ? get_number(key) : fallback;
    }

    int get_int(const std::string& key, int fallback) const {
        if (!has(key)) return fallback;
        const double v = get_number(key);
        if (v != std::floor(v))
            throw config_error(path + ": key '" + key + "' must be an integer");
        return static_cast<int>(v);
    }

    bool get_bool(const std::string& key, bool fallback) const {
        if (!has(key)) return fallback;
        const Entry& e = at(key);
        if (e.value == "true" || e.value == "1") return true;
        if (e.value == "false" || e.value == "0") return false;
        throw config_error(path + ":" + std::to_string(e.line) + ": key '" + key +
                           "' must be true or false");
    }

    std::vector<std::string> get_list(const std::string& key,
                                      std::vector<std::string> fallback) const {
        if (!has(key)) return fallback;
        std::vector<std::string> out;
        std::stringstream ss(at(key).value);
        std::string item;
        while (std::getline(ss, item, ',')) {
            const auto b = item.find_first_not_of(" \t");
            const auto e = item.find_last_not_of(" \t");
            if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
        }
        return out;
    }

    // Every parsed key must have been consumed by a getter.
    void reject_unknown_keys() const {
        for (const auto& [key, entry] : entries)
            if (!entry.consumed)
                throw config_error(path + ":" + std::to_string(entry.line) +
                                   ": unknown key '" + key + "'");
    }
};

}  // namespace evoreg
