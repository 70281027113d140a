// Copyright 2026 The kacfc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "kacfc_cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace kacfc::cli {
namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool parse_real(const std::string& s, double& out) {
    std::istringstream is(s);
    is >> out;
    return !is.fail() && is.eof() && std::isfinite(out);
}

bool parse_bool(const std::string& s, bool& out) {
    if (s == "true" || s == "1" || s == "yes" || s == "on") {
        out = true;
        return true;
    }
    if (s == "false" || s == "0" || s == "no" || s == "off") {
        out = false;
        return true;
    }
    return false;
}

}  // namespace

std::vector<double> parse_real_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        double v = 0.0;
        if (!parse_real(trim(item), v)) throw UsageError("malformed number '" + trim(item) + "' in list '" + s + "'");
        out.push_back(v);
    }
    if (out.empty()) throw UsageError("empty parameter list");
    return out;
}

RunConfig::RunConfig(Schema schema) : schema_(std::move(schema)) {
    for (const auto& s : schema_) values_[s.name] = s.default_value;
}

const KeySpec& RunConfig::spec(const std::string& key) const {
    for (const auto& s : schema_) {
        if (s.name == key) return s;
    }
    throw UsageError("unknown configuration key '" + key + "'");
}

void RunConfig::validate(const KeySpec& s, const std::string& value) const {
    switch (s.type) {
        case KeyType::real: {
            double v = 0.0;
            if (!parse_real(value, v)) throw UsageError("key '" + s.name + "' expects a number, got '" + value + "'");
            break;
        }
        case KeyType::count: {
            double v = 0.0;
            if (!parse_real(value, v) || v < 0.0 || v != std::floor(v) || v > 1e15) {
                throw UsageError("key '" + s.name + "' expects a nonnegative integer, got '" + value + "'");
            }
            break;
        }
        case KeyType::text:
            if (!s.choices.empty() && std::find(s.choices.begin(), s.choices.end(), value) == s.choices.end()) {
                std::string all;
                for (const auto& c : s.choices) all += (all.empty() ? "" : ", ") + c;
                throw UsageError("key '" + s.name + "' must be one of " + all + ", got '" + value + "'");
            }
            break;
        case KeyType::real_list:
            parse_real_list(value);
            break;
        case KeyType::flag: {
            bool b = false;
            if (!parse_bool(value, b)) throw UsageError("key '" + s.name + "' expects true or false, got '" + value + "'");
            break;
        }
    }
}

void RunConfig::set(const std::string& key, const std::string& value) {
    const KeySpec& s = spec(key);
    const std::string v = trim(value);
    validate(s, v);
    values_[key] = v;
    set_[key] = true;
}

void RunConfig::load_file(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw UsageError("cannot read config file " + path.string());
    std::string line;
    int lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw UsageError(path.string() + ":" + std::to_string(lineno) + ": expected key = value");
        }
        set(trim(line.substr(0, eq)), line.substr(eq + 1));
    }
}

double RunConfig::real(const std::string& key) const {
    spec(key);
    double v = 0.0;
    parse_real(values_.at(key), v);
    return v;
}

std::size_t RunConfig::count(const std::string& key) const { return static_cast<std::size_t>(real(key)); }

const std::string& RunConfig::text(const std::string& key) const {
    spec(key);
    return values_.at(key);
}

std::vector<double> RunConfig::reals(const std::string& key) const {
    spec(key);
    return parse_real_list(values_.at(key));
}

bool RunConfig::flag(const std::string& key) const {
    spec(key);
    bool b = false;
    parse_bool(values_.at(key), b);
    return b;
}

std::string RunConfig::to_json() const {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& s : schema_) {
        const std::string& v = values_.at(s.name);
        switch (s.type) {
            case KeyType::real:
                j[s.name] = real(s.name);
                break;
            case KeyType::count:
                j[s.name] = count(s.name);
                break;
            case KeyType::text:
                j[s.name] = v;
                break;
            case KeyType::real_list:
                j[s.name] = reals(s.name);
                break;
            case KeyType::flag:
                j[s.name] = flag(s.name);
                break;
        }
    }
    return j.dump(2);
}

}  // namespace kacfc::cli
