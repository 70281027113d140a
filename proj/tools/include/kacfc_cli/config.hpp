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

#pragma once

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace kacfc::cli {

// Malformed command line or configuration; maps to exit status 64.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class KeyType { real, count, text, real_list, flag };

struct KeySpec {
    std::string name;
    KeyType type = KeyType::real;
    std::string default_value;
    std::string help;
    // Allowed values for text keys; empty means any.
    std::vector<std::string> choices = {};
};

using Schema = std::vector<KeySpec>;

// Validated key=value settings of one command. Every key of the schema has a
// value; file entries override defaults and flags override file entries.
class RunConfig {
public:
    explicit RunConfig(Schema schema);

    // Throws UsageError for unknown keys and malformed values.
    void set(const std::string& key, const std::string& value);
    // Reads `key = value` lines; `#` starts a comment.
    void load_file(const std::filesystem::path& path);

    const Schema& schema() const { return schema_; }
    bool explicitly_set(const std::string& key) const { return set_.count(key) > 0; }

    double real(const std::string& key) const;
    std::size_t count(const std::string& key) const;
    const std::string& text(const std::string& key) const;
    std::vector<double> reals(const std::string& key) const;
    bool flag(const std::string& key) const;

    // Effective settings as a JSON object.
    std::string to_json() const;

private:
    const KeySpec& spec(const std::string& key) const;
    void validate(const KeySpec& s, const std::string& value) const;

    Schema schema_;
    std::map<std::string, std::string> values_;
    std::map<std::string, bool> set_;
};

// Parses "1,0.1,0.01"; throws UsageError on empty or malformed input.
std::vector<double> parse_real_list(const std::string& s);

}  // namespace kacfc::cli
