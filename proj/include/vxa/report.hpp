#pragma once

// Check reports shared by the verification suites and the CLI.

#include <map>
#include <string>
#include <vector>

namespace vxa {

enum class check_status { pass, fail, info };

struct CheckItem {
    std::string name;
    check_status status = check_status::fail;
    std::string detail;  // expected/got on failure, extra facts on info
};

struct Report {
    std::string suite;
    std::map<std::string, std::string> params;
    std::vector<CheckItem> items;

    void add(const std::string& name, bool ok, const std::string& detail = "") {
        items.push_back({name, ok ? check_status::pass : check_status::fail, detail});
    }
    void note(const std::string& name, const std::string& detail) {
        items.push_back({name, check_status::info, detail});
    }
    bool pass() const {
        for (auto& it : items)
            if (it.status == check_status::fail) return false;
        return true;
    }
    std::string str() const;   // one line per item
    std::string json() const;  // stable serialization
};

}  // namespace vxa
