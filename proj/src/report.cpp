#include "vxa/report.hpp"

#include "json.hpp"

#include <sstream>

namespace vxa {

namespace {
const char* status_name(check_status s) {
    switch (s) {
        case check_status::pass: return "pass";
        case check_status::fail: return "fail";
        default: return "info";
    }
}
}  // namespace

std::string Report::str() const {
    std::ostringstream out;
    out << "suite " << suite;
    for (auto& [k, v] : params) out << " " << k << "=" << v;
    out << "\n";
    for (auto& it : items) {
        out << "  [" << status_name(it.status) << "] " << it.name;
        if (!it.detail.empty()) out << ": " << it.detail;
        out << "\n";
    }
    out << (pass() ? "PASS" : "FAIL") << "\n";
    return out.str();
}

std::string Report::json() const {
    nlohmann::ordered_json j;
    j["suite"] = suite;
    j["params"] = nlohmann::ordered_json::object();
    for (auto& [k, v] : params) j["params"][k] = v;
    j["items"] = nlohmann::ordered_json::array();
    for (auto& it : items) {
        nlohmann::ordered_json e;
        e["name"] = it.name;
        e["status"] = status_name(it.status);
        if (!it.detail.empty()) e["detail"] = it.detail;
        j["items"].push_back(e);
    }
    j["pass"] = pass();
    return j.dump(2);
}

}  // namespace vxa
