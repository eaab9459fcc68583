#pragma once

#include <string>
#include <vector>

namespace tpkit {

// Flat, ordered list of check results. FAIL entries carry the residual
// expression or the witnessing sample point in `detail`. Serialization is
// line-oriented `path = value` so golden tests can diff reports byte-wise.
class Report {
public:
    struct Item {
        std::string path;
        std::string value; // PASS | FAIL | UNVERIFIED | literal value
        std::string detail;
    };

    void pass(const std::string& path) { items_.push_back({path, "PASS", ""}); }

    void fail(const std::string& path, const std::string& witness) {
        items_.push_back({path, "FAIL", witness});
    }

    void verdict(const std::string& path, bool ok, const std::string& witness_on_fail) {
        if (ok) pass(path);
        else fail(path, witness_on_fail);
    }

    void unverified(const std::string& path, const std::string& note = "") {
        items_.push_back({path, "UNVERIFIED", note});
    }

    void value(const std::string& path, const std::string& v) { items_.push_back({path, v, ""}); }

    void merge(const Report& other, const std::string& prefix = "") {
        for (const auto& it : other.items_)
            items_.push_back({prefix.empty() ? it.path : prefix + "." + it.path, it.value, it.detail});
    }

    const std::vector<Item>& items() const { return items_; }

    bool ok() const {
        for (const auto& it : items_)
            if (it.value == "FAIL") return false;
        return true;
    }

    bool has_verdicts() const {
        for (const auto& it : items_)
            if (it.value == "PASS" || it.value == "FAIL") return true;
        return false;
    }

    // machine-readable rendering: one `path = value` line per item, details
    // appended as `path.witness = ...`
    std::string machine() const {
        std::string out;
        for (const auto& it : items_) {
            out += it.path + " = " + it.value + "\n";
            if (!it.detail.empty()) out += it.path + ".witness = " + it.detail + "\n";
        }
        return out;
    }

    std::string text() const {
        std::string out;
        for (const auto& it : items_) {
            out += it.path + ": " + it.value;
            if (!it.detail.empty()) out += "   [" + it.detail + "]";
            out += "\n";
        }
        return out;
    }

private:
    std::vector<Item> items_;
};

} // namespace tpkit
