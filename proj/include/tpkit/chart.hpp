#pragma once

#include "tpkit/errors.hpp"

#include <algorithm>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace tpkit {

// A named coordinate patch. All tensors, maps and structures live on a chart;
// the variable order fixes the monomial order and every index convention.
class Chart {
public:
    static std::shared_ptr<const Chart> make(std::string name, std::vector<std::string> vars) {
        if (vars.empty()) throw DimensionError("chart '" + name + "' needs at least one variable");
        for (std::size_t i = 0; i < vars.size(); ++i)
            for (std::size_t j = i + 1; j < vars.size(); ++j)
                if (vars[i] == vars[j])
                    throw DimensionError("chart '" + name + "' repeats variable '" + vars[i] + "'");
        return std::shared_ptr<const Chart>(new Chart(std::move(name), std::move(vars)));
    }

    const std::string& name() const { return name_; }
    const std::vector<std::string>& vars() const { return vars_; }
    int dim() const { return static_cast<int>(vars_.size()); }
    const std::string& var(int i) const { return vars_.at(static_cast<std::size_t>(i)); }

    std::optional<int> var_index(const std::string& v) const {
        auto it = std::find(vars_.begin(), vars_.end(), v);
        if (it == vars_.end()) return std::nullopt;
        return static_cast<int>(it - vars_.begin());
    }

    friend bool operator==(const Chart& a, const Chart& b) {
        return a.name_ == b.name_ && a.vars_ == b.vars_;
    }
    friend bool operator!=(const Chart& a, const Chart& b) { return !(a == b); }

private:
    Chart(std::string name, std::vector<std::string> vars)
        : name_(std::move(name)), vars_(std::move(vars)) {}

    std::string name_;
    std::vector<std::string> vars_;
};

using ChartPtr = std::shared_ptr<const Chart>;

inline bool same_chart(const ChartPtr& a, const ChartPtr& b) {
    return a == b || (a && b && *a == *b);
}

inline void require_same_chart(const ChartPtr& a, const ChartPtr& b, const char* what) {
    if (!same_chart(a, b))
        throw ChartMismatchError(std::string(what) + ": charts '" + (a ? a->name() : "?") +
                                 "' and '" + (b ? b->name() : "?") + "' differ");
}

} // namespace tpkit
