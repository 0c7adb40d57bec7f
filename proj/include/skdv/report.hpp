#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace skdv {

// One verified identity: name, verdict, and the term count of the exact
// residual (0 on success; checks carry no tolerances).
struct ReportLine {
    std::string name;
    bool pass = false;
    std::size_t residual_terms = 0;
    std::string detail;
};

struct CheckReport {
    std::string case_id;
    std::vector<ReportLine> lines;

    bool pass() const {
        for (const auto& l : lines)
            if (!l.pass) return false;
        return true;
    }

    void add(std::string name, bool ok, std::size_t residual_terms = 0, std::string detail = "") {
        lines.push_back({std::move(name), ok, residual_terms, std::move(detail)});
    }

    void print(std::ostream& os) const {
        os << "case " << case_id << ": " << (pass() ? "PASS" : "FAIL") << "\n";
        for (const auto& l : lines) {
            os << "  [" << (l.pass ? "ok" : "FAIL") << "] " << l.name
               << " (residual terms: " << l.residual_terms << ")";
            if (!l.detail.empty()) os << " -- " << l.detail;
            os << "\n";
        }
    }
};

} // namespace skdv
