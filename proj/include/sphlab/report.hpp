#pragma once

// Experiment reports: per-scale rows, fitted exponents, verdicts, and
// CSV/JSON emission.

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sphlab/common.hpp"
#include "sphlab/fitting.hpp"

namespace sphlab {

struct ReportRow {
    double Lambda = 0;
    double measured = 0;
    double bound = std::numeric_limits<double>::quiet_NaN();  // optional second quantity
    double reference_exponent = std::numeric_limits<double>::quiet_NaN();
};

struct ExperimentReport {
    std::string id;
    std::string params;  // parameter echo
    std::vector<ReportRow> rows;  // sorted by Lambda
    double fitted_slope = std::numeric_limits<double>::quiet_NaN();
    double reference_slope = std::numeric_limits<double>::quiet_NaN();
    double tolerance = 0.1;
    bool pass = false;
    bool violation = false;  // counterexample suites: measured growth beat the bound
    std::string note;

    std::string csv() const {
        std::ostringstream os;
        os.precision(12);
        os << "Lambda,measured,bound,reference_exponent\n";
        for (const auto& r : rows)
            os << r.Lambda << ',' << r.measured << ',' << r.bound << ',' << r.reference_exponent
               << '\n';
        os << "# id=" << id << " params=" << params << " fitted_slope=" << fitted_slope
           << " reference_slope=" << reference_slope << " tolerance=" << tolerance
           << " pass=" << (pass ? 1 : 0) << " violation=" << (violation ? 1 : 0)
           << " note=" << note << '\n';
        return os.str();
    }

    nlohmann::json json() const {
        nlohmann::json j;
        j["id"] = id;
        j["params"] = params;
        j["fitted_slope"] = fitted_slope;
        j["reference_slope"] = reference_slope;
        j["tolerance"] = tolerance;
        j["pass"] = pass;
        j["violation"] = violation;
        j["note"] = note;
        j["rows"] = nlohmann::json::array();
        for (const auto& r : rows)
            j["rows"].push_back({{"Lambda", r.Lambda},
                                 {"measured", r.measured},
                                 {"bound", r.bound},
                                 {"reference_exponent", r.reference_exponent}});
        return j;
    }
};

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file " + path);
    out << text;
}

// Two-column plot data (scale, value).
inline std::string plot_data(const ExperimentReport& rep, bool bound_column = false) {
    std::ostringstream os;
    os.precision(12);
    for (const auto& r : rep.rows)
        os << r.Lambda << ' ' << (bound_column ? r.bound : r.measured) << '\n';
    return os.str();
}

}  // namespace sphlab
