#include "santalo/report.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace santalo {

VerificationReport::VerificationReport(std::string name,
                                       std::vector<std::pair<std::string, double>> quantities,
                                       double deficit, double tolerance, double error_estimate)
    : name_(std::move(name)), quantities_(std::move(quantities)), deficit_(deficit),
      tolerance_(tolerance), error_estimate_(error_estimate) {
    if (!std::isfinite(deficit_))
        throw std::runtime_error("non-finite deficit in report '" + name_ + "'");
    for (const auto& [label, value] : quantities_)
        if (!std::isfinite(value))
            throw std::runtime_error("non-finite quantity '" + label + "' in report '" + name_ +
                                     "'");
    passed_ = deficit_ >= -tolerance_;
}

double VerificationReport::quantity(const std::string& label) const {
    for (const auto& [l, v] : quantities_)
        if (l == label) return v;
    throw std::out_of_range("no quantity '" + label + "' in report '" + name_ + "'");
}

double policy_tolerance(double error_estimate) {
    return std::max(1e-6, 10.0 * error_estimate);
}

std::string VerificationReport::to_json(int indent) const {
    nlohmann::ordered_json j;
    j["name"] = name_;
    nlohmann::ordered_json q;
    for (const auto& [label, value] : quantities_) q[label] = value;
    j["quantities"] = q;
    j["deficit"] = deficit_;
    j["tolerance"] = tolerance_;
    j["passed"] = passed_;
    j["error_estimate"] = error_estimate_;
    return j.dump(indent);
}

std::string VerificationReport::csv_header() { return "name,deficit,passed\n"; }

std::string VerificationReport::csv_row() const {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", deficit_);
    return name_ + "," + buf + "," + (passed_ ? "true" : "false") + "\n";
}

std::string reports_to_json(const std::vector<VerificationReport>& reports, int indent) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : reports) arr.push_back(nlohmann::ordered_json::parse(r.to_json()));
    return arr.dump(indent);
}

std::string reports_to_csv(const std::vector<VerificationReport>& reports) {
    std::string out = VerificationReport::csv_header();
    for (const auto& r : reports) out += r.csv_row();
    return out;
}

}  // namespace santalo
