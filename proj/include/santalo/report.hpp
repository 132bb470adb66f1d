#pragma once

#include <string>
#include <utility>
#include <vector>

namespace santalo {

/// Structured outcome of one inequality or identity check: every
/// intermediate quantity, the deficit, the tolerance it was judged at and a
/// quadrature-error estimate (half-resolution re-run where applicable).
/// passed <=> deficit >= -tolerance.
class VerificationReport {
  public:
    VerificationReport(std::string name, std::vector<std::pair<std::string, double>> quantities,
                       double deficit, double tolerance, double error_estimate = 0.0);

    const std::string& name() const { return name_; }
    double deficit() const { return deficit_; }
    double tolerance() const { return tolerance_; }
    double error_estimate() const { return error_estimate_; }
    bool passed() const { return passed_; }
    const std::vector<std::pair<std::string, double>>& quantities() const { return quantities_; }
    double quantity(const std::string& label) const;

    std::string to_json(int indent = -1) const;
    /// One CSV row: name, deficit, passed.
    std::string csv_row() const;
    static std::string csv_header();

  private:
    std::string name_;
    std::vector<std::pair<std::string, double>> quantities_;
    double deficit_, tolerance_, error_estimate_;
    bool passed_;
};

/// Default tolerance policy: max(1e-6, 10 * estimated quadrature error).
double policy_tolerance(double error_estimate);

std::string reports_to_json(const std::vector<VerificationReport>& reports, int indent = 2);
std::string reports_to_csv(const std::vector<VerificationReport>& reports);

}  // namespace santalo
