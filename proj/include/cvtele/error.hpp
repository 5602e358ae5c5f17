#pragma once

#include <stdexcept>
#include <string>

namespace cvtele {

// Carries enough structure for the CLI to emit machine-readable error JSON:
// {module, check, defect, tolerance}.
class Error : public std::runtime_error {
public:
    Error(std::string module, std::string check, const std::string& message,
          double defect = 0.0, double tolerance = 0.0)
        : std::runtime_error(message),
          module_(std::move(module)),
          check_(std::move(check)),
          defect_(defect),
          tolerance_(tolerance) {}

    const std::string& module() const { return module_; }
    const std::string& check() const { return check_; }
    double defect() const { return defect_; }
    double tolerance() const { return tolerance_; }

private:
    std::string module_;
    std::string check_;
    double defect_;
    double tolerance_;
};

}  // namespace cvtele
