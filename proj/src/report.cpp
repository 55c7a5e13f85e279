#include "ellpoisson/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <iomanip>
#include <sstream>

namespace ellpoisson
{

Report::Report(std::string check, json parameters)
    : check_(std::move(check)), parameters_(std::move(parameters))
{
}

void Report::observe_residual(double r)
{
    if (std::isnan(r)) {
        r = std::numeric_limits<double>::infinity();
    }
    max_residual_ = max_residual_ ? std::max(*max_residual_, r) : r;
}

void Report::fail(std::string witness, std::string residual)
{
    ++failure_count_;
    if (failures_.size() < max_listed) {
        failures_.push_back({std::move(witness), std::move(residual)});
    }
}

json Report::to_json(bool with_timing) const
{
    json j;
    j["check"] = check_;
    j["parameters"] = parameters_;
    j["status"] = passed() ? "pass" : "fail";
    if (max_residual_) {
        j["max_residual"] = *max_residual_;
    } else {
        j["max_residual"] = passed() ? "exact-zero" : "nonzero";
    }
    j["failure_count"] = failure_count_;
    json fs = json::array();
    for (const auto &f : failures_) {
        fs.push_back({{"witness", f.witness}, {"residual", f.residual}});
    }
    j["failures"] = std::move(fs);
    for (const auto &[k, v] : extra_.items()) {
        j[k] = v;
    }
    if (with_timing && duration_) {
        j["duration"] = *duration_;
    }
    return j;
}

std::string render_table(const std::vector<Report> &reports)
{
    std::size_t width = 5;
    for (const auto &r : reports) {
        width = std::max(width, r.check().size());
    }
    std::ostringstream os;
    os << std::left << std::setw(static_cast<int>(width)) << "check"
       << "  status  failures  max_residual\n";
    for (const auto &r : reports) {
        os << std::left << std::setw(static_cast<int>(width)) << r.check() << "  "
           << std::setw(6) << (r.passed() ? "pass" : "FAIL") << "  " << std::setw(8)
           << r.failure_count() << "  ";
        if (r.max_residual()) {
            os << std::scientific << std::setprecision(3) << *r.max_residual()
               << std::defaultfloat;
        } else {
            os << (r.passed() ? "exact-zero" : "nonzero");
        }
        os << '\n';
        for (const auto &f : r.failures()) {
            os << "    " << f.witness << ": " << f.residual << '\n';
        }
    }
    return os.str();
}

} // namespace ellpoisson
