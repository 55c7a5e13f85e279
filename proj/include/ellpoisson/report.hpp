#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace ellpoisson
{

using json = nlohmann::ordered_json;

struct Failure
{
    std::string witness;
    std::string residual;
};

// Outcome of one verification sweep. status is pass iff no failure was
// recorded; only the first max_listed failures are kept verbatim.
class Report
{
public:
    static constexpr std::size_t max_listed = 25;

    Report() = default;
    Report(std::string check, json parameters);

    const std::string &check() const { return check_; }
    const json &parameters() const { return parameters_; }
    json &parameters() { return parameters_; }

    bool passed() const { return failure_count_ == 0; }
    std::size_t failure_count() const { return failure_count_; }
    const std::vector<Failure> &failures() const { return failures_; }

    // Exact checks leave the residual unset; it renders as "exact-zero" on
    // success and "nonzero" on failure.
    const std::optional<double> &max_residual() const { return max_residual_; }
    void observe_residual(double r);

    void fail(std::string witness, std::string residual);
    // Extra named values echoed in the JSON ("cases", "samples", ...).
    void note(const std::string &key, json value) { extra_[key] = std::move(value); }
    const json &notes() const { return extra_; }

    void set_duration(double seconds) { duration_ = seconds; }
    std::optional<double> duration() const { return duration_; }

    // Timing is omitted unless requested so that seeded runs are byte-identical.
    json to_json(bool with_timing = false) const;

private:
    std::string check_;
    json parameters_ = json::object();
    json extra_ = json::object();
    std::vector<Failure> failures_;
    std::size_t failure_count_ = 0;
    std::optional<double> max_residual_;
    std::optional<double> duration_;
};

// Fixed-width table rendering of a set of reports.
std::string render_table(const std::vector<Report> &reports);

} // namespace ellpoisson
