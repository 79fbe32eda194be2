#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace szego {

struct ReportRow {
    std::size_t size = 0;
    double statistic = 0.0;
    double reference = 0.0;
    double gap = 0.0;
};

/// A limit experiment: one normalized statistic per truncation size against
/// a reference value (and where that reference came from).
class MomentReport {
public:
    MomentReport(std::string statistic, std::string reference_source);

    /// Sizes must be strictly increasing; gap = |statistic - reference|.
    void add(std::size_t size, double statistic, double reference);

    const std::vector<ReportRow>& rows() const noexcept { return rows_; }
    const std::string& statistic_name() const noexcept { return statistic_; }
    const std::string& reference_source() const noexcept { return reference_source_; }

    double limit_estimate() const;
    double final_gap() const;
    /// no NaN anywhere
    bool finite() const;

    /// header size,statistic,reference,gap; %.17g numbers; CRLF line ends
    void write_csv(std::ostream& os) const;
    nlohmann::json to_json() const;

private:
    std::string statistic_;
    std::string reference_source_;
    std::vector<ReportRow> rows_;
};

}  // namespace szego
