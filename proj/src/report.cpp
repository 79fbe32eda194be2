#include "szego/report.hpp"

#include <cmath>
#include <iomanip>

#include "szego/error.hpp"

namespace szego {

MomentReport::MomentReport(std::string statistic, std::string reference_source)
    : statistic_(std::move(statistic)), reference_source_(std::move(reference_source)) {}

void MomentReport::add(std::size_t size, double statistic, double reference) {
    if (!rows_.empty() && size <= rows_.back().size)
        throw InvalidArgument("report sizes must be strictly increasing");
    rows_.push_back({size, statistic, reference, std::abs(statistic - reference)});
}

double MomentReport::limit_estimate() const {
    return rows_.empty() ? std::nan("") : rows_.back().statistic;
}

double MomentReport::final_gap() const { return rows_.empty() ? std::nan("") : rows_.back().gap; }

bool MomentReport::finite() const {
    for (const auto& r : rows_)
        if (!std::isfinite(r.statistic) || !std::isfinite(r.reference) || !std::isfinite(r.gap)) return false;
    return true;
}

void MomentReport::write_csv(std::ostream& os) const {
    const auto flags = os.flags();
    const auto precision = os.precision();
    os << "size,statistic,reference,gap\r\n" << std::setprecision(17);
    for (const auto& r : rows_) os << r.size << ',' << r.statistic << ',' << r.reference << ',' << r.gap << "\r\n";
    os.flags(flags);
    os.precision(precision);
}

nlohmann::json MomentReport::to_json() const {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : rows_)
        rows.push_back({{"size", r.size}, {"statistic", r.statistic}, {"reference", r.reference}, {"gap", r.gap}});
    return {{"statistic", statistic_},
            {"reference_source", reference_source_},
            {"limit_estimate", limit_estimate()},
            {"rows", rows}};
}

}  // namespace szego
