#ifndef BSC_CORE_VERIFY_HPP
#define BSC_CORE_VERIFY_HPP

#include <string>
#include <vector>

namespace bsc::verify {

enum class RowStatus { pass, fail, note };

struct Row {
    std::string name;     // stable identifier, kebab-case
    std::string detail;   // formula / inputs the check is pinned to
    double value = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    RowStatus status = RowStatus::pass;
};

// Runs the whole closed-form/quadrature/spectral check suite. "note" rows
// document known formula discrepancies; they never count as failures.
std::vector<Row> run_all();

bool all_passed(const std::vector<Row>& rows);

} // namespace bsc::verify

#endif
