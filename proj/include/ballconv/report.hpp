#pragma once

#include <string>
#include <vector>

#include "ballconv/numerics.hpp"

namespace ballconv {

// Columnar run report with a structured JSON mirror. Formatting is fixed
// (%.17g, fixed row/column order, no timestamps) so identical runs produce
// byte-identical documents.
class ReportDocument {
public:
    ReportDocument(std::string command, std::string body_digest, int resolution, unsigned seed);

    void set_columns(const std::vector<std::string>& names_with_units);
    void add_row(const std::vector<double>& values);
    void add_verdict(const std::string& check, bool pass, double slack, const std::string& detail);
    void add_note(const std::string& note);

    bool all_passed() const;

    std::string to_csv() const;
    std::string to_json() const;

    // Writes report.csv and report.json under dir.
    void write(const std::string& dir) const;

private:
    std::string command_, digest_;
    int resolution_;
    unsigned seed_;
    std::vector<std::string> columns_;
    std::vector<std::vector<double>> rows_;
    struct Verdict {
        std::string check;
        bool pass;
        double slack;
        std::string detail;
    };
    std::vector<Verdict> verdicts_;
    std::vector<std::string> notes_;
};

} // namespace ballconv
