#include "ballconv/report.hpp"

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "ballconv/errors.hpp"

namespace ballconv {

ReportDocument::ReportDocument(std::string command, std::string body_digest, int resolution,
                               unsigned seed)
    : command_(std::move(command)), digest_(std::move(body_digest)), resolution_(resolution),
      seed_(seed) {}

void ReportDocument::set_columns(const std::vector<std::string>& names_with_units) {
    columns_ = names_with_units;
}

void ReportDocument::add_row(const std::vector<double>& values) {
    if (values.size() != columns_.size())
        throw ParamError("report: row width does not match the column header");
    rows_.push_back(values);
}

void ReportDocument::add_verdict(const std::string& check, bool pass, double slack,
                                 const std::string& detail) {
    verdicts_.push_back({check, pass, slack, detail});
}

void ReportDocument::add_note(const std::string& note) { notes_.push_back(note); }

bool ReportDocument::all_passed() const {
    for (const Verdict& v : verdicts_)
        if (!v.pass) return false;
    return true;
}

std::string ReportDocument::to_csv() const {
    std::string out;
    out += "# command," + command_ + "\n";
    out += "# body_digest," + digest_ + "\n";
    out += "# resolution," + std::to_string(resolution_) + "\n";
    out += "# seed," + std::to_string(seed_) + "\n";
    for (const std::string& n : notes_) out += "# note," + n + "\n";
    if (!columns_.empty()) {
        for (std::size_t c = 0; c < columns_.size(); ++c)
            out += (c ? "," : "") + columns_[c];
        out += "\n";
        for (const auto& row : rows_) {
            for (std::size_t c = 0; c < row.size(); ++c)
                out += (c ? "," : "") + format_double(row[c]);
            out += "\n";
        }
    }
    for (const Verdict& v : verdicts_) {
        out += "verdict," + v.check + "," + (v.pass ? "pass" : "fail") + "," +
               format_double(v.slack) + "," + v.detail + "\n";
    }
    return out;
}

std::string ReportDocument::to_json() const {
    nlohmann::ordered_json j;
    j["command"] = command_;
    j["body_digest"] = digest_;
    j["resolution"] = resolution_;
    j["seed"] = seed_;
    j["notes"] = notes_;
    j["columns"] = columns_;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : rows_) {
        nlohmann::ordered_json r = nlohmann::ordered_json::array();
        for (double v : row) r.push_back(format_double(v));
        rows.push_back(r);
    }
    j["rows"] = rows;
    nlohmann::ordered_json verdicts = nlohmann::ordered_json::array();
    for (const Verdict& v : verdicts_) {
        nlohmann::ordered_json vj;
        vj["check"] = v.check;
        vj["pass"] = v.pass;
        vj["slack"] = format_double(v.slack);
        vj["detail"] = v.detail;
        verdicts.push_back(vj);
    }
    j["verdicts"] = verdicts;
    return j.dump(2) + "\n";
}

void ReportDocument::write(const std::string& dir) const {
    std::filesystem::create_directories(dir);
    std::ofstream csv(dir + "/report.csv", std::ios::binary);
    csv << to_csv();
    std::ofstream js(dir + "/report.json", std::ios::binary);
    js << to_json();
}

} // namespace ballconv
