#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "moobench/harness/experiment.hpp"

namespace moobench::harness {

/// csv: one row per record. json: records plus seed aggregates.
/// plotdata: fronts per record and error-vs-capacity series.
/// table: one row per capacity with HV and ΔST of every method.
enum class ReportFormat { csv, json, plotdata, table };
std::string to_string(ReportFormat format);
ReportFormat parse_report_format(const std::string& name);

/// Column order of the CSV report.
const std::vector<std::string>& csv_columns();

/// Writes the records sorted by (method, dataset, c, seed). A non-empty
/// `methods` keeps only those methods; throws std::invalid_argument when no
/// record is left.
void emit_report(std::vector<ResultRecord> records, ReportFormat format, std::ostream& out,
                 const std::vector<std::string>& methods = {});
/// Same, into a file. Throws std::runtime_error when the path is not writable.
void emit_report(const std::vector<ResultRecord>& records, ReportFormat format,
                 const std::string& path, const std::vector<std::string>& methods = {});

void write_ablation_table(std::ostream& out, const AblationTable& table);

/// Inverse of the csv format. Throws std::invalid_argument on malformed input.
std::vector<ResultRecord> parse_records_csv(std::istream& in);
std::vector<ResultRecord> read_records_csv(const std::string& path);

}  // namespace moobench::harness
