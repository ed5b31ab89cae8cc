#include "moobench/harness/report.hpp"

#include <algorithm>
#include <cmath>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace moobench::harness {
namespace {

using json = nlohmann::ordered_json;

std::string num(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_num(const std::string& s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw std::invalid_argument("bad number '" + s + "' in report");
  }
  return v;
}

std::uint64_t parse_uint(const std::string& s) {
  std::uint64_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw std::invalid_argument("bad integer '" + s + "' in report");
  }
  return v;
}

std::string join(const std::vector<double>& v, char sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += num(v[i]);
  }
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  if (s.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<double> parse_list(const std::string& s, char sep) {
  std::vector<double> out;
  for (const auto& part : split(s, sep)) out.push_back(parse_num(part));
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + '"';
}

// Splits one CSV record; quoted fields may contain separators and doubled quotes.
std::vector<std::string> csv_split(const std::string& line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        out.back() += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        out.back() += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.emplace_back();
    } else {
      out.back() += ch;
    }
  }
  if (quoted) throw std::invalid_argument("unterminated quote in report row");
  return out;
}

std::string front_string(const std::vector<core::ObjectiveVector>& front) {
  std::string out;
  for (std::size_t i = 0; i < front.size(); ++i) {
    if (i) out += ';';
    out += join(front[i], ':');
  }
  return out;
}

json stat_json(const Stat& s) { return json{{"mean", s.mean}, {"std", s.std}}; }

json record_json(const ResultRecord& r) {
  return json{{"method", r.method},         {"dataset", r.dataset},
              {"seed", r.seed},             {"c", r.c},
              {"param_count", r.param_count}, {"mcr", r.mcr},
              {"ce", r.ce},                 {"hv_mcr", r.hv_mcr},
              {"hv_ce", r.hv_ce},           {"delta_st_mcr", r.delta_st_mcr},
              {"delta_st_ce", r.delta_st_ce}, {"status", r.status},
              {"front_mcr", r.front_mcr},   {"provenance", r.provenance}};
}

json aggregate_json(const AggregateRow& a) {
  json mcr = json::array();
  for (const auto& s : a.mcr) mcr.push_back(stat_json(s));
  return json{{"method", a.method},
              {"dataset", a.dataset},
              {"c", a.c},
              {"param_count", a.param_count},
              {"seeds", a.seeds},
              {"failed", a.failed},
              {"hv_mcr", stat_json(a.hv_mcr)},
              {"hv_ce", stat_json(a.hv_ce)},
              {"delta_st_mcr", stat_json(a.delta_st_mcr)},
              {"delta_st_ce", stat_json(a.delta_st_ce)},
              {"mcr", mcr}};
}

void write_csv(std::ostream& out, const std::vector<ResultRecord>& records) {
  const auto& cols = csv_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
  for (const auto& r : records) {
    out << csv_field(r.method) << ',' << csv_field(r.dataset) << ',' << r.seed << ',' << num(r.c)
        << ',' << r.param_count << ',' << join(r.mcr, ';') << ',' << join(r.ce, ';') << ','
        << num(r.hv_mcr) << ',' << num(r.hv_ce) << ',' << num(r.delta_st_mcr) << ','
        << num(r.delta_st_ce) << ',' << r.status << ',' << front_string(r.front_mcr) << ','
        << csv_field(r.provenance) << '\n';
  }
}

void write_plotdata(std::ostream& out, const std::vector<ResultRecord>& records) {
  json fronts = json::array();
  for (const auto& r : records) {
    if (!r.ok()) continue;
    fronts.push_back(json{{"method", r.method}, {"dataset", r.dataset}, {"c", r.c},
                          {"seed", r.seed}, {"points", r.front_mcr}});
  }
  json series = json::array();
  for (const auto& a : aggregate(records)) {
    for (std::size_t t = 0; t < a.mcr.size(); ++t) {
      series.push_back(json{{"method", a.method}, {"dataset", a.dataset}, {"task", t},
                            {"c", a.c}, {"param_count", a.param_count},
                            {"mcr_mean", a.mcr[t].mean}, {"mcr_std", a.mcr[t].std}});
    }
  }
  out << json{{"fronts", fronts}, {"capacity_series", series}}.dump(2) << '\n';
}

std::string pm(const Stat& s) {
  std::ostringstream o;
  auto clean = [](double v) { return std::abs(v) < 5e-5 ? 0.0 : v; };
  o << std::fixed << std::setprecision(4) << clean(s.mean) << " +- " << clean(s.std);
  return o.str();
}

}  // namespace

std::string to_string(ReportFormat format) {
  switch (format) {
    case ReportFormat::csv: return "csv";
    case ReportFormat::json: return "json";
    case ReportFormat::plotdata: return "plotdata";
    case ReportFormat::table: return "table";
  }
  return "csv";
}

ReportFormat parse_report_format(const std::string& name) {
  for (auto f : {ReportFormat::csv, ReportFormat::json, ReportFormat::plotdata, ReportFormat::table}) {
    if (name == to_string(f)) return f;
  }
  throw std::invalid_argument("unknown format '" + name + "' (expected csv, json, plotdata or table)");
}

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols{
      "method", "dataset", "seed",        "c",           "param_count", "mcr",       "ce",
      "hv_mcr", "hv_ce",   "delta_st_mcr", "delta_st_ce", "status",      "front_mcr", "provenance"};
  return cols;
}

void write_ablation_table(std::ostream& out, const AblationTable& table) {
  std::set<std::string> names;
  for (const auto& row : table.rows)
    for (const auto& [m, _] : row.methods) names.insert(m);
  out << std::left << std::setw(8) << "c";
  for (const auto& m : names) {
    out << " | " << std::setw(22) << (m + " hv") << " | " << std::setw(22) << (m + " dST");
  }
  out << '\n';
  for (const auto& row : table.rows) {
    out << std::left << std::setw(8) << num(row.c);
    for (const auto& m : names) {
      const auto it = row.methods.find(m);
      if (it == row.methods.end()) {
        out << " | " << std::setw(22) << "-" << " | " << std::setw(22) << "-";
      } else {
        out << " | " << std::setw(22) << pm(it->second.hv_mcr) << " | " << std::setw(22)
            << pm(it->second.delta_st_mcr);
      }
    }
    out << '\n';
  }
}

void emit_report(std::vector<ResultRecord> records, ReportFormat format, std::ostream& out,
                 const std::vector<std::string>& methods) {
  if (!methods.empty()) {
    std::erase_if(records, [&](const ResultRecord& r) {
      return std::find(methods.begin(), methods.end(), r.method) == methods.end();
    });
  }
  if (records.empty()) {
    throw std::invalid_argument(methods.empty() ? "no records to report"
                                                : "method filter matches no records");
  }
  sort_records(records);
  switch (format) {
    case ReportFormat::csv: write_csv(out, records); break;
    case ReportFormat::json: {
      json recs = json::array(), aggs = json::array();
      for (const auto& r : records) recs.push_back(record_json(r));
      for (const auto& a : aggregate(records)) aggs.push_back(aggregate_json(a));
      out << json{{"records", recs}, {"aggregates", aggs}}.dump(2) << '\n';
      break;
    }
    case ReportFormat::plotdata: write_plotdata(out, records); break;
    case ReportFormat::table: write_ablation_table(out, ablation_from_records(records)); break;
  }
}

void emit_report(const std::vector<ResultRecord>& records, ReportFormat format,
                 const std::string& path, const std::vector<std::string>& methods) {
  std::ostringstream buffer;
  emit_report(records, format, buffer, methods);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write report to " + path);
  out << buffer.str();
  if (!out) throw std::runtime_error("failed writing report to " + path);
}

std::vector<ResultRecord> parse_records_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty report");
  if (csv_split(line) != csv_columns()) throw std::invalid_argument("unexpected report header");
  std::vector<ResultRecord> out;
  std::size_t number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    // A quoted field may span lines; an odd quote count means it is still open.
    std::string more;
    while (std::count(line.begin(), line.end(), '"') % 2 == 1 && std::getline(in, more)) {
      line += '\n';
      line += more;
    }
    const auto f = csv_split(line);
    if (f.size() != csv_columns().size()) {
      throw std::invalid_argument("report line " + std::to_string(number) + ": expected " +
                                  std::to_string(csv_columns().size()) + " fields");
    }
    ResultRecord r;
    r.method = f[0];
    r.dataset = f[1];
    r.seed = parse_uint(f[2]);
    r.c = parse_num(f[3]);
    r.param_count = parse_uint(f[4]);
    r.mcr = parse_list(f[5], ';');
    r.ce = parse_list(f[6], ';');
    r.hv_mcr = parse_num(f[7]);
    r.hv_ce = parse_num(f[8]);
    r.delta_st_mcr = parse_num(f[9]);
    r.delta_st_ce = parse_num(f[10]);
    r.status = f[11];
    for (const auto& p : split(f[12], ';')) r.front_mcr.push_back(parse_list(p, ':'));
    r.provenance = f[13];
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<ResultRecord> read_records_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open report " + path);
  return parse_records_csv(in);
}

}  // namespace moobench::harness
