#include "pcmlab/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "pcmlab/error.hpp"

namespace pcmlab {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double parse_decimal(std::string_view s) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (!s.empty() && s.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || first == last) {
    throw InputError("cannot parse number '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(sep, start);
    cells.emplace_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return cells;
}

}  // namespace

double parse_judgment(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.empty()) throw InputError("empty matrix entry");
  const std::size_t slash = s.find('/');
  if (slash == std::string_view::npos) return parse_decimal(s);
  const double p = parse_decimal(trim(s.substr(0, slash)));
  const double q = parse_decimal(trim(s.substr(slash + 1)));
  if (q == 0.0) throw InputError("zero denominator in '" + std::string(s) + "'");
  return p / q;
}

PairwiseComparisonMatrix read_matrix_csv(std::istream& in, std::optional<Reciprocity> mode) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    std::vector<double> row;
    for (const std::string& cell : split(t, ',')) {
      try {
        row.push_back(parse_judgment(cell));
      } catch (const InputError& e) {
        throw InputError("line " + std::to_string(lineno) + ": " + e.what());
      }
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw InputError("matrix file is empty");
  return PairwiseComparisonMatrix::from_rows(rows, mode);
}

PairwiseComparisonMatrix read_matrix_file(const std::string& path, std::optional<Reciprocity> mode) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open matrix file '" + path + "'");
  return read_matrix_csv(in, mode);
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

void write_matrix_csv(std::ostream& out, const PairwiseComparisonMatrix& m) {
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (j) out << ',';
      out << format_number(m(i, j));
    }
    out << '\n';
  }
}

std::size_t CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw InputError("missing column '" + std::string(name) + "'");
}

std::vector<double> CsvTable::numeric_column(std::string_view name) const {
  const std::size_t c = column(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (c >= rows[r].size()) throw InputError("row " + std::to_string(r + 2) + " is short");
    const std::string& cell = rows[r][c];
    if (cell == "inf") {
      out.push_back(INFINITY);
    } else if (cell == "-inf") {
      out.push_back(-INFINITY);
    } else {
      try {
        out.push_back(parse_decimal(cell));
      } catch (const InputError&) {
        throw InputError("row " + std::to_string(r + 2) + ", column '" + std::string(name) +
                         "': not a number: '" + cell + "'");
      }
    }
  }
  return out;
}

CsvTable read_csv(std::istream& in) {
  CsvTable t;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    const std::string_view s = trim(line);
    if (s.empty()) continue;
    if (!have_header) {
      t.header = split(s, ',');
      have_header = true;
    } else {
      t.rows.push_back(split(s, ','));
    }
  }
  if (!have_header) throw InputError("CSV input is empty");
  return t;
}

void write_sa2_records_csv(std::ostream& out, const Sa2Config& config, const std::vector<Sa2Record>& records) {
  out << "model_id,rep_id,method";
  for (Measure m : config.measures) out << ',' << measure_name(m);
  out << ",mae\n";
  for (const auto& r : records) {
    out << r.model_id << ',' << r.rep_id << ',' << method_name(r.method);
    for (double v : r.measures) out << ',' << format_number(v);
    out << ',' << format_number(r.mae) << '\n';
  }
}

void write_sa1_records_csv(std::ostream& out, const std::vector<Sa1Record>& records) {
  out << "model_id,rep_id,method,criteria,alternatives,src,re,rr,mae\n";
  for (const auto& r : records) {
    out << r.model_id << ',' << r.rep_id << ',' << method_name(r.method) << ',' << r.criteria << ','
        << r.alternatives << ',' << format_number(r.quality.src) << ',' << format_number(r.quality.re) << ','
        << format_number(r.quality.rr) << ',' << format_number(r.quality.mae) << '\n';
  }
}

void write_sa1_summary_csv(std::ostream& out, const std::vector<MethodSummary>& summaries) {
  out << "method,MRE,MSRC,MRR,MMAE,count,failures,undefined_src\n";
  for (const auto& s : summaries) {
    out << method_name(s.method) << ',' << format_number(s.summary.mre) << ','
        << format_number(s.summary.msrc) << ',' << format_number(s.summary.mrr) << ','
        << format_number(s.summary.mmae) << ',' << s.summary.count << ',' << s.failures << ','
        << s.undefined_ranks << '\n';
  }
}

void write_report_csv(std::ostream& out, const BinnedReport& report) {
  out << "bin,lower,upper,mean_measure,mae_q05,mae_q10,mae_q50,mae_q90,mae_q95,mean_mae\n";
  for (const auto& b : report.bins) {
    out << b.index << ',' << format_number(b.lower) << ',' << format_number(b.upper) << ','
        << format_number(b.mean_measure);
    for (double q : b.mae_quantiles) out << ',' << format_number(q);
    out << ',' << format_number(b.mean_mae) << '\n';
  }
}

}  // namespace pcmlab
