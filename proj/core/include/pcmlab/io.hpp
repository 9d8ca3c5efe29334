#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pcmlab/pcm.hpp"
#include "pcmlab/simulation.hpp"

namespace pcmlab {

/// Parses a decimal ("1.5", "2e-1") or rational ("5/7") literal.
double parse_judgment(std::string_view text);

/// One row per line, comma-separated. Blank lines and lines starting with '#'
/// are skipped. Reciprocity is inferred unless `mode` is given.
PairwiseComparisonMatrix read_matrix_csv(std::istream& in, std::optional<Reciprocity> mode = std::nullopt);
PairwiseComparisonMatrix read_matrix_file(const std::string& path,
                                          std::optional<Reciprocity> mode = std::nullopt);
void write_matrix_csv(std::ostream& out, const PairwiseComparisonMatrix& m);

/// Shortest round-trip decimal; locale independent. "inf" for infinity.
std::string format_number(double v);

/// Header plus rows of raw cells.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Throws InputError when the column is absent.
  std::size_t column(std::string_view name) const;
  std::vector<double> numeric_column(std::string_view name) const;
};

CsvTable read_csv(std::istream& in);

/// Columns: model_id,rep_id,method,<measure names...>,mae
void write_sa2_records_csv(std::ostream& out, const Sa2Config& config, const std::vector<Sa2Record>& records);
/// Columns: model_id,rep_id,method,criteria,alternatives,src,re,rr,mae
void write_sa1_records_csv(std::ostream& out, const std::vector<Sa1Record>& records);
/// Columns: method,MRE,MSRC,MRR,MMAE,count,failures,undefined_src
void write_sa1_summary_csv(std::ostream& out, const std::vector<MethodSummary>& summaries);
/// Columns: bin,lower,upper,mean_measure,mae_q05,mae_q10,mae_q50,mae_q90,mae_q95,mean_mae
void write_report_csv(std::ostream& out, const BinnedReport& report);

}  // namespace pcmlab
