#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "strbf/harness.hpp"

namespace strbf {

// All writers emit UTF-8, LF line endings, and doubles with 17 significant
// digits, so identical inputs produce byte-identical files.

/// Learning-curve CSV with header
///   iteration,mean_sq_err,mean_db,mean_db_ma<W>
/// where mean_db_ma<W> is the dB of a trailing W-sample moving average of
/// the linear column. An empty curve yields a header-only file.
void write_curve_csv(std::span<const double> mean_sq,
                     const std::filesystem::path& path,
                     std::size_t ma_window = 25);

struct SummaryRow {
  std::string model;
  double final_train_mse_db = 0.0;
  double mean_test_mse_db = 0.0;
  std::size_t trials_used = 0;
  std::size_t diverged_count = 0;
};
SummaryRow summary_row(std::string model, const AggregateResult& result);

/// Header: model,final_train_mse_db,mean_test_mse_db,trials_used,diverged_count
void write_summary_csv(std::span<const SummaryRow> rows,
                       const std::filesystem::path& path);

/// Single-column export of a raw vector (header line = column name).
void write_value_csv(std::span<const double> values,
                     const std::filesystem::path& path,
                     std::string_view column = "value");

}  // namespace strbf
