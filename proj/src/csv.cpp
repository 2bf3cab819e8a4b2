#include "strbf/csv.hpp"

#include <fstream>

#include "internal_util.hpp"

namespace strbf {

namespace {

using detail::fmt_g17;

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);  // binary keeps LF endings
  if (!out)
    throw std::runtime_error("cannot write " + path.string());
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw std::runtime_error("error while writing " + path.string());
}

}  // namespace

void write_curve_csv(std::span<const double> mean_sq,
                     const std::filesystem::path& path,
                     std::size_t ma_window) {
  if (ma_window == 0) ma_window = 1;
  std::ofstream out = open_for_write(path);
  out << "iteration,mean_sq_err,mean_db,mean_db_ma" << ma_window << "\n";
  for (std::size_t k = 0; k < mean_sq.size(); ++k) {
    const std::size_t from = k + 1 >= ma_window ? k + 1 - ma_window : 0;
    detail::NeumaierAcc window_sum;
    for (std::size_t j = from; j <= k; ++j) window_sum.add(mean_sq[j]);
    const double ma =
        window_sum.value() / static_cast<double>(k + 1 - from);
    out << (k + 1) << ',' << fmt_g17(mean_sq[k]) << ','
        << fmt_g17(mse_db_or_neg_inf(mean_sq[k])) << ','
        << fmt_g17(mse_db_or_neg_inf(ma)) << "\n";
  }
  finish(out, path);
}

SummaryRow summary_row(std::string model, const AggregateResult& result) {
  SummaryRow row;
  row.model = std::move(model);
  row.final_train_mse_db = result.final_train_mse_db;
  row.mean_test_mse_db = result.mean_test_mse_db;
  row.trials_used = result.trials_used;
  row.diverged_count = result.diverged_count;
  return row;
}

void write_summary_csv(std::span<const SummaryRow> rows,
                       const std::filesystem::path& path) {
  std::ofstream out = open_for_write(path);
  out << "model,final_train_mse_db,mean_test_mse_db,trials_used,"
         "diverged_count\n";
  for (const SummaryRow& row : rows) {
    out << row.model << ',' << fmt_g17(row.final_train_mse_db) << ','
        << fmt_g17(row.mean_test_mse_db) << ',' << row.trials_used << ','
        << row.diverged_count << "\n";
  }
  finish(out, path);
}

void write_value_csv(std::span<const double> values,
                     const std::filesystem::path& path,
                     std::string_view column) {
  std::ofstream out = open_for_write(path);
  out << column << "\n";
  for (double v : values) out << fmt_g17(v) << "\n";
  finish(out, path);
}

}  // namespace strbf
