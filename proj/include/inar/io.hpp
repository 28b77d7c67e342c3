#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "inar/inference.hpp"
#include "inar/model.hpp"
#include "inar/simulate.hpp"

namespace inar {

/// Shortest text of at most 17 significant digits that reads back to the
/// same double.
std::string format_double(double value);

/// Kernel grammar: `none`, `geometric:<ratio>`, `lags:[a1,a2,...]`.
/// Throws ValidationError on malformed text.
ModelParams parse_kernel_spec(double nu, std::string_view spec);

// Path CSV: header `n,x`, then one `n,X_n` row per step, integers only.
void write_path_csv(std::ostream& out, const CountPath& path);
CountPath read_path_csv(std::istream& in);
void write_path_csv(const std::filesystem::path& file, const CountPath& path);
CountPath read_path_csv(const std::filesystem::path& file);

/// Samples CSV: `rep,mu_hat,beta1..betap`, one row per replication.
void write_samples_csv(std::ostream& out, const Eigen::MatrixXd& samples,
                       const std::vector<std::size_t>& rep_ids);

struct SamplesTable {
  std::vector<std::string> columns;  // without `rep`
  std::vector<std::size_t> rep_ids;
  Eigen::MatrixXd values;
};
SamplesTable read_samples_csv(std::istream& in);

void write_qq_csv(std::ostream& out, const std::vector<QqPoint>& qq);
void write_hist_csv(std::ostream& out, const std::vector<HistogramBin>& hist);

/// Writes `text` to `file`, creating parent directories. Throws IoError.
void write_text_file(const std::filesystem::path& file, std::string_view text);
std::string read_text_file(const std::filesystem::path& file);

}  // namespace inar
