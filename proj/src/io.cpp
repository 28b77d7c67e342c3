#include "inar/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "inar/error.hpp"

namespace inar {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <typename T>
bool parse_number(std::string_view text, T& value) {
  if (text.empty()) return false;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  return ec == std::errc() && ptr == end;
}

[[noreturn]] void csv_error(std::size_t line, const std::string& msg) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + msg);
}

}  // namespace

std::string format_double(double value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

ModelParams parse_kernel_spec(double nu, std::string_view spec) {
  spec = trim(spec);
  auto bad = [&](const std::string& why) {
    return Error(ErrorCode::ValidationError, "kernel: " + why + " in '" + std::string(spec) + "'");
  };
  if (spec == "none") return ModelParams::finite(nu, {});
  if (spec.starts_with("geometric:")) {
    double ratio = 0.0;
    if (!parse_number(trim(spec.substr(10)), ratio)) throw bad("expected geometric:<ratio>");
    if (!(ratio >= 0.0 && ratio < 1.0)) throw bad("geometric ratio must lie in [0, 1)");
    return ModelParams::geometric(nu, ratio);
  }
  if (spec.starts_with("lags:")) {
    auto body = trim(spec.substr(5));
    if (body.size() < 2 || body.front() != '[' || body.back() != ']') {
      throw bad("expected lags:[a1,a2,...]");
    }
    body = trim(body.substr(1, body.size() - 2));
    std::vector<double> lags;
    if (!body.empty()) {
      for (auto item : split(body, ',')) {
        double a = 0.0;
        if (!parse_number(item, a)) throw bad("non-numeric lag '" + std::string(item) + "'");
        lags.push_back(a);
      }
    }
    return ModelParams::finite(nu, std::move(lags));
  }
  throw bad("unknown kernel form (use none, geometric:<r>, lags:[...])");
}

void write_path_csv(std::ostream& out, const CountPath& path) {
  out << "n,x\n";
  for (std::size_t n = 0; n < path.size(); ++n) out << (n + 1) << ',' << path.counts[n] << '\n';
}

CountPath read_path_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line) || trim(line) != "n,x") csv_error(1, "expected header 'n,x'");
  CountPath path;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split(line, ',');
    std::int64_t n = 0;
    Count x = 0;
    if (fields.size() != 2 || !parse_number(fields[0], n) || !parse_number(fields[1], x)) {
      csv_error(line_no, "expected two integers 'n,x'");
    }
    if (n != static_cast<std::int64_t>(path.size()) + 1) csv_error(line_no, "steps must be 1, 2, 3, ...");
    if (x < 0) csv_error(line_no, "counts must be nonnegative");
    path.counts.push_back(x);
  }
  if (path.counts.empty()) csv_error(line_no, "path has no rows");
  return path;
}

void write_path_csv(const std::filesystem::path& file, const CountPath& path) {
  std::ostringstream out;
  write_path_csv(out, path);
  write_text_file(file, out.str());
}

CountPath read_path_csv(const std::filesystem::path& file) {
  std::istringstream in(read_text_file(file));
  return read_path_csv(in);
}

void write_samples_csv(std::ostream& out, const Eigen::MatrixXd& samples,
                       const std::vector<std::size_t>& rep_ids) {
  out << "rep,mu_hat";
  for (Eigen::Index k = 1; k < samples.cols(); ++k) out << ",beta" << k;
  out << '\n';
  for (Eigen::Index r = 0; r < samples.rows(); ++r) {
    out << rep_ids.at(static_cast<std::size_t>(r));
    for (Eigen::Index c = 0; c < samples.cols(); ++c) out << ',' << format_double(samples(r, c));
    out << '\n';
  }
}

SamplesTable read_samples_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) csv_error(1, "empty samples file");
  auto header = split(line, ',');
  if (header.size() < 2 || header[0] != "rep") csv_error(1, "expected header 'rep,mu_hat,...'");
  SamplesTable table;
  for (std::size_t c = 1; c < header.size(); ++c) table.columns.emplace_back(header[c]);

  std::vector<std::vector<double>> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != header.size()) csv_error(line_no, "wrong number of fields");
    std::size_t rep = 0;
    if (!parse_number(fields[0], rep)) csv_error(line_no, "bad replication id");
    std::vector<double> row(fields.size() - 1);
    for (std::size_t c = 1; c < fields.size(); ++c) {
      if (!parse_number(fields[c], row[c - 1])) csv_error(line_no, "bad number '" + std::string(fields[c]) + "'");
    }
    table.rep_ids.push_back(rep);
    rows.push_back(std::move(row));
  }
  table.values.resize(static_cast<Eigen::Index>(rows.size()),
                      static_cast<Eigen::Index>(table.columns.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      table.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    }
  }
  return table;
}

void write_qq_csv(std::ostream& out, const std::vector<QqPoint>& qq) {
  out << "z,value\n";
  for (const auto& pt : qq) out << format_double(pt.theoretical_z) << ',' << format_double(pt.value) << '\n';
}

void write_hist_csv(std::ostream& out, const std::vector<HistogramBin>& hist) {
  out << "bin_left,bin_right,count\n";
  for (const auto& b : hist) {
    out << format_double(b.left) << ',' << format_double(b.right) << ',' << b.count << '\n';
  }
}

void write_text_file(const std::filesystem::path& file, std::string_view text) {
  std::error_code ec;
  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path(), ec);
  std::ofstream out(file, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot open '" + file.string() + "' for writing");
  out << text;
  if (!out) throw Error(ErrorCode::IoError, "failed writing '" + file.string() + "'");
}

std::string read_text_file(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + file.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace inar
