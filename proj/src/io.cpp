#include "macropeaks/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "macropeaks/errors.hpp"

namespace macropeaks {

namespace fs = std::filesystem;

void write_text_atomic(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    out << content;
  }
  fs::rename(tmp, path);
}

std::string format_double(double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::string csv_from_columns(const std::vector<std::string>& header,
                             const std::vector<std::vector<double>>& columns) {
  if (columns.size() != header.size()) {
    throw DomainError("csv header and column counts differ");
  }
  std::ostringstream out;
  out << kSchemaHeader << '\n';
  for (std::size_t c = 0; c < header.size(); ++c) {
    out << header[c] << (c + 1 == header.size() ? '\n' : ',');
  }
  const std::size_t rows = columns.empty() ? 0 : columns.front().size();
  for (const auto& col : columns) {
    if (col.size() != rows) throw DomainError("csv columns are ragged");
  }
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      out << format_double(columns[c][r])
          << (c + 1 == columns.size() ? '\n' : ',');
    }
  }
  return out.str();
}

namespace {

nlohmann::json field_sidecar(const FieldSample& sample) {
  nlohmann::json meta;
  meta["seed"] = sample.seed;
  meta["replicate"] = sample.replicate;
  meta["generator"] = sample.generator == FieldSample::Generator::Cholesky
                          ? "cholesky"
                          : "circulant1d";
  meta["correlation_id"] = sample.correlation_id;
  meta["warnings"] = sample.warnings;
  meta["tool_version"] = kToolVersion;
  return meta;
}

}  // namespace

void write_field_sample(const fs::path& csv_path, const FieldSample& sample) {
  const auto d = sample.points.cols();
  std::vector<std::string> header;
  std::vector<std::vector<double>> cols;
  for (Eigen::Index a = 0; a < d; ++a) {
    header.push_back("x" + std::to_string(a));
    cols.emplace_back();
    for (Eigen::Index i = 0; i < sample.points.rows(); ++i) {
      cols.back().push_back(sample.points(i, a));
    }
  }
  header.push_back("value");
  cols.emplace_back();
  for (Eigen::Index i = 0; i < sample.values.size(); ++i) {
    cols.back().push_back(sample.values(i));
  }
  write_text_atomic(csv_path, csv_from_columns(header, cols));

  fs::path meta_path = csv_path;
  meta_path.replace_extension(".json");
  write_text_atomic(meta_path, field_sidecar(sample).dump(2) + "\n");
}

FieldSample read_field_sample(const fs::path& csv_path) {
  const Eigen::MatrixXd raw = read_points_csv(csv_path);
  if (raw.cols() < 2) {
    throw ConfigError("field csv needs coordinate columns plus a value column");
  }
  FieldSample sample;
  sample.points = raw.leftCols(raw.cols() - 1);
  sample.values = raw.col(raw.cols() - 1);

  fs::path meta_path = csv_path;
  meta_path.replace_extension(".json");
  if (fs::exists(meta_path)) {
    std::ifstream in(meta_path);
    nlohmann::json meta = nlohmann::json::parse(in);
    sample.seed = meta.value("seed", 0ull);
    sample.replicate = meta.value("replicate", 0ull);
    sample.correlation_id = meta.value("correlation_id", "");
    if (meta.value("generator", "cholesky") == std::string("circulant1d")) {
      sample.generator = FieldSample::Generator::Circulant1D;
    }
  }
  return sample;
}

void write_exceedance_set(const fs::path& csv_path, const ExceedanceSet& set) {
  const auto d = set.points.cols();
  std::vector<std::string> header;
  std::vector<std::vector<double>> cols;
  for (Eigen::Index a = 0; a < d; ++a) {
    header.push_back("x" + std::to_string(a));
    cols.emplace_back();
    for (Eigen::Index i = 0; i < set.points.rows(); ++i) {
      cols.back().push_back(set.points(i, a));
    }
  }
  header.push_back("value");
  header.push_back("threshold");
  cols.emplace_back();
  cols.emplace_back();
  for (Eigen::Index i = 0; i < set.size(); ++i) {
    cols[cols.size() - 2].push_back(set.values(i));
    cols[cols.size() - 1].push_back(set.thresholds(i));
  }
  write_text_atomic(csv_path, csv_from_columns(header, cols));

  nlohmann::json meta;
  meta["gamma"] = set.gamma;
  meta["variance"] = set.variance;
  meta["stretch"] = set.stretch;
  meta["source_seed"] = set.source_seed;
  meta["source_replicate"] = set.source_replicate;
  meta["count"] = set.size();
  meta["tool_version"] = kToolVersion;
  fs::path meta_path = csv_path;
  meta_path.replace_extension(".json");
  write_text_atomic(meta_path, meta.dump(2) + "\n");
}

void write_correlation_table(const fs::path& csv_path,
                             const CorrelationTable& table) {
  std::vector<std::vector<double>> cols(2);
  for (Eigen::Index i = 0; i < table.lags().size(); ++i) {
    cols[0].push_back(table.lags()(i));
    cols[1].push_back(table.values()(i));
  }
  write_text_atomic(csv_path, csv_from_columns({"lag", "correlation"}, cols));
}

Eigen::MatrixXd read_points_csv(const fs::path& csv_path) {
  std::ifstream in(csv_path);
  if (!in) throw ConfigError("cannot open " + csv_path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {  // first non-comment line is the header row
      header_seen = true;
      continue;
    }
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw ConfigError("non-numeric cell in " + csv_path.string());
      }
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty()) return Eigen::MatrixXd(0, 0);
  const std::size_t cols = rows.front().size();
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()),
                      static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) {
      throw ConfigError("ragged csv rows in " + csv_path.string());
    }
    for (std::size_t c = 0; c < cols; ++c) {
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    }
  }
  return out;
}

}  // namespace macropeaks
