#pragma once

#include <filesystem>
#include <json.hpp>
#include <string>
#include <vector>

#include "macropeaks/covariance.hpp"
#include "macropeaks/fieldgen.hpp"
#include "macropeaks/peaks.hpp"

namespace macropeaks {

inline constexpr const char* kSchemaHeader = "# macropeaks-schema v1";
inline constexpr const char* kToolVersion = "0.1.0";

// All writers go through a temp-file + rename so readers never observe a
// partially written artifact.
void write_text_atomic(const std::filesystem::path& path,
                       const std::string& content);

// Round-trip float formatting shared by every serializer.
std::string format_double(double value);

std::string csv_from_columns(const std::vector<std::string>& header,
                             const std::vector<std::vector<double>>& columns);

void write_field_sample(const std::filesystem::path& csv_path,
                        const FieldSample& sample);
FieldSample read_field_sample(const std::filesystem::path& csv_path);

void write_exceedance_set(const std::filesystem::path& csv_path,
                          const ExceedanceSet& set);

void write_correlation_table(const std::filesystem::path& csv_path,
                             const CorrelationTable& table);

Eigen::MatrixXd read_points_csv(const std::filesystem::path& csv_path);

}  // namespace macropeaks
