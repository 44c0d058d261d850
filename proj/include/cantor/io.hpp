#pragma once

// CSV and JSON artifacts. All CSV numbers are rendered with the full
// decimal precision of their arithmetic type (17 or 34 significant digits)
// and files are written atomically.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cantor/geometry.hpp"
#include "cantor/jacobi.hpp"
#include "cantor/spacing.hpp"

namespace cantor {

inline constexpr std::string_view kToolVersion = "1.0.0";

namespace io {

/// Writes `content` to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

template <Real T>
std::string jacobi_csv(const JacobiMatrix<T>& j);

/// Parses a k,a_k,b_k CSV. Rows must be numbered 1..K in order; the result
/// has valid_length = K and passes JacobiMatrix::validate. Throws InvalidInput.
template <Real T>
JacobiMatrix<T> parse_jacobi_csv(std::string_view text);

template <Real T>
std::string measure_csv(const DiscreteMeasure<T>& m);

template <Real T>
DiscreteMeasure<T> parse_measure_csv(std::string_view text);

/// index,value with 1-based index.
template <Real T>
std::string points_csv(std::span<const T> points);

/// level,index,lo,hi for levels 0..s_max (index 1-based).
template <Real T>
std::string intervals_csv(const GammaSequence& gamma, int s_max);

/// s,delta,l1,ratio for s = 0..s_max.
template <Real T>
std::string scales_csv(const GammaSequence& gamma, int s_max);

std::string convergence_csv(const StabilizationStep& step);

std::string spacing_report_csv(const SpacingReport& report);

nlohmann::json to_json(const GammaDescriptor& d);
nlohmann::json to_json(const BoundCheck& c);
nlohmann::json to_json(const SpacingRow& r);
nlohmann::json to_json(const SpacingReport& r);
nlohmann::json to_json(const StabilizationStep& s);

/// Pretty-printed with a trailing newline.
std::string dump(const nlohmann::json& j);

}  // namespace io
}  // namespace cantor
