#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "lmcca/matrix.hpp"
#include "lmcca/types.hpp"

namespace lmcca {

// Input syntax of an annotation source. `kCanonicalJson` is the interchange
// format every other tool in the pipeline consumes:
//   {"format_name": ..., "M": ..., "records": [{"image_id": ..., "points": [[x,y],...]}]}
enum class AnnotationSyntax { kPts, kWflwLine, kCanonicalJson };

AnnotationSyntax syntax_from_name(std::string_view name);  // "pts" | "wflw" | "json"

/// Parses one `.pts` file. Grammar: optional `version: 1`, `n_points: <int>`,
/// `{`, n_points lines of `<float> <float>`, `}`. Braces and the version line
/// are tolerated but not required. Errors name the offending line.
LandmarkSet parse_pts(std::string_view text, std::string image_id = "");

std::string serialize_pts(const LandmarkSet& set);

/// Parses one WFLW annotation line: 196 floats (98 x/y pairs), then trailing
/// fields of which the last is the image path, stored as image_id.
LandmarkSet parse_wflw_line(std::string_view line, long line_number = 0);

std::string serialize_wflw_line(const LandmarkSet& set);

/// Loads a dataset from a `.pts` directory, a WFLW-style text file, or a
/// canonical JSON file. Ordering is deterministic: lexicographic by file
/// name for directories, line order for files. Requires N >= 2 and a
/// uniform landmark count; `expected_m > 0` additionally pins M.
Dataset load_dataset(const std::filesystem::path& path, AnnotationSyntax syntax,
                     std::string format_name = "", int expected_m = 0);

std::string serialize_dataset_json(const Dataset& d);
Dataset parse_dataset_json(std::string_view text);

/// Writes a matrix as CSV (header row of landmark indices, then row-major
/// values) or JSON ({"m_size":..,"values":[[..]]}), 9 significant digits.
/// Refuses non-finite matrices.
enum class MatrixLayout { kCsv, kJson };
void export_matrix(const SquareMatrix& m, std::ostream& out, MatrixLayout layout);
std::string export_matrix(const SquareMatrix& m, MatrixLayout layout);

SquareMatrix import_matrix(std::string_view text, MatrixLayout layout);
SquareMatrix import_matrix_file(const std::filesystem::path& path);  // layout from extension

/// Built-in format descriptors: "300w" (68 landmarks, outer eye corners),
/// "300w-interpupil" (eye-group centroids), "wflw" (98 landmarks).
/// Throws ValidationError for unknown names.
FormatDescriptor builtin_descriptor(std::string_view name);

/// Descriptor from JSON: {"name":..,"M":..,"left_eye":[..],"right_eye":[..],
/// "blocks":{"contour":[lo,hi],...}}. Validates index ranges and block
/// disjointness.
FormatDescriptor parse_descriptor_json(std::string_view text);

std::string read_file(const std::filesystem::path& path);
/// Writes atomically: temp file in the target directory, then rename.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace lmcca
