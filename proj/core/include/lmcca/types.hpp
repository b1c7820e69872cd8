#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace lmcca {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double k, Vec2 a) { return {k * a.x, k * a.y}; }
};

/// One image's annotation: M landmark positions in pixel coordinates.
struct LandmarkSet {
  std::string image_id;
  std::vector<Vec2> points;

  std::size_t size() const { return points.size(); }
};

/// Aligned collection of landmark sets sharing one annotation format.
struct Dataset {
  std::string format_name;
  std::vector<LandmarkSet> sets;

  std::size_t num_images() const { return sets.size(); }
  std::size_t num_landmarks() const { return sets.empty() ? 0 : sets.front().size(); }
};

/// Named inclusive index range within an annotation format (e.g. "eyes").
struct ComponentBlock {
  std::string name;
  int lo = 0;  // first landmark index
  int hi = 0;  // last landmark index, inclusive

  int count() const { return hi - lo + 1; }
  bool contains(int idx) const { return idx >= lo && idx <= hi; }
};

/// Static description of an annotation format: landmark count, the index
/// groups used for inter-ocular normalization, and the facial component
/// blocks. Eye groups of size one mean a single corner landmark; larger
/// groups are reduced to their centroid.
struct FormatDescriptor {
  std::string name;
  int num_landmarks = 0;
  std::vector<int> left_eye;
  std::vector<int> right_eye;
  std::vector<ComponentBlock> blocks;

  bool has_eyes() const { return !left_eye.empty() && !right_eye.empty(); }
};

// Error taxonomy. The CLI maps ParseError/IoError/ValidationError to exit
// code 2 and DegenerateDataError to exit code 3.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed input text; carries a 1-based line number when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, long line = 0)
      : Error(line > 0 ? msg + " (line " + std::to_string(line) + ")" : msg), line_(line) {}
  long line() const { return line_; }

 private:
  long line_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Well-formed input that violates a contract (counts, ranges, alignment).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Data too degenerate for the requested computation (coincident points,
/// zero-variance landmark, zero inter-ocular distance).
class DegenerateDataError : public Error {
 public:
  using Error::Error;
};

}  // namespace lmcca
