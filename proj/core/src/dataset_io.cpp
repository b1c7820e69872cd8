#include "lmcca/dataset_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "json.hpp"
#include "strfmt.hpp"

namespace lmcca {

namespace {

using detail::fmt_f;
using detail::fmt_g;

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) {
      lines.push_back(text.substr(pos));
      break;
    }
    lines.push_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  return lines;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_fields(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

double parse_double(std::string_view tok, long line) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError("non-numeric token '" + std::string(tok) + "'", line);
  return v;
}

long parse_long(std::string_view tok, long line) {
  long v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError("expected integer, got '" + std::string(tok) + "'", line);
  return v;
}

bool starts_with_key(std::string_view line, std::string_view key) {
  return line.size() >= key.size() &&
         std::equal(key.begin(), key.end(), line.begin(),
                    [](char a, char b) { return std::tolower(a) == std::tolower(b); });
}

void check_finite(const LandmarkSet& set) {
  for (const Vec2& p : set.points)
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
      throw ValidationError("non-finite coordinate in record '" + set.image_id + "'");
}

void validate_dataset(const Dataset& d, int expected_m) {
  if (d.sets.size() < 2)
    throw ValidationError("dataset needs at least 2 records, got " +
                          std::to_string(d.sets.size()));
  std::size_t m = expected_m > 0 ? static_cast<std::size_t>(expected_m) : d.sets.front().size();
  std::string offenders;
  for (const LandmarkSet& s : d.sets) {
    if (s.size() != m) {
      if (!offenders.empty()) offenders += ", ";
      offenders += s.image_id + " (" + std::to_string(s.size()) + ")";
    }
    check_finite(s);
  }
  if (!offenders.empty())
    throw ValidationError("mixed landmark counts, expected " + std::to_string(m) +
                          ": " + offenders);
}

}  // namespace

AnnotationSyntax syntax_from_name(std::string_view name) {
  if (name == "pts") return AnnotationSyntax::kPts;
  if (name == "wflw") return AnnotationSyntax::kWflwLine;
  if (name == "json") return AnnotationSyntax::kCanonicalJson;
  throw ValidationError("unknown annotation syntax '" + std::string(name) +
                        "' (expected pts|wflw|json)");
}

LandmarkSet parse_pts(std::string_view text, std::string image_id) {
  auto lines = split_lines(text);
  std::size_t li = 0;
  auto next_content = [&]() -> std::string_view {
    while (li < lines.size()) {
      std::string_view t = trim(lines[li]);
      if (!t.empty()) return t;
      ++li;
    }
    return {};
  };

  std::string_view cur = next_content();
  if (cur.empty()) throw ParseError("empty .pts input", 1);
  if (starts_with_key(cur, "version:")) {
    ++li;
    cur = next_content();
  }
  if (!starts_with_key(cur, "n_points:"))
    throw ParseError("malformed header, expected 'n_points:'", static_cast<long>(li + 1));
  long n = parse_long(trim(cur.substr(std::string_view("n_points:").size())),
                      static_cast<long>(li + 1));
  if (n <= 0) throw ParseError("n_points must be positive", static_cast<long>(li + 1));
  ++li;

  cur = next_content();
  bool braced = false;
  if (cur == "{") {
    braced = true;
    ++li;
  }

  LandmarkSet set;
  set.image_id = std::move(image_id);
  set.points.reserve(static_cast<std::size_t>(n));
  while (static_cast<long>(set.points.size()) < n) {
    cur = next_content();
    if (cur.empty() || cur == "}")
      throw ParseError("point count mismatch: n_points is " + std::to_string(n) + " but only " +
                           std::to_string(set.points.size()) + " point lines found",
                       static_cast<long>(li + 1));
    auto fields = split_fields(cur);
    if (fields.size() != 2)
      throw ParseError("expected '<x> <y>', got " + std::to_string(fields.size()) + " fields",
                       static_cast<long>(li + 1));
    double x = parse_double(fields[0], static_cast<long>(li + 1));
    double y = parse_double(fields[1], static_cast<long>(li + 1));
    set.points.push_back({x, y});
    ++li;
  }

  cur = next_content();
  if (braced) {
    if (cur != "}")
      throw ParseError(cur.empty() ? "missing closing '}'"
                                   : "point count mismatch: extra content after " +
                                         std::to_string(n) + " points",
                       static_cast<long>(li + 1));
    ++li;
    cur = next_content();
  }
  if (!cur.empty())
    throw ParseError("point count mismatch: extra content after " + std::to_string(n) + " points",
                     static_cast<long>(li + 1));
  check_finite(set);
  return set;
}

std::string serialize_pts(const LandmarkSet& set) {
  std::string out = "version: 1\nn_points: " + std::to_string(set.points.size()) + "\n{\n";
  for (const Vec2& p : set.points) out += fmt_f(p.x, 6) + " " + fmt_f(p.y, 6) + "\n";
  out += "}\n";
  return out;
}

LandmarkSet parse_wflw_line(std::string_view line, long line_number) {
  auto fields = split_fields(line);
  if (fields.size() < 197)
    throw ParseError("WFLW line needs at least 197 fields (196 coordinates + image path), got " +
                         std::to_string(fields.size()),
                     line_number);
  LandmarkSet set;
  set.points.reserve(98);
  for (int i = 0; i < 98; ++i) {
    double x = parse_double(fields[2 * i], line_number);
    double y = parse_double(fields[2 * i + 1], line_number);
    set.points.push_back({x, y});
  }
  set.image_id = std::string(fields.back());
  check_finite(set);
  return set;
}

std::string serialize_wflw_line(const LandmarkSet& set) {
  if (set.points.size() != 98)
    throw ValidationError("WFLW line requires 98 landmarks, got " +
                          std::to_string(set.points.size()));
  std::string out;
  for (const Vec2& p : set.points) out += fmt_f(p.x, 6) + " " + fmt_f(p.y, 6) + " ";
  out += "0 0 0 0 0 0 ";  // attribute flags, unused by this toolkit
  out += set.image_id.empty() ? "unknown.png" : set.image_id;
  return out;
}

namespace {

Dataset load_pts_directory(const std::filesystem::path& path, std::string format_name,
                           int expected_m) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(path)) throw IoError("not a directory: " + path.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(path)) {
    if (entry.is_regular_file() && entry.path().extension() == ".pts")
      files.push_back(entry.path());
  }
  std::vector<std::pair<std::string, fs::path>> keyed;
  keyed.reserve(files.size());
  for (auto& f : files) keyed.emplace_back(fs::relative(f, path).generic_string(), f);
  std::sort(keyed.begin(), keyed.end());

  Dataset d;
  d.format_name = format_name.empty() ? path.filename().string() : std::move(format_name);
  for (auto& [rel, file] : keyed) {
    std::string id = rel.substr(0, rel.size() - 4);  // strip ".pts"
    try {
      d.sets.push_back(parse_pts(read_file(file), id));
    } catch (const ParseError& e) {
      throw ParseError(rel + ": " + e.what());
    }
  }
  if (d.sets.empty()) throw ValidationError("no annotations found in " + path.string());
  validate_dataset(d, expected_m);
  return d;
}

Dataset load_wflw_file(const std::filesystem::path& path, std::string format_name,
                       int expected_m) {
  std::string text = read_file(path);
  Dataset d;
  d.format_name = format_name.empty() ? path.stem().string() : std::move(format_name);
  long line_no = 0;
  for (std::string_view line : split_lines(text)) {
    ++line_no;
    if (trim(line).empty()) continue;
    d.sets.push_back(parse_wflw_line(line, line_no));
  }
  if (d.sets.empty()) throw ValidationError("no annotations found in " + path.string());
  validate_dataset(d, expected_m);
  return d;
}

}  // namespace

Dataset load_dataset(const std::filesystem::path& path, AnnotationSyntax syntax,
                     std::string format_name, int expected_m) {
  if (!std::filesystem::exists(path)) throw IoError("path does not exist: " + path.string());
  switch (syntax) {
    case AnnotationSyntax::kPts:
      return load_pts_directory(path, std::move(format_name), expected_m);
    case AnnotationSyntax::kWflwLine:
      return load_wflw_file(path, std::move(format_name), expected_m);
    case AnnotationSyntax::kCanonicalJson: {
      Dataset d = parse_dataset_json(read_file(path));
      if (!format_name.empty()) d.format_name = std::move(format_name);
      validate_dataset(d, expected_m);
      return d;
    }
  }
  throw ValidationError("unreachable annotation syntax");
}

std::string serialize_dataset_json(const Dataset& d) {
  nlohmann::ordered_json j;
  j["format_name"] = d.format_name;
  j["M"] = d.num_landmarks();
  auto records = nlohmann::ordered_json::array();
  for (const LandmarkSet& s : d.sets) {
    nlohmann::ordered_json rec;
    rec["image_id"] = s.image_id;
    auto pts = nlohmann::ordered_json::array();
    for (const Vec2& p : s.points) pts.push_back({p.x, p.y});
    rec["points"] = std::move(pts);
    records.push_back(std::move(rec));
  }
  j["records"] = std::move(records);
  return j.dump(2) + "\n";
}

Dataset parse_dataset_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  try {
    Dataset d;
    d.format_name = j.at("format_name").get<std::string>();
    auto m = j.at("M").get<std::size_t>();
    for (const auto& rec : j.at("records")) {
      LandmarkSet s;
      s.image_id = rec.at("image_id").get<std::string>();
      for (const auto& p : rec.at("points"))
        s.points.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
      if (s.size() != m)
        throw ValidationError("record '" + s.image_id + "' has " + std::to_string(s.size()) +
                              " points, declared M is " + std::to_string(m));
      check_finite(s);
      d.sets.push_back(std::move(s));
    }
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("canonical JSON missing field: ") + e.what());
  }
}

void export_matrix(const SquareMatrix& m, std::ostream& out, MatrixLayout layout) {
  if (!m.all_finite()) throw ValidationError("refusing to export non-finite matrix");
  if (layout == MatrixLayout::kCsv) {
    for (int j = 0; j < m.size(); ++j) {
      if (j) out << ',';
      out << j;
    }
    out << '\n';
    for (int i = 0; i < m.size(); ++i) {
      for (int j = 0; j < m.size(); ++j) {
        if (j) out << ',';
        out << fmt_g(m.at(i, j));
      }
      out << '\n';
    }
  } else {
    out << "{\n  \"m_size\": " << m.size() << ",\n  \"values\": [";
    for (int i = 0; i < m.size(); ++i) {
      out << (i ? ",\n    [" : "\n    [");
      for (int j = 0; j < m.size(); ++j) {
        if (j) out << ", ";
        out << fmt_g(m.at(i, j));
      }
      out << ']';
    }
    out << "\n  ]\n}\n";
  }
  if (!out) throw IoError("matrix export failed: sink write error");
}

std::string export_matrix(const SquareMatrix& m, MatrixLayout layout) {
  std::ostringstream ss;
  export_matrix(m, ss, layout);
  return ss.str();
}

SquareMatrix import_matrix(std::string_view text, MatrixLayout layout) {
  if (layout == MatrixLayout::kCsv) {
    auto lines = split_lines(text);
    while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
    if (lines.empty()) throw ParseError("empty matrix CSV", 1);
    std::vector<std::string_view> header;
    {
      std::string_view h = lines[0];
      std::size_t pos = 0;
      while (pos <= h.size()) {
        std::size_t c = h.find(',', pos);
        if (c == std::string_view::npos) {
          header.push_back(trim(h.substr(pos)));
          break;
        }
        header.push_back(trim(h.substr(pos, c - pos)));
        pos = c + 1;
      }
    }
    int msize = static_cast<int>(header.size());
    if (static_cast<int>(lines.size()) != msize + 1)
      throw ParseError("matrix CSV needs " + std::to_string(msize) + " data rows, got " +
                       std::to_string(lines.size() - 1));
    SquareMatrix m(msize);
    for (int i = 0; i < msize; ++i) {
      std::string_view row = lines[static_cast<std::size_t>(i) + 1];
      std::size_t pos = 0;
      for (int j = 0; j < msize; ++j) {
        std::size_t c = row.find(',', pos);
        std::string_view cell =
            c == std::string_view::npos ? row.substr(pos) : row.substr(pos, c - pos);
        if (j + 1 < msize && c == std::string_view::npos)
          throw ParseError("row has too few cells", i + 2);
        m.at(i, j) = parse_double(trim(cell), i + 2);
        pos = c == std::string_view::npos ? row.size() : c + 1;
      }
    }
    return m;
  }
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
    int msize = j.at("m_size").get<int>();
    SquareMatrix m(msize);
    const auto& rows = j.at("values");
    if (static_cast<int>(rows.size()) != msize)
      throw ParseError("values row count does not match m_size");
    for (int i = 0; i < msize; ++i) {
      if (static_cast<int>(rows[i].size()) != msize)
        throw ParseError("values column count does not match m_size");
      for (int jj = 0; jj < msize; ++jj) m.at(i, jj) = rows[i][jj].get<double>();
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid matrix JSON: ") + e.what());
  }
}

SquareMatrix import_matrix_file(const std::filesystem::path& path) {
  MatrixLayout layout =
      path.extension() == ".json" ? MatrixLayout::kJson : MatrixLayout::kCsv;
  return import_matrix(read_file(path), layout);
}

void validate_affinity(const SquareMatrix& m) {
  if (m.size() < 1) throw ValidationError("affinity matrix is empty");
  if (!m.all_finite()) throw ValidationError("affinity matrix has non-finite entries");
  for (int i = 0; i < m.size(); ++i) {
    if (std::abs(m.at(i, i) - 1.0) > 1e-9)
      throw ValidationError("affinity diagonal must be 1, entry " + std::to_string(i) + " is " +
                            fmt_g(m.at(i, i)));
    for (int j = 0; j < m.size(); ++j) {
      double v = m.at(i, j);
      if (v < -1e-12 || v > 1.0 + 1e-12)
        throw ValidationError("affinity entry (" + std::to_string(i) + "," + std::to_string(j) +
                              ") out of [0,1]: " + fmt_g(v));
      if (std::abs(v - m.at(j, i)) > 1e-12)
        throw ValidationError("affinity matrix not symmetric at (" + std::to_string(i) + "," +
                              std::to_string(j) + ")");
    }
  }
}

FormatDescriptor builtin_descriptor(std::string_view name) {
  FormatDescriptor f;
  if (name == "300w") {
    f.name = "300w";
    f.num_landmarks = 68;
    f.left_eye = {36};   // outer corners, the 300W convention
    f.right_eye = {45};
    f.blocks = {{"contour", 0, 16}, {"brows", 17, 26}, {"nose", 27, 35},
                {"eyes", 36, 47},   {"lips", 48, 67}};
    return f;
  }
  if (name == "300w-interpupil") {
    f = builtin_descriptor("300w");
    f.name = "300w-interpupil";
    f.left_eye = {36, 37, 38, 39, 40, 41};
    f.right_eye = {42, 43, 44, 45, 46, 47};
    return f;
  }
  if (name == "wflw") {
    f.name = "wflw";
    f.num_landmarks = 98;
    f.left_eye = {60};
    f.right_eye = {72};
    f.blocks = {{"contour", 0, 32}, {"brows", 33, 50}, {"nose", 51, 59},
                {"eyes", 60, 75},   {"lips", 76, 95},  {"pupils", 96, 97}};
    return f;
  }
  throw ValidationError("unknown format descriptor '" + std::string(name) +
                        "' (built-ins: 300w, 300w-interpupil, wflw)");
}

namespace {

void validate_descriptor(const FormatDescriptor& f) {
  auto check_idx = [&](int idx, const std::string& what) {
    if (idx < 0 || idx >= f.num_landmarks)
      throw ValidationError(what + " index " + std::to_string(idx) + " out of [0, " +
                            std::to_string(f.num_landmarks) + ")");
  };
  for (int i : f.left_eye) check_idx(i, "left_eye");
  for (int i : f.right_eye) check_idx(i, "right_eye");
  std::vector<char> seen(static_cast<std::size_t>(f.num_landmarks), 0);
  for (const ComponentBlock& b : f.blocks) {
    if (b.lo > b.hi) throw ValidationError("block '" + b.name + "' has lo > hi");
    check_idx(b.lo, "block '" + b.name + "'");
    check_idx(b.hi, "block '" + b.name + "'");
    for (int i = b.lo; i <= b.hi; ++i) {
      if (seen[static_cast<std::size_t>(i)])
        throw ValidationError("blocks overlap at landmark " + std::to_string(i));
      seen[static_cast<std::size_t>(i)] = 1;
    }
  }
}

}  // namespace

FormatDescriptor parse_descriptor_json(std::string_view text) {
  try {
    nlohmann::json j = nlohmann::json::parse(text);
    FormatDescriptor f;
    f.name = j.at("name").get<std::string>();
    f.num_landmarks = j.at("M").get<int>();
    if (j.contains("left_eye")) f.left_eye = j["left_eye"].get<std::vector<int>>();
    if (j.contains("right_eye")) f.right_eye = j["right_eye"].get<std::vector<int>>();
    if (j.contains("blocks")) {
      for (auto it = j["blocks"].begin(); it != j["blocks"].end(); ++it) {
        const auto& range = it.value();
        f.blocks.push_back({it.key(), range.at(0).get<int>(), range.at(1).get<int>()});
      }
      std::sort(f.blocks.begin(), f.blocks.end(),
                [](const ComponentBlock& a, const ComponentBlock& b) { return a.lo < b.lo; });
    }
    validate_descriptor(f);
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid descriptor JSON: ") + e.what());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read failed: " + path.string());
  return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open file for writing: " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("write failed: " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("rename failed: " + path.string() + ": " + ec.message());
}

}  // namespace lmcca
