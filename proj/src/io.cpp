#include "bimoment/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace bimoment {

namespace {

using json = nlohmann::json;

[[noreturn]] void fail(const std::string& source, const std::string& what) {
  throw InputError(source + ": " + what);
}

[[noreturn]] void fail_line(const std::string& source, std::size_t line, const std::string& what) {
  throw InputError(source + ":" + std::to_string(line) + ": " + what);
}

json parse_json(std::string_view text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(source, std::string("invalid JSON (") + e.what() + ")");
  }
}

int read_dim(const json& doc, const char* key, const std::string& source) {
  if (!doc.contains(key)) fail(source, std::string("missing \"") + key + "\"");
  const json& v = doc.at(key);
  if (!v.is_number_integer()) fail(source, std::string("\"") + key + "\" must be an integer");
  return v.get<int>();
}

Rational read_cell(const json& cell, const std::string& where, const std::string& source) {
  try {
    if (cell.is_string()) return Rational::parse(cell.get<std::string>());
    if (cell.is_number_integer()) return Rational(cell.get<long>());
  } catch (const DomainError& e) {
    fail(source, where + ": " + e.what());
  }
  fail(source, where + " must be a rational string such as \"1/3\" or \"0.25\"");
}

std::vector<Rational> read_grid(const json& doc, const char* key, int rows, int cols, const std::string& source) {
  if (!doc.contains(key) || !doc.at(key).is_array()) fail(source, std::string("missing array \"") + key + "\"");
  const json& grid = doc.at(key);
  if (grid.size() != static_cast<std::size_t>(rows)) {
    fail(source, std::string("\"") + key + "\" has " + std::to_string(grid.size()) + " rows, expected " +
                     std::to_string(rows));
  }
  std::vector<Rational> values;
  values.reserve(static_cast<std::size_t>(rows) * cols);
  for (int r = 0; r < rows; ++r) {
    const json& row = grid[static_cast<std::size_t>(r)];
    if (!row.is_array() || row.size() != static_cast<std::size_t>(cols)) {
      fail(source, std::string("row ") + std::to_string(r) + " of \"" + key + "\" must have " + std::to_string(cols) +
                       " entries");
    }
    for (int c = 0; c < cols; ++c) {
      values.push_back(read_cell(row[static_cast<std::size_t>(c)],
                                 std::string(key) + "[" + std::to_string(r) + "][" + std::to_string(c) + "]", source));
    }
  }
  return values;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    cells.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

std::string quoted(const Rational& r) { return "\"" + r.str() + "\""; }

}  // namespace

JointPMF parse_pmf_json(std::string_view text, const std::string& source) {
  const json doc = parse_json(text, source);
  const int m = read_dim(doc, "m", source);
  const int n = read_dim(doc, "n", source);
  if (m < 1 || n < 1) fail(source, "dimensions must satisfy m >= 1 and n >= 1");
  std::vector<Rational> p = read_grid(doc, "p", m + 1, n + 1, source);
  try {
    return JointPMF(m, n, std::move(p));
  } catch (const DomainError& e) {
    fail(source, e.what());
  }
}

MomentMatrix parse_moments_json(std::string_view text, const std::string& source) {
  const json doc = parse_json(text, source);
  const int m = read_dim(doc, "m", source);
  const int n = read_dim(doc, "n", source);
  if (m < 1 || n < 1) fail(source, "dimensions must satisfy m >= 1 and n >= 1");
  const int kmax = doc.contains("kmax") ? read_dim(doc, "kmax", source) : m;
  const int lmax = doc.contains("lmax") ? read_dim(doc, "lmax", source) : n;
  if (kmax < 0 || kmax > m || lmax < 0 || lmax > n) fail(source, "order limits must satisfy 0 <= kmax <= m, 0 <= lmax <= n");
  std::vector<Rational> s = read_grid(doc, "s", kmax + 1, lmax + 1, source);
  try {
    MomentMatrix mm(m, n, kmax, lmax, std::move(s));
    if (!within_moment_bounds(mm)) fail(source, "moments must satisfy 0 <= S(i,j) <= binom(m,i) binom(n,j)");
    return mm;
  } catch (const DomainError& e) {
    fail(source, e.what());
  }
}

EventSystem parse_event_csv(std::string_view text, const std::string& source) {
  std::vector<std::pair<std::size_t, std::string_view>> lines;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = text.find('\n', start);
    const std::string_view line = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    ++line_no;
    if (!trim(line).empty()) lines.emplace_back(line_no, line);
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  if (lines.empty()) fail(source, "empty event file");

  const auto header = split_csv(lines.front().second);
  const std::size_t header_line = lines.front().first;
  if (header.empty() || header.front() != "weight") fail_line(source, header_line, "header must start with 'weight'");
  int m = 0;
  int n = 0;
  for (std::size_t c = 1; c < header.size(); ++c) {
    const std::string expected_a = "A" + std::to_string(m + 1);
    const std::string expected_b = "B" + std::to_string(n + 1);
    if (n == 0 && header[c] == expected_a) {
      ++m;
    } else if (header[c] == expected_b) {
      ++n;
    } else {
      fail_line(source, header_line,
                "unexpected column '" + std::string(header[c]) + "' (expected weight,A1..Am,B1..Bn)");
    }
  }
  if (m < 1 || n < 1) fail_line(source, header_line, "need at least one A column and one B column");
  if (m > EventSystem::kMaxEvents || n > EventSystem::kMaxEvents) {
    fail_line(source, header_line, "at most " + std::to_string(EventSystem::kMaxEvents) + " events per family");
  }

  std::vector<Atom> atoms;
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const auto [ln, line] = lines[r];
    const auto cells = split_csv(line);
    if (cells.size() != header.size()) {
      fail_line(source, ln, "expected " + std::to_string(header.size()) + " cells, got " + std::to_string(cells.size()));
    }
    Atom atom;
    try {
      atom.weight = Rational::parse(cells[0]);
    } catch (const DomainError& e) {
      fail_line(source, ln, std::string("weight: ") + e.what());
    }
    if (atom.weight.sign() < 0) fail_line(source, ln, "weight must be nonnegative");
    for (std::size_t c = 1; c < cells.size(); ++c) {
      if (cells[c] != "0" && cells[c] != "1") {
        fail_line(source, ln, "indicator cell '" + std::string(header[c]) + "' must be 0 or 1");
      }
      if (cells[c] == "1") {
        const int index = static_cast<int>(c) - 1;
        if (index < m) {
          atom.a_mask |= std::uint64_t{1} << index;
        } else {
          atom.b_mask |= std::uint64_t{1} << (index - m);
        }
      }
    }
    atoms.push_back(std::move(atom));
  }
  try {
    return EventSystem(m, n, std::move(atoms));
  } catch (const DomainError& e) {
    fail(source, e.what());
  }
}

LoadedInput load_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  const bool is_csv = path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
  if (is_csv) {
    EventSystem es = parse_event_csv(text, path);
    JointPMF pmf = counting_pmf(es);
    MomentMatrix mm = moments_from_pmf(pmf);
    return LoadedInput{path, std::move(pmf), std::move(es), std::move(mm)};
  }
  const json doc = parse_json(text, path);
  if (doc.is_object() && doc.contains("p")) {
    JointPMF pmf = parse_pmf_json(text, path);
    MomentMatrix mm = moments_from_pmf(pmf);
    return LoadedInput{path, std::move(pmf), std::nullopt, std::move(mm)};
  }
  if (doc.is_object() && doc.contains("s")) {
    return LoadedInput{path, std::nullopt, std::nullopt, parse_moments_json(text, path)};
  }
  throw InputError(path + ": expected a pmf (\"p\"), a moment matrix (\"s\") or an event CSV");
}

std::string grid_json(int m, int n, std::string_view key, int rows, int cols, const std::vector<Rational>& values,
                      const std::vector<std::pair<std::string, std::string>>& extra) {
  std::ostringstream out;
  out << "{\n  \"m\": " << m << ",\n  \"n\": " << n << ",\n";
  for (const auto& [k, v] : extra) out << "  \"" << k << "\": " << v << ",\n";
  out << "  \"" << key << "\": [\n";
  for (int r = 0; r < rows; ++r) {
    out << "    [";
    for (int c = 0; c < cols; ++c) {
      if (c > 0) out << ", ";
      out << quoted(values[static_cast<std::size_t>(r) * cols + c]);
    }
    out << "]" << (r + 1 < rows ? "," : "") << "\n";
  }
  out << "  ]\n}\n";
  return out.str();
}

std::string to_json(const JointPMF& pmf) {
  return grid_json(pmf.m(), pmf.n(), "p", pmf.m() + 1, pmf.n() + 1, pmf.values());
}

std::string to_json(const MomentMatrix& mm) {
  std::vector<std::pair<std::string, std::string>> extra;
  if (!mm.is_complete()) {
    extra.emplace_back("kmax", std::to_string(mm.kmax()));
    extra.emplace_back("lmax", std::to_string(mm.lmax()));
  }
  return grid_json(mm.m(), mm.n(), "s", mm.kmax() + 1, mm.lmax() + 1, mm.values(), extra);
}

std::string to_json(const TailTable& tt) {
  return grid_json(tt.m(), tt.n(), "q", tt.m() + 1, tt.n() + 1, tt.values());
}

}  // namespace bimoment
