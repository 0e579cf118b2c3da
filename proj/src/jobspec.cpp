#include "diagkill/jobspec.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <variant>
#include <vector>

namespace diagkill {

SpecError::SpecError(int line, const std::string& message)
    : Error(line > 0 ? "spec line " + std::to_string(line) + ": " + message : "spec: " + message), line_(line) {}

namespace {

struct Value {
  std::variant<std::string, double, std::vector<Value>> data;
  int line = 0;
};

class Reader {
 public:
  Reader(std::string_view text, int line) : s_(text), line_(line) {}

  Value value() {
    skip_ws();
    if (eof()) fail("missing value");
    const char c = s_[pos_];
    if (c == '"' || c == '\'') return Value{string(c), line_};
    if (c == '[') return array();
    return Value{number(), line_};
  }

  void finish() {
    skip_ws();
    if (!eof()) fail("unexpected trailing text '" + std::string(s_.substr(pos_)) + "'");
  }

 private:
  [[noreturn]] void fail(const std::string& m) const { throw SpecError(line_, m); }
  bool eof() const { return pos_ >= s_.size(); }

  void skip_ws() {
    while (!eof()) {
      const char c = s_[pos_];
      if (c == '#') {
        while (!eof() && s_[pos_] != '\n') ++pos_;
      } else if (c == '\n') {
        ++line_;
        ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        return;
      }
    }
  }

  std::string string(char quote) {
    ++pos_;
    std::string out;
    while (true) {
      if (eof() || s_[pos_] == '\n') fail("unterminated string");
      const char c = s_[pos_++];
      if (c == quote) return out;
      if (c == '\\' && quote == '"') {
        if (eof()) fail("unterminated escape");
        const char e = s_[pos_++];
        switch (e) {
          case '"': out += '"'; break;
          case '\\': out += '\\'; break;
          case 'n': out += '\n'; break;
          case 't': out += '\t'; break;
          default: fail(std::string("unsupported escape \\") + e);
        }
      } else {
        out += c;
      }
    }
  }

  double number() {
    const std::size_t start = pos_;
    while (!eof() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.' || s_[pos_] == '+' ||
                      s_[pos_] == '-' || s_[pos_] == '_')) {
      ++pos_;
    }
    std::string token(s_.substr(start, pos_ - start));
    std::erase(token, '_');
    if (!token.empty() && token[0] == '+') token.erase(0, 1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
      fail("expected a number, string or array, got '" + token + "'");
    }
    return v;
  }

  Value array() {
    const int open_line = line_;
    ++pos_;
    std::vector<Value> items;
    while (true) {
      skip_ws();
      if (eof()) throw SpecError(open_line, "unterminated array");
      if (s_[pos_] == ']') {
        ++pos_;
        return Value{std::move(items), open_line};
      }
      items.push_back(value());
      skip_ws();
      if (eof()) throw SpecError(open_line, "unterminated array");
      if (s_[pos_] == ',') {
        ++pos_;
      } else if (s_[pos_] != ']') {
        fail("expected ',' or ']' in array");
      }
    }
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  int line_;
};

using Table = std::map<std::string, Value>;
using Document = std::map<std::string, Table>;

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

// Net '[' depth of a line outside strings and comments.
int bracket_balance(std::string_view line) {
  int depth = 0;
  char quote = 0;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quote) {
      if (c == '\\' && quote == '"') {
        ++i;
      } else if (c == quote) {
        quote = 0;
      }
    } else if (c == '"' || c == '\'') {
      quote = c;
    } else if (c == '#') {
      break;
    } else if (c == '[') {
      ++depth;
    } else if (c == ']') {
      --depth;
    }
  }
  return depth;
}

Document parse_document(std::string_view text) {
  static const std::set<std::string> kSections = {"metric", "field", "domain", "tolerances"};
  Document doc;
  std::string section;
  std::vector<std::string> lines;
  {
    std::string cur;
    std::istringstream in{std::string(text)};
    while (std::getline(in, cur)) {
      if (!cur.empty() && cur.back() == '\r') cur.pop_back();
      lines.push_back(cur);
    }
  }
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const int line_no = static_cast<int>(n) + 1;
    const std::string line = trim(lines[n]);
    if (line.empty() || line[0] == '#') continue;
    if (line[0] == '[') {
      const auto close = line.find(']');
      if (close == std::string::npos) throw SpecError(line_no, "unterminated section header");
      const std::string rest = trim(std::string_view(line).substr(close + 1));
      if (!rest.empty() && rest[0] != '#') throw SpecError(line_no, "unexpected text after section header");
      section = trim(std::string_view(line).substr(1, close - 1));
      if (!kSections.count(section)) throw SpecError(line_no, "unknown section [" + section + "]");
      if (doc.count(section)) throw SpecError(line_no, "duplicate section [" + section + "]");
      doc[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw SpecError(line_no, "expected key = value");
    if (section.empty()) throw SpecError(line_no, "key outside of any section");
    std::string key = trim(std::string_view(line).substr(0, eq));
    if (key.size() >= 2 && (key.front() == '"' || key.front() == '\'') && key.back() == key.front()) {
      key = key.substr(1, key.size() - 2);
    }
    if (key.empty()) throw SpecError(line_no, "empty key");
    std::string rhs = line.substr(eq + 1);
    int depth = bracket_balance(rhs);
    while (depth > 0 && n + 1 < lines.size()) {
      ++n;
      rhs += "\n" + lines[n];
      depth += bracket_balance(lines[n]);
    }
    Reader reader(rhs, line_no);
    Value v = reader.value();
    reader.finish();
    auto& table = doc[section];
    if (table.count(key)) throw SpecError(line_no, "duplicate key '" + key + "'");
    table.emplace(key, std::move(v));
  }
  return doc;
}

const std::string& as_string(const Value& v, const std::string& what) {
  if (const auto* s = std::get_if<std::string>(&v.data)) return *s;
  throw SpecError(v.line, what + " must be a string");
}

double as_number(const Value& v, const std::string& what) {
  if (const auto* d = std::get_if<double>(&v.data)) return *d;
  throw SpecError(v.line, what + " must be a number");
}

const std::vector<Value>& as_triple(const Value& v, const std::string& what) {
  const auto* a = std::get_if<std::vector<Value>>(&v.data);
  if (!a || a->size() != 3) throw SpecError(v.line, what + " must be an array of 3 entries");
  return *a;
}

void reject_unknown(const Table& t, const std::set<std::string>& allowed, const std::string& section) {
  for (const auto& [key, v] : t) {
    if (!allowed.count(key)) throw SpecError(v.line, "unknown key '" + key + "' in [" + section + "]");
  }
}

}  // namespace

JobSpec parse_job_spec(std::string_view text) {
  const Document doc = parse_document(text);
  JobSpec spec;

  const auto metric = doc.find("metric");
  if (metric == doc.end()) throw SpecError(0, "missing [metric] section");
  reject_unknown(metric->second, {"f1", "f2", "f3"}, "metric");
  for (int i = 0; i < 3; ++i) {
    const std::string key = "f" + std::to_string(i + 1);
    const auto it = metric->second.find(key);
    if (it == metric->second.end()) throw SpecError(0, "missing metric." + key);
    spec.metric[i] = as_string(it->second, "metric." + key);
  }

  if (const auto field = doc.find("field"); field != doc.end()) {
    reject_unknown(field->second, {"frame", "coordinate"}, "field");
    const auto frame = field->second.find("frame");
    const auto coord = field->second.find("coordinate");
    if ((frame == field->second.end()) == (coord == field->second.end())) {
      throw SpecError(0, "[field] needs exactly one of 'frame' or 'coordinate'");
    }
    FieldSpec fs;
    const bool is_frame = frame != field->second.end();
    fs.basis = is_frame ? FieldBasis::Frame : FieldBasis::Coordinate;
    const Value& v = is_frame ? frame->second : coord->second;
    const auto& items = as_triple(v, is_frame ? "field.frame" : "field.coordinate");
    for (int i = 0; i < 3; ++i) fs.components[i] = as_string(items[i], "field component");
    spec.field = fs;
  }

  if (const auto domain = doc.find("domain"); domain != doc.end()) {
    reject_unknown(domain->second, {"min", "max", "grid"}, "domain");
    const auto& t = domain->second;
    if (auto it = t.find("min"); it != t.end()) {
      const auto& a = as_triple(it->second, "domain.min");
      for (int i = 0; i < 3; ++i) spec.box.lo[i] = as_number(a[i], "domain.min entry");
    }
    if (auto it = t.find("max"); it != t.end()) {
      const auto& a = as_triple(it->second, "domain.max");
      for (int i = 0; i < 3; ++i) spec.box.hi[i] = as_number(a[i], "domain.max entry");
    }
    if (auto it = t.find("grid"); it != t.end()) {
      const auto& a = as_triple(it->second, "domain.grid");
      for (int i = 0; i < 3; ++i) {
        const double n = as_number(a[i], "domain.grid entry");
        if (n != static_cast<int>(n)) throw SpecError(a[i].line, "domain.grid entries must be integers");
        spec.grid[i] = static_cast<int>(n);
      }
    }
  }

  if (const auto tol = doc.find("tolerances"); tol != doc.end()) {
    reject_unknown(tol->second, {"residual", "quadrature", "constancy"}, "tolerances");
    const auto& t = tol->second;
    if (auto it = t.find("residual"); it != t.end()) spec.tolerances.residual = as_number(it->second, "residual");
    if (auto it = t.find("quadrature"); it != t.end()) spec.tolerances.quadrature = as_number(it->second, "quadrature");
    if (auto it = t.find("constancy"); it != t.end()) spec.tolerances.constancy = as_number(it->second, "constancy");
  }

  spec.validate();
  return spec;
}

JobSpec load_job_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SpecError(0, "cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_job_spec(buf.str());
}

void JobSpec::validate() const {
  for (int i = 0; i < 3; ++i) {
    if (!(box.lo[i] < box.hi[i])) throw SpecError(0, "domain min must be below max on every axis");
    if (grid[i] < 2) throw SpecError(0, "grid counts must be at least 2");
  }
  if (!(tolerances.residual > 0.0) || !(tolerances.quadrature > 0.0) || !(tolerances.constancy > 0.0)) {
    throw SpecError(0, "tolerances must be positive");
  }
}

DiagonalMetric JobSpec::build_metric() const { return DiagonalMetric::parse(metric[0], metric[1], metric[2], box); }

FrameVectorField JobSpec::build_field(const DiagonalMetric& m) const {
  if (!field) return FrameVectorField::zero();
  if (field->basis == FieldBasis::Frame) return FrameVectorField::parse(field->components);
  return coordinate_to_frame(CoordinateVectorField::parse(field->components), m);
}

}  // namespace diagkill
