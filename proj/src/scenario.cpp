#include "odebench/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cctype>
#include <map>
#include <set>
#include <variant>

#include "odebench/csv.hpp"
#include "odebench/errors.hpp"

namespace odebench {

std::string_view to_string(Solver solver) {
  switch (solver) {
    case Solver::Euler:
      return "euler";
    case Solver::Heun:
      return "heun";
    case Solver::Midpoint:
      return "midpoint";
    case Solver::Rk4:
      return "rk4";
    case Solver::Rk45:
      return "rk45";
  }
  return "?";
}

std::optional<Solver> parse_solver(std::string_view name) {
  for (const Solver s : kAllSolvers) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

std::optional<FixedMethod> fixed_method(Solver solver) {
  switch (solver) {
    case Solver::Euler:
      return FixedMethod::Euler;
    case Solver::Heun:
      return FixedMethod::Heun;
    case Solver::Midpoint:
      return FixedMethod::Midpoint;
    case Solver::Rk4:
      return FixedMethod::Rk4;
    case Solver::Rk45:
      return std::nullopt;
  }
  return std::nullopt;
}

namespace {

std::vector<Solver> resolve_solvers(const std::vector<std::string>& names,
                                    const std::string& field) {
  std::vector<Solver> out;
  for (const auto& name : names) {
    const auto solver = parse_solver(name);
    if (!solver) throw ValidationError(field, "unknown solver '" + name + "'");
    if (std::find(out.begin(), out.end(), *solver) != out.end()) {
      throw ValidationError(field, "solver '" + name + "' listed twice");
    }
    out.push_back(*solver);
  }
  if (out.empty()) throw ValidationError(field, "no solvers selected");
  return out;
}

using Value = std::variant<double, std::string, std::vector<std::string>>;

struct Entry {
  Value value;
  int line;
};

using Section = std::map<std::string, Entry, std::less<>>;
using Document = std::map<std::string, Section, std::less<>>;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

bool is_key_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

// Reads a quoted string starting at s[0] == '"'; advances s past it.
std::string read_string(std::string_view& s, int line) {
  std::string out;
  std::size_t i = 1;
  for (; i < s.size(); ++i) {
    const char c = s[i];
    if (c == '"') break;
    if (c == '\\') {
      if (++i >= s.size()) break;
      const char e = s[i];
      if (e == '"' || e == '\\') {
        out += e;
      } else {
        throw ParseError(line, std::string("unsupported escape '\\") + e + "'");
      }
      continue;
    }
    out += c;
  }
  if (i >= s.size()) throw ParseError(line, "unterminated string");
  s.remove_prefix(i + 1);
  return out;
}

// Drops a trailing comment; '#' inside a string is kept.
std::string_view strip_comment(std::string_view s) {
  bool in_string = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '\\' && in_string) {
      ++i;
    } else if (s[i] == '"') {
      in_string = !in_string;
    } else if (s[i] == '#' && !in_string) {
      return s.substr(0, i);
    }
  }
  return s;
}

Value parse_value(std::string_view s, int line) {
  s = trim(s);
  if (s.empty()) throw ParseError(line, "missing value");
  if (s.front() == '"') {
    std::string str = read_string(s, line);
    if (!trim(s).empty()) throw ParseError(line, "trailing text after string");
    return str;
  }
  if (s.front() == '[') {
    s.remove_prefix(1);
    std::vector<std::string> items;
    while (true) {
      s = trim(s);
      if (s.empty()) throw ParseError(line, "unterminated array");
      if (s.front() == ']') {
        s.remove_prefix(1);
        break;
      }
      if (s.front() != '"') throw ParseError(line, "array items must be strings");
      items.push_back(read_string(s, line));
      s = trim(s);
      if (!s.empty() && s.front() == ',') {
        s.remove_prefix(1);
      } else if (s.empty() || s.front() != ']') {
        throw ParseError(line, "expected ',' or ']' in array");
      }
    }
    if (!trim(s).empty()) throw ParseError(line, "trailing text after array");
    return items;
  }
  if (s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw ParseError(line, "invalid value '" + std::string(s) + "'");
  }
  return v;
}

Document parse_document(std::string_view text) {
  Document doc;
  Section* current = nullptr;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = trim(strip_comment(text.substr(pos, end - pos)));
    pos = end + 1;
    ++line_no;
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError(line_no, "malformed section header");
      const std::string name(trim(line.substr(1, line.size() - 2)));
      if (name.empty() || !std::all_of(name.begin(), name.end(), is_key_char)) {
        throw ParseError(line_no, "invalid section name '" + name + "'");
      }
      if (doc.contains(name)) {
        throw ParseError(line_no, "section [" + name + "] repeated");
      }
      current = &doc[name];
      continue;
    }

    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError(line_no, "expected 'key = value'");
    }
    const std::string key(trim(line.substr(0, eq)));
    if (key.empty() || !std::all_of(key.begin(), key.end(), is_key_char)) {
      throw ParseError(line_no, "invalid key '" + key + "'");
    }
    if (!current) {
      throw ParseError(line_no, "key '" + key + "' appears before any section");
    }
    if (current->contains(key)) {
      throw ParseError(line_no, "key '" + key + "' repeated");
    }
    current->emplace(key, Entry{parse_value(line.substr(eq + 1), line_no), line_no});
  }
  return doc;
}

// Typed access to one section; remembers which keys were read so leftovers
// can be reported as unknown.
class SectionReader {
 public:
  SectionReader(const Section* section, std::string name)
      : section_(section), name_(std::move(name)) {}

  std::optional<double> number(std::string_view key) {
    const Entry* e = find(key);
    if (!e) return std::nullopt;
    if (const auto* d = std::get_if<double>(&e->value)) return *d;
    throw ValidationError(field(key), "expected a number (line " +
                                          std::to_string(e->line) + ")");
  }

  std::optional<std::string> string(std::string_view key) {
    const Entry* e = find(key);
    if (!e) return std::nullopt;
    if (const auto* s = std::get_if<std::string>(&e->value)) return *s;
    throw ValidationError(field(key), "expected a string (line " +
                                          std::to_string(e->line) + ")");
  }

  std::optional<std::vector<std::string>> strings(std::string_view key) {
    const Entry* e = find(key);
    if (!e) return std::nullopt;
    if (const auto* v = std::get_if<std::vector<std::string>>(&e->value)) {
      return *v;
    }
    throw ValidationError(field(key), "expected an array of strings (line " +
                                          std::to_string(e->line) + ")");
  }

  void set(double& target, std::string_view key) {
    if (auto v = number(key)) target = *v;
  }

  void reject_unknown() const {
    if (!section_) return;
    for (const auto& [key, entry] : *section_) {
      if (!used_.contains(key)) {
        throw ValidationError(field(key), "unknown key (line " +
                                              std::to_string(entry.line) + ")");
      }
    }
  }

  std::string field(std::string_view key) const {
    return name_ + "." + std::string(key);
  }

 private:
  const Entry* find(std::string_view key) {
    used_.emplace(key);
    if (!section_) return nullptr;
    const auto it = section_->find(key);
    return it == section_->end() ? nullptr : &it->second;
  }

  const Section* section_;
  std::string name_;
  std::set<std::string, std::less<>> used_;
};

SectionReader reader(const Document& doc, const std::string& name) {
  const auto it = doc.find(name);
  return SectionReader(it == doc.end() ? nullptr : &it->second, name);
}

// Model validation names bare fields ("K"); qualify them with the section.
template <typename Model>
void validate_model(const Model& m) {
  try {
    m.validate();
  } catch (const ValidationError& e) {
    throw ValidationError("model." + e.field(),
                          std::string(e.what()).substr(e.field().size() + 2));
  }
}

CaseModel read_model(const std::string& kind, SectionReader& r) {
  if (kind == "logistic") {
    LogisticModel m;
    r.set(m.r, "r");
    r.set(m.K, "K");
    r.set(m.P0, "P0");
    validate_model(m);
    return m;
  }
  if (kind == "temperature") {
    TemperatureModel m;
    r.set(m.k, "k");
    r.set(m.T0, "T0");
    r.set(m.A, "A");
    r.set(m.B, "B");
    r.set(m.period, "period");
    validate_model(m);
    return m;
  }
  if (kind == "market") {
    MarketModel m;
    r.set(m.adjust, "adjust");
    r.set(m.d0, "d0");
    r.set(m.d1, "d1");
    r.set(m.s0, "s0");
    r.set(m.s1, "s1");
    r.set(m.p0, "p0");
    r.set(m.p_c, "p_c");
    r.set(m.lambda, "lambda");
    validate_model(m);
    return m;
  }
  throw ValidationError("problem.model", "unknown model '" + kind +
                                             "' (expected logistic, temperature or market)");
}

}  // namespace

std::vector<Solver> parse_solver_list(std::string_view list) {
  std::vector<std::string> names;
  std::size_t start = 0;
  while (start <= list.size()) {
    std::size_t comma = list.find(',', start);
    if (comma == std::string_view::npos) comma = list.size();
    names.emplace_back(trim(list.substr(start, comma - start)));
    start = comma + 1;
  }
  return resolve_solvers(names, "solvers");
}

Scenario parse_scenario(std::string_view text,
                        const std::filesystem::path& base_dir) {
  const Document doc = parse_document(text);
  for (const auto& [name, section] : doc) {
    if (name != "problem" && name != "model" && name != "solvers" &&
        name != "reference") {
      throw ValidationError(name, "unknown section");
    }
  }

  Scenario sc;
  SectionReader problem = reader(doc, "problem");
  const auto model_kind = problem.string("model");
  if (!model_kind) throw ValidationError("problem.model", "required");
  const auto t_end = problem.number("t_end");
  if (!t_end) throw ValidationError("problem.t_end", "required");
  const auto h = problem.number("h");
  if (!h) throw ValidationError("problem.h", "required");
  sc.name = problem.string("name").value_or(*model_kind);
  problem.reject_unknown();

  if (!(std::isfinite(*t_end) && *t_end > 0.0)) {
    throw ValidationError("problem.t_end", "must be a positive finite number");
  }
  if (!(std::isfinite(*h) && *h > 0.0 && *h <= *t_end)) {
    throw ValidationError("problem.h", "must satisfy 0 < h <= t_end");
  }

  SectionReader model = reader(doc, "model");
  sc.model = read_model(*model_kind, model);
  model.reject_unknown();

  sc.problem = IvpProblem{model_rhs(sc.model), 0.0,
                          model_initial_value(sc.model), *t_end};
  sc.fixed.h = *h;
  sc.adaptive = AdaptiveConfig::for_problem(sc.problem);

  SectionReader solvers = reader(doc, "solvers");
  if (auto use = solvers.strings("use")) {
    sc.solvers = resolve_solvers(*use, "solvers.use");
  } else {
    sc.solvers.assign(std::begin(kAllSolvers), std::end(kAllSolvers));
  }
  if (auto v = solvers.number("rel_tol")) {
    if (!(*v > 0.0)) throw ValidationError("solvers.rel_tol", "must be positive");
    sc.adaptive.rel_tol = *v;
  }
  if (auto v = solvers.number("abs_tol")) {
    if (!(*v >= 0.0)) throw ValidationError("solvers.abs_tol", "must be non-negative");
    sc.adaptive.abs_tol = *v;
  }
  const auto iters = solvers.number("heun_corrector_max_iters");
  const auto tol = solvers.number("heun_corrector_tol_percent");
  if (iters && *iters != 0.0) {
    if (!(*iters > 0.0 && *iters == std::floor(*iters) && *iters <= 1000.0)) {
      throw ValidationError("solvers.heun_corrector_max_iters",
                            "must be an integer in [0, 1000]");
    }
    CorrectorConfig corrector;
    corrector.max_iters = static_cast<int>(*iters);
    if (tol) corrector.tol_percent = *tol;
    if (!(corrector.tol_percent > 0.0)) {
      throw ValidationError("solvers.heun_corrector_tol_percent", "must be positive");
    }
    sc.fixed.corrector = corrector;
  } else if (tol && !(*tol > 0.0)) {
    throw ValidationError("solvers.heun_corrector_tol_percent", "must be positive");
  }
  solvers.reject_unknown();

  SectionReader reference = reader(doc, "reference");
  if (auto p = reference.string("experimental")) {
    sc.references.push_back({ReferenceKind::Experimental, base_dir / *p});
  }
  if (auto p = reference.string("empirical")) {
    sc.references.push_back({ReferenceKind::Empirical, base_dir / *p});
  }
  reference.reject_unknown();

  return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
  const std::string text = csv::read_file(path);
  return parse_scenario(text, path.parent_path());
}

}  // namespace odebench
