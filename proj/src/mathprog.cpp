#include "utadis/mathprog.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <unordered_map>

#include "utadis/errors.hpp"

namespace utadis::mp {

LinearExpr& LinearExpr::add(const LinearExpr& other, double scale) {
  for (const Term& t : other.terms_) add(t.var, t.coef * scale);
  constant_ += other.constant_ * scale;
  return *this;
}

LinearExpr& LinearExpr::operator*=(double s) {
  for (Term& t : terms_) t.coef *= s;
  constant_ *= s;
  return *this;
}

std::vector<Term> LinearExpr::normalized_terms() const {
  std::vector<Term> out = terms_;
  std::stable_sort(out.begin(), out.end(),
                   [](const Term& a, const Term& b) { return a.var < b.var; });
  std::vector<Term> merged;
  merged.reserve(out.size());
  for (const Term& t : out) {
    if (!merged.empty() && merged.back().var == t.var) {
      merged.back().coef += t.coef;
    } else {
      merged.push_back(t);
    }
  }
  std::erase_if(merged, [](const Term& t) { return t.coef == 0.0; });
  return merged;
}

double LinearExpr::evaluate(const std::vector<double>& values) const {
  double v = constant_;
  for (const Term& t : terms_) v += t.coef * values.at(t.var);
  return v;
}

namespace {

void check_name(const std::string& name) {
  for (char c : name) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == ':') {
      throw ConfigurationError("program names may not contain whitespace or ':': '" +
                               name + "'");
    }
  }
}

double row_activity(const std::vector<Term>& terms, const std::vector<double>& x) {
  double a = 0.0;
  for (const Term& t : terms) a += t.coef * x[t.var];
  return a;
}

}  // namespace

VarId Program::add_variable(std::string name, double lower, double upper, VarKind kind) {
  check_name(name);
  if (name.empty()) throw ConfigurationError("program variables need a name");
  variables_.push_back({std::move(name), kind, lower, upper});
  return variables_.size() - 1;
}

void Program::set_bounds(VarId v, double lower, double upper) {
  Variable& var = variables_.at(v);
  var.lower = lower;
  var.upper = upper;
}

void Program::set_kind(VarId v, VarKind kind) { variables_.at(v).kind = kind; }

std::size_t Program::add_constraint(std::string name, const LinearExpr& expr,
                                    Relation relation, double rhs) {
  check_name(name);
  constraints_.push_back({std::move(name), expr.normalized_terms(), relation,
                          rhs - expr.constant()});
  return constraints_.size() - 1;
}

void Program::set_objective(Sense sense, const LinearExpr& objective) {
  sense_ = sense;
  objective_ = objective.normalized_terms();
  objective_constant_ = objective.constant();
}

std::size_t Program::binary_count() const {
  return static_cast<std::size_t>(std::count_if(
      variables_.begin(), variables_.end(),
      [](const Variable& v) { return v.kind == VarKind::binary; }));
}

void Program::validate() const {
  const std::size_t n = variables_.size();
  for (const Variable& v : variables_) {
    if (v.kind == VarKind::binary &&
        !(v.lower >= 0.0 && v.upper <= 1.0 && v.lower <= v.upper)) {
      throw ConfigurationError("binary variable '" + v.name + "' must have bounds within {0,1}");
    }
    if (std::isnan(v.lower) || std::isnan(v.upper)) {
      throw ConfigurationError("variable '" + v.name + "' has NaN bounds");
    }
  }
  for (const Constraint& c : constraints_) {
    for (const Term& t : c.terms) {
      if (t.var >= n) {
        throw ConfigurationError("constraint '" + c.name + "' references undeclared variable #" +
                                 std::to_string(t.var));
      }
    }
  }
  for (const Term& t : objective_) {
    if (t.var >= n) {
      throw ConfigurationError("objective references undeclared variable #" +
                               std::to_string(t.var));
    }
  }
}

double Program::max_violation(const std::vector<double>& x) const {
  double worst = 0.0;
  for (std::size_t v = 0; v < variables_.size(); ++v) {
    const Variable& var = variables_[v];
    worst = std::max({worst, var.lower - x[v], x[v] - var.upper});
    if (var.kind == VarKind::binary) {
      worst = std::max(worst, std::abs(x[v] - std::round(x[v])));
    }
  }
  for (const Constraint& c : constraints_) {
    const double a = row_activity(c.terms, x);
    switch (c.relation) {
      case Relation::less_equal: worst = std::max(worst, a - c.rhs); break;
      case Relation::greater_equal: worst = std::max(worst, c.rhs - a); break;
      case Relation::equal: worst = std::max(worst, std::abs(a - c.rhs)); break;
    }
  }
  return worst;
}

double Program::objective_value(const std::vector<double>& x) const {
  return objective_constant_ + row_activity(objective_, x);
}

std::string_view to_string(Status status) {
  switch (status) {
    case Status::optimal: return "optimal";
    case Status::infeasible: return "infeasible";
    case Status::unbounded: return "unbounded";
  }
  return "unknown";
}

std::unique_ptr<Solver> make_solver(std::string_view name) {
  std::string chosen(name);
  if (chosen.empty()) {
    if (const char* env = std::getenv("UTADIS_SOLVER")) chosen = env;
  }
  if (chosen.empty() || chosen == "highs") return std::make_unique<HighsSolver>();
  if (chosen == "bruteforce") return std::make_unique<BruteForceSolver>();
  throw ConfigurationError("unknown solver backend '" + chosen + "' (valid: highs, bruteforce)");
}

// ---------------------------------------------------------------------------
// Text dump

namespace {

std::string fmt_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_name(const std::string& name) { return name.empty() ? "_" : name; }

void write_terms(std::ostringstream& os, const std::vector<Term>& terms,
                 const Program& p) {
  for (const Term& t : terms) {
    os << (t.coef < 0 ? " - " : " + ") << fmt_number(std::abs(t.coef)) << ' '
       << p.variable(t.var).name;
  }
}

}  // namespace

std::string to_lp_text(const Program& p) {
  std::ostringstream os;
  os << "\\ utadis program: " << p.variable_count() << " variables, "
     << p.constraint_count() << " constraints\n";
  os << "variables\n";
  for (const Variable& v : p.variables()) {
    os << ' ' << (v.kind == VarKind::binary ? "binary" : "continuous") << ' ' << v.name
       << ' ' << fmt_number(v.lower) << ' ' << fmt_number(v.upper) << '\n';
  }
  os << (p.sense() == Sense::maximize ? "maximize\n" : "minimize\n");
  os << " obj:";
  write_terms(os, p.objective(), p);
  os << " constant " << fmt_number(p.objective_constant()) << '\n';
  os << "subject to\n";
  for (const Constraint& c : p.constraints()) {
    os << ' ' << fmt_name(c.name) << ':';
    write_terms(os, c.terms, p);
    os << ' '
       << (c.relation == Relation::less_equal ? "<="
           : c.relation == Relation::equal   ? "="
                                             : ">=")
       << ' ' << fmt_number(c.rhs) << '\n';
  }
  os << "end\n";
  return os.str();
}

namespace {

class TextReader {
 public:
  explicit TextReader(std::string_view text) : text_(text) {}

  bool next_line(std::vector<std::string>& tokens) {
    while (pos_ < text_.size()) {
      std::size_t end = text_.find('\n', pos_);
      if (end == std::string_view::npos) end = text_.size();
      std::string_view line = text_.substr(pos_, end - pos_);
      pos_ = end + 1;
      ++line_;
      tokens.clear();
      std::istringstream is{std::string(line)};
      std::string tok;
      while (is >> tok) tokens.push_back(tok);
      if (tokens.empty() || tokens.front().starts_with("\\")) continue;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("<lp text>", line_, what);
  }

  double number(const std::string& tok) const {
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0') fail("expected a number, got '" + tok + "'");
    return v;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 0;
};

}  // namespace

Program parse_lp_text(std::string_view text) {
  TextReader in(text);
  Program p;
  std::unordered_map<std::string, VarId> ids;
  std::vector<std::string> tok;

  auto parse_terms = [&](std::size_t from, std::size_t to, LinearExpr& expr) {
    if ((to - from) % 3 != 0) in.fail("malformed linear expression");
    for (std::size_t k = from; k < to; k += 3) {
      const std::string& sign = tok[k];
      if (sign != "+" && sign != "-") in.fail("expected '+' or '-', got '" + sign + "'");
      const double mag = in.number(tok[k + 1]);
      auto it = ids.find(tok[k + 2]);
      if (it == ids.end()) in.fail("unknown variable '" + tok[k + 2] + "'");
      expr.add(it->second, sign == "-" ? -mag : mag);
    }
  };

  if (!in.next_line(tok) || tok[0] != "variables") in.fail("expected 'variables'");
  while (true) {
    if (!in.next_line(tok)) in.fail("unexpected end of input");
    if (tok[0] == "maximize" || tok[0] == "minimize") break;
    if (tok.size() != 4) in.fail("variable line needs: kind name lower upper");
    const VarKind kind = tok[0] == "binary" ? VarKind::binary : VarKind::continuous;
    if (tok[0] != "binary" && tok[0] != "continuous") in.fail("unknown variable kind '" + tok[0] + "'");
    if (ids.count(tok[1])) in.fail("duplicate variable '" + tok[1] + "'");
    ids[tok[1]] = p.add_variable(tok[1], in.number(tok[2]), in.number(tok[3]), kind);
  }
  const Sense sense = tok[0] == "maximize" ? Sense::maximize : Sense::minimize;
  if (!in.next_line(tok) || tok[0] != "obj:" || tok.size() < 3 ||
      tok[tok.size() - 2] != "constant") {
    in.fail("expected objective line");
  }
  LinearExpr obj;
  parse_terms(1, tok.size() - 2, obj);
  obj.add_constant(in.number(tok.back()));
  p.set_objective(sense, obj);
  if (!in.next_line(tok) || tok.size() != 2 || tok[0] != "subject" || tok[1] != "to") {
    in.fail("expected 'subject to'");
  }
  while (true) {
    if (!in.next_line(tok)) in.fail("unexpected end of input");
    if (tok[0] == "end") break;
    if (tok.size() < 3 || tok[0].back() != ':') in.fail("malformed constraint");
    std::string name = tok[0].substr(0, tok[0].size() - 1);
    if (name == "_") name.clear();
    const std::string& rel = tok[tok.size() - 2];
    Relation relation;
    if (rel == "<=") relation = Relation::less_equal;
    else if (rel == ">=") relation = Relation::greater_equal;
    else if (rel == "=") relation = Relation::equal;
    else in.fail("unknown relation '" + rel + "'");
    LinearExpr lhs;
    parse_terms(1, tok.size() - 2, lhs);
    p.add_constraint(std::move(name), lhs, relation, in.number(tok.back()));
  }
  return p;
}

}  // namespace utadis::mp
