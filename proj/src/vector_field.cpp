#include "lvk/vector_field.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

#include "lvk/errors.hpp"

namespace lvk {

PolyVectorField::PolyVectorField(std::vector<std::string> names,
                                 std::vector<MultiPoly> components)
    : names_(std::move(names)), components_(std::move(components)) {
  if (names_.empty()) throw InvalidArgument("a system needs at least one variable");
  if (names_.size() != components_.size()) {
    throw ArityMismatch("number of components differs from number of variables");
  }
  for (const auto& p : components_) {
    if (p.arity() != names_.size()) throw ArityMismatch("component arity mismatch");
    degree_ = std::max(degree_, p.total_degree());
  }
}

namespace {

bool valid_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

std::string_view trim(std::string_view s, int& column) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
    ++column;
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

PolyVectorField parse_system(std::string_view text, const EvalOptions& opts) {
  std::vector<std::string> names;
  std::vector<std::optional<MultiPoly>> comps;
  bool have_vars = false;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    int col = 1;
    line = trim(line, col);
    if (line.empty()) {
      if (eol == text.size()) break;
      continue;
    }
    if (!have_vars) {
      if (line.substr(0, 4) != "vars" ||
          (line.size() > 4 && !std::isspace(static_cast<unsigned char>(line[4])))) {
        throw ParseError("expected 'vars' declaration", line_no, col);
      }
      std::string_view rest = line.substr(4);
      int c = col + 4;
      while (true) {
        std::size_t comma = rest.find(',');
        std::string_view item = rest.substr(0, comma);
        int item_col = c;
        std::string_view id = trim(item, item_col);
        if (!valid_identifier(id) || id == "exp") {
          throw ParseError("invalid variable name '" + std::string(id) + "'", line_no, item_col);
        }
        if (std::find(names.begin(), names.end(), id) != names.end()) {
          throw ParseError("duplicate variable '" + std::string(id) + "'", line_no, item_col);
        }
        names.emplace_back(id);
        if (comma == std::string_view::npos) break;
        c += static_cast<int>(comma) + 1;
        rest = rest.substr(comma + 1);
      }
      if (names.size() + 1 > kMaxArity) {
        throw ParseError("at most " + std::to_string(kMaxArity - 1) + " variables are supported",
                         line_no, col);
      }
      comps.assign(names.size(), std::nullopt);
      have_vars = true;
      continue;
    }
    std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected 'd<var> = <expr>'", line_no, col);
    int lhs_col = col;
    std::string_view lhs = trim(line.substr(0, eq), lhs_col);
    if (lhs.size() < 2 || lhs[0] != 'd') {
      throw ParseError("left-hand side must be d<var>", line_no, lhs_col);
    }
    auto it = std::find(names.begin(), names.end(), lhs.substr(1));
    if (it == names.end()) {
      throw ParseError("unknown variable '" + std::string(lhs.substr(1)) + "'", line_no, lhs_col + 1);
    }
    std::size_t idx = static_cast<std::size_t>(it - names.begin());
    if (comps[idx]) throw ParseError("duplicate equation for '" + *it + "'", line_no, lhs_col);
    std::string_view rhs = line.substr(eq + 1);
    int rhs_col = col + static_cast<int>(eq) + 1;
    ExprPtr e = parse_expression(rhs, line_no, rhs_col);
    comps[idx] = eval_polynomial(*e, names, opts);
    if (eol == text.size()) break;
  }
  if (!have_vars) throw ParseError("missing 'vars' declaration", std::max(line_no, 1), 1);
  std::vector<MultiPoly> out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (!comps[i]) throw ParseError("missing equation for '" + names[i] + "'", line_no, 1);
    out.push_back(std::move(*comps[i]));
  }
  return PolyVectorField(std::move(names), std::move(out));
}

std::string print_system(const PolyVectorField& X) {
  std::string out = "vars ";
  for (std::size_t i = 0; i < X.arity(); ++i) {
    if (i) out += ", ";
    out += X.names()[i];
  }
  out += "\n";
  for (std::size_t i = 0; i < X.arity(); ++i) {
    out += "d" + X.names()[i] + " = " + to_string(X[i], X.names()) + "\n";
  }
  return out;
}

PolyVectorField reorder(const PolyVectorField& X, std::span<const std::size_t> order) {
  const std::size_t n = X.arity();
  if (order.size() != n) throw InvalidArgument("variable order has the wrong length");
  std::vector<std::size_t> perm(n, n);  // old index -> new index
  for (std::size_t k = 0; k < n; ++k) {
    if (order[k] >= n || perm[order[k]] != n) throw InvalidArgument("not a permutation");
    perm[order[k]] = k;
  }
  std::vector<std::string> names(n);
  std::vector<MultiPoly> comps(n);
  for (std::size_t k = 0; k < n; ++k) {
    names[k] = X.names()[order[k]];
    comps[k] = permute_variables(X[order[k]], perm);
  }
  return PolyVectorField(std::move(names), std::move(comps));
}

PolyVectorField divide_components(const PolyVectorField& X, const MultiPoly& g) {
  std::vector<MultiPoly> comps;
  for (const auto& p : X.components()) comps.push_back(divide_exact(p, g));
  return PolyVectorField(X.names(), std::move(comps));
}

MultiPoly divergence(const PolyVectorField& X) {
  MultiPoly d(X.arity());
  for (std::size_t i = 0; i < X.arity(); ++i) d += derivative(X[i], i);
  return d;
}

MultiPoly lie_derivative(const PolyVectorField& X, const MultiPoly& f) {
  if (f.arity() != X.arity()) throw ArityMismatch("function arity differs from the system");
  MultiPoly r(X.arity());
  for (std::size_t i = 0; i < X.arity(); ++i) {
    if (f.depends_on(i)) r += X[i] * derivative(f, i);
  }
  return r;
}

RatFunc lie_derivative(const PolyVectorField& X, const RatFunc& f) {
  if (f.arity() != X.arity()) throw ArityMismatch("function arity differs from the system");
  // (X(n) d - n X(d)) / d^2, left to RatFunc to reduce.
  MultiPoly ln = lie_derivative(X, f.num());
  MultiPoly ld = lie_derivative(X, f.den());
  return RatFunc(ln * f.den() - f.num() * ld, f.den() * f.den());
}

RatFunc lie_derivative_log(const PolyVectorField& X, const OneForm& w) {
  if (w.arity() != X.arity()) throw ArityMismatch("1-form arity differs from the system");
  RatFunc r(X.arity());
  for (std::size_t i = 0; i < X.arity(); ++i) {
    if (!w[i].is_zero()) r += w[i] * RatFunc(X[i]);
  }
  return r;
}

}  // namespace lvk
