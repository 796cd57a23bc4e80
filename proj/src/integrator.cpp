#include "lvk/integrator.hpp"

#include <algorithm>
#include <numeric>

#include "lvk/errors.hpp"

namespace lvk {

bool IntegrationResult::has_algebraic_groups() const {
  return std::any_of(log_groups.begin(), log_groups.end(),
                     [](const ScaledGroup& g) { return !g.group.is_rational(); });
}

ClosednessCheck is_closed(const OneForm& w) {
  ClosednessCheck c;
  c.residual = RatFunc(w.arity());
  for (std::size_t i = 0; i < w.arity(); ++i) {
    for (std::size_t j = i + 1; j < w.arity(); ++j) {
      RatFunc r = derivative(w[j], i) - derivative(w[i], j);
      if (!r.is_zero()) {
        c.closed = false;
        c.i = i;
        c.j = j;
        c.residual = std::move(r);
        return c;
      }
    }
  }
  return c;
}

namespace {

int ratfunc_degree(const RatFunc& f) {
  return std::max(f.num().total_degree(), f.den().total_degree());
}

void check_degree(const RatFunc& f, int limit) {
  int d = ratfunc_degree(f);
  if (d > limit) {
    throw DegreeLimitExceeded("intermediate degree " + std::to_string(d) + " exceeds limit " +
                              std::to_string(limit));
  }
}

// Potential of u in `var` alone: rational part plus logarithmic groups.
IntegrationResult integrate_in(const RatFunc& u, std::size_t var) {
  IntegrationResult r;
  r.rat_part = RatFunc(u.arity());
  if (u.is_zero()) return r;
  auto [num, den] = split_ratfunc(u, var);
  HermiteResult h = hermite_reduce(num, den);
  r.rat_part = h.rat_part;
  if (!h.reduced_num.is_zero()) {
    for (auto& g : rothstein_trager(h.reduced_num, h.reduced_den)) {
      r.log_groups.push_back(ScaledGroup{std::move(g), Rational(1)});
    }
  }
  return r;
}

}  // namespace

IntegrationResult integrate_closed(const OneForm& w, const IntegrateOptions& opts) {
  const std::size_t n = w.arity();
  std::vector<std::size_t> order = opts.order;
  if (order.empty()) {
    order.resize(n);
    std::iota(order.begin(), order.end(), 0);
  }
  {
    std::vector<std::size_t> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t k = 0; k < sorted.size(); ++k) {
      if (sorted.size() != n || sorted[k] != k) {
        throw InvalidArgument("integration order is not a permutation of the variables");
      }
    }
  }
  for (const auto& u : w.components) check_degree(u, opts.max_degree);
  ClosednessCheck closed = is_closed(w);
  if (!closed.closed) {
    throw NotClosedError("1-form is not closed", closed.i, closed.j);
  }

  IntegrationResult total;
  total.rat_part = RatFunc(n);
  OneForm rest = w;
  for (std::size_t step = 0; step < n; ++step) {
    const std::size_t v = order[step];
    IntegrationResult part = integrate_in(rest[v], v);
    check_degree(part.rat_part, opts.max_degree);
    OneForm d = differentiate(part);
    if (d[v] != rest[v]) throw Error("internal error: partial potential does not reproduce its component");
    rest = rest - d;
    for (std::size_t k = 0; k < n; ++k) {
      if (rest[k].depends_on(v)) {
        throw Error("internal error: remainder form still depends on an integrated variable");
      }
      check_degree(rest[k], opts.max_degree);
    }
    total.rat_part += part.rat_part;
    for (auto& g : part.log_groups) {
      auto it = std::find_if(total.log_groups.begin(), total.log_groups.end(),
                             [&](const ScaledGroup& s) { return s.group == g.group; });
      if (it != total.log_groups.end()) {
        it->scale += g.scale;
      } else {
        total.log_groups.push_back(std::move(g));
      }
    }
  }
  std::erase_if(total.log_groups, [](const ScaledGroup& g) { return is_zero(g.scale); });
  for (const auto& u : rest.components) {
    if (!u.is_zero()) throw Error("internal error: nonzero remainder after integration");
  }
  return total;
}

OneForm differentiate(const IntegrationResult& r) {
  const std::size_t n = r.arity();
  OneForm w;
  for (std::size_t i = 0; i < n; ++i) {
    RatFunc c = derivative(r.rat_part, i);
    for (const auto& g : r.log_groups) c += group_log_derivative(g.group, i) * g.scale;
    w.components.push_back(std::move(c));
  }
  return w;
}

DarbouxFunction to_darboux(const IntegrationResult& r) {
  std::vector<DarbouxFactor> factors;
  std::vector<ScaledGroup> groups;
  for (const auto& g : r.log_groups) {
    if (g.group.is_rational()) {
      factors.push_back(DarbouxFactor{g.group.rational_argument(), g.group.residue() * g.scale});
    } else {
      groups.push_back(g);
    }
  }
  return DarbouxFunction(r.rat_part, std::move(factors), std::move(groups));
}

std::string to_string(const IntegrationResult& r, std::span<const std::string> names) {
  std::vector<std::string> terms;
  for (const auto& g : r.log_groups) {
    if (g.group.is_rational()) {
      Rational c = g.group.residue() * g.scale;
      std::string log = "log(" + to_string(g.group.rational_argument(), names) + ")";
      terms.push_back(c == 1 ? log : c == -1 ? "-" + log : to_string(c) + "*" + log);
    } else {
      std::string body = root_sum_string(g.group, names);
      terms.push_back(g.scale == 1 ? body
                      : g.scale == -1 ? "-" + body
                                      : to_string(g.scale) + "*" + body);
    }
  }
  if (!r.rat_part.is_zero()) terms.push_back(to_string(r.rat_part, names));
  if (terms.empty()) return "0";
  std::string out = terms.front();
  for (std::size_t i = 1; i < terms.size(); ++i) {
    if (terms[i].front() == '-') {
      out += " - " + terms[i].substr(1);
    } else {
      out += " + " + terms[i];
    }
  }
  return out;
}

}  // namespace lvk
