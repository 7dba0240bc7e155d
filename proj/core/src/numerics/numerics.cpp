#include "weylham/numerics.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <json.hpp>
#include <sstream>

namespace weylham {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 64> buf;
  auto r = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), r.ptr);
}

std::vector<CompiledExpr::Term> CompiledExpr::compile(const Polynomial& p) {
  std::vector<Term> out;
  for (auto& t : p.terms()) {
    Term c{t.c.get_d(), {}};
    for (std::size_t i = 0; i < kMaxSymbols; ++i)
      if (t.m[i]) c.pw.emplace_back(i, t.m[i]);
    out.push_back(std::move(c));
  }
  return out;
}

CompiledExpr::CompiledExpr(const RationalFunction& f)
    : num_(compile(f.num())), den_(compile(f.den())), has_den_(!f.den().is_constant() || f.den().constant_value() != 1) {}

double CompiledExpr::eval(const std::vector<Term>& ts, const std::vector<double>& s) {
  double acc = 0;
  for (auto& t : ts) {
    double v = t.c;
    for (auto& [i, e] : t.pw) {
      double x = s[i];
      switch (e) {
        case 1: v *= x; break;
        case 2: v *= x * x; break;
        case 3: v *= x * x * x; break;
        default: v *= std::pow(x, static_cast<int>(e));
      }
    }
    acc += v;
  }
  return acc;
}

double CompiledExpr::operator()(const std::vector<double>& slots) const {
  double n = eval(num_, slots);
  return has_den_ ? n / eval(den_, slots) : n;
}

CompiledSystem::CompiledSystem(const TotalSystem& sys, const Values& params) : sys_(sys) {
  const auto& al = *sys_.alphabet();
  base_.assign(al.size(), 0.0);
  for (auto& p : sys_.parameters()) {
    auto it = params.find(p);
    if (it != params.end()) {
      base_[al.index(p)] = it->second;
    } else if (!sys_.constraints().count(p)) {
      throw std::invalid_argument("no value for parameter '" + p + "'");
    }
  }
  for (auto& [p, v] : params)
    if (!al.contains(p)) throw std::invalid_argument("unknown parameter '" + p + "'");
  // constrained parameters follow from the free ones
  for (auto& [p, rhs] : sys_.constraints()) {
    if (params.count(p)) continue;
    base_[al.index(p)] = CompiledExpr(RationalFunction(rhs))(base_);
  }
  for (auto& v : sys_.variables()) var_slot_.push_back(al.index(v));
  for (auto& t : sys_.times()) {
    auto& out = flows_[t];
    for (auto& f : sys_.flow(t)) out.emplace_back(f);
  }
}

void CompiledSystem::fill(const std::vector<double>& state, const Values& times, std::vector<double>& slots) const {
  slots = base_;
  for (std::size_t i = 0; i < state.size(); ++i) slots[var_slot_[i]] = state[i];
  const auto& al = *sys_.alphabet();
  for (auto& [t, v] : times)
    if (al.contains(t)) slots[al.index(t)] = v;
}

void CompiledSystem::rhs(const std::string& time, const std::vector<double>& state, const Values& times,
                         std::vector<double>& out) const {
  auto it = flows_.find(time);
  if (it == flows_.end()) throw std::out_of_range("unknown time symbol '" + time + "'");
  thread_local std::vector<double> slots;
  fill(state, times, slots);
  out.resize(state.size());
  for (std::size_t i = 0; i < state.size(); ++i) out[i] = it->second[i](slots);
}

double CompiledSystem::evaluate(const CompiledExpr& e, const std::vector<double>& state, const Values& times) const {
  std::vector<double> slots;
  fill(state, times, slots);
  return e(slots);
}

CompiledExpr CompiledSystem::compile(const RationalFunction& f) const { return CompiledExpr(f.rebased(sys_.alphabet())); }

namespace {

// Dormand-Prince tableau
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200, e6 = 22.0 / 525,
                 e7 = -1.0 / 40;

bool finite(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

Trajectory integrate_flow(const CompiledSystem& sys, const std::string& time, const std::vector<double>& init,
                          double t0, double t1, const IntegrateOptions& opt) {
  std::size_t n = sys.dimension();
  if (init.size() != n)
    throw std::invalid_argument("initial state has " + std::to_string(init.size()) + " components, expected " +
                                std::to_string(n));
  if (!(opt.tol > 0)) throw std::invalid_argument("tolerance must be positive");
  Trajectory tr;
  tr.time = time;
  tr.variables = sys.system().variables();
  tr.fixed_times = opt.fixed_times;
  tr.tol = opt.tol;
  Values times = opt.fixed_times;
  auto f = [&](double t, const std::vector<double>& y, std::vector<double>& out) {
    times[time] = t;
    sys.rhs(time, y, times, out);
  };
  double dir = t1 >= t0 ? 1.0 : -1.0;
  std::size_t next_out = 0;
  const auto& outs = opt.output;
  for (std::size_t i = 1; i < outs.size(); ++i)
    if ((outs[i] - outs[i - 1]) * dir <= 0) throw std::invalid_argument("output times must be monotone");
  auto record = [&](double t, const std::vector<double>& y) {
    tr.grid.push_back(t);
    tr.states.push_back(y);
  };
  std::vector<double> y = init;
  if (outs.empty() || outs.front() == t0) {
    record(t0, y);
    if (!outs.empty()) next_out = 1;
  }
  if (t0 == t1) return tr;

  std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), yt(n), yn(n);
  f(t0, y, k1);
  if (!finite(k1)) throw IntegrationError("flow is not finite at the initial state", tr);
  // initial step from the scale of the derivative
  double d0 = 0, d1 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double sc = opt.tol + opt.tol * std::abs(y[i]);
    d0 = std::max(d0, std::abs(y[i]) / sc);
    d1 = std::max(d1, std::abs(k1[i]) / sc);
  }
  double h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
  h = std::min(h, std::abs(t1 - t0));
  double t = t0, err_prev = 1e-4;
  const double alpha = 0.7 / 5, beta = 0.4 / 5, safety = 0.9;
  std::size_t steps = 0;
  while ((t1 - t) * dir > 0) {
    if (++steps > opt.max_steps) throw IntegrationError("step limit reached", tr);
    double target = t1;
    if (next_out < outs.size()) target = outs[next_out];
    bool clipped = false;
    if ((t + dir * h - target) * dir >= 0) {
      h = std::abs(target - t);
      clipped = true;
    }
    double hs = dir * h;
    auto stage = [&](std::vector<double>& out, double tc, auto&& comb) {
      for (std::size_t i = 0; i < n; ++i) yt[i] = y[i] + hs * comb(i);
      f(t + tc * hs, yt, out);
    };
    stage(k2, c2, [&](std::size_t i) { return a21 * k1[i]; });
    stage(k3, c3, [&](std::size_t i) { return a31 * k1[i] + a32 * k2[i]; });
    stage(k4, c4, [&](std::size_t i) { return a41 * k1[i] + a42 * k2[i] + a43 * k3[i]; });
    stage(k5, c5, [&](std::size_t i) { return a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]; });
    stage(k6, 1.0,
          [&](std::size_t i) { return a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]; });
    for (std::size_t i = 0; i < n; ++i)
      yn[i] = y[i] + hs * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    f(t + hs, yn, k7);
    double err = 0;
    bool ok = finite(yn) && finite(k7);
    if (ok) {
      for (std::size_t i = 0; i < n; ++i) {
        double e = hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
        double sc = opt.tol + opt.tol * std::max(std::abs(y[i]), std::abs(yn[i]));
        err += (e / sc) * (e / sc);
      }
      err = std::sqrt(err / static_cast<double>(n));
    }
    if (ok && err <= 1.0) {
      t = clipped ? target : t + hs;
      y = yn;
      k1 = k7;
      if (outs.empty()) {
        record(t, y);
      } else if (clipped && next_out < outs.size()) {
        record(t, y);
        ++next_out;
      }
      double fac = err == 0 ? 5.0 : safety * std::pow(err, -alpha) * std::pow(err_prev, beta);
      fac = std::clamp(fac, 0.2, 5.0);
      err_prev = std::max(err, 1e-4);
      // a clipped step says nothing about the natural step size
      if (!clipped) h *= fac;
      else h = std::max(h, h * fac);
    } else {
      double fac = ok ? std::max(0.2, safety * std::pow(err, -alpha)) : 0.25;
      h *= fac;
      if (h < 1e-14 * std::max(1.0, std::abs(t)))
        throw IntegrationError("step size underflow at " + time + " = " + format_double(t) + " (pole?)", tr);
    }
  }
  return tr;
}

DriftReport drift(const CompiledSystem& sys, const Trajectory& tr, const std::string& name,
                  const RationalFunction& quantity) {
  auto e = sys.compile(quantity);
  DriftReport r;
  r.quantity = name;
  Values times = tr.fixed_times;
  for (std::size_t i = 0; i < tr.grid.size(); ++i) {
    times[tr.time] = tr.grid[i];
    double v = sys.evaluate(e, tr.states[i], times);
    if (i == 0) r.initial = v;
    double d = std::abs(v - r.initial);
    r.max_abs = std::max(r.max_abs, d);
  }
  r.max_rel = r.max_abs / std::max(std::abs(r.initial), 1e-300);
  if (r.initial == 0) r.max_rel = r.max_abs;
  return r;
}

double path_independence(const CompiledSystem& sys, const std::string& ta, const std::string& tb,
                         const std::vector<double>& init, double la, double lb, double tol) {
  auto leg = [&](const std::vector<double>& y, const std::string& tm, double len, const Values& fixed) {
    IntegrateOptions o;
    o.tol = tol;
    o.output = {len};
    o.fixed_times = fixed;
    if (len == 0) return y;
    auto tr = integrate_flow(sys, tm, y, 0.0, len, o);
    return tr.states.back();
  };
  auto y1 = leg(leg(init, ta, la, {{tb, 0.0}}), tb, lb, {{ta, la}});
  auto y2 = leg(leg(init, tb, lb, {{ta, 0.0}}), ta, la, {{tb, lb}});
  double d = 0;
  for (std::size_t i = 0; i < y1.size(); ++i) d = std::max(d, std::abs(y1[i] - y2[i]));
  return d;
}

double residual_on_grid(const CompiledSystem& sys, const Solution& sol, const SolutionDerivative& dsol,
                        const std::vector<Values>& grid) {
  double worst = 0;
  std::vector<double> f;
  for (auto& pt : grid) {
    auto y = sol(pt);
    for (auto& tm : sys.system().times()) {
      sys.rhs(tm, y, pt, f);
      auto d = dsol(tm, pt);
      for (std::size_t i = 0; i < f.size(); ++i) worst = std::max(worst, std::abs(d[i] - f[i]));
    }
  }
  return worst;
}

std::vector<Values> product_grid(const std::vector<std::string>& times, double a, double b, std::size_t n) {
  if (n < 2) throw std::invalid_argument("grid needs at least two points per axis");
  std::vector<Values> out{Values{}};
  for (auto& t : times) {
    std::vector<Values> next;
    for (auto& base : out)
      for (std::size_t i = 0; i < n; ++i) {
        Values v = base;
        v[t] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
        next.push_back(std::move(v));
      }
    out = std::move(next);
  }
  return out;
}

std::vector<std::vector<double>> finite_difference_jets(const std::vector<double>& u, double h, unsigned order) {
  if (order > 3) throw std::invalid_argument("finite differences implemented up to order 3");
  std::vector<std::vector<double>> out;
  if (u.size() < 7) return out;
  for (std::size_t i = 3; i + 3 < u.size(); ++i) {
    std::vector<double> j{u[i]};
    if (order >= 1) j.push_back((-u[i + 2] + 8 * u[i + 1] - 8 * u[i - 1] + u[i - 2]) / (12 * h));
    if (order >= 2)
      j.push_back((-u[i + 2] + 16 * u[i + 1] - 30 * u[i] + 16 * u[i - 1] - u[i - 2]) / (12 * h * h));
    if (order >= 3)
      j.push_back((-u[i + 3] + 8 * u[i + 2] - 13 * u[i + 1] + 13 * u[i - 1] - 8 * u[i - 2] + u[i - 3]) /
                  (8 * h * h * h));
    out.push_back(std::move(j));
  }
  return out;
}

std::string Trajectory::to_csv() const {
  std::ostringstream os;
  os << time;
  for (auto& v : variables) os << ',' << v;
  os << '\n';
  for (std::size_t i = 0; i < grid.size(); ++i) {
    os << format_double(grid[i]);
    for (double x : states[i]) os << ',' << format_double(x);
    os << '\n';
  }
  return os.str();
}

std::string Trajectory::to_json() const {
  nlohmann::ordered_json j;
  j["system"] = system_id;
  j["time"] = time;
  j["variables"] = variables;
  j["params"] = params;
  j["fixed_times"] = fixed_times;
  j["tol"] = tol;
  auto rows = nlohmann::json::array();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    auto r = nlohmann::json::array({grid[i]});
    for (double x : states[i]) r.push_back(x);
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  return j.dump(2);
}

}  // namespace weylham
