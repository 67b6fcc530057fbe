#include "stlopt/harness/property_suite.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <sstream>

#include "stlopt/error.hpp"
#include "stlopt/harness/generators.hpp"
#include "stlopt/metrics/aggregators.hpp"
#include "stlopt/metrics/robustness.hpp"
#include "stlopt/stl/parser.hpp"
#include "stlopt/stl/semantics.hpp"

namespace stlopt::harness {

using metrics::MetricConfig;
using metrics::MetricKind;
using Vec = std::vector<double>;

const char* to_string(PropertyStatus status) {
  switch (status) {
    case PropertyStatus::Pass: return "PASS";
    case PropertyStatus::Fail: return "FAIL";
    case PropertyStatus::ExpectedFail: return "XFAIL";
  }
  return "?";
}

bool PropertyReport::ok() const {
  return std::none_of(rows.begin(), rows.end(), [](const PropertyRow& r) { return r.status == PropertyStatus::Fail; });
}

std::string PropertyReport::to_text() const {
  std::ostringstream out;
  out << "property suite: samples=" << samples << " seed=" << seed << "\n";
  for (const auto& r : rows) {
    out << to_string(r.status) << "  " << r.property << " [" << r.subject << "] cases=" << r.cases;
    if (!r.witness.empty()) out << "  witness: " << r.witness;
    out << "\n";
  }
  std::size_t failed = 0;
  for (const auto& r : rows) failed += r.status == PropertyStatus::Fail ? 1 : 0;
  out << (failed == 0 ? "all properties hold" : std::to_string(failed) + " properties failed") << "\n";
  return out.str();
}

namespace {

std::string fmt(double v) { return stl::format_number(v); }

std::string fmt(const Vec& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fmt(v[i]);
  return s + "]";
}

std::string fmt(const Instance& inst) {
  std::string s = stl::format_formula(inst.formula) + " on";
  const auto& x = inst.trace;
  for (std::size_t c = 0; c < x.width(); ++c) {
    Vec col;
    for (std::size_t k = 0; k < x.size(); ++k) col.push_back(x.at(k, c));
    s += " " + x.channels()[c] + "=" + fmt(col);
  }
  return s;
}

// Positive checks record the first counterexample; negative controls
// record the first instance where the property breaks.
class Row {
 public:
  Row(std::string property, std::string subject, bool negative_control = false)
      : property_(std::move(property)), subject_(std::move(subject)), negative_(negative_control) {}

  void check(bool holds, const std::function<std::string()>& describe) {
    ++cases_;
    if (!holds && witness_.empty()) witness_ = describe();
  }

  PropertyRow finish() const {
    PropertyRow row{property_, subject_, PropertyStatus::Pass, cases_, witness_};
    if (negative_) {
      row.status = witness_.empty() ? PropertyStatus::Fail : PropertyStatus::ExpectedFail;
      if (witness_.empty()) row.witness = "no counterexample found for a negative control";
    } else if (!witness_.empty()) {
      row.status = PropertyStatus::Fail;
    }
    return row;
  }

 private:
  std::string property_;
  std::string subject_;
  bool negative_;
  std::size_t cases_ = 0;
  std::string witness_;
};

Vec random_vector(optim::Rng& rng, std::size_t m, double lo, double hi) {
  Vec v(m);
  for (double& x : v) x = rng.uniform(lo, hi);
  return v;
}

double central_difference(const std::function<double(const Vec&)>& f, Vec v, std::size_t i, double h) {
  const double x = v[i];
  v[i] = x + h;
  const double up = f(v);
  v[i] = x - h;
  const double down = f(v);
  return (up - down) / (2.0 * h);
}

constexpr double kSignTolerance = 1e-9;

void soundness(std::vector<PropertyRow>& rows, optim::Rng& rng, std::size_t samples) {
  FormulaShape general;
  FormulaShape flat;
  flat.nested_temporal = false;
  flat.until = false;

  const auto config = [](MetricKind kind) {
    MetricConfig cfg;
    cfg.kind = kind;
    return cfg;
  };
  MetricConfig agm = config(MetricKind::Agm);
  agm.agm_scales = {{"x", 1.0}, {"y", 1.0}};
  const MetricConfig smooth = config(MetricKind::Smooth);
  const MetricConfig lse = config(MetricKind::Lse);
  const MetricConfig nu = config(MetricKind::New);

  Row space_row("soundness", "space");
  Row agm_row("soundness", "agm");
  Row avg_row("soundness", "avg");
  Row new_row("soundness", "new");
  Row smooth_sound("soundness (one-sided)", "smooth");
  Row smooth_under("under-approximation", "smooth");
  Row lse_row("soundness", "lse", true);
  Row determinism("determinism", "all metrics");

  auto biconditional = [](double value, bool oracle) {
    return std::abs(value) <= kSignTolerance || (value > 0.0) == oracle;
  };

  for (std::size_t i = 0; i < samples; ++i) {
    const Instance inst = random_instance(rng, general);
    const bool oracle = stl::satisfies(inst.formula, inst.trace, 0.0);
    const auto describe = [&inst, oracle](double v) {
      return [&inst, oracle, v] { return fmt(inst) + " value=" + fmt(v) + " oracle=" + (oracle ? "true" : "false"); };
    };

    const double space = metrics::space_robustness(inst.formula, inst.trace, 0.0);
    space_row.check(biconditional(space, oracle), describe(space));
    const double a = metrics::evaluate(agm, inst.formula, inst.trace, 0.0).value;
    agm_row.check(biconditional(a, oracle), describe(a));
    const double n = metrics::evaluate(nu, inst.formula, inst.trace, 0.0).value;
    new_row.check(biconditional(n, oracle), describe(n));
    const double s = metrics::evaluate(smooth, inst.formula, inst.trace, 0.0).value;
    smooth_sound.check(s <= kSignTolerance || oracle, describe(s));
    smooth_under.check(s <= space + kSignTolerance,
                       [&] { return fmt(inst) + " smooth=" + fmt(s) + " space=" + fmt(space); });
    const double l = metrics::evaluate(lse, inst.formula, inst.trace, 0.0).value;
    lse_row.check(biconditional(l, oracle), describe(l));

    bool same = true;
    for (const MetricConfig* cfg : {static_cast<const MetricConfig*>(&agm), &smooth, &lse, &nu}) {
      same = same && metrics::evaluate(*cfg, inst.formula, inst.trace, 0.0).value == metrics::evaluate(*cfg, inst.formula, inst.trace, 0.0).value;
    }
    same = same && space == metrics::space_robustness(inst.formula, inst.trace, 0.0);
    determinism.check(same, [&] { return fmt(inst); });

    const Instance plain = random_instance(rng, flat);
    const bool plain_oracle = stl::satisfies(plain.formula, plain.trace, 0.0);
    const double v = metrics::avg_robustness(plain.formula, plain.trace, 0.0);
    avg_row.check(biconditional(v, plain_oracle), [&] {
      return fmt(plain) + " value=" + fmt(v) + " oracle=" + (plain_oracle ? "true" : "false");
    });
    determinism.check(v == metrics::avg_robustness(plain.formula, plain.trace, 0.0), [&] { return fmt(plain); });
  }
  for (const Row* r : {&space_row, &agm_row, &avg_row, &new_row, &smooth_sound, &smooth_under, &lse_row, &determinism}) {
    rows.push_back(r->finish());
  }
}

void lse_bound(std::vector<PropertyRow>& rows, optim::Rng& rng) {
  Row row("lse bound |lse - max| <= ln(m)/k", "softmax_lse, softmin_lse");
  for (int i = 0; i < 1000; ++i) {
    const std::size_t m = 1 + rng.below(10);
    const Vec v = random_vector(rng, m, -10.0, 10.0);
    const double max = *std::max_element(v.begin(), v.end());
    const double min = *std::min_element(v.begin(), v.end());
    for (double k : {1.0, 10.0, 100.0}) {
      const double bound = std::log(static_cast<double>(m)) / k + 1e-12;
      const double hi = metrics::softmax_lse(v, k);
      const double lo = metrics::softmin_lse(v, k);
      row.check(std::abs(hi - max) <= bound && std::abs(lo - min) <= bound,
                [&] { return fmt(v) + " k=" + fmt(k) + " softmax=" + fmt(hi) + " softmin=" + fmt(lo); });
    }
  }
  rows.push_back(row.finish());
}

// r_min in [-10,-0.1] or [0.1,10]; ratios v/r_min pairwise at least 0.05 apart.
Vec separated_vector(optim::Rng& rng, bool negative) {
  const std::size_t m = 2 + rng.below(8);
  const double r_min = (negative ? -1.0 : 1.0) * rng.uniform(0.1, 10.0);
  Vec ratios{1.0};
  while (ratios.size() < m) {
    const double q = negative ? rng.uniform(-3.0, 0.95) : rng.uniform(1.05, 5.0);
    const bool apart = std::all_of(ratios.begin(), ratios.end(), [q](double r) { return std::abs(r - q) >= 0.05; });
    if (apart) ratios.push_back(q);
  }
  Vec v;
  for (double q : ratios) v.push_back(q * r_min);
  return v;
}

void limits(std::vector<PropertyRow>& rows, optim::Rng& rng, std::size_t samples) {
  Row nu_row("large-scale limit nu=200 within 1e-3 of min", "new_and");
  Row k_row("large-scale limit k=1000 within ln(m)/1000 of min", "softmin_lse");
  for (std::size_t i = 0; i < samples; ++i) {
    const Vec v = separated_vector(rng, i % 2 == 0);
    const double min = *std::min_element(v.begin(), v.end());
    const double n = metrics::new_and(v, 200.0);
    nu_row.check(std::abs(n - min) <= 1e-3, [&] { return fmt(v) + " new_and=" + fmt(n); });
    const double s = metrics::softmin_lse(v, 1000.0);
    k_row.check(std::abs(s - min) <= std::log(static_cast<double>(v.size())) / 1000.0 + 1e-12,
                [&] { return fmt(v) + " softmin=" + fmt(s); });
  }
  rows.push_back(nu_row.finish());
  rows.push_back(k_row.finish());
}

void scale_invariance(std::vector<PropertyRow>& rows, optim::Rng& rng, std::size_t samples) {
  Row min_row("scale invariance", "min");
  Row new_row("scale invariance", "new_and");
  Row agm_row("scale invariance", "agm_and", true);
  const auto close = [](double a, double b) { return std::abs(a - b) <= 1e-7 * std::max(std::abs(b), 1e-300) || a == b; };
  for (std::size_t i = 0; i < samples; ++i) {
    const Vec v = random_vector(rng, 2 + rng.below(5), -10.0, 10.0);
    // Inputs for agm stay inside [-1, 1] after scaling by 10.
    const Vec small = random_vector(rng, 2 + rng.below(5), 0.001, 0.1);
    for (double alpha : {0.5, 2.0, 10.0}) {
      Vec scaled = v;
      for (double& x : scaled) x *= alpha;
      const double m0 = *std::min_element(v.begin(), v.end());
      const double m1 = *std::min_element(scaled.begin(), scaled.end());
      min_row.check(m1 == alpha * m0, [&] { return fmt(v) + " alpha=" + fmt(alpha); });
      const double n0 = metrics::new_and(v, 2.0);
      const double n1 = metrics::new_and(scaled, 2.0);
      new_row.check(close(n1, alpha * n0),
                    [&] { return fmt(v) + " alpha=" + fmt(alpha) + " lhs=" + fmt(n1) + " rhs=" + fmt(alpha * n0); });
      Vec small_scaled = small;
      for (double& x : small_scaled) x *= alpha;
      const double a0 = metrics::agm_and(small);
      const double a1 = metrics::agm_and(small_scaled);
      agm_row.check(close(a1, alpha * a0),
                    [&] { return fmt(small) + " alpha=" + fmt(alpha) + " lhs=" + fmt(a1) + " rhs=" + fmt(alpha * a0); });
    }
  }
  rows.push_back(min_row.finish());
  rows.push_back(new_row.finish());
  rows.push_back(agm_row.finish());
}

// Distinct entries of one sign; new_and is only shadow-lifting when the
// spread around the minimum is moderate, so points stay within 25%.
Vec near_diagonal(optim::Rng& rng, bool negative, double lo, double hi) {
  // Entries reach 1.25 * hi.
  const std::size_t m = 2 + rng.below(4);
  const double base = rng.uniform(lo, hi);
  Vec v;
  while (v.size() < m) {
    const double x = base * (1.0 + rng.uniform(0.0, 0.25));
    const bool distinct = std::all_of(v.begin(), v.end(), [x, base](double y) { return std::abs(x - y) > 1e-3 * base; });
    if (distinct) v.push_back(x);
  }
  if (negative) {
    for (double& x : v) x = -x;
  }
  return v;
}

void shadow_lifting(std::vector<PropertyRow>& rows, optim::Rng& rng) {
  const double h = 1e-4;
  struct Subject {
    const char* name;
    std::function<double(const Vec&)> f;
    double lo;
    double hi;
    bool negative_control;
  };
  const std::vector<Subject> subjects{
      {"agm_and", [](const Vec& v) { return metrics::agm_and(v); }, 0.01, 0.75, false},
      {"new_and", [](const Vec& v) { return metrics::new_and(v, 2.0); }, 0.1, 10.0, false},
      {"min", [](const Vec& v) { return *std::min_element(v.begin(), v.end()); }, 0.1, 10.0, true},
  };
  for (const auto& s : subjects) {
    Row row("shadow-lifting", s.name, s.negative_control);
    for (int regime = 0; regime < 2; ++regime) {
      for (int i = 0; i < 100; ++i) {
        const Vec v = near_diagonal(rng, regime == 0, s.lo, s.hi);
        bool lifted = true;
        std::size_t flat = 0;
        for (std::size_t j = 0; j < v.size(); ++j) {
          if (!(central_difference(s.f, v, j, h) > 0.0)) {
            lifted = false;
            flat = j;
            break;
          }
        }
        row.check(lifted, [&] { return fmt(v) + " coordinate " + std::to_string(flat); });
      }
    }
    rows.push_back(row.finish());
  }
}

void smoothness(std::vector<PropertyRow>& rows, optim::Rng& rng, std::size_t samples) {
  struct Subject {
    const char* name;
    std::function<double(const Vec&)> f;
  };
  const std::vector<Subject> subjects{
      {"softmax_lse", [](const Vec& v) { return metrics::softmax_lse(v, 10.0); }},
      {"smooth_min", [](const Vec& v) { return metrics::smooth_min(v, 10.0); }},
      {"smooth_max", [](const Vec& v) { return metrics::smooth_max(v, 10.0); }},
      {"new_and", [](const Vec& v) { return metrics::new_and(v, 2.0); }},
  };
  for (const auto& s : subjects) {
    Row row("finite-difference smoothness", s.name);
    for (std::size_t i = 0; i < samples; ++i) {
      Vec v = random_vector(rng, 2 + rng.below(4), -1.0, 1.0);
      if (i % 2 == 1) {
        const std::size_t a = rng.below(v.size());
        const std::size_t b = (a + 1 + rng.below(v.size() - 1)) % v.size();
        v[b] = v[a];
      }
      for (std::size_t j = 0; j < v.size(); ++j) {
        const double g4 = central_difference(s.f, v, j, 1e-4);
        const double g5 = central_difference(s.f, v, j, 1e-5);
        const bool agree = std::abs(g4 - g5) <= 1e-2 * std::max(std::abs(g4), std::abs(g5)) + 1e-6;
        row.check(agree, [&] {
          return fmt(v) + " coordinate " + std::to_string(j) + " h=1e-4: " + fmt(g4) + " h=1e-5: " + fmt(g5);
        });
      }
    }
    rows.push_back(row.finish());
  }
}

void idempotency(std::vector<PropertyRow>& rows, optim::Rng& rng, std::size_t samples) {
  const double k = 10.0;
  const double nu = 2.0;
  struct Subject {
    const char* name;
    std::function<double(const Vec&)> f;
    double ln_m_over_k_sign;  // result = a + sign * ln(m)/k
    bool unit_domain;
  };
  const std::vector<Subject> subjects{
      {"min", [](const Vec& v) { return *std::min_element(v.begin(), v.end()); }, 0.0, false},
      {"agm_and", [](const Vec& v) { return metrics::agm_and(v); }, 0.0, true},
      {"new_and", [nu](const Vec& v) { return metrics::new_and(v, nu); }, 0.0, false},
      {"smooth_max", [k](const Vec& v) { return metrics::smooth_max(v, k); }, 0.0, false},
      {"softmax_lse (a + ln(m)/k)", [k](const Vec& v) { return metrics::softmax_lse(v, k); }, 1.0, false},
      {"softmin_lse (a - ln(m)/k)", [k](const Vec& v) { return metrics::softmin_lse(v, k); }, -1.0, false},
      {"smooth_min (a - ln(m)/k)", [k](const Vec& v) { return metrics::smooth_min(v, k); }, -1.0, false},
  };
  for (const auto& s : subjects) {
    Row row("idempotency", s.name);
    for (std::size_t i = 0; i < samples; ++i) {
      const std::size_t m = 1 + rng.below(10);
      const double a = s.unit_domain ? rng.uniform(-1.0, 1.0) : rng.uniform(-100.0, 100.0);
      const Vec v(m, a);
      const double expected = a + s.ln_m_over_k_sign * std::log(static_cast<double>(m)) / k;
      const double got = s.f(v);
      row.check(std::abs(got - expected) <= 1e-12 * std::max(1.0, std::abs(a)),
                [&] { return fmt(v) + " got " + fmt(got) + " expected " + fmt(expected); });
    }
    rows.push_back(row.finish());
  }
}

}  // namespace

PropertyReport run_property_suite(std::size_t samples, std::uint64_t seed) {
  if (samples < 1) throw Error(ErrorCode::InvalidArgument, "samples must be >= 1");
  PropertyReport report{seed, samples, {}};
  optim::Rng master(seed);
  auto stream = [&master] { return optim::Rng(master.next()); };

  auto rng = stream();
  soundness(report.rows, rng, samples);
  rng = stream();
  lse_bound(report.rows, rng);
  rng = stream();
  limits(report.rows, rng, samples);
  rng = stream();
  scale_invariance(report.rows, rng, samples);
  rng = stream();
  shadow_lifting(report.rows, rng);
  rng = stream();
  smoothness(report.rows, rng, samples);
  rng = stream();
  idempotency(report.rows, rng, samples);
  return report;
}

}  // namespace stlopt::harness
