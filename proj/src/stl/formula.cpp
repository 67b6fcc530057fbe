#include "stlopt/stl/formula.hpp"

#include <algorithm>
#include <cmath>

#include "stlopt/error.hpp"

namespace stlopt::stl {

Interval::Interval(double lower, double upper) : lower_(lower), upper_(upper) {
  if (!std::isfinite(lower) || !std::isfinite(upper) || lower < 0.0) {
    throw Error(ErrorCode::InvalidInterval, "interval lower bound must be finite and >= 0");
  }
  if (!(upper > lower)) {
    throw Error(ErrorCode::InvalidInterval, "interval upper bound must exceed lower bound");
  }
}

const char* to_string(Comparison cmp) {
  switch (cmp) {
    case Comparison::Less: return "<";
    case Comparison::LessEqual: return "<=";
    case Comparison::Greater: return ">";
    case Comparison::GreaterEqual: return ">=";
  }
  return "?";
}

double Predicate::margin(double x) const noexcept {
  switch (comparison) {
    case Comparison::Greater:
    case Comparison::GreaterEqual: return x - threshold;
    case Comparison::Less:
    case Comparison::LessEqual: return threshold - x;
  }
  return 0.0;
}

bool Predicate::holds(double x) const noexcept {
  switch (comparison) {
    case Comparison::Less: return x < threshold;
    case Comparison::LessEqual: return x <= threshold;
    case Comparison::Greater: return x > threshold;
    case Comparison::GreaterEqual: return x >= threshold;
  }
  return false;
}

Formula Formula::predicate(std::string channel, Comparison cmp, double threshold) {
  if (channel.empty()) throw Error(ErrorCode::InvalidArgument, "predicate channel is empty");
  if (!std::isfinite(threshold)) throw Error(ErrorCode::NonFinite, "predicate threshold is not finite");
  return Formula(std::make_shared<const FormulaNode>(Predicate{std::move(channel), cmp, threshold}));
}

Formula Formula::negation(Formula arg) {
  return Formula(std::make_shared<const FormulaNode>(Negation{std::move(arg)}));
}

Formula Formula::conjunction(std::vector<Formula> args) {
  if (args.size() < 2) throw Error(ErrorCode::InvalidArgument, "conjunction needs at least two arguments");
  return Formula(std::make_shared<const FormulaNode>(Conjunction{std::move(args)}));
}

Formula Formula::disjunction(std::vector<Formula> args) {
  if (args.size() < 2) throw Error(ErrorCode::InvalidArgument, "disjunction needs at least two arguments");
  return Formula(std::make_shared<const FormulaNode>(Disjunction{std::move(args)}));
}

Formula Formula::globally(Interval interval, Formula arg) {
  return Formula(std::make_shared<const FormulaNode>(Globally{interval, std::move(arg)}));
}

Formula Formula::eventually(Interval interval, Formula arg) {
  return Formula(std::make_shared<const FormulaNode>(Eventually{interval, std::move(arg)}));
}

Formula Formula::until(Interval interval, Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const FormulaNode>(Until{interval, std::move(lhs), std::move(rhs)}));
}

namespace {

bool equal_args(const std::vector<Formula>& a, const std::vector<Formula>& b) {
  return std::equal(a.begin(), a.end(), b.begin(), b.end());
}

struct Equal {
  bool operator()(const Predicate& a, const Predicate& b) const { return a == b; }
  bool operator()(const Negation& a, const Negation& b) const { return a.arg == b.arg; }
  bool operator()(const Conjunction& a, const Conjunction& b) const { return equal_args(a.args, b.args); }
  bool operator()(const Disjunction& a, const Disjunction& b) const { return equal_args(a.args, b.args); }
  bool operator()(const Globally& a, const Globally& b) const {
    return a.interval == b.interval && a.arg == b.arg;
  }
  bool operator()(const Eventually& a, const Eventually& b) const {
    return a.interval == b.interval && a.arg == b.arg;
  }
  bool operator()(const Until& a, const Until& b) const {
    return a.interval == b.interval && a.lhs == b.lhs && a.rhs == b.rhs;
  }
  template <class A, class B>
  bool operator()(const A&, const B&) const {
    return false;
  }
};

bool nested_temporal(const Formula& f, bool under_temporal) {
  return std::visit(
      [&](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Predicate>) {
          return false;
        } else if constexpr (std::is_same_v<T, Negation>) {
          return nested_temporal(n.arg, under_temporal);
        } else if constexpr (std::is_same_v<T, Conjunction> || std::is_same_v<T, Disjunction>) {
          return std::any_of(n.args.begin(), n.args.end(),
                             [&](const Formula& g) { return nested_temporal(g, under_temporal); });
        } else if constexpr (std::is_same_v<T, Until>) {
          return under_temporal || nested_temporal(n.lhs, true) || nested_temporal(n.rhs, true);
        } else {
          return under_temporal || nested_temporal(n.arg, true);
        }
      },
      static_cast<const FormulaNode::variant&>(f.node()));
}

void collect_channels(const Formula& f, std::vector<std::string>& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Predicate>) {
          if (std::find(out.begin(), out.end(), n.channel) == out.end()) out.push_back(n.channel);
        } else if constexpr (std::is_same_v<T, Conjunction> || std::is_same_v<T, Disjunction>) {
          for (const auto& g : n.args) collect_channels(g, out);
        } else if constexpr (std::is_same_v<T, Until>) {
          collect_channels(n.lhs, out);
          collect_channels(n.rhs, out);
        } else {
          collect_channels(n.arg, out);
        }
      },
      static_cast<const FormulaNode::variant&>(f.node()));
}

}  // namespace

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  return std::visit(Equal{}, static_cast<const FormulaNode::variant&>(*a.node_),
                    static_cast<const FormulaNode::variant&>(*b.node_));
}

bool has_nested_temporal(const Formula& f) { return nested_temporal(f, false); }

std::vector<std::string> channels(const Formula& f) {
  std::vector<std::string> out;
  collect_channels(f, out);
  return out;
}

}  // namespace stlopt::stl
