#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace stlopt::stl {

/// Closed time interval [lower, upper] in seconds, 0 <= lower < upper.
class Interval {
 public:
  Interval(double lower, double upper);

  double lower() const noexcept { return lower_; }
  double upper() const noexcept { return upper_; }

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  double lower_;
  double upper_;
};

enum class Comparison { Less, LessEqual, Greater, GreaterEqual };

const char* to_string(Comparison cmp);

struct Predicate {
  std::string channel;
  Comparison comparison;
  double threshold;

  /// Signed margin: x - threshold for > / >=, threshold - x for < / <=.
  double margin(double x) const noexcept;
  bool holds(double x) const noexcept;

  friend bool operator==(const Predicate&, const Predicate&) = default;
};

struct FormulaNode;

/// Immutable STL formula. Copies share the underlying tree.
class Formula {
 public:
  static Formula predicate(std::string channel, Comparison cmp, double threshold);
  static Formula negation(Formula arg);
  static Formula conjunction(std::vector<Formula> args);
  static Formula disjunction(std::vector<Formula> args);
  static Formula globally(Interval interval, Formula arg);
  static Formula eventually(Interval interval, Formula arg);
  static Formula until(Interval interval, Formula lhs, Formula rhs);

  const FormulaNode& node() const noexcept { return *node_; }

  template <class T>
  const T* as() const noexcept;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  explicit Formula(std::shared_ptr<const FormulaNode> node) : node_(std::move(node)) {}

  std::shared_ptr<const FormulaNode> node_;
};

struct Negation {
  Formula arg;
};

struct Conjunction {
  std::vector<Formula> args;
};

struct Disjunction {
  std::vector<Formula> args;
};

struct Globally {
  Interval interval;
  Formula arg;
};

struct Eventually {
  Interval interval;
  Formula arg;
};

/// lhs U[a,b] rhs: rhs must hold somewhere in the window and lhs everywhere before it.
struct Until {
  Interval interval;
  Formula lhs;
  Formula rhs;
};

struct FormulaNode
    : std::variant<Predicate, Negation, Conjunction, Disjunction, Globally, Eventually, Until> {
  using variant::variant;
};

template <class T>
const T* Formula::as() const noexcept {
  return std::get_if<T>(node_.get());
}

/// True if `f` contains a temporal operator nested (at any depth) under another.
bool has_nested_temporal(const Formula& f);

/// Channel names referenced by predicates, in first-occurrence order.
std::vector<std::string> channels(const Formula& f);

}  // namespace stlopt::stl
