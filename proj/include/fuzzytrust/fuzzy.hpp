#pragma once

// Mamdani inference over trapezoidal fuzzy sets: fuzzify, max-min rule
// composition, centre-of-gravity defuzzification.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace fuzzytrust::fuzzy {

/// Trapezoidal membership function on [0, 1]. Membership rises linearly on
/// [a, b], is 1 on [b, c] and falls linearly on [c, d]; a == b or c == d
/// gives a vertical edge.
struct Trapezoid {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;

  /// Validating constructor; throws InvalidArgument unless 0 <= a <= b <= c <= d <= 1.
  static Trapezoid make(double a, double b, double c, double d);

  /// Membership degree without range checks on x (0 outside [a, d]).
  double degree(double x) const noexcept;

  friend bool operator==(const Trapezoid&, const Trapezoid&) = default;
};

/// Membership degree of x in mf. Throws InvalidArgument when x is not in [0, 1].
double membership_degree(const Trapezoid& mf, double x);

struct Term {
  std::string label;
  Trapezoid mf;
};

/// Degrees indexed like the owning variable's terms.
struct FuzzifiedValue {
  std::vector<double> degrees;
};

class LinguisticVariable {
 public:
  /// Throws ConfigError when terms are empty, labels repeat, cores are not
  /// strictly increasing, or some point of [0, 1] is not covered.
  LinguisticVariable(std::string name, std::vector<Term> terms);

  const std::string& name() const noexcept { return name_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }

  /// Index of the term with this label; throws ConfigError if unknown.
  std::size_t index_of(std::string_view label) const;
  bool contains(std::string_view label) const noexcept;

  FuzzifiedValue fuzzify(double x) const;
  /// Degree of one labelled term within a fuzzified value.
  double degree(const FuzzifiedValue& value, std::string_view label) const;

 private:
  std::string name_;
  std::vector<Term> terms_;
};

FuzzifiedValue fuzzify(const LinguisticVariable& var, double x);

struct Rule {
  std::size_t qoc_term;
  std::size_t top_term;
  std::size_t toc_term;
};

/// Rules keyed by (QoC term, ToP term). Duplicates are rejected; gaps are
/// allowed at construction and reported by is_complete()/infer().
class RuleBase {
 public:
  RuleBase(const LinguisticVariable& qoc, const LinguisticVariable& top,
           const LinguisticVariable& toc, std::vector<Rule> rules);

  /// Parses lines of the form `<qoc_term> <top_term> -> <toc_term>`. Blank
  /// lines and `#` comments are skipped.
  static RuleBase parse(const LinguisticVariable& qoc, const LinguisticVariable& top,
                        const LinguisticVariable& toc, std::string_view text);

  const std::vector<Rule>& rules() const noexcept { return rules_; }
  std::size_t qoc_terms() const noexcept { return n_qoc_; }
  std::size_t top_terms() const noexcept { return n_top_; }
  std::size_t toc_terms() const noexcept { return n_toc_; }

  bool is_complete() const noexcept;
  /// Consequent index for a pair, or npos when no rule covers it.
  std::size_t consequent(std::size_t qoc_term, std::size_t top_term) const noexcept;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::size_t n_qoc_;
  std::size_t n_top_;
  std::size_t n_toc_;
  std::vector<Rule> rules_;
  std::vector<std::size_t> table_;  // n_qoc_ x n_top_, npos where absent
};

/// Output envelope: x -> max over output terms of min(mf_k(x), clip_k).
/// Pointwise max of several clipped copies of one set is that set clipped at
/// the largest strength, so one clip level per term is exact.
class AggregatedOutput {
 public:
  AggregatedOutput() = default;
  AggregatedOutput(std::vector<Trapezoid> sets, std::vector<double> clips);

  /// Envelope made of a single unclipped set.
  static AggregatedOutput of(const Trapezoid& mf);

  double degree(double x) const noexcept;
  bool is_zero() const noexcept;
  const std::vector<double>& clips() const noexcept { return clips_; }
  const std::vector<Trapezoid>& sets() const noexcept { return sets_; }

 private:
  std::vector<Trapezoid> sets_;
  std::vector<double> clips_;
};

AggregatedOutput infer(const RuleBase& rb, const FuzzifiedValue& fq, const FuzzifiedValue& fp,
                       const LinguisticVariable& out);

inline constexpr std::size_t kDefaultResolution = 1001;
inline constexpr std::size_t kMinResolution = 101;

/// Centroid of the envelope by the midpoint rule with `resolution` samples.
/// Throws UndefinedValue for an identically-zero envelope.
double defuzzify_cog(const AggregatedOutput& agg, std::size_t resolution = kDefaultResolution);

/// Default partitions and Table-style rule base.
LinguisticVariable default_qoc_variable();
LinguisticVariable default_top_variable();
LinguisticVariable default_toc_variable();
std::string default_rule_text();

/// Immutable inference engine; evaluate() is safe to call concurrently.
class Engine {
 public:
  Engine(LinguisticVariable qoc, LinguisticVariable top, LinguisticVariable toc,
         std::string_view rule_text, std::size_t resolution = kDefaultResolution);

  static const Engine& standard();

  /// Trust of contribution from crisp QoC and ToP, both in [0, 1].
  double evaluate(double qoc, double top) const;
  AggregatedOutput aggregate(double qoc, double top) const;

  const LinguisticVariable& qoc() const noexcept { return qoc_; }
  const LinguisticVariable& top() const noexcept { return top_; }
  const LinguisticVariable& toc() const noexcept { return toc_; }
  const RuleBase& rules() const noexcept { return rules_; }
  std::size_t resolution() const noexcept { return resolution_; }

 private:
  LinguisticVariable qoc_;
  LinguisticVariable top_;
  LinguisticVariable toc_;
  RuleBase rules_;
  std::size_t resolution_;
};

double evaluate_toc(double qoc, double top);

}  // namespace fuzzytrust::fuzzy
