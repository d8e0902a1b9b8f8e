#include "fuzzytrust/fuzzy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fuzzytrust/error.hpp"

namespace fuzzytrust::fuzzy {

namespace {

void require_unit(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) {
    std::ostringstream os;
    os << what << " must lie in [0, 1], got " << x;
    throw InvalidArgument(os.str());
  }
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

}  // namespace

Trapezoid Trapezoid::make(double a, double b, double c, double d) {
  if (!(0.0 <= a && a <= b && b <= c && c <= d && d <= 1.0)) {
    std::ostringstream os;
    os << "trapezoid breakpoints must satisfy 0 <= a <= b <= c <= d <= 1, got (" << a << ", " << b
       << ", " << c << ", " << d << ")";
    throw InvalidArgument(os.str());
  }
  return Trapezoid{a, b, c, d};
}

double Trapezoid::degree(double x) const noexcept {
  if (x < a || x > d) return 0.0;
  if (x < b) return (x - a) / (b - a);
  if (x <= c) return 1.0;
  if (x < d) return (d - x) / (d - c);
  return 0.0;
}

double membership_degree(const Trapezoid& mf, double x) {
  require_unit(x, "membership input");
  return mf.degree(x);
}

LinguisticVariable::LinguisticVariable(std::string name, std::vector<Term> terms)
    : name_(std::move(name)), terms_(std::move(terms)) {
  if (terms_.empty()) throw ConfigError("linguistic variable '" + name_ + "' has no terms");
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const auto& t = terms_[i];
    Trapezoid::make(t.mf.a, t.mf.b, t.mf.c, t.mf.d);
    for (std::size_t j = 0; j < i; ++j) {
      if (terms_[j].label == t.label) {
        throw ConfigError("duplicate term '" + t.label + "' in variable '" + name_ + "'");
      }
    }
    if (i > 0 && !(terms_[i - 1].mf.b < t.mf.b)) {
      throw ConfigError("terms of '" + name_ + "' must be ordered by strictly increasing core");
    }
  }

  // Between consecutive breakpoints every membership is linear, so the upper
  // envelope vanishes somewhere only if it vanishes at a breakpoint or a midpoint.
  std::vector<double> knots{0.0, 1.0};
  for (const auto& t : terms_) {
    knots.insert(knots.end(), {t.mf.a, t.mf.b, t.mf.c, t.mf.d});
  }
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
  auto covered = [&](double x) {
    return std::any_of(terms_.begin(), terms_.end(),
                       [x](const Term& t) { return t.mf.degree(x) > 0.0; });
  };
  for (std::size_t i = 0; i < knots.size(); ++i) {
    bool ok = covered(knots[i]);
    if (ok && i + 1 < knots.size()) ok = covered(0.5 * (knots[i] + knots[i + 1]));
    if (!ok) {
      std::ostringstream os;
      os << "terms of '" << name_ << "' leave a gap near x=" << knots[i];
      throw ConfigError(os.str());
    }
  }
}

std::size_t LinguisticVariable::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].label == label) return i;
  }
  throw ConfigError("unknown term '" + std::string(label) + "' for variable '" + name_ + "'");
}

bool LinguisticVariable::contains(std::string_view label) const noexcept {
  return std::any_of(terms_.begin(), terms_.end(),
                     [label](const Term& t) { return t.label == label; });
}

FuzzifiedValue LinguisticVariable::fuzzify(double x) const {
  require_unit(x, name_.c_str());
  FuzzifiedValue out;
  out.degrees.reserve(terms_.size());
  for (const auto& t : terms_) out.degrees.push_back(t.mf.degree(x));
  // Where a falling edge is exactly the next term's rising edge, take the
  // complement so the two degrees sum to 1 without rounding error.
  for (std::size_t i = 0; i + 1 < terms_.size(); ++i) {
    const auto& cur = terms_[i].mf;
    const auto& next = terms_[i + 1].mf;
    if (cur.c == next.a && cur.d == next.b && x > cur.c && x < cur.d) {
      out.degrees[i] = 1.0 - out.degrees[i + 1];
    }
  }
  return out;
}

double LinguisticVariable::degree(const FuzzifiedValue& value, std::string_view label) const {
  return value.degrees.at(index_of(label));
}

FuzzifiedValue fuzzify(const LinguisticVariable& var, double x) { return var.fuzzify(x); }

RuleBase::RuleBase(const LinguisticVariable& qoc, const LinguisticVariable& top,
                   const LinguisticVariable& toc, std::vector<Rule> rules)
    : n_qoc_(qoc.size()),
      n_top_(top.size()),
      n_toc_(toc.size()),
      rules_(std::move(rules)),
      table_(n_qoc_ * n_top_, npos) {
  for (const auto& r : rules_) {
    if (r.qoc_term >= n_qoc_ || r.top_term >= n_top_ || r.toc_term >= n_toc_) {
      throw ConfigError("rule refers to a term outside its variable");
    }
    auto& slot = table_[r.qoc_term * n_top_ + r.top_term];
    if (slot != npos) {
      throw ConfigError("duplicate rule for (" + qoc.terms()[r.qoc_term].label + ", " +
                        top.terms()[r.top_term].label + ")");
    }
    slot = r.toc_term;
  }
}

RuleBase RuleBase::parse(const LinguisticVariable& qoc, const LinguisticVariable& top,
                         const LinguisticVariable& toc, std::string_view text) {
  std::vector<Rule> rules;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string q, p, arrow, c, extra;
    if (!(fields >> q >> p >> arrow >> c) || arrow != "->" || (fields >> extra)) {
      throw ConfigError("rule line " + std::to_string(line_no) +
                        ": expected '<qoc_term> <top_term> -> <toc_term>', got '" + line + "'");
    }
    rules.push_back({qoc.index_of(q), top.index_of(p), toc.index_of(c)});
  }
  return RuleBase(qoc, top, toc, std::move(rules));
}

bool RuleBase::is_complete() const noexcept {
  return std::none_of(table_.begin(), table_.end(), [](std::size_t v) { return v == npos; });
}

std::size_t RuleBase::consequent(std::size_t qoc_term, std::size_t top_term) const noexcept {
  if (qoc_term >= n_qoc_ || top_term >= n_top_) return npos;
  return table_[qoc_term * n_top_ + top_term];
}

AggregatedOutput::AggregatedOutput(std::vector<Trapezoid> sets, std::vector<double> clips)
    : sets_(std::move(sets)), clips_(std::move(clips)) {
  if (sets_.size() != clips_.size()) {
    throw InvalidArgument("aggregated output needs one clip level per set");
  }
  for (double c : clips_) require_unit(c, "clip level");
}

AggregatedOutput AggregatedOutput::of(const Trapezoid& mf) { return AggregatedOutput({mf}, {1.0}); }

double AggregatedOutput::degree(double x) const noexcept {
  double best = 0.0;
  for (std::size_t k = 0; k < sets_.size(); ++k) {
    if (clips_[k] <= best) continue;
    best = std::max(best, std::min(sets_[k].degree(x), clips_[k]));
  }
  return best;
}

bool AggregatedOutput::is_zero() const noexcept {
  for (std::size_t k = 0; k < sets_.size(); ++k) {
    if (clips_[k] > 0.0 && sets_[k].d > sets_[k].a) return false;
  }
  return true;
}

AggregatedOutput infer(const RuleBase& rb, const FuzzifiedValue& fq, const FuzzifiedValue& fp,
                       const LinguisticVariable& out) {
  if (fq.degrees.size() != rb.qoc_terms() || fp.degrees.size() != rb.top_terms() ||
      out.size() != rb.toc_terms()) {
    throw InvalidArgument("fuzzified inputs do not match the rule base vocabulary");
  }
  std::vector<double> clips(out.size(), 0.0);
  for (std::size_t q = 0; q < fq.degrees.size(); ++q) {
    if (fq.degrees[q] <= 0.0) continue;
    for (std::size_t p = 0; p < fp.degrees.size(); ++p) {
      const double strength = std::min(fq.degrees[q], fp.degrees[p]);
      if (strength <= 0.0) continue;
      const std::size_t k = rb.consequent(q, p);
      if (k == RuleBase::npos) {
        throw ConfigError("no rule for activated pair (" + std::to_string(q) + ", " +
                          std::to_string(p) + ")");
      }
      clips[k] = std::max(clips[k], strength);
    }
  }
  std::vector<Trapezoid> sets;
  sets.reserve(out.size());
  for (const auto& t : out.terms()) sets.push_back(t.mf);
  return AggregatedOutput(std::move(sets), std::move(clips));
}

double defuzzify_cog(const AggregatedOutput& agg, std::size_t resolution) {
  if (resolution < kMinResolution) {
    throw InvalidArgument("COG resolution must be at least " + std::to_string(kMinResolution));
  }
  const double h = 1.0 / static_cast<double>(resolution);
  double moment = 0.0;
  double area = 0.0;
  for (std::size_t i = 0; i < resolution; ++i) {
    const double x = (static_cast<double>(i) + 0.5) * h;
    const double mu = agg.degree(x);
    moment += x * mu;
    area += mu;
  }
  if (!(area > 0.0)) {
    throw UndefinedValue("centroid of an identically-zero envelope is undefined");
  }
  return moment / area;
}

LinguisticVariable default_qoc_variable() {
  return LinguisticVariable("QoC", {{"Low", Trapezoid::make(0.0, 0.0, 0.15, 0.35)},
                                    {"Med1", Trapezoid::make(0.15, 0.35, 0.40, 0.55)},
                                    {"Med2", Trapezoid::make(0.40, 0.55, 0.60, 0.80)},
                                    {"High", Trapezoid::make(0.60, 0.80, 1.0, 1.0)}});
}

LinguisticVariable default_top_variable() {
  auto v = default_qoc_variable();
  return LinguisticVariable("ToP", v.terms());
}

LinguisticVariable default_toc_variable() {
  return LinguisticVariable("ToC", {{"VL", Trapezoid::make(0.0, 0.0, 0.10, 0.25)},
                                    {"L", Trapezoid::make(0.10, 0.25, 0.30, 0.45)},
                                    {"M", Trapezoid::make(0.30, 0.45, 0.55, 0.70)},
                                    {"H", Trapezoid::make(0.55, 0.70, 0.75, 0.90)},
                                    {"VH", Trapezoid::make(0.75, 0.90, 1.0, 1.0)}});
}

std::string default_rule_text() {
  return "Low  Low  -> VL\n"
         "Low  Med1 -> L\n"
         "Low  Med2 -> L\n"
         "Low  High -> M\n"
         "Med1 Low  -> L\n"
         "Med1 Med1 -> L\n"
         "Med1 Med2 -> M\n"
         "Med1 High -> M\n"
         "Med2 Low  -> M\n"
         "Med2 Med1 -> H\n"
         "Med2 Med2 -> H\n"
         "Med2 High -> H\n"
         "High Low  -> H\n"
         "High Med1 -> H\n"
         "High Med2 -> VH\n"
         "High High -> VH\n";
}

Engine::Engine(LinguisticVariable qoc, LinguisticVariable top, LinguisticVariable toc,
               std::string_view rule_text, std::size_t resolution)
    : qoc_(std::move(qoc)),
      top_(std::move(top)),
      toc_(std::move(toc)),
      rules_(RuleBase::parse(qoc_, top_, toc_, rule_text)),
      resolution_(resolution) {
  if (!rules_.is_complete()) {
    throw ConfigError("rule base must cover every (QoC, ToP) term pair");
  }
  if (resolution_ < kMinResolution) {
    throw ConfigError("COG resolution must be at least " + std::to_string(kMinResolution));
  }
}

const Engine& Engine::standard() {
  static const Engine engine(default_qoc_variable(), default_top_variable(),
                             default_toc_variable(), default_rule_text());
  return engine;
}

AggregatedOutput Engine::aggregate(double qoc, double top) const {
  return infer(rules_, qoc_.fuzzify(qoc), top_.fuzzify(top), toc_);
}

double Engine::evaluate(double qoc, double top) const {
  return defuzzify_cog(aggregate(qoc, top), resolution_);
}

double evaluate_toc(double qoc, double top) { return Engine::standard().evaluate(qoc, top); }

}  // namespace fuzzytrust::fuzzy
