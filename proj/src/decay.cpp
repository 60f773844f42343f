#include "decaysum/decay.hpp"

#include <cmath>
#include <stdexcept>

namespace decaysum {

DecayFunction::DecayFunction(DecayKind kind, int c, double alpha,
                             std::int64_t w, std::vector<double> table)
    : kind_(kind), exponent_(c), alpha_(alpha), window_(w),
      table_(std::move(table)) {}

DecayFunction DecayFunction::constant() {
  return DecayFunction(DecayKind::Constant, 0, 1.0, 0, {});
}

DecayFunction DecayFunction::polynomial(int c) {
  if (c < 1) throw std::invalid_argument("polynomial decay needs exponent c >= 1");
  return DecayFunction(DecayKind::Polynomial, c, 1.0, 0, {});
}

DecayFunction DecayFunction::exponential(double alpha) {
  if (!(alpha >= 1.0)) throw std::invalid_argument("exponential decay needs alpha >= 1");
  return DecayFunction(DecayKind::Exponential, 0, alpha, 0, {});
}

DecayFunction DecayFunction::sliding_window(std::int64_t w) {
  if (w < 1) throw std::invalid_argument("sliding window needs w >= 1");
  return DecayFunction(DecayKind::SlidingWindow, 0, 1.0, w, {});
}

DecayFunction DecayFunction::custom(std::vector<double> table) {
  if (table.empty()) throw std::invalid_argument("custom decay table is empty");
  if (table[0] != 1.0)
    throw std::invalid_argument("custom decay must have f(1) = 1; normalize the table");
  double prev = table[0];
  for (std::size_t i = 1; i < table.size(); ++i) {
    if (!(table[i] >= 0.0))
      throw std::invalid_argument("custom decay values must be non-negative");
    if (table[i] > prev + 1e-15)
      throw std::invalid_argument("custom decay must be monotonically non-increasing");
    prev = table[i];
  }
  return DecayFunction(DecayKind::Custom, 0, 1.0, 0, std::move(table));
}

DecayFunction DecayFunction::parse(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  try {
    if (head == "const" || head == "constant") return constant();
    if (head == "poly" || head == "polynomial") return polynomial(std::stoi(arg));
    if (head == "exp" || head == "exponential") return exponential(std::stod(arg));
    if (head == "window" || head == "sliding-window")
      return sliding_window(std::stoll(arg));
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception&) {
    throw std::invalid_argument("bad decay parameter in '" + spec + "'");
  }
  throw std::invalid_argument("unknown decay spec '" + spec +
                              "' (expected const, poly:C, exp:ALPHA or window:W)");
}

double DecayFunction::operator()(std::int64_t n) const {
  if (n < 1) throw std::invalid_argument("decay functions are defined for n >= 1");
  switch (kind_) {
    case DecayKind::Constant:
      return 1.0;
    case DecayKind::Polynomial:
      return std::pow(static_cast<double>(n), -static_cast<double>(exponent_));
    case DecayKind::Exponential:
      return std::pow(alpha_, static_cast<double>(1 - n));
    case DecayKind::SlidingWindow:
      return n <= window_ ? 1.0 : 0.0;
    case DecayKind::Custom: {
      const auto i = static_cast<std::size_t>(n - 1);
      return i < table_.size() ? table_[i] : table_.back();
    }
  }
  throw std::logic_error("unreachable decay kind");
}

int DecayFunction::exponent() const {
  if (kind_ != DecayKind::Polynomial)
    throw std::domain_error("exponent() requires polynomial decay");
  return exponent_;
}

double DecayFunction::alpha() const {
  if (kind_ != DecayKind::Exponential)
    throw std::domain_error("alpha() requires exponential decay");
  return alpha_;
}

std::int64_t DecayFunction::window() const {
  if (kind_ != DecayKind::SlidingWindow)
    throw std::domain_error("window() requires sliding-window decay");
  return window_;
}

std::string DecayFunction::name() const {
  switch (kind_) {
    case DecayKind::Constant: return "const";
    case DecayKind::Polynomial: return "poly:" + std::to_string(exponent_);
    case DecayKind::Exponential: {
      // trim trailing zeros so "exp:1.5" round-trips
      std::string s = std::to_string(alpha_);
      while (s.back() == '0') s.pop_back();
      if (s.back() == '.') s.pop_back();
      return "exp:" + s;
    }
    case DecayKind::SlidingWindow: return "window:" + std::to_string(window_);
    case DecayKind::Custom: return "custom[" + std::to_string(table_.size()) + "]";
  }
  return "?";
}

}  // namespace decaysum
