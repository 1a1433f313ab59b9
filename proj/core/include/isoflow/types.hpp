#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace isoflow {

/// A Robin boundary coefficient: a nonnegative real, or infinity (Dirichlet).
/// Infinity is a tagged branch, never a large float, so Green's-function limits
/// (e.g. h=inf gives c(x)=x) are exact.
class RobinCoeff {
 public:
  static RobinCoeff finite(double v) { return RobinCoeff{v, false}; }
  static RobinCoeff infinity() { return RobinCoeff{0.0, true}; }

  bool is_infinite() const { return infinite_; }
  double value() const {
    if (infinite_) throw std::logic_error("RobinCoeff: value() on infinite coefficient");
    return value_;
  }
  bool is_zero() const { return !infinite_ && value_ == 0.0; }

  bool operator==(const RobinCoeff&) const = default;

 private:
  RobinCoeff(double v, bool inf) : value_(v), infinite_(inf) {}
  double value_;
  bool infinite_;
};

struct BoundaryConditions {
  RobinCoeff h = RobinCoeff::finite(1.0);  // left:  v_x(0) - h v(0) = 0
  RobinCoeff H = RobinCoeff::finite(0.0);  // right: v_x(1) + H v(1) = 0
};

/// Point masses m_j at 0 < x_1 < ... < x_n < 1 with Robin ends.
struct DiscreteString {
  std::vector<double> x;
  std::vector<double> m;
  BoundaryConditions bc;

  int n() const { return static_cast<int>(x.size()); }

  /// Gaps l_0..l_n with x_0 = 0, x_{n+1} = 1; sums to 1 for a valid string.
  std::vector<double> gaps() const;
};

/// Point masses on the real line (Camassa-Holm peakon sector).
struct PeakonString {
  std::vector<double> x;
  std::vector<double> m;

  int n() const { return static_cast<int>(x.size()); }
};

enum class KernelKind { string, ch_peakon };

struct FlowSpec {
  int k = 1;             // flow order
  double epsilon = 0.0;  // 0: truncated flow; >0: rational flow
  KernelKind kernel = KernelKind::string;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
  std::string joined() const;
};

ValidationReport validate(const DiscreteString& s);
ValidationReport validate(const PeakonString& s);
ValidationReport validate(const FlowSpec& spec);

/// Throws std::invalid_argument listing all violations if invalid.
void require_valid(const DiscreteString& s);
void require_valid(const PeakonString& s);
void require_valid(const FlowSpec& spec);

}  // namespace isoflow
