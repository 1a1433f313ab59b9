#include "isoflow/types.hpp"

#include <cmath>
#include <sstream>

namespace isoflow {

std::vector<double> DiscreteString::gaps() const {
  std::vector<double> l(x.size() + 1);
  double prev = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    l[j] = x[j] - prev;
    prev = x[j];
  }
  l[x.size()] = 1.0 - prev;
  return l;
}

std::string ValidationReport::joined() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < violations.size(); ++i) {
    if (i) os << "; ";
    os << violations[i];
  }
  return os.str();
}

namespace {

void check_masses(const std::vector<double>& m, ValidationReport& r) {
  for (std::size_t j = 0; j < m.size(); ++j) {
    if (!(m[j] > 0.0) || !std::isfinite(m[j])) {
      r.violations.push_back("mass m[" + std::to_string(j + 1) + "] must be positive");
    }
  }
}

void check_increasing(const std::vector<double>& x, ValidationReport& r) {
  for (std::size_t j = 1; j < x.size(); ++j) {
    if (!(x[j] > x[j - 1])) {
      r.violations.push_back("positions not increasing at index " + std::to_string(j + 1));
    }
  }
}

}  // namespace

ValidationReport validate(const DiscreteString& s) {
  ValidationReport r;
  if (s.x.size() != s.m.size()) {
    r.violations.push_back("positions and masses differ in length");
    return r;
  }
  if (s.x.empty()) r.violations.push_back("string has no masses");
  for (std::size_t j = 0; j < s.x.size(); ++j) {
    if (!(s.x[j] > 0.0 && s.x[j] < 1.0) || !std::isfinite(s.x[j])) {
      r.violations.push_back("position x[" + std::to_string(j + 1) + "] outside (0,1)");
    }
  }
  check_increasing(s.x, r);
  check_masses(s.m, r);
  if (!s.bc.h.is_infinite() && s.bc.h.value() < 0.0)
    r.violations.push_back("h must be nonnegative or inf");
  if (!s.bc.H.is_infinite() && s.bc.H.value() < 0.0)
    r.violations.push_back("H must be nonnegative or inf");
  if (s.bc.h.is_zero() && s.bc.H.is_zero())
    r.violations.push_back("(h,H)=(0,0) excluded");
  return r;
}

ValidationReport validate(const PeakonString& s) {
  ValidationReport r;
  if (s.x.size() != s.m.size()) {
    r.violations.push_back("positions and masses differ in length");
    return r;
  }
  if (s.x.empty()) r.violations.push_back("peakon string has no masses");
  for (std::size_t j = 0; j < s.x.size(); ++j) {
    if (!std::isfinite(s.x[j]))
      r.violations.push_back("position x[" + std::to_string(j + 1) + "] not finite");
  }
  check_increasing(s.x, r);
  check_masses(s.m, r);
  return r;
}

ValidationReport validate(const FlowSpec& spec) {
  ValidationReport r;
  if (spec.k < 1) r.violations.push_back("flow order k must be >= 1");
  if (!(spec.epsilon >= 0.0) || !std::isfinite(spec.epsilon))
    r.violations.push_back("epsilon must be nonnegative");
  if (spec.kernel == KernelKind::ch_peakon && spec.epsilon > 0.0)
    r.violations.push_back("kernel ch_peakon requires epsilon = 0");
  return r;
}

namespace {
template <class T>
void require_valid_impl(const T& v) {
  auto r = validate(v);
  if (!r.ok()) throw std::invalid_argument("validation failed: " + r.joined());
}
}  // namespace

void require_valid(const DiscreteString& s) { require_valid_impl(s); }
void require_valid(const PeakonString& s) { require_valid_impl(s); }
void require_valid(const FlowSpec& spec) { require_valid_impl(spec); }

}  // namespace isoflow
