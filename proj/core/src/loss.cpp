#include "tfboost/loss.hpp"

#include <cmath>
#include <functional>

#include "tfboost/errors.hpp"

namespace tfboost {

Loss Loss::huber(double delta) {
  if (!(delta > 0.0)) throw DomainError("huber loss needs delta > 0");
  return Loss(Kind::Huber, delta);
}

Loss Loss::parse(const std::string& text) {
  if (text == "squared") return squared();
  if (text.rfind("huber:", 0) == 0) {
    try {
      return huber(std::stod(text.substr(6)));
    } catch (const std::exception&) {
      throw ConfigError("cannot parse huber delta in '" + text + "'");
    }
  }
  if (text == "huber") return huber(1.0);
  throw ConfigError("unknown loss '" + text + "', expected squared or huber:<delta>");
}

std::string Loss::name() const {
  if (kind_ == Kind::Squared) return "squared";
  return "huber:" + std::to_string(delta_);
}

double Loss::value(double y, double f) const {
  const double r = y - f;
  if (kind_ == Kind::Squared) return r * r;
  const double a = std::abs(r);
  return a <= delta_ ? 0.5 * r * r : delta_ * (a - 0.5 * delta_);
}

double Loss::neg_gradient(double y, double f) const {
  const double r = y - f;
  if (kind_ == Kind::Squared) return r;
  return std::min(std::max(r, -delta_), delta_);
}

double Loss::mean_value(const Eigen::VectorXd& y, const Eigen::VectorXd& f) const {
  if (y.size() != f.size() || y.size() == 0) {
    throw DimensionError("loss: prediction/response length mismatch");
  }
  if (kind_ == Kind::Squared) return (y - f).squaredNorm() / y.size();
  double s = 0.0;
  for (Eigen::Index i = 0; i < y.size(); ++i) s += value(y(i), f(i));
  return s / y.size();
}

double golden_section(const std::function<double(double)>& f, double lo, double hi,
                      double tol) {
  if (!(lo < hi)) throw DomainError("golden_section: empty interval");
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  return (a + b) / 2;
}

}  // namespace tfboost
