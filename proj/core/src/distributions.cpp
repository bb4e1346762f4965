#include "aoi/distributions.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <cctype>
#include <vector>

#include "aoi/errors.hpp"
#include "aoi/quadrature.hpp"

namespace aoi {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Standard normal upper tail P(N > z).
double normal_upper(double z) { return 0.5 * std::erfc(z / std::numbers::sqrt2); }

double clamp_positive(double s) { return std::max(s, std::numeric_limits<double>::min()); }

void require_rate(double rate, const char* name) {
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw ParameterError(std::string(name) + " must be a positive finite rate, got " +
                         std::to_string(rate));
  }
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::vector<std::string_view> split_ws(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j > i) out.push_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

double parse_double(std::string_view s, std::string_view what) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ParameterError("cannot parse " + std::string(what) + " value '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

std::string_view to_string(ServiceFamily family) {
  switch (family) {
    case ServiceFamily::Deterministic: return "det";
    case ServiceFamily::Exponential: return "exp";
    case ServiceFamily::LogNormal: return "lognormal";
    case ServiceFamily::Pareto: return "pareto";
    case ServiceFamily::Weibull: return "weibull";
  }
  return "?";
}

ServiceFamily parse_service_family(std::string_view name) {
  if (name == "det" || name == "deterministic") return ServiceFamily::Deterministic;
  if (name == "exp" || name == "exponential") return ServiceFamily::Exponential;
  if (name == "lognormal") return ServiceFamily::LogNormal;
  if (name == "pareto") return ServiceFamily::Pareto;
  if (name == "weibull") return ServiceFamily::Weibull;
  throw ParameterError("unknown service family '" + std::string(name) + "'");
}

std::string_view shape_keyword(ServiceFamily family) {
  switch (family) {
    case ServiceFamily::LogNormal: return "sigma";
    case ServiceFamily::Pareto: return "alpha";
    case ServiceFamily::Weibull: return "k";
    default: return {};
  }
}

bool has_shape(ServiceFamily family) { return !shape_keyword(family).empty(); }

ServiceDistribution::ServiceDistribution(ServiceFamily family, double mu,
                                         std::optional<double> shape)
    : family_(family), mu_(mu), shape_(shape), scale_(1.0 / mu) {
  require_rate(mu, "mu");
  if (has_shape(family) != shape.has_value()) {
    throw ParameterError(std::string(to_string(family)) +
                         (shape ? " takes no shape parameter" : " requires a shape parameter"));
  }
  switch (family) {
    case ServiceFamily::Deterministic:
    case ServiceFamily::Exponential:
      break;
    case ServiceFamily::LogNormal:
      if (!(*shape > 0.0) || !std::isfinite(*shape)) {
        throw ParameterError("lognormal requires sigma > 0, got " + format_number(*shape));
      }
      scale_ = -std::log(mu) - 0.5 * *shape * *shape;
      break;
    case ServiceFamily::Pareto:
      if (!(*shape > 1.0) || !std::isfinite(*shape)) {
        throw ParameterError("pareto requires alpha > 1, got " + format_number(*shape));
      }
      scale_ = (*shape - 1.0) / (mu * *shape);
      break;
    case ServiceFamily::Weibull:
      if (!(*shape > 0.0) || !std::isfinite(*shape)) {
        throw ParameterError("weibull requires k > 0, got " + format_number(*shape));
      }
      scale_ = 1.0 / (mu * std::tgamma(1.0 + 1.0 / *shape));
      if (!(scale_ > 0.0) || !std::isfinite(scale_)) {
        throw ParameterError("weibull k=" + format_number(*shape) + " is numerically out of range");
      }
      break;
  }
}

ServiceDistribution ServiceDistribution::deterministic(double mu) {
  return {ServiceFamily::Deterministic, mu, std::nullopt};
}
ServiceDistribution ServiceDistribution::exponential(double mu) {
  return {ServiceFamily::Exponential, mu, std::nullopt};
}
ServiceDistribution ServiceDistribution::lognormal(double mu, double sigma) {
  return {ServiceFamily::LogNormal, mu, sigma};
}
ServiceDistribution ServiceDistribution::pareto(double mu, double alpha) {
  return {ServiceFamily::Pareto, mu, alpha};
}
ServiceDistribution ServiceDistribution::weibull(double mu, double k) {
  return {ServiceFamily::Weibull, mu, k};
}
ServiceDistribution ServiceDistribution::make(ServiceFamily family, double mu,
                                              std::optional<double> shape) {
  return {family, mu, shape};
}

double ServiceDistribution::sample(RandomStream& rng) const {
  switch (family_) {
    case ServiceFamily::Deterministic:
      return 1.0 / mu_;
    case ServiceFamily::Exponential:
      return rng.standard_exponential() / mu_;
    case ServiceFamily::LogNormal:
      return clamp_positive(std::exp(scale_ + *shape_ * rng.standard_normal()));
    case ServiceFamily::Pareto:
      return scale_ * std::pow(rng.uniform_open(), -1.0 / *shape_);
    case ServiceFamily::Weibull:
      return clamp_positive(scale_ * std::pow(rng.standard_exponential(), 1.0 / *shape_));
  }
  return 0.0;
}

ExtendedReal ServiceDistribution::second_moment() const {
  const double m = 1.0 / mu_;
  switch (family_) {
    case ServiceFamily::Deterministic:
      return ExtendedReal::finite(m * m);
    case ServiceFamily::Exponential:
      return ExtendedReal::finite(2.0 * m * m);
    case ServiceFamily::LogNormal: {
      const double v = std::exp(*shape_ * *shape_) * m * m;
      return std::isfinite(v) ? ExtendedReal::finite(v) : ExtendedReal::infinite();
    }
    case ServiceFamily::Pareto: {
      const double a = *shape_;
      if (a <= 2.0) return ExtendedReal::infinite();
      return ExtendedReal::finite(a * scale_ * scale_ / (a - 2.0));
    }
    case ServiceFamily::Weibull: {
      const double v = scale_ * scale_ * std::tgamma(1.0 + 2.0 / *shape_);
      return std::isfinite(v) ? ExtendedReal::finite(v) : ExtendedReal::infinite();
    }
  }
  return ExtendedReal::infinite();
}

ExtendedReal ServiceDistribution::variance() const {
  const ExtendedReal second = second_moment();
  if (second.is_infinite()) return second;
  const double m = mean();
  return ExtendedReal::finite(std::max(0.0, second.value() - m * m));
}

double ServiceDistribution::median() const {
  switch (family_) {
    case ServiceFamily::Deterministic: return 1.0 / mu_;
    case ServiceFamily::Exponential: return std::numbers::ln2 / mu_;
    case ServiceFamily::LogNormal: return std::exp(scale_);
    case ServiceFamily::Pareto: return scale_ * std::pow(2.0, 1.0 / *shape_);
    case ServiceFamily::Weibull: return scale_ * std::pow(std::numbers::ln2, 1.0 / *shape_);
  }
  return 0.0;
}

double ServiceDistribution::tail_prob(double x) const {
  if (x <= 0.0) return 1.0;
  if (x == kInf) return 0.0;
  switch (family_) {
    case ServiceFamily::Deterministic:
      return x < 1.0 / mu_ ? 1.0 : 0.0;
    case ServiceFamily::Exponential:
      return std::exp(-mu_ * x);
    case ServiceFamily::LogNormal:
      return normal_upper((std::log(x) - scale_) / *shape_);
    case ServiceFamily::Pareto:
      return x <= scale_ ? 1.0 : std::pow(scale_ / x, *shape_);
    case ServiceFamily::Weibull:
      return std::exp(-std::pow(x / scale_, *shape_));
  }
  return 0.0;
}

double ServiceDistribution::expected_min_with(double x) const {
  if (x <= 0.0) return 0.0;
  if (x == kInf) return mean();
  const double m = 1.0 / mu_;
  switch (family_) {
    case ServiceFamily::Deterministic:
      return std::min(x, m);
    case ServiceFamily::Exponential:
      return -m * std::expm1(-mu_ * x);
    case ServiceFamily::LogNormal: {
      const double sigma = *shape_;
      // E[S 1{S < x}] = E[S] Phi((log x - location - sigma^2) / sigma)
      const double below = m * normal_upper(-(std::log(x) - scale_ - sigma * sigma) / sigma);
      return below + x * tail_prob(x);
    }
    case ServiceFamily::Pareto: {
      const double theta = scale_;
      const double a = *shape_;
      if (x <= theta) return x;
      return theta + theta / (a - 1.0) * (1.0 - std::pow(theta / x, a - 1.0));
    }
    case ServiceFamily::Weibull: {
      // Tail is exp(-(t/beta)^k); past this point it underflows to zero.
      const double k = *shape_;
      const double cutoff = scale_ * std::pow(800.0, 1.0 / k);
      const double upper = std::min(x, cutoff);
      const auto tail = [this](double t) { return tail_prob(t); };
      const double tol = 1e-8 * std::min(upper, m);
      const double integral = adaptive_simpson(tail, 0.0, upper, tol);
      return std::min(integral, m);
    }
  }
  return 0.0;
}

double ServiceDistribution::truncated_mean_below(double x) const {
  if (x == kInf) return mean();
  return std::max(0.0, expected_min_with(x) - x * tail_prob(x));
}

std::string ServiceDistribution::describe() const {
  std::string out(to_string(family_));
  if (shape_) out += " " + std::string(shape_keyword(family_)) + "=" + format_number(*shape_);
  return out;
}

std::string_view to_string(ArrivalFamily family) {
  return family == ArrivalFamily::Deterministic ? "det" : "exp";
}

ArrivalProcess ArrivalProcess::deterministic(double lambda) {
  return make(ArrivalFamily::Deterministic, lambda);
}
ArrivalProcess ArrivalProcess::exponential(double lambda) {
  return make(ArrivalFamily::Exponential, lambda);
}
ArrivalProcess ArrivalProcess::make(ArrivalFamily family, double lambda) {
  require_rate(lambda, "lambda");
  return ArrivalProcess(family, lambda);
}

double ArrivalProcess::sample(RandomStream& rng) const {
  if (family_ == ArrivalFamily::Deterministic) return 1.0 / lambda_;
  return rng.standard_exponential() / lambda_;
}

double ArrivalProcess::second_moment() const {
  const double m = 1.0 / lambda_;
  return family_ == ArrivalFamily::Deterministic ? m * m : 2.0 * m * m;
}

std::string ArrivalProcess::describe() const {
  return std::string(to_string(family_)) + " lambda=" + format_number(lambda_);
}

ServiceDistribution parse_service(std::string_view text, double default_mu) {
  const auto tokens = split_ws(text);
  if (tokens.empty()) throw ParameterError("empty service specification");
  const ServiceFamily family = parse_service_family(tokens[0]);
  double mu = default_mu;
  std::optional<double> shape;
  for (std::size_t i = 1; i < tokens.size(); ++i) {
    const auto eq = tokens[i].find('=');
    if (eq == std::string_view::npos) {
      throw ParameterError("expected key=value in service spec, got '" + std::string(tokens[i]) + "'");
    }
    const auto key = tokens[i].substr(0, eq);
    const auto value = tokens[i].substr(eq + 1);
    if (key == "mu") {
      mu = parse_double(value, key);
    } else if (has_shape(family) && key == shape_keyword(family)) {
      shape = parse_double(value, key);
    } else {
      throw ParameterError("unknown keyword '" + std::string(key) + "' for " +
                           std::string(to_string(family)));
    }
  }
  return ServiceDistribution::make(family, mu, shape);
}

ArrivalProcess parse_arrival(std::string_view text) {
  const auto tokens = split_ws(text);
  if (tokens.empty()) throw ParameterError("empty arrival specification");
  ArrivalFamily family;
  if (tokens[0] == "det" || tokens[0] == "deterministic" || tokens[0] == "periodic") {
    family = ArrivalFamily::Deterministic;
  } else if (tokens[0] == "exp" || tokens[0] == "exponential" || tokens[0] == "poisson") {
    family = ArrivalFamily::Exponential;
  } else {
    throw ParameterError("unknown arrival family '" + std::string(tokens[0]) + "'");
  }
  std::optional<double> lambda;
  for (std::size_t i = 1; i < tokens.size(); ++i) {
    const auto eq = tokens[i].find('=');
    if (eq == std::string_view::npos || tokens[i].substr(0, eq) != "lambda") {
      throw ParameterError("expected lambda=<rate> in arrival spec, got '" +
                           std::string(tokens[i]) + "'");
    }
    lambda = parse_double(tokens[i].substr(eq + 1), "lambda");
  }
  if (!lambda) throw ParameterError("arrival spec '" + std::string(text) + "' lacks lambda=");
  return ArrivalProcess::make(family, *lambda);
}

}  // namespace aoi
