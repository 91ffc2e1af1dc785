#include "lagpot/potential_kernels.hpp"

#include "lagpot/aux_integrals.hpp"
#include "lagpot/errors.hpp"
#include "lagpot/heat_kernels.hpp"
#include "lagpot/parallel.hpp"
#include "lagpot/special_functions.hpp"

#include <algorithm>
#include <cmath>

namespace lagpot {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

SignedLogValue pow_log(double base, double p) {
  if (base == 0.0) {
    if (p > 0.0) return SignedLogValue::zero();
    if (p == 0.0) return SignedLogValue::from_log(0.0);
    return SignedLogValue::infinity();
  }
  return SignedLogValue::from_log(p * std::log(base));
}

SignedLogValue log_term(double v) {
  if (v == kInf) return SignedLogValue::infinity();
  return SignedLogValue::from_real(v);
}

double log_plus(double v) { return v > 1.0 ? std::log(v) : 0.0; }

// chi(sigma > alpha+1) + chi(sigma = alpha+1) log(1/S); S <= 1 here.
SignedLogValue indicator_terms(const Params& p, double S) {
  const double a1 = p.alpha + 1.0;
  if (nearly_equal(p.sigma, a1)) return log_term(S > 0.0 ? -std::log(S) : kInf);
  if (p.sigma > a1) return SignedLogValue::from_log(0.0);
  return SignedLogValue::zero();
}

// Convolution-type shape in terms of S = x + y and D = |x - y| (x, y >= 0).
EnvelopeShape same_sign_shape(const Params& p, double S, double D) {
  const double s = p.sigma;
  const bool half = nearly_equal(s, 0.5);
  EnvelopeShape e;
  if (S <= 1.0) {
    SignedLogValue branch;
    if (half) branch = D == 0.0 ? SignedLogValue::infinity() : log_term(1.0 + std::log(S / D));
    else if (s < 0.5) branch = pow_log(D, 2.0 * s - 1.0);
    else branch = pow_log(S, 2.0 * s - 1.0);
    e.base = indicator_terms(p, S) + pow_log(S, -2.0 * p.alpha - 1.0) * branch;
    return e;
  }
  SignedLogValue branch;
  if (half) branch = D == 0.0 ? SignedLogValue::infinity() : log_term(1.0 + log_plus(1.0 / (D * S)));
  else if (s < 0.5) branch = pow_log(D, 2.0 * s - 1.0);
  else branch = pow_log(S, 1.0 - 2.0 * s);
  e.base = pow_log(S, -2.0 * p.alpha - 1.0) * branch;
  e.decay = D * S;
  e.has_exponential = true;
  return e;
}

void check_positive(KernelKind kind, double x, double y) {
  if (kind == KernelKind::Dunkl) {
    if (!std::isfinite(x) || !std::isfinite(y)) throw DomainError("Dunkl kernel needs finite x, y");
    return;
  }
  if (kind == KernelKind::Convolution) {
    if (!(x >= 0.0) || !(y >= 0.0) || !std::isfinite(x) || !std::isfinite(y))
      throw DomainError("convolution-type kernel needs x, y > 0");
    return;
  }
  if (!(x > 0.0) || !(y > 0.0) || !std::isfinite(x) || !std::isfinite(y))
    throw DomainError(to_string(kind) + " kernel needs x, y > 0");
}

}  // namespace

std::string to_string(KernelKind kind) {
  switch (kind) {
    case KernelKind::Convolution: return "conv";
    case KernelKind::HermiteType: return "hermite";
    case KernelKind::Dunkl: return "dunkl";
    case KernelKind::DunklAux: return "dunkl_aux";
  }
  return "?";
}

KernelKind parse_kernel_kind(const std::string& text) {
  if (text == "conv" || text == "Convolution") return KernelKind::Convolution;
  if (text == "hermite" || text == "HermiteType") return KernelKind::HermiteType;
  if (text == "dunkl" || text == "Dunkl") return KernelKind::Dunkl;
  if (text == "dunkl_aux" || text == "DunklAux") return KernelKind::DunklAux;
  throw DomainError("unknown kernel kind '" + text + "' (expected conv, hermite, dunkl, dunkl_aux)");
}

LogIntegral potential_kernel_diff(KernelKind kind, const Params& params, double x, double y, double diff,
                                  const QuadratureConfig& quad) {
  Params::make(params.alpha, params.sigma);
  check_positive(kind, x, y);
  const double alpha = params.alpha, sigma = params.sigma;

  LogIntegral out;
  const bool singular_diag = diff == 0.0 && (sigma < 0.5 || nearly_equal(sigma, 0.5)) &&
                             (kind != KernelKind::Dunkl || x * y > 0.0);
  if (singular_diag) {
    out.value = SignedLogValue::infinity();
    out.divergent = true;
    return out;
  }

  const double ax = std::fabs(x), ay = std::fabs(y);
  const double axy = ax * ay;
  std::vector<double> anchors = {0.0};
  if (axy > 0.0) anchors.push_back(std::log(p_of(axy)));
  if (diff != 0.0) {
    anchors.push_back(std::log(std::fabs(diff) / (ax + ay)));
    anchors.push_back(2.0 * std::log(std::fabs(diff)));
  }

  switch (kind) {
    case KernelKind::Convolution:
    case KernelKind::HermiteType: {
      auto f = [&](double s) {
        return SignedLogValue::from_log(heat_detail::laguerre_log(alpha, s, x, y, diff) + sigma * s);
      };
      out = integrate_log_domain(f, -kInf, kInf, anchors, quad);
      break;
    }
    case KernelKind::Dunkl: {
      auto f = [&](double s) { return scale_log(heat_detail::dunkl_log(alpha, s, x, y, diff), sigma * s); };
      out = integrate_log_domain(f, -kInf, kInf, anchors, quad);
      break;
    }
    case KernelKind::DunklAux: {
      const double lxy = std::log(axy);
      auto f = [&](double s) {
        const double ls = log_sinh_2t(s);
        return SignedLogValue::from_log(std::min(ls - lxy, 0.0) + (-alpha - 0.5) * std::max(lxy, ls) +
                                        heat_detail::hermite_log(s, x, y, diff) + sigma * s);
      };
      out = integrate_log_domain(f, -kInf, kInf, anchors, quad);
      break;
    }
  }
  if (out.value.is_infinite() || out.value.is_zero()) return out;
  double shift = 0.0;
  if (kind != KernelKind::DunklAux) shift -= log_gamma(sigma);
  if (kind == KernelKind::HermiteType) shift += (alpha + 0.5) * (std::log(x) + std::log(y));
  out.value = scale_log(out.value, shift);
  return out;
}

LogIntegral potential_kernel_detailed(KernelKind kind, const Params& params, double x, double y,
                                      const QuadratureConfig& quad) {
  return potential_kernel_diff(kind, params, x, y, y - x, quad);
}

SignedLogValue potential_kernel(KernelKind kind, const Params& params, double x, double y,
                                const QuadratureConfig& quad) {
  return potential_kernel_detailed(kind, params, x, y, quad).value;
}

EnvelopeShape conv_envelope_shape(const Params& params, double x, double y) {
  if (!(x > 0.0) || !(y > 0.0)) throw DomainError("convolution envelope needs x, y > 0");
  return same_sign_shape(params, x + y, std::fabs(x - y));
}

EnvelopeShape dunkl_envelope_shape(const Params& params, double x, double y) {
  if (!(params.alpha > -0.5)) throw DomainError("the Dunkl envelope needs alpha > -1/2");
  const double S = std::fabs(x) + std::fabs(y);
  if (x * y >= 0.0) return same_sign_shape(params, S, std::fabs(x - y));
  EnvelopeShape e;
  if (S <= 1.0) {
    e.base = indicator_terms(params, S) + pow_log(S, 2.0 * params.sigma - 2.0 * params.alpha - 2.0);
    return e;
  }
  e.base = pow_log(S, -2.0 * params.alpha - 4.0 - 2.0 * params.sigma);
  e.decay = std::fabs(x - y) * std::fabs(x + y);
  e.has_exponential = true;
  return e;
}

EnvelopeShape hermite_osc_envelope_shape(double sigma, double x, double y) {
  if (!(sigma > 0.0)) throw DomainError("sigma must satisfy sigma > 0");
  const double S = std::fabs(x) + std::fabs(y);
  const double D = std::fabs(x - y);
  EnvelopeShape e;
  if (nearly_equal(sigma, 0.5))
    e.base = D * S == 0.0 ? SignedLogValue::infinity() : log_term(1.0 + log_plus(1.0 / (D * S)));
  else if (sigma < 0.5) e.base = pow_log(D, 2.0 * sigma - 1.0);
  else e.base = pow_log(1.0 + std::fabs(x + y), 1.0 - 2.0 * sigma);
  e.decay = D * S;
  e.has_exponential = true;
  return e;
}

EnvelopeBounds envelope_conv(const Params& params, double x, double y, const EnvelopeConstants& k) {
  return conv_envelope_shape(params, x, y).bounds(k);
}

EnvelopeBounds envelope_dunkl(const Params& params, double x, double y, const EnvelopeConstants& k) {
  return dunkl_envelope_shape(params, x, y).bounds(k);
}

EnvelopeBounds envelope_hermite_osc(double sigma, double x, double y, const EnvelopeConstants& k) {
  return hermite_osc_envelope_shape(sigma, x, y).bounds(k);
}

namespace {

SignedLogValue je_value(KernelKind kind, const Params& p, double x, double y, const JEConstants& c) {
  if (!(c.c1 < c.c2)) throw DomainError("J/E decomposition needs c1 < c2");
  const double a = kind == KernelKind::Convolution ? 1.5 : 0.5;
  const double b = kind == KernelKind::Convolution ? 0.5 : 1.5;
  const double S = x + y, D = x - y, xy = x * y;
  const double A = p.sigma - a;
  SignedLogValue total = SignedLogValue::from_log(-c.c_exp * S * S);
  if (xy <= 1.0) {
    const SignedLogValue j = j_integral(p.alpha - p.sigma, c.c1 * S * S, c.c2 * S * S / xy);
    total += pow_log(S, 2.0 * p.sigma - 2.0 * p.alpha - 2.0) * j;
    const SignedLogValue e = e_integral(A, c.c_E * D * D / xy, c.c_E * xy * S * S);
    total += pow_log(xy, p.sigma - p.alpha - 1.0) * e;
  } else {
    const SignedLogValue e = e_integral(A, c.c_E * D * D, c.c_E * S * S);
    total += pow_log(xy, -p.alpha - b) * e;
  }
  return total;
}

}  // namespace

JEDecomposition exp_je_decomposition(KernelKind kind, const Params& params, double x, double y,
                                     const JEConstants& lower, const JEConstants& upper) {
  if (kind != KernelKind::Convolution && kind != KernelKind::DunklAux)
    throw DomainError("J/E decomposition exists for conv and dunkl_aux only");
  Params::make(params.alpha, params.sigma);
  if (!(x > 0.0) || !(y > 0.0)) throw DomainError("J/E decomposition needs x, y > 0");
  return {je_value(kind, params, x, y, lower), je_value(kind, params, x, y, upper)};
}

std::vector<std::array<double, 2>> domain_points(const CalibrationDomain& domain) {
  const std::vector<double> g = domain.grid.points();
  std::vector<std::array<double, 2>> out;
  out.reserve(g.size() * g.size());
  for (double x : g) {
    for (double yv : g) {
      const double y = domain.opposite_sign ? -yv : yv;
      const double S = std::fabs(x) + std::fabs(y);
      if (domain.region == PlaneRegion::Small && !(S <= 1.0)) continue;
      if (domain.region == PlaneRegion::Large && !(S > 1.0)) continue;
      if (S > domain.max_sum) continue;
      if (domain.diagonal_gap > 0.0 && std::fabs(x - y) < domain.diagonal_gap * S) continue;
      out.push_back({x, y});
    }
  }
  return out;
}

ShapeFunction envelope_shape_function(EnvelopeSelector selector, const Params& params, double exponent_shift) {
  auto shifted = [exponent_shift](EnvelopeShape e, double x, double y) {
    if (exponent_shift != 0.0) e.base = e.base * pow_log(std::fabs(x) + std::fabs(y), exponent_shift);
    return e;
  };
  switch (selector) {
    case EnvelopeSelector::Convolution:
      return [=](double x, double y) { return shifted(conv_envelope_shape(params, x, y), x, y); };
    case EnvelopeSelector::Dunkl:
      Params::make_dunkl_envelope(params.alpha, params.sigma);
      return [=](double x, double y) { return shifted(dunkl_envelope_shape(params, x, y), x, y); };
    case EnvelopeSelector::HermiteOscillator:
      return [=](double x, double y) { return shifted(hermite_osc_envelope_shape(params.sigma, x, y), x, y); };
  }
  throw DomainError("unknown envelope selector");
}

std::vector<CalibrationSample> kernel_samples(KernelKind kind, const Params& params,
                                              const std::vector<std::array<double, 2>>& points,
                                              const ShapeFunction& shape, const QuadratureConfig& quad) {
  std::vector<CalibrationSample> out(points.size());
  parallel_for(points.size(), [&](std::size_t i) {
    const auto& pt = points[i];
    out[i].point = pt;
    out[i].value = potential_kernel(kind, params, pt[0], pt[1], quad);
    out[i].shape = shape(pt[0], pt[1]);
  });
  return out;
}

RatioReport calibrate_envelope(KernelKind kind, const Params& params, const CalibrationDomain& domain,
                               EnvelopeSelector selector, const QuadratureConfig& quad, double exponent_shift) {
  Params::make(params.alpha, params.sigma);
  const auto points = domain_points(domain);
  const bool singular_sigma = params.sigma < 0.5 || nearly_equal(params.sigma, 0.5);
  if (singular_sigma) {
    for (const auto& pt : points)
      if (pt[0] == pt[1] && (kind != KernelKind::Dunkl || pt[0] * pt[1] > 0.0))
        throw DomainError("calibration grid touches the diagonal singularity x = y (sigma <= 1/2)");
  }
  const auto samples = kernel_samples(kind, params, points, envelope_shape_function(selector, params, exponent_shift),
                                      quad);
  return calibrate_samples(samples, domain.grid);
}

}  // namespace lagpot
