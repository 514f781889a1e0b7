#include "radialmp/regression.hpp"

#include <algorithm>
#include <cmath>

#include "radialmp/error.hpp"

namespace radialmp {

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw ParameterError("fit_line needs >= 2 paired samples");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw ParameterError("fit_line needs distinct abscissae");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double res = y[i] - (fit.intercept + fit.slope * x[i]);
    fit.max_abs_residual = std::max(fit.max_abs_residual, std::abs(res));
    ss += res * res;
  }
  fit.rms_residual = std::sqrt(ss / n);
  return fit;
}

}  // namespace radialmp
