#ifndef PRIMEPROD_KAHAN_HPP
#define PRIMEPROD_KAHAN_HPP

#include <complex>

namespace primeprod {

// Kahan compensated accumulator.  Prime sums are reduced with a fixed
// chunking so results are bit-identical regardless of thread count.
struct KahanSum {
  double s = 0.0;
  double c = 0.0;

  void add(double x) {
    double y = x - c;
    double t = s + y;
    c = (t - s) - y;
    s = t;
  }
  double value() const { return s; }
};

struct KahanComplexSum {
  KahanSum re, im;

  void add(std::complex<double> z) {
    re.add(z.real());
    im.add(z.imag());
  }
  std::complex<double> value() const { return {re.value(), im.value()}; }
};

}  // namespace primeprod

#endif
