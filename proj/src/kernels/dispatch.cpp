#include <cstdlib>
#include <string>

#include "diracep/errors.hpp"
#include "diracep/kernels.hpp"

namespace diracep::kernels {

#ifndef DIRACEP_HAVE_AVX2_KERNELS
namespace avx2 {
bool supported() { return false; }
void linear_pair(const double*, const double*, double, double*, double*, std::size_t) {}
void leading_order_offsets(const double*, const double*, double, double*, double*, std::size_t) {}
void ray_offsets(const double*, const double*, double*, double*, std::size_t) {}
void exceptional_line_pair(const double*, const double*, double, double*, double*, std::size_t) {}
void folded_parabola(double, int, double*) {}
void cubic_residuals(const CubicCoeffs&, const complex*, complex*, std::size_t) {}
}  // namespace avx2
#endif

namespace {

template <class... Spans>
void require_same_size(std::size_t n, const char* what, const Spans&... spans) {
  if (((spans.size() != n) || ...)) {
    throw InvalidArgument(std::string(what) + ": span sizes differ");
  }
}

bool use_avx2(Isa isa) {
  if (isa == Isa::scalar) return false;
  if (!avx2::supported()) throw InvalidArgument("AVX2 kernels requested but not available");
  return true;
}

}  // namespace

std::string_view isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

std::vector<Isa> available_isas() {
  std::vector<Isa> out{Isa::scalar};
  if (avx2::supported()) out.push_back(Isa::avx2);
  return out;
}

Isa active_isa() {
  static const Isa chosen = [] {
    const char* env = std::getenv("DIRACEP_ISA");
    if (env != nullptr && std::string(env) == "scalar") return Isa::scalar;
    return avx2::supported() ? Isa::avx2 : Isa::scalar;
  }();
  return chosen;
}

void linear_pair(std::span<const double> tau, std::span<const double> k, double v0,
                 std::span<double> lower, std::span<double> upper, Isa isa) {
  require_same_size(tau.size(), "linear_pair", k, lower, upper);
  if (use_avx2(isa)) {
    avx2::linear_pair(tau.data(), k.data(), v0, lower.data(), upper.data(), tau.size());
  } else {
    scalar::linear_pair(tau.data(), k.data(), v0, lower.data(), upper.data(), tau.size());
  }
}

void leading_order_offsets(std::span<const double> k, std::span<const double> dtau, double v0,
                           std::span<double> plus, std::span<double> minus, Isa isa) {
  require_same_size(k.size(), "leading_order_offsets", dtau, plus, minus);
  if (use_avx2(isa)) {
    avx2::leading_order_offsets(k.data(), dtau.data(), v0, plus.data(), minus.data(), k.size());
  } else {
    scalar::leading_order_offsets(k.data(), dtau.data(), v0, plus.data(), minus.data(), k.size());
  }
}

void ray_offsets(std::span<const double> alpha, std::span<const double> k,
                 std::span<double> plus, std::span<double> minus, Isa isa) {
  require_same_size(alpha.size(), "ray_offsets", k, plus, minus);
  if (use_avx2(isa)) {
    avx2::ray_offsets(alpha.data(), k.data(), plus.data(), minus.data(), alpha.size());
  } else {
    scalar::ray_offsets(alpha.data(), k.data(), plus.data(), minus.data(), alpha.size());
  }
}

void exceptional_line_pair(std::span<const double> dtau, std::span<const double> k, double v0,
                           std::span<double> lower, std::span<double> upper, Isa isa) {
  require_same_size(dtau.size(), "exceptional_line_pair", k, lower, upper);
  if (use_avx2(isa)) {
    avx2::exceptional_line_pair(dtau.data(), k.data(), v0, lower.data(), upper.data(), dtau.size());
  } else {
    scalar::exceptional_line_pair(dtau.data(), k.data(), v0, lower.data(), upper.data(),
                                  dtau.size());
  }
}

void folded_parabola(double k, int m_max, std::span<double> out, Isa isa) {
  if (m_max < 0 || out.size() != static_cast<std::size_t>(2 * m_max + 1)) {
    throw InvalidArgument("folded_parabola: output must hold 2*m_max+1 values");
  }
  if (use_avx2(isa)) {
    avx2::folded_parabola(k, m_max, out.data());
  } else {
    scalar::folded_parabola(k, m_max, out.data());
  }
}

void cubic_residuals(const CubicCoeffs& c, std::span<const complex> roots,
                     std::span<complex> out, Isa isa) {
  if (roots.size() != out.size()) throw InvalidArgument("cubic_residuals: span sizes differ");
  if (use_avx2(isa)) {
    avx2::cubic_residuals(c, roots.data(), out.data(), roots.size());
  } else {
    scalar::cubic_residuals(c, roots.data(), out.data(), roots.size());
  }
}

}  // namespace diracep::kernels
