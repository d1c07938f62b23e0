#include "diracep/bloch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <exception>
#include <string>
#include <thread>

#include "diracep/errors.hpp"
#include "diracep/kernels/formulas.hpp"

namespace diracep {

void validate(const BlochSpec& spec) {
  if (!std::isfinite(spec.v0) || !(spec.v0 > 0.0)) throw InvalidArgument("v0 must be positive");
  if (!std::isfinite(spec.tau) || spec.tau < 0.0) throw InvalidArgument("tau must be non-negative");
  if (spec.trunc_m < 2) throw InvalidArgument("truncation M must be at least 2");
}

CMatrix build_bloch(const BlochSpec& spec, double k) {
  validate(spec);
  if (!std::isfinite(k)) throw InvalidArgument("k must be finite");
  const double tm = spec.v0 * (1.0 - spec.tau) / 2.0;
  const double tp = spec.v0 * (1.0 + spec.tau) / 2.0;
  const Eigen::Index n = spec.size();
  CMatrix h = CMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double m = static_cast<double>(i - spec.trunc_m);
    h(i, i) = formulas::free_space(m, k);
    if (i + 1 < n) {
      h(i, i + 1) = tm;
      h(i + 1, i) = tp;
    }
  }
  return h;
}

namespace {

double min_gap(const std::vector<complex>& w) {
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < w.size(); ++a) {
    for (std::size_t b = a + 1; b < w.size(); ++b) gap = std::min(gap, std::abs(w[a] - w[b]));
  }
  return gap;
}

void check_monotonic(const std::vector<double>& grid, const char* name) {
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      throw InvalidArgument(std::string(name) + " grid must be strictly increasing");
    }
  }
}

}  // namespace

SweepResult sweep_family(const HamiltonianFamily& family, const Axis& first, const Axis& second,
                         const SweepOptions& opts) {
  if (first.values.empty() || second.values.empty()) {
    throw InvalidArgument("sweep axes must be non-empty");
  }
  check_monotonic(first.values, first.name.c_str());
  check_monotonic(second.values, second.name.c_str());

  const std::size_t nx = first.values.size();
  const std::size_t ny = second.values.size();
  const std::size_t total = nx * ny;
  std::vector<std::vector<complex>> raw(total);

  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t p = begin; p < end; ++p) {
      raw[p] = eigenvalues(family.evaluate(first.values[p / ny], second.values[p % ny]),
                           Ordering::by_real_part);
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(total)));
  if (threads == 1) {
    work(0, total);
  } else {
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    const std::size_t chunk = (total + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t begin = std::min(total, t * chunk);
      const std::size_t end = std::min(total, begin + chunk);
      pool.emplace_back([&, t, begin, end] {
        try {
          work(begin, end);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  SweepResult out;
  out.model = family.id;
  out.first = first;
  out.second = second;
  out.n_bands = raw.front().size();
  out.bands.assign(out.n_bands, std::vector<complex>(total));
  out.near_degenerate.assign(total, 0);

  auto store = [&](std::size_t p, const std::vector<complex>& ordered) {
    for (std::size_t b = 0; b < out.n_bands; ++b) out.bands[b][p] = ordered[b];
    const double tol = degeneracy_tolerance(ordered, opts.degeneracy_relative_tol);
    out.near_degenerate[p] = min_gap(ordered) < 10.0 * tol ? 1 : 0;
  };

  std::vector<complex> row_seed;
  for (std::size_t i = 0; i < nx; ++i) {
    std::vector<complex> prev;
    for (std::size_t j = 0; j < ny; ++j) {
      const std::size_t p = i * ny + j;
      if (raw[p].size() != out.n_bands) throw NumericalFailure("band count changed across grid");
      std::vector<complex> ordered;
      if (p == 0) {
        ordered = raw[p];
      } else {
        const std::vector<complex>& ref = j == 0 ? row_seed : prev;
        ordered = apply_permutation(raw[p], pair_continuation(ref, raw[p]));
      }
      if (j == 0) row_seed = ordered;
      store(p, ordered);
      prev = std::move(ordered);
    }
  }
  return out;
}

SweepResult band_structure(const BlochSpec& spec, const std::vector<double>& k_grid,
                           const SweepOptions& opts) {
  validate(spec);
  for (double k : k_grid) {
    if (!(k >= -0.5 && k <= 0.5)) throw InvalidArgument("k grid must lie in [-1/2, 1/2]");
  }
  FamilyOptions fo;
  fo.v0 = spec.v0;
  fo.trunc_m = spec.trunc_m;
  const HamiltonianFamily family = make_family("bloch", fo);
  return sweep_family(family, Axis{"tau", {spec.tau}}, Axis{"k", k_grid}, opts);
}

SweepResult hybrid_sweep(const BlochSpec& spec, const std::vector<double>& tau_grid,
                         const std::vector<double>& k_grid, const SweepOptions& opts) {
  validate(spec);
  FamilyOptions fo;
  fo.v0 = spec.v0;
  fo.trunc_m = spec.trunc_m;
  const HamiltonianFamily family = make_family("bloch", fo);
  return sweep_family(family, Axis{"tau", tau_grid}, Axis{"k", k_grid}, opts);
}

}  // namespace diracep
