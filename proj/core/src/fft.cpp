#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <vector>

#include "boprop/errors.hpp"

namespace boprop::detail {
namespace {

struct PlanPair {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
};

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [n, p] : plans_) {
      fftw_destroy_plan(p.fwd);
      fftw_destroy_plan(p.bwd);
    }
  }

  PlanPair get(std::size_t n) {
    std::lock_guard lock(mu_);
    if (auto it = plans_.find(n); it != plans_.end()) return it->second;
    std::vector<std::complex<double>> a(n), b(n);
    auto* pa = reinterpret_cast<fftw_complex*>(a.data());
    auto* pb = reinterpret_cast<fftw_complex*>(b.data());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    PlanPair p;
    p.fwd = fftw_plan_dft_1d(static_cast<int>(n), pa, pb, FFTW_FORWARD, flags);
    p.bwd = fftw_plan_dft_1d(static_cast<int>(n), pa, pb, FFTW_BACKWARD, flags);
    if (!p.fwd || !p.bwd) throw ContractError("FFTW planning failed");
    plans_.emplace(n, p);
    return p;
  }

 private:
  std::mutex mu_;
  std::map<std::size_t, PlanPair> plans_;
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

void execute(fftw_plan plan, std::span<const std::complex<double>> in, std::span<std::complex<double>> out) {
  if (in.size() != out.size()) throw ContractError("dft: input and output sizes differ");
  if (in.data() == out.data()) throw ContractError("dft: in-place execution is not supported");
  // fftw's new-array interface takes a non-const input pointer but does not
  // write to it for out-of-place c2c plans.
  auto* pin = reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in.data()));
  auto* pout = reinterpret_cast<fftw_complex*>(out.data());
  fftw_execute_dft(plan, pin, pout);
}

}  // namespace

void dft_forward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out) {
  execute(cache().get(in.size()).fwd, in, out);
}

void dft_backward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out) {
  execute(cache().get(in.size()).bwd, in, out);
}

}  // namespace boprop::detail
