#include <atomic>
#include <cstdlib>
#include <string>

#include "kernels/tables.hpp"
#include "tangenttri/errors.hpp"

namespace tangenttri::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(TANGENTTRI_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const KernelTable& initial_table() {
  const char* forced = std::getenv("TANGENTTRI_SIMD");
  if (forced != nullptr) {
    const std::string name(forced);
    if (name == "scalar") return scalar_table();
    if (name == "avx2" && avx2_table() != nullptr) return *avx2_table();
  }
  if (const KernelTable* t = avx2_table()) return *t;
  return scalar_table();
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> table{&initial_table()};
  return table;
}

}  // namespace

const KernelTable* avx2_table() {
#if defined(TANGENTTRI_HAVE_AVX2)
  if (cpu_has_avx2()) return &detail::avx2_table_unchecked();
#endif
  return nullptr;
}

std::vector<Isa> available_isas() {
  std::vector<Isa> isas{Isa::Scalar};
  if (avx2_table() != nullptr) isas.push_back(Isa::Avx2);
  return isas;
}

const KernelTable& table_for(Isa isa) {
  if (isa == Isa::Scalar) return scalar_table();
  if (const KernelTable* t = avx2_table()) return *t;
  throw DomainError("AVX2 kernels are not available on this build or CPU");
}

const KernelTable& active() { return *current().load(std::memory_order_acquire); }

void select(Isa isa) { current().store(&table_for(isa), std::memory_order_release); }

std::string_view isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

}  // namespace tangenttri::kernels
