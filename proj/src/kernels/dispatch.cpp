// Backend selection. No intrinsics here, only the decision logic.

#include <atomic>
#include <string>

#include "patchblur/errors.hpp"
#include "patchblur/kernels.hpp"

namespace patchblur::kernels {
namespace {

const KernelTable* table_for(Backend b) {
  switch (b) {
    case Backend::Scalar:
      return &detail::scalar_table();
    case Backend::Avx2:
#if defined(__x86_64__) || defined(_M_X64)
      return detail::avx2_table();
#else
      return nullptr;
#endif
    case Backend::Neon:
#if defined(__aarch64__)
      return detail::neon_table();
#else
      return nullptr;
#endif
  }
  return nullptr;
}

Backend detect_best() {
#if defined(__x86_64__) || defined(_M_X64)
  if (detail::avx2_table() != nullptr) return Backend::Avx2;
#endif
#if defined(__aarch64__)
  if (detail::neon_table() != nullptr) return Backend::Neon;
#endif
  return Backend::Scalar;
}

struct Dispatch {
  std::atomic<const KernelTable*> table{nullptr};
  std::atomic<Backend> backend{Backend::Scalar};
};

Dispatch& dispatch() {
  static Dispatch d;
  return d;
}

void ensure_resolved() {
  Dispatch& d = dispatch();
  if (d.table.load(std::memory_order_acquire) == nullptr) {
    const Backend best = detect_best();
    d.backend.store(best, std::memory_order_relaxed);
    d.table.store(table_for(best), std::memory_order_release);
  }
}

}  // namespace

std::vector<Backend> available_backends() {
  std::vector<Backend> out;
  for (Backend b : {Backend::Avx2, Backend::Neon, Backend::Scalar}) {
    if (table_for(b) != nullptr) out.push_back(b);
  }
  return out;
}

Backend active_backend() {
  ensure_resolved();
  return dispatch().backend.load(std::memory_order_relaxed);
}

const KernelTable& active() {
  ensure_resolved();
  return *dispatch().table.load(std::memory_order_acquire);
}

void set_backend(Backend b) {
  const KernelTable* t = table_for(b);
  if (t == nullptr) {
    raise(Errc::InvalidArgument,
          std::string("kernel backend not available on this machine: ") +
              backend_name(b));
  }
  dispatch().backend.store(b, std::memory_order_relaxed);
  dispatch().table.store(t, std::memory_order_release);
}

void reset_backend() {
  const Backend best = detect_best();
  dispatch().backend.store(best, std::memory_order_relaxed);
  dispatch().table.store(table_for(best), std::memory_order_release);
}

const char* backend_name(Backend b) {
  switch (b) {
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
    case Backend::Neon: return "neon";
  }
  return "unknown";
}

std::optional<Backend> backend_from_name(std::string_view name) {
  if (name == "scalar") return Backend::Scalar;
  if (name == "avx2") return Backend::Avx2;
  if (name == "neon") return Backend::Neon;
  return std::nullopt;
}

}  // namespace patchblur::kernels
