#pragma once

#if defined(__GLIBC__)
#include <malloc.h>
#endif

namespace chemoreact {

/// Keeps freed field buffers on the heap instead of returning them to the OS. Every step
/// allocates spectra of a few hundred KB; with glibc defaults each one is a fresh mmap and
/// page-fault storm. Call once at program start; no-op off glibc.
inline void retain_field_allocations() {
#if defined(__GLIBC__)
  mallopt(M_MMAP_THRESHOLD, 1 << 30);
  mallopt(M_TRIM_THRESHOLD, 1 << 30);
#endif
}

}  // namespace chemoreact
