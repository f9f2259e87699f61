#pragma once

// On-disk moment-table cache. Tables dominate runtime, so they are persisted
// keyed by parameters, inflation index, precision and code version; writes
// are atomic (temp file + rename) and loads are validated before use.

#include <filesystem>
#include <optional>

#include "szegolab/moments.hpp"

namespace szegolab {

class TableStore {
public:
  TableStore() = default;  // disabled, always recomputes
  explicit TableStore(std::filesystem::path dir);

  bool enabled() const { return !dir_.empty(); }

  // Load when a valid cached file covers n_max, else compute and persist.
  MomentTable get_or_compute(const WeightParams& params, int j, int n_max,
                             const PrecCtx& ctx);

  std::filesystem::path file_for(const WeightParams& params, int j,
                                 const PrecCtx& ctx) const;

  static void save(const MomentTable& table, const std::filesystem::path& file);
  // Throws CacheCorrupt on parse failures or inconsistent content.
  static MomentTable load(const std::filesystem::path& file);

private:
  std::filesystem::path dir_;
};

}  // namespace szegolab
