#include "szegolab/cache.hpp"

#include <fstream>
#include <sstream>

#include "nlohmann/json.hpp"
#include "szegolab/version.hpp"

namespace szegolab {

namespace {

using nlohmann::json;

std::string rational_field(const Rational& q) {
  std::ostringstream os;
  os << numerator(q) << "/" << denominator(q);
  return os.str();
}

Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(BigInt(s));
  return Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
}

}  // namespace

TableStore::TableStore(std::filesystem::path dir) : dir_(std::move(dir)) {
  if (!dir_.empty()) std::filesystem::create_directories(dir_);
}

std::filesystem::path TableStore::file_for(const WeightParams& params, int j,
                                           const PrecCtx& ctx) const {
  std::ostringstream name;
  name << "moments_" << params.tag() << "_j" << j << "_bits" << ctx.significand_bits
       << "_tol" << ctx.target_rel_err << "_v" << kCacheFormatVersion << ".json";
  return dir_ / name.str();
}

MomentTable TableStore::get_or_compute(const WeightParams& params, int j, int n_max,
                                       const PrecCtx& ctx) {
  if (!enabled()) return moment_table(params, j, n_max, ctx);
  std::filesystem::path file = file_for(params, j, ctx);
  if (std::filesystem::exists(file)) {
    MomentTable t = load(file);
    if (t.params == params && t.j == j && t.n_max() >= n_max) return t;
  }
  MomentTable t = moment_table(params, j, n_max, ctx);
  save(t, file);
  return t;
}

void TableStore::save(const MomentTable& table, const std::filesystem::path& file) {
  json o;
  o["schema"] = "szegolab-moment-cache";
  o["format_version"] = kCacheFormatVersion;
  o["code_version"] = kVersion;
  o["params"] = {{"A", rational_field(table.params.A)},
                 {"B", rational_field(table.params.B)},
                 {"alpha", rational_field(table.params.alpha)}};
  o["j"] = table.j;
  o["significand_bits"] = table.significand_bits;
  o["rel_tol"] = table.rel_tol;
  json entries = json::array();
  for (size_t n = 0; n < table.values.size(); ++n) {
    entries.push_back({{"n", n},
                       {"value", real_to_string(table.values[n])},
                       {"err", real_to_string(table.err_bounds[n])}});
  }
  o["entries"] = std::move(entries);

  std::filesystem::path tmp = file;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) fail(errc::cache_corrupt, "cannot write " + tmp.string());
    out << o.dump(1);
  }
  std::filesystem::rename(tmp, file);
}

MomentTable TableStore::load(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) fail(errc::cache_corrupt, "cannot open " + file.string());
  json o;
  try {
    in >> o;
  } catch (const json::exception& e) {
    fail(errc::cache_corrupt, file.string() + ": " + e.what());
  }
  try {
    if (o.at("schema") != "szegolab-moment-cache" ||
        o.at("format_version") != kCacheFormatVersion)
      fail(errc::cache_corrupt, file.string() + ": unknown schema or version");
    MomentTable t;
    t.params.A = parse_rational(o.at("params").at("A"));
    t.params.B = parse_rational(o.at("params").at("B"));
    t.params.alpha = parse_rational(o.at("params").at("alpha"));
    t.j = o.at("j");
    t.significand_bits = o.at("significand_bits");
    t.rel_tol = o.at("rel_tol");
    // entries must be at least at the precision they claim
    PrecisionScope scope(t.significand_bits);
    size_t expect = 0;
    for (const auto& e : o.at("entries")) {
      if (e.at("n") != expect)
        fail(errc::cache_corrupt, file.string() + ": entry order broken");
      t.values.push_back(real_from_string(e.at("value")));
      t.err_bounds.push_back(real_from_string(e.at("err")));
      ++expect;
    }
    if (t.values.empty()) fail(errc::cache_corrupt, file.string() + ": no entries");
    if (!t.check_log_convexity(16 * t.rel_tol + 1e-40))
      fail(errc::cache_corrupt, file.string() + ": entries violate log-convexity");
    return t;
  } catch (const json::exception& e) {
    fail(errc::cache_corrupt, file.string() + ": " + e.what());
  }
}

}  // namespace szegolab
