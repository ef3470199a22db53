#pragma once

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "powerfree/errors.hpp"
#include "powerfree/language_spec.hpp"
#include "powerfree/rational.hpp"
#include "powerfree/words_core.hpp"

namespace powerfree {

namespace detail {

struct RunHit {
  std::int64_t period;
  std::int64_t length;  // of the violating suffix
};

// Assuming buf[0..n-1) is admissible, a forbidden subword of buf[0..n) must
// end at the last position, i.e. be a suffix.  For each candidate period p,
// grow the longest p-periodic suffix and compare its length against beta*p
// by cross multiplication.  p is bounded by n/beta, which also covers
// thresholds below 2 where periods past n/2 matter.
inline std::optional<RunHit> violating_run(const std::uint8_t* buf, std::int64_t n,
                                           std::int64_t bnum, std::int64_t bden,
                                           bool plus) {
  for (std::int64_t p = 1;; ++p) {
    std::int64_t need = p * bnum, cap = n * bden;
    if (plus ? need >= cap : need > cap) break;  // even the full word is too short
    std::int64_t i = n - p;
    while (i > 0 && buf[i - 1] == buf[i - 1 + p]) --i;
    std::int64_t run = n - i;
    if (plus ? run * bden > need : run * bden >= need) return RunHit{p, run};
  }
  return std::nullopt;
}

inline std::optional<RunHit> violating_run(const std::uint8_t* buf, std::int64_t n,
                                           const LanguageSpec& spec) {
  return violating_run(buf, n, spec.beta_num(), spec.beta_den(),
                       spec.mode() == Mode::plus);
}

struct SearchBudget {
  std::uint64_t remaining = UINT64_MAX;
  bool exhausted = false;

  bool charge() noexcept {
    if (remaining == 0) { exhausted = true; return false; }
    --remaining;
    return true;
  }
};

// Depth-first, smallest symbol first; visits each admissible word of length
// `target` exactly once, in lexicographic order.  Returns false iff the
// budget ran out.
template <class Visit>
bool dfs_words(const LanguageSpec& spec, std::vector<std::uint8_t>& buf,
               std::size_t target, SearchBudget* budget, Visit&& visit) {
  if (buf.size() == target) {
    visit(static_cast<const std::vector<std::uint8_t>&>(buf));
    return true;
  }
  for (int s = 0; s < spec.d(); ++s) {
    buf.push_back(static_cast<std::uint8_t>(s));
    if (!violating_run(buf.data(), static_cast<std::int64_t>(buf.size()), spec)) {
      if (budget && !budget->charge()) { buf.pop_back(); return false; }
      if (!dfs_words(spec, buf, target, budget, visit)) { buf.pop_back(); return false; }
    }
    buf.pop_back();
  }
  return true;
}

// True iff buf extends to an admissible word of length `target`.
inline bool dfs_reach(const LanguageSpec& spec, std::vector<std::uint8_t>& buf,
                      std::size_t target, SearchBudget* budget) {
  if (buf.size() == target) return true;
  for (int s = 0; s < spec.d(); ++s) {
    buf.push_back(static_cast<std::uint8_t>(s));
    if (!violating_run(buf.data(), static_cast<std::int64_t>(buf.size()), spec)) {
      if (budget && !budget->charge()) { buf.pop_back(); return false; }
      if (dfs_reach(spec, buf, target, budget)) { buf.pop_back(); return true; }
      if (budget && budget->exhausted) { buf.pop_back(); return false; }
    }
    buf.pop_back();
  }
  return false;
}

struct SvHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const noexcept {
    return std::hash<std::string_view>{}(s);
  }
  std::size_t operator()(const std::string& s) const noexcept {
    return std::hash<std::string_view>{}(s);
  }
};

using ByteSet = std::unordered_set<std::string, SvHash, std::equal_to<>>;

}  // namespace detail

// Incremental admissibility: feeds symbols left to right, checking only the
// suffix runs created by each append.  Agrees with is_admissible_oracle.
inline bool is_admissible(const Word& w, const LanguageSpec& spec) {
  spec.require_symbols(w);
  const auto& buf = w.data();
  for (std::size_t i = 1; i <= buf.size(); ++i)
    if (detail::violating_run(buf.data(), static_cast<std::int64_t>(i), spec))
      return false;
  return true;
}

// Witness for the first rejected prefix, nullopt when admissible.
inline std::optional<ExponentWitness> admissibility_witness(const Word& w,
                                                            const LanguageSpec& spec) {
  spec.require_symbols(w);
  const auto& buf = w.data();
  for (std::size_t i = 1; i <= buf.size(); ++i) {
    auto hit = detail::violating_run(buf.data(), static_cast<std::int64_t>(i), spec);
    if (hit) {
      auto start = i - static_cast<std::size_t>(hit->length);
      return ExponentWitness{w.subword(start, hit->length), start,
                             static_cast<int>(hit->period),
                             make_rational(hit->length, hit->period)};
    }
  }
  return std::nullopt;
}

// Search state for explicit stepwise enumeration.  Invariant: word admissible.
struct EnumState {
  LanguageSpec spec;
  Word word;

  EnumState(LanguageSpec s, Word w) : spec(std::move(s)), word(std::move(w)) {
    if (!is_admissible(word, spec))
      fail(Errc::not_in_language, "state word '" + word.str() + "' is inadmissible");
  }

  static EnumState root(const LanguageSpec& spec) { return EnumState(spec, Word{}, 0); }

 private:
  EnumState(LanguageSpec s, Word w, int) : spec(std::move(s)), word(std::move(w)) {}
  friend std::optional<EnumState> extend(const EnumState&, int);
};

// One admissible step; nullopt rejects the extension.
inline std::optional<EnumState> extend(const EnumState& state, int symbol) {
  if (!state.spec.valid_symbol(symbol)) fail(Errc::bad_symbol, "symbol outside alphabet");
  EnumState next(state.spec, state.word, 0);
  next.word.push_back(symbol);
  const auto& buf = next.word.data();
  if (detail::violating_run(buf.data(), static_cast<std::int64_t>(buf.size()), state.spec))
    return std::nullopt;
  return next;
}

// Streams every admissible word of length exactly n, lexicographically.
template <class Fn>
void for_each_word(const LanguageSpec& spec, int n, Fn&& fn) {
  if (n < 0) fail(Errc::bad_input, "negative length");
  std::vector<std::uint8_t> buf;
  buf.reserve(static_cast<std::size_t>(n));
  detail::dfs_words(spec, buf, static_cast<std::size_t>(n), nullptr,
                    [&](const std::vector<std::uint8_t>& b) { fn(Word(b)); });
}

namespace detail {

// Admissible prefixes of the given depth, lexicographic: the shard list for
// parallel runs.  Output order is fixed, so results are independent of the
// thread count.
inline std::vector<std::vector<std::uint8_t>> shard_prefixes(const LanguageSpec& spec,
                                                             std::size_t depth) {
  std::vector<std::vector<std::uint8_t>> shards;
  std::vector<std::uint8_t> buf;
  dfs_words(spec, buf, depth, nullptr,
            [&](const std::vector<std::uint8_t>& b) { shards.push_back(b); });
  return shards;
}

template <class T, class PerShard>
std::vector<T> run_sharded(const LanguageSpec& spec, int n, int threads,
                           PerShard&& per_shard) {
  std::size_t depth = std::min<std::size_t>(3, static_cast<std::size_t>(n));
  auto shards = shard_prefixes(spec, depth);
  std::vector<T> results(shards.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= shards.size()) return;
      results[i] = per_shard(shards[i]);
    }
  };
  std::vector<std::future<void>> pool;
  for (int t = 0; t < threads; ++t) pool.push_back(std::async(std::launch::async, worker));
  for (auto& f : pool) f.get();
  return results;
}

}  // namespace detail

// All admissible words of length n, lexicographic.  threads > 1 shards the
// search on fixed prefixes and merges in shard order.
inline std::vector<Word> enumerate_words(const LanguageSpec& spec, int n, int threads = 1) {
  if (n < 0) fail(Errc::bad_input, "negative length");
  std::vector<Word> out;
  if (threads <= 1 || n < 6) {
    for_each_word(spec, n, [&](const Word& w) { out.push_back(w); });
    return out;
  }
  auto parts = detail::run_sharded<std::vector<Word>>(
      spec, n, threads, [&](const std::vector<std::uint8_t>& prefix) {
        std::vector<Word> part;
        auto buf = prefix;
        detail::dfs_words(spec, buf, static_cast<std::size_t>(n), nullptr,
                          [&](const std::vector<std::uint8_t>& b) { part.emplace_back(b); });
        return part;
      });
  for (auto& p : parts)
    for (auto& w : p) out.push_back(std::move(w));
  return out;
}

inline BigInt count_words(const LanguageSpec& spec, int n, int threads = 1) {
  if (n < 0) fail(Errc::bad_input, "negative length");
  if (threads <= 1 || n < 6) {
    BigInt c = 0;
    std::vector<std::uint8_t> buf;
    detail::dfs_words(spec, buf, static_cast<std::size_t>(n), nullptr,
                      [&](const std::vector<std::uint8_t>&) { ++c; });
    return c;
  }
  auto parts = detail::run_sharded<std::uint64_t>(
      spec, n, threads, [&](const std::vector<std::uint8_t>& prefix) {
        std::uint64_t c = 0;
        auto buf = prefix;
        detail::dfs_words(spec, buf, static_cast<std::size_t>(n), nullptr,
                          [&](const std::vector<std::uint8_t>&) { ++c; });
        return c;
      });
  BigInt total = 0;
  for (auto c : parts) total += c;
  return total;
}

namespace detail {

// Marks every length-n middle of an admissible length n+2m word.  The DFS
// fixes the first m+n symbols; one early-exit probe per unmarked middle
// witnesses the remaining m.  Returns false iff the budget ran out.
inline bool mark_ext_middles(const LanguageSpec& spec, int n, int m, ByteSet& marked,
                             SearchBudget* budget) {
  std::vector<std::uint8_t> buf;
  std::size_t frontier = static_cast<std::size_t>(m) + static_cast<std::size_t>(n);
  std::size_t full = frontier + static_cast<std::size_t>(m);
  buf.reserve(full);  // keeps middle views stable across the witness probe
  std::function<bool()> walk = [&]() -> bool {
    if (buf.size() == frontier) {
      std::string_view mid(reinterpret_cast<const char*>(buf.data()) + m,
                           static_cast<std::size_t>(n));
      if (marked.find(mid) != marked.end()) return true;
      if (dfs_reach(spec, buf, full, budget)) marked.emplace(mid);
      return !(budget && budget->exhausted);
    }
    for (int s = 0; s < spec.d(); ++s) {
      buf.push_back(static_cast<std::uint8_t>(s));
      if (!violating_run(buf.data(), static_cast<std::int64_t>(buf.size()), spec)) {
        if (budget && !budget->charge()) { buf.pop_back(); return false; }
        if (!walk()) { buf.pop_back(); return false; }
      }
      buf.pop_back();
    }
    return true;
  };
  return walk();
}

}  // namespace detail

// Words of length n that stay admissible under some m-symbol extension on
// both sides.  Lexicographic.
inline std::vector<Word> ext_words(const LanguageSpec& spec, int n, int m) {
  if (n < 0 || m < 0) fail(Errc::bad_input, "negative extent");
  detail::ByteSet marked;
  detail::mark_ext_middles(spec, n, m, marked, nullptr);
  std::vector<Word> out;
  out.reserve(marked.size());
  for (const auto& bytes : marked)
    out.emplace_back(std::vector<std::uint8_t>(bytes.begin(), bytes.end()));
  std::sort(out.begin(), out.end());
  return out;
}

struct TableOptions {
  std::uint64_t node_budget = UINT64_MAX;
  std::string cache_dir;  // empty disables the on-disk cache
  int threads = 1;
};

// count(n, m) = number of length-n words extendable by m symbols on both
// sides.  Entries are present only when their fill pass completed within
// budget; budget_exceeded marks a partial table.
class CountTable {
 public:
  CountTable(LanguageSpec spec, int n_max, int m_max)
      : spec_(std::move(spec)), n_max_(n_max), m_max_(m_max) {}

  const LanguageSpec& spec() const noexcept { return spec_; }
  int n_max() const noexcept { return n_max_; }
  int m_max() const noexcept { return m_max_; }
  bool budget_exceeded() const noexcept { return budget_exceeded_; }

  const BigInt* find(int n, int m) const {
    auto it = entries_.find({n, m});
    return it == entries_.end() ? nullptr : &it->second;
  }

  const BigInt& at(int n, int m) const {
    const BigInt* p = find(n, m);
    if (!p)
      fail(Errc::missing_data, "count(" + std::to_string(n) + "," + std::to_string(m) +
                                   ") not filled");
    return *p;
  }

  // Smallest m* with count(n, m) constant for m* <= m <= m_max; null when the
  // plateau is a single point or entries are missing.
  std::optional<int> stabilization_depth(int n) const {
    if (m_max_ < 1) return std::nullopt;
    for (int m = 0; m <= m_max_; ++m)
      if (!find(n, m)) return std::nullopt;
    int m_star = m_max_;
    while (m_star > 0 && at(n, m_star - 1) == at(n, m_max_)) --m_star;
    if (m_star == m_max_) return std::nullopt;
    return m_star;
  }

  const std::map<std::pair<int, int>, BigInt>& entries() const noexcept { return entries_; }

  void set(int n, int m, BigInt c) { entries_[{n, m}] = std::move(c); }
  void mark_budget_exceeded() noexcept { budget_exceeded_ = true; }

 private:
  LanguageSpec spec_;
  int n_max_, m_max_;
  std::map<std::pair<int, int>, BigInt> entries_;
  bool budget_exceeded_ = false;
};

namespace detail {

inline std::filesystem::path cache_file(const std::string& dir) {
  return std::filesystem::path(dir) / "counts.jsonl";
}

inline bool cache_key_matches(const nlohmann::json& j, const LanguageSpec& spec) {
  return j.value("d", -1) == spec.d() && j.contains("beta") && j["beta"].is_array() &&
         j["beta"].size() == 2 && j["beta"][0] == spec.beta_num() &&
         j["beta"][1] == spec.beta_den() && j.value("mode", "") == to_cstring(spec.mode());
}

}  // namespace detail

// Cached entries for one spec.  Malformed lines are skipped: the cache is
// advisory, recomputation is always sound.
inline std::map<std::pair<int, int>, BigInt> cache_load(const std::string& dir,
                                                        const LanguageSpec& spec) {
  std::map<std::pair<int, int>, BigInt> out;
  std::ifstream in(detail::cache_file(dir));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) continue;
    if (!detail::cache_key_matches(j, spec)) continue;
    if (!j.contains("n") || !j.contains("m") || !j.contains("count")) continue;
    try {
      out[{j["n"].get<int>(), j["m"].get<int>()}] = BigInt(j["count"].get<std::string>());
    } catch (const std::runtime_error&) {}
  }
  return out;
}

// Single-writer, multi-reader: concurrent appends from several processes are
// not coordinated.
inline void cache_append(const std::string& dir, const LanguageSpec& spec,
                         const std::vector<std::pair<std::pair<int, int>, BigInt>>& rows) {
  if (rows.empty()) return;
  std::filesystem::create_directories(dir);
  std::ofstream out(detail::cache_file(dir), std::ios::app);
  if (!out) fail(Errc::bad_input, "cannot open cache in '" + dir + "'");
  for (const auto& [key, count] : rows) {
    nlohmann::json j{{"d", spec.d()},
                     {"beta", {spec.beta_num(), spec.beta_den()}},
                     {"mode", to_cstring(spec.mode())},
                     {"n", key.first},
                     {"m", key.second},
                     {"count", count.str()}};
    out << j.dump() << "\n";
  }
}

// Rewrites the cache keeping the last record per key and dropping anything
// unparseable.  Returns the surviving line count.
inline std::size_t cache_compact(const std::string& dir) {
  auto path = detail::cache_file(dir);
  std::ifstream in(path);
  std::map<std::string, std::string> keep;  // canonical key -> line
  std::vector<std::string> order;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) continue;
    if (!j.contains("d") || !j.contains("beta") || !j.contains("mode") ||
        !j.contains("n") || !j.contains("m") || !j.contains("count"))
      continue;
    std::string key = j["d"].dump() + "|" + j["beta"].dump() + "|" + j["mode"].dump() +
                      "|" + j["n"].dump() + "|" + j["m"].dump();
    if (keep.find(key) == keep.end()) order.push_back(key);
    keep[key] = j.dump();
  }
  in.close();
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) fail(Errc::bad_input, "cannot rewrite cache in '" + dir + "'");
    for (const auto& k : order) out << keep[k] << "\n";
  }
  std::filesystem::rename(tmp, path);
  return order.size();
}

// Fills count(n, m) for n <= n_max, m <= m_max, reusing cached entries and
// charging the node budget for everything recomputed.
inline CountTable count_table(const LanguageSpec& spec, int n_max, int m_max,
                              const TableOptions& opt = {}) {
  if (n_max < 0 || m_max < 0) fail(Errc::bad_input, "negative table bounds");
  CountTable table(spec, n_max, m_max);
  std::map<std::pair<int, int>, BigInt> cached;
  if (!opt.cache_dir.empty()) cached = cache_load(opt.cache_dir, spec);
  std::vector<std::pair<std::pair<int, int>, BigInt>> fresh;
  detail::SearchBudget budget{opt.node_budget};
  for (int m = 0; m <= m_max; ++m) {
    for (int n = 0; n <= n_max; ++n) {
      if (auto it = cached.find({n, m}); it != cached.end()) {
        table.set(n, m, it->second);
        continue;
      }
      if (budget.exhausted) { table.mark_budget_exceeded(); break; }
      if (m == 0 && opt.node_budget == UINT64_MAX && opt.threads > 1) {
        table.set(n, 0, count_words(spec, n, opt.threads));
        fresh.push_back({{n, 0}, table.at(n, 0)});
        continue;
      }
      detail::ByteSet marked;
      if (!detail::mark_ext_middles(spec, n, m, marked, &budget)) {
        table.mark_budget_exceeded();
        break;
      }
      BigInt c(static_cast<std::uint64_t>(marked.size()));
      table.set(n, m, c);
      fresh.push_back({{n, m}, std::move(c)});
    }
    if (table.budget_exceeded()) break;
  }
  if (!opt.cache_dir.empty()) cache_append(opt.cache_dir, spec, fresh);
  return table;
}

inline BigInt count_ext(const LanguageSpec& spec, int n, int m) {
  if (m == 0) return count_words(spec, n);
  detail::ByteSet marked;
  detail::mark_ext_middles(spec, n, m, marked, nullptr);
  return BigInt(static_cast<std::uint64_t>(marked.size()));
}

}  // namespace powerfree
