// Command-line surface over the library: counting, enumeration, checking,
// gluing, growth bounds, empirical measures, cache upkeep, and the final
// verification suite.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "powerfree/acceptance.hpp"
#include "powerfree/entropy.hpp"
#include "powerfree/errors.hpp"
#include "powerfree/gibbs.hpp"
#include "powerfree/gluing.hpp"
#include "powerfree/language.hpp"
#include "powerfree/structure.hpp"
#include "powerfree/words_core.hpp"

using namespace powerfree;
using nlohmann::json;

namespace {

struct Options {
  int d = 2;
  std::string beta = "2";
  bool plus = false;
  int threads = 1;
  std::string format = "json";
  std::string out;
  std::uint64_t budget = 0;  // 0 means unlimited
  std::string cache_dir;

  int n = 0, m = 0;
  int n_max = 8, m_max = 0;
  int k_max = 4;
  int j = 0;
  bool good = false;
  bool quick = false;
  std::vector<int> good_n;
  std::string word, u, v, w, x;
  std::vector<std::string> words;
};

LanguageSpec make_spec(const Options& opt) {
  return LanguageSpec(opt.d, parse_rational(opt.beta),
                      opt.plus ? Mode::plus : Mode::free);
}

json spec_json(const LanguageSpec& spec) {
  return json{{"d", spec.d()},
              {"beta", std::to_string(spec.beta_num()) + "/" +
                           std::to_string(spec.beta_den())},
              {"mode", to_cstring(spec.mode())},
              {"id", spec.id()}};
}

json witness_json(const ExponentWitness& w) {
  return json{{"subword", w.subword.str()},
              {"start", w.start},
              {"period", w.period},
              {"exponent", to_string(w.exponent)},
              {"rendered", w.render()}};
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path, std::ios::trunc);
  if (!f) fail(Errc::bad_input, "cannot write '" + out_path + "'");
  f << text;
}

std::string render_json(const json& j) { return j.dump(2) + "\n"; }

std::string resolve_cache_dir(const Options& opt, bool required) {
  if (!opt.cache_dir.empty()) return opt.cache_dir;
  if (const char* env = std::getenv("POWERFREE_CACHE_DIR"); env && *env)
    return env;
  if (required) fail(Errc::bad_input, "no cache directory configured");
  return {};
}

TableOptions table_options(const Options& opt, bool use_cache = true) {
  TableOptions t;
  if (opt.budget > 0) t.node_budget = opt.budget;
  if (use_cache) t.cache_dir = resolve_cache_dir(opt, false);
  t.threads = opt.threads;
  return t;
}

int run_count(const Options& opt) {
  LanguageSpec spec = make_spec(opt);
  CountTable table = count_table(spec, opt.n, opt.m, table_options(opt));
  std::string text;
  if (opt.format == "csv") {
    std::ostringstream csv;
    csv << "n,m,count\n";
    for (const auto& [key, count] : table.entries())
      csv << key.first << ',' << key.second << ',' << count.str() << '\n';
    text = csv.str();
  } else if (opt.format == "human") {
    std::ostringstream hum;
    for (const auto& [key, count] : table.entries())
      hum << "count(" << key.first << "," << key.second << ") = " << count.str()
          << '\n';
    if (table.budget_exceeded()) hum << "budget exhausted, table is partial\n";
    text = hum.str();
  } else {
    json entries = json::array();
    for (const auto& [key, count] : table.entries())
      entries.push_back(
          {{"n", key.first}, {"m", key.second}, {"count", count.str()}});
    text = render_json(json{{"spec", spec_json(spec)},
                            {"n_max", opt.n},
                            {"m_max", opt.m},
                            {"entries", entries},
                            {"budget_exceeded", table.budget_exceeded()}});
  }
  emit(text, opt.out);
  return table.budget_exceeded() ? 3 : 0;
}

int run_enumerate(const Options& opt) {
  LanguageSpec spec = make_spec(opt);
  if (opt.good && opt.m > 0)
    fail(Errc::bad_input, "choose either --good or --m, not both");
  std::vector<Word> words = opt.good ? enumerate_good(spec, opt.n)
                            : opt.m > 0 ? ext_words(spec, opt.n, opt.m)
                                        : enumerate_words(spec, opt.n, opt.threads);
  std::string text;
  if (opt.format == "csv") {
    std::ostringstream csv;
    csv << "word\n";
    for (const Word& w : words) csv << w.str() << '\n';
    text = csv.str();
  } else if (opt.format == "human") {
    std::ostringstream hum;
    for (const Word& w : words) hum << w.str() << '\n';
    text = hum.str();
  } else {
    json list = json::array();
    for (const Word& w : words) list.push_back(w.str());
    text = render_json(json{{"spec", spec_json(spec)},
                            {"n", opt.n},
                            {"m", opt.m},
                            {"good", opt.good},
                            {"count", words.size()},
                            {"words", list}});
  }
  emit(text, opt.out);
  return 0;
}

int run_check(const Options& opt) {
  LanguageSpec spec = make_spec(opt);
  Word w = Word::parse(opt.word);
  spec.require_symbols(w);
  auto witness = admissibility_witness(w, spec);
  json report{{"spec", spec_json(spec)},
              {"word", w.str()},
              {"admissible", !witness.has_value()}};
  if (witness) {
    report["witness"] = witness_json(*witness);
  } else {
    report["good"] = affix_power_free(w);
  }
  std::string text;
  if (opt.format == "csv") {
    std::ostringstream csv;
    csv << "word,admissible,good,witness\n";
    csv << w.str() << ',' << (witness ? "false" : "true") << ','
        << (witness ? "" : affix_power_free(w) ? "true" : "false") << ','
        << (witness ? witness->render() : "") << '\n';
    text = csv.str();
  } else if (opt.format == "human") {
    std::ostringstream hum;
    if (witness)
      hum << w.str() << " is rejected: contains " << witness->render()
          << " at position " << witness->start << '\n';
    else
      hum << w.str() << " is admissible"
          << (affix_power_free(w) ? " and has power-free affixes" : "") << '\n';
    text = hum.str();
  } else {
    text = render_json(report);
  }
  emit(text, opt.out);
  return 0;
}

int run_exponent(const Options& opt) {
  LanguageSpec spec = make_spec(opt);
  Word w = Word::parse(opt.word);
  spec.require_symbols(w);
  ExponentWitness witness = max_exponent_witness(w);
  std::string text;
  if (opt.format == "csv") {
    std::ostringstream csv;
    csv << "word,exponent,witness\n"
        << w.str() << ',' << to_string(witness.exponent) << ','
        << witness.render() << '\n';
    text = csv.str();
  } else if (opt.format == "human") {
    std::ostringstream hum;
    hum << "critical exponent of " << w.str() << " is " << to_string(witness.exponent)
        << " via " << witness.render() << " at position " << witness.start << '\n';
    text = hum.str();
  } else {
    text = render_json(json{{"spec", spec_json(spec)},
                            {"word", w.str()},
                            {"exponent", to_string(witness.exponent)},
                            {"float", to_double(witness.exponent)},
                            {"witness", witness_json(witness)}});
  }
  emit(text, opt.out);
  return 0;
}

int run_decompose(const Options& opt) {
  LanguageSpec spec = make_spec(opt);
  Word w = Word::parse(opt.word);
  Decomposition dec = decompose(w, spec);
  std::string text;
  if (opt.format == "csv") {
    std::ostringstream csv;
    csv << "prefix,core,suffix\n"
        << dec.prefix.str() << ',' << dec.core.str() << ',' << dec.suffix.str()
        << '\n';
    text = csv.str();
  } else if (opt.format == "human") {
    std::ostringstream hum;
    hum << w.str() << " = [" << dec.prefix.str() << "][" << dec.core.str() << "]["
        << dec.suffix.str() << "]\n";
    text = hum.str();
  } else {
    text = render_json(json{{"spec", spec_json(spec)},
                            {"word", w.str()},
                            {"prefix", dec.prefix.str()},
                            {"core", dec.core.str()},
                            {"suffix", dec.suffix.str()}});
  }
  emit(text, opt.out);
  return 0;
}

std::string certificate_text(const GlueCertificate& cert, const LanguageSpec& spec,
                             const std::string& format) {
  if (format == "csv") {
    std::ostringstream csv;
    csv << "result,claim,lemma,connectors\n" << cert.result.str() << ','
        << to_cstring(cert.claim) << ',' << to_cstring(cert.lemma) << ',';
    for (std::size_t i = 0; i < cert.connectors.size(); ++i)
      csv << (i ? ";" : "") << cert.connectors[i].str();
    csv << '\n';
    return csv.str();
  }
  if (format == "human") {
    std::ostringstream hum;
    hum << "glued ";
    for (std::size_t i = 0; i < cert.inputs.size(); ++i)
      hum << (i ? " + " : "") << cert.inputs[i].str();
    hum << " -> " << cert.result.str() << " (" << to_cstring(cert.claim) << ", "
        << to_cstring(cert.lemma) << ")\n";
    return hum.str();
  }
  json j = cert.to_json();
  j["spec"] = spec_json(spec);
  return render_json(j);
}

int run_glue_pair(const Options& opt) {
  LanguageSpec spec = make_spec(opt);
  GlueCertificate cert =
      glue_same_length(Word::parse(opt.v), Word::parse(opt.w), spec);
  emit(certificate_text(cert, spec, opt.format), opt.out);
  return 0;
}

int run_glue_four(const Options& opt) {
  LanguageSpec spec = make_spec(opt);
  GlueCertificate cert = glue_four(Word::parse(opt.u), Word::parse(opt.v),
                                   Word::parse(opt.w), Word::parse(opt.x), spec);
  emit(certificate_text(cert, spec, opt.format), opt.out);
  return 0;
}

int run_glue_chain(const Options& opt) {
  LanguageSpec spec = make_spec(opt);
  std::vector<Word> words;
  for (const std::string& s : opt.words) words.push_back(Word::parse(s));
  GlueCertificate cert = glue_chain(words, spec);
  emit(certificate_text(cert, spec, opt.format), opt.out);
  return 0;
}

int run_entropy(const Options& opt) {
  LanguageSpec spec = make_spec(opt);
  CountTable table = count_table(spec, opt.n_max, opt.m_max, table_options(opt));
  if (table.budget_exceeded()) {
    emit(render_json(json{{"error", "BUDGET_EXCEEDED"},
                          {"message", "table fill ran out of budget"}}),
         opt.out);
    return 3;
  }
  std::map<int, BigInt> good_counts;
  for (int n : opt.good_n)
    good_counts[n] = BigInt(enumerate_good(spec, n).size());
  Enclosure enc = make_enclosure(spec, table, good_counts);
  GapReport gap = entropy_gap_verdict(spec);
  Rational q = q_constant_bound(spec);
  CardReport card = verify_card_bounds(spec, table, enc);
  std::string text;
  if (opt.format == "csv") {
    std::ostringstream csv;
    csv << "n,m,count,required,ok,ratio\n";
    for (const auto& row : card.rows)
      csv << row.n << ',' << row.m << ',' << row.count.str() << ','
          << row.required.str() << ',' << (row.ok ? "true" : "false") << ','
          << row.ratio << '\n';
    text = csv.str();
  } else if (opt.format == "human") {
    std::ostringstream hum;
    hum << "h_lo = (1/" << enc.h_lo.a << ") log " << enc.h_lo.b.str() << " ~ "
        << enc.h_lo.value() << '\n';
    hum << "h_hi = (1/" << enc.h_hi.a << ") log " << enc.h_hi.b.str() << " ~ "
        << enc.h_hi.value() << '\n';
    hum << "gap " << (gap.holds ? "holds" : "fails") << ": "
        << gap.lhs_witness.str() << " < " << gap.rhs_witness.str() << '\n';
    hum << "Q <= " << to_string(q) << " ~ " << to_double(q) << '\n';
    hum << "floor " << (card.all_ok() ? "cleared" : "violated") << " on "
        << card.rows.size() << " rows\n";
    text = hum.str();
  } else {
    text = render_json(json{{"spec", spec_json(spec)},
                            {"enclosure", enc.to_json()},
                            {"gap", gap.to_json()},
                            {"q", {{"exact", to_string(q)}, {"float", to_double(q)}}},
                            {"card", card.to_json()}});
  }
  emit(text, opt.out);
  return 0;
}

int run_gibbs(const Options& opt) {
  LanguageSpec spec = make_spec(opt);
  std::string text;
  if (!opt.word.empty()) {
    MeasureBase base = measure_base(spec, opt.n, opt.m);
    Rational mass = empirical_measure(base, Word::parse(opt.word));
    json j{{"spec", spec_json(spec)}, {"n", opt.n},   {"m", opt.m},
           {"word", opt.word},        {"mass", to_string(mass)},
           {"float", to_double(mass)}};
    if (opt.format == "csv")
      text = "word,mass,float\n" + opt.word + "," + to_string(mass) + "," +
             std::to_string(to_double(mass)) + "\n";
    else if (opt.format == "human")
      text = "mass of " + opt.word + " = " + to_string(mass) + " ~ " +
             std::to_string(to_double(mass)) + "\n";
    else
      text = render_json(j);
  } else if (!opt.u.empty() || !opt.v.empty()) {
    TwoStepReport rep = two_step_gibbs_report(spec, opt.n, opt.m,
                                              Word::parse(opt.u), Word::parse(opt.v));
    if (opt.format == "csv")
      text = "u,v,T,mass,scaled\n" + opt.u + "," + opt.v + "," +
             std::to_string(rep.T) + "," + to_string(rep.mass) + "," +
             std::to_string(rep.scaled) + "\n";
    else if (opt.format == "human")
      text = "joint mass of " + opt.u + " .. " + opt.v + " (gap " +
             std::to_string(rep.T) + ") = " + to_string(rep.mass) + "\n";
    else
      text = render_json(rep.to_json());
  } else {
    if (opt.j < 1) fail(Errc::bad_input, "need --j, --word, or --u/--v");
    GibbsReport ratio = gibbs_ratio_report(spec, opt.n, opt.m, opt.j, opt.threads);
    EmpiricalEntropyReport ent =
        empirical_entropy(spec, opt.n, opt.m, opt.j, opt.threads);
    if (opt.format == "csv")
      text = ratio.to_csv();
    else if (opt.format == "human") {
      std::ostringstream hum;
      hum << "min mass " << to_string(ratio.min_mass) << " at " << ratio.argmin.str()
          << (ratio.all_positive ? " (all positive)" : " (zero mass present)") << '\n';
      hum << "H_" << opt.j << " = " << ent.entropy << ", per symbol "
          << ent.per_symbol << ", support " << ent.support.str() << '\n';
      text = hum.str();
    } else {
      text = render_json(
          json{{"ratio", ratio.to_json()}, {"entropy", ent.to_json()}});
    }
  }
  emit(text, opt.out);
  return 0;
}

int run_verify(const Options& opt) {
  auto scale = opt.quick ? acceptance::Scale::quick() : acceptance::Scale::full();
  if (opt.threads > 0) scale.threads = opt.threads;
  auto results = acceptance::run_all(scale);
  if (opt.out.empty()) return acceptance::report(results, std::cout);
  std::ostringstream buffer;
  int rc = acceptance::report(results, buffer);
  emit(buffer.str(), opt.out);
  return rc;
}

int run_cache_inspect(const Options& opt) {
  std::string dir = resolve_cache_dir(opt, true);
  std::ifstream in(std::filesystem::path(dir) / "counts.jsonl");
  std::map<std::string, std::uint64_t> per_spec;
  std::uint64_t total = 0, malformed = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("d") ||
        !j.contains("beta") || !j.contains("mode")) {
      ++malformed;
      continue;
    }
    std::string beta = j["beta"].is_array() && j["beta"].size() == 2
                           ? j["beta"][0].dump() + "/" + j["beta"][1].dump()
                           : j["beta"].dump();
    std::string key =
        "d" + j["d"].dump() + "-b" + beta + "-" + j["mode"].get<std::string>();
    ++per_spec[key];
    ++total;
  }
  json specs = json::object();
  for (const auto& [key, count] : per_spec) specs[key] = count;
  std::string text;
  if (opt.format == "human") {
    std::ostringstream hum;
    hum << total << " records in " << dir << " (" << malformed << " malformed)\n";
    for (const auto& [key, count] : per_spec)
      hum << "  " << key << ": " << count << '\n';
    text = hum.str();
  } else if (opt.format == "csv") {
    std::ostringstream csv;
    csv << "spec,records\n";
    for (const auto& [key, count] : per_spec) csv << key << ',' << count << '\n';
    text = csv.str();
  } else {
    text = render_json(json{{"dir", dir},
                            {"records", total},
                            {"malformed", malformed},
                            {"specs", specs}});
  }
  emit(text, opt.out);
  return 0;
}

int run_cache_compact(const Options& opt) {
  std::string dir = resolve_cache_dir(opt, true);
  std::size_t kept = cache_compact(dir);
  emit(render_json(json{{"dir", dir}, {"kept", kept}}), opt.out);
  return 0;
}

void add_spec_flags(CLI::App* cmd, Options& opt) {
  cmd->add_option("--d", opt.d, "alphabet size")->check(CLI::Range(2, 36));
  cmd->add_option("--beta", opt.beta, "threshold exponent, P or P/Q");
  cmd->add_flag("--plus", opt.plus, "forbid only exponents strictly above the threshold");
}

void add_io_flags(CLI::App* cmd, Options& opt) {
  cmd->add_option("--format", opt.format, "json, csv, or human")
      ->check(CLI::IsMember({"json", "csv", "human"}));
  cmd->add_option("--out", opt.out, "write the report here instead of stdout");
  cmd->add_option("--threads", opt.threads, "enumeration threads")
      ->check(CLI::Range(1, 256));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact toolkit for power-free languages"};
  app.require_subcommand(1);
  Options opt;

  CLI::App* count = app.add_subcommand("count", "fill the count table");
  add_spec_flags(count, opt);
  add_io_flags(count, opt);
  count->add_option("--n", opt.n, "largest length")->required();
  count->add_option("--m", opt.m, "largest extension depth");
  count->add_option("--budget", opt.budget, "search-node budget, 0 = unlimited");
  count->add_option("--cache-dir", opt.cache_dir, "count cache directory");

  CLI::App* enumerate = app.add_subcommand("enumerate", "list words");
  add_spec_flags(enumerate, opt);
  add_io_flags(enumerate, opt);
  enumerate->add_option("--n", opt.n, "word length")->required();
  enumerate->add_option("--m", opt.m, "keep words extendable this far");
  enumerate->add_flag("--good", opt.good, "keep only words with power-free affixes");

  CLI::App* check = app.add_subcommand("check", "test one word for admissibility");
  add_spec_flags(check, opt);
  add_io_flags(check, opt);
  check->add_option("--word", opt.word, "the word to test")->required();

  CLI::App* exponent = app.add_subcommand("exponent", "critical exponent of a word");
  add_spec_flags(exponent, opt);
  add_io_flags(exponent, opt);
  exponent->add_option("--word", opt.word, "the word to measure")->required();

  CLI::App* decomp = app.add_subcommand("decompose", "split into blocks and a good core");
  add_spec_flags(decomp, opt);
  add_io_flags(decomp, opt);
  decomp->add_option("--word", opt.word, "the word to split")->required();

  CLI::App* glue = app.add_subcommand("glue", "join good words with connectors");
  CLI::App* pair = glue->add_subcommand("pair", "join two equal-length good words");
  add_spec_flags(pair, opt);
  add_io_flags(pair, opt);
  pair->add_option("--v", opt.v, "left word")->required();
  pair->add_option("--w", opt.w, "right word")->required();
  CLI::App* four = glue->add_subcommand("four", "join four good words");
  add_spec_flags(four, opt);
  add_io_flags(four, opt);
  four->add_option("--u", opt.u, "first word")->required();
  four->add_option("--v", opt.v, "second word")->required();
  four->add_option("--w", opt.w, "third word")->required();
  four->add_option("--x", opt.x, "fourth word")->required();
  CLI::App* chain = glue->add_subcommand("chain", "join any number of good words");
  add_spec_flags(chain, opt);
  add_io_flags(chain, opt);
  chain->add_option("--words", opt.words, "equal-length good words")
      ->required()
      ->expected(-1);
  glue->require_subcommand(1);

  CLI::App* entropy = app.add_subcommand("entropy", "growth-rate bounds and checks");
  add_spec_flags(entropy, opt);
  add_io_flags(entropy, opt);
  entropy->add_option("--n-max", opt.n_max, "largest counted length");
  entropy->add_option("--m-max", opt.m_max, "largest extension depth");
  entropy->add_option("--good-n", opt.good_n, "lengths whose good counts sharpen h_lo")
      ->expected(-1);
  entropy->add_option("--budget", opt.budget, "search-node budget, 0 = unlimited");
  entropy->add_option("--cache-dir", opt.cache_dir, "count cache directory");

  CLI::App* gibbs = app.add_subcommand("gibbs", "empirical measure reports");
  add_spec_flags(gibbs, opt);
  add_io_flags(gibbs, opt);
  gibbs->add_option("--n", opt.n, "window length")->required();
  gibbs->add_option("--m", opt.m, "extension depth of the window set");
  gibbs->add_option("--j", opt.j, "cylinder length for ratio and entropy reports");
  gibbs->add_option("--word", opt.word, "single cylinder to weigh");
  gibbs->add_option("--u", opt.u, "left word of a joint cylinder");
  gibbs->add_option("--v", opt.v, "right word of a joint cylinder");

  CLI::App* verify = app.add_subcommand("verify", "run the verification suite");
  verify->add_flag("--quick", opt.quick, "reduced scale");
  verify->add_option("--threads", opt.threads, "enumeration threads")
      ->check(CLI::Range(1, 256));
  verify->add_option("--out", opt.out, "write the report here instead of stdout");

  CLI::App* cache = app.add_subcommand("cache", "inspect or compact the count cache");
  CLI::App* inspect = cache->add_subcommand("inspect", "summarize cache records");
  inspect->add_option("--cache-dir", opt.cache_dir, "count cache directory");
  add_io_flags(inspect, opt);
  CLI::App* compact = cache->add_subcommand("compact", "drop stale duplicate records");
  compact->add_option("--cache-dir", opt.cache_dir, "count cache directory");
  compact->add_option("--out", opt.out, "write the report here instead of stdout");
  cache->require_subcommand(1);

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(count)) return run_count(opt);
    if (app.got_subcommand(enumerate)) return run_enumerate(opt);
    if (app.got_subcommand(check)) return run_check(opt);
    if (app.got_subcommand(exponent)) return run_exponent(opt);
    if (app.got_subcommand(decomp)) return run_decompose(opt);
    if (app.got_subcommand(glue)) {
      if (glue->got_subcommand(pair)) return run_glue_pair(opt);
      if (glue->got_subcommand(four)) return run_glue_four(opt);
      return run_glue_chain(opt);
    }
    if (app.got_subcommand(entropy)) return run_entropy(opt);
    if (app.got_subcommand(gibbs)) return run_gibbs(opt);
    if (app.got_subcommand(verify)) return run_verify(opt);
    if (app.got_subcommand(cache)) {
      if (cache->got_subcommand(inspect)) return run_cache_inspect(opt);
      return run_cache_compact(opt);
    }
  } catch (const Error& e) {
    std::string msg = e.what();
    std::string prefix = std::string(to_cstring(e.code())) + ": ";
    if (msg.rfind(prefix, 0) == 0) msg = msg.substr(prefix.size());
    std::cout << render_json(json{{"error", to_cstring(e.code())}, {"message", msg}});
    return e.code() == Errc::budget_exceeded ? 3 : 2;
  } catch (const std::exception& e) {
    std::cout << render_json(json{{"error", "INTERNAL"}, {"message", e.what()}});
    return 2;
  }
  return 0;
}
