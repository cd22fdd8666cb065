// bfly: scans, S-box analysis, butterfly construction and Gold-equivalence search.
//
// Exit status: 0 when every checked claim holds, 1 on a violation or
// counterexample, 2 on usage or configuration errors.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "bfly/analysis.hpp"
#include "bfly/butterfly.hpp"
#include "bfly/equivalence.hpp"
#include "bfly/errors.hpp"
#include "bfly/harness.hpp"

namespace {

using json = nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;

struct Globals {
  unsigned n = 3;
  std::vector<unsigned> i_list;
  unsigned jobs = 1;
  std::string json_out;
  std::string csv_out;
  std::string modulus;
};

std::uint32_t parse_hex(const std::string& s, const char* what) {
  std::size_t used = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(s, &used, 16);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) throw bfly::ConfigError(std::string("bad hex value for ") + what + ": " + s);
  return static_cast<std::uint32_t>(v);
}

bfly::FieldSpec field_of(const Globals& g) {
  return g.modulus.empty() ? bfly::FieldSpec(g.n) : bfly::FieldSpec(g.n, parse_hex(g.modulus, "--modulus"));
}

std::vector<unsigned> i_values(const Globals& g) {
  if (!g.i_list.empty()) return g.i_list;
  std::vector<unsigned> all;
  for (unsigned i = 1; i < g.n; ++i) {
    if (bfly::gcd_u64(i, g.n) == 1) all.push_back(i);
  }
  return all;
}

unsigned single_i(const Globals& g) {
  if (g.i_list.size() != 1) throw bfly::ConfigError("exactly one --i is required here");
  return g.i_list.front();
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream os(path);
  if (!os) throw bfly::ReportError("cannot open " + path + " for writing");
  os << text;
}

json histogram_json(const std::map<std::uint32_t, std::uint64_t>& h) {
  json j = json::object();
  for (const auto& [k, v] : h) j[std::to_string(k)] = v;
  return j;
}

// Human-readable progress goes to stderr when stdout carries JSON or CSV.
std::ostream& info(const Globals& g) { return g.json_out == "-" || g.csv_out == "-" ? std::cerr : std::cout; }

std::string hex(std::uint32_t v) {
  std::ostringstream os;
  os << "0x" << std::hex << v;
  return os.str();
}

// --- scan ------------------------------------------------------------------

int run_scan(const Globals& g, const std::string& kind, unsigned samples, bool count_witnesses) {
  bfly::ScanConfig cfg;
  cfg.n = g.n;
  cfg.i_list = i_values(g);
  cfg.jobs = g.jobs;
  cfg.direct_samples = samples;
  cfg.count_witnesses = count_witnesses;
  if (!g.modulus.empty()) cfg.modulus = parse_hex(g.modulus, "--modulus");
  bfly::ScanReport r;
  if (kind == "theorem1") {
    r = bfly::scan_theorem1(cfg);
  } else if (kind == "conjecture") {
    r = bfly::scan_conjecture(cfg);
  } else if (kind == "open") {
    r = bfly::scan_open_butterfly(cfg);
  } else {
    r = bfly::scan_gold(cfg);
  }
  if (!g.json_out.empty()) write_text(g.json_out, bfly::report_to_json(r));
  if (!g.csv_out.empty()) {
    std::ostringstream os;
    bfly::write_report_csv(os, r);
    write_text(g.csv_out, os.str());
  }
  const auto& s = r.summary;
  info(g) << "scan " << r.scan_id << " n=" << r.n << " modulus=" << hex(r.modulus) << ": " << s.rows
            << " rows, " << s.violations << " violations";
  if (!s.boomerang_histogram.empty()) {
    info(g) << ", boomerang histogram";
    for (const auto& [k, v] : s.boomerang_histogram) info(g) << " " << k << ":" << v;
  }
  if (r.scan_id == "gold") info(g) << ", witnessed " << s.witnessed;
  info(g) << "\n";
  for (const auto& row : r.rows) {
    if (!row.ok) {
      info(g) << "  violation i=" << row.i << " alpha=" << hex(row.alpha) << " beta=" << hex(row.beta) << ": "
                << row.note << "\n";
    }
  }
  return s.claim_holds ? kOk : kViolation;
}

// --- analyze ---------------------------------------------------------------

struct AnalyzeFlags {
  std::string in;
  bool ddt = false, bct = false, walsh = false, degree = false;
};

int run_analyze(const Globals& g, AnalyzeFlags f) {
  if (f.in.empty()) throw bfly::ConfigError("analyze needs --in <sbox-file>");
  if (!f.ddt && !f.bct && !f.walsh && !f.degree) f.ddt = f.bct = f.walsh = f.degree = true;
  const bfly::Sbox s = bfly::load_sbox(f.in);
  json j;
  j["m"] = s.m();
  j["is_permutation"] = s.is_permutation();
  j["differential_uniformity"] = nullptr;
  j["boomerang_uniformity"] = nullptr;
  j["nonlinearity"] = nullptr;
  j["algebraic_degree"] = nullptr;
  j["ddt_histogram"] = nullptr;
  j["bct_histogram"] = nullptr;
  info(g) << "m=" << s.m() << " permutation=" << (s.is_permutation() ? "yes" : "no");
  if (f.ddt) {
    const auto sum = bfly::differential_summary(bfly::ddt(s, g.jobs));
    j["differential_uniformity"] = sum.max_value;
    j["ddt_histogram"] = histogram_json(sum.histogram);
    info(g) << " differential_uniformity=" << sum.max_value;
  }
  if (f.bct) {
    if (s.is_permutation()) {
      const auto sum = bfly::boomerang_summary(bfly::bct_via_inverse(s, g.jobs));
      j["boomerang_uniformity"] = sum.max_value;
      j["bct_histogram"] = sum.histogram.empty() ? json(nullptr) : histogram_json(sum.histogram);
      info(g) << " boomerang_uniformity=" << sum.max_value;
    } else {
      info(g) << " boomerang_uniformity=n/a";
    }
  }
  if (f.walsh) {
    const auto w = bfly::walsh_nonlinearity(s, g.jobs);
    j["nonlinearity"] = w.nonlinearity;
    info(g) << " nonlinearity=" << w.nonlinearity;
  }
  if (f.degree) {
    const unsigned d = bfly::algebraic_degree(s);
    j["algebraic_degree"] = d;
    info(g) << " degree=" << d;
  }
  info(g) << "\n";
  if (!g.json_out.empty()) write_text(g.json_out, j.dump(2) + "\n");
  return kOk;
}

// --- butterfly -------------------------------------------------------------

int run_build(const Globals& g, const std::string& alpha, const std::string& beta, const std::string& kind,
              const std::string& out) {
  if (out.empty()) throw bfly::ConfigError("butterfly build needs --out <sbox-file>");
  const bfly::ButterflyParams p(bfly::QuadExt(field_of(g)), single_i(g), parse_hex(alpha, "--alpha"),
                                parse_hex(beta, "--beta"));
  const bfly::Sbox s = kind == "open" ? bfly::open_butterfly(p) : bfly::closed_butterfly(p);
  const std::vector<std::string> header{
      kind + " butterfly n=" + std::to_string(g.n) + " i=" + std::to_string(p.i()) + " alpha=" + hex(p.alpha()) +
          " beta=" + hex(p.beta()) + " modulus=" + hex(p.field().modulus()),
      bfly::kPackingConvention};
  bfly::save_sbox(out, s, header);
  info(g) << "wrote " << out << " (m=" << s.m() << ", permutation=" << (s.is_permutation() ? "yes" : "no")
            << ")\n";
  return kOk;
}

int run_gamma(const Globals& g) {
  const bfly::QuadExt ext(field_of(g));
  const unsigned i = single_i(g);
  const auto rows = bfly::gamma_enumerate(ext, i, g.jobs);
  std::ostringstream os;
  os << "alpha,beta,in_gamma,phi1,phi2,phi3,phi4\n";
  std::size_t members = 0;
  for (const auto& w : rows) {
    members += w.in_gamma;
    os << hex(w.alpha) << "," << hex(w.beta) << "," << (w.in_gamma ? 1 : 0);
    for (bfly::Elem v : w.phi) os << "," << hex(v);
    os << "\n";
  }
  if (!g.csv_out.empty()) write_text(g.csv_out, os.str());
  info(g) << "n=" << g.n << " i=" << i << ": " << members << " of " << rows.size() << " pairs in Gamma\n";
  return kOk;
}

// --- equiv -----------------------------------------------------------------

int run_equiv(const Globals& g, const std::string& alpha, const std::string& beta, bool all) {
  const bfly::ButterflyParams p(bfly::QuadExt(field_of(g)), single_i(g), parse_hex(alpha, "--alpha"),
                                parse_hex(beta, "--beta"));
  const auto res = bfly::find_gold_equivalence(p, g.jobs, all);
  const bool replay = res.witness && bfly::replay_gold_witness(p, *res.witness);
  json j{{"n", g.n},
         {"i", p.i()},
         {"modulus", hex(p.field().modulus())},
         {"alpha", p.alpha()},
         {"beta", p.beta()},
         {"found", res.witness.has_value()},
         {"witness", nullptr},
         {"witness_count", all ? json(res.witness_count) : json(nullptr)},
         {"replay_ok", replay}};
  if (res.witness) {
    const auto& w = *res.witness;
    json probes = json::array();
    for (const auto& z : w.probes) probes.push_back(p.ext().index(z));
    j["witness"] = json{{"A", w.l1.a}, {"B", w.l1.b}, {"C", w.l2.a}, {"D", w.l2.b}, {"probes", probes}};
    info(g) << "witness A=" << hex(w.l1.a) << " B=" << hex(w.l1.b) << " C=" << hex(w.l2.a)
              << " D=" << hex(w.l2.b) << " replay=" << (replay ? "ok" : "FAILED");
    if (all) info(g) << " count=" << res.witness_count;
    info(g) << "\n";
  } else {
    info(g) << "no witness\n";
  }
  if (!g.json_out.empty()) write_text(g.json_out, j.dump(2) + "\n");
  return replay ? kOk : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Butterfly permutations over GF(2^n)^2: scans, analysis, constructions"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--n", g.n, "base field degree (odd for butterflies)");
  app.add_option("--i", g.i_list, "exponent parameter(s) i, gcd(i, n) = 1");
  app.add_option("--jobs", g.jobs, "worker threads")->check(CLI::Range(1u, 1024u));
  app.add_option("--json", g.json_out, "write JSON output to this path ('-' for stdout)");
  app.add_option("--csv", g.csv_out, "write CSV output to this path ('-' for stdout)");
  app.add_option("--modulus", g.modulus, "reduction polynomial in hex, including the leading bit");

  auto* scan = app.add_subcommand("scan", "run a named parameter sweep");
  std::string scan_kind;
  unsigned samples = 5;
  bool count_witnesses = false;
  scan->add_option("kind", scan_kind, "theorem1 | conjecture | open | gold")
      ->required()
      ->check(CLI::IsMember({"theorem1", "conjecture", "open", "gold"}));
  scan->add_option("--samples", samples, "direct BCT confirmations per i when 2n > 6");
  scan->add_flag("--count-witnesses", count_witnesses, "count every Gold witness");

  auto* analyze = app.add_subcommand("analyze", "DDT, BCT, Walsh and degree of an S-box file");
  AnalyzeFlags af;
  analyze->add_option("--in", af.in, "S-box file")->required();
  analyze->add_flag("--ddt", af.ddt);
  analyze->add_flag("--bct", af.bct);
  analyze->add_flag("--walsh", af.walsh);
  analyze->add_flag("--degree", af.degree);

  auto* butterfly = app.add_subcommand("butterfly", "butterfly constructions");
  butterfly->require_subcommand(1);
  auto* build = butterfly->add_subcommand("build", "write an open or closed butterfly S-box");
  std::string alpha, beta, kind = "closed", out;
  build->add_option("--alpha", alpha, "alpha in hex")->required();
  build->add_option("--beta", beta, "beta in hex")->required();
  build->add_option("--kind", kind)->check(CLI::IsMember({"open", "closed"}));
  build->add_option("--out", out, "output S-box file")->required();
  auto* gamma = butterfly->add_subcommand("gamma", "enumerate Gamma membership with phi values");

  auto* equiv = app.add_subcommand("equiv", "affine equivalence searches");
  equiv->require_subcommand(1);
  auto* gold = equiv->add_subcommand("gold", "search (A, B, C, D) with L2(L1(z)^(2^i+I)) equal to the butterfly");
  bool all_witnesses = false;
  gold->add_option("--alpha", alpha, "alpha in hex")->required();
  gold->add_option("--beta", beta, "beta in hex")->required();
  gold->add_flag("--all-witnesses", all_witnesses, "count the full witness set");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*scan) return run_scan(g, scan_kind, samples, count_witnesses);
    if (*analyze) return run_analyze(g, af);
    if (*build) return run_build(g, alpha, beta, kind, out);
    if (*gamma) return run_gamma(g);
    if (*gold) return run_equiv(g, alpha, beta, all_witnesses);
  } catch (const std::exception& e) {
    // Configuration, precondition and report errors all count as usage errors.
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
