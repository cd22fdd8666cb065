#include "bfly/harness.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "bfly/analysis.hpp"
#include "bfly/butterfly.hpp"
#include "bfly/equivalence.hpp"
#include "bfly/errors.hpp"
#include "bfly/parallel.hpp"

namespace bfly {

namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

QuadExt make_ext(const ScanConfig& cfg) {
  if (cfg.n < 1 || cfg.n % 2 == 0 || cfg.n > 9) throw ConfigError("scans need odd n <= 9");
  return QuadExt(cfg.modulus ? FieldSpec(cfg.n, *cfg.modulus) : FieldSpec(cfg.n));
}

ScanReport make_report(const std::string& id, const ScanConfig& cfg, const QuadExt& ext,
                       const std::string& grid) {
  for (unsigned i : cfg.i_list) {
    if (i < 1 || gcd_u64(i, cfg.n) != 1) {
      throw ConfigError("i=" + std::to_string(i) + " is not coprime to n=" + std::to_string(cfg.n));
    }
  }
  ScanReport r;
  r.scan_id = id;
  r.n = cfg.n;
  r.modulus = ext.base().modulus();
  r.i_list = cfg.i_list;
  std::sort(r.i_list.begin(), r.i_list.end());
  r.i_list.erase(std::unique(r.i_list.begin(), r.i_list.end()), r.i_list.end());
  r.grid = grid;
  return r;
}

struct Cell {
  unsigned i;
  Elem alpha;
  Elem beta;
};

// (i, alpha, beta) over alpha, beta != 0, keeping members of Gamma or the rest.
std::vector<Cell> grid_cells(const QuadExt& ext, const std::vector<unsigned>& i_list, int gamma_filter,
                             unsigned jobs) {
  std::vector<Cell> cells;
  for (unsigned i : i_list) {
    for (const auto& g : gamma_enumerate(ext, i, jobs)) {
      if (gamma_filter == 0 || (gamma_filter > 0) == g.in_gamma) cells.push_back({i, g.alpha, g.beta});
    }
  }
  return cells;
}

void finish(ScanReport& r) {
  std::sort(r.rows.begin(), r.rows.end(), [](const ScanRow& a, const ScanRow& b) {
    return std::tie(a.i, a.alpha, a.beta) < std::tie(b.i, b.alpha, b.beta);
  });
  r.summary = recompute_summary(r);
}

std::string join(const std::vector<std::string>& parts) {
  std::string s;
  for (const auto& p : parts) {
    if (!s.empty()) s += "; ";
    s += p;
  }
  return s;
}

// Evenly spread positions, all of them when count >= size.
std::set<std::size_t> sample_positions(std::size_t size, std::size_t count) {
  std::set<std::size_t> out;
  if (count >= size) {
    for (std::size_t k = 0; k < size; ++k) out.insert(k);
    return out;
  }
  for (std::size_t k = 0; k < count; ++k) out.insert(k * size / count);
  return out;
}

}  // namespace

ScanSummary recompute_summary(const ScanReport& r) {
  ScanSummary s;
  s.rows = r.rows.size();
  s.empty_domain = r.rows.empty();
  for (const auto& row : r.rows) {
    if (!row.ok) ++s.violations;
    if (row.in_gamma) ++s.in_gamma_rows;
    if (row.is_permutation) ++s.permutations;
    if (row.witness && row.witness->replay_ok) ++s.witnessed;
    if (row.boomerang_uniformity) ++s.boomerang_histogram[*row.boomerang_uniformity];
  }
  s.claim_holds = s.violations == 0;
  return s;
}

ScanReport scan_theorem1(const ScanConfig& cfg) {
  const QuadExt ext = make_ext(cfg);
  ScanReport r = make_report("theorem1", cfg, ext, "(alpha, beta) in Gamma");
  const auto t0 = Clock::now();
  const auto cells = grid_cells(ext, r.i_list, +1, cfg.jobs);
  r.timing["gamma"] = seconds_since(t0);

  const bool direct_only = ext.m() <= 6;
  std::set<std::size_t> sampled;
  if (!direct_only) {
    std::size_t begin = 0;
    while (begin < cells.size()) {
      std::size_t end = begin;
      while (end < cells.size() && cells[end].i == cells[begin].i) ++end;
      for (std::size_t k : sample_positions(end - begin, cfg.direct_samples)) sampled.insert(begin + k);
      begin = end;
    }
  }
  const std::uint32_t expected_nl = (std::uint32_t{1} << (2 * cfg.n - 1)) - (std::uint32_t{1} << cfg.n);

  const auto t1 = Clock::now();
  r.rows.resize(cells.size());
  parallel_for(0, cells.size(), cfg.jobs, [&](std::size_t k) {
    const Cell& c = cells[k];
    const ButterflyParams p(ext, c.i, c.alpha, c.beta);
    const Sbox v = closed_butterfly(p);
    ScanRow& row = r.rows[k];
    row.i = c.i;
    row.alpha = c.alpha;
    row.beta = c.beta;
    row.in_gamma = true;
    row.is_permutation = v.is_permutation();
    std::vector<std::string> issues;
    if (!row.is_permutation) {
      row.ok = false;
      row.note = "not a permutation";
      return;
    }
    row.differential_uniformity = differential_uniformity(v);
    row.algebraic_degree = algebraic_degree(v);
    row.nonlinearity = walsh_nonlinearity(v).nonlinearity;
    if (direct_only) {
      row.boomerang_uniformity = boomerang_uniformity(v);
      row.boomerang_method = "direct";
    } else {
      try {
        row.boomerang_uniformity = quadratic_boomerang4_check(v) ? 4u : 0u;
        row.boomerang_method = "criterion";
        if (*row.boomerang_uniformity == 0) {
          row.boomerang_uniformity.reset();
          issues.push_back("image criterion fails");
        }
      } catch (const CriterionPreconditionError& e) {
        issues.push_back(e.what());
      }
      if (sampled.count(k)) {
        const std::uint32_t direct = boomerang_uniformity(v);
        if (row.boomerang_uniformity && direct != *row.boomerang_uniformity) {
          issues.push_back("direct BCT gives " + std::to_string(direct));
        }
        row.boomerang_uniformity = direct;
        row.boomerang_method = row.boomerang_method.empty() ? "direct" : "criterion+direct";
      }
    }
    if (row.differential_uniformity != 4u) issues.push_back("differential uniformity != 4");
    if (row.boomerang_uniformity != 4u) issues.push_back("boomerang uniformity != 4");
    if (row.nonlinearity != expected_nl) issues.push_back("nonlinearity != " + std::to_string(expected_nl));
    if (row.algebraic_degree != 2u) issues.push_back("degree != 2");
    row.ok = issues.empty();
    row.note = join(issues);
  });
  r.timing["sweep"] = seconds_since(t1);
  finish(r);
  return r;
}

ScanReport scan_conjecture(const ScanConfig& cfg) {
  const QuadExt ext = make_ext(cfg);
  ScanReport r = make_report("conjecture", cfg, ext, "alpha beta != 0, (alpha, beta) not in Gamma");
  const auto t0 = Clock::now();
  const auto cells = grid_cells(ext, r.i_list, -1, cfg.jobs);
  r.timing["gamma"] = seconds_since(t0);
  const bool direct = ext.m() <= 6;

  const auto t1 = Clock::now();
  r.rows.resize(cells.size());
  parallel_for(0, cells.size(), cfg.jobs, [&](std::size_t k) {
    const Cell& c = cells[k];
    const ButterflyParams p(ext, c.i, c.alpha, c.beta);
    const Sbox v = closed_butterfly(p);
    ScanRow& row = r.rows[k];
    row.i = c.i;
    row.alpha = c.alpha;
    row.beta = c.beta;
    row.in_gamma = false;
    row.is_permutation = v.is_permutation();
    row.ok = true;
    if (!row.is_permutation) return;
    row.differential_uniformity = differential_uniformity(v);
    if (direct) {
      row.boomerang_uniformity = boomerang_uniformity(v);
      row.boomerang_method = "direct";
    } else if (*row.differential_uniformity == 4) {
      row.boomerang_method = "criterion";
      if (quadratic_boomerang4_check(v)) {
        row.boomerang_uniformity = 4;
      } else {
        row.note = "boomerang uniformity > 4 by image criterion";
      }
    } else {
      row.note = "differential uniformity " + std::to_string(*row.differential_uniformity) +
                 " rules out boomerang uniformity 4";
    }
    if (row.boomerang_uniformity == 4u) {
      row.ok = false;
      row.note = "permutation with boomerang uniformity 4 outside Gamma";
    }
  });
  r.timing["sweep"] = seconds_since(t1);
  finish(r);
  return r;
}

ScanReport scan_open_butterfly(const ScanConfig& cfg) {
  const QuadExt ext = make_ext(cfg);
  ScanReport r = make_report("open", cfg, ext, "alpha beta != 0");
  const auto t0 = Clock::now();
  const auto cells = grid_cells(ext, r.i_list, 0, cfg.jobs);
  r.timing["gamma"] = seconds_since(t0);

  const auto t1 = Clock::now();
  r.rows.resize(cells.size());
  parallel_for(0, cells.size(), cfg.jobs, [&](std::size_t k) {
    const Cell& c = cells[k];
    const ButterflyParams p(ext, c.i, c.alpha, c.beta);
    const Sbox h = open_butterfly(p);
    ScanRow& row = r.rows[k];
    row.i = c.i;
    row.alpha = c.alpha;
    row.beta = c.beta;
    row.in_gamma = gamma_membership(p).in_gamma;
    row.is_permutation = h.is_permutation();
    if (!row.is_permutation) {
      row.ok = false;
      row.note = "open butterfly is not a permutation";
      return;
    }
    row.differential_uniformity = differential_uniformity(h);
    row.boomerang_uniformity = boomerang_uniformity(h);
    row.boomerang_method = "direct";
    row.nonlinearity = walsh_nonlinearity(h).nonlinearity;
    row.algebraic_degree = algebraic_degree(h);
    row.ok = *row.boomerang_uniformity != 4;
    if (!row.ok) row.note = "open butterfly with boomerang uniformity 4";
  });
  r.timing["sweep"] = seconds_since(t1);
  finish(r);
  return r;
}

ScanReport scan_gold(const ScanConfig& cfg) {
  const QuadExt ext = make_ext(cfg);
  ScanReport r = make_report("gold", cfg, ext, "(alpha, beta) in Gamma");
  const auto t0 = Clock::now();
  const auto cells = grid_cells(ext, r.i_list, +1, cfg.jobs);
  r.timing["gamma"] = seconds_since(t0);

  const auto t1 = Clock::now();
  r.rows.resize(cells.size());
  parallel_for(0, cells.size(), cfg.jobs, [&](std::size_t k) {
    const Cell& c = cells[k];
    const ButterflyParams p(ext, c.i, c.alpha, c.beta);
    ScanRow& row = r.rows[k];
    row.i = c.i;
    row.alpha = c.alpha;
    row.beta = c.beta;
    row.in_gamma = true;
    row.is_permutation = closed_butterfly(p).is_permutation();
    const GoldSearchResult res = find_gold_equivalence(p, 1, cfg.count_witnesses);
    if (!res.witness) {
      row.ok = false;
      row.note = "no Gold witness";
      return;
    }
    WitnessRecord w;
    w.a = res.witness->l1.a;
    w.b = res.witness->l1.b;
    w.c = res.witness->l2.a;
    w.d = res.witness->l2.b;
    w.count = res.witness->witness_count;
    w.replay_ok = replay_gold_witness(p, *res.witness);
    row.witness = w;
    row.ok = w.replay_ok;
    if (!row.ok) row.note = "witness does not replay";
  });
  r.timing["search"] = seconds_since(t1);
  finish(r);
  return r;
}

// --- serialization --------------------------------------------------------

namespace {

template <typename T>
json opt(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <typename T>
std::optional<T> get_opt(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

json summary_json(const ScanSummary& s) {
  json h = json::object();
  for (const auto& [k, v] : s.boomerang_histogram) h[std::to_string(k)] = v;
  return json{{"rows", s.rows},
              {"violations", s.violations},
              {"in_gamma_rows", s.in_gamma_rows},
              {"permutations", s.permutations},
              {"witnessed", s.witnessed},
              {"empty_domain", s.empty_domain},
              {"claim_holds", s.claim_holds},
              {"boomerang_histogram", h}};
}

ScanSummary summary_from_json(const json& j) {
  ScanSummary s;
  s.rows = j.at("rows").get<std::uint64_t>();
  s.violations = j.at("violations").get<std::uint64_t>();
  s.in_gamma_rows = j.at("in_gamma_rows").get<std::uint64_t>();
  s.permutations = j.at("permutations").get<std::uint64_t>();
  s.witnessed = j.at("witnessed").get<std::uint64_t>();
  s.empty_domain = j.at("empty_domain").get<bool>();
  s.claim_holds = j.at("claim_holds").get<bool>();
  for (const auto& [k, v] : j.at("boomerang_histogram").items()) {
    s.boomerang_histogram[static_cast<std::uint32_t>(std::stoul(k))] = v.get<std::uint64_t>();
  }
  return s;
}

json row_json(const ScanRow& row) {
  json w = nullptr;
  if (row.witness) {
    w = json{{"A", row.witness->a},         {"B", row.witness->b},
             {"C", row.witness->c},         {"D", row.witness->d},
             {"count", opt(row.witness->count)}, {"replay_ok", row.witness->replay_ok}};
  }
  return json{{"i", row.i},
              {"alpha", row.alpha},
              {"beta", row.beta},
              {"in_gamma", row.in_gamma},
              {"is_permutation", row.is_permutation},
              {"differential_uniformity", opt(row.differential_uniformity)},
              {"boomerang_uniformity", opt(row.boomerang_uniformity)},
              {"boomerang_method", row.boomerang_method},
              {"nonlinearity", opt(row.nonlinearity)},
              {"algebraic_degree", opt(row.algebraic_degree)},
              {"witness", w},
              {"ok", row.ok},
              {"note", row.note}};
}

ScanRow row_from_json(const json& j) {
  ScanRow row;
  row.i = j.at("i").get<unsigned>();
  row.alpha = j.at("alpha").get<Elem>();
  row.beta = j.at("beta").get<Elem>();
  row.in_gamma = j.at("in_gamma").get<bool>();
  row.is_permutation = j.at("is_permutation").get<bool>();
  row.differential_uniformity = get_opt<std::uint32_t>(j, "differential_uniformity");
  row.boomerang_uniformity = get_opt<std::uint32_t>(j, "boomerang_uniformity");
  row.boomerang_method = j.at("boomerang_method").get<std::string>();
  row.nonlinearity = get_opt<std::uint32_t>(j, "nonlinearity");
  row.algebraic_degree = get_opt<unsigned>(j, "algebraic_degree");
  if (!j.at("witness").is_null()) {
    const json& w = j.at("witness");
    row.witness = WitnessRecord{w.at("A").get<Elem>(), w.at("B").get<Elem>(), w.at("C").get<Elem>(),
                                w.at("D").get<Elem>(), get_opt<std::uint64_t>(w, "count"),
                                w.at("replay_ok").get<bool>()};
  }
  row.ok = j.at("ok").get<bool>();
  row.note = j.at("note").get<std::string>();
  return row;
}

void check_schema(int version) {
  if (version != kReportSchemaVersion) {
    throw ReportError("report schema version " + std::to_string(version) + " is not supported (expected " +
                      std::to_string(kReportSchemaVersion) + ")");
  }
}

void validate_loaded(ScanReport& r, const std::optional<ScanSummary>& stored) {
  const bool sorted = std::is_sorted(r.rows.begin(), r.rows.end(), [](const ScanRow& a, const ScanRow& b) {
    return std::tie(a.i, a.alpha, a.beta) < std::tie(b.i, b.alpha, b.beta);
  });
  if (!sorted) throw ReportError("report rows are not sorted by (i, alpha, beta)");
  r.summary = recompute_summary(r);
  if (stored && !(*stored == r.summary)) throw ReportError("stored summary disagrees with the rows");
}

ScanReport report_from_json(const json& j) {
  ScanReport r;
  r.schema_version = j.at("schema_version").get<int>();
  check_schema(r.schema_version);
  r.scan_id = j.at("scan_id").get<std::string>();
  const json& h = j.at("header");
  r.n = h.at("n").get<unsigned>();
  r.modulus = static_cast<std::uint32_t>(std::stoul(h.at("modulus").get<std::string>(), nullptr, 16));
  r.i_list = h.at("i_list").get<std::vector<unsigned>>();
  r.grid = h.at("grid").get<std::string>();
  r.packing = h.at("packing").get<std::string>();
  for (const auto& row : j.at("rows")) r.rows.push_back(row_from_json(row));
  if (j.contains("timing")) {
    for (const auto& [k, v] : j.at("timing").items()) r.timing[k] = v.get<double>();
  }
  validate_loaded(r, summary_from_json(j.at("summary")));
  return r;
}

std::string hex(std::uint32_t v) {
  std::ostringstream os;
  os << "0x" << std::hex << v;
  return os.str();
}

// --- CSV ------------------------------------------------------------------

const std::vector<std::string> kCsvColumns{
    "i",       "alpha",   "beta",    "in_gamma", "is_permutation", "differential_uniformity",
    "boomerang_uniformity", "boomerang_method", "nonlinearity", "algebraic_degree",
    "witness_a", "witness_b", "witness_c", "witness_d", "witness_count", "replay_ok", "ok", "note"};

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::vector<std::string> csv_split(const std::string& line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t k = 0; k < line.size(); ++k) {
    const char ch = line[k];
    if (quoted) {
      if (ch == '"' && k + 1 < line.size() && line[k + 1] == '"') {
        out.back() += '"';
        ++k;
      } else if (ch == '"') {
        quoted = false;
      } else {
        out.back() += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.emplace_back();
    } else {
      out.back() += ch;
    }
  }
  if (quoted) throw ReportError("unterminated quote in CSV row");
  return out;
}

template <typename T>
std::string opt_str(const std::optional<T>& v) {
  return v ? std::to_string(*v) : std::string();
}

template <typename T>
T parse_num(const std::string& s, const char* what) {
  T v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ReportError(std::string("bad CSV value for ") + what + ": '" + s + "'");
  }
  return v;
}

template <typename T>
std::optional<T> parse_opt(const std::string& s, const char* what) {
  if (s.empty()) return std::nullopt;
  return parse_num<T>(s, what);
}

bool parse_bool(const std::string& s, const char* what) {
  if (s == "1" || s == "true") return true;
  if (s == "0" || s == "false") return false;
  throw ReportError(std::string("bad CSV boolean for ") + what + ": '" + s + "'");
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

ScanReport report_from_csv(std::istream& is) {
  ScanReport r;
  std::map<std::string, std::string> meta;
  std::string line;
  bool have_header = false;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      std::string key = line.substr(1, eq - 1);
      key.erase(0, key.find_first_not_of(' '));
      meta[key] = line.substr(eq + 1);
      continue;
    }
    const auto f = csv_split(line);
    if (!have_header) {
      if (f != kCsvColumns) throw ReportError("unexpected CSV column header");
      have_header = true;
      continue;
    }
    if (f.size() != kCsvColumns.size()) throw ReportError("CSV row has " + std::to_string(f.size()) + " fields");
    ScanRow row;
    row.i = parse_num<unsigned>(f[0], "i");
    row.alpha = parse_num<Elem>(f[1], "alpha");
    row.beta = parse_num<Elem>(f[2], "beta");
    row.in_gamma = parse_bool(f[3], "in_gamma");
    row.is_permutation = parse_bool(f[4], "is_permutation");
    row.differential_uniformity = parse_opt<std::uint32_t>(f[5], "differential_uniformity");
    row.boomerang_uniformity = parse_opt<std::uint32_t>(f[6], "boomerang_uniformity");
    row.boomerang_method = f[7];
    row.nonlinearity = parse_opt<std::uint32_t>(f[8], "nonlinearity");
    row.algebraic_degree = parse_opt<unsigned>(f[9], "algebraic_degree");
    if (!f[10].empty()) {
      row.witness = WitnessRecord{parse_num<Elem>(f[10], "witness_a"), parse_num<Elem>(f[11], "witness_b"),
                                  parse_num<Elem>(f[12], "witness_c"), parse_num<Elem>(f[13], "witness_d"),
                                  parse_opt<std::uint64_t>(f[14], "witness_count"),
                                  parse_bool(f[15], "replay_ok")};
    }
    row.ok = parse_bool(f[16], "ok");
    row.note = f[17];
    r.rows.push_back(std::move(row));
  }
  if (!meta.count("schema_version")) throw ReportError("CSV report has no schema_version line");
  r.schema_version = parse_num<int>(meta["schema_version"], "schema_version");
  check_schema(r.schema_version);
  if (!have_header) throw ReportError("CSV report has no column header");
  for (const char* key : {"scan_id", "n", "modulus", "i_list", "grid", "packing"}) {
    if (!meta.count(key)) throw ReportError(std::string("CSV report has no ") + key + " line");
  }
  r.scan_id = meta["scan_id"];
  r.n = parse_num<unsigned>(meta["n"], "n");
  r.modulus = static_cast<std::uint32_t>(std::stoul(meta["modulus"], nullptr, 16));
  std::stringstream il(meta["i_list"]);
  for (std::string tok; std::getline(il, tok, ';');) {
    if (!tok.empty()) r.i_list.push_back(parse_num<unsigned>(tok, "i_list"));
  }
  r.grid = meta["grid"];
  r.packing = meta["packing"];
  for (const auto& [k, v] : meta) {
    if (k.rfind("timing.", 0) == 0) r.timing[k.substr(7)] = std::stod(v);
  }
  validate_loaded(r, std::nullopt);
  return r;
}

}  // namespace

std::string report_to_json(const ScanReport& r, bool include_timing) {
  json rows = json::array();
  for (const auto& row : r.rows) rows.push_back(row_json(row));
  json j{{"schema_version", r.schema_version},
         {"scan_id", r.scan_id},
         {"header", json{{"n", r.n},
                         {"modulus", hex(r.modulus)},
                         {"i_list", r.i_list},
                         {"grid", r.grid},
                         {"packing", r.packing}}},
         {"rows", rows},
         {"summary", summary_json(recompute_summary(r))}};
  if (include_timing) {
    json t = json::object();
    for (const auto& [k, v] : r.timing) t[k] = v;
    j["timing"] = t;
  }
  return j.dump(2) + "\n";
}

void write_report_json(std::ostream& os, const ScanReport& r, bool include_timing) {
  os << report_to_json(r, include_timing);
}

void write_report_csv(std::ostream& os, const ScanReport& r) {
  os << "# schema_version=" << r.schema_version << "\n";
  os << "# scan_id=" << r.scan_id << "\n";
  os << "# n=" << r.n << "\n";
  os << "# modulus=" << hex(r.modulus) << "\n";
  os << "# i_list=";
  for (std::size_t k = 0; k < r.i_list.size(); ++k) os << (k ? ";" : "") << r.i_list[k];
  os << "\n# grid=" << r.grid << "\n";
  os << "# packing=" << r.packing << "\n";
  for (const auto& [k, v] : r.timing) os << "# timing." << k << "=" << format_double(v) << "\n";
  for (std::size_t k = 0; k < kCsvColumns.size(); ++k) os << (k ? "," : "") << kCsvColumns[k];
  os << "\n";
  for (const auto& row : r.rows) {
    const auto& w = row.witness;
    const std::vector<std::string> f{
        std::to_string(row.i),
        std::to_string(row.alpha),
        std::to_string(row.beta),
        row.in_gamma ? "1" : "0",
        row.is_permutation ? "1" : "0",
        opt_str(row.differential_uniformity),
        opt_str(row.boomerang_uniformity),
        row.boomerang_method,
        opt_str(row.nonlinearity),
        opt_str(row.algebraic_degree),
        w ? std::to_string(w->a) : "",
        w ? std::to_string(w->b) : "",
        w ? std::to_string(w->c) : "",
        w ? std::to_string(w->d) : "",
        w ? opt_str(w->count) : "",
        w ? (w->replay_ok ? "1" : "0") : "",
        row.ok ? "1" : "0",
        row.note};
    for (std::size_t k = 0; k < f.size(); ++k) os << (k ? "," : "") << csv_field(f[k]);
    os << "\n";
  }
}

ScanReport read_report(std::istream& is) {
  const std::string text((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw ReportError("empty report");
  if (text[first] == '{') {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::exception& e) {
      throw ReportError(std::string("malformed JSON report: ") + e.what());
    }
    try {
      return report_from_json(j);
    } catch (const json::exception& e) {
      throw ReportError(std::string("JSON report does not match the schema: ") + e.what());
    }
  }
  std::istringstream ss(text);
  return report_from_csv(ss);
}

void save_report(const std::string& path, const ScanReport& r) {
  std::ofstream os(path);
  if (!os) throw ReportError("cannot open " + path + " for writing");
  const bool csv = path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
  if (csv) {
    write_report_csv(os, r);
  } else {
    write_report_json(os, r);
  }
  if (!os) throw ReportError("failed writing " + path);
}

ScanReport load_report(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ReportError("cannot open " + path);
  return read_report(is);
}

}  // namespace bfly
