#include "imbrex/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "imbrex/analysis.hpp"
#include "imbrex/axioms.hpp"
#include "imbrex/catalog.hpp"
#include "imbrex/mazzocca_melone.hpp"

namespace imbrex::cli {

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::filesystem::path cache_dir() {
  if (const char* d = std::getenv("IMBREX_CACHE_DIR"); d && *d) return d;
  if (const char* h = std::getenv("HOME"); h && *h) return std::filesystem::path(h) / ".cache" / "imbrex";
  return std::filesystem::temp_directory_path() / "imbrex-cache";
}

namespace {

// Usage and input problems; mapped to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write " + path);
  f << text;
}

struct Input {
  std::string path;
  std::string text;
  std::optional<IncidenceGeometry> geometry;
  std::optional<EmbeddedMMSet> embedded;
};

Input load(const std::string& path) {
  Input in;
  in.path = path;
  in.text = read_file(path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in.text);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(path + ": " + e.what());
  }
  if (j.is_object() && j.contains("xi")) {
    in.embedded = embedded_from_json(j);
    if (in.embedded->name.empty()) in.embedded->name = std::filesystem::path(path).stem().string();
  } else {
    in.geometry = geometry_from_json(j);
  }
  return in;
}

std::string joined(const std::vector<std::string>& args) {
  std::string s = "imbrex";
  for (const auto& a : args) s += " " + a;
  return s;
}

void strip_ms(nlohmann::json& j) {
  if (j.is_object()) {
    j.erase("ms");
    for (auto& [k, v] : j.items()) strip_ms(v);
  } else if (j.is_array()) {
    for (auto& v : j) strip_ms(v);
  }
}

struct Manifest {
  ojson reports = ojson::array();
  ojson extra = ojson::object();
  bool pass = true;

  void add(const AxiomReport& r) {
    reports.push_back(r.to_json());
    pass = pass && r.pass;
  }
};

std::optional<SympIndex> parapolar_symps(const IncidenceGeometry& g, Manifest& m) {
  auto pc = check_strong_parapolar_diam2(g);
  if (!pc.report.pass) {
    m.add(pc.report);
    return std::nullopt;
  }
  return std::move(pc.symps);
}

void run_block_suites(const IncidenceGeometry& g, const SympIndex& sy, const RankProfile& profile,
                      const ScanOptions& o, Manifest& m) {
  if (!profile.rank) return;
  if (*profile.rank >= 3) {
    m.add(check_cc1(g, sy, o));
    return;
  }
  const auto bg = block_geometry(g, sy);
  for (const auto& r : bg.reports) m.add(r);
  m.add(check_pointcol(g, sy, o));
  m.add(check_pair_regularity(g, sy));
  m.add(check_spreads(g, sy, bg));
  const bool thick = std::all_of(profile.thickness.begin(), profile.thickness.end(),
                                 [](Thickness t) { return t == Thickness::thick; });
  if (thick) m.add(verify_nonclosing_theorem(g, sy, bg));
}

void geometry_suite(const IncidenceGeometry& g, const std::string& suite, const ScanOptions& o, Manifest& m) {
  if (suite == "polar") {
    m.add(check_polar_space(g));
  } else if (suite == "parapolar") {
    m.add(check_strong_parapolar_diam2(g).report);
    m.add(check_pps4(g));
  } else if (suite == "imbrex" || suite == "all") {
    auto r = is_imbrex(g, o);
    for (const auto& x : r.reports) m.add(x);
    m.extra["profile"] = r.profile.to_json();
    if (suite == "all" && r.pass && r.symps) run_block_suites(g, *r.symps, r.profile, o, m);
  } else if (suite == "imbstar") {
    if (auto sy = parapolar_symps(g, m)) m.add(check_imb_star(g, *sy, o));
  } else if (suite == "onan") {
    if (auto sy = parapolar_symps(g, m)) {
      const auto bg = block_geometry(g, *sy);
      m.add(verify_nonclosing_theorem(g, *sy, bg));
    }
  } else if (suite == "cc1") {
    if (auto sy = parapolar_symps(g, m)) m.add(check_cc1(g, *sy, o));
  }
}

void embedded_suite(const EmbeddedMMSet& e, const std::string& suite, const ScanOptions& o, Manifest& m) {
  MMIndex idx(e);
  const auto mm = check_mm_axioms(idx);
  for (const auto& r : mm.reports) m.add(r);
  if (suite == "mm" || !mm.pass) return;
  m.add(check_lmm3(idx, mm, o));
  if (suite == "all") geometry_suite(abstract_geometry(idx), "all", o, m);
}

Params params_of(const std::optional<int>& m, const std::optional<int>& n, const std::optional<int>& p,
                 const std::optional<int>& r, const std::optional<int>& q, const std::string& from) {
  Params out;
  out.m = m, out.n = n, out.p = p, out.r = r, out.q = q, out.from = from;
  return out;
}

std::string cache_key(const std::string& name, const Params& p, bool embedded) {
  auto s = [](const std::optional<int>& v) { return v ? std::to_string(*v) : std::string("-"); };
  return std::string(embedded ? "embedded" : "geometry") + "|" + name + "|m=" + s(p.m) + "|n=" + s(p.n) +
         "|p=" + s(p.p) + "|r=" + s(p.r) + "|q=" + s(p.q) + "|from=" + p.from;
}

std::string statistics(const std::string& text, bool embedded) {
  const auto j = nlohmann::json::parse(text);
  std::ostringstream s;
  if (embedded) {
    s << j["points"].size() << " points, " << j["xi"].size() << " members, ambient_dim " << j["ambient_dim"]
      << ", d=" << j["d"] << ", r=" << j["r"];
  } else {
    s << j["name"].get<std::string>() << ": " << j["point_count"] << " points, " << j["lines"].size() << " lines";
  }
  return s.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite incidence geometries and their axioms", "imbrex"};
  app.require_subcommand(1);

  std::string name, out_path, from;
  std::optional<int> pm, pn, pp, pr, pq;
  bool embedded = false, no_cache = false;
  auto* construct = app.add_subcommand("construct", "Build a catalog entry");
  construct->add_option("name", name, "Catalog entry")->required();
  construct->add_option("--m", pm);
  construct->add_option("--n", pn);
  construct->add_option("--p", pp);
  construct->add_option("--r", pr);
  construct->add_option("--q", pq);
  construct->add_option("--from", from, "Embedded quadrangle for the imbrex entry");
  construct->add_flag("--embedded", embedded, "Emit the coordinatized embedding");
  construct->add_option("-o,--output", out_path);
  construct->add_flag("--no-cache", no_cache);

  std::string in_path, suite = "all", report_path;
  std::optional<std::size_t> sample;
  std::uint64_t seed = 0;
  bool full = false;
  auto* check = app.add_subcommand("check", "Run a check suite");
  check->add_option("file", in_path)->required();
  check->add_option("--suite", suite)
      ->check(CLI::IsMember({"polar", "parapolar", "imbrex", "imbstar", "onan", "cc1", "mm", "lmm3", "all"}));
  check->add_option("--sample", sample, "Sampled scan size");
  check->add_option("--seed", seed);
  check->add_flag("--full", full, "Exhaustive scans regardless of size");
  check->add_option("--report", report_path);

  std::size_t point = 0;
  auto* res = app.add_subcommand("residue", "Residue of an embedded set at a point");
  res->add_option("file", in_path)->required();
  res->add_option("--point", point)->required();
  res->add_option("-o,--output", out_path);

  std::size_t block = 0, symp = 0;
  auto* spr = app.add_subcommand("spread", "Induced spread of a block on a disjoint symp");
  spr->add_option("file", in_path)->required();
  spr->add_option("--block", block)->required();
  spr->add_option("--symp", symp)->required();
  spr->add_option("-o,--output", out_path);

  std::string a_path, b_path;
  auto* diff = app.add_subcommand("report-diff", "Compare two reports, ignoring timings");
  diff->add_option("a", a_path)->required();
  diff->add_option("b", b_path)->required();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  try {
    if (*construct) {
      const auto params = params_of(pm, pn, pp, pr, pq, from);
      const auto file = cache_dir() / (hex64(fnv1a64(cache_key(name, params, embedded))) + ".json");
      std::string text;
      bool hit = false;
      if (!no_cache && std::filesystem::exists(file)) {
        text = read_file(file.string());
        hit = true;
      } else {
        if (embedded) text = to_json(build_embedded(name, params)).dump() + "\n";
        else text = canonical_json_text(build(name, params));
        if (!no_cache) {
          std::error_code ec;
          std::filesystem::create_directories(file.parent_path(), ec);
          std::ofstream f(file, std::ios::binary);
          if (f) f << text;
          else err << "warning: cannot write cache " << file.string() << "\n";
        }
      }
      write_text(out_path, text, out);
      auto& echo = (out_path.empty() || out_path == "-") ? err : out;
      echo << statistics(text, embedded) << (hit ? " (cached)" : "") << "\n";
      return 0;
    }

    if (*check) {
      Stopwatch sw;
      const auto in = load(in_path);
      if ((suite == "mm" || suite == "lmm3") && !in.embedded)
        throw UsageError("suite " + suite + " needs Embedded JSON input");
      const auto n = in.embedded ? in.embedded->points.size() : in.geometry->point_count();
      ScanOptions o = default_scan(n);
      if (full) o.sample.reset();
      if (sample) o.sample = *sample;
      o.seed = seed;

      Manifest m;
      if (in.embedded && (suite == "mm" || suite == "lmm3" || suite == "all")) {
        embedded_suite(*in.embedded, suite, o, m);
      } else if (in.embedded) {
        MMIndex idx(*in.embedded);
        geometry_suite(abstract_geometry(idx), suite, o, m);
      } else {
        geometry_suite(*in.geometry, suite, o, m);
      }

      ojson manifest;
      manifest["command"] = joined(args);
      manifest["inputs"] = ojson::array({{{"path", in_path}, {"fnv1a64", hex64(fnv1a64(in.text))}}});
      manifest["suite"] = suite;
      manifest["seed"] = o.sample ? ojson(o.seed) : ojson(nullptr);
      manifest["sample"] = o.sample ? ojson(*o.sample) : ojson(nullptr);
      manifest["reports"] = m.reports;
      for (auto& [k, v] : m.extra.items()) manifest[k] = v;
      manifest["verdict"] = m.pass ? "pass" : "fail";
      manifest["ms"] = sw.ms();
      write_text(report_path, manifest.dump(2) + "\n", out);
      return m.pass ? 0 : 1;
    }

    if (*res) {
      const auto in = load(in_path);
      if (!in.embedded) throw UsageError("residue needs Embedded JSON input");
      MMIndex idx(*in.embedded);
      auto r = residue(idx, static_cast<Point>(point));
      write_text(out_path, to_json(r).dump() + "\n", out);
      err << describe(r).dump() << "\n";
      return 0;
    }

    if (*spr) {
      const auto in = load(in_path);
      std::optional<MMIndex> idx;
      IncidenceGeometry g;
      if (in.embedded) {
        idx.emplace(*in.embedded);
        g = abstract_geometry(*idx);
      } else {
        g = *in.geometry;
      }
      const auto sy = enumerate_symps(g);
      const auto bg = block_geometry(g, sy);
      if (block >= bg.blocks.size()) throw UsageError("block out of range (" + std::to_string(bg.blocks.size()) + ")");
      if (symp >= sy.size()) throw UsageError("symp out of range (" + std::to_string(sy.size()) + ")");
      SpreadAnalyzer an(g, sy, bg);
      const auto s = an.spread(block, symp);
      auto j = s.to_json();
      j["image"] = s.image;
      ojson reports = ojson::array({s.report.to_json()});
      bool pass = s.report.pass;
      if (s.report.pass) {
        const auto dp = an.double_perp(s);
        j["sigma"] = dp.lines;
        reports.push_back(dp.closure.to_json());
        reports.push_back(dp.morphism.to_json());
        pass = dp.pass();
      }
      j["reports"] = reports;
      write_text(out_path, j.dump(2) + "\n", out);
      return pass ? 0 : 1;
    }

    if (*diff) {
      nlohmann::json a, b;
      try {
        a = nlohmann::json::parse(read_file(a_path));
        b = nlohmann::json::parse(read_file(b_path));
      } catch (const nlohmann::json::exception& e) {
        throw UsageError(e.what());
      }
      strip_ms(a);
      strip_ms(b);
      if (a == b) {
        out << "identical\n";
        return 0;
      }
      out << nlohmann::json::diff(a, b).dump(2) << "\n";
      return 1;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace imbrex::cli
