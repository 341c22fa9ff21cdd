#pragma once

// Command-line front end. Every command reads one JSON document, computes a
// payload (a JSON object with sorted keys), prints it as aligned tables and
// optionally writes the payload to --output. With a cache directory the
// payload is stored under a hash of (command, input, options, version).
//
// Exit codes: 0 success, 1 internal error, 2 schema, 3 domain, 4 resource.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "branespec/bbw_spectra.hpp"
#include "branespec/character_ring.hpp"
#include "branespec/equivariant_index.hpp"
#include "branespec/errors.hpp"
#include "branespec/lattice_fan.hpp"
#include "branespec/lie_theory.hpp"
#include "branespec/toric_cohomology.hpp"
#include "branespec/toric_divisor.hpp"

namespace branespec::cli {

using json = nlohmann::json;

inline constexpr const char* kVersion = "0.3.1";
inline constexpr const char* kCacheEnv = "BRANESPEC_CACHE_DIR";

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> names{"fan-check", "cohomology", "hom",   "ample-threshold",
                                              "bbw",       "decompose",  "index"};
  return names;
}

struct JobConfig {
  std::string command;
  std::string input_path;
  std::string output_path;
  std::string cache_dir;
  std::uint64_t seed = 20240917;
  unsigned precision = 50;
  std::uint64_t subset_cap = std::uint64_t{1} << 20;
  std::int64_t n_max = 10;
  std::string box;  // "lo:hi"
  std::int64_t box_denominator = 2;
  std::size_t samples = 0;
  std::size_t held_out = 20;
  bool recover = false;
  bool dolbeault = false;
  bool json_stdout = false;
};

struct ResultRecord {
  std::string input_hash;
  std::string command;
  std::string version;
  std::string timestamp;
  json payload;
};

namespace detail {

inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string hex(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

// Line of the first occurrence of "key" in the raw document, for messages.
inline std::string line_of(const std::string& text, const std::string& key) {
  auto pos = text.find("\"" + key + "\"");
  if (pos == std::string::npos) return "";
  auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(pos), '\n');
  return " (line " + std::to_string(line) + ")";
}

// Field access with schema errors that name the field.
class Doc {
 public:
  Doc(const json& j, std::string text) : root_(j), text_(std::move(text)) {}

  const json& root() const { return root_; }

  [[noreturn]] void fail(const std::string& field, const std::string& what) const {
    throw SchemaError("field '" + field + "'" + line_of(text_, leaf(field)) + ": " + what);
  }

  const json& require(const json& obj, const std::string& field, const std::string& path) const {
    if (!obj.is_object()) fail(path, "expected an object");
    auto it = obj.find(field);
    if (it == obj.end()) fail(path.empty() ? field : path + "." + field, "missing");
    return *it;
  }

  std::int64_t integer(const json& v, const std::string& path) const {
    if (!v.is_number_integer()) fail(path, "expected an integer");
    return v.get<std::int64_t>();
  }

  std::vector<std::int64_t> int_vector(const json& v, const std::string& path) const {
    if (!v.is_array()) fail(path, "expected a list of integers");
    std::vector<std::int64_t> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(integer(v[i], path + "[" + std::to_string(i) + "]"));
    return out;
  }

  Rational rational(const json& v, const std::string& path) const {
    if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
    if (v.is_string()) {
      try {
        return parse_rational(v.get<std::string>());
      } catch (const SchemaError& e) {
        fail(path, e.what());
      }
    }
    fail(path, "expected an integer or a \"p/q\" string");
  }

  std::vector<Rational> rational_vector(const json& v, const std::string& path) const {
    if (!v.is_array()) fail(path, "expected a list of rationals");
    std::vector<Rational> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(rational(v[i], path + "[" + std::to_string(i) + "]"));
    return out;
  }

 private:
  static std::string leaf(const std::string& path) {
    auto dot = path.find_last_of('.');
    std::string s = dot == std::string::npos ? path : path.substr(dot + 1);
    auto br = s.find('[');
    return br == std::string::npos ? s : s.substr(0, br);
  }

  const json& root_;
  std::string text_;
};

inline Fan read_fan(const Doc& doc) {
  const json& j = doc.root();
  auto rank = doc.integer(doc.require(j, "rank", ""), "rank");
  if (rank < 0) doc.fail("rank", "must be non-negative");
  const json& rays_j = doc.require(j, "rays", "");
  if (!rays_j.is_array()) doc.fail("rays", "expected a list of integer vectors");
  std::vector<LatticeVector> rays;
  for (std::size_t i = 0; i < rays_j.size(); ++i)
    rays.push_back(doc.int_vector(rays_j[i], "rays[" + std::to_string(i) + "]"));
  const json& cones_j = doc.require(j, "max_cones", "");
  if (!cones_j.is_array()) doc.fail("max_cones", "expected a list of index lists");
  std::vector<Cone> cones;
  for (std::size_t c = 0; c < cones_j.size(); ++c) {
    auto idx = doc.int_vector(cones_j[c], "max_cones[" + std::to_string(c) + "]");
    Cone cone;
    for (auto x : idx) {
      if (x < 0) doc.fail("max_cones[" + std::to_string(c) + "]", "negative ray index");
      cone.rays.push_back(static_cast<std::size_t>(x));
    }
    cones.push_back(std::move(cone));
  }
  return Fan(static_cast<std::size_t>(rank), std::move(rays), std::move(cones));
}

inline TorusDivisor read_divisor(const Doc& doc, const Fan& fan, const json& obj, const std::string& path) {
  std::string where = path.empty() ? "a" : path + ".a";
  auto a = doc.int_vector(doc.require(obj, "a", path), where);
  if (a.size() != fan.ray_count())
    doc.fail(where, "has " + std::to_string(a.size()) + " entries for " + std::to_string(fan.ray_count()) + " rays");
  return TorusDivisor(fan, std::move(a));
}

inline RootSystem read_root_system(const Doc& doc) {
  const json& fam = doc.require(doc.root(), "family", "");
  if (!fam.is_string()) doc.fail("family", "expected one of \"A\", \"B\", \"C\", \"D\"");
  auto rank = doc.integer(doc.require(doc.root(), "rank", ""), "rank");
  if (rank < 1) doc.fail("rank", "must be positive");
  return build_root_system(parse_family(fam.get<std::string>()), static_cast<std::size_t>(rank));
}

inline json rationals_json(const std::vector<Rational>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(x.str());
  return out;
}

inline json spectrum_json(const GradedSpectrum& s) {
  json dims = json::array();
  json records = json::array();
  for (std::size_t i = 0; i < s.degree_count(); ++i) {
    dims.push_back(s.dimension(i));
    for (const auto& [m, k] : s.degree(i))
      records.push_back({{"degree", i}, {"character", m}, {"multiplicity", k}});
  }
  return {{"dimensions", dims}, {"records", records}};
}

// ---- tables ---------------------------------------------------------------

class Table {
 public:
  explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}
  void row(std::vector<std::string> r) { rows_.push_back(std::move(r)); }

  void print(std::ostream& os) const {
    std::vector<std::size_t> w(header_.size(), 0);
    auto widen = [&](const std::vector<std::string>& r) {
      for (std::size_t i = 0; i < r.size() && i < w.size(); ++i) w[i] = std::max(w[i], r[i].size());
    };
    widen(header_);
    for (const auto& r : rows_) widen(r);
    auto line = [&](const std::vector<std::string>& r) {
      for (std::size_t i = 0; i < w.size(); ++i) {
        std::string cell = i < r.size() ? r[i] : "";
        os << std::left << std::setw(static_cast<int>(w[i])) << cell;
        if (i + 1 < w.size()) os << "  ";
      }
      os << "\n";
    };
    line(header_);
    std::vector<std::string> rule;
    for (auto x : w) rule.push_back(std::string(x, '-'));
    line(rule);
    for (const auto& r : rows_) line(r);
  }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

inline std::string cell(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

inline std::string tuple(const json& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + cell(v[i]);
  return s + ")";
}

inline void print_spectrum(const json& s, std::ostream& os) {
  Table t({"degree", "character", "multiplicity"});
  for (const auto& r : s["records"]) t.row({cell(r["degree"]), tuple(r["character"]), cell(r["multiplicity"])});
  t.print(os);
  os << "\n";
  Table d({"degree", "dimension"});
  for (std::size_t i = 0; i < s["dimensions"].size(); ++i) d.row({std::to_string(i), cell(s["dimensions"][i])});
  d.print(os);
}

inline void render(const std::string& command, const json& p, std::ostream& os) {
  if (command == "fan-check") {
    Table t({"property", "value"});
    for (const char* k : {"rank", "ray_count", "cone_count", "smooth", "complete"}) t.row({k, cell(p[k])});
    t.print(os);
  } else if (command == "cohomology") {
    print_spectrum(p["spectrum"], os);
  } else if (command == "hom") {
    print_spectrum(p["spectrum"], os);
    os << "\ndifference strictly convex: " << cell(p["strictly_convex"]) << "\n";
    if (p.contains("sections")) {
      Table t({"section character"});
      for (const auto& m : p["sections"]) t.row({tuple(m)});
      os << "\n";
      t.print(os);
      os << "degree 0 equals section polytope: " << cell(p["degree0_matches_sections"]) << "\n";
    }
  } else if (command == "ample-threshold") {
    Table t({"n_max", "threshold"});
    t.row({cell(p["n_max"]), p["threshold"].is_null() ? "absent" : cell(p["threshold"])});
    t.print(os);
  } else if (command == "bbw") {
    if (p["all_vanish"].get<bool>()) {
      os << "all string spaces vanish (lambda + rho is singular)\n";
      return;
    }
    Table t({"degree", "highest weight", "dimension", "weyl word"});
    t.row({cell(p["degree"]), tuple(p["highest_weight"]), cell(p["dimension"]), tuple(p["weyl_word"])});
    t.print(os);
  } else if (command == "decompose") {
    Table t({"highest weight", "multiplicity"});
    for (const auto& r : p["irreducibles"]) t.row({tuple(r["weight"]), cell(r["multiplicity"])});
    t.print(os);
    os << "virtual dimension: " << cell(p["dimension"]) << "\n";
  } else if (command == "index") {
    if (p.contains("evaluations")) {
      Table t({"xi", "value"});
      for (const auto& e : p["evaluations"]) t.row({tuple(e["xi"]), cell(e["value"])});
      t.print(os);
    }
    if (p.contains("recovered")) {
      const auto& r = p["recovered"];
      if (p.contains("evaluations")) os << "\n";
      Table t({"weight", "coefficient"});
      for (const auto& term : r["terms"]) t.row({tuple(term["weight"]), cell(term["coefficient"])});
      t.print(os);
      os << "held-out residual: " << cell(r["held_out_residual"]) << "\n";
    }
    os << "fiber weights: " << cell(p["fiber_weights"]) << "\n";
  }
}

// ---- commands -------------------------------------------------------------

inline SpectrumOptions spectrum_options(const JobConfig& cfg) {
  SpectrumOptions o;
  o.subset_cap = cfg.subset_cap;
  return o;
}

inline json cmd_fan_check(const Doc& doc, const JobConfig&) {
  Fan fan = read_fan(doc);
  return {{"rank", fan.rank()},
          {"ray_count", fan.ray_count()},
          {"cone_count", fan.max_cones().size()},
          {"smooth", is_smooth(fan)},
          {"complete", is_complete(fan)}};
}

inline json cmd_cohomology(const Doc& doc, const JobConfig& cfg) {
  Fan fan = read_fan(doc);
  auto d = read_divisor(doc, fan, doc.root(), "");
  return {{"spectrum", spectrum_json(graded_string_spectrum(fan, d, spectrum_options(cfg)))}};
}

inline json cmd_hom(const Doc& doc, const JobConfig& cfg) {
  Fan fan = read_fan(doc);
  auto f = read_divisor(doc, fan, doc.require(doc.root(), "source", ""), "source");
  auto g = read_divisor(doc, fan, doc.require(doc.root(), "target", ""), "target");
  auto spec = hom_spectrum(fan, f, g, spectrum_options(cfg));
  json out{{"spectrum", spectrum_json(spec)}};
  bool convex = is_strictly_convex(fan, difference_divisor(f, g));
  out["strictly_convex"] = convex;
  if (convex) {
    auto pts = lattice_points_P(fan, f, g);
    out["sections"] = pts;
    std::vector<Character> deg0;
    for (const auto& [m, k] : spec.degree(0)) deg0.push_back(m);
    out["degree0_matches_sections"] = deg0 == pts && spec.higher_degrees_vanish();
  }
  return out;
}

inline json cmd_ample_threshold(const Doc& doc, const JobConfig& cfg) {
  Fan fan = read_fan(doc);
  auto f = read_divisor(doc, fan, doc.require(doc.root(), "source", ""), "source");
  auto g = read_divisor(doc, fan, doc.require(doc.root(), "target", ""), "target");
  auto t = ample_vanishing_threshold(fan, f, g, cfg.n_max, spectrum_options(cfg));
  json out{{"n_max", cfg.n_max}};
  out["threshold"] = t ? json(*t) : json(nullptr);
  return out;
}

inline json cmd_bbw(const Doc& doc, const JobConfig&) {
  auto rs = read_root_system(doc);
  ParabolicSelection p;
  if (doc.root().contains("gamma"))
    for (auto i : doc.int_vector(doc.root()["gamma"], "gamma")) {
      if (i < 1 || i > static_cast<std::int64_t>(rs.rank()))
        doc.fail("gamma", "index " + std::to_string(i) + " outside 1.." + std::to_string(rs.rank()));
      p.gamma.insert(static_cast<std::size_t>(i));
    }
  auto lambda = doc.int_vector(doc.require(doc.root(), "lambda", ""), "lambda");
  if (lambda.size() != rs.rank()) doc.fail("lambda", "length differs from the rank");
  auto res = bbw_spectrum(rs, p, lambda);
  json out{{"root_system", rs.name()},
           {"all_vanish", res.all_vanish()},
           {"dominance", "full positive system"}};
  if (res.concentrated) {
    out["degree"] = res.concentrated->degree;
    out["highest_weight"] = res.concentrated->highest_weight;
    out["dimension"] = res.concentrated->dimension;
    out["weyl_word"] = res.concentrated->weyl_word;
  }
  out["euler_characteristic"] = euler_characteristic_bbw(rs, p, lambda);
  return out;
}

inline CharacterPolynomial read_character(const Doc& doc, std::size_t rank) {
  const json& terms = doc.require(doc.root(), "character", "");
  if (!terms.is_array()) doc.fail("character", "expected a list of {weight, coefficient}");
  CharacterPolynomial chi(rank);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    std::string path = "character[" + std::to_string(i) + "]";
    auto w = doc.int_vector(doc.require(terms[i], "weight", path), path + ".weight");
    if (w.size() != rank) doc.fail(path + ".weight", "length differs from the rank");
    chi.add_term(w, doc.integer(doc.require(terms[i], "coefficient", path), path + ".coefficient"));
  }
  return chi;
}

inline json cmd_decompose(const Doc& doc, const JobConfig&) {
  const json& j = doc.root();
  DecompositionResult res;
  std::int64_t dim = 0;
  if (j.contains("torus_rank")) {
    auto r = doc.integer(j["torus_rank"], "torus_rank");
    if (r < 0) doc.fail("torus_rank", "must be non-negative");
    auto chi = read_character(doc, static_cast<std::size_t>(r));
    dim = chi.dimension();
    res = decompose_torus(chi);
  } else {
    auto rs = read_root_system(doc);
    CharacterPolynomial chi(rs.rank());
    if (j.contains("irreducible_product")) {
      const json& ip = j["irreducible_product"];
      auto left = doc.int_vector(doc.require(ip, "left", "irreducible_product"), "irreducible_product.left");
      auto right = doc.int_vector(doc.require(ip, "right", "irreducible_product"), "irreducible_product.right");
      if (left.size() != rs.rank() || right.size() != rs.rank())
        doc.fail("irreducible_product", "weights must have length " + std::to_string(rs.rank()));
      chi = multiply(conjugate(weyl_character(rs, left)), weyl_character(rs, right));
    }
    if (j.contains("character")) chi += read_character(doc, rs.rank());
    dim = chi.dimension();
    res = decompose(rs, chi);
  }
  json irr = json::array();
  for (const auto& [w, n] : res.multiplicities) irr.push_back({{"weight", w}, {"multiplicity", n}});
  return {{"irreducibles", irr}, {"dimension", dim}};
}

inline std::pair<std::int64_t, std::int64_t> parse_box(const std::string& s) {
  auto colon = s.find(':');
  if (colon == std::string::npos) throw SchemaError("--box expects lo:hi");
  try {
    return {std::stoll(s.substr(0, colon)), std::stoll(s.substr(colon + 1))};
  } catch (const std::exception&) {
    throw SchemaError("--box expects integers lo:hi, got '" + s + "'");
  }
}

inline json cmd_index(const Doc& doc, const JobConfig& cfg) {
  const json& j = doc.root();
  Fan fan = read_fan(doc);
  FiberWeightAssignment fw;
  std::string convention;
  if (j.contains("a")) {
    auto d = read_divisor(doc, fan, j, "");
    fw = cfg.dolbeault ? dolbeault_fiber_weights(fan, d) : fiber_weights_from_divisor(fan, d);
    convention = cfg.dolbeault ? "m_sigma - rho_sigma (Dolbeault shift)" : "m_sigma";
  } else {
    const json& all = doc.require(j, "fiber_weights", "");
    if (!all.is_array()) doc.fail("fiber_weights", "expected one list of weights per maximal cone");
    for (std::size_t p = 0; p < all.size(); ++p) {
      std::string path = "fiber_weights[" + std::to_string(p) + "]";
      if (!all[p].is_array()) doc.fail(path, "expected a list of weights");
      std::vector<DualVector> at_p;
      for (std::size_t k = 0; k < all[p].size(); ++k)
        at_p.push_back(doc.rational_vector(all[p][k], path + "[" + std::to_string(k) + "]"));
      fw.per_fixed_point.push_back(std::move(at_p));
    }
    convention = "explicit";
  }
  IndexOptions io;
  io.precision_digits = cfg.precision;
  json out{{"fiber_weights", convention}, {"precision_digits", cfg.precision}};

  if (j.contains("xi")) {
    const json& xj = j["xi"];
    std::vector<std::vector<Rational>> xis;
    if (xj.is_array() && !xj.empty() && xj[0].is_array()) {
      for (std::size_t s = 0; s < xj.size(); ++s) xis.push_back(doc.rational_vector(xj[s], "xi[" + std::to_string(s) + "]"));
    } else {
      xis.push_back(doc.rational_vector(xj, "xi"));
    }
    IndexEvaluator ev(fan, fw, io);
    json evals = json::array();
    PrecisionScope scope(cfg.precision);
    for (const auto& xi : xis) {
      if (xi.size() != fan.rank()) doc.fail("xi", "length differs from the fan rank");
      auto e = ev.evaluate(xi);
      evals.push_back({{"xi", rationals_json(xi)}, {"value", e.value.str(static_cast<std::streamsize>(cfg.precision))}});
    }
    out["evaluations"] = evals;
  } else if (!cfg.recover) {
    doc.fail("xi", "missing (or pass --recover)");
  }

  if (cfg.recover) {
    if (cfg.box.empty()) throw SchemaError("--recover needs --box lo:hi");
    auto [lo, hi] = parse_box(cfg.box);
    WeightBox box{std::vector<std::int64_t>(fan.rank(), lo), std::vector<std::int64_t>(fan.rank(), hi),
                  cfg.box_denominator};
    RecoveryOptions ro;
    ro.samples = cfg.samples;
    ro.held_out = cfg.held_out;
    ro.seed = cfg.seed;
    auto rec = recover_virtual_character(fan, fw, box, ro, io);
    json terms = json::array();
    for (const auto& [k, c] : rec.numerators.terms()) {
      std::vector<Rational> w;
      for (auto x : k) w.push_back(make_rational(x, rec.denominator));
      terms.push_back({{"weight", rationals_json(w)}, {"coefficient", c}});
    }
    PrecisionScope scope(cfg.precision);
    out["recovered"] = {{"terms", terms},
                        {"denominator", rec.denominator},
                        {"held_out_residual", rec.held_out_residual.str(3, std::ios_base::scientific)},
                        {"held_out_samples", cfg.held_out},
                        {"seed", cfg.seed}};
  }
  return out;
}

inline json dispatch(const std::string& command, const Doc& doc, const JobConfig& cfg) {
  if (command == "fan-check") return cmd_fan_check(doc, cfg);
  if (command == "cohomology") return cmd_cohomology(doc, cfg);
  if (command == "hom") return cmd_hom(doc, cfg);
  if (command == "ample-threshold") return cmd_ample_threshold(doc, cfg);
  if (command == "bbw") return cmd_bbw(doc, cfg);
  if (command == "decompose") return cmd_decompose(doc, cfg);
  if (command == "index") return cmd_index(doc, cfg);
  throw SchemaError("unknown command '" + command + "'");
}

// ---- persistence ----------------------------------------------------------

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("cannot read input file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Writes to a sibling temporary file and renames it into place.
inline void write_atomic(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp" + std::to_string(fnv1a(content) & 0xffff);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ResourceError("cannot write '" + tmp.string() + "'", "IoError");
    out << content;
    if (!out) throw ResourceError("short write to '" + tmp.string() + "'", "IoError");
  }
  std::filesystem::rename(tmp, path);
}

inline std::string now_utc() {
  auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

inline std::string options_key(const JobConfig& c) {
  std::ostringstream os;
  os << c.seed << '|' << c.precision << '|' << c.subset_cap << '|' << c.n_max << '|' << c.box << '|'
     << c.box_denominator << '|' << c.samples << '|' << c.held_out << '|' << c.recover << '|' << c.dolbeault;
  return os.str();
}

}  // namespace detail

inline json record_to_json(const ResultRecord& r) {
  return {{"input_hash", r.input_hash},
          {"command", r.command},
          {"version", r.version},
          {"timestamp", r.timestamp},
          {"payload", r.payload}};
}

/// Executes one job. Returns the process exit code.
inline int execute(const JobConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    std::string text = detail::read_file(cfg.input_path);
    json doc_json;
    try {
      doc_json = json::parse(text);
    } catch (const json::parse_error& e) {
      throw SchemaError(std::string("input is not valid JSON: ") + e.what());
    }
    if (!doc_json.is_object()) throw SchemaError("input document must be a JSON object");

    std::string hash = detail::hex(detail::fnv1a(cfg.command + '\n' + doc_json.dump() + '\n' +
                                                 detail::options_key(cfg) + '\n' + kVersion));
    std::string cache_dir = cfg.cache_dir;
    if (cache_dir.empty())
      if (const char* env = std::getenv(kCacheEnv)) cache_dir = env;

    json payload;
    bool cached = false;
    std::filesystem::path cache_file;
    if (!cache_dir.empty()) {
      std::filesystem::create_directories(cache_dir);
      cache_file = std::filesystem::path(cache_dir) / (hash + ".json");
      if (std::filesystem::exists(cache_file)) {
        try {
          json rec = json::parse(detail::read_file(cache_file.string()));
          if (rec.at("input_hash") == hash && rec.at("version") == kVersion && rec.at("command") == cfg.command) {
            payload = rec.at("payload");
            cached = true;
          }
        } catch (const std::exception&) {
          // unreadable record: recompute and overwrite
        }
      }
    }
    if (!cached) {
      detail::Doc doc(doc_json, text);
      payload = detail::dispatch(cfg.command, doc, cfg);
      if (!cache_file.empty()) {
        ResultRecord rec{hash, cfg.command, kVersion, detail::now_utc(), payload};
        detail::write_atomic(cache_file, record_to_json(rec).dump(2) + "\n");
      }
    }

    if (cfg.json_stdout)
      out << payload.dump(2) << "\n";
    else
      detail::render(cfg.command, payload, out);
    if (!cfg.output_path.empty()) detail::write_atomic(cfg.output_path, payload.dump(2) + "\n");
    return 0;
  } catch (const Error& e) {
    err << "error [" << e.name() << "]: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error [IoError]: " << e.what() << "\n";
    return static_cast<int>(ErrorClass::resource);
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
}

/// argv-style entry point; args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  JobConfig cfg;
  CLI::App app{"Character-graded string spectra on toric varieties and flag manifolds", "branespec"};
  app.add_option("command", cfg.command, "fan-check | cohomology | hom | ample-threshold | bbw | decompose | index")
      ->required()
      ->check(CLI::IsMember(commands()));
  app.add_option("input", cfg.input_path, "JSON input document")->required();
  app.add_option("-o,--output", cfg.output_path, "write the structured payload here");
  app.add_option("--cache-dir", cfg.cache_dir, std::string("result cache directory (default: $") + kCacheEnv + ")");
  app.add_option("--seed", cfg.seed, "random seed for sampling")->capture_default_str();
  app.add_option("--precision", cfg.precision, "decimal digits for index evaluation")
      ->check(CLI::Range(1u, 100000u))
      ->capture_default_str();
  app.add_option("--subset-cap", cfg.subset_cap, "maximum number of ray subsets")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--n-max", cfg.n_max, "largest power tried by ample-threshold")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--box", cfg.box, "candidate weight range lo:hi per coordinate for --recover");
  app.add_option("--box-denominator", cfg.box_denominator, "candidate weights are k / denominator")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--samples", cfg.samples, "interpolation samples (default: twice the box size)");
  app.add_option("--held-out", cfg.held_out, "held-out samples checked after rounding")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_flag("--recover", cfg.recover, "recover the virtual character from index evaluations");
  app.add_flag("--dolbeault", cfg.dolbeault, "shift divisor fiber weights by half the isotropy sum");
  app.add_flag("--json", cfg.json_stdout, "print the payload instead of tables");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return static_cast<int>(ErrorClass::schema);
  }
  return execute(cfg, out, err);
}

}  // namespace branespec::cli
