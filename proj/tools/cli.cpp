#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <set>
#include <sstream>
#include <thread>

#include "coxreg/lab.hpp"
#include "verify.hpp"

#ifndef COXREG_FIXTURE_DIR
#define COXREG_FIXTURE_DIR "fixtures"
#endif

namespace coxreg::cli {
namespace {

using json = nlohmann::ordered_json;

std::string trim(std::string_view s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string_view::npos) return {};
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(a, b - a + 1));
}

// 1-based line and column of a byte offset.
std::pair<std::size_t, std::size_t> locate(std::string_view text, std::size_t offset) {
  std::size_t line = 1, col = 1;
  for (std::size_t k = 0; k < offset && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

[[noreturn]] void fail_at(std::string_view text, std::size_t offset, const std::string& what) {
  auto [l, c] = locate(text, offset);
  throw InputError(l, c, what);
}

std::string strip_comments(std::string_view text) {
  std::string s(text);
  bool in_comment = false;
  for (char& ch : s) {
    if (ch == '\n') in_comment = false;
    else if (ch == '#') in_comment = true;
    if (in_comment) ch = ' ';
  }
  return s;
}

// Splits "key: value" lines; values keep their offset in the text.
struct Entry {
  std::string key;
  std::string value;
  std::size_t offset;
};

std::vector<Entry> key_values(const std::string& text) {
  std::vector<Entry> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    std::string_view line(text.data() + pos, end - pos);
    if (line.find_first_not_of(" \t\r") != std::string_view::npos) {
      std::size_t colon = line.find(':');
      if (colon == std::string_view::npos) fail_at(text, pos, "expected 'key: value'");
      out.push_back({trim(line.substr(0, colon)), std::string(line.substr(colon + 1)), pos + colon + 1});
    }
    pos = end + 1;
  }
  return out;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t end = s.find(sep, start);
    out.emplace_back(s.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start));
    if (end == std::string_view::npos) return out;
    start = end + 1;
  }
}

int parse_int(const std::string& s) {
  std::string t = trim(s);
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(t, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (t.empty() || used != t.size()) throw std::invalid_argument("expected an integer, got '" + t + "'");
  return v;
}

MultiDegree inhomogeneity_pair(const Ring& ring, const Polynomial& f, MultiDegree& other) {
  MultiDegree first = ring.degree(f.leading().mon);
  for (const Term& t : f.terms()) {
    MultiDegree d = ring.degree(t.mon);
    if (d != first) {
      other = d;
      break;
    }
  }
  return first;
}

}  // namespace

InputError::InputError(std::size_t line, std::size_t column, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

Field parse_field(std::string_view text) {
  std::string t = trim(text);
  if (t == "QQ") return Field::rationals();
  if (t.size() > 4 && t.rfind("GF(", 0) == 0 && t.back() == ')') {
    std::string p = t.substr(3, t.size() - 4);
    long long v = 0;
    try {
      v = std::stoll(p);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad field '" + t + "'");
    }
    if (v < 2 || v > 0x7fffffff || !is_prime(static_cast<std::uint64_t>(v)))
      throw std::invalid_argument("GF(p) needs a prime p < 2^31, got " + p);
    return Field::prime(static_cast<std::uint32_t>(v));
  }
  throw std::invalid_argument("field must be GF(p) or QQ, got '" + t + "'");
}

RingFile parse_ring_file(std::string_view raw, std::optional<Field> field) {
  std::string text = strip_comments(raw);
  std::size_t ring_at = std::string::npos, ideal_at = std::string::npos;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    std::size_t first = text.find_first_not_of(" \t\r", pos);
    if (first < end) {
      if (text.compare(first, 5, "ring:") == 0) {
        if (ring_at != std::string::npos) fail_at(text, first, "duplicate 'ring:' line");
        if (ideal_at != std::string::npos) fail_at(text, first, "'ring:' must come before 'ideal:'");
        ring_at = first + 5;
      } else if (text.compare(first, 6, "ideal:") == 0) {
        if (ideal_at != std::string::npos) fail_at(text, first, "duplicate 'ideal:' section");
        ideal_at = first + 6;
        break;
      } else if (ideal_at == std::string::npos) {
        fail_at(text, first, "expected 'ring:' or 'ideal:'");
      }
    }
    pos = end + 1;
  }
  if (ring_at == std::string::npos) throw InputError(1, 1, "missing 'ring:' line");
  std::size_t ring_end = text.find('\n', ring_at);
  std::string ring_line = text.substr(ring_at, ring_end == std::string::npos ? std::string::npos : ring_end - ring_at);
  std::size_t over = ring_line.find(" over ");
  if (over == std::string::npos) fail_at(text, ring_at, "expected 'P(n1,...,nl) over GF(p)|QQ'");
  ProductSpace space({1});
  try {
    space = ProductSpace::parse(trim(ring_line.substr(0, over)));
  } catch (const std::exception& e) {
    fail_at(text, ring_at, e.what());
  }
  Field k = Field::prime();
  try {
    k = parse_field(ring_line.substr(over + 6));
  } catch (const std::exception& e) {
    fail_at(text, ring_at + over + 6, e.what());
  }
  if (field) k = *field;
  RingPtr ring = make_ring(space, k);

  std::vector<Polynomial> gens;
  if (ideal_at != std::string::npos) {
    std::size_t start = ideal_at;
    while (start <= text.size()) {
      std::size_t end = text.find(';', start);
      if (end == std::string::npos) end = text.size();
      std::string_view piece(text.data() + start, end - start);
      std::size_t lead = piece.find_first_not_of(" \t\r\n");
      if (lead != std::string_view::npos) {
        Polynomial f;
        try {
          f = parse_polynomial(*ring, piece);
        } catch (const ParseError& e) {
          std::string msg = e.what();
          auto c = msg.find(": ");
          fail_at(text, start + e.position(), c == std::string::npos ? msg : msg.substr(c + 2));
        }
        if (f.is_zero()) {
          start = end + 1;
          continue;
        }
        if (!is_homogeneous(*ring, f)) {
          MultiDegree other;
          MultiDegree first = inhomogeneity_pair(*ring, f, other);
          fail_at(text, start + lead,
                  "generator '" + trim(piece) + "' is not homogeneous: degrees " + first.to_string() + " and " +
                      other.to_string());
        }
        gens.push_back(std::move(f));
      }
      start = end + 1;
    }
  }
  return RingFile{ring, Ideal(ring, std::move(gens))};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

RingFile read_ring_file(const std::string& path, std::optional<Field> field) {
  std::string text = read_file(path);
  try {
    return parse_ring_file(text, field);
  } catch (const InputError& e) {
    throw InputError(e.line(), e.column(), path + ": " + std::string(e.what()).substr(std::string(e.what()).find(": ") + 2));
  }
}

ConeFile parse_cone_file(std::string_view raw) {
  std::string text = strip_comments(raw);
  std::vector<Entry> entries = key_values(text);
  ConeFile out;
  for (const Entry& e : entries)
    if (e.key == "radicand") {
      try {
        out.radicand = parse_int(e.value);
      } catch (const std::exception& ex) {
        fail_at(text, e.offset, ex.what());
      }
      if (out.radicand < 2) fail_at(text, e.offset, "radicand must be at least 2");
    }
  auto vec = [&](const Entry& e, const std::string& v) {
    auto parts = split(v, ',');
    if (parts.size() != 2) fail_at(text, e.offset, "expected a vector 'a, b', got '" + trim(v) + "'");
    try {
      return QVec{parse_quadext(trim(parts[0]), out.radicand), parse_quadext(trim(parts[1]), out.radicand)};
    } catch (const std::exception& ex) {
      fail_at(text, e.offset, ex.what());
    }
  };
  std::set<std::string> seen;
  for (const Entry& e : entries) {
    if (!seen.insert(e.key).second) fail_at(text, e.offset, "duplicate key '" + e.key + "'");
    if (e.key == "radicand") continue;
    if (e.key == "example") {
      out.example = trim(e.value);
    } else if (e.key == "basis") {
      auto parts = split(e.value, ',');
      if (parts.size() != 2) fail_at(text, e.offset, "basis needs two labels");
      out.basis = {trim(parts[0]), trim(parts[1])};
    } else if (e.key == "nef") {
      auto parts = split(e.value, ';');
      if (parts.size() != 2) fail_at(text, e.offset, "nef needs two rays");
      try {
        out.nef.emplace(vec(e, parts[0]), vec(e, parts[1]));
      } catch (const DegenerateCone& ex) {
        fail_at(text, e.offset, ex.what());
      }
    } else if (e.key == "classes") {
      for (const std::string& p : split(e.value, ';')) out.classes.push_back(vec(e, p));
    } else if (e.key == "d") {
      for (const std::string& p : split(e.value, ',')) {
        try {
          out.d.push_back(parse_int(p));
        } catch (const std::exception& ex) {
          fail_at(text, e.offset, ex.what());
        }
      }
    } else if (e.key == "q") {
      out.q = vec(e, e.value);
    } else if (e.key == "figure-q") {
      out.figure_q = vec(e, e.value);
    } else {
      fail_at(text, e.offset, "unknown key '" + e.key + "'");
    }
  }
  if (out.nef) out.nef = ConeQD(out.nef->ray(0), out.nef->ray(1), out.basis);
  if (out.example.empty()) throw InputError(1, 1, "missing 'example:'");
  return out;
}

ConeFile read_cone_file(const std::string& path) { return parse_cone_file(read_file(path)); }

std::vector<MultiDegree> parse_twist_box(std::string_view text) {
  std::vector<std::pair<int, int>> ranges;
  for (const std::string& part : split(text, ',')) {
    std::size_t dots = part.find("..");
    int a = 0, b = 0;
    if (dots == std::string::npos) {
      a = b = parse_int(part);
    } else {
      a = parse_int(part.substr(0, dots));
      b = parse_int(part.substr(dots + 2));
    }
    if (a > b) throw std::invalid_argument("empty range '" + trim(part) + "'");
    ranges.emplace_back(a, b);
  }
  std::size_t cells = 1;
  for (auto [a, b] : ranges) {
    cells *= static_cast<std::size_t>(b - a + 1);
    if (cells > 100000) throw std::invalid_argument("twist box has more than 100000 cells");
  }
  std::vector<MultiDegree> out;
  MultiDegree u(ranges.size());
  for (std::size_t k = 0; k < ranges.size(); ++k) u[k] = ranges[k].first;
  while (true) {
    out.push_back(u);
    std::size_t k = ranges.size();
    while (k > 0 && u[k - 1] == ranges[k - 1].second) {
      u[k - 1] = ranges[k - 1].first;
      --k;
    }
    if (k == 0) return out;
    ++u[k - 1];
  }
}

std::vector<MultiDegree> parse_degree_list(std::string_view text) {
  std::vector<MultiDegree> out;
  for (const std::string& p : split(text, ';'))
    if (!trim(p).empty()) out.push_back(MultiDegree::parse(trim(p)));
  return out;
}

unsigned default_threads() {
  if (const char* env = std::getenv("COXREG_THREADS")) {
    try {
      int v = std::stoi(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

struct Global {
  std::string field;
  std::string format = "table";
  int t_start = 2;
  int t_cap = 8;
  unsigned threads = 1;

  std::optional<Field> field_override() const {
    if (field.empty()) return std::nullopt;
    return parse_field(field);
  }
  bool as_json() const { return format == "json"; }
  Stabilization stabilization() const {
    Stabilization s{t_start, t_cap};
    s.validate();
    return s;
  }
};

void check_length(const MultiDegree& a, const ProductSpace& x, const std::string& what) {
  if (a.size() != x.num_factors())
    throw std::invalid_argument(what + " " + a.to_string() + " does not match " + x.to_string());
}

std::string provenance_list(const std::set<Provenance>& p) {
  std::string s;
  for (Provenance v : p) s += (s.empty() ? "" : ", ") + std::string(to_string(v));
  return s;
}

void emit_table(const CohomologyTable& t, const std::vector<MultiDegree>& twists, const std::string& title,
                const Global& g, std::ostream& out) {
  const int dim = t.space().dim();
  if (g.as_json()) {
    json records = json::array();
    for (const MultiDegree& u : twists)
      for (int i = 0; i <= dim; ++i) {
        auto e = t.get(i, u);
        records.push_back({{"i", i}, {"u", u.components()}, {"dim", e->dim}, {"provenance", to_string(e->provenance)}});
      }
    out << json{{"command", "cohomology"}, {"sheaf", title}, {"space", t.space().to_string()}, {"records", records}}.dump(2)
        << "\n";
    return;
  }
  out << "X = " << t.space().to_string() << ", sheaf " << title << "\n";
  std::size_t width = 6;
  for (const MultiDegree& u : twists) width = std::max(width, u.to_string().size() + 2);
  out << std::left << std::setw(static_cast<int>(width)) << "twist";
  for (int i = 0; i <= dim; ++i) out << std::right << std::setw(8) << ("h^" + std::to_string(i));
  out << "\n";
  std::set<Provenance> used;
  for (const MultiDegree& u : twists) {
    out << std::left << std::setw(static_cast<int>(width)) << u.to_string();
    for (int i = 0; i <= dim; ++i) {
      auto e = t.get(i, u);
      used.insert(e->provenance);
      out << std::right << std::setw(8) << e->dim;
    }
    out << "\n";
  }
  out << "provenance: " << provenance_list(used) << "\n";
}

void emit_local(CohomologyEngine& engine, const Module& m, const std::vector<MultiDegree>& twists,
                const std::string& title, const Global& g, std::ostream& out) {
  const int top = m.ring().space().dim() + 1;
  std::vector<std::vector<std::uint64_t>> dims;
  for (const MultiDegree& u : twists) {
    std::vector<std::uint64_t> row;
    for (int i = 0; i <= top; ++i) row.push_back(engine.local_cohomology_dim(m, i, u));
    dims.push_back(std::move(row));
  }
  if (g.as_json()) {
    json records = json::array();
    for (std::size_t k = 0; k < twists.size(); ++k)
      for (int i = 0; i <= top; ++i)
        records.push_back({{"i", i}, {"u", twists[k].components()}, {"dim", dims[k][i]}, {"provenance", "ext-engine"}});
    out << json{{"command", "cohomology"}, {"local", true}, {"module", title},
                {"space", m.ring().space().to_string()}, {"records", records}}
               .dump(2)
        << "\n";
    return;
  }
  out << "X = " << m.ring().space().to_string() << ", local cohomology of " << title << "\n";
  std::size_t width = 6;
  for (const MultiDegree& u : twists) width = std::max(width, u.to_string().size() + 2);
  out << std::left << std::setw(static_cast<int>(width)) << "twist";
  for (int i = 0; i <= top; ++i) out << std::right << std::setw(8) << ("H^" + std::to_string(i));
  out << "\n";
  for (std::size_t k = 0; k < twists.size(); ++k) {
    out << std::left << std::setw(static_cast<int>(width)) << twists[k].to_string();
    for (int i = 0; i <= top; ++i) out << std::right << std::setw(8) << dims[k][i];
    out << "\n";
  }
  out << "provenance: ext-engine\n";
}

std::string subset_string(const std::vector<std::size_t>& s) {
  std::string out;
  for (std::size_t k : s) out += (out.empty() ? "" : ",") + std::to_string(k + 1);
  return "{" + out + "}";
}

std::vector<std::size_t> one_based(std::vector<std::size_t> s) {
  for (std::size_t& k : s) ++k;
  return s;
}

std::vector<MultiDegree> twists_from(const std::string& twist, const std::string& box) {
  if (!twist.empty() && !box.empty()) throw std::invalid_argument("give either --twist or --twists");
  if (!twist.empty()) return {MultiDegree::parse(twist)};
  if (!box.empty()) return parse_twist_box(box);
  throw std::invalid_argument("missing --twist or --twists");
}

Module module_of(const RingFile& rf, const std::string& sheaf) {
  if (sheaf == "structure") return Module::quotient(rf.ideal);
  if (sheaf == "ideal") return Module::of_ideal(rf.ideal);
  throw std::invalid_argument("--sheaf must be 'structure' or 'ideal'");
}

std::string sheaf_name(const std::string& sheaf) { return sheaf == "ideal" ? "I_Y" : "O_Y"; }

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"coxreg: multigraded regularity and vanishing on products of projective spaces"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  g.threads = default_threads();
  app.add_option("--field", g.field, "Override the field: GF(p) or QQ");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"table", "json"}));
  app.add_option("--t-start", g.t_start, "First bracket power tried");
  app.add_option("--t-cap", g.t_cap, "Last bracket power tried");
  app.add_option("--threads", g.threads, "Worker threads (default COXREG_THREADS or all cores)")
      ->check(CLI::PositiveNumber);

  std::string file, ring_text, against = "irrelevant", line_bundle, twist, twists, sheaf, l_text, path = "remark",
                                degrees_text, n_text, l1_text, l2_text, mode = "both", a_text, target = "all",
                                fixtures;
  int e = 0, m = 0, dim_y = -1, wl1 = 0, wl2 = 0;
  bool local = false, predict = false, force = false, engine_check = false, allow_large = false, timings = false,
       reduction = false;

  auto* sat = app.add_subcommand("saturate", "Saturate the ideal of a ring file");
  sat->add_option("--file", file, "Ring file")->required();
  sat->add_option("--against", against, "'irrelevant' or ';'-separated generators");

  auto* coh = app.add_subcommand("cohomology", "Sheaf cohomology table");
  coh->add_option("--ring", ring_text, "Ambient P(n1,...,nl) when no file is given");
  coh->add_option("--file", file, "Ring file");
  coh->add_option("--line-bundle", line_bundle, "Closed-form table of O(a)");
  coh->add_option("--twist", twist, "Single twist a1,...,al");
  coh->add_option("--twists", twists, "Box a1..b1,a2..b2");
  coh->add_option("--sheaf", sheaf, "structure (O_Y, default) or ideal (I_Y)");
  coh->add_flag("--local", local, "Local cohomology H^i_B of S/I or I instead (needs --file)");

  auto* reg = app.add_subcommand("regularity", "Direct L-regularity check, or the predicted region");
  reg->add_option("--file", file, "Ring file")->required();
  reg->add_option("--L", l_text, "L")->required();
  reg->add_option("--sheaf", sheaf, "ideal (default) or structure");
  reg->add_flag("--predict", predict, "Predicted region from the generator degrees");
  reg->add_option("--dim-y", dim_y, "dim Y (with --predict)");
  reg->add_option("--path", path, "corollary or remark (with --predict)");

  auto* thm = app.add_subcommand("theorem-main", "Hypothesis and conclusion of the main vanishing theorem");
  thm->add_option("--file", file, "Ring file")->required();
  thm->add_option("--e", e, "Codimension of Y")->required();
  thm->add_option("--m", m, "Power m (I_Y^{m+1})");
  thm->add_option("--L", l_text, "L")->required();
  thm->add_flag("--force", force, "Compute cohomology even when the hypothesis fails");

  auto* shp = app.add_subcommand("sharpness", "Koszul-chop nonvanishing witness");
  shp->add_option("--ring", ring_text, "P(n1,...,nl)")->required();
  shp->add_option("--degrees", degrees_text, "Divisor degrees, ';'-separated")->required();
  shp->add_option("--N", n_text, "Nef, not big N")->required();
  shp->add_flag("--engine", engine_check, "Cross-check with the Ext engine on generic forms");

  auto* mul = app.add_subcommand("multmap", "Surjectivity of multiplication of adjoint sections");
  mul->add_option("--ring", ring_text, "P(n1,...,nl)")->required();
  mul->add_option("--L1", l1_text, "L1")->required();
  mul->add_option("--L2", l2_text, "L2")->required();
  mul->add_option("--mode", mode, "direct, diagonal or both")->check(CLI::IsMember({"direct", "diagonal", "both"}));
  mul->add_option("--A", a_text, "Ample classes A_1;...;A_d for the hypothesis check");
  mul->add_flag("--allow-large", allow_large, "Lift the size guard of the diagonal mode");

  auto* wah = app.add_subcommand("wahl", "Vanishing behind the m-th Wahl map on P1");
  wah->add_option("--m", m, "m")->required();
  wah->add_option("--l1", wl1, "l1")->required();
  wah->add_option("--l2", wl2, "l2")->required();
  wah->add_flag("--verify-reduction", reduction, "Check that the diagonal power is O(-(m+1),-(m+1))");

  auto* con = app.add_subcommand("cones", "Cone comparisons from a cone file");
  con->add_option("--file", file, "Cone file")->required();

  auto* ver = app.add_subcommand("verify-paper", "Reproduce the worked examples");
  ver->add_option("target", target, "curve, kunneth, sharpness, theorem, oracle, multmap, wahl, cones, properties or all");
  ver->add_option("--fixtures", fixtures, "Fixture directory");
  ver->add_flag("--timings", timings, "Print timings (output no longer byte-stable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& ex) {
    int code = app.exit(ex, out, err);
    return code == 0 ? kOk : kUsage;
  }

  std::string sub = app.get_subcommands().front()->get_name();
  std::string args;
  for (int k = 1; k < argc; ++k) args += std::string(k > 1 ? " " : "") + argv[k];
  auto report = [&](const std::string& what) { err << "coxreg " << sub << ": error: " << what << " [" << args << "]\n"; };

  try {
    std::optional<Field> field = g.field_override();
    CohomologyEngine engine(g.stabilization());

    if (sub == "saturate") {
      RingFile rf = read_ring_file(file, field);
      Ideal j = against == "irrelevant" ? Ideal::irrelevant(rf.ring) : Ideal::parse(rf.ring, against);
      Ideal s = saturate(rf.ideal, j);
      const auto& gens = s.minimal_generators();
      if (g.as_json()) {
        json list = json::array();
        for (const Polynomial& f : gens) list.push_back(to_string(*rf.ring, f));
        out << json{{"command", "saturate"}, {"input_generators", rf.ideal.generators().size()},
                    {"against", against}, {"equals_input", s.equals(rf.ideal)}, {"generators", list}}
                   .dump(2)
            << "\n";
      } else {
        out << "saturation of " << rf.ideal.generators().size() << " generators against " << against << ": "
            << gens.size() << " minimal generators\n";
        for (const Polynomial& f : gens) out << "  " << to_string(*rf.ring, f) << "\n";
        out << "equal to the input ideal: " << (s.equals(rf.ideal) ? "yes" : "no") << "\n";
      }
      return kOk;
    }

    if (sub == "cohomology") {
      if (!line_bundle.empty()) {
        if (ring_text.empty() || !file.empty()) throw std::invalid_argument("--line-bundle needs --ring and no --file");
        ProductSpace x = ProductSpace::parse(ring_text);
        MultiDegree a = MultiDegree::parse(line_bundle);
        check_length(a, x, "line bundle");
        emit_table(line_bundle_cohomology(x, a), {a}, "O" + a.to_string(), g, out);
        return kOk;
      }
      std::vector<MultiDegree> us = twists_from(twist, twists);
      if (!file.empty()) {
        RingFile rf = read_ring_file(file, field);
        std::string kind = sheaf.empty() ? "structure" : sheaf;
        for (const MultiDegree& u : us) check_length(u, rf.ring->space(), "twist");
        if (local) {
          emit_local(engine, module_of(rf, kind), us, kind == "ideal" ? "I" : "S/I", g, out);
          return kOk;
        }
        CohomologyTable t = engine.sheaf_cohomology_table(module_of(rf, kind), us, g.threads);
        emit_table(t, us, sheaf_name(kind), g, out);
        return kOk;
      }
      if (local) throw std::invalid_argument("--local needs --file");
      if (ring_text.empty()) throw std::invalid_argument("give --file, or --ring with --twist/--twists");
      ProductSpace x = ProductSpace::parse(ring_text);
      for (const MultiDegree& u : us) check_length(u, x, "twist");
      RingPtr r = make_ring(x, field.value_or(Field::prime()));
      CohomologyTable t = engine.sheaf_cohomology_table(Module::structure(r), us, g.threads);
      emit_table(t, us, "O_X", g, out);
      return kOk;
    }

    if (sub == "regularity") {
      RingFile rf = read_ring_file(file, field);
      const ProductSpace& x = rf.ring->space();
      MultiDegree l = MultiDegree::parse(l_text);
      check_length(l, x, "L");
      if (predict) {
        if (dim_y < 0) throw std::invalid_argument("--predict needs --dim-y");
        if (path != "corollary" && path != "remark") throw std::invalid_argument("--path must be corollary or remark");
        RegionReport r = regularity_region_predicted(x, rf.ideal.generator_degrees(), dim_y, l,
                                                     path == "corollary" ? RegionPath::Corollary : RegionPath::Remark);
        MultiDegree target_deg = x.canonical_degree() + l;
        if (g.as_json()) {
          json w = json::array();
          for (const RegionWitness& v : r.witnesses)
            w.push_back({{"subset", one_based(v.subset)}, {"u", v.u.components()}, {"twist", v.twist.components()}});
          out << json{{"command", "regularity"}, {"mode", "predict"}, {"path", path}, {"L", l.components()},
                      {"regularity", target_deg.components()}, {"structure_regular", r.structure_regular},
                      {"holds", r.holds}, {"witnesses", w}}
                     .dump(2)
              << "\n";
        } else {
          out << "predicted region (" << path << " path), L = " << l.to_string() << ", K+L = " << target_deg.to_string()
              << "\n";
          if (path == "remark") out << "O_X is (K+L)-regular: " << (r.structure_regular ? "yes" : "no") << "\n";
          out << "I_Y predicted " << target_deg.to_string() << "-regular: " << (r.holds ? "yes" : "no") << "\n";
          for (const RegionWitness& v : r.witnesses)
            out << "  fails: subset " << subset_string(v.subset) << ", u = " << v.u.to_string() << ", "
                << v.twist.to_string() << " not big and nef\n";
        }
        return kOk;
      }
      std::string kind = sheaf.empty() ? "ideal" : sheaf;
      RegularityReport r = is_L_regular(engine, module_of(rf, kind), l, g.threads);
      if (g.as_json()) {
        json v = json::array();
        for (const RegularityViolation& w : r.violations) v.push_back({{"i", w.i}, {"u", w.u.components()}, {"dim", w.dim}});
        out << json{{"command", "regularity"}, {"sheaf", sheaf_name(kind)}, {"L", l.components()},
                    {"regular", r.regular}, {"violations", v}}
                   .dump(2)
            << "\n";
      } else {
        out << sheaf_name(kind) << " is " << l.to_string() << "-regular: " << (r.regular ? "yes" : "no") << "\n";
        for (const RegularityViolation& w : r.violations)
          out << "  h^" << w.i << "(" << sheaf_name(kind) << (l - w.u).to_string() << ") = " << w.dim << "  (u = "
              << w.u.to_string() << ")\n";
      }
      return kOk;
    }

    if (sub == "theorem-main") {
      RingFile rf = read_ring_file(file, field);
      MultiDegree l = MultiDegree::parse(l_text);
      check_length(l, rf.ring->space(), "L");
      std::vector<Divisor> gens;
      for (const Polynomial& f : rf.ideal.generators()) gens.push_back(Divisor::of_form(*rf.ring, f));
      TheoremMainResult r = check_theorem_main(engine, rf.ring, gens, e, m, l, force, g.threads);
      if (g.as_json()) {
        json w = json::array();
        for (const HypothesisWitness& v : r.hypothesis.witnesses)
          w.push_back({{"subset", one_based(v.subset)}, {"first", v.first + 1}, {"twist", v.twist.components()}});
        json h = json::array();
        for (std::size_t i = 0; i < r.higher.size(); ++i) h.push_back({{"i", i + 1}, {"dim", r.higher[i]}});
        out << json{{"command", "theorem-main"}, {"e", e}, {"m", m}, {"L", l.components()},
                    {"twist", r.twist.components()}, {"hypothesis", r.hypothesis.holds},
                    {"checked", r.hypothesis.checked}, {"witnesses", w}, {"cohomology", h}, {"verified", r.verified}}
                   .dump(2)
            << "\n";
      } else {
        out << "hypothesis over " << r.hypothesis.checked << " (subset, first) choices: "
            << (r.hypothesis.holds ? "holds" : "fails") << "\n";
        for (const HypothesisWitness& v : r.hypothesis.witnesses)
          out << "  subset " << subset_string(v.subset) << " first " << v.first + 1 << ": " << v.twist.to_string()
              << " not big and nef\n";
        for (std::size_t i = 0; i < r.higher.size(); ++i)
          out << "h^" << i + 1 << "(I_Y^" << m + 1 << r.twist.to_string() << ") = " << r.higher[i] << "\n";
        if (r.hypothesis.holds) out << "conclusion verified: " << (r.verified ? "yes" : "no") << "\n";
      }
      return r.hypothesis.holds && !r.verified ? kCheckFailed : kOk;
    }

    if (sub == "sharpness") {
      ProductSpace x = ProductSpace::parse(ring_text);
      std::vector<MultiDegree> d = parse_degree_list(degrees_text);
      MultiDegree n = MultiDegree::parse(n_text);
      check_length(n, x, "N");
      for (const MultiDegree& a : d) check_length(a, x, "degree");
      SharpnessResult s = sharpness_witness(x, d, n);
      std::vector<std::uint64_t> eng;
      bool agree = true;
      if (engine_check && s.chop.valid) {
        eng = generic_ci_cohomology(engine, make_ring(x, field.value_or(Field::prime())), d, s.twist, 1, g.threads);
        for (std::size_t i = 0; i < eng.size(); ++i)
          if (s.chop.dims[i] && *s.chop.dims[i] != eng[i]) agree = false;
      }
      if (g.as_json()) {
        json chop = json::array();
        for (const auto& v : s.chop.dims) chop.push_back(v ? json(*v) : json(nullptr));
        json j{{"command", "sharpness"}, {"twist", s.twist.components()}, {"valid", s.chop.valid},
               {"chop", chop}};
        j["index"] = s.index ? json(*s.index) : json(nullptr);
        j["dim"] = s.dim;
        j["h0"] = s.h0 ? json(*s.h0) : json(nullptr);
        if (engine_check) {
          j["engine"] = eng;
          j["agree"] = agree;
        }
        out << j.dump(2) << "\n";
      } else {
        out << "I_Y twisted by K + sum D + N = " << s.twist.to_string() << "\n";
        if (!s.chop.valid) {
          out << "Koszul chop invalid, blocked by:";
          for (const MultiDegree& o : s.chop.obstructions) out << " " << o.to_string();
          out << "\n";
          return kOk;
        }
        out << "chop:  ";
        for (std::size_t i = 0; i < s.chop.dims.size(); ++i)
          out << " h^" << i << "=" << (s.chop.dims[i] ? std::to_string(*s.chop.dims[i]) : "?");
        out << "\n";
        if (s.index) out << "nonvanishing at i* = " << *s.index << ", dimension " << s.dim << "\n";
        else out << "no nonvanishing for i >= 1\n";
        if (s.h0) out << "h^0 = " << *s.h0 << " (outside i >= 1)\n";
        if (engine_check) {
          out << "engine:";
          for (std::size_t i = 0; i < eng.size(); ++i) out << " h^" << i << "=" << eng[i];
          out << "\nagree: " << (agree ? "yes" : "no") << "\n";
        }
      }
      return agree ? kOk : kCheckFailed;
    }

    if (sub == "multmap") {
      ProductSpace x = ProductSpace::parse(ring_text);
      MultiDegree l1 = MultiDegree::parse(l1_text), l2 = MultiDegree::parse(l2_text);
      check_length(l1, x, "L1");
      check_length(l2, x, "L2");
      Field k = field.value_or(Field::prime());
      std::optional<bool> direct, diag, hyp;
      if (mode != "diagonal") direct = multiplication_map_check(engine, x, k, l1, l2, MultMode::DirectRank);
      if (mode != "direct") diag = multiplication_map_check(engine, x, k, l1, l2, MultMode::DiagonalVanishing, allow_large);
      if (!a_text.empty()) hyp = multiplication_hypothesis(l1, l2, parse_degree_list(a_text));
      MultiDegree kx = x.canonical_degree();
      if (g.as_json()) {
        json j{{"command", "multmap"}, {"L1", l1.components()}, {"L2", l2.components()}};
        if (direct) j["direct"] = *direct;
        if (diag) j["diagonal"] = *diag;
        if (hyp) j["hypothesis"] = *hyp;
        out << j.dump(2) << "\n";
      } else {
        out << "H^0(O" << (kx + l1).to_string() << ") x H^0(O" << (kx + l2).to_string() << ") -> H^0(O"
            << (kx + kx + l1 + l2).to_string() << ")\n";
        if (direct) out << "direct rank: " << (*direct ? "surjective" : "not surjective") << "\n";
        if (diag) out << "diagonal h^1 vanishing: " << (*diag ? "yes" : "no") << "\n";
        if (hyp) out << "L_j - sum A big and nef: " << (*hyp ? "yes" : "no") << "\n";
      }
      return kOk;
    }

    if (sub == "wahl") {
      Field k = field.value_or(Field::prime());
      WahlResult w = wahl_vanishing_check(m, wl1, wl2, k);
      std::optional<bool> red;
      if (reduction) red = wahl_reduction_holds(k, m, std::max({wl1, wl2, m + 1}) + 2);
      if (g.as_json()) {
        json j{{"command", "wahl"}, {"m", m}, {"l1", wl1}, {"l2", wl2}, {"twist", w.twist.components()},
               {"h1", w.h1}, {"vanishes", w.vanishes}};
        if (red) j["reduction"] = *red;
        out << j.dump(2) << "\n";
      } else {
        out << "I_D^" << m + 1 << " (x) O(" << wl1 - 2 << "," << wl2 - 2 << ") = O" << w.twist.to_string()
            << ", h^1 = " << w.h1 << "\n";
        out << "vanishes: " << (w.vanishes ? "yes" : "no") << "\n";
        if (red) out << "reduction to O(-(m+1),-(m+1)) verified: " << (*red ? "yes" : "no") << "\n";
      }
      return red && !*red ? kCheckFailed : kOk;
    }

    if (sub == "cones") {
      ConeFile c = read_cone_file(file);
      json j{{"command", "cones"}, {"example", c.example}};
      std::ostringstream text;
      if (c.example == "k3") {
        if (!c.nef || !c.q || c.classes.size() != 2 || c.d.size() != 1)
          throw std::invalid_argument("k3 cone file needs nef, q, two classes and one d");
        std::vector<QVec> shifts;
        for (const MultiDegree& u : compositions(2, c.d.front()))
          shifts.push_back(QuadExt::rational(u[0], c.radicand) * c.classes[0] +
                           QuadExt::rational(u[1], c.radicand) * c.classes[1]);
        std::vector<std::pair<std::string, QVec>> qs = {{"q", *c.q}};
        if (c.figure_q) qs.emplace_back("figure-q", *c.figure_q);
        for (const auto& [name, q] : qs) {
          K3Comparison k = k3_comparison(*c.nef, shifts, q);
          if (name == "q") {
            j["apex"] = to_string(k.apex, c.basis);
            text << "region apex: " << to_string(k.apex, c.basis) << "\n";
          }
          j[name] = {{"apex", to_string(q, c.basis)},
                     {"difference", to_string(k.difference, c.basis)},
                     {"coordinates", {k.difference_coordinates[0].to_string(), k.difference_coordinates[1].to_string()}},
                     {"contained", k.contained}};
          text << "inside [" << to_string(q, c.basis) << "] + Nef: " << (k.contained ? "yes" : "no")
               << " (difference has nef-ray coordinates " << k.difference_coordinates[0].to_string() << ", "
               << k.difference_coordinates[1].to_string() << ")\n";
        }
      } else if (c.example == "blowup") {
        json rows = json::array();
        for (int d : c.d) {
          BlowupComparison b = blowup_comparison(d);
          auto pt = [](const QVec& v) { return "(" + v[0].to_string() + "," + v[1].to_string() + ")"; };
          rows.push_back({{"d", d}, {"product_apex", pt(b.product_apex)}, {"ample_apex", pt(b.ample_apex)},
                          {"strict", b.ample_inside_product && !b.product_inside_ample},
                          {"witness", pt(b.witness)}, {"nef_worded_inside", b.nef_worded_inside_product}});
          text << "d=" << d << ": product region " << pt(b.product_apex) << "+Nef, ample region " << pt(b.ample_apex)
               << "+Nef, strict containment: " << (b.ample_inside_product && !b.product_inside_ample ? "yes" : "no")
               << ", witness " << pt(b.witness) << "\n";
        }
        j["rows"] = rows;
      } else {
        throw std::invalid_argument("unknown cone example '" + c.example + "'");
      }
      out << (g.as_json() ? j.dump(2) + "\n" : text.str());
      return kOk;
    }

    if (sub == "verify-paper") {
      VerifyOptions o;
      o.threads = g.threads;
      if (!fixtures.empty()) o.fixtures = fixtures;
      else if (const char* env = std::getenv("COXREG_FIXTURES")) o.fixtures = env;
      else o.fixtures = COXREG_FIXTURE_DIR;
      std::vector<std::string> ids = criteria_of(target);
      bool ok = true;
      json rows = json::array();
      for (const std::string& id : ids) {
        Check c = run_check(id, o);
        if (!c.informational && !c.pass) ok = false;
        if (g.as_json()) {
          json r{{"id", c.id}, {"title", c.title}, {"pass", c.pass}, {"informational", c.informational},
                 {"detail", c.detail}};
          if (timings) r["seconds"] = c.seconds;
          rows.push_back(r);
        } else {
          out << format_check(c, timings) << "\n";
        }
      }
      if (g.as_json()) out << json{{"command", "verify-paper"}, {"target", target}, {"checks", rows}}.dump(2) << "\n";
      return ok ? kOk : kCheckFailed;
    }
  } catch (const StabilizationNotReached& ex) {
    report(ex.what());
    return kNotStabilized;
  } catch (const InputError& ex) {
    report(ex.what());
    return kUsage;
  } catch (const ParseError& ex) {
    report(ex.what());
    return kUsage;
  } catch (const std::invalid_argument& ex) {
    report(ex.what());
    return kUsage;
  } catch (const std::exception& ex) {
    report(ex.what());
    return kCheckFailed;
  }
  return kUsage;
}

}  // namespace coxreg::cli
