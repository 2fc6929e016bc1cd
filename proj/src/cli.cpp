#include "hermlock/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <map>
#include <ostream>
#include <sstream>

#include "hermlock/counting.hpp"
#include "hermlock/oracle.hpp"
#include "hermlock/serialize.hpp"

namespace hermlock::cli {

namespace {

enum class Format { Json, Csv, Md };

Format parse_format(const std::string& s) {
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  return Format::Md;
}

/// Rows of records sharing one column set.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Json>> rows;
};

std::string cell_text(const Json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string md_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += '\\';
    out += c;
  }
  return out;
}

void emit_markdown(std::ostream& out, const std::vector<std::string>& columns,
                   const std::vector<std::vector<std::string>>& rows) {
  out << '|';
  for (const auto& c : columns) out << ' ' << md_escape(c) << " |";
  out << "\n|";
  for (std::size_t i = 0; i < columns.size(); ++i) out << "---|";
  out << '\n';
  for (const auto& r : rows) {
    out << '|';
    for (const auto& c : r) out << ' ' << md_escape(c) << " |";
    out << '\n';
  }
}

/// JSON is one object per line; CSV and Markdown are plain tables.
void emit(std::ostream& out, const Table& t, Format f) {
  switch (f) {
    case Format::Json:
      for (const auto& r : t.rows) {
        Json obj = Json::object();
        for (std::size_t i = 0; i < t.columns.size(); ++i) obj[t.columns[i]] = r[i];
        out << obj.dump() << '\n';
      }
      break;
    case Format::Csv: {
      for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << csv_escape(t.columns[i]);
      out << '\n';
      for (const auto& r : t.rows) {
        for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << csv_escape(cell_text(r[i]));
        out << '\n';
      }
      break;
    }
    case Format::Md: {
      std::vector<std::vector<std::string>> rows;
      for (const auto& r : t.rows) {
        rows.emplace_back();
        for (const auto& c : r) rows.back().push_back(cell_text(c));
      }
      emit_markdown(out, t.columns, rows);
      break;
    }
  }
}

class UsageError : public std::runtime_error {
 public:
  UsageError(const std::string& what, std::string hint) : std::runtime_error(what), hint(std::move(hint)) {}
  std::string hint;
};

std::vector<std::uint64_t> parse_uint_list(const std::string& text, const std::string& flag) {
  std::vector<std::uint64_t> out;
  const auto number = [&](std::string_view s) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
      throw UsageError("bad value '" + std::string(s) + "' for " + flag, "use a list like 2,3 or a range like 2..6");
    return v;
  };
  std::string_view rest = text;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const auto item = rest.substr(0, comma);
    const auto dots = item.find("..");
    if (dots == std::string_view::npos) {
      out.push_back(number(item));
    } else {
      const auto lo = number(item.substr(0, dots)), hi = number(item.substr(dots + 2));
      if (lo > hi) throw UsageError("empty range '" + std::string(item) + "' for " + flag, "write the range as low..high");
      for (auto v = lo; v <= hi; ++v) out.push_back(v);
    }
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  if (out.empty()) throw UsageError(flag + " needs at least one value", "use a list like 2,3 or a range like 2..6");
  return out;
}

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

Json parse_json(const std::string& text, const std::string& flag) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw UsageError(flag + " is not valid JSON: " + e.what(), "quote the value, e.g. " + flag + " '[[1,0],[0,-1]]'");
  }
}

/// Options naming a hermitian space: a ring plus a Gram matrix or a standard type.
struct SpaceOptions {
  std::string ring;
  std::string gram;
  std::size_t m = 0;
  std::string kind = "I";

  void add(CLI::App* app) {
    app->add_option("--ring", ring, "ring spec, e.g. orth:p=3,f=1,e=2")->required();
    app->add_option("--gram", gram, "Gram matrix as JSON rows of entries");
    app->add_option("--m", m, "rank of the standard form (instead of --gram)");
    app->add_option("--kind", kind, "kind of the standard form: I or II")->check(CLI::IsMember({"I", "II", "1", "2"}));
  }

  HermitianSpace build() const {
    const Ring r(parse_ring_spec(ring));
    if (!gram.empty()) return HermitianSpace(mat_from_json(r, parse_json(gram, "--gram")));
    if (m == 0) throw UsageError("a space needs --gram or --m", "add --m 2 --kind I or --gram '[[1,0],[0,-1]]'");
    return standard_space(r, m, parse_kind(kind));
  }
};

struct DegreeGrid {
  std::string q = "3";
  std::string l = "1";
  std::string m = "2";
  std::string kind = "I,II";
  std::string t = "square,nonsquare,nonunit";

  void add(CLI::App* app, bool defaults_for_tables) {
    if (defaults_for_tables) {
      q = "3,5";
      l = "1,2,3";
      m = "2..6";
    }
    app->add_option("--q", q, "residue field sizes (list)")->capture_default_str();
    app->add_option("--l", l, "nilpotency degrees (list)")->capture_default_str();
    app->add_option("--m", m, "ranks (list or range)")->capture_default_str();
    app->add_option("--kind", kind, "kinds: I, II or I,II")->capture_default_str();
    app->add_option("--t", t, "t-classes: square, nonsquare, nonunit")->capture_default_str();
  }

  struct Entry {
    std::uint64_t q;
    int l;
    std::size_t m;
    Kind kind;
    LengthClass t;
  };

  std::vector<Entry> entries() const {
    std::vector<Entry> out;
    std::vector<Kind> kinds;
    std::vector<LengthClass> ts;
    try {
      for (const auto& k : split(kind)) kinds.push_back(parse_kind(k));
      for (const auto& c : split(t)) ts.push_back(parse_length_class(c));
    } catch (const Error& e) {
      throw UsageError(e.what(), "kinds are I/II and t-classes are square, nonsquare, nonunit");
    }
    for (auto qq : parse_uint_list(q, "--q"))
      for (auto ll : parse_uint_list(l, "--l"))
        for (auto mm : parse_uint_list(m, "--m"))
          for (Kind k : kinds)
            for (LengthClass c : ts) out.push_back({qq, static_cast<int>(ll), static_cast<std::size_t>(mm), k, c});
    return out;
  }
};

int cmd_order(const std::string& ring, std::size_t m, const std::string& kind, const std::string& method,
              Format f, std::ostream& out) {
  const GroupOrderQuery q{RingShape::of(parse_ring_spec(ring)), m, parse_kind(kind)};
  BigInt value;
  if (method == "specialized") {
    const auto v = unitary_order_specialized(q);
    if (!v) throw Error(ErrorKind::InvalidQuery, "no specialized formula for the skew family");
    value = *v;
  } else if (method == "alternate") {
    value = unitary_order_alternate(q);
  } else {
    value = unitary_order(q);
  }
  emit(out, {{"order"}, {{bigint_to_json(value)}}}, f);
  return kOk;
}

int cmd_degrees(const DegreeGrid& grid, bool verbose, Format f, std::ostream& out, std::ostream& err) {
  const auto entries = grid.entries();
  if (entries.size() == 1 && !verbose) {
    const auto& e = entries.front();
    const auto w = weil_degree(e.q, e.l, e.m, e.kind, e.t);
    emit(out, {{"index", "c", "degree"}, {{bigint_to_json(w.index), bigint_to_json(w.c), bigint_to_json(w.degree)}}}, f);
    return kOk;
  }
  Table t{{"q", "l", "m", "kind", "t", "index", "c", "degree", "case"}, {}};
  std::size_t skipped = 0;
  for (const auto& e : entries) {
    try {
      const auto w = weil_degree(e.q, e.l, e.m, e.kind, e.t);
      t.rows.push_back({e.q, e.l, e.m, std::string(kind_name(e.kind)), std::string(length_class_name(e.t)),
                        bigint_to_json(w.index), bigint_to_json(w.c), bigint_to_json(w.degree), w.case_label});
    } catch (const Error& ex) {
      if (ex.kind() != ErrorKind::InvalidCase || entries.size() == 1) throw;
      ++skipped;
    }
  }
  if (skipped) err << "note: skipped " << skipped << " unreachable case(s)\n";
  emit(out, t, f);
  return kOk;
}

int cmd_tables(const DegreeGrid& grid, Format f, std::ostream& out) {
  const auto entries = grid.entries();
  std::vector<std::string> cols;
  std::vector<std::pair<Kind, LengthClass>> keys;
  for (const auto& e : entries) {
    const auto key = std::make_pair(e.kind, e.t);
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) keys.push_back(key);
  }
  for (const auto& [k, c] : keys) cols.push_back(std::string(kind_name(k)) + "/" + std::string(length_class_name(c)));

  // (q, l) -> m -> column -> degree
  std::map<std::pair<std::uint64_t, int>, std::map<std::size_t, std::map<std::size_t, Json>>> cells;
  std::vector<std::pair<std::uint64_t, int>> blocks;
  std::vector<std::size_t> ms;
  for (const auto& e : entries) {
    const auto block = std::make_pair(e.q, e.l);
    if (std::find(blocks.begin(), blocks.end(), block) == blocks.end()) blocks.push_back(block);
    if (std::find(ms.begin(), ms.end(), e.m) == ms.end()) ms.push_back(e.m);
    const std::size_t col = std::find(keys.begin(), keys.end(), std::make_pair(e.kind, e.t)) - keys.begin();
    Json value = nullptr;
    try {
      value = bigint_to_json(weil_degree(e.q, e.l, e.m, e.kind, e.t).degree);
    } catch (const Error& ex) {
      if (ex.kind() != ErrorKind::InvalidCase) throw;
    }
    cells[block][e.m][col] = value;
  }

  if (f == Format::Md) {
    bool first = true;
    for (const auto& block : blocks) {
      if (!first) out << '\n';
      first = false;
      out << "### q = " << block.first << ", l = " << block.second << "\n\n";
      std::vector<std::string> header = {"m"};
      header.insert(header.end(), cols.begin(), cols.end());
      std::vector<std::vector<std::string>> rows;
      for (std::size_t m : ms) {
        rows.push_back({std::to_string(m)});
        for (std::size_t c = 0; c < cols.size(); ++c) {
          const Json& v = cells[block][m][c];
          rows.back().push_back(v.is_null() ? "-" : cell_text(v));
        }
      }
      emit_markdown(out, header, rows);
    }
    return kOk;
  }
  Table t{{"q", "l", "m"}, {}};
  t.columns.insert(t.columns.end(), cols.begin(), cols.end());
  for (const auto& block : blocks)
    for (std::size_t m : ms) {
      std::vector<Json> row = {block.first, block.second, m};
      for (std::size_t c = 0; c < cols.size(); ++c) row.push_back(cells[block][m][c]);
      t.rows.push_back(std::move(row));
    }
  emit(out, t, f);
  return kOk;
}

int cmd_classify(const SpaceOptions& so, Format f, std::ostream& out) {
  const HermitianSpace s = so.build();
  const auto o = orthogonalize(s);
  Json lengths = Json::array();
  for (const auto& d : o.std_lengths) lengths.push_back(elem_to_json(d));
  emit(out, {{"kind", "dim", "standard_lengths"}, {{std::string(kind_name(classify_kind(s))), s.dim(), lengths}}}, f);
  return kOk;
}

void emit_unitary(std::ostream& out, const UnitaryElement& g, Format f) {
  const Json j = unitary_to_json(g);
  if (f == Format::Json) {
    out << j.dump() << '\n';
    return;
  }
  emit(out, {{"ring", "gram", "matrix"}, {{j["ring"], j["gram"].dump(), j["matrix"].dump()}}}, f);
}

int cmd_witness(const SpaceOptions& so, const std::string& v, const std::string& w, Format f, std::ostream& out) {
  const HermitianSpace s = so.build();
  const Mat vv = vector_from_json(s.ring(), parse_json(v, "--v"));
  const Mat ww = vector_from_json(s.ring(), parse_json(w, "--w"));
  emit_unitary(out, transitivity_witness(s, vv, ww), f);
  return kOk;
}

int cmd_lift(const SpaceOptions& so, const std::string& gbar, int k, Format f, std::ostream& out) {
  const HermitianSpace s = so.build();
  const HermitianSpace sbar = reduce(s, k);
  emit_unitary(out, lift(s, mat_from_json(sbar.ring(), parse_json(gbar, "--gbar"))), f);
  return kOk;
}

int cmd_fibers(const SpaceOptions& so, Format f, std::ostream& out) {
  const HermitianSpace s = so.build();
  Table t{{"length", "class", "count"}, {}};
  for (const auto& fib : length_fibers(s)) {
    t.rows.push_back({elem_to_json(fib.length), std::string(length_class_name(classify_length(fib.length))), fib.count});
  }
  emit(out, t, f);
  return kOk;
}

Json number_or_text(const std::string& s) {
  if (!s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
    return bigint_to_json(BigInt(s));
  if (s == "true") return true;
  if (s == "false") return false;
  return s;
}

int cmd_verify(const std::string& grid, Format f, std::ostream& out, std::ostream& err) {
  const auto records = run_verify(grid);
  Table t{{"check", "instance", "expected", "actual", "pass"}, {}};
  std::size_t failed = 0;
  for (const auto& r : records) {
    t.rows.push_back({r.check, r.instance, number_or_text(r.expected), number_or_text(r.actual), r.pass});
    if (!r.pass) ++failed;
  }
  emit(out, t, f);
  err << records.size() << " checks, " << failed << " failed\n";
  return failed ? kDomainError : kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hermitian forms and unitary groups over finite local rings", "hermlock"};
  app.require_subcommand(1);
  std::string format = "json";
  const auto add_format = [&](CLI::App* sub, const std::string& def) {
    format = def;
    sub->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv", "md"}))->capture_default_str();
  };

  auto* order = app.add_subcommand("order", "order of the unitary group U_m(A)");
  std::string ring, kind = "I", method = "zxz";
  std::size_t m = 0;
  order->add_option("--ring", ring, "ring spec")->required();
  order->add_option("--m", m, "rank")->required()->check(CLI::PositiveNumber);
  order->add_option("--kind", kind, "I or II")->check(CLI::IsMember({"I", "II", "1", "2"}));
  order->add_option("--method", method, "zxz, specialized or alternate")
      ->check(CLI::IsMember({"zxz", "specialized", "alternate"}));

  auto* degrees = app.add_subcommand("degrees", "Weil degrees over a (q, l, m, kind, t) grid");
  DegreeGrid dgrid;
  bool verbose = false;
  dgrid.add(degrees, false);
  degrees->add_flag("--verbose", verbose, "full records even for a single query");

  auto* tables = app.add_subcommand("tables", "Weil degree tables, rows m, columns kind/t");
  DegreeGrid tgrid;
  tgrid.add(tables, true);

  SpaceOptions cls, wit, lif, fib;
  auto* classify = app.add_subcommand("classify", "kind of a hermitian form");
  cls.add(classify);
  auto* witness = app.add_subcommand("witness", "unitary g with g v = w");
  wit.add(witness);
  std::string v, w;
  witness->add_option("--v", v, "source vector (JSON)")->required();
  witness->add_option("--w", w, "target vector (JSON)")->required();
  auto* liftc = app.add_subcommand("lift", "lift a unitary matrix over A/r^k to A");
  lif.add(liftc);
  std::string gbar;
  int level = 1;
  liftc->add_option("--gbar", gbar, "matrix over A/r^k (JSON)")->required();
  liftc->add_option("--k", level, "level k of the quotient")->capture_default_str();
  auto* fibers = app.add_subcommand("fibers", "number of primitive vectors of each length");
  fib.add(fibers);
  auto* verify = app.add_subcommand("verify", "oracle cross-checks");
  std::string grid = "small";
  verify->add_option("--grid", grid, "small or full")->check(CLI::IsMember({"small", "full"}))->capture_default_str();

  for (auto* sub : {order, degrees, classify, witness, liftc, fibers, verify}) add_format(sub, "json");
  add_format(tables, "md");
  format = "json";

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    const auto subs = app.get_subcommands();
    err << "hint: run 'hermlock " << (subs.empty() ? std::string() : subs.front()->get_name() + " ") << "--help'\n";
    return kUsageError;
  }
  const auto* sub = app.get_subcommands().front();
  if (sub == tables && !tables->count("--format")) format = "md";
  const Format f = parse_format(format);

  try {
    if (sub == order) return cmd_order(ring, m, kind, method, f, out);
    if (sub == degrees) return cmd_degrees(dgrid, verbose, f, out, err);
    if (sub == tables) return cmd_tables(tgrid, f, out);
    if (sub == classify) return cmd_classify(cls, f, out);
    if (sub == witness) return cmd_witness(wit, v, w, f, out);
    if (sub == liftc) return cmd_lift(lif, gbar, level, f, out);
    if (sub == fibers) return cmd_fibers(fib, f, out);
    if (sub == verify) return cmd_verify(grid, f, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\nhint: " << e.hint << '\n';
    return kUsageError;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ParseError) {
      const bool budget = std::string(e.what()).find("budget") != std::string::npos;
      err << "usage error: " << e.what() << "\nhint: "
          << (budget ? "HERMLOCK_BUDGET takes a node count like 1e8 or a list like nodes=1e8,ring=81,m=3"
                     : "ring specs look like orth:p=3,f=1,e=2 or skew:p=3,f=1,n=2")
          << '\n';
      return kUsageError;
    }
    err << "error: " << e.what() << '\n';
    return kDomainError;
  }
  return kUsageError;
}

}  // namespace hermlock::cli
