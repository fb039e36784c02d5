#include "cli.hpp"

#include "adic/cones.hpp"
#include "adic/errors.hpp"
#include "adic/frobenius.hpp"
#include "adic/gallery.hpp"
#include "adic/json_io.hpp"
#include "adic/measures.hpp"
#include "adic/vershik.hpp"

#include "CLI11.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace adic::cli {

namespace {

struct Flags {
  std::size_t depth = 64;
  std::string bound = "1000000000000000000";
  bool json = false;
  std::string file, emit, sub, path, cylinder;
  std::size_t ray = 0;
  std::size_t steps = 100;
  std::size_t count = 1;
  std::size_t level = 1;
  std::vector<std::string> params;
};

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    fail(ErrorKind::Internal, "sha256 failed");
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) fail(ErrorKind::InvalidInput, "cannot open " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

Rational parse_bound(const std::string& text) {
  auto e = text.find_first_of("eE");
  Rational q;
  try {
    if (e != std::string::npos) {
      BigInt mant(text.substr(0, e));
      long ex = std::stol(text.substr(e + 1));
      if (ex < 0 || ex > 1000) fail(ErrorKind::InvalidInput, "bound exponent out of range");
      BigInt p;
      mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(ex));
      q = Rational(mant * p);
    } else {
      q = Rational(text);
      q.canonicalize();
    }
  } catch (const std::invalid_argument&) {
    fail(ErrorKind::InvalidInput, "bad bound '" + text + "'");
  }
  if (q <= 0) fail(ErrorKind::InvalidInput, "the bound must be positive");
  return q;
}

struct Session {
  const Flags& f;
  std::string digest_data;
  bool undecided = false;

  DiagramInput load(const std::string& path) {
    std::string text = read_file(path);
    digest_data += path.empty() ? "" : "\x1f" + text;
    Json j;
    try {
      j = Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorKind::InvalidInput, path + ": " + e.what());
    }
    auto in = diagram_from_json(j);
    // the depth caps truncated inputs
    const auto& s = in.diagram.seq();
    if (!s.is_periodic() && *s.horizon() > f.depth) {
      auto cut = s.truncated_to(f.depth);
      in.diagram = in.diagram.has_explicit_order() ? BratteliDiagram(cut, truncate_order(in.diagram.order(), f.depth))
                                                   : BratteliDiagram(cut);
    }
    return in;
  }

  static StableOrder truncate_order(const StableOrder& o, std::size_t n) {
    StableOrder out;
    out.incoming.assign(o.incoming.begin(), o.incoming.begin() + static_cast<long>(n));
    return out;
  }

  MatrixSequence sub_sequence(const DiagramInput& in, Embedding& emb) {
    if (!f.sub.empty()) {
      auto b = load(f.sub);
      emb = b.embedding;
      return b.diagram.seq();
    }
    if (in.base) {
      emb = in.embedding;
      return *in.base;
    }
    fail(ErrorKind::InvalidInput, "no subdiagram: pass --sub FILE or give \"base\" in the diagram file");
  }
};

Json labels_json(const Alphabet& a, const std::vector<std::uint32_t>& idx) {
  Json out = Json::array();
  for (auto i : idx) out.push_back(a.label(i));
  return out;
}

Json lambda_json(PerronRoot r) {
  Json j;
  j["charpoly"] = r.poly.to_string();
  if (r.exact) {
    j["value"] = r.exact->get_str();
  } else {
    r.refine(Rational(1, BigInt("1000000000000")));
    j["enclosure"] = Json::array({fraction(r.box.lo), fraction(r.box.hi)});
  }
  return j;
}

std::string named(const DiagramInput& in, const std::string& edge) {
  for (const auto& [k, v] : in.edge_names)
    if (v == edge) return k;
  return edge;
}

std::string expand_names(const DiagramInput& in, const std::string& text) {
  if (in.edge_names.empty()) return text;
  std::string out, tok;
  auto flush = [&] {
    auto it = in.edge_names.find(tok);
    out += it == in.edge_names.end() ? tok : it->second;
    tok.clear();
  };
  for (char ch : text) {
    if (ch == ',' || ch == '|') {
      flush();
      out += ch;
    } else {
      tok += ch;
    }
  }
  flush();
  return out;
}

Json path_json(const DiagramInput& in, const LazyPath& p) {
  const auto& d = in.diagram;
  Json j;
  j["path"] = p.to_string(d);
  if (!in.edge_names.empty()) {
    std::string s;
    for (std::size_t i = 0; i < p.prefix.size(); ++i)
      s += (i ? "," : "") + named(in, d.edge_name(p.start + i, p.prefix[i]));
    if (!p.cycle.empty()) {
      s += "|";
      for (std::size_t i = 0; i < p.cycle.size(); ++i)
        s += (i ? "," : "") + named(in, d.edge_name(p.start + p.prefix.size() + i, p.cycle[i]));
    }
    j["names"] = s;
  }
  return j;
}

MatrixSequence reduced_or_same(const MatrixSequence& s, Json& res) {
  if (is_reduced(s)) return s;
  auto r = reduce(s);
  if (r.empty_path_space) fail(ErrorKind::InvalidInput, "the diagram has no infinite paths");
  Json removed = Json::array();
  for (const auto& lvl : r.removed) removed.push_back(lvl);
  res["reduced"] = {{"removed", removed}};
  return r.seq;
}

Json cmd_decompose(Session& s) {
  auto in = s.load(s.f.file);
  Json res;
  auto seq = reduced_or_same(in.diagram.seq(), res);
  auto dec = stream_decompose(seq);
  const auto& ds = dec.seq;
  res["provisional"] = dec.provisional;
  if (dec.provisional) s.undecided = true;
  res["valid_from"] = dec.valid_from;
  res["unroll"] = dec.unroll;
  res["prefix_length"] = ds.prefix_length();
  res["cycle_length"] = ds.is_periodic() ? ds.cycle_length() : 0;
  auto kind = [](StreamKind k) {
    switch (k) {
      case StreamKind::Primitive: return "primitive";
      case StreamKind::Pool: return "pool";
    }
    return "?";
  };
  auto members = [&](const Stream& st) {
    Json m = Json::array();
    for (std::size_t l = 0; l < st.members.size(); ++l) m.push_back(labels_json(ds.alphabet(l), st.members[l]));
    return m;
  };
  Json streams = Json::array();
  for (std::size_t k = 0; k < dec.streams.size(); ++k) {
    const auto& st = dec.streams[k];
    streams.push_back({{"index", k},
                       {"kind", kind(st.kind)},
                       {"starting_time", st.starting_time},
                       {"initial", bool(dec.initial[k])},
                       {"final", bool(dec.final[k])},
                       {"members", members(st)}});
  }
  res["streams"] = streams;
  res["pool"] = members(dec.pool);
  Json blocks = Json::array();
  for (const auto& b : dec.block_matrices) blocks.push_back(b.to_string());
  res["block_matrices"] = blocks;
  if (ds.is_periodic()) {
    auto ff = frobenius_form(seq);
    Json g = Json::array();
    for (const auto& m : ff.gathered.terms()) g.push_back(m.to_string());
    Json perm = Json::array();
    for (const auto& a : ff.permutation) perm.push_back(a.labels());
    res["frobenius"] = {{"head_times", ff.head_times},
                        {"start", ff.start},
                        {"stride", ff.stride},
                        {"order", perm},
                        {"matrices", g}};
  }
  return res;
}

Json cmd_classify(Session& s) {
  auto in = s.load(s.f.file);
  Json res;
  auto seq = reduced_or_same(in.diagram.seq(), res);
  ClassifyOptions opt;
  opt.depth = s.f.depth;
  auto c = classify_measures(seq, opt);
  const auto& d = in.diagram;
  Json recs = Json::array();
  std::size_t fin = 0, inf = 0, und = 0;
  for (const auto& r : c.records) {
    Json j;
    if (r.stream) j["stream"] = *r.stream;
    if (!r.lambda.poly.is_zero()) j["lambda"] = lambda_json(r.lambda);
    j["verdict"] = finiteness_name(r.verdict);
    j["ray_level"] = r.ray_level;
    j["ray"] = ray_json(r.ray);
    j["atomic"] = r.atomic;
    if (r.atomic) {
      Json atom = Json::array();
      for (std::size_t i = 0; i < r.atom_cycle.size(); ++i)
        atom.push_back(named(in, d.edge_name(r.atom_level + i, r.atom_cycle[i])));
      j["atom"] = {{"level", r.atom_level}, {"cycle", atom}};
    }
    if (!r.infinite_at_zero.empty()) j["infinite_at_level_zero"] = r.infinite_at_zero;
    if (r.horizon) j["horizon"] = *r.horizon;
    j["witness"] = r.witness;
    recs.push_back(j);
    (r.verdict == Finiteness::Finite ? fin : r.verdict == Finiteness::Infinite ? inf : und)++;
  }
  res["provisional"] = c.provisional;
  res["finite"] = fin;
  res["infinite"] = inf;
  res["undecided"] = und;
  res["measures"] = recs;
  if (und > 0 || c.provisional) s.undecided = true;

  if (!s.f.sub.empty() || in.base) {
    Embedding emb;
    auto base = s.sub_sequence(in, emb);
    auto t = classify_subdiagram(base, seq, opt);
    Json tower = Json::array();
    for (const auto& r : t.records) {
      Json j;
      j["base_stream"] = r.base_stream;
      j["base_ray"] = ray_json(r.base_ray);
      j["verdict"] = finiteness_name(r.verdict);
      if (r.horizon) j["horizon"] = *r.horizon;
      j["witness"] = r.witness;
      if (r.verdict == Finiteness::Undecided) s.undecided = true;
      tower.push_back(j);
    }
    res["tower"] = tower;
  }
  return res;
}

Json cmd_cover(Session& s) {
  auto in = s.load(s.f.file);
  Embedding emb;
  auto base = s.sub_sequence(in, emb);
  auto cc = canonical_cover(base, in.diagram, emb);
  Json res;
  Json cover = sequence_json(cc.cover);
  if (cc.order) cover["order"] = order_json(BratteliDiagram(cc.cover, *cc.order));
  res["cover"] = cover;
  if (!cc.cover.is_periodic()) s.undecided = true;
  if (!s.f.emit.empty()) {
    std::ofstream o(s.f.emit);
    if (!o) fail(ErrorKind::InvalidInput, "cannot write " + s.f.emit);
    o << cover.dump(2) << "\n";
    res["emitted"] = s.f.emit;
  }
  return res;
}

Json cmd_measure(Session& s) {
  auto in = s.load(s.f.file);
  const auto& d = in.diagram;
  if (!is_reduced(d.seq())) fail(ErrorKind::NotReduced, "measure needs a reduced diagram");
  Word w = s.f.cylinder.empty() ? Word{} : parse_word(d, 0, expand_names(in, s.f.cylinder));
  ClassifyOptions opt;
  opt.depth = s.f.depth;
  auto c = classify_measures(d.seq(), opt);
  if (s.f.ray >= c.records.size())
    fail(ErrorKind::InvalidInput, "ray " + std::to_string(s.f.ray) + " out of range (" + std::to_string(c.records.size()) + " rays)");
  auto mu = record_measure(c, s.f.ray, w.size());
  auto cyl = cylinder(d, 0, w);
  Json res;
  res["ray"] = s.f.ray;
  res["verdict"] = finiteness_name(c.records[s.f.ray].verdict);
  res["cylinder"] = word_string(d, 0, w);
  if (!cyl) {
    res["value"] = "0";
  } else {
    auto v = measure_of_cylinder(mu, d, *cyl);
    res["value"] = value_json(v);
    if (!v.infinite && !v.is_exact()) s.undecided = true;
  }
  if (c.provisional) s.undecided = true;
  return res;
}

Json cmd_count(Session& s) {
  auto in = s.load(s.f.file);
  Json res;
  auto seq = reduced_or_same(in.diagram.seq(), res);
  std::size_t depth = s.f.depth;
  if (!seq.is_periodic()) depth = std::min(depth, *seq.horizon() - 1);
  auto ec = extreme_count(seq, depth);
  res["depth"] = ec.depth;
  res["extreme_points"] = ec.count;
  res["liminf_alphabet_size"] = ec.liminf_bound;
  if (ec.exact) {
    res["ergodic"] = *ec.exact;
  } else {
    res["ergodic"] = "Undecided";
    s.undecided = true;
  }
  return res;
}

Json cmd_successor(Session& s) {
  auto in = s.load(s.f.file);
  const auto& d = in.diagram;
  if (s.f.path.empty()) fail(ErrorKind::InvalidInput, "--path is required");
  auto p = parse_path(d, expand_names(in, s.f.path));
  Json res;
  Json steps = Json::array();
  res["start"] = path_json(in, p);
  try {
    for (std::size_t i = 0; i < s.f.count; ++i) {
      auto q = successor(d, p);
      if (!q) {
        res["maximal"] = true;
        break;
      }
      p = *q;
      steps.push_back(path_json(in, p));
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::UndeterminedTail) throw;
    res["undetermined"] = e.what();
    s.undecided = true;
  }
  res["successors"] = steps;
  return res;
}

Json cmd_simulate(Session& s) {
  auto in = s.load(s.f.file);
  const auto& d = in.diagram;
  if (s.f.path.empty()) fail(ErrorKind::InvalidInput, "--path is required");
  auto p = parse_path(d, expand_names(in, s.f.path));
  OrbitStats st;
  try {
    st = simulate_orbit(d, p, s.f.steps, s.f.level);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::UndeterminedTail) throw;
    s.undecided = true;
    return Json{{"undetermined", e.what()}};
  }
  Json res;
  res["steps"] = st.steps;
  res["stopped"] = st.stopped;
  res["cylinder_depth"] = st.cylinder_depth;
  Json visits = Json::object();
  for (const auto& [k, v] : st.visits) visits[k] = v;
  res["visits"] = visits;
  res["last"] = path_json(in, st.last);
  if (!s.f.emit.empty()) {
    std::ofstream o(s.f.emit);
    if (!o) fail(ErrorKind::InvalidInput, "cannot write " + s.f.emit);
    o << res.dump(2) << "\n";
    res["emitted"] = s.f.emit;
  }
  return res;
}

Json cmd_example(Session& s, const std::string& name) {
  std::map<std::string, std::string> params;
  for (const auto& kv : s.f.params) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) fail(ErrorKind::InvalidInput, "parameters look like key=value, got '" + kv + "'");
    params[kv.substr(0, eq)] = kv.substr(eq + 1);
    s.digest_data += "\x1f" + kv;
  }
  s.digest_data += "\x1f" + name;
  Json res;
  if (name == "list") {
    res["examples"] = example_names();
    return res;
  }
  auto e = example(name, params);
  Json j = example_json(e);
  if (name == "nested-rotation") {
    auto r = nested_rotation(e.parameters.at("n"), e.parameters.at("nhat"));
    const auto& v = r.verdict;
    Json lam = Json::array(), lamh = Json::array();
    for (const auto& b : v.lambda) lam.push_back(interval_json(b));
    for (const auto& b : v.lambda_hat) lamh.push_back(interval_json(b));
    res["rotation"] = {{"verdict", finiteness_name(v.verdict)},
                       {"period_start", v.period_start},
                       {"period", v.period},
                       {"ratio", interval_json(v.ratio)},
                       {"convergent_index", v.convergent_index},
                       {"lambda", lam},
                       {"lambda_hat", lamh},
                       {"witness", v.witness}};
    if (v.verdict == Finiteness::Undecided) s.undecided = true;
  }
  if (!s.f.emit.empty()) {
    std::ofstream o(s.f.emit);
    if (!o) fail(ErrorKind::InvalidInput, "cannot write " + s.f.emit);
    o << j.dump(2) << "\n";
    res["emitted"] = s.f.emit;
  }
  res["example"] = j;
  return res;
}

// one "key  value" line per leaf, keys aligned
void flatten(const Json& j, const std::string& key, std::vector<std::pair<std::string, std::string>>& out) {
  auto scalar = [](const Json& x) { return x.is_string() ? x.get<std::string>() : x.dump(); };
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, key.empty() ? k : key + "." + k, out);
  } else if (j.is_array()) {
    bool flat = std::all_of(j.begin(), j.end(), [](const Json& x) { return x.is_primitive(); });
    if (flat) {
      std::string s;
      for (std::size_t i = 0; i < j.size(); ++i) s += (i ? ", " : "") + scalar(j[i]);
      out.push_back({key, "(" + s + ")"});
    } else {
      for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], key + "[" + std::to_string(i) + "]", out);
    }
  } else {
    out.push_back({key, scalar(j)});
  }
}

void print_table(const Json& report, std::ostream& out) {
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(report, "", rows);
  std::size_t w = 0;
  for (const auto& r : rows) w = std::max(w, r.first.size());
  for (const auto& [k, v] : rows) out << std::left << std::setw(static_cast<int>(w + 2)) << k << v << "\n";
}

bool undecided_kind(ErrorKind k) {
  return k == ErrorKind::Undecided || k == ErrorKind::HorizonExceeded || k == ErrorKind::UndeterminedTail ||
         k == ErrorKind::InsufficientPrefix;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Flags f;
  CLI::App app{"Bratteli diagrams, streams, central measures and adic towers", "adic"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  auto common = [&](CLI::App* c) {
    c->add_option("--depth", f.depth, "matrix terms used from truncated inputs")->check(CLI::PositiveNumber);
    c->add_option("--bound", f.bound, "divergence bound for partial norms");
    c->add_flag("--json", f.json, "JSON report");
  };
  auto with_file = [&](const char* name, const char* help) {
    auto* c = app.add_subcommand(name, help);
    c->add_option("file", f.file, "diagram JSON")->required();
    common(c);
    return c;
  };
  auto* dec = with_file("decompose", "primitive streams and the Frobenius form");
  auto* cls = with_file("classify", "ergodic central measures and their finiteness");
  cls->add_option("--sub", f.sub, "subdiagram JSON for the tower verdicts");
  auto* cov = with_file("cover", "canonical cover of a subdiagram");
  cov->add_option("--sub", f.sub, "subdiagram JSON");
  cov->add_option("--emit", f.emit, "write the cover diagram here");
  auto* mea = with_file("measure", "value of a cylinder under one ergodic measure");
  mea->add_option("--ray", f.ray, "measure index from classify");
  mea->add_option("--cylinder", f.cylinder, "edges from level 0, comma separated");
  auto* cnt = with_file("count-ergodic", "extreme points of the cone approximation");
  auto* suc = with_file("successor", "Vershik successor of a path");
  suc->add_option("--path", f.path, "prefix|cycle, edges comma separated")->required();
  suc->add_option("-n", f.count, "number of steps");
  auto* sim = with_file("simulate", "orbit statistics");
  sim->add_option("--path", f.path, "prefix|cycle, edges comma separated")->required();
  sim->add_option("--steps", f.steps, "orbit length");
  sim->add_option("--level", f.level, "cylinder depth for visit counts");
  sim->add_option("--emit", f.emit, "write the statistics here");
  auto* exa = app.add_subcommand("example", "built-in examples; 'list' names them");
  std::string ex_name;
  exa->add_option("name", ex_name, "example name")->required();
  exa->add_option("params", f.params, "key=value, sequences as prefix|cycle");
  exa->add_option("--emit", f.emit, "write the example diagram here");
  common(exa);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "adic: " << e.what() << "\n";
    return 1;
  }

  Session s{f, {}, false};
  Json report;
  try {
    Rational bound = parse_bound(f.bound);
    Json res;
    std::string cmd = app.get_subcommands().front()->get_name();
    s.digest_data = cmd;
    if (cmd == "decompose") res = cmd_decompose(s);
    else if (cmd == "classify") res = cmd_classify(s);
    else if (cmd == "cover") res = cmd_cover(s);
    else if (cmd == "measure") res = cmd_measure(s);
    else if (cmd == "count-ergodic") res = cmd_count(s);
    else if (cmd == "successor") res = cmd_successor(s);
    else if (cmd == "simulate") res = cmd_simulate(s);
    else res = cmd_example(s, ex_name);
    (void)dec, (void)cnt;
    report["command"] = cmd;
    report["arguments"] = args;
    report["inputs_digest"] = sha256_hex(s.digest_data);
    report["depth"] = f.depth;
    report["bound"] = fraction(bound);
    report["status"] = s.undecided ? "Undecided" : "decided";
    report["results"] = res;
  } catch (const Error& e) {
    if (undecided_kind(e.kind())) {
      report["command"] = app.get_subcommands().front()->get_name();
      report["arguments"] = args;
      report["inputs_digest"] = sha256_hex(s.digest_data);
      report["depth"] = f.depth;
      report["bound"] = f.bound;
      report["status"] = "Undecided";
      report["results"] = {{"undecided_reason", e.what()}};
      s.undecided = true;
    } else {
      err << "adic: " << e.what() << "\n";
      return 1;
    }
  } catch (const std::exception& e) {
    err << "adic: " << e.what() << "\n";
    return 1;
  }
  if (f.json) out << report.dump(2) << "\n";
  else print_table(report, out);
  return s.undecided ? 2 : 0;
}

}  // namespace adic::cli
