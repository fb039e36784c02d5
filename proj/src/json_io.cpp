#include "adic/json_io.hpp"

#include "adic/errors.hpp"

#include <fstream>

namespace adic {

namespace {

BigInt entry(const Json& v) {
  BigInt out;
  if (v.is_number_unsigned()) return BigInt(std::to_string(v.get<std::uint64_t>()));
  if (v.is_number_integer()) {
    auto x = v.get<std::int64_t>();
    if (x < 0) fail(ErrorKind::InvalidInput, "negative matrix entry");
    return BigInt(std::to_string(x));
  }
  if (v.is_string() && out.set_str(v.get<std::string>(), 10) == 0 && out >= 0) return out;
  fail(ErrorKind::InvalidInput, "matrix entries must be nonnegative integers");
}

Json entry_json(const BigInt& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

std::vector<std::string> labels(const Json& j) {
  if (!j.is_array()) fail(ErrorKind::InvalidInput, "an alphabet is a list of labels");
  std::vector<std::string> out;
  for (const auto& x : j) {
    if (x.is_string()) out.push_back(x.get<std::string>());
    else if (x.is_number_integer()) out.push_back(std::to_string(x.get<long>()));
    else fail(ErrorKind::InvalidInput, "labels are strings");
  }
  return out;
}

std::vector<std::vector<BigInt>> rows_of(const Json& m) {
  if (!m.is_array() || m.empty()) fail(ErrorKind::InvalidInput, "a matrix is a nonempty list of rows");
  std::vector<std::vector<BigInt>> out;
  for (const auto& r : m) {
    if (!r.is_array() || r.empty()) fail(ErrorKind::InvalidInput, "a matrix row is a nonempty list");
    std::vector<BigInt> row;
    for (const auto& v : r) row.push_back(entry(v));
    if (!out.empty() && row.size() != out[0].size()) fail(ErrorKind::InvalidInput, "ragged matrix");
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace

MatrixSequence sequence_from_json(const Json& j) {
  if (!j.is_object()) fail(ErrorKind::InvalidInput, "a diagram is a JSON object");
  const bool periodic = j.contains("cycle");
  if (periodic == j.contains("terms"))
    fail(ErrorKind::InvalidInput, "give either \"prefix\"/\"cycle\" or \"terms\"");
  std::vector<std::vector<std::vector<BigInt>>> mats;
  std::size_t prefix = 0;
  if (periodic) {
    if (j.contains("prefix"))
      for (const auto& m : j.at("prefix")) mats.push_back(rows_of(m));
    prefix = mats.size();
    if (!j.at("cycle").is_array() || j.at("cycle").empty()) fail(ErrorKind::InvalidInput, "empty cycle");
    for (const auto& m : j.at("cycle")) mats.push_back(rows_of(m));
  } else {
    if (!j.at("terms").is_array() || j.at("terms").empty()) fail(ErrorKind::InvalidInput, "no terms");
    for (const auto& m : j.at("terms")) mats.push_back(rows_of(m));
  }
  const std::size_t n = mats.size();
  // alphabets for levels 0..n (level n is the prefix level when periodic)
  std::vector<Alphabet> alph(n + 1);
  if (j.contains("alphabets")) {
    const auto& a = j.at("alphabets");
    const std::size_t want = periodic ? n : n + 1;
    if (!a.is_array() || a.size() != want)
      fail(ErrorKind::InvalidInput, "\"alphabets\" needs " + std::to_string(want) + " entries");
    for (std::size_t k = 0; k < want; ++k) alph[k] = Alphabet(labels(a[k]));
    if (periodic) alph[n] = alph[prefix];
  } else if (j.contains("alphabet")) {
    Alphabet a(labels(j.at("alphabet")));
    for (auto& x : alph) x = a;
  } else {
    for (std::size_t k = 0; k < n; ++k) alph[k] = Alphabet::numbered(mats[k].size());
    alph[n] = periodic ? alph[prefix] : Alphabet::numbered(mats[n - 1][0].size());
  }
  std::vector<GenMatrix> g;
  for (std::size_t k = 0; k < n; ++k) {
    if (mats[k].size() != alph[k].size() || mats[k][0].size() != alph[k + 1].size())
      fail(ErrorKind::ShapeMismatch, "matrix " + std::to_string(k) + " does not fit its alphabets");
    g.emplace_back(alph[k], alph[k + 1], mats[k]);
  }
  if (!periodic) return MatrixSequence::truncated(g);
  std::vector<GenMatrix> pre(g.begin(), g.begin() + static_cast<long>(prefix)), cyc(g.begin() + static_cast<long>(prefix), g.end());
  return MatrixSequence::periodic(pre, cyc);
}

Embedding embedding_from_json(const Json& j) {
  Embedding e;
  if (!j.is_array()) fail(ErrorKind::InvalidInput, "\"embedding\" is a list of levels");
  for (const auto& lvl : j) {
    e.levels.emplace_back();
    for (const auto& item : lvl) {
      std::vector<std::uint32_t> idx;
      for (const auto& v : item.at("indices")) idx.push_back(v.get<std::uint32_t>());
      e.levels.back()[{item.at("from").get<std::string>(), item.at("to").get<std::string>()}] = idx;
    }
  }
  return e;
}

DiagramInput diagram_from_json(const Json& j) {
  DiagramInput in;
  try {
    auto seq = sequence_from_json(j);
    if (j.contains("order")) {
      const auto& o = j.at("order");
      if (!o.is_array() || o.size() != seq.rep_length())
        fail(ErrorKind::InvalidInput, "\"order\" needs one entry per matrix");
      StableOrder so;
      for (std::size_t k = 0; k < seq.rep_length(); ++k) {
        const GenMatrix& m = seq.terms()[k];
        std::vector<std::vector<Edge>> lvl(m.ncols());
        for (const auto& [target, list] : o[k].items()) {
          auto b = m.cols().find(target);
          if (!b) fail(ErrorKind::InvalidInput, "unknown target '" + target + "' in order level " + std::to_string(k));
          for (const auto& pair : list) {
            auto a = m.rows().find(pair.at(0).get<std::string>());
            if (!a) fail(ErrorKind::InvalidInput, "unknown source in order level " + std::to_string(k));
            lvl[*b].push_back({static_cast<std::uint32_t>(*a), static_cast<std::uint32_t>(*b), pair.at(1).get<std::uint32_t>()});
          }
        }
        so.incoming.push_back(std::move(lvl));
      }
      in.diagram = BratteliDiagram(seq, so);
    } else {
      in.diagram = BratteliDiagram(seq);
    }
    if (j.contains("base")) {
      in.base = sequence_from_json(j.at("base"));
      if (j.at("base").contains("embedding")) in.embedding = embedding_from_json(j.at("base").at("embedding"));
    }
    if (j.contains("embedding")) in.embedding = embedding_from_json(j.at("embedding"));
    if (j.contains("edge_names"))
      for (const auto& [k, v] : j.at("edge_names").items()) in.edge_names[k] = v.get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::InvalidInput, e.what());
  }
  return in;
}

DiagramInput load_diagram(const std::string& path) {
  std::ifstream f(path);
  if (!f) fail(ErrorKind::InvalidInput, "cannot open " + path);
  Json j;
  try {
    j = Json::parse(f);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::InvalidInput, path + ": " + e.what());
  }
  return diagram_from_json(j);
}

Json sequence_json(const MatrixSequence& seq) {
  Json j;
  const auto& t = seq.terms();
  Json alph = Json::array();
  for (const auto& m : t) alph.push_back(m.rows().labels());
  if (!seq.is_periodic()) alph.push_back(t.back().cols().labels());
  j["alphabets"] = alph;
  auto mat = [&](const GenMatrix& m) {
    Json rows = Json::array();
    for (const auto& r : m.to_rows()) {
      Json row = Json::array();
      for (const auto& v : r) row.push_back(entry_json(v));
      rows.push_back(row);
    }
    return rows;
  };
  // to_rows follows the display order of the row and column alphabets; the
  // column alphabet of one term is the row alphabet of the next
  if (seq.is_periodic()) {
    Json pre = Json::array(), cyc = Json::array();
    for (std::size_t k = 0; k < t.size(); ++k) (k < seq.prefix_length() ? pre : cyc).push_back(mat(t[k]));
    j["prefix"] = pre;
    j["cycle"] = cyc;
  } else {
    Json terms = Json::array();
    for (const auto& m : t) terms.push_back(mat(m));
    j["terms"] = terms;
  }
  return j;
}

Json order_json(const BratteliDiagram& d) {
  Json o = Json::array();
  const auto& seq = d.seq();
  for (std::size_t k = 0; k < seq.rep_length(); ++k) {
    const GenMatrix& m = seq.terms()[k];
    Json lvl = Json::object();
    for (std::uint32_t b = 0; b < m.ncols(); ++b) {
      Json list = Json::array();
      for (const auto& e : d.incoming(k, b)) list.push_back(Json::array({m.rows().label(e.src), e.idx}));
      lvl[m.cols().label(b)] = list;
    }
    o.push_back(lvl);
  }
  return o;
}

Json diagram_json(const BratteliDiagram& d) {
  Json j = sequence_json(d.seq());
  if (d.has_explicit_order()) j["order"] = order_json(d);
  return j;
}

Json embedding_json(const Embedding& e) {
  Json j = Json::array();
  for (const auto& lvl : e.levels) {
    Json l = Json::array();
    for (const auto& [key, idx] : lvl) l.push_back({{"from", key.first}, {"to", key.second}, {"indices", idx}});
    j.push_back(l);
  }
  return j;
}

Json example_json(const ExampleSpec& e) {
  Json j;
  j["name"] = e.name;
  Json params = Json::object();
  for (const auto& [k, v] : e.parameters) params[k] = scalar_seq_string(v);
  j["parameters"] = params;
  Json dj = diagram_json(e.diagram);
  for (const auto& [k, v] : dj.items()) j[k] = v;
  if (e.base) {
    Json b = sequence_json(*e.base);
    if (!e.embedding.levels.empty()) b["embedding"] = embedding_json(e.embedding);
    j["base"] = b;
  }
  if (!e.edge_names.empty()) j["edge_names"] = e.edge_names;
  Json ex = Json::object();
  if (e.expected.finite) ex["finite"] = *e.expected.finite;
  if (e.expected.infinite) ex["infinite"] = *e.expected.infinite;
  if (e.expected.atomic) ex["atomic"] = *e.expected.atomic;
  if (e.expected.tower) ex["tower"] = finiteness_name(*e.expected.tower);
  if (!e.expected.note.empty()) ex["note"] = e.expected.note;
  j["expected"] = ex;
  return j;
}

std::string fraction(const Rational& q) { return fraction_string(q); }

Json interval_json(const Interval& box) {
  if (box.lo == box.hi) return fraction(box.lo);
  return Json::array({fraction(box.lo), fraction(box.hi)});
}

Json value_json(const MeasureValue& v) {
  if (v.infinite) return "Infinite";
  return interval_json(v.box);
}

Json ray_json(const EigenRay& r) {
  Json out = Json::array();
  if (r.exact) {
    for (const auto& x : r.value) out.push_back(fraction(x));
  } else {
    for (const auto& b : r.box) out.push_back(interval_json(b));
  }
  return out;
}

}  // namespace adic
