#include "adic/gallery.hpp"

#include "adic/errors.hpp"

#include <algorithm>
#include <sstream>

namespace adic {

namespace {

MatrixSequence scalar_sequence(const ScalarSeq& n) {
  auto one = [](const BigInt& v) {
    if (v < 1) fail(ErrorKind::NonPositiveEntry, "odometer term " + v.get_str() + " < 1");
    return GenMatrix(Alphabet::numbered(1), Alphabet::numbered(1), {{v}});
  };
  if (n.cycle.empty()) fail(ErrorKind::InvalidInput, "scalar sequence without a cycle");
  std::vector<GenMatrix> pre, cyc;
  for (const auto& v : n.prefix) pre.push_back(one(v));
  for (const auto& v : n.cycle) cyc.push_back(one(v));
  return MatrixSequence::periodic(pre, cyc);
}

ExampleSpec single(const std::string& name, const GenMatrix& m) {
  ExampleSpec e;
  e.name = name;
  e.diagram = BratteliDiagram(MatrixSequence::constant(m));
  return e;
}

// e^x for 0 < x <= 1 between two rationals
Interval exp_box(const Rational& x) {
  Rational sum = 1, term = 1;
  for (int j = 1; j <= 30; ++j) {
    term = term * x / j;
    sum += term;
  }
  // remainder below twice the next term
  Rational next = term * x / 31;
  return {sum, sum + 2 * next};
}

BigInt ceil_exp(const Rational& x) {
  Interval b = exp_box(x);
  mpz_class lo, hi;
  mpz_cdiv_q(lo.get_mpz_t(), b.lo.get_num_mpz_t(), b.lo.get_den_mpz_t());
  mpz_cdiv_q(hi.get_mpz_t(), b.hi.get_num_mpz_t(), b.hi.get_den_mpz_t());
  if (lo != hi) fail(ErrorKind::Internal, "exponential too close to an integer");
  return lo;
}

bool same_tail(const ScalarSeq& a, const ScalarSeq& b, std::size_t p, std::size_t c) {
  for (std::size_t i = p; i < p + c; ++i)
    if (a[i] != b[i]) return false;
  return true;
}

}  // namespace

BratteliDiagram odometer(const ScalarSeq& n) { return BratteliDiagram(scalar_sequence(n)); }

ExampleSpec chacon() {
  Alphabet ab({"0", "1"});
  GenMatrix m(ab, ab, {{1, 1}, {0, 3}});
  auto seq = MatrixSequence::constant(m);
  Substitution rho{{"0", {"0"}}, {"1", {"1", "1", "0", "1"}}};
  ExampleSpec e;
  e.name = "chacon";
  e.diagram = BratteliDiagram(seq, substitution_order(seq, {rho}));
  e.edge_names = {{"a", "1>1#0"}, {"b", "1>1#1"}, {"c", "0>1#0"}, {"d", "1>1#2"}, {"e", "0>0#0"}};
  e.expected.finite = 2;
  e.expected.infinite = 0;
  e.expected.atomic = 1;
  e.expected.note = "rays (1/3, 2/3) and the atom on the loop e";
  return e;
}

ExampleSpec ics(IcsModel model) {
  ExampleSpec e;
  if (model == IcsModel::Triadic) {
    e.name = "ics-triadic";
    e.parameters = {{"base", ScalarSeq::constant(2)}, {"ambient", ScalarSeq::constant(3)}};
    e.diagram = odometer(ScalarSeq::constant(3));
    e.base = scalar_sequence(ScalarSeq::constant(2));
    // digits 0 and 2 of each triadic place
    e.embedding.levels.resize(1);
    e.embedding.levels[0][{"0", "0"}] = {0, 2};
    e.expected.finite = 1;
    e.expected.infinite = 0;
    e.expected.tower = Finiteness::Infinite;
    e.expected.note = "Lebesgue measure restricted to the Cantor set generates an infinite tower";
    return e;
  }
  Alphabet ab({"0", "1"});
  GenMatrix m(ab, ab, {{3, 1}, {0, 2}});
  auto seq = MatrixSequence::constant(m);
  Substitution rho{{"0", {"0", "0", "0"}}, {"1", {"1", "0", "1"}}};
  e.name = "ics-cover";
  e.diagram = BratteliDiagram(seq, substitution_order(seq, {rho}));
  e.expected.finite = 1;
  e.expected.infinite = 1;
  e.expected.atomic = 0;
  e.expected.note = "the measure of the lower block is locally infinite";
  return e;
}

ExampleSpec nested_odometer(const ScalarSeq& base, const ScalarSeq& ambient) {
  ExampleSpec e;
  e.name = "nested-odometer";
  e.parameters = {{"base", base}, {"ambient", ambient}};
  auto b = scalar_sequence(base);
  auto a = scalar_sequence(ambient);
  const std::size_t p = std::max(base.prefix.size(), ambient.prefix.size());
  const std::size_t c = lcm_size(base.cycle.size(), ambient.cycle.size());
  for (std::size_t i = 0; i < p + c; ++i)
    if (base[i] > ambient[i])
      fail(ErrorKind::NotNested, "base term " + base[i].get_str() + " exceeds " + ambient[i].get_str() + " at " +
                                     std::to_string(i));
  e.diagram = BratteliDiagram(a);
  e.base = b;
  e.expected.finite = 1;
  e.expected.infinite = 0;
  // the tower mass is the product of a_k / b_k
  e.expected.tower = same_tail(base, ambient, p, c) ? Finiteness::Finite : Finiteness::Infinite;
  return e;
}

ExampleSpec nested_odometer_exponential() {
  // b_k = 2^-k; from k = 1 on, e^{b_k} <= e^{1/2} < 2, so the terms settle
  // after the first one. Two terms are enough to see the cycle.
  std::vector<BigInt> n;
  for (std::size_t k = 0; k < 2; ++k) {
    Rational bk(1);
    bk /= Rational(BigInt(1) << static_cast<mp_bitcnt_t>(k));
    n.push_back(ceil_exp(bk));
  }
  ScalarSeq amb{{n[0]}, {n[1]}};
  ScalarSeq base{{n[0] - 1}, {n[1] - 1}};
  ExampleSpec e = nested_odometer(base, amb);
  e.name = "nested-odometer-exp";
  e.expected.note = "the base keeps one of two edges at every level from 1 on";
  return e;
}

CfEnclosure cf_enclosure(const ScalarSeq& n, std::size_t i, std::size_t k) {
  BigInt p2 = 1, q2 = 0, p1 = n[i], q1 = 1;  // convergents -1 and 0
  if (p1 < 1) fail(ErrorKind::NonPositiveEntry, "continued fraction term < 1");
  BigInt pk = p1, qk = q1;
  for (std::size_t j = 1; j <= k + 1; ++j) {
    const BigInt& a = n[i + j];
    if (a < 1) fail(ErrorKind::NonPositiveEntry, "continued fraction term < 1");
    BigInt p = a * p1 + p2, q = a * q1 + q2;
    p2 = p1;
    q2 = q1;
    p1 = p;
    q1 = q;
    if (j == k) {
      pk = p1;
      qk = q1;
    }
  }
  // p1/q1 is now convergent k+1, pk/qk convergent k
  Rational ck(pk, qk), ck1(p1, q1);
  ck.canonicalize();
  ck1.canonicalize();
  CfEnclosure out;
  out.box = {std::min(ck, ck1), std::max(ck, ck1)};
  out.qk = qk;
  out.qk1 = q1;
  return out;
}

MatrixSequence rotation_sequence(const ScalarSeq& n) {
  if (n.cycle.empty()) fail(ErrorKind::InvalidInput, "rotation data without a cycle");
  Alphabet ab({"A", "B"});
  auto term = [&](std::size_t i) {
    const BigInt& v = n[i];
    if (v < 1) fail(ErrorKind::NonPositiveEntry, "rotation term < 1");
    if (i % 2 == 0) return GenMatrix(ab, ab, {{1, 0}, {v, 1}});
    return GenMatrix(ab, ab, {{1, v}, {0, 1}});
  };
  const std::size_t p = n.prefix.size(), c = lcm_size(n.cycle.size(), 2);
  std::vector<GenMatrix> pre, cyc;
  for (std::size_t i = 0; i < p; ++i) pre.push_back(term(i));
  for (std::size_t i = p; i < p + c; ++i) cyc.push_back(term(i));
  return MatrixSequence::periodic(pre, cyc);
}

BratteliDiagram rotation_diagram(const ScalarSeq& n) {
  auto seq = rotation_sequence(n);
  std::vector<Substitution> subs;
  for (std::size_t i = 0; i < seq.rep_length(); ++i) {
    const std::size_t v = n[i].get_ui();
    Substitution s;
    if (i % 2 == 0) {
      s["A"] = {"A"};
      s["A"].insert(s["A"].end(), v, "B");
      s["B"] = {"B"};
    } else {
      s["A"] = {"A"};
      s["B"] = std::vector<std::string>(v, "A");
      s["B"].push_back("B");
    }
    subs.push_back(std::move(s));
  }
  return BratteliDiagram(seq, substitution_order(seq, subs));
}

NestedRotation nested_rotation(const ScalarSeq& n, const ScalarSeq& nhat, std::size_t max_convergent) {
  const std::size_t p = std::max(n.prefix.size(), nhat.prefix.size());
  const std::size_t c = lcm_size(n.cycle.size(), nhat.cycle.size());
  for (std::size_t i = 0; i < p + c; ++i)
    if (n[i] > nhat[i])
      fail(ErrorKind::NotNested, "n_" + std::to_string(i) + " = " + n[i].get_str() + " exceeds " + nhat[i].get_str());

  NestedRotation out;
  out.base = rotation_sequence(n);
  out.ambient = rotation_sequence(nhat);
  out.base_diagram = rotation_diagram(n);
  out.ambient_diagram = rotation_diagram(nhat);

  RotationVerdict& v = out.verdict;
  v.period_start = p;
  v.period = c;
  if (same_tail(n, nhat, p, c)) {
    v.verdict = Finiteness::Finite;
    v.ratio = {1, 1};
    v.ratio_exact = true;
    v.witness = "lambda-hat_i = lambda_i for i >= " + std::to_string(p) + "; the ratio of products is eventually constant";
  }
  // doubling the convergent index until the ratio separates from 1
  for (std::size_t k = 4;; k = std::min(2 * k, max_convergent)) {
    v.convergent_index = k;
    v.lambda.clear();
    v.lambda_hat.clear();
    for (std::size_t i = 0; i < p + c; ++i) {
      v.lambda.push_back(cf_enclosure(n, i, k).box);
      v.lambda_hat.push_back(cf_enclosure(nhat, i, k).box);
    }
    if (v.ratio_exact) break;
    Interval r{1, 1};
    for (std::size_t i = p; i < p + c; ++i)
      r = r * Interval{v.lambda_hat[i].lo / v.lambda[i].hi, v.lambda_hat[i].hi / v.lambda[i].lo};
    v.ratio = r;
    if (r.lo > 1) {
      v.verdict = Finiteness::Infinite;
      v.witness = "per-period ratio > " + r.lo.get_str() + " > 1, so lambda-hat_0^n / lambda_0^n grows geometrically";
      break;
    }
    if (r.hi < 1) {
      v.verdict = Finiteness::Finite;
      v.witness = "per-period ratio < " + r.hi.get_str() + " < 1";
      break;
    }
    if (k == max_convergent) {
      v.witness = "ratio interval still contains 1 at convergent " + std::to_string(k);
      break;
    }
  }
  return out;
}

MatrixSequence frobenius_seven() {
  auto N = [](const std::vector<std::vector<long>>& r) { return GenMatrix::of(r); };
  std::vector<GenMatrix> pre = {
      N({{1, 1}}),
      N({{1, 0, 0, 0}, {0, 1, 1, 1}}),
      N({{1, 0, 0, 0}, {1, 0, 1, 0}, {1, 0, 0, 1}, {0, 1, 1, 0}}),
      N({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, 0, 1}}),
      N({{1, 0, 1, 0}, {0, 1, 0, 1}, {0, 0, 1, 1}}),
  };
  std::vector<GenMatrix> cyc = {
      N({{1, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 1, 1}, {0, 0, 0, 1}}),
      N({{1, 1, 0, 0}, {0, 1, 1, 0}, {0, 0, 1, 0}, {0, 0, 1, 1}}),
  };
  return MatrixSequence::periodic(pre, cyc);
}

ScalarSeq parse_scalar_seq(const std::string& text) {
  auto list = [&](const std::string& s) {
    std::vector<BigInt> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
      if (item.empty()) continue;
      BigInt v;
      if (v.set_str(item, 10) != 0) fail(ErrorKind::InvalidInput, "not an integer: '" + item + "'");
      out.push_back(v);
    }
    return out;
  };
  ScalarSeq s;
  auto bar = text.find('|');
  if (bar == std::string::npos) {
    s.cycle = list(text);
  } else {
    s.prefix = list(text.substr(0, bar));
    s.cycle = list(text.substr(bar + 1));
  }
  if (s.cycle.empty()) fail(ErrorKind::InvalidInput, "sequence '" + text + "' has no cycle");
  return s;
}

std::string scalar_seq_string(const ScalarSeq& s) {
  auto join = [](const std::vector<BigInt>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + v[i].get_str();
    return out;
  };
  if (s.prefix.empty()) return join(s.cycle);
  return join(s.prefix) + "|" + join(s.cycle);
}

std::vector<std::string> example_names() {
  return {"chacon",          "dyadic",          "frobenius-seven", "golden-mean",    "ics-cover",
          "ics-triadic",     "nested-odometer", "nested-odometer-bruin", "nested-odometer-exp",
          "nested-rotation", "odometer",        "triadic",         "triangle-23",    "triangle-32"};
}

ExampleSpec example(const std::string& name, const std::map<std::string, std::string>& params) {
  auto param = [&](const std::string& key, const std::string& dflt) {
    auto it = params.find(key);
    return parse_scalar_seq(it == params.end() ? dflt : it->second);
  };
  for (const auto& [k, _] : params) {
    static const std::vector<std::string> known = {"n", "nhat", "base", "ambient"};
    if (std::find(known.begin(), known.end(), k) == known.end())
      fail(ErrorKind::InvalidInput, "unknown parameter '" + k + "'");
  }
  auto odo = [](const std::string& nm, const ScalarSeq& n) {
    ExampleSpec e;
    e.name = nm;
    e.parameters = {{"n", n}};
    e.diagram = odometer(n);
    e.expected.finite = 1;
    e.expected.infinite = 0;
    e.expected.atomic = 0;
    return e;
  };
  if (name == "odometer") return odo(name, param("n", "2"));
  if (name == "dyadic") return odo(name, ScalarSeq::constant(2));
  if (name == "triadic") return odo(name, ScalarSeq::constant(3));
  if (name == "chacon") return chacon();
  if (name == "ics-triadic") return ics(IcsModel::Triadic);
  if (name == "ics-cover") return ics(IcsModel::Cover);
  if (name == "triangle-23") {
    auto e = single(name, GenMatrix::of({{2, 1}, {0, 3}}));
    e.expected.finite = 2;
    e.expected.infinite = 0;
    e.expected.atomic = 0;
    return e;
  }
  if (name == "triangle-32") {
    auto e = single(name, GenMatrix::of({{3, 1}, {0, 2}}));
    e.expected.finite = 1;
    e.expected.infinite = 1;
    e.expected.atomic = 0;
    return e;
  }
  if (name == "golden-mean") {
    auto e = single(name, GenMatrix::of({{1, 1}, {1, 0}}));
    e.expected.finite = 1;
    e.expected.infinite = 0;
    e.expected.atomic = 0;
    return e;
  }
  if (name == "frobenius-seven") {
    ExampleSpec e;
    e.name = name;
    e.diagram = BratteliDiagram(frobenius_seven());
    e.expected.finite = 2;
    e.expected.infinite = 1;
    e.expected.atomic = 1;
    e.expected.note = "three primitive streams";
    return e;
  }
  if (name == "nested-odometer") return nested_odometer(param("base", "2,1"), param("ambient", "2"));
  if (name == "nested-odometer-bruin") {
    auto e = nested_odometer(ScalarSeq{{}, {2, 1}}, ScalarSeq::constant(2));
    e.name = name;
    return e;
  }
  if (name == "nested-odometer-exp") return nested_odometer_exponential();
  if (name == "nested-rotation") {
    auto n = param("n", "1"), nhat = param("nhat", "2");
    auto r = nested_rotation(n, nhat);
    ExampleSpec e;
    e.name = name;
    e.parameters = {{"n", n}, {"nhat", nhat}};
    e.diagram = r.ambient_diagram;
    e.base = r.base;
    e.expected.finite = 1;
    e.expected.infinite = 0;
    e.expected.tower = r.verdict.verdict;
    e.expected.note = r.verdict.witness;
    return e;
  }
  fail(ErrorKind::InvalidInput, "unknown example '" + name + "'");
}

}  // namespace adic
