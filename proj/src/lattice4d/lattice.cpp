#include "qlax/lattice4d/lattice.hpp"

#include <algorithm>
#include <sstream>

namespace qlax {

namespace {

std::string literal(const RationalExpr& e) { return e.is_constant() ? e.constant_value().to_string() : e.to_string(); }

RationalExpr parse_literal(const nlohmann::json& j) {
  if (j.is_number_integer()) return RationalExpr(j.get<long>());
  if (!j.is_string()) throw LiteralParseError("expected a literal string");
  return RationalExpr(GaussianRational::parse(j.get<std::string>()));
}

const char* kSeqNames[4] = {"alpha", "beta", "gamma", "K"};

}  // namespace

LatticePoint LatticePoint::operator+(const LatticePoint& o) const {
  LatticePoint p;
  for (int k = 0; k < 4; ++k) p.l[k] = l[k] + o.l[k];
  return p;
}

LatticePoint LatticePoint::operator-(const LatticePoint& o) const {
  LatticePoint p;
  for (int k = 0; k < 4; ++k) p.l[k] = l[k] - o.l[k];
  return p;
}

std::string LatticePoint::key() const {
  return std::to_string(l[0]) + "," + std::to_string(l[1]) + "," + std::to_string(l[2]) + "," + std::to_string(l[3]);
}

LatticePoint LatticePoint::parse(const std::string& key) {
  LatticePoint p;
  std::stringstream ss(key);
  std::string part;
  int k = 0;
  while (std::getline(ss, part, ',')) {
    if (k >= 4) throw InvalidInitialData("bad lattice point key: " + key);
    try {
      std::size_t used = 0;
      p.l[k] = std::stol(part, &used);
      if (used != part.size()) throw InvalidInitialData("bad lattice point key: " + key);
    } catch (const std::logic_error&) {
      throw InvalidInitialData("bad lattice point key: " + key);
    }
    ++k;
  }
  if (k != 4) throw InvalidInitialData("bad lattice point key: " + key);
  return p;
}

LatticePoint point(long l1, long l2, long l3, long l4) { return LatticePoint{{l1, l2, l3, l4}}; }

const std::array<Pair, 6>& all_pairs() {
  static const std::array<Pair, 6> pairs{{{1, 2}, {2, 3}, {3, 1}, {1, 4}, {2, 4}, {3, 4}}};
  return pairs;
}

Pair oriented_pair(int a, int b) {
  for (const auto& p : all_pairs())
    if ((p.first == a && p.second == b) || (p.first == b && p.second == a)) return p;
  throw std::invalid_argument("no face for directions " + std::to_string(a) + "," + std::to_string(b));
}

bool is_d4_pair(const Pair& p) { return p.second == 4; }

// ---------------------------------------------------------------- parameters

ParameterSequences ParameterSequences::free() { return ParameterSequences(); }

ParameterSequences ParameterSequences::reduced(RationalExpr alpha_hat, RationalExpr beta_hat, RationalExpr gamma_hat,
                                               RationalExpr lambda, RationalExpr q) {
  ParameterSequences p;
  p.mode_ = Mode::reduced;
  p.reduced_ = {std::move(alpha_hat), std::move(beta_hat), std::move(gamma_hat), std::move(lambda), std::move(q)};
  return p;
}

ParameterSequences ParameterSequences::explicit_values(std::array<std::map<long, RationalExpr>, 4> values) {
  ParameterSequences p;
  p.mode_ = Mode::explicit_values;
  p.explicit_ = std::move(values);
  return p;
}

RationalExpr ParameterSequences::base(int seq, long index) const {
  switch (mode_) {
    case Mode::free:
      return RationalExpr(Symbol(std::string(kSeqNames[seq]) + "_" + std::to_string(index)));
    case Mode::reduced: {
      const RationalExpr& q = reduced_[4];
      if (seq < 3) return q.pow(index) * reduced_[seq];
      const RationalExpr& lam = reduced_[3];
      return (q.pow(2 * index + 1) * lam * lam - 1) / (q.pow(index) * lam);
    }
    case Mode::explicit_values: {
      auto it = explicit_[seq].find(index);
      if (it == explicit_[seq].end())
        throw MissingValue(std::string("no value for ") + kSeqNames[seq] + "_" + std::to_string(index));
      return it->second;
    }
  }
  throw std::logic_error("unknown parameter mode");
}

RationalExpr ParameterSequences::value(int slot, long index) const {
  auto [src, off] = slots_[slot];
  return base(src, index + off);
}

void ParameterSequences::corrupt_equation(const Pair& pair, const LatticePoint& base, RationalExpr shift) {
  if (!is_d4_pair(pair)) throw std::invalid_argument("only (i,4) equations carry K");
  corruption_[{pair, base}] = std::move(shift);
}

RationalExpr ParameterSequences::equation_K(const Pair& pair, const LatticePoint& at) const {
  RationalExpr k = K(at[4]);
  auto it = corruption_.find({pair, at});
  if (it != corruption_.end()) k += it->second;
  return k;
}

nlohmann::ordered_json ParameterSequences::to_json() const {
  nlohmann::ordered_json j;
  switch (mode_) {
    case Mode::free:
      j["mode"] = "free";
      break;
    case Mode::reduced:
      j["mode"] = "reduced";
      j["alpha_hat"] = literal(reduced_[0]);
      j["beta_hat"] = literal(reduced_[1]);
      j["gamma_hat"] = literal(reduced_[2]);
      j["lambda"] = literal(reduced_[3]);
      j["q"] = literal(reduced_[4]);
      break;
    case Mode::explicit_values:
      j["mode"] = "explicit";
      for (int s = 0; s < 4; ++s) {
        nlohmann::ordered_json m = nlohmann::ordered_json::object();
        for (const auto& [k, v] : explicit_[s]) m[std::to_string(k)] = literal(v);
        j[kSeqNames[s]] = m;
      }
      break;
  }
  bool identity = true;
  for (int s = 0; s < 4; ++s) identity = identity && slots_[s] == std::pair<int, long>{s, 0};
  if (!identity) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& [src, off] : slots_) arr.push_back({src, off});
    j["slots"] = arr;
  }
  if (!corruption_.empty()) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& [key, shift] : corruption_)
      arr.push_back({{"pair", {key.first.first, key.first.second}}, {"at", key.second.key()}, {"shift", literal(shift)}});
    j["corruptions"] = arr;
  }
  return j;
}

ParameterSequences ParameterSequences::from_json(const nlohmann::json& j) {
  std::string mode = j.value("mode", "free");
  ParameterSequences p;
  if (mode == "free") {
  } else if (mode == "reduced") {
    p = reduced(parse_literal(j.at("alpha_hat")), parse_literal(j.at("beta_hat")), parse_literal(j.at("gamma_hat")),
                parse_literal(j.at("lambda")), parse_literal(j.at("q")));
  } else if (mode == "explicit") {
    std::array<std::map<long, RationalExpr>, 4> values;
    for (int s = 0; s < 4; ++s) {
      if (!j.contains(kSeqNames[s])) continue;
      for (const auto& [k, v] : j.at(kSeqNames[s]).items()) values[s][std::stol(k)] = parse_literal(v);
    }
    p = explicit_values(std::move(values));
  } else {
    throw std::invalid_argument("unknown parameter mode: " + mode);
  }
  if (j.contains("slots")) {
    const auto& arr = j.at("slots");
    for (int s = 0; s < 4; ++s) p.slots_[s] = {arr.at(s).at(0).get<int>(), arr.at(s).at(1).get<long>()};
  }
  if (j.contains("corruptions"))
    for (const auto& c : j.at("corruptions"))
      p.corrupt_equation({c.at("pair").at(0).get<int>(), c.at("pair").at(1).get<int>()},
                         LatticePoint::parse(c.at("at").get<std::string>()), parse_literal(c.at("shift")));
  return p;
}

// ---------------------------------------------------------------- patches

LatticePoint LatticePatch::canonical(const LatticePoint& p) const {
  if (kind_ == PatchKind::unreduced_u) return p;
  return point(p.l[0] - p.l[2], p.l[1] - p.l[2], 0, p.l[3]);
}

const RationalExpr& LatticePatch::at(const LatticePoint& p) const {
  auto it = values_.find(canonical(p));
  if (it == values_.end()) throw MissingValue("no value at (" + p.key() + ")");
  return it->second;
}

std::optional<RationalExpr> LatticePatch::get(const LatticePoint& p) const {
  auto it = values_.find(canonical(p));
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

void LatticePatch::set(const LatticePoint& p, RationalExpr v) {
  LatticePoint c = canonical(p);
  auto it = values_.find(c);
  if (it != values_.end()) {
    if (kind_ == PatchKind::reduced_omega && !(it->second == v)) conflicts_.push_back(p);
    it->second = std::move(v);
    return;
  }
  values_.emplace(c, std::move(v));
}

nlohmann::ordered_json LatticePatch::to_json() const {
  nlohmann::ordered_json j;
  j["kind"] = kind_ == PatchKind::unreduced_u ? "unreduced-u" : "reduced-omega";
  j["params"] = params_.to_json();
  nlohmann::ordered_json vals = nlohmann::ordered_json::object();
  for (const auto& [p, v] : values_) vals[p.key()] = literal(v);
  j["values"] = vals;
  if (!undefined_.empty()) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& p : undefined_) arr.push_back(p.key());
    j["undefined"] = arr;
  }
  return j;
}

LatticePatch LatticePatch::from_json(const nlohmann::json& j) {
  std::string kind = j.value("kind", "unreduced-u");
  PatchKind k;
  if (kind == "unreduced-u")
    k = PatchKind::unreduced_u;
  else if (kind == "reduced-omega")
    k = PatchKind::reduced_omega;
  else
    throw InvalidInitialData("unknown patch kind: " + kind);
  LatticePatch patch(k, j.contains("params") ? ParameterSequences::from_json(j.at("params")) : ParameterSequences::free());
  if (j.contains("values"))
    for (const auto& [key, v] : j.at("values").items()) patch.set(LatticePoint::parse(key), parse_literal(v));
  if (j.contains("undefined"))
    for (const auto& key : j.at("undefined")) patch.mark_undefined(LatticePoint::parse(key.get<std::string>()));
  return patch;
}

// ---------------------------------------------------------------- equations

RationalExpr step_equation(const Pair& pair, const RationalExpr& u0, const RationalExpr& ui, const RationalExpr& uj,
                           const LatticePoint& l, const ParameterSequences& params) {
  auto [i, j] = pair;
  if (is_d4_pair(pair)) {
    if (ui.is_zero()) throw SingularStep("u(l+e" + std::to_string(i) + ") vanishes at (" + l.key() + ")");
    RationalExpr p = params.direction_parameter(i, l);
    return u0 * (-p * params.equation_K(pair, l) - uj / ui);
  }
  RationalExpr pi = params.direction_parameter(i, l);
  RationalExpr pj = params.direction_parameter(j, l);
  if (pi.is_zero()) throw SingularStep("zero lattice parameter at (" + l.key() + ")");
  RationalExpr r = pj / pi;
  RationalExpr den = r * ui - uj;
  if (den.is_zero())
    throw SingularStep("(" + std::to_string(i) + "," + std::to_string(j) + ") denominator vanishes at (" + l.key() +
                       ")");
  return u0 * (ui - r * uj) / den;
}

RationalExpr step_equation(const Pair& pair, const LatticePatch& patch, const LatticePoint& l) {
  return step_equation(pair, patch.at(l), patch.at(l.shifted(pair.first)), patch.at(l.shifted(pair.second)), l,
                       patch.params());
}

RationalExpr equation_residual(const Pair& pair, const RationalExpr& u0, const RationalExpr& ui,
                               const RationalExpr& uj, const RationalExpr& uij, const LatticePoint& l,
                               const ParameterSequences& params) {
  auto [i, j] = pair;
  if (is_d4_pair(pair)) {
    // D4 instance: u u4 + u_i4 u_i + p_i K u u_i
    RationalExpr p = params.direction_parameter(i, l);
    return u0 * uj + uij * ui + p * params.equation_K(pair, l) * u0 * ui;
  }
  // H3 instance: p_j (u u_j + u_ij u_i) - p_i (u u_i + u_j u_ij)
  RationalExpr pi = params.direction_parameter(i, l);
  RationalExpr pj = params.direction_parameter(j, l);
  return pj * (u0 * uj + uij * ui) - pi * (u0 * ui + uj * uij);
}

// ---------------------------------------------------------------- evolution

bool Box::contains(const LatticePoint& p) const {
  for (int k = 0; k < 4; ++k)
    if (p.l[k] < lo.l[k] || p.l[k] > hi.l[k]) return false;
  return true;
}

std::vector<LatticePoint> Box::points() const {
  std::vector<LatticePoint> out;
  for (long a = lo.l[0]; a <= hi.l[0]; ++a)
    for (long b = lo.l[1]; b <= hi.l[1]; ++b)
      for (long c = lo.l[2]; c <= hi.l[2]; ++c)
        for (long d = lo.l[3]; d <= hi.l[3]; ++d) out.push_back(point(a, b, c, d));
  return out;
}

Box Box::sized(long n1, long n2, long n3, long n4) {
  if (n1 < 1 || n2 < 1 || n3 < 1 || n4 < 1) throw std::invalid_argument("box sizes must be positive");
  return {point(0, 0, 0, 0), point(n1 - 1, n2 - 1, n3 - 1, n4 - 1)};
}

namespace {

std::vector<int> nonzero_dirs(const LatticePoint& p, const Box& box) {
  std::vector<int> dirs;
  for (int k = 0; k < 4; ++k)
    if (p.l[k] != box.lo.l[k]) dirs.push_back(k + 1);
  return dirs;
}

long offset_sum(const LatticePoint& p, const Box& box) {
  long s = 0;
  for (int k = 0; k < 4; ++k) s += p.l[k] - box.lo.l[k];
  return s;
}

}  // namespace

std::vector<LatticePoint> initial_points(const Box& box) {
  std::vector<LatticePoint> out;
  for (const auto& p : box.points())
    if (nonzero_dirs(p, box).size() <= 1) out.push_back(p);
  return out;
}

std::pair<LatticePatch, AuditReport> evolve_patch(const LatticePatch& init, const Box& box) {
  if (init.kind() != PatchKind::unreduced_u) throw InvalidInitialData("evolution needs an unreduced patch");
  for (int k = 0; k < 4; ++k)
    if (box.hi.l[k] < box.lo.l[k]) throw InvalidInitialData("empty box");
  LatticePatch patch(PatchKind::unreduced_u, init.params());
  for (const auto& p : initial_points(box)) {
    auto v = init.get(p);
    if (!v) throw InvalidInitialData("initial data missing at (" + p.key() + ")");
    patch.set(p, *v);
  }
  for (const auto& [p, v] : init.values())
    if (box.contains(p) && nonzero_dirs(p, box).size() > 1)
      throw InvalidInitialData("value off the initial axes at (" + p.key() + ")");

  AuditReport report;
  std::vector<LatticePoint> pts = box.points();
  std::stable_sort(pts.begin(), pts.end(), [&](const LatticePoint& a, const LatticePoint& b) {
    return offset_sum(a, box) < offset_sum(b, box);
  });
  for (const auto& m : pts) {
    auto dirs = nonzero_dirs(m, box);
    if (dirs.size() < 2) continue;
    std::vector<std::pair<Pair, RationalExpr>> routes;
    for (std::size_t x = 0; x < dirs.size(); ++x)
      for (std::size_t y = x + 1; y < dirs.size(); ++y) {
        Pair pr = oriented_pair(dirs[x], dirs[y]);
        LatticePoint base = m.shifted(pr.first, -1).shifted(pr.second, -1);
        auto u0 = patch.get(base), ui = patch.get(base.shifted(pr.first)), uj = patch.get(base.shifted(pr.second));
        if (!u0 || !ui || !uj) continue;
        try {
          routes.emplace_back(pr, step_equation(pr, *u0, *ui, *uj, base, patch.params()));
        } catch (const SingularStep& e) {
          report.singular.push_back({m, pr, e.what()});
        }
      }
    if (routes.empty()) {
      patch.mark_undefined(m);
      report.undefined.push_back(m);
      continue;
    }
    patch.set(m, routes.front().second);
    ++report.filled;
    if (routes.size() < 2) continue;
    ++report.audited;
    bool agree = true;
    for (std::size_t r = 1; r < routes.size(); ++r) agree = agree && routes[r].second == routes.front().second;
    if (agree)
      ++report.agreeing;
    else
      report.disagreements.push_back({m, std::move(routes)});
  }
  return {std::move(patch), std::move(report)};
}

nlohmann::ordered_json AuditReport::to_json() const {
  nlohmann::ordered_json j;
  j["passed"] = passed();
  j["filled"] = filled;
  j["audited"] = audited;
  j["agreeing"] = agreeing;
  auto dis = nlohmann::ordered_json::array();
  for (const auto& d : disagreements) {
    nlohmann::ordered_json routes = nlohmann::ordered_json::object();
    for (const auto& [pr, v] : d.routes)
      routes["(" + std::to_string(pr.first) + "," + std::to_string(pr.second) + ")"] = literal(v);
    dis.push_back({{"point", d.point.key()}, {"routes", routes}});
  }
  j["disagreements"] = dis;
  auto sing = nlohmann::ordered_json::array();
  for (const auto& s : singular)
    sing.push_back({{"point", s.point.key()}, {"pair", {s.pair.first, s.pair.second}}, {"message", s.message}});
  j["singular"] = sing;
  auto und = nlohmann::ordered_json::array();
  for (const auto& p : undefined) und.push_back(p.key());
  j["undefined"] = und;
  return j;
}

LatticePatch random_initial_patch(const Box& box, ParameterSequences params, std::mt19937_64& rng, long bound) {
  LatticePatch patch(PatchKind::unreduced_u, std::move(params));
  for (const auto& p : initial_points(box)) patch.set(p, RationalExpr(random_nonzero_gaussian_rational(rng, bound)));
  return patch;
}

// ---------------------------------------------------------------- transformations

TransformWord TransformWord::parse(const std::string& text) {
  std::stringstream ss(text);
  std::string tok;
  std::vector<Generator> word;
  while (ss >> tok) {
    if (tok == "id") continue;
    bool inv = false;
    std::string base = tok;
    for (const char* suffix : {"^-1", "^{-1}", "'"}) {
      std::string s(suffix);
      if (base.size() > s.size() && base.compare(base.size() - s.size(), s.size(), s) == 0) {
        inv = true;
        base.resize(base.size() - s.size());
        break;
      }
    }
    Letter l;
    if (base == "T1")
      l = Letter::T1;
    else if (base == "T2")
      l = Letter::T2;
    else if (base == "T3")
      l = Letter::T3;
    else if (base == "T4")
      l = Letter::T4;
    else if (base == "R1")
      l = Letter::R1;
    else
      throw std::invalid_argument("unknown transformation letter: " + tok);
    word.push_back({l, inv});
  }
  return TransformWord(std::move(word));
}

TransformWord TransformWord::operator*(const TransformWord& o) const {
  std::vector<Generator> w = word_;
  w.insert(w.end(), o.word_.begin(), o.word_.end());
  return TransformWord(std::move(w));
}

TransformWord TransformWord::inverse() const {
  std::vector<Generator> w(word_.rbegin(), word_.rend());
  for (auto& g : w) g.inverse = !g.inverse;
  return TransformWord(std::move(w));
}

std::string TransformWord::to_string() const {
  if (word_.empty()) return "id";
  static const char* names[] = {"T1", "T2", "T3", "T4", "R1"};
  std::string s;
  for (const auto& g : word_) {
    if (!s.empty()) s += ' ';
    s += names[static_cast<int>(g.letter)];
    if (g.inverse) s += "^-1";
  }
  return s;
}

namespace {

LatticePoint act(const Generator& g, const LatticePoint& p) {
  if (g.letter != Letter::R1) {
    int dir = static_cast<int>(g.letter) + 1;
    return p.shifted(dir, g.inverse ? -1 : 1);
  }
  if (!g.inverse) {
    if (p.in_r1()) return p.shifted(2, -1);
    if (p.in_r2()) return p.shifted(3, -1);
  } else {
    if (p.in_r1()) return p.shifted(3, 1);
    if (p.in_r2()) return p.shifted(2, 1);
  }
  throw OutOfDomain("R1 is defined only where l3 = l2 or l3 = l2 - 1; got (" + p.key() + ")");
}

std::pair<int, long> act(const Generator& g, std::pair<int, long> gen) {
  auto [seq, off] = gen;
  if (g.letter != Letter::R1) {
    int s = static_cast<int>(g.letter);
    if (seq == s) off += g.inverse ? -1 : 1;
    return {seq, off};
  }
  // R1: beta_l -> gamma_(l-1), gamma_l -> beta_l
  if (!g.inverse) {
    if (seq == 1) return {2, off - 1};
    if (seq == 2) return {1, off};
  } else {
    if (seq == 2) return {1, off + 1};
    if (seq == 1) return {2, off};
  }
  return {seq, off};
}

}  // namespace

LatticePoint apply_transform(const TransformWord& w, const LatticePoint& p) {
  LatticePoint r = p;
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) r = act(*it, r);
  return r;
}

ParameterSequences apply_transform(const TransformWord& w, const ParameterSequences& params) {
  ParameterSequences out = params;
  for (int s = 0; s < 4; ++s) {
    std::pair<int, long> img{s, 0};
    for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) img = act(*it, img);
    auto [src, off] = params.slot(img.first);
    out.set_slot(s, src, off + img.second);
  }
  return out;
}

LatticePatch apply_transform(const TransformWord& w, const LatticePatch& patch) {
  LatticePatch out(patch.kind(), apply_transform(w, patch.params()));
  TransformWord inv = w.inverse();
  auto pull = [&](const LatticePoint& m) -> std::optional<LatticePoint> {
    try {
      LatticePoint l = apply_transform(inv, m);
      if (patch.canonical(apply_transform(w, l)) != patch.canonical(m)) return std::nullopt;
      return l;
    } catch (const OutOfDomain&) {
      return std::nullopt;
    }
  };
  for (const auto& [m, v] : patch.values())
    if (auto l = pull(m)) out.set(*l, v);
  for (const auto& m : patch.undefined())
    if (auto l = pull(m)) out.mark_undefined(*l);
  return out;
}

}  // namespace qlax
